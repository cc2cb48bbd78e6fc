//! Six-vertex R-matrix, Yang–Baxter operators and the braid-limit σ-matrix.
//!
//! Two-site states are indexed `(m₁, m₂)` in the order
//! `(↑↑), (↑↓), (↓↑), (↓↓)` with `↑ = +1/2`. Matrices are stored with rows
//! labelled by the incoming pair `(m₁, m₂)` and columns by the outgoing pair
//! `(n₁, n₂)`, i.e. `entries[(m, n)] = R^{n₁n₂}_{m₁m₂}`.

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector2};
use num_complex::Complex64;

use crate::qnum::{Deformation, RealQPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }

    fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    fn from_bit(b: usize) -> Self {
        if b == 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }
}

/// Row/column index of the two-site state `(a, b)`.
pub fn pair_index(a: Spin, b: Spin) -> usize {
    2 * a.bit() + b.bit()
}

fn pair_from_index(i: usize) -> (Spin, Spin) {
    (Spin::from_bit(i >> 1), Spin::from_bit(i & 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    pub u: f64,
    pub mu: f64,
    pub entries: Matrix4<f64>,
}

impl RMatrix {
    pub fn entry(&self, m: (Spin, Spin), n: (Spin, Spin)) -> f64 {
        self.entries[(pair_index(m.0, m.1), pair_index(n.0, n.1))]
    }
}

/// Six-vertex weights: corners `sinh(μ-u)`, middle diagonal `-sinh u`,
/// middle off-diagonal `e^{-u} sinh μ` (row `↑↓`) and `e^{u} sinh μ` (row `↓↑`).
pub fn r_matrix(u: f64, mu: f64) -> RMatrix {
    let a = (mu - u).sinh();
    let b = -u.sinh();
    let mut m = Matrix4::zeros();
    m[(0, 0)] = a;
    m[(3, 3)] = a;
    m[(1, 1)] = b;
    m[(2, 2)] = b;
    m[(1, 2)] = (-u).exp() * mu.sinh();
    m[(2, 1)] = u.exp() * mu.sinh();
    RMatrix { u, mu, entries: m }
}

/// `X_i(u)` on `strands` spin-1/2 sites (site 1 is the most significant
/// tensor factor): `|…m₁m₂…⟩ ↦ Σ R^{n₁n₂}_{m₁m₂} |…n₂n₁…⟩` on sites `i, i+1`.
pub fn yang_baxter_operator(site: usize, strands: usize, r: &RMatrix) -> DMatrix<f64> {
    assert!(site >= 1 && site < strands, "site {site} out of range");
    let dim = 1usize << strands;
    let shift_a = strands - site;
    let shift_b = strands - site - 1;
    let mut x = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let m1 = (col >> shift_a) & 1;
        let m2 = (col >> shift_b) & 1;
        let m = 2 * m1 + m2;
        for n in 0..4 {
            let w = r.entries[(m, n)];
            if w == 0.0 {
                continue;
            }
            let (n1, n2) = (n >> 1, n & 1);
            let cleared = col & !(1 << shift_a) & !(1 << shift_b);
            let row = cleared | (n2 << shift_a) | (n1 << shift_b);
            x[(row, col)] += w;
        }
    }
    x
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `‖X₁(u)X₂(u+v)X₁(v) − X₂(v)X₁(u+v)X₂(u)‖_max` on three sites.
pub fn yang_baxter_residual(u: f64, v: f64, mu: f64) -> f64 {
    let x = |site, s| yang_baxter_operator(site, 3, &r_matrix(s, mu));
    let lhs = x(1, u) * x(2, u + v) * x(1, v);
    let rhs = x(2, v) * x(1, u + v) * x(2, u);
    max_abs(&(lhs - rhs))
}

/// `‖X₁(u)X₃(v) − X₃(v)X₁(u)‖_max` on four sites.
pub fn far_commutation_residual(u: f64, v: f64, mu: f64) -> f64 {
    let x1 = yang_baxter_operator(1, 4, &r_matrix(u, mu));
    let x3 = yang_baxter_operator(3, 4, &r_matrix(v, mu));
    max_abs(&(&x1 * &x3 - &x3 * &x1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaMatrix {
    pub entries: Matrix4<Complex64>,
}

impl SigmaMatrix {
    pub fn entry(&self, m: (Spin, Spin), n: (Spin, Spin)) -> Complex64 {
        self.entries[(pair_index(m.0, m.1), pair_index(n.0, n.1))]
    }
}

/// Braid-limit matrix: corners 1, middle block `[[0, -q^{1/2}], [-q^{1/2}, 1-q]]`.
pub fn sigma_matrix<D: Deformation>(point: &D) -> SigmaMatrix {
    let one = Complex64::new(1.0, 0.0);
    let s = point.sqrt_q();
    let mut m = Matrix4::zeros();
    m[(0, 0)] = one;
    m[(3, 3)] = one;
    m[(1, 2)] = -s;
    m[(2, 1)] = -s;
    m[(2, 2)] = one - point.q();
    SigmaMatrix { entries: m }
}

/// Eigenvalues of σ, solved sector by sector of conserved `m₁+m₂`:
/// `[λ(↑↑), λ_a, λ_b, λ(↓↓)]` where `λ_a, λ_b` come from the middle block
/// (the root with the larger real part first).
pub fn sigma_spectrum<D: Deformation>(point: &D) -> [Complex64; 4] {
    let e = sigma_matrix(point).entries;
    let block = Matrix2::new(e[(1, 1)], e[(1, 2)], e[(2, 1)], e[(2, 2)]);
    let (a, b) = eigenvalues_2x2(&block);
    [e[(0, 0)], a, b, e[(3, 3)]]
}

fn eigenvalues_2x2(m: &Matrix2<Complex64>) -> (Complex64, Complex64) {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let (x, y) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    if x.re >= y.re {
        (x, y)
    } else {
        (y, x)
    }
}

/// Real eigenbasis of σ at real `q`, columns `[|↑↑⟩, triplet, q-singlet, |↓↓⟩]`
/// with eigenvalues `(1, 1, -q, 1)`. The q-singlet is
/// `(|↑↓⟩ + q^{1/2}|↓↑⟩)/√(1+q)`; each column's first nonzero entry is positive.
pub fn coupled_eigenvectors(point: &RealQPoint) -> Matrix4<f64> {
    let q = point.value();
    let e = sigma_matrix(point).entries.map(|z| z.re);
    let block = Matrix2::new(e[(1, 1)], e[(1, 2)], e[(2, 1)], e[(2, 2)]);
    let triplet = null_vector_2x2(&block, 1.0);
    let singlet = null_vector_2x2(&block, -q);
    let mut v = Matrix4::zeros();
    v[(0, 0)] = 1.0;
    v[(1, 1)] = triplet[0];
    v[(2, 1)] = triplet[1];
    v[(1, 2)] = singlet[0];
    v[(2, 2)] = singlet[1];
    v[(3, 3)] = 1.0;
    v
}

fn null_vector_2x2(m: &Matrix2<f64>, lambda: f64) -> Vector2<f64> {
    let a = m - Matrix2::identity() * lambda;
    // Either row of a singular 2×2 determines the kernel; use the larger one.
    let (r0, r1) = (a.row(0).norm(), a.row(1).norm());
    let v = if r0 >= r1 {
        Vector2::new(-a[(0, 1)], a[(0, 0)])
    } else {
        Vector2::new(a[(1, 1)], -a[(1, 0)])
    };
    let v = v.normalize();
    let lead = if v[0].abs() > 1e-15 { v[0] } else { v[1] };
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

/// `R(u) / (−e^{u−μ}/2)` with the lower index pair transposed,
/// `L_{(m₂m₁),(n₁n₂)} = R^{n₁n₂}_{m₁m₂}(u) / (−e^{u−μ}/2)`.
pub fn braid_limit(u: f64, mu: f64) -> Matrix4<f64> {
    let r = r_matrix(u, mu);
    let scale = -2.0 * (mu - u).exp();
    Matrix4::from_fn(|row, col| {
        let (m1, m2) = pair_from_index(row);
        r.entries[(pair_index(m2, m1), col)] * scale
    })
}

/// Largest entrywise deviation between [`braid_limit`] and
/// `sigma_matrix(q = e^{2μ})`, after the spectrum-preserving relabelling that
/// reverses every spin and flips the sign of `|↓↑⟩`.
pub fn braid_limit_check(u_large: f64, mu: f64) -> f64 {
    let limit = braid_limit(u_large, mu);
    let sigma = sigma_matrix(&RealQPoint::new((2.0 * mu).exp())).entries;
    let gauge = limit_gauge();
    let aligned = gauge * limit * gauge.transpose();
    (0..16)
        .map(|k| (aligned[k] - sigma[k].re).abs().max(sigma[k].im.abs()))
        .fold(0.0, f64::max)
}

/// Orthogonal relabelling `G·F` with `F` the spin reversal and `G` the sign flip on `|↓↑⟩`.
fn limit_gauge() -> Matrix4<f64> {
    let mut g = Matrix4::zeros();
    for i in 0..4 {
        let (a, b) = pair_from_index(i);
        let flip = |s: Spin| if s == Spin::Up { Spin::Down } else { Spin::Up };
        let j = pair_index(flip(a), flip(b));
        let sign = if j == pair_index(Spin::Down, Spin::Up) { -1.0 } else { 1.0 };
        g[(j, i)] = sign;
    }
    g
}

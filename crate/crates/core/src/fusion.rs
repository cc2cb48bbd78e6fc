//! Total-spin-0 fusion bases of `2n` spin-1/2 strands and the duality matrix
//! between them.
//!
//! All labels are doubled spins. The *odd* tree couples pairs `(1,2), (3,4), …`
//! first and folds them left to right; the *even* tree couples `(2,3), (4,5), …`
//! onto strand 1 and closes with strand `2n`. Both are expanded in the
//! left-comb basis `((((s₁s₂)s₃)s₄)…)` by one elementary recoupling move per
//! pair, and the duality matrix is the overlap of the two expansions.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnum::{checked_factorial, is_admissible, triangle_radicand, Deformation, DEGENERACY_EPS};

/// How square roots of q-number ratios are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Every radicand must be positive; entries are real.
    Unitary,
    /// Negative radicands take the root `i√|x|`. Each root depends on a
    /// single label, so `a·aᵀ = I` survives as an algebraic identity and
    /// plat matrix elements are the analytic continuation of the unitary ones.
    Continued,
}

/// Odd-tree path: `pairs[k]` is `2J` for strands `(2k+1, 2k+2)`; `inter[k]`
/// is `2l_k` with `l_0 = J_1` and `l_{n-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPath {
    pub pairs: Vec<u32>,
    pub inter: Vec<u32>,
}

/// Even-tree path: `pairs[k]` is `2J` for strands `(2k+2, 2k+3)`; `inter[k]`
/// is `2r_k`, ending at `r_{n-2} = 1/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenPath {
    pub pairs: Vec<u32>,
    pub inter: Vec<u32>,
}

fn couplings(two_a: u32, two_b: u32) -> impl Iterator<Item = u32> {
    (two_a.abs_diff(two_b)..=two_a + two_b).step_by(2)
}

fn pair_vectors(count: usize) -> Vec<Vec<u32>> {
    (0u32..1 << count)
        .map(|bits| {
            (0..count)
                .map(|k| 2 * (bits >> (count - 1 - k) & 1))
                .collect()
        })
        .collect()
}

/// Intermediate sequences starting from `start`, coupling each pair label in
/// turn, and ending at `end`.
fn chains(start: u32, pairs: &[u32], end: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let prev_of = |chain: &Vec<u32>| chain.last().copied().unwrap_or(start);
    for &p in pairs {
        out = out
            .into_iter()
            .flat_map(|c| {
                let prev = prev_of(&c);
                couplings(prev, p).map(move |next| {
                    let mut c = c.clone();
                    c.push(next);
                    c
                })
            })
            .collect();
    }
    out.retain(|c| prev_of(c) == end);
    out
}

/// Odd-tree paths in lexicographic order of `(pairs, inter)`; index 0 is the
/// all-zero path.
pub fn enumerate_odd_paths(n: usize) -> Vec<OddPath> {
    assert!(n >= 1, "need at least one pair");
    let mut out = Vec::new();
    for pairs in pair_vectors(n) {
        for rest in chains(pairs[0], &pairs[1..], 0) {
            let mut inter = vec![pairs[0]];
            inter.extend(rest);
            if *inter.last().unwrap() == 0 {
                out.push(OddPath {
                    pairs: pairs.clone(),
                    inter,
                });
            }
        }
    }
    out.sort();
    out
}

/// Even-tree paths in lexicographic order; empty for `n = 1`.
pub fn enumerate_even_paths(n: usize) -> Vec<EvenPath> {
    assert!(n >= 1, "need at least one pair");
    let mut out = Vec::new();
    if n == 1 {
        return out;
    }
    for pairs in pair_vectors(n - 1) {
        for inter in chains(1, &pairs, 1) {
            out.push(EvenPath {
                pairs: pairs.clone(),
                inter,
            });
        }
    }
    out.sort();
    out
}

/// Dyck-path encoding of the left-comb basis: `c[m]` is twice the spin after
/// coupling strands `1..=m+1`.
pub fn enumerate_comb_paths(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![1u32]];
    for m in 1..2 * n {
        let remaining = (2 * n - m - 1) as u32;
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                [last + 1, last.wrapping_sub(1)]
                    .into_iter()
                    .filter(move |&v| v <= 2 * n as u32 && v <= remaining)
                    .map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
            })
            .collect();
    }
    out.sort();
    out
}

pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn root(value: f64, branch: Branch) -> Result<Complex64> {
    if value > DEGENERACY_EPS * DEGENERACY_EPS {
        return Ok(Complex64::new(value.sqrt(), 0.0));
    }
    match branch {
        Branch::Continued if value.abs() > DEGENERACY_EPS * DEGENERACY_EPS => {
            Ok(Complex64::new(0.0, (-value).sqrt()))
        }
        _ => Err(Error::NegativeRadicand { value }),
    }
}

/// q-Racah coefficient
/// `a_{jl}[s₁ s₂; s₃ s₄] = ⟨((s₁s₂)_j s₃)_{s₄} | (s₁(s₂s₃)_l)_{s₄}⟩`
/// on doubled spins, evaluated from the closed form
/// `(-1)^{s₁+s₃+j+l} √([2j+1][2l+1]) Δ(s₁s₂j)Δ(s₃s₄j)Δ(s₁s₄l)Δ(s₂s₃l) Σ_m …`.
///
/// The sign fixes the phase of the coupled states so that the all-spin-½
/// matrix has `a₀₀ = +1/[2]`; it differs from the Condon–Shortley phase
/// `(-1)^{s₁+s₂+s₃+s₄}` only by reordering the couplings inside `j` and `l`.
pub fn racah<D: Deformation>(
    two_j: u32,
    two_l: u32,
    two_s: [u32; 4],
    point: &D,
    branch: Branch,
) -> Result<Complex64> {
    let [_, s2, _, s4] = two_s;
    let value = racah_condon_shortley(two_j, two_l, two_s, point, branch)?;
    Ok(if ((two_j + two_l + s2 + s4) / 2).is_multiple_of(2) { value } else { -value })
}

/// Same coefficient with the Condon–Shortley phase, matching coupled states
/// built from ordinary Clebsch–Gordan coefficients.
fn racah_condon_shortley<D: Deformation>(
    two_j: u32,
    two_l: u32,
    two_s: [u32; 4],
    point: &D,
    branch: Branch,
) -> Result<Complex64> {
    let [s1, s2, s3, s4] = two_s;
    let triads = [(s1, s2, two_j), (s3, s4, two_j), (s1, s4, two_l), (s2, s3, two_l)];
    for &(a, b, c) in &triads {
        if !is_admissible(a, b, c) {
            return Err(Error::NonAdmissibleTriple(a, b, c));
        }
    }

    let mut prefactor = root(point.q_number(two_j as f64 + 1.0)?, branch)?
        * root(point.q_number(two_l as f64 + 1.0)?, branch)?;
    for &(a, b, c) in &triads {
        prefactor *= root(triangle_radicand(a, b, c, point)?, branch)?;
    }
    if (s1 + s2 + s3 + s4) / 2 % 2 == 1 {
        prefactor = -prefactor;
    }

    // Doubled sums; every one is even by admissibility.
    let lower = triads.map(|(a, b, c)| (a + b + c) / 2);
    let upper = [
        (s1 + s2 + s3 + s4) / 2,
        (s1 + two_j + s3 + two_l) / 2,
        (s2 + two_j + s4 + two_l) / 2,
    ];
    let m_min = *lower.iter().max().unwrap();
    let m_max = *upper.iter().min().unwrap();
    let mut sum = 0.0;
    for m in m_min..=m_max {
        let mut den = 1.0;
        for &a in &lower {
            den *= checked_factorial(m - a, point)?;
        }
        for &b in &upper {
            den *= checked_factorial(b - m, point)?;
        }
        let term = point.q_factorial(m + 1)? / den;
        sum += if m % 2 == 0 { term } else { -term };
    }
    Ok(prefactor * sum)
}

/// `⟨((x ½)_e ½)_l | (x (½½)_J)_l⟩`: the single move used to comb a pair.
fn comb_move<D: Deformation>(x: u32, e: u32, pair: u32, l: u32, point: &D, branch: Branch) -> Result<Complex64> {
    racah(e, pair, [x, 1, 1, l], point, branch)
}

/// Orthogonal change of basis between the odd and even trees: rows are odd
/// paths, columns even paths, and `φ_odd = Σ_even a[odd, even] φ_even`.
///
/// Basis phases: every move uses [`racah`], and odd vectors whose last pair
/// is a triplet carry an extra `-1`, so that for `n = 2` the matrix is the
/// spin-½ Racah matrix itself.
#[derive(Debug, Clone)]
pub struct DualityMatrix {
    pub n: usize,
    pub odd: Vec<OddPath>,
    pub even: Vec<EvenPath>,
    pub entries: DMatrix<Complex64>,
}

impl DualityMatrix {
    pub fn dim(&self) -> usize {
        self.odd.len()
    }

    /// `‖a·aᵀ − I‖_max`.
    pub fn orthogonality_defect(&self) -> f64 {
        let a = &self.entries;
        let prod = a * a.transpose();
        let id = DMatrix::<Complex64>::identity(a.nrows(), a.ncols());
        (prod - id).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_imaginary(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }
}

fn spin_after(comb: &[u32], strands: usize) -> u32 {
    if strands == 0 {
        0
    } else {
        comb[strands - 1]
    }
}

fn odd_in_comb<D: Deformation>(path: &OddPath, comb: &[u32], point: &D, branch: Branch) -> Result<Complex64> {
    let mut amp = Complex64::new(1.0, 0.0);
    for (k, &pair) in path.pairs.iter().enumerate() {
        let before = if k == 0 { 0 } else { path.inter[k - 1] };
        let x = spin_after(comb, 2 * k);
        let l = spin_after(comb, 2 * k + 2);
        if x != before || l != path.inter[k] {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let e = spin_after(comb, 2 * k + 1);
        amp *= comb_move(x, e, pair, l, point, branch)?;
    }
    Ok(amp)
}

fn even_in_comb<D: Deformation>(path: &EvenPath, comb: &[u32], point: &D, branch: Branch) -> Result<Complex64> {
    let mut amp = Complex64::new(1.0, 0.0);
    for (k, &pair) in path.pairs.iter().enumerate() {
        let before = if k == 0 { 1 } else { path.inter[k - 1] };
        let x = spin_after(comb, 2 * k + 1);
        let l = spin_after(comb, 2 * k + 3);
        if x != before || l != path.inter[k] {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let e = spin_after(comb, 2 * k + 2);
        amp *= comb_move(x, e, pair, l, point, branch)?;
    }
    Ok(amp)
}

pub fn duality_matrix<D: Deformation>(n: usize, point: &D, branch: Branch) -> Result<DualityMatrix> {
    if n < 2 {
        return Err(Error::InvalidStrandCount(2 * n));
    }
    let odd = enumerate_odd_paths(n);
    let even = enumerate_even_paths(n);
    let combs = enumerate_comb_paths(n);
    let d = odd.len();
    let mut o = DMatrix::<Complex64>::zeros(d, combs.len());
    let mut e = DMatrix::<Complex64>::zeros(d, combs.len());
    for (c, comb) in combs.iter().enumerate() {
        for (i, p) in odd.iter().enumerate() {
            o[(i, c)] = odd_in_comb(p, comb, point, branch)?;
        }
        for (i, p) in even.iter().enumerate() {
            e[(i, c)] = even_in_comb(p, comb, point, branch)?;
        }
    }
    let mut entries = o * e.transpose();
    for (i, p) in odd.iter().enumerate() {
        if p.pairs[n - 1] != 0 {
            entries.row_mut(i).neg_mut();
        }
    }
    Ok(DualityMatrix { n, odd, even, entries })
}

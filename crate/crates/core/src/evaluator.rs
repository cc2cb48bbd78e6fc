//! Plat matrix elements and Jones polynomials.
//!
//! An annotated word is cut into maximal runs of same-parity generators. Odd
//! generators act diagonally on the odd fusion basis and even generators on
//! the even one, so the word becomes
//!
//! ```text
//! U = D_odd · a · D_even · aᵀ · D_odd · …
//! ```
//!
//! in odd-basis coordinates, and the plat closure is `U₀₀`, the element
//! between the all-singlet cup states.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use std::fmt;
use std::f64::consts::PI;

use crate::braid::{annotate, components, BraidWord, Orientation, Syllable};
use crate::error::{Error, Result};
use crate::fusion::{duality_matrix, enumerate_even_paths, enumerate_odd_paths, Branch, DualityMatrix};
use crate::qnum::{laurent_fit, DEFAULT_FIT_TOLERANCE};
use crate::qnum::{Deformation, LaurentPoly, QPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    Odd,
    Even,
}

impl Basis {
    pub fn of_generator(index: usize) -> Self {
        if index % 2 == 1 {
            Basis::Odd
        } else {
            Basis::Even
        }
    }

    /// Position of generator `index` among the pairs of this basis.
    fn pair_of(self, index: usize) -> usize {
        match self {
            Basis::Odd => (index - 1) / 2,
            Basis::Even => index / 2 - 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    Right,
    Left,
}

/// Eigenvalue of a single crossing on a strand pair of doubled spin `two_j`
/// (0 or 2).
///
/// Parallel: `λ₀ = -q^{3/2}`, `λ₁ = q^{1/2}`. Antiparallel: `λ₀ = 1`,
/// `λ₁ = -q^{-1}`. Left-handed crossings take the inverse.
///
/// Panics on [`Orientation::Auto`]; annotate first.
pub fn braiding_phase<D: Deformation>(
    two_j: u32,
    orientation: Orientation,
    handedness: Handedness,
    point: &D,
) -> Complex64 {
    let right = match (orientation, two_j) {
        (Orientation::Parallel, 0) => -point.q_power(6),
        (Orientation::Parallel, 2) => point.q_power(2),
        (Orientation::Antiparallel, 0) => Complex64::new(1.0, 0.0),
        (Orientation::Antiparallel, 2) => -point.q_power(-4),
        (Orientation::Auto, _) => panic!("braiding phase of an unannotated crossing"),
        (_, j) => panic!("pair spin must be 0 or 1, got doubled {j}"),
    };
    match handedness {
        Handedness::Right => right,
        Handedness::Left => right.inv(),
    }
}

fn syllable_phase<D: Deformation>(two_j: u32, s: &Syllable, point: &D) -> Complex64 {
    let handedness = if s.power > 0 {
        Handedness::Right
    } else {
        Handedness::Left
    };
    braiding_phase(two_j, s.orientation, handedness, point).powi(s.power.abs())
}

/// One factor of a compiled program, before any `θ` is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// `a`: odd coordinates to even coordinates.
    Duality,
    /// `aᵀ`.
    DualityInverse,
    Diagonal { basis: Basis, run: Vec<Syllable> },
}

impl Step {
    pub fn symbol(&self) -> &'static str {
        match self {
            Step::Duality => "a",
            Step::DualityInverse => "a†",
            Step::Diagonal { basis: Basis::Odd, .. } => "D_odd",
            Step::Diagonal { basis: Basis::Even, .. } => "D_even",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Diagonal { run, .. } => {
                write!(f, "{}(", self.symbol())?;
                for (i, s) in run.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
            _ => f.write_str(self.symbol()),
        }
    }
}

/// A numeric factor at a fixed `θ`, acting on the `d`-dimensional block.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockOperator {
    Diagonal { basis: Basis, phases: DVector<Complex64> },
    Duality(DMatrix<Complex64>),
    /// Holds `aᵀ`, which is `a⁻¹` on either branch.
    DualityInverse(DMatrix<Complex64>),
}

impl BlockOperator {
    pub fn dim(&self) -> usize {
        match self {
            BlockOperator::Diagonal { phases, .. } => phases.len(),
            BlockOperator::Duality(m) | BlockOperator::DualityInverse(m) => m.nrows(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        match self {
            BlockOperator::Diagonal { phases, .. } => DMatrix::from_diagonal(phases),
            BlockOperator::Duality(m) | BlockOperator::DualityInverse(m) => m.clone(),
        }
    }

    /// `row ← row · self`.
    fn apply_right(&self, row: &DVector<Complex64>) -> DVector<Complex64> {
        match self {
            BlockOperator::Diagonal { phases, .. } => row.component_mul(phases),
            BlockOperator::Duality(m) | BlockOperator::DualityInverse(m) => m.tr_mul(row),
        }
    }
}

/// Diagonal operator of a run of same-parity syllables on the basis of that
/// parity. Each path picks up `λ(J)^k` per syllable, with `J` the path's label
/// for the syllable's pair.
pub fn diagonal_operator<D: Deformation>(run: &[Syllable], basis: Basis, n: usize, point: &D) -> Result<BlockOperator> {
    for (k, s) in run.iter().enumerate() {
        if Basis::of_generator(s.index) != basis {
            return Err(Error::ParityMismatch {
                index: s.index,
                basis: match basis {
                    Basis::Odd => "odd",
                    Basis::Even => "even",
                },
            });
        }
        if s.orientation == Orientation::Auto {
            return Err(Error::UnannotatedSyllable(k));
        }
    }
    let labels: Vec<Vec<u32>> = match basis {
        Basis::Odd => enumerate_odd_paths(n).into_iter().map(|p| p.pairs).collect(),
        Basis::Even => enumerate_even_paths(n).into_iter().map(|p| p.pairs).collect(),
    };
    let phases = DVector::from_iterator(
        labels.len(),
        labels.iter().map(|pairs| {
            run.iter()
                .map(|s| syllable_phase(pairs[basis.pair_of(s.index)], s, point))
                .product::<Complex64>()
        }),
    );
    Ok(BlockOperator::Diagonal { basis, phases })
}

/// The factor sequence of an annotated word. `U = steps[0] · steps[1] · …`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledProgram {
    pub n: usize,
    pub steps: Vec<Step>,
    pub source: BraidWord,
}

impl CompiledProgram {
    pub fn operator_count(&self) -> usize {
        self.steps.len()
    }

    pub fn symbols(&self) -> Vec<&'static str> {
        self.steps.iter().map(Step::symbol).collect()
    }

    /// Number of maximal same-parity runs.
    pub fn runs(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Diagonal { .. }))
            .count()
    }

    /// Numeric factors at `point`, with the duality matrix they share.
    pub fn instantiate<D: Deformation>(&self, point: &D, branch: Branch) -> Result<(DualityMatrix, Vec<BlockOperator>)> {
        let duality = if self.steps.iter().any(|s| !matches!(s, Step::Diagonal { .. })) {
            Some(duality_matrix(self.n, point, branch)?)
        } else {
            None
        };
        let ops = self
            .steps
            .iter()
            .map(|step| match step {
                Step::Duality => Ok(BlockOperator::Duality(duality.as_ref().unwrap().entries.clone())),
                Step::DualityInverse => Ok(BlockOperator::DualityInverse(
                    duality.as_ref().unwrap().entries.transpose(),
                )),
                Step::Diagonal { basis, run } => diagonal_operator(run, *basis, self.n, point),
            })
            .collect::<Result<Vec<_>>>()?;
        let duality = match duality {
            Some(d) => d,
            None => DualityMatrix {
                n: self.n,
                odd: enumerate_odd_paths(self.n),
                even: enumerate_even_paths(self.n),
                entries: DMatrix::identity(0, 0),
            },
        };
        Ok((duality, ops))
    }

    /// `U₀₀` at `point`.
    pub fn matrix_element<D: Deformation>(&self, point: &D, branch: Branch) -> Result<Complex64> {
        let (_, ops) = self.instantiate(point, branch)?;
        let d = crate::fusion::catalan(self.n);
        let mut row = DVector::<Complex64>::zeros(d);
        row[0] = Complex64::new(1.0, 0.0);
        for op in &ops {
            row = op.apply_right(&row);
        }
        Ok(row[0])
    }
}

impl fmt::Display for CompiledProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Compiles an annotated word: odd runs become `D_odd`, even runs
/// `a · D_even · a†`, and adjacent `a† · a` pairs cancel.
pub fn compile(word: &BraidWord) -> Result<CompiledProgram> {
    if let Some(k) = word
        .syllables()
        .iter()
        .position(|s| s.orientation == Orientation::Auto)
    {
        return Err(Error::UnannotatedSyllable(k));
    }
    let mut steps: Vec<Step> = Vec::new();
    let syllables = word.syllables();
    let mut start = 0;
    while start < syllables.len() {
        let basis = Basis::of_generator(syllables[start].index);
        let mut end = start;
        while end < syllables.len() && Basis::of_generator(syllables[end].index) == basis {
            end += 1;
        }
        let diag = Step::Diagonal {
            basis,
            run: syllables[start..end].to_vec(),
        };
        match basis {
            Basis::Odd => steps.push(diag),
            Basis::Even => {
                if steps.last() == Some(&Step::DualityInverse) {
                    steps.pop();
                } else {
                    steps.push(Step::Duality);
                }
                steps.push(diag);
                steps.push(Step::DualityInverse);
            }
        }
        start = end;
    }
    Ok(CompiledProgram {
        n: word.n(),
        steps,
        source: word.clone(),
    })
}

/// Annotates with default flips and compiles.
pub fn compile_word(word: &BraidWord) -> Result<CompiledProgram> {
    compile(&annotate(word)?.word)
}

/// Plat matrix element at `q = e^{iθ}` on the unitary branch.
pub fn evaluate(word: &BraidWord, theta: f64) -> Result<Complex64> {
    compile_word(word)?.matrix_element(&QPoint::new(theta), Branch::Unitary)
}

/// Same, analytically continued where q-numbers turn negative.
pub fn evaluate_continued(word: &BraidWord, theta: f64) -> Result<Complex64> {
    compile_word(word)?.matrix_element(&QPoint::new(theta), Branch::Continued)
}

/// `|evaluate(mirror(w), θ) - conj(evaluate(w, θ))|`.
pub fn mirror_symmetry_check(word: &BraidWord, theta: f64) -> Result<f64> {
    let direct = evaluate(word, theta)?;
    let mirrored = evaluate(&word.mirror(), theta)?;
    Ok((mirrored - direct.conj()).norm())
}

/// `(-1)^{c-1} [2]^{n-1}` in `x = q^{1/2}`: the factor turning the plat
/// element of a word with `c` components on `2n` strands into its Jones
/// polynomial. The identity braid gives the `n`-component unlink.
pub fn normalization(n: usize, components: usize) -> LaurentPoly {
    let two = LaurentPoly::from_int_terms([(1, 1), (-1, 1)]);
    let sign = if components % 2 == 1 { 1 } else { -1 };
    two.pow(n as u32 - 1).scale(Rational64::from_integer(sign))
}

/// Default fit window in `x`: each crossing moves the degree by at most 3,
/// the normalization by `n - 1`.
pub fn default_window(word: &BraidWord) -> (i32, i32) {
    let r = (3 * word.crossing_count() + word.n() - 1) as i32;
    (-r, r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct JonesOptions {
    /// Grid size before near-degenerate points are dropped; defaults to
    /// `max(64, 2·width + 16)`.
    pub samples: Option<usize>,
    pub window: Option<(i32, i32)>,
    pub tolerance: f64,
}

impl Default for JonesOptions {
    fn default() -> Self {
        Self {
            samples: None,
            window: None,
            tolerance: DEFAULT_FIT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct JonesReport {
    /// In `x = q^{1/2}`.
    pub polynomial: LaurentPoly,
    pub residual: f64,
    pub condition: f64,
    pub window: (i32, i32),
    pub normalization: LaurentPoly,
    pub components: usize,
    pub flips: Vec<bool>,
    pub operator_count: usize,
    pub program: String,
    /// Raw plat elements before normalization.
    pub samples: Vec<Sample>,
}

/// Samples closer than this (in `|sin(kθ/2)|`) to a zero of some `[k]` are
/// dropped from the fit.
pub const MIN_SAMPLE_MARGIN: f64 = 0.05;

/// Sample phases `θ_j = 4π(j + φ)/N`, covering the full circle in
/// `x = q^{1/2}`. `φ` is chosen to keep every `[k]`, `k ≤ kmax`, as far from
/// zero as the grid allows; points within [`MIN_SAMPLE_MARGIN`] of a zero
/// are then discarded, since the continued duality matrix amplifies rounding
/// there.
pub fn sample_grid(count: usize, kmax: usize) -> Vec<f64> {
    let margin_at = |t: f64| -> f64 {
        (1..=kmax)
            .map(|k| (k as f64 * t / 2.0).sin().abs())
            .fold(f64::INFINITY, f64::min)
    };
    let grid = |phi: f64| -> Vec<f64> {
        (0..count)
            .map(|j| 4.0 * PI * (j as f64 + phi) / count as f64)
            .collect()
    };
    let margin = |thetas: &[f64]| thetas.iter().map(|&t| margin_at(t)).fold(f64::INFINITY, f64::min);
    let best = (0..64)
        .map(|i| (i as f64 + 0.5) / 64.0)
        .max_by(|a, b| margin(&grid(*a)).total_cmp(&margin(&grid(*b))))
        .unwrap();
    grid(best).into_iter().filter(|&t| margin_at(t) >= MIN_SAMPLE_MARGIN).collect()
}

/// Samples the continued plat element over the circle, normalizes, and fits
/// an exact Laurent polynomial in `x = q^{1/2}`.
pub fn jones(word: &BraidWord, options: &JonesOptions) -> Result<JonesReport> {
    let annotated = annotate(word)?;
    let program = compile(&annotated.word)?;
    let n = word.n();
    let c = components(word);
    let window = options.window.unwrap_or_else(|| default_window(word));
    let width = (window.1 - window.0 + 1).max(0) as usize;
    let samples = options.samples.unwrap_or(64.max(2 * width + 16));
    if samples < width + 8 {
        return Err(Error::InsufficientSamples {
            needed: width + 8,
            width,
            got: samples,
        });
    }
    let norm = normalization(n, c);
    let thetas = sample_grid(samples, n + 2);
    let mut raw = Vec::with_capacity(samples);
    let mut fit_input = Vec::with_capacity(samples);
    for &theta in &thetas {
        let point = QPoint::new(theta);
        let value = program.matrix_element(&point, Branch::Continued)?;
        raw.push(Sample {
            theta,
            re: value.re,
            im: value.im,
        });
        fit_input.push((theta, value * norm.eval(&point)));
    }
    let fit = laurent_fit(&fit_input, window, options.tolerance)?;
    Ok(JonesReport {
        polynomial: fit.polynomial,
        residual: fit.residual,
        condition: fit.condition,
        window,
        normalization: norm,
        components: c,
        flips: annotated.word.flips().map(<[bool]>::to_vec).unwrap_or_default(),
        operator_count: program.operator_count(),
        program: program.to_string(),
        samples: raw,
    })
}

/// Factor `ε·q^{s/4}` (`ε = ±1`, `s` even) with `lhs = ε·q^{s/4}·rhs`, if any.
/// Polynomials are in `x = q^{1/2}`, so `s/2` is the exponent shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonomialFactor {
    pub sign: i32,
    pub quarter_exponent: i32,
}

pub fn match_up_to_monomial(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Option<MonomialFactor> {
    let (l0, r0) = (lhs.min_exponent()?, rhs.min_exponent()?);
    let shift = l0 - r0;
    for sign in [1i32, -1] {
        if rhs.shift(shift).scale(Rational64::from_integer(sign.into())) == *lhs {
            return Some(MonomialFactor {
                sign,
                quarter_exponent: 2 * shift,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{parse, random_word};
    use crate::fusion::racah;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BA: &str = "strands=4; b2^3 h1^-2 h3^-2 b2^3";
    const BB: &str = "strands=6; b2^-1 b4 h1^-2 h3^-3 h5^-2 h2 h4^2 b1 h2";

    fn w(s: &str) -> BraidWord {
        parse(s).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phase_examples() {
        let t = 0.7;
        let p = QPoint::new(t);
        let z = braiding_phase(0, Orientation::Parallel, Handedness::Right, &p);
        assert!((z + Complex64::from_polar(1.0, 1.5 * t)).norm() < 1e-15);
        let z = braiding_phase(2, Orientation::Antiparallel, Handedness::Right, &p);
        assert!((z + Complex64::from_polar(1.0, -t)).norm() < 1e-15);
        let z = braiding_phase(0, Orientation::Antiparallel, Handedness::Left, &p);
        assert_eq!(z, c(1.0, 0.0));
        for j in [0, 2] {
            for o in [Orientation::Parallel, Orientation::Antiparallel] {
                let r = braiding_phase(j, o, Handedness::Right, &p);
                let l = braiding_phase(j, o, Handedness::Left, &p);
                assert!((r * l - 1.0).norm() < 1e-15);
                assert!((r.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn compiles_ten_crossing_word_to_seven_factors() {
        let prog = compile_word(&w(BA)).unwrap();
        assert_eq!(prog.symbols(), ["a", "D_even", "a†", "D_odd", "a", "D_even", "a†"]);
        assert_eq!(
            prog.to_string(),
            "a · D_even(b2^3) · a† · D_odd(h1^-1 h1^-1 h3^-1 h3^-1) · a · D_even(b2^3) · a†"
        );
    }

    #[test]
    fn diagonal_factors_of_ten_crossing_word() {
        let p = QPoint::new(2.0 * PI / 7.0);
        let prog = compile_word(&w(BA)).unwrap();
        let (_, ops) = prog.instantiate(&p, Branch::Unitary).unwrap();
        let lp = |j| braiding_phase(j, Orientation::Parallel, Handedness::Right, &p);
        let la = |j| braiding_phase(j, Orientation::Antiparallel, Handedness::Right, &p);
        let BlockOperator::Diagonal { phases: f, basis: Basis::Even } = &ops[1] else { panic!() };
        let BlockOperator::Diagonal { phases: g, basis: Basis::Odd } = &ops[3] else { panic!() };
        assert_eq!(ops[1], ops[5]);
        for (k, j) in [0, 2].into_iter().enumerate() {
            assert!((f[k] - lp(j).powi(3)).norm() < 1e-14);
            // odd paths for n=2 have J₁ = J₃
            assert!((g[k] - la(j).powi(-4)).norm() < 1e-14);
        }
    }

    #[test]
    fn fourteen_crossing_word_program() {
        let prog = compile_word(&w(BB)).unwrap();
        assert_eq!(
            prog.symbols(),
            ["a", "D_even", "a†", "D_odd", "a", "D_even", "a†", "D_odd", "a", "D_even", "a†"]
        );
        assert!(prog.operator_count() <= 2 * prog.runs() + 1);
    }

    #[test]
    fn identity_program_is_empty() {
        for strands in [2, 4, 6] {
            let word = BraidWord::identity(strands).unwrap();
            let prog = compile_word(&word).unwrap();
            assert!(prog.steps.is_empty());
            assert_eq!(evaluate(&word, 1.0).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn compile_rejects_auto() {
        assert_eq!(compile(&w("strands=4; g2")), Err(Error::UnannotatedSyllable(0)));
    }

    #[test]
    fn diagonal_rejects_wrong_parity() {
        let run = [Syllable::new(2, 1, Orientation::Parallel)];
        assert!(matches!(
            diagonal_operator(&run, Basis::Odd, 2, &QPoint::new(1.0)),
            Err(Error::ParityMismatch { index: 2, .. })
        ));
        let id = diagonal_operator(&[], Basis::Even, 3, &QPoint::new(1.0)).unwrap();
        assert_eq!(id.to_matrix(), DMatrix::identity(5, 5));
    }

    #[test]
    fn single_antiparallel_crossing_by_hand() {
        let theta = 1.3;
        let p = QPoint::new(theta);
        let a00 = racah(0, 0, [1; 4], &p, Branch::Unitary).unwrap();
        let a01 = racah(0, 2, [1; 4], &p, Branch::Unitary).unwrap();
        let expect = a00 * a00 - a01 * a01 * p.q_power(-4);
        // Not a closed plat (the caps see parallel strands), but the
        // program is well defined.
        let got = compile(&w("strands=4; h2")).unwrap().matrix_element(&p, Branch::Unitary).unwrap();
        assert!((got - expect).norm() < 1e-14);
        let expect = a00 * a00 + a01 * a01 * p.q_power(-8);
        assert!((evaluate(&w("strands=4; h2^2"), theta).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn unlink_and_unknot() {
        let r = jones(&BraidWord::identity(2).unwrap(), &JonesOptions::default()).unwrap();
        assert_eq!(r.polynomial, LaurentPoly::one());
        let r = jones(&BraidWord::identity(4).unwrap(), &JonesOptions::default()).unwrap();
        assert_eq!(r.polynomial, LaurentPoly::from_int_terms([(1, -1), (-1, -1)]));
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn trefoils_and_hopf() {
        let left = jones(&w("strands=4; g2^-3"), &JonesOptions::default()).unwrap();
        assert_eq!(
            left.polynomial,
            LaurentPoly::from_int_terms([(-8, -1), (-6, 1), (-2, 1)])
        );
        let right = jones(&w("strands=4; g2^3"), &JonesOptions::default()).unwrap();
        assert_eq!(right.polynomial, left.polynomial.invert_variable());
        let hopf = jones(&w("strands=4; g2^2"), &JonesOptions::default()).unwrap();
        assert_eq!(hopf.polynomial, LaurentPoly::from_int_terms([(-1, -1), (-5, -1)]));
    }

    #[test]
    fn too_few_samples() {
        let opts = JonesOptions {
            samples: Some(10),
            ..Default::default()
        };
        assert!(matches!(
            jones(&w("strands=4; g2^3"), &opts),
            Err(Error::InsufficientSamples { got: 10, .. })
        ));
    }

    #[test]
    fn narrow_window_fails_the_fit() {
        let opts = JonesOptions {
            window: Some((-1, 1)),
            ..Default::default()
        };
        assert!(matches!(
            jones(&w("strands=4; g2^-3"), &opts),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn monomial_matching() {
        let a = LaurentPoly::from_int_terms([(-8, -1), (-6, 1), (-2, 1)]);
        let b = a.shift(3).scale(Rational64::from_integer(-1));
        assert_eq!(
            match_up_to_monomial(&b, &a),
            Some(MonomialFactor { sign: -1, quarter_exponent: 6 })
        );
        assert_eq!(match_up_to_monomial(&a, &a.invert_variable()), None);
    }

    #[test]
    fn unit_modulus_diagonals_and_bounded_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let strands = 2 * rng.random_range(1..=3);
            let word = random_word(&mut rng, strands, 10);
            let theta = rng.random_range(0.05..0.6);
            let prog = compile_word(&word).unwrap();
            let (_, ops) = prog.instantiate(&QPoint::new(theta), Branch::Unitary).unwrap();
            for op in &ops {
                if let BlockOperator::Diagonal { phases, .. } = op {
                    assert!(phases.iter().all(|z| (z.norm() - 1.0).abs() < 1e-13));
                }
            }
            assert!(prog.matrix_element(&QPoint::new(theta), Branch::Unitary).unwrap().norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn mirror_conjugates() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let word = random_word(&mut rng, 4, 8);
            let theta = rng.random_range(0.05..0.6);
            assert!(mirror_symmetry_check(&word, theta).unwrap() < 1e-10);
        }
        assert_eq!(mirror_symmetry_check(&BraidWord::identity(4).unwrap(), 0.3).unwrap(), 0.0);
    }

    #[test]
    fn normalization_values() {
        assert_eq!(normalization(1, 1), LaurentPoly::one());
        assert_eq!(normalization(2, 2), LaurentPoly::from_int_terms([(1, -1), (-1, -1)]));
        assert_eq!(normalization(3, 1), LaurentPoly::from_int_terms([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn grid_avoids_degenerate_points() {
        let g = sample_grid(200, 6);
        assert!(g.len() > 120 && g.len() < 200, "{}", g.len());
        for &t in &g {
            for k in 1..=6 {
                assert!((k as f64 * t / 2.0).sin().abs() >= MIN_SAMPLE_MARGIN);
            }
        }
    }

    use rand::Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn word_times_inverse_is_trivial(seed in any::<u64>(), half in 1usize..=3, theta in 0.05f64..0.6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let word = random_word(&mut rng, 2 * half, 8);
            let flips = crate::braid::default_flips(&word).unwrap();
            let word = word.with_flips(flips).unwrap();
            let both = word.concat(&word.inverse());
            let v = evaluate(&both, theta).unwrap();
            prop_assert!((v - 1.0).norm() < 1e-10, "{v}");
        }

        #[test]
        fn operator_count_bound(seed in any::<u64>(), half in 1usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let word = random_word(&mut rng, 2 * half, 20);
            let prog = compile_word(&word).unwrap();
            prop_assert!(prog.operator_count() <= 2 * prog.runs() + 1);
            prop_assert!(prog.operator_count() <= 2 * word.syllables().len() + 1);
        }
    }
}

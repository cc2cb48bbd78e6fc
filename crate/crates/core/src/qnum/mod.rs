//! q-arithmetic: q-numbers, q-factorials and triangle coefficients at a
//! deformation point, plus exact Laurent polynomials and their
//! reconstruction from unit-circle samples.
//!
//! A deformation point is either a phase `q = e^{iθ}` ([`QPoint`]) or a
//! positive real `q` ([`RealQPoint`]). In both cases the q-numbers are real.

mod fit;
mod laurent;

pub use fit::{laurent_fit, rationalize, FitReport, DEFAULT_FIT_TOLERANCE, MAX_DENOMINATOR};
pub use laurent::LaurentPoly;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// q-numbers with modulus below this are treated as vanishing.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Shared interface of the two deformation regimes.
pub trait Deformation: Copy + Send + Sync + std::fmt::Debug {
    /// `q^{k/4}` on the branch fixed by the point.
    fn q_power(&self, quarter_exponent: i32) -> Complex64;

    /// `[x] = (q^{x/2} - q^{-x/2}) / (q^{1/2} - q^{-1/2})`.
    fn q_number(&self, x: f64) -> Result<f64>;

    fn q(&self) -> Complex64 {
        self.q_power(4)
    }

    fn sqrt_q(&self) -> Complex64 {
        self.q_power(2)
    }

    /// `[x]! = [1][2]...[x]`, with `[0]! = 1`.
    fn q_factorial(&self, x: u32) -> Result<f64> {
        let mut acc = 1.0;
        for k in 1..=x {
            acc *= self.q_number(k as f64)?;
        }
        Ok(acc)
    }
}

/// `q = e^{iθ}` stored by its phase, so `q^{1/2} = e^{iθ/2}` and
/// `q^{1/4} = e^{iθ/4}` are unambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPoint {
    theta: f64,
}

impl QPoint {
    pub fn new(theta: f64) -> Self {
        Self { theta }
    }

    /// `θ = 2π / r`.
    pub fn root_of_unity(order: u32) -> Self {
        Self::new(std::f64::consts::TAU / order as f64)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `x = q^{1/2}`, the variable of [`LaurentPoly`].
    pub fn x(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta / 2.0)
    }
}

impl Deformation for QPoint {
    fn q_power(&self, quarter_exponent: i32) -> Complex64 {
        Complex64::from_polar(1.0, quarter_exponent as f64 * self.theta / 4.0)
    }

    fn q_number(&self, x: f64) -> Result<f64> {
        let denom = (self.theta / 2.0).sin();
        if denom.abs() < 1e-14 {
            return Err(Error::DegenerateQ { theta: self.theta });
        }
        Ok((x * self.theta / 2.0).sin() / denom)
    }
}

/// Positive real `q`, used where real spectra and eigenvectors are tested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealQPoint {
    q: f64,
}

impl RealQPoint {
    /// Panics unless `q > 0`.
    pub fn new(q: f64) -> Self {
        assert!(q > 0.0 && q.is_finite(), "real q must be positive, got {q}");
        Self { q }
    }

    /// The classical point `q = 1`.
    pub fn classical() -> Self {
        Self::new(1.0)
    }

    pub fn value(&self) -> f64 {
        self.q
    }

    /// `μ` with `q = e^{2μ}`.
    pub fn mu(&self) -> f64 {
        self.q.ln() / 2.0
    }
}

impl Deformation for RealQPoint {
    fn q_power(&self, quarter_exponent: i32) -> Complex64 {
        Complex64::new(self.q.powf(quarter_exponent as f64 / 4.0), 0.0)
    }

    fn q_number(&self, x: f64) -> Result<f64> {
        let mu = self.mu();
        if mu.abs() < 1e-300 {
            return Ok(x);
        }
        Ok((x * mu).sinh() / mu.sinh())
    }
}

/// Doubled spins `(a, b, c)` are admissible when they satisfy the triangle
/// inequalities and `a + b + c` is even.
pub fn is_admissible(two_a: u32, two_b: u32, two_c: u32) -> bool {
    (two_a + two_b + two_c).is_multiple_of(2)
        && two_c <= two_a + two_b
        && two_a <= two_b + two_c
        && two_b <= two_a + two_c
}

/// `Δ(a,b,c)²`, possibly negative away from the unitary regime.
pub fn triangle_radicand<D: Deformation>(
    two_a: u32,
    two_b: u32,
    two_c: u32,
    point: &D,
) -> Result<f64> {
    if !is_admissible(two_a, two_b, two_c) {
        return Err(Error::NonAdmissibleTriple(two_a, two_b, two_c));
    }
    let (a, b, c) = (two_a as i64, two_b as i64, two_c as i64);
    let num = [(-a + b + c) / 2, (a - b + c) / 2, (a + b - c) / 2];
    let top = ((a + b + c) / 2 + 1) as u32;
    let den = checked_factorial(top, point)?;
    let mut value = 1.0 / den;
    for k in num {
        value *= point.q_factorial(k as u32)?;
    }
    Ok(value)
}

/// `Δ(a,b,c) = sqrt([-a+b+c]! [a-b+c]! [a+b-c]! / [a+b+c+1]!)` on doubled
/// spins. Fails with [`Error::NegativeRadicand`] when the radicand is not
/// strictly positive.
pub fn triangle<D: Deformation>(two_a: u32, two_b: u32, two_c: u32, point: &D) -> Result<f64> {
    let value = triangle_radicand(two_a, two_b, two_c, point)?;
    if value <= DEGENERACY_EPS * DEGENERACY_EPS {
        return Err(Error::NegativeRadicand { value });
    }
    Ok(value.sqrt())
}

/// `[x]!` for use as a divisor.
pub(crate) fn checked_factorial<D: Deformation>(x: u32, point: &D) -> Result<f64> {
    for k in 1..=x {
        if point.q_number(k as f64)?.abs() < DEGENERACY_EPS {
            return Err(Error::VanishingDenominator { arg: x });
        }
    }
    point.q_factorial(x)
}

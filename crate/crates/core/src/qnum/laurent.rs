use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QPoint;

/// Exact Laurent polynomial with rational coefficients.
///
/// The exponent is taken in a single formal variable. Throughout the crate that
/// variable is `x = q^{1/2}` (so `t^{1/2}` for Jones polynomials), except for
/// Kauffman brackets, which use `A`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational64::one())
    }

    pub fn monomial(exponent: i32, coefficient: Rational64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_int_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, Rational64::from_integer(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i32, coefficient: Rational64) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(Rational64::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> Rational64 {
        self.terms.get(&exponent).copied().unwrap_or_else(Rational64::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Rational64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `var -> var^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Substitutes `var -> var^k`.
    pub fn scale_exponents(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// Divides every exponent by `k`, or `None` if some exponent is not a multiple.
    pub fn divide_exponents(&self, k: i32) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Self::from_terms(self.terms().map(|(e, c)| (e / k, c))))
    }

    pub fn scale(&self, factor: Rational64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * factor)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at an arbitrary complex value of the variable.
    pub fn eval_at(&self, var: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&e, c)| var.powi(e) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// `Σ c_k e^{ikθ/2}`: the polynomial in `x = q^{1/2}` at `q = e^{iθ}`.
    pub fn eval(&self, point: &QPoint) -> Complex64 {
        let theta = point.theta();
        self.terms
            .iter()
            .map(|(&e, c)| {
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), e as f64 * theta / 2.0)
            })
            .sum()
    }

    /// Renders in the variable `q` assuming the stored variable is `q^{1/2}`.
    pub fn to_q_string(&self) -> String {
        self.render(|e| {
            if e % 2 == 0 {
                match e / 2 {
                    0 => String::new(),
                    1 => "q".to_string(),
                    k => format!("q^{k}"),
                }
            } else {
                format!("q^{{{e}/2}}")
            }
        })
    }

    /// Renders in the stored variable under the given name.
    pub fn to_string_in(&self, var: &str) -> String {
        self.render(|e| match e {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        })
    }

    fn render(&self, power: impl Fn(i32) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let p = power(e);
            if p.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&p);
            } else {
                out.push_str(&format!("{mag} {p}"));
            }
        }
        out
    }
}

/// Serialized as a map from exponent (as a string key) to coefficient: an
/// integer when integral, otherwise `"p/q"`.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            if c.is_integer() {
                map.serialize_entry(&e.to_string(), c.numer())?;
            } else {
                map.serialize_entry(&e.to_string(), &c.to_string())?;
            }
        }
        map.end()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_string_in("x"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_q_string())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-Rational64::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -5i64..6, 1i64..4), 0..6).prop_map(|v| {
            LaurentPoly::from_terms(v.into_iter().map(|(e, n, d)| (e, Rational64::new(n, d))))
        })
    }

    #[test]
    fn eval_examples() {
        let p = QPoint::new(1.3);
        assert_eq!(LaurentPoly::zero().eval(&p), Complex64::new(0.0, 0.0));
        let x2 = LaurentPoly::from_int_terms([(2, 1)]);
        assert!((x2.eval(&QPoint::new(PI)) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let sym = LaurentPoly::from_int_terms([(1, 1), (-1, 1)]);
        for theta in [0.2, 1.7, 3.9] {
            let v = sym.eval(&QPoint::new(theta));
            assert!((v - Complex64::new(2.0 * (theta / 2.0).cos(), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let mut p = LaurentPoly::from_int_terms([(1, 2), (3, -1)]);
        p.add_term(1, Rational64::from_integer(-2));
        assert_eq!(p.terms().count(), 1);
        assert_eq!(p.min_exponent(), Some(3));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn render_in_q() {
        // -q^-4 + q^-3 + q^-1 in x = q^{1/2}.
        let p = LaurentPoly::from_int_terms([(-8, -1), (-6, 1), (-2, 1)]);
        assert_eq!(p.to_q_string(), "-q^-4 + q^-3 + q^-1");
        let unlink = LaurentPoly::from_int_terms([(-1, -1), (1, -1)]);
        assert_eq!(unlink.to_q_string(), "-q^{-1/2} - q^{1/2}");
        assert_eq!(LaurentPoly::one().to_q_string(), "1");
        assert_eq!(LaurentPoly::zero().to_q_string(), "0");
        let frac = LaurentPoly::from_terms([(0, Rational64::new(3, 2)), (2, Rational64::new(-2, 1))]);
        assert_eq!(frac.to_q_string(), "3/2 - 2 q");
        assert_eq!(frac.to_string_in("A"), "3/2 - 2 A^2");
    }

    #[test]
    fn shift_and_inversion() {
        let p = LaurentPoly::from_int_terms([(-2, 1), (3, -4)]);
        assert_eq!(p.shift(2), LaurentPoly::from_int_terms([(0, 1), (5, -4)]));
        assert_eq!(p.invert_variable().invert_variable(), p);
        assert_eq!(p.scale_exponents(2).divide_exponents(2), Some(p.clone()));
        assert_eq!(p.divide_exponents(2), None);
    }

    proptest! {
        #[test]
        fn ring_laws(p in poly_strategy(), r in poly_strategy(), s in poly_strategy()) {
            prop_assert_eq!(&(&p + &r) * &s, &(&p * &s) + &(&r * &s));
            prop_assert_eq!(&p * &r, &r * &p);
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        }

        #[test]
        fn eval_is_multiplicative(p in poly_strategy(), r in poly_strategy(), theta in 0.1f64..12.0) {
            let point = QPoint::new(theta);
            let lhs = (&p * &r).eval(&point);
            let rhs = p.eval(&point) * r.eval(&point);
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}

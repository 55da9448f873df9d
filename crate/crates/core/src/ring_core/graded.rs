use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in one variable `S` with integer coefficients.
///
/// Stored sparsely; no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &GradedPoly, b: &GradedPoly, op: PolyOp) -> GradedPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exponent: i64, coefficient: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// `c_0 + c_1 S + c_2 S^2 + ...`
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 + S^step + S^{2 step} + ... + S^{(count-1) step}`
    pub fn geometric(step: i64, count: usize) -> Self {
        Self::from_terms((0..count as i64).map(|i| (i * step, 1)))
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Value at `S = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `S^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `S^d P(1/S)`.
    pub fn reflect(&self, d: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (d - e, c.clone())).collect(),
        }
    }

    /// Exact quotient in `Z[S, S^-1]`, or `None` when `divisor` does not divide
    /// `self` with integral quotient.
    pub fn div_exact(&self, divisor: &GradedPoly) -> Option<GradedPoly> {
        if self.is_zero() {
            return (!divisor.is_zero()).then(GradedPoly::zero);
        }
        let nlow = self.min_degree()?;
        let dlow = divisor.min_degree()?;
        let (q, r) = self.shift(-nlow).div_rem(&divisor.shift(-dlow))?;
        r.is_zero().then(|| q.shift(nlow - dlow))
    }

    /// Long division of ordinary polynomials (no negative exponents). Returns
    /// `None` for a zero divisor or when a leading coefficient fails to divide.
    pub fn div_rem(&self, divisor: &GradedPoly) -> Option<(GradedPoly, GradedPoly)> {
        let width = divisor.degree()?;
        let lead = divisor.coeff(width);
        let mut rem = self.clone();
        let mut quot = GradedPoly::zero();
        while let Some(top) = rem.degree() {
            if top < width {
                break;
            }
            let (factor, leftover) = rem.coeff(top).div_rem(&lead);
            if !leftover.is_zero() {
                return None;
            }
            let step = top - width;
            for (e, dc) in divisor.terms() {
                rem.add_term(e + step, -(dc * &factor));
            }
            quot.add_term(step, factor);
        }
        Some((quot, rem))
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;

    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;

    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;

    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;

    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "S")?,
                _ => write!(f, "S^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> GradedPoly {
        GradedPoly::from_coeffs(c.iter().copied())
    }

    #[test]
    fn binomial_square() {
        let a = p(&[1, 1]);
        assert_eq!(poly_arith(&a, &a, PolyOp::Mul), p(&[1, 2, 1]));
    }

    #[test]
    fn zero_absorbs() {
        let a = p(&[3, 0, -2, 7]);
        assert!(poly_arith(&a, &GradedPoly::zero(), PolyOp::Mul).is_zero());
    }

    #[test]
    fn distinct_exponents_do_not_collide() {
        let a = GradedPoly::from_terms([(0, 1), (3, 1)]);
        let b = GradedPoly::from_terms([(0, 1), (5, 1)]);
        let expected = GradedPoly::from_terms([(0, 1), (3, 1), (5, 1), (8, 1)]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = p(&[1, 2]);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.terms().count(), 0);
    }

    #[test]
    fn exact_division_and_failure() {
        let num = p(&[-1, 0, 0, 1]); // S^3 - 1
        let den = p(&[-1, 1]);
        assert_eq!(num.div_exact(&den), Some(p(&[1, 1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&den), None);
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn laurent_division_restores_shift() {
        let num = GradedPoly::from_terms([(-2, 1), (0, 1)]);
        let den = GradedPoly::from_terms([(-1, 1), (1, 1)]);
        assert_eq!(num.div_exact(&den), Some(GradedPoly::monomial(-1, 1)));
    }

    #[test]
    fn display() {
        assert_eq!(GradedPoly::from_terms([(0, 1), (1, -2), (3, 1), (-1, 4)]).to_string(), "4S^-1 + 1 - 2S + S^3");
    }
}

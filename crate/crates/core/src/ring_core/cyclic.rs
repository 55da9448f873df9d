use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{GradedPoly, RingError};

/// Element of `Z[S]/(S^N - 1)`, stored as the coefficient vector indexed by `Z/N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicPoly {
    modulus: usize,
    #[serde(with = "crate::serde_bigint::vec")]
    coeffs: Vec<BigInt>,
}

/// Fold exponents of `p` modulo `n`, Laurent exponents included.
pub fn cyclic_reduce(p: &GradedPoly, n: usize) -> Result<CyclicPoly, RingError> {
    if n == 0 {
        return Err(RingError::InvalidModulus(n));
    }
    let mut coeffs = vec![BigInt::zero(); n];
    for (e, c) in p.terms() {
        coeffs[e.rem_euclid(n as i64) as usize] += c;
    }
    Ok(CyclicPoly { modulus: n, coeffs })
}

impl CyclicPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, RingError> {
        if coeffs.is_empty() {
            return Err(RingError::InvalidModulus(0));
        }
        Ok(Self { modulus: coeffs.len(), coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, RingError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, class: i64) -> &BigInt {
        &self.coeffs[class.rem_euclid(self.modulus as i64) as usize]
    }

    /// Sum of coefficients: the value at `S = 1`.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Canonical representative with exponents in `0..N`.
    pub fn representative(&self) -> GradedPoly {
        GradedPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    fn check_modulus(&self, other: &CyclicPoly) -> Result<(), RingError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(RingError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(&self, other: &CyclicPoly) -> Result<CyclicPoly, RingError> {
        self.check_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclicPoly { modulus: self.modulus, coeffs })
    }

    /// Product in the cyclic ring (cyclic convolution).
    pub fn checked_mul(&self, other: &CyclicPoly) -> Result<CyclicPoly, RingError> {
        self.check_modulus(other)?;
        let n = self.modulus;
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[(i + j) % n] += a * b;
            }
        }
        Ok(CyclicPoly { modulus: n, coeffs })
    }

    /// Whether `c_j = c_{j+q}` for every class `j`.
    pub fn is_periodic(&self, q: usize) -> bool {
        q > 0 && (0..self.modulus).all(|j| self.coeffs[j] == self.coeffs[(j + q) % self.modulus])
    }
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod S^{} - 1", self.representative(), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &CyclicPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn fold_with_wraparound() {
        let p = GradedPoly::from_terms([(0, 1), (3, 1), (5, 1), (8, 1)]);
        assert_eq!(ints(&cyclic_reduce(&p, 6).unwrap()), vec![1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn laurent_exponent_wraps() {
        let p = GradedPoly::monomial(-1, 1);
        assert_eq!(ints(&cyclic_reduce(&p, 4).unwrap()), vec![0, 0, 0, 1]);
    }

    #[test]
    fn binomial_square_mod_two() {
        let p = GradedPoly::from_coeffs([1, 2, 1]);
        assert_eq!(ints(&cyclic_reduce(&p, 2).unwrap()), vec![2, 2]);
    }

    #[test]
    fn zero_modulus_rejected() {
        assert_eq!(cyclic_reduce(&GradedPoly::one(), 0), Err(RingError::InvalidModulus(0)));
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let a = CyclicPoly::from_ints(&[1, 1]).unwrap();
        let b = CyclicPoly::from_ints(&[1, 1, 1]).unwrap();
        assert_eq!(a.checked_mul(&b), Err(RingError::ModulusMismatch(2, 3)));
    }

    #[test]
    fn periodicity() {
        let p = CyclicPoly::from_ints(&[1, 0, 1, 0, 1, 0]).unwrap();
        assert!(p.is_periodic(2));
        assert!(!p.is_periodic(1));
        assert!(p.is_periodic(6));
    }
}

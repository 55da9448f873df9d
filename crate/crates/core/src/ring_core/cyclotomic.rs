use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{CyclicPoly, GradedPoly, RingError};

/// Element of `Z[S]/(Phi_d(S))`, stored as the `phi(d)` coefficients of the
/// canonical remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicResidue {
    conductor: usize,
    #[serde(with = "crate::serde_bigint::vec")]
    coeffs: Vec<BigInt>,
}

impl CyclotomicResidue {
    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// The `d`-th cyclotomic polynomial, obtained by dividing `S^d - 1` by
/// `Phi_e` for every proper divisor `e` of `d`.
pub fn cyclotomic(d: usize) -> Result<GradedPoly, RingError> {
    if d == 0 {
        return Err(RingError::InvalidConductor { conductor: 0, modulus: 0 });
    }
    let mut table: BTreeMap<usize, GradedPoly> = BTreeMap::new();
    for e in divisors(d) {
        let mut phi = GradedPoly::from_terms([(0, -1), (e as i64, 1)]);
        for (f, phi_f) in table.iter().filter(|(f, _)| e % **f == 0) {
            debug_assert!(*f < e);
            phi = phi.div_exact(phi_f).expect("cyclotomic factors divide S^e - 1");
        }
        table.insert(e, phi);
    }
    Ok(table.remove(&d).expect("d divides itself"))
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

/// Remainder of `p` modulo `Phi_d`; zero exactly when `p` vanishes at every
/// primitive `d`-th root of unity. Requires `d | N`.
pub fn eval_at_root(p: &CyclicPoly, d: usize) -> Result<CyclotomicResidue, RingError> {
    let n = p.modulus();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(RingError::InvalidConductor { conductor: d, modulus: n });
    }
    let phi = cyclotomic(d)?;
    let (_, rem) = p
        .representative()
        .div_rem(&phi)
        .expect("cyclotomic polynomials are monic");
    let width = euler_phi(d);
    let coeffs = (0..width as i64).map(|i| rem.coeff(i)).collect();
    Ok(CyclotomicResidue { conductor: d, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::cyclic_reduce;

    fn coeffs(p: &GradedPoly) -> Vec<i64> {
        let top = p.degree().unwrap();
        (0..=top).map(|i| i64::try_from(&p.coeff(i)).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(coeffs(&cyclotomic(1).unwrap()), vec![-1, 1]);
        assert_eq!(coeffs(&cyclotomic(4).unwrap()), vec![1, 0, 1]);
        assert_eq!(coeffs(&cyclotomic(6).unwrap()), vec![1, -1, 1]);
        assert_eq!(coeffs(&cyclotomic(12).unwrap()), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn conductor_one_is_total_dimension() {
        let p = CyclicPoly::from_ints(&[3, 0, 5, -1]).unwrap();
        let r = eval_at_root(&p, 1).unwrap();
        assert_eq!(r.coeffs(), &[BigInt::from(7)]);
    }

    #[test]
    fn conductor_must_divide_modulus() {
        let p = CyclicPoly::from_ints(&[1, 1, 1, 1]).unwrap();
        assert_eq!(
            eval_at_root(&p, 3),
            Err(RingError::InvalidConductor { conductor: 3, modulus: 4 })
        );
    }

    #[test]
    fn psu3_vanishes_at_sixth_roots() {
        let p = GradedPoly::from_terms([(0, 1), (3, 1), (5, 1), (8, 1)]);
        let folded = cyclic_reduce(&p, 6).unwrap();
        assert!(eval_at_root(&folded, 6).unwrap().is_zero());
        assert!(!eval_at_root(&folded, 3).unwrap().is_zero());
    }

    #[test]
    fn torus_vanishes_at_minus_one() {
        for n in 1..8 {
            let p = GradedPoly::from_coeffs([1, 1]).pow(n);
            let folded = cyclic_reduce(&p, 2).unwrap();
            assert!(eval_at_root(&folded, 2).unwrap().is_zero());
        }
    }
}

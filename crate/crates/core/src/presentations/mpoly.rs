use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Exponents = Vec<u32>;

/// Commutative polynomial with integer coefficients in a fixed number of
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    arity: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MPoly {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, 1)
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exponents: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c.into());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, exponents: Exponents, c: BigInt) {
        assert_eq!(exponents.len(), self.arity, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        let mut out = MPoly::zero(self.arity);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = MPoly::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::one(self.arity), |acc, _| acc.mul(self))
    }

    /// Weighted degree of every term, or `None` for a mixed-degree polynomial.
    /// The zero polynomial is homogeneous of every degree and reports `Some(None)`.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<Option<u32>> {
        let mut degrees = self.terms.keys().map(|e| weighted_degree(e, weights));
        match degrees.next() {
            None => Some(None),
            Some(d) => degrees.all(|x| x == d).then_some(Some(d)),
        }
    }

    /// Part of weighted degree exactly `degree`.
    pub fn component(&self, weights: &[u32], degree: u32) -> MPoly {
        MPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `images[i]` for variable `i`; images share a target arity.
    pub fn substitute(&self, images: &[MPoly], target_arity: usize) -> MPoly {
        assert_eq!(images.len(), self.arity, "one image per variable");
        let mut out = MPoly::zero(target_arity);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(target_arity, c.clone());
            for (image, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&image.pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Whether variable `index` occurs in some term.
    pub fn mentions(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e[index] > 0)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest-degree terms first reads more naturally.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            match (mono.is_empty(), magnitude.is_one()) {
                (true, _) => out.push_str(&magnitude.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    let _ = write!(out, "{magnitude}*{}", mono.join("*"));
                }
            }
        }
        out
    }
}

pub fn weighted_degree(exponents: &[u32], weights: &[u32]) -> u32 {
    exponents.iter().zip(weights).map(|(e, w)| e * w).sum()
}

/// Every exponent vector of weighted degree `degree`, in graded
/// lexicographic order by variable position.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Exponents> {
    fn go(weights: &[u32], index: usize, remaining: u32, current: &mut Exponents, out: &mut Vec<Exponents>) {
        if index == weights.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let w = weights[index];
        let max = remaining.checked_div(w).unwrap_or(0);
        for k in (0..=max).rev() {
            current[index] = k;
            go(weights, index + 1, remaining - k * w, current, out);
        }
        current[index] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, degree, &mut vec![0; weights.len()], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_render() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.add(&y).pow(2);
        let names = ["x".to_string(), "y".to_string()];
        assert_eq!(p.render(&names), "x^2 + 2*x*y + y^2");
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.homogeneous_degree(&[1, 1]), Some(Some(2)));
        assert_eq!(x.add(&MPoly::one(2)).homogeneous_degree(&[1, 1]), None);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.mul(&y).sub(&MPoly::constant(2, 3));
        let q = p.substitute(&[y.clone(), y.clone()], 2);
        assert_eq!(q, y.pow(2).sub(&MPoly::constant(2, 3)));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(&[2, 2, 4], 4).len(), 4);
        assert_eq!(monomials_of_degree(&[2], 6), vec![vec![3]]);
        assert!(monomials_of_degree(&[2], 3).is_empty());
    }
}

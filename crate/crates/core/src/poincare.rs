//! Poincaré polynomials of the spaces the classifiers need, and binomial
//! coefficients modulo a prime.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring_core::{is_prime, Characteristic, GradedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoincareError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("characteristic {0} is not prime")]
    InvalidCharacteristic(u64),
    #[error("(n, k) = ({n}, {k}) is outside the family 1 <= k < n")]
    OutOfFamily { n: u64, k: u64 },
}

/// A space whose rational or mod-p cohomology has a closed-form Poincaré
/// polynomial. JSON form: `{"variant": "flag", "parts": [1, 1, 1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    /// Exterior algebra on odd-degree generators.
    ExteriorAlgebra { degrees: Vec<u32> },
    /// `PSU(n)` over a field of the given characteristic.
    Psu { n: u32, characteristic: Characteristic },
    /// Partial flag variety with block sizes `k_1, ..., k_r`.
    Flag { parts: Vec<u32> },
    /// Grassmannian of `k`-planes in `C^n`.
    Grassmannian { k: u32, n: u32 },
    Torus { n: u32 },
    /// `K[x]/(x^truncation)` with `deg x = degree`.
    TruncatedPoly { degree: u32, truncation: u32 },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<(), PoincareError> {
        let bad = |msg: String| Err(PoincareError::InvalidSpace(msg));
        match self {
            SpaceSpec::ExteriorAlgebra { degrees } => {
                if let Some(d) = degrees.iter().find(|d| **d == 0 || **d % 2 == 0) {
                    return bad(format!("exterior generator degree {d} must be odd and positive"));
                }
            }
            SpaceSpec::Psu { n, .. } if *n < 2 => return bad(format!("PSU(n) needs n >= 2, got {n}")),
            SpaceSpec::Flag { parts } => {
                if parts.len() < 2 {
                    return bad("a flag needs at least two parts".into());
                }
                if parts.contains(&0) {
                    return bad("flag parts must be positive".into());
                }
            }
            SpaceSpec::Grassmannian { k, n } if k > n || *n == 0 => {
                return bad(format!("Gr({k}, {n}) needs 0 <= k <= n, n >= 1"))
            }
            SpaceSpec::Torus { n } if *n == 0 => return bad("torus dimension must be positive".into()),
            SpaceSpec::TruncatedPoly { degree, truncation } if *degree == 0 || *truncation == 0 => {
                return bad("truncated polynomial needs positive degree and truncation".into())
            }
            _ => {}
        }
        Ok(())
    }

    /// Real dimension of the closed manifold (or top degree of the algebra).
    pub fn dimension(&self) -> i64 {
        match self {
            SpaceSpec::ExteriorAlgebra { degrees } => degrees.iter().map(|&d| d as i64).sum(),
            SpaceSpec::Psu { n, .. } => (*n as i64).pow(2) - 1,
            SpaceSpec::Flag { parts } => {
                let mut total = 0i64;
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        total += 2 * (*a as i64) * (*b as i64);
                    }
                }
                total
            }
            SpaceSpec::Grassmannian { k, n } => 2 * (*k as i64) * (*n as i64 - *k as i64),
            SpaceSpec::Torus { n } => *n as i64,
            SpaceSpec::TruncatedPoly { degree, truncation } => {
                *degree as i64 * (*truncation as i64 - 1)
            }
        }
    }
}

pub fn poincare_poly(space: &SpaceSpec) -> Result<GradedPoly, PoincareError> {
    space.validate()?;
    Ok(match space {
        SpaceSpec::ExteriorAlgebra { degrees } => exterior(degrees.iter().copied()),
        SpaceSpec::Psu { n, characteristic } => psu_cohomology(*n, *characteristic)?.poincare_poly(),
        SpaceSpec::Flag { parts } => q_multinomial(parts),
        SpaceSpec::Grassmannian { k, n } => q_multinomial(&[*k, n - k]),
        SpaceSpec::Torus { n } => GradedPoly::from_coeffs([1, 1]).pow(*n),
        SpaceSpec::TruncatedPoly { degree, truncation } => {
            GradedPoly::geometric(*degree as i64, *truncation as usize)
        }
    })
}

fn exterior(degrees: impl IntoIterator<Item = u32>) -> GradedPoly {
    degrees.into_iter().fold(GradedPoly::one(), |acc, d| {
        &acc * &GradedPoly::from_terms([(0, 1), (d as i64, 1)])
    })
}

/// `[m]_q!` with `q = S^2`.
fn q_factorial(m: u32) -> GradedPoly {
    (1..=m).fold(GradedPoly::one(), |acc, i| &acc * &GradedPoly::geometric(2, i as usize))
}

/// `[n]_q! / prod_j [k_j]_q!` with `q = S^2` and `n = sum k_j`.
fn q_multinomial(parts: &[u32]) -> GradedPoly {
    let n: u32 = parts.iter().sum();
    parts.iter().fold(q_factorial(n), |acc, &k| {
        acc.div_exact(&q_factorial(k))
            .expect("q-factorials of the parts divide the q-factorial of the total")
    })
}

/// Graded structure of `H^*(PSU(n); K)`: an exterior algebra on
/// `x_{2j-1}` (the generator at `j = p^r` removed) tensored with
/// `K[y]/(y^{p^r})`, `deg y = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsuCohomology {
    pub n: u32,
    pub characteristic: Characteristic,
    /// Largest power of the characteristic dividing `n` (`1` in characteristic 0).
    pub prime_power: u64,
    pub exterior_degrees: Vec<u32>,
    /// Truncation height of `y`, when `y` is present.
    pub truncation: Option<u64>,
    /// Set when `p = 2`, `r = 1`: `x_1^2 = y`, so `y` is not an algebra generator.
    pub generation_shift: bool,
}

pub fn psu_cohomology(n: u32, characteristic: Characteristic) -> Result<PsuCohomology, PoincareError> {
    if n < 2 {
        return Err(PoincareError::InvalidSpace(format!("PSU(n) needs n >= 2, got {n}")));
    }
    let prime_power = characteristic.prime_power_part(n as u64);
    let exterior_degrees = (1..=n)
        .filter(|&j| j as u64 != prime_power)
        .map(|j| 2 * j - 1)
        .collect();
    Ok(PsuCohomology {
        n,
        characteristic,
        prime_power,
        exterior_degrees,
        truncation: (prime_power > 1).then_some(prime_power),
        generation_shift: characteristic.value() == 2 && prime_power == 2,
    })
}

impl PsuCohomology {
    pub fn poincare_poly(&self) -> GradedPoly {
        let ext = exterior(self.exterior_degrees.iter().copied());
        match self.truncation {
            Some(h) => &ext * &GradedPoly::geometric(2, h as usize),
            None => ext,
        }
    }

    /// Largest degree of a minimal set of algebra generators.
    pub fn generation_degree(&self) -> u32 {
        let ext = self.exterior_degrees.iter().copied().max().unwrap_or(0);
        if self.truncation.is_some() && !self.generation_shift {
            ext.max(2)
        } else {
            ext
        }
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> Result<u64, PoincareError> {
    if !is_prime(p) {
        return Err(PoincareError::InvalidCharacteristic(p));
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return Ok(0);
        }
        acc = (acc as u128 * small_binom_mod(a, b, p) as u128 % p as u128) as u64;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// `C(a, b) mod p` for `b <= a < p`.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let pm = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..b {
        num = num * ((a - i) as u128) % pm;
        den = den * ((i + 1) as u128) % pm;
    }
    // den is a unit since every factor is below p.
    let mut inv = 1u128;
    let (mut base, mut e) = (den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % pm;
        }
        base = base * base % pm;
        e >>= 1;
    }
    (num * inv % pm) as u64
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Whether `C(n, k)` is nonzero in a field of the given characteristic.
pub fn binom_nonzero(n: u64, k: u64, characteristic: Characteristic) -> bool {
    if characteristic.is_zero() {
        k <= n
    } else {
        binom_mod_p(n, k, characteristic.value()).expect("validated prime") != 0
    }
}

/// Smallest `N > n - k` with `C(n, N)` nonzero in the given characteristic.
pub fn generation_degree_stiefel(n: u64, k: u64, characteristic: Characteristic) -> Result<u64, PoincareError> {
    if k == 0 || k >= n {
        return Err(PoincareError::OutOfFamily { n, k });
    }
    Ok(((n - k + 1)..=n)
        .find(|&big_n| binom_nonzero(n, big_n, characteristic))
        .expect("C(n, n) = 1 is never zero"))
}

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::RingError;

/// Characteristic of a coefficient field: `0` for the rationals, otherwise a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Characteristic(u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(value: u64) -> Result<Self, RingError> {
        if value == 0 || is_prime(value) {
            Ok(Characteristic(value))
        } else {
            Err(RingError::InvalidCharacteristic(value))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Largest power of the characteristic dividing `n`; `1` in characteristic zero.
    pub fn prime_power_part(self, n: u64) -> u64 {
        if self.0 == 0 || n == 0 {
            return 1;
        }
        let mut power = 1;
        let mut rest = n;
        while rest.is_multiple_of(self.0) {
            rest /= self.0;
            power *= self.0;
        }
        power
    }

    /// Whether `n` is a (positive) power of this characteristic. Always false in
    /// characteristic zero.
    pub fn has_power(self, n: u64) -> bool {
        self.0 != 0 && n > 1 && self.prime_power_part(n) == n
    }

    /// Image of an integer in the prime field (or in Q).
    pub fn embed(self, value: &BigInt) -> Coefficient {
        if self.0 == 0 {
            Coefficient::Rational(BigRational::from_integer(value.clone()))
        } else {
            let m = BigInt::from(self.0);
            let mut r = value % &m;
            if r.is_negative() {
                r += &m;
            }
            Coefficient::Modular {
                residue: r.to_u64().expect("residue below modulus"),
                modulus: self.0,
            }
        }
    }

    pub fn zero_coefficient(self) -> Coefficient {
        self.embed(&BigInt::zero())
    }

    /// Whether the integer `value` vanishes in a field of this characteristic.
    pub fn kills(self, value: &BigInt) -> bool {
        self.embed(value).is_zero()
    }
}

impl TryFrom<u64> for Characteristic {
    type Error = RingError;

    fn try_from(value: u64) -> Result<Self, Self::Error> {
        Characteristic::new(value)
    }
}

impl From<Characteristic> for u64 {
    fn from(c: Characteristic) -> u64 {
        c.0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `|m|` in increasing order. Empty for `0` and `±1`.
pub fn prime_divisors(m: i64) -> Vec<u64> {
    let mut n = m.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An exact scalar tagged with its characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl Coefficient {
    pub fn characteristic(&self) -> u64 {
        match self {
            Coefficient::Rational(_) => 0,
            Coefficient::Modular { modulus, .. } => *modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_one(),
            Coefficient::Modular { residue, .. } => *residue == 1,
        }
    }

    fn same_field(&self, other: &Coefficient) -> Result<(), RingError> {
        let (a, b) = (self.characteristic(), other.characteristic());
        if a == b {
            Ok(())
        } else {
            Err(RingError::CharacteristicMismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient, RingError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (
                Coefficient::Modular { residue: a, modulus },
                Coefficient::Modular { residue: b, .. },
            ) => Coefficient::Modular {
                residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!("tags checked above"),
        })
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn checked_sub(&self, other: &Coefficient) -> Result<Coefficient, RingError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient, RingError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (
                Coefficient::Modular { residue: a, modulus },
                Coefficient::Modular { residue: b, .. },
            ) => Coefficient::Modular {
                residue: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!("tags checked above"),
        })
    }

    pub fn inverse(&self) -> Result<Coefficient, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(match self {
            Coefficient::Rational(a) => Coefficient::Rational(a.recip()),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: mod_pow(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => write!(f, "{q}"),
            Coefficient::Modular { residue, modulus } => write!(f, "{residue} (mod {modulus})"),
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_validation() {
        assert!(Characteristic::new(0).is_ok());
        assert!(Characteristic::new(7).is_ok());
        assert_eq!(Characteristic::new(9), Err(RingError::InvalidCharacteristic(9)));
        assert_eq!(Characteristic::new(1), Err(RingError::InvalidCharacteristic(1)));
    }

    #[test]
    fn prime_power_part_interprets_zero_as_one() {
        let two = Characteristic::new(2).unwrap();
        assert_eq!(two.prime_power_part(12), 4);
        assert_eq!(two.prime_power_part(7), 1);
        assert_eq!(Characteristic::ZERO.prime_power_part(12), 1);
        assert!(two.has_power(8));
        assert!(!two.has_power(12));
        assert!(!Characteristic::ZERO.has_power(1));
    }

    #[test]
    fn mixing_tags_is_an_error() {
        let a = Characteristic::ZERO.embed(&BigInt::from(3));
        let b = Characteristic::new(5).unwrap().embed(&BigInt::from(3));
        assert_eq!(a.checked_add(&b), Err(RingError::CharacteristicMismatch(0, 5)));
        assert_eq!(a.checked_mul(&b), Err(RingError::CharacteristicMismatch(0, 5)));
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = Characteristic::new(7).unwrap();
        for v in 1..7 {
            let x = f7.embed(&BigInt::from(v));
            assert!(x.checked_mul(&x.inverse().unwrap()).unwrap().is_one());
        }
        assert_eq!(f7.zero_coefficient().inverse(), Err(RingError::DivisionByZero));
        assert!(f7.kills(&BigInt::from(-14)));
    }

    #[test]
    fn prime_divisors_of_small_values() {
        assert_eq!(prime_divisors(-3), vec![3]);
        assert_eq!(prime_divisors(9), vec![3]);
        assert_eq!(prime_divisors(-7), vec![7]);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert!(prime_divisors(1).is_empty());
        assert!(prime_divisors(0).is_empty());
    }
}

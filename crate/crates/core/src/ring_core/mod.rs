//! Exact arithmetic substrate: integer Laurent polynomials in a grading
//! variable `S`, their reductions modulo `S^N - 1`, and exact evaluation at
//! roots of unity through cyclotomic quotients. Nothing here touches floating
//! point.

mod coefficient;
mod cyclic;
mod cyclotomic;
mod graded;

use thiserror::Error;

pub use coefficient::{is_prime, prime_divisors, Characteristic, Coefficient};
pub use cyclic::{cyclic_reduce, CyclicPoly};
pub use cyclotomic::{cyclotomic, divisors, euler_phi, eval_at_root, CyclotomicResidue};
pub use graded::{poly_arith, GradedPoly, PolyOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(usize),
    #[error("invalid conductor {conductor}: must divide the modulus {modulus}")]
    InvalidConductor { conductor: usize, modulus: usize },
    #[error("characteristic {0} is neither 0 nor prime")]
    InvalidCharacteristic(u64),
    #[error("cannot combine coefficients of characteristic {0} and {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("cyclic moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
}

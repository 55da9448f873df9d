//! Grading-periodicity decision procedures and the wide/narrow classifiers
//! built on them.
//!
//! A `q`-periodic Floer cohomology with `Z/N` grading has Floer–Poincaré
//! polynomial divisible by `S^q' + S^{2q'} + ... + S^N` in `Z[S]/(S^N - 1)`,
//! where `q' = gcd(q, N)`. Every classifier here either exhibits a failed
//! check of that kind (narrow) or a small generating set for the classical
//! cohomology (wide), and returns the data of the check as its certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poincare::{
    binom_mod_p, binom_nonzero, binomial, generation_degree_stiefel, psu_cohomology, PoincareError,
};
use crate::ring_core::{
    cyclic_reduce, divisors, eval_at_root, Characteristic, CyclicPoly, GradedPoly, RingError,
};
use crate::verdict::Status;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicityError {
    #[error("invalid period {period} for modulus {modulus}: need 1 <= q <= N")]
    InvalidPeriod { period: usize, modulus: usize },
    #[error("minimal Maslov number {0} gives nothing to prove (need an even N_L > 2)")]
    NothingToProve(usize),
    #[error("minimal Maslov number {0} must be even and positive")]
    InvalidMaslov(usize),
    #[error("exterior generator degree {0} is not odd")]
    EvenExteriorGenerator(u32),
    #[error("period {0} must be even")]
    OddPeriod(usize),
    #[error("period {period} exceeds the top generator bound {bound}")]
    PeriodAboveBound { period: usize, bound: usize },
    #[error("(n, k) = ({n}, {k}) is outside the family")]
    OutOfFamily { n: u64, k: u64 },
    #[error("certificate paths disagree for {0}")]
    CertificateMismatch(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

/// Outcome of testing a Floer–Poincaré polynomial for `q`-periodicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub modulus: usize,
    pub period: usize,
    /// `gcd(q, N)`.
    pub reduced_period: usize,
    /// `P_F` is a multiple of `S^q' + ... + S^N` in `Z[S]/(S^N - 1)`.
    pub divisible: bool,
    /// The cofactor (supported on exponents `< q'`) when `divisible`.
    pub quotient: Option<CyclicPoly>,
    #[serde(with = "crate::serde_bigint")]
    pub total_dimension: BigInt,
    /// `N / q'` divides `P_F(1)`.
    pub total_dimension_divisible: bool,
    /// Conductors `d | N`, `d ∤ q'`, at which `P_F` fails to vanish.
    pub nonvanishing_conductors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum FailedCheck {
    TotalDimension {
        #[serde(with = "crate::serde_bigint")]
        total: BigInt,
        divisor: usize,
    },
    RootVanishing { conductors: Vec<usize> },
}

impl PeriodicityReport {
    pub fn roots_vanish(&self) -> bool {
        self.nonvanishing_conductors.is_empty()
    }

    pub fn failed_checks(&self) -> Vec<FailedCheck> {
        let mut out = Vec::new();
        if !self.total_dimension_divisible {
            out.push(FailedCheck::TotalDimension {
                total: self.total_dimension.clone(),
                divisor: self.modulus / self.reduced_period,
            });
        }
        if !self.roots_vanish() {
            out.push(FailedCheck::RootVanishing { conductors: self.nonvanishing_conductors.clone() });
        }
        out
    }
}

/// `S^step + S^{2 step} + ... + S^N` reduced mod `S^N - 1`.
fn periodic_factor(modulus: usize, step: usize) -> CyclicPoly {
    let coeffs = (0..modulus)
        .map(|j| BigInt::from(u8::from(j % step == 0)))
        .collect();
    CyclicPoly::new(coeffs).expect("modulus is positive")
}

pub fn periodicity_test(p_f: &CyclicPoly, q: usize) -> Result<PeriodicityReport, PeriodicityError> {
    let modulus = p_f.modulus();
    if q == 0 || q > modulus {
        return Err(PeriodicityError::InvalidPeriod { period: q, modulus });
    }
    let reduced_period = q.gcd(&modulus);
    let factor = periodic_factor(modulus, reduced_period);

    // The factor times S^j is the indicator of the class of j mod q', so the
    // only candidate cofactor is the first q' coefficients of P_F.
    let candidate = CyclicPoly::new(
        (0..modulus)
            .map(|j| if j < reduced_period { p_f.coeffs()[j].clone() } else { BigInt::zero() })
            .collect(),
    )?;
    let divisible = &factor.checked_mul(&candidate)? == p_f;

    let total_dimension = p_f.total();
    let total_dimension_divisible = (&total_dimension % BigInt::from(modulus / reduced_period)).is_zero();

    let mut nonvanishing_conductors = Vec::new();
    for d in divisors(modulus).into_iter().filter(|d| !reduced_period.is_multiple_of(*d)) {
        if !eval_at_root(p_f, d)?.is_zero() {
            nonvanishing_conductors.push(d);
        }
    }

    Ok(PeriodicityReport {
        modulus,
        period: q,
        reduced_period,
        divisible,
        quotient: divisible.then_some(candidate),
        total_dimension,
        total_dimension_divisible,
        nonvanishing_conductors,
    })
}

/// Certificate that no 2-periodic wide torus brane has minimal Maslov number `N_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusBoundCertificate {
    pub n: u32,
    pub maslov: usize,
    pub report: PeriodicityReport,
    /// Residue of `(1 + S)^n` modulo `Phi_{N_L}`; nonzero since `1 + ζ ≠ 0`.
    #[serde(with = "crate::serde_bigint::vec")]
    pub witness_residue: Vec<BigInt>,
}

pub fn torus_maslov_bound(n: u32, maslov: usize) -> Result<TorusBoundCertificate, PeriodicityError> {
    if maslov <= 2 {
        return Err(PeriodicityError::NothingToProve(maslov));
    }
    if maslov % 2 == 1 {
        return Err(PeriodicityError::InvalidMaslov(maslov));
    }
    let folded = cyclic_reduce(&GradedPoly::from_coeffs([1, 1]).pow(n), maslov)?;
    let report = periodicity_test(&folded, 2)?;
    let residue = eval_at_root(&folded, maslov)?;
    assert!(
        !residue.is_zero() && !report.divisible,
        "1 + ζ vanishes only at ζ = -1"
    );
    Ok(TorusBoundCertificate { n, maslov, report, witness_residue: residue.coeffs().to_vec() })
}

/// Which step of the exterior-algebra Maslov bound closes the argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ExteriorStep {
    /// `N_L` does not exceed the top generator degree plus one.
    WithinBound,
    /// `P_F(ζ) ≠ 0` at a primitive `N_L`-th root: no `N_L = 2 d_j`.
    RootObstruction { conductor: usize },
    /// `N_L / q'` fails to divide the total dimension `2^r`.
    DimensionObstruction { quotient: usize, total_dimension: u64 },
    /// `q'` even forces `q' = N_L`, exceeding `q`.
    ParityObstruction { reduced_period: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorBoundVerdict {
    pub degrees: Vec<u32>,
    pub period: usize,
    pub maslov: usize,
    /// Largest degree plus one: the bound `N_L <= 2 k_r`.
    pub bound: usize,
    pub feasible: bool,
    pub step: ExteriorStep,
    pub report: Option<PeriodicityReport>,
}

pub fn exterior_maslov_bound(
    odd_degrees: &[u32],
    q: usize,
    maslov: usize,
) -> Result<ExteriorBoundVerdict, PeriodicityError> {
    if let Some(&d) = odd_degrees.iter().find(|d| **d % 2 == 0) {
        return Err(PeriodicityError::EvenExteriorGenerator(d));
    }
    if q == 0 || q % 2 == 1 {
        return Err(PeriodicityError::OddPeriod(q));
    }
    if maslov == 0 || maslov % 2 == 1 {
        return Err(PeriodicityError::InvalidMaslov(maslov));
    }
    let bound = odd_degrees.iter().copied().max().unwrap_or(0) as usize + 1;
    let verdict = |feasible, step, report| ExteriorBoundVerdict {
        degrees: odd_degrees.to_vec(),
        period: q,
        maslov,
        bound,
        feasible,
        step,
        report,
    };
    if maslov <= bound {
        return Ok(verdict(true, ExteriorStep::WithinBound, None));
    }
    if q > bound {
        return Err(PeriodicityError::PeriodAboveBound { period: q, bound });
    }

    let poly = odd_degrees.iter().fold(GradedPoly::one(), |acc, &d| {
        &acc * &GradedPoly::from_terms([(0, 1), (d as i64, 1)])
    });
    let folded = cyclic_reduce(&poly, maslov)?;
    let report = periodicity_test(&folded, q)?;
    let reduced_period = report.reduced_period;

    let step = if !eval_at_root(&folded, maslov)?.is_zero() {
        debug_assert!(odd_degrees.iter().all(|&d| 2 * d as usize != maslov));
        ExteriorStep::RootObstruction { conductor: maslov }
    } else {
        let total = 1u64 << odd_degrees.len();
        let quotient = maslov / reduced_period;
        if !total.is_multiple_of(quotient as u64) {
            ExteriorStep::DimensionObstruction { quotient, total_dimension: total }
        } else {
            // N_L = 2 d_j and N_L / q' a power of two leave q' in {d_j, 2 d_j};
            // q' is even, so q' = N_L > q.
            debug_assert!(reduced_period % 2 == 0);
            ExteriorStep::ParityObstruction { reduced_period }
        }
    };
    debug_assert!(!report.divisible);
    Ok(verdict(false, step, Some(report)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenerationVerdict {
    Wide,
    WideOrNarrow,
    NoInfo,
}

/// Wide/narrow information from the top degree of an algebra generating set
/// of `H^*(L; K)` relative to the minimal Maslov number.
pub fn generation_wide_narrow(generation_degree: i64, maslov: i64) -> GenerationVerdict {
    if generation_degree <= maslov - 2 {
        GenerationVerdict::Wide
    } else if generation_degree == maslov - 1 {
        GenerationVerdict::WideOrNarrow
    } else {
        GenerationVerdict::NoInfo
    }
}

pub const PSU_SCOPE: &str = "assumes a 2-periodic embedding with N_L >= 2n (so N_L = 2n); \
     covers every relative spin structure and flat line bundle";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsuCertificate {
    /// `H^*(PSU(n))` is generated below `N_L - 1`.
    Generation {
        maslov: usize,
        generator_degree: u32,
        generation_shift: bool,
        criterion: GenerationVerdict,
        periodicity: PeriodicityReport,
    },
    /// Wideness would make `P_F` divisible by the periodic factor; it is not.
    Periodicity {
        maslov: usize,
        generator_degree: u32,
        criterion: GenerationVerdict,
        failed: Vec<FailedCheck>,
        periodicity: PeriodicityReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsuVerdict {
    pub n: u32,
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub status: Status,
    pub certificate: PsuCertificate,
    pub scope: String,
}

pub fn classify_psu(n: u32, characteristic: Characteristic) -> Result<PsuVerdict, PeriodicityError> {
    if n < 2 {
        return Err(PeriodicityError::OutOfFamily { n: n as u64, k: n as u64 });
    }
    let cohomology = psu_cohomology(n, characteristic)?;
    let maslov = 2 * n as usize;
    let generator_degree = cohomology.generation_degree();
    let criterion = generation_wide_narrow(generator_degree as i64, maslov as i64);
    let folded = cyclic_reduce(&cohomology.poincare_poly(), maslov)?;
    let periodicity = periodicity_test(&folded, 2)?;

    let (status, certificate) = if characteristic.has_power(n as u64) {
        if criterion != GenerationVerdict::Wide || !periodicity.divisible {
            return Err(PeriodicityError::CertificateMismatch(format!("PSU({n}) in char {characteristic}")));
        }
        let certificate = PsuCertificate::Generation {
            maslov,
            generator_degree,
            generation_shift: cohomology.generation_shift,
            criterion,
            periodicity,
        };
        (Status::Wide, certificate)
    } else {
        if criterion == GenerationVerdict::Wide || periodicity.divisible {
            return Err(PeriodicityError::CertificateMismatch(format!("PSU({n}) in char {characteristic}")));
        }
        let certificate = PsuCertificate::Periodicity {
            maslov,
            generator_degree,
            criterion,
            failed: periodicity.failed_checks(),
            periodicity,
        };
        (Status::Narrow, certificate)
    };
    Ok(PsuVerdict { n, characteristic, status, certificate, scope: PSU_SCOPE.into() })
}

pub const STIEFEL_SCOPE: &str = "projective Stiefel manifold in Gr(k, n)^- x CP^{kn-1}, N_L = 2n; \
     covers every relative spin structure and flat line bundle";

/// Generation-degree route: the first `N > n - k` with `C(n, N)` nonzero
/// determines the top algebra generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StiefelGenerationPath {
    pub first_nonzero_index: u64,
    pub generator_degree: u64,
    pub maslov: u64,
    pub criterion: GenerationVerdict,
}

/// Chern-class route: `C(n, j) CO(H)^j = 0` for `j = n - p^r > n - k`, with
/// `C(n, j)` a unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialWitness {
    pub index: u64,
    #[serde(with = "crate::serde_bigint")]
    pub binomial: BigInt,
    /// `C(n, j) mod p`, or `None` in characteristic zero.
    pub residue: Option<u64>,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StiefelCertificate {
    pub generation: StiefelGenerationPath,
    pub witness: Option<BinomialWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StiefelVerdict {
    pub n: u64,
    pub k: u64,
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub prime_power: u64,
    pub status: Status,
    pub certificate: StiefelCertificate,
    pub scope: String,
}

/// Top algebra-generator degree of the projective Stiefel manifold cohomology
/// given the first nonvanishing binomial index `N`: a degree-2 class plus odd
/// classes `2j - 1`, `n - k < j <= n`, `j ≠ N`.
fn stiefel_generator_degree(n: u64, k: u64, first_nonzero_index: u64) -> u64 {
    ((n - k + 1)..=n)
        .filter(|&j| j != first_nonzero_index)
        .map(|j| 2 * j - 1)
        .max()
        .unwrap_or(0)
        .max(2)
}

pub fn classify_stiefel(n: u64, k: u64, characteristic: Characteristic) -> Result<StiefelVerdict, PeriodicityError> {
    if k == 0 || k >= n {
        return Err(PeriodicityError::OutOfFamily { n, k });
    }
    let prime_power = characteristic.prime_power_part(n);
    let maslov = 2 * n;

    let first_nonzero_index = generation_degree_stiefel(n, k, characteristic)?;
    let generator_degree = stiefel_generator_degree(n, k, first_nonzero_index);
    let generation = StiefelGenerationPath {
        first_nonzero_index,
        generator_degree,
        maslov,
        criterion: generation_wide_narrow(generator_degree as i64, maslov as i64),
    };

    let witness = (k > prime_power).then(|| {
        let index = n - prime_power;
        BinomialWitness {
            index,
            binomial: binomial(n, index),
            residue: (!characteristic.is_zero())
                .then(|| binom_mod_p(n, index, characteristic.value()).expect("validated prime")),
            rank: n - k,
        }
    });
    let witness_valid = witness
        .as_ref()
        .is_some_and(|w| w.index > w.rank && w.index < n && binom_nonzero(n, w.index, characteristic));

    let generation_wide = generation.criterion == GenerationVerdict::Wide;
    if generation_wide == witness_valid || (witness.is_some() && !witness_valid) {
        return Err(PeriodicityError::CertificateMismatch(format!(
            "projective Stiefel (n, k) = ({n}, {k}) in char {characteristic}"
        )));
    }
    let status = if generation_wide { Status::Wide } else { Status::Narrow };
    Ok(StiefelVerdict {
        n,
        k,
        characteristic,
        prime_power,
        status,
        certificate: StiefelCertificate { generation, witness },
        scope: STIEFEL_SCOPE.into(),
    })
}

/// A family verdict as emitted by the CLI, tagged by family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Verdict {
    Psu(PsuVerdict),
    Stiefel(StiefelVerdict),
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Psu(v) => v.status,
            Verdict::Stiefel(v) => v.status,
        }
    }
}

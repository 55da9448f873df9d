//! Sign transfer through a Lagrangian correspondence: the induced relative
//! spin structure on a Chekanov-type torus is pinned down by its disc
//! potential count `w`, and the signed boundaries of its index-2 discs give
//! the characteristics in which the composed Lagrangian is wide.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring_core::prime_divisors;
use crate::spin_gysin::{classify_gysin_family, GysinError, GysinFamily, GYSIN_NOTE};
use crate::verdict::{default_characteristics, format_signs, CharVerdict, Sign, Status};

pub const SO3_QUILT_JSON: &str = include_str!("../scenarios/quilt_so3.json");
pub const LENS_QUILT_JSON: &str = include_str!("../scenarios/quilt_lens.json");

/// Number of disc coordinates at the end of every class vector.
const DISC_COORDS: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiltError {
    #[error("ledger is malformed: {0}")]
    InvalidLedger(String),
    #[error("target w = {target} is unattainable with {discs} discs")]
    InvalidTarget { target: i64, discs: usize },
    #[error("scenario {scenario}: no delta reaches w = {target}")]
    NoSolution { scenario: String, target: i64 },
    #[error("scenario {scenario}: several deltas reach the target: {solutions:?}")]
    Ambiguous { scenario: String, solutions: Vec<(u8, u8)> },
    #[error("scenario {scenario}: boundary has nonzero D2 coefficient {coefficient}")]
    BoundaryD2 { scenario: String, coefficient: i64 },
    #[error("scenario {scenario}: w_corr = {w_corr} but the correspondence discs sum to {expected}")]
    WCorrMismatch { scenario: String, w_corr: i64, expected: i64 },
    #[error("scenario {scenario}: quilt gives {quilt:?}, Gysin gives {gysin:?}")]
    PipelineMismatch { scenario: String, quilt: Vec<u64>, gysin: Vec<u64> },
    #[error(transparent)]
    Gysin(#[from] GysinError),
}

/// Index-2 disc classes of a Chekanov-type torus in a basis of sphere
/// classes followed by the disc classes `D1, D2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChekanovLedger {
    pub family: GysinFamily,
    pub basis: Vec<String>,
    pub disc_classes: Vec<Vec<i64>>,
    /// Sign of every disc for `delta = 0`.
    pub reference_sign: Sign,
}

impl ChekanovLedger {
    pub fn validate(&self) -> Result<(), QuiltError> {
        let bad = |m: String| Err(QuiltError::InvalidLedger(m));
        if self.basis.len() < DISC_COORDS {
            return bad("basis needs the two disc classes".into());
        }
        if self.disc_classes.len() != 5 {
            return bad(format!("expected five discs, found {}", self.disc_classes.len()));
        }
        if let Some(c) = self.disc_classes.iter().find(|c| c.len() != self.basis.len()) {
            return bad(format!("disc class {c:?} does not match the basis"));
        }
        Ok(())
    }

    pub fn sphere_count(&self) -> usize {
        self.basis.len() - DISC_COORDS
    }

    /// The same ledger with every disc sign flipped.
    pub fn shifted(&self) -> ChekanovLedger {
        ChekanovLedger { reference_sign: self.reference_sign.flip(), ..self.clone() }
    }

    /// Signs for `delta = forced sphere components + (d1, d2)`.
    pub fn signs(&self, forced: &[u8], delta: (u8, u8)) -> Vec<Sign> {
        let full: Vec<i64> = forced.iter().map(|&f| f as i64).chain([delta.0 as i64, delta.1 as i64]).collect();
        self.disc_classes
            .iter()
            .map(|c| {
                let pairing: i64 = c.iter().zip(&full).map(|(a, b)| a * b).sum();
                self.reference_sign.times(Sign::from_parity(pairing.rem_euclid(2) == 1))
            })
            .collect()
    }

    pub fn signed_count(&self, forced: &[u8], delta: (u8, u8)) -> i64 {
        self.signs(forced, delta).iter().map(|s| s.value()).sum()
    }
}

/// `w(L_0) = -w(L_01) - w(L_1)`.
pub fn w_sum(w_corr: i64, w_fiber: i64) -> i64 {
    -w_corr - w_fiber
}

pub const DELTAS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Every `(delta_1, delta_2)` whose signed disc count is `target`.
pub fn solve_delta(ledger: &ChekanovLedger, target: i64, forced: &[u8]) -> Result<Vec<(u8, u8)>, QuiltError> {
    ledger.validate()?;
    if forced.len() != ledger.sphere_count() {
        return Err(QuiltError::InvalidLedger(format!(
            "{} forced components for {} sphere classes",
            forced.len(),
            ledger.sphere_count()
        )));
    }
    let discs = ledger.disc_classes.len();
    if target.unsigned_abs() as usize > discs || (target - discs as i64).rem_euclid(2) != 0 {
        return Err(QuiltError::InvalidTarget { target, discs });
    }
    Ok(DELTAS
        .into_iter()
        .filter(|&d| ledger.signed_count(forced, d) == target)
        .collect())
}

/// Coefficients of `∂D1` and `∂D2` in the signed sum of disc boundaries.
pub fn boundary_sum(ledger: &ChekanovLedger, forced: &[u8], delta: (u8, u8)) -> (i64, i64) {
    let s = ledger.sphere_count();
    ledger
        .signs(forced, delta)
        .iter()
        .zip(&ledger.disc_classes)
        .fold((0, 0), |(a, b), (sign, c)| (a + sign.value() * c[s], b + sign.value() * c[s + 1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiltScenario {
    pub name: String,
    /// Disc signs `ε` on the correspondence.
    pub spin: Vec<Sign>,
    /// Whether the torus carries the shifted structure.
    pub shifted: bool,
    /// Sphere-dual components of `delta` fixed by the background class.
    pub forced_background: Vec<u8>,
    pub w_corr: i64,
    pub w_fiber: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiltScenarioFile {
    pub ledger: ChekanovLedger,
    pub scenarios: Vec<QuiltScenario>,
}

impl QuiltScenarioFile {
    pub fn curated(family: GysinFamily) -> QuiltScenarioFile {
        let src = match family {
            GysinFamily::So3P1Cubed => SO3_QUILT_JSON,
            GysinFamily::LensP2P1 => LENS_QUILT_JSON,
        };
        serde_json::from_str(src).expect("curated quilt scenarios parse")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiltRow {
    pub scenario: String,
    pub spin: Vec<Sign>,
    pub shifted: bool,
    pub target_w: i64,
    pub delta: (u8, u8),
    pub boundary: (i64, i64),
    pub wide_chars: Vec<u64>,
    pub verdict: CharVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiltTable {
    pub family: GysinFamily,
    pub rows: Vec<QuiltRow>,
}

pub fn quilt_wide_chars(family: GysinFamily) -> Result<QuiltTable, QuiltError> {
    quilt_wide_chars_for(&QuiltScenarioFile::curated(family))
}

/// Run every scenario through `w_sum`, `solve_delta` and `boundary_sum`,
/// and check each verdict against the Gysin classification of the same
/// spin choice.
pub fn quilt_wide_chars_for(file: &QuiltScenarioFile) -> Result<QuiltTable, QuiltError> {
    file.ledger.validate()?;
    let gysin = classify_gysin_family(file.ledger.family, false)?;
    let mut rows = Vec::new();
    for sc in &file.scenarios {
        let name = || sc.name.clone();
        let gysin_row = gysin.row(&sc.spin).ok_or(GysinError::InvalidDelta {
            found: sc.spin.len(),
            expected: file.ledger.family.spin_rank(),
        })?;
        let expected_corr = file
            .ledger
            .family
            .ledger()
            .with_spin(&sc.spin)?
            .disc_signs()
            .iter()
            .map(|s| s.value())
            .sum::<i64>();
        if expected_corr != sc.w_corr {
            return Err(QuiltError::WCorrMismatch { scenario: name(), w_corr: sc.w_corr, expected: expected_corr });
        }

        let ledger = if sc.shifted { file.ledger.shifted() } else { file.ledger.clone() };
        let target_w = w_sum(sc.w_corr, sc.w_fiber);
        let solutions = solve_delta(&ledger, target_w, &sc.forced_background)?;
        let delta = match solutions.as_slice() {
            [] => return Err(QuiltError::NoSolution { scenario: name(), target: target_w }),
            [d] => *d,
            _ => return Err(QuiltError::Ambiguous { scenario: name(), solutions }),
        };
        let boundary = boundary_sum(&ledger, &sc.forced_background, delta);
        if boundary.1 != 0 {
            return Err(QuiltError::BoundaryD2 { scenario: name(), coefficient: boundary.1 });
        }
        let wide_chars = prime_divisors(boundary.0);
        if wide_chars != gysin_row.admissible {
            return Err(QuiltError::PipelineMismatch {
                scenario: name(),
                quilt: wide_chars,
                gysin: gysin_row.admissible.clone(),
            });
        }
        let mut verdict = CharVerdict::new(GYSIN_NOTE);
        for c in default_characteristics() {
            let wide = wide_chars.contains(&c.value());
            verdict.set(c, if wide { Status::Wide } else { Status::Narrow });
        }
        debug_assert_eq!(&verdict, &gysin_row.verdict, "spin {}", format_signs(&sc.spin));
        rows.push(QuiltRow {
            scenario: sc.name.clone(),
            spin: sc.spin.clone(),
            shifted: sc.shifted,
            target_w,
            delta,
            boundary,
            wide_chars,
            verdict,
        });
    }
    Ok(QuiltTable { family: file.ledger.family, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_sum_examples() {
        assert_eq!(w_sum(3, 2), -5);
        assert_eq!(w_sum(1, 2), -3);
        assert_eq!(w_sum(0, 0), 0);
    }

    #[test]
    fn solve_examples() {
        let so3 = QuiltScenarioFile::curated(GysinFamily::So3P1Cubed).ledger;
        assert_eq!(solve_delta(&so3, -3, &[1, 1]).unwrap(), vec![(1, 0)]);
        assert_eq!(solve_delta(&so3, -5, &[0, 0]).unwrap(), vec![(0, 0)]);
        let lens = QuiltScenarioFile::curated(GysinFamily::LensP2P1).ledger;
        assert_eq!(solve_delta(&lens, -3, &[0]).unwrap(), vec![(1, 0)]);
        assert!(matches!(solve_delta(&so3, -4, &[0, 0]), Err(QuiltError::InvalidTarget { .. })));
        assert!(matches!(solve_delta(&so3, 7, &[0, 0]), Err(QuiltError::InvalidTarget { .. })));
    }

    #[test]
    fn boundary_examples() {
        let so3 = QuiltScenarioFile::curated(GysinFamily::So3P1Cubed).ledger;
        assert_eq!(boundary_sum(&so3, &[0, 0], (0, 0)), (3, 0));
        assert_eq!(boundary_sum(&so3, &[1, 1], (1, 0)), (5, 0));
        let lens = QuiltScenarioFile::curated(GysinFamily::LensP2P1).ledger;
        assert_eq!(boundary_sum(&lens, &[0], (0, 0)), (7, 0));
        assert_eq!(boundary_sum(&lens, &[0], (1, 0)), (9, 0));
    }

    #[test]
    fn curated_tables() {
        let so3 = quilt_wide_chars(GysinFamily::So3P1Cubed).unwrap();
        let chars: Vec<Vec<u64>> = so3.rows.iter().map(|r| r.wide_chars.clone()).collect();
        assert_eq!(chars, vec![vec![3], vec![5], vec![3], vec![5]]);
        let lens = quilt_wide_chars(GysinFamily::LensP2P1).unwrap();
        let chars: Vec<Vec<u64>> = lens.rows.iter().map(|r| r.wide_chars.clone()).collect();
        assert_eq!(chars, vec![vec![7], vec![3], vec![7], vec![3]]);
    }

    #[test]
    fn inconsistent_w_corr_is_rejected() {
        let mut file = QuiltScenarioFile::curated(GysinFamily::So3P1Cubed);
        file.scenarios[0].w_corr = 1;
        assert!(matches!(quilt_wide_chars_for(&file), Err(QuiltError::WCorrMismatch { .. })));
    }
}

//! Relative spin structure sign calculus for two monotone Lagrangian
//! families fibred over `CP^1`: disc ledgers, the closed-open constraint on
//! the coefficient field, and the Gysin-cone determinant.
//!
//! Disc classes, Maslov indices, Euler numbers and quantum sphere classes
//! are curated input, read from the scenario files shipped with the crate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring_core::{prime_divisors, Characteristic};
use crate::verdict::{default_characteristics, CharVerdict, Sign, Status};

pub const SO3_LEDGER_JSON: &str = include_str!("../scenarios/gysin_so3.json");
pub const LENS_LEDGER_JSON: &str = include_str!("../scenarios/gysin_lens.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GysinError {
    #[error("spin vector has length {found}, expected {expected}")]
    InvalidDelta { found: usize, expected: usize },
    #[error("ledger is malformed: {0}")]
    InvalidLedger(String),
    #[error("Gysin hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("constraint and determinant disagree for spin {spin}: m = {m}, det = {det}")]
    PathMismatch { spin: String, m: i64, det: i64 },
    #[error("constraint m vanishes for spin {0}")]
    DegenerateConstraint(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GysinFamily {
    /// The `SO(3)` orbit Lagrangian in `(CP^1)^3`.
    #[serde(rename = "so3_p1cubed", alias = "so3")]
    So3P1Cubed,
    /// The lens-space Lagrangian in `CP^2 x CP^1`.
    #[serde(rename = "lens_p2p1", alias = "lens")]
    LensP2P1,
}

impl GysinFamily {
    pub const ALL: [GysinFamily; 2] = [GysinFamily::So3P1Cubed, GysinFamily::LensP2P1];

    pub fn name(self) -> &'static str {
        match self {
            GysinFamily::So3P1Cubed => "so3_p1cubed",
            GysinFamily::LensP2P1 => "lens_p2p1",
        }
    }

    pub fn parse(s: &str) -> Option<GysinFamily> {
        match s {
            "so3" | "so3_p1cubed" => Some(GysinFamily::So3P1Cubed),
            "lens" | "lens_p2p1" => Some(GysinFamily::LensP2P1),
            _ => None,
        }
    }

    pub fn ledger(self) -> DiscLedger {
        let src = match self {
            GysinFamily::So3P1Cubed => SO3_LEDGER_JSON,
            GysinFamily::LensP2P1 => LENS_LEDGER_JSON,
        };
        let ledger: DiscLedger = serde_json::from_str(src).expect("curated ledger parses");
        ledger.validate().expect("curated ledger is valid");
        ledger
    }

    pub fn spin_rank(self) -> usize {
        match self {
            GysinFamily::So3P1Cubed => 3,
            GysinFamily::LensP2P1 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscRecord {
    pub class: Vec<i64>,
    pub sign: Sign,
}

/// A sphere class of the ambient manifold and the sign its quantum
/// relation carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereRecord {
    pub name: String,
    pub class: Vec<i64>,
    pub sign: Sign,
}

/// Index-2 discs with signs for one relative spin structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscLedger {
    pub family: GysinFamily,
    /// Names of the relative classes the coordinates refer to.
    pub basis: Vec<String>,
    /// Maslov index of each basis class.
    pub maslov: Vec<i64>,
    pub discs: Vec<DiscRecord>,
    /// Names of the spin-difference basis vectors, one per `ε`.
    pub spin_basis: Vec<String>,
    /// `pairings[i][j]`: parity of the `i`-th spin difference on basis class `j`.
    pub pairings: Vec<Vec<u8>>,
    pub euler: i64,
    pub qh_signs: Vec<SphereRecord>,
}

impl DiscLedger {
    pub fn validate(&self) -> Result<(), GysinError> {
        let bad = |m: String| Err(GysinError::InvalidLedger(m));
        let rank = self.basis.len();
        if self.maslov.len() != rank {
            return bad(format!("{} Maslov indices for {rank} basis classes", self.maslov.len()));
        }
        if self.pairings.len() != self.spin_basis.len() || self.pairings.iter().any(|r| r.len() != rank) {
            return bad("pairing matrix shape does not match spin basis x basis".into());
        }
        if self.pairings.iter().flatten().any(|p| *p > 1) {
            return bad("pairings are parities 0 or 1".into());
        }
        for (i, d) in self.discs.iter().enumerate() {
            if d.class.len() != rank {
                return bad(format!("disc {i} has {} coordinates", d.class.len()));
            }
            let mu = self.maslov_index(&d.class);
            if mu != 2 {
                return bad(format!("disc {i} has Maslov index {mu}"));
            }
        }
        if let Some(s) = self.qh_signs.iter().find(|s| s.class.len() != rank) {
            return bad(format!("sphere {} has wrong number of coordinates", s.name));
        }
        if self.spin_basis.len() != self.family.spin_rank() {
            return bad(format!("{} needs {} spin parameters", self.family.name(), self.family.spin_rank()));
        }
        Ok(())
    }

    /// Parity of `<delta, class>`.
    pub fn pair(&self, delta: &[u8], class: &[i64]) -> bool {
        let total: i64 = delta
            .iter()
            .zip(&self.pairings)
            .filter(|(d, _)| **d % 2 == 1)
            .map(|(_, row)| row.iter().zip(class).map(|(p, c)| *p as i64 * c).sum::<i64>())
            .sum();
        total.rem_euclid(2) == 1
    }

    pub fn disc_signs(&self) -> Vec<Sign> {
        self.discs.iter().map(|d| d.sign).collect()
    }

    pub fn sphere_sign(&self, name: &str) -> Option<Sign> {
        self.qh_signs.iter().find(|s| s.name == name).map(|s| s.sign)
    }

    pub fn maslov_index(&self, class: &[i64]) -> i64 {
        class.iter().zip(&self.maslov).map(|(c, m)| c * m).sum()
    }

    /// The shifted relative spin structure: a class of Maslov index `μ`
    /// picks up `(-1)^{μ/2}`, so every index-2 disc flips.
    pub fn shifted(&self) -> DiscLedger {
        let mut out = self.clone();
        let odd_half = |class: &[i64]| (self.maslov_index(class) / 2).rem_euclid(2) == 1;
        for d in &mut out.discs {
            if odd_half(&d.class) {
                d.sign = d.sign.flip();
            }
        }
        for s in &mut out.qh_signs {
            if odd_half(&s.class) {
                s.sign = s.sign.flip();
            }
        }
        out
    }

    /// Ledger for the spin choice `ε`, starting from the curated base ledger
    /// (where every `ε` is `+1`).
    pub fn with_spin(&self, spin: &[Sign]) -> Result<DiscLedger, GysinError> {
        let delta: Vec<u8> = spin.iter().map(|s| u8::from(s.is_minus())).collect();
        apply_spin_change(self, &delta)
    }
}

/// Change the relative spin structure by `delta`: each disc and sphere sign
/// picks up `(-1)^{<delta, class>}`.
pub fn apply_spin_change(ledger: &DiscLedger, delta: &[u8]) -> Result<DiscLedger, GysinError> {
    if delta.len() != ledger.spin_basis.len() {
        return Err(GysinError::InvalidDelta { found: delta.len(), expected: ledger.spin_basis.len() });
    }
    let mut out = ledger.clone();
    for d in &mut out.discs {
        if ledger.pair(delta, &d.class) {
            d.sign = d.sign.flip();
        }
    }
    for s in &mut out.qh_signs {
        if ledger.pair(delta, &s.class) {
            s.sign = s.sign.flip();
        }
    }
    Ok(out)
}

fn check_spin(family: GysinFamily, spin: &[Sign]) -> Result<(), GysinError> {
    if spin.len() == family.spin_rank() {
        Ok(())
    } else {
        Err(GysinError::InvalidDelta { found: spin.len(), expected: family.spin_rank() })
    }
}

fn sphere(ledger: &DiscLedger, name: &str) -> i64 {
    ledger
        .sphere_sign(name)
        .unwrap_or_else(|| panic!("ledger lists sphere {name}"))
        .value()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharConstraint {
    pub m: i64,
    /// Prime divisors of `|m|`: the only characteristics with `HF ≠ 0`.
    pub admissible: Vec<u64>,
}

/// The integer `m` with `HF(L, L) ≠ 0 ⇒ char K | m`, from squaring (resp.
/// cubing) a closed-open relation against the quantum relation of the base.
pub fn co_char_constraint_for(ledger: &DiscLedger) -> CharConstraint {
    let d: Vec<i64> = ledger.disc_signs().iter().map(|s| s.value()).collect();
    let m = match ledger.family {
        // CO(2 H_3) = (ε1 + ε2 - ε3) T against H_3^2 = ε1 ε2 T^2.
        GysinFamily::So3P1Cubed => {
            let x = d[0] + d[1] - d[2];
            x * x - ledger.euler * ledger.euler * sphere(ledger, "line3")
        }
        // CO(2 H_1) = ε3 T against H_1^3 = ε1 T^3.
        GysinFamily::LensP2P1 => 8 * sphere(ledger, "line_p2") - d[2],
    };
    CharConstraint { m, admissible: prime_divisors(m) }
}

pub fn co_char_constraint(family: GysinFamily, spin: &[Sign]) -> Result<CharConstraint, GysinError> {
    check_spin(family, spin)?;
    Ok(co_char_constraint_for(&family.ledger().with_spin(spin)?))
}

/// Coefficient `ν` of `T` in the quantum Euler class `e + ν T`.
pub fn solve_nu_for(ledger: &DiscLedger) -> i64 {
    let d: Vec<i64> = ledger.disc_signs().iter().map(|s| s.value()).collect();
    match ledger.family {
        GysinFamily::So3P1Cubed => d[2] - d[0] - d[1],
        // CO(4 H_3) = 2 CO(H_1 + 2 H_3) - CO(2 H_1) = (2 (ε1 + ε1') - ε3) T.
        GysinFamily::LensP2P1 => d[2] - 2 * (d[0] + d[1]),
    }
}

pub fn solve_nu(family: GysinFamily, spin: &[Sign]) -> Result<i64, GysinError> {
    check_spin(family, spin)?;
    Ok(solve_nu_for(&family.ledger().with_spin(spin)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinData {
    pub euler: i64,
    /// `H^2 = s T^2` on the base `CP^1`.
    pub s: Sign,
    pub nu: i64,
}

impl GysinData {
    pub fn for_ledger(ledger: &DiscLedger) -> GysinData {
        let s = match ledger.family {
            GysinFamily::So3P1Cubed => sphere(ledger, "line3"),
            GysinFamily::LensP2P1 => sphere(ledger, "line_p1"),
        };
        GysinData { euler: ledger.euler, s: Sign::try_from(s).expect("sphere signs are ±1"), nu: solve_nu_for(ledger) }
    }
}

/// Term `c T^k` of a matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NovikovTerm {
    pub coeff: i64,
    pub t_power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinDeterminant {
    /// Matrix of `ê ⋆` in the basis `{1, H}`.
    pub matrix: [[NovikovTerm; 2]; 2],
    /// `det = coefficient T^2`.
    pub coefficient: i64,
}

pub fn gysin_determinant(data: GysinData) -> GysinDeterminant {
    let t = |coeff, t_power| NovikovTerm { coeff, t_power };
    let matrix = [
        [t(data.nu, 1), t(data.euler * data.s.value(), 2)],
        [t(data.euler, 0), t(data.nu, 1)],
    ];
    let coefficient = matrix[0][0].coeff * matrix[1][1].coeff - matrix[0][1].coeff * matrix[1][0].coeff;
    debug_assert_eq!(coefficient, data.nu * data.nu - data.euler * data.euler * data.s.value());
    GysinDeterminant { matrix, coefficient }
}

/// Why `ν^2 - e^2 s = +1` has no integer solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PlusOneExclusion {
    /// `ν^2 = e^2 + 1` lies strictly between consecutive squares.
    BetweenSquares { lower: i64, value: i64, upper: i64 },
    /// `ν^2 = 1 - e^2` is negative.
    Negative { value: i64 },
}

/// `ν^2 - e^2 s ≠ ±1` for every integer `ν`. With `e` even the value is
/// `ν^2` mod 4, so `-1 ≡ 3` is impossible; `+1` is excluded by size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeverUnitCertificate {
    pub euler: i64,
    pub s: Sign,
    /// Residues of `ν^2 - e^2 s` mod 4.
    pub residues_mod_4: Vec<i64>,
    pub plus_one: PlusOneExclusion,
    /// Largest `|ν|` scanned directly.
    pub window: i64,
}

pub fn gysin_never_unit(euler: i64, s: Sign) -> Result<NeverUnitCertificate, GysinError> {
    if euler % 2 != 0 {
        return Err(GysinError::Hypothesis(format!("Euler number {euler} is odd")));
    }
    if euler.abs() < 2 {
        return Err(GysinError::Hypothesis(format!("|e| = {} < 2", euler.abs())));
    }
    let e2 = euler * euler;
    let value = |nu: i64| nu * nu - e2 * s.value();
    let mut residues_mod_4: Vec<i64> = (0..4).map(|nu| value(nu).rem_euclid(4)).collect();
    residues_mod_4.sort_unstable();
    residues_mod_4.dedup();
    assert!(!residues_mod_4.contains(&3), "even e leaves only squares mod 4");

    let plus_one = match s {
        Sign::Plus => {
            let lower = e2;
            let upper = (euler.abs() + 1).pow(2);
            assert!(lower < e2 + 1 && e2 + 1 < upper);
            PlusOneExclusion::BetweenSquares { lower, value: e2 + 1, upper }
        }
        Sign::Minus => {
            assert!(1 - e2 < 0);
            PlusOneExclusion::Negative { value: 1 - e2 }
        }
    };
    let window = e2 + 2;
    assert!((-window..=window).all(|nu| value(nu).abs() != 1));
    Ok(NeverUnitCertificate { euler, s, residues_mod_4, plus_one, window })
}

pub const GYSIN_NOTE: &str = "H*(L; K) has rank 2, so non-narrow implies wide";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinRow {
    pub spin: Vec<Sign>,
    pub m: i64,
    pub admissible: Vec<u64>,
    pub nu: i64,
    pub s: Sign,
    pub det: i64,
    pub verdict: CharVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinTable {
    pub family: GysinFamily,
    pub shifted: bool,
    pub euler: i64,
    pub rows: Vec<GysinRow>,
    pub note: String,
}

impl GysinTable {
    pub fn row(&self, spin: &[Sign]) -> Option<&GysinRow> {
        self.rows.iter().find(|r| r.spin == spin)
    }
}

/// Every spin choice `ε ∈ {±1}^rank`, first coordinate varying slowest.
pub fn spin_choices(rank: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << rank)
        .map(|bits| (0..rank).map(|i| Sign::from_parity(bits >> (rank - 1 - i) & 1 == 1)).collect())
        .collect()
}

pub fn classify_gysin_family(family: GysinFamily, shifted: bool) -> Result<GysinTable, GysinError> {
    classify_ledger(&family.ledger(), shifted)
}

/// Classify every spin choice of a base ledger: the closed-open constraint
/// and the Gysin determinant must single out the same primes.
pub fn classify_ledger(base: &DiscLedger, shifted: bool) -> Result<GysinTable, GysinError> {
    base.validate()?;
    let mut rows = Vec::new();
    for spin in spin_choices(base.spin_basis.len()) {
        let mut ledger = base.with_spin(&spin)?;
        if shifted {
            ledger = ledger.shifted();
        }
        let constraint = co_char_constraint_for(&ledger);
        let data = GysinData::for_ledger(&ledger);
        let det = gysin_determinant(data).coefficient;
        let label = crate::verdict::format_signs(&spin);
        if constraint.m == 0 {
            return Err(GysinError::DegenerateConstraint(label));
        }
        if constraint.admissible != prime_divisors(det) {
            return Err(GysinError::PathMismatch { spin: label, m: constraint.m, det });
        }
        let mut verdict = CharVerdict::new(GYSIN_NOTE);
        for c in default_characteristics() {
            verdict.set(c, status_for(c, constraint.m));
        }
        rows.push(GysinRow {
            spin,
            m: constraint.m,
            admissible: constraint.admissible,
            nu: data.nu,
            s: data.s,
            det,
            verdict,
        });
    }
    Ok(GysinTable { family: base.family, shifted, euler: base.euler, rows, note: GYSIN_NOTE.into() })
}

fn status_for(c: Characteristic, m: i64) -> Status {
    if !c.is_zero() && m % c.value() as i64 == 0 {
        Status::Wide
    } else {
        Status::Narrow
    }
}

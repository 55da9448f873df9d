//! Shared verdict vocabulary: wide/narrow status, `±1` signs, and the
//! per-characteristic verdict table every classifier returns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring_core::Characteristic;

/// Characteristics examined when the caller gives none.
pub const DEFAULT_CHARACTERISTICS: [u64; 7] = [0, 2, 3, 5, 7, 11, 13];

pub fn default_characteristics() -> Vec<Characteristic> {
    DEFAULT_CHARACTERISTICS
        .iter()
        .map(|&c| Characteristic::new(c).expect("curated list"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Wide,
    Narrow,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Wide => "wide",
            Status::Narrow => "narrow",
        })
    }
}

/// A sign `±1`, serialized as the integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != other.is_minus())
    }

    /// Parses `+`, `-`, `+1`, `-1`, `1`.
    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;

    fn try_from(v: i64) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn format_signs(signs: &[Sign]) -> String {
    signs.iter().map(Sign::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharEntry {
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub status: Status,
}

/// Status per characteristic, each characteristic listed at most once, plus a
/// note on which spin structures and line bundles the verdict covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharVerdict {
    pub entries: Vec<CharEntry>,
    pub scope: String,
}

impl CharVerdict {
    pub fn new(scope: impl Into<String>) -> Self {
        Self { entries: Vec::new(), scope: scope.into() }
    }

    /// Record a status; a repeated characteristic overwrites the earlier entry.
    pub fn set(&mut self, characteristic: Characteristic, status: Status) {
        match self.entries.iter_mut().find(|e| e.characteristic == characteristic) {
            Some(e) => e.status = status,
            None => self.entries.push(CharEntry { characteristic, status }),
        }
    }

    pub fn status(&self, characteristic: Characteristic) -> Option<Status> {
        self.entries
            .iter()
            .find(|e| e.characteristic == characteristic)
            .map(|e| e.status)
    }

    pub fn wide_characteristics(&self) -> Vec<Characteristic> {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Wide)
            .map(|e| e.characteristic)
            .collect()
    }
}

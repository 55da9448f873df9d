use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::mpoly::{monomials_of_degree, weighted_degree, Exponents, MPoly};
use super::{Presentation, PresentationError};
use crate::ring_core::{Characteristic, Coefficient, RingError};

/// Largest degree `degreewise_dims` accepts unless the caller raises it.
pub const DEFAULT_DEGREE_CAP: u32 = 24;

/// Degree-`m` slice of the relation ideal: columns are the monomials of
/// degree `m`, rows are the monomial multiples of relations landing there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayMatrix {
    pub degree: u32,
    pub columns: Vec<Exponents>,
    pub rows: Vec<Vec<(usize, BigInt)>>,
}

impl MacaulayMatrix {
    pub fn assemble(pres: &Presentation, degree: u32) -> MacaulayMatrix {
        let weights = pres.weights();
        let columns = monomials_of_degree(&weights, degree);
        let index: HashMap<&Exponents, usize> = columns.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for relation in pres.relations() {
            let Some(Some(d)) = relation.homogeneous_degree(&weights) else { continue };
            if d > degree {
                continue;
            }
            for multiplier in monomials_of_degree(&weights, degree - d) {
                let row = relation
                    .mul(&MPoly::monomial(multiplier, 1))
                    .terms()
                    .map(|(e, c)| (index[e], c.clone()))
                    .collect::<Vec<_>>();
                debug_assert!(row.iter().all(|(i, _)| weighted_degree(&columns[*i], &weights) == degree));
                rows.push(row);
            }
        }
        MacaulayMatrix { degree, columns, rows }
    }

    pub fn rank(&self, characteristic: Characteristic) -> Result<usize, RingError> {
        let mut echelon = Echelon::default();
        for row in &self.rows {
            let entries = row
                .iter()
                .map(|(i, c)| (*i, characteristic.embed(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            echelon.insert(entries)?;
        }
        Ok(echelon.pivots.len())
    }

    /// Plain-text dump for auditing: one line per column label, then one
    /// line per row of `column:coefficient` pairs.
    pub fn to_text(&self, pres: &Presentation) -> String {
        let names = pres.variable_names();
        let mut out = format!("degree {} columns {} rows {}\n", self.degree, self.columns.len(), self.rows.len());
        for (i, e) in self.columns.iter().enumerate() {
            let _ = writeln!(out, "col {i}: {}", MPoly::monomial(e.clone(), 1).render(&names));
        }
        for (r, row) in self.rows.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(|(i, c)| format!("{i}:{c}")).collect();
            let _ = writeln!(out, "row {r}: {}", entries.join(" "));
        }
        out
    }
}

/// Incremental row echelon form over a field; each pivot row is normalized
/// to leading coefficient one.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Coefficient>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Coefficient>) -> Result<(), RingError> {
        while let Some((&lead, c)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&lead) else {
                let inv = c.inverse()?;
                for v in row.values_mut() {
                    *v = v.checked_mul(&inv)?;
                }
                self.pivots.insert(lead, row);
                return Ok(());
            };
            let factor = c.clone();
            for (col, v) in pivot {
                let delta = v.checked_mul(&factor)?;
                let updated = match row.get(col) {
                    Some(old) => old.checked_sub(&delta)?,
                    None => delta.neg(),
                };
                if updated.is_zero() {
                    row.remove(col);
                } else {
                    row.insert(*col, updated);
                }
            }
        }
        Ok(())
    }
}

/// Dimension of each even degree `0..=max_degree` of the quotient of the
/// free commutative algebra on the generators and `T` by the relations.
pub fn degreewise_dims(
    pres: &Presentation,
    characteristic: Characteristic,
    max_degree: u32,
) -> Result<BTreeMap<u32, usize>, PresentationError> {
    degreewise_dims_capped(pres, characteristic, max_degree, DEFAULT_DEGREE_CAP)
}

pub fn degreewise_dims_capped(
    pres: &Presentation,
    characteristic: Characteristic,
    max_degree: u32,
    cap: u32,
) -> Result<BTreeMap<u32, usize>, PresentationError> {
    if max_degree > cap {
        return Err(PresentationError::DegreeCapExceeded { max_degree, cap });
    }
    if max_degree % 2 == 1 {
        return Err(PresentationError::OddDegree { what: "max_degree".into(), degree: max_degree });
    }
    (0..=max_degree)
        .step_by(2)
        .map(|m| {
            let matrix = MacaulayMatrix::assemble(pres, m);
            let rank = matrix.rank(characteristic)?;
            Ok((m, matrix.columns.len() - rank))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Generator;

    fn ch(p: u64) -> Characteristic {
        Characteristic::new(p).unwrap()
    }

    #[test]
    fn free_algebra_one_generator() {
        let pres = Presentation::new(vec![Generator::new("g", 2)], 100, vec![]).unwrap();
        assert_eq!(degreewise_dims(&pres, ch(0), 6).unwrap()[&6], 1);
    }

    #[test]
    fn cap_enforced() {
        let pres = Presentation::new(vec![Generator::new("g", 2)], 4, vec![]).unwrap();
        assert_eq!(
            degreewise_dims(&pres, ch(0), 26),
            Err(PresentationError::DegreeCapExceeded { max_degree: 26, cap: 24 })
        );
        assert!(degreewise_dims_capped(&pres, ch(0), 26, 30).is_ok());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // 2g = 0 kills g only away from characteristic two.
        let rel = MPoly::monomial(vec![1, 0], 2);
        let pres = Presentation::new(vec![Generator::new("g", 2)], 4, vec![rel]).unwrap();
        assert_eq!(degreewise_dims(&pres, ch(0), 2).unwrap()[&2], 0);
        assert_eq!(degreewise_dims(&pres, ch(2), 2).unwrap()[&2], 1);
    }

    #[test]
    fn dump_lists_columns() {
        let pres = Presentation::new(vec![Generator::new("g", 2)], 4, vec![]).unwrap();
        let text = MacaulayMatrix::assemble(&pres, 4).to_text(&pres);
        assert!(text.contains("col 0: g^2"));
        assert!(text.contains("col 1: T"));
    }
}

//! Finitely presented graded-commutative algebras over `K[T]` with
//! `deg T = N`: quantum cohomology of projective spaces and Grassmannian
//! products, the Floer ring of a flag-variety Lagrangian, and the
//! closed-open pushforward of their relations.
//!
//! All generators have even degree, so the algebras are commutative.
//! Relations carry integer coefficients and are read in a field only when a
//! dimension is computed.

mod macaulay;
mod mpoly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use macaulay::{degreewise_dims, degreewise_dims_capped, MacaulayMatrix, DEFAULT_DEGREE_CAP};
pub use mpoly::{monomials_of_degree, weighted_degree, Exponents, MPoly};

use crate::poincare::{binomial, poincare_poly, PoincareError, SpaceSpec};
use crate::ring_core::{Characteristic, RingError};
use crate::verdict::{default_characteristics, Sign};

/// Name of the Novikov variable in rendered and serialized relations.
pub const NOVIKOV: &str = "T";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{what} has odd or zero degree {degree}")]
    OddDegree { what: String, degree: u32 },
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
    #[error("relation {index} is not homogeneous: {relation}")]
    InhomogeneousRelation { index: usize, relation: String },
    #[error("relation {index} has {found} variables, expected {expected}")]
    ArityMismatch { index: usize, found: usize, expected: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("no image assigned to generator {0}")]
    IncompleteAssignment(String),
    #[error("image of {name} has degree {found}, expected {expected}")]
    ImageDegree { name: String, found: u32, expected: u32 },
    #[error("image of {0} is not homogeneous")]
    InhomogeneousImage(String),
    #[error("Novikov degrees differ: ambient {ambient}, target {target}")]
    NovikovMismatch { ambient: u32, target: u32 },
    #[error("max_degree {max_degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { max_degree: u32, cap: u32 },
    #[error("invalid block sizes {0:?}: need at least two positive parts")]
    InvalidParts(Vec<u32>),
    #[error("invalid projective dimension {0}")]
    InvalidDimension(u32),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self { name: name.into(), degree }
    }
}

/// Generators, Novikov degree and homogeneous relations. Variables of each
/// relation are the generators in order followed by `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct Presentation {
    generators: Vec<Generator>,
    novikov_degree: u32,
    relations: Vec<MPoly>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, novikov_degree: u32, relations: Vec<MPoly>) -> Result<Self, PresentationError> {
        for g in &generators {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(PresentationError::OddDegree { what: format!("generator {}", g.name), degree: g.degree });
            }
            if g.name == NOVIKOV || generators.iter().filter(|h| h.name == g.name).count() > 1 {
                return Err(PresentationError::DuplicateGenerator(g.name.clone()));
            }
        }
        if novikov_degree == 0 || novikov_degree % 2 == 1 {
            return Err(PresentationError::OddDegree { what: NOVIKOV.into(), degree: novikov_degree });
        }
        let pres = Self { generators, novikov_degree, relations };
        let weights = pres.weights();
        for (index, r) in pres.relations.iter().enumerate() {
            if r.arity() != weights.len() {
                return Err(PresentationError::ArityMismatch { index, found: r.arity(), expected: weights.len() });
            }
            if r.homogeneous_degree(&weights).is_none() {
                return Err(PresentationError::InhomogeneousRelation { index, relation: pres.render(r) });
            }
        }
        Ok(pres)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn novikov_degree(&self) -> u32 {
        self.novikov_degree
    }

    pub fn relations(&self) -> &[MPoly] {
        &self.relations
    }

    /// Number of variables: generators plus `T`.
    pub fn arity(&self) -> usize {
        self.generators.len() + 1
    }

    pub fn novikov_index(&self) -> usize {
        self.generators.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|g| g.degree)
            .chain([self.novikov_degree])
            .collect()
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.name.clone())
            .chain([NOVIKOV.to_string()])
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        if name == NOVIKOV {
            return Some(self.novikov_index());
        }
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn var(&self, name: &str) -> Result<MPoly, PresentationError> {
        let i = self.index_of(name).ok_or_else(|| PresentationError::UnknownGenerator(name.into()))?;
        Ok(MPoly::var(self.arity(), i))
    }

    pub fn novikov(&self) -> MPoly {
        MPoly::var(self.arity(), self.novikov_index())
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree_of(&self, p: &MPoly) -> Option<u32> {
        p.homogeneous_degree(&self.weights()).flatten()
    }

    pub fn render(&self, p: &MPoly) -> String {
        p.render(&self.variable_names())
    }

    pub fn rendered_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| format!("{} = 0", self.render(r))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    #[serde(with = "crate::serde_bigint")]
    coeff: BigInt,
    monomial: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationRepr {
    generators: Vec<Generator>,
    novikov_degree: u32,
    relations: Vec<Vec<TermRepr>>,
}

impl From<Presentation> for PresentationRepr {
    fn from(p: Presentation) -> Self {
        let names = p.variable_names();
        let relations = p
            .relations
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(e, c)| TermRepr {
                        coeff: c.clone(),
                        monomial: e
                            .iter()
                            .zip(&names)
                            .filter(|(k, _)| **k > 0)
                            .map(|(k, n)| (n.clone(), *k))
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        PresentationRepr { generators: p.generators, novikov_degree: p.novikov_degree, relations }
    }
}

impl TryFrom<PresentationRepr> for Presentation {
    type Error = PresentationError;

    fn try_from(r: PresentationRepr) -> Result<Self, Self::Error> {
        let shell = Presentation::new(r.generators.clone(), r.novikov_degree, vec![])?;
        let mut relations = Vec::new();
        for terms in r.relations {
            let mut rel = MPoly::zero(shell.arity());
            for t in terms {
                let mut e = vec![0; shell.arity()];
                for (name, k) in t.monomial {
                    let i = shell.index_of(&name).ok_or(PresentationError::UnknownGenerator(name))?;
                    e[i] += k;
                }
                rel.add_term(e, t.coeff);
            }
            relations.push(rel);
        }
        Presentation::new(r.generators, r.novikov_degree, relations)
    }
}

/// Signs `(-1)^{<b, A>}` for named sphere classes `A`; classes not listed
/// pair evenly with `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackgroundSign {
    signs: BTreeMap<String, Sign>,
}

impl BackgroundSign {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_signs(signs: impl IntoIterator<Item = (String, Sign)>) -> Self {
        Self { signs: signs.into_iter().collect() }
    }

    /// `b = sum_j beta_j c_1(E_j)`: the `j`-th line class pairs to `beta_j`.
    pub fn from_chern_coefficients(betas: &[i64]) -> Self {
        Self::from_signs(
            betas
                .iter()
                .enumerate()
                .map(|(j, b)| (line_class(j + 1), Sign::from_parity(b.rem_euclid(2) == 1))),
        )
    }

    /// The flag background `b + delta * sum_j c_1(E_j)`, with `b` pairing to
    /// `k_j` on the `j`-th line; it makes every factor sign `(-1)^delta`.
    pub fn flag_class(parts: &[u32], delta: u8) -> Self {
        let betas: Vec<i64> = parts.iter().map(|&k| k as i64 + delta as i64).collect();
        Self::from_chern_coefficients(&betas)
    }

    pub fn sign(&self, class: &str) -> Sign {
        self.signs.get(class).copied().unwrap_or(Sign::Plus)
    }

    pub fn signs(&self) -> &BTreeMap<String, Sign> {
        &self.signs
    }
}

/// Name of the line class in the `j`-th Grassmannian factor (1-based).
pub fn line_class(j: usize) -> String {
    format!("line{j}")
}

/// `QH(CP^n) = K[H, T]/(H^{n+1} - sign T)` with `deg H = 2`, `deg T = 2n + 2`.
pub fn qh_projective(n: u32, line_sign: Sign) -> Result<Presentation, PresentationError> {
    if n == 0 {
        return Err(PresentationError::InvalidDimension(n));
    }
    let h = MPoly::var(2, 0);
    let t = MPoly::var(2, 1);
    let rel = h.pow(n + 1).sub(&t.scale(&BigInt::from(line_sign.value())));
    Presentation::new(vec![Generator::new("H", 2)], 2 * (n + 1), vec![rel])
}

fn check_parts(parts: &[u32]) -> Result<u32, PresentationError> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(PresentationError::InvalidParts(parts.to_vec()));
    }
    Ok(parts.iter().sum())
}

fn chern_name(j: usize, i: u32) -> String {
    format!("c{j}_{i}")
}

fn dual_name(j: usize, i: u32) -> String {
    format!("f{j}_{i}")
}

/// Total Chern class `1 + x_1 + ... + x_k` of the named generators.
fn total_class(pres: &Presentation, names: impl IntoIterator<Item = String>) -> Result<MPoly, PresentationError> {
    names
        .into_iter()
        .try_fold(MPoly::one(pres.arity()), |acc, n| Ok(acc.add(&pres.var(&n)?)))
}

/// Components of degree `2, 4, ..., 2n` of `lhs - 1 - sign T`.
fn graded_components(pres: &Presentation, lhs: &MPoly, n: u32, sign: Sign) -> Vec<MPoly> {
    let weights = pres.weights();
    let target = MPoly::one(pres.arity()).add(&pres.novikov().scale(&BigInt::from(sign.value())));
    let diff = lhs.sub(&target);
    (1..=n).map(|m| diff.component(&weights, 2 * m)).collect()
}

/// Per-factor quantum sign `(-1)^{k_j}` times the background sign of the
/// `j`-th line class.
pub fn factor_signs(parts: &[u32], background: &BackgroundSign) -> Vec<Sign> {
    parts
        .iter()
        .enumerate()
        .map(|(j, &k)| Sign::from_parity(k % 2 == 1).times(background.sign(&line_class(j + 1))))
        .collect()
}

/// Quantum cohomology of `prod_j Gr(k_j, n)` with the background twist:
/// `c(E_j) c(F_j) = 1 + sigma_j T` in each factor, `deg T = 2n`.
pub fn qh_grassmannian_product(parts: &[u32], background: &BackgroundSign) -> Result<Presentation, PresentationError> {
    let n = check_parts(parts)?;
    let mut generators = Vec::new();
    for (j, &k) in parts.iter().enumerate() {
        generators.extend((1..=k).map(|i| Generator::new(chern_name(j + 1, i), 2 * i)));
        generators.extend((1..=n - k).map(|i| Generator::new(dual_name(j + 1, i), 2 * i)));
    }
    let shell = Presentation::new(generators.clone(), 2 * n, vec![])?;
    let mut relations = Vec::new();
    for ((j, &k), sigma) in parts.iter().enumerate().zip(factor_signs(parts, background)) {
        let e = total_class(&shell, (1..=k).map(|i| chern_name(j + 1, i)))?;
        let f = total_class(&shell, (1..=n - k).map(|i| dual_name(j + 1, i)))?;
        relations.extend(graded_components(&shell, &e.mul(&f), n, sigma));
    }
    Presentation::new(generators, 2 * n, relations)
}

/// `HF(L, L)` for the flag-variety Lagrangian: generators `c_{j,i}` and the
/// graded components of `prod_j (1 + c_{j,1} + ... + c_{j,k_j}) = 1 + T`.
pub fn flag_hf_presentation(parts: &[u32]) -> Result<Presentation, PresentationError> {
    flag_hf_presentation_signed(parts, Sign::Plus)
}

/// As [`flag_hf_presentation`] with right-hand side `1 + sign T`.
pub fn flag_hf_presentation_signed(parts: &[u32], sign: Sign) -> Result<Presentation, PresentationError> {
    let n = check_parts(parts)?;
    let generators: Vec<Generator> = parts
        .iter()
        .enumerate()
        .flat_map(|(j, &k)| (1..=k).map(move |i| Generator::new(chern_name(j + 1, i), 2 * i)))
        .collect();
    let shell = Presentation::new(generators.clone(), 2 * n, vec![])?;
    let mut product = MPoly::one(shell.arity());
    for (j, &k) in parts.iter().enumerate() {
        product = product.mul(&total_class(&shell, (1..=k).map(|i| chern_name(j + 1, i)))?);
    }
    let relations = graded_components(&shell, &product, n, sign);
    Presentation::new(generators, 2 * n, relations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharConsistency {
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub consistent: bool,
}

/// Whether the per-factor relations `1 + sigma_j T` of the Grassmannian
/// product restrict to a single relation on the flag Lagrangian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignConsistency {
    pub parts: Vec<u32>,
    pub factor_signs: Vec<Sign>,
    pub consistent: bool,
    /// Common sign of `T` on the right-hand side when consistent.
    pub rhs_sign: Option<Sign>,
    /// Inconsistent signs force `2 T = 0`, which only characteristic 2 allows.
    pub by_characteristic: Vec<CharConsistency>,
}

pub fn sign_consistency(parts: &[u32], background: &BackgroundSign) -> SignConsistency {
    let factor_signs = factor_signs(parts, background);
    let consistent = factor_signs.windows(2).all(|w| w[0] == w[1]);
    let by_characteristic = default_characteristics()
        .into_iter()
        .map(|c| CharConsistency { characteristic: c, consistent: consistent || c.value() == 2 })
        .collect();
    SignConsistency {
        parts: parts.to_vec(),
        rhs_sign: if consistent { factor_signs.first().copied() } else { None },
        factor_signs,
        consistent,
        by_characteristic,
    }
}

/// Graded dimensions of `H^*(Flag) ⊗ K[T]`, `deg T = 2n`: what the flag
/// presentation must reproduce if the Lagrangian is wide.
pub fn expected_flag_dims(parts: &[u32], max_degree: u32) -> Result<BTreeMap<u32, usize>, PresentationError> {
    let n = check_parts(parts)?;
    let p = poincare_poly(&SpaceSpec::Flag { parts: parts.to_vec() })?;
    Ok((0..=max_degree)
        .step_by(2)
        .map(|m| {
            let total: BigInt = (0..=m / (2 * n)).map(|b| p.coeff((m - 2 * n * b) as i64)).sum();
            (m, usize::try_from(&total).expect("Poincaré coefficients are small"))
        })
        .collect())
}

/// Push every ambient relation through `generator -> image`, `T -> T`.
/// Images are elements of `target`; the result lists one relation in
/// `target` per ambient relation, in order.
pub fn restriction_co_map(
    ambient: &Presentation,
    target: &Presentation,
    images: &BTreeMap<String, MPoly>,
) -> Result<Vec<MPoly>, PresentationError> {
    if ambient.novikov_degree() != target.novikov_degree() {
        return Err(PresentationError::NovikovMismatch {
            ambient: ambient.novikov_degree(),
            target: target.novikov_degree(),
        });
    }
    if let Some(name) = images.keys().find(|n| ambient.index_of(n).is_none()) {
        return Err(PresentationError::UnknownGenerator(name.clone()));
    }
    let mut substitution = Vec::with_capacity(ambient.arity());
    for (i, g) in ambient.generators().iter().enumerate() {
        let image = match images.get(&g.name) {
            Some(image) => image.clone(),
            None if g.degree < ambient.novikov_degree() || ambient.relations().iter().any(|r| r.mentions(i)) => {
                return Err(PresentationError::IncompleteAssignment(g.name.clone()))
            }
            None => MPoly::zero(target.arity()),
        };
        if image.arity() != target.arity() {
            return Err(PresentationError::ArityMismatch { index: i, found: image.arity(), expected: target.arity() });
        }
        match image.homogeneous_degree(&target.weights()) {
            None => return Err(PresentationError::InhomogeneousImage(g.name.clone())),
            Some(Some(d)) if d != g.degree => {
                return Err(PresentationError::ImageDegree { name: g.name.clone(), found: d, expected: g.degree })
            }
            Some(_) => {}
        }
        substitution.push(image);
    }
    substitution.push(target.novikov());
    let weights = target.weights();
    Ok(ambient
        .relations()
        .iter()
        .map(|r| {
            let pushed = r.substitute(&substitution, target.arity());
            debug_assert!(pushed.homogeneous_degree(&weights).is_some());
            pushed
        })
        .collect())
}

/// Images sending `c_{j,i}` to itself and `f_{j,m}` to the degree-`2m` part
/// of `prod_{l != j} (1 + c_{l,1} + ... + c_{l,k_l})`.
pub fn flag_co_images(parts: &[u32], target: &Presentation) -> Result<BTreeMap<String, MPoly>, PresentationError> {
    let n = check_parts(parts)?;
    let weights = target.weights();
    let mut images = BTreeMap::new();
    for (j, &k) in parts.iter().enumerate() {
        for i in 1..=k {
            images.insert(chern_name(j + 1, i), target.var(&chern_name(j + 1, i))?);
        }
        let mut others = MPoly::one(target.arity());
        for (l, &kl) in parts.iter().enumerate().filter(|(l, _)| *l != j) {
            others = others.mul(&total_class(target, (1..=kl).map(|i| chern_name(l + 1, i)))?);
        }
        for m in 1..=n - k {
            images.insert(dual_name(j + 1, m), others.component(&weights, 2 * m));
        }
    }
    Ok(images)
}

/// The Chern-class identity `c(E(1)) c(F(1)) = (1 + H)^n` below degree `2n`
/// on the ambient side of the projective Stiefel correspondence, together
/// with the closed-open images `c_l(E(1)) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StiefelChern {
    pub n: u32,
    pub k: u32,
    pub ambient: Presentation,
    pub target: Presentation,
    pub images: BTreeMap<String, MPoly>,
}

pub fn stiefel_chern(n: u32, k: u32) -> Result<StiefelChern, PresentationError> {
    if k == 0 || k >= n {
        return Err(PresentationError::Poincare(PoincareError::OutOfFamily { n: n as u64, k: k as u64 }));
    }
    let e_name = |l: u32| format!("e{l}");
    let f_name = |j: u32| format!("f{j}");
    let mut generators: Vec<Generator> = (1..=k).map(|l| Generator::new(e_name(l), 2 * l)).collect();
    generators.extend((1..=n - k).map(|j| Generator::new(f_name(j), 2 * j)));
    generators.push(Generator::new("H", 2));
    let shell = Presentation::new(generators.clone(), 2 * n, vec![])?;
    let class = |name: Option<String>| name.map(|s| shell.var(&s)).unwrap_or_else(|| Ok(MPoly::one(shell.arity())));
    let h = shell.var("H")?;
    let mut relations = Vec::new();
    for j in 1..n {
        let mut lhs = MPoly::zero(shell.arity());
        for l in 0..=j.min(k) {
            if j - l > n - k {
                continue;
            }
            let e = class((l > 0).then(|| e_name(l)))?;
            let f = class((j - l > 0).then(|| f_name(j - l)))?;
            lhs = lhs.add(&e.mul(&f));
        }
        relations.push(lhs.sub(&h.pow(j).scale(&binomial(n as u64, j as u64))));
    }
    let ambient = Presentation::new(generators, 2 * n, relations)?;

    let mut target_gens: Vec<Generator> = (1..=n - k).map(|j| Generator::new(f_name(j), 2 * j)).collect();
    target_gens.push(Generator::new("H", 2));
    let target = Presentation::new(target_gens, 2 * n, vec![])?;
    let mut images = BTreeMap::new();
    for l in 1..=k {
        images.insert(e_name(l), MPoly::zero(target.arity()));
    }
    for j in 1..=n - k {
        images.insert(f_name(j), target.var(&f_name(j))?);
    }
    images.insert("H".into(), target.var("H")?);
    Ok(StiefelChern { n, k, ambient, target, images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(p: u64) -> Characteristic {
        Characteristic::new(p).unwrap()
    }

    #[test]
    fn projective_examples() {
        let p = qh_projective(2, Sign::Minus).unwrap();
        assert_eq!(p.rendered_relations(), vec!["H^3 + T = 0"]);
        assert_eq!(p.novikov_degree(), 6);
        let p = qh_projective(1, Sign::Plus).unwrap();
        assert_eq!(p.rendered_relations(), vec!["H^2 - T = 0"]);
        assert_eq!(degreewise_dims(&p, ch(0), 2).unwrap()[&2], 1);
        assert!(qh_projective(0, Sign::Plus).is_err());
    }

    #[test]
    fn flag_relations() {
        let p = flag_hf_presentation(&[1, 1]).unwrap();
        assert_eq!(p.rendered_relations(), vec!["c1_1 + c2_1 = 0", "c1_1*c2_1 - T = 0"]);
        let p = flag_hf_presentation(&[2, 1]).unwrap();
        assert_eq!(
            p.rendered_relations(),
            vec!["c1_1 + c2_1 = 0", "c1_1*c2_1 + c1_2 = 0", "c1_2*c2_1 - T = 0"]
        );
    }

    #[test]
    fn flag_dims_small() {
        let p = flag_hf_presentation(&[1, 1]).unwrap();
        let dims = degreewise_dims(&p, ch(0), 8).unwrap();
        assert!(dims.values().all(|d| *d == 1));
        assert_eq!(dims, expected_flag_dims(&[1, 1], 8).unwrap());
    }

    #[test]
    fn grassmannian_signs() {
        let p = qh_grassmannian_product(&[1, 2], &BackgroundSign::zero()).unwrap();
        assert_eq!(factor_signs(&[1, 2], &BackgroundSign::zero()), vec![Sign::Minus, Sign::Plus]);
        assert_eq!(p.relations().len(), 6);
        let b = BackgroundSign::flag_class(&[1, 1], 0);
        assert_eq!(factor_signs(&[1, 1], &b), vec![Sign::Plus, Sign::Plus]);
        let p = qh_grassmannian_product(&[1, 1], &b).unwrap();
        assert_eq!(
            p.rendered_relations(),
            vec!["c1_1 + f1_1 = 0", "c1_1*f1_1 - T = 0", "c2_1 + f2_1 = 0", "c2_1*f2_1 - T = 0"]
        );
    }

    #[test]
    fn consistency_examples() {
        let r = sign_consistency(&[1, 2], &BackgroundSign::flag_class(&[1, 2], 0));
        assert!(r.consistent);
        assert_eq!(r.rhs_sign, Some(Sign::Plus));
        let r = sign_consistency(&[1, 2], &BackgroundSign::zero());
        assert!(!r.consistent);
        assert!(r.by_characteristic.iter().all(|c| c.consistent == (c.characteristic.value() == 2)));
        assert!(sign_consistency(&[2, 2], &BackgroundSign::zero()).consistent);
        assert_eq!(sign_consistency(&[1, 2], &BackgroundSign::flag_class(&[1, 2], 1)).rhs_sign, Some(Sign::Minus));
    }

    #[test]
    fn identity_co_map() {
        let p = flag_hf_presentation(&[1, 2]).unwrap();
        let images = p
            .generators()
            .iter()
            .map(|g| (g.name.clone(), p.var(&g.name).unwrap()))
            .collect();
        assert_eq!(restriction_co_map(&p, &p, &images).unwrap(), p.relations());
    }

    #[test]
    fn co_map_needs_every_low_generator() {
        let p = flag_hf_presentation(&[1, 1]).unwrap();
        let mut images = BTreeMap::new();
        images.insert("c1_1".to_string(), p.var("c1_1").unwrap());
        assert_eq!(
            restriction_co_map(&p, &p, &images),
            Err(PresentationError::IncompleteAssignment("c2_1".into()))
        );
    }

    #[test]
    fn json_round_trip() {
        let p = flag_hf_presentation(&[2, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"novikov_degree\":6"));
        let back: Presentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_rejects_inhomogeneous() {
        let s = r#"{"generators":[{"name":"x","degree":2}],"novikov_degree":4,
            "relations":[[{"coeff":1,"monomial":{"x":1}},{"coeff":1,"monomial":{}}]]}"#;
        assert!(serde_json::from_str::<Presentation>(s).is_err());
    }
}

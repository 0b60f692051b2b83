//! Certified finite groups: additive subgroups of `D^m`, multiplicative
//! subgroups of `D*`, and subgroups of `D* ⋉ D^m`.

mod catalog;
mod equivalence;
mod lemmas;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::exactalg::{decode_scalar, encode_scalar, AlgebraError, Field, Scalar};

pub use catalog::{catalog, CATALOG_NAMES, NAMED_ONLY};
pub use equivalence::{group_equivalence, EquivalenceMode, EquivalenceWitness};
pub use lemmas::{field_has_element_of_order_p, lemma_checks, Check, LemmaReport};

/// Default cap on the size of a generated group.
pub const DEFAULT_BOUND: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("characteristic 0: (D^m, +) has no nontrivial finite subgroup")]
    CharZeroNoFiniteAdditiveSubgroup,
    #[error("generation exceeded {0} elements")]
    NotFinite(usize),
    #[error("unknown catalog preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {0:?} is catalogued by name only")]
    NotConstructed(String),
    #[error("invalid preset parameter: {0}")]
    BadParameter(String),
    #[error("not a group: {0}")]
    Certification(CertifyViolation),
    #[error("search space of {0} candidates exceeds the bound")]
    SearchSpaceTooLarge(u128),
    #[error("operation needs {expected} groups, got {got}")]
    WrongKind { expected: GroupKind, got: GroupKind },
    #[error("invalid group encoding: {0}")]
    Decode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Additive,
    Multiplicative,
    Semidirect,
}

impl GroupKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Additive => "additive",
            GroupKind::Multiplicative => "multiplicative",
            GroupKind::Semidirect => "semidirect",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element of `(D^m, +)`, `(D*, ·)` or `D* ⋉ D^m` with
/// `(α, x)(β, y) = (αβ, xβ + y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Additive(Vec<Scalar>),
    Multiplicative(Scalar),
    Semidirect { gamma: Scalar, x: Vec<Scalar> },
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

fn add_vec(x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
    x.iter().zip(y).map(|(a, b)| a.checked_add(b)).collect()
}

fn scale_right(x: &[Scalar], s: &Scalar) -> Result<Vec<Scalar>, AlgebraError> {
    x.iter().map(|a| a.checked_mul(s)).collect()
}

impl GroupElement {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupElement::Additive(_) => GroupKind::Additive,
            GroupElement::Multiplicative(_) => GroupKind::Multiplicative,
            GroupElement::Semidirect { .. } => GroupKind::Semidirect,
        }
    }

    pub fn field(&self) -> Option<&Field> {
        match self {
            GroupElement::Additive(v) => v.first().map(Scalar::field),
            GroupElement::Multiplicative(g) => Some(g.field()),
            GroupElement::Semidirect { gamma, .. } => Some(gamma.field()),
        }
    }

    /// Length of the vector part.
    pub fn vector_len(&self) -> usize {
        match self {
            GroupElement::Additive(v) => v.len(),
            GroupElement::Multiplicative(_) => 0,
            GroupElement::Semidirect { x, .. } => x.len(),
        }
    }

    pub fn identity(kind: GroupKind, field: &Field, len: usize) -> GroupElement {
        match kind {
            GroupKind::Additive => GroupElement::Additive(vec![field.zero(); len]),
            GroupKind::Multiplicative => GroupElement::Multiplicative(field.one()),
            GroupKind::Semidirect => GroupElement::Semidirect {
                gamma: field.one(),
                x: vec![field.zero(); len],
            },
        }
    }

    pub fn op(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        let mismatch = || GroupError::WrongKind { expected: self.kind(), got: other.kind() };
        Ok(match (self, other) {
            (GroupElement::Additive(x), GroupElement::Additive(y)) if x.len() == y.len() => {
                GroupElement::Additive(add_vec(x, y)?)
            }
            (GroupElement::Multiplicative(a), GroupElement::Multiplicative(b)) => {
                GroupElement::Multiplicative(a.checked_mul(b)?)
            }
            (GroupElement::Semidirect { gamma: a, x }, GroupElement::Semidirect { gamma: b, x: y })
                if x.len() == y.len() =>
            {
                GroupElement::Semidirect {
                    gamma: a.checked_mul(b)?,
                    x: add_vec(&scale_right(x, b)?, y)?,
                }
            }
            _ => return Err(mismatch()),
        })
    }

    pub fn inverse(&self) -> Result<GroupElement, GroupError> {
        Ok(match self {
            GroupElement::Additive(x) => GroupElement::Additive(x.iter().map(|a| -a).collect()),
            GroupElement::Multiplicative(a) => GroupElement::Multiplicative(a.inv()?),
            GroupElement::Semidirect { gamma, x } => {
                let gi = gamma.inv()?;
                GroupElement::Semidirect {
                    x: x.iter().map(|a| -&(a * &gi)).collect(),
                    gamma: gi,
                }
            }
        })
    }

    pub fn to_json(&self) -> Json {
        let vec = |v: &[Scalar]| Json::Array(v.iter().map(encode_scalar).collect());
        match self {
            GroupElement::Additive(v) => vec(v),
            GroupElement::Multiplicative(g) => encode_scalar(g),
            GroupElement::Semidirect { gamma, x } => json!({"gamma": encode_scalar(gamma), "x": vec(x)}),
        }
    }

    pub fn from_json(kind: GroupKind, field: &Field, v: &Json) -> Result<GroupElement, GroupError> {
        let bad = || GroupError::Decode(format!("{v} is not a {kind} element"));
        let vec = |v: &Json| -> Result<Vec<Scalar>, GroupError> {
            v.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|s| decode_scalar(field, s).map_err(GroupError::from))
                .collect()
        };
        Ok(match kind {
            GroupKind::Additive => GroupElement::Additive(vec(v)?),
            GroupKind::Multiplicative => GroupElement::Multiplicative(decode_scalar(field, v)?),
            GroupKind::Semidirect => GroupElement::Semidirect {
                gamma: decode_scalar(field, v.get("gamma").ok_or_else(bad)?)?,
                x: vec(v.get("x").ok_or_else(bad)?)?,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyViolation {
    Empty,
    MixedElements(usize),
    ZeroMultiplier(usize),
    Duplicate(usize, usize),
    NotClosed(usize, usize),
    NoIdentity,
    NoInverse(usize),
}

impl fmt::Display for CertifyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifyViolation::Empty => write!(f, "empty element list"),
            CertifyViolation::MixedElements(i) => write!(f, "element {i} has a different kind, field or length"),
            CertifyViolation::ZeroMultiplier(i) => write!(f, "element {i} has a zero multiplicative part"),
            CertifyViolation::Duplicate(i, j) => write!(f, "elements {i} and {j} coincide"),
            CertifyViolation::NotClosed(i, j) => write!(f, "product of elements {i} and {j} is not listed"),
            CertifyViolation::NoIdentity => write!(f, "identity is not listed"),
            CertifyViolation::NoInverse(i) => write!(f, "inverse of element {i} is not listed"),
        }
    }
}

/// A finite group whose closure, identity and inverses have been checked.
/// The identity is element 0; `table[i][j]` indexes `elements[i] ∘ elements[j]`.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    kind: GroupKind,
    field: Field,
    vector_len: usize,
    elements: Vec<GroupElement>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    abelian: bool,
    description: String,
}

impl PartialEq for GeneratedGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.field == other.field && self.elements == other.elements
    }
}

/// Checks closure (all `n²` products), identity and inverses, and records
/// the Cayley table. The identity is moved to the front; the order of the
/// other elements is kept.
pub fn certify(elements: Vec<GroupElement>, description: impl Into<String>) -> Result<GeneratedGroup, CertifyViolation> {
    let first = elements.first().ok_or(CertifyViolation::Empty)?;
    let kind = first.kind();
    let vector_len = first.vector_len();
    let field = first
        .field()
        .cloned()
        .ok_or(CertifyViolation::MixedElements(0))?;
    for (i, e) in elements.iter().enumerate() {
        if e.kind() != kind || e.vector_len() != vector_len || e.field() != Some(&field) {
            return Err(CertifyViolation::MixedElements(i));
        }
        let comps: Vec<&Scalar> = match e {
            GroupElement::Additive(v) => v.iter().collect(),
            GroupElement::Multiplicative(g) => vec![g],
            GroupElement::Semidirect { gamma, x } => std::iter::once(gamma).chain(x).collect(),
        };
        if comps.iter().any(|s| s.field() != &field) {
            return Err(CertifyViolation::MixedElements(i));
        }
        match e {
            GroupElement::Multiplicative(g) | GroupElement::Semidirect { gamma: g, .. } if g.is_zero() => {
                return Err(CertifyViolation::ZeroMultiplier(i))
            }
            _ => {}
        }
    }
    let id = GroupElement::identity(kind, &field, vector_len);
    let mut elements = elements;
    let pos = elements.iter().position(|e| *e == id).ok_or(CertifyViolation::NoIdentity)?;
    let idel = elements.remove(pos);
    elements.insert(0, idel);
    let mut index: HashMap<&GroupElement, usize> = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if let Some(&j) = index.get(e) {
            return Err(CertifyViolation::Duplicate(j, i));
        }
        index.insert(e, i);
    }
    let table: Vec<Vec<usize>> = elements
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            elements
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let c = a.op(b).expect("elements validated");
                    index.get(&c).copied().ok_or(CertifyViolation::NotClosed(i, j))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let n = elements.len();
    let inverses = (0..n)
        .map(|i| (0..n).find(|&j| table[i][j] == 0).ok_or(CertifyViolation::NoInverse(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let abelian = (0..n).all(|i| (0..i).all(|j| table[i][j] == table[j][i]));
    drop(index);
    Ok(GeneratedGroup {
        kind,
        field,
        vector_len,
        elements,
        table,
        inverses,
        abelian,
        description: description.into(),
    })
}

/// Closure of `generators` under the group operation, starting from the
/// identity, in breadth-first order.
pub fn generate(
    kind: GroupKind,
    field: &Field,
    vector_len: usize,
    generators: &[GroupElement],
    bound: usize,
) -> Result<Vec<GroupElement>, GroupError> {
    let id = GroupElement::identity(kind, field, vector_len);
    let mut seen: HashMap<GroupElement, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in generators {
            let y = x.op(g)?;
            if !seen.contains_key(&y) {
                if out.len() >= bound {
                    return Err(GroupError::NotFinite(bound));
                }
                seen.insert(y.clone(), ());
                out.push(y);
            }
        }
    }
    Ok(out)
}

impl GeneratedGroup {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Length of the vector part (`m` in `D^m` or `D* ⋉ D^m`).
    pub fn vector_len(&self) -> usize {
        self.vector_len
    }

    /// Index of `e`, if it is an element.
    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// Order of element `i` read from the Cayley table.
    pub fn element_order(&self, i: usize) -> usize {
        let mut cur = i;
        let mut k = 1;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.element_order(i) == self.order())
    }

    /// Multiplicative parts (`γ`) for multiplicative and semidirect groups.
    pub fn multipliers(&self) -> Vec<Scalar> {
        self.elements
            .iter()
            .filter_map(|e| match e {
                GroupElement::Multiplicative(g) | GroupElement::Semidirect { gamma: g, .. } => Some(g.clone()),
                GroupElement::Additive(_) => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "kind": self.kind.as_str(),
            "descriptor": self.field.name(),
            "elements": self.elements.iter().map(GroupElement::to_json).collect::<Vec<_>>(),
        })
    }

    /// Decodes and certifies a group in the `{"kind","descriptor","elements"}` form.
    pub fn from_json(v: &Json) -> Result<GeneratedGroup, GroupError> {
        let bad = |s: &str| GroupError::Decode(s.to_string());
        let kind = match v.get("kind").and_then(Json::as_str) {
            Some("additive") => GroupKind::Additive,
            Some("multiplicative") => GroupKind::Multiplicative,
            Some("semidirect") => GroupKind::Semidirect,
            _ => return Err(bad("missing or unknown \"kind\"")),
        };
        let field = Field::parse(v.get("descriptor").and_then(Json::as_str).ok_or_else(|| bad("missing \"descriptor\""))?)?;
        let elements = v
            .get("elements")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("missing \"elements\""))?
            .iter()
            .map(|e| GroupElement::from_json(kind, &field, e))
            .collect::<Result<Vec<_>, _>>()?;
        certify(elements, "decoded").map_err(GroupError::Certification)
    }
}

/// The `F_p`-span of `generators` inside `D^m`; needs characteristic `p > 0`
/// unless every generator is zero.
pub fn additive_group(field: &Field, dim: usize, generators: &[Vec<Scalar>]) -> Result<GeneratedGroup, GroupError> {
    let gens: Vec<GroupElement> = generators
        .iter()
        .map(|g| {
            if g.len() != dim {
                return Err(GroupError::BadParameter(format!("generator of length {} in D^{dim}", g.len())));
            }
            Ok(GroupElement::Additive(g.clone()))
        })
        .collect::<Result<_, _>>()?;
    let nontrivial = generators.iter().any(|g| g.iter().any(|s| !s.is_zero()));
    if field.characteristic() == 0 && nontrivial {
        return Err(GroupError::CharZeroNoFiniteAdditiveSubgroup);
    }
    let elements = generate(GroupKind::Additive, field, dim, &gens, DEFAULT_BOUND)?;
    certify(elements, format!("additive span in {}^{dim}", field.name())).map_err(GroupError::Certification)
}

/// The cyclic subgroup generated by `(γ, x)` in `D* ⋉ D^m`.
pub fn semidirect_cyclic(gamma: &Scalar, x: &[Scalar], bound: usize) -> Result<GeneratedGroup, GroupError> {
    let g = GroupElement::Semidirect { gamma: gamma.clone(), x: x.to_vec() };
    let elements = generate(GroupKind::Semidirect, gamma.field(), x.len(), &[g], bound)?;
    certify(elements, format!("<({gamma}, {x:?})>")).map_err(GroupError::Certification)
}

/// The cyclic subgroup generated by a root of unity in `D*`.
pub fn multiplicative_cyclic(gamma: &Scalar, bound: usize) -> Result<GeneratedGroup, GroupError> {
    let g = GroupElement::Multiplicative(gamma.clone());
    let elements = generate(GroupKind::Multiplicative, gamma.field(), 0, &[g], bound)?;
    certify(elements, format!("<{gamma}>")).map_err(GroupError::Certification)
}

/// Closure of arbitrary multiplicative generators, certified.
pub fn multiplicative_group(
    field: &Field,
    generators: &[Scalar],
    bound: usize,
    description: impl Into<String>,
) -> Result<GeneratedGroup, GroupError> {
    let gens: Vec<GroupElement> = generators.iter().cloned().map(GroupElement::Multiplicative).collect();
    let elements = generate(GroupKind::Multiplicative, field, 0, &gens, bound)?;
    certify(elements, description).map_err(GroupError::Certification)
}

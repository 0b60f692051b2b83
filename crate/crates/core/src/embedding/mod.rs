//! Transversal designs embedded in `P^d(D)`: constructions from groups,
//! verification, group extraction, transversal points and MOLS extension.

pub(crate) mod construct;
mod extend;
mod extract;
mod transversal;
mod verify;

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::design::{DesignError, TdViolation, TransversalDesign};
use crate::exactalg::{decode_scalar, encode_scalar, AlgebraError, Field, Scalar};
use crate::groupcat::GroupError;
use crate::projgeom::{GeomError, HomPoint, Hyperplane};

pub use construct::{construct_additive, construct_multiplicative, construct_semidirect};
pub use extend::{add_part, extend_to_max_td};
pub use extract::{apply_collineation, extract_group, ExtractedGroup};
pub use transversal::{
    attach_transversal_point, check_improper_transversal, compute_dg, is_transversal_point, transversal_points,
    ImproperVerdict, SubfieldDG,
};
pub use verify::{classify, verify_embedding, Classification, EmbeddingViolation, VerifyReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("collineation matrix is singular or has the wrong size")]
    SingularMatrix,
    #[error("characteristic 0: three concurrent hyperplanes cannot carry a TD(3,n)")]
    CharZeroConcurrentImpossible,
    #[error("group of order {0} is too small (need n >= 3)")]
    GroupTooSmall(usize),
    #[error("dimension {0} is too small for this construction")]
    DimensionTooSmall(usize),
    #[error("expected a {expected} group")]
    WrongGroupKind { expected: &'static str },
    #[error("group vectors have length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("part hyperplanes are not in a canonical frame")]
    NonStandardFrame,
    #[error("coordinates do not follow the canonical pattern: {0}")]
    PatternMismatch(String),
    #[error("loop of the design disagrees with the extracted group")]
    LoopMismatch,
    #[error("embedding violates an axiom: {0}")]
    Invalid(EmbeddingViolation),
    #[error("point lies on part hyperplane {0}")]
    PointOnPartHyperplane(usize),
    #[error("configuration has hyperplane intersection of dimension {got}, expected {expected}")]
    WrongClassification { expected: isize, got: isize },
    #[error("D_G has two elements; there is nothing to extend")]
    NothingToExtend,
    #[error("field {0} is infinite; exhaustive scan impossible")]
    InfiniteField(String),
    #[error("new part fails pair coverage: {0}")]
    PairCoverage(TdViolation),
    #[error("{0} is not a transversal point")]
    NotTransversal(String),
    #[error("invalid embedding encoding: {0}")]
    Decode(String),
}

/// Which canonical coordinate frame the first three part hyperplanes form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `x_d = 0`, `x_d = x_{d+1}`, `x_{d+1} = 0`, meeting in a `(d-2)`-flat.
    Concurrent,
    /// `x_1 = 0`, `x_2 = 0`, `x_3 = 0`, meeting in a `(d-3)`-flat.
    Triangle,
}

impl Frame {
    pub fn as_str(&self) -> &'static str {
        match self {
            Frame::Concurrent => "concurrent",
            Frame::Triangle => "triangle",
        }
    }

    /// The three canonical hyperplanes in `P^d`.
    pub fn hyperplanes(&self, field: &Field, d: usize) -> [Hyperplane; 3] {
        let len = d + 1;
        match self {
            Frame::Concurrent => {
                let mut h2 = vec![field.zero(); len];
                h2[d - 1] = field.one();
                h2[d] = -field.one();
                [
                    Hyperplane::coordinate(field, len, d - 1),
                    Hyperplane::new(h2).expect("nonzero"),
                    Hyperplane::coordinate(field, len, d),
                ]
            }
            Frame::Triangle => [0, 1, 2].map(|i| Hyperplane::coordinate(field, len, i)),
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A TD together with its point map into `P^d(D)` and one hyperplane per part.
/// Point `i` of the design is `points[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedTD {
    pub td: TransversalDesign,
    pub points: Vec<HomPoint>,
    pub part_hyperplanes: Vec<Hyperplane>,
    pub field: Field,
    pub d: usize,
    pub infinity: Option<HomPoint>,
}

impl EmbeddedTD {
    pub fn n(&self) -> usize {
        self.td.n
    }

    pub fn k(&self) -> usize {
        self.td.k
    }

    /// The canonical frame of the first three part hyperplanes, if any.
    pub fn frame(&self) -> Option<Frame> {
        if self.part_hyperplanes.len() < 3 {
            return None;
        }
        [Frame::Concurrent, Frame::Triangle].into_iter().find(|f| {
            (f != &Frame::Triangle || self.d >= 2)
                && f.hyperplanes(&self.field, self.d)[..] == self.part_hyperplanes[..3]
        })
    }

    /// Points of part `p`, in part order.
    pub fn part_points(&self, p: usize) -> Vec<&HomPoint> {
        self.td.parts[p].iter().map(|&i| &self.points[i]).collect()
    }

    pub(crate) fn point_index(&self) -> HashMap<&HomPoint, usize> {
        self.points.iter().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn to_json(&self) -> Json {
        let coords = |v: &[Scalar]| Json::Array(v.iter().map(encode_scalar).collect());
        let mut out = json!({
            "descriptor": self.field.name(),
            "d": self.d,
            "k": self.td.k,
            "n": self.td.n,
            "frame": self.frame().map(|f| f.as_str()),
            "points": self.points.iter().enumerate()
                .map(|(i, p)| json!({"id": i, "coords": coords(p.coords())}))
                .collect::<Vec<_>>(),
            "parts": self.td.parts,
            "part_hyperplanes": self.part_hyperplanes.iter().map(|h| coords(h.coeffs())).collect::<Vec<_>>(),
            "blocks": self.td.blocks,
        });
        if let Some(t) = &self.td.t {
            out["T"] = json!(t);
        }
        if let Some(inf) = &self.infinity {
            out["infinity"] = coords(inf.coords());
        }
        out
    }

    /// Decodes the JSON form. Structure is checked; embedding axioms are
    /// left to [`verify_embedding`].
    pub fn from_json(v: &Json) -> Result<EmbeddedTD, EmbeddingError> {
        let bad = |s: &str| EmbeddingError::Decode(s.to_string());
        let field = Field::parse(v.get("descriptor").and_then(Json::as_str).ok_or_else(|| bad("missing descriptor"))?)?;
        let uint = |key: &str| -> Result<usize, EmbeddingError> {
            v.get(key)
                .and_then(Json::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| EmbeddingError::Decode(format!("missing or invalid {key:?}")))
        };
        let (d, k, n) = (uint("d")?, uint("k")?, uint("n")?);
        if d < 2 {
            return Err(bad("d must be at least 2"));
        }
        let vector = |x: &Json| -> Result<Vec<Scalar>, EmbeddingError> {
            let arr = x.as_array().ok_or_else(|| bad("coordinate vector is not an array"))?;
            if arr.len() != d + 1 {
                return Err(bad("coordinate vector has the wrong length"));
            }
            arr.iter().map(|s| decode_scalar(&field, s).map_err(EmbeddingError::from)).collect()
        };
        let pts = v.get("points").and_then(Json::as_array).ok_or_else(|| bad("missing points"))?;
        let mut points: Vec<Option<HomPoint>> = vec![None; pts.len()];
        for p in pts {
            let id = p.get("id").and_then(Json::as_u64).ok_or_else(|| bad("point without id"))? as usize;
            let slot = points.get_mut(id).ok_or_else(|| bad("point id out of range"))?;
            if slot.is_some() {
                return Err(bad("duplicate point id"));
            }
            *slot = Some(HomPoint::new(vector(p.get("coords").ok_or_else(|| bad("point without coords"))?)?)?);
        }
        let points: Vec<HomPoint> = points.into_iter().map(|p| p.ok_or_else(|| bad("missing point id"))).collect::<Result<_, _>>()?;
        let part_hyperplanes = v
            .get("part_hyperplanes")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("missing part_hyperplanes"))?
            .iter()
            .map(|h| Ok(Hyperplane::new(vector(h)?)?))
            .collect::<Result<Vec<_>, EmbeddingError>>()?;
        let lists = |key: &str| -> Result<Option<Vec<Vec<usize>>>, EmbeddingError> {
            match v.get(key) {
                None | Some(Json::Null) => Ok(None),
                Some(x) => serde_json::from_value(x.clone())
                    .map(Some)
                    .map_err(|e| EmbeddingError::Decode(format!("{key}: {e}"))),
            }
        };
        let blocks = lists("blocks")?.ok_or_else(|| bad("missing blocks"))?;
        let parts = match lists("parts")? {
            Some(p) => p,
            None => (0..k).map(|p| (p * n..(p + 1) * n).collect()).collect(),
        };
        let infinity = match v.get("infinity") {
            None | Some(Json::Null) => None,
            Some(x) => Some(HomPoint::new(vector(x)?)?),
        };
        Ok(EmbeddedTD {
            td: TransversalDesign { k, n, parts, blocks, t: lists("T")? },
            points,
            part_hyperplanes,
            field,
            d,
            infinity,
        })
    }
}

#[cfg(test)]
mod tests;

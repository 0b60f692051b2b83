use std::collections::{HashMap, HashSet};

use serde_json::{json, Value as Json};

use super::extract::{apply_collineation, extract_group, invert, vec_mat};
use super::{EmbeddedTD, EmbeddingError, Frame};
use crate::exactalg::{encode_scalar, Field, Scalar};
use crate::groupcat::{GeneratedGroup, GroupElement, GroupKind};
use crate::projgeom::{incident, project_from, HomPoint, Hyperplane};

/// `D_G = { a ∈ D : G a ⊆ G }` for a finite additive group `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubfieldDG {
    pub field: Field,
    /// Sorted by field element index.
    pub elements: Vec<Scalar>,
}

impl SubfieldDG {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// `t` with `|D_G| = p^t`.
    pub fn degree(&self) -> u32 {
        let p = self.field.characteristic() as usize;
        let mut t = 0;
        let mut s = self.size();
        while s > 1 {
            s /= p;
            t += 1;
        }
        t
    }

    pub fn to_json(&self) -> Json {
        json!({
            "descriptor": self.field.name(),
            "size": self.size(),
            "elements": self.elements.iter().map(encode_scalar).collect::<Vec<_>>(),
        })
    }
}

/// Exhaustive scan of `F_q`; the result is checked to be a subfield.
pub fn compute_dg(g: &GeneratedGroup) -> Result<SubfieldDG, EmbeddingError> {
    if g.kind() != GroupKind::Additive {
        return Err(EmbeddingError::WrongGroupKind { expected: "additive" });
    }
    let field = g.field().clone();
    let all = field.elements().ok_or_else(|| EmbeddingError::InfiniteField(field.name().to_string()))?;
    let members: HashSet<&GroupElement> = g.elements().iter().collect();
    let elements: Vec<Scalar> = all
        .into_iter()
        .filter(|a| {
            g.elements().iter().all(|e| {
                let GroupElement::Additive(v) = e else { unreachable!("kind checked") };
                members.contains(&GroupElement::Additive(v.iter().map(|x| x * a).collect()))
            })
        })
        .collect();
    let set: HashSet<&Scalar> = elements.iter().collect();
    let closed = set.contains(&field.zero())
        && set.contains(&field.one())
        && elements.iter().all(|a| {
            elements.iter().all(|b| set.contains(&(a + b)) && set.contains(&(a * b)))
                && (a.is_zero() || set.contains(&a.inv().expect("nonzero")))
        });
    assert!(closed, "D_G is always a subfield");
    Ok(SubfieldDG { field, elements })
}

fn concurrent_group(e: &EmbeddedTD) -> Result<super::ExtractedGroup, EmbeddingError> {
    match e.frame() {
        Some(Frame::Concurrent) => extract_group(e, None, None),
        Some(Frame::Triangle) => Err(EmbeddingError::WrongClassification {
            expected: e.d as isize - 2,
            got: e.d as isize - 3,
        }),
        None => Err(EmbeddingError::NonStandardFrame),
    }
}

/// The point `[γ, a, 1]` in the coordinates fixed by the base points,
/// mapped back through `inverse`.
pub(crate) fn concurrent_point(gamma: &[Scalar], a: &Scalar, inverse: &[Vec<Scalar>]) -> HomPoint {
    let field = a.field();
    let mut c: Vec<Scalar> = gamma.to_vec();
    c.push(a.clone());
    c.push(field.one());
    let back = inverse
        .iter()
        .map(|row| row.iter().zip(&c).fold(field.zero(), |acc, (m, x)| &acc + &(m * x)))
        .collect();
    HomPoint::new(back).expect("nonzero")
}

/// All transversal points of an embedding on concurrent hyperplanes:
/// `{[γ, a, 1] : γ ∈ G, a ∈ D_G ∖ {0, 1}}` in the coordinates of the base
/// points, ordered by `a` then by `γ`.
pub fn transversal_points(e: &EmbeddedTD) -> Result<Vec<HomPoint>, EmbeddingError> {
    let ex = concurrent_group(e)?;
    let dg = compute_dg(&ex.group)?;
    let inverse = invert(&ex.frame_change)?;
    let mut out = Vec::new();
    for a in dg.elements.iter().filter(|a| !a.is_zero() && !a.is_one()) {
        for g in ex.group.elements() {
            let GroupElement::Additive(gamma) = g else { unreachable!("concurrent frame") };
            out.push(concurrent_point(gamma, a, &inverse));
        }
    }
    Ok(out)
}

/// The blocks swept out by the lines through `q`, one per point of part 0,
/// if they exist and partition the points.
pub(crate) fn transversal_blocks(e: &EmbeddedTD, q: &HomPoint) -> Result<Option<Vec<Vec<usize>>>, EmbeddingError> {
    for (p, h) in e.part_hyperplanes.iter().enumerate() {
        if incident(q, h)? {
            return Err(EmbeddingError::PointOnPartHyperplane(p));
        }
    }
    let index = e.point_index();
    let part_of = e.td.part_index().ok_or_else(|| EmbeddingError::Decode("parts do not partition the points".into()))?;
    let blocks: HashSet<Vec<usize>> = e
        .td
        .blocks
        .iter()
        .map(|b| {
            let mut s = b.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut used = vec![false; e.points.len()];
    let mut out = Vec::with_capacity(e.td.n);
    for &x in &e.td.parts[0] {
        let mut block = vec![x];
        for (p, h) in e.part_hyperplanes.iter().enumerate().skip(1) {
            let y = project_from(q, &e.points[x], h)?;
            match index.get(&y) {
                Some(&i) if part_of[i] == p => block.push(i),
                _ => return Ok(None),
            }
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if !blocks.contains(&sorted) {
            return Ok(None);
        }
        for &y in &block {
            if std::mem::replace(&mut used[y], true) {
                return Ok(None);
            }
        }
        out.push(block);
    }
    Ok(Some(out))
}

/// Whether the lines through `q` cut out a block partition of the design.
pub fn is_transversal_point(e: &EmbeddedTD, q: &HomPoint) -> Result<bool, EmbeddingError> {
    Ok(transversal_blocks(e, q)?.is_some())
}

/// Records `q` as the transversal point, with `T` the blocks on lines through it.
pub fn attach_transversal_point(e: &EmbeddedTD, q: &HomPoint) -> Result<EmbeddedTD, EmbeddingError> {
    let t = transversal_blocks(e, q)?.ok_or_else(|| EmbeddingError::NotTransversal(q.to_string()))?;
    let mut out = e.clone();
    out.td.t = Some(t);
    out.infinity = Some(q.clone());
    Ok(out)
}

/// Containment check for a claimed transversal point of an embedding on a
/// triangle frame.
#[derive(Debug, Clone, PartialEq)]
pub enum ImproperVerdict {
    /// In the plane such a configuration cannot exist.
    ImpossibleInPlane { is_transversal: Option<bool> },
    Containment {
        /// `x_1 + x_2 - x_3 = 0` in the coordinates of the base points.
        hyperplane: Hyperplane,
        points_on: bool,
        infinity_on: bool,
        is_transversal: Option<bool>,
    },
}

impl ImproperVerdict {
    pub fn to_json(&self) -> Json {
        let coeffs = |h: &Hyperplane| h.coeffs().iter().map(encode_scalar).collect::<Vec<_>>();
        match self {
            ImproperVerdict::ImpossibleInPlane { is_transversal } => json!({
                "verdict": "impossible_in_plane",
                "is_transversal": is_transversal,
            }),
            ImproperVerdict::Containment { hyperplane, points_on, infinity_on, is_transversal } => json!({
                "verdict": "containment",
                "hyperplane": coeffs(hyperplane),
                "points_on": points_on,
                "infinity_on": infinity_on,
                "is_transversal": is_transversal,
            }),
        }
    }
}

/// For a triangle-frame embedding with transversal point `infinity`, every
/// design point and `infinity` must lie on `x_1 + x_2 - x_3 = 0`; in the
/// plane the configuration is impossible. `is_transversal` is `None` when
/// `infinity` lies on a part hyperplane.
pub fn check_improper_transversal(e: &EmbeddedTD, infinity: &HomPoint) -> Result<ImproperVerdict, EmbeddingError> {
    let ex = match e.frame() {
        Some(Frame::Triangle) => extract_group(e, None, None)?,
        Some(Frame::Concurrent) => {
            return Err(EmbeddingError::WrongClassification { expected: e.d as isize - 3, got: e.d as isize - 2 })
        }
        None => return Err(EmbeddingError::NonStandardFrame),
    };
    let is_transversal = match transversal_blocks(e, infinity) {
        Ok(t) => Some(t.is_some()),
        Err(EmbeddingError::PointOnPartHyperplane(_)) => None,
        Err(err) => return Err(err),
    };
    if e.d == 2 {
        return Ok(ImproperVerdict::ImpossibleInPlane { is_transversal });
    }
    let field = &e.field;
    let mut coeffs = vec![field.zero(); e.d + 1];
    coeffs[0] = field.one();
    coeffs[1] = field.one();
    coeffs[2] = -field.one();
    let canonical = Hyperplane::new(coeffs)?;
    let moved = apply_collineation(&EmbeddedTD { infinity: Some(infinity.clone()), ..e.clone() }, &ex.frame_change)?;
    let points_on = moved
        .points
        .iter()
        .map(|p| incident(p, &canonical))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    let infinity_on = incident(moved.infinity.as_ref().expect("set above"), &canonical)?;
    // α x' = 0 with x' = M x is (α M) x = 0
    Ok(ImproperVerdict::Containment {
        hyperplane: Hyperplane::new(vec_mat(canonical.coeffs(), &ex.frame_change))?,
        points_on,
        infinity_on,
        is_transversal,
    })
}

/// Maps points to ids for the part hyperplane lookups of `extend`.
pub(crate) fn lookup(points: &[HomPoint], offset: usize) -> HashMap<HomPoint, usize> {
    points.iter().enumerate().map(|(i, p)| (p.clone(), offset + i)).collect()
}

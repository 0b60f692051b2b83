use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use super::{EmbeddedTD, EmbeddingError, Frame};
use crate::design::{loop_operation, validate_td, TdViolation};
use crate::exactalg::finite::prime_power;
use crate::projgeom::{incident, intersect_hyperplanes, span_flat, Flat, GeomError, HomPoint};

/// The first axiom an embedding breaks, with the offending objects.
#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingViolation {
    Shape(String),
    Td(TdViolation),
    NotInjective(usize, usize),
    DuplicateHyperplanes(usize, usize),
    PointOffPart { point: usize, part: usize },
    BlockNotCollinear { block: usize },
    PointOnOtherPart { point: usize, part: usize },
    DuplicateBlockLines(usize, usize),
    BlockLineInHyperplane { block: usize, part: usize },
    MissingT,
    InfinityOnPart(usize),
    TLineMissesInfinity { block: usize },
}

impl EmbeddingViolation {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            EmbeddingViolation::Shape(_) => "shape",
            EmbeddingViolation::Td(_) => "td",
            EmbeddingViolation::NotInjective(..) => "not_injective",
            EmbeddingViolation::DuplicateHyperplanes(..) => "duplicate_hyperplanes",
            EmbeddingViolation::PointOffPart { .. } => "point_off_part",
            EmbeddingViolation::BlockNotCollinear { .. } => "block_not_collinear",
            EmbeddingViolation::PointOnOtherPart { .. } => "point_on_other_part",
            EmbeddingViolation::DuplicateBlockLines(..) => "duplicate_block_lines",
            EmbeddingViolation::BlockLineInHyperplane { .. } => "block_line_in_hyperplane",
            EmbeddingViolation::MissingT => "missing_t",
            EmbeddingViolation::InfinityOnPart(_) => "infinity_on_part",
            EmbeddingViolation::TLineMissesInfinity { .. } => "t_line_misses_infinity",
        }
    }

    pub fn to_json(&self) -> Json {
        json!({"code": self.code(), "message": self.to_string()})
    }
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::Shape(s) => write!(f, "{s}"),
            EmbeddingViolation::Td(v) => write!(f, "{v}"),
            EmbeddingViolation::NotInjective(a, b) => write!(f, "points {a} and {b} have the same image"),
            EmbeddingViolation::DuplicateHyperplanes(a, b) => write!(f, "parts {a} and {b} share a hyperplane"),
            EmbeddingViolation::PointOffPart { point, part } => {
                write!(f, "point {point} is not on the hyperplane of its part {part}")
            }
            EmbeddingViolation::BlockNotCollinear { block } => write!(f, "block {block} is not collinear"),
            EmbeddingViolation::PointOnOtherPart { point, part } => {
                write!(f, "point {point} lies on the hyperplane of part {part}")
            }
            EmbeddingViolation::DuplicateBlockLines(a, b) => write!(f, "blocks {a} and {b} span the same line"),
            EmbeddingViolation::BlockLineInHyperplane { block, part } => {
                write!(f, "line of block {block} lies in the hyperplane of part {part}")
            }
            EmbeddingViolation::MissingT => write!(f, "a transversal point is given without T"),
            EmbeddingViolation::InfinityOnPart(p) => write!(f, "the transversal point lies on the hyperplane of part {p}"),
            EmbeddingViolation::TLineMissesInfinity { block } => {
                write!(f, "the line of T-block {block} misses the transversal point")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// The image spans all of `P^d`.
    pub proper: bool,
    /// Dimension of the intersection of all part hyperplanes.
    pub flat_dim: isize,
    pub frame: Option<Frame>,
}

impl VerifyReport {
    pub fn to_json(&self) -> Json {
        json!({
            "ok": true,
            "proper": self.proper,
            "flat_dim": self.flat_dim,
            "frame": self.frame.map(|f| f.as_str()),
        })
    }
}

fn geom(e: GeomError) -> EmbeddingViolation {
    EmbeddingViolation::Shape(e.to_string())
}

fn check_shape(e: &EmbeddedTD) -> Result<(), EmbeddingViolation> {
    let shape = |s: String| Err(EmbeddingViolation::Shape(s));
    if e.points.len() != e.td.num_points() {
        return shape(format!("{} points for a TD({}, {})", e.points.len(), e.td.k, e.td.n));
    }
    if e.part_hyperplanes.len() != e.td.k {
        return shape(format!("{} hyperplanes for {} parts", e.part_hyperplanes.len(), e.td.k));
    }
    let len = e.d + 1;
    for (i, p) in e.points.iter().enumerate() {
        if p.coords().len() != len || p.field() != &e.field {
            return shape(format!("point {i} is not in P^{}({})", e.d, e.field.name()));
        }
    }
    for (i, h) in e.part_hyperplanes.iter().enumerate() {
        if h.coeffs().len() != len || h.field() != &e.field {
            return shape(format!("hyperplane {i} is not in P^{}({})", e.d, e.field.name()));
        }
    }
    if let Some(inf) = &e.infinity {
        if inf.coords().len() != len || inf.field() != &e.field {
            return shape("transversal point has the wrong shape".into());
        }
    }
    Ok(())
}

/// Checks every embedding axiom and recomputes properness and the
/// dimension of the hyperplane intersection.
pub fn verify_embedding(e: &EmbeddedTD) -> Result<VerifyReport, EmbeddingViolation> {
    check_shape(e)?;
    validate_td(&e.td).map_err(EmbeddingViolation::Td)?;
    let mut seen: HashMap<&HomPoint, usize> = HashMap::new();
    for (i, p) in e.points.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Err(EmbeddingViolation::NotInjective(j, i));
        }
        seen.insert(p, i);
    }
    let hs = &e.part_hyperplanes;
    for i in 0..hs.len() {
        if let Some(j) = (0..i).find(|&j| hs[j] == hs[i]) {
            return Err(EmbeddingViolation::DuplicateHyperplanes(j, i));
        }
    }
    let part_of = e.td.part_index().expect("validated");
    // incidence[x][p]: point x on hyperplane p
    let incidence: Vec<Vec<bool>> = e
        .points
        .par_iter()
        .map(|x| hs.iter().map(|h| incident(x, h)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(geom)?;
    for (x, row) in incidence.iter().enumerate() {
        if !row[part_of[x]] {
            return Err(EmbeddingViolation::PointOffPart { point: x, part: part_of[x] });
        }
    }
    let lines: Vec<Flat> = e
        .td
        .blocks
        .par_iter()
        .map(|b| span_flat(&b.iter().map(|&x| e.points[x].clone()).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()
        .map_err(geom)?;
    if let Some(block) = lines.iter().position(|l| l.dim() != 1) {
        return Err(EmbeddingViolation::BlockNotCollinear { block });
    }
    for (x, row) in incidence.iter().enumerate() {
        if let Some(part) = (0..row.len()).find(|&p| p != part_of[x] && row[p]) {
            return Err(EmbeddingViolation::PointOnOtherPart { point: x, part });
        }
    }
    let mut line_index: HashMap<&Flat, usize> = HashMap::new();
    for (i, l) in lines.iter().enumerate() {
        if let Some(&j) = line_index.get(l) {
            return Err(EmbeddingViolation::DuplicateBlockLines(j, i));
        }
        line_index.insert(l, i);
    }
    for (block, l) in lines.iter().enumerate() {
        for (part, h) in hs.iter().enumerate() {
            if l.contained_in(h).map_err(geom)? {
                return Err(EmbeddingViolation::BlockLineInHyperplane { block, part });
            }
        }
    }
    if let Some(inf) = &e.infinity {
        let t = e.td.t.as_ref().ok_or(EmbeddingViolation::MissingT)?;
        for (p, h) in hs.iter().enumerate() {
            if incident(inf, h).map_err(geom)? {
                return Err(EmbeddingViolation::InfinityOnPart(p));
            }
        }
        for (block, b) in t.iter().enumerate() {
            let pts: Vec<HomPoint> = b.iter().map(|&x| e.points[x].clone()).collect();
            if !span_flat(&pts).map_err(geom)?.contains(inf).map_err(geom)? {
                return Err(EmbeddingViolation::TLineMissesInfinity { block });
            }
        }
    }
    Ok(VerifyReport {
        proper: is_proper(e).map_err(geom)?,
        flat_dim: intersect_hyperplanes(hs).map_err(geom)?.dim(),
        frame: e.frame(),
    })
}

pub(crate) fn is_proper(e: &EmbeddedTD) -> Result<bool, GeomError> {
    Ok(span_flat(&e.points)?.dim() == e.d as isize)
}

/// Configuration type with the consequences that follow from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub d: usize,
    /// `d - 2` for concurrent hyperplanes, `d - 3` otherwise; `-1` is the
    /// empty intersection of a triangle in the plane.
    pub flat_dim: isize,
    pub characteristic: u64,
    pub n: usize,
    pub proper: bool,
    pub loop_abelian: bool,
    pub loop_associative: bool,
    /// The loop is an elementary abelian `p`-group, `p` the characteristic.
    pub loop_elementary_abelian: bool,
    /// `false` when the configuration contradicts a known consequence.
    pub consistent: bool,
    pub conclusions: Vec<String>,
}

impl Classification {
    pub fn to_json(&self) -> Json {
        json!({
            "d": self.d,
            "flat_dim": self.flat_dim,
            "characteristic": self.characteristic,
            "n": self.n,
            "proper": self.proper,
            "loop_abelian": self.loop_abelian,
            "loop_associative": self.loop_associative,
            "loop_elementary_abelian": self.loop_elementary_abelian,
            "consistent": self.consistent,
            "conclusions": self.conclusions,
        })
    }
}

fn elementary_abelian(table: &[Vec<usize>], identity: usize, p: u64) -> bool {
    if p == 0 {
        return false;
    }
    (0..table.len()).all(|x| {
        let mut acc = identity;
        for _ in 0..p {
            acc = table[acc][x];
        }
        acc == identity
    })
}

/// Classifies a verified embedding of a TD(3, n) (only the first three
/// parts are used for the loop).
pub fn classify(e: &EmbeddedTD) -> Result<Classification, EmbeddingError> {
    let report = verify_embedding(e).map_err(EmbeddingError::Invalid)?;
    let lp = loop_operation(&e.td, None, None)?;
    let p = e.field.characteristic();
    let n = e.td.n;
    let d = e.d as isize;
    let elem_ab = lp.associative && lp.abelian && elementary_abelian(&lp.table, lp.identity, p);
    let mut conclusions = Vec::new();
    let mut consistent = true;
    let flat = intersect_hyperplanes(&e.part_hyperplanes[..3])?.dim();
    if flat == d - 2 {
        conclusions.push(format!("first three hyperplanes are concurrent in a {}-flat", d - 2));
        match (p, prime_power(n as u64)) {
            (0, _) => {
                consistent = false;
                conclusions.push("concurrent hyperplanes in characteristic 0".into());
            }
            (p, Some((q, k))) if q == p => conclusions.push(format!("n = {n} = {p}^{k}")),
            (p, _) => {
                consistent = false;
                conclusions.push(format!("n = {n} is not a power of {p}"));
            }
        }
        if !elem_ab {
            consistent = false;
            conclusions.push("loop of a concurrent embedding is not elementary abelian".into());
        }
    } else if flat == d - 3 {
        conclusions.push(format!("first three hyperplanes meet in a {}-flat", d - 3));
        if !lp.abelian {
            conclusions.push("loop is nonabelian".into());
        }
        if !elem_ab {
            conclusions.push(format!("loop is not an elementary abelian group of exponent p, so the TD has no embedding on concurrent hyperplanes of P^{d}"));
        } else if report.proper {
            conclusions.push("embedding is proper, so the TD has no embedding on concurrent hyperplanes of the same space".into());
        } else {
            conclusions.push("embedding is improper, as required if the TD also embeds on concurrent hyperplanes".into());
        }
    }
    Ok(Classification {
        d: e.d,
        flat_dim: flat,
        characteristic: p,
        n,
        proper: report.proper,
        loop_abelian: lp.abelian,
        loop_associative: lp.associative,
        loop_elementary_abelian: elem_ab,
        consistent,
        conclusions,
    })
}

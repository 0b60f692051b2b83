use std::collections::HashMap;

use rayon::prelude::*;

use super::{EmbeddedTD, EmbeddingError, Frame};
use crate::design::TransversalDesign;
use crate::exactalg::{Field, Scalar};
use crate::groupcat::{GeneratedGroup, GroupElement, GroupKind};
use crate::projgeom::{line_through, third_intersection, HomPoint, Hyperplane};

fn point(coords: Vec<Scalar>) -> HomPoint {
    HomPoint::new(coords).expect("construction points are nonzero")
}

/// Builds the design from three point sets on the first three hyperplanes:
/// block `(i, j)` is `{P1[i], P2[j], P1[i]P2[j] ∩ H3}`, row-major.
pub(crate) fn assemble(
    field: &Field,
    d: usize,
    parts: [Vec<HomPoint>; 3],
    hyperplanes: Vec<Hyperplane>,
) -> Result<EmbeddedTD, EmbeddingError> {
    let n = parts[0].len();
    let third: HashMap<&HomPoint, usize> = parts[2].iter().enumerate().map(|(i, p)| (p, i)).collect();
    let h3 = &hyperplanes[2];
    let blocks: Vec<Vec<usize>> = (0..n * n)
        .into_par_iter()
        .map(|cell| {
            let (i, j) = (cell / n, cell % n);
            let line = line_through(&parts[0][i], &parts[1][j])?;
            let meet = third_intersection(&line, h3)?;
            let c = third
                .get(&meet)
                .ok_or_else(|| EmbeddingError::PatternMismatch(format!("{meet} is not a design point of part 2")))?;
            Ok(vec![i, n + j, 2 * n + c])
        })
        .collect::<Result<_, EmbeddingError>>()?;
    let [a, b, c] = parts;
    let points: Vec<HomPoint> = a.into_iter().chain(b).chain(c).collect();
    Ok(EmbeddedTD {
        td: TransversalDesign {
            k: 3,
            n,
            parts: (0..3).map(|p| (p * n..(p + 1) * n).collect()).collect(),
            blocks,
            t: None,
        },
        points,
        part_hyperplanes: hyperplanes,
        field: field.clone(),
        d,
        infinity: None,
    })
}

/// A finite additive subgroup `G ≤ D^{d-1}` on three concurrent hyperplanes:
/// `{[γ,0,1]}`, `{[γ,1,1]}`, `{[-γ,1,0]}`, with `d = dim + 1`.
pub fn construct_additive(g: &GeneratedGroup) -> Result<EmbeddedTD, EmbeddingError> {
    if g.kind() != GroupKind::Additive {
        return Err(EmbeddingError::WrongGroupKind { expected: "additive" });
    }
    let field = g.field().clone();
    if field.characteristic() == 0 {
        return Err(EmbeddingError::CharZeroConcurrentImpossible);
    }
    if g.order() < 3 {
        return Err(EmbeddingError::GroupTooSmall(g.order()));
    }
    let d = g.vector_len() + 1;
    let (zero, one) = (field.zero(), field.one());
    let mut parts: [Vec<HomPoint>; 3] = Default::default();
    for e in g.elements() {
        let GroupElement::Additive(gamma) = e else { unreachable!("kind checked") };
        let with = |v: Vec<Scalar>, a: &Scalar, b: &Scalar| {
            let mut c = v;
            c.push(a.clone());
            c.push(b.clone());
            point(c)
        };
        parts[0].push(with(gamma.clone(), &zero, &one));
        parts[1].push(with(gamma.clone(), &one, &one));
        parts[2].push(with(gamma.iter().map(|x| -x).collect(), &one, &zero));
    }
    let hs = Frame::Concurrent.hyperplanes(&field, d).to_vec();
    assemble(&field, d, parts, hs)
}

fn triangle(field: &Field, d: usize, elements: &[(Scalar, Vec<Scalar>)]) -> Result<EmbeddedTD, EmbeddingError> {
    let (zero, one) = (field.zero(), field.one());
    let mut parts: [Vec<HomPoint>; 3] = Default::default();
    for (gamma, x) in elements {
        let with = |head: [&Scalar; 3]| point(head.into_iter().cloned().chain(x.iter().cloned()).collect());
        parts[0].push(with([&zero, gamma, &one]));
        parts[1].push(with([gamma, &zero, &one]));
        parts[2].push(with([&-&one, gamma, &zero]));
    }
    let hs = Frame::Triangle.hyperplanes(field, d).to_vec();
    assemble(field, d, parts, hs)
}

/// A finite multiplicative group on the triangle `x_1 = 0, x_2 = 0, x_3 = 0`
/// of `P^d`: `{[0,γ,1]}`, `{[γ,0,1]}`, `{[-1,γ,0]}`, padded with zero
/// coordinates when `d > 2`.
pub fn construct_multiplicative(g: &GeneratedGroup, d: usize) -> Result<EmbeddedTD, EmbeddingError> {
    if g.kind() != GroupKind::Multiplicative {
        return Err(EmbeddingError::WrongGroupKind { expected: "multiplicative" });
    }
    if d < 2 {
        return Err(EmbeddingError::DimensionTooSmall(d));
    }
    if g.order() < 3 {
        return Err(EmbeddingError::GroupTooSmall(g.order()));
    }
    let field = g.field().clone();
    let zeros = vec![field.zero(); d - 2];
    let elements: Vec<_> = g.multipliers().into_iter().map(|m| (m, zeros.clone())).collect();
    triangle(&field, d, &elements)
}

/// A finite subgroup of `D^* ⋉ D^{d-2}` on the triangle frame:
/// `{[0,γ,1,x]}`, `{[γ,0,1,x]}`, `{[-1,γ,0,x]}`.
pub fn construct_semidirect(g: &GeneratedGroup, d: usize) -> Result<EmbeddedTD, EmbeddingError> {
    if g.kind() != GroupKind::Semidirect {
        return Err(EmbeddingError::WrongGroupKind { expected: "semidirect" });
    }
    if d < 3 {
        return Err(EmbeddingError::DimensionTooSmall(d));
    }
    if g.vector_len() != d - 2 {
        return Err(EmbeddingError::DimensionMismatch { expected: d - 2, got: g.vector_len() });
    }
    if g.order() < 3 {
        return Err(EmbeddingError::GroupTooSmall(g.order()));
    }
    let elements: Vec<_> = g
        .elements()
        .iter()
        .map(|e| match e {
            GroupElement::Semidirect { gamma, x } => (gamma.clone(), x.clone()),
            _ => unreachable!("kind checked"),
        })
        .collect();
    triangle(g.field(), d, &elements)
}

use std::collections::HashMap;

use rayon::prelude::*;

use super::extract::{extract_group, invert, vec_mat, ExtractedGroup};
use super::transversal::{compute_dg, concurrent_point, lookup};
use super::{EmbeddedTD, EmbeddingError, EmbeddingViolation, Frame};
use crate::design::{validate_td, TdViolation, TransversalDesign};
use crate::exactalg::Scalar;
use crate::groupcat::GroupElement;
use crate::projgeom::{span_flat, third_intersection, HomPoint, Hyperplane};

fn concurrent_group(e: &EmbeddedTD) -> Result<ExtractedGroup, EmbeddingError> {
    match e.frame() {
        Some(Frame::Concurrent) => extract_group(e, None, None),
        Some(Frame::Triangle) => Err(EmbeddingError::WrongClassification {
            expected: e.d as isize - 2,
            got: e.d as isize - 3,
        }),
        None => Err(EmbeddingError::NonStandardFrame),
    }
}

fn add_part_with(e: &EmbeddedTD, ex: &ExtractedGroup, a: &Scalar) -> Result<EmbeddedTD, EmbeddingError> {
    let (n, k, d) = (e.td.n, e.td.k, e.d);
    let field = &e.field;
    let inverse = invert(&ex.frame_change)?;
    let mut coeffs = vec![field.zero(); d + 1];
    coeffs[d - 1] = field.one();
    coeffs[d] = -a;
    let h = Hyperplane::new(vec_mat(&coeffs, &ex.frame_change))?;
    if let Some(i) = e.part_hyperplanes.iter().position(|x| x == &h) {
        return Err(EmbeddingError::Invalid(EmbeddingViolation::DuplicateHyperplanes(i, k)));
    }
    let new_points: Vec<HomPoint> = ex
        .group
        .elements()
        .iter()
        .map(|g| {
            let GroupElement::Additive(gamma) = g else { unreachable!("concurrent frame") };
            concurrent_point(gamma, a, &inverse)
        })
        .collect();
    let ids: HashMap<HomPoint, usize> = lookup(&new_points, k * n);
    let hits: Vec<Option<usize>> = e
        .td
        .blocks
        .par_iter()
        .map(|b| {
            let line = span_flat(&[e.points[b[0]].clone(), e.points[b[1]].clone()])?;
            Ok(ids.get(&third_intersection(&line, &h)?).copied())
        })
        .collect::<Result<_, EmbeddingError>>()?;
    if hits.iter().any(Option::is_none) {
        // some new point lies on fewer than n block lines; find a point of
        // part 0 that no block line joins to it
        let mut joined: HashMap<usize, Vec<bool>> = HashMap::new();
        let part_of = e.td.part_index().expect("verified");
        let mut pos = vec![0; e.points.len()];
        for part in &e.td.parts {
            for (i, &x) in part.iter().enumerate() {
                pos[x] = i;
            }
        }
        for (b, hit) in e.td.blocks.iter().zip(&hits) {
            if let Some(z) = hit {
                let x = *b.iter().find(|&&x| part_of[x] == 0).expect("block meets part 0");
                joined.entry(*z).or_insert_with(|| vec![false; n])[pos[x]] = true;
            }
        }
        for z in k * n..(k + 1) * n {
            let row = joined.get(&z);
            if let Some(i) = (0..n).find(|&i| !row.is_some_and(|r| r[i])) {
                return Err(EmbeddingError::PairCoverage(TdViolation::PairUncovered(e.td.parts[0][i], z)));
            }
        }
        unreachable!("a missed block leaves some pair uncovered");
    }
    let blocks: Vec<Vec<usize>> = e
        .td
        .blocks
        .iter()
        .zip(&hits)
        .map(|(b, z)| {
            let mut b = b.clone();
            b.push(z.expect("all hit"));
            b
        })
        .collect();
    let mut parts = e.td.parts.clone();
    parts.push((k * n..(k + 1) * n).collect());
    let td = TransversalDesign { k: k + 1, n, parts, blocks, t: None };
    validate_td(&td).map_err(EmbeddingError::PairCoverage)?;
    let mut points = e.points.clone();
    points.extend(new_points);
    let mut part_hyperplanes = e.part_hyperplanes.clone();
    part_hyperplanes.push(h);
    Ok(EmbeddedTD {
        td,
        points,
        part_hyperplanes,
        field: field.clone(),
        d,
        infinity: None,
    })
}

/// Adds the part `{[γ, a, 1] : γ ∈ G}` on `x_d = a x_{d+1}` (coordinates of
/// the base points). Each old block gains the point where its line meets the
/// new hyperplane. Fails with a pair-coverage witness unless `a ∈ D_G`.
/// Any transversal point and `T` are dropped.
pub fn add_part(e: &EmbeddedTD, a: &Scalar) -> Result<EmbeddedTD, EmbeddingError> {
    let ex = concurrent_group(e)?;
    add_part_with(e, &ex, a)
}

/// Extends to a TD(|D_G| + 1, n) with one new part per `a ∈ D_G ∖ {0, 1}`,
/// in ascending field-element order. Parts already present are kept.
pub fn extend_to_max_td(e: &EmbeddedTD) -> Result<EmbeddedTD, EmbeddingError> {
    let ex = concurrent_group(e)?;
    let dg = compute_dg(&ex.group)?;
    if dg.size() == 2 {
        return Err(EmbeddingError::NothingToExtend);
    }
    let mut out = e.clone();
    for a in dg.elements.iter().filter(|a| !a.is_zero() && !a.is_one()) {
        match add_part_with(&out, &ex, a) {
            Ok(next) => out = next,
            Err(EmbeddingError::Invalid(EmbeddingViolation::DuplicateHyperplanes(..))) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

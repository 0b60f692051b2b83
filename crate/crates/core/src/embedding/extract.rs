use std::collections::HashSet;

use super::{EmbeddedTD, EmbeddingError, Frame};
use crate::design::{loop_operation, LoopTable};
use crate::exactalg::Scalar;
use crate::groupcat::{certify, GeneratedGroup, GroupElement, GroupError};
use crate::projgeom::{rank_and_solve, HomPoint, Hyperplane, Side};

/// A group read off an embedding in canonical coordinates.
#[derive(Debug, Clone)]
pub struct ExtractedGroup {
    pub group: GeneratedGroup,
    /// Design point (in part 0) of each group element.
    pub point_of: Vec<usize>,
    /// The collineation `x ↦ M x` that moved the base points to the
    /// standard unit points.
    pub frame_change: Vec<Vec<Scalar>>,
    pub loop_table: LoopTable,
}

fn mat_vec(m: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(x[0].field().zero(), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

pub(crate) fn vec_mat(a: &[Scalar], m: &[Vec<Scalar>]) -> Vec<Scalar> {
    (0..m.len())
        .map(|j| a.iter().zip(m).fold(a[0].field().zero(), |acc, (ai, row)| &acc + &(ai * &row[j])))
        .collect()
}

pub(crate) fn invert(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, EmbeddingError> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(EmbeddingError::SingularMatrix);
    }
    let field = m[0][0].field().clone();
    let aug: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let red = rank_and_solve(&aug, Side::Right)?;
    if red.pivots != (0..n).collect::<Vec<_>>() {
        return Err(EmbeddingError::SingularMatrix);
    }
    Ok(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Applies the collineation `x ↦ M x`; hyperplanes transform by `α ↦ α M⁻¹`.
pub fn apply_collineation(e: &EmbeddedTD, m: &[Vec<Scalar>]) -> Result<EmbeddedTD, EmbeddingError> {
    if m.len() != e.d + 1 {
        return Err(EmbeddingError::SingularMatrix);
    }
    let inv = invert(m)?;
    let map_point = |p: &HomPoint| HomPoint::new(mat_vec(m, p.coords()));
    Ok(EmbeddedTD {
        td: e.td.clone(),
        points: e.points.iter().map(map_point).collect::<Result<_, _>>()?,
        part_hyperplanes: e
            .part_hyperplanes
            .iter()
            .map(|h| Hyperplane::new(vec_mat(h.coeffs(), &inv)))
            .collect::<Result<_, _>>()?,
        field: e.field.clone(),
        d: e.d,
        infinity: e.infinity.as_ref().map(map_point).transpose()?,
    })
}

/// Representative of `p` with coordinate `i` equal to `value`.
fn rescale(p: &HomPoint, i: usize, value: &Scalar) -> Option<Vec<Scalar>> {
    let c = &p.coords()[i];
    if c.is_zero() {
        return None;
    }
    Some(p.scaled_coords(&(&c.inv().ok()? * value)))
}

fn identity(len: usize, e: &EmbeddedTD) -> Vec<Vec<Scalar>> {
    (0..len)
        .map(|i| (0..len).map(|j| if i == j { e.field.one() } else { e.field.zero() }).collect())
        .collect()
}

fn mismatch(what: &str, p: &HomPoint) -> EmbeddingError {
    EmbeddingError::PatternMismatch(format!("{what}: {p}"))
}

/// Collineation fixing the concurrent frame with `1_1 = [α,0,1] ↦ [0,0,1]`
/// and `1_2 = [β,1,1] ↦ [0,1,1]`: `x ↦ x - (β-α) y - α z`.
fn concurrent_change(e: &EmbeddedTD, one1: &HomPoint, one2: &HomPoint) -> Result<Vec<Vec<Scalar>>, EmbeddingError> {
    let d = e.d;
    let one = e.field.one();
    let a = rescale(one1, d, &one).ok_or_else(|| mismatch("base point off pattern", one1))?;
    let b = rescale(one2, d, &one).ok_or_else(|| mismatch("base point off pattern", one2))?;
    let mut m = identity(d + 1, e);
    for i in 0..d - 1 {
        m[i][d - 1] = -&(&b[i] - &a[i]);
        m[i][d] = -&a[i];
    }
    Ok(m)
}

/// Collineation fixing the triangle frame with `1_1 = [0,α,1,x] ↦ [0,1,1,0]`
/// and `1_2 = [β,0,1,y] ↦ [1,0,1,0]`.
fn triangle_change(e: &EmbeddedTD, one1: &HomPoint, one2: &HomPoint) -> Result<Vec<Vec<Scalar>>, EmbeddingError> {
    let one = e.field.one();
    let a = rescale(one1, 2, &one).ok_or_else(|| mismatch("base point off pattern", one1))?;
    let b = rescale(one2, 2, &one).ok_or_else(|| mismatch("base point off pattern", one2))?;
    let alpha_inv = a[1].inv().map_err(|_| mismatch("base point off pattern", one1))?;
    let beta_inv = b[0].inv().map_err(|_| mismatch("base point off pattern", one2))?;
    let mut m = identity(e.d + 1, e);
    m[0][0] = beta_inv.clone();
    m[1][1] = alpha_inv.clone();
    for r in 3..=e.d {
        m[r][0] = -&(&b[r] * &beta_inv);
        m[r][1] = -&(&a[r] * &alpha_inv);
    }
    Ok(m)
}

/// Reads the group of a TD(k ≥ 3, n) embedded with its first three part
/// hyperplanes in a canonical frame, after moving the base points
/// `one1 ∈ P_1`, `one2 ∈ P_2` (default: least point of each part) to the
/// standard unit points. The design's loop at the same base points must
/// coincide with the group operation.
pub fn extract_group(e: &EmbeddedTD, one1: Option<usize>, one2: Option<usize>) -> Result<ExtractedGroup, EmbeddingError> {
    super::verify_embedding(e).map_err(EmbeddingError::Invalid)?;
    let frame = e.frame().ok_or(EmbeddingError::NonStandardFrame)?;
    let loop_table = loop_operation(&e.td, one1, one2)?;
    let one1 = loop_table.elements[loop_table.identity];
    let one2 = loop_table.one2;
    let m = match frame {
        Frame::Concurrent => concurrent_change(e, &e.points[one1], &e.points[one2])?,
        Frame::Triangle => triangle_change(e, &e.points[one1], &e.points[one2])?,
    };
    let moved = apply_collineation(e, &m)?;
    let d = e.d;
    let field = &e.field;
    let (zero, one) = (field.zero(), field.one());
    let read = |part: usize, p: &HomPoint| -> Result<GroupElement, EmbeddingError> {
        let off = || mismatch(&format!("point of part {part} off the canonical pattern"), p);
        match frame {
            Frame::Concurrent => {
                let c = match part {
                    0 | 1 => rescale(p, d, &one),
                    _ => rescale(p, d - 1, &one),
                }
                .ok_or_else(off)?;
                let expect = match part {
                    0 => [&zero, &one],
                    1 => [&one, &one],
                    _ => [&one, &zero],
                };
                if &c[d - 1] != expect[0] || &c[d] != expect[1] {
                    return Err(off());
                }
                let v = c[..d - 1].to_vec();
                Ok(GroupElement::Additive(if part == 2 { v.iter().map(|x| -x).collect() } else { v }))
            }
            Frame::Triangle => {
                let c = match part {
                    0 | 1 => rescale(p, 2, &one),
                    _ => rescale(p, 0, &-&one),
                }
                .ok_or_else(off)?;
                let gamma = match part {
                    0 if c[0].is_zero() => c[1].clone(),
                    1 if c[1].is_zero() => c[0].clone(),
                    2 if c[2].is_zero() => c[1].clone(),
                    _ => return Err(off()),
                };
                Ok(if d == 2 {
                    GroupElement::Multiplicative(gamma)
                } else {
                    GroupElement::Semidirect { gamma, x: c[3..].to_vec() }
                })
            }
        }
    };
    let mut sets: Vec<Vec<GroupElement>> = Vec::with_capacity(3);
    for part in 0..3 {
        sets.push(
            e.td.parts[part]
                .iter()
                .map(|&x| read(part, &moved.points[x]))
                .collect::<Result<_, _>>()?,
        );
    }
    let first: HashSet<&GroupElement> = sets[0].iter().collect();
    for part in 1..3 {
        if sets[part].iter().collect::<HashSet<_>>() != first {
            return Err(EmbeddingError::PatternMismatch(format!("part {part} carries a different set than part 0")));
        }
    }
    let description = format!("extracted from P^{d}({})", field.name());
    let group = certify(sets[0].clone(), description).map_err(GroupError::Certification)?;
    // element index of each loop element (loop elements follow part 0 order)
    let index: Vec<usize> = sets[0].iter().map(|g| group.index_of(g).expect("certified")).collect();
    let mut point_of = vec![0; group.order()];
    for (i, &x) in e.td.parts[0].iter().enumerate() {
        point_of[index[i]] = x;
    }
    let n = index.len();
    for i in 0..n {
        for j in 0..n {
            if index[loop_table.table[i][j]] != group.table()[index[i]][index[j]] {
                return Err(EmbeddingError::LoopMismatch);
            }
        }
    }
    Ok(ExtractedGroup { group, point_of, frame_change: m, loop_table })
}

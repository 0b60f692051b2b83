use std::collections::HashSet;

use super::{GeneratedGroup, GroupElement, GroupError, GroupKind};
use crate::exactalg::{AlgebraError, Field, Scalar};
use crate::projgeom::{rank_and_solve, Side};

/// Cap on the number of candidate transformations tried.
pub const SEARCH_BOUND: u128 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Additive,
    Multiplicative,
    Semidirect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceWitness {
    /// `G1 = { T γ a : γ ∈ G2 }`.
    Additive { t: Vec<Vec<Scalar>>, a: Scalar },
    /// `G1 = a G2 a⁻¹`.
    Multiplicative { a: Scalar },
    /// `G1 = (a, v) · φ_T(G2) · (a, v)⁻¹` with `φ_T(γ, x) = (γ, T x)`.
    Semidirect { a: Scalar, v: Vec<Scalar>, t: Vec<Vec<Scalar>> },
}

fn mat_vec(t: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    t.iter()
        .map(|row| row.iter().zip(x).fold(x[0].field().zero(), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

fn matrix_space(q: u64, m: usize) -> u128 {
    (q as u128).pow((m * m) as u32)
}

/// All of `GL_m(F_q)`, in order of the base-`q` index of the entries.
fn general_linear(field: &Field, m: usize) -> Result<Vec<Vec<Vec<Scalar>>>, GroupError> {
    let q = field.order().expect("finite field");
    let total = matrix_space(q, m) as u64;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut entries = Vec::with_capacity(m * m);
        for _ in 0..m * m {
            entries.push(field.element(rest % q).expect("in range"));
            rest /= q;
        }
        let rows: Vec<Vec<Scalar>> = entries.chunks(m).map(<[Scalar]>::to_vec).collect();
        if m == 0 || rank_and_solve(&rows, Side::Right).map_err(|e| match e {
            crate::projgeom::GeomError::Algebra(a) => GroupError::Algebra(a),
            other => GroupError::BadParameter(other.to_string()),
        })?.rank == m
        {
            out.push(rows);
        }
    }
    Ok(out)
}

/// Vectors of `F_q^m` in base-`q` index order.
fn vectors(field: &Field, m: usize) -> Vec<Vec<Scalar>> {
    let q = field.order().expect("finite field");
    (0..q.pow(m as u32))
        .map(|mut idx| {
            (0..m)
                .map(|_| {
                    let s = field.element(idx % q).expect("in range");
                    idx /= q;
                    s
                })
                .collect()
        })
        .collect()
}

/// Exhaustive search for a transformation carrying `g2` onto `g1`, over a
/// finite field only. `Ok(None)` certifies that no witness exists.
///
/// Finite skew fields are commutative, so in additive mode the scalar `a`
/// can be absorbed into `T`; the search fixes `a = 1`.
pub fn group_equivalence(
    g1: &GeneratedGroup,
    g2: &GeneratedGroup,
    mode: EquivalenceMode,
) -> Result<Option<EquivalenceWitness>, GroupError> {
    let kind = match mode {
        EquivalenceMode::Additive => GroupKind::Additive,
        EquivalenceMode::Multiplicative => GroupKind::Multiplicative,
        EquivalenceMode::Semidirect => GroupKind::Semidirect,
    };
    for g in [g1, g2] {
        if g.kind() != kind {
            return Err(GroupError::WrongKind { expected: kind, got: g.kind() });
        }
    }
    let field = g1.field().clone();
    if g2.field() != &field {
        return Err(AlgebraError::DescriptorMismatch {
            left: field.name().into(),
            right: g2.field().name().into(),
        }
        .into());
    }
    let Some(q) = field.order() else {
        return Err(GroupError::BadParameter("equivalence search needs a finite field".into()));
    };
    let m = g1.vector_len();
    if g1.order() != g2.order() || g2.vector_len() != m {
        return Ok(None);
    }
    let target: HashSet<&GroupElement> = g1.elements().iter().collect();
    let space = match mode {
        EquivalenceMode::Additive => matrix_space(q, m),
        EquivalenceMode::Multiplicative => q as u128,
        EquivalenceMode::Semidirect => matrix_space(q, m) * (q as u128).pow(m as u32 + 1),
    };
    if space > SEARCH_BOUND {
        return Err(GroupError::SearchSpaceTooLarge(space));
    }
    let units: Vec<Scalar> = field.elements().expect("finite").into_iter().skip(1).collect();
    match mode {
        EquivalenceMode::Additive => {
            for t in general_linear(&field, m)? {
                let hit = g2.elements().iter().all(|e| match e {
                    GroupElement::Additive(x) => target.contains(&GroupElement::Additive(mat_vec(&t, x))),
                    _ => false,
                });
                if hit {
                    return Ok(Some(EquivalenceWitness::Additive { t, a: field.one() }));
                }
            }
        }
        EquivalenceMode::Multiplicative => {
            for a in units {
                let ai = a.inv()?;
                let hit = g2.multipliers().iter().all(|g| {
                    target.contains(&GroupElement::Multiplicative(&(&a * g) * &ai))
                });
                if hit {
                    return Ok(Some(EquivalenceWitness::Multiplicative { a }));
                }
            }
        }
        EquivalenceMode::Semidirect => {
            let gl = general_linear(&field, m)?;
            for a in &units {
                for v in vectors(&field, m) {
                    let av = GroupElement::Semidirect { gamma: a.clone(), x: v.clone() };
                    let av_inv = av.inverse()?;
                    for t in &gl {
                        let mut hit = true;
                        for e in g2.elements() {
                            let GroupElement::Semidirect { gamma, x } = e else { unreachable!() };
                            let tx = if m == 0 { Vec::new() } else { mat_vec(t, x) };
                            let img = av.op(&GroupElement::Semidirect { gamma: gamma.clone(), x: tx })?.op(&av_inv)?;
                            if !target.contains(&img) {
                                hit = false;
                                break;
                            }
                        }
                        if hit {
                            return Ok(Some(EquivalenceWitness::Semidirect { a: a.clone(), v, t: t.clone() }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

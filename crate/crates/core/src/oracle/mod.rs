//! Brute-force ground truth over small `PG(d, q)`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::embedding::{construct, extract_group, is_transversal_point, EmbeddedTD, EmbeddingError, Frame};
use crate::exactalg::{encode_scalar, Field, Scalar};
use crate::groupcat::{GeneratedGroup, GroupElement};
use crate::projgeom::{incident, line_through, third_intersection, HomPoint, Hyperplane};

pub const SUPPORTED_Q: &[u64] = &[2, 3, 4, 5, 7, 8, 9];
pub const SUPPORTED_D: &[usize] = &[2, 3];
/// Cap on the number of `(P_1, P_2)` subset pairs a frame search visits.
pub const SEARCH_BOUND: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("PG({d}, {q}) is not supported (q in {SUPPORTED_Q:?}, d in {SUPPORTED_D:?})")]
    UnsupportedSize { q: u64, d: usize },
    #[error("search space of {0} candidates exceeds the limit")]
    SearchSpaceTooLarge(u128),
    #[error("embedding does not live in this space: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// All points and hyperplanes of `PG(d, q)` with incidence bitsets.
#[derive(Debug, Clone)]
pub struct PGSpace {
    pub field: Field,
    pub d: usize,
    pub points: Vec<HomPoint>,
    pub hyperplanes: Vec<Hyperplane>,
    /// `incidence[p]` has bit `h` set when point `p` lies on hyperplane `h`.
    incidence: Vec<Vec<u64>>,
    index: HashMap<HomPoint, usize>,
}

/// Vectors of length `len` whose entry at `lead` is 1, with zeros on one
/// side of it and arbitrary entries on the other.
fn canonical_vectors(field: &Field, len: usize, leading_first: bool) -> Vec<Vec<Scalar>> {
    let els = field.elements().expect("finite");
    let q = els.len();
    let mut out = Vec::new();
    for lead in 0..len {
        let free = if leading_first { len - 1 - lead } else { lead };
        for mut idx in 0..q.pow(free as u32) {
            let mut v = vec![field.zero(); len];
            v[lead] = field.one();
            let slots: Vec<usize> = if leading_first { (lead + 1..len).collect() } else { (0..lead).collect() };
            for s in slots {
                v[s] = els[idx % q].clone();
                idx /= q;
            }
            out.push(v);
        }
    }
    out
}

impl PGSpace {
    pub fn enumerate(q: u64, d: usize) -> Result<PGSpace, OracleError> {
        if !SUPPORTED_Q.contains(&q) || !SUPPORTED_D.contains(&d) {
            return Err(OracleError::UnsupportedSize { q, d });
        }
        let field = Field::finite(q, None).map_err(EmbeddingError::from)?;
        let points: Vec<HomPoint> = canonical_vectors(&field, d + 1, false)
            .into_iter()
            .map(|v| HomPoint::new(v).expect("nonzero"))
            .collect();
        let hyperplanes: Vec<Hyperplane> = canonical_vectors(&field, d + 1, true)
            .into_iter()
            .map(|v| Hyperplane::new(v).expect("nonzero"))
            .collect();
        let words = hyperplanes.len().div_ceil(64);
        let incidence = points
            .par_iter()
            .map(|p| {
                let mut row = vec![0u64; words];
                for (h, hp) in hyperplanes.iter().enumerate() {
                    if incident(p, hp).expect("same space") {
                        row[h / 64] |= 1 << (h % 64);
                    }
                }
                row
            })
            .collect();
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(PGSpace { field, d, points, hyperplanes, incidence, index })
    }

    pub fn q(&self) -> u64 {
        self.field.order().expect("finite")
    }

    pub fn incident(&self, point: usize, hyperplane: usize) -> bool {
        self.incidence[point][hyperplane / 64] >> (hyperplane % 64) & 1 == 1
    }

    pub fn point_index(&self, p: &HomPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn hyperplane_index(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|x| x == h)
    }

    pub fn points_on(&self, hyperplane: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.incident(p, hyperplane)).collect()
    }

    pub fn hyperplanes_through(&self, point: usize) -> usize {
        self.incidence[point].iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check(&self, e: &EmbeddedTD) -> Result<(), OracleError> {
        if e.field != self.field || e.d != self.d {
            return Err(OracleError::Mismatch(format!(
                "embedding in P^{}({}), space is PG({}, {})",
                e.d,
                e.field.name(),
                self.d,
                self.q()
            )));
        }
        Ok(())
    }
}

/// Every point of the space off the part hyperplanes that passes
/// [`is_transversal_point`], in point order.
pub fn brute_transversal_points(space: &PGSpace, e: &EmbeddedTD) -> Result<Vec<HomPoint>, OracleError> {
    space.check(e)?;
    let parts: Vec<usize> = e
        .part_hyperplanes
        .iter()
        .map(|h| space.hyperplane_index(h).expect("canonical hyperplane"))
        .collect();
    let hits: Vec<Option<HomPoint>> = (0..space.points.len())
        .into_par_iter()
        .map(|p| {
            if parts.iter().any(|&h| space.incident(p, h)) {
                return Ok(None);
            }
            let pt = &space.points[p];
            Ok(is_transversal_point(e, pt)?.then(|| pt.clone()))
        })
        .collect::<Result<_, EmbeddingError>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// One TD(3, n) found on a frame, with the group read off it.
#[derive(Debug, Clone)]
pub struct FoundConfiguration {
    /// Space indices of the points on each of the three hyperplanes.
    pub parts: [Vec<usize>; 3],
    pub group: GeneratedGroup,
    pub abelian: bool,
    pub elementary_abelian: bool,
    pub cyclic: bool,
    /// Index of the configuration's class after moving its base points
    /// to the unit points.
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub q: u64,
    pub d: usize,
    pub frame: Frame,
    pub n: usize,
    pub candidates: u128,
    pub configurations: Vec<FoundConfiguration>,
    pub classes: usize,
}

impl SearchReport {
    pub fn to_json(&self) -> Json {
        json!({
            "q": self.q,
            "d": self.d,
            "frame": self.frame.as_str(),
            "n": self.n,
            "candidates": self.candidates.to_string(),
            "count": self.configurations.len(),
            "classes": self.classes,
            "configurations": self.configurations.iter().map(|c| json!({
                "parts": c.parts,
                "class": c.class,
                "abelian": c.abelian,
                "elementary_abelian": c.elementary_abelian,
                "cyclic": c.cyclic,
                "group": c.group.elements().iter().map(GroupElement::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn is_elementary_abelian(g: &GeneratedGroup, p: u64) -> bool {
    g.is_abelian() && (1..g.order()).all(|i| g.element_order(i) as u64 == p)
}

/// Exhaustive search for TD(3, n) configurations with parts on the three
/// canonical hyperplanes of `frame`. Design points avoid the other two
/// hyperplanes. Configurations are returned in lexicographic order of
/// their part subsets and grouped into classes by the normal form obtained
/// from moving the least points of parts 1 and 2 to the unit points.
pub fn search_td_on_frame(space: &PGSpace, frame: Frame, n: usize) -> Result<SearchReport, OracleError> {
    if n < 3 {
        return Err(EmbeddingError::GroupTooSmall(n).into());
    }
    let field = &space.field;
    let d = space.d;
    let hs = frame.hyperplanes(field, d);
    let hidx: Vec<usize> = hs.iter().map(|h| space.hyperplane_index(h).expect("canonical")).collect();
    let cand: Vec<Vec<usize>> = (0..3)
        .map(|i| {
            space
                .points_on(hidx[i])
                .into_iter()
                .filter(|&p| (0..3).all(|j| j == i || !space.incident(p, hidx[j])))
                .collect()
        })
        .collect();
    let candidates = binomial(cand[0].len(), n) * binomial(cand[1].len(), n);
    if candidates > SEARCH_BOUND {
        return Err(OracleError::SearchSpaceTooLarge(candidates));
    }
    let pos3: HashMap<usize, usize> = cand[2].iter().enumerate().map(|(i, &p)| (p, i)).collect();
    // meet[i][j]: position in cand[2] of line(cand0[i], cand1[j]) ∩ H3
    let meet: Vec<Vec<Option<usize>>> = cand[0]
        .par_iter()
        .map(|&x| {
            cand[1]
                .iter()
                .map(|&y| {
                    let line = line_through(&space.points[x], &space.points[y]).expect("distinct");
                    let z = third_intersection(&line, &hs[2]).expect("line not in H3");
                    space.point_index(&z).and_then(|i| pos3.get(&i).copied())
                })
                .collect()
        })
        .collect();
    let s1 = subsets(cand[0].len(), n);
    let s2 = subsets(cand[1].len(), n);
    let (meet, cand, s2) = (&meet, &cand, &s2);
    let found: Vec<[Vec<usize>; 3]> = s1
        .par_iter()
        .flat_map_iter(|a| {
            s2.iter().filter_map(move |b| {
                let mut third = BTreeSet::new();
                for &i in a {
                    for &j in b {
                        third.insert(meet[i][j]?);
                        if third.len() > n {
                            return None;
                        }
                    }
                }
                (third.len() == n).then(|| {
                    [
                        a.iter().map(|&i| cand[0][i]).collect(),
                        b.iter().map(|&j| cand[1][j]).collect(),
                        third.into_iter().map(|k| cand[2][k]).collect(),
                    ]
                })
            })
        })
        .collect();
    let p = field.characteristic();
    let analysed: Vec<(FoundConfiguration, Vec<HomPoint>)> = found
        .into_par_iter()
        .map(|parts| {
            let pts = |i: usize| parts[i].iter().map(|&x| space.points[x].clone()).collect::<Vec<_>>();
            let e = construct::assemble(field, d, [pts(0), pts(1), pts(2)], hs.to_vec())?;
            let ex = extract_group(&e, None, None)?;
            let moved = crate::embedding::apply_collineation(&e, &ex.frame_change)?;
            let mut normal = moved.points;
            normal.sort();
            let group = ex.group;
            let config = FoundConfiguration {
                abelian: group.is_abelian(),
                elementary_abelian: is_elementary_abelian(&group, p),
                cyclic: group.cyclic_generator().is_some(),
                parts,
                group,
                class: 0,
            };
            Ok((config, normal))
        })
        .collect::<Result<_, EmbeddingError>>()?;
    let mut classes: Vec<Vec<HomPoint>> = Vec::new();
    let mut configurations = Vec::with_capacity(analysed.len());
    for (mut c, normal) in analysed {
        c.class = match classes.iter().position(|x| x == &normal) {
            Some(i) => i,
            None => {
                classes.push(normal);
                classes.len() - 1
            }
        };
        configurations.push(c);
    }
    Ok(SearchReport {
        q: space.q(),
        d,
        frame,
        n,
        candidates,
        configurations,
        classes: classes.len(),
    })
}

/// JSON for a point list.
pub fn points_json(points: &[HomPoint]) -> Json {
    Json::Array(
        points
            .iter()
            .map(|p| Json::Array(p.coords().iter().map(encode_scalar).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests;

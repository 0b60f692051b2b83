use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DesignError, LatinSquare};

/// A TD(k, n) on the points `0..kn`.
///
/// Designs built here put part `p` on `[pn, (p+1)n)`; deserialized designs
/// may use any partition, which [`validate_td`] checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalDesign {
    pub k: usize,
    pub n: usize,
    pub parts: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    Malformed(String),
    PairUncovered(usize, usize),
    PairCoveredTwice(usize, usize),
    PartAndBlock(usize, usize),
    BlockMissesPart { block: usize, part: usize },
    BadTransversalPartition(String),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::Malformed(s) => write!(f, "malformed: {s}"),
            TdViolation::PairUncovered(a, b) => write!(f, "pair ({a}, {b}) is in no part and no block"),
            TdViolation::PairCoveredTwice(a, b) => write!(f, "pair ({a}, {b}) is covered twice"),
            TdViolation::PartAndBlock(a, b) => write!(f, "pair ({a}, {b}) shares a part and a block"),
            TdViolation::BlockMissesPart { block, part } => write!(f, "block {block} misses part {part}"),
            TdViolation::BadTransversalPartition(s) => write!(f, "T is not a block partition: {s}"),
        }
    }
}

impl TransversalDesign {
    /// Standard parts and one block per cell `(i, j)`, row-major.
    pub(crate) fn from_cells(n: usize, k: usize, block: impl Fn(usize, usize) -> Vec<usize>) -> TransversalDesign {
        let parts = (0..k).map(|p| (p * n..(p + 1) * n).collect()).collect();
        let mut blocks = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                blocks.push(block(i, j));
            }
        }
        TransversalDesign { k, n, parts, blocks, t: None }
    }

    pub fn num_points(&self) -> usize {
        self.k * self.n
    }

    /// Part index of every point, or `None` when the parts do not
    /// partition `0..kn`.
    pub fn part_index(&self) -> Option<Vec<usize>> {
        let mut idx = vec![usize::MAX; self.num_points()];
        for (p, part) in self.parts.iter().enumerate() {
            for &x in part {
                if x >= idx.len() || idx[x] != usize::MAX {
                    return None;
                }
                idx[x] = p;
            }
        }
        idx.iter().all(|&p| p != usize::MAX).then_some(idx)
    }

    /// `pair[a * kn + b]` is the block through `a` and `b`, if any.
    pub(crate) fn block_of_pair(&self) -> Vec<Option<u32>> {
        let v = self.num_points();
        let mut table = vec![None; v * v];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                for &y in b {
                    if x != y {
                        table[x * v + y] = Some(bi as u32);
                    }
                }
            }
        }
        table
    }
}

fn sanity(td: &TransversalDesign) -> Result<Vec<usize>, TdViolation> {
    let bad = |s: String| Err(TdViolation::Malformed(s));
    if td.k < 2 || td.n == 0 {
        return bad(format!("k = {}, n = {}", td.k, td.n));
    }
    if td.parts.len() != td.k {
        return bad(format!("{} parts, expected {}", td.parts.len(), td.k));
    }
    if let Some(p) = td.parts.iter().position(|p| p.len() != td.n) {
        return bad(format!("part {p} has size {}", td.parts[p].len()));
    }
    let Some(part_of) = td.part_index() else {
        return bad("parts do not partition the point set".into());
    };
    if td.blocks.len() != td.n * td.n {
        return bad(format!("{} blocks, expected {}", td.blocks.len(), td.n * td.n));
    }
    for (bi, b) in td.blocks.iter().enumerate() {
        if b.len() != td.k {
            return bad(format!("block {bi} has size {}", b.len()));
        }
        if b.iter().any(|&x| x >= td.num_points()) {
            return bad(format!("block {bi} has a point out of range"));
        }
        let mut s = b.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return bad(format!("block {bi} repeats a point"));
        }
    }
    Ok(part_of)
}

/// Full check: structure, then every pair of distinct points in exactly one
/// part or exactly one block, then the optional partition `T`.
pub fn validate_td(td: &TransversalDesign) -> Result<(), TdViolation> {
    let part_of = sanity(td)?;
    let v = td.num_points();
    let mut count = vec![0u32; v * v];
    for b in &td.blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                let (x, y) = (x.min(y), x.max(y));
                count[x * v + y] += 1;
            }
        }
    }
    // over-coverage is reported before gaps: a misplaced point leaves both
    for a in 0..v {
        for b in a + 1..v {
            match (part_of[a] == part_of[b], count[a * v + b]) {
                (true, c) if c > 0 => return Err(TdViolation::PartAndBlock(a, b)),
                (false, c) if c > 1 => return Err(TdViolation::PairCoveredTwice(a, b)),
                _ => {}
            }
        }
    }
    for a in 0..v {
        for b in a + 1..v {
            if part_of[a] != part_of[b] && count[a * v + b] == 0 {
                return Err(TdViolation::PairUncovered(a, b));
            }
        }
    }
    for (bi, b) in td.blocks.iter().enumerate() {
        let mut hit = vec![false; td.k];
        for &x in b {
            hit[part_of[x]] = true;
        }
        if let Some(part) = hit.iter().position(|h| !h) {
            return Err(TdViolation::BlockMissesPart { block: bi, part });
        }
    }
    if let Some(t) = &td.t {
        let bad = |s: String| Err(TdViolation::BadTransversalPartition(s));
        if t.len() != td.n {
            return bad(format!("{} blocks, expected {}", t.len(), td.n));
        }
        let mut sorted_blocks: Vec<Vec<usize>> = td
            .blocks
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable();
                s
            })
            .collect();
        sorted_blocks.sort();
        let mut covered = vec![false; v];
        for (i, b) in t.iter().enumerate() {
            let mut s = b.clone();
            s.sort_unstable();
            if sorted_blocks.binary_search(&s).is_err() {
                return bad(format!("entry {i} is not a block"));
            }
            for &x in b {
                if std::mem::replace(&mut covered[x], true) {
                    return bad(format!("point {x} is covered twice"));
                }
            }
        }
    }
    Ok(())
}

fn position_maps(td: &TransversalDesign) -> Result<(Vec<usize>, Vec<usize>), DesignError> {
    validate_td(td).map_err(DesignError::InvalidTd)?;
    let part_of = td.part_index().expect("validated");
    let mut pos = vec![0; td.num_points()];
    for part in &td.parts {
        for (i, &x) in part.iter().enumerate() {
            pos[x] = i;
        }
    }
    Ok((part_of, pos))
}

/// Squares of a TD(k, n): part 0 indexes rows, part 1 columns, and each
/// further part gives one square. Points are numbered by their position
/// in their part.
pub fn td_to_mols(td: &TransversalDesign) -> Result<Vec<LatinSquare>, DesignError> {
    if td.k < 3 {
        return Err(DesignError::InvalidTd(TdViolation::Malformed(format!("k = {}", td.k))));
    }
    let (part_of, pos) = position_maps(td)?;
    let n = td.n;
    let mut cells = vec![vec![vec![0; n]; n]; td.k - 2];
    for b in &td.blocks {
        let mut at = vec![0; td.k];
        for &x in b {
            at[part_of[x]] = pos[x];
        }
        for m in 2..td.k {
            cells[m - 2][at[0]][at[1]] = at[m];
        }
    }
    cells.into_iter().map(LatinSquare::new).collect()
}

pub fn td_to_latin(td: &TransversalDesign) -> Result<LatinSquare, DesignError> {
    if td.k != 3 {
        return Err(DesignError::NotBlockSize3(td.k));
    }
    Ok(td_to_mols(td)?.remove(0))
}

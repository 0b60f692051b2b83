use super::{validate_table, DesignError, TransversalDesign};

/// The loop `(P_1, ⊙)` of a TD read off from base points `1_1 ∈ P_1`,
/// `1_2 ∈ P_2`. Rows and columns follow the order of `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopTable {
    pub elements: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    /// Index of `1_1` in `elements`.
    pub identity: usize,
    pub one2: usize,
    pub one3: usize,
    pub associative: bool,
    pub abelian: bool,
}

/// `X' = 1_2 X ∩ P_3`, `Y' = 1_3 Y ∩ P_2`, `X ⊙ Y = X'Y' ∩ P_1`, where
/// `1_3 = 1_1 1_2 ∩ P_3`. Base points default to the least point of each part.
pub fn loop_operation(
    td: &TransversalDesign,
    one1: Option<usize>,
    one2: Option<usize>,
) -> Result<LoopTable, DesignError> {
    if td.k < 3 {
        return Err(DesignError::InvalidTd(super::TdViolation::Malformed(format!("k = {}", td.k))));
    }
    super::validate_td(td).map_err(DesignError::InvalidTd)?;
    let part_of = td.part_index().expect("validated");
    let pick = |given: Option<usize>, part: usize| -> Result<usize, DesignError> {
        match given {
            Some(x) if x < part_of.len() && part_of[x] == part => Ok(x),
            Some(point) => Err(DesignError::PointNotInPart { point, part }),
            None => Ok(*td.parts[part].iter().min().expect("nonempty part")),
        }
    };
    let one1 = pick(one1, 0)?;
    let one2 = pick(one2, 1)?;
    let v = td.num_points();
    let pairs = td.block_of_pair();
    let meet = |x: usize, y: usize, part: usize| -> usize {
        let b = pairs[x * v + y].expect("validated design") as usize;
        *td.blocks[b].iter().find(|&&z| part_of[z] == part).expect("validated design")
    };
    let one3 = meet(one1, one2, 2);
    let elements = td.parts[0].clone();
    let mut index = vec![usize::MAX; v];
    for (i, &x) in elements.iter().enumerate() {
        index[x] = i;
    }
    let xp: Vec<usize> = elements.iter().map(|&x| meet(one2, x, 2)).collect();
    let yp: Vec<usize> = elements.iter().map(|&y| meet(one3, y, 1)).collect();
    let table: Vec<Vec<usize>> = xp
        .iter()
        .map(|&a| yp.iter().map(|&b| index[meet(a, b, 0)]).collect())
        .collect();
    let n = elements.len();
    let abelian = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
    let associative = is_associative(&table);
    Ok(LoopTable {
        identity: index[one1],
        elements,
        table,
        one2,
        one3,
        associative,
        abelian,
    })
}

pub(crate) fn is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// Latin with a two-sided identity.
pub fn is_loop_table(t: &[Vec<usize>]) -> bool {
    !t.is_empty() && validate_table(t).is_ok() && identity_of(t).is_some()
}

fn identity_of(t: &[Vec<usize>]) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
}

/// Length of the sequence `x, x·x, (x·x)·x, ...` until it reaches `e`.
fn power_order(t: &[Vec<usize>], e: usize, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != e && k <= t.len() {
        y = t[y][x];
        k += 1;
    }
    k
}

fn closure(t: &[Vec<usize>], seed: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; t.len()];
    let mut members = Vec::new();
    let mut queue: Vec<usize> = seed.to_vec();
    while let Some(z) = queue.pop() {
        if std::mem::replace(&mut inside[z], true) {
            continue;
        }
        members.push(z);
        for &m in &members {
            queue.push(t[z][m]);
            queue.push(t[m][z]);
        }
    }
    inside
}

/// Extends generator images to a map closed under the product, failing on
/// any inconsistency.
fn extend(a: &[Vec<usize>], b: &[Vec<usize>], fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = a.len();
    let mut phi = vec![usize::MAX; n];
    let mut assigned = Vec::new();
    let mut work = Vec::new();
    for &(x, y) in fixed {
        if phi[x] == usize::MAX {
            phi[x] = y;
            assigned.push(x);
            work.push(x);
        } else if phi[x] != y {
            return None;
        }
    }
    while let Some(x) = work.pop() {
        let snapshot = assigned.clone();
        for &y in &snapshot {
            for (p, q) in [(x, y), (y, x)] {
                let z = a[p][q];
                let w = b[phi[p]][phi[q]];
                if phi[z] == usize::MAX {
                    phi[z] = w;
                    assigned.push(z);
                    work.push(z);
                } else if phi[z] != w {
                    return None;
                }
            }
        }
    }
    let mut used = vec![false; n];
    for &y in &phi {
        if y == usize::MAX || std::mem::replace(&mut used[y], true) {
            return None;
        }
    }
    let hom = (0..n).all(|x| (0..n).all(|y| phi[a[x][y]] == b[phi[x]][phi[y]]));
    hom.then_some(phi)
}

/// An isomorphism `φ` with `φ(a[x][y]) = b[φ(x)][φ(y)]` between two loop
/// tables, if one exists.
pub fn cayley_isomorphism(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    if a.len() != b.len() || !is_loop_table(a) || !is_loop_table(b) {
        return None;
    }
    let ea = identity_of(a)?;
    let eb = identity_of(b)?;
    let ord_a: Vec<usize> = (0..a.len()).map(|x| power_order(a, ea, x)).collect();
    let ord_b: Vec<usize> = (0..b.len()).map(|x| power_order(b, eb, x)).collect();
    let mut sa = ord_a.clone();
    let mut sb = ord_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut gens = Vec::new();
    let mut inside = closure(a, &[ea]);
    while let Some(g) = (0..a.len()).filter(|&x| !inside[x]).max_by_key(|&x| (ord_a[x], usize::MAX - x)) {
        gens.push(g);
        let mut seed = gens.clone();
        seed.push(ea);
        inside = closure(a, &seed);
    }
    fn go(
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        gens: &[usize],
        ord_a: &[usize],
        ord_b: &[usize],
        fixed: &mut Vec<(usize, usize)>,
    ) -> Option<Vec<usize>> {
        let Some(&g) = gens.get(fixed.len() - 1) else {
            return extend(a, b, fixed);
        };
        for h in 0..b.len() {
            if ord_b[h] != ord_a[g] {
                continue;
            }
            fixed.push((g, h));
            if let Some(phi) = go(a, b, gens, ord_a, ord_b, fixed) {
                return Some(phi);
            }
            fixed.pop();
        }
        None
    }
    go(a, b, &gens, &ord_a, &ord_b, &mut vec![(ea, eb)])
}

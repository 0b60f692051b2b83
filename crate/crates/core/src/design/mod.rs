//! Latin squares, transversals, MOLS and transversal designs.

mod loops;
mod td;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use loops::{cayley_isomorphism, is_loop_table, loop_operation, LoopTable};
pub use td::{td_to_latin, td_to_mols, validate_td, TdViolation, TransversalDesign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("side {0} is too small (need n >= 3)")]
    SideTooSmall(usize),
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("symbol {symbol} at ({row}, {col}) is out of range")]
    SymbolOutOfRange { row: usize, col: usize, symbol: usize },
    #[error("symbol {symbol} repeats in row {row}")]
    RowRepeat { row: usize, symbol: usize },
    #[error("symbol {symbol} repeats in column {col}")]
    ColumnRepeat { col: usize, symbol: usize },
    #[error("squares have sides {left} and {right}")]
    SideMismatch { left: usize, right: usize },
    #[error("not a transversal: {0}")]
    NotATransversal(String),
    #[error("squares {a} and {b} are not orthogonal: cells {first:?} and {second:?} share a pair")]
    NotOrthogonal {
        a: usize,
        b: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("empty MOLS set")]
    NoSquares,
    #[error("design has block size {0}, expected 3")]
    NotBlockSize3(usize),
    #[error("invalid transversal design: {0}")]
    InvalidTd(TdViolation),
    #[error("point {point} is not in part {part}")]
    PointNotInPart { point: usize, part: usize },
}

/// Checks the Latin property of a raw table: square shape, symbols in
/// `0..n`, and no repeats in any row or column. Rows are scanned before
/// columns.
pub fn validate_latin_square(cells: &[Vec<usize>]) -> Result<(), DesignError> {
    let n = cells.len();
    if n < 3 {
        return Err(DesignError::SideTooSmall(n));
    }
    validate_table(cells)
}

/// The Latin property without the side restriction (loop tables may be tiny).
pub(crate) fn validate_table(cells: &[Vec<usize>]) -> Result<(), DesignError> {
    let n = cells.len();
    for (row, r) in cells.iter().enumerate() {
        if r.len() != n {
            return Err(DesignError::Ragged { row, got: r.len(), expected: n });
        }
        for (col, &symbol) in r.iter().enumerate() {
            if symbol >= n {
                return Err(DesignError::SymbolOutOfRange { row, col, symbol });
            }
        }
    }
    for (row, r) in cells.iter().enumerate() {
        let mut seen = vec![false; n];
        for &symbol in r {
            if std::mem::replace(&mut seen[symbol], true) {
                return Err(DesignError::RowRepeat { row, symbol });
            }
        }
    }
    for col in 0..n {
        let mut seen = vec![false; n];
        for r in cells {
            let symbol = r[col];
            if std::mem::replace(&mut seen[symbol], true) {
                return Err(DesignError::ColumnRepeat { col, symbol });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSquare")]
pub struct LatinSquare {
    n: usize,
    cells: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawSquare {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl TryFrom<RawSquare> for LatinSquare {
    type Error = DesignError;

    fn try_from(raw: RawSquare) -> Result<Self, DesignError> {
        if raw.cells.len() != raw.n {
            return Err(DesignError::Ragged { row: raw.cells.len(), got: raw.cells.len(), expected: raw.n });
        }
        LatinSquare::new(raw.cells)
    }
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<LatinSquare, DesignError> {
        validate_latin_square(&cells)?;
        Ok(LatinSquare { n: cells.len(), cells })
    }

    /// The addition table of `Z_n`.
    pub fn cyclic(n: usize) -> Result<LatinSquare, DesignError> {
        LatinSquare::new((0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect())
    }

    /// `L(i, j) = a i + b j` over `Z_p`; Latin when `a, b` are units.
    pub fn linear(p: usize, a: usize, b: usize) -> Result<LatinSquare, DesignError> {
        LatinSquare::new((0..p).map(|i| (0..p).map(|j| (a * i + b * j) % p).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }
}

/// One cell per row, `(i, sigma[i])`, hitting every column and symbol once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transversal {
    pub sigma: Vec<usize>,
}

impl Transversal {
    pub fn new(ls: &LatinSquare, sigma: Vec<usize>) -> Result<Transversal, DesignError> {
        let n = ls.n();
        if sigma.len() != n {
            return Err(DesignError::NotATransversal(format!("{} rows chosen, need {n}", sigma.len())));
        }
        let mut cols = vec![false; n];
        let mut syms = vec![false; n];
        for (i, &c) in sigma.iter().enumerate() {
            if c >= n || std::mem::replace(&mut cols[c], true) {
                return Err(DesignError::NotATransversal(format!("column {c} reused or out of range")));
            }
            let s = ls.get(i, c);
            if std::mem::replace(&mut syms[s], true) {
                return Err(DesignError::NotATransversal(format!("symbol {s} repeats")));
            }
        }
        Ok(Transversal { sigma })
    }

    pub fn symbols(&self, ls: &LatinSquare) -> Vec<usize> {
        self.sigma.iter().enumerate().map(|(i, &c)| ls.get(i, c)).collect()
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
}

fn search(
    ls: &LatinSquare,
    row: usize,
    sigma: &mut Vec<usize>,
    cols: &mut Bits,
    syms: &mut Bits,
    limit: Option<usize>,
    out: &mut Vec<Transversal>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let n = ls.n();
    if row == n {
        out.push(Transversal { sigma: sigma.clone() });
        return;
    }
    for c in 0..n {
        let s = ls.get(row, c);
        if cols.get(c) || syms.get(s) {
            continue;
        }
        cols.flip(c);
        syms.flip(s);
        sigma.push(c);
        search(ls, row + 1, sigma, cols, syms, limit, out);
        sigma.pop();
        cols.flip(c);
        syms.flip(s);
    }
}

/// All transversals in lexicographic order of `sigma`, or the first `limit`.
/// Without a limit the first-row branches run in parallel.
pub fn find_transversals(ls: &LatinSquare, limit: Option<usize>) -> Vec<Transversal> {
    let n = ls.n();
    let branch = |c: usize, limit: Option<usize>| {
        let mut cols = Bits::new(n);
        let mut syms = Bits::new(n);
        cols.flip(c);
        syms.flip(ls.get(0, c));
        let mut out = Vec::new();
        search(ls, 1, &mut vec![c], &mut cols, &mut syms, limit, &mut out);
        out
    };
    match limit {
        Some(l) => {
            let mut out = Vec::new();
            for c in 0..n {
                if out.len() >= l {
                    break;
                }
                out.extend(branch(c, Some(l - out.len())));
            }
            out
        }
        None => (0..n).into_par_iter().map(|c| branch(c, None)).collect::<Vec<_>>().concat(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orthogonality {
    Orthogonal,
    /// Two cells carrying the same ordered pair of symbols.
    Collision { first: (usize, usize), second: (usize, usize) },
}

impl Orthogonality {
    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Orthogonality::Orthogonal)
    }
}

pub fn check_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<Orthogonality, DesignError> {
    let n = a.n();
    if b.n() != n {
        return Err(DesignError::SideMismatch { left: n, right: b.n() });
    }
    let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            let key = a.get(i, j) * n + b.get(i, j);
            if let Some(first) = seen[key] {
                return Ok(Orthogonality::Collision { first, second: (i, j) });
            }
            seen[key] = Some((i, j));
        }
    }
    Ok(Orthogonality::Orthogonal)
}

fn check_mols(squares: &[LatinSquare]) -> Result<(), DesignError> {
    let first = squares.first().ok_or(DesignError::NoSquares)?;
    for (a, sa) in squares.iter().enumerate() {
        if sa.n() != first.n() {
            return Err(DesignError::SideMismatch { left: first.n(), right: sa.n() });
        }
        for (b, sb) in squares.iter().enumerate().skip(a + 1) {
            if let Orthogonality::Collision { first, second } = check_orthogonal(sa, sb)? {
                return Err(DesignError::NotOrthogonal { a, b, first, second });
            }
        }
    }
    Ok(())
}

/// A nonempty list of pairwise orthogonal Latin squares of one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatinSquare>", into = "Vec<LatinSquare>")]
pub struct MOLSSet {
    squares: Vec<LatinSquare>,
}

impl TryFrom<Vec<LatinSquare>> for MOLSSet {
    type Error = DesignError;

    fn try_from(squares: Vec<LatinSquare>) -> Result<Self, DesignError> {
        MOLSSet::new(squares)
    }
}

impl From<MOLSSet> for Vec<LatinSquare> {
    fn from(m: MOLSSet) -> Self {
        m.squares
    }
}

impl MOLSSet {
    pub fn new(squares: Vec<LatinSquare>) -> Result<MOLSSet, DesignError> {
        check_mols(&squares)?;
        Ok(MOLSSet { squares })
    }

    /// The `p - 1` squares `L_a(i, j) = a i + j` over `Z_p`, `p` prime.
    pub fn prime_slopes(p: usize) -> Result<MOLSSet, DesignError> {
        MOLSSet::new((1..p).map(|a| LatinSquare::linear(p, a, 1)).collect::<Result<_, _>>()?)
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn n(&self) -> usize {
        self.squares[0].n()
    }
}

/// Blocks `{i, n + j, 2n + a_ij}`, listed row-major over cells. With a
/// transversal, `T` holds the blocks of its cells.
pub fn latin_to_td(ls: &LatinSquare, transversal: Option<&Transversal>) -> Result<TransversalDesign, DesignError> {
    let n = ls.n();
    let mut td = TransversalDesign::from_cells(n, 3, |i, j| vec![i, n + j, 2 * n + ls.get(i, j)]);
    if let Some(t) = transversal {
        let t = Transversal::new(ls, t.sigma.clone())?;
        td.t = Some(
            t.sigma
                .iter()
                .enumerate()
                .map(|(i, &c)| vec![i, n + c, 2 * n + ls.get(i, c)])
                .collect(),
        );
    }
    Ok(td)
}

/// The TD(m + 2, n) of `m` MOLS: rows, columns, then one part per square.
pub fn mols_to_td(squares: &[LatinSquare]) -> Result<TransversalDesign, DesignError> {
    check_mols(squares)?;
    let n = squares[0].n();
    let k = squares.len() + 2;
    Ok(TransversalDesign::from_cells(n, k, |i, j| {
        let mut b = vec![i, n + j];
        b.extend(squares.iter().enumerate().map(|(m, s)| (m + 2) * n + s.get(i, j)));
        b
    }))
}

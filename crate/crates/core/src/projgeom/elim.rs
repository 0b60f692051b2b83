//! Gaussian elimination over a skew field with an explicit scalar side.

use crate::exactalg::{AlgebraError, Scalar};

use super::GeomError;

/// Which side the unknowns' scalars act on.
///
/// * `Right`: solve `M x = 0` (`Σ_j m_ij x_j = 0`); solutions form a right
///   subspace and rows are combined with *left* multipliers.
/// * `Left`: solve `Σ_j x_j m_ij = 0`; rows are combined with *right*
///   multipliers, so the reduced rows span the same right subspace as the
///   input rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Reduced row echelon form (pivots equal 1, zero elsewhere in pivot
    /// columns); rows past `rank` are zero.
    pub rows: Vec<Vec<Scalar>>,
    /// Basis of the solution space on the stated side.
    pub nullspace: Vec<Vec<Scalar>>,
}

fn side_mul(side: Side, coef: &Scalar, entry: &Scalar) -> Result<Scalar, AlgebraError> {
    match side {
        Side::Right => coef.checked_mul(entry),
        Side::Left => entry.checked_mul(coef),
    }
}

pub fn rank_and_solve(rows: &[Vec<Scalar>], side: Side) -> Result<Reduction, GeomError> {
    let refs: Vec<&[Scalar]> = rows.iter().map(Vec::as_slice).collect();
    let (field, ncols) = super::common_field(&refs)?;
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].inv()?;
        m[r] = m[r]
            .iter()
            .map(|e| side_mul(side, &inv, e))
            .collect::<Result<_, _>>()?;
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..ncols {
                let t = side_mul(side, &f, &m[r][j])?;
                m[i][j] = m[i][j].checked_sub(&t)?;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut x = vec![field.zero(); ncols];
            x[f] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -&m[row][f];
            }
            x
        })
        .collect();
    Ok(Reduction {
        rank: pivots.len(),
        pivots,
        rows: m,
        nullspace,
    })
}

//! The cyclic algebra `K + b K + b^2 K`, `K = Q(zeta_21)`, with
//! `b c = sigma(c) b` for `sigma(zeta) = zeta^16` and `b^3 = zeta^7`.
//!
//! Elements are written `c0 + b c1 + b^2 c2` (coefficients to the right of
//! the powers of `b`). Moving a coefficient rightwards past `b^j` applies
//! `sigma^{-j}`, where `sigma^{-1}(zeta) = zeta^4`.

use super::numfield::{NfVec, NumberField};
use super::AlgebraError;

#[cfg(test)]
pub(crate) const TWIST: i64 = 16;
pub(crate) const TWIST_INV: i64 = 4;
pub(crate) const B_CUBE_EXP: i64 = 7;

fn sigma_inv_pow(nf: &NumberField, c: &NfVec, j: usize) -> NfVec {
    nf.galois(c, TWIST_INV.pow(j as u32))
}

/// Coefficient of `b^s` contributed by `b^i x * b^j y`: `b^{i+j} sigma^{-j}(x) y`,
/// folding `b^3 = zeta^7` (which sigma fixes).
pub(crate) fn cyclic_mul(nf: &NumberField, x: &[NfVec; 3], y: &[NfVec; 3]) -> [NfVec; 3] {
    let wrap = nf.zeta_pow(B_CUBE_EXP);
    let mut out = [nf.zero(), nf.zero(), nf.zero()];
    for (i, xi) in x.iter().enumerate() {
        if nf.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if nf.is_zero(yj) {
                continue;
            }
            let mut term = nf.mul(&sigma_inv_pow(nf, xi, j), yj);
            if i + j >= 3 {
                term = nf.mul(&wrap, &term);
            }
            let s = (i + j) % 3;
            out[s] = nf.add(&out[s], &term);
        }
    }
    out
}

/// Solves `x y = 1` as a 3x3 linear system over `K` for the right
/// coordinates of `y`, then checks `y x = 1` as well.
pub(crate) fn cyclic_inv(nf: &NumberField, x: &[NfVec; 3]) -> Result<[NfVec; 3], AlgebraError> {
    if x.iter().all(|c| nf.is_zero(c)) {
        return Err(AlgebraError::DivisionByZero);
    }
    let wrap = nf.zeta_pow(B_CUBE_EXP);
    // Row s, column j: coefficient of y_j in the b^s component of x*y.
    let mut m: Vec<Vec<NfVec>> = (0..3)
        .map(|s| {
            (0..3)
                .map(|j| {
                    let i = (s + 3 - j) % 3;
                    let mut c = sigma_inv_pow(nf, &x[i], j);
                    if i + j >= 3 {
                        c = nf.mul(&wrap, &c);
                    }
                    c
                })
                .collect()
        })
        .collect();
    let mut rhs = [nf.one(), nf.zero(), nf.zero()];
    for col in 0..3 {
        let piv = (col..3)
            .find(|&r| !nf.is_zero(&m[r][col]))
            .ok_or(AlgebraError::SingularSystem)?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = nf.inv(&m[col][col]).ok_or(AlgebraError::SingularSystem)?;
        for c in col..3 {
            m[col][c] = nf.mul(&inv, &m[col][c]);
        }
        rhs[col] = nf.mul(&inv, &rhs[col]);
        for r in 0..3 {
            if r == col || nf.is_zero(&m[r][col]) {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..3 {
                let t = nf.mul(&f, &m[col][c]);
                m[r][c] = nf.sub(&m[r][c], &t);
            }
            let t = nf.mul(&f, &rhs[col]);
            rhs[r] = nf.sub(&rhs[r], &t);
        }
    }
    let y = [rhs[0].clone(), rhs[1].clone(), rhs[2].clone()];
    let one = [nf.one(), nf.zero(), nf.zero()];
    if cyclic_mul(nf, x, &y) != one || cyclic_mul(nf, &y, x) != one {
        return Err(AlgebraError::SingularSystem);
    }
    Ok(y)
}

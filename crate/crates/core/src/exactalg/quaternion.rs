//! Quaternion products: Hamilton `(1, i, j, k)` over a real number field, and
//! the `z + w j` model over a cyclotomic field.

use super::numfield::{NfVec, NumberField};

pub(crate) fn hamilton_mul(nf: &NumberField, x: &[NfVec; 4], y: &[NfVec; 4]) -> [NfVec; 4] {
    let m = |a: &NfVec, b: &NfVec| nf.mul(a, b);
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    let sum = |terms: [(i8, NfVec); 4]| {
        let mut acc = nf.zero();
        for (sign, t) in terms {
            acc = if sign > 0 { nf.add(&acc, &t) } else { nf.sub(&acc, &t) };
        }
        acc
    };
    [
        sum([(1, m(a1, a2)), (-1, m(b1, b2)), (-1, m(c1, c2)), (-1, m(d1, d2))]),
        sum([(1, m(a1, b2)), (1, m(b1, a2)), (1, m(c1, d2)), (-1, m(d1, c2))]),
        sum([(1, m(a1, c2)), (-1, m(b1, d2)), (1, m(c1, a2)), (1, m(d1, b2))]),
        sum([(1, m(a1, d2)), (1, m(b1, c2)), (-1, m(c1, b2)), (1, m(d1, a2))]),
    ]
}

/// `conj(x) / N(x)`; the reduced norm is a sum of squares in a real field,
/// nonzero unless `x = 0`.
pub(crate) fn hamilton_inv(nf: &NumberField, x: &[NfVec; 4]) -> Option<[NfVec; 4]> {
    let mut norm = nf.zero();
    for c in x {
        norm = nf.add(&norm, &nf.mul(c, c));
    }
    let ninv = nf.inv(&norm)?;
    Some([
        nf.mul(&x[0], &ninv),
        nf.neg(&nf.mul(&x[1], &ninv)),
        nf.neg(&nf.mul(&x[2], &ninv)),
        nf.neg(&nf.mul(&x[3], &ninv)),
    ])
}

/// `(z1 + w1 j)(z2 + w2 j) = (z1 z2 - w1 conj(w2)) + (z1 w2 + w1 conj(z2)) j`.
pub(crate) fn pair_mul(nf: &NumberField, x: &[NfVec; 2], y: &[NfVec; 2]) -> [NfVec; 2] {
    let [z1, w1] = x;
    let [z2, w2] = y;
    [
        nf.sub(&nf.mul(z1, z2), &nf.mul(w1, &nf.conj(w2))),
        nf.add(&nf.mul(z1, w2), &nf.mul(w1, &nf.conj(z2))),
    ]
}

/// `(conj(z) - w j) / (z conj(z) + w conj(w))`. The norm is fixed by
/// conjugation, so it commutes with `j`.
pub(crate) fn pair_inv(nf: &NumberField, x: &[NfVec; 2]) -> Option<[NfVec; 2]> {
    let [z, w] = x;
    let norm = nf.add(&nf.mul(z, &nf.conj(z)), &nf.mul(w, &nf.conj(w)));
    let ninv = nf.inv(&norm)?;
    Some([nf.mul(&nf.conj(z), &ninv), nf.neg(&nf.mul(w, &ninv))])
}

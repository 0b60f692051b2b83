//! Number fields `Q[x]/(m(x))` with `m` monic, elements stored as reduced
//! coefficient vectors in the power basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in ascending powers of the generator, always of length `degree`.
pub type NfVec = Vec<BigRational>;

#[derive(Clone, Debug)]
pub struct NumberField {
    /// Monic modulus, ascending coefficients, length `degree + 1`.
    modulus: Vec<BigRational>,
    /// `Some(m)` when the generator is a primitive m-th root of unity.
    cyclotomic: Option<u64>,
    /// Reduced representations of `zeta^e` for `e < m` (cyclotomic only).
    zeta_powers: Vec<NfVec>,
}

impl NumberField {
    /// The rationals, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::from_modulus(vec![BigRational::zero(), BigRational::one()], None)
    }

    /// `Q(sqrt(n))`; `n` must not be a perfect square.
    pub fn quadratic(n: i64) -> Option<Self> {
        if !is_non_square(n) {
            return None;
        }
        Some(Self::from_modulus(
            vec![rat(-n), BigRational::zero(), BigRational::one()],
            None,
        ))
    }

    /// `Q(zeta_m)` with modulus the m-th cyclotomic polynomial.
    pub fn cyclotomic(m: u64) -> Self {
        assert!(m >= 1);
        let phi = cyclotomic_polynomial(m);
        let modulus = phi.into_iter().map(BigRational::from_integer).collect();
        let mut nf = Self::from_modulus(modulus, Some(m));
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = nf.one();
        let gen = nf.generator();
        for _ in 0..m {
            powers.push(cur.clone());
            cur = nf.mul(&cur, &gen);
        }
        nf.zeta_powers = powers;
        nf
    }

    fn from_modulus(modulus: Vec<BigRational>, cyclotomic: Option<u64>) -> Self {
        debug_assert!(modulus.last().is_some_and(|c| c.is_one()));
        NumberField {
            modulus,
            cyclotomic,
            zeta_powers: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.cyclotomic
    }

    pub fn zero(&self) -> NfVec {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn one(&self) -> NfVec {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> NfVec {
        let mut v = self.zero();
        v[0] = r;
        v
    }

    /// The class of `x`. For degree 1 this is the root of the modulus.
    pub fn generator(&self) -> NfVec {
        if self.degree() == 1 {
            self.from_rational(-self.modulus[0].clone())
        } else {
            let mut v = self.zero();
            v[1] = BigRational::one();
            v
        }
    }

    /// `zeta^e` for a cyclotomic field, exponent taken mod m.
    pub fn zeta_pow(&self, e: i64) -> NfVec {
        let m = self.cyclotomic.expect("zeta_pow on a non-cyclotomic field") as i64;
        self.zeta_powers[e.rem_euclid(m) as usize].clone()
    }

    /// Reduces an arbitrary-length ascending coefficient list.
    pub fn reduce(&self, mut poly: Vec<BigRational>) -> NfVec {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (j, m) in self.modulus[..deg].iter().enumerate() {
                poly[shift + j] -= &top * m;
            }
        }
        poly.resize(deg, BigRational::zero());
        poly
    }

    pub fn is_zero(&self, a: &[BigRational]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> NfVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigRational], b: &[BigRational]) -> NfVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &[BigRational]) -> NfVec {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &[BigRational], r: &BigRational) -> NfVec {
        a.iter().map(|x| x * r).collect()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> NfVec {
        let deg = self.degree();
        if deg == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &[BigRational]) -> Option<NfVec> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(vec![a[0].recip()]);
        }
        // Invariant: s_i * a == r_i (mod modulus).
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.to_vec());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; it must be a nonzero constant for an irreducible modulus.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        Some(self.reduce(inv))
    }

    /// The automorphism `zeta -> zeta^k` of a cyclotomic field.
    pub fn galois(&self, a: &[BigRational], k: i64) -> NfVec {
        let m = self.cyclotomic.expect("galois on a non-cyclotomic field") as i64;
        let mut out = self.zero();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.zeta_powers[((i as i64) * k).rem_euclid(m) as usize];
            for (o, z) in out.iter_mut().zip(img) {
                if !z.is_zero() {
                    *o += c * z;
                }
            }
        }
        out
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self, a: &[BigRational]) -> NfVec {
        self.galois(a, -1)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let lead = b.last().expect("division by the zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Integer coefficients (ascending) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let phi = cyclotomic_polynomial(d);
        num = int_exact_div(&num, &phi);
    }
    num
}

fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b is monic
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + b.len() - 1].clone();
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// True when `n` is not the square of an integer, so `x^2 - n` is irreducible.
pub fn is_non_square(n: i64) -> bool {
    if n < 0 {
        return true;
    }
    let r = (n as f64).sqrt().round() as i64;
    !(r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

//! Finite fields `F_q`, `q = p^s`, as `F_p[x]/(f)` with `f` monic irreducible.
//!
//! Elements are encoded as integers `sum c_i p^i` over their coefficient
//! digits. Fields with `q <= TABLE_LIMIT` precompute full operation tables.

use super::AlgebraError;

const TABLE_LIMIT: u64 = 256;
/// Largest order accepted at construction (irreducibility is checked by
/// trial division, which costs about `p^(s/2)` polynomial divisions).
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    degree: usize,
    /// Monic modulus, ascending, length `degree + 1`.
    modulus: Vec<u64>,
    order: u64,
    tables: Option<Tables>,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        Self::new(p, vec![0, 1])
    }

    /// `F_{p^s}` with the given monic modulus (ascending coefficients).
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidDescriptor(format!("{p} is not prime")));
        }
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || modulus[degree] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidDescriptor(
                "finite-field modulus must be monic with coefficients below p".into(),
            ));
        }
        let order = p
            .checked_pow(degree as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| AlgebraError::InvalidDescriptor("field order too large".into()))?;
        if !is_irreducible(p, &modulus) {
            return Err(AlgebraError::ReducibleModulus(format_poly(&modulus)));
        }
        let mut f = FiniteField {
            p,
            degree,
            modulus,
            order,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            f.tables = Some(f.build_tables());
        }
        Ok(f)
    }

    /// `F_q` with the smallest monic irreducible modulus in integer-encoding order.
    pub fn with_order(q: u64) -> Result<Self, AlgebraError> {
        let (p, s) = prime_power(q)
            .ok_or_else(|| AlgebraError::InvalidDescriptor(format!("{q} is not a prime power")))?;
        if s == 1 {
            return Self::prime(p);
        }
        let lower = p.pow(s as u32);
        for idx in 0..lower {
            let mut m = digits(idx, p, s);
            m.push(1);
            if is_irreducible(p, &m) {
                return Self::new(p, m);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn modulus_string(&self) -> String {
        format_poly(&self.modulus)
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        digits(a, self.p, self.degree)
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// The class of `x` (a primitive element is not guaranteed).
    pub fn generator(&self) -> u64 {
        if self.degree == 1 {
            0
        } else {
            self.p
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.add[(a * self.order + b) as usize] as u64,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.tables {
            Some(t) => t.neg[a as usize] as u64,
            None => self.neg_slow(a),
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.mul[(a * self.order + b) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => t.inv[a as usize] as u64,
            None => self.pow(a, self.order - 2),
        })
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg_slow(&self, a: u64) -> u64 {
        let d: Vec<u64> = self
            .digits(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.from_digits(&d)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u128;
        if self.degree == 1 {
            return ((a as u128 * b as u128) % p) as u64;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u128; 2 * self.degree - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for top in (self.degree..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            let shift = top - self.degree;
            for (j, &m) in self.modulus[..self.degree].iter().enumerate() {
                prod[shift + j] = (prod[shift + j] + (p - c) * m as u128) % p;
            }
            prod[top] = 0;
        }
        let out: Vec<u64> = prod[..self.degree].iter().map(|&c| c as u64).collect();
        self.from_digits(&out)
    }

    fn build_tables(&self) -> Tables {
        let q = self.order;
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(self.add_slow(a, b) as u32);
                mul.push(self.mul_slow(a, b) as u32);
            }
        }
        let neg = (0..q).map(|a| self.neg_slow(a) as u32).collect();
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u32;
                    break;
                }
            }
        }
        Tables { add, mul, neg, inv }
    }
}

fn digits(mut a: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(a % p);
        a /= p;
    }
    d
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, s)` with `q = p^s`, when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut s = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        s += 1;
    }
    (r == 1).then_some((p, s))
}

fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while rem.len() > db {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - db;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + (p - c) * y % p) % p;
            }
        }
        rem.pop();
    }
    rem
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub fn format_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && e > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match e {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{e}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parses `x^2+2x+1`-style polynomials with nonnegative coefficients, reduced mod `p`.
pub fn parse_poly(s: &str, p: u64) -> Option<Vec<u64>> {
    let mut coeffs: Vec<u64> = Vec::new();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    for term in compact.split('+') {
        if term.is_empty() {
            return None;
        }
        let (coef, exp) = match term.find('x') {
            None => (term.parse::<u64>().ok()?, 0usize),
            Some(pos) => {
                let coef = if pos == 0 {
                    1
                } else {
                    term[..pos].trim_end_matches('*').parse::<u64>().ok()?
                };
                let rest = &term[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')?.parse::<usize>().ok()?
                };
                (coef, exp)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + coef) % p;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Some(coeffs)
}

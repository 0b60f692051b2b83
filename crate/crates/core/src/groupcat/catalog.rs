use num_bigint::BigInt;
use num_rational::BigRational;

use super::{certify, multiplicative_group, GeneratedGroup, GroupElement, GroupError, DEFAULT_BOUND};
use crate::exactalg::{Field, Scalar};

/// Stable preset identifiers; `cyclic:n` and `Dstar:n` take a parameter.
pub const CATALOG_NAMES: &[&str] = &["cyclic:n", "Q8", "Dstar:n", "Tstar", "Ostar", "Istar", "G792"];

/// Presets listed for completeness but not constructed.
pub const NAMED_ONLY: &[&str] = &["TstarxG792", "G13_9_9"];

const MAX_DICYCLIC: u64 = 12;

fn half(f: &Field) -> Scalar {
    f.from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)))
}

fn quat(h: &Field, c: [&Scalar; 4]) -> Scalar {
    let mut acc = h.zero();
    for (u, s) in c.iter().enumerate() {
        acc = &acc + &(&h.embed_base(s).expect("base scalar") * &h.quaternion_unit(u).expect("unit"));
    }
    acc
}

fn q8_elements(h: &Field) -> Vec<Scalar> {
    let mut out = Vec::new();
    for u in 0..4 {
        let e = h.quaternion_unit(u).expect("quaternion field");
        out.push(-&e);
        out.push(e);
    }
    out
}

/// Q8 together with the 16 elements `(±1 ± i ± j ± k)/2`.
fn tstar_elements(h: &Field) -> Vec<Scalar> {
    let base = h.base().expect("quaternion field");
    let hf = half(base);
    let mut out = q8_elements(h);
    for signs in 0..16u32 {
        let c: Vec<Scalar> = (0..4).map(|b| if signs >> b & 1 == 1 { -&hf } else { hf.clone() }).collect();
        out.push(quat(h, [&c[0], &c[1], &c[2], &c[3]]));
    }
    out
}

fn mult(elements: Vec<Scalar>, description: &str) -> Result<GeneratedGroup, GroupError> {
    certify(elements.into_iter().map(GroupElement::Multiplicative).collect(), description)
        .map_err(GroupError::Certification)
}

/// Even permutations of `0..4`, in lexicographic order.
fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if distinct && inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn cyclic(n: u64) -> Result<GeneratedGroup, GroupError> {
    let desc = format!("cyclic:{n}");
    match n {
        0 => Err(GroupError::BadParameter("cyclic:0".into())),
        1 => mult(vec![Field::rationals().one()], &desc),
        2 => {
            let q = Field::rationals();
            mult(vec![q.one(), q.from_int(-1)], &desc)
        }
        _ => {
            let f = Field::cyclotomic(n)?;
            mult((0..n as i64).map(|k| f.zeta_pow(k)).collect(), &desc)
        }
    }
}

pub(crate) fn q8() -> GeneratedGroup {
    mult(q8_elements(&Field::parse("H:Q").expect("H:Q")), "Q8").expect("Q8 is a group")
}

pub(crate) fn tstar() -> GeneratedGroup {
    mult(tstar_elements(&Field::parse("H:Q").expect("H:Q")), "Tstar").expect("T* is a group")
}

/// T* and `(±a ± b)/√2` for distinct units `a, b`, over `Q(√2)`.
pub(crate) fn ostar() -> GeneratedGroup {
    let h = Field::parse("H:Q(sqrt2)").expect("H:Q(sqrt2)");
    let base = h.base().unwrap().clone();
    let r = &base.generator() * &half(&base);
    let mut out = tstar_elements(&h);
    for a in 0..4 {
        for b in a + 1..4 {
            for signs in 0..4u32 {
                let mut c = vec![base.zero(); 4];
                c[a] = if signs & 1 == 1 { -&r } else { r.clone() };
                c[b] = if signs & 2 == 2 { -&r } else { r.clone() };
                out.push(quat(&h, [&c[0], &c[1], &c[2], &c[3]]));
            }
        }
    }
    mult(out, "Ostar").expect("O* is a group")
}

/// T* and `(0 π₁ ± π₂ ± φ⁻¹ π₃ ± φ π₄)/2` over even permutations `π` of
/// the units, with `φ = (1 + √5)/2`.
pub(crate) fn istar() -> GeneratedGroup {
    let h = Field::parse("H:Q(sqrt5)").expect("H:Q(sqrt5)");
    let base = h.base().unwrap().clone();
    let hf = half(&base);
    let phi = &(&base.one() + &base.generator()) * &hf;
    let phi_inv = &phi - &base.one();
    let mags = [base.zero(), hf.clone(), &phi_inv * &hf, &phi * &hf];
    let mut out = tstar_elements(&h);
    for p in even_permutations() {
        for signs in 0..8u32 {
            let mut c = vec![base.zero(); 4];
            for t in 1..4 {
                let m = mags[t].clone();
                c[p[t]] = if signs >> (t - 1) & 1 == 1 { -&m } else { m };
            }
            out.push(quat(&h, [&c[0], &c[1], &c[2], &c[3]]));
        }
    }
    mult(out, "Istar").expect("I* is a group")
}

/// The binary dihedral group `{ζ^k, ζ^k j : 0 ≤ k < 2n}` with `ζ` a
/// primitive `2n`-th root of unity, in the cyclotomic quaternion model.
pub(crate) fn dicyclic(n: u64) -> Result<GeneratedGroup, GroupError> {
    if !(2..=MAX_DICYCLIC).contains(&n) {
        return Err(GroupError::BadParameter(format!("Dstar:{n} needs 2 <= n <= {MAX_DICYCLIC}")));
    }
    let h = Field::cyclotomic_quaternions(2 * n)?;
    let j = h.pair_j().expect("pair field");
    let mut out = Vec::new();
    for k in 0..2 * n as i64 {
        let z = h.zeta_pow(k);
        let zj = &z * &j;
        out.push(z);
        out.push(zj);
    }
    mult(out, &format!("Dstar:{n}"))
}

/// `⟨a, b⟩` in the cyclic algebra with `a = ζ³`: order 63, `b a b⁻¹ = a²`.
pub(crate) fn g792() -> GeneratedGroup {
    let f = Field::lam36();
    let a = f.zeta_pow(3);
    let b = f.cyclic_b().expect("cyclic algebra");
    multiplicative_group(&f, &[a, b], DEFAULT_BOUND, "G792").expect("G792 is finite")
}

pub fn catalog(name: &str) -> Result<GeneratedGroup, GroupError> {
    let param = |s: &str| -> Result<u64, GroupError> {
        s.parse().map_err(|_| GroupError::BadParameter(format!("{name}: {s:?} is not a number")))
    };
    if let Some(n) = name.strip_prefix("cyclic:") {
        return cyclic(param(n)?);
    }
    if let Some(n) = name.strip_prefix("Dstar:") {
        return dicyclic(param(n)?);
    }
    match name {
        "Q8" => Ok(q8()),
        "Tstar" => Ok(tstar()),
        "Ostar" => Ok(ostar()),
        "Istar" => Ok(istar()),
        "G792" => Ok(g792()),
        _ if NAMED_ONLY.contains(&name) => Err(GroupError::NotConstructed(name.to_string())),
        _ => Err(GroupError::UnknownPreset(name.to_string())),
    }
}

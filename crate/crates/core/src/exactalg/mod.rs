//! Exact arithmetic over the skew fields used by the embedding constructions.
//!
//! A [`Field`] is a shared handle to a [`FieldDescriptor`]; a [`Scalar`] is an
//! immutable exact element tagged with its field. Supported kinds:
//!
//! * finite fields `F_q` (`"Fp:5"`, `"Fq:9:x^2+1"`);
//! * the rationals and number fields (`"Q"`, `"Q(sqrt2)"`, `"Q(zeta:21)"`);
//! * Hamilton quaternions over a real number field (`"H:Q"`, `"H:Q(sqrt5)"`);
//! * the cyclotomic quaternion model `Q(zeta_m) + Q(zeta_m) j` with
//!   `j z = conj(z) j`, `j^2 = -1` (`"HZ:m"`);
//! * the degree-3 cyclic division algebra over `Q(zeta_21)` generated by `b`
//!   with `b^3 = zeta^7`, `b zeta = zeta^16 b` (`"Lam36"`).

mod codec;
mod cyclic;
pub mod finite;
pub mod numfield;
mod quaternion;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use codec::{decode_scalar, encode_scalar};
pub use finite::FiniteField;
pub use numfield::{NfVec, NumberField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular linear system (nonzero element without inverse)")]
    SingularSystem,
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("unknown field descriptor {0:?}")]
    UnknownDescriptor(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot decode scalar: {0}")]
    Decode(String),
}

#[derive(Debug)]
pub enum FieldKind {
    Finite(FiniteField),
    /// `Q` (degree 1) or a number field.
    Number(NumberField),
    /// Hamilton quaternions with coefficients in a real number field.
    Quaternion(Field),
    /// `K + K j` over a cyclotomic `K`, `j z = conj(z) j`, `j^2 = -1`.
    CyclotomicQuaternion(Field),
    /// `K + b K + b^2 K` over `K = Q(zeta_21)`.
    Cyclic(Field),
}

#[derive(Debug)]
pub struct FieldDescriptor {
    name: String,
    kind: FieldKind,
}

impl FieldDescriptor {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }
}

/// Shared handle to a field descriptor. Equality is by canonical name.
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.name == other.0.name
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.name)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

/// Payload of a scalar; the field fixes which variant occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Value {
    Finite(u64),
    Number(NfVec),
    Quaternion(Box<[NfVec; 4]>),
    Pair(Box<[NfVec; 2]>),
    Cyclic(Box<[NfVec; 3]>),
}

impl Field {
    fn wrap(name: String, kind: FieldKind) -> Field {
        Field(Arc::new(FieldDescriptor { name, kind }))
    }

    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        let f = FiniteField::prime(p)?;
        Ok(Self::wrap(format!("Fp:{p}"), FieldKind::Finite(f)))
    }

    /// `F_q` with an explicit modulus, or the default one when `modulus` is `None`.
    pub fn finite(q: u64, modulus: Option<Vec<u64>>) -> Result<Field, AlgebraError> {
        let f = match modulus {
            Some(m) => {
                let (p, _) = finite::prime_power(q).ok_or_else(|| {
                    AlgebraError::InvalidDescriptor(format!("{q} is not a prime power"))
                })?;
                let f = FiniteField::new(p, m)?;
                if f.order() != q {
                    return Err(AlgebraError::InvalidDescriptor(format!(
                        "modulus degree does not give a field of order {q}"
                    )));
                }
                f
            }
            None => FiniteField::with_order(q)?,
        };
        let name = if f.is_prime_field() {
            format!("Fp:{}", f.characteristic())
        } else {
            format!("Fq:{}:{}", f.order(), f.modulus_string())
        };
        Ok(Self::wrap(name, FieldKind::Finite(f)))
    }

    pub fn rationals() -> Field {
        Self::wrap("Q".into(), FieldKind::Number(NumberField::rationals()))
    }

    pub fn quadratic(n: i64) -> Result<Field, AlgebraError> {
        let nf = NumberField::quadratic(n).ok_or_else(|| {
            AlgebraError::InvalidDescriptor(format!("x^2-{n} is reducible over Q"))
        })?;
        Ok(Self::wrap(format!("Q(sqrt{n})"), FieldKind::Number(nf)))
    }

    pub fn cyclotomic(m: u64) -> Result<Field, AlgebraError> {
        if m < 3 {
            return Err(AlgebraError::InvalidDescriptor(
                "cyclotomic fields need m >= 3 (use Q)".into(),
            ));
        }
        Ok(Self::wrap(
            format!("Q(zeta:{m})"),
            FieldKind::Number(NumberField::cyclotomic(m)),
        ))
    }

    /// Hamilton quaternions over `Q` or a real quadratic field.
    pub fn quaternions(base: Field) -> Result<Field, AlgebraError> {
        match base.kind() {
            FieldKind::Number(nf) if nf.cyclotomic_order().is_none() => {}
            _ => {
                return Err(AlgebraError::InvalidDescriptor(format!(
                    "quaternion base must be Q or a real quadratic field, got {base}"
                )))
            }
        }
        Ok(Self::wrap(format!("H:{}", base.name()), FieldKind::Quaternion(base)))
    }

    /// The division algebra `Q(zeta_m) + Q(zeta_m) j`.
    pub fn cyclotomic_quaternions(m: u64) -> Result<Field, AlgebraError> {
        let base = Self::cyclotomic(m)?;
        Ok(Self::wrap(
            format!("HZ:{m}"),
            FieldKind::CyclotomicQuaternion(base),
        ))
    }

    /// The 36-dimensional cyclic division algebra over `Q(zeta_21)`.
    pub fn lam36() -> Field {
        let base = Self::cyclotomic(21).expect("21 >= 3");
        Self::wrap("Lam36".into(), FieldKind::Cyclic(base))
    }

    /// Parses a descriptor name such as `"Fq:9:x^2+1"` or `"H:Q(sqrt5)"`.
    pub fn parse(name: &str) -> Result<Field, AlgebraError> {
        codec::parse_descriptor(name)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    /// 0 for characteristic-zero kinds, `p` for finite fields.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Finite(f) => f.characteristic(),
            _ => 0,
        }
    }

    pub fn is_commutative(&self) -> bool {
        matches!(self.kind(), FieldKind::Finite(_) | FieldKind::Number(_))
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            FieldKind::Finite(f) => Some(f.order()),
            _ => None,
        }
    }

    pub fn finite_field(&self) -> Option<&FiniteField> {
        match self.kind() {
            FieldKind::Finite(f) => Some(f),
            _ => None,
        }
    }

    /// The coefficient field of a quaternion or cyclic algebra.
    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Quaternion(b) | FieldKind::CyclotomicQuaternion(b) | FieldKind::Cyclic(b) => {
                Some(b)
            }
            _ => None,
        }
    }

    fn nf(&self) -> &NumberField {
        match self.kind() {
            FieldKind::Number(nf) => nf,
            _ => self
                .base()
                .expect("finite fields have no number-field data")
                .nf(),
        }
    }

    fn scalar(&self, value: Value) -> Scalar {
        Scalar {
            field: self.clone(),
            value,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Image of a rational number; for finite fields the denominator must be a unit.
    pub fn from_rational(&self, r: BigRational) -> Scalar {
        let value = match self.kind() {
            FieldKind::Finite(f) => {
                let p = BigInt::from(f.characteristic());
                let reduce = |x: &BigInt| {
                    let m = ((x % &p) + &p) % &p;
                    u64::try_from(m).expect("residue fits in u64")
                };
                let num = reduce(r.numer());
                let den = f.inv(reduce(r.denom())).expect("denominator divisible by p");
                Value::Finite(f.mul(num, den))
            }
            FieldKind::Number(nf) => Value::Number(nf.from_rational(r)),
            FieldKind::Quaternion(b) => {
                let nf = b.nf();
                Value::Quaternion(Box::new([
                    nf.from_rational(r),
                    nf.zero(),
                    nf.zero(),
                    nf.zero(),
                ]))
            }
            FieldKind::CyclotomicQuaternion(b) => {
                let nf = b.nf();
                Value::Pair(Box::new([nf.from_rational(r), nf.zero()]))
            }
            FieldKind::Cyclic(b) => {
                let nf = b.nf();
                Value::Cyclic(Box::new([nf.from_rational(r), nf.zero(), nf.zero()]))
            }
        };
        self.scalar(value)
    }

    /// Finite field element with integer encoding `index` (`sum c_i p^i`).
    pub fn element(&self, index: u64) -> Option<Scalar> {
        let f = self.finite_field()?;
        (index < f.order()).then(|| self.scalar(Value::Finite(index)))
    }

    /// All elements of a finite field in encoding order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?;
        Some((0..q).map(|i| self.scalar(Value::Finite(i))).collect())
    }

    /// Finite-field element from coefficient digits in the power basis.
    pub fn finite_from_digits(&self, digits: &[u64]) -> Option<Scalar> {
        let f = self.finite_field()?;
        if digits.len() != f.degree() {
            return None;
        }
        Some(self.scalar(Value::Finite(f.from_digits(digits))))
    }

    /// Number field element from power-basis coefficients.
    pub fn number(&self, coeffs: Vec<BigRational>) -> Option<Scalar> {
        match self.kind() {
            FieldKind::Number(nf) if coeffs.len() <= nf.degree() => {
                let mut c = coeffs;
                c.resize(nf.degree(), BigRational::zero());
                Some(self.scalar(Value::Number(c)))
            }
            _ => None,
        }
    }

    /// The power-basis generator: `sqrt n`, `zeta_m`, or `x` in `F_q`.
    pub fn generator(&self) -> Scalar {
        match self.kind() {
            FieldKind::Finite(f) => self.scalar(Value::Finite(f.generator())),
            FieldKind::Number(nf) => self.scalar(Value::Number(nf.generator())),
            _ => panic!("generator() is defined for commutative fields only"),
        }
    }

    /// `zeta^e` in a cyclotomic field, or embedded in an algebra over one.
    pub fn zeta_pow(&self, e: i64) -> Scalar {
        match self.kind() {
            FieldKind::Number(nf) => self.scalar(Value::Number(nf.zeta_pow(e))),
            FieldKind::CyclotomicQuaternion(_) | FieldKind::Cyclic(_) => {
                let b = self.base().unwrap();
                self.embed_base(&b.zeta_pow(e)).unwrap()
            }
            _ => panic!("zeta_pow requires a cyclotomic field"),
        }
    }

    /// Quaternion `a + b i + c j + d k` from base-field scalars.
    pub fn quaternion(&self, parts: [&Scalar; 4]) -> Option<Scalar> {
        let FieldKind::Quaternion(base) = self.kind() else {
            return None;
        };
        let mut out: [NfVec; 4] = Default::default();
        for (o, s) in out.iter_mut().zip(parts) {
            if &s.field != base {
                return None;
            }
            *o = s.number_coeffs()?.to_vec();
        }
        Some(self.scalar(Value::Quaternion(Box::new(out))))
    }

    /// Basis units `1, i, j, k` of a Hamilton quaternion algebra (index 0..4).
    pub fn quaternion_unit(&self, idx: usize) -> Option<Scalar> {
        let FieldKind::Quaternion(base) = self.kind() else {
            return None;
        };
        let nf = base.nf();
        let mut out: [NfVec; 4] = [nf.zero(), nf.zero(), nf.zero(), nf.zero()];
        *out.get_mut(idx)? = nf.one();
        Some(self.scalar(Value::Quaternion(Box::new(out))))
    }

    /// `z + w j` in the cyclotomic quaternion model.
    pub fn pair(&self, z: &Scalar, w: &Scalar) -> Option<Scalar> {
        let FieldKind::CyclotomicQuaternion(base) = self.kind() else {
            return None;
        };
        if &z.field != base || &w.field != base {
            return None;
        }
        Some(self.scalar(Value::Pair(Box::new([
            z.number_coeffs()?.to_vec(),
            w.number_coeffs()?.to_vec(),
        ]))))
    }

    /// The symbol `j` of the cyclotomic quaternion model.
    pub fn pair_j(&self) -> Option<Scalar> {
        let base = self.base()?;
        self.pair(&base.zero(), &base.one())
    }

    /// `c0 + b c1 + b^2 c2` in the cyclic algebra.
    pub fn cyclic(&self, c: [&Scalar; 3]) -> Option<Scalar> {
        let FieldKind::Cyclic(base) = self.kind() else {
            return None;
        };
        let mut out: [NfVec; 3] = Default::default();
        for (o, s) in out.iter_mut().zip(c) {
            if &s.field != base {
                return None;
            }
            *o = s.number_coeffs()?.to_vec();
        }
        Some(self.scalar(Value::Cyclic(Box::new(out))))
    }

    /// The symbol `b` of the cyclic algebra.
    pub fn cyclic_b(&self) -> Option<Scalar> {
        let base = self.base()?;
        self.cyclic([&base.zero(), &base.one(), &base.zero()])
    }

    /// Embeds an element of the coefficient field (central for quaternions).
    pub fn embed_base(&self, s: &Scalar) -> Option<Scalar> {
        let base = self.base()?;
        if &s.field != base {
            return None;
        }
        let c = s.number_coeffs()?.to_vec();
        let nf = base.nf();
        let value = match self.kind() {
            FieldKind::Quaternion(_) => {
                Value::Quaternion(Box::new([c, nf.zero(), nf.zero(), nf.zero()]))
            }
            FieldKind::CyclotomicQuaternion(_) => Value::Pair(Box::new([c, nf.zero()])),
            FieldKind::Cyclic(_) => Value::Cyclic(Box::new([c, nf.zero(), nf.zero()])),
            _ => return None,
        };
        Some(self.scalar(value))
    }

    /// Maps a scalar of `H:Q` (or `Q`) into this field by viewing rational
    /// coefficients as constants of the base field.
    pub fn lift(&self, s: &Scalar) -> Option<Scalar> {
        if &s.field == self {
            return Some(s.clone());
        }
        match (&s.value, self.kind()) {
            (Value::Number(c), FieldKind::Number(_)) if c.len() == 1 => {
                Some(self.from_rational(c[0].clone()))
            }
            (Value::Quaternion(parts), FieldKind::Quaternion(base))
                if parts.iter().all(|p| p.len() == 1) =>
            {
                let nf = base.nf();
                let lifted: [NfVec; 4] =
                    std::array::from_fn(|i| nf.from_rational(parts[i][0].clone()));
                Some(self.scalar(Value::Quaternion(Box::new(lifted))))
            }
            _ => None,
        }
    }

    fn check(&self, other: &Field) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch {
                left: self.name().into(),
                right: other.name().into(),
            })
        }
    }

    fn add_values(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (FieldKind::Finite(f), Value::Finite(x), Value::Finite(y)) => Value::Finite(f.add(*x, *y)),
            (FieldKind::Number(nf), Value::Number(x), Value::Number(y)) => Value::Number(nf.add(x, y)),
            (_, Value::Quaternion(x), Value::Quaternion(y)) => {
                let nf = self.nf();
                Value::Quaternion(Box::new(std::array::from_fn(|i| nf.add(&x[i], &y[i]))))
            }
            (_, Value::Pair(x), Value::Pair(y)) => {
                let nf = self.nf();
                Value::Pair(Box::new(std::array::from_fn(|i| nf.add(&x[i], &y[i]))))
            }
            (_, Value::Cyclic(x), Value::Cyclic(y)) => {
                let nf = self.nf();
                Value::Cyclic(Box::new(std::array::from_fn(|i| nf.add(&x[i], &y[i]))))
            }
            _ => unreachable!("payload does not match field kind"),
        }
    }

    fn neg_value(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (FieldKind::Finite(f), Value::Finite(x)) => Value::Finite(f.neg(*x)),
            (_, Value::Number(x)) => Value::Number(self.nf().neg(x)),
            (_, Value::Quaternion(x)) => {
                let nf = self.nf();
                Value::Quaternion(Box::new(std::array::from_fn(|i| nf.neg(&x[i]))))
            }
            (_, Value::Pair(x)) => {
                let nf = self.nf();
                Value::Pair(Box::new(std::array::from_fn(|i| nf.neg(&x[i]))))
            }
            (_, Value::Cyclic(x)) => {
                let nf = self.nf();
                Value::Cyclic(Box::new(std::array::from_fn(|i| nf.neg(&x[i]))))
            }
            _ => unreachable!("payload does not match field kind"),
        }
    }

    fn mul_values(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (FieldKind::Finite(f), Value::Finite(x), Value::Finite(y)) => Value::Finite(f.mul(*x, *y)),
            (FieldKind::Number(nf), Value::Number(x), Value::Number(y)) => Value::Number(nf.mul(x, y)),
            (_, Value::Quaternion(x), Value::Quaternion(y)) => {
                Value::Quaternion(Box::new(quaternion::hamilton_mul(self.nf(), x, y)))
            }
            (_, Value::Pair(x), Value::Pair(y)) => {
                Value::Pair(Box::new(quaternion::pair_mul(self.nf(), x, y)))
            }
            (_, Value::Cyclic(x), Value::Cyclic(y)) => {
                Value::Cyclic(Box::new(cyclic::cyclic_mul(self.nf(), x, y)))
            }
            _ => unreachable!("payload does not match field kind"),
        }
    }

    fn inv_value(&self, a: &Value) -> Result<Value, AlgebraError> {
        match (self.kind(), a) {
            (FieldKind::Finite(f), Value::Finite(x)) => {
                f.inv(*x).map(Value::Finite).ok_or(AlgebraError::DivisionByZero)
            }
            (FieldKind::Number(nf), Value::Number(x)) => {
                nf.inv(x).map(Value::Number).ok_or(AlgebraError::DivisionByZero)
            }
            (_, Value::Quaternion(x)) => quaternion::hamilton_inv(self.nf(), x)
                .map(|v| Value::Quaternion(Box::new(v)))
                .ok_or(AlgebraError::DivisionByZero),
            (_, Value::Pair(x)) => quaternion::pair_inv(self.nf(), x)
                .map(|v| Value::Pair(Box::new(v)))
                .ok_or(AlgebraError::DivisionByZero),
            (_, Value::Cyclic(x)) => {
                cyclic::cyclic_inv(self.nf(), x).map(|v| Value::Cyclic(Box::new(v)))
            }
            _ => unreachable!("payload does not match field kind"),
        }
    }
}

/// An exact element of a skew field.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    value: Value,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order on payloads (used for deterministic output only).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .name()
            .cmp(other.field.name())
            .then_with(|| self.value.cmp(&other.value))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", encode_scalar(self))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", encode_scalar(self))
    }
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Finite(x) => *x == 0,
            Value::Number(c) => c.iter().all(Zero::is_zero),
            Value::Quaternion(p) => p.iter().flatten().all(Zero::is_zero),
            Value::Pair(p) => p.iter().flatten().all(Zero::is_zero),
            Value::Cyclic(p) => p.iter().flatten().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Encoding index of a finite-field element.
    pub fn finite_index(&self) -> Option<u64> {
        match self.value {
            Value::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// Power-basis coefficients of a number-field element.
    pub fn number_coeffs(&self) -> Option<&[BigRational]> {
        match &self.value {
            Value::Number(c) => Some(c),
            _ => None,
        }
    }

    /// Components over the coefficient field: 4 for quaternions, 2 for the
    /// cyclotomic model, 3 for the cyclic algebra, 1 otherwise.
    pub fn components(&self) -> Vec<Scalar> {
        let Some(base) = self.field.base() else {
            return vec![self.clone()];
        };
        let wrap = |c: &NfVec| base.scalar(Value::Number(c.clone()));
        match &self.value {
            Value::Quaternion(p) => p.iter().map(wrap).collect(),
            Value::Pair(p) => p.iter().map(wrap).collect(),
            Value::Cyclic(p) => p.iter().map(wrap).collect(),
            _ => unreachable!(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.field.check(&other.field)?;
        Ok(self.field.scalar(self.field.add_values(&self.value, &other.value)))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.field.check(&other.field)?;
        let neg = self.field.neg_value(&other.value);
        Ok(self.field.scalar(self.field.add_values(&self.value, &neg)))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.field.check(&other.field)?;
        Ok(self.field.scalar(self.field.mul_values(&self.value, &other.value)))
    }

    /// Two-sided inverse.
    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.field.scalar(self.field.inv_value(&self.value)?))
    }

    /// `self * other^{-1}`.
    pub fn div_right(&self, other: &Scalar) -> Result<Scalar, AlgebraError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, e: i64) -> Result<Scalar, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative order, searched up to `bound`.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let one = self.field.one();
        let mut cur = self.clone();
        for k in 1..=bound {
            if cur == one {
                return Some(k);
            }
            cur = &cur * self;
        }
        None
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different fields; use the
            /// `checked_*` form for fallible arithmetic.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.field.scalar(self.field.neg_value(&self.value))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

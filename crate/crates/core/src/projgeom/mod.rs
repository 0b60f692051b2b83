//! Right-projective geometry over a skew field.
//!
//! Side conventions: coordinate vectors form a right vector space (a point
//! `[x]` equals `[x λ]`), and a hyperplane `α_1 x_1 + … + α_{d+1} x_{d+1} = 0`
//! carries its coefficients on the left (`α` and `μ α` are the same
//! hyperplane). Flats are stored as reduced echelon bases of right spans.

mod elim;

use std::fmt;

use thiserror::Error;

use crate::exactalg::{AlgebraError, Field, Scalar};

pub use elim::{rank_and_solve, Reduction, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the zero vector is not a projective point or hyperplane")]
    ZeroVector,
    #[error("empty input")]
    Empty,
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("points coincide; no unique line")]
    CoincidentPoints,
    #[error("line is contained in the hyperplane")]
    LineInHyperplane,
    #[error("projection center lies on the target hyperplane")]
    CenterOnTarget,
    #[error("flat of dimension {0} is not a line")]
    NotALine(isize),
}

fn common_field(vectors: &[&[Scalar]]) -> Result<(Field, usize), GeomError> {
    let first = vectors.first().ok_or(GeomError::Empty)?;
    let field = first.first().ok_or(GeomError::Empty)?.field().clone();
    let len = first.len();
    for v in vectors {
        if v.len() != len {
            return Err(GeomError::DimensionMismatch {
                expected: len,
                got: v.len(),
            });
        }
        for s in v.iter() {
            if s.field() != &field {
                return Err(AlgebraError::DescriptorMismatch {
                    left: field.name().into(),
                    right: s.field().name().into(),
                }
                .into());
            }
        }
    }
    Ok((field, len))
}

/// A point of `P^d(D)` in canonical homogeneous coordinates: the last nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomPoint {
    coords: Vec<Scalar>,
}

impl HomPoint {
    /// Normalizes by right-multiplying with the inverse of the last nonzero
    /// coordinate. The zero vector is rejected.
    pub fn new(coords: Vec<Scalar>) -> Result<HomPoint, GeomError> {
        common_field(&[&coords])?;
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(GeomError::ZeroVector)?;
        let inv = coords[last].inv()?;
        let coords = coords.iter().map(|c| c * &inv).collect();
        Ok(HomPoint { coords })
    }

    /// Builds a point from small integers.
    pub fn from_ints(field: &Field, coords: &[i64]) -> Result<HomPoint, GeomError> {
        HomPoint::new(coords.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Projective dimension `d` of the ambient space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The same point written with representative `x λ` (not renormalized).
    pub fn scaled_coords(&self, lambda: &Scalar) -> Vec<Scalar> {
        self.coords.iter().map(|c| c * lambda).collect()
    }
}

impl fmt::Display for HomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for HomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A hyperplane `Σ α_i x_i = 0`, canonical with first nonzero coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<Scalar>,
}

impl Hyperplane {
    /// Normalizes by left-multiplying with the inverse of the first nonzero
    /// coefficient.
    pub fn new(coeffs: Vec<Scalar>) -> Result<Hyperplane, GeomError> {
        common_field(&[&coeffs])?;
        let first = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(GeomError::ZeroVector)?;
        let inv = coeffs[first].inv()?;
        let coeffs = coeffs.iter().map(|c| &inv * c).collect();
        Ok(Hyperplane { coeffs })
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Result<Hyperplane, GeomError> {
        Hyperplane::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// `x_i = 0` in a space with `len` coordinates (0-based `i`).
    pub fn coordinate(field: &Field, len: usize, i: usize) -> Hyperplane {
        let mut c = vec![field.zero(); len];
        c[i] = field.one();
        Hyperplane { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    /// `Σ α_i x_i` for a coordinate vector `x`.
    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar, GeomError> {
        if x.len() != self.coeffs.len() {
            return Err(GeomError::DimensionMismatch {
                expected: self.coeffs.len(),
                got: x.len(),
            });
        }
        let mut acc = self.field().zero();
        for (a, xi) in self.coeffs.iter().zip(x) {
            acc = acc.checked_add(&a.checked_mul(xi)?)?;
        }
        Ok(acc)
    }

    /// The same hyperplane written with coefficients `μ α` (not renormalized).
    pub fn scaled_coeffs(&self, mu: &Scalar) -> Vec<Scalar> {
        self.coeffs.iter().map(|c| mu * c).collect()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

/// True iff `Σ α_i x_i = 0`.
pub fn incident(p: &HomPoint, h: &Hyperplane) -> Result<bool, GeomError> {
    Ok(h.evaluate(p.coords())?.is_zero())
}

/// A projective flat, stored as the reduced echelon basis of its right span.
/// The empty flat has dimension -1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat(dim {}, basis {:?})", self.dim(), self.basis)
    }
}

impl Flat {
    fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Flat, GeomError> {
        if vectors.is_empty() {
            return Ok(Flat {
                field,
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            });
        }
        let red = rank_and_solve(vectors, Side::Left)?;
        Ok(Flat {
            field,
            ambient,
            basis: red.rows[..red.rank].to_vec(),
            pivots: red.pivots,
        })
    }

    /// Projective dimension: basis size minus one.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.ambient
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, p: &HomPoint) -> Result<bool, GeomError> {
        let x = p.coords();
        if x.len() != self.ambient {
            return Err(GeomError::DimensionMismatch {
                expected: self.ambient,
                got: x.len(),
            });
        }
        let mut residual = x.to_vec();
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let f = residual[piv].clone();
            if f.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                *r = r.checked_sub(&b.checked_mul(&f)?)?;
            }
        }
        Ok(residual.iter().all(Scalar::is_zero))
    }

    /// Whether every point of the flat lies on `h`.
    pub fn contained_in(&self, h: &Hyperplane) -> Result<bool, GeomError> {
        for v in &self.basis {
            if !h.evaluate(v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hyperplanes containing this flat, as a basis of left-coefficient
    /// vectors.
    pub fn annihilator(&self) -> Result<Vec<Vec<Scalar>>, GeomError> {
        if self.basis.is_empty() {
            return Ok((0..self.ambient)
                .map(|i| Hyperplane::coordinate(&self.field, self.ambient, i).coeffs)
                .collect());
        }
        Ok(rank_and_solve(&self.basis, Side::Left)?.nullspace)
    }

    /// A canonical point of a 0-dimensional flat.
    pub fn as_point(&self) -> Option<HomPoint> {
        (self.basis.len() == 1).then(|| HomPoint::new(self.basis[0].clone()).expect("nonzero basis"))
    }
}

/// The smallest flat containing all the points.
pub fn span_flat(points: &[HomPoint]) -> Result<Flat, GeomError> {
    let refs: Vec<&[Scalar]> = points.iter().map(|p| p.coords()).collect();
    let (field, len) = common_field(&refs)?;
    let vectors: Vec<Vec<Scalar>> = points.iter().map(|p| p.coords().to_vec()).collect();
    Flat::from_vectors(field, len, &vectors)
}

/// Intersection of hyperplanes, with exact dimension.
pub fn intersect_hyperplanes(hs: &[Hyperplane]) -> Result<Flat, GeomError> {
    let refs: Vec<&[Scalar]> = hs.iter().map(|h| h.coeffs()).collect();
    let (field, len) = common_field(&refs)?;
    let rows: Vec<Vec<Scalar>> = hs.iter().map(|h| h.coeffs().to_vec()).collect();
    let red = rank_and_solve(&rows, Side::Right)?;
    Flat::from_vectors(field, len, &red.nullspace)
}

/// The line through two distinct points.
pub fn line_through(p: &HomPoint, q: &HomPoint) -> Result<Flat, GeomError> {
    let line = span_flat(&[p.clone(), q.clone()])?;
    if line.dim() != 1 {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(line)
}

/// The unique point where `line` meets `h`.
///
/// With basis `u, v`, the point is `u λ + v μ` where `(α·u) λ + (α·v) μ = 0`.
pub fn third_intersection(line: &Flat, h: &Hyperplane) -> Result<HomPoint, GeomError> {
    if line.dim() != 1 {
        return Err(GeomError::NotALine(line.dim()));
    }
    let (u, v) = (&line.basis[0], &line.basis[1]);
    let s = h.evaluate(u)?;
    let t = h.evaluate(v)?;
    match (s.is_zero(), t.is_zero()) {
        (true, true) => Err(GeomError::LineInHyperplane),
        (true, false) => Ok(HomPoint::new(u.clone())?),
        (false, true) => Ok(HomPoint::new(v.clone())?),
        (false, false) => {
            let lambda = -(&s.inv()? * &t);
            let coords = u.iter().zip(v).map(|(a, b)| &(a * &lambda) + b).collect();
            HomPoint::new(coords)
        }
    }
}

/// Central projection of `p` from `center` onto `target`.
pub fn project_from(center: &HomPoint, p: &HomPoint, target: &Hyperplane) -> Result<HomPoint, GeomError> {
    if incident(center, target)? {
        return Err(GeomError::CenterOnTarget);
    }
    let line = line_through(center, p)?;
    third_intersection(&line, target)
}

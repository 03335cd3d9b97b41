//! Exact arithmetic in a number field `Q(a) = Q[x]/(m(x))`.
//!
//! All residues, Camacho-Sad indices and holonomies live in one declared
//! field. Elements are coordinate vectors in the power basis `1, a, ..., a^(d-1)`.

pub mod poly;
pub mod scalar;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use poly::Poly;
pub use scalar::{clear_denominators, Integral, Scalar};

use crate::error::{Error, Result};
use crate::linalg;

/// `Q[x]/(m)` for a monic, squarefree `m` of degree `d >= 1`.
///
/// Only the monic tail `c_0..c_{d-1}` of `m(x) = x^d + sum c_i x^i` is stored.
/// Irreducibility is screened (no rational root when `d > 1`) but not
/// proven; a reducible `m` surfaces later as [`Error::DivisionByZero`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NumberField<Q: Scalar = crate::Rational> {
    tail: Vec<Q>,
}

impl<Q: Scalar> NumberField<Q> {
    pub fn new(tail: Vec<Q>) -> Result<Arc<Self>> {
        if tail.is_empty() {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let field = NumberField { tail };
        let m = field.min_poly();
        if !m.is_squarefree() {
            return Err(Error::InvalidField(format!("{m} is not squarefree")));
        }
        if field.degree() > 1 {
            let roots = m.rational_roots()?;
            if let Some(r) = roots.first() {
                return Err(Error::InvalidField(format!("{m} has the rational root {r}")));
            }
        }
        Ok(Arc::new(field))
    }

    /// `Q` itself, presented as `Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField { tail: vec![Q::zero()] })
    }

    /// `Q(i)` with `m = x^2 + 1`.
    pub fn gaussian() -> Arc<Self> {
        Arc::new(NumberField { tail: vec![Q::one(), Q::zero()] })
    }

    /// `Q(sqrt(d))` with `m = x^2 - d`.
    pub fn quadratic(d: i64) -> Result<Arc<Self>> {
        Self::new(vec![Q::from_i64(-d), Q::zero()])
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    pub fn min_poly_tail(&self) -> &[Q] {
        &self.tail
    }

    pub fn min_poly(&self) -> Poly<Q> {
        let mut cs = self.tail.clone();
        cs.push(Q::one());
        Poly::new(cs)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement<Q> {
        FieldElement {
            field: Arc::clone(self),
            coeffs: vec![Q::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement<Q> {
        self.from_rational(Q::one())
    }

    pub fn from_rational(self: &Arc<Self>, q: Q) -> FieldElement<Q> {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> FieldElement<Q> {
        self.from_rational(Q::from_i64(v))
    }

    /// The class of `x`, i.e. the root `a` of the minimal polynomial.
    pub fn generator(self: &Arc<Self>) -> FieldElement<Q> {
        self.from_poly(&Poly::x())
    }

    /// Reduce an arbitrary polynomial in `a` into the field.
    pub fn from_poly(self: &Arc<Self>, p: &Poly<Q>) -> FieldElement<Q> {
        let mut coeffs = p.coeffs().to_vec();
        self.reduce(&mut coeffs);
        FieldElement {
            field: Arc::clone(self),
            coeffs,
        }
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Q>) -> Result<FieldElement<Q>> {
        if coeffs.len() != self.degree() {
            return Err(Error::BadFieldElement {
                location: "element".into(),
                reason: format!("expected {} coordinates, got {}", self.degree(), coeffs.len()),
            });
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            coeffs,
        })
    }

    /// Parse `"p/q"` coordinate strings.
    pub fn parse_element<S: AsRef<str>>(self: &Arc<Self>, coords: &[S]) -> Result<FieldElement<Q>> {
        let mut coeffs = Vec::with_capacity(coords.len());
        for (i, s) in coords.iter().enumerate() {
            let q = s.as_ref().trim().parse::<Q>().map_err(|_| Error::BadFieldElement {
                location: format!("coordinate {i}"),
                reason: format!("`{}` is not a rational of the form p/q", s.as_ref()),
            })?;
            coeffs.push(q);
        }
        self.element(coeffs)
    }

    /// In-place reduction of a coefficient vector modulo `m`, padding to `d`.
    fn reduce(&self, coeffs: &mut Vec<Q>) {
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (j, c) in self.tail.iter().enumerate() {
                let t = coeffs[shift + j].clone() - top.clone() * c.clone();
                coeffs[shift + j] = t;
            }
        }
        coeffs.resize(d, Q::zero());
    }
}

/// An element of a [`NumberField`]; cheap to clone (the field is shared).
#[derive(Clone)]
pub struct FieldElement<Q: Scalar = crate::Rational> {
    field: Arc<NumberField<Q>>,
    coeffs: Vec<Q>,
}

/// Binary operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: the operands must share a field.
pub fn field_arith<Q: Scalar>(
    a: &FieldElement<Q>,
    b: &FieldElement<Q>,
    op: ArithOp,
) -> Result<FieldElement<Q>> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl<Q: Scalar> FieldElement<Q> {
    pub fn field(&self) -> &Arc<NumberField<Q>> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Q> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn is_positive_rational(&self) -> bool {
        self.as_rational().is_some_and(Signed::is_positive)
    }

    fn as_poly(&self) -> Poly<Q> {
        Poly::new(self.coeffs.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `m`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = Poly::ext_gcd(&self.as_poly(), &self.field.min_poly());
        if g.degree() != Some(0) {
            // a proper factor of a reducible m
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if !self.same_field(rhs) {
            return Err(Error::FieldMismatch);
        }
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Wire form: one `"p/q"` string per power-basis coordinate.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    fn check_field(&self, other: &Self) {
        assert!(self.same_field(other), "field element operands belong to different fields");
    }
}

impl<Q: Scalar> PartialEq for FieldElement<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl<Q: Scalar> Eq for FieldElement<Q> {}

impl<Q: Scalar> Hash for FieldElement<Q> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<Q: Scalar> serde::Serialize for FieldElement<Q> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<Q: Scalar> fmt::Debug for FieldElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Renders as a polynomial in `a`, e.g. `-11/10 + (1/10)a`.
impl<Q: Scalar> fmt::Display for FieldElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            if i == 1 {
                write!(f, "a")?;
            } else {
                write!(f, "a^{i}")?;
            }
        }
        Ok(())
    }
}

impl<Q: Scalar> Add for &FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn add(self, rhs: &FieldElement<Q>) -> FieldElement<Q> {
        self.check_field(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<Q: Scalar> Sub for &FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn sub(self, rhs: &FieldElement<Q>) -> FieldElement<Q> {
        self.check_field(rhs);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<Q: Scalar> Mul for &FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn mul(self, rhs: &FieldElement<Q>) -> FieldElement<Q> {
        self.check_field(rhs);
        let d = self.coeffs.len();
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].clone() + a.clone() * b.clone();
            }
        }
        self.field.reduce(&mut prod);
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: prod,
        }
    }
}

impl<Q: Scalar> Neg for &FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn neg(self) -> FieldElement<Q> {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Every `n` with `totient(n) <= degree`, ascending.
///
/// A primitive n-th root of unity generates an extension of degree
/// `totient(n)`, so these are the only orders possible in a degree-`d`
/// field. `totient(n) >= sqrt(n / 2)` bounds the search by `2 d^2`.
pub fn cyclotomic_candidates(degree: usize) -> Vec<u64> {
    let bound = 2 * (degree as u64).pow(2);
    (1..=bound.max(2))
        .filter(|&n| totient(n) <= degree as u64)
        .collect()
}

/// Multiplicative order of `u` if `u` is a root of unity, else `None`.
pub fn is_root_of_unity<Q: Scalar>(u: &FieldElement<Q>) -> Result<Option<u64>> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let candidates = cyclotomic_candidates(u.field().degree());
    let last = *candidates.last().unwrap();
    let mut power = u.clone();
    for n in 1..=last {
        if power.is_one() {
            // the least n with u^n = 1 is the order; orders outside the
            // candidate set cannot occur in a genuine field of this degree
            return Ok(candidates.binary_search(&n).is_ok().then_some(n));
        }
        power = &power * u;
    }
    Ok(None)
}

/// Dimension of the `Q`-span of `elems`, by fraction-free elimination on
/// their denominator-cleared coordinate vectors.
pub fn rational_span_dimension<Q: Scalar>(elems: &[FieldElement<Q>]) -> Result<usize> {
    let Some(first) = elems.first() else {
        return Ok(0);
    };
    if elems.iter().any(|e| !e.same_field(first)) {
        return Err(Error::FieldMismatch);
    }
    let rows: Vec<Vec<Q::Int>> = elems.iter().map(|e| clear_denominators(e.coeffs())).collect();
    Ok(linalg::bareiss_rank(rows))
}

/// Least common multiple of a list of orders.
pub fn lcm_all(orders: impl IntoIterator<Item = u64>) -> u64 {
    orders.into_iter().fold(1, |acc, n| acc.lcm(&n))
}

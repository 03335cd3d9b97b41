//! Dense univariate polynomials over an exact scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::scalar::{clear_denominators, Scalar};
use crate::error::{Error, Result};

/// Coefficients are stored low degree first; trailing zeros are trimmed so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<Q: Scalar> {
    coeffs: Vec<Q>,
}

impl<Q: Scalar> Poly<Q> {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Q::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Q::one() / self.leading();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * Q::from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() / lead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = rem[shift + i].clone() - c.clone() * d.clone();
                rem[shift + i] = t;
            }
            quot[shift] = c;
            // the leading term cancels exactly
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(&r1);
            r0 = r1;
            r1 = r;
        }
        r0.monic()
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::constant(Q::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Q::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Q::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => Poly::gcd(self, &self.derivative()).degree() == Some(0),
        }
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<Q::Int> {
        let mut ints = clear_denominators(&self.coeffs);
        let content = ints
            .iter()
            .fold(Q::Int::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign_fix = if ints.last().is_some_and(|c| c.is_negative()) {
            -Q::Int::one()
        } else {
            Q::Int::one()
        };
        for c in ints.iter_mut() {
            *c = c.clone() / content.clone() * sign_fix.clone();
        }
        ints
    }

    /// Distinct rational roots, ascending, by the rational root theorem.
    ///
    /// Candidate enumeration walks the divisors of the constant and leading
    /// integer coefficients, so both must stay below 10^12 in magnitude.
    pub fn rational_roots(&self) -> Result<Vec<Q>> {
        const LIMIT: u64 = 1_000_000_000_000;
        if self.is_zero() {
            return Err(Error::InvalidField("the zero polynomial has every root".into()));
        }
        let mut roots = Vec::new();
        // strip the factor x^k first; 0 is a root iff c0 = 0
        let lowest = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if lowest > 0 {
            roots.push(Q::zero());
        }
        let reduced = Poly::new(self.coeffs[lowest..].to_vec());
        if reduced.degree() == Some(0) {
            return Ok(roots);
        }
        let ints = reduced.primitive_integer_coeffs();
        let c0 = ints[0].abs().to_u64().filter(|v| *v <= LIMIT);
        let cn = ints.last().unwrap().abs().to_u64().filter(|v| *v <= LIMIT);
        let (Some(c0), Some(cn)) = (c0, cn) else {
            return Err(Error::InvalidField(
                "coefficients too large for the rational-root screen".into(),
            ));
        };
        for p in divisors(c0) {
            for q in divisors(cn) {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Q::from_frac(
                        Q::Int::from_i64(sign * p as i64).unwrap(),
                        Q::Int::from_i64(q as i64).unwrap(),
                    );
                    if reduced.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl<Q: Scalar> Add for &Poly<Q> {
    type Output = Poly<Q>;
    fn add(self, rhs: &Poly<Q>) -> Poly<Q> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<Q: Scalar> Sub for &Poly<Q> {
    type Output = Poly<Q>;
    fn sub(self, rhs: &Poly<Q>) -> Poly<Q> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<Q: Scalar> Mul for &Poly<Q> {
    type Output = Poly<Q>;
    fn mul(self, rhs: &Poly<Q>) -> Poly<Q> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<Q: Scalar> Neg for &Poly<Q> {
    type Output = Poly<Q>;
    fn neg(self) -> Poly<Q> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<Q: Scalar> fmt::Display for Poly<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn q(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn division_identity() {
        let a = P::from_i64s(&[5, 11, 5, 3]);
        let b = P::from_i64s(&[1, 0, 2]);
        let (quot, rem) = a.div_rem(&b);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(&(&quot * &b) + &rem, a);
    }

    #[test]
    fn bezout_identity() {
        let a = P::from_i64s(&[-21, 0, 1]);
        let b = P::from_i64s(&[3, 7]);
        let (g, s, t) = P::ext_gcd(&a, &b);
        assert_eq!(g, P::from_i64s(&[1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree_screen() {
        let sq = &P::from_i64s(&[1, 1]) * &P::from_i64s(&[1, 1]);
        assert!(!sq.is_squarefree());
        assert_eq!(sq.squarefree_part(), P::from_i64s(&[1, 1]));
        assert!(P::from_i64s(&[5, 11, 5]).is_squarefree());
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x
        let p = &(&P::from_i64s(&[-1, 2]) * &P::from_i64s(&[3, 1])) * &P::x();
        assert_eq!(p.rational_roots().unwrap(), vec![q("-3"), q("0"), q("1/2")]);
        assert!(P::from_i64s(&[5, 11, 5]).rational_roots().unwrap().is_empty());
        assert!(P::from_i64s(&[1, 0, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(P::from_i64s(&[5, 11, 5]).to_string(), "5t^2 + 11t + 5");
        assert_eq!(P::new(vec![q("-1"), q("0"), q("-1/2")]).to_string(), "-(1/2)t^2 - 1");
    }
}

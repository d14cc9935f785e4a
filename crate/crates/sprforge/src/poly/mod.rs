//! Dense univariate polynomials over exact rationals or floats.
//!
//! Coefficients are stored ascending by power (`coeffs[k]` multiplies `s^k`)
//! and normalized so the leading coefficient is nonzero; the zero polynomial
//! is the empty list. Exact rationals carry every certificate-bearing
//! computation; the float instantiation exists for search heuristics and
//! cross-checks.

pub mod routh;
pub mod sturm;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::{rat_to_f64, Rat};

/// Scalar types a [`Polynomial`] can carry.
pub trait Coeff:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    /// Rejects NaN/infinity in float mode; always true for rationals.
    fn is_admissible(&self) -> bool;
}

impl Coeff for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn is_admissible(&self) -> bool {
        true
    }
}

impl Coeff for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_admissible(&self) -> bool {
        self.is_finite()
    }
}

/// Dense univariate polynomial; see module docs for conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Coeff> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Polynomial<T> {
    /// Builds from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        debug_assert!(coeffs.iter().all(Coeff::is_admissible));
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    /// Builds from descending coefficients (document order: `s^n` first).
    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·s^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficients in descending order, padded to `len` entries.
    pub fn descending_coeffs(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len.max(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = out.len() - 1 - k;
            out[idx] = c.clone();
        }
        out
    }

    /// Coefficient of `s^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial, otherwise the degree.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    /// Splits `p(s) = pe(s²) + s·po(s²)` into its even and odd parts.
    pub fn even_odd_split(&self) -> (Self, Self) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (Self::from_coeffs(even), Self::from_coeffs(odd))
    }

    /// Recombines even/odd parts: returns `p(s) = pe(s²) + s·po(s²)`.
    pub fn from_even_odd(pe: &Self, po: &Self) -> Self {
        let n = 2 * pe.coeffs.len().max(po.coeffs.len());
        let mut coeffs = vec![T::zero(); n.max(1)];
        for (k, c) in pe.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        for (k, c) in po.coeffs.iter().enumerate() {
            coeffs[2 * k + 1] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Returns `p(−s)`: odd-power coefficients negated.
    pub fn compose_neg(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Multiplies by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Factors out the highest power of `s` dividing `p`: returns
    /// `(k, q)` with `p = s^k · q` and `q(0) ≠ 0`. Zero maps to `(0, 0)`.
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        (k, Self::from_coeffs(self.coeffs[k..].to_vec()))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(coeffs)
    }
}

impl Polynomial<Rat> {
    /// Exact Euclidean division: returns `(quot, rem)` with
    /// `self = quot·d + rem` and `deg rem < deg d`.
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lead;
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = &rem[idx] - &(&q * dc);
                }
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Rescales by a positive rational so the coefficients become coprime
    /// integers (clears denominators, divides out the numerator content).
    /// Signs, roots, and degree are unchanged; the zero polynomial maps to
    /// itself.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = num_bigint::BigInt::one();
        for c in &self.coeffs {
            lcm_den = num_integer::Integer::lcm(&lcm_den, c.denom());
        }
        let mut content = num_bigint::BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * &lcm_den / c.denom();
            content = num_integer::Integer::gcd(&content, &scaled);
        }
        if content.is_zero() {
            content = num_bigint::BigInt::one();
        }
        self.scale(&Rat::new(lcm_den, content))
    }

    /// Monic GCD of two rational polynomials (Euclid), `gcd(0,0) = 0`.
    /// Remainders are rescaled to primitive integer form at every step,
    /// which keeps coefficient sizes tame without changing the (unique
    /// monic) result.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            a
        } else {
            let inv = Rat::one() / a.leading();
            a.scale(&inv)
        }
    }

    /// Squarefree part `p / gcd(p, p')`, monic up to the original leading sign.
    pub fn squarefree(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, _) = self.div_rem(&g);
        q
    }

    /// Float rendering of every coefficient.
    pub fn to_float(&self) -> Polynomial<f64> {
        Polynomial::from_coeffs(self.coeffs.iter().map(rat_to_f64).collect())
    }
}

impl Polynomial<f64> {
    /// Monic polynomial with the given roots (possibly repeated).
    pub fn from_real_roots(roots: &[f64]) -> Self {
        let mut p = Polynomial::constant(1.0);
        for &r in roots {
            p = &p * &Polynomial::from_coeffs(vec![-r, 1.0]);
        }
        p
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        self.add_ref(rhs)
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.sub_ref(rhs)
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Coeff> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                1 if magnitude.is_one() => write!(f, "s")?,
                1 => write!(f, "{magnitude}*s")?,
                _ if magnitude.is_one() => write!(f, "s^{k}")?,
                _ => write!(f, "{magnitude}*s^{k}")?,
            }
        }
        Ok(())
    }
}

/// Convenience: builds a rational polynomial from descending i64 coefficients.
pub fn poly_desc_i64(coeffs: &[i64]) -> Polynomial<Rat> {
    Polynomial::from_descending(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
}

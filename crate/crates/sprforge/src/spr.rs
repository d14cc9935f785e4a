//! Strict positive-real verdicts for rational functions `c(s)/q(s)`.
//!
//! The frequency condition `Re[c(jω)/q(jω)] > 0` reduces, with `t = ω²`, to
//! strict positivity of the polynomial
//! `N(t) = ce(−t)·qe(−t) + t·co(−t)·qo(−t)` on `[0, ∞)`, where `(ce, co)`
//! and `(qe, qo)` are the even/odd parts of numerator and denominator. For
//! the special quintic `c(s) = s⁵ + (x−ε)s⁴ + ys³ + zs² + ps + ε` against a
//! monic sextic, `N` decomposes exactly as `t·g(t) + ε·h(t)` with `g` a
//! quartic whose coefficients are affine functionals of `(x, y, z, p)` and
//! `h` a fixed ε-tail of the denominator — the decomposition every synthesis
//! step in this crate is built on.

use crate::error::{Error, Result};
use crate::poly::routh::is_hurwitz;
use crate::poly::sturm::{is_positive_on_nonneg, PositivityVerdict};
use crate::poly::Polynomial;
use crate::rat::{rat_to_string, Rat};
use num_traits::{One, Zero};

/// A point `(x, y, z, p)` parametrizing candidate numerators.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePoint {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
    pub p: Rat,
}

impl CandidatePoint {
    pub fn new(x: Rat, y: Rat, z: Rat, p: Rat) -> Self {
        CandidatePoint { x, y, z, p }
    }

    /// First-quadrant test (all coordinates strictly positive).
    pub fn all_positive(&self) -> bool {
        use num_traits::Signed;
        self.x.is_positive() && self.y.is_positive() && self.z.is_positive() && self.p.is_positive()
    }

    /// Affine interpolation `self + w·(other − self)`.
    pub fn lerp(&self, other: &CandidatePoint, w: &Rat) -> CandidatePoint {
        let mix = |a: &Rat, b: &Rat| a + w * (b - a);
        CandidatePoint {
            x: mix(&self.x, &other.x),
            y: mix(&self.y, &other.y),
            z: mix(&self.z, &other.z),
            p: mix(&self.p, &other.p),
        }
    }

    /// Coordinates in `(x, y, z, p)` order.
    pub fn coords(&self) -> [Rat; 4] {
        [self.x.clone(), self.y.clone(), self.z.clone(), self.p.clone()]
    }
}

impl std::fmt::Display for CandidatePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            rat_to_string(&self.x),
            rat_to_string(&self.y),
            rat_to_string(&self.z),
            rat_to_string(&self.p)
        )
    }
}

/// The five coefficients of the quartic `g(t) = A·t⁴ + B·t³ + C·t² + D·t + E`
/// induced by a candidate point against a monic sextic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct GCoefficients {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
}

impl GCoefficients {
    /// Materializes `g(t)` as a polynomial (degree ≤ 4).
    pub fn to_polynomial(&self) -> Polynomial<Rat> {
        Polynomial::from_descending(vec![
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        ])
    }
}

/// Descending-order view `q₁..q₆` of a monic sextic (the coefficients below
/// the leading 1).
pub(crate) fn sextic_tail(q: &Polynomial<Rat>) -> [Rat; 6] {
    debug_assert_eq!(q.degree(), Some(6), "monic sextic required");
    debug_assert!(q.is_monic(), "monic sextic required");
    [
        q.coeff(5),
        q.coeff(4),
        q.coeff(3),
        q.coeff(2),
        q.coeff(1),
        q.coeff(0),
    ]
}

/// Evaluates the five affine functionals defining `g(t)` for a candidate
/// point against a monic degree-6 denominator:
/// `A = q₁−x`, `B = q₂x+z−q₁y−q₃`, `C = q₅+q₃y+q₁p−q₂z−q₄x`,
/// `D = q₆x+q₄z−q₃p−q₅y`, `E = q₅p−q₆z`.
pub fn g_coefficients(q: &Polynomial<Rat>, pt: &CandidatePoint) -> GCoefficients {
    let [q1, q2, q3, q4, q5, q6] = sextic_tail(q);
    let CandidatePoint { x, y, z, p } = pt;
    GCoefficients {
        a: &q1 - x,
        b: &q2 * x + z - &q1 * y - &q3,
        c: &q5 + &q3 * y + &q1 * p - &q2 * z - &q4 * x,
        d: &q6 * x + &q4 * z - &q3 * p - &q5 * y,
        e: &q5 * p - &q6 * z,
    }
}

/// The ε-tail of a monic sextic:
/// `h(t) = t⁵ − q₂t⁴ + (q₄−1)t³ + (q₂−q₆)t² − q₄t + q₆`.
///
/// This is exactly `∂N/∂ε` for the quintic family
/// `s⁵ + (x−ε)s⁴ + ys³ + zs² + ps + ε` (checked symbolically in tests).
/// For Hurwitz `q`, `h(0) = q₆ > 0`.
pub fn epsilon_tail(q: &Polynomial<Rat>) -> Polynomial<Rat> {
    let [_q1, q2, _q3, q4, _q5, q6] = sextic_tail(q);
    Polynomial::from_descending(vec![
        Rat::one(),
        -q2.clone(),
        &q4 - &Rat::one(),
        &q2 - &q6,
        -q4.clone(),
        q6.clone(),
    ])
}

/// Numerator of `Re[c(jω)/q(jω)]` as a polynomial in `t = ω²`:
/// `N(t) = ce(−t)·qe(−t) + t·co(−t)·qo(−t)`, so that
/// `Re[c(jω)/q(jω)] = N(ω²)/|q(jω)|²`.
///
/// Errors when `deg c > deg q` (an improper ratio cannot be SPR).
pub fn real_part_numerator(
    c: &Polynomial<Rat>,
    q: &Polynomial<Rat>,
) -> Result<Polynomial<Rat>> {
    match (c.degree(), q.degree()) {
        (Some(dc), Some(dq)) if dc > dq => Err(Error::Degree {
            expected: dq,
            got: Some(dc),
        }),
        _ => Ok(real_part_numerator_unchecked(c, q)),
    }
}

fn real_part_numerator_unchecked(c: &Polynomial<Rat>, q: &Polynomial<Rat>) -> Polynomial<Rat> {
    let (ce, co) = c.even_odd_split();
    let (qe, qo) = q.even_odd_split();
    let even_term = &ce.compose_neg() * &qe.compose_neg();
    let odd_term = (&co.compose_neg() * &qo.compose_neg()).shift_up(1);
    &even_term + &odd_term
}

/// `|q(jω)|²` as a polynomial in `t = ω²`: `qe(−t)² + t·qo(−t)²`.
pub fn modulus_squared(q: &Polynomial<Rat>) -> Polynomial<Rat> {
    real_part_numerator_unchecked(q, q)
}

/// Floating evaluation of `Re[c(jω)/q(jω)]` at a single frequency.
pub fn real_part_at(c: &Polynomial<f64>, q: &Polynomial<f64>, omega: f64) -> f64 {
    let u = omega * omega;
    let (ce, co) = c.even_odd_split();
    let (qe, qo) = q.even_odd_split();
    let ce_v = ce.compose_neg().eval(&u);
    let co_v = co.compose_neg().eval(&u);
    let qe_v = qe.compose_neg().eval(&u);
    let qo_v = qo.compose_neg().eval(&u);
    let n = ce_v * qe_v + u * co_v * qo_v;
    let m = qe_v * qe_v + u * qo_v * qo_v;
    n / m
}

/// Hurwitz classification of a numerator polynomial (degree + stability).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzClass {
    /// Hurwitz of degree 6.
    H6,
    /// Hurwitz of degree 5.
    H5,
    /// Anything else.
    Other,
}

/// Full decomposition of an SPR verdict, with diagnostics.
#[derive(Debug, Clone)]
pub struct SprReport {
    /// Numerator and denominator degrees are equal.
    pub degree_ok: bool,
    /// Denominator passes the Routh test.
    pub denominator_hurwitz: bool,
    /// Exact verdict on `N(t) > 0` for all `t ≥ 0`.
    pub numerator_positive: PositivityVerdict,
    /// Floating minimum of `N(t)/(1+t)⁶` over a diagnostic grid
    /// (degree-normalized relative margin).
    pub margin: f64,
    /// Stability class of the numerator polynomial itself.
    pub numerator_hurwitz_class: HurwitzClass,
}

impl SprReport {
    /// The SPR verdict: equal degrees, Hurwitz denominator, and a strictly
    /// positive real part along the whole imaginary axis.
    pub fn is_spr(&self) -> bool {
        self.degree_ok && self.denominator_hurwitz && self.numerator_positive.is_positive()
    }
}

/// Renders the full SPR verdict for `c(s)/q(s)`. Total: failures are
/// reported in the result, never raised.
pub fn verify_spr(c: &Polynomial<Rat>, q: &Polynomial<Rat>) -> SprReport {
    let degree_ok = match (c.degree(), q.degree()) {
        (Some(dc), Some(dq)) => dc == dq,
        _ => false,
    };
    let denominator_hurwitz = is_hurwitz(q);
    let n = real_part_numerator_unchecked(c, q);
    let numerator_positive = if n.is_zero() {
        PositivityVerdict::ZeroAt(crate::poly::sturm::RootInterval::exact(Rat::zero()))
    } else {
        is_positive_on_nonneg(&n)
    };
    let margin = diagnostic_margin(&n);
    let numerator_hurwitz_class = match c.degree() {
        Some(6) if is_hurwitz(c) => HurwitzClass::H6,
        Some(5) if is_hurwitz(c) => HurwitzClass::H5,
        _ => HurwitzClass::Other,
    };
    // Numerators of strict positive-real ratios with a degree-6 Hurwitz
    // denominator land in H⁶ ∪ H⁵ themselves; surface violations loudly in
    // debug builds (a provable consequence, checked rather than assumed).
    debug_assert!(
        !(denominator_hurwitz
            && q.degree() == Some(6)
            && numerator_positive.is_positive()
            && matches!(c.degree(), Some(5) | Some(6)))
            || matches!(
                numerator_hurwitz_class,
                HurwitzClass::H5 | HurwitzClass::H6
            ),
        "positive real part with stable denominator must make the numerator stable"
    );
    SprReport {
        degree_ok,
        denominator_hurwitz,
        numerator_positive,
        margin,
        numerator_hurwitz_class,
    }
}

/// Minimum of `N(t)/(1+t)⁶` over 1000 log-spaced grid points in
/// `[10⁻⁴, 10⁴]` plus the origin — a quick floating sanity margin.
fn diagnostic_margin(n: &Polynomial<Rat>) -> f64 {
    let nf = n.to_float();
    let mut min = nf.eval(&0.0);
    let (lo, hi) = (1e-4f64, 1e4f64);
    let steps = 999;
    for k in 0..=steps {
        let t = lo * (hi / lo).powf(k as f64 / steps as f64);
        let v = nf.eval(&t) / (1.0 + t).powi(6);
        if v < min {
            min = v;
        }
    }
    min
}

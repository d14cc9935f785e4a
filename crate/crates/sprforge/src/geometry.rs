//! Conic geometry of the candidate-point space.
//!
//! For a stable monic sextic `a(s)`, the five affine functionals
//! `A = a₁−x`, `B = a₂x+z−a₁y−a₃`, `C = a₅+a₃y+a₁p−a₂z−a₄x`,
//! `D = a₆x+a₄z−a₃p−a₅y`, `E = a₅p−a₆z` over `(x, y, z, p)` control the
//! quartic `g(t) = At⁴+Bt³+Ct²+Dt+E`. Three planar slices of the
//! discriminant quadrics
//!
//! * index 1: `B² − 4AC = 0` on the plane `{D = 0, E = 0}`,
//! * index 2: `C² − 4BD = 0` on the plane `{A = 0, E = 0}`,
//! * index 3: `D² − 4CE = 0` on the plane `{A = 0, B = 0}`,
//!
//! are each an ellipse lying in the open first quadrant, tangent to the two
//! lines where the respective cofactor functional vanishes. Interior points
//! of each ellipse make `t·g(t)` nonnegative on `t ≥ 0` (strictly positive
//! on `t > 0`), and because `g` is affine in the point, so does any convex
//! combination across ellipses of the same polynomial — the seed pool the
//! feasibility search starts from.

use crate::error::{Error, Result};
use crate::poly::routh::is_hurwitz;
use crate::poly::Polynomial;
use crate::rat::{rat, rat_i, Rat};
use crate::spr::{sextic_tail, CandidatePoint};
use num_traits::{One, Signed, Zero};

/// Affine form `c₀ + cx·x + cy·y + cz·z + cp·p` over candidate space.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    pub c0: Rat,
    pub cx: Rat,
    pub cy: Rat,
    pub cz: Rat,
    pub cp: Rat,
}

impl AffineForm {
    fn new(c0: Rat, cx: Rat, cy: Rat, cz: Rat, cp: Rat) -> Self {
        AffineForm { c0, cx, cy, cz, cp }
    }

    /// Linear coefficient for coordinate `i` in `(x, y, z, p)` order.
    pub fn coeff(&self, i: usize) -> &Rat {
        match i {
            0 => &self.cx,
            1 => &self.cy,
            2 => &self.cz,
            3 => &self.cp,
            _ => panic!("coordinate index out of range"),
        }
    }

    pub fn eval(&self, pt: &CandidatePoint) -> Rat {
        &self.c0 + &self.cx * &pt.x + &self.cy * &pt.y + &self.cz * &pt.z + &self.cp * &pt.p
    }

    fn eval_vec(&self, v: &[Rat; 4]) -> Rat {
        &self.c0 + self.lin_dot(v)
    }

    /// Dot product of the linear part with a direction vector.
    fn lin_dot(&self, v: &[Rat; 4]) -> Rat {
        &self.cx * &v[0] + &self.cy * &v[1] + &self.cz * &v[2] + &self.cp * &v[3]
    }

    /// Restriction to a chart: returns `(c₀', cu, cv)` with
    /// `form(chart(u, v)) = c₀' + cu·u + cv·v`.
    fn compose(&self, ch: &Chart) -> (Rat, Rat, Rat) {
        (
            self.eval_vec(&ch.base),
            self.lin_dot(&ch.du),
            self.lin_dot(&ch.dv),
        )
    }
}

/// The five functionals `A, B, C, D, E` of a monic sextic as affine forms,
/// in that order. Evaluating them at a point reproduces the quartic
/// coefficients from [`crate::spr::g_coefficients`].
pub fn g_functionals(a: &Polynomial<Rat>) -> [AffineForm; 5] {
    let [a1, a2, a3, a4, a5, a6] = sextic_tail(a);
    let o = Rat::zero;
    [
        AffineForm::new(a1.clone(), -Rat::one(), o(), o(), o()),
        AffineForm::new(-a3.clone(), a2.clone(), -a1.clone(), Rat::one(), o()),
        AffineForm::new(a5.clone(), -a4.clone(), a3.clone(), -a2.clone(), a1.clone()),
        AffineForm::new(o(), a6.clone(), -a5.clone(), a4.clone(), -a3.clone()),
        AffineForm::new(o(), o(), o(), -a6.clone(), a5.clone()),
    ]
}

/// Quadric of pattern `axis² − 4·left·right` over candidate space.
#[derive(Debug, Clone)]
pub struct QuadricForm {
    /// The squared form.
    pub axis: AffineForm,
    /// First cofactor; the curve is tangent to the line where it vanishes.
    pub left: AffineForm,
    /// Second cofactor; likewise a tangent line locus.
    pub right: AffineForm,
}

impl QuadricForm {
    pub fn eval(&self, pt: &CandidatePoint) -> Rat {
        let x = self.axis.eval(pt);
        &x * &x - rat_i(4) * self.left.eval(pt) * self.right.eval(pt)
    }
}

/// Affine parametrization `(u, v) ↦ base + u·du + v·dv` of a 2-plane, with
/// `free` naming the two coordinates of `(x, y, z, p)` that serve as `(u, v)`.
#[derive(Debug, Clone)]
pub struct Chart {
    pub base: [Rat; 4],
    pub du: [Rat; 4],
    pub dv: [Rat; 4],
    pub free: (usize, usize),
}

impl Chart {
    pub fn point_at(&self, u: &Rat, v: &Rat) -> CandidatePoint {
        let at = |i: usize| &self.base[i] + u * &self.du[i] + v * &self.dv[i];
        CandidatePoint::new(at(0), at(1), at(2), at(3))
    }

    /// Chart coordinates of a point assumed to lie on the plane (reads the
    /// free coordinates back).
    pub fn coords_of(&self, pt: &CandidatePoint) -> (Rat, Rat) {
        let c = pt.coords();
        (c[self.free.0].clone(), c[self.free.1].clone())
    }
}

/// Plane conic `uu·u² + uv·uv + vv·v² + cu·u + cv·v + c0`.
#[derive(Debug, Clone)]
pub struct Conic2 {
    pub uu: Rat,
    pub uv: Rat,
    pub vv: Rat,
    pub cu: Rat,
    pub cv: Rat,
    pub c0: Rat,
}

impl Conic2 {
    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        &self.uu * u * u
            + &self.uv * u * v
            + &self.vv * v * v
            + &self.cu * u
            + &self.cv * v
            + &self.c0
    }

    /// Conic discriminant `uv² − 4·uu·vv`; strictly negative for ellipses.
    pub fn discriminant(&self) -> Rat {
        &self.uv * &self.uv - rat_i(4) * &self.uu * &self.vv
    }

    /// Center of a non-degenerate central conic.
    pub fn center(&self) -> Option<(Rat, Rat)> {
        let det = rat_i(4) * &self.uu * &self.vv - &self.uv * &self.uv;
        if det.is_zero() {
            return None;
        }
        let u = (&self.uv * &self.cv - rat_i(2) * &self.vv * &self.cu) / &det;
        let v = (&self.uv * &self.cu - rat_i(2) * &self.uu * &self.cv) / &det;
        Some((u, v))
    }
}

/// One of the three elliptic slices for a stable sextic: the 2-plane, the
/// ambient quadric, a chart of the plane, the induced plane conic, and an
/// exact rational point on the curve used as a sampling anchor.
#[derive(Debug, Clone)]
pub struct ConicRegion {
    pub index: u8,
    pub plane: [AffineForm; 2],
    pub quadric: QuadricForm,
    pub chart: Chart,
    pub conic: Conic2,
    /// Chart coordinates of an exact point on the curve (a tangency point).
    pub anchor: (Rat, Rat),
}

impl ConicRegion {
    /// Ellipse classification of the plane conic.
    pub fn is_ellipse(&self) -> bool {
        self.conic.discriminant().is_negative()
    }
}

/// The two points where an elliptic slice touches its tangent lines, plus
/// the line systems themselves (three affine equations each).
#[derive(Debug, Clone)]
pub struct TangencyPair {
    pub first: CandidatePoint,
    pub second: CandidatePoint,
    pub tangent_lines: [[AffineForm; 3]; 2],
}

fn validate_stable_sextic(a: &Polynomial<Rat>) -> Result<()> {
    match a.degree() {
        Some(6) => {}
        d => return Err(Error::Degree { expected: 6, got: d }),
    }
    if !a.is_monic() {
        return Err(Error::NotMonic(format!("leading coefficient {}", a.leading())));
    }
    if !is_hurwitz(a) {
        return Err(Error::NotHurwitz(format!("{a}")));
    }
    Ok(())
}

/// Builds the elliptic slice of the given index for a stable monic sextic.
pub fn conic_region(a: &Polynomial<Rat>, index: u8) -> Result<ConicRegion> {
    validate_stable_sextic(a)?;
    let [fa, fb, fc, fd, fe] = g_functionals(a);
    // Plane, quadric pattern, and pivot preference per index. Pivots are
    // pairs of coordinates solved from the plane equations; the first pair
    // with a nonzero determinant wins, so charts are deterministic.
    let (plane, axis, left, right, pref): (_, _, _, _, &[(usize, usize)]) = match index {
        1 => (
            [fd, fe],
            fb,
            fa,
            fc,
            &[(2, 3), (0, 3), (0, 2), (1, 2), (1, 3), (0, 1)][..],
        ),
        2 => ([fa, fe], fc, fb, fd, &[(0, 3), (0, 2)][..]),
        3 => ([fa, fb], fd, fc, fe, &[(0, 2)][..]),
        _ => {
            return Err(Error::Range(format!(
                "conic index must be 1, 2, or 3, got {index}"
            )))
        }
    };
    let chart = build_chart(&plane, pref).ok_or_else(|| Error::DegenerateDenominator {
        context: format!("conic_region(index={index})"),
        detail: "no coordinate pair solves the plane equations".into(),
    })?;
    let quadric = QuadricForm { axis, left, right };
    let conic = conic_in_chart(&quadric, &chart);
    let tail = sextic_tail(a);
    let anchor_pt =
        tangency_first(&tail, index).or_else(|_| tangency_second(&tail, index))?;
    debug_assert!(plane.iter().all(|f| f.eval(&anchor_pt).is_zero()));
    debug_assert!(quadric.eval(&anchor_pt).is_zero());
    let anchor = chart.coords_of(&anchor_pt);
    Ok(ConicRegion {
        index,
        plane,
        quadric,
        chart,
        conic,
        anchor,
    })
}

/// Solves the two plane equations for the first pivot pair with nonzero
/// determinant, leaving the remaining two coordinates free.
fn build_chart(planes: &[AffineForm; 2], preference: &[(usize, usize)]) -> Option<Chart> {
    for &(i, j) in preference {
        let m00 = planes[0].coeff(i);
        let m01 = planes[0].coeff(j);
        let m10 = planes[1].coeff(i);
        let m11 = planes[1].coeff(j);
        let det = m00 * m11 - m01 * m10;
        if det.is_zero() {
            continue;
        }
        let free: Vec<usize> = (0..4).filter(|k| *k != i && *k != j).collect();
        let (f1, f2) = (free[0], free[1]);
        let solve = |r0: Rat, r1: Rat| -> (Rat, Rat) {
            ((&r0 * m11 - m01 * &r1) / &det, (m00 * &r1 - &r0 * m10) / &det)
        };
        let zero4 = || [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        let (b_i, b_j) = solve(-planes[0].c0.clone(), -planes[1].c0.clone());
        let (du_i, du_j) = solve(-planes[0].coeff(f1).clone(), -planes[1].coeff(f1).clone());
        let (dv_i, dv_j) = solve(-planes[0].coeff(f2).clone(), -planes[1].coeff(f2).clone());
        let mut base = zero4();
        base[i] = b_i;
        base[j] = b_j;
        let mut du = zero4();
        du[i] = du_i;
        du[j] = du_j;
        du[f1] = Rat::one();
        let mut dv = zero4();
        dv[i] = dv_i;
        dv[j] = dv_j;
        dv[f2] = Rat::one();
        return Some(Chart {
            base,
            du,
            dv,
            free: (f1, f2),
        });
    }
    None
}

/// Expands `axis² − 4·left·right` restricted to the chart into the six
/// plane-conic coefficients.
fn conic_in_chart(q: &QuadricForm, ch: &Chart) -> Conic2 {
    let (w0, wu, wv) = q.left.compose(ch);
    let (x0, xu, xv) = q.axis.compose(ch);
    let (y0, yu, yv) = q.right.compose(ch);
    let four = rat_i(4);
    let two = rat_i(2);
    Conic2 {
        uu: &xu * &xu - &four * &wu * &yu,
        uv: &two * &xu * &xv - &four * (&wu * &yv + &wv * &yu),
        vv: &xv * &xv - &four * &wv * &yv,
        cu: &two * &x0 * &xu - &four * (&w0 * &yu + &wu * &y0),
        cv: &two * &x0 * &xv - &four * (&w0 * &yv + &wv * &y0),
        c0: &x0 * &x0 - &four * &w0 * &y0,
    }
}

fn nonzero_denominator(d: Rat, index: u8, which: &str) -> Result<Rat> {
    if d.is_zero() {
        Err(Error::DegenerateDenominator {
            context: format!("tangency(index={index}, {which})"),
            detail: "closed-form denominator vanished".into(),
        })
    } else {
        Ok(d)
    }
}

/// First tangency point (on the line where the quadric's first cofactor
/// vanishes), from the closed forms.
fn tangency_first(t: &[Rat; 6], index: u8) -> Result<CandidatePoint> {
    let [a1, a2, a3, a4, a5, a6] = t;
    match index {
        1 => {
            let den = a5 * a5 + a3 * a6 * a1 - a5 * a4 * a1;
            let den = nonzero_denominator(den, 1, "first")?;
            let y = (a5 * a6 * a1 - a5 * a4 * a2 * a1 + a5 * a4 * a3 + a3 * a6 * a2 * a1
                - a3 * a3 * a6)
                / &den;
            let inner = a5 * a2 * a1 - a6 * a1 * a1 - a5 * a3;
            let z = -(a5 * &inner) / &den;
            let p = -(a6 * &inner) / &den;
            Ok(CandidatePoint::new(a1.clone(), y, z, p))
        }
        2 => {
            let den = a1 * a1 * a6 + a3 * a5 - a2 * a1 * a5;
            let den = nonzero_denominator(den, 2, "first")?;
            let y = (a5 * a4 * a1 + a5 * a2 * a3 + a6 * a1 * a1 * a2
                - a5 * a5
                - a5 * a2 * a2 * a1
                - a1 * a6 * a3)
                / &den;
            let inner = a3 * a3 - a3 * a2 * a1 + a4 * a1 * a1 - a1 * a5;
            let z = a5 * &inner / &den;
            let p = a6 * &inner / &den;
            Ok(CandidatePoint::new(a1.clone(), y, z, p))
        }
        3 => {
            let den = a3 * a3 - a3 * a2 * a1 + a4 * a1 * a1 - a1 * a5;
            let den = nonzero_denominator(den, 3, "first")?;
            let y = -(a3 * a5 + a3 * a2 * a2 * a1 + a1 * a1 * a6
                - a2 * a3 * a3
                - a4 * a2 * a1 * a1)
                / &den;
            let z = -(a2 * a1 * a3 * a3 - a2 * a1 * a1 * a5
                + rat_i(2) * a1 * a3 * a5
                + a1 * a1 * a1 * a6
                - a3 * a3 * a3
                - a3 * a4 * a1 * a1)
                / &den;
            let p = -(rat_i(2) * a5 * a4 * a1 + a4 * a1 * a2 * a3 - a5 * a5
                - a5 * a2 * a2 * a1
                + a5 * a2 * a3
                - a1 * a6 * a3
                + a6 * a1 * a1 * a2
                - a4 * a3 * a3
                - a4 * a4 * a1 * a1)
                / &den;
            Ok(CandidatePoint::new(a1.clone(), y, z, p))
        }
        _ => Err(Error::Range(format!("conic index out of range: {index}"))),
    }
}

/// Second tangency point (on the line where the quadric's second cofactor
/// vanishes), from the closed forms.
fn tangency_second(t: &[Rat; 6], index: u8) -> Result<CandidatePoint> {
    let [a1, a2, a3, a4, a5, a6] = t;
    match index {
        1 => {
            let den = a5 * a5 * a2 * a2 - a5 * a5 * a4 + a5 * a4 * a4 * a1
                - rat_i(2) * a5 * a6 * a1 * a2
                - a3 * a6 * a1 * a4
                + a6 * a6 * a1 * a1
                + a5 * a3 * a6
                - a5 * a3 * a4 * a2
                + a3 * a3 * a6 * a2;
            let den = nonzero_denominator(den, 1, "second")?;
            let x = (a5 * a5 * a4 * a1 + a3 * a3 * a3 * a6 + a5 * a5 * a2 * a3
                - a5 * a5 * a5
                - a5 * a3 * a3 * a4
                - rat_i(2) * a5 * a3 * a6 * a1)
                / &den;
            let y = (a6 * a4 * a3 * a3 - a3 * a6 * a6 * a1 - a3 * a5 * a4 * a4 - a5 * a5 * a6
                + a5 * a5 * a4 * a2)
                / &den;
            let inner = a2 * a5 * a5 - a5 * a6 * a1 - a5 * a4 * a3 + a3 * a3 * a6;
            let z = a5 * &inner / &den;
            let p = a6 * &inner / &den;
            Ok(CandidatePoint::new(x, y, z, p))
        }
        2 => {
            let den = a5 * a4 * a3 + a5 * a6 * a1 - a5 * a5 * a2 - a3 * a3 * a6;
            let den = nonzero_denominator(den, 2, "second")?;
            let y = (a4 * a4 * a5 * a1 - a3 * a4 * a1 * a6 - a5 * a5 * a4 + a3 * a5 * a6
                - a2 * a1 * a5 * a6
                + a1 * a1 * a6 * a6)
                / &den;
            let inner = a5 * a4 * a1 - a1 * a6 * a3 - a5 * a5;
            let z = a5 * &inner / &den;
            let p = a6 * &inner / &den;
            Ok(CandidatePoint::new(a1.clone(), y, z, p))
        }
        3 => {
            let den = a5 * a4 * a1 - a1 * a6 * a3 - a5 * a5;
            let den = nonzero_denominator(den, 3, "second")?;
            let y = -(a5 * a6 * a1 - a5 * a4 * a2 * a1 + a5 * a4 * a3 + a3 * a6 * a2 * a1
                - a3 * a3 * a6)
                / &den;
            let inner = a1 * a1 * a6 + a3 * a5 - a2 * a1 * a5;
            let z = -(a5 * &inner) / &den;
            let p = -(a6 * &inner) / &den;
            Ok(CandidatePoint::new(a1.clone(), y, z, p))
        }
        _ => Err(Error::Range(format!("conic index out of range: {index}"))),
    }
}

/// Both tangency points of an elliptic slice together with their tangent
/// line systems, evaluated from the closed forms in exact arithmetic.
pub fn tangency_points(a: &Polynomial<Rat>, index: u8) -> Result<TangencyPair> {
    validate_stable_sextic(a)?;
    let tail = sextic_tail(a);
    let first = tangency_first(&tail, index)?;
    let second = tangency_second(&tail, index)?;
    let [fa, fb, fc, fd, fe] = g_functionals(a);
    // Tangent lines: the plane equations plus the vanishing cofactor.
    let (p0, p1, w, y) = match index {
        1 => (fd, fe, fa, fc),
        2 => (fa, fe, fb, fd),
        3 => (fa, fb, fc, fe),
        _ => unreachable!("validated above"),
    };
    let tangent_lines = [
        [p0.clone(), p1.clone(), w],
        [p0, p1, y],
    ];
    Ok(TangencyPair {
        first,
        second,
        tangent_lines,
    })
}

/// Deterministic enumeration of chord directions through the anchor:
/// `(1,0), (0,1), (1,±1), (1,±2), (2,±1), …` — pairwise non-parallel.
fn chord_direction(k: usize) -> (i64, i64) {
    match k {
        0 => (1, 0),
        1 => (0, 1),
        _ => {
            // blocks of four: (1, j), (1, -j), (j, 1), (j, -1) for j ≥ 1,
            // skipping the (j,±1) half when j = 1 (duplicates of (1,±1))
            let idx = k - 2;
            if idx < 2 {
                (1, if idx == 0 { 1 } else { -1 })
            } else {
                let idx = idx - 2;
                let j = (idx / 4 + 2) as i64;
                match idx % 4 {
                    0 => (1, j),
                    1 => (1, -j),
                    2 => (j, 1),
                    _ => (j, -1),
                }
            }
        }
    }
}

/// Samples `n` points strictly inside an elliptic slice.
///
/// Each chord through the anchor meets the conic in exactly one further
/// rational point; those points are pulled toward the center by the factor
/// `1023/1024`, so every sample satisfies the plane equations exactly and
/// the quadric strictly (`< 0`).
pub fn sample_ellipse(region: &ConicRegion, n: usize) -> Vec<CandidatePoint> {
    debug_assert!(region.is_ellipse());
    let mut out = Vec::with_capacity(n);
    let conic = &region.conic;
    let (u0, v0) = &region.anchor;
    let center = match conic.center() {
        Some(c) => c,
        // Non-central conic: fall back to the anchor itself (cannot occur
        // for an ellipse, which always has a center).
        None => (u0.clone(), v0.clone()),
    };
    let shrink = rat(1023, 1024);
    // gradient of the conic at the anchor, for the tangency test below
    let grad_u = rat_i(2) * &conic.uu * u0 + &conic.uv * v0 + &conic.cu;
    let grad_v = rat_i(2) * &conic.vv * v0 + &conic.uv * u0 + &conic.cv;
    let mut k = 0usize;
    let mut skipped = 0usize;
    while out.len() < n {
        let (di, dj) = chord_direction(k);
        k += 1;
        let du = rat_i(di);
        let dv = rat_i(dj);
        let alpha = &conic.uu * &du * &du + &conic.uv * &du * &dv + &conic.vv * &dv * &dv;
        let beta = &grad_u * &du + &grad_v * &dv;
        if beta.is_zero() || alpha.is_zero() {
            // chord tangent at the anchor (at most one direction for a real
            // ellipse); a second skip means the conic is degenerate, so pad
            // with the anchor rather than loop forever
            skipped += 1;
            if skipped >= 2 {
                while out.len() < n {
                    out.push(region.chart.point_at(u0, v0));
                }
                break;
            }
            continue;
        }
        let tstar = -&beta / &alpha;
        let pu = u0 + &tstar * &du;
        let pv = v0 + &tstar * &dv;
        let ru = &center.0 + &shrink * (&pu - &center.0);
        let rv = &center.1 + &shrink * (&pv - &center.1);
        out.push(region.chart.point_at(&ru, &rv));
    }
    out
}

/// Pools candidate points for the feasibility search: samples all three
/// elliptic slices of each polynomial and emits the 1/4, 1/2, and 3/4
/// points of segments joining matched samples from distinct slices of the
/// same polynomial. Output size is `2·3·3·n` when every slice builds
/// (3 slice pairs × 3 offsets × 2 polynomials × n matched samples); slices
/// whose closed forms degenerate are skipped.
pub fn omega_seed_candidates(
    a: &Polynomial<Rat>,
    b: &Polynomial<Rat>,
    n: usize,
) -> Result<Vec<CandidatePoint>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let offsets = [rat(1, 4), rat(1, 2), rat(3, 4)];
    let mut pool = Vec::new();
    for q in [a, b] {
        let mut samples: Vec<Option<Vec<CandidatePoint>>> = Vec::new();
        for index in 1..=3u8 {
            match conic_region(q, index) {
                Ok(region) => samples.push(Some(sample_ellipse(&region, n))),
                Err(Error::DegenerateDenominator { .. }) => samples.push(None),
                Err(e) => return Err(e),
            }
        }
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if let (Some(si), Some(sj)) = (&samples[i], &samples[j]) {
                for (pi, pj) in si.iter().zip(sj) {
                    for w in &offsets {
                        pool.push(pi.lerp(pj, w));
                    }
                }
            }
        }
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_desc_i64;
    use crate::poly::sturm::positive_on_open_pos;
    use crate::spr::g_coefficients;
    use crate::stability::random_stable_sextic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exact solver for a system of affine equations over `(x, y, z, p)`:
    /// returns a particular solution and a nullspace basis, or `None` when
    /// the system is inconsistent.
    fn solve_affine_system(rows: &[AffineForm]) -> Option<(Vec<[Rat; 4]>, [Rat; 4])> {
        let m = rows.len();
        let mut mat: Vec<[Rat; 5]> = rows
            .iter()
            .map(|f| {
                [
                    f.cx.clone(),
                    f.cy.clone(),
                    f.cz.clone(),
                    f.cp.clone(),
                    -f.c0.clone(),
                ]
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;
        for col in 0..4 {
            let Some(pr) = (r..m).find(|&row| !mat[row][col].is_zero()) else {
                continue;
            };
            mat.swap(r, pr);
            let inv = Rat::one() / mat[r][col].clone();
            for v in mat[r][col..].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = mat[r].clone();
            for (row, entries) in mat.iter_mut().enumerate() {
                if row != r && !entries[col].is_zero() {
                    let factor = entries[col].clone();
                    for (v, pv) in entries[col..].iter_mut().zip(&pivot_row[col..]) {
                        *v = &*v - &factor * pv;
                    }
                }
            }
            pivots.push((r, col));
            r += 1;
            if r == m {
                break;
            }
        }
        if (r..m).any(|row| !mat[row][4].is_zero()) {
            return None;
        }
        let zero4 = || [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        let mut particular = zero4();
        for &(row, col) in &pivots {
            particular[col] = mat[row][4].clone();
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for fc in (0..4).filter(|c| !pivot_cols.contains(c)) {
            let mut v = zero4();
            v[fc] = Rat::one();
            for &(row, col) in &pivots {
                v[col] = -mat[row][fc].clone();
            }
            basis.push(v);
        }
        Some((basis, particular))
    }

    fn binom_sextic() -> Polynomial<Rat> {
        let lin = poly_desc_i64(&[1, 1]);
        let sq = &lin * &lin;
        &(&sq * &sq) * &sq
    }

    fn point(x: Rat, y: Rat, z: Rat, p: Rat) -> CandidatePoint {
        CandidatePoint::new(x, y, z, p)
    }

    /// Restricts the quadric to a tangent line and returns the univariate
    /// quadratic coefficients `(α, β, γ)` of `quadric(base + t·dir)`.
    fn quadric_on_line(
        q: &QuadricForm,
        base: &[Rat; 4],
        dir: &[Rat; 4],
    ) -> (Rat, Rat, Rat) {
        let w0 = q.left.eval_vec(base);
        let wd = q.left.lin_dot(dir);
        let x0 = q.axis.eval_vec(base);
        let xd = q.axis.lin_dot(dir);
        let y0 = q.right.eval_vec(base);
        let yd = q.right.lin_dot(dir);
        let four = rat_i(4);
        (
            &xd * &xd - &four * &wd * &yd,
            rat_i(2) * &x0 * &xd - &four * (&w0 * &yd + &wd * &y0),
            &x0 * &x0 - &four * &w0 * &y0,
        )
    }

    #[test]
    fn golden_tangency_pentagon() {
        // For the binomial sextic the six closed forms produce five distinct
        // points; at each, four of the five functionals vanish and the
        // remaining one is a power-of-two rational.
        let q = binom_sextic();
        let t1 = tangency_points(&q, 1).unwrap();
        let t2 = tangency_points(&q, 2).unwrap();
        let t3 = tangency_points(&q, 3).unwrap();
        assert_eq!(t1.first, point(rat_i(6), rat(38, 3), rat_i(6), rat_i(1)));
        assert_eq!(
            t1.second,
            point(rat(122, 63), rat(34, 21), rat(2, 3), rat(1, 9))
        );
        assert_eq!(t2.first, point(rat_i(6), rat_i(14), rat_i(14), rat(7, 3)));
        assert_eq!(t2.second, point(rat_i(6), rat_i(6), rat(18, 7), rat(3, 7)));
        assert_eq!(
            t3.first,
            point(rat_i(6), rat(102, 7), rat(122, 7), rat_i(9))
        );
        // the two slices sharing a tangent line system touch it at the same
        // point, so these closed forms must agree exactly
        assert_eq!(t3.second, t1.first);

        // the one surviving functional at each point
        let survivors = [
            (&t1.first, 2usize, rat(256, 3)),  // quartic coefficient C
            (&t1.second, 0, rat(256, 63)),     // A
            (&t2.first, 3, rat(256, 3)),       // D
            (&t2.second, 1, rat(256, 7)),      // B
            (&t3.first, 4, rat(256, 7)),       // E
        ];
        let forms = g_functionals(&q);
        for (pt, keep, value) in survivors {
            for (i, f) in forms.iter().enumerate() {
                let v = f.eval(pt);
                if i == keep {
                    assert_eq!(v, value, "functional {i} at {pt}");
                } else {
                    assert!(v.is_zero(), "functional {i} should vanish at {pt}");
                }
            }
            assert!(pt.all_positive());
        }
    }

    #[test]
    fn golden_region_classifies_as_ellipse() {
        let q = binom_sextic();
        for index in 1..=3 {
            let region = conic_region(&q, index).unwrap();
            assert!(region.is_ellipse(), "index {index}");
            assert!(region.conic.discriminant().is_negative());
            // anchor lies on the conic exactly
            let (u0, v0) = &region.anchor;
            assert!(region.conic.eval(u0, v0).is_zero());
        }
        // shape and stability violations are rejected up front
        assert!(matches!(
            conic_region(&poly_desc_i64(&[1, 1]), 1),
            Err(Error::Degree { .. })
        ));
        let unstable = poly_desc_i64(&[1, 1, 1, 1, 1, 1, 2]);
        assert!(matches!(
            conic_region(&unstable, 1),
            Err(Error::NotHurwitz(_))
        ));
        assert!(conic_region(&q, 4).is_err());
    }

    #[test]
    fn functionals_match_quartic_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e0_0001);
        for _ in 0..20 {
            let q = random_stable_sextic(rng.gen(), &rat_i(1));
            let pt = point(
                rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
            );
            let forms = g_functionals(&q);
            let g = g_coefficients(&q, &pt);
            assert_eq!(forms[0].eval(&pt), g.a);
            assert_eq!(forms[1].eval(&pt), g.b);
            assert_eq!(forms[2].eval(&pt), g.c);
            assert_eq!(forms[3].eval(&pt), g.d);
            assert_eq!(forms[4].eval(&pt), g.e);
        }
    }

    #[test]
    fn charts_parametrize_their_planes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e0_0002);
        let mut polys = vec![binom_sextic()];
        for _ in 0..15 {
            polys.push(random_stable_sextic(rng.gen(), &rat_i(1)));
        }
        for q in &polys {
            for index in 1..=3 {
                let region = conic_region(q, index).unwrap();
                for plane in &region.plane {
                    let (c0, cu, cv) = plane.compose(&region.chart);
                    assert!(c0.is_zero() && cu.is_zero() && cv.is_zero());
                }
                // chart round-trip through the anchor
                let (u0, v0) = &region.anchor;
                let back = region.chart.point_at(u0, v0);
                let (u1, v1) = region.chart.coords_of(&back);
                assert_eq!((u0, v0), (&u1, &v1));
            }
        }
    }

    #[test]
    fn corpus_ellipse_classification_and_tangency_exactness() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e0_0003);
        for sample in 0..200 {
            let q = random_stable_sextic(rng.gen(), &rat_i(1));
            for index in 1..=3u8 {
                let region = conic_region(&q, index).unwrap();
                assert!(
                    region.conic.discriminant().is_negative(),
                    "sample {sample} index {index} is not an ellipse"
                );
                let pair = tangency_points(&q, index).unwrap();
                for (which, pt) in [("first", &pair.first), ("second", &pair.second)] {
                    assert!(
                        pt.all_positive(),
                        "sample {sample} index {index} {which} point left the first quadrant: {pt}"
                    );
                    for plane in &region.plane {
                        assert!(plane.eval(pt).is_zero());
                    }
                    assert!(region.quadric.eval(pt).is_zero());
                }

                // double-root tangency and solver cross-checks on a subset
                // (pure rational arithmetic, but numerators grow quickly)
                if sample < 40 {
                    for (li, pt) in [(0, &pair.first), (1, &pair.second)] {
                        let line = &pair.tangent_lines[li];
                        let (basis, base) =
                            solve_affine_system(line).expect("tangent line is consistent");
                        assert_eq!(basis.len(), 1, "tangent locus must be a line");
                        let (alpha, beta, gamma) = quadric_on_line(
                            &region.quadric,
                            &base,
                            &basis[0],
                        );
                        assert!(!alpha.is_zero());
                        // tangency ⟺ the restricted quadratic has a double root
                        assert!(
                            (&beta * &beta - rat_i(4) * &alpha * &gamma).is_zero(),
                            "line {li} of index {index} is not tangent"
                        );
                        let tstar = -&beta / (rat_i(2) * &alpha);
                        let touched = point(
                            &base[0] + &tstar * &basis[0][0],
                            &base[1] + &tstar * &basis[0][1],
                            &base[2] + &tstar * &basis[0][2],
                            &base[3] + &tstar * &basis[0][3],
                        );
                        assert_eq!(&touched, pt, "double root lands on the closed form");

                        // independent derivation: the tangency point is the
                        // unique solution of the line equations plus the
                        // vanishing axis form
                        let mut four = line.to_vec();
                        four.push(region.quadric.axis.clone());
                        let (null4, sol) =
                            solve_affine_system(&four).expect("axis system is consistent");
                        assert!(null4.is_empty(), "tangency point must be unique");
                        let solved = point(
                            sol[0].clone(),
                            sol[1].clone(),
                            sol[2].clone(),
                            sol[3].clone(),
                        );
                        assert_eq!(&solved, pt);
                    }
                }
            }
        }
    }

    #[test]
    fn chart_pivot_fallback_engages_on_singular_blocks() {
        // Synthetic plane pair whose generic (z, p) block is singular, so
        // the builder must fall through to the (x, p) pivots. Built from
        // raw coefficients rather than a stable sextic: stability forces
        // the generic block to be invertible.
        let zero = Rat::zero;
        let d = AffineForm::new(zero(), rat_i(1), -rat_i(2), zero(), zero());
        let e = AffineForm::new(zero(), zero(), zero(), zero(), rat_i(3));
        let planes = [d, e];
        let pref = &[(2usize, 3usize), (0, 3), (0, 2), (1, 2), (1, 3), (0, 1)][..];
        let chart = build_chart(&planes, pref).unwrap();
        assert_eq!(chart.free, (1, 2), "fallback pivots (x, p) free (y, z)");
        for plane in &planes {
            let (c0, cu, cv) = plane.compose(&chart);
            assert!(c0.is_zero() && cu.is_zero() && cv.is_zero());
        }
        // fully singular system has no chart
        let f1 = AffineForm::new(rat_i(1), zero(), zero(), zero(), zero());
        let f2 = AffineForm::new(zero(), rat_i(1), rat_i(1), rat_i(1), rat_i(1));
        assert!(build_chart(&[f1, f2], pref).is_none());
    }

    #[test]
    fn ellipse_samples_lie_strictly_inside_in_the_first_quadrant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e0_0004);
        let mut polys = vec![binom_sextic()];
        for _ in 0..10 {
            polys.push(random_stable_sextic(rng.gen(), &rat_i(1)));
        }
        for q in &polys {
            for index in 1..=3u8 {
                let region = conic_region(q, index).unwrap();
                let samples = sample_ellipse(&region, 7);
                assert_eq!(samples.len(), 7);
                for (i, pt) in samples.iter().enumerate() {
                    assert!(pt.all_positive(), "sample {i} of index {index}: {pt}");
                    for plane in &region.plane {
                        assert!(plane.eval(pt).is_zero(), "plane residual at sample {i}");
                    }
                    assert!(
                        region.quadric.eval(pt).is_negative(),
                        "sample {i} of index {index} is not strictly interior"
                    );
                    for other in &samples[..i] {
                        assert_ne!(pt, other, "chord samples must be distinct");
                    }
                }
                // cross-module view: index-1 interior points kill the last
                // two quartic coefficients and have negative discriminant
                if index == 1 {
                    for pt in &samples {
                        let g = g_coefficients(q, pt);
                        assert!(g.d.is_zero() && g.e.is_zero());
                        assert!((&g.b * &g.b - rat_i(4) * &g.a * &g.c).is_negative());
                    }
                }
            }
        }
    }

    #[test]
    fn seed_candidates_pass_their_own_screen() {
        // Interior points of each slice make t·g(t) strictly positive on
        // (0, ∞), and g is affine in the point, so every segment mix of two
        // slices of the same polynomial passes the same screen.
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e0_0005);
        let mut polys = vec![binom_sextic()];
        for _ in 0..5 {
            polys.push(random_stable_sextic(rng.gen(), &rat_i(1)));
        }
        for q in &polys {
            let pool = omega_seed_candidates(q, q, 3).unwrap();
            assert_eq!(pool.len(), 2 * 3 * 3 * 3);
            for pt in &pool {
                let g = g_coefficients(q, pt).to_polynomial();
                assert!(
                    positive_on_open_pos(&g).is_positive(),
                    "seed {pt} failed its own screen"
                );
            }
        }
        assert!(omega_seed_candidates(&binom_sextic(), &binom_sextic(), 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn affine_solver_handles_rank_deficiency_and_inconsistency() {
        let zero = Rat::zero;
        // x + y = 2 twice: rank 1, nullspace dimension 3
        let f = AffineForm::new(-rat_i(2), rat_i(1), rat_i(1), zero(), zero());
        let (basis, part) = solve_affine_system(&[f.clone(), f.clone()]).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(f.eval_vec(&part).is_zero());
        for v in &basis {
            assert!(f.lin_dot(v).is_zero());
        }
        // inconsistent pair
        let g = AffineForm::new(-rat_i(3), rat_i(1), rat_i(1), zero(), zero());
        assert!(solve_affine_system(&[f, g]).is_none());
    }
}

//! Sturm chains, exact real-root counting and isolation, and certified
//! positivity verdicts on the nonnegative axis.
//!
//! Two chains are kept per query polynomial. The *raw* chain is the canonical
//! sequence `p, p′, −rem(…), …` whose consecutive elements satisfy the
//! negated-remainder recurrence exactly; its last nonzero element is (a
//! constant multiple of) `gcd(p, p′)`. The *counting* chain is the Sturm
//! chain of the squarefree part, with every element rescaled to a primitive
//! integer polynomial — positive rescaling preserves every sign property
//! while keeping coefficient growth in check.
//!
//! Sign variations use the skip-zero convention, which makes
//! `count_roots(lo, hi)` exactly the number of distinct real roots in the
//! half-open interval `(lo, hi]` — endpoints are allowed to be roots and no
//! perturbation of the query point is ever needed.

use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rat::{sign_of, Rat};

/// A query point for root counting: finite rational or ±∞.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// An isolating interval for one distinct real root.
///
/// `lo == hi` means the root is the exact rational `lo`; otherwise the root
/// lies strictly inside `(lo, hi)` and the squarefree polynomial changes sign
/// across the interval, so bisection refines it to any width.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn exact(r: Rat) -> Self {
        RootInterval { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }
}

/// Sturm chain bundle for one polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    source: Polynomial<Rat>,
    counting: Vec<Polynomial<Rat>>,
    gcd: Polynomial<Rat>,
    squarefree: Polynomial<Rat>,
    // Sign-variation counts at the two infinities, cached at construction —
    // every unbounded query reuses them.
    vars_neg_inf: usize,
    vars_pos_inf: usize,
}

/// Rescales to a primitive integer polynomial by a positive rational factor
/// (clears denominators, divides out the numerator content).
fn primitive_scaled(p: &Polynomial<Rat>) -> Polynomial<Rat> {
    p.primitive_part()
}

fn canonical_chain(p: &Polynomial<Rat>) -> Vec<Polynomial<Rat>> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(-&rem);
    }
    chain
}

/// Like [`canonical_chain`] but each remainder is rescaled to primitive
/// integer form before continuing (positive factors only).
fn scaled_chain(p: &Polynomial<Rat>) -> Vec<Polynomial<Rat>> {
    let mut chain = vec![primitive_scaled(p)];
    let d = chain[0].derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(primitive_scaled(&d));
    loop {
        let n = chain.len();
        let (_, rem) = chain[n - 2].div_rem(&chain[n - 1]);
        if rem.is_zero() {
            break;
        }
        chain.push(primitive_scaled(&-&rem));
    }
    chain
}

fn sign_at_bound(p: &Polynomial<Rat>, at: &Bound) -> i8 {
    match at {
        Bound::Finite(x) => sign_of(&p.eval(x)),
        Bound::PosInf => sign_of(&p.leading()),
        Bound::NegInf => {
            let s = sign_of(&p.leading());
            match p.degree() {
                Some(d) if d % 2 == 1 => -s,
                _ => s,
            }
        }
    }
}

fn variations(chain: &[Polynomial<Rat>], at: &Bound) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for p in chain {
        let s = sign_at_bound(p, at);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    /// Builds the chain bundle. Errors on the zero polynomial.
    pub fn new(p: &Polynomial<Rat>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Range(
                "Sturm chain of the zero polynomial is undefined".into(),
            ));
        }
        // The bundle is built from the primitive rescale of `p`: same
        // roots and signs, dramatically smaller integers when the input
        // coefficients carry large numerators or denominators.
        let q = p.primitive_part();
        let gcd = q.gcd(&q.derivative());
        let squarefree = if gcd.degree() == Some(0) || gcd.is_zero() {
            q
        } else {
            q.div_rem(&gcd).0.primitive_part()
        };
        let counting = scaled_chain(&squarefree);
        let vars_neg_inf = variations(&counting, &Bound::NegInf);
        let vars_pos_inf = variations(&counting, &Bound::PosInf);
        Ok(SturmChain {
            source: p.clone(),
            counting,
            gcd,
            squarefree,
            vars_neg_inf,
            vars_pos_inf,
        })
    }

    /// The canonical chain `p, p′, −rem, …` (exact recurrence), built on
    /// demand: the counting machinery never touches it, and for large
    /// coefficients its unnormalized remainders are expensive.
    pub fn chain(&self) -> Vec<Polynomial<Rat>> {
        canonical_chain(&self.source)
    }

    /// The primitive-integer chain of the squarefree part used for counting.
    pub fn counting_chain(&self) -> &[Polynomial<Rat>] {
        &self.counting
    }

    /// Monic `gcd(p, p′)`; constant 1 when `p` is squarefree.
    pub fn gcd(&self) -> &Polynomial<Rat> {
        &self.gcd
    }

    /// Squarefree part of `p` (same distinct roots, all simple), rescaled
    /// to primitive integer coefficients by a positive factor.
    pub fn squarefree(&self) -> &Polynomial<Rat> {
        &self.squarefree
    }

    /// Sign variations of the counting chain at `at`.
    pub fn variations_at(&self, at: &Bound) -> usize {
        match at {
            Bound::NegInf => self.vars_neg_inf,
            Bound::PosInf => self.vars_pos_inf,
            Bound::Finite(_) => variations(&self.counting, at),
        }
    }

    /// Number of distinct real roots of `p` in the half-open interval
    /// `(lo, hi]`; either bound may be infinite. Returns 0 when `lo ≥ hi`.
    pub fn count_roots(&self, lo: &Bound, hi: &Bound) -> usize {
        if !bound_lt(lo, hi) {
            return 0;
        }
        let v_lo = self.variations_at(lo);
        let v_hi = self.variations_at(hi);
        v_lo.saturating_sub(v_hi)
    }

    /// Total number of distinct real roots.
    pub fn total_real_roots(&self) -> usize {
        self.count_roots(&Bound::NegInf, &Bound::PosInf)
    }
}

fn bound_lt(lo: &Bound, hi: &Bound) -> bool {
    match (lo, hi) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
    }
}

/// `1 + max |c_k| / |c_n|`: every real root has absolute value strictly
/// below this, rounded up to the next integer for tidy interval endpoints.
pub fn cauchy_root_bound(p: &Polynomial<Rat>) -> Rat {
    let lead = p.leading();
    let mut m = Rat::zero();
    if let Some(d) = p.degree() {
        for k in 0..d {
            let r = (p.coeff(k) / lead.clone()).abs();
            if r > m {
                m = r;
            }
        }
    }
    let b = Rat::one() + m;
    Rat::from_integer(b.ceil().to_integer())
}

/// Isolates all distinct real roots of `p` into disjoint intervals, sorted
/// ascending. Exact rational roots come back as point intervals. Constant and
/// zero polynomials yield an empty list.
pub fn isolate_real_roots(p: &Polynomial<Rat>) -> Vec<RootInterval> {
    let chain = match SturmChain::new(p) {
        Ok(c) => c,
        Err(_) => return Vec::new(),
    };
    isolate_with_chain(&chain)
}

/// Root isolation reusing an existing chain.
pub fn isolate_with_chain(chain: &SturmChain) -> Vec<RootInterval> {
    let sf = chain.squarefree();
    if sf.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let total = chain.total_real_roots();
    if total == 0 {
        return Vec::new();
    }
    let bound = cauchy_root_bound(sf);
    let mut out = Vec::new();
    // Stack of open intervals whose endpoints are provably not roots.
    let mut stack = vec![(-&bound, bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let k = chain.count_roots(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        if k == 0 {
            continue;
        }
        if k == 1 {
            // Squarefree ⇒ simple root ⇒ strict sign change across (lo, hi).
            debug_assert!(sign_of(&sf.eval(&lo)) * sign_of(&sf.eval(&hi)) < 0);
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        if sf.eval(&mid).is_zero() {
            // Exact rational root at the midpoint: emit it and resume on
            // both sides, stepping far enough off the root that the new
            // endpoints are clean.
            out.push(RootInterval::exact(mid.clone()));
            let mut delta = (&hi - &lo) / Rat::from_integer(4.into());
            loop {
                let left_pt = &mid - &delta;
                let right_pt = &mid + &delta;
                let only_mid_on_left = chain
                    .count_roots(&Bound::Finite(left_pt.clone()), &Bound::Finite(mid.clone()))
                    == 1;
                let none_on_right = chain
                    .count_roots(&Bound::Finite(mid.clone()), &Bound::Finite(right_pt.clone()))
                    == 0;
                if only_mid_on_left
                    && none_on_right
                    && !sf.eval(&left_pt).is_zero()
                    && !sf.eval(&right_pt).is_zero()
                {
                    stack.push((lo, left_pt));
                    stack.push((right_pt, hi));
                    break;
                }
                delta /= Rat::from_integer(2.into());
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    debug_assert_eq!(out.len(), total);
    out
}

/// Bisects an isolating interval until its width is at most `width`,
/// promoting to an exact point if a midpoint lands on the root. `sf` must be
/// the squarefree polynomial the interval isolates a root of.
pub fn refine_to_width(sf: &Polynomial<Rat>, iv: &RootInterval, width: &Rat) -> RootInterval {
    let mut iv = iv.clone();
    while !iv.is_exact() && iv.width() > *width {
        let mid = iv.mid();
        let s = sign_of(&sf.eval(&mid));
        if s == 0 {
            return RootInterval::exact(mid);
        }
        if s == sign_of(&sf.eval(&iv.lo)) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

/// Exact sign of `q` at the algebraic root isolated by `iv` (a root of the
/// squarefree polynomial `sf`): −1, 0, or +1.
pub fn sign_at_root(q: &Polynomial<Rat>, sf: &Polynomial<Rat>, iv: &RootInterval) -> i8 {
    if iv.is_exact() {
        return sign_of(&q.eval(&iv.lo));
    }
    if q.is_zero() {
        return 0;
    }
    // Zero test: q vanishes at the root iff gcd(sf, q) does.
    let g = sf.gcd(q);
    if g.degree().is_some_and(|d| d >= 1) {
        if let Ok(gc) = SturmChain::new(&g) {
            if gc.count_roots(&Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())) > 0 {
                return 0;
            }
        }
    }
    // Nonzero at the root: shrink until q is sign-constant on the bracket.
    let qc = SturmChain::new(q).expect("nonzero polynomial");
    let mut iv = iv.clone();
    loop {
        let s_lo = sign_of(&q.eval(&iv.lo));
        if s_lo != 0
            && qc.count_roots(&Bound::Finite(iv.lo.clone()), &Bound::Finite(iv.hi.clone())) == 0
        {
            return s_lo;
        }
        let narrowed = refine_to_width(sf, &iv, &(iv.width() / Rat::from_integer(2.into())));
        if narrowed.is_exact() {
            return sign_of(&q.eval(&narrowed.lo));
        }
        iv = narrowed;
    }
}

/// Multiplicity of the root isolated by `iv` (a root of `sf`, the squarefree
/// part of `p`) as a root of `p` itself.
pub fn multiplicity_at(p: &Polynomial<Rat>, sf: &Polynomial<Rat>, iv: &RootInterval) -> usize {
    let mut m = 0;
    let mut d = p.clone();
    loop {
        if d.is_zero() || sign_at_root(&d, sf, iv) != 0 {
            return m;
        }
        m += 1;
        d = d.derivative();
    }
}

/// Verdict of [`is_positive_on_nonneg`].
#[derive(Debug, Clone, PartialEq)]
pub enum PositivityVerdict {
    /// Strictly positive on all of `[0, +∞)`.
    Positive,
    /// Vanishes at the contained point (an even-multiplicity touch or a
    /// boundary zero); positivity fails non-strictly.
    ZeroAt(RootInterval),
    /// Strictly negative at the contained rational point.
    NegativeAt(RootInterval),
}

impl PositivityVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityVerdict::Positive)
    }
}

/// Decides `p(t) > 0` for all `t ≥ 0`, exactly. On failure the verdict
/// carries a witness location where `p ≤ 0`.
pub fn is_positive_on_nonneg(p: &Polynomial<Rat>) -> PositivityVerdict {
    let at_zero = p.eval(&Rat::zero());
    match sign_of(&at_zero) {
        -1 => return PositivityVerdict::NegativeAt(RootInterval::exact(Rat::zero())),
        0 => return PositivityVerdict::ZeroAt(RootInterval::exact(Rat::zero())),
        _ => {}
    }
    if sign_of(&p.leading()) < 0 {
        // Beyond every root the sign is the leading sign.
        let b = cauchy_root_bound(p);
        debug_assert!(sign_of(&p.eval(&b)) < 0);
        return PositivityVerdict::NegativeAt(RootInterval::exact(b));
    }
    let chain = match SturmChain::new(p) {
        Ok(c) => c,
        Err(_) => return PositivityVerdict::Positive, // positive constant
    };
    if chain.count_roots(&Bound::Finite(Rat::zero()), &Bound::PosInf) == 0 {
        // p(0) > 0, no positive real root, so no sign change or touch.
        return PositivityVerdict::Positive;
    }
    // Locate the smallest positive root and classify it.
    let sf = chain.squarefree().clone();
    let roots = isolate_with_chain(&chain);
    for iv in roots {
        // Skip roots that are ≤ 0 (refine away brackets straddling zero;
        // 0 itself is not a root here since p(0) > 0).
        let mut iv = iv;
        while !iv.is_exact() && iv.lo < Rat::zero() && iv.hi > Rat::zero() {
            iv = refine_to_width(&sf, &iv, &(iv.width() / Rat::from_integer(4.into())));
        }
        let positive_root = if iv.is_exact() {
            iv.lo > Rat::zero()
        } else {
            iv.lo >= Rat::zero()
        };
        if !positive_root {
            continue;
        }
        let m = multiplicity_at(p, &sf, &iv);
        if m.is_multiple_of(2) {
            // Even-multiplicity touch: p ≥ 0 nearby but equals 0 at the root.
            return PositivityVerdict::ZeroAt(iv);
        }
        // Odd multiplicity: p crosses downward (p > 0 before its first
        // root). A clean negative rational point is just right of the root.
        let witness = first_point_right_with_sign(p, &chain, &sf, &iv, -1);
        return PositivityVerdict::NegativeAt(RootInterval::exact(witness));
    }
    PositivityVerdict::Positive
}

/// Finds a rational point just right of the root in `iv` where `p` has the
/// requested sign (the root must be `p`'s only root in the bracket).
fn first_point_right_with_sign(
    p: &Polynomial<Rat>,
    chain: &SturmChain,
    sf: &Polynomial<Rat>,
    iv: &RootInterval,
    want: i8,
) -> Rat {
    if iv.is_exact() {
        // Step right by shrinking offsets until past no other root.
        let mut step = Rat::one();
        loop {
            let t = &iv.lo + &step;
            if chain.count_roots(&Bound::Finite(iv.lo.clone()), &Bound::Finite(t.clone())) == 1
                && sign_of(&p.eval(&t)) == want
            {
                return t;
            }
            step /= Rat::from_integer(2.into());
        }
    }
    let mut iv = iv.clone();
    loop {
        let s = sign_of(&p.eval(&iv.hi));
        if s == want {
            return iv.hi;
        }
        let narrowed = refine_to_width(sf, &iv, &(iv.width() / Rat::from_integer(2.into())));
        if narrowed.is_exact() {
            return first_point_right_with_sign(p, chain, sf, &narrowed, want);
        }
        iv = narrowed;
    }
}

/// Decides `p(t) > 0` for all `t > 0` (the open half-line): factors out the
/// power of `t` at the origin first, then runs the closed-half-line check.
pub fn positive_on_open_pos(p: &Polynomial<Rat>) -> PositivityVerdict {
    if p.is_zero() {
        return PositivityVerdict::ZeroAt(RootInterval::exact(Rat::one()));
    }
    let (_, q) = p.strip_zero_roots();
    // q(0) ≠ 0 and p, q share sign on t > 0.
    if sign_of(&q.eval(&Rat::zero())) < 0 {
        // Negative just right of the origin; find an exact rational witness.
        let chain = SturmChain::new(&q).expect("nonzero");
        let mut t = Rat::one();
        loop {
            if sign_of(&q.eval(&t)) < 0
                && chain.count_roots(&Bound::Finite(Rat::zero()), &Bound::Finite(t.clone())) == 0
            {
                return PositivityVerdict::NegativeAt(RootInterval::exact(t));
            }
            t /= Rat::from_integer(2.into());
        }
    }
    is_positive_on_nonneg(&q)
}

/// Certified bounds `(lo_bound, hi_bound)` with
/// `lo_bound ≤ p(t) ≤ hi_bound` for every `t ∈ [lo, hi]`, requiring
/// `0 ≤ lo ≤ hi`. Uses per-power monotone interval arithmetic: on a
/// nonnegative interval, `t^k` ranges over `[lo^k, hi^k]` exactly.
pub fn range_on_nonneg_interval(p: &Polynomial<Rat>, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    debug_assert!(!lo.is_negative() && lo <= hi);
    let mut min = Rat::zero();
    let mut max = Rat::zero();
    let mut lo_pow = Rat::one();
    let mut hi_pow = Rat::one();
    for c in p.coeffs() {
        if c.is_negative() {
            min += c * &hi_pow;
            max += c * &lo_pow;
        } else {
            min += c * &lo_pow;
            max += c * &hi_pow;
        }
        lo_pow = &lo_pow * lo;
        hi_pow = &hi_pow * hi;
    }
    (min, max)
}

//! Certified real-root isolation: Sturm counts for existence, bisection for
//! isolation, interval Newton for fast refinement.
//!
//! All interval endpoints are dyadic rationals, so the certificates are exact.

use crate::dyadic::{DyInterval, Dyadic, Round};
use crate::intpoly::{IntPoly, PolyError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Certified isolation of the real roots of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct RealRootIsolation {
    pub intervals: Vec<DyInterval>,
    pub precision_bits: u32,
}

impl RealRootIsolation {
    pub fn count(&self) -> usize {
        self.intervals.len()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SturmError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("precision exhausted while separating roots (requested {0} bits)")]
    PrecisionExhausted(u32),
}

/// Sturm chain; remainders are computed fraction-free with sign-correct
/// scaling, so sign-change counts match the classical chain.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = sturm_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.primitive_part());
        }
        SturmChain { chain }
    }

    /// Number of sign changes of the chain at a rational point.
    pub fn sign_changes_at(&self, x: &BigRational) -> usize {
        let mut changes = 0usize;
        let mut last = 0i32;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_changes_at(a).saturating_sub(self.sign_changes_at(b))
    }

    /// Total number of distinct real roots.
    pub fn total_real_roots(&self, bound: &BigRational) -> usize {
        self.count_in(&-bound.clone(), bound)
    }
}

/// A polynomial equal to -rem(a, b) up to a positive rational factor.
fn sturm_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let lc = b.leading();
    let db = b.degree();
    let mut f = a.clone();
    let mut steps = 0u32;
    while !f.is_zero() && f.degree() >= db {
        let df = f.degree();
        let flc = f.leading();
        let mut coeffs = vec![BigInt::zero(); df + 1];
        for (i, c) in f.coeffs().iter().enumerate() {
            coeffs[i] = c * &lc;
        }
        for (i, c) in b.coeffs().iter().enumerate() {
            let t = c * &flc;
            coeffs[i + df - db] -= t;
        }
        f = IntPoly::new(coeffs);
        steps += 1;
    }
    // f = lc^steps * rem(a, b); make the accumulated factor positive
    if lc.is_negative() && steps % 2 == 1 {
        f = f.neg();
    }
    f.neg()
}

/// Cauchy root bound: all real roots lie in [-B, B].
pub fn cauchy_bound(f: &IntPoly) -> BigRational {
    let lc = f.leading().abs();
    let mut m = BigInt::zero();
    for c in f.coeffs()[..f.degree()].iter() {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    BigRational::from(BigInt::from(1)) + BigRational::new(m, lc)
}

/// Isolate all real roots of a squarefree polynomial and refine each interval
/// to width at most 2^-precision_bits.
pub fn sturm_real_roots(f: &IntPoly, precision_bits: u32) -> Result<RealRootIsolation, SturmError> {
    if f.degree() < 1 {
        return Err(SturmError::Poly(PolyError::ConstantPolynomial));
    }
    let defect = f.squarefree_defect();
    if defect > 0 {
        return Err(SturmError::Poly(PolyError::NotSquarefree(defect)));
    }
    let chain = SturmChain::new(f);
    let bound = cauchy_bound(f);
    let total = chain.total_real_roots(&bound);
    let mut work: Vec<(BigRational, BigRational, usize)> = Vec::new();
    work.push((-bound.clone(), bound.clone(), total));
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    let mut exact: Vec<BigRational> = Vec::new();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    while let Some((a, b, n)) = work.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            let sa = f.sign_at(&a);
            let sb = f.sign_at(&b);
            if sa != 0 && sb != 0 && sa != sb {
                isolated.push((a, b));
                continue;
            }
        }
        let mid = (&a + &b) * &half;
        if f.sign_at(&mid) == 0 {
            exact.push(mid.clone());
            let quarter = (&b - &a) * &half * &half;
            let l = &mid - &quarter;
            let r = &mid + &quarter;
            work.push((a.clone(), l.clone(), chain.count_in(&a, &l)));
            work.push((r.clone(), b.clone(), chain.count_in(&r, &b)));
            continue;
        }
        let nl = chain.count_in(&a, &mid);
        work.push((a, mid.clone(), nl));
        work.push((mid, b, n - nl));
    }
    let mut intervals: Vec<DyInterval> = Vec::new();
    for (a, b) in isolated {
        intervals.push(refine_bracketed(f, a, b, precision_bits));
    }
    for r in exact {
        intervals.push(DyInterval::from_rational(&r, precision_bits + 8));
    }
    intervals.sort_by(|x, y| x.lo.cmp(&y.lo));
    debug_assert_eq!(intervals.len(), total);
    Ok(RealRootIsolation {
        intervals,
        precision_bits,
    })
}

/// Shrink an isolating interval with a sign change at its endpoints down to
/// width 2^-precision_bits: bisection first, interval Newton once safe.
fn refine_bracketed(
    f: &IntPoly,
    a: BigRational,
    b: BigRational,
    precision_bits: u32,
) -> DyInterval {
    let target = Dyadic::new(BigInt::from(1), -(precision_bits as i64));
    let prec = precision_bits + 32;
    let mut iv = DyInterval::new(
        Dyadic::from_rational(&a, prec, Round::Down),
        Dyadic::from_rational(&b, prec, Round::Up),
    );
    // outward rounding may have moved an endpoint across the root's bracket
    // partner sign; re-establish the bracket by one exact check
    let mut slo = sign_at_dyadic(f, &iv.lo);
    if slo == 0 {
        return DyInterval::point(iv.lo.clone());
    }
    if sign_at_dyadic(f, &iv.hi) == slo {
        // fall back to the exact rational endpoints
        iv = DyInterval::new(
            Dyadic::from_rational(&a, prec + 64, Round::Down),
            Dyadic::from_rational(&b, prec + 64, Round::Up),
        );
        slo = sign_at_dyadic(f, &iv.lo);
    }
    let deriv = f.derivative();
    let bisect = |iv: &DyInterval, slo: &mut i32| -> Option<DyInterval> {
        let mid = iv.lo.add(&iv.hi).mul_pow2(-1);
        let sm = sign_at_dyadic(f, &mid);
        if sm == 0 {
            return None; // exact root at midpoint
        }
        Some(if sm == *slo {
            DyInterval::new(mid, iv.hi.clone())
        } else {
            DyInterval::new(iv.lo.clone(), mid)
        })
    };
    let max_iter = 2 * precision_bits as usize + 128;
    for _ in 0..max_iter {
        if iv.width() <= target {
            break;
        }
        let dprime = eval_interval(&deriv, &iv, prec);
        let newton_ok = !dprime.contains_zero();
        if newton_ok {
            let m = iv.lo.add(&iv.hi).mul_pow2(-1);
            let fm = eval_interval(f, &DyInterval::point(m.clone()), prec);
            let step = fm.div(&dprime, prec);
            let cand_lo = m.sub(&step.hi);
            let cand_hi = m.sub(&step.lo);
            let new_lo = if cand_lo > iv.lo { cand_lo } else { iv.lo.clone() };
            let new_hi = if cand_hi < iv.hi { cand_hi } else { iv.hi.clone() };
            if new_lo <= new_hi {
                let cand = DyInterval::new(new_lo, new_hi);
                if cand.width() < iv.width() {
                    iv = cand;
                    continue;
                }
            }
        }
        match bisect(&iv, &mut slo) {
            Some(next) => iv = next,
            None => {
                let mid = iv.lo.add(&iv.hi).mul_pow2(-1);
                return DyInterval::point(mid);
            }
        }
    }
    iv
}

/// Evaluate an integer polynomial on a dyadic interval (exact Horner with
/// periodic outward rounding to keep mantissas small).
pub fn eval_interval(f: &IntPoly, x: &DyInterval, prec: u32) -> DyInterval {
    let mut acc = DyInterval::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&DyInterval::from_int(c)).round_out(prec);
    }
    acc
}

/// Sign of f at an exact dyadic point.
pub fn sign_at_dyadic(f: &IntPoly, x: &Dyadic) -> i32 {
    f.sign_at(&x.to_rational())
}

/// Refine a certified single-root interval to a smaller width.
pub fn refine_interval(f: &IntPoly, iv: &DyInterval, precision_bits: u32) -> DyInterval {
    if iv.width() <= Dyadic::new(BigInt::from(1), -(precision_bits as i64)) {
        return iv.clone();
    }
    let slo = sign_at_dyadic(f, &iv.lo);
    let shi = sign_at_dyadic(f, &iv.hi);
    if slo == 0 {
        return DyInterval::point(iv.lo.clone());
    }
    if shi == 0 {
        return DyInterval::point(iv.hi.clone());
    }
    debug_assert!(slo != shi, "interval does not bracket a root");
    refine_bracketed(f, iv.lo.to_rational(), iv.hi.to_rational(), precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse_poly;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_exact_roots() {
        let iso = sturm_real_roots(&p(&[-1, 0, 1]), 64).unwrap();
        assert_eq!(iso.count(), 2);
        assert!((iso.intervals[0].mid_f64() + 1.0).abs() < 1e-12);
        assert!((iso.intervals[1].mid_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plastic_cubic_single_root() {
        // x^3 - x - 1: signs at 1 and 2 bracket the only real root
        let f = p(&[-1, -1, 0, 1]);
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(1))), -1);
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(2))), 1);
        let iso = sturm_real_roots(&f, 128).unwrap();
        assert_eq!(iso.count(), 1);
        assert!((iso.intervals[0].mid_f64() - 1.3247179572447460260).abs() < 1e-12);
        assert!(iso.intervals[0].width().to_f64() < 2f64.powi(-120));
    }

    #[test]
    fn gamma2_charpoly_three_positive_roots() {
        // det(xI - gamma_2) = x^3 - 11x^2 + 27x - 1; the sign table at
        // 0, 1/20, 4, 8 reads -, +, -, + so all three roots are positive
        let f = p(&[-1, 27, -11, 1]);
        assert_eq!(f.sign_at(&BigRational::from(BigInt::zero())), -1);
        assert_eq!(
            f.sign_at(&BigRational::new(BigInt::from(1), BigInt::from(20))),
            1
        );
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(4))), -1);
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(8))), 1);
        let iso = sturm_real_roots(&f, 160).unwrap();
        assert_eq!(iso.count(), 3);
        for iv in &iso.intervals {
            assert!(iv.lo.is_positive(), "all roots positive");
        }
        // 40-digit numeric solve cross-check
        let mids: Vec<f64> = iso.intervals.iter().map(|i| i.mid_f64()).collect();
        assert!((mids[0] - 0.037611391815968754733).abs() < 1e-14);
        assert!((mids[1] - 3.6222156349319637999).abs() < 1e-12);
        assert!((mids[2] - 7.3401729732520674454).abs() < 1e-12);
        // product of roots is det = 1
        let prod = iso.intervals[0].mul(&iso.intervals[1]).mul(&iso.intervals[2]);
        assert!(prod.lo.to_f64() <= 1.0 && 1.0 <= prod.hi.to_f64());
    }

    #[test]
    fn rejects_non_squarefree() {
        match sturm_real_roots(&p(&[1, 2, 1]), 64) {
            Err(SturmError::Poly(PolyError::NotSquarefree(1))) => {}
            other => panic!("expected NotSquarefree, got {other:?}"),
        }
    }

    #[test]
    fn no_real_roots() {
        let iso = sturm_real_roots(&p(&[1, 0, 1]), 64).unwrap();
        assert_eq!(iso.count(), 0);
    }

    #[test]
    fn refinement_is_monotone_in_precision() {
        let f = parse_poly("x^3 - 11x^2 + 27x - 1").unwrap();
        let mut counts = Vec::new();
        for prec in [32u32, 64, 128, 256, 512] {
            let iso = sturm_real_roots(&f, prec).unwrap();
            counts.push(iso.count());
            for iv in &iso.intervals {
                assert!(iv.width().to_f64() <= 2f64.powi(-(prec as i32)) * 1.01);
            }
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn quartic_with_close_roots() {
        // (x^2 - 2) * (2^40 x^2 - (2^41 + 1)) has two pairs of nearby roots
        let a = p(&[-2, 0, 1]);
        let b = IntPoly::new(vec![
            -(BigInt::from(2) * (BigInt::from(1) << 40u32) + 1i32),
            BigInt::zero(),
            BigInt::from(1) << 40,
        ]);
        let f = a.mul(&b);
        let iso = sturm_real_roots(&f, 128).unwrap();
        assert_eq!(iso.count(), 4);
        for w in iso.intervals.windows(2) {
            assert!(w[0].hi < w[1].lo, "intervals pairwise disjoint");
        }
    }

    #[test]
    fn counts_in_intervals() {
        let f = p(&[-1, 27, -11, 1]);
        let chain = SturmChain::new(&f);
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(chain.count_in(&q(0, 1), &q(1, 1)), 1);
        assert_eq!(chain.count_in(&q(1, 1), &q(4, 1)), 1);
        assert_eq!(chain.count_in(&q(4, 1), &q(8, 1)), 1);
        assert_eq!(chain.count_in(&q(-10, 1), &q(0, 1)), 0);
    }

    #[test]
    fn deep_refinement() {
        let f = p(&[-2, 0, 1]);
        let iso = sturm_real_roots(&f, 64).unwrap();
        let pos = &iso.intervals[1];
        let fine = refine_interval(&f, pos, 1024);
        let w = fine.width();
        assert!(w.is_zero() || w.log2_floor() <= -1024);
        // sqrt(2)^2 = 2 stays certified
        let sq = fine.mul(&fine);
        assert!(sq.lo.to_f64() <= 2.0 && 2.0 <= sq.hi.to_f64());
    }
}

//! Dyadic fixed-point arithmetic and certified interval operations.
//!
//! A [`Dyadic`] is `mantissa * 2^exp` with a `BigInt` mantissa, so addition,
//! subtraction and multiplication are exact. Division, logarithms and roots
//! are computed with directed rounding, which makes [`DyInterval`] enclosures
//! certified: the true real value always lies inside the returned interval.
//!
//! The natural logarithm uses argument reduction to [1, 2) followed by the
//! atanh series; every truncation is accounted for in an explicit ulp budget.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exp: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        Dyadic { mantissa, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion: every finite f64 is dyadic.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp_bits == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Some(Dyadic::new(BigInt::from(sign) * BigInt::from(mant), e))
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return self;
        }
        // strip trailing zero bits to keep mantissas small
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mantissa: -self.mantissa.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &other.mantissa << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exp: self.exp + k,
        }
    }

    /// floor(log2 |x|) for nonzero x.
    pub fn log2_floor(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mantissa.bits() as i64 - 1
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round_to(&self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let shifted = &self.mantissa >> drop as u64;
        let back = &shifted << drop as u64;
        let exact = back == self.mantissa;
        let mut m = shifted;
        if !exact {
            // BigInt shr truncates toward negative infinity for negatives?
            // num-bigint shifts are arithmetic on the two's-complement-like
            // representation: >> rounds toward negative infinity.
            match dir {
                Round::Down => {}
                Round::Up => m += 1,
            }
        }
        Dyadic::new(m, self.exp + drop)
    }

    /// Divide with directed rounding at `prec` significant bits.
    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // scale numerator so the integer quotient has ~prec+2 bits
        let want = prec as i64 + 2;
        let shift = want + other.mantissa.bits() as i64 - self.mantissa.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mantissa << shift as u64;
        let (q, r) = num.div_rem(&other.mantissa);
        let exact = r.is_zero();
        let mut q = q;
        if !exact {
            // div_rem truncates toward zero; fix direction
            let res_negative = (self.mantissa.sign() == Sign::Minus)
                != (other.mantissa.sign() == Sign::Minus);
            match (dir, res_negative) {
                (Round::Down, false) => {}
                (Round::Down, true) => q -= 1,
                (Round::Up, false) => q += 1,
                (Round::Up, true) => {}
            }
        }
        Dyadic::new(q, self.exp - other.exp - shift).round_to(
            prec,
            dir, // second rounding in the same direction preserves the bound
        )
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        // keep 64 significant bits
        let drop = (bits - 64).max(0);
        let m = (&self.mantissa >> drop as u64).to_i128().unwrap_or(0) as f64;
        let e = self.exp + drop;
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        // split the scaling to avoid intermediate over/underflow in powi
        let h = e / 2;
        m * 2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from(&self.mantissa << self.exp as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn from_rational(x: &BigRational, prec: u32, dir: Round) -> Self {
        if x.is_zero() {
            return Dyadic::zero();
        }
        let num = Dyadic::from_int(x.numer());
        let den = Dyadic::from_int(x.denom());
        num.div_round(&den, prec, dir)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}

// ---------------------------------------------------------------------------
// fixed-point natural logarithm with certified error
// ---------------------------------------------------------------------------

/// ln(2) as fixed point at scale 2^-w, with error at most `err` ulps:
/// returns (value, err_ulps).
fn ln2_fixed(w: u32) -> (BigInt, u64) {
    // ln 2 = 2 atanh(1/3)
    let one = BigInt::one() << w;
    let t = &one / BigInt::from(3); // <= 1 ulp error
    atanh_fixed(&t, w, 1)
}

/// atanh of a fixed-point t in [0, 1/2], doubled: returns (2*atanh(t), err).
/// `t_err` is the ulp error already present in t.
fn atanh_fixed(t: &BigInt, w: u32, t_err: u64) -> (BigInt, u64) {
    debug_assert!(!t.is_negative());
    let t2 = (t * t) >> w as u64;
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut k = 1u64;
    let mut ops = 0u64;
    loop {
        term = (&term * &t2) >> w as u64;
        if term.is_zero() {
            break;
        }
        let piece = &term / BigInt::from(2 * k + 1);
        sum += &piece;
        ops += 2;
        k += 1;
        if piece.is_zero() {
            break;
        }
        if k > 4 * w as u64 {
            break; // unreachable for t <= 1/2; safety stop
        }
    }
    // error budget: each of ~2k truncations <= 1 ulp, series tail <= 2 ulp
    // once piece hits zero (geometric ratio <= 1/4), derivative sensitivity
    // to t_err is atanh'(t) = 1/(1-t^2) <= 4/3 -> 2 ulp per input ulp after
    // doubling.
    let err = 2 * (ops + 2) + 4 * t_err + 4;
    (sum << 1u32, err)
}

/// Certified fixed-point ln of a positive dyadic: value = m * 2^e.
/// Returns (lo, hi) integers such that lo/2^w <= ln(x) <= hi/2^w.
fn ln_fixed(x: &Dyadic, w: u32) -> (BigInt, BigInt) {
    assert!(x.is_positive(), "ln of non-positive value");
    // write x = m * 2^e with m in [1, 2): m_fixed in [2^w, 2^(w+1))
    let bits = x.mantissa.bits() as i64;
    let e = x.exp + bits - 1;
    let shift = w as i64 - (bits - 1);
    let m_fixed = if shift >= 0 {
        &x.mantissa << shift as u64
    } else {
        &x.mantissa >> (-shift) as u64 // truncation: <= 1 ulp, handled in budget
    };
    let m_err: u64 = if shift >= 0 { 0 } else { 1 };
    // t = (m - 1) / (m + 1), in [0, 1/3]
    let one = BigInt::one() << w;
    let num = (&m_fixed - &one) << w as u64;
    let den = &m_fixed + &one;
    let t = &num / &den; // <= 1 ulp
    let (lnm, lnm_err) = atanh_fixed(&t, w, 1 + m_err);
    let (ln2, ln2_err) = if e == 0 {
        (BigInt::zero(), 0)
    } else {
        ln2_fixed(w)
    };
    let e_abs = e.unsigned_abs();
    let total = &lnm + BigInt::from(e) * &ln2;
    let err = BigInt::from(lnm_err + ln2_err * e_abs + 2);
    (&total - &err, total + err)
}

// ---------------------------------------------------------------------------
// intervals
// ---------------------------------------------------------------------------

/// A closed interval with dyadic endpoints; certified to contain its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        DyInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::point(Dyadic::from_i64(n))
    }

    pub fn from_f64(x: f64) -> Self {
        Self::point(Dyadic::from_f64(x).expect("finite float"))
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        DyInterval {
            lo: Dyadic::from_rational(x, prec, Round::Down),
            hi: Dyadic::from_rational(x, prec, Round::Up),
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Definite sign: Some(-1 | 1) if the interval excludes zero, else None.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        DyInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        DyInterval {
            lo: self.lo.add(&o.lo),
            hi: self.hi.add(&o.hi),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        DyInterval { lo, hi }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        DyInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Division; the divisor must exclude zero.
    pub fn div(&self, o: &Self, prec: u32) -> Self {
        assert!(!o.contains_zero(), "interval division by zero-containing interval");
        let c = [
            self.lo.div_round(&o.lo, prec, Round::Down),
            self.lo.div_round(&o.hi, prec, Round::Down),
            self.hi.div_round(&o.lo, prec, Round::Down),
            self.hi.div_round(&o.hi, prec, Round::Down),
        ];
        let lo = c.iter().min().unwrap().clone();
        let c2 = [
            self.lo.div_round(&o.lo, prec, Round::Up),
            self.lo.div_round(&o.hi, prec, Round::Up),
            self.hi.div_round(&o.lo, prec, Round::Up),
            self.hi.div_round(&o.hi, prec, Round::Up),
        ];
        let hi = c2.iter().max().unwrap().clone();
        DyInterval { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            DyInterval {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        }
    }

    /// Round endpoints outward to `prec` significant bits.
    pub fn round_out(&self, prec: u32) -> Self {
        DyInterval {
            lo: self.lo.round_to(prec, Round::Down),
            hi: self.hi.round_to(prec, Round::Up),
        }
    }

    /// Certified natural log of a strictly positive interval.
    pub fn ln(&self, prec: u32) -> Self {
        assert!(
            self.lo.is_positive(),
            "ln requires a strictly positive interval"
        );
        let w = prec + 32;
        let (lo, _) = ln_fixed(&self.lo, w);
        let (_, hi) = ln_fixed(&self.hi, w);
        DyInterval {
            lo: Dyadic::new(lo, -(w as i64)),
            hi: Dyadic::new(hi, -(w as i64)),
        }
        .round_out(prec)
    }

    /// ln |x| for an interval excluding zero.
    pub fn ln_abs(&self, prec: u32) -> Self {
        self.abs_excluding_zero().ln(prec)
    }

    fn abs_excluding_zero(&self) -> Self {
        assert!(
            !self.contains_zero(),
            "ln_abs requires an interval excluding zero"
        );
        self.abs()
    }

    /// Certified k-th root of a nonnegative interval.
    pub fn nth_root(&self, k: u32, prec: u32) -> Self {
        assert!(!self.lo.is_negative(), "nth_root of negative interval");
        DyInterval {
            lo: nth_root_dyadic(&self.lo, k, prec, Round::Down),
            hi: nth_root_dyadic(&self.hi, k, prec, Round::Up),
        }
    }

    pub fn sqrt(&self, prec: u32) -> Self {
        self.nth_root(2, prec)
    }

    /// Hull of two intervals.
    pub fn hull(&self, o: &Self) -> Self {
        DyInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Max relative width as f64 (for convergence checks).
    pub fn rel_width_f64(&self) -> f64 {
        let w = self.width().to_f64();
        let m = self.mid_f64().abs().max(1e-300);
        w / m
    }
}

fn nth_root_dyadic(x: &Dyadic, k: u32, prec: u32, dir: Round) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    assert!(x.is_positive());
    // scale so the integer root has ~prec+2 bits
    let want_bits = (prec as u64 + 2) * k as u64;
    let cur_bits = x.mantissa.bits();
    let mut extra = want_bits.saturating_sub(cur_bits) as i64;
    // keep (exp - extra) divisible by k
    let rem = (x.exp - extra).rem_euclid(k as i64);
    extra += rem;
    let scaled = &x.mantissa << extra as u64;
    let root = crate::primes::nth_root_floor(&scaled, k);
    let exact = root.pow(k) == scaled;
    let m = match (dir, exact) {
        (Round::Down, _) => root,
        (Round::Up, true) => root,
        (Round::Up, false) => root + 1,
    };
    Dyadic::new(m, (x.exp - extra) / k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn reference_interval(decimal: &str) -> (f64, f64) {
        let v: f64 = decimal.parse().unwrap();
        (v - 1e-13 * v.abs().max(1.0), v + 1e-13 * v.abs().max(1.0))
    }

    #[test]
    fn dyadic_roundtrip_f64() {
        for x in [0.0, 1.0, -1.5, 0.1, 12345.6789, 1e-300, -3.7e200] {
            let d = Dyadic::from_f64(x).unwrap();
            assert_eq!(d.to_f64(), x);
        }
    }

    #[test]
    fn directed_rounding_order() {
        let a = Dyadic::from_i64(1);
        let b = Dyadic::from_i64(3);
        let lo = a.div_round(&b, 64, Round::Down);
        let hi = a.div_round(&b, 64, Round::Up);
        assert!(lo < hi);
        assert!(lo.to_f64() <= 1.0 / 3.0 && 1.0 / 3.0 <= hi.to_f64());
        // negative numerator
        let lo = a.neg().div_round(&b, 64, Round::Down);
        let hi = a.neg().div_round(&b, 64, Round::Up);
        assert!(lo.to_f64() <= -1.0 / 3.0 && -1.0 / 3.0 <= hi.to_f64());
    }

    #[test]
    fn ln_matches_references() {
        // 65-digit references
        let cases: [(i64, &str); 3] = [
            (2, "0.69314718055994530941723212145817656807550013436025525412068000949"),
            (3, "1.0986122886681096913952452369225257046474905578227494517346943336"),
            (10, "2.302585092994045684017991454684364207601101488628772976033327901"),
        ];
        for prec in [64u32, 128, 256, 512] {
            for (n, s) in &cases {
                let iv = DyInterval::from_i64(*n).ln(prec);
                // reference value as a rational interval with one-last-digit slack
                let parts: Vec<&str> = s.split('.').collect();
                let digits = format!("{}{}", parts[0], parts[1]);
                let num = BigInt::from_str(&digits).unwrap();
                let den = BigInt::from(10u32).pow(parts[1].len() as u32);
                let slack = BigRational::new(BigInt::from(10), den.clone());
                let r = BigRational::new(num, den);
                let ref_lo = Dyadic::from_rational(&(&r - &slack), prec + 80, Round::Down);
                let ref_hi = Dyadic::from_rational(&(&r + &slack), prec + 80, Round::Up);
                assert!(
                    iv.lo <= ref_hi && ref_lo <= iv.hi,
                    "ln({n}) at prec {prec}: interval {:?} vs reference",
                    (iv.lo.to_f64(), iv.hi.to_f64()),
                );
                // width shrinks with precision
                assert!(iv.width().to_f64() < 2f64.powi(-(prec as i32) + 8));
            }
        }
    }

    #[test]
    fn ln_small_and_large_args() {
        let x = DyInterval::from_f64(0.037611391815968754733);
        let (lo, hi) = reference_interval("-3.280448300644634293818320794533756965362");
        let iv = x.ln(128);
        assert!(iv.lo.to_f64() <= hi && lo <= iv.hi.to_f64());
        let y = DyInterval::from_f64(1e200).ln(128);
        assert!((y.mid_f64() - 200.0 * std::f64::consts::LN_10).abs() < 1e-10);
    }

    #[test]
    fn interval_arithmetic_contains_truth() {
        let a = DyInterval::from_rational(&BigRational::new(1.into(), 3.into()), 64);
        let b = DyInterval::from_rational(&BigRational::new(2.into(), 7.into()), 64);
        let c = a.mul(&b).add(&b).sub(&a);
        let truth = 1.0 / 3.0 * (2.0 / 7.0) + 2.0 / 7.0 - 1.0 / 3.0;
        assert!(c.lo.to_f64() <= truth && truth <= c.hi.to_f64());
        assert!(c.width().to_f64() < 1e-15);
    }

    #[test]
    fn roots_certified() {
        let two = DyInterval::from_i64(2);
        let s = two.sqrt(128);
        let sq = s.mul(&s);
        assert!(sq.lo.to_f64() <= 2.0 && 2.0 <= sq.hi.to_f64());
        assert!(s.width().to_f64() < 1e-35);
        let c = DyInterval::from_i64(27).nth_root(3, 128);
        assert!(c.lo.to_f64() <= 3.0 && 3.0 <= c.hi.to_f64());
        assert!(c.width().to_f64() < 1e-30);
        // ln(1+sqrt(2)) reference
        let one_plus = s.add(&DyInterval::from_i64(1));
        let r = one_plus.ln(128);
        let (lo, hi) =
            reference_interval("0.88137358701954302523260932497979230902816032826163541");
        assert!(r.lo.to_f64() <= hi && lo <= r.hi.to_f64());
    }

    #[test]
    fn division_by_interval() {
        let one = DyInterval::from_i64(1);
        let three = DyInterval::new(Dyadic::from_f64(2.9).unwrap(), Dyadic::from_f64(3.1).unwrap());
        let q = one.div(&three, 64);
        assert!(q.lo.to_f64() <= 1.0 / 3.1 + 1e-15 && 1.0 / 2.9 - 1e-15 <= q.hi.to_f64());
    }

    #[test]
    fn round_out_grows() {
        let x = DyInterval::from_rational(&BigRational::new(355.into(), 113.into()), 200);
        let r = x.round_out(32);
        assert!(r.lo <= x.lo && x.hi <= r.hi);
    }
}

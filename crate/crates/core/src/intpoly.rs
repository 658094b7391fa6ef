//! Dense integer polynomials with exact arithmetic.
//!
//! Coefficients are stored low-to-high. Resultants and discriminants use the
//! subresultant pseudo-remainder sequence, so every value is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>, // low-to-high, no trailing zeros, empty = zero
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial is not squarefree (gcd with derivative has degree {0})")]
    NotSquarefree(usize),
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("degree {0} is not supported (maximum 4)")]
    UnsupportedDegree(usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point, without building the value's gcd.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // evaluate numerator of f(p/q) * q^deg exactly
        let p = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // one extra multiply in the loop is harmless: last qpow unused
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Exact division; panics if not divisible (internal use).
    pub fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.pseudo_divide_exact(other);
        assert!(r.is_zero(), "div_exact: nonzero remainder");
        q
    }

    /// Schoolbook division over Q returning (quotient, remainder) when the
    /// divisor's leading coefficient divides exactly along the way; used with
    /// monic or content-adjusted divisors.
    fn pseudo_divide_exact(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero());
        let d = other.degree();
        let lc = other.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lc);
            assert!(r.is_zero(), "pseudo_divide_exact: leading coeff does not divide");
            quot[i - d] = q.clone();
            for j in 0..=d {
                let t = &q * &other.coeffs[j];
                rem[i - d + j] -= t;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g.
    fn pseudo_rem(&self, g: &Self) -> Self {
        assert!(!g.is_zero());
        let mut f = self.clone();
        let dg = g.degree();
        let lc = g.leading();
        while !f.is_zero() && f.degree() >= dg {
            let df = f.degree();
            let flc = f.leading();
            // f = lc*f - flc * x^(df-dg) * g
            let mut shifted = vec![BigInt::zero(); df - dg];
            shifted.extend(g.coeffs.iter().map(|c| c * &flc));
            f = IntPoly::new(
                f.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        c * &lc - shifted.get(i).cloned().unwrap_or_else(BigInt::zero)
                    })
                    .collect(),
            );
        }
        f
    }

    /// Primitive gcd over Z.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let c = self.content().gcd(&other.content());
        if a.leading().is_negative() {
            a = a.neg();
        }
        if c.is_one() || c.is_zero() {
            a
        } else {
            a.scale(&c)
        }
    }

    /// Resultant via the Sylvester matrix (exact Bareiss determinant).
    pub fn resultant(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let n = self.degree();
        let m = other.degree();
        if n == 0 {
            return self.leading().pow(m as u32);
        }
        if m == 0 {
            return other.leading().pow(n as u32);
        }
        let size = n + m;
        let mut s = vec![vec![BigInt::zero(); size]; size];
        // m rows of self's coefficients (descending), shifted
        for i in 0..m {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                s[i][i + k] = c.clone();
            }
        }
        // n rows of other's coefficients
        for i in 0..n {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                s[m + i][i + k] = c.clone();
            }
        }
        crate::linalg::det_bigint(&s)
    }

    /// Discriminant: (-1)^(n(n-1)/2) res(f, f') / lc(f).
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        assert!(n >= 2, "discriminant needs degree >= 2");
        let r = self.resultant(&self.derivative());
        let lc = self.leading();
        let q = &r / &lc;
        if (n * (n - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    /// Degree of gcd(f, f'); 0 means squarefree.
    pub fn squarefree_defect(&self) -> usize {
        self.gcd(&self.derivative()).degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_defect() == 0
    }

    /// Irreducibility over Q for degree <= 4 monic-or-not integer polynomials.
    ///
    /// Degree 1 is irreducible; degrees 2-3 reduce to the rational root test;
    /// degree 4 additionally rules out quadratic factors by finite search over
    /// divisor pairs of the (primitive) constant term.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        let n = self.degree();
        if n == 0 {
            return Err(PolyError::ConstantPolynomial);
        }
        if n > 4 {
            return Err(PolyError::UnsupportedDegree(n));
        }
        let f = self.primitive_part();
        if n == 1 {
            return Ok(true);
        }
        if f.coeff(0).is_zero() {
            return Ok(false); // x divides
        }
        if has_rational_root(&f) {
            return Ok(false);
        }
        if n <= 3 {
            return Ok(true);
        }
        Ok(!has_quadratic_factor_quartic(&f))
    }

    /// Render using `x` as the variable, descending powers.
    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match k {
                0 => format!("{}", mag),
                1 => {
                    if mag.is_one() {
                        "x".into()
                    } else {
                        format!("{}x", mag)
                    }
                }
                _ => {
                    if mag.is_one() {
                        format!("x^{}", k)
                    } else {
                        format!("{}x^{}", mag, k)
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{}", term)
                } else {
                    term
                });
            } else {
                parts.push(format!("{} {}", if c.is_negative() { "-" } else { "+" }, term));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // all positive divisors; intended for small constant terms in the
    // rational-root / quadratic-factor tests
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
        if out.len() > 100_000 {
            break; // safety cap; callers only hit this with absurd inputs
        }
    }
    out.sort();
    out
}

fn has_rational_root(f: &IntPoly) -> bool {
    // rational root p/q needs p | a0, q | an
    let a0 = f.coeff(0);
    let an = f.leading();
    for p in divisors(&a0) {
        for q in divisors(&an) {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for sign in [1i32, -1] {
                let cand = BigRational::new(if sign < 0 { -p.clone() } else { p.clone() }, q.clone());
                if f.sign_at(&cand) == 0 {
                    return true;
                }
            }
        }
    }
    false
}

fn has_quadratic_factor_quartic(f: &IntPoly) -> bool {
    // primitive quartic with no rational root; by Gauss a factorization over Q
    // gives one over Z into two quadratics (a x^2 + b x + c)(d x^2 + e x + g)
    let a4 = f.coeff(4);
    let a3 = f.coeff(3);
    let a2 = f.coeff(2);
    let a1 = f.coeff(1);
    let a0 = f.coeff(0);
    for a in divisors(&a4) {
        let d = &a4 / &a;
        for c_abs in divisors(&a0) {
            for c_sign in [1i32, -1] {
                let c = if c_sign < 0 { -c_abs.clone() } else { c_abs.clone() };
                if (&a0 % &c).is_zero() {
                    let g = &a0 / &c;
                    // solve a*e + b*d = a3 ; b*e = a2 - a*g - c*d ; b*g + c*e = a1
                    // iterate b over divisors bound via b*e relation
                    let m = &a2 - &a * &g - &c * &d;
                    let bound = m.abs() + a3.abs() * d.abs() + BigInt::one();
                    let mut b = -bound.clone();
                    while b <= bound {
                        let be_num = &a3 - &b * &d;
                        if !a.is_zero() && (&be_num % &a).is_zero() {
                            let e = &be_num / &a;
                            if &b * &e == m && &b * &g + &c * &e == a1 {
                                return true;
                            }
                        }
                        b += 1;
                    }
                }
            }
        }
    }
    false
}

/// Parse a polynomial in `x` with integer coefficients.
///
/// Grammar: signed terms `c`, `x`, `c x^k`, `x^k`, optional `*`, whitespace
/// insensitive. Example: `x^3 + x^2 - 2x - 1`.
pub fn parse_poly(input: &str) -> Result<IntPoly, PolyError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0usize;
    let mut any = false;
    while i < bytes.len() {
        let mut sign = 1i32;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(PolyError::Parse("trailing sign".into()));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff: BigInt = if i > start {
            s[start..i].parse().map_err(|e| PolyError::Parse(format!("{e}")))?
        } else {
            BigInt::one()
        };
        if sign < 0 {
            coeff = -coeff;
        }
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut power = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let pstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == pstart {
                    return Err(PolyError::Parse("missing exponent".into()));
                }
                power = s[pstart..i]
                    .parse()
                    .map_err(|e| PolyError::Parse(format!("{e}")))?;
            }
        } else if i == start {
            return Err(PolyError::Parse(format!(
                "unexpected character at position {i}"
            )));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coeff;
        any = true;
    }
    if !any {
        return Err(PolyError::Parse("no terms".into()));
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn discriminants_match_oracles() {
        // x^2 - 1 -> b^2 - 4ac = 4
        assert_eq!(p(&[-1, 0, 1]).discriminant(), BigInt::from(4));
        // resultant-expansion oracles
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant(), BigInt::from(-23));
        assert_eq!(p(&[-1, -2, 1, 1]).discriminant(), BigInt::from(49));
        assert_eq!(p(&[-8, -2, -1, 1]).discriminant(), BigInt::from(-2012));
        assert_eq!(p(&[-1, -3, 0, 1]).discriminant(), BigInt::from(81));
        // gamma_2 characteristic polynomial
        assert_eq!(p(&[-1, 27, -11, 1]).discriminant(), BigInt::from(9472));
        // non-monic: disc(2x^2+2x+2) = 4 - 4*2*2... b^2-4ac = 4-16 = -12
        assert_eq!(p(&[2, 2, 2]).discriminant(), BigInt::from(-12));
    }

    #[test]
    fn discriminant_brute_force_cross_check() {
        // disc(x^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1)
        assert_eq!(p(&[-1, 0, 0, 0, 1]).discriminant(), BigInt::from(-256));
        assert_eq!(p(&[1, 0, 0, 0, 1]).discriminant(), BigInt::from(256));
        // disc(x^4 + px + q) = -27 p^4 + 256 q^3
        assert_eq!(p(&[1, 1, 0, 0, 1]).discriminant(), BigInt::from(229));
        assert_eq!(p(&[2, 3, 0, 0, 1]).discriminant(), BigInt::from(-27 * 81 + 256 * 8));
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p(&[-1, 0, 1]); // (x-1)(x+1)
        let g = p(&[1, 1]); // x+1
        assert_eq!(f.gcd(&g), g);
        assert!(f.is_squarefree());
        let sq = f.mul(&g); // (x+1)^2 (x-1)
        assert_eq!(sq.squarefree_defect(), 1);
        assert!(!sq.is_squarefree());
    }

    #[test]
    fn irreducibility_small_degrees() {
        assert!(p(&[-1, -1, 0, 1]).is_irreducible().unwrap()); // x^3-x-1
        assert!(p(&[-2, 0, 1]).is_irreducible().unwrap()); // x^2-2
        assert!(!p(&[-1, 0, 1]).is_irreducible().unwrap()); // (x-1)(x+1)
        assert!(!p(&[1, 2, 1]).is_irreducible().unwrap()); // (x+1)^2
        assert!(!p(&[-1, 11, -11, 1]).is_irreducible().unwrap()); // has root 1
        // x^4+1 irreducible over Q, reducible mod every prime
        assert!(p(&[1, 0, 0, 0, 1]).is_irreducible().unwrap());
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2): no rational roots, quadratic split
        assert!(!p(&[4, 0, 0, 0, 1]).is_irreducible().unwrap());
        assert!(matches!(
            p(&[0, 0, 0, 0, 0, 1]).is_irreducible(),
            Err(PolyError::UnsupportedDegree(5))
        ));
    }

    #[test]
    fn parse_roundtrip() {
        let f = parse_poly("x^3 + x^2 - 2x - 1").unwrap();
        assert_eq!(f, p(&[-1, -2, 1, 1]));
        let g = parse_poly("-2*x^2+x").unwrap();
        assert_eq!(g, p(&[0, 1, -2]));
        assert_eq!(parse_poly("x").unwrap(), p(&[0, 1]));
        assert_eq!(parse_poly("7").unwrap(), p(&[7]));
        assert_eq!(parse_poly("x^2 - 2 x + 1 - x^2").unwrap(), p(&[1, -2]));
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("y+1").is_err());
        assert_eq!(
            parse_poly(&p(&[-1, 27, -11, 1]).to_display()).unwrap(),
            p(&[-1, 27, -11, 1])
        );
    }

    #[test]
    fn eval_and_signs() {
        let f = p(&[-1, 27, -11, 1]); // gamma_2 charpoly
        assert_eq!(f.eval_int(&BigInt::from(1)), BigInt::from(16)); // p^4 at p=2
        assert_eq!(f.eval_int(&BigInt::from(-1)), BigInt::from(-40)); // -(8+4p^2+p^4)
        let half = BigRational::new(BigInt::from(1), BigInt::from(20));
        assert_eq!(f.sign_at(&half), 1); // f(0.05) > 0
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(4))), -1);
        assert_eq!(f.sign_at(&BigRational::from(BigInt::from(8))), 1);
    }
}

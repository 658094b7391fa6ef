//! Polynomial arithmetic over F_q (q prime, arbitrary size) with complete
//! factorization for degree <= 4: distinct-degree splitting plus
//! Cantor-Zassenhaus equal-degree splitting with a fixed trial sequence.

use crate::linalg::mod_inverse;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense coefficients low-to-high, reduced mod q, no trailing zeros.
pub type FPoly = Vec<BigInt>;

pub fn trim(mut v: FPoly) -> FPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn reduce(coeffs: &[BigInt], q: &BigInt) -> FPoly {
    trim(coeffs.iter().map(|c| c.mod_floor(q)).collect())
}

pub fn deg(f: &FPoly) -> isize {
    f.len() as isize - 1
}

pub fn is_zero(f: &FPoly) -> bool {
    f.is_empty()
}

pub fn one() -> FPoly {
    vec![BigInt::one()]
}

pub fn x_poly() -> FPoly {
    vec![BigInt::zero(), BigInt::one()]
}

pub fn add(a: &FPoly, b: &FPoly, q: &BigInt) -> FPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let mut s = BigInt::zero();
        if i < a.len() {
            s += &a[i];
        }
        if i < b.len() {
            s += &b[i];
        }
        out[i] = s.mod_floor(q);
    }
    trim(out)
}

pub fn sub(a: &FPoly, b: &FPoly, q: &BigInt) -> FPoly {
    let neg_b: FPoly = b.iter().map(|c| (-c).mod_floor(q)).collect();
    add(a, &neg_b, q)
}

pub fn mul(a: &FPoly, b: &FPoly, q: &BigInt) -> FPoly {
    if is_zero(a) || is_zero(b) {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = ai * bj;
            out[i + j] += t;
        }
    }
    trim(out.into_iter().map(|c| c.mod_floor(q)).collect())
}

pub fn scalar_mul(a: &FPoly, s: &BigInt, q: &BigInt) -> FPoly {
    trim(a.iter().map(|c| (c * s).mod_floor(q)).collect())
}

/// (quotient, remainder) with the divisor made monic internally.
pub fn divrem(a: &FPoly, b: &FPoly, q: &BigInt) -> (FPoly, FPoly) {
    assert!(!is_zero(b), "division by zero polynomial");
    let lead_inv = mod_inverse(b.last().unwrap(), q).expect("leading coeff invertible");
    let mut rem: Vec<BigInt> = a.clone();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = (&rem[i] * &lead_inv).mod_floor(q);
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for j in 0..=db {
            let t = (&c * &b[j]).mod_floor(q);
            rem[i - db + j] = (&rem[i - db + j] - t).mod_floor(q);
        }
    }
    (trim(quot), trim(rem))
}

pub fn rem(a: &FPoly, b: &FPoly, q: &BigInt) -> FPoly {
    divrem(a, b, q).1
}

pub fn monic(f: &FPoly, q: &BigInt) -> FPoly {
    if is_zero(f) {
        return vec![];
    }
    let inv = mod_inverse(f.last().unwrap(), q).expect("leading coeff invertible");
    scalar_mul(f, &inv, q)
}

pub fn gcd(a: &FPoly, b: &FPoly, q: &BigInt) -> FPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !is_zero(&y) {
        let r = rem(&x, &y, q);
        x = y;
        y = r;
    }
    if is_zero(&x) {
        x
    } else {
        monic(&x, q)
    }
}

/// x^e mod f (square and multiply on polynomials).
pub fn pow_x_mod(e: &BigInt, f: &FPoly, q: &BigInt) -> FPoly {
    pow_mod(&x_poly(), e, f, q)
}

pub fn pow_mod(base: &FPoly, e: &BigInt, f: &FPoly, q: &BigInt) -> FPoly {
    let mut result = one();
    let mut b = rem(base, f, q);
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = rem(&mul(&result, &b, q), f, q);
        }
        b = rem(&mul(&b, &b, q), f, q);
        e >>= 1;
    }
    result
}

pub fn derivative(f: &FPoly, q: &BigInt) -> FPoly {
    if f.len() <= 1 {
        return vec![];
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (c * BigInt::from(i)).mod_floor(q))
            .collect(),
    )
}

pub fn eval(f: &FPoly, x: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(q);
    }
    acc
}

/// Complete factorization into monic irreducibles with multiplicity.
/// Supports deg <= 4 (the only degrees this crate constructs).
pub fn factor(f_in: &FPoly, q: &BigInt) -> Vec<(FPoly, u32)> {
    let mut f = monic(f_in, q);
    assert!(deg(&f) >= 1 && deg(&f) <= 4, "factor: degree out of range");
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    let mut push = |out: &mut Vec<(FPoly, u32)>, p: FPoly, e: u32| {
        if let Some(slot) = out.iter_mut().find(|(g, _)| *g == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    // peel linear factors via roots of gcd(f, x^q - x)
    loop {
        if deg(&f) < 1 {
            break;
        }
        if deg(&f) == 1 {
            push(&mut out, f.clone(), 1);
            f = one();
            break;
        }
        let xq = pow_x_mod(q, &f, q);
        let lin = gcd(&sub(&xq, &x_poly(), q), &f, q);
        if deg(&lin) >= 1 {
            for root in roots_of_split(&lin, q) {
                let factor_poly = vec![(-&root).mod_floor(q), BigInt::one()];
                let mut e = 0u32;
                loop {
                    let (quo, r) = divrem(&f, &factor_poly, q);
                    if is_zero(&r) {
                        f = quo;
                        e += 1;
                    } else {
                        break;
                    }
                }
                push(&mut out, factor_poly, e);
            }
            continue;
        }
        break;
    }
    if deg(&f) < 1 {
        return sorted(out);
    }
    // remaining factors have degree >= 2; for deg(f) <= 4 the shapes are:
    // one quadratic, quadratic^2, two quadratics, one cubic, one quartic
    if deg(&f) == 2 || deg(&f) == 3 {
        // no roots -> irreducible (cubic with no roots and no linear part is
        // irreducible; quadratic with no roots is irreducible)
        if deg(&f) == 2 {
            push(&mut out, f.clone(), 1);
            return sorted(out);
        }
        push(&mut out, f.clone(), 1);
        return sorted(out);
    }
    // quartic with no linear factors: either irreducible or two quadratics
    let q2 = q * q;
    let xq2 = pow_x_mod(&q2, &f, q);
    let quad_part = gcd(&sub(&xq2, &x_poly(), q), &f, q);
    if deg(&quad_part) == 0 {
        push(&mut out, f, 1);
        return sorted(out);
    }
    if deg(&quad_part) == 2 {
        let (quo, r) = divrem(&f, &quad_part, q);
        debug_assert!(is_zero(&r));
        push(&mut out, quad_part.clone(), 1);
        if quo == quad_part {
            push(&mut out, quad_part, 1);
        } else if deg(&quo) == 2 {
            push(&mut out, quo, 1);
        } else {
            debug_assert!(deg(&quo) == 0);
        }
        return sorted(out);
    }
    // quad_part has degree 4: product of two distinct quadratics or a square
    // of one quadratic; detect the square case via gcd with derivative
    let der = derivative(&f, q);
    let g = if is_zero(&der) { f.clone() } else { gcd(&f, &der, q) };
    if deg(&g) == 2 {
        push(&mut out, g, 2);
        return sorted(out);
    }
    // two distinct quadratics: split by Cantor-Zassenhaus
    let split = equal_degree_split(&f, 2, q);
    let (a, b) = split.expect("equal-degree split of quartic");
    push(&mut out, a, 1);
    push(&mut out, b, 1);
    sorted(out)
}

fn sorted(mut v: Vec<(FPoly, u32)>) -> Vec<(FPoly, u32)> {
    v.sort_by(|a, b| (deg(&a.0), a.0.clone()).cmp(&(deg(&b.0), b.0.clone())));
    v
}

/// Roots of a product of distinct linear factors.
fn roots_of_split(lin: &FPoly, q: &BigInt) -> Vec<BigInt> {
    let d = deg(lin);
    debug_assert!(d >= 1);
    if d == 1 {
        // monic x + c -> root -c
        let c = lin[0].clone();
        return vec![(-c).mod_floor(q)];
    }
    // small q: scan; large q: Cantor-Zassenhaus on the linear part
    if q.bits() <= 20 {
        let qs = num_traits::ToPrimitive::to_u64(q).unwrap();
        let mut roots = Vec::new();
        for r in 0..qs {
            let rb = BigInt::from(r);
            if eval(lin, &rb, q).is_zero() {
                roots.push(rb);
            }
        }
        return roots;
    }
    let (a, b) = equal_degree_split(lin, 1, q).expect("split linear product");
    let mut out = roots_of_split(&a, q);
    out.extend(roots_of_split(&b, q));
    out
}

/// Split a product of distinct irreducibles of equal degree d into two
/// nontrivial factors. Deterministic trial sequence; q odd.
fn equal_degree_split(f: &FPoly, d: u32, q: &BigInt) -> Option<(FPoly, FPoly)> {
    debug_assert!(deg(f) > d as isize);
    if q.is_even() {
        // q = 2: brute force over the four monic quadratics / two linears
        return split_char2(f, d);
    }
    let e = (q.pow(d) - BigInt::one()) / BigInt::from(2);
    for trial in 1u64..200 {
        // trial polynomial x + t, then (x^2 + t) etc. via simple sequence
        let t = BigInt::from(trial);
        let base = if trial % 2 == 1 {
            vec![t.mod_floor(q), BigInt::one()]
        } else {
            vec![t.mod_floor(q), BigInt::zero(), BigInt::one()]
        };
        let p = pow_mod(&base, &e, f, q);
        let g = gcd(&sub(&p, &one(), q), f, q);
        let dg = deg(&g);
        if dg >= 1 && dg < deg(f) {
            let (quo, r) = divrem(f, &g, q);
            debug_assert!(is_zero(&r));
            return Some((g, quo));
        }
    }
    None
}

fn split_char2(f: &FPoly, d: u32) -> Option<(FPoly, FPoly)> {
    let q = BigInt::from(2);
    // enumerate monic polynomials of degree d over F_2 and trial divide
    let count = 1u32 << d;
    for bits in 0..count {
        let mut cand: Vec<BigInt> = (0..d).map(|i| BigInt::from((bits >> i) & 1)).collect();
        cand.push(BigInt::one());
        if deg(&cand) != d as isize {
            continue;
        }
        let (quo, r) = divrem(f, &cand, &q);
        if is_zero(&r) && deg(&quo) >= 1 {
            return Some((cand, quo));
        }
    }
    None
}

//! Arithmetic on order elements (coordinates in the order basis) and
//! certified embeddings into R and C.

use crate::dyadic::{DyInterval, Dyadic};
use crate::intpoly::IntPoly;
use crate::linalg::{det_bigint, solve_rational};
use crate::numfield::order::{mul_coords, NumberFieldOrder};
use crate::numfield::sturm::{refine_interval, sturm_real_roots};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn add_coords(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_coords(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_coords(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_coords(a: &[BigInt]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn scale_coords(a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * k).collect()
}

/// Matrix of multiplication by `a` in the omega basis (columns are a*omega_j).
pub fn mult_matrix(order: &NumberFieldOrder, a: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = order.degree();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let col = mul_coords(order, a, &e);
        for (i, item) in col.into_iter().enumerate() {
            m[i][j] = item;
        }
    }
    m
}

/// Field norm (exact integer for order elements).
pub fn norm_coords(order: &NumberFieldOrder, a: &[BigInt]) -> BigInt {
    det_bigint(&mult_matrix(order, a))
}

/// Field trace.
pub fn trace_coords(order: &NumberFieldOrder, a: &[BigInt]) -> BigInt {
    let m = mult_matrix(order, a);
    (0..order.degree()).map(|i| m[i][i].clone()).sum()
}

pub fn is_unit(order: &NumberFieldOrder, a: &[BigInt]) -> bool {
    let n = norm_coords(order, a);
    n.abs().is_one()
}

/// a^k by repeated squaring.
pub fn pow_coords(order: &NumberFieldOrder, a: &[BigInt], k: u64) -> Vec<BigInt> {
    let mut result = order.one_coords().to_vec();
    let mut base = a.to_vec();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_coords(order, &result, &base);
        }
        base = mul_coords(order, &base, &base);
        e >>= 1;
    }
    result
}

/// Inverse inside the order, when it exists there.
pub fn inverse_in_order(order: &NumberFieldOrder, a: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = order.degree();
    let m = mult_matrix(order, a);
    let mr: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
    let rhs: Vec<BigRational> = order
        .one_coords()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect();
    let x = solve_rational(&mr, &rhs)?;
    let mut out = Vec::with_capacity(n);
    for v in x {
        if !v.is_integer() {
            return None;
        }
        out.push(v.to_integer());
    }
    Some(out)
}

/// adj(a) = N(a) * a^{-1}, always an order element.
pub fn adjugate_coords(order: &NumberFieldOrder, a: &[BigInt]) -> Vec<BigInt> {
    let nrm = norm_coords(order, a);
    assert!(!nrm.is_zero(), "adjugate of zero divisor");
    let m = mult_matrix(order, a);
    let mr: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
    let rhs: Vec<BigRational> = order
        .one_coords()
        .iter()
        .map(|c| BigRational::from(c.clone()) * BigRational::from(nrm.clone()))
        .collect();
    let x = solve_rational(&mr, &rhs).expect("invertible multiplication matrix");
    x.into_iter()
        .map(|v| {
            debug_assert!(v.is_integer(), "adjugate must be integral");
            v.to_integer()
        })
        .collect()
}

/// Certified embedding data for the field of an order.
#[derive(Debug, Clone)]
pub struct FieldEmbeddings {
    pub poly: IntPoly,
    pub r1: usize,
    pub r2: usize,
    pub real_roots: Vec<DyInterval>,
    /// One (re, im) interval pair per conjugate class, im > 0.
    pub complex_roots: Vec<(DyInterval, DyInterval)>,
    pub prec: u32,
}

impl FieldEmbeddings {
    /// Isolate and refine the roots of the defining polynomial.
    pub fn new(order: &NumberFieldOrder, prec: u32) -> Self {
        let f = &order.poly;
        let n = f.degree();
        let iso = sturm_real_roots(f, prec).expect("defining polynomial is squarefree");
        let r1 = iso.count();
        let r2 = (n - r1) / 2;
        let complex_roots = complex_pairs(f, &iso.intervals, r2, prec);
        FieldEmbeddings {
            poly: f.clone(),
            r1,
            r2,
            real_roots: iso.intervals,
            complex_roots,
            prec,
        }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    /// Dirichlet unit rank r1 + r2 - 1.
    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }

    /// Refine all roots to a higher working precision.
    pub fn refined(&self, prec: u32) -> Self {
        if prec <= self.prec {
            return self.clone();
        }
        let reals: Vec<DyInterval> = self
            .real_roots
            .iter()
            .map(|iv| refine_interval(&self.poly, iv, prec))
            .collect();
        let complex_roots = complex_pairs(&self.poly, &reals, self.r2, prec);
        FieldEmbeddings {
            poly: self.poly.clone(),
            r1: self.r1,
            r2: self.r2,
            real_roots: reals,
            complex_roots,
            prec,
        }
    }

    /// Values of all real embeddings of an order element (signed intervals).
    pub fn real_values(&self, order: &NumberFieldOrder, coords: &[BigInt]) -> Vec<DyInterval> {
        let power = order.basis_to_power(coords);
        self.real_roots
            .iter()
            .map(|root| eval_rat_poly(&power, root, self.prec))
            .collect()
    }

    /// Moduli |sigma(x)| of all embeddings: r1 real entries then r2 complex
    /// entries (each counted once).
    pub fn abs_values(&self, order: &NumberFieldOrder, coords: &[BigInt]) -> Vec<DyInterval> {
        let power = order.basis_to_power(coords);
        let mut out: Vec<DyInterval> = self
            .real_roots
            .iter()
            .map(|root| eval_rat_poly(&power, root, self.prec).abs())
            .collect();
        for (re, im) in &self.complex_roots {
            let (vre, vim) = eval_rat_poly_complex(&power, re, im, self.prec);
            let m2 = vre.mul(&vre).add(&vim.mul(&vim)).round_out(self.prec);
            out.push(m2.sqrt(self.prec));
        }
        out
    }

    /// Certified log|sigma_i(x)| for every embedding class, given nonzero x.
    /// Refines roots internally if some |sigma(x)| interval touches zero.
    pub fn log_abs_values(
        &self,
        order: &NumberFieldOrder,
        coords: &[BigInt],
        prec: u32,
    ) -> (Vec<DyInterval>, FieldEmbeddings) {
        let mut emb = self.clone();
        loop {
            let vals = emb.abs_values(order, coords);
            if vals.iter().all(|v| v.lo.is_positive()) {
                let logs = vals.iter().map(|v| v.ln(prec)).collect();
                return (logs, emb);
            }
            let next = emb.prec.saturating_mul(2).max(prec + 64);
            assert!(next < 1 << 22, "embedding precision runaway");
            emb = emb.refined(next);
        }
    }

    /// f64 snapshot of the embedding coordinates (real parts stacked with
    /// sqrt(2)-scaled complex re/im pairs), suitable for lattice navigation.
    pub fn to_f64_rows(&self, order: &NumberFieldOrder) -> Vec<Vec<f64>> {
        let n = order.degree();
        let mut rows = Vec::with_capacity(n);
        let sqrt2 = std::f64::consts::SQRT_2;
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let power = order.basis_to_power(&e);
            let mut row = Vec::with_capacity(n);
            for root in &self.real_roots {
                row.push(eval_rat_poly(&power, root, 64).mid_f64());
            }
            for (re, im) in &self.complex_roots {
                let (vre, vim) = eval_rat_poly_complex(&power, re, im, 64);
                row.push(sqrt2 * vre.mid_f64());
                row.push(sqrt2 * vim.mid_f64());
            }
            rows.push(row);
        }
        rows
    }
}

/// Complex conjugate root pairs for degrees <= 3 (and totally real any
/// degree, where the list is empty).
fn complex_pairs(
    f: &IntPoly,
    reals: &[DyInterval],
    r2: usize,
    prec: u32,
) -> Vec<(DyInterval, DyInterval)> {
    if r2 == 0 {
        return vec![];
    }
    let n = f.degree();
    assert!(
        n <= 3,
        "complex embeddings implemented for degree <= 3 (degree {n} requested)"
    );
    // trace of all roots = -a_{n-1}; product = (-1)^n a_0 (monic)
    let trace = DyInterval::from_int(&(-f.coeff(n - 1)));
    let a0 = f.coeff(0);
    match (n, reals.len()) {
        (2, 0) => {
            // x^2 + bx + c: re = -b/2, im = sqrt(c - b^2/4)
            let re = trace.mul_pow2(-1);
            let c = DyInterval::from_int(&a0);
            let im2 = c.sub(&re.mul(&re));
            vec![(re, im2.sqrt(prec))]
        }
        (3, 1) => {
            // re = (trace - rho)/2 ; |z|^2 = |a0| / |rho| ; im > 0
            let rho = &reals[0];
            let re = trace.sub(rho).mul_pow2(-1);
            let prod = DyInterval::from_int(&-a0); // rho * |z|^2
            let m2 = prod.div(rho, prec);
            debug_assert!(m2.hi.is_positive());
            let im2 = m2.sub(&re.mul(&re)).round_out(prec);
            vec![(re, im2.sqrt(prec))]
        }
        _ => unreachable!("r2 > 0 with unexpected signature"),
    }
}

/// Evaluate a rational-coefficient polynomial at a real interval point.
pub fn eval_rat_poly(coeffs: &[BigRational], x: &DyInterval, prec: u32) -> DyInterval {
    let mut acc = DyInterval::zero();
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(x)
            .add(&DyInterval::from_rational(c, prec + 16))
            .round_out(prec + 16);
    }
    acc
}

/// Evaluate at a complex interval point; returns (re, im).
pub fn eval_rat_poly_complex(
    coeffs: &[BigRational],
    zre: &DyInterval,
    zim: &DyInterval,
    prec: u32,
) -> (DyInterval, DyInterval) {
    let mut are = DyInterval::zero();
    let mut aim = DyInterval::zero();
    for c in coeffs.iter().rev() {
        let nre = are
            .mul(zre)
            .sub(&aim.mul(zim))
            .add(&DyInterval::from_rational(c, prec + 16))
            .round_out(prec + 16);
        let nim = are.mul(zim).add(&aim.mul(zre)).round_out(prec + 16);
        are = nre;
        aim = nim;
    }
    (are, aim)
}

/// Dyadic-interval product of |sigma_i(x)| over all embeddings with
/// multiplicity; sanity companion to the exact norm.
pub fn abs_norm_interval(
    order: &NumberFieldOrder,
    emb: &FieldEmbeddings,
    coords: &[BigInt],
) -> DyInterval {
    let vals = emb.abs_values(order, coords);
    let mut acc = DyInterval::from_i64(1);
    for (i, v) in vals.iter().enumerate() {
        acc = acc.mul(v);
        if i >= emb.r1 {
            acc = acc.mul(v); // complex embeddings count twice
        }
        acc = acc.round_out(emb.prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::parse_poly;
    use crate::numfield::order::maximal_order;
    use crate::primes::DEFAULT_RHO_BUDGET;

    fn ord(s: &str) -> NumberFieldOrder {
        maximal_order(&parse_poly(s).unwrap(), DEFAULT_RHO_BUDGET).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn norm_trace_quadratic() {
        let o = ord("x^2 - 2");
        // 1 + theta: norm = 1 - 2 = -1, trace = 2
        let a = bi(&[1, 1]);
        assert_eq!(norm_coords(&o, &a), BigInt::from(-1));
        assert_eq!(trace_coords(&o, &a), BigInt::from(2));
        assert!(is_unit(&o, &a));
        // 3 + 2 theta: norm 9 - 8 = 1
        assert_eq!(norm_coords(&o, &bi(&[3, 2])), BigInt::one());
        assert!(!is_unit(&o, &bi(&[2, 1]))); // norm 2
    }

    #[test]
    fn inverse_and_adjugate() {
        let o = ord("x^2 - 2");
        let u = bi(&[1, 1]); // 1 + sqrt2, inverse -(1 - sqrt2) = -1 + sqrt2
        let inv = inverse_in_order(&o, &u).unwrap();
        assert_eq!(inv, bi(&[-1, 1]));
        assert_eq!(mul_coords(&o, &u, &inv), o.one_coords());
        // 2 has inverse 1/2, not in the order
        assert!(inverse_in_order(&o, &bi(&[2, 0])).is_none());
        // adj(a) * a = N(a)
        let a = bi(&[2, 1]);
        let adj = adjugate_coords(&o, &a);
        let n = norm_coords(&o, &a);
        assert_eq!(
            mul_coords(&o, &a, &adj),
            scale_coords(o.one_coords(), &n)
        );
    }

    #[test]
    fn embeddings_signature() {
        let o = ord("x^3 + x^2 - 2x - 1");
        let e = FieldEmbeddings::new(&o, 96);
        assert_eq!(e.signature(), (3, 0));
        assert_eq!(e.unit_rank(), 2);
        let o = ord("x^3 - x - 1");
        let e = FieldEmbeddings::new(&o, 96);
        assert_eq!(e.signature(), (1, 1));
        assert_eq!(e.unit_rank(), 1);
        let o = ord("x^2 + 1");
        let e = FieldEmbeddings::new(&o, 96);
        assert_eq!(e.signature(), (0, 1));
        assert_eq!(e.unit_rank(), 0);
    }

    #[test]
    fn abs_values_consistent_with_norm() {
        // |N(x)| = prod |sigma_i(x)|^(mult) certified
        for s in ["x^3 - x - 1", "x^3 + x^2 - 2x - 1", "x^2 - 2"] {
            let o = ord(s);
            let emb = FieldEmbeddings::new(&o, 128);
            for coords in [bi(&[1, 1, 0]), bi(&[2, -1, 1]), bi(&[0, 3, -2])] {
                let coords = &coords[..o.degree()];
                if is_zero_coords(coords) {
                    continue;
                }
                let exact = norm_coords(&o, coords).abs();
                let iv = abs_norm_interval(&o, &emb, coords);
                let e = BigRational::from(exact);
                assert!(
                    iv.lo.to_rational() <= e && e <= iv.hi.to_rational(),
                    "norm interval mismatch for {coords:?} in {s}"
                );
            }
        }
    }

    #[test]
    fn log_abs_row_sum_vanishes_for_units() {
        // sum over embeddings (with multiplicity) of log|sigma(u)| = 0
        let o = ord("x^3 + x^2 - 2x - 1");
        let emb = FieldEmbeddings::new(&o, 160);
        let theta = o.theta_coords().unwrap();
        assert!(is_unit(&o, &theta)); // constant term is -1
        let (logs, emb2) = emb.log_abs_values(&o, &theta, 128);
        let mut sum = DyInterval::zero();
        for (i, l) in logs.iter().enumerate() {
            sum = sum.add(l);
            if i >= emb2.r1 {
                sum = sum.add(l);
            }
        }
        assert!(sum.contains_zero());
        assert!(sum.width().to_f64() < 1e-30);
    }

    #[test]
    fn complex_modulus_cubic() {
        // x^3 - x - 1: rho * |z|^2 = 1 so |z| = rho^(-1/2)
        let o = ord("x^3 - x - 1");
        let emb = FieldEmbeddings::new(&o, 128);
        let theta = o.theta_coords().unwrap();
        let vals = emb.abs_values(&o, &theta);
        assert_eq!(vals.len(), 2);
        let rho = vals[0].mid_f64();
        let z = vals[1].mid_f64();
        assert!((z - rho.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn embedding_rows_f64() {
        let o = ord("x^2 - 2");
        let emb = FieldEmbeddings::new(&o, 96);
        let rows = emb.to_f64_rows(&o);
        // basis 1, theta: embeddings (1, 1) and (-sqrt2, sqrt2)
        assert!((rows[0][0] - 1.0).abs() < 1e-12);
        assert!((rows[0][1] - 1.0).abs() < 1e-12);
        let s = 2f64.sqrt();
        assert!((rows[1][0] + s).abs() < 1e-12 || (rows[1][0] - s).abs() < 1e-12);
    }
}

//! Orders in number fields of degree <= 4: integral bases, discriminants,
//! and q-maximalization.
//!
//! The maximal order is computed by repeated enlargement at every prime whose
//! square divides the polynomial discriminant: the q-radical of O/qO is found
//! through an iterated Frobenius kernel, and the ring of multipliers of its
//! preimage ideal strictly contains a non-q-maximal order. Dedekind's
//! criterion is implemented separately as an independent check on whether a
//! prime divides the index of the equation order.

use crate::intpoly::{IntPoly, PolyError};
use crate::linalg::{det_rational, hnf_rows, invert_rational, kernel_mod_p};
use crate::numfield::fpoly;
use crate::primes::{factor, Factorization};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum OrderError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the defining polynomial must be monic")]
    NotMonic,
    #[error("the defining polynomial must be irreducible over the rationals")]
    Reducible,
}

/// An order in Q[x]/(f), given by a basis in the power basis of theta.
///
/// `basis_num / den` rows express the basis elements omega_i as rational
/// combinations of 1, theta, ..., theta^(n-1); omega_0 is always 1. The
/// multiplication table stores omega_i * omega_j in omega coordinates, which
/// are integers precisely because the order is a ring.
#[derive(Debug, Clone)]
pub struct NumberFieldOrder {
    pub poly: IntPoly,
    pub den: BigInt,
    pub basis_num: Vec<Vec<BigInt>>,
    pub index: BigInt,
    pub disc_poly: BigInt,
    pub disc_field: BigInt,
    /// Complete factorization achieved and all squared primes processed.
    pub certified: bool,
    pub disc_factorization: Factorization,
    mult_table: Vec<Vec<Vec<BigInt>>>,
    one_coords: Vec<BigInt>,
}

impl NumberFieldOrder {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// omega_i * omega_j in omega coordinates.
    pub fn table(&self, i: usize, j: usize) -> &[BigInt] {
        &self.mult_table[i][j]
    }

    /// Coordinates of 1 in the omega basis.
    pub fn one_coords(&self) -> &[BigInt] {
        &self.one_coords
    }

    /// Basis element as a rational polynomial in theta (power coords).
    pub fn basis_power_coords(&self, i: usize) -> Vec<BigRational> {
        self.basis_num[i]
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// theta in omega coordinates (None if theta is not in the order --
    /// cannot happen for orders containing the equation order).
    pub fn theta_coords(&self) -> Option<Vec<BigInt>> {
        let n = self.degree();
        let mut target = vec![BigRational::zero(); n];
        target[1] = BigRational::one();
        self.power_to_basis(&target)
    }

    /// Convert power-basis rational coordinates to omega coordinates,
    /// returning None when the element is not in the order.
    pub fn power_to_basis(&self, power: &[BigRational]) -> Option<Vec<BigInt>> {
        let n = self.degree();
        let b: Vec<Vec<BigRational>> = (0..n).map(|i| self.basis_power_coords(i)).collect();
        // solve x * B = power  (row vector times basis matrix)
        let bt: Vec<Vec<BigRational>> = (0..n)
            .map(|j| (0..n).map(|i| b[i][j].clone()).collect())
            .collect();
        let x = crate::linalg::solve_rational(&bt, power)?;
        let mut out = Vec::with_capacity(n);
        for v in x {
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer());
        }
        Some(out)
    }

    /// omega coordinates -> power-basis rational coordinates.
    pub fn basis_to_power(&self, coords: &[BigInt]) -> Vec<BigRational> {
        let n = self.degree();
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cr = BigRational::from(c.clone());
            for (j, item) in out.iter_mut().enumerate() {
                *item += &cr * BigRational::new(self.basis_num[i][j].clone(), self.den.clone());
            }
        }
        out
    }
}

/// The equation order Z[theta].
pub fn equation_order(f: &IntPoly) -> Result<NumberFieldOrder, OrderError> {
    validate_poly(f)?;
    let n = f.degree();
    let disc_poly = f.discriminant();
    let basis_num: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut order = NumberFieldOrder {
        poly: f.clone(),
        den: BigInt::one(),
        basis_num,
        index: BigInt::one(),
        disc_poly: disc_poly.clone(),
        disc_field: disc_poly,
        certified: false,
        disc_factorization: Factorization {
            factors: vec![],
            cofactor: BigInt::zero(),
        },
        mult_table: vec![],
        one_coords: vec![],
    };
    order.mult_table = build_mult_table(&order).expect("equation order is a ring");
    order.one_coords = identity_coords(&order);
    Ok(order)
}

fn validate_poly(f: &IntPoly) -> Result<(), OrderError> {
    if f.degree() < 1 {
        return Err(OrderError::Poly(PolyError::ConstantPolynomial));
    }
    if f.degree() > 4 {
        return Err(OrderError::Poly(PolyError::UnsupportedDegree(f.degree())));
    }
    if !f.is_monic() {
        return Err(OrderError::NotMonic);
    }
    if !f.is_irreducible()? {
        return Err(OrderError::Reducible);
    }
    Ok(())
}

/// Multiply two power-basis rational polynomials mod f.
fn power_mul_mod(a: &[BigRational], b: &[BigRational], f: &IntPoly) -> Vec<BigRational> {
    let n = f.degree();
    let mut prod = vec![BigRational::zero(); 2 * n - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    // reduce: theta^n = -(f_{n-1} theta^(n-1) + ... + f_0)
    for k in (n..2 * n - 1).rev() {
        let c = prod[k].clone();
        if c.is_zero() {
            continue;
        }
        prod[k] = BigRational::zero();
        for j in 0..n {
            let t = &c * BigRational::from(f.coeff(j));
            prod[k - n + j] -= t;
        }
    }
    prod.truncate(n);
    prod
}

/// Build the integer multiplication table; None if the lattice is not closed
/// under multiplication (not an order).
fn build_mult_table(order: &NumberFieldOrder) -> Option<Vec<Vec<Vec<BigInt>>>> {
    let n = order.degree();
    let mut table = vec![vec![vec![]; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let prod = power_mul_mod(
                &order.basis_power_coords(i),
                &order.basis_power_coords(j),
                &order.poly,
            );
            let coords = order.power_to_basis(&prod)?;
            table[i][j] = coords.clone();
            table[j][i] = coords;
        }
    }
    Some(table)
}

/// Dedekind's criterion: does q divide the index [O_K : Z[theta]]?
pub fn dedekind_index_divisible(f: &IntPoly, q: &BigInt) -> bool {
    let fq = fpoly::reduce(f.coeffs(), q);
    let factors = fpoly::factor(&fq, q);
    // radical g and cofactor h of f mod q
    let mut g = fpoly::one();
    for (p, _) in &factors {
        g = fpoly::mul(&g, p, q);
    }
    let h = fpoly::divrem(&fq, &g, q).0;
    // lift g, h to Z[x] with coefficients in [0, q)
    let lift = |p: &fpoly::FPoly| IntPoly::new(p.clone());
    let gh = lift(&g).mul(&lift(&h));
    let diff = gh.sub(f);
    // all coefficients divisible by q
    let fq_big: Vec<BigInt> = diff.coeffs().iter().map(|c| c / q).collect();
    let big_f = fpoly::reduce(&fq_big, q);
    let d1 = fpoly::gcd(&big_f, &g, q);
    let d2 = fpoly::gcd(&d1, &h, q);
    fpoly::deg(&d2) >= 1
}

/// One q-enlargement step: returns the multiplier ring of the q-radical
/// ideal, or None when the order is already q-maximal.
fn enlarge_at(order: &NumberFieldOrder, q: &BigInt) -> Option<NumberFieldOrder> {
    let n = order.degree();
    // Frobenius matrix on O/qO: column i = coords of omega_i^q
    let mut frob = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        let img = pow_mod_q(order, &e, q);
        for (k, item) in img.iter().enumerate() {
            frob[k][i] = item.clone();
        }
    }
    // iterate so q^m >= n
    let mut m = 1u32;
    let mut qm = q.clone();
    while qm < BigInt::from(n) {
        qm *= q;
        m += 1;
    }
    let mut fm = frob.clone();
    for _ in 1..m {
        fm = mat_mul_mod(&fm, &frob, q);
    }
    // radical = kernel of fm
    let kernel = kernel_mod_p(&fm, q);
    // radical ideal I = qO + <kernel lifts> as a lattice in omega coords
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = q.clone();
        rows.push(r);
    }
    for v in &kernel {
        rows.push(v.clone());
    }
    let ideal = hnf_rows(&rows);
    debug_assert_eq!(ideal.len(), n);
    // multiplier conditions: x = sum y_i omega_i with, for every ideal
    // generator g_k, coords of x*g_k in the ideal basis = 0 mod q
    let ideal_rat: Vec<Vec<BigRational>> = ideal
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
    let ideal_inv = invert_rational(&transpose(&ideal_rat))?;
    let mut cond_rows: Vec<Vec<BigInt>> = Vec::new();
    for gk in &ideal {
        // row block: for each coordinate slot, a linear condition in y
        let mut block = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            let prod = mul_coords(order, &unit_vec(n, i), gk);
            // coords of prod in ideal basis: solve idealT * c = prod
            let prod_rat: Vec<BigRational> =
                prod.iter().map(|c| BigRational::from(c.clone())).collect();
            let c = mat_vec(&ideal_inv, &prod_rat);
            for (k, ck) in c.iter().enumerate() {
                debug_assert!(ck.is_integer(), "radical ideal is an O-module");
                block[k][i] = ck.to_integer();
            }
        }
        cond_rows.extend(block);
    }
    let sol = kernel_mod_p(&cond_rows, q);
    if sol.is_empty() {
        return None;
    }
    // new order basis: old basis + solutions / q, as lattice in omega coords
    let mut lat: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = q.clone();
        lat.push(r);
    }
    for y in &sol {
        lat.push(y.clone());
    }
    let h = hnf_rows(&lat); // basis of q * O' in omega coords
    debug_assert_eq!(h.len(), n);
    // convert to power coordinates: rows of (1/q) * h * B
    let mut new_num: Vec<Vec<BigInt>> = Vec::new();
    let new_den = q * &order.den;
    for row in &h {
        let mut acc = vec![BigInt::zero(); n];
        for (i, c) in row.iter().enumerate() {
            for j in 0..n {
                acc[j] += c * &order.basis_num[i][j];
            }
        }
        new_num.push(acc);
    }
    // normalize: divide den and all numerators by their gcd
    let mut g = new_den.clone();
    for row in &new_num {
        for c in row {
            g = g.gcd(c);
        }
    }
    let new_den = new_den / &g;
    for row in &mut new_num {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
    let mut enlarged = NumberFieldOrder {
        poly: order.poly.clone(),
        den: new_den,
        basis_num: new_num,
        index: order.index.clone(),
        disc_poly: order.disc_poly.clone(),
        disc_field: order.disc_field.clone(),
        certified: false,
        disc_factorization: order.disc_factorization.clone(),
        mult_table: vec![],
        one_coords: vec![],
    };
    normalize_basis(&mut enlarged);
    enlarged.mult_table = build_mult_table(&enlarged).expect("multiplier ring is a ring");
    enlarged.one_coords = identity_coords(&enlarged);
    // index gained = q^(dim sol)
    enlarged.index = &order.index * q.pow(sol.len() as u32);
    Some(enlarged)
}

/// Put the basis in HNF form over the common denominator.
fn normalize_basis(order: &mut NumberFieldOrder) {
    let h = hnf_rows(&order.basis_num);
    debug_assert_eq!(h.len(), order.degree());
    order.basis_num = h;
}

/// Coordinates of the field element 1 in the omega basis.
fn identity_coords(order: &NumberFieldOrder) -> Vec<BigInt> {
    let n = order.degree();
    let mut target = vec![BigRational::zero(); n];
    target[0] = BigRational::one();
    order
        .power_to_basis(&target)
        .expect("an order always contains 1")
}

fn unit_vec(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Multiply two elements in omega coordinates via the table.
pub fn mul_coords(order: &NumberFieldOrder, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = order.degree();
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let c = &a[i] * &b[j];
            for (k, t) in order.mult_table[i][j].iter().enumerate() {
                if !t.is_zero() {
                    out[k] += &c * t;
                }
            }
        }
    }
    out
}

fn pow_mod_q(order: &NumberFieldOrder, base: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    // base^q mod q in O/qO
    let n = order.degree();
    let reduce = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|c| c.mod_floor(q)).collect() };
    let _ = n;
    let mut result = order.one_coords.clone();
    let mut b = reduce(base.to_vec());
    let mut e = q.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = reduce(mul_coords(order, &result, &b));
        }
        b = reduce(mul_coords(order, &b, &b));
        e >>= 1;
    }
    result
}

fn mat_mul_mod(a: &[Vec<BigInt>], b: &[Vec<BigInt>], q: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = (&a[i][k] * &b[k][j]).mod_floor(q);
                out[i][j] = (&out[i][j] + t).mod_floor(q);
            }
        }
    }
    out
}

fn transpose(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Compute the maximal order (or the largest certified p-maximal order when
/// the discriminant cannot be fully factored within `rho_budget`).
pub fn maximal_order(f: &IntPoly, rho_budget: u64) -> Result<NumberFieldOrder, OrderError> {
    let mut order = equation_order(f)?;
    let fac = factor(&order.disc_poly, rho_budget);
    order.disc_factorization = fac.clone();
    let mut squared: Vec<BigInt> = fac.squared_primes();
    squared.sort();
    for q in &squared {
        loop {
            match enlarge_at(&order, q) {
                Some(bigger) => order = bigger,
                None => break,
            }
        }
    }
    order.disc_field = &order.disc_poly / (&order.index * &order.index);
    order.certified = fac.is_complete();
    order.disc_factorization = fac;
    // disc identity must hold exactly
    debug_assert_eq!(
        &order.disc_poly,
        &(&order.disc_field * &order.index * &order.index)
    );
    Ok(order)
}

/// Discriminant of the order from its basis (cross-check utility): the
/// determinant identity disc(O) = disc_poly / [Z[theta] : ... ]^2 specializes
/// to det(basis)^2 * disc_poly.
pub fn order_disc_from_basis(order: &NumberFieldOrder) -> BigRational {
    let b: Vec<Vec<BigRational>> = (0..order.degree())
        .map(|i| order.basis_power_coords(i))
        .collect();
    let d = det_rational(&b);
    &d * &d * BigRational::from(order.disc_poly.clone())
}

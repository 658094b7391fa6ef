//! Small exact matrices: fraction-free determinants, rational solves,
//! Hermite normal form, and kernels mod p.
//!
//! Everything here targets the tiny dimensions of this crate (n <= 8);
//! algorithms are chosen for exactness, not asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact determinant of a square BigInt matrix (Bareiss fraction-free).
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // pivot search
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev; // exact by Bareiss
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Exact determinant over the rationals.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    // clear denominators row by row, then Bareiss
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigRational::one();
    let mut im: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let mut den = BigInt::one();
        for x in row {
            den = den.lcm(x.denom());
        }
        scale /= BigRational::from(den.clone());
        im.push(row.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect());
    }
    BigRational::from(det_bigint(&im)) * scale
}

/// Solve A x = b over the rationals; A square nonsingular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &p;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &m[col][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square rational matrix.
pub fn invert_rational(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve_rational(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Row-style Hermite normal form of an integer matrix (rows span the lattice).
///
/// Returns a matrix whose nonzero rows are the HNF basis: lower-triangular
/// shape with positive pivots and entries above... below pivots reduced to
/// `0 <= entry < pivot` in the pivot column.
pub fn hnf_rows(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if mat.is_empty() {
        return vec![];
    }
    let ncols = mat[0].len();
    let mut rows: Vec<Vec<BigInt>> = mat.to_vec();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        // gcd-reduce all rows below pivot_row on this column
        loop {
            let mut idx: Option<usize> = None;
            let mut best: Option<BigInt> = None;
            for i in pivot_row..rows.len() {
                if !rows[i][col].is_zero() {
                    let a = rows[i][col].abs();
                    if best.as_ref().map_or(true, |b| a < *b) {
                        best = Some(a);
                        idx = Some(i);
                    }
                }
            }
            let Some(i) = idx else { break };
            rows.swap(pivot_row, i);
            let mut done = true;
            let pv = rows[pivot_row][col].clone();
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][col], &pv);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let t = &rows[pivot_row][j] * &q;
                        rows[i][j] = &rows[i][j] - &t;
                    }
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for j in 0..ncols {
                    rows[pivot_row][j] = -rows[pivot_row][j].clone();
                }
            }
            // reduce earlier rows against this pivot
            let pv = rows[pivot_row][col].clone();
            for i in 0..pivot_row {
                let q = rows[i][col].div_floor(&pv);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let t = &rows[pivot_row][j] * &q;
                        rows[i][j] = &rows[i][j] - &t;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    rows
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer quotient
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Kernel of an n x m matrix over F_p (columns = unknowns).
/// Returns a basis of column vectors with entries in [0, p).
pub fn kernel_mod_p(mat: &[Vec<BigInt>], p: &BigInt) -> Vec<Vec<BigInt>> {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(p)).collect())
        .collect();
    let mut pivots: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0usize;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let piv = (row..nrows).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(row, piv);
        let inv = mod_inverse(&m[row][col], p).expect("p must be prime");
        for j in col..ncols {
            m[row][j] = (&m[row][j] * &inv).mod_floor(p);
        }
        for i in 0..nrows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..ncols {
                    let t = (&m[row][j] * &f).mod_floor(p);
                    m[i][j] = (&m[i][j] - t).mod_floor(p);
                }
            }
        }
        pivots[col] = Some(row);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = BigInt::one();
        for col in 0..ncols {
            if let Some(r) = pivots[col] {
                // pivot var = -sum(free vars * coeff)
                v[col] = (-&m[r][free]).mod_floor(p);
            }
        }
        basis.push(v);
    }
    basis
}

/// Modular inverse via extended Euclid.
pub fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return None;
    }
    let e = a.extended_gcd(p);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det_bigint(&mat(&[&[2]])), bi(2));
        assert_eq!(det_bigint(&mat(&[&[1, 2], &[3, 4]])), bi(-2));
        assert_eq!(
            det_bigint(&mat(&[&[0, 1, 2], &[1, 0, 3], &[4, 5, 0]])),
            bi(22)
        );
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        // randomized cross-check against 3x3 cofactor formula
        let cases = [
            [[2i64, -3, 1], [5, 0, 7], [-1, 4, 2]],
            [[1, 1, 1], [1, 1, 1], [0, 2, 5]],
            [[0, 0, 3], [0, 2, 0], [7, 0, 0]],
        ];
        for c in cases {
            let m = mat(&[&c[0], &c[1], &c[2]]);
            let cof = c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
                - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
                + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0]);
            assert_eq!(det_bigint(&m), bi(cof));
        }
    }

    #[test]
    fn solve_and_invert() {
        let a: Vec<Vec<BigRational>> = mat(&[&[2, 1], &[1, 3]])
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from).collect())
            .collect();
        let b: Vec<BigRational> = vec![BigRational::from(bi(5)), BigRational::from(bi(10))];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::new(bi(1), bi(1)));
        assert_eq!(x[1], BigRational::new(bi(3), bi(1)));
        let inv = invert_rational(&a).unwrap();
        // A * A^-1 = I
        for i in 0..2 {
            for j in 0..2 {
                let mut s = BigRational::zero();
                for k in 0..2 {
                    s += &a[i][k] * &inv[k][j];
                }
                assert_eq!(
                    s,
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                );
            }
        }
    }

    #[test]
    fn hnf_basic() {
        let h = hnf_rows(&mat(&[&[2, 0], &[0, 2], &[1, 1]]));
        // lattice spanned is {(x,y): x+y even}; HNF basis [[1,1],[0,2]]
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
        let h2 = hnf_rows(&mat(&[&[4, 6], &[6, 9]]));
        assert_eq!(h2, mat(&[&[2, 3]]));
    }

    #[test]
    fn hnf_determinant_preserved() {
        let m = mat(&[&[3, 1, 2], &[0, 5, 1], &[2, 2, 8]]);
        let d = det_bigint(&m).abs();
        let h = hnf_rows(&m);
        assert_eq!(h.len(), 3);
        let hd: BigInt = (0..3).map(|i| h[i][i].clone()).product();
        assert_eq!(hd, d);
    }

    #[test]
    fn kernels_mod_p() {
        let p = bi(5);
        // x + 2y = 0 mod 5 -> kernel dim 1
        let k = kernel_mod_p(&mat(&[&[1, 2]]), &p);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(((&v[0] + bi(2) * &v[1]) % &p).is_zero());
        // identity has trivial kernel
        assert!(kernel_mod_p(&mat(&[&[1, 0], &[0, 1]]), &p).is_empty());
    }

    #[test]
    fn mod_inverse_works() {
        let p = bi(1223);
        for a in [1i64, 2, 57, 1222] {
            let inv = mod_inverse(&bi(a), &p).unwrap();
            assert_eq!((bi(a) * inv).mod_floor(&p), bi(1));
        }
        assert!(mod_inverse(&bi(0), &p).is_none());
    }
}

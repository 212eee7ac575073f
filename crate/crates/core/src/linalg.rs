//! Exact integer linear algebra on small dense matrices: fraction-free
//! determinants, lower-triangular Hermite normal form of row lattices,
//! characteristic polynomials, and kernels over F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{mod_inv, mul_mod};

pub type Matrix = Vec<Vec<BigInt>>;

/// Determinant by Bareiss fraction-free elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Matrix = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
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

/// Hermite normal form of the lattice spanned by `rows` (each of length
/// `n`), returned as an `n x n` lower-triangular basis: row `i` is supported
/// on columns `0..=i`, diagonals are positive and entries left of a diagonal
/// are reduced into `[0, diag)`. Returns `None` when the rows do not span a
/// full-rank lattice.
pub fn hnf_lower(rows: &[Vec<BigInt>], n: usize) -> Option<Matrix> {
    let mut pool: Vec<Vec<BigInt>> =
        rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for col in (0..n).rev() {
        // gcd-combine all pool rows on this column into one pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for row in pool.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (p, r) = combine(p, row, col);
                    pivot = Some(p);
                    if r.iter().any(|x| !x.is_zero()) {
                        rest.push(r);
                    }
                }
            }
        }
        let mut p = pivot?;
        if p[col].is_negative() {
            p.iter_mut().for_each(|x| *x = -&*x);
        }
        basis[col] = Some(p);
        pool = rest;
    }
    let mut basis: Matrix = basis.into_iter().map(|r| r.expect("full rank")).collect();
    // reduce entries left of the diagonal, using rows with smaller support
    for i in 0..n {
        for j in (0..i).rev() {
            let d = basis[j][j].clone();
            let q = basis[i][j].div_floor(&d);
            if !q.is_zero() {
                let rj = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(&rj).take(j + 1) {
                    *x -= &q * y;
                }
            }
        }
    }
    Some(basis)
}

/// Unimodular combination of two rows so that the first carries
/// `gcd(a[col], b[col])` in `col` and the second has 0 there.
fn combine(a: Vec<BigInt>, b: Vec<BigInt>, col: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let eg = a[col].extended_gcd(&b[col]);
    let (g, x, y) = (eg.gcd, eg.x, eg.y);
    let ua = &a[col] / &g;
    let ub = &b[col] / &g;
    let first: Vec<BigInt> = a.iter().zip(&b).map(|(p, q)| &x * p + &y * q).collect();
    let second: Vec<BigInt> = a.iter().zip(&b).map(|(p, q)| &ub * p - &ua * q).collect();
    (first, second)
}

/// Integer coordinates `c` with `sum c_i basis_i = v`, for a lower-triangular
/// basis (nonzero diagonal). `None` if `v` is not in the lattice.
pub fn solve_lower(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = basis.len();
    let mut rest = v.to_vec();
    let mut coords = vec![BigInt::zero(); n];
    for col in (0..n).rev() {
        let (q, r) = rest[col].div_rem(&basis[col][col]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(&basis[col]).take(col + 1) {
                *x -= &q * y;
            }
        }
        coords[col] = q;
    }
    Some(coords)
}

/// Characteristic polynomial `det(xI - M)` as `[c_0, ..., c_{n-1}, 1]`, by
/// Faddeev-LeVerrier with exact integer division.
pub fn charpoly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Matrix = identity(n);
    for k in 1..=n {
        let am = matmul(m, &mk);
        let tr: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -(tr / BigInt::from(k));
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    coeffs
}

/// Same as [`charpoly`] over i128, `None` on overflow.
pub fn charpoly_i128(m: &[Vec<i128>]) -> Option<Vec<i128>> {
    let n = m.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut mk: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut am = vec![vec![0i128; n]; n];
    for k in 1..=n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for l in 0..n {
                    acc = acc.checked_add(m[i][l].checked_mul(mk[l][j])?)?;
                }
                am[i][j] = acc;
            }
        }
        let mut tr = 0i128;
        for (i, row) in am.iter().enumerate() {
            tr = tr.checked_add(row[i])?;
        }
        let c = -(tr / k as i128);
        coeffs[n - k] = c;
        std::mem::swap(&mut mk, &mut am);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = row[i].checked_add(c)?;
        }
    }
    Some(coeffs)
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Matrix {
    let (r, inner, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![BigInt::zero(); c]; r];
    for i in 0..r {
        for l in 0..inner {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Left kernel over F_p: all `c` with `sum_i c_i rows_i = 0 (mod p)`,
/// returned as a basis (possibly empty). `rows` entries must be `< p`.
pub fn left_kernel_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = rows.len();
    if r == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    // augment [rows | I] and row-reduce the left block
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| (i == j) as u64));
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = mod_inv(a[rank][col] as i128, p).expect("p prime");
        for x in a[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..width + r {
                    let sub = mul_mod(f, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == r {
            break;
        }
    }
    a[rank..].iter().map(|row| row[width..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(m: &[Vec<i64>]) -> Matrix {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Laplace expansion, the independent determinant oracle.
    fn det_laplace(m: &Matrix) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        (0..n)
            .map(|j| {
                let minor: Matrix =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &m[0][j] * det_laplace(&minor);
                if j % 2 == 0 { t } else { -t }
            })
            .sum()
    }

    #[test]
    fn hnf_of_small_lattice() {
        // {1, (1 + a^2)/2} style numerators with denominator 2
        let rows = big(&[vec![2, 0, 0], vec![0, 2, 0], vec![1, 0, 1], vec![4, 0, 2]]);
        let h = hnf_lower(&rows, 3).unwrap();
        assert_eq!(h, big(&[vec![2, 0, 0], vec![0, 2, 0], vec![1, 0, 1]]));
        assert!(hnf_lower(&big(&[vec![1, 0], vec![2, 0]]), 2).is_none());
    }

    #[test]
    fn solve_lower_membership() {
        let basis = big(&[vec![2, 0, 0], vec![0, 2, 0], vec![1, 0, 1]]);
        let v: Vec<BigInt> = [3, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(solve_lower(&basis, &v).unwrap(), [1, 2, 1].map(BigInt::from).to_vec());
        let w: Vec<BigInt> = [1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(solve_lower(&basis, &w).is_none());
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of x^3 - 2x + 5 (rows: multiplication by x)
        let m = big(&[vec![0, 1, 0], vec![0, 0, 1], vec![-5, 2, 0]]);
        assert_eq!(charpoly(&m), [5, -2, 0, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn kernel_mod_p() {
        let rows = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel_mod_p(&rows, 5);
        assert_eq!(k.len(), 1);
        let c = &k[0];
        for col in 0..2 {
            let s: u64 = (0..3).map(|i| c[i] * rows[i][col]).sum();
            assert_eq!(s % 5, 0);
        }
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace(entries in prop::collection::vec(-20i64..20, 16)) {
            let m: Matrix = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(det_bareiss(&m), det_laplace(&m));
        }

        #[test]
        fn charpoly_evaluates_to_det(entries in prop::collection::vec(-9i64..10, 16), x in -5i64..6) {
            let m: Matrix = entries.chunks(4).map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let cp = charpoly(&m);
            let xb = BigInt::from(x);
            let value = cp.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c);
            let shifted: Matrix = (0..4).map(|i| (0..4).map(|j| {
                let d = if i == j { xb.clone() } else { BigInt::zero() };
                d - &m[i][j]
            }).collect()).collect();
            prop_assert_eq!(value, det_laplace(&shifted));
            let small: Vec<Vec<i128>> = entries.chunks(4).map(|r| r.iter().map(|&v| v as i128).collect()).collect();
            let fast: Vec<BigInt> = charpoly_i128(&small).unwrap().into_iter().map(BigInt::from).collect();
            prop_assert_eq!(fast, cp);
        }

        #[test]
        fn hnf_preserves_lattice(entries in prop::collection::vec(-30i64..30, 15)) {
            let rows: Matrix = entries.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            if let Some(h) = hnf_lower(&rows, 3) {
                // every generator lies in the HNF lattice, and the HNF covolume
                // equals the gcd of maximal minors (checked via generator membership both ways)
                for r in &rows {
                    prop_assert!(solve_lower(&h, r).is_some());
                }
                for i in 0..3 {
                    prop_assert!(h[i][i].is_positive());
                    for j in 0..i { prop_assert!(!h[i][j].is_negative() && h[i][j] < h[j][j]); }
                    for j in i + 1..3 { prop_assert!(h[i][j].is_zero()); }
                }
            }
        }
    }
}

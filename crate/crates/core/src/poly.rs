//! Dense integer polynomials: the monic defining polynomials of equation
//! orders, reduction modulo them, and resultants by subresultant pseudo-remainder
//! sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense coefficient vector, lowest degree first. Trailing zeros are trimmed
/// by the helpers below; the zero polynomial is the empty vector.
pub type Coeffs = Vec<BigInt>;

/// `x^n + c_{n-1} x^{n-1} + ... + c_0` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonicPolynomial {
    /// `c_0 .. c_{n-1}`; the leading 1 is implicit.
    #[serde(serialize_with = "serialize_coeffs")]
    coeffs: Vec<BigInt>,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for x in c {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl MonicPolynomial {
    /// From the non-leading coefficients `c_0 .. c_{n-1}`; `n >= 2`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::domain("monic polynomial must have degree >= 2"));
        }
        Ok(MonicPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - m`.
    pub fn binomial(n: usize, m: i64) -> Result<Self> {
        let mut c = vec![BigInt::zero(); n];
        if n > 0 {
            c[0] = BigInt::from(-m);
        }
        Self::new(c)
    }

    /// `x^n + a x + b`.
    pub fn trinomial(n: usize, a: i64, b: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("trinomial degree must be >= 2"));
        }
        let mut c = vec![BigInt::zero(); n];
        c[0] = BigInt::from(b);
        c[1] += BigInt::from(a);
        Self::new(c)
    }

    /// `x^n + t * h(x)` for `h` of degree < n given lowest coefficient first.
    pub fn scaled(n: usize, h: &[i64], t: i64) -> Result<Self> {
        if h.len() > n {
            return Err(Error::domain("h must have degree < n"));
        }
        let mut c = vec![BigInt::zero(); n];
        for (slot, &hc) in c.iter_mut().zip(h) {
            *slot = BigInt::from(hc) * t;
        }
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients `c_0 .. c_{n-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Full coefficient vector including the leading 1.
    pub fn full(&self) -> Coeffs {
        let mut c = self.coeffs.clone();
        c.push(BigInt::one());
        c
    }

    /// Reduce an arbitrary-length vector modulo this polynomial, returning
    /// exactly `n` coefficients.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut v = v.to_vec();
        for k in (n..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut v[k]);
            // x^k = x^{k-n} * x^n = -x^{k-n} * sum c_i x^i
            for (i, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    v[k - n + i] -= &top * c;
                }
            }
        }
        v.resize(n, BigInt::zero());
        v
    }

    /// Product of two residues modulo this polynomial.
    pub fn mul_mod(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&mul(a, b))
    }

    /// Power sums `Tr(theta^k)` for `0 <= k < 2n - 1` (Newton's identities).
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        // e-coefficients: x^n + a_{n-1} x^{n-1} + ... ; a_{n-j} = c[n-j]
        let a = |j: usize| -> &BigInt { &self.coeffs[n - j] };
        let mut s = vec![BigInt::zero(); count];
        if count > 0 {
            s[0] = BigInt::from(n);
        }
        for k in 1..count {
            let mut acc = BigInt::zero();
            for j in 1..k.min(n + 1) {
                acc -= a(j) * &s[k - j];
            }
            if k <= n {
                acc -= a(k) * BigInt::from(k);
            }
            s[k] = acc;
        }
        s
    }

    /// `(-1)^{n(n-1)/2} Res(f, f')`, via the subresultant PRS.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let f = self.full();
        let res = resultant(&f, &derivative(&f));
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let p = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&p).try_into().expect("residue fits in u64"))
            .collect()
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "x^{n}")?;
        for k in (0..n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k > 0 && mag.is_one() {
                write!(f, " {sign} {mono}")?;
            } else {
                write!(f, " {sign} {mag}{mono}")?;
            }
        }
        Ok(())
    }
}

pub fn trim(mut v: Coeffs) -> Coeffs {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn derivative(a: &[BigInt]) -> Coeffs {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
}

fn degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else { return r };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] -= &lr * bc;
        }
        r = trim(r);
        steps -= 1;
    }
    let scale = num_traits::pow(lb.clone(), steps);
    r.into_iter().map(|c| c * &scale).collect()
}

/// Resultant of two integer polynomials by the subresultant algorithm
/// (contents are not removed; every division is exact).
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let (Some(da), Some(db)) = (degree(&a), degree(&b)) else {
        return BigInt::zero();
    };
    let (mut a, mut b, mut sign) = if da < db {
        (b, a, if (da * db) % 2 == 1 { -1 } else { 1 })
    } else {
        (a, b, 1)
    };
    if degree(&b) == Some(0) {
        let db = degree(&a).unwrap();
        return BigInt::from(sign) * num_traits::pow(b[0].clone(), db);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (degree(&a).unwrap(), degree(&b).unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        if degree(&r).is_none() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| exact_div(&c, &div)).collect();
        g = a[degree(&a).unwrap()].clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            exact_div(&num_traits::pow(g.clone(), delta), &num_traits::pow(h.clone(), delta - 1))
        };
        if degree(&b) == Some(0) {
            let da = degree(&a).unwrap();
            let lb = b[0].clone();
            // final: h^{1 - da} * lb^{da}
            let res = if da == 0 {
                h
            } else {
                exact_div(&num_traits::pow(lb, da), &num_traits::pow(h, da - 1))
            };
            return BigInt::from(sign) * res;
        }
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division {a} / {b}");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_bareiss;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Coeffs {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Sylvester-matrix determinant, an independent route to the resultant.
    fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (k, c) in a.iter().rev().enumerate() {
                rows[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in b.iter().rev().enumerate() {
                rows[n + i][i + k] = c.clone();
            }
        }
        det_bareiss(&rows)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(MonicPolynomial::binomial(4, 13).unwrap().discriminant(), BigInt::from(-562_432));
        assert_eq!(MonicPolynomial::binomial(2, 5).unwrap().discriminant(), BigInt::from(20));
        assert_eq!(MonicPolynomial::trinomial(4, 5, 5).unwrap().discriminant(), BigInt::from(15_125));
        assert_eq!(MonicPolynomial::from_i64(&[1, 1]).unwrap().discriminant(), BigInt::from(-3));
        // x^3 + x + 1: -4 - 27
        assert_eq!(MonicPolynomial::trinomial(3, 1, 1).unwrap().discriminant(), BigInt::from(-31));
    }

    #[test]
    fn reduce_and_power_sums() {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        // theta^5 = 13 theta
        let mut v = vec![BigInt::zero(); 6];
        v[5] = BigInt::one();
        assert_eq!(f.reduce(&v), big(&[0, 13, 0, 0]));
        assert_eq!(f.power_sums(8), big(&[4, 0, 0, 0, 52, 0, 0, 0]));
        let g = MonicPolynomial::from_i64(&[1, 1]).unwrap(); // x^2 + x + 1
        assert_eq!(g.power_sums(4), big(&[2, -1, -1, 2]));
    }

    #[test]
    fn display() {
        let f = MonicPolynomial::trinomial(4, 5, -5).unwrap();
        assert_eq!(f.to_string(), "x^4 + 5x - 5");
        assert_eq!(MonicPolynomial::binomial(3, 2).unwrap().to_string(), "x^3 - 2");
    }

    #[test]
    fn resultant_degenerate() {
        assert_eq!(resultant(&big(&[1, 1]), &big(&[])), BigInt::zero());
        assert_eq!(resultant(&big(&[-1, 0, 1]), &big(&[-1, 1])), BigInt::zero());
        assert_eq!(resultant(&big(&[3]), &big(&[1, 0, 1])), BigInt::from(9));
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(
            a in prop::collection::vec(-9i64..10, 2..7),
            b in prop::collection::vec(-9i64..10, 2..6),
        ) {
            let (mut a, mut b) = (big(&a), big(&b));
            if a.last().unwrap().is_zero() { *a.last_mut().unwrap() = BigInt::one(); }
            if b.last().unwrap().is_zero() { *b.last_mut().unwrap() = BigInt::from(-2); }
            prop_assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
        }
    }
}

//! Integer and modular arithmetic shared by the rest of the crate.
//!
//! Parameter-scale quantities (radicands, primes, exponents) live in
//! fixed-width integers; anything of discriminant scale goes through
//! [`num_bigint::BigInt`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Segment length (in odd numbers) used by [`prime_sieve`].
const SEGMENT: usize = 1 << 16;

/// Prime decomposition `sign * prod p^e` of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub value: i128,
    pub sign: i8,
    /// `(prime, exponent)` pairs, primes strictly increasing, exponents >= 1.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn recompose(&self) -> i128 {
        let abs = self
            .factors
            .iter()
            .fold(1i128, |acc, &(p, e)| acc * (p as i128).pow(e));
        self.sign as i128 * abs
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// All primes in `[2, limit]`, ascending. Segmented odd-only sieve of
/// Eratosthenes, so memory stays at O(sqrt(limit)) beyond the output.
pub fn prime_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut primes = vec![2u64];
    if limit < 3 {
        return primes;
    }
    let root = isqrt(limit);
    let base = small_odd_primes(root);

    // index i in a segment stands for the odd number lo + 2i
    let mut lo = 3u64;
    let mut seg = vec![true; SEGMENT];
    while lo <= limit {
        let hi = (lo + 2 * SEGMENT as u64 - 2).min(if limit % 2 == 0 { limit - 1 } else { limit });
        let len = ((hi - lo) / 2 + 1) as usize;
        seg[..len].iter_mut().for_each(|b| *b = true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = ((start - lo) / 2) as usize;
            while j < len {
                seg[j] = false;
                j += p as usize;
            }
        }
        primes.extend(
            seg[..len]
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| lo + 2 * i as u64),
        );
        lo = hi + 2;
    }
    primes
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Floor square root.
pub fn isqrt(x: u64) -> u64 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= x) {
        r += 1;
    }
    r
}

/// Exact `k`-th root of `x` if `x` is a perfect `k`-th power.
pub fn exact_root(x: u128, k: u32) -> Option<u128> {
    if k == 0 {
        return None;
    }
    if k == 1 || x < 2 {
        return Some(x);
    }
    let guess = (x as f64).powf(1.0 / k as f64).round() as u128;
    let lo = guess.saturating_sub(2);
    (lo..=guess + 2).find(|&r| r.checked_pow(k) == Some(x))
}

/// Prime factorization by trial division up to sqrt(|x|).
pub fn factorize(x: i128) -> Result<Factorization> {
    if x == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let sign = if x < 0 { -1 } else { 1 };
    let mut rest = x.unsigned_abs();
    let mut factors = Vec::new();
    let mut push = |p: u128, rest: &mut u128| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p as u64, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p: u128 = 5;
    let mut step = 2;
    while p * p <= rest {
        push(p, &mut rest);
        p += step;
        step = 6 - step;
    }
    if rest > 1 {
        factors.push((rest as u64, 1));
    }
    Ok(Factorization { value: x, sign, factors })
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(x: i128) -> Result<Vec<u64>> {
    Ok(factorize(x)?.primes().collect())
}

pub fn is_squarefree(x: i128) -> Result<bool> {
    if x.unsigned_abs() <= 1 {
        return Err(Error::domain(format!("squarefreeness needs |x| > 1, got {x}")));
    }
    Ok(factorize(x)?.is_squarefree())
}

/// p-adic valuation of a nonzero integer.
pub fn vp(x: i128, p: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::domain("valuation of 0 is infinite"));
    }
    let p = p as i128;
    let (mut x, mut e) = (x, 0);
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    Ok(e)
}

/// p-adic valuation of a nonzero big integer.
pub fn vp_big(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::domain("valuation of 0 is infinite"));
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        x = q;
        e += 1;
    }
}

/// `a * b mod m` without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus`, result in `[0, modulus)`. Negative bases are
/// reduced first.
pub fn mod_pow(base: i64, exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "mod_pow needs modulus >= 2");
    let mut b = (base as i128).rem_euclid(modulus as i128) as u64;
    let mut e = exp;
    let mut acc = 1 % modulus;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` when it exists.
pub fn mod_inv(a: i128, m: u64) -> Option<u64> {
    let m = m as i128;
    let a = a.rem_euclid(m);
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m) as u64)
}

/// Whether `g` lies in `(F_q^x)^N`, decided by Euler's criterion
/// `g^((q-1)/N) = 1`. Requires `q = 1 mod N` and `q ∤ g`.
pub fn is_nth_power_residue(g: i64, n: u64, q: u64) -> Result<bool> {
    if n < 2 || q < 2 || (q - 1) % n != 0 {
        return Err(Error::precondition(format!("need q = 1 mod N (q = {q}, N = {n})")));
    }
    if (g as i128).rem_euclid(q as i128) == 0 {
        return Err(Error::precondition(format!("q = {q} divides g = {g}")));
    }
    Ok(mod_pow(g, (q - 1) / n, q) == 1)
}

/// Write `g = h^d` with `d` maximal, so `h` is not a proper power.
pub fn perfect_power_decompose(g: u64) -> Result<(u64, u32)> {
    if g < 2 {
        return Err(Error::domain(format!("perfect power decomposition needs g >= 2, got {g}")));
    }
    let f = factorize(g as i128)?;
    let d = f.factors.iter().fold(0u32, |acc, &(_, e)| acc.gcd(&e));
    let h = f.factors.iter().map(|&(p, e)| p.pow(e / d)).product();
    Ok((h, d))
}

/// Product of the primes dividing `x` to an odd power.
pub fn squarefree_kernel(x: u64) -> Result<u64> {
    let f = factorize(x as i128)?;
    Ok(f.factors.iter().filter(|&&(_, e)| e % 2 == 1).map(|&(p, _)| p).product())
}

/// Euler's totient.
pub fn euler_phi(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let f = factorize(x as i128).expect("nonzero");
    f.factors.iter().fold(x, |acc, &(p, _)| acc / p * (p - 1))
}

/// `true` at index `k` iff `k` is squarefree, for `0 <= k <= limit`
/// (index 0 is `false`).
pub fn squarefree_table(limit: usize) -> Vec<bool> {
    let mut table = vec![true; limit + 1];
    table[0] = false;
    let mut p = 2usize;
    while p * p <= limit {
        // only prime p needed, but composite p^2 multiples are already struck
        let sq = p * p;
        let mut j = sq;
        while j <= limit {
            table[j] = false;
            j += sq;
        }
        p += 1;
    }
    table
}

pub fn big_to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

/// `|x|` as u64 when it fits.
pub fn big_abs_u64(x: &BigInt) -> Option<u64> {
    x.abs().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn sieve_small_cases() {
        assert_eq!(prime_sieve(10), vec![2, 3, 5, 7]);
        assert_eq!(prime_sieve(2), vec![2]);
        assert!(prime_sieve(1).is_empty());
        let p100 = prime_sieve(100);
        assert_eq!(p100.len(), 25);
        assert_eq!(*p100.last().unwrap(), 97);
        assert_eq!(p100, trial_primes(100));
    }

    #[test]
    fn sieve_crosses_segments() {
        let limit = 3 * SEGMENT as u64 + 17;
        assert_eq!(prime_sieve(limit), trial_primes(limit));
        assert_eq!(prime_sieve(1_000_000).len(), 78_498);
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(12).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);
        assert_eq!(f.sign, 1);
        let f = factorize(-13).unwrap();
        assert_eq!(f.factors, vec![(13, 1)]);
        assert_eq!(f.sign, -1);
        assert_eq!(factorize(562_432).unwrap().factors, vec![(2, 8), (13, 3)]);
        assert!(factorize(1).unwrap().factors.is_empty());
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(13).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(is_squarefree(-15).unwrap());
        assert!(is_squarefree(1).is_err());
        assert!(is_squarefree(-1).is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(48, 2).unwrap(), 4);
        assert_eq!(vp(13, 2).unwrap(), 0);
        assert_eq!(vp(73 * 73 - 73, 2).unwrap(), 3);
        assert_eq!(vp_big(&BigInt::from(5256), 2).unwrap(), 3);
        assert!(vp(0, 3).is_err());
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(4, 2, 13), 3);
        assert_eq!(mod_pow(5, 0, 7), 1);
        assert_eq!(mod_pow(2, 10, 1024), 0);
        assert_eq!(mod_pow(-1, 3, 13), 12);
    }

    #[test]
    fn residue_examples() {
        assert!(!is_nth_power_residue(4, 6, 13).unwrap());
        assert!(is_nth_power_residue(-1, 6, 13).unwrap());
        assert!(is_nth_power_residue(1, 6, 13).unwrap());
        assert!(is_nth_power_residue(4, 6, 11).is_err());
        assert!(is_nth_power_residue(26, 6, 13).is_err());
    }

    #[test]
    fn residue_matches_power_enumeration() {
        for n in [2u64, 3, 6, 10] {
            for q in prime_sieve(2000).into_iter().filter(|q| (q - 1) % n == 0) {
                let powers: std::collections::HashSet<u64> =
                    (1..q).map(|a| mod_pow(a as i64, n, q)).collect();
                for g in 1..q.min(60) {
                    assert_eq!(
                        is_nth_power_residue(g as i64, n, q).unwrap(),
                        powers.contains(&g),
                        "g={g} N={n} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power_decompose(4).unwrap(), (2, 2));
        assert_eq!(perfect_power_decompose(12).unwrap(), (12, 1));
        assert_eq!(perfect_power_decompose(64).unwrap(), (2, 6));
        assert_eq!(perfect_power_decompose(36).unwrap(), (6, 2));
        assert!(perfect_power_decompose(1).is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(100), 10);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(exact_root(1u128 << 60, 4), Some(1 << 15));
        assert_eq!(exact_root(17, 2), None);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(squarefree_kernel(12).unwrap(), 3);
        let table = squarefree_table(30);
        let direct: Vec<bool> =
            (0..=30).map(|k| k >= 2 && is_squarefree(k as i128).unwrap() || k == 1).collect();
        assert_eq!(table, direct);
    }

    proptest! {
        #[test]
        fn factorization_recomposes(x in 2i64..1_000_000, neg in any::<bool>()) {
            let x = if neg { -x } else { x } as i128;
            let f = factorize(x).unwrap();
            prop_assert_eq!(f.recompose(), x);
            prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.factors.iter().all(|&(_, e)| e >= 1));
        }

        #[test]
        fn mod_pow_matches_naive(base in -50i64..50, exp in 0u64..=12, modulus in 2u64..1000) {
            let naive = (0..exp).fold(1i128, |acc, _| (acc * base as i128).rem_euclid(modulus as i128));
            prop_assert_eq!(mod_pow(base, exp, modulus) as i128, naive % modulus as i128);
        }

        #[test]
        fn perfect_power_roundtrip(h in 2u64..200, d in 1u32..6) {
            let g = h.pow(d);
            let (root, e) = perfect_power_decompose(g).unwrap();
            prop_assert_eq!(root.pow(e), g);
            let f = factorize(g as i128).unwrap();
            let gcd = f.factors.iter().fold(0u32, |a, &(_, x)| a.gcd(&x));
            prop_assert_eq!(e, gcd);
        }
    }
}

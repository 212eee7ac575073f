//! Kummer data for an index value, the obstruction set `P_g`, one-prime
//! fixed-sign obstruction certificates, the split-fraction estimate of
//! `δ_g`, and an empirical check of local coset rigidity.
//!
//! Throughout, `N = n(n-1)/2` and `L = Q(ζ_{2N}, g^{1/N})` over
//! `K = Q(ζ_{2N})`.

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::arith::{
    euler_phi, factorize, is_nth_power_residue, mod_inv, mod_pow, perfect_power_decompose, prime_divisors, prime_sieve,
    squarefree_kernel,
};
use crate::error::{Error, Result};
use crate::purefield::{binomial_irreducible, index_form_degree, pure_index};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KummerData {
    pub g: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub h: u64,
    pub d: u32,
    /// `[Q(g^{1/N}) : Q]`.
    pub b: u64,
    pub nontrivial: bool,
    /// `[L : K]`, filled by [`estimate_delta`].
    pub l_over_k: Option<u64>,
    #[serde(serialize_with = "serialize_ratio")]
    pub delta: Option<Ratio<u64>>,
    /// Observed fraction of sampled primes at which `g` is an `N`-th power.
    pub split_fraction: Option<f64>,
    pub sample_size: Option<u64>,
}

fn serialize_ratio<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

impl KummerData {
    pub fn delta_f64(&self) -> Option<f64> {
        self.delta.map(|r| *r.numer() as f64 / *r.denom() as f64)
    }
}

/// Kummer data of `g` at degree `N`: `g = h^d`, `b = N / gcd(N, d)`, and
/// whether `L ≠ K`.
pub fn kummer_data(g: u64, big_n: u64) -> Result<KummerData> {
    if big_n < 2 {
        return Err(Error::domain(format!("N must be >= 2, got {big_n}")));
    }
    let (h, d) = perfect_power_decompose(g)?;
    let d0 = big_n.gcd(&(d as u64));
    let b = big_n / d0;
    let a = d as u64 / d0;
    let nontrivial = match b {
        1 => false,
        2 => {
            // h^a is not a square (gcd(a, b) = 1 forces a odd), so Q(g^{1/N}) is
            // the quadratic field Q(√h'), which lies in Q(ζ_{2N}) iff its
            // discriminant divides the conductor 2N
            let hp = squarefree_kernel(h)?;
            let disc = if hp % 4 == 1 { hp } else { 4 * hp };
            debug_assert!(a % 2 == 1);
            (2 * big_n) % disc != 0
        }
        _ => true,
    };
    Ok(KummerData {
        g,
        big_n,
        h,
        d,
        b,
        nontrivial,
        l_over_k: None,
        delta: None,
        split_fraction: None,
        sample_size: None,
    })
}

/// `q ∈ P_g`: `q ∤ 2Ng`, `q ≡ 1 (mod 2N)` and `g` is not an `N`-th power mod `q`.
pub fn in_pg(q: u64, g: u64, big_n: u64) -> bool {
    if q < 2 || (q - 1) % (2 * big_n) != 0 || (2 * big_n) % q == 0 || g % q == 0 {
        return false;
    }
    !is_nth_power_residue((g % q) as i64, big_n, q).expect("preconditions checked above")
}

/// All primes `q <= limit` in `P_g`, ascending.
pub fn enumerate_pg(g: u64, big_n: u64, limit: u64) -> Vec<u64> {
    prime_sieve(limit).into_iter().filter(|&q| in_pg(q, g, big_n)).collect()
}

/// Fill in `[L:K]` and `δ_g` from the split fraction over primes
/// `q ≡ 1 (mod 2N)` up to `prime_budget`.
///
/// A prime `q ≡ 1 (mod 2N)` splits completely in `L` exactly when `g` is an
/// `N`-th power mod `q`, so the fraction estimates `1/[L:K]`. The estimate
/// is snapped to the nearest `1/e` with `e | N`; if the runner-up lies
/// within two standard errors of the estimate the snap is refused.
pub fn estimate_delta(g: u64, big_n: u64, prime_budget: u64) -> Result<KummerData> {
    let mut data = kummer_data(g, big_n)?;
    if !data.nontrivial {
        return Err(Error::NotApplicable(format!("Q(ζ_{}, {g}^(1/{big_n})) = Q(ζ_{}): P_g is empty", 2 * big_n, 2 * big_n)));
    }
    if prime_budget < 100_000 {
        return Err(Error::precondition(format!("prime_budget must be >= 10^5, got {prime_budget}")));
    }
    let (mut total, mut split) = (0u64, 0u64);
    for q in prime_sieve(prime_budget) {
        if (q - 1) % (2 * big_n) != 0 || (2 * big_n) % q == 0 || g % q == 0 {
            continue;
        }
        total += 1;
        if mod_pow((g % q) as i64, (q - 1) / big_n, q) == 1 {
            split += 1;
        }
    }
    if total == 0 {
        return Err(Error::precondition("no primes q = 1 mod 2N below the budget"));
    }
    let phi_hat = split as f64 / total as f64;
    let se = (phi_hat * (1.0 - phi_hat) / total as f64).sqrt();
    let mut divisors: Vec<u64> = (1..=big_n).filter(|e| big_n % e == 0).collect();
    divisors.sort_by(|x, y| {
        let dx = (1.0 / *x as f64 - phi_hat).abs();
        let dy = (1.0 / *y as f64 - phi_hat).abs();
        dx.total_cmp(&dy)
    });
    let (first, second) = (divisors[0], divisors[1]);
    if (1.0 / second as f64 - phi_hat).abs() <= 2.0 * se {
        return Err(Error::AmbiguousSnap { phi_hat, first, second });
    }
    if first < 2 {
        return Err(Error::Consistency(format!(
            "split fraction {phi_hat:.5} snaps to [L:K] = 1 although the extension is nontrivial"
        )));
    }
    data.l_over_k = Some(first);
    data.delta = Some(Ratio::new(first - 1, first * euler_phi(2 * big_n)));
    data.split_fraction = Some(phi_hat);
    data.sample_size = Some(total);
    Ok(data)
}

/// A prime `q | m` in `P_g`: the index form of `K_m` takes neither `+1` nor
/// `-1` over the `q`-adic integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub n: u32,
    pub m: i64,
    pub g: u64,
    pub q: u64,
    pub witness: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
}

impl ObstructionCertificate {
    /// Re-derive every condition the certificate rests on.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Consistency(format!("certificate {self:?}: {what}")));
        if self.big_n != index_form_degree(self.n) {
            return fail("N != n(n-1)/2");
        }
        if self.m % self.q as i64 != 0 {
            return fail("q does not divide m");
        }
        if self.g % self.q == 0 {
            return fail("q divides g");
        }
        if (self.q - 1) % (2 * self.big_n) != 0 {
            return fail("q is not 1 mod 2N");
        }
        if !crate::arith::is_squarefree(self.m as i128)? {
            return fail("m is not squarefree");
        }
        let w = mod_pow((self.g % self.q) as i64, (self.q - 1) / self.big_n, self.q);
        if w != self.witness || w == 1 {
            return fail("witness is not g^((q-1)/N) != 1");
        }
        Ok(())
    }
}

/// Certificate for a known index `g = g(m)`: the smallest prime `q | m`
/// with `q ∈ P_g`.
pub fn certificate_for_index(n: u32, m: i64, g: u64) -> Result<Option<ObstructionCertificate>> {
    if g < 2 {
        return Ok(None);
    }
    let big_n = index_form_degree(n);
    for q in prime_divisors(m as i128)? {
        if in_pg(q, g, big_n) {
            let witness = mod_pow((g % q) as i64, (q - 1) / big_n, q);
            let cert = ObstructionCertificate { n, m, g, q, witness, big_n };
            cert.verify()?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// One-prime obstruction certificate for `K_m`, if one exists.
pub fn abs_certificate(n: u32, m: i64) -> Result<Option<ObstructionCertificate>> {
    let inv = pure_index(n, m)?;
    certificate_for_index(n, m, inv.g)
}

/// How the coefficient of `α` is drawn in [`local_coset_check_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSampling {
    /// `b_1` a unit mod `q`: local generators of `O ⊗ Z_q`.
    Generators,
    /// `b_1` uniform mod `q`, admitting non-generators (negative control).
    AllowDegenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub n: u32,
    pub m: i64,
    pub q: u64,
    pub seed: u64,
    pub sampling: GeneratorSampling,
    pub trials: u64,
    pub failures: u64,
    /// Index-form value of `α` reduced mod `q`.
    pub base_class: u64,
}

/// Sample local generators `β` of `Z_q[α]` and check that each index-form
/// value lies in the `N`-th power class of `f(α)` mod `q`.
pub fn local_coset_check(n: u32, m: i64, q: u64, trials: u64, seed: u64) -> Result<CosetReport> {
    local_coset_check_with(n, m, q, trials, seed, GeneratorSampling::Generators)
}

pub fn local_coset_check_with(
    n: u32,
    m: i64,
    q: u64,
    trials: u64,
    seed: u64,
    sampling: GeneratorSampling,
) -> Result<CosetReport> {
    let big_n = index_form_degree(n);
    if n < 2 || m.unsigned_abs() <= 1 {
        return Err(Error::domain(format!("need n >= 2 and |m| > 1, got ({n}, {m})")));
    }
    if q < 2 || factorize(q as i128)?.factors != [(q, 1)] {
        return Err(Error::precondition(format!("q = {q} is not prime")));
    }
    if m % q as i64 != 0 {
        return Err(Error::precondition(format!("q = {q} does not divide m = {m}")));
    }
    if big_n % q == 0 {
        return Err(Error::precondition(format!("q = {q} divides N = {big_n}")));
    }
    if !crate::arith::is_squarefree(m as i128)? || !binomial_irreducible(n, m) {
        return Err(Error::precondition(format!("need m squarefree and x^{n} - ({m}) irreducible")));
    }
    let n_us = n as usize;
    let m_mod = (m as i128).rem_euclid(q as i128) as u64;
    let ring = Quotient { n: n_us, m: m_mod, q };
    let mut alpha = vec![0u64; n_us];
    alpha[1 % n_us] = 1;
    let base_class = ring.index_form(&alpha);
    let base_inv = mod_inv(base_class as i128, q).ok_or_else(|| Error::Consistency("f(α) vanishes mod q".into()))?;
    let exponent = (q - 1) / big_n.gcd(&(q - 1));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut beta = vec![0u64; n_us];
    for _ in 0..trials {
        for (i, b) in beta.iter_mut().enumerate() {
            *b = match (i, sampling) {
                (1, GeneratorSampling::Generators) => rng.random_range(1..q),
                _ => rng.random_range(0..q),
            };
        }
        let r = ring.mul(ring.index_form(&beta), base_inv);
        if r == 0 || mod_pow(r as i64, exponent, q) != 1 {
            failures += 1;
        }
    }
    Ok(CosetReport { n, m, q, seed, sampling, trials, failures, base_class })
}

/// `F_q[x]/(x^n - m)`.
struct Quotient {
    n: usize,
    m: u64,
    q: u64,
}

impl Quotient {
    fn mul(&self, a: u64, b: u64) -> u64 {
        crate::arith::mul_mod(a, b, self.q)
    }

    fn mul_poly(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate() {
                let mut t = self.mul(x, y);
                let k = i + j;
                let k = if k >= self.n {
                    t = self.mul(t, self.m);
                    k - self.n
                } else {
                    k
                };
                out[k] = (out[k] + t) % self.q;
            }
        }
        out
    }

    /// `det(1, β, ..., β^{n-1})` in the power basis, mod `q`.
    fn index_form(&self, beta: &[u64]) -> u64 {
        let mut rows = Vec::with_capacity(self.n);
        let mut cur = vec![0u64; self.n];
        cur[0] = 1;
        for _ in 0..self.n {
            rows.push(cur.clone());
            cur = self.mul_poly(&cur, beta);
        }
        det_mod(rows, self.q)
    }
}

fn det_mod(mut a: Vec<Vec<u64>>, q: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (q - det) % q;
        }
        det = crate::arith::mul_mod(det, a[col][col], q);
        let inv = mod_inv(a[col][col] as i128, q).expect("q prime");
        for r in col + 1..n {
            let factor = crate::arith::mul_mod(a[r][col], inv, q);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = crate::arith::mul_mod(factor, a[col][c], q);
                a[r][c] = (a[r][c] + q - sub) % q;
            }
        }
    }
    det
}

/// Whether `-1` is an `N`-th power mod `q`; always true when `q ≡ 1 (mod 2N)`.
pub fn minus_one_residue_check(q: u64, big_n: u64) -> Result<bool> {
    if q < 3 || (q - 1) % (2 * big_n) != 0 {
        return Err(Error::precondition(format!("need q = 1 mod 2N (q = {q}, N = {big_n})")));
    }
    is_nth_power_residue(-1, big_n, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kummer_examples() {
        let k = kummer_data(4, 6).unwrap();
        assert_eq!((k.h, k.d, k.b, k.nontrivial), (2, 2, 3, true));
        let k = kummer_data(8, 6).unwrap();
        assert_eq!((k.h, k.d, k.b, k.nontrivial), (2, 3, 2, true));
        let k = kummer_data(64, 6).unwrap();
        assert_eq!((k.d, k.b, k.nontrivial), (6, 1, false));
        // √3 ∈ Q(ζ_12): 27 = 3^3 gives b = 2 and a trivial extension
        let k = kummer_data(27, 6).unwrap();
        assert_eq!((k.b, k.nontrivial), (2, false));
        assert!(kummer_data(1, 6).is_err());
    }

    #[test]
    fn pg_membership() {
        assert!(in_pg(13, 4, 6));
        assert!(!in_pg(11, 4, 6));
        assert!(in_pg(37, 4, 6));
        assert_eq!(mod_pow(4, 6, 37), 26);
        assert_eq!(enumerate_pg(4, 6, 40), vec![13, 37]);
        assert!(enumerate_pg(64, 6, 100_000).is_empty());
        assert!(!in_pg(73, 8, 6));
        // ord_73(2) = 9 does not divide 12, so 73 ∈ P_2; but 8^12 = 2^36 ≡ 1
        assert!(in_pg(73, 2, 6));
    }

    #[test]
    fn pg_matches_brute_force_powers() {
        for big_n in [6u64, 10, 15] {
            for q in prime_sieve(2000).into_iter().filter(|q| (q - 1) % (2 * big_n) == 0) {
                let powers: std::collections::HashSet<u64> = (1..q).map(|a| mod_pow(a as i64, big_n, q)).collect();
                for g in [2u64, 3, 4, 5, 8, 12] {
                    if g % q == 0 {
                        continue;
                    }
                    assert_eq!(in_pg(q, g, big_n), !powers.contains(&(g % q)), "q={q} g={g} N={big_n}");
                }
            }
        }
    }

    #[test]
    fn certificates() {
        let c = abs_certificate(4, 13).unwrap().unwrap();
        assert_eq!((c.q, c.g, c.witness, c.big_n), (13, 4, 3, 6));
        assert_eq!(mod_pow(4, 2, 13), 3);
        assert_eq!(abs_certificate(4, 2).unwrap(), None);
        assert_eq!(abs_certificate(4, 73).unwrap(), None);
        assert!(abs_certificate(4, 12).is_err());
    }

    #[test]
    fn sign_killing() {
        for big_n in [6u64, 10, 15] {
            for q in prime_sieve(100_000).into_iter().filter(|q| (q - 1) % (2 * big_n) == 0) {
                assert!(minus_one_residue_check(q, big_n).unwrap(), "q={q} N={big_n}");
            }
        }
        assert!(minus_one_residue_check(11, 6).is_err());
    }

    #[test]
    fn coset_rigidity() {
        for (n, m, q) in [(4u32, 13i64, 13u64), (5, 7, 7), (6, 11, 11), (4, 39, 13), (5, -22, 11), (7, 17, 17)] {
            let rep = local_coset_check(n, m, q, 2000, 1).unwrap();
            assert_eq!(rep.failures, 0, "{rep:?}");
            let neg = local_coset_check_with(n, m, q, 2000, 1, GeneratorSampling::AllowDegenerate).unwrap();
            assert!(neg.failures > 0, "{neg:?}");
        }
        assert!(local_coset_check(4, 13, 7, 10, 0).is_err());
        assert!(local_coset_check(4, 6, 3, 10, 0).is_err());
    }

    #[test]
    fn coset_check_is_reproducible() {
        let a = local_coset_check_with(4, 13, 13, 500, 42, GeneratorSampling::AllowDegenerate).unwrap();
        let b = local_coset_check_with(4, 13, 13, 500, 42, GeneratorSampling::AllowDegenerate).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn det_mod_small() {
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], 7), 5);
        assert_eq!(det_mod(vec![vec![0, 1], vec![1, 0]], 7), 6);
    }

    #[test]
    fn delta_snaps() {
        let k = estimate_delta(4, 6, 1_000_000).unwrap();
        assert_eq!(k.l_over_k, Some(3));
        assert_eq!(k.delta, Some(Ratio::new(1, 6)));
        let k = estimate_delta(8, 6, 1_000_000).unwrap();
        assert_eq!(k.l_over_k, Some(2));
        assert_eq!(k.delta, Some(Ratio::new(1, 8)));
        assert!(matches!(estimate_delta(64, 6, 1_000_000), Err(Error::NotApplicable(_))));
        for g in [2u64, 3, 4, 8] {
            let a = estimate_delta(g, 6, 500_000).unwrap();
            let b = estimate_delta(g, 6, 1_000_000).unwrap();
            assert_eq!(a.l_over_k, b.l_over_k, "g = {g}");
        }
    }
}

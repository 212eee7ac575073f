//! One-parameter Eisenstein families: scaled families `x^n + t h(x)`, the
//! trinomials `x^n + t x + t` with their squarefree-value sieve, the
//! fixed-index twist `θ = c α_t`, and the thin prime family of pure fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, is_squarefree, mod_pow, prime_divisors, prime_sieve, squarefree_table, vp_big};
use crate::error::{Error, Result};
use crate::obstruction::{certificate_for_index, kummer_data, KummerData};
use crate::orders::{equation_order_index, order_index, poly_disc_resultant, EquationOrder};
use crate::poly::MonicPolynomial;
use crate::purefield::{alpha_monogenic, index_form_degree};

/// `f_t(x) = x^n + t h(x)` with `h = c_0 + c_1 x + ... + c_{n-1} x^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledFamily {
    pub n: u32,
    pub h_coeffs: Vec<i64>,
}

impl ScaledFamily {
    pub fn new(n: u32, h_coeffs: Vec<i64>) -> Result<Self> {
        if n < 4 {
            return Err(Error::domain(format!("scaled families need n >= 4, got {n}")));
        }
        if h_coeffs.is_empty() || h_coeffs[0] == 0 {
            return Err(Error::domain("h must have nonzero constant term"));
        }
        if h_coeffs.len() > n as usize {
            return Err(Error::domain("h must have degree < n"));
        }
        Ok(ScaledFamily { n, h_coeffs })
    }

    pub fn poly(&self, t: i64) -> MonicPolynomial {
        MonicPolynomial::scaled(self.n as usize, &self.h_coeffs, t).expect("validated")
    }
}

/// Eisenstein criterion at `q`.
pub fn eisenstein_at(poly: &MonicPolynomial, q: u64) -> bool {
    let qb = BigInt::from(q);
    let c = poly.coeffs();
    c.iter().all(|x| (x % &qb).is_zero()) && !(&c[0] % (&qb * &qb)).is_zero()
}

/// `t ∈ T_{h,sf}`: `|t| > 1`, `t` squarefree and `gcd(t, c_0) = 1`.
pub fn in_t_hsf(family: &ScaledFamily, t: i64) -> bool {
    t.unsigned_abs() > 1 && is_squarefree(t as i128).unwrap_or(false) && t.gcd(&family.h_coeffs[0]).abs() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrinomialData {
    pub n: u32,
    pub t: i64,
    #[serde(rename = "C0", serialize_with = "crate::serialize_big")]
    pub c0: BigInt,
    #[serde(rename = "C1", serialize_with = "crate::serialize_big")]
    pub c1: BigInt,
    /// `L_n(t) = C0 + C1 t`.
    #[serde(serialize_with = "crate::serialize_big")]
    pub l_value: BigInt,
    #[serde(serialize_with = "crate::serialize_big")]
    pub disc: BigInt,
}

impl TrinomialData {
    pub fn poly(&self) -> MonicPolynomial {
        MonicPolynomial::trinomial(self.n as usize, self.t, self.t).expect("n >= 2")
    }

    /// Compare the closed form with the resultant.
    pub fn check_disc(&self) -> Result<()> {
        let r = poly_disc_resultant(&self.poly());
        if r != self.disc {
            return Err(Error::Consistency(format!(
                "disc(x^{} + {}x + {}) closed form {} != resultant {r}",
                self.n, self.t, self.t, self.disc
            )));
        }
        Ok(())
    }
}

fn signed_pow(sign_exp: u64, base: u32, e: u32) -> BigInt {
    let v = num_traits::pow(BigInt::from(base), e as usize);
    if sign_exp % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `disc(x^n + t x + t) = t^{n-1} (C0 + C1 t)`.
pub fn trinomial_data(n: u32, t: i64) -> Result<TrinomialData> {
    if n < 2 || t == 0 {
        return Err(Error::domain(format!("need n >= 2 and t != 0, got ({n}, {t})")));
    }
    let n64 = n as u64;
    let c0 = signed_pow(n64 * (n64 - 1) / 2, n, n);
    let c1 = signed_pow((n64 - 1) * (n64.saturating_sub(2)) / 2, n - 1, n - 1);
    let l_value = &c0 + &c1 * t;
    let disc = num_traits::pow(BigInt::from(t), n as usize - 1) * &l_value;
    Ok(TrinomialData { n, t, c0, c1, l_value, disc })
}

/// `t ∈ T_n`: `|t| > 1`, `gcd(t, n(n-1)) = 1` and `t L_n(t)` squarefree.
pub fn in_tn(n: u32, t: i64) -> Result<bool> {
    if n < 4 {
        return Err(Error::domain(format!("T_n needs n >= 4, got {n}")));
    }
    if t.unsigned_abs() <= 1 || t.gcd(&(n as i64 * (n as i64 - 1))) != 1 {
        return Ok(false);
    }
    let l = trinomial_data(n, t)?.l_value;
    let l = l.to_i128().ok_or_else(|| Error::domain("L_n(t) exceeds 128 bits"))?;
    if l.abs() <= 1 {
        return is_squarefree(t as i128);
    }
    Ok(is_squarefree(t as i128)? && is_squarefree(l)? && (t as i128).gcd(&l) == 1)
}

/// Primes `p` with `p^2 | t^{n-1} L_n(t)`, found from the factorizations of
/// `t` and `L_n(t)` separately.
fn trinomial_candidates(data: &TrinomialData) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let t_primes = prime_divisors(data.t as i128)?;
    let l = data.l_value.to_i128().ok_or_else(|| Error::domain("L_n(t) exceeds 128 bits"))?;
    for p in prime_divisors(if l == 0 { 1 } else { l })? {
        if vp_big(&data.disc, p)? >= 2 {
            out.push(p);
        }
    }
    for p in t_primes {
        if vp_big(&data.disc, p)? >= 2 {
            out.push(p);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Index of `Z[α_t]` in the order saturated at every `p` with `p^2 | disc`.
pub fn trinomial_index(n: u32, t: i64) -> Result<(BigInt, EquationOrder)> {
    let data = trinomial_data(n, t)?;
    let candidates = trinomial_candidates(&data)?;
    equation_order_index(&data.poly(), &candidates)
}

/// `Z[α_t]` is the full ring of integers for `t ∈ T_n`.
pub fn trinomial_monogenic_check(n: u32, t: i64) -> Result<bool> {
    if !in_tn(n, t)? {
        return Err(Error::precondition(format!("t = {t} is not in T_{n}")));
    }
    Ok(trinomial_index(n, t)?.0 == BigInt::from(1))
}

/// Minimal polynomial of `c α_t`: `x^n + c^{n-1} t x + c^n t`.
pub fn twist_poly(n: u32, c: i64, t: i64) -> Result<MonicPolynomial> {
    let a = c
        .checked_pow(n - 1)
        .and_then(|v| v.checked_mul(t))
        .ok_or_else(|| Error::domain("twist coefficients overflow"))?;
    let b = c.checked_pow(n).and_then(|v| v.checked_mul(t)).ok_or_else(|| Error::domain("twist coefficients overflow"))?;
    MonicPolynomial::trinomial(n as usize, a, b)
}

/// `[O_{K_t} : Z[c α_t]]`, which equals `c^{n(n-1)/2}`.
pub fn twist_index_check(n: u32, c: i64, t: i64) -> Result<BigInt> {
    if c < 2 {
        return Err(Error::precondition(format!("need c >= 2, got {c}")));
    }
    if t.gcd(&c) != 1 {
        return Err(Error::precondition(format!("gcd(t, c) = {} != 1", t.gcd(&c))));
    }
    if !in_tn(n, t)? {
        return Err(Error::precondition(format!("t = {t} is not in T_{n}")));
    }
    let (g, maximal) = trinomial_index(n, t)?;
    if g != BigInt::from(1) {
        return Err(Error::Consistency(format!("Z[α_t] has index {g} for t = {t} in T_{n}")));
    }
    let mut theta = vec![BigInt::zero(); n as usize];
    theta[1] = BigInt::from(c);
    let sub = EquationOrder::generated_by(maximal.poly(), &theta, &BigInt::from(1))?;
    order_index(&sub, &maximal)
}

/// Closed form of `ρ(ℓ^2)` for `F(a) = a L_n(a)`.
pub fn rho_closed_form(n: u32, ell: u64) -> u64 {
    if n as u64 % ell == 0 {
        ell
    } else if (n as u64 - 1) % ell == 0 {
        1
    } else {
        2
    }
}

/// `ρ(ℓ^2) = #{a mod ℓ^2 : ℓ^2 | a L_n(a)}` by brute force, checked against
/// the closed form.
pub fn rho_ell2(n: u32, ell: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::domain(format!("rho needs n >= 4, got {n}")));
    }
    let l2 = (ell * ell) as i128;
    let data = trinomial_data(n, 1)?;
    let c0 = (&data.c0 % BigInt::from(l2)).to_i128().unwrap();
    let c1 = (&data.c1 % BigInt::from(l2)).to_i128().unwrap();
    let brute = (0..l2).filter(|&a| (a * ((c0 + c1 * a) % l2)).rem_euclid(l2) == 0).count() as u64;
    let closed = rho_closed_form(n, ell);
    if brute != closed {
        return Err(Error::Consistency(format!("rho({ell}^2) for n = {n}: brute force {brute}, closed form {closed}")));
    }
    Ok(brute)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerProduct {
    pub n: u32,
    pub cutoff: u64,
    /// Partial product over primes `ℓ <= cutoff`.
    pub value: f64,
    /// The full product lies in `[lower, upper]`.
    pub lower: f64,
    pub upper: f64,
}

/// `S = ∏_ℓ (1 - ρ(ℓ^2)/ℓ^2)`. Since `ρ <= 2` beyond `n`, the tail factor is
/// at least `1 - Σ_{ℓ > cutoff} 2/ℓ^2 > 1 - 2/cutoff`.
pub fn euler_product_s(n: u32, cutoff: u64) -> Result<EulerProduct> {
    if n < 4 {
        return Err(Error::domain(format!("need n >= 4, got {n}")));
    }
    if cutoff < 1_000 || cutoff < n as u64 {
        return Err(Error::domain(format!("cutoff must be >= 10^3 and >= n, got {cutoff}")));
    }
    let value: f64 = prime_sieve(cutoff)
        .into_iter()
        .map(|l| 1.0 - rho_closed_form(n, l) as f64 / (l as f64 * l as f64))
        .product();
    Ok(EulerProduct { n, cutoff, value, lower: value * (1.0 - 2.0 / cutoff as f64), upper: value })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquarefreeValueCount {
    pub n: u32,
    pub t_max: u64,
    pub count: u64,
    pub density: f64,
}

/// Exact count of `1 <= t <= t_max` with `t L_n(t)` squarefree.
pub fn squarefree_value_count(n: u32, t_max: u64) -> Result<SquarefreeValueCount> {
    let a = trinomial_data(n, 1)?;
    let c0 = a.c0.to_i128().ok_or_else(|| Error::domain("C0 too large"))?;
    let c1 = a.c1.to_i128().ok_or_else(|| Error::domain("C1 too large"))?;
    let bound = c0.unsigned_abs() + c1.unsigned_abs() * t_max as u128;
    if bound > 400_000_000 {
        return Err(Error::domain(format!("|L_{n}(t)| reaches {bound}; direct counting supports <= 4*10^8")));
    }
    let table = squarefree_table(bound as usize);
    let count = (1..=t_max as i128)
        .into_par_iter()
        .filter(|&t| {
            let l = c0 + c1 * t;
            l != 0 && table[t as usize] && table[l.unsigned_abs() as usize] && t.gcd(&l) == 1
        })
        .count() as u64;
    Ok(SquarefreeValueCount { n, t_max, count, density: count as f64 / t_max as f64 })
}

/// `q` belongs to the thin family: `q ∤ c n` and `q^{p-1} ≢ 1 (mod p^2)`
/// for every prime `p | n`.
pub fn thin_pn_member(n: u32, c: u64, q: u64) -> bool {
    if q < 2 || (c * n as u64) % q == 0 {
        return false;
    }
    prime_divisors(n as i128)
        .expect("n >= 1")
        .into_iter()
        .all(|p| mod_pow(q as i64, p - 1, p * p) != 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThinReport {
    pub n: u32,
    pub c: u64,
    pub q: u64,
    pub alpha_monogenic_of_q: bool,
    #[serde(serialize_with = "crate::serialize_big")]
    pub distinguished_index: BigInt,
}

/// For a thin-family prime `q`: `Z[α_q]` is maximal and `Z[c α_q]` has
/// index `c^N` in it.
pub fn thin_family_check(n: u32, c: u64, q: u64) -> Result<ThinReport> {
    if n < 4 || c < 2 {
        return Err(Error::domain(format!("need n >= 4 and c >= 2, got ({n}, {c})")));
    }
    if factorize(q as i128)?.factors != [(q, 1)] {
        return Err(Error::precondition(format!("q = {q} is not prime")));
    }
    if !thin_pn_member(n, c, q) {
        return Err(Error::precondition(format!("q = {q} is not in the thin family for (n, c) = ({n}, {c})")));
    }
    let alpha_mono = alpha_monogenic(n, q as i64)?;
    let f = MonicPolynomial::binomial(n as usize, q as i64)?;
    let power = EquationOrder::power_order(&f);
    let mut theta = vec![BigInt::zero(); n as usize];
    theta[1] = BigInt::from(c);
    let sub = EquationOrder::generated_by(&f, &theta, &BigInt::from(1))?;
    let distinguished_index = order_index(&sub, &power)?;
    Ok(ThinReport { n, c, q, alpha_monogenic_of_q: alpha_mono, distinguished_index })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinDensity {
    pub n: u32,
    pub c: u64,
    pub limit: u64,
    pub members: u64,
    pub primes: u64,
    pub fraction: f64,
    /// `∏_{p | n} (1 - 1/p)`.
    pub target: f64,
}

pub fn thin_density(n: u32, c: u64, limit: u64) -> ThinDensity {
    let primes = prime_sieve(limit);
    let members = primes.iter().filter(|&&q| thin_pn_member(n, c, q)).count() as u64;
    let target = prime_divisors(n as i128).expect("n >= 1").iter().map(|&p| 1.0 - 1.0 / p as f64).product();
    ThinDensity {
        n,
        c,
        limit,
        members,
        primes: primes.len() as u64,
        fraction: members as f64 / primes.len().max(1) as f64,
        target,
    }
}

/// Default bound on candidate primes for scaled-family indices.
pub const DEFAULT_CANDIDATE_BOUND: u64 = 50;

/// A one-prime certificate for a family member: `q | t` lies in `P_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub n: u32,
    pub t: i64,
    pub g: u64,
    pub q: u64,
    pub witness: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledRow {
    pub t: i64,
    pub g: u64,
    /// Primes `<= bound` used for saturation.
    pub candidates: Vec<u64>,
    /// Primes `> bound` with `p^2 | disc` that were not saturated.
    pub out_of_bound: Vec<u64>,
    /// Part of the discriminant left unfactored (too large for trial
    /// division); any square factor in it is an unchecked candidate.
    pub unfactored_cofactor: Option<String>,
    pub certificate: Option<FamilyCertificate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledScanReport {
    pub family: ScaledFamily,
    pub candidate_bound: u64,
    pub t_range: (i64, i64),
    pub rows: Vec<ScaledRow>,
    pub observed_indices: Vec<u64>,
    pub kummer: Vec<KummerData>,
    /// Every observed index `>= 2` has a nontrivial Kummer extension.
    pub kummer_nontrivial_on_window: bool,
    /// No row left an out-of-bound or unfactored candidate.
    pub indices_resolved: bool,
}

const COFACTOR_TRIAL_LIMIT: u128 = 1_000_000_000_000;

fn scaled_row(family: &ScaledFamily, t: i64, bound: u64) -> Result<ScaledRow> {
    let f = family.poly(t);
    let disc = poly_disc_resultant(&f);
    if disc.is_zero() {
        return Err(Error::domain(format!("f_t is not separable at t = {t}")));
    }
    let t_primes = prime_divisors(t as i128)?;
    let mut candidates = Vec::new();
    let mut cofactor = disc.abs();
    for p in prime_sieve(bound) {
        let v = vp_big(&disc, p)?;
        if v >= 2 {
            candidates.push(p);
        }
        cofactor /= num_traits::pow(BigInt::from(p), v as usize);
    }
    // primes of t beyond the bound are Eisenstein primes and never divide the index
    for &q in t_primes.iter().filter(|&&q| q > bound) {
        if eisenstein_at(&f, q) {
            let v = vp_big(&disc, q)?;
            cofactor /= num_traits::pow(BigInt::from(q), v as usize);
        }
    }
    let mut out_of_bound = Vec::new();
    let mut unfactored_cofactor = None;
    match cofactor.to_u128() {
        Some(c) if c <= COFACTOR_TRIAL_LIMIT => {
            for (p, e) in factorize(c as i128)?.factors {
                if e >= 2 {
                    out_of_bound.push(p);
                }
            }
        }
        _ => unfactored_cofactor = Some(cofactor.to_string()),
    }
    let (g, _) = equation_order_index(&f, &candidates)?;
    let g = g.to_u64().ok_or_else(|| Error::Consistency(format!("index {g} exceeds 64 bits")))?;
    let certificate = if g >= 2 && in_t_hsf(family, t) {
        certificate_for_index(family.n, t, g)?.map(|c| FamilyCertificate {
            n: c.n,
            t,
            g: c.g,
            q: c.q,
            witness: c.witness,
            big_n: c.big_n,
        })
    } else {
        None
    };
    Ok(ScaledRow { t, g, candidates, out_of_bound, unfactored_cofactor, certificate })
}

/// Index values and certificates over `t ∈ T_{h,sf}` with `t_min <= t <= t_max`.
pub fn scaled_scan(family: &ScaledFamily, t_min: i64, t_max: i64, candidate_bound: u64) -> Result<ScaledScanReport> {
    if t_min > t_max {
        return Err(Error::domain(format!("empty range [{t_min}, {t_max}]")));
    }
    let ts: Vec<i64> = (t_min..=t_max).filter(|&t| in_t_hsf(family, t)).collect();
    let rows: Vec<ScaledRow> = ts.par_iter().map(|&t| scaled_row(family, t, candidate_bound)).collect::<Result<_>>()?;
    let mut observed: Vec<u64> = rows.iter().map(|r| r.g).collect();
    observed.sort_unstable();
    observed.dedup();
    let big_n = index_form_degree(family.n);
    let kummer: Vec<KummerData> =
        observed.iter().filter(|&&g| g >= 2).map(|&g| kummer_data(g, big_n)).collect::<Result<_>>()?;
    let kummer_nontrivial_on_window = kummer.iter().all(|k| k.nontrivial);
    let indices_resolved = rows.iter().all(|r| r.out_of_bound.is_empty() && r.unfactored_cofactor.is_none());
    Ok(ScaledScanReport {
        family: family.clone(),
        candidate_bound,
        t_range: (t_min, t_max),
        rows,
        observed_indices: observed,
        kummer,
        kummer_nontrivial_on_window,
        indices_resolved,
    })
}

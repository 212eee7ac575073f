//! Pure fields `K_m = Q(α)`, `α^n = m`: irreducibility of `x^n - m`, the
//! valuation criterion for `O_K = Z[α]`, and the exact index
//! `g(m) = [O_K : Z[α]]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::{exact_root, factorize, is_squarefree, mod_pow, prime_divisors};
use crate::error::{Error, Result};
use crate::orders::{equation_order_index_with, EquationOrder, SaturationStrategy};
use crate::poly::MonicPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PureFieldParams {
    pub n: u32,
    pub m: i64,
    /// `n(n-1)/2`, the degree of the index form.
    #[serde(rename = "N")]
    pub big_n: u64,
}

impl PureFieldParams {
    pub fn new(n: u32, m: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("degree n must be >= 2, got {n}")));
        }
        if m.unsigned_abs() <= 1 {
            return Err(Error::domain(format!("radicand must satisfy |m| > 1, got {m}")));
        }
        Ok(PureFieldParams { n, m, big_n: index_form_degree(n) })
    }

    pub fn poly(&self) -> MonicPolynomial {
        MonicPolynomial::binomial(self.n as usize, self.m).expect("n >= 2")
    }
}

/// `N = n(n-1)/2`.
pub fn index_form_degree(n: u32) -> u64 {
    n as u64 * (n as u64 - 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureFieldInvariants {
    pub params: PureFieldParams,
    pub irreducible: bool,
    pub alpha_monogenic: bool,
    pub g: u64,
    #[serde(serialize_with = "crate::serialize_big")]
    pub power_disc: BigInt,
}

/// Whether `x^n - m` is irreducible over Q: `m` is no `p`-th power for a
/// prime `p | n`, and `m ≠ -4k^4` when `4 | n`.
pub fn binomial_irreducible(n: u32, m: i64) -> bool {
    let abs = m.unsigned_abs() as u128;
    for p in prime_divisors(n as i128).expect("n >= 1") {
        let is_power = match exact_root(abs, p as u32) {
            // a negative number is a p-th power only for odd p
            Some(_) => m > 0 || p % 2 == 1,
            None => false,
        };
        if is_power {
            return false;
        }
    }
    if n % 4 == 0 && m < 0 && abs % 4 == 0 && exact_root(abs / 4, 4).is_some() {
        return false;
    }
    true
}

/// `v_p(m^p - m) = 1` for every prime `p | n`; the non-squarefree half of
/// the α-monogenicity criterion. Since `p | m^p - m` always, this is
/// `m^p ≢ m (mod p^2)`.
pub fn valuation_condition(n: u32, m: i64) -> bool {
    prime_divisors(n as i128).expect("n >= 1").into_iter().all(|p| {
        let p2 = p * p;
        mod_pow(m, p, p2) != (m as i128).rem_euclid(p2 as i128) as u64
    })
}

/// `O_K = Z[α]` iff `m` is squarefree and `v_p(m^p - m) = 1` for all `p | n`.
pub fn alpha_monogenic(n: u32, m: i64) -> Result<bool> {
    PureFieldParams::new(n, m)?;
    if !binomial_irreducible(n, m) {
        return Err(Error::precondition(format!("x^{n} - ({m}) is reducible")));
    }
    Ok(is_squarefree(m as i128)? && valuation_condition(n, m))
}

/// `(-1)^{n(n-1)/2} n^n (-m)^{n-1}`, the discriminant of `x^n - m`.
pub fn pure_power_disc(n: u32, m: i64) -> BigInt {
    let big_n = index_form_degree(n);
    let value = num_traits::pow(BigInt::from(n), n as usize) * num_traits::pow(BigInt::from(-m), n as usize - 1);
    if big_n % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Exact index `g(m)` with the invariants that come with it.
pub fn pure_index(n: u32, m: i64) -> Result<PureFieldInvariants> {
    pure_index_with(n, m, SaturationStrategy::default()).map(|(inv, _)| inv)
}

/// [`pure_index`] plus the maximal order, using the given saturation
/// strategy at the primes dividing `n`.
pub fn pure_index_with(n: u32, m: i64, strategy: SaturationStrategy) -> Result<(PureFieldInvariants, EquationOrder)> {
    let params = PureFieldParams::new(n, m)?;
    if !binomial_irreducible(n, m) {
        return Err(Error::precondition(format!("x^{n} - ({m}) is reducible")));
    }
    if !is_squarefree(m as i128)? {
        return Err(Error::precondition(format!("m = {m} is not squarefree")));
    }
    let candidates = prime_divisors(n as i128)?;
    let (g, order) = equation_order_index_with(&params.poly(), &candidates, strategy)?;
    let g = g.to_u64().ok_or_else(|| Error::Consistency(format!("index {g} exceeds 64 bits")))?;
    let inv = PureFieldInvariants {
        params,
        irreducible: true,
        alpha_monogenic: valuation_condition(n, m),
        g,
        power_disc: pure_power_disc(n, m),
    };
    check_invariants(&inv)?;
    Ok((inv, order))
}

fn check_invariants(inv: &PureFieldInvariants) -> Result<()> {
    let PureFieldParams { n, m, .. } = inv.params;
    if inv.alpha_monogenic != (inv.g == 1) {
        return Err(Error::Consistency(format!(
            "criterion says alpha_monogenic = {} but saturation gives g = {} for (n, m) = ({n}, {m})",
            inv.alpha_monogenic, inv.g
        )));
    }
    let nn = num_traits::pow(BigInt::from(n), n as usize);
    if !nn.is_multiple_of(&(BigInt::from(inv.g) * inv.g)) {
        return Err(Error::Consistency(format!("g^2 = {}^2 does not divide n^n", inv.g)));
    }
    if (inv.g as i128).gcd(&(m as i128)) != 1 {
        return Err(Error::Consistency(format!("gcd(g, m) != 1 for g = {}, m = {m}", inv.g)));
    }
    for (p, e) in factorize(inv.g as i128)?.factors {
        let vn = crate::arith::vp(n as i128, p).unwrap_or(0);
        if vn == 0 || 2 * e > n * vn {
            return Err(Error::Consistency(format!("v_{p}(g) = {e} exceeds (n/2) v_{p}(n)")));
        }
    }
    Ok(())
}

/// `v_p(n) < (n-1)/2` for every prime `p | n`, when `n >= 5`.
pub fn valuation_bound_holds(n: u32) -> bool {
    prime_divisors(n as i128)
        .expect("n >= 1")
        .into_iter()
        .all(|p| 2 * crate::arith::vp(n as i128, p).expect("p | n") < n - 1)
}

/// Sign of the power discriminant, for display.
pub fn power_disc_sign(n: u32, m: i64) -> i8 {
    if pure_power_disc(n, m).is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{order_disc, p_saturate, p_saturate_radical, poly_disc_resultant};

    #[test]
    fn irreducibility_examples() {
        assert!(binomial_irreducible(4, 13));
        assert!(!binomial_irreducible(4, 16));
        assert!(!binomial_irreducible(4, -4));
        assert!(!binomial_irreducible(4, -64)); // -4 * 2^4
        assert!(binomial_irreducible(4, -2));
        assert!(!binomial_irreducible(3, -8));
        assert!(binomial_irreducible(2, -4));
        assert!(!binomial_irreducible(6, 27));
    }

    #[test]
    fn criterion_examples() {
        assert!(alpha_monogenic(4, 2).unwrap());
        assert!(!alpha_monogenic(4, 73).unwrap());
        assert!(!alpha_monogenic(4, 13).unwrap());
        assert!(alpha_monogenic(4, 16).is_err());
    }

    #[test]
    fn disc_examples() {
        assert_eq!(pure_power_disc(4, 13), BigInt::from(-562_432));
        assert_eq!(pure_power_disc(2, 5), BigInt::from(20));
        for (n, m) in [(4, 13), (2, 5), (3, 2), (5, 7), (6, -11), (8, 3)] {
            let f = MonicPolynomial::binomial(n as usize, m).unwrap();
            assert_eq!(pure_power_disc(n, m), poly_disc_resultant(&f), "n={n} m={m}");
            assert_eq!(pure_power_disc(n, m), order_disc(&EquationOrder::power_order(&f)), "n={n} m={m}");
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(pure_index(4, 13).unwrap().g, 4);
        assert_eq!(pure_index(4, 2).unwrap().g, 1);
        assert_eq!(pure_index(4, 73).unwrap().g, 8);
        // 7^2 ≡ -1 (mod 25), so v_5(7^5 - 7) = 2 and Z[α] is not maximal
        let five = pure_index(5, 7).unwrap();
        assert_eq!(five.g, 5);
        assert!(!five.alpha_monogenic);
        assert!(matches!(pure_index(4, 12), Err(Error::Precondition(_))));
        assert!(matches!(pure_index(4, 16), Err(Error::Precondition(_))));
    }

    #[test]
    fn quartic_criterion_is_mod_4_condition() {
        for m in -2000i64..=2000 {
            if m.abs() <= 1 || !is_squarefree(m as i128).unwrap() {
                continue;
            }
            assert_eq!(alpha_monogenic(4, m).unwrap(), m.rem_euclid(4) != 1, "m = {m}");
        }
    }

    #[test]
    fn criterion_agrees_with_saturation() {
        for n in [4u32, 5, 6] {
            for m in -300i64..=300 {
                if m.abs() <= 1 || !is_squarefree(m as i128).unwrap() || !binomial_irreducible(n, m) {
                    continue;
                }
                let inv = pure_index(n, m).unwrap();
                assert_eq!(inv.alpha_monogenic, inv.g == 1, "n={n} m={m}");
                assert_eq!(inv.alpha_monogenic, alpha_monogenic(n, m).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_and_radical_saturation_agree() {
        for (n, m) in [(4u32, 13i64), (4, 73), (4, -7), (6, 10), (6, 19), (5, 57), (8, 17), (3, 10), (9, 19)] {
            let f = MonicPolynomial::binomial(n as usize, m).unwrap();
            let mut a = EquationOrder::power_order(&f);
            let mut b = a.clone();
            for p in prime_divisors(n as i128).unwrap() {
                a = p_saturate(&a, p).unwrap();
                b = p_saturate_radical(&b, p).unwrap();
            }
            assert_eq!(a, b, "n={n} m={m}");
            // idempotence
            for p in prime_divisors(n as i128).unwrap() {
                assert_eq!(p_saturate(&a, p).unwrap(), a);
            }
        }
    }

    #[test]
    fn valuation_condition_matches_exact_valuation() {
        use crate::arith::vp_big;
        for n in [2u32, 3, 4, 5, 6, 10, 12] {
            for m in -500i64..=500 {
                if m.abs() <= 1 {
                    continue;
                }
                let mb = BigInt::from(m);
                let exact = prime_divisors(n as i128).unwrap().into_iter().all(|p| {
                    let diff = num_traits::pow(mb.clone(), p as usize) - &mb;
                    vp_big(&diff, p).unwrap() == 1
                });
                assert_eq!(valuation_condition(n, m), exact, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn valuation_bound() {
        for n in 5..=64 {
            assert!(valuation_bound_holds(n), "n = {n}");
        }
        assert!(!valuation_bound_holds(4));
    }
}

//! Orders in `Q[x]/(f)` for monic integer `f`.
//!
//! An order (or, transiently, any full-rank lattice containing 1) is stored
//! as a lower-triangular integer basis in the power basis `1, θ, ..., θ^{n-1}`
//! over a common positive denominator. Row `i` has support on columns
//! `0..=i`, so containment and coordinates are back-substitutions.
//!
//! Maximal orders are reached prime by prime. [`p_saturate`] enlarges by
//! enumerating the classes of `(1/p)O / O` and keeping those with integral
//! characteristic polynomial; [`p_saturate_radical`] reaches the same
//! p-maximal order through multiplier rings of the p-radical, which stays
//! cheap when `p^n` is far too large to enumerate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::mul_mod;
use crate::error::{Error, Result};
use crate::linalg::{charpoly, charpoly_i128, det_bareiss, hnf_lower, left_kernel_mod_p, solve_lower, Matrix};
use crate::poly::MonicPolynomial;

/// Default bound on `p^n` for the enumeration saturation.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

/// Largest `p^n` that [`SaturationStrategy::Auto`] still enumerates.
pub const DEFAULT_AUTO_ENUMERATION_BUDGET: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationOrder {
    poly: MonicPolynomial,
    basis: Matrix,
    denominator: BigInt,
}

impl EquationOrder {
    /// `Z[θ]` with basis `1, θ, ..., θ^{n-1}`.
    pub fn power_order(poly: &MonicPolynomial) -> Self {
        let n = poly.degree();
        EquationOrder { poly: poly.clone(), basis: crate::linalg::identity(n), denominator: BigInt::one() }
    }

    /// Lattice spanned by `generators / denominator` (power-basis
    /// numerators), brought to normal form. The lattice must have full rank
    /// and meet `Q` in `Z`.
    pub fn from_generators(poly: &MonicPolynomial, generators: &[Vec<BigInt>], denominator: BigInt) -> Result<Self> {
        let n = poly.degree();
        if !denominator.is_positive() {
            return Err(Error::domain("denominator must be positive"));
        }
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::domain(format!("generators must have {n} coordinates")));
        }
        let basis = hnf_lower(generators, n).ok_or_else(|| Error::domain("generators do not span a full-rank lattice"))?;
        let content = basis.iter().flatten().fold(denominator.clone(), |acc, x| acc.gcd(x));
        let basis: Matrix = basis.into_iter().map(|r| r.into_iter().map(|x| x / &content).collect()).collect();
        let denominator = denominator / &content;
        if basis[0][0] != denominator {
            return Err(Error::domain("lattice does not meet Q in Z (first basis row is not 1)"));
        }
        Ok(EquationOrder { poly: poly.clone(), basis, denominator })
    }

    /// `Z[β]` for `β = numerator / denominator` in the power basis.
    pub fn generated_by(poly: &MonicPolynomial, numerator: &[BigInt], denominator: &BigInt) -> Result<Self> {
        let n = poly.degree();
        let mut gens = Vec::with_capacity(n);
        let mut power = unit_vector(n, 0);
        let mut den = BigInt::one();
        for _ in 0..n {
            gens.push((power.clone(), den.clone()));
            power = poly.mul_mod(&power, numerator);
            den *= denominator;
        }
        let common = gens.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
        let rows: Vec<Vec<BigInt>> =
            gens.into_iter().map(|(v, d)| v.into_iter().map(|x| x * (&common / &d)).collect()).collect();
        Self::from_generators(poly, &rows, common)
    }

    pub fn poly(&self) -> &MonicPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Basis numerators, one row per basis element.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Power-basis numerator (over [`Self::denominator`]) of the element with
    /// the given coordinates in this basis.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut v = vec![BigInt::zero(); n];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        v
    }

    /// Integer coordinates of `numerator / denominator` in this basis, if the
    /// element lies in the lattice.
    pub fn coordinates(&self, numerator: &[BigInt], denominator: &BigInt) -> Option<Vec<BigInt>> {
        // sum c_i B_i / D = v / d  <=>  sum c_i B_i = v * D / d
        let scaled: Option<Vec<BigInt>> = numerator
            .iter()
            .map(|x| {
                let (q, r) = (x * &self.denominator).div_rem(denominator);
                r.is_zero().then_some(q)
            })
            .collect();
        solve_lower(&self.basis, &scaled?)
    }

    pub fn contains(&self, other: &EquationOrder) -> bool {
        other.basis.iter().all(|row| self.coordinates(row, &other.denominator).is_some())
    }

    /// `det(basis) / denominator^n`, the covolume relative to `Z[θ]`, as a
    /// reduced fraction.
    fn covolume(&self) -> (BigInt, BigInt) {
        let det: BigInt = self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        let den = num_traits::pow(self.denominator.clone(), self.degree());
        let g = det.gcd(&den);
        (det / &g, den / g)
    }
}

fn unit_vector(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

/// Integer structure constants: `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    n: usize,
    constants: Vec<BigInt>,
}

impl MultiplicationTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn product(&self, i: usize, j: usize) -> &[BigInt] {
        let start = (i * self.n + j) * self.n;
        &self.constants[start..start + self.n]
    }

    /// Product of two elements given by coordinates.
    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(self.product(i, j)) {
                    *o += &ab * c;
                }
            }
        }
        out
    }

    fn reduced_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        self.constants.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue")).collect()
    }
}

/// Structure constants of the lattice basis; fails with the first pair
/// `(i, j)` whose product leaves the lattice.
pub fn multiplication_table(order: &EquationOrder) -> Result<MultiplicationTable> {
    let n = order.degree();
    let d2 = &order.denominator * &order.denominator;
    let mut constants = vec![BigInt::zero(); n * n * n];
    for i in 0..n {
        for j in i..n {
            let prod = order.poly.mul_mod(&order.basis[i], &order.basis[j]);
            let coords = order.coordinates(&prod, &d2).ok_or(Error::NotClosed { i, j })?;
            for (k, c) in coords.into_iter().enumerate() {
                constants[(i * n + j) * n + k] = c.clone();
                constants[(j * n + i) * n + k] = c;
            }
        }
    }
    Ok(MultiplicationTable { n, constants })
}

/// Value of the index form at an element: the determinant of the rows
/// `1, β, ..., β^{n-1}` in the order's basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexFormValue {
    #[serde(serialize_with = "crate::serialize_big")]
    pub value: BigInt,
    /// Orientation of the order basis relative to the power basis.
    pub orientation_sign: i8,
}

pub fn index_form_value(order: &EquationOrder, beta: &[BigInt]) -> Result<IndexFormValue> {
    let n = order.degree();
    if beta.len() != n {
        return Err(Error::domain(format!("element needs {n} coordinates")));
    }
    let b = order.element(beta);
    let d = &order.denominator;
    let mut rows = Vec::with_capacity(n);
    let mut power = unit_vector(n, 0);
    let mut den = BigInt::one();
    for k in 0..n {
        let coords = order
            .coordinates(&power, &den)
            .ok_or_else(|| Error::precondition(format!("beta^{k} is not in the order; is it a ring?")))?;
        rows.push(coords);
        power = order.poly.mul_mod(&power, &b);
        den *= d;
    }
    let sign = if order.basis.iter().enumerate().all(|(i, r)| r[i].is_positive()) { 1 } else { -1 };
    Ok(IndexFormValue { value: det_bareiss(&rows), orientation_sign: sign })
}

/// `[sup : sub]` for lattices over the same polynomial with `sub ⊆ sup`.
pub fn order_index(sub: &EquationOrder, sup: &EquationOrder) -> Result<BigInt> {
    if sub.poly != sup.poly {
        return Err(Error::precondition("orders live over different polynomials"));
    }
    if let Some(row) = (0..sub.degree()).find(|&i| sup.coordinates(&sub.basis[i], &sub.denominator).is_none()) {
        return Err(Error::NotContained { row });
    }
    let (sn, sd) = sub.covolume();
    let (pn, pd) = sup.covolume();
    let (q, r) = (sn * pd).div_rem(&(sd * pn));
    if !r.is_zero() {
        return Err(Error::Consistency("lattice index is not an integer".into()));
    }
    Ok(q.abs())
}

/// Discriminant of the trace form `Tr(e_i e_j)`.
pub fn order_disc(order: &EquationOrder) -> BigInt {
    let n = order.degree();
    let sums = order.poly.power_sums(n);
    let trace = |v: &[BigInt]| -> BigInt { v.iter().zip(&sums).map(|(a, s)| a * s).sum() };
    let mut gram = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let t = trace(&order.poly.mul_mod(&order.basis[i], &order.basis[j]));
            gram[i][j] = t.clone();
            gram[j][i] = t;
        }
    }
    let scale = num_traits::pow(order.denominator.clone(), 2 * n);
    let (q, r) = det_bareiss(&gram).div_rem(&scale);
    debug_assert!(r.is_zero(), "trace-form discriminant not integral");
    q
}

/// Polynomial discriminant through the resultant `Res(f, f')`.
pub fn poly_disc_resultant(poly: &MonicPolynomial) -> BigInt {
    poly.discriminant()
}

/// Whether `numerator / scale` is integral over Z: every coefficient `c_k`
/// of `x^{n-k}` in the characteristic polynomial of multiplication by the
/// numerator must be divisible by `scale^k`.
fn is_integral(poly: &MonicPolynomial, numerator: &[BigInt], scale: &BigInt) -> bool {
    let n = poly.degree();
    let mut rows = Vec::with_capacity(n);
    let mut row = numerator.to_vec();
    for _ in 0..n {
        let mut shifted = Vec::with_capacity(n + 1);
        shifted.push(BigInt::zero());
        shifted.extend(row.iter().cloned());
        rows.push(row);
        row = poly.reduce(&shifted);
    }
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect();
    if let (Some(small), Some(s)) = (small, scale.to_i128()) {
        if let Some(cp) = charpoly_i128(&small) {
            return (1..=n).all(|k| match s.checked_pow(k as u32) {
                Some(sk) => cp[n - k] % sk == 0,
                None => cp[n - k] == 0,
            });
        }
    }
    let cp = charpoly(&rows);
    let mut sk = BigInt::one();
    (1..=n).all(|k| {
        sk *= scale;
        cp[n - k].is_multiple_of(&sk)
    })
}

/// One enumeration round: adjoin every integral element of `(1/p) L`.
/// `Ok(None)` when nothing new is integral.
fn enumeration_round(lattice: &EquationOrder, p: u64, limit: u64) -> Result<Option<EquationOrder>> {
    let n = lattice.degree();
    let space = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > limit as u128 {
        return Err(Error::Resource { p, n, limit });
    }
    let pb = BigInt::from(p);
    let scale = &pb * &lattice.denominator;
    let sums = lattice.poly.power_sums(n);
    let mut integral = Vec::new();
    let mut digits = vec![0u64; n];
    // odometer over [0, p)^n, skipping the zero vector
    while let Some(pos) = digits.iter().position(|&d| d + 1 < p) {
        digits[pos] += 1;
        digits[..pos].iter_mut().for_each(|d| *d = 0);
        let coords: Vec<BigInt> = digits.iter().map(|&d| BigInt::from(d)).collect();
        let z = lattice.element(&coords);
        let trace: BigInt = z.iter().zip(&sums).map(|(a, s)| a * s).sum();
        if !trace.is_multiple_of(&scale) {
            continue;
        }
        if is_integral(&lattice.poly, &z, &scale) {
            integral.push(z);
        }
    }
    if integral.is_empty() {
        return Ok(None);
    }
    let mut gens: Vec<Vec<BigInt>> = lattice.basis.iter().map(|r| r.iter().map(|x| x * &pb).collect()).collect();
    gens.extend(integral);
    EquationOrder::from_generators(&lattice.poly, &gens, scale).map(Some)
}

/// Saturate at `p` by repeated enumeration rounds until stable, with the
/// default candidate limit.
pub fn p_saturate(order: &EquationOrder, p: u64) -> Result<EquationOrder> {
    p_saturate_with_limit(order, p, DEFAULT_ENUMERATION_LIMIT)
}

pub fn p_saturate_with_limit(order: &EquationOrder, p: u64, limit: u64) -> Result<EquationOrder> {
    let mut current = order.clone();
    while let Some(next) = enumeration_round(&current, p, limit)? {
        current = next;
    }
    Ok(current)
}

/// Saturate at `p` through multiplier rings of the p-radical. `order` must
/// be a ring.
pub fn p_saturate_radical(order: &EquationOrder, p: u64) -> Result<EquationOrder> {
    let mut current = order.clone();
    while let Some(next) = radical_round(&current, p)? {
        current = next;
    }
    Ok(current)
}

fn radical_round(order: &EquationOrder, p: u64) -> Result<Option<EquationOrder>> {
    let n = order.degree();
    let table = multiplication_table(order)?;
    let tmod = table.reduced_mod(p);
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                let ab = mul_mod(a, b, p);
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + mul_mod(ab, tmod[base + k], p)) % p;
                }
            }
        }
        out
    };

    // radical of O/pO = kernel of x -> x^(p^j) with p^j >= n
    let mut exponent = p as u128;
    while exponent < n as u128 {
        exponent *= p as u128;
    }
    let frobenius: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut base: Vec<u64> = (0..n).map(|k| (k == i) as u64).collect();
            let mut acc: Vec<u64> = (0..n).map(|k| (k == 0) as u64).collect();
            let mut e = exponent;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(&acc, &base);
                }
                base = mul(&base, &base);
                e >>= 1;
            }
            acc
        })
        .collect();
    // O must contain 1 as its first basis element for the identity above
    let radical = left_kernel_mod_p(&frobenius, p);
    if radical.is_empty() {
        return Ok(None);
    }

    // ideal I_p = pO + lift(radical), in O-coordinates
    let pb = BigInt::from(p);
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { pb.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.extend(radical.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
    let ideal = hnf_lower(&gens, n).expect("ideal contains pO");

    // U/pO = kernel of x -> (x w_k expressed in the ideal basis) mod p
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let ei: Vec<BigInt> = (0..n).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect();
            ideal
                .iter()
                .flat_map(|w| {
                    let prod = table.multiply(&ei, w);
                    let coords = solve_lower(&ideal, &prod).expect("radical is an ideal");
                    coords.into_iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue")).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let multipliers = left_kernel_mod_p(&rows, p);
    if multipliers.is_empty() {
        return Ok(None);
    }
    let mut gens: Vec<Vec<BigInt>> = order.basis.iter().map(|r| r.iter().map(|x| x * &pb).collect()).collect();
    for u in &multipliers {
        let coords: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        gens.push(order.element(&coords));
    }
    EquationOrder::from_generators(&order.poly, &gens, &pb * &order.denominator).map(Some)
}

/// How [`equation_order_index_with`] saturates at each prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationStrategy {
    /// Enumeration rounds; resource error beyond `limit`.
    Enumerate { limit: u64 },
    /// Multiplier rings of the p-radical.
    Radical,
    /// Enumerate while `p^n <= enumeration_budget`, radical otherwise.
    Auto { enumeration_budget: u64 },
}

impl Default for SaturationStrategy {
    fn default() -> Self {
        SaturationStrategy::Auto { enumeration_budget: DEFAULT_AUTO_ENUMERATION_BUDGET }
    }
}

pub fn saturate(order: &EquationOrder, p: u64, strategy: SaturationStrategy) -> Result<EquationOrder> {
    match strategy {
        SaturationStrategy::Enumerate { limit } => p_saturate_with_limit(order, p, limit),
        SaturationStrategy::Radical => p_saturate_radical(order, p),
        SaturationStrategy::Auto { enumeration_budget } => {
            let space = (p as u128).checked_pow(order.degree() as u32).unwrap_or(u128::MAX);
            if space <= enumeration_budget as u128 {
                p_saturate(order, p)
            } else {
                p_saturate_radical(order, p)
            }
        }
    }
}

/// Index `[O' : Z[θ]]` and the order `O'` obtained by saturating the power
/// order at every candidate prime.
pub fn equation_order_index(poly: &MonicPolynomial, candidate_primes: &[u64]) -> Result<(BigInt, EquationOrder)> {
    equation_order_index_with(poly, candidate_primes, SaturationStrategy::default())
}

pub fn equation_order_index_with(
    poly: &MonicPolynomial,
    candidate_primes: &[u64],
    strategy: SaturationStrategy,
) -> Result<(BigInt, EquationOrder)> {
    let power = EquationOrder::power_order(poly);
    let mut order = power.clone();
    for &p in candidate_primes {
        order = saturate(&order, p, strategy)?;
    }
    let g = order_index(&power, &order)?;
    Ok((g, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn quartic13_maximal() -> EquationOrder {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        let rows = vec![b(&[2, 0, 0, 0]), b(&[0, 2, 0, 0]), b(&[1, 0, 1, 0]), b(&[0, 1, 0, 1])];
        EquationOrder::from_generators(&f, &rows, BigInt::from(2)).unwrap()
    }

    #[test]
    fn multiplication_table_examples() {
        let f = MonicPolynomial::binomial(2, 5).unwrap();
        let t = multiplication_table(&EquationOrder::power_order(&f)).unwrap();
        assert_eq!(t.product(1, 1), b(&[5, 0]).as_slice());
        assert!(multiplication_table(&quartic13_maximal()).is_ok());
        let half = EquationOrder::from_generators(&f, &[b(&[2, 0]), b(&[0, 1])], BigInt::from(2)).unwrap();
        assert_eq!(multiplication_table(&half), Err(Error::NotClosed { i: 1, j: 1 }));
    }

    #[test]
    fn index_form_examples() {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        let o = EquationOrder::power_order(&f);
        assert_eq!(index_form_value(&o, &b(&[0, 1, 0, 0])).unwrap().value, BigInt::from(1));
        assert_eq!(index_form_value(&o, &b(&[7, 1, 0, 0])).unwrap().value, BigInt::from(1));
        assert_eq!(index_form_value(&o, &b(&[0, 2, 0, 0])).unwrap().value, BigInt::from(64));
        // α in the maximal order has index form ±4
        let m = quartic13_maximal();
        let alpha = m.coordinates(&b(&[0, 1, 0, 0]), &BigInt::one()).unwrap();
        let v = index_form_value(&m, &alpha).unwrap();
        assert_eq!(v.value.abs(), BigInt::from(4));
        assert_eq!(v.orientation_sign, 1);
    }

    #[test]
    fn order_index_examples() {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        let z = EquationOrder::power_order(&f);
        let z2 = EquationOrder::generated_by(&f, &b(&[0, 2, 0, 0]), &BigInt::one()).unwrap();
        assert_eq!(order_index(&z2, &z).unwrap(), BigInt::from(64));
        assert_eq!(order_index(&z, &z).unwrap(), BigInt::one());
        assert_eq!(order_index(&z, &quartic13_maximal()).unwrap(), BigInt::from(4));
        assert!(matches!(order_index(&quartic13_maximal(), &z), Err(Error::NotContained { .. })));
    }

    #[test]
    fn discriminant_examples() {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        assert_eq!(order_disc(&EquationOrder::power_order(&f)), BigInt::from(-562_432));
        assert_eq!(order_disc(&quartic13_maximal()), BigInt::from(-35_152));
        let g = MonicPolynomial::binomial(2, 5).unwrap();
        assert_eq!(order_disc(&EquationOrder::power_order(&g)), BigInt::from(20));
        assert_eq!(poly_disc_resultant(&MonicPolynomial::trinomial(4, 5, 5).unwrap()), BigInt::from(15_125));
    }

    #[test]
    fn saturation_examples() {
        let f = MonicPolynomial::binomial(4, 13).unwrap();
        let z = EquationOrder::power_order(&f);
        let sat = p_saturate(&z, 2).unwrap();
        assert_eq!(sat, quartic13_maximal());
        assert_eq!(p_saturate(&z, 13).unwrap(), z);
        let f2 = MonicPolynomial::binomial(4, 2).unwrap();
        let z2 = EquationOrder::power_order(&f2);
        assert_eq!(p_saturate(&z2, 2).unwrap(), z2);
        assert_eq!(p_saturate_radical(&z, 2).unwrap(), quartic13_maximal());
        assert_eq!(
            p_saturate_with_limit(&z, 13, 1000),
            Err(Error::Resource { p: 13, n: 4, limit: 1000 })
        );
    }

    #[test]
    fn equation_order_index_examples() {
        let idx = |m: i64| equation_order_index(&MonicPolynomial::binomial(4, m).unwrap(), &[2]).unwrap().0;
        assert_eq!(idx(13), BigInt::from(4));
        assert_eq!(idx(2), BigInt::from(1));
        assert_eq!(idx(73), BigInt::from(8));
    }

    #[test]
    fn gaussian_integers_and_cubic_fields() {
        // x^2 + 3: Z[(1+√-3)/2] has index 2
        let f = MonicPolynomial::from_i64(&[3, 0]).unwrap();
        let (g, o) = equation_order_index(&f, &[2]).unwrap();
        assert_eq!(g, BigInt::from(2));
        assert_eq!(order_disc(&o), BigInt::from(-3));
        // x^3 - 10: index 3 at p = 3 (10 = 1 mod 9)
        let f = MonicPolynomial::binomial(3, 10).unwrap();
        let (g, o) = equation_order_index(&f, &[2, 3, 5]).unwrap();
        assert_eq!(g, BigInt::from(3));
        assert_eq!(order_disc(&o) * BigInt::from(9), poly_disc_resultant(&f));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn index_form_translation_and_homogeneity(
            coeffs in prop::collection::vec(-6i64..7, 4),
            c in -20i64..20,
            u in -3i64..4,
            m in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13, 73]),
        ) {
            let f = MonicPolynomial::binomial(4, m).unwrap();
            let o = equation_order_index(&f, &[2]).unwrap().1;
            let beta = b(&coeffs);
            let base = index_form_value(&o, &beta).unwrap().value;
            let mut shifted = beta.clone();
            shifted[0] += BigInt::from(c);
            prop_assert_eq!(index_form_value(&o, &shifted).unwrap().value, base.clone());
            let scaled: Vec<BigInt> = beta.iter().map(|x| x * u).collect();
            prop_assert_eq!(index_form_value(&o, &scaled).unwrap().value, base * BigInt::from(u).pow(6));
        }
    }
}

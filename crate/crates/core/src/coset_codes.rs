//! The four double-coset families `DC_i^+-(n, q)`, their size constants, the
//! multiplicities of each trace value, and the binary trace codes
//! `C(DC) = { x in F_2^N : sum_j x_j Tr g_j = 0 }` with their duals
//! `{ c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) : a in F_q }`.
//!
//! Weight distributions are computed by a dynamic program over
//! `(weight j, partial sum s in F_q)`. In characteristic 2, `nu * beta`
//! depends only on the parity of `nu`, so each trace class contributes an
//! even and an odd binomial generating polynomial.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charsums::kloosterman;
use crate::combinat::{binomial, binomial_row, factorial, pow_i, pow_u, q_binomial, q_product, stirling2};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::orthogroup::{bruhat_cell, check_enumerable, BruhatCell, exp_sum_cell, SumMode};
use crate::report::Check;

/// Largest code length for which a full weight distribution is produced.
pub const FULL_DISTRIBUTION_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `DC_i^+(n,q) = P+ sigma_{n-i} P+` for even `n`, `DC_i^-(n,q)` likewise for odd `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DoubleCosetFamily {
    pub i: u8,
    pub sign: Sign,
    pub n: u32,
    /// `q = 2^r`.
    pub r: u32,
}

/// `(i, sign)` parsed from `dc1+`, `dc1-`, `dc2+` or `dc2-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyKind {
    pub i: u8,
    pub sign: Sign,
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, sign) = match s.trim().to_ascii_lowercase().as_str() {
            "dc1+" => (1, Sign::Plus),
            "dc1-" => (1, Sign::Minus),
            "dc2+" => (2, Sign::Plus),
            "dc2-" => (2, Sign::Minus),
            other => return Err(Error::Parameter(format!("unknown family {other:?}; expected dc1+, dc1-, dc2+ or dc2-"))),
        };
        Ok(FamilyKind { i, sign })
    }
}

impl DoubleCosetFamily {
    pub fn new(i: u8, sign: Sign, n: u32, r: u32) -> Result<Self> {
        if !(1..=crate::field::MAX_DEGREE).contains(&r) {
            return Err(Error::DegreeOutOfRange(r));
        }
        let ok = match (i, sign) {
            (1, Sign::Plus) | (2, Sign::Plus) => n >= 2 && n % 2 == 0,
            (1, Sign::Minus) => n % 2 == 1,
            (2, Sign::Minus) => n >= 3 && n % 2 == 1,
            _ => return Err(Error::Parameter(format!("family index must be 1 or 2, got {i}"))),
        };
        if !ok {
            return Err(Error::Parameter(format!("n = {n} violates the parity constraint of dc{i}{sign}")));
        }
        Ok(Self { i, sign, n, r })
    }

    pub fn parse(name: &str, n: u32, r: u32) -> Result<Self> {
        let kind: FamilyKind = name.parse()?;
        Self::new(kind.i, kind.sign, n, r)
    }

    pub fn q(&self) -> u64 {
        1 << self.r
    }

    /// The cell index `n - i`.
    pub fn sigma_index(&self) -> u32 {
        self.n - self.i as u32
    }

    pub fn name(&self) -> String {
        format!("dc{}{}", self.i, self.sign)
    }

    /// Whether the moment recursion is stated for this family.
    pub fn is_recursion_admissible(&self) -> bool {
        let q = self.q();
        match (self.i, self.sign) {
            (1, Sign::Plus) => true,
            (1, Sign::Minus) => self.n >= 3 || q >= 8,
            _ => q >= 4,
        }
    }

    /// `dim_{F_2}` of the kernel of `a -> c(a)`: one in the three exceptional
    /// cases `(2,+,2,2)` and `(1,-,1,q)` with `q in {2,4}`, zero otherwise.
    pub fn kernel_dimension(&self) -> u32 {
        let exceptional = matches!((self.i, self.sign, self.n, self.q()), (2, Sign::Plus, 2, 2) | (1, Sign::Minus, 1, 2) | (1, Sign::Minus, 1, 4));
        u32::from(exceptional)
    }

    /// `dim C(DC)^perp = r - kernel_dimension`.
    pub fn dual_dimension(&self) -> u32 {
        self.r - self.kernel_dimension()
    }

    pub fn is_enumerable(&self) -> bool {
        check_enumerable(self.n, self.q()).is_ok()
    }

    fn check_field(&self, field: &Field) -> Result<()> {
        if field.r() != self.r {
            return Err(Error::Parameter(format!("{self} is defined over GF(2^{}) but the field is GF(2^{})", self.r, field.r())));
        }
        Ok(())
    }
}

impl fmt::Display for DoubleCosetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dc{}{}(n={}, q={})", self.i, self.sign, self.n, self.q())
    }
}

/// `A` and `N = A B` are integers; `B` need not be (for example `B_1^-(3,q)`
/// carries a factor `q^{-1}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConstants {
    #[serde(serialize_with = "crate::decimal::one")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::decimal::one")]
    pub b: BigRational,
    #[serde(serialize_with = "crate::decimal::one")]
    pub n: BigInt,
}

fn quarter_power(q: u64, numerator: i64) -> BigRational {
    debug_assert_eq!(numerator % 4, 0);
    pow_i(q, numerator / 4)
}

pub fn family_constants(f: &DoubleCosetFamily) -> FamilyConstants {
    let q = f.q();
    let n = f.n as i64;
    let int = BigRational::from_integer;
    let (a, b) = match (f.i, f.sign) {
        (1, Sign::Plus) => (
            quarter_power(q, 5 * n * n - 6 * n) * int(q_binomial(f.n, 1, q) * q_product(q, n / 2, 2, 1)),
            quarter_power(q, (n - 2) * (n - 2)) * int(q_product(q, n / 2, 2, 0)),
        ),
        (2, Sign::Plus) => (
            quarter_power(q, 5 * n * n - 6 * n) * int(q_binomial(f.n, 2, q) * q_product(q, (n - 2) / 2, 2, 1)),
            quarter_power(q, n * n - 8 * n + 12) * int((pow_u(q, f.n - 1) - 1) * (pow_u(q, f.n) - 1) * q_product(q, (n - 2) / 2, 2, 0)),
        ),
        (1, Sign::Minus) => (
            quarter_power(q, 5 * n * n - 4 * n - 1) * int(q_binomial(f.n, 1, q) * q_product(q, (n - 1) / 2, 2, 1)),
            quarter_power(q, n * n - 6 * n + 5) * int((pow_u(q, f.n) - 1) * q_product(q, (n - 1) / 2, 2, 0)),
        ),
        _ => (
            quarter_power(q, 5 * n * n - 8 * n + 3) * int(q_binomial(f.n, 2, q) * q_product(q, (n - 1) / 2, 2, 1)),
            quarter_power(q, (n - 3) * (n - 3)) * int((pow_u(q, f.n) - 1) * q_product(q, (n - 1) / 2, 2, 0)),
        ),
    };
    let total = &a * &b;
    debug_assert!(a.is_integer() && total.is_integer());
    FamilyConstants { a: a.to_integer(), b, n: total.to_integer() }
}

/// `counts[beta.bits()] = N_DC(beta) = |{w in DC : Tr w = beta}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceMultiplicityMap {
    pub q: usize,
    #[serde(serialize_with = "crate::decimal::many")]
    pub counts: Vec<BigInt>,
}

impl TraceMultiplicityMap {
    pub fn new(counts: Vec<BigInt>) -> Result<Self> {
        let q = counts.len();
        if !q.is_power_of_two() || !(2..=256).contains(&q) {
            return Err(Error::Parameter(format!("multiplicity map must have 2^r entries with 1 <= r <= 8, got {q}")));
        }
        if counts.iter().any(|c| c.is_negative()) {
            return Err(Error::Parameter("multiplicities must be nonnegative".into()));
        }
        Ok(Self { q, counts })
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// `sum_beta N(beta) beta` in F_q, as bits: only classes of odd size contribute.
    pub fn weighted_sum_bits(&self) -> u8 {
        self.counts.iter().enumerate().filter(|(_, c)| c.is_odd()).fold(0u8, |acc, (b, _)| acc ^ b as u8)
    }

    /// Trace values that never occur.
    pub fn zero_classes(&self) -> Vec<usize> {
        (0..self.q).filter(|&b| self.counts[b].is_zero()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityMode {
    Formula,
    BruteForce,
}

/// `N(beta) = q^{-1} A (B + X(beta))` with
/// `X = 1, q + 1, -q + 1` for `beta = 0`, `tr(1/beta) = 0`, `tr(1/beta) = 1` when `i = 1`, and
/// `X = q^3 - q^2 - 1` for `beta = 0`, `q K(lambda; 1/beta) - q^2 - 1` otherwise when `i = 2`.
pub fn trace_multiplicities(field: &Field, f: &DoubleCosetFamily, mode: MultiplicityMode) -> Result<TraceMultiplicityMap> {
    f.check_field(field)?;
    match mode {
        MultiplicityMode::BruteForce => {
            let cell = bruhat_cell(field, f.n as usize, f.sigma_index() as usize)?;
            TraceMultiplicityMap::new(cell.trace_histogram(field).into_iter().map(BigInt::from).collect())
        }
        MultiplicityMode::Formula => {
            let FamilyConstants { a, b, .. } = family_constants(f);
            let q = BigInt::from(f.q());
            let one = field.one();
            let mut counts = Vec::with_capacity(field.q());
            for beta in field.elements() {
                let x = if beta.is_zero() {
                    if f.i == 1 {
                        BigInt::one()
                    } else {
                        &q * &q * &q - &q * &q - 1
                    }
                } else {
                    let inv = field.inv(beta)?;
                    if f.i == 1 {
                        if field.trace(inv) == 0 {
                            &q + 1
                        } else {
                            -&q + 1
                        }
                    } else {
                        &q * kloosterman(field, inv, 1, one)?.value - &q * &q - 1
                    }
                };
                let value = BigRational::from_integer(a.clone()) * (&b + BigRational::from_integer(x)) / BigRational::from_integer(q.clone());
                if !value.is_integer() || value.is_negative() {
                    return Err(Error::Consistency(format!("N({beta}) = {value} for {f} is not a nonnegative integer")));
                }
                counts.push(value.to_integer());
            }
            TraceMultiplicityMap::new(counts)
        }
    }
}

/// A materialized double coset reduced to its trace vector `(Tr g_1, ..., Tr g_N)`
/// in canonical element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCode {
    pub family: DoubleCosetFamily,
    pub traces: Vec<u8>,
}

impl CosetCode {
    pub fn materialize(field: &Field, f: &DoubleCosetFamily) -> Result<Self> {
        f.check_field(field)?;
        let cell = bruhat_cell(field, f.n as usize, f.sigma_index() as usize)?;
        Self::from_cell(f, &cell)
    }

    pub fn from_cell(f: &DoubleCosetFamily, cell: &BruhatCell) -> Result<Self> {
        if (cell.n, cell.r) != (f.n as usize, f.sigma_index() as usize) {
            return Err(Error::Parameter(format!("cell P+ sigma_{} P+ at n = {} is not {f}", cell.r, cell.n)));
        }
        Ok(Self { family: *f, traces: cell.elements.iter().map(|w| w.trace_bits()).collect() })
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    /// `c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N))` as 0/1 bytes.
    pub fn dual_codeword(&self, field: &Field, a: FieldElement) -> Vec<u8> {
        self.traces.iter().map(|&t| field.trace_bits(field.mul_bits(a.bits(), t))).collect()
    }

    pub fn dual_weight(&self, field: &Field, a: FieldElement) -> u64 {
        self.traces.iter().filter(|&&t| field.trace_bits(field.mul_bits(a.bits(), t)) == 1).count() as u64
    }

    /// `{ a : c(a) = 0 }`.
    pub fn kernel(&self, field: &Field) -> Vec<FieldElement> {
        field.elements().filter(|&a| self.dual_weight(field, a) == 0).collect()
    }

    /// The same multiset of traces under another ordering of the coset.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Parameter("not a permutation of the coset".into()));
        }
        Ok(Self { family: self.family, traces: perm.iter().map(|&p| self.traces[p]).collect() })
    }

    pub fn multiplicities(&self, field: &Field) -> TraceMultiplicityMap {
        let mut counts = vec![BigInt::zero(); field.q()];
        for &t in &self.traces {
            counts[t as usize] += 1;
        }
        TraceMultiplicityMap { q: field.q(), counts }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Hamming weight of the materialized codeword.
    Direct,
    /// `A (B - K(lambda; a)) / 2` for `i = 1`, `A (B - q^2 + q - K(lambda; a)^2) / 2` for `i = 2`.
    Formula,
    /// `A (B - q^2 - K_2(lambda; a)) / 2`, only for `i = 2`.
    FormulaTwoDim,
}

/// `w(c(a))` for `a != 0`.
pub fn dual_weight(field: &Field, f: &DoubleCosetFamily, a: FieldElement, mode: WeightMode) -> Result<BigInt> {
    f.check_field(field)?;
    if a.is_zero() || !field.contains(a) {
        return Err(Error::Domain(format!("dual weight needs a nonzero element of GF({}), got {a}", field.q())));
    }
    if mode == WeightMode::Direct {
        return Ok(BigInt::from(CosetCode::materialize(field, f)?.dual_weight(field, a)));
    }
    let FamilyConstants { a: big_a, b, .. } = family_constants(f);
    let q = BigInt::from(f.q());
    let one = field.one();
    let inner = match (mode, f.i) {
        (WeightMode::Formula, 1) => BigInt::from(kloosterman(field, a, 1, one)?.value),
        (WeightMode::Formula, _) => {
            let k = BigInt::from(kloosterman(field, a, 1, one)?.value);
            &q * &q - &q + &k * &k
        }
        (WeightMode::FormulaTwoDim, 2) => &q * &q + kloosterman(field, a, 2, one)?.value,
        _ => return Err(Error::Parameter(format!("the two-dimensional weight form applies to dc2 families, not {f}"))),
    };
    let w = BigRational::from_integer(big_a) * (b - BigRational::from_integer(inner)) / BigRational::from_integer(BigInt::from(2));
    if !w.is_integer() || w.is_negative() {
        return Err(Error::Consistency(format!("weight {w} of c({a}) for {f} is not a nonnegative integer")));
    }
    Ok(w.to_integer())
}

/// Weights of `c(a)` for every `a in F_q` (the zero codeword included), from
/// the closed form.
pub fn dual_weights_formula(field: &Field, f: &DoubleCosetFamily) -> Result<Vec<BigInt>> {
    field.elements().map(|a| if a.is_zero() { Ok(BigInt::zero()) } else { dual_weight(field, f, a, WeightMode::Formula) }).collect()
}

/// Coefficients `C_0..=C_len` of a weight enumerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub length: u64,
    #[serde(serialize_with = "crate::decimal::many")]
    pub coefficients: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn new(coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Parameter("a weight distribution has at least C_0".into()));
        }
        Ok(Self { length: coefficients.len() as u64 - 1, coefficients })
    }

    pub fn get(&self, j: u64) -> BigInt {
        self.coefficients.get(j as usize).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// `sum_j j^h C_j`.
    pub fn power_sum(&self, h: u32) -> BigInt {
        self.coefficients.iter().enumerate().map(|(j, c)| c * num_traits::pow(BigInt::from(j), h as usize)).sum()
    }
}

fn convolve_into(acc: &mut [BigInt], a: &[BigInt], b: &[BigInt]) {
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate().take(acc.len().saturating_sub(x)) {
            if !by.is_zero() {
                acc[x + y] += ax * by;
            }
        }
    }
}

/// `C_0..=C_{j_max}` of the code cut out by one trace constraint, computed by
/// the parity-split dynamic program.
pub fn weight_prefix(source: &TraceMultiplicityMap, j_max: u64) -> Vec<BigInt> {
    let degree = j_max.min(source.total().to_u64().unwrap_or(u64::MAX)) as usize;
    let q = source.q;
    let mut dp = vec![vec![BigInt::zero(); degree + 1]; q];
    dp[0][0] = BigInt::one();
    for (beta, count) in source.counts.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let top = degree.min(count.to_usize().unwrap_or(usize::MAX));
        let binoms = binomial_row(count, top);
        let parity = |odd: usize| -> Vec<BigInt> { binoms.iter().enumerate().map(|(v, b)| if v % 2 == odd { b.clone() } else { BigInt::zero() }).collect() };
        let (even, odd) = (parity(0), parity(1));
        dp = (0..q)
            .into_par_iter()
            .map(|s| {
                let mut next = vec![BigInt::zero(); degree + 1];
                if beta == 0 {
                    convolve_into(&mut next, &dp[s], &binoms);
                } else {
                    convolve_into(&mut next, &dp[s], &even);
                    convolve_into(&mut next, &dp[s ^ beta], &odd);
                }
                next
            })
            .collect();
    }
    dp.swap_remove(0)
}

pub fn weight_distribution(source: &TraceMultiplicityMap) -> Result<WeightDistribution> {
    let total = source.total();
    if total > BigInt::from(FULL_DISTRIBUTION_CAP) {
        return Err(Error::Budget(format!("full distribution of length {total} exceeds {FULL_DISTRIBUTION_CAP}; request single coefficients instead")));
    }
    WeightDistribution::new(weight_prefix(source, total.to_u64().unwrap_or(0)))
}

/// A single coefficient `C_j`.
pub fn weight_coefficient(source: &TraceMultiplicityMap, j: u64) -> BigInt {
    weight_prefix(source, j).get(j as usize).cloned().unwrap_or_default()
}

/// `K_j(w; n) = sum_i (-1)^i binom(w, i) binom(n - w, j - i)` for `j = 0..=j_max`.
fn krawtchouk_row(n: &BigInt, w: &BigInt, j_max: usize) -> Vec<BigInt> {
    let rest = n - w;
    let plus = binomial_row(&rest, j_max);
    let minus: Vec<BigInt> = binomial_row(w, j_max).into_iter().enumerate().map(|(k, b)| if k % 2 == 0 { b } else { -b }).collect();
    let mut row = vec![BigInt::zero(); j_max + 1];
    convolve_into(&mut row, &minus, &plus);
    row
}

/// `C_j = (1/|D|) sum_{c in D} K_j(wt c; n)` for a dual code listed as the
/// multiset `dual_weights` (repetition by a common kernel is allowed).
pub fn macwilliams_from_weights(length: &BigInt, dual_weights: &[BigInt], j_max: u64) -> Result<Vec<BigInt>> {
    if dual_weights.is_empty() {
        return Err(Error::Parameter("dual code must be nonempty".into()));
    }
    let top = j_max.min(length.to_u64().unwrap_or(u64::MAX)) as usize;
    let mut sums = vec![BigInt::zero(); top + 1];
    for w in dual_weights {
        for (s, k) in sums.iter_mut().zip(krawtchouk_row(length, w, top)) {
            *s += k;
        }
    }
    let size = BigInt::from(dual_weights.len());
    sums.into_iter()
        .map(|s| {
            let (quo, rem) = s.div_rem(&size);
            if rem.is_zero() {
                Ok(quo)
            } else {
                Err(Error::Consistency(format!("MacWilliams sum {s} not divisible by {size}")))
            }
        })
        .collect()
}

/// MacWilliams transform of a full distribution.
pub fn macwilliams_transform(dual: &WeightDistribution) -> Result<WeightDistribution> {
    let mut weights = Vec::new();
    for (w, c) in dual.coefficients.iter().enumerate() {
        let c = c.to_usize().ok_or_else(|| Error::Budget("dual code too large to list".into()))?;
        weights.extend(std::iter::repeat(BigInt::from(w)).take(c));
    }
    WeightDistribution::new(macwilliams_from_weights(&BigInt::from(dual.length), &weights, dual.length)?)
}

/// The weight distribution of `C(DC)` from the `q` closed-form dual weights.
pub fn weight_distribution_macwilliams(field: &Field, f: &DoubleCosetFamily, j_max: Option<u64>) -> Result<WeightDistribution> {
    let length = family_constants(f).n;
    let top = match j_max {
        Some(j) => j,
        None if length <= BigInt::from(FULL_DISTRIBUTION_CAP) => length.to_u64().unwrap_or(0),
        None => return Err(Error::Budget(format!("full distribution of length {length} exceeds {FULL_DISTRIBUTION_CAP}"))),
    };
    WeightDistribution::new(macwilliams_from_weights(&length, &dual_weights_formula(field, f)?, top)?)
}

/// The weight distribution of the dual code `{ c(a) }`, counting each distinct
/// codeword once.
pub fn dual_distribution(field: &Field, f: &DoubleCosetFamily) -> Result<WeightDistribution> {
    let length = family_constants(f).n.to_u64().filter(|&n| n <= FULL_DISTRIBUTION_CAP);
    let length = length.ok_or_else(|| Error::Budget(format!("dual distribution of {f} exceeds {FULL_DISTRIBUTION_CAP}")))?;
    let mut coefficients = vec![BigInt::zero(); length as usize + 1];
    for w in dual_weights_formula(field, f)? {
        coefficients[w.to_usize().unwrap_or(0)] += 1;
    }
    let multiplicity = BigInt::one() << f.kernel_dimension();
    for c in coefficients.iter_mut() {
        *c = &*c / &multiplicity;
    }
    WeightDistribution::new(coefficients)
}

/// Pless power moment identity for a binary `[n, k]` code `B` with dual `B^perp`:
/// `sum_j j^h B_j = sum_{j <= min(n,h)} (-1)^j B^perp_j sum_{t=j}^{h} t! S(h,t) 2^{k-t} binom(n-j, n-t)`.
pub fn pless_check(code: &WeightDistribution, dual: &WeightDistribution, k: u32, h: u32) -> Result<Check> {
    if code.length != dual.length {
        return Err(Error::Parameter(format!("code length {} differs from dual length {}", code.length, dual.length)));
    }
    let n = BigInt::from(code.length);
    let lhs = code.power_sum(h);
    let mut rhs = BigRational::zero();
    for j in 0..=code.length.min(h as u64) {
        let mut inner = BigRational::zero();
        for t in j..=h as u64 {
            // binom(n-j, n-t) = binom(n-j, t-j), zero for t > n
            if t > code.length {
                break;
            }
            let term = factorial(t as u32) * stirling2(h, t as u32) * binomial(&(&n - j), (t - j) as i64);
            inner += BigRational::from_integer(term) * pow_i(2, k as i64 - t as i64);
        }
        let signed = BigRational::from_integer(dual.get(j)) * inner;
        rhs += if j % 2 == 0 { signed } else { -signed };
    }
    Ok(Check::new("pless_identity").with("n", code.length).with("k", k).with("h", h).equal(lhs, rhs))
}

/// `q N(beta) = |DC| + sum_{a != 0} lambda(a beta) sum_{w in DC} lambda(a Tr w)`,
/// with `N(beta)` from enumeration and the exponential sums from their closed form.
pub fn membership_consistency(field: &Field, f: &DoubleCosetFamily) -> Result<Vec<Check>> {
    f.check_field(field)?;
    membership_consistency_from(field, f, &trace_multiplicities(field, f, MultiplicityMode::BruteForce)?)
}

/// As [`membership_consistency`] with the enumerated multiplicities supplied.
pub fn membership_consistency_from(field: &Field, f: &DoubleCosetFamily, counts: &TraceMultiplicityMap) -> Result<Vec<Check>> {
    f.check_field(field)?;
    let size = counts.total();
    let sums: Vec<(FieldElement, BigInt)> =
        field.nonzero().map(|a| exp_sum_cell(field, f.n, f.sigma_index(), a, SumMode::Formula).map(|s| (a, s))).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    for beta in field.elements() {
        let rhs = sums.iter().fold(size.clone(), |acc, (a, s)| acc + s * field.lambda(field.mul(*a, beta)));
        let lhs = BigInt::from(field.q()) * &counts.counts[beta.bits() as usize];
        checks.push(Check::new("membership_count").with("family", f.name()).with("n", f.n).with("q", f.q()).with("beta", beta).equal(lhs, rhs));
    }
    Ok(checks)
}

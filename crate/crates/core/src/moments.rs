//! Power moments of Kloosterman sums from the weight distributions of the
//! double-coset trace codes.
//!
//! For a family with constants `A`, `B` and dual weights
//! `w(c(a)) = A (B* - X(a)) / 2`, where `X(a)` is `K(a)`, `K_2(a)` or `K(a)^2`
//! and `B*` is `B`, `B - q^2` or `B - q^2 + q` respectively, expanding the
//! `h`-th power gives
//!
//! `sum_{a != 0} w(c(a))^h = (A/2)^h sum_{l=0}^{h} (-1)^l binom(h,l) B*^{h-l} M_l`
//!
//! with `M_l = sum_a X(a)^l`. The Pless identity evaluates the left side from
//! the weight distribution `C_j` of the code. Solving for the `l = h` term:
//!
//! `M_h = sum_{l<h} (-1)^{h+l+1} binom(h,l) B*^{h-l} M_l
//!      + q A^{-h} sum_{j <= min(N,h)} (-1)^{h+j} C_j sum_{t=j}^{h} t! S(h,t) 2^{h-t} binom(N-j, N-t)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charsums::{kloosterman, moment_table};
use crate::combinat::{binomial, binomial_u, factorial, stirling2};
use crate::coset_codes::{dual_weight, family_constants, trace_multiplicities, weight_prefix, DoubleCosetFamily, FamilyConstants, MultiplicityMode, WeightMode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    /// `MK^h` from a `dc1` family.
    Plain,
    /// `MK_2^h` from a `dc2` family.
    TwoDim,
    /// `MK^{2h}` from a `dc2` family.
    EvenPower,
}

impl MomentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentKind::Plain => "plain",
            MomentKind::TwoDim => "two_dim",
            MomentKind::EvenPower => "even_power",
        }
    }

    fn family_index(self) -> u8 {
        match self {
            MomentKind::Plain => 1,
            _ => 2,
        }
    }
}

/// The inputs of one recursion: the family, its constants and the code's
/// weight-distribution prefix `C_0..=C_{min(N, h_max)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionInstance {
    pub family: DoubleCosetFamily,
    pub constants: FamilyConstants,
    pub h_max: u32,
    #[serde(serialize_with = "crate::decimal::many")]
    pub coefficients: Vec<BigInt>,
}

fn check_admissible(family: &DoubleCosetFamily) -> Result<()> {
    if !family.is_recursion_admissible() {
        return Err(Error::Parameter(format!("no moment recursion is available for {family}")));
    }
    Ok(())
}

impl RecursionInstance {
    /// Builds the instance with `C_j` from the formula-mode multiplicities.
    pub fn new(field: &Field, family: &DoubleCosetFamily, h_max: u32) -> Result<Self> {
        check_admissible(family)?;
        let counts = trace_multiplicities(field, family, MultiplicityMode::Formula)?;
        Self::with_coefficients(family, h_max, weight_prefix(&counts, h_max as u64))
    }

    pub fn with_coefficients(family: &DoubleCosetFamily, h_max: u32, coefficients: Vec<BigInt>) -> Result<Self> {
        check_admissible(family)?;
        let constants = family_constants(family);
        let needed = constants.n.clone().min(BigInt::from(h_max)).to_usize().unwrap_or(0) + 1;
        if coefficients.len() < needed {
            return Err(Error::Parameter(format!("recursion to h = {h_max} needs C_0..=C_{}, got {} coefficients", needed - 1, coefficients.len())));
        }
        Ok(Self { family: *family, constants, h_max, coefficients })
    }

    /// `B`, `B - q^2` or `B - q^2 + q`.
    pub fn shifted_b(&self, kind: MomentKind) -> Result<BigRational> {
        if kind.family_index() != self.family.i {
            return Err(Error::Parameter(format!("{kind:?} moments come from dc{} families, not {}", kind.family_index(), self.family)));
        }
        let q = BigInt::from(self.family.q());
        let shift = match kind {
            MomentKind::Plain => BigInt::zero(),
            MomentKind::TwoDim => -(&q * &q),
            MomentKind::EvenPower => -(&q * &q) + &q,
        };
        Ok(&self.constants.b + BigRational::from_integer(shift))
    }

    fn coefficient(&self, j: u64) -> BigInt {
        self.coefficients.get(j as usize).cloned().unwrap_or_default()
    }

    /// `M_0..=M_{h_max}`, seeded with `M_0 = q - 1`.
    pub fn run(&self, kind: MomentKind) -> Result<Vec<BigInt>> {
        self.run_to(kind, self.h_max)
    }

    fn run_to(&self, kind: MomentKind, h_max: u32) -> Result<Vec<BigInt>> {
        if h_max > self.h_max {
            return Err(Error::Parameter(format!("h = {h_max} exceeds the instance's h_max = {}", self.h_max)));
        }
        let b_star = self.shifted_b(kind)?;
        let q = BigInt::from(self.family.q());
        let n = &self.constants.n;
        let a = &self.constants.a;
        let mut values = vec![&q - 1];
        for h in 1..=h_max {
            let mut lower = BigRational::zero();
            for (l, m) in values.iter().enumerate() {
                let term = BigRational::from_integer(binomial_u(h as u64, l as i64) * m) * num_traits::pow(b_star.clone(), (h as usize) - l);
                // (-1)^{h+l+1}
                if (h as usize + l) % 2 == 1 {
                    lower += term;
                } else {
                    lower -= term;
                }
            }
            let mut code_sum = BigInt::zero();
            let j_top = n.clone().min(BigInt::from(h)).to_u64().unwrap_or(0);
            for j in 0..=j_top {
                let term = self.coefficient(j) * pless_kernel(h, j, n);
                if (h as u64 + j) % 2 == 0 {
                    code_sum += term;
                } else {
                    code_sum -= term;
                }
            }
            let numerator = &q * &code_sum;
            let a_pow = num_traits::pow(a.clone(), h as usize);
            // q S / A^h must be exact once the denominators of B*^{h-l} are cleared
            let cleared = &numerator * num_traits::pow(b_star.denom().clone(), h as usize);
            if !cleared.is_multiple_of(&a_pow) {
                return Err(self.alarm(kind, h, &format!("q*S*den(B*)^h = {cleared} is not divisible by A^h = {a_pow}")));
            }
            let value = lower + BigRational::new(numerator, a_pow);
            if !value.is_integer() {
                return Err(self.alarm(kind, h, &format!("recursion produced the non-integer {value}")));
            }
            values.push(value.to_integer());
        }
        Ok(values)
    }

    fn alarm(&self, kind: MomentKind, h: u32, detail: &str) -> Error {
        Error::Consistency(format!(
            "{kind:?} recursion for {} at h = {h}: {detail}; A = {}, B = {}, N = {}, C = [{}]",
            self.family,
            self.constants.a,
            self.constants.b,
            self.constants.n,
            self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        ))
    }
}

/// `sum_{t=j}^{h} t! S(h,t) 2^{h-t} binom(N-j, N-t)`.
pub fn pless_kernel(h: u32, j: u64, n: &BigInt) -> BigInt {
    let mut sum = BigInt::zero();
    for t in j..=h as u64 {
        // binom(N-j, N-t) = binom(N-j, t-j), and vanishes once t > N
        if BigInt::from(t) > *n {
            break;
        }
        sum += factorial(t as u32) * stirling2(h, t as u32) * (BigInt::one() << (h as u64 - t)) * binomial(&(n - j), (t - j) as i64);
    }
    sum
}

/// `MK^h` through a `dc1` family.
pub fn mk_recursive(inst: &RecursionInstance, h: u32) -> Result<BigInt> {
    Ok(inst.run_to(MomentKind::Plain, h)?.swap_remove(h as usize))
}

/// `MK_2^h` through a `dc2` family.
pub fn mk2_recursive(inst: &RecursionInstance, h: u32) -> Result<BigInt> {
    Ok(inst.run_to(MomentKind::TwoDim, h)?.swap_remove(h as usize))
}

/// `MK^{2h}` through a `dc2` family.
pub fn mk_even_recursive(inst: &RecursionInstance, h: u32) -> Result<BigInt> {
    Ok(inst.run_to(MomentKind::EvenPower, h)?.swap_remove(h as usize))
}

/// Brute-force `M_0..=M_{h_max}` for the given kind.
pub fn oracle_moments(field: &Field, kind: MomentKind, h_max: u32) -> Result<Vec<BigInt>> {
    let one = field.one();
    Ok(match kind {
        MomentKind::Plain => moment_table(field, 1, h_max, one)?.values,
        MomentKind::TwoDim => moment_table(field, 2, h_max, one)?.values,
        MomentKind::EvenPower => moment_table(field, 1, 2 * h_max, one)?.values.into_iter().step_by(2).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentRow {
    pub h: u32,
    #[serde(serialize_with = "crate::decimal::one")]
    pub recursive: BigInt,
    #[serde(serialize_with = "crate::decimal::one")]
    pub oracle: BigInt,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn compare_with_oracle(field: &Field, inst: &RecursionInstance, kind: MomentKind) -> Result<Vec<MomentRow>> {
    let recursive = inst.run(kind)?;
    let oracle = oracle_moments(field, kind, inst.h_max)?;
    Ok(recursive
        .into_iter()
        .zip(oracle)
        .enumerate()
        .map(|(h, (recursive, oracle))| MomentRow { h: h as u32, matches: recursive == oracle, recursive, oracle })
        .collect())
}

fn expansion(a: &BigInt, b_star: &BigRational, moments: &[BigInt], h: u32) -> BigRational {
    let mut sum = BigRational::zero();
    for (l, m) in moments.iter().enumerate().take(h as usize + 1) {
        let term = BigRational::from_integer(binomial_u(h as u64, l as i64) * m) * num_traits::pow(b_star.clone(), h as usize - l);
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum * BigRational::new(num_traits::pow(a.clone(), h as usize), BigInt::one() << h)
}

/// `sum_{a != 0} w(c(a))^h` against its binomial expansion in the moments:
/// one check for `dc1`, two (`K^2` and `K_2` forms) for `dc2`.
pub fn verify_lhs_expansion(field: &Field, family: &DoubleCosetFamily, h: u32) -> Result<Vec<Check>> {
    let constants = family_constants(family);
    let mut lhs = BigInt::zero();
    for a in field.nonzero() {
        lhs += num_traits::pow(dual_weight(field, family, a, WeightMode::Formula)?, h as usize);
    }
    let q = BigInt::from(family.q());
    let tag = |form: &str| Check::new("weight_power_expansion").with("family", family.name()).with("n", family.n).with("q", family.q()).with("h", h).with("form", form);
    let int = BigRational::from_integer;
    let mut checks = Vec::new();
    if family.i == 1 {
        let moments = oracle_moments(field, MomentKind::Plain, h)?;
        checks.push(tag("k").equal(expansion(&constants.a, &constants.b, &moments, h), &lhs));
    } else {
        let even = oracle_moments(field, MomentKind::EvenPower, h)?;
        let b_even = &constants.b - int(&q * &q) + int(q.clone());
        checks.push(tag("k_squared").equal(expansion(&constants.a, &b_even, &even, h), &lhs));
        let two = oracle_moments(field, MomentKind::TwoDim, h)?;
        let b_two = &constants.b - int(&q * &q);
        checks.push(tag("k2").equal(expansion(&constants.a, &b_two, &two, h), &lhs));
    }
    Ok(checks)
}

/// `MK_2^1 = MK^2 - q(q - 1)`, the summed form of `K_2(a) = K(a)^2 - q`.
pub fn carlitz_moment_check(field: &Field) -> Result<Check> {
    let one = field.one();
    let q = BigInt::from(field.q());
    let mut k_sq = BigInt::zero();
    let mut k2 = BigInt::zero();
    for a in field.nonzero() {
        k_sq += BigInt::from(kloosterman(field, a, 1, one)?.value).pow(2);
        k2 += kloosterman(field, a, 2, one)?.value;
    }
    Ok(Check::new("carlitz_first_moment").with("q", field.q()).equal(&k_sq - &q * (&q - 1), k2))
}

/// All moments nonnegative where they must be: even powers of real sums.
pub fn even_moments_nonnegative(values: &[BigInt]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

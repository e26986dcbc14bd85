//! Kloosterman sums over GF(2^r) by direct summation, their power moments,
//! Kloosterman sums for GL(t, q), and exhaustive checks of the classical
//! identities they satisfy.
//!
//! A nontrivial additive character is always `psi(x) = lambda(c x)` for a
//! unique `c != 0`; functions taking a `scale` argument evaluate with that
//! character. Since `-1 = 1` in characteristic 2, `lambda(-x) = lambda(x)`
//! throughout.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{gl_order, pow_u};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::enumerate_gl;
use crate::report::Check;

/// Largest `q^m` a single m-dimensional sum may enumerate.
pub const KLOOSTERMAN_BUDGET: u64 = 1 << 24;
/// Largest `|GL(t, q)|` the brute-force GL sum may enumerate.
pub const GL_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KloostermanValue {
    pub value: i64,
    pub a: FieldElement,
    pub m: u32,
    pub scale: FieldElement,
}

fn require_nonzero(x: FieldElement, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::Domain(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

fn check_budget(field: &Field, m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::Parameter("dimension m must be at least 1".into()));
    }
    let terms = (field.q() as u64).checked_pow(m);
    match terms {
        Some(t) if t <= KLOOSTERMAN_BUDGET => Ok(()),
        _ => Err(Error::Budget(format!("q^m = {}^{m} exceeds {KLOOSTERMAN_BUDGET}", field.q()))),
    }
}

/// `K_m(psi; a) = sum over (alpha_1..alpha_m) in (F_q^*)^m of
/// psi(alpha_1 + ... + alpha_m + a / (alpha_1 ... alpha_m))`, `psi = lambda(scale * .)`.
pub fn kloosterman(field: &Field, a: FieldElement, m: u32, scale: FieldElement) -> Result<KloostermanValue> {
    require_nonzero(a, "a")?;
    require_nonzero(scale, "character scale c")?;
    check_budget(field, m)?;
    let value = kloosterman_raw(field, a.bits(), m, scale.bits());
    Ok(KloostermanValue { value, a, m, scale })
}

/// Canonical-character shorthand `K(lambda; a)`.
pub fn kloosterman1(field: &Field, a: FieldElement) -> Result<i64> {
    kloosterman(field, a, 1, field.one()).map(|k| k.value)
}

fn kloosterman_raw(field: &Field, a: u8, m: u32, c: u8) -> i64 {
    // odometer over (F_q^*)^m carrying the running sum and product
    fn walk(field: &Field, depth: u32, sum: u8, prod: u8, a: u8, c: u8) -> i64 {
        if depth == 0 {
            let arg = sum ^ field.mul_bits(a, field.inv_bits(prod));
            return field.lambda_bits(field.mul_bits(c, arg));
        }
        (1..field.q())
            .map(|x| x as u8)
            .map(|x| walk(field, depth - 1, sum ^ x, field.mul_bits(prod, x), a, c))
            .sum()
    }
    walk(field, m, 0, 1, a, c)
}

/// `K_m(psi; a)` for every `a in F_q^*`, indexed by `a.bits() - 1`.
pub fn kloosterman_values(field: &Field, m: u32, scale: FieldElement) -> Result<Vec<i64>> {
    require_nonzero(scale, "character scale c")?;
    check_budget(field, m)?;
    Ok((1..field.q())
        .into_par_iter()
        .map(|a| kloosterman_raw(field, a as u8, m, scale.bits()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentTable {
    pub q: u64,
    pub m: u32,
    pub h_max: u32,
    /// `MK_m^h` for `h = 0..=h_max`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub values: Vec<BigInt>,
}

/// `MK_m(psi)^h = sum over a in F_q^* of K_m(psi; a)^h`, for `h = 0..=h_max`.
pub fn moment_table(field: &Field, m: u32, h_max: u32, scale: FieldElement) -> Result<MomentTable> {
    let ks = kloosterman_values(field, m, scale)?;
    let mut values = vec![BigInt::zero(); h_max as usize + 1];
    for k in ks {
        let k = BigInt::from(k);
        let mut p = BigInt::one();
        for v in values.iter_mut() {
            *v += &p;
            p *= &k;
        }
    }
    Ok(MomentTable { q: field.q() as u64, m, h_max, values })
}

pub fn moment(field: &Field, m: u32, h: u32, scale: FieldElement) -> Result<BigInt> {
    Ok(moment_table(field, m, h, scale)?.values.pop().expect("table has h + 1 entries"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlMethod {
    Recursion,
    ClosedForm,
    BruteForce,
}

impl GlMethod {
    pub const ALL: [GlMethod; 3] = [GlMethod::Recursion, GlMethod::ClosedForm, GlMethod::BruteForce];
}

/// `K_{GL(t,q)}(psi; a) = sum over w in GL(t,q) of psi(Tr w + a Tr w^{-1})`.
pub fn kloosterman_gl(field: &Field, t: u32, a: FieldElement, scale: FieldElement, method: GlMethod) -> Result<BigInt> {
    require_nonzero(a, "a")?;
    require_nonzero(scale, "character scale c")?;
    let q = field.q() as u64;
    match method {
        GlMethod::Recursion => {
            let k = kloosterman(field, a, 1, scale)?.value;
            Ok(gl_kloosterman_recursion(q, t, k))
        }
        GlMethod::ClosedForm => {
            let k = kloosterman(field, a, 1, scale)?.value;
            Ok(gl_kloosterman_closed_form(q, t, k))
        }
        GlMethod::BruteForce => {
            let order = gl_order(t, q);
            if order > BigInt::from(GL_BUDGET) {
                return Err(Error::Budget(format!("|GL({t},{q})| = {order} exceeds {GL_BUDGET}")));
            }
            let total: i64 = enumerate_gl(field, t as usize, GL_BUDGET)?
                .par_iter()
                .map(|w| {
                    let inv = w.inverse(field).expect("GL element is invertible");
                    let arg = w.trace_bits() ^ field.mul_bits(a.bits(), inv.trace_bits());
                    field.lambda_bits(field.mul_bits(scale.bits(), arg))
                })
                .sum();
            Ok(BigInt::from(total))
        }
    }
}

/// `K_GL(t) = q^{t-1} K_GL(t-1) K + q^{2t-2} (q^{t-1} - 1) K_GL(t-2)`, seeded by
/// `K_GL(0) = 1` and `K_GL(1) = K`.
pub fn gl_kloosterman_recursion(q: u64, t: u32, k: i64) -> BigInt {
    let k = BigInt::from(k);
    let mut prev = BigInt::one();
    if t == 0 {
        return prev;
    }
    let mut cur = k.clone();
    for s in 2..=t {
        let next = pow_u(q, s - 1) * &cur * &k + pow_u(q, 2 * s - 2) * (pow_u(q, s - 1) - 1) * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Explicit expansion of the GL Kloosterman sum in powers of `K = K(psi; a)`:
/// `q^{(t-2)(t+1)/2} sum_{l=1}^{(t+2)/2} q^l K^{t+2-2l} sum prod_{v=1}^{l-1} (q^{j_v - 2v} - 1)`,
/// the inner sum over `2l - 1 <= j_{l-1} <= ... <= j_1 <= t + 1` (empty product for `l = 1`).
pub fn gl_kloosterman_closed_form(q: u64, t: u32, k: i64) -> BigInt {
    if t == 0 {
        return BigInt::one();
    }
    let k = BigInt::from(k);
    let lead = (t as i64 - 2) * (t as i64 + 1) / 2;
    let mut total = BigInt::zero();
    for l in 1..=(t + 2) / 2 {
        let inner = weakly_decreasing_sum(q, l, t);
        // lead + l >= 0 for every t >= 1
        let e = (lead + l as i64) as u32;
        total += pow_u(q, e) * num_traits::pow(k.clone(), (t + 2 - 2 * l) as usize) * inner;
    }
    total
}

fn weakly_decreasing_sum(q: u64, l: u32, t: u32) -> BigInt {
    // sum over j_1 >= j_2 >= ... >= j_{l-1}, j_1 <= t + 1, j_{l-1} >= 2l - 1
    fn go(q: u64, v: u32, last: u32, l: u32, floor: u32) -> BigInt {
        if v == l {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in floor..=last {
            acc += (pow_u(q, j - 2 * v) - 1) * go(q, v + 1, j, l, floor);
        }
        acc
    }
    go(q, 1, t + 1, l, 2 * l - 1)
}

/// `K_2(lambda; a) = K(lambda; a)^2 - q`.
pub fn verify_carlitz(field: &Field, a: FieldElement) -> Result<Check> {
    let k2 = kloosterman(field, a, 2, field.one())?.value;
    let k = kloosterman1(field, a)?;
    Ok(Check::new("carlitz_k2")
        .with("q", field.q())
        .with("a", a)
        .equal(k * k - field.q() as i64, k2))
}

/// `K(lambda; a^{2^s}) = K(lambda; a)`.
pub fn verify_power_invariance(field: &Field, a: FieldElement, s: u32) -> Result<Check> {
    let powered = field.pow(a, 1u64 << s);
    Ok(Check::new("frobenius_invariance")
        .with("q", field.q())
        .with("a", a)
        .with("s", s)
        .equal(kloosterman1(field, a)?, kloosterman1(field, powered)?))
}

/// Part (a): `sum_{alpha != 0,1} lambda(beta / (alpha^2 + alpha)) = K(lambda; beta) - 1`.
/// Part (b), when `b` is given: `sum_alpha lambda(beta / (alpha^2 + alpha + b)) = -K(lambda; beta) - 1`,
/// requiring `x^2 + x + b` irreducible, i.e. `b` outside the Artin-Schreier image.
pub fn verify_theta_identities(field: &Field, beta: FieldElement, b: Option<FieldElement>) -> Result<Vec<Check>> {
    require_nonzero(beta, "beta")?;
    let k = kloosterman1(field, beta)?;
    let mut checks = Vec::with_capacity(2);

    let lhs_a: i64 = field
        .elements()
        .filter(|x| x.bits() > 1)
        .map(|x| {
            let den = field.add(field.square(x), x);
            field.lambda(field.mul(beta, field.inv(den).expect("alpha^2 + alpha != 0 off {0,1}")))
        })
        .sum();
    checks.push(Check::new("theta_sum_split").with("q", field.q()).with("beta", beta).equal(k - 1, lhs_a));

    if let Some(b) = b {
        if field.artin_schreier_image().contains(&b) {
            return Err(Error::Precondition(format!("x^2 + x + {b} is reducible: {b} lies in the Artin-Schreier image")));
        }
        let lhs_b: i64 = field
            .elements()
            .map(|x| {
                let den = field.add(field.add(field.square(x), x), b);
                field.lambda(field.mul(beta, field.inv(den).expect("irreducible quadratic has no roots")))
            })
            .sum();
        checks.push(
            Check::new("theta_sum_irreducible")
                .with("q", field.q())
                .with("beta", beta)
                .with("b", b)
                .equal(-k - 1, lhs_b),
        );
    }
    Ok(checks)
}

/// `sum_{a != 0} lambda(a beta) K_m(lambda; a)` against
/// `q K_{m-1}(lambda; beta^{-1}) + (-1)^{m+1}` (beta != 0) or `(-1)^{m+1}` (beta = 0),
/// with `K_0(lambda; x) = lambda(x)`.
pub fn verify_twisted_sum(field: &Field, beta: FieldElement, m: u32) -> Result<Check> {
    twisted_sum_check(field, beta, m, &kloosterman_values(field, m, field.one())?)
}

/// [`verify_twisted_sum`] for every `beta`, sharing one table of `K_m` values.
pub fn verify_twisted_sums(field: &Field, m: u32) -> Result<Vec<Check>> {
    let ks = kloosterman_values(field, m, field.one())?;
    field.elements().map(|beta| twisted_sum_check(field, beta, m, &ks)).collect()
}

fn twisted_sum_check(field: &Field, beta: FieldElement, m: u32, ks: &[i64]) -> Result<Check> {
    let lhs: i64 = field.nonzero().zip(ks).map(|(a, &k)| field.lambda(field.mul(a, beta)) * k).sum();
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let rhs = if beta.is_zero() {
        sign
    } else {
        let binv = field.inv(beta)?;
        let lower = if m == 1 { field.lambda(binv) } else { kloosterman(field, binv, m - 1, field.one())?.value };
        field.q() as i64 * lower + sign
    };
    Ok(Check::new("twisted_kloosterman_sum")
        .with("q", field.q())
        .with("beta", beta)
        .with("m", m)
        .equal(rhs, lhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeReport {
    pub q: u64,
    /// `{tau : |tau| < 2 sqrt(q), tau = -1 mod 4}`.
    pub predicted: BTreeSet<i64>,
    /// Support of `{K(lambda; a) : a != 0}`.
    pub attained: BTreeSet<i64>,
}

impl RangeReport {
    pub fn matches(&self) -> bool {
        self.predicted == self.attained
    }
}

/// Values `tau` with `tau^2 < 4q` and `tau = 3 mod 4`.
pub fn predicted_kloosterman_range(q: u64) -> BTreeSet<i64> {
    let q = q as i64;
    let mut out = BTreeSet::new();
    let mut tau = -1i64;
    while tau * tau < 4 * q {
        out.insert(tau);
        tau -= 4;
    }
    tau = 3;
    while tau * tau < 4 * q {
        out.insert(tau);
        tau += 4;
    }
    out
}

pub fn kloosterman_range(field: &Field) -> Result<RangeReport> {
    if field.r() < 2 {
        return Err(Error::Precondition("the range description needs q = 2^r with r >= 2".into()));
    }
    let attained = kloosterman_values(field, 1, field.one())?.into_iter().collect();
    Ok(RangeReport { q: field.q() as u64, predicted: predicted_kloosterman_range(field.q() as u64), attained })
}

/// `|K| <= 2 sqrt(q)`, i.e. `K^2 <= 4q`.
pub fn within_weil_bound(q: u64, k: i64) -> bool {
    BigInt::from(k).abs().pow(2) <= BigInt::from(4 * q)
}

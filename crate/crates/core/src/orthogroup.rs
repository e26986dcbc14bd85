//! The split orthogonal group O+(2n, q), q = 2^r, its maximal parabolic
//! subgroup P+ = P+(2n, q) and the Bruhat cells `P+ sigma_r P+`.
//!
//! Group elements are `2n x 2n` matrices written in `n x n` blocks
//! `[A B; C D]`. O+(2n, q) is the isometry group of the hyperbolic quadratic
//! form `theta(x) = x_1 x_{n+1} + ... + x_n x_{2n}`.
//!
//! Cells are materialized by deduplicating all products `p1 sigma_r p2`; the
//! order formulas are then checked against those sets rather than used to
//! build them.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charsums::{gl_kloosterman_recursion, kloosterman};
use crate::combinat::{gl_order, pow_u, q_binomial, q_product};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{enumerate_gl, mul_into, MatrixGF};
use crate::report::Check;

/// Cap on `|P+(2n,q)|^2`, the number of products formed per cell.
pub const PRODUCT_BUDGET: u64 = 10_000_000;

fn choose2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// `|P+(2n, q)| = q^{C(n,2)} g_n`.
pub fn parabolic_order(n: u32, q: u64) -> BigInt {
    pow_u(q, choose2(n)) * gl_order(n, q)
}

/// Rejects `(n, q)` whose cells would need more than [`PRODUCT_BUDGET`] products.
pub fn check_enumerable(n: u32, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let p = parabolic_order(n, q);
    if &p * &p > BigInt::from(PRODUCT_BUDGET) {
        return Err(Error::Budget(format!("|P+({},{q})|^2 = {} exceeds {PRODUCT_BUDGET}", 2 * n, &p * &p)));
    }
    Ok(())
}

/// `theta(v) = sum_{i<n} v_i v_{n+i}`.
pub fn theta_plus(field: &Field, n: usize, v: &[FieldElement]) -> Result<FieldElement> {
    if v.len() != 2 * n {
        return Err(Error::Parameter(format!("vector of length {} for n = {n}", v.len())));
    }
    let bits: Vec<u8> = v.iter().map(|x| x.bits()).collect();
    Ok(field.wrap(theta_bits(field, n, &bits)))
}

fn theta_bits(field: &Field, n: usize, v: &[u8]) -> u8 {
    (0..n).fold(0, |acc, i| acc ^ field.mul_bits(v[i], v[n + i]))
}

fn blocks(m: &MatrixGF, n: usize) -> [MatrixGF; 4] {
    [m.block(0, 0, n), m.block(0, n, n), m.block(n, 0, n), m.block(n, n, n)]
}

/// Block test: `tA C` and `tB D` alternating and `tA D + tC B = 1`.
pub fn is_in_oplus(field: &Field, n: usize, m: &MatrixGF) -> bool {
    if m.dim() != 2 * n {
        return false;
    }
    let [a, b, c, d] = blocks(m, n);
    let (at, bt, ct) = (a.transpose(), b.transpose(), c.transpose());
    at.mul(&c, field).is_alternating()
        && bt.mul(&d, field).is_alternating()
        && at.mul(&d, field).add(&ct.mul(&b, field)).is_identity()
}

/// The transposed characterization: `A tB` and `C tD` alternating and
/// `A tD + B tC = 1`.
pub fn is_in_oplus_transposed(field: &Field, n: usize, m: &MatrixGF) -> bool {
    if m.dim() != 2 * n {
        return false;
    }
    let [a, b, c, d] = blocks(m, n);
    a.mul(&b.transpose(), field).is_alternating()
        && c.mul(&d.transpose(), field).is_alternating()
        && a.mul(&d.transpose(), field).add(&b.mul(&c.transpose(), field)).is_identity()
}

/// `theta(M v) = theta(v)` for every `v` in `F_q^{2n}`.
pub fn is_isometry_exhaustive(field: &Field, n: usize, m: &MatrixGF) -> bool {
    let q = field.q();
    let dim = 2 * n;
    let mut v = vec![0u8; dim];
    for mut idx in 0..q.pow(dim as u32) {
        for x in v.iter_mut() {
            *x = (idx % q) as u8;
            idx /= q;
        }
        if theta_bits(field, n, &m.apply(&v, field)) != theta_bits(field, n, &v) {
            return false;
        }
    }
    true
}

/// `theta(M v) = theta(v)` on the given vectors.
pub fn is_isometry_on(field: &Field, n: usize, m: &MatrixGF, vectors: &[Vec<u8>]) -> bool {
    vectors.iter().all(|v| theta_bits(field, n, &m.apply(v, field)) == theta_bits(field, n, v))
}

/// `sigma_r = [0 0 1_r 0; 0 1_{n-r} 0 0; 1_r 0 0 0; 0 0 0 1_{n-r}]`.
pub fn sigma(n: usize, r: usize) -> MatrixGF {
    assert!(r <= n, "sigma_r needs r <= n");
    let mut m = MatrixGF::zeros(2 * n);
    for i in 0..r {
        m.set(i, n + i, 1);
        m.set(n + i, i, 1);
    }
    for i in r..n {
        m.set(i, i, 1);
        m.set(n + i, n + i, 1);
    }
    m
}

/// Every alternating `n x n` matrix over the field.
fn alternating_matrices(field: &Field, n: usize) -> Vec<MatrixGF> {
    let q = field.q();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0..q.pow(pairs.len() as u32))
        .map(|mut idx| {
            let mut m = MatrixGF::zeros(n);
            for &(i, j) in &pairs {
                let v = (idx % q) as u8;
                idx /= q;
                m.set(i, j, v);
                m.set(j, i, v);
            }
            m
        })
        .collect()
}

/// `P+(2n, q) = { [A 0; 0 tA^{-1}] [1 B; 0 1] : A in GL(n,q), B alternating }`,
/// sorted canonically.
pub fn enumerate_parabolic(field: &Field, n: usize) -> Result<Vec<MatrixGF>> {
    check_enumerable(n as u32, field.q() as u64)?;
    let alts = alternating_matrices(field, n);
    let zero = MatrixGF::zeros(n);
    let mut out = Vec::new();
    for a in enumerate_gl(field, n, PRODUCT_BUDGET)? {
        let a_inv_t = a.inverse(field)?.transpose();
        for b in &alts {
            out.push(MatrixGF::from_blocks(&a, &a.mul(b, field), &zero, &a_inv_t));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatCell {
    pub n: usize,
    pub r: usize,
    /// Deduplicated `P+ sigma_r P+`, sorted canonically.
    pub elements: Vec<MatrixGF>,
}

impl BruhatCell {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `hist[beta.bits()] = |{w : Tr w = beta}|`.
    pub fn trace_histogram(&self, field: &Field) -> Vec<u64> {
        let mut hist = vec![0u64; field.q()];
        for w in &self.elements {
            hist[w.trace_bits() as usize] += 1;
        }
        hist
    }

    /// `sum_{w in cell} lambda(c Tr w)` by direct summation.
    pub fn exp_sum(&self, field: &Field, c: FieldElement) -> i64 {
        self.elements.iter().map(|w| field.lambda_bits(field.mul_bits(c.bits(), w.trace_bits()))).sum()
    }

    pub fn contains(&self, m: &MatrixGF) -> bool {
        self.elements.binary_search(m).is_ok()
    }
}

/// Builds a cell from an already enumerated parabolic subgroup.
pub fn bruhat_cell_from(field: &Field, n: usize, r: usize, parabolic: &[MatrixGF]) -> BruhatCell {
    let dim = 2 * n;
    let s = sigma(n, r);
    let set = parabolic
        .par_iter()
        .fold(HashSet::<Vec<u8>>::new, |mut acc, p1| {
            let left = p1.mul(&s, field);
            let mut prod = vec![0u8; dim * dim];
            for p2 in parabolic {
                mul_into(left.entries(), p2.entries(), dim, field, &mut prod);
                if !acc.contains(prod.as_slice()) {
                    acc.insert(prod.clone());
                }
            }
            acc
        })
        .reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        });
    let mut elements: Vec<MatrixGF> = set.into_iter().map(|e| MatrixGF::from_raw(dim, e)).collect();
    elements.sort();
    BruhatCell { n, r, elements }
}

pub fn bruhat_cell(field: &Field, n: usize, r: usize) -> Result<BruhatCell> {
    if r > n {
        return Err(Error::Parameter(format!("cell index {r} exceeds n = {n}")));
    }
    let p = enumerate_parabolic(field, n)?;
    Ok(bruhat_cell_from(field, n, r, &p))
}

/// `A_r = { w in P+ : sigma_r w sigma_r^{-1} in P+ }`. Inside O+(2n,q), membership
/// in P+ is equivalent to a zero lower-left block.
pub fn a_r_subgroup(field: &Field, n: usize, r: usize, parabolic: &[MatrixGF]) -> Result<Vec<MatrixGF>> {
    if r > n {
        return Err(Error::Parameter(format!("cell index {r} exceeds n = {n}")));
    }
    let s = sigma(n, r);
    // sigma_r is an involution
    Ok(parabolic
        .iter()
        .filter(|w| {
            let conj = s.mul(w, field).mul(&s, field);
            conj.block(n, 0, n) == MatrixGF::zeros(n)
        })
        .cloned()
        .collect())
}

/// Every `2n x 2n` matrix passing the block membership test, by scanning all
/// `q^{4n^2}` matrices. Only sensible at `(n, q) = (1, *)` or `(2, 2)`.
pub fn scan_oplus(field: &Field, n: usize, budget: u64) -> Result<Vec<MatrixGF>> {
    let q = field.q() as u64;
    let dim = 2 * n;
    let total = q.checked_pow((dim * dim) as u32).filter(|&t| t <= budget);
    let total = total.ok_or_else(|| Error::Budget(format!("scanning all {dim}x{dim} matrices over GF({q}) exceeds {budget}")))?;
    let mut out = Vec::new();
    for mut idx in 0..total {
        let entries: Vec<u8> = (0..dim * dim)
            .map(|_| {
                let d = (idx % q) as u8;
                idx /= q;
                d
            })
            .collect();
        let m = MatrixGF::from_raw(dim, entries);
        if is_in_oplus(field, n, &m) {
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

/// Number of nonsingular symmetric `r x r` matrices over GF(q); `s_0 = 1`.
pub fn nonsingular_symmetric_count(r: u32, q: u64) -> BigInt {
    if r == 0 {
        return BigInt::one();
    }
    if r % 2 == 0 {
        pow_u(q, r * (r + 2) / 4) * q_product(q, (r / 2) as i64, 2, 1)
    } else {
        pow_u(q, (r * r - 1) / 4) * q_product(q, r.div_ceil(2) as i64, 2, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCounts {
    pub n: u32,
    pub q: u64,
    /// `g_t = |GL(t,q)|` for `t = 0..=n`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub gl_orders: Vec<BigInt>,
    /// `[n r]_q` for `r = 0..=n`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub q_binomials: Vec<BigInt>,
    /// `s_r` for `r = 0..=n`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub nonsingular_symmetric: Vec<BigInt>,
    #[serde(serialize_with = "crate::decimal::one")]
    pub parabolic: BigInt,
    /// `|A_r|` for `r = 0..=n`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub a_r: Vec<BigInt>,
    /// `|A_r \ P+| = [n r]_q q^{C(r,2)}`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub coset_index: Vec<BigInt>,
    /// `|P+ sigma_r P+| = q^{C(n,2)} g_n [n r]_q q^{C(r,2)}`.
    #[serde(serialize_with = "crate::decimal::many")]
    pub cell_sizes: Vec<BigInt>,
    /// `2 q^{n^2-n} (q^n - 1) prod_{j<n} (q^{2j} - 1)`.
    #[serde(serialize_with = "crate::decimal::one")]
    pub oplus_order: BigInt,
}

pub fn group_counts(n: u32, q: u64) -> GroupCounts {
    let gl_orders: Vec<BigInt> = (0..=n).map(|t| gl_order(t, q)).collect();
    let q_binomials: Vec<BigInt> = (0..=n).map(|r| q_binomial(n, r as i64, q)).collect();
    let nonsingular_symmetric = (0..=n).map(|r| nonsingular_symmetric_count(r, q)).collect();
    let parabolic = parabolic_order(n, q);
    let a_r = (0..=n)
        .map(|r| {
            // r(2n - 3r + 1)/2 may be negative; it is always an integer
            let twice = r as i64 * (2 * n as i64 - 3 * r as i64 + 1);
            let base = &gl_orders[r as usize] * &gl_orders[(n - r) as usize] * pow_u(q, choose2(n));
            if twice >= 0 {
                base * pow_u(q, (twice / 2) as u32)
            } else {
                base / pow_u(q, (-twice / 2) as u32)
            }
        })
        .collect();
    let coset_index: Vec<BigInt> = (0..=n).map(|r| &q_binomials[r as usize] * pow_u(q, choose2(r))).collect();
    let cell_sizes = coset_index.iter().map(|idx| &parabolic * idx).collect();
    let oplus_order = BigInt::from(2) * pow_u(q, n * n - n) * (pow_u(q, n) - 1) * q_product(q, n as i64 - 1, 2, 0);
    GroupCounts { n, q, gl_orders, q_binomials, nonsingular_symmetric, parabolic, a_r, coset_index, cell_sizes, oplus_order }
}

impl GroupCounts {
    /// Cross-checks between the order formulas.
    pub fn identities(&self) -> Vec<Check> {
        let (n, q) = (self.n, self.q);
        let tag = |name: &str| Check::new(name).with("n", n).with("q", q);
        let mut checks = Vec::new();
        for r in 0..=n as usize {
            let rhs = &self.gl_orders[n as usize - r] * &self.gl_orders[r] * pow_u(q, r as u32 * (n - r as u32)) * &self.q_binomials[r];
            checks.push(tag("gl_ratio").with("r", r).equal(&self.gl_orders[n as usize], rhs));
            let (quo, rem) = (&self.parabolic * &self.parabolic).div_rem(&self.a_r[r]);
            checks.push(tag("cell_size_from_stabilizer").with("r", r).equal(&self.cell_sizes[r], if rem.is_zero() { quo } else { BigInt::from(-1) }));
            checks.push(tag("coset_index").with("r", r).equal(&self.coset_index[r], &self.parabolic / &self.a_r[r]));
        }
        let sum: BigInt = self.cell_sizes.iter().sum();
        checks.push(tag("bruhat_order_sum").equal(&self.oplus_order, &sum));
        // q-binomial theorem at x = -1: sum_r [n r] q^{C(r,2)} = prod_{i<n} (1 + q^i)
        let lhs: BigInt = (0..=n).map(|r| &self.q_binomials[r as usize] * pow_u(q, choose2(r))).sum();
        let rhs: BigInt = (0..n).map(|i| pow_u(q, i) + 1).product();
        checks.push(tag("q_binomial_theorem").equal(&rhs, &lhs));
        checks.push(tag("oplus_factorization").equal(&self.oplus_order, &self.parabolic * rhs));
        checks
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumMode {
    BruteForce,
    Formula,
}

/// `K_{GL(t,q)}(lambda(c .); 1)`.
fn gl_sum_at_one(field: &Field, t: u32, c: FieldElement) -> Result<BigInt> {
    let k = kloosterman(field, field.one(), 1, c)?.value;
    Ok(gl_kloosterman_recursion(field.q() as u64, t, k))
}

/// `sum_{w in P+ sigma_r P+} lambda(c Tr w)`.
///
/// The formula is `q^{C(n,2)} q^{rn - e} [n r]_q prod_{j=1}^{k} (q^{2j-1} - 1) K_{GL(n-r)}(psi; 1)`
/// with `(e, k) = (r^2/4, r/2)` for even `r` and `((r+1)^2/4, (r+1)/2)` for odd `r`.
pub fn exp_sum_cell(field: &Field, n: u32, r: u32, c: FieldElement, mode: SumMode) -> Result<BigInt> {
    if c.is_zero() {
        return Err(Error::Domain("character scale c must be nonzero".into()));
    }
    if r > n {
        return Err(Error::Parameter(format!("cell index {r} exceeds n = {n}")));
    }
    match mode {
        SumMode::BruteForce => {
            let cell = bruhat_cell(field, n as usize, r as usize)?;
            Ok(BigInt::from(cell.exp_sum(field, c)))
        }
        SumMode::Formula => {
            let q = field.q() as u64;
            let (e, k) = if r % 2 == 0 { (r * r / 4, r / 2) } else { ((r + 1) * (r + 1) / 4, r.div_ceil(2)) };
            Ok(pow_u(q, choose2(n) + r * n - e) * q_binomial(n, r as i64, q) * q_product(q, k as i64, 2, 1) * gl_sum_at_one(field, n - r, c)?)
        }
    }
}

/// The per-cell term of the O+(2n,q) Gauss sum in its unsimplified shape:
/// `q^{C(n,2)} |A_r \ P+| q^{r(n-r)} s_r K_{GL(n-r)}(psi; 1)`.
pub fn gauss_sum_term(field: &Field, n: u32, r: u32, c: FieldElement) -> Result<BigInt> {
    let q = field.q() as u64;
    let index = q_binomial(n, r as i64, q) * pow_u(q, choose2(r));
    Ok(pow_u(q, choose2(n)) * index * pow_u(q, r * (n - r)) * nonsingular_symmetric_count(r, q) * gl_sum_at_one(field, n - r, c)?)
}

/// `sum_{w in O+(2n,q)} lambda(c Tr w)` summed cell by cell.
pub fn gauss_sum_oplus(field: &Field, n: u32, c: FieldElement, mode: SumMode) -> Result<BigInt> {
    (0..=n).map(|r| exp_sum_cell(field, n, r, c, mode)).sum()
}

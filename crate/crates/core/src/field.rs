//! Arithmetic in GF(2^r) for 1 <= r <= 8.
//!
//! Elements use the polynomial basis `1, x, ..., x^(r-1)` over GF(2): bit `i`
//! of [`FieldElement::bits`] is the coefficient of `x^i`. The reduction
//! polynomial is pinned per degree (see [`default_modulus`]) so that element
//! serializations are comparable across runs and implementations.
//!
//! A [`Field`] precomputes full multiplication, inverse and trace tables; at
//! q <= 256 the largest table is 64 KiB.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 8;

/// The pinned reduction polynomial for each supported degree, as a bitmask
/// including the leading `x^r` bit.
///
/// | r | polynomial          |
/// |---|---------------------|
/// | 1 | x                   |
/// | 2 | x^2+x+1             |
/// | 3 | x^3+x+1             |
/// | 4 | x^4+x+1             |
/// | 5 | x^5+x^2+1           |
/// | 6 | x^6+x+1             |
/// | 7 | x^7+x+1             |
/// | 8 | x^8+x^4+x^3+x+1     |
pub fn default_modulus(r: u32) -> Option<u16> {
    Some(match r {
        1 => 0b10,
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_0011,
        8 => 0b1_0001_1011,
        _ => return None,
    })
}

/// Exhaustive irreducibility test over GF(2): no polynomial of degree
/// 1..=deg/2 divides `poly`.
pub fn is_irreducible(poly: u16) -> bool {
    let deg = poly_degree(poly as u32);
    if deg <= 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=(deg / 2) {
        for low in 0u32..(1 << d) {
            let divisor = (1u32 << d) | low;
            if poly_mod(poly as u32, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// An element of a specific GF(2^r). The modulus tag lets checked operations
/// reject operands from a different field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u8,
    modulus: u16,
}

impl FieldElement {
    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn modulus(self) -> u16 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Lowercase hex of the bit pattern, no prefix.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.bits)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Operations accepted by [`Field::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add(FieldElement),
    Mul(FieldElement),
    Inv,
    Pow(u64),
}

#[derive(Clone)]
pub struct Field {
    r: u32,
    modulus: u16,
    mul: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("r", &self.r)
            .field("q", &self.q())
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// GF(2^r) with the pinned modulus for `r`.
    pub fn new(r: u32) -> Result<Self> {
        let modulus = default_modulus(r).ok_or(Error::DegreeOutOfRange(r))?;
        Self::with_modulus(r, modulus)
    }

    pub fn with_modulus(r: u32, modulus: u16) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(Error::DegreeOutOfRange(r));
        }
        if poly_degree(modulus as u32) != r as i32 || !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { r, modulus });
        }
        let q = 1usize << r;
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in a..q {
                let p = clmul_reduce(a as u16, b as u16, r, modulus);
                mul[a * q + b] = p;
                mul[b * q + a] = p;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("nonzero element of a field is invertible") as u8;
        }
        let mut trace = vec![0u8; q];
        for (x, t) in trace.iter_mut().enumerate() {
            // x + x^2 + ... + x^(2^(r-1))
            let mut acc = 0u8;
            let mut y = x as u8;
            for _ in 0..r {
                acc ^= y;
                y = mul[y as usize * q + y as usize];
            }
            debug_assert!(acc <= 1, "absolute trace must land in GF(2)");
            *t = acc;
        }
        Ok(Self { r, modulus, mul, inv, trace })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> usize {
        1 << self.r
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn modulus_hex(&self) -> String {
        format!("{:x}", self.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if (bits as usize) < self.q() {
            Ok(self.wrap(bits as u8))
        } else {
            Err(Error::Parameter(format!("{bits:#x} is not an element of GF({})", self.q())))
        }
    }

    /// Parses lowercase or uppercase hex, with or without a `0x` prefix.
    pub fn parse_hex(&self, s: &str) -> Result<FieldElement> {
        let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
        let bits = u32::from_str_radix(digits, 16)
            .map_err(|_| Error::Parameter(format!("invalid hex field element {s:?}")))?;
        self.element(bits)
    }

    pub(crate) fn wrap(&self, bits: u8) -> FieldElement {
        debug_assert!((bits as usize) < self.q());
        FieldElement { bits, modulus: self.modulus }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |b| self.wrap(b as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q()).map(move |b| self.wrap(b as u8))
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.modulus == self.modulus
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "operand from GF(2)[x]/({:#x}) used in GF(2)[x]/({:#x})",
                x.modulus, self.modulus
            )))
        }
    }

    /// Checked arithmetic: every operand must belong to this field, and zero
    /// has no inverse.
    pub fn apply(&self, x: FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.check(x)?;
        match op {
            FieldOp::Add(y) => {
                self.check(y)?;
                Ok(self.add(x, y))
            }
            FieldOp::Mul(y) => {
                self.check(y)?;
                Ok(self.mul(x, y))
            }
            FieldOp::Inv => self.inv(x),
            FieldOp::Pow(e) => Ok(self.pow(x, e)),
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        self.wrap(x.bits ^ y.bits)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        self.wrap(self.mul_bits(x.bits, y.bits))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.bits == 0 {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(self.wrap(self.inv_bits(x.bits)))
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x.bits;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        self.wrap(acc)
    }

    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// Absolute trace GF(2^r) -> GF(2).
    pub fn trace(&self, x: FieldElement) -> u8 {
        self.trace[x.bits as usize]
    }

    /// The canonical additive character `(-1)^tr(x)`.
    pub fn lambda(&self, x: FieldElement) -> i64 {
        self.lambda_bits(x.bits)
    }

    /// `{a^2 + a : a in F_q}`, sorted by bits.
    pub fn artin_schreier_image(&self) -> BTreeSet<FieldElement> {
        self.elements().map(|a| self.add(self.square(a), a)).collect()
    }

    /// Trace of every element in bits order.
    pub fn trace_table(&self) -> &[u8] {
        &self.trace
    }

    // Raw-bit operations for inner loops. Callers guarantee `x < q`.

    #[inline]
    pub fn mul_bits(&self, x: u8, y: u8) -> u8 {
        self.mul[((x as usize) << self.r) | y as usize]
    }

    /// Inverse of a nonzero element; returns 0 for 0.
    #[inline]
    pub fn inv_bits(&self, x: u8) -> u8 {
        self.inv[x as usize]
    }

    #[inline]
    pub fn trace_bits(&self, x: u8) -> u8 {
        self.trace[x as usize]
    }

    #[inline]
    pub fn lambda_bits(&self, x: u8) -> i64 {
        1 - 2 * self.trace[x as usize] as i64
    }

    /// One row of the multiplication table: `row[y] = x * y`.
    #[inline]
    pub fn mul_row(&self, x: u8) -> &[u8] {
        let q = self.q();
        &self.mul[x as usize * q..(x as usize + 1) * q]
    }
}

/// Carry-less multiply with reduction, the table-free reference path.
fn clmul_reduce(mut a: u16, mut b: u16, r: u32, modulus: u16) -> u8 {
    let top = 1u16 << r;
    let mut acc = 0u16;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc as u8
}

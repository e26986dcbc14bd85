//! Dense square matrices over GF(2^r).
//!
//! Entries are raw element bits in row-major order; every operation takes the
//! [`Field`] explicitly. The derived `Ord` (dimension, then entries
//! lexicographically) coincides with lexicographic order of the fixed-width
//! hex serialization, which is the canonical element ordering used by the
//! code constructions.

use std::fmt::Write as _;

use crate::combinat::gl_order;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MatrixGF {
    dim: usize,
    entries: Vec<u8>,
}

impl MatrixGF {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn from_entries(field: &Field, dim: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Parameter(format!("{} entries for a {dim}x{dim} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|&&e| e as usize >= field.q()) {
            return Err(Error::Parameter(format!("entry {bad:#x} outside GF({})", field.q())));
        }
        Ok(Self { dim, entries })
    }

    pub(crate) fn from_raw(dim: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entry(&self, field: &Field, i: usize, j: usize) -> FieldElement {
        field.wrap(self.get(i, j))
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = vec![0u8; self.dim * self.dim];
        mul_into(&self.entries, &other.entries, self.dim, field, &mut out);
        Self { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a ^ b).collect();
        Self { dim: self.dim, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    /// Matrix trace as raw bits.
    pub fn trace_bits(&self) -> u8 {
        (0..self.dim).fold(0, |acc, i| acc ^ self.entries[i * self.dim + i])
    }

    pub fn trace(&self, field: &Field) -> FieldElement {
        field.wrap(self.trace_bits())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Symmetric with zero diagonal (the characteristic-2 notion of alternating).
    pub fn is_alternating(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| self.get(i, i) == 0 && (i + 1..n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Gauss-Jordan inverse; a singular matrix is a domain error.
    pub fn inverse(&self, field: &Field) -> Result<Self> {
        let n = self.dim;
        let mut work = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&row| work[row * n + col] != 0)
                .ok_or_else(|| Error::Domain("singular matrix has no inverse".into()))?;
            if pivot != col {
                for j in 0..n {
                    work.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let scale = field.inv_bits(work[col * n + col]);
            for j in 0..n {
                work[col * n + j] = field.mul_bits(scale, work[col * n + j]);
                inv[col * n + j] = field.mul_bits(scale, inv[col * n + j]);
            }
            for row in 0..n {
                let factor = work[row * n + col];
                if row == col || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    work[row * n + j] ^= field.mul_bits(factor, work[col * n + j]);
                    inv[row * n + j] ^= field.mul_bits(factor, inv[col * n + j]);
                }
            }
        }
        Ok(Self { dim: n, entries: inv })
    }

    /// `M v` for a column vector of raw bits.
    pub fn apply(&self, v: &[u8], field: &Field) -> Vec<u8> {
        let n = self.dim;
        assert_eq!(v.len(), n, "vector length mismatch");
        (0..n)
            .map(|i| (0..n).fold(0u8, |acc, k| acc ^ field.mul_bits(self.get(i, k), v[k])))
            .collect()
    }

    /// The `size x size` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Self {
        let mut out = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.get(row + i, col + j));
            }
        }
        out
    }

    /// `[a b; c d]` from four equal-size blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.dim;
        assert!(b.dim == n && c.dim == n && d.dim == n, "block size mismatch");
        let mut out = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j));
                out.set(i, n + j, b.get(i, j));
                out.set(n + i, j, c.get(i, j));
                out.set(n + i, n + j, d.get(i, j));
            }
        }
        out
    }

    /// Row-major hex, each entry zero-padded to the width of the field.
    pub fn to_hex(&self, field: &Field) -> String {
        let width = (field.r() as usize).div_ceil(4);
        let mut s = String::with_capacity(self.entries.len() * width);
        for e in &self.entries {
            let _ = write!(s, "{e:0width$x}");
        }
        s
    }

    pub fn from_hex(field: &Field, dim: usize, hex: &str) -> Result<Self> {
        let width = (field.r() as usize).div_ceil(4);
        if hex.len() != dim * dim * width || !hex.is_ascii() {
            return Err(Error::Parameter(format!("malformed {dim}x{dim} matrix serialization {hex:?}")));
        }
        let entries = (0..dim * dim)
            .map(|k| {
                u8::from_str_radix(&hex[k * width..(k + 1) * width], 16)
                    .map_err(|_| Error::Parameter(format!("invalid hex in {hex:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(field, dim, entries)
    }
}

#[inline]
pub(crate) fn mul_into(a: &[u8], b: &[u8], n: usize, field: &Field, out: &mut [u8]) {
    out.fill(0);
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let row = field.mul_row(x);
            let b_row = &b[k * n..(k + 1) * n];
            for (o, &y) in out_row.iter_mut().zip(b_row) {
                *o ^= row[y as usize];
            }
        }
    }
}

/// Every element of GL(t, q), built row by row so that each new row avoids
/// the span of the previous ones. Errors if `|GL(t, q)|` exceeds `budget`.
pub fn enumerate_gl(field: &Field, t: usize, budget: u64) -> Result<Vec<MatrixGF>> {
    let order = gl_order(t as u32, field.q() as u64);
    if order > budget.into() {
        return Err(Error::Budget(format!("|GL({t},{})| = {order} exceeds {budget}", field.q())));
    }
    if t == 0 {
        return Ok(vec![MatrixGF::zeros(0)]);
    }
    let q = field.q();
    let vectors: Vec<Vec<u8>> = (0..q.pow(t as u32))
        .map(|mut idx| {
            (0..t)
                .map(|_| {
                    let d = (idx % q) as u8;
                    idx /= q;
                    d
                })
                .collect()
        })
        .collect();
    let index_of = |v: &[u8]| v.iter().rev().fold(0usize, |acc, &d| acc * q + d as usize);

    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::with_capacity(t);
    let mut span = vec![false; vectors.len()];
    span[0] = true;
    extend_rows(field, t, &vectors, &index_of, &mut rows, span, &mut out);
    Ok(out)
}

fn extend_rows(
    field: &Field,
    t: usize,
    vectors: &[Vec<u8>],
    index_of: &dyn Fn(&[u8]) -> usize,
    rows: &mut Vec<usize>,
    span: Vec<bool>,
    out: &mut Vec<MatrixGF>,
) {
    if rows.len() == t {
        let entries = rows.iter().flat_map(|&r| vectors[r].iter().copied()).collect();
        out.push(MatrixGF::from_raw(t, entries));
        return;
    }
    for (v, _) in span.iter().enumerate().filter(|(_, &inside)| !inside) {
        let mut next = span.clone();
        for (s, _) in span.iter().enumerate().filter(|(_, &inside)| inside) {
            for c in (1..field.q()).map(|c| c as u8) {
                let combo: Vec<u8> = vectors[s].iter().zip(&vectors[v]).map(|(&x, &y)| x ^ field.mul_bits(c, y)).collect();
                next[index_of(&combo)] = true;
            }
        }
        rows.push(v);
        extend_rows(field, t, vectors, index_of, rows, next, out);
        rows.pop();
    }
}

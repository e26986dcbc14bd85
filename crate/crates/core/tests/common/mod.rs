//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the library's arithmetic: field products are
//! shift-and-add, traces are summed Frobenius powers, inverses are found by
//! search and every sum is a plain loop.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// GF(2^r) with the pinned moduli. Inverse and trace tables are filled once
/// from the naive definitions.
#[derive(Clone, Debug)]
pub struct Gf {
    pub r: u32,
    pub modulus: u16,
    inverses: Vec<u8>,
    traces: Vec<u8>,
}

impl Gf {
    pub fn new(r: u32) -> Self {
        let modulus = match r {
            1 => 0b10,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b1_0011,
            5 => 0b10_0101,
            6 => 0b100_0011,
            7 => 0b1000_0011,
            8 => 0b1_0001_1011,
            _ => panic!("unsupported degree {r}"),
        };
        Self::with_modulus(r, modulus)
    }

    pub fn with_modulus(r: u32, modulus: u16) -> Self {
        let mut gf = Self { r, modulus, inverses: Vec::new(), traces: Vec::new() };
        gf.inverses = gf.elements().map(|a| if a == 0 { 0 } else { gf.nonzero().find(|&b| gf.mul(a, b) == 1).expect("nonzero element has an inverse") }).collect();
        gf.traces = gf.elements().map(|x| gf.trace_by_powers(x)).collect();
        gf
    }

    pub fn q(&self) -> usize {
        1 << self.r
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q()).map(|x| x as u8)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u8> {
        (1..self.q()).map(|x| x as u8)
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        let mut acc = 0u16;
        let mut x = a as u16;
        for i in 0..self.r {
            if (b >> i) & 1 == 1 {
                acc ^= x;
            }
            x <<= 1;
            if (x >> self.r) & 1 == 1 {
                x ^= self.modulus;
            }
        }
        acc as u8
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inverses[a as usize]
    }

    pub fn trace(&self, x: u8) -> u8 {
        self.traces[x as usize]
    }

    /// `x + x^2 + x^4 + ... + x^{2^{r-1}}`, which must land in {0, 1}.
    fn trace_by_powers(&self, x: u8) -> u8 {
        let mut acc = 0u8;
        let mut p = x;
        for _ in 0..self.r {
            acc ^= p;
            p = self.mul(p, p);
        }
        assert!(acc <= 1, "trace left the prime field");
        acc
    }

    pub fn lambda(&self, x: u8) -> i64 {
        if self.trace(x) == 0 {
            1
        } else {
            -1
        }
    }

    /// `K_m(lambda(c .); a)` by looping over every tuple.
    pub fn kloosterman(&self, a: u8, m: u32, c: u8) -> i64 {
        fn go(f: &Gf, depth: u32, sum: u8, prod: u8, a: u8, c: u8) -> i64 {
            if depth == 0 {
                let arg = sum ^ f.mul(a, f.inv(prod));
                return f.lambda(f.mul(c, arg));
            }
            f.nonzero().map(|x| go(f, depth - 1, sum ^ x, f.mul(prod, x), a, c)).sum()
        }
        go(self, m, 0, 1, a, c)
    }

    pub fn moment(&self, m: u32, h: u32, c: u8) -> BigInt {
        self.nonzero().map(|a| BigInt::from(self.kloosterman(a, m, c)).pow(h)).sum()
    }

    pub fn moments(&self, m: u32, h_max: u32) -> Vec<BigInt> {
        let values: Vec<i64> = self.nonzero().map(|a| self.kloosterman(a, m, 1)).collect();
        (0..=h_max).map(|h| values.iter().map(|&k| BigInt::from(k).pow(h)).sum()).collect()
    }

    pub fn mat_mul(&self, x: &[u8], y: &[u8], dim: usize) -> Vec<u8> {
        let mut out = vec![0u8; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut s = 0u8;
                for k in 0..dim {
                    s ^= self.mul(x[i * dim + k], y[k * dim + j]);
                }
                out[i * dim + j] = s;
            }
        }
        out
    }

    pub fn mat_trace(&self, x: &[u8], dim: usize) -> u8 {
        (0..dim).fold(0, |s, i| s ^ x[i * dim + i])
    }

    /// Inverse by Gauss-Jordan, `None` when singular.
    pub fn mat_inv(&self, x: &[u8], dim: usize) -> Option<Vec<u8>> {
        let mut m = x.to_vec();
        let mut inv = vec![0u8; dim * dim];
        for i in 0..dim {
            inv[i * dim + i] = 1;
        }
        for col in 0..dim {
            let pivot = (col..dim).find(|&row| m[row * dim + col] != 0)?;
            for k in 0..dim {
                m.swap(col * dim + k, pivot * dim + k);
                inv.swap(col * dim + k, pivot * dim + k);
            }
            let s = self.inv(m[col * dim + col]);
            for k in 0..dim {
                m[col * dim + k] = self.mul(s, m[col * dim + k]);
                inv[col * dim + k] = self.mul(s, inv[col * dim + k]);
            }
            for row in (0..dim).filter(|&row| row != col) {
                let factor = m[row * dim + col];
                for k in 0..dim {
                    m[row * dim + k] ^= self.mul(factor, m[col * dim + k]);
                    inv[row * dim + k] ^= self.mul(factor, inv[col * dim + k]);
                }
            }
        }
        Some(inv)
    }

    /// Every invertible `t x t` matrix, row-major.
    pub fn general_linear(&self, t: usize) -> Vec<Vec<u8>> {
        let q = self.q();
        let total = q.pow((t * t) as u32);
        (0..total)
            .map(|mut idx| {
                (0..t * t)
                    .map(|_| {
                        let e = (idx % q) as u8;
                        idx /= q;
                        e
                    })
                    .collect::<Vec<u8>>()
            })
            .filter(|m| self.mat_inv(m, t).is_some())
            .collect()
    }

    /// `sum over w in GL(t, q) of lambda(c (Tr w + a Tr w^{-1}))`.
    pub fn kloosterman_gl(&self, t: usize, a: u8, c: u8) -> i64 {
        self.general_linear(t)
            .iter()
            .map(|w| {
                let inv = self.mat_inv(w, t).unwrap();
                let arg = self.mat_trace(w, t) ^ self.mul(a, self.mat_trace(&inv, t));
                self.lambda(self.mul(c, arg))
            })
            .sum()
    }

    /// `x_1 x_{n+1} + ... + x_n x_{2n}`.
    pub fn theta(&self, n: usize, v: &[u8]) -> u8 {
        (0..n).fold(0, |s, i| s ^ self.mul(v[i], v[n + i]))
    }

    pub fn apply(&self, m: &[u8], v: &[u8]) -> Vec<u8> {
        let dim = v.len();
        (0..dim).map(|i| (0..dim).fold(0, |s, k| s ^ self.mul(m[i * dim + k], v[k]))).collect()
    }

    pub fn all_vectors(&self, dim: usize) -> Vec<Vec<u8>> {
        let q = self.q();
        (0..q.pow(dim as u32))
            .map(|mut idx| {
                (0..dim)
                    .map(|_| {
                        let e = (idx % q) as u8;
                        idx /= q;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// Invertible and preserves the hyperbolic form on every vector.
    pub fn is_isometry(&self, n: usize, m: &[u8], vectors: &[Vec<u8>]) -> bool {
        self.mat_inv(m, 2 * n).is_some() && vectors.iter().all(|v| self.theta(n, &self.apply(m, v)) == self.theta(n, v))
    }
}

/// Weight distribution of `{x in F_2^N : sum_j x_j tr(a t_j) = 0 for all a}`
/// by running through every `x`.
pub fn constrained_distribution(gf: &Gf, traces: &[u8]) -> Vec<u64> {
    let n = traces.len();
    assert!(n <= 22, "subset enumeration is for short codes");
    let masks: Vec<u32> = gf
        .nonzero()
        .map(|a| traces.iter().enumerate().filter(|(_, &t)| gf.trace(gf.mul(a, t)) == 1).fold(0u32, |m, (j, _)| m | (1 << j)))
        .collect();
    let mut dist = vec![0u64; n + 1];
    for x in 0u32..(1u32 << n) {
        if masks.iter().all(|&m| (x & m).count_ones() % 2 == 0) {
            dist[x.count_ones() as usize] += 1;
        }
    }
    dist
}

/// Hamming weight of `(tr(a t_1), ..., tr(a t_N))`.
pub fn dual_weight(gf: &Gf, traces: &[u8], a: u8) -> u64 {
    traces.iter().filter(|&&t| gf.trace(gf.mul(a, t)) == 1).count() as u64
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Second-kind Stirling numbers from the triangle `S(h, t) = t S(h-1, t) + S(h-1, t-1)`.
pub fn stirling2(h: u32, t: u32) -> BigInt {
    let mut row = vec![BigInt::one()];
    for i in 1..=h {
        let mut next = vec![BigInt::zero(); i as usize + 1];
        for k in 1..=i as usize {
            let keep = if k < row.len() { &row[k] * k } else { BigInt::zero() };
            next[k] = keep + &row[k - 1];
        }
        row = next;
    }
    row.get(t as usize).cloned().unwrap_or_else(BigInt::zero)
}

/// Both sides of the Pless power moment identity for a binary code of length
/// `n` and dimension `k` with weight counts `code` and dual weight counts `dual`.
pub fn pless_sides(code: &[BigInt], dual: &[BigInt], n: u64, k: u32, h: u32) -> (BigRational, BigRational) {
    let lhs: BigInt = code.iter().enumerate().map(|(j, c)| c * BigInt::from(j).pow(h)).sum();
    let mut rhs = BigRational::zero();
    for (t, b) in dual.iter().enumerate().take(h as usize + 1) {
        let t = t as u64;
        let mut inner = BigRational::zero();
        for nu in t..=h as u64 {
            let fact: BigInt = (1..=nu).map(BigInt::from).product();
            let two = BigRational::from_integer(BigInt::from(2)).pow(k as i32 - nu as i32);
            let coeff = fact * stirling2(h, nu as u32) * binomial(n - t.min(n), nu - t);
            inner += two * BigRational::from_integer(coeff);
        }
        let sign = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        rhs += BigRational::from_integer(sign * b) * inner;
    }
    (BigRational::from_integer(lhs), rhs)
}

pub fn big(values: &[u64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

//! Binomial parities and Pascal's triangle modulo 2.
//!
//! By Lucas' theorem, `C(a, b)` is odd exactly when every set bit of `b` is
//! also set in `a`, so parities reduce to a single mask test. The Pascal matrix
//! `A[i][j] = C(i, j) mod 2` is lower triangular with unit diagonal and is its
//! own inverse over GF(2).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported matrix dimension (`n + 1`); one `u128` word per row.
pub const MAX_DIM: usize = 128;

/// Parity of the binomial coefficient `C(a, b)`, with `C(a, b) = 0` for `b > a`.
#[inline]
pub fn binom_mod2(a: u64, b: u64) -> u8 {
    (b & !a == 0) as u8
}

/// Square matrix over GF(2), rows stored as bitmasks (bit `j` of row `i` is entry `(i, j)`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    size: usize,
    rows: Vec<u128>,
}

impl BitMatrix {
    pub fn zeros(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Self {
            size,
            rows: vec![0; size],
        })
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            *row = 1u128 << i;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        ((self.rows[i] >> j) & 1) as u8
    }

    pub fn set(&mut self, i: usize, j: usize, bit: u8) {
        if bit & 1 == 1 {
            self.rows[i] |= 1u128 << j;
        } else {
            self.rows[i] &= !(1u128 << j);
        }
    }

    pub fn row(&self, i: usize) -> u128 {
        self.rows[i]
    }

    /// Column `j` as a bitmask over row indices.
    pub fn column(&self, j: usize) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    /// Matrix-vector product over GF(2); `v` is a bitmask over column indices.
    pub fn mul_vec(&self, v: u128) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, r)| {
                acc | (((r & v).count_ones() as u128 & 1) << i)
            })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1u128 << i)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            for j in 0..self.size {
                f.write_str(if self.get(i, j) == 1 { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 || size > MAX_DIM {
        return Err(Error::ResourceLimit {
            what: "matrix dimension",
            limit: MAX_DIM,
            requested: size,
        });
    }
    Ok(())
}

/// The `(n+1) x (n+1)` matrix of binomial parities `C(i, j) mod 2`.
pub fn pascal_matrix(n: usize) -> Result<BitMatrix> {
    let mut m = BitMatrix::zeros(n + 1)?;
    for i in 0..=n {
        // Row i is the set of submasks of i.
        let mut row = 0u128;
        let mut sub = i;
        loop {
            row |= 1u128 << sub;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & i;
        }
        m.rows[i] = row;
    }
    Ok(m)
}

/// Product over GF(2): row `i` of `A·B` is the XOR of the rows of `B` selected by row `i` of `A`.
pub fn matmul_mod2(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.size != b.size {
        return Err(Error::DimensionMismatch {
            expected: a.size,
            found: b.size,
        });
    }
    let rows = a
        .rows
        .iter()
        .map(|&ra| {
            let mut acc = 0u128;
            let mut bits = ra;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                acc ^= b.rows[k];
                bits &= bits - 1;
            }
            acc
        })
        .collect();
    Ok(BitMatrix { size: a.size, rows })
}

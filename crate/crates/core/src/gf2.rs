//! Dense square matrices over Z/2.
//!
//! Entries are packed column-major into 64-bit words so that adding one
//! column into another is a word-wise XOR. Row access is supported but scans
//! every column; the row reduction goes through [`Gf2Matrix::anti_transpose`]
//! and the column kernel instead.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A square 0/1 matrix stored column by column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    size: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(size: usize) -> Self {
        let stride = words_for(size);
        Gf2Matrix {
            size,
            stride,
            bits: vec![0; stride * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set_unchecked(i, i, true);
        }
        m
    }

    /// Builds a matrix from the row indices of the non-zero entries of each column.
    pub fn from_columns<I, C>(size: usize, columns: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = usize>,
    {
        let mut m = Self::zeros(size);
        let mut count = 0;
        for (j, col) in columns.into_iter().enumerate() {
            if j >= size {
                return Err(Error::IndexOutOfRange { index: j, size });
            }
            for i in col {
                m.check(i)?;
                m.set_unchecked(i, j, true);
            }
            count += 1;
        }
        if count != size {
            return Err(Error::SizeMismatch {
                left: count,
                right: size,
            });
        }
        Ok(m)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn check(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.size,
            })
        }
    }

    #[inline]
    fn col(&self, j: usize) -> &[u64] {
        &self.bits[j * self.stride..(j + 1) * self.stride]
    }

    /// The packed words of column `j`; bit `i % 64` of word `i / 64` is entry `(i, j)`.
    pub fn column_words(&self, j: usize) -> Result<&[u64]> {
        self.check(j)?;
        Ok(self.col(j))
    }

    #[inline]
    pub(crate) fn get_unchecked(&self, i: usize, j: usize) -> bool {
        (self.bits[j * self.stride + i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_unchecked(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[j * self.stride + i / WORD_BITS];
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.get_unchecked(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        self.set_unchecked(i, j, value);
        Ok(())
    }

    /// Column `dst` += column `src`.
    pub fn col_add(&mut self, src: usize, dst: usize) -> Result<()> {
        self.check(src)?;
        self.check(dst)?;
        if src == dst {
            return Err(Error::OrderingMismatch(format!(
                "col_add needs distinct columns, got {src} twice"
            )));
        }
        self.col_add_unchecked(src, dst);
        Ok(())
    }

    #[inline]
    pub(crate) fn col_add_unchecked(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.bits.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.bits.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, w) in b.iter_mut().zip(a) {
            *d ^= *w;
        }
    }

    /// Row `dst` += row `src`.
    pub fn row_add(&mut self, src: usize, dst: usize) -> Result<()> {
        self.check(src)?;
        self.check(dst)?;
        if src == dst {
            return Err(Error::OrderingMismatch(format!(
                "row_add needs distinct rows, got {src} twice"
            )));
        }
        for j in 0..self.size {
            if self.get_unchecked(src, j) {
                let v = self.get_unchecked(dst, j);
                self.set_unchecked(dst, j, !v);
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn low_unchecked(&self, j: usize) -> Option<usize> {
        let col = self.col(j);
        col.iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    /// Largest row `i < bound` with a non-zero entry in column `j`.
    pub(crate) fn highest_set_below(&self, j: usize, bound: usize) -> Option<usize> {
        if bound == 0 {
            return None;
        }
        let col = self.col(j);
        let last = bound - 1;
        let mut k = last / WORD_BITS;
        let shift = WORD_BITS - 1 - last % WORD_BITS;
        let mut w = (col[k] << shift) >> shift;
        loop {
            if w != 0 {
                return Some(k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
            }
            if k == 0 {
                return None;
            }
            k -= 1;
            w = col[k];
        }
    }

    /// Row index of the lowest non-zero entry of column `j`, `None` for a zero column.
    pub fn low(&self, j: usize) -> Result<Option<usize>> {
        self.check(j)?;
        Ok(self.low_unchecked(j))
    }

    /// Column index of the leftmost non-zero entry of row `i`, `None` for a zero row.
    pub fn left(&self, i: usize) -> Result<Option<usize>> {
        self.check(i)?;
        Ok((0..self.size).find(|&j| self.get_unchecked(i, j)))
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        self.col(j).iter().all(|w| *w == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        (0..self.size).all(|j| !self.get_unchecked(i, j))
    }

    /// Row indices of the non-zero entries of column `j`, ascending.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.col(j).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(k * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Column indices of the non-zero entries of row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&j| self.get_unchecked(i, j))
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.size);
        for j in 0..self.size {
            for i in self.column_support(j) {
                t.set_unchecked(j, i, true);
            }
        }
        t
    }

    /// Reflection across the minor diagonal: entry `(i, j)` moves to
    /// `(n-1-j, n-1-i)`. Upper-triangular matrices stay upper-triangular.
    pub fn anti_transpose(&self) -> Gf2Matrix {
        let n = self.size;
        let mut t = Gf2Matrix::zeros(n);
        for j in 0..n {
            for i in self.column_support(j) {
                t.set_unchecked(n - 1 - j, n - 1 - i, true);
            }
        }
        t
    }

    /// Grows the matrix to `new_size`, padding with zeros.
    pub fn expand(&mut self, new_size: usize) {
        if new_size <= self.size {
            return;
        }
        let stride = words_for(new_size);
        let mut bits = vec![0; stride * new_size];
        for j in 0..self.size {
            bits[j * stride..j * stride + self.stride].copy_from_slice(self.col(j));
        }
        self.size = new_size;
        self.stride = stride;
        self.bits = bits;
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.size).all(|j| self.low_unchecked(j).is_none_or(|i| i <= j))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.size).all(|i| self.get_unchecked(i, i))
    }

    /// Matrix product over Z/2.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        let mut out = Gf2Matrix::zeros(self.size);
        for j in 0..other.size {
            for k in other.column_support(j) {
                let s = self.stride;
                let (src, dst) = (k * s, j * s);
                for w in 0..s {
                    out.bits[dst + w] ^= self.bits[src + w];
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{})", self.size, self.size)?;
        for i in 0..self.size {
            for j in 0..self.size {
                f.write_str(if self.get_unchecked(i, j) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Square matrix of non-negative integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<u32>,
}

impl IntMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }
}

/// Ordinary integer product of two 0/1 matrices, so that 1 + 1 = 2.
pub fn int_product(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<IntMatrix> {
    if a.size != b.size {
        return Err(Error::SizeMismatch {
            left: a.size,
            right: b.size,
        });
    }
    let n = a.size;
    // Rows of `a` become columns of its transpose, so each entry is a popcount.
    let at = a.transpose();
    let mut entries = vec![0u32; n * n];
    for i in 0..n {
        let row = at.col(i);
        for j in 0..n {
            entries[i * n + j] = row
                .iter()
                .zip(b.col(j))
                .map(|(x, y)| (x & y).count_ones())
                .sum();
        }
    }
    Ok(IntMatrix { size: n, entries })
}

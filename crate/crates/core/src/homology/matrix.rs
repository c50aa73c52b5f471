use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A sparse integer matrix stored by columns; each column is sorted by row
/// and holds no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: (0..n).map(|i| vec![(i as u32, BigInt::one())]).collect(),
        }
    }

    /// Builds from unsorted column entries; repeated rows are summed.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, BigInt)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    match out.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        IntMatrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, row)| row[c] != 0)
                    .map(|(r, row)| (r as u32, BigInt::from(row[c])))
                    .collect()
            })
            .collect();
        IntMatrix { rows: nrows, cols }
    }

    pub fn from_dense_big(rows: usize, cols: usize, entries: &[Vec<BigInt>]) -> Self {
        let cols = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| !entries[r][c].is_zero())
                    .map(|r| (r as u32, entries[r][c].clone()))
                    .collect()
            })
            .collect();
        IntMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(u32, BigInt)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map(|i| self.cols[c][i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize][c] = v.clone();
            }
        }
        out
    }

    pub fn to_dense_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        let mut out = vec![vec![0i64; self.cols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize][c] = v.to_i64()?;
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                cols[*r as usize].push((c as u32, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols(),
            cols,
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: Vec<(u32, BigInt)> = Vec::new();
                for (k, v) in col {
                    for (r, w) in &self.cols[*k as usize] {
                        acc.push((*r, w * v));
                    }
                }
                acc
            })
            .collect();
        Ok(IntMatrix::from_columns(self.rows, cols))
    }

    fn combine(&self, other: &IntMatrix, sign: i32) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Shape("matrix shapes differ".into()));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc = a.clone();
                acc.extend(b.iter().map(|(r, v)| (*r, if sign < 0 { -v } else { v.clone() })));
                acc
            })
            .collect();
        Ok(IntMatrix::from_columns(self.rows, cols))
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    /// `P_row · self · P_col⁻¹`, where `row_perm[i]` and `col_perm[j]` give
    /// the new positions of old row `i` and old column `j`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut cols = vec![Vec::new(); self.cols()];
        for (c, col) in self.cols.iter().enumerate() {
            cols[col_perm[c]] = col
                .iter()
                .map(|(r, v)| (row_perm[*r as usize] as u32, v.clone()))
                .collect();
        }
        IntMatrix::from_columns(self.rows, cols)
    }

    /// Assembles a block matrix; each block is placed at `(row, col)` and
    /// scaled by `sign`.
    pub fn blocks(rows: usize, cols: usize, parts: &[(usize, usize, &IntMatrix, i32)]) -> IntMatrix {
        let mut out = vec![Vec::new(); cols];
        for &(r0, c0, m, sign) in parts {
            for (c, col) in m.cols.iter().enumerate() {
                for (r, v) in col {
                    let v = if sign < 0 { -v } else { v.clone() };
                    out[c0 + c].push((r0 as u32 + *r, v));
                }
            }
        }
        IntMatrix::from_columns(rows, out)
    }

    /// Largest absolute entry, for diagnostics.
    pub fn max_abs(&self) -> BigInt {
        self.cols
            .iter()
            .flatten()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

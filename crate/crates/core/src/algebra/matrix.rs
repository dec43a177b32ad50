use num_traits::{One, Zero};

use super::Rat;

/// Dense matrix over the rationals.  Rank and kernel are exact; there is
/// no tolerance anywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<Vec<Rat>>,
    cols: usize,
}

impl QMatrix {
    pub fn new(cols: usize) -> Self {
        QMatrix { rows: Vec::new(), cols }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        QMatrix { rows, cols }
    }

    pub fn zero(nrows: usize, cols: usize) -> Self {
        QMatrix {
            rows: vec![vec![Rat::zero(); cols]; nrows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: &QMatrix) {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        self.rows.extend(other.rows.iter().cloned());
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    /// Reduced row echelon form, processing columns left to right.
    /// Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            // Prefer a pivot with few digits to slow coefficient growth.
            let mut best: Option<usize> = None;
            for i in r..self.rows.len() {
                if !self.rows[i][c].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if entry_size(&self.rows[i][c]) < entry_size(&self.rows[b][c]) {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(p) = best else { continue };
            self.rows.swap(r, p);
            let inv = {
                let pv = &self.rows[r][c];
                Rat::one() / pv.clone()
            };
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= inv.clone();
                }
            }
            for i in 0..self.rows.len() {
                if i != r && !self.rows[i][c].is_zero() {
                    let factor = std::mem::replace(&mut self.rows[i][c], Rat::zero());
                    let (above, below) = self.rows.split_at_mut(std::cmp::max(i, r));
                    let (src, dst) = if i < r {
                        (&below[0], &mut above[i])
                    } else {
                        (&above[r], &mut below[0])
                    };
                    for j in (c + 1)..self.cols {
                        if !src[j].is_zero() {
                            dst[j] -= factor.clone() * src[j].clone();
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    /// Rank by fraction-free elimination over the integers; intermediate
    /// entries stay determinant-sized instead of accumulating fractions.
    pub fn rank(&self) -> usize {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut a: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                let mut lcm = BigInt::from(1);
                for e in row {
                    lcm = lcm.lcm(e.denom());
                }
                row.iter().map(|e| e.numer() * &lcm / e.denom()).collect()
            })
            .collect();
        let n = a.len();
        let mut prev = BigInt::from(1);
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == n {
                break;
            }
            // smallest nonzero pivot keeps the minors modest
            let mut best: Option<usize> = None;
            for i in r..n {
                if !a[i][c].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if a[i][c].magnitude() < a[b][c].magnitude() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(p) = best else { continue };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                // every row advances one scale step, zero leading entry or
                // not, so the two-step division below stays exact
                for j in (c + 1)..self.cols {
                    let num = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free update not integral");
                    row[j] = q;
                }
                row[c] = BigInt::from(0);
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Exact rank together with a basis of the right kernel.
    /// The kernel vectors annihilate every row of the matrix.
    pub fn kernel_and_rank(&self) -> (usize, Vec<Vec<Rat>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                // pivot entry is 1, row reduced: coefficient is -entry at free col
                v[pc] = -m.rows[r][free].clone();
            }
            kernel.push(v);
        }
        (rank, kernel)
    }

    /// Reduce a vector against this matrix in reduced row echelon form.
    /// Returns the residual.  Intended for membership tests after `rref`.
    pub fn reduce_against_rref(&self, pivots: &[usize], v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for (r, &c) in pivots.iter().enumerate() {
            if !out[c].is_zero() {
                let factor = std::mem::replace(&mut out[c], Rat::zero());
                for j in (c + 1)..self.cols {
                    let e = &self.rows[r][j];
                    if !e.is_zero() {
                        out[j] -= factor.clone() * e.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }
}

fn entry_size(r: &Rat) -> u64 {
    (r.numer().bits() + r.denom().bits()) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let m = QMatrix::identity(3);
        let (rank, kernel) = m.kernel_and_rank();
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = QMatrix::zero(2, 3);
        let (rank, kernel) = m.kernel_and_rank();
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
    }

    #[test]
    fn proportional_rows() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
        ]);
        let (rank, kernel) = m.kernel_and_rank();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // kernel vector proportional to (-2, 1)
        let k = &kernel[0];
        assert_eq!(k[0].clone() * rat(1), -rat(2) * k[1].clone());
        for row in 0..2 {
            let dot: Rat = (0..2)
                .map(|j| m.entry(row, j).clone() * k[j].clone())
                .sum();
            assert_eq!(dot, rat(0));
        }
    }

    #[test]
    fn rank_plus_kernel_dim_is_cols() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1), rat(0), rat(3), rat(1)],
            vec![rat(0), rat(1), rat(1), rat(1)],
            vec![rat(1), rat(1), rat(4), rat(2)],
        ]);
        let (rank, kernel) = m.kernel_and_rank();
        assert_eq!(rank + kernel.len(), 4);
        for k in &kernel {
            assert!(m.mul_vec(k).iter().all(|v| v.is_zero()));
        }
    }
}

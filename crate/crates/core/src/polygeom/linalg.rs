//! Dense matrices over `Q(w)` with exact Gaussian elimination.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactfield::FieldElement;

use super::modular::{bareiss_rank, multimodular_rank, Zw};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    /// `rows x cols` matrix with explicit column count, so that zero-column
    /// matrices keep their row count.
    pub fn from_rows_with_cols(rows: Vec<Vec<FieldElement>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &(a * b);
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination. Pivot row is the first row at or below the
    /// current one with a nonzero entry in the current column.
    pub fn echelon(&self) -> Echelon {
        self.eliminate(true)
    }

    fn eliminate(&self, reduce_above: bool) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, found);
            let inv = m.get(prow, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(prow, c) * &inv;
                m.set(prow, c, v);
            }
            let start = if reduce_above { 0 } else { prow + 1 };
            for r in start..m.rows {
                if r == prow || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let p = m.get(prow, c);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * p);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Echelon { matrix: m, pivots }
    }

    /// Exact rank, computed modulo enough primes to be certain (see
    /// [`super::modular`]).
    pub fn rank(&self) -> usize {
        multimodular_rank(&self.integral_rows(), self.cols)
    }

    /// Rank by fraction-free elimination over `Z[w]`.
    pub fn rank_fraction_free(&self) -> usize {
        bareiss_rank(self.integral_rows(), self.cols)
    }

    fn integral_rows(&self) -> Vec<Vec<Zw>> {
        (0..self.rows).map(|r| Zw::clear_row(self.row(r))).collect()
    }

    /// Rank by ordinary elimination over `Q(w)`; slower, kept as a cross-check.
    pub fn rank_by_elimination(&self) -> usize {
        self.eliminate(false).pivots.len()
    }

    /// Basis of the right kernel. One vector per free column, in increasing
    /// column order; the free variable is set to 1, other free variables to 0,
    /// and pivot variables are solved by back-substitution.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let Echelon { matrix, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(); self.cols];
                v[f] = FieldElement::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Determinant of a square matrix by elimination.
    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = FieldElement::one();
        for col in 0..m.cols {
            let Some(found) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return FieldElement::zero();
            };
            if found != col {
                m.swap_rows(col, found);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Determinant of a 3x3 array by cofactor expansion.
pub fn det3(m: &[[FieldElement; 3]; 3]) -> FieldElement {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect())
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(4, 0).rank(), 0);
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn fraction_free_rank_matches_elimination() {
        let f = |p: i64, q: i64, d: i64| {
            FieldElement::new(crate::exactfield::ratio(p, d), crate::exactfield::ratio(q, d))
        };
        let a = Matrix::from_rows(vec![
            vec![f(1, 2, 3), f(0, 1, 1), f(5, -1, 2)],
            vec![f(2, 4, 3), f(0, 2, 1), f(5, -1, 1)],
            vec![f(1, 2, 6), f(0, 1, 2), f(5, -1, 4)],
            vec![f(0, 0, 1), f(1, 1, 7), f(0, 0, 1)],
        ]);
        assert_eq!(a.rank(), a.rank_by_elimination());
        assert_eq!(a.rank(), a.rank_fraction_free());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn repeated_row() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(a.rank(), m(&[&[1, 2, 3], &[4, 5, 6]]).rank());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = m(&[&[0, 0, 5], &[0, 1, 0], &[5, 0, 0]]);
        assert_eq!(a.determinant(), FieldElement::from_int(-25));
        let arr = [
            [0.into(), 0.into(), 5.into()],
            [0.into(), 1.into(), 0.into()],
            [5.into(), 0.into(), 0.into()],
        ];
        assert_eq!(det3(&arr), FieldElement::from_int(-25));
    }

    #[test]
    fn rank_over_eisenstein_entries() {
        // rows differ by the factor w, so they are dependent over Q(w)
        let w = FieldElement::w();
        let r1 = vec![FieldElement::one(), FieldElement::ints(2, 1)];
        let r2: Vec<_> = r1.iter().map(|v| v * &w).collect();
        assert_eq!(Matrix::from_rows(vec![r1, r2]).rank(), 1);
    }
}

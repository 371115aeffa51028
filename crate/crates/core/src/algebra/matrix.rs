use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::prime_field::F1;
use crate::scalar::Field;

impl Matrix<BigRational> {
    /// Exact rank. A rank modulo a prime never exceeds the rational rank, so
    /// a full modular rank settles it; otherwise the rows are cleared of
    /// denominators and eliminated fraction-free over the integers.
    pub(crate) fn rational_rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        let reduced: Option<Vec<F1>> = self.entries.iter().map(F1::from_rational).collect();
        if let Some(e) = reduced {
            if Matrix::from_entries(self.rows, self.cols, e).bareiss().pivots.len() == full {
                return full;
            }
        }
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let den = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
            })
            .collect();
        integer_rank(rows)
    }
}

/// Fraction-free elimination over the integers; every division is exact.
fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                row[j] = (pivot * &row[j] - &lead * &pivot_row[j]) / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not
    /// `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must be rows * cols");
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_negligible() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the echelon form,
    /// the pivot columns and the number of row swaps performed.
    ///
    /// Every entry produced is a minor of the input divided by the previous
    /// pivot, so integer inputs stay integral and rational inputs do not pick
    /// up the denominators plain Gaussian elimination would introduce.
    pub fn bareiss(&self) -> Echelon<F> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0usize;
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_negligible()) else {
                continue;
            };
            if p != r {
                a.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = a[(r, c)].clone();
            for i in r + 1..a.rows {
                let lead = a[(i, c)].clone();
                for j in c + 1..a.cols {
                    let v = (pivot.clone() * a[(i, j)].clone() - lead.clone() * a[(r, j)].clone()) / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, c)] = F::zero();
            }
            // Rows below the pivot row in skipped columns were left alone;
            // they are zero in the pivot column by construction.
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: a,
            pivots,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let e = self.bareiss();
        if e.pivots.len() < self.rows {
            return F::zero();
        }
        let d = e.reduced[(self.rows - 1, self.cols - 1)].clone();
        if e.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// A basis of the right kernel. Each vector has one free coordinate set
    /// to one and the other free coordinates zero, so the free coordinate
    /// serves as its normalized pivot entry.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let e = self.bareiss();
        let a = &e.reduced;
        let mut is_pivot = vec![false; self.cols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![F::zero(); self.cols];
            x[free] = F::one();
            for (k, &pc) in e.pivots.iter().enumerate().rev() {
                let mut acc = F::zero();
                for j in pc + 1..self.cols {
                    if !x[j].is_negligible() && !a[(k, j)].is_negligible() {
                        acc = acc + a[(k, j)].clone() * x[j].clone();
                    }
                }
                x[pc] = -(acc / a[(k, pc)].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// Solves `self · x = b` for one particular solution, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = -b[i].clone();
        }
        // Kernel vectors of [A | -b] with last coordinate one solve A x = b.
        let e = aug.bareiss();
        if e.pivots.contains(&self.cols) {
            return None;
        }
        let a = &e.reduced;
        let mut x = vec![F::zero(); self.cols + 1];
        x[self.cols] = F::one();
        for (k, &pc) in e.pivots.iter().enumerate().rev() {
            let mut acc = F::zero();
            for j in pc + 1..=self.cols {
                if !x[j].is_negligible() {
                    acc = acc + a[(k, j)].clone() * x[j].clone();
                }
            }
            x[pc] = -(acc / a[(k, pc)].clone());
        }
        x.pop();
        Some(x)
    }
}

pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::Rational;

    #[test]
    fn rational_rank_matches_bareiss() {
        use crate::scalar::rational;
        let mut seed = 17u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 0..60 {
            let (rows, cols) = (2 + n % 5, 2 + (n / 5) % 6);
            let mut e: Vec<Rational> = (0..rows * cols).map(|_| rational(next(), 1 + next().abs())).collect();
            if n % 3 == 0 {
                // Repeat a scaled row to force a deficiency.
                for j in 0..cols {
                    e[(rows - 1) * cols + j] = &e[j] * rational(5, 7);
                }
            }
            let m = Matrix::from_entries(rows, cols, e);
            assert_eq!(m.rank(), m.bareiss().pivots.len(), "{m:?}");
        }
        let big = rational(2_147_483_647, 1);
        let m = Matrix::from_rows(vec![vec![big.clone(), int(0)], vec![int(0), big.recip()]]);
        assert_eq!(m.rank(), 2);
    }

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn one_by_two_kernel() {
        let k = q(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn two_by_three_kernel() {
        // Hand row reduction: x = z, y = z.
        let k = q(&[&[1, 0, -1], &[0, 1, -1]]).kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(1), int(1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = q(&[&[2, 4, 1, 3], &[1, 2, 0, 1], &[3, 6, 1, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x == &int(0)));
        }
    }

    #[test]
    fn determinant_with_swaps() {
        assert_eq!(q(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(q(&[&[2, 1, 3], &[0, 4, 5], &[1, 0, 6]]).determinant(), int(2 * 24 - 1 * (-5) + 3 * (-4)));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).determinant(), int(0));
    }

    #[test]
    fn solve_particular() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        assert!(q(&[&[1, 1], &[1, 1]]).solve(&[int(1), int(2)]).is_none());
    }

    #[test]
    fn float_kernel() {
        let m = Matrix::from_rows(vec![vec![1.0f64, 2.0], vec![2.0, 4.0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!((k[0][0] + 2.0).abs() < 1e-12 && (k[0][1] - 1.0).abs() < 1e-12);
    }
}

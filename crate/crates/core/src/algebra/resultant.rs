use super::matrix::Matrix;
use super::poly::Poly;
use crate::scalar::Field;

/// Resultant of `a` and `b` read with formal degrees `m ≥ deg a` and
/// `n ≥ deg b`, as the determinant of the `(m+n) × (m+n)` Sylvester matrix.
/// A common root at infinity (both formal leading coefficients zero) makes
/// it vanish.
pub fn resultant_formal<F: Field>(a: &Poly<F>, m: usize, b: &Poly<F>, n: usize) -> F {
    assert!(a.deg() <= m as isize && b.deg() <= n as isize, "formal degree too small");
    let size = m + n;
    if size == 0 {
        return F::one();
    }
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for k in 0..=m {
            s[(i, i + k)] = a.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[(n + i, i + k)] = b.coeff(n - k);
        }
    }
    s.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::QPoly;

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x − 2, x² − 1) = (2² − 1) = 3
        let a = QPoly::from_i64s(&[-2, 1]);
        let b = QPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(resultant_formal(&a, 1, &b, 2), int(3));
        // Common root.
        let c = QPoly::from_i64s(&[-1, 1]);
        assert_eq!(resultant_formal(&c, 1, &b, 2), int(0));
        // Formal degree above the actual one on both sides vanishes.
        assert_eq!(resultant_formal(&a, 2, &c, 2), int(0));
    }
}

//! Minimal dense real-matrix arithmetic and the complex-to-real embedding
//! convention used throughout the crate.
//!
//! Every complex entry x + iy becomes the 2x2 real block
//!
//! ```text
//!   [ x  -y ]
//!   [ y   x ]
//! ```
//!
//! so a square complex matrix of size n embeds as a real matrix of size 2n,
//! and the embedding is a ring homomorphism. Dimensions in this crate never
//! exceed 2n + 2 for small n, so everything is dense and allocation-light.

use num_complex::Complex64;

use crate::error::HolonomyError;

/// Dense real matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Build from a row-major nested slice; rows must have equal length.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Standard matrix product. Panics when inner dimensions disagree.
    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = RealMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RealMatrix {
        let mut out = RealMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> RealMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += w;
        }
        out
    }

    pub fn sub(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest entrywise difference against another matrix of equal shape.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Maximum absolute column sum (operator 1-norm), used to pick the
    /// scaling exponent for the exponential.
    fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self.data[i * self.cols + j].abs();
            }
            best = best.max(s);
        }
        best
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series on the
    /// scaled matrix; absolute tolerance 1e-12 on the series tail.
    pub fn exp(&self) -> RealMatrix {
        assert!(self.is_square(), "exponential needs a square matrix");
        let norm = self.one_norm();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(0.5f64.powi(squarings as i32));

        let n = self.rows;
        let mut result = RealMatrix::identity(n);
        let mut term = RealMatrix::identity(n);
        for k in 1..=60 {
            term = term.mul(&scaled).scale(1.0 / k as f64);
            result = result.add(&term);
            if term.max_abs() < 1e-12 * 1e-4 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting; `None` for
    /// a (numerically) singular matrix.
    pub fn inverse(&self) -> Option<RealMatrix> {
        assert!(self.is_square(), "inverse needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RealMatrix::identity(n);
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a.get(r, col).abs() > a.get(pivot, col).abs() {
                    pivot = r;
                }
            }
            let p = a.get(pivot, col);
            if p.abs() < 1e-300 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }
}

/// Dense complex matrix, row-major; exists mostly to feed [`embed_complex`]
/// and the test oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "complex product dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

/// Embed a square complex matrix into the reals, doubling the size: each
/// entry x + iy becomes the block [[x, -y], [y, x]].
pub fn embed_complex(z: &ComplexMatrix) -> Result<RealMatrix, HolonomyError> {
    if z.rows() != z.cols() {
        return Err(HolonomyError::NonSquareMatrix {
            rows: z.rows(),
            cols: z.cols(),
        });
    }
    let n = z.rows();
    let mut out = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = z.get(i, j);
            out.set(2 * i, 2 * j, v.re);
            out.set(2 * i, 2 * j + 1, -v.im);
            out.set(2 * i + 1, 2 * j, v.im);
            out.set(2 * i + 1, 2 * j + 1, v.re);
        }
    }
    Ok(out)
}

/// Vector in C^n with the hermitian pairing <v,w> = sum conj(v_k) w_k.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    components: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(components: Vec<Complex64>) -> Self {
        assert!(!components.is_empty(), "complex vector must be nonempty");
        Self { components }
    }

    /// Construct from (re, im) pairs.
    pub fn from_pairs(pairs: &[[f64; 2]]) -> Self {
        Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    /// Hermitian pairing <self, other> = sum conj(self_k) other_k.
    pub fn hermitian(&self, other: &ComplexVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Real inner product of C^n viewed as R^(2n); equals Re<self, other>.
    pub fn real_dot(&self, other: &ComplexVector) -> f64 {
        self.hermitian(other).re
    }

    pub fn norm(&self) -> f64 {
        self.real_dot(self).sqrt()
    }

    /// Componentwise multiplication by i.
    pub fn times_i(&self) -> ComplexVector {
        ComplexVector::new(
            self.components
                .iter()
                .map(|c| Complex64::new(0.0, 1.0) * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> ComplexVector {
        ComplexVector::new(self.components.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), other.dim());
        ComplexVector::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), other.dim());
        ComplexVector::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// x*v + y*w for real scalars.
    pub fn linear_combination(x: f64, v: &ComplexVector, y: f64, w: &ComplexVector) -> Self {
        v.scale(x).add(&w.scale(y))
    }

    pub fn max_abs_diff(&self, other: &ComplexVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn embed_imaginary_unit_is_rotation_block() {
        let z = ComplexMatrix::from_rows(&[&[c(0.0, 1.0)]]);
        let e = embed_complex(&z).unwrap();
        let expected = RealMatrix::from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(e, expected);
    }

    #[test]
    fn embed_identity_is_identity() {
        let e = embed_complex(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e, RealMatrix::identity(6));
    }

    #[test]
    fn embed_rejects_non_square() {
        let z = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            embed_complex(&z),
            Err(HolonomyError::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn product_with_identity() {
        let mut rng = StdRng::seed_from_u64(1);
        let mut a = RealMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        assert_eq!(a.mul(&RealMatrix::identity(4)), a);
    }

    #[test]
    fn product_is_associative_to_roundoff() {
        let mut rng = StdRng::seed_from_u64(2);
        let mut mats = Vec::new();
        for _ in 0..3 {
            let mut m = RealMatrix::zeros(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    m.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            mats.push(m);
        }
        let left = mats[0].mul(&mats[1]).mul(&mats[2]);
        let right = mats[0].mul(&mats[1].mul(&mats[2]));
        assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn product_rejects_dimension_mismatch() {
        let a = RealMatrix::zeros(2, 3);
        let b = RealMatrix::zeros(2, 3);
        let _ = a.mul(&b);
    }

    // The su(1,1) basis realizations, written out independently of the group
    // module, satisfy [e1, e2] = -2 e3.
    #[test]
    fn basis_commutator_identity() {
        let e1 = RealMatrix::from_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        let e2 = RealMatrix::from_rows(&[
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
        ]);
        let e3 = RealMatrix::from_rows(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[-1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let comm = e1.mul(&e2).sub(&e2.mul(&e1));
        assert!(comm.max_abs_diff(&e3.scale(-2.0)) < 1e-15);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = RealMatrix::zeros(4, 4);
        assert!(z.exp().max_abs_diff(&RealMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn exp_of_e1_matches_hyperbolic_rotation() {
        // exp(x e1) at x = 1 has cosh 1 on the diagonal and sinh 1 in the
        // e1 pattern; values evaluated in high precision.
        let e1 = RealMatrix::from_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        let got = e1.exp();
        let ch = 1.5430806348152437;
        let sh = 1.1752011936438014;
        let expected = RealMatrix::from_rows(&[
            &[ch, 0.0, sh, 0.0],
            &[0.0, ch, 0.0, sh],
            &[sh, 0.0, ch, 0.0],
            &[0.0, sh, 0.0, ch],
        ]);
        assert!(got.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn exp_inverse_matches_gaussian_elimination_oracle() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let mut a = RealMatrix::zeros(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    a.set(i, j, rng.gen_range(-0.25..0.25));
                }
            }
            let ea = a.exp();
            let ena = a.scale(-1.0).exp();
            assert!(ea.mul(&ena).max_abs_diff(&RealMatrix::identity(4)) < 1e-10);
            let inv = ea.inverse().expect("exp(A) is invertible");
            assert!(inv.max_abs_diff(&ena) < 1e-10);
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = RealMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(m.inverse().is_none());
    }

    fn arb_complex_mat(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n * n).prop_map(move |vals| {
            let mut m = ComplexMatrix::zeros(n, n);
            for (idx, (re, im)) in vals.into_iter().enumerate() {
                m.set(idx / n, idx % n, Complex64::new(re, im));
            }
            m
        })
    }

    proptest! {
        // The embedding is a ring homomorphism: embed(AB) = embed(A) embed(B),
        // with the complex product as oracle.
        #[test]
        fn embedding_is_multiplicative(a in arb_complex_mat(2), b in arb_complex_mat(2)) {
            let lhs = embed_complex(&a.mul(&b)).unwrap();
            let rhs = embed_complex(&a).unwrap().mul(&embed_complex(&b).unwrap());
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        // Conjugate-transpose compatibility: embed(A*) = embed(A)^T.
        #[test]
        fn embedding_respects_adjoint(a in arb_complex_mat(3)) {
            let lhs = embed_complex(&a.adjoint()).unwrap();
            let rhs = embed_complex(&a).unwrap().transpose();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        }
    }
}

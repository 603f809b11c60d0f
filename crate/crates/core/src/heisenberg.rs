//! The complex Heisenberg group H^{2n+1} = R x C^n with product
//!
//! ```text
//!   (s, z)(t, z') = (s + t + 2 Im<conj(z), z'>, z + z')
//! ```
//!
//! a 2-step nilpotent group with center R. Elements act faithfully through
//! an affine representation into GL(2n+2, R); the Lie algebra carries the
//! orthonormal basis e1, ..., e_{2n+1} (e_{2k-1}, e_{2k} are the real and
//! imaginary directions of the k-th complex coordinate, e_{2n+1} is central)
//! which defines the left-invariant metric.

use num_complex::Complex64;

use crate::error::HolonomyError;
use crate::matrix::{ComplexVector, RealMatrix};

/// Group element (s, z) with s real and z in C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergElement {
    s: f64,
    z: ComplexVector,
}

impl HeisenbergElement {
    pub fn new(s: f64, z: ComplexVector) -> Self {
        Self { s, z }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            s: 0.0,
            z: ComplexVector::new(vec![Complex64::new(0.0, 0.0); n]),
        }
    }

    pub fn n(&self) -> usize {
        self.z.dim()
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn z(&self) -> &ComplexVector {
        &self.z
    }

    /// Group law. Panics when the complex dimensions disagree.
    pub fn mul(&self, other: &HeisenbergElement) -> HeisenbergElement {
        assert_eq!(self.n(), other.n(), "Heisenberg product dimension mismatch");
        let cocycle = 2.0 * self.z.hermitian(&other.z).im;
        HeisenbergElement {
            s: self.s + other.s + cocycle,
            z: self.z.add(&other.z),
        }
    }

    pub fn inverse(&self) -> HeisenbergElement {
        // 2 Im<conj(z), z> = 0, so (s, z)^-1 = (-s, -z).
        HeisenbergElement {
            s: -self.s,
            z: self.z.scale(-1.0),
        }
    }

    /// Affine representation into GL(2n+2, R): identity diagonal, first row
    /// (1, -2y1, 2x1, ..., -2yn, 2xn, s), last column (s, x1, y1, ..., xn,
    /// yn, 1).
    pub fn affine_rep(&self) -> RealMatrix {
        let n = self.n();
        let size = 2 * n + 2;
        let mut m = RealMatrix::identity(size);
        m.set(0, size - 1, self.s);
        for (k, c) in self.z.components().iter().enumerate() {
            m.set(0, 2 * k + 1, -2.0 * c.im);
            m.set(0, 2 * k + 2, 2.0 * c.re);
            m.set(2 * k + 1, size - 1, c.re);
            m.set(2 * k + 2, size - 1, c.im);
        }
        m
    }
}

/// Algebra element with coefficients on the orthonormal basis; the vector
/// part of the coefficients is read pairwise as complex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergAlgebra {
    n: usize,
    central: f64,
    vector: ComplexVector,
}

impl HeisenbergAlgebra {
    /// Build from the 2n+1 coefficients (c1, ..., c_{2n+1}).
    pub fn new(coefficients: &[f64]) -> Self {
        assert!(
            coefficients.len() >= 3 && coefficients.len() % 2 == 1,
            "need 2n+1 coefficients"
        );
        let n = (coefficients.len() - 1) / 2;
        let vector = ComplexVector::new(
            (0..n)
                .map(|k| Complex64::new(coefficients[2 * k], coefficients[2 * k + 1]))
                .collect(),
        );
        Self {
            n,
            central: coefficients[2 * n],
            vector,
        }
    }

    pub fn from_parts(vector: ComplexVector, central: f64) -> Self {
        Self {
            n: vector.dim(),
            central,
            vector,
        }
    }

    /// Basis vector e_index at complex dimension n (index runs 1..=2n+1).
    pub fn basis(n: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= 2 * n + 1);
        let mut coeff = vec![0.0; 2 * n + 1];
        coeff[index - 1] = 1.0;
        Self::new(&coeff)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn central(&self) -> f64 {
        self.central
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn coefficients(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.n + 1);
        for c in self.vector.components() {
            out.push(c.re);
            out.push(c.im);
        }
        out.push(self.central);
        out
    }

    /// Realization inside the affine representation's Lie algebra.
    pub fn realization(&self) -> RealMatrix {
        let n = self.n;
        let size = 2 * n + 2;
        let mut m = RealMatrix::zeros(size, size);
        m.set(0, size - 1, self.central);
        for (k, c) in self.vector.components().iter().enumerate() {
            m.set(0, 2 * k + 1, -2.0 * c.im);
            m.set(0, 2 * k + 2, 2.0 * c.re);
            m.set(2 * k + 1, size - 1, c.re);
            m.set(2 * k + 2, size - 1, c.im);
        }
        m
    }
}

/// Lie bracket: [a, b] = 4 Im<conj(a_vec), b_vec> e_{2n+1}; the vector part
/// vanishes (2-step nilpotency) and the center brackets to zero.
pub fn heis_bracket(a: &HeisenbergAlgebra, b: &HeisenbergAlgebra) -> HeisenbergAlgebra {
    assert_eq!(a.n(), b.n(), "Heisenberg bracket dimension mismatch");
    let central = 4.0 * a.vector.hermitian(&b.vector).im;
    HeisenbergAlgebra::from_parts(
        ComplexVector::new(vec![Complex64::new(0.0, 0.0); a.n()]),
        central,
    )
}

/// Tangent vector at a group element: velocity (ds, dz).
#[derive(Debug, Clone)]
pub struct HeisenbergTangent {
    pub base: HeisenbergElement,
    pub ds: f64,
    pub dz: ComplexVector,
}

impl HeisenbergTangent {
    pub fn new(base: HeisenbergElement, ds: f64, dz: ComplexVector) -> Self {
        assert_eq!(base.n(), dz.dim(), "tangent dimension mismatch");
        Self { base, ds, dz }
    }

    /// Push an identity tangent to `g` by left translation: the central
    /// coordinate picks up the cocycle term 2 Im<conj(g_z), dz>.
    pub fn left_translated(g: &HeisenbergElement, ds: f64, dz: ComplexVector) -> Self {
        let cocycle = 2.0 * g.z().hermitian(&dz).im;
        Self {
            base: g.clone(),
            ds: ds + cocycle,
            dz,
        }
    }

    /// Velocity translated back to the identity.
    fn at_identity(&self) -> (f64, ComplexVector) {
        let central = self.ds - 2.0 * self.base.z().hermitian(&self.dz).im;
        (central, self.dz.clone())
    }
}

/// Left-invariant inner product induced by the orthonormal basis.
pub fn left_invariant_inner(
    x: &HeisenbergTangent,
    y: &HeisenbergTangent,
) -> Result<f64, HolonomyError> {
    if x.base.n() != y.base.n() {
        return Err(HolonomyError::DimensionMismatch {
            expected: x.base.n(),
            got: y.base.n(),
        });
    }
    let gap = (x.base.s() - y.base.s())
        .abs()
        .max(x.base.z().max_abs_diff(y.base.z()));
    if gap > 1e-9 {
        return Err(HolonomyError::TangentBaseMismatch);
    }
    let (xs, xz) = x.at_identity();
    let (ys, yz) = y.at_identity();
    Ok(xs * ys + xz.real_dot(&yz))
}

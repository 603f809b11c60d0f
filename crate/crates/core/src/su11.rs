//! The group SU(1,1) in real quaternion-style coordinates.
//!
//! An element is stored as (w1, w2, w3, w4) subject to the pseudo-sphere
//! constraint w1^2 + w2^2 - w3^2 - w4^2 = 1 and realized as the 4x4 real
//! matrix
//!
//! ```text
//!   [  w1   w2   w3   w4 ]
//!   [ -w2   w1  -w4   w3 ]
//!   [  w3  -w4   w1  -w2 ]
//!   [  w4   w3   w2   w1 ]
//! ```
//!
//! The coordinate product below is exactly the 4x4 matrix product of these
//! realizations (the basis units satisfy i^2 = -1, j^2 = k^2 = +1, so this
//! is split-quaternion arithmetic). The left-invariant metric declares the
//! algebra basis e1, e2, e3 orthonormal, where e1, e2 span the horizontal
//! directions and e3 generates the circle fiber; the normalization is pinned
//! by [e1, e2] = -2 e3.

use crate::error::HolonomyError;
use crate::matrix::RealMatrix;

/// Tolerance on the pseudo-sphere constraint for validated constructors.
pub const CONSTRAINT_TOL: f64 = 1e-9;

/// Renormalize after this many composed products in a chain.
const RENORMALIZE_EVERY: usize = 64;

/// Split-quaternion coordinate product; agrees entrywise with the product of
/// the 4x4 realizations for arbitrary coordinate 4-tuples.
#[inline]
pub(crate) fn coord_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] + a[2] * b[2] + a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Realization of an arbitrary coordinate 4-tuple as a 4x4 real matrix.
/// Linear in the coordinates, multiplicative under `coord_mul`.
pub(crate) fn coord_realization(c: [f64; 4]) -> RealMatrix {
    RealMatrix::from_rows(&[
        &[c[0], c[1], c[2], c[3]],
        &[-c[1], c[0], -c[3], c[2]],
        &[c[2], -c[3], c[0], -c[1]],
        &[c[3], c[2], c[1], c[0]],
    ])
}

/// Group element of SU(1,1), i.e. a point of the pseudo-sphere S^{2,1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Element {
    w: [f64; 4],
}

impl Su11Element {
    pub fn identity() -> Self {
        Self {
            w: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Validated constructor; rejects coordinates off the pseudo-sphere.
    pub fn new(w1: f64, w2: f64, w3: f64, w4: f64) -> Result<Self, HolonomyError> {
        let el = Self {
            w: [w1, w2, w3, w4],
        };
        let residual = el.constraint_residual();
        if !residual.is_finite() || residual > CONSTRAINT_TOL {
            return Err(HolonomyError::ConstraintViolation { residual });
        }
        Ok(el)
    }

    /// Circle-fiber element with angle `z`; realization has cos z, -sin z in
    /// the first row.
    pub fn circle(z: f64) -> Self {
        Self {
            w: [z.cos(), -z.sin(), 0.0, 0.0],
        }
    }

    /// Exponential of the horizontal algebra vector x (cos y e1 + sin y e2):
    /// coordinates (cosh x, 0, sinh x cos y, sinh x sin y).
    pub fn exp_horizontal(x: f64, y: f64) -> Self {
        Self {
            w: [x.cosh(), 0.0, x.sinh() * y.cos(), x.sinh() * y.sin()],
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        self.w
    }

    /// |w1^2 + w2^2 - w3^2 - w4^2 - 1|.
    pub fn constraint_residual(&self) -> f64 {
        (self.w[0] * self.w[0] + self.w[1] * self.w[1]
            - self.w[2] * self.w[2]
            - self.w[3] * self.w[3]
            - 1.0)
            .abs()
    }

    /// Group product; agrees with the 4x4 matrix product of realizations.
    pub fn mul(&self, other: &Su11Element) -> Su11Element {
        Su11Element {
            w: coord_mul(self.w, other.w),
        }
    }

    pub fn inverse(&self) -> Su11Element {
        Su11Element {
            w: [self.w[0], -self.w[1], -self.w[2], -self.w[3]],
        }
    }

    /// The i-conjugate: w2 negated.
    pub fn i_conjugate(&self) -> Su11Element {
        Su11Element {
            w: [self.w[0], -self.w[1], self.w[2], self.w[3]],
        }
    }

    /// Rescale back onto the pseudo-sphere; valid while the quadratic form
    /// stays positive, which holds in a neighborhood of the group.
    pub fn normalized(&self) -> Su11Element {
        let q = self.w[0] * self.w[0] + self.w[1] * self.w[1]
            - self.w[2] * self.w[2]
            - self.w[3] * self.w[3];
        let s = q.abs().sqrt();
        Su11Element {
            w: [self.w[0] / s, self.w[1] / s, self.w[2] / s, self.w[3] / s],
        }
    }

    /// 4x4 real matrix realization.
    pub fn realization(&self) -> RealMatrix {
        coord_realization(self.w)
    }
}

/// Fold a chain of group products, renormalizing every 64 factors to keep
/// constraint drift bounded over long chains.
pub fn product_chain<I: IntoIterator<Item = Su11Element>>(factors: I) -> Su11Element {
    let mut acc = Su11Element::identity();
    for (i, f) in factors.into_iter().enumerate() {
        acc = acc.mul(&f);
        if (i + 1) % RENORMALIZE_EVERY == 0 {
            acc = acc.normalized();
        }
    }
    acc
}

/// Algebra element with coefficients (c1, c2, c3) on the orthonormal basis
/// e1, e2, e3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Algebra {
    c: [f64; 3],
}

impl Su11Algebra {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c: [c1, c2, c3] }
    }

    pub fn e(index: usize) -> Self {
        let mut c = [0.0; 3];
        c[index - 1] = 1.0;
        Self { c }
    }

    pub fn coefficients(&self) -> [f64; 3] {
        self.c
    }

    /// Coordinate 4-tuple of the realization: e1, e2 sit in the j, k slots
    /// and e3 in the i slot.
    fn quat_coords(&self) -> [f64; 4] {
        [0.0, self.c[2], self.c[0], self.c[1]]
    }

    pub fn realization(&self) -> RealMatrix {
        coord_realization(self.quat_coords())
    }

    pub fn add(&self, other: &Su11Algebra) -> Su11Algebra {
        Su11Algebra::new(
            self.c[0] + other.c[0],
            self.c[1] + other.c[1],
            self.c[2] + other.c[2],
        )
    }

    pub fn scale(&self, s: f64) -> Su11Algebra {
        Su11Algebra::new(self.c[0] * s, self.c[1] * s, self.c[2] * s)
    }
}

/// Lie bracket [a, b] = ab - ba, expanded on the basis. The coordinate
/// product keeps the expansion exact; a nonzero residual on the scalar slot
/// would indicate an internal bug and panics.
pub fn su11_bracket(a: &Su11Algebra, b: &Su11Algebra) -> Su11Algebra {
    let qa = a.quat_coords();
    let qb = b.quat_coords();
    let ab = coord_mul(qa, qb);
    let ba = coord_mul(qb, qa);
    let comm = [ab[0] - ba[0], ab[1] - ba[1], ab[2] - ba[2], ab[3] - ba[3]];
    assert!(
        comm[0].abs() < 1e-12,
        "bracket left the algebra: scalar residual {}",
        comm[0]
    );
    Su11Algebra::new(comm[2], comm[3], comm[1])
}

/// Tangent vector at a group element, stored as the coordinate velocity.
#[derive(Debug, Clone, Copy)]
pub struct Su11Tangent {
    pub base: Su11Element,
    pub velocity: [f64; 4],
}

impl Su11Tangent {
    pub fn new(base: Su11Element, velocity: [f64; 4]) -> Self {
        Self { base, velocity }
    }

    /// Push an identity tangent to `g` by left translation.
    pub fn left_translated(g: &Su11Element, identity_velocity: [f64; 4]) -> Self {
        Self {
            base: *g,
            velocity: coord_mul(g.coords(), identity_velocity),
        }
    }
}

/// Left-invariant inner product: translate both velocities back to the
/// identity with the base inverse and take the coefficient dot product on
/// the orthonormal basis e1, e2, e3 (scalar slot discarded).
pub fn left_invariant_inner(x: &Su11Tangent, y: &Su11Tangent) -> Result<f64, HolonomyError> {
    let bx = x.base.coords();
    let by = y.base.coords();
    let gap = bx
        .iter()
        .zip(&by)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if gap > 1e-9 {
        return Err(HolonomyError::TangentBaseMismatch);
    }
    let inv = x.base.inverse().coords();
    let u = coord_mul(inv, x.velocity);
    let v = coord_mul(inv, y.velocity);
    Ok(u[1] * v[1] + u[2] * v[2] + u[3] * v[3])
}

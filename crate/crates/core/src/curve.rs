//! Closed curves in 2-D chart coordinates, sampling, arc length, and signed
//! enclosed-area quadrature.
//!
//! The same curve type serves two charts. Over the complex hyperbolic base
//! the coordinates (x, y) are the parameters of the chart
//! (x, y) -> (cosh 2x, sinh 2x cos y, sinh 2x sin y) into the hyperboloid,
//! which requires x >= 0 and carries the induced metric E = 4, F = 0,
//! G = sinh^2(2x) with area element 2 sinh(2x) dx dy. Over the Heisenberg
//! base they are plane coordinates with respect to an orthonormal spanning
//! pair, i.e. the Euclidean metric.
//!
//! Positive orientation is counterclockwise in the (x, y) chart; signed
//! areas flip under orientation reversal, lengths do not.

use crate::error::HolonomyError;

/// Traversal direction of a closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// Which metric a length computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Euclidean,
    HyperbolicChart,
}

/// Signed enclosed area and curve length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMetrics {
    pub area: f64,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Rectangle { p: f64, a: f64, q: f64, b: f64 },
    Circle { center: [f64; 2], radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    Sampled { points: Vec<[f64; 2]> },
}

/// A closed curve in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartCurve {
    kind: Kind,
    orientation: Orientation,
}

/// One sample of a curve: parameter value and chart position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    c[0] >= a[0].min(b[0])
        && c[0] <= a[0].max(b[0])
        && c[1] >= a[1].min(b[1])
        && c[1] <= a[1].max(b[1])
}

/// Closed-segment intersection test (proper crossings and collinear touch).
fn segments_intersect(p1: [f64; 2], p2: [f64; 2], p3: [f64; 2], p4: [f64; 2]) -> bool {
    let d1 = orient2d(p3, p4, p1);
    let d2 = orient2d(p3, p4, p2);
    let d3 = orient2d(p1, p2, p3);
    let d4 = orient2d(p1, p2, p4);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p3, p4, p1))
        || (d2 == 0.0 && on_segment(p3, p4, p2))
        || (d3 == 0.0 && on_segment(p1, p2, p3))
        || (d4 == 0.0 && on_segment(p1, p2, p4))
}

fn check_simple_polygon(vertices: &[[f64; 2]]) -> Result<(), HolonomyError> {
    let k = vertices.len();
    for i in 0..k {
        let (a, b) = (vertices[i], vertices[(i + 1) % k]);
        if (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12 {
            return Err(HolonomyError::InvalidCurve {
                reason: format!("zero-length edge at vertex {i}"),
            });
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            // Adjacent edges share a vertex; skip them.
            if j == i + 1 || (i == 0 && j == k - 1) {
                continue;
            }
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            let (c, d) = (vertices[j], vertices[(j + 1) % k]);
            if segments_intersect(a, b, c, d) {
                return Err(HolonomyError::InvalidCurve {
                    reason: format!("edges {i} and {j} intersect; polygon is not simple"),
                });
            }
        }
    }
    Ok(())
}

impl ChartCurve {
    /// Axis-aligned rectangle [p, p+a] x [q, q+b], traversed from (p, q)
    /// through (p+a, q), (p+a, q+b), (p, q+b) when positively oriented.
    /// Degenerate sides (a = 0 or b = 0) are allowed.
    pub fn rectangle(
        p: f64,
        a: f64,
        q: f64,
        b: f64,
        orientation: Orientation,
    ) -> Result<Self, HolonomyError> {
        if !(p.is_finite() && a.is_finite() && q.is_finite() && b.is_finite()) || a < 0.0 || b < 0.0
        {
            return Err(HolonomyError::InvalidCurve {
                reason: "rectangle needs finite p, q and nonnegative a, b".into(),
            });
        }
        Ok(Self {
            kind: Kind::Rectangle { p, a, q, b },
            orientation,
        })
    }

    pub fn circle(
        center: [f64; 2],
        radius: f64,
        orientation: Orientation,
    ) -> Result<Self, HolonomyError> {
        if !(center[0].is_finite() && center[1].is_finite() && radius.is_finite()) || radius < 0.0 {
            return Err(HolonomyError::InvalidCurve {
                reason: "circle needs a finite center and nonnegative radius".into(),
            });
        }
        Ok(Self {
            kind: Kind::Circle { center, radius },
            orientation,
        })
    }

    /// Simple polygon through the given vertices (closure implicit; a
    /// duplicated final vertex is dropped). Self-intersecting input is
    /// rejected by an exhaustive segment-pair test.
    pub fn polygon(
        mut vertices: Vec<[f64; 2]>,
        orientation: Orientation,
    ) -> Result<Self, HolonomyError> {
        if vertices.len() >= 2 {
            let (first, last) = (vertices[0], *vertices.last().unwrap());
            if (first[0] - last[0]).abs() < 1e-12 && (first[1] - last[1]).abs() < 1e-12 {
                vertices.pop();
            }
        }
        if vertices.len() < 3 {
            return Err(HolonomyError::InvalidCurve {
                reason: "polygon needs at least 3 distinct vertices".into(),
            });
        }
        check_simple_polygon(&vertices)?;
        Ok(Self {
            kind: Kind::Polygon { vertices },
            orientation,
        })
    }

    /// Closed sampled curve: the point list must return to its start within
    /// 1e-12. Simplicity is not checked for sampled data.
    pub fn sampled(points: Vec<[f64; 2]>, orientation: Orientation) -> Result<Self, HolonomyError> {
        if points.len() < 3 {
            return Err(HolonomyError::InvalidCurve {
                reason: "sampled curve needs at least 3 points".into(),
            });
        }
        let (first, last) = (points[0], *points.last().unwrap());
        let gap = (first[0] - last[0]).hypot(first[1] - last[1]);
        if gap > 1e-12 {
            return Err(HolonomyError::NonClosedCurve { gap });
        }
        Ok(Self {
            kind: Kind::Sampled { points },
            orientation,
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Same curve traversed the other way.
    pub fn reversed(&self) -> Self {
        Self {
            kind: self.kind.clone(),
            orientation: match self.orientation {
                Orientation::Positive => Orientation::Negative,
                Orientation::Negative => Orientation::Positive,
            },
        }
    }

    /// Minimum chart x over the curve (exact: all kinds attain it at
    /// vertices or circle extremes).
    pub fn min_x(&self) -> f64 {
        match &self.kind {
            Kind::Rectangle { p, .. } => *p,
            Kind::Circle { center, radius } => center[0] - radius,
            Kind::Polygon { vertices } => {
                vertices.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min)
            }
            Kind::Sampled { points } => points.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min),
        }
    }

    /// Smooth segments of the parametrization over [0, 1], respecting
    /// orientation; integration and quadrature split at segment boundaries.
    pub(crate) fn segments(&self) -> Vec<Segment> {
        let mut segs = match &self.kind {
            Kind::Rectangle { p, a, q, b } => {
                let corners = [[*p, *q], [*p + *a, *q], [*p + *a, *q + *b], [*p, *q + *b]];
                (0..4)
                    .map(|i| Segment {
                        t0: i as f64 / 4.0,
                        t1: (i + 1) as f64 / 4.0,
                        geom: SegGeom::Line {
                            p0: corners[i],
                            p1: corners[(i + 1) % 4],
                        },
                    })
                    .collect()
            }
            Kind::Circle { center, radius } => vec![Segment {
                t0: 0.0,
                t1: 1.0,
                geom: SegGeom::Arc {
                    center: *center,
                    radius: *radius,
                    a0: 0.0,
                    a1: std::f64::consts::TAU,
                },
            }],
            Kind::Polygon { vertices } => {
                let k = vertices.len();
                (0..k)
                    .map(|i| Segment {
                        t0: i as f64 / k as f64,
                        t1: (i + 1) as f64 / k as f64,
                        geom: SegGeom::Line {
                            p0: vertices[i],
                            p1: vertices[(i + 1) % k],
                        },
                    })
                    .collect()
            }
            Kind::Sampled { points } => {
                let m = points.len() - 1; // intervals; points[m] == points[0]
                let h = 1.0 / m as f64;
                // Periodic central differences at the nodes.
                let node_vel: Vec<[f64; 2]> = (0..m)
                    .map(|j| {
                        let prev = points[(j + m - 1) % m];
                        let next = points[(j + 1) % m];
                        [
                            (next[0] - prev[0]) / (2.0 * h),
                            (next[1] - prev[1]) / (2.0 * h),
                        ]
                    })
                    .collect();
                (0..m)
                    .map(|j| Segment {
                        t0: j as f64 * h,
                        t1: (j + 1) as f64 * h,
                        geom: SegGeom::Blend {
                            p0: points[j],
                            p1: points[j + 1],
                            v0: node_vel[j],
                            v1: node_vel[(j + 1) % m],
                        },
                    })
                    .collect()
            }
        };
        if self.orientation == Orientation::Negative {
            segs = segs
                .into_iter()
                .rev()
                .map(|s| Segment {
                    t0: 1.0 - s.t1,
                    t1: 1.0 - s.t0,
                    geom: match s.geom {
                        SegGeom::Line { p0, p1 } => SegGeom::Line { p0: p1, p1: p0 },
                        SegGeom::Arc {
                            center,
                            radius,
                            a0,
                            a1,
                        } => SegGeom::Arc {
                            center,
                            radius,
                            a0: a1,
                            a1: a0,
                        },
                        SegGeom::Blend { p0, p1, v0, v1 } => SegGeom::Blend {
                            p0: p1,
                            p1: p0,
                            v0: [-v1[0], -v1[1]],
                            v1: [-v0[0], -v0[1]],
                        },
                    },
                })
                .collect();
        }
        segs
    }

    /// N+1 (or slightly more for piecewise kinds, which round the count up
    /// per edge so vertices land exactly on sample points) ordered samples,
    /// endpoints equal.
    pub fn sample(&self, n: usize) -> Result<Vec<CurveSample>, HolonomyError> {
        if n == 0 {
            return Err(HolonomyError::InvalidCurve {
                reason: "sample count must be positive".into(),
            });
        }
        // A sampled curve passes through unchanged at its native resolution.
        if let Kind::Sampled { points } = &self.kind {
            if n + 1 == points.len() && self.orientation == Orientation::Positive {
                let h = 1.0 / n as f64;
                return Ok(points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| CurveSample {
                        t: i as f64 * h,
                        x: p[0],
                        y: p[1],
                    })
                    .collect());
            }
        }
        let segs = self.segments();
        let mut out = Vec::with_capacity(n + 2);
        for (si, seg) in segs.iter().enumerate() {
            let m = seg.step_count(n);
            let start = if si == 0 { 0 } else { 1 };
            for i in start..=m {
                let t = seg.t0 + (seg.t1 - seg.t0) * i as f64 / m as f64;
                let p = seg.point(t);
                out.push(CurveSample {
                    t,
                    x: p[0],
                    y: p[1],
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub(crate) enum SegGeom {
    Line {
        p0: [f64; 2],
        p1: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        a0: f64,
        a1: f64,
    },
    Blend {
        p0: [f64; 2],
        p1: [f64; 2],
        v0: [f64; 2],
        v1: [f64; 2],
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Segment {
    pub t0: f64,
    pub t1: f64,
    geom: SegGeom,
}

impl Segment {
    /// Steps this segment receives out of a total budget of n over [0, 1].
    pub fn step_count(&self, n: usize) -> usize {
        ((self.t1 - self.t0) * n as f64 - 1e-9).ceil().max(1.0) as usize
    }

    pub fn point(&self, t: f64) -> [f64; 2] {
        let s = (t - self.t0) / (self.t1 - self.t0);
        match &self.geom {
            SegGeom::Line { p0, p1 } => [p0[0] + s * (p1[0] - p0[0]), p0[1] + s * (p1[1] - p0[1])],
            SegGeom::Arc {
                center,
                radius,
                a0,
                a1,
            } => {
                let ang = a0 + s * (a1 - a0);
                [
                    center[0] + radius * ang.cos(),
                    center[1] + radius * ang.sin(),
                ]
            }
            SegGeom::Blend { p0, p1, .. } => {
                [p0[0] + s * (p1[0] - p0[0]), p0[1] + s * (p1[1] - p0[1])]
            }
        }
    }

    pub fn velocity(&self, t: f64) -> [f64; 2] {
        let dt = self.t1 - self.t0;
        let s = (t - self.t0) / dt;
        match &self.geom {
            SegGeom::Line { p0, p1 } => [(p1[0] - p0[0]) / dt, (p1[1] - p0[1]) / dt],
            SegGeom::Arc {
                center: _,
                radius,
                a0,
                a1,
            } => {
                let ang = a0 + s * (a1 - a0);
                let rate = (a1 - a0) / dt;
                [-radius * ang.sin() * rate, radius * ang.cos() * rate]
            }
            SegGeom::Blend { v0, v1, .. } => {
                [v0[0] + s * (v1[0] - v0[0]), v0[1] + s * (v1[1] - v0[1])]
            }
        }
    }
}

const GAUSS_OFFSET: f64 = 0.28867513459481287; // 1 / (2 sqrt(3))

/// Composite two-point Gauss-Legendre quadrature of f(point, velocity) dt
/// over the curve, split at segment boundaries, about n steps total.
fn gauss_line_integral<F: Fn([f64; 2], [f64; 2]) -> f64>(segs: &[Segment], n: usize, f: F) -> f64 {
    let mut total = 0.0;
    for seg in segs {
        let m = seg.step_count(n);
        let h = (seg.t1 - seg.t0) / m as f64;
        let mut acc = 0.0;
        for i in 0..m {
            let mid = seg.t0 + (i as f64 + 0.5) * h;
            for t in [mid - GAUSS_OFFSET * h, mid + GAUSS_OFFSET * h] {
                acc += f(seg.point(t), seg.velocity(t));
            }
        }
        total += acc * h / 2.0;
    }
    total
}

/// Composite trapezoid quadrature of f(point, velocity) dt; exact for
/// polygons since the integrand is linear along each edge.
fn trapezoid_line_integral<F: Fn([f64; 2], [f64; 2]) -> f64>(
    segs: &[Segment],
    n: usize,
    f: F,
) -> f64 {
    let mut total = 0.0;
    for seg in segs {
        let m = seg.step_count(n);
        let h = (seg.t1 - seg.t0) / m as f64;
        let mut acc = 0.0;
        for i in 0..=m {
            let t = seg.t0 + i as f64 * h;
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            acc += w * f(seg.point(t), seg.velocity(t));
        }
        total += acc * h;
    }
    total
}

fn require_nonnegative_x(curve: &ChartCurve) -> Result<(), HolonomyError> {
    let min_x = curve.min_x();
    if min_x < 0.0 {
        return Err(HolonomyError::NegativeChartX { min_x });
    }
    Ok(())
}

/// Signed Euclidean area (1/2) closed-integral of (x dy - y dx); exact for
/// polygons up to round-off, positive for counterclockwise curves.
pub fn euclidean_area(curve: &ChartCurve, n: usize) -> Result<f64, HolonomyError> {
    let segs = curve.segments();
    Ok(trapezoid_line_integral(&segs, n, |p, v| {
        0.5 * (p[0] * v[1] - p[1] * v[0])
    }))
}

/// Signed hyperbolic-chart area via the Green line integral of
/// 2 sinh^2(x) dy, whose exterior derivative is the area element
/// 2 sinh(2x) dx dy; the 1-form vanishes at x = 0 so curves touching the
/// chart edge remain valid.
pub fn hyperbolic_area(curve: &ChartCurve, n: usize) -> Result<f64, HolonomyError> {
    require_nonnegative_x(curve)?;
    let segs = curve.segments();
    Ok(gauss_line_integral(&segs, n, |p, v| {
        let sh = p[0].sinh();
        2.0 * sh * sh * v[1]
    }))
}

/// Curve length: polyline sum of chord lengths for the Euclidean metric,
/// quadrature of the chart speed sqrt(4 x'^2 + sinh^2(2x) y'^2) for the
/// hyperbolic chart.
pub fn curve_length(
    curve: &ChartCurve,
    n: usize,
    metric: MetricKind,
) -> Result<f64, HolonomyError> {
    match metric {
        MetricKind::Euclidean => {
            let samples = curve.sample(n)?;
            Ok(samples
                .windows(2)
                .map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y))
                .sum())
        }
        MetricKind::HyperbolicChart => {
            require_nonnegative_x(curve)?;
            let segs = curve.segments();
            Ok(gauss_line_integral(&segs, n, |p, v| {
                let g = (2.0 * p[0]).sinh();
                (4.0 * v[0] * v[0] + g * g * v[1] * v[1]).sqrt()
            }))
        }
    }
}

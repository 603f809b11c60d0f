//! Horizontal-lift integration, holonomy extraction, holonomy-area
//! prediction, and the flat quotient models over a closed base curve.
//!
//! Two integration routes exist for every bundle. The closed-form route
//! integrates the solved fiber equations
//!
//! ```text
//!   z'(t) = 2 lambda sinh^2(x) y'(t)                (complex hyperbolic)
//!   z'(t) = 2 (x y' - x' y) Im<v,w>                 (Heisenberg)
//! ```
//!
//! with classical fixed-step RK4, split at curve corners. The generic route
//! never uses the solved equations: at each stage it measures the vertical
//! component of the candidate lift velocity with the left-invariant metric
//! and subtracts the integrated fiber correction. Both routes must agree;
//! the report flags disagreement instead of averaging.

use crate::curve::{
    curve_length, euclidean_area, hyperbolic_area, ChartCurve, CurveMetrics, MetricKind, Segment,
};
use crate::error::HolonomyError;
use crate::heisenberg::{self, HeisenbergElement, HeisenbergTangent};
use crate::matrix::ComplexVector;
use crate::plane::{
    project_su11, BundleDescriptor, BundleKind, Ch1Point, PlaneClass, SurfacePlane,
};
use crate::su11::{self, coord_mul, Su11Element, Su11Tangent};

/// Which lift integration backs a holonomy measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMethod {
    ClosedForm,
    Generic,
    Both,
}

impl LiftMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            LiftMethod::ClosedForm => "closed_form",
            LiftMethod::Generic => "generic",
            LiftMethod::Both => "both",
        }
    }
}

/// Lift points in the total space.
#[derive(Debug, Clone)]
pub enum LiftPoints {
    Su11(Vec<Su11Element>),
    Heisenberg(Vec<HeisenbergElement>),
}

/// Discretized horizontal lift: base samples, fiber coordinate, lift points,
/// and the total fiber displacement z(1) - z(0), together with the residual
/// diagnostics every trace must satisfy (projection to 1e-8, horizontality
/// to 1e-6).
#[derive(Debug, Clone)]
pub struct LiftTrace {
    pub params: Vec<f64>,
    pub base: Vec<[f64; 2]>,
    pub fiber: Vec<f64>,
    pub points: LiftPoints,
    pub displacement: f64,
    pub max_projection_residual: f64,
    pub max_horizontality_residual: f64,
}

/// Measured and predicted holonomy for one curve.
#[derive(Debug, Clone)]
pub struct HolonomyReport {
    pub measured: f64,
    /// Fiber angle reduced to (-pi, pi]; circle bundles only.
    pub measured_mod: Option<f64>,
    pub predicted: f64,
    pub metrics: CurveMetrics,
    /// |measured - predicted|; reported, never absorbed.
    pub residual: f64,
    pub classification: PlaneClass,
    /// Holonomy per unit signed area (1/2 or 0, or e = 4 Im<v,w>).
    pub coefficient: f64,
    pub steps: usize,
    pub method: LiftMethod,
    /// |closed-form - generic| when both routes ran.
    pub method_disagreement: Option<f64>,
    /// False when the two routes disagree by more than 1e-4.
    pub consistent: bool,
}

/// Flat quotient of the pullback bundle over a closed curve.
#[derive(Debug, Clone, PartialEq)]
pub enum FlatModel {
    /// Torus generated by the lattice {(2 pi, 0), (A/2, L/2)}.
    Torus { generators: [[f64; 2]; 2] },
    /// Cylinder generated by the translation (e A, L).
    Cylinder { translation: [f64; 2] },
}

impl FlatModel {
    pub fn torus(area: f64, length: f64) -> Self {
        FlatModel::Torus {
            generators: [[std::f64::consts::TAU, 0.0], [area / 2.0, length / 2.0]],
        }
    }

    pub fn cylinder(euler_coefficient: f64, area: f64, length: f64) -> Self {
        FlatModel::Cylinder {
            translation: [euler_coefficient * area, length],
        }
    }
}

/// Reduce a fiber angle to the interval (-pi, pi].
pub fn reduce_angle(z: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut r = z % tau;
    if r > std::f64::consts::PI {
        r -= tau;
    } else if r <= -std::f64::consts::PI {
        r += tau;
    }
    r
}

/// One accepted integration node.
struct Node {
    t: f64,
    z: f64,
    seg: usize,
}

/// Classical RK4 over the curve's smooth segments; the right side is
/// evaluated with the segment's analytic point and velocity.
fn rk4_over_segments<F>(segs: &[Segment], n: usize, mut rhs: F) -> Vec<Node>
where
    F: FnMut(f64, f64, &Segment) -> f64,
{
    let mut nodes = Vec::with_capacity(n + segs.len() + 1);
    let mut z = 0.0;
    nodes.push(Node {
        t: segs[0].t0,
        z,
        seg: 0,
    });
    for (si, seg) in segs.iter().enumerate() {
        let m = seg.step_count(n);
        let h = (seg.t1 - seg.t0) / m as f64;
        for i in 0..m {
            let t = seg.t0 + i as f64 * h;
            let k1 = rhs(t, z, seg);
            let k2 = rhs(t + 0.5 * h, z + 0.5 * h * k1, seg);
            let k3 = rhs(t + 0.5 * h, z + 0.5 * h * k2, seg);
            let k4 = rhs(t + h, z + h * k3, seg);
            z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            nodes.push(Node {
                t: t + h,
                z,
                seg: si,
            });
        }
    }
    nodes
}

/// Coordinate velocity of the chart lift t -> exp_horizontal(x(t), y(t)).
fn chart_lift_velocity(p: [f64; 2], v: [f64; 2]) -> [f64; 4] {
    let (x, y) = (p[0], p[1]);
    let (xd, yd) = (v[0], v[1]);
    [
        xd * x.sinh(),
        0.0,
        xd * x.cosh() * y.cos() - yd * x.sinh() * y.sin(),
        xd * x.cosh() * y.sin() + yd * x.sinh() * y.cos(),
    ]
}

/// e3 in coordinate form (the fiber direction of the circle bundle).
const E3_COORDS: [f64; 4] = [0.0, 1.0, 0.0, 0.0];

/// Assemble the trace for a lift into SU(1,1) (or its flat product
/// counterpart when lambda = 0, where the connection form is zero and the
/// horizontality residual is |z'| itself).
fn assemble_ch1_trace(
    segs: &[Segment],
    nodes: Vec<Node>,
    lambda: f64,
) -> Result<LiftTrace, HolonomyError> {
    let count = nodes.len();
    let mut params = Vec::with_capacity(count);
    let mut base = Vec::with_capacity(count);
    let mut fiber = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count);
    let mut max_proj = 0.0f64;
    let mut max_horiz = 0.0f64;

    for node in &nodes {
        let seg = &segs[node.seg];
        let p = seg.point(node.t);
        let v = seg.velocity(node.t);
        let gamma = Su11Element::exp_horizontal(p[0], p[1]);
        let omega = Su11Element::circle(node.z);
        let eta = gamma.mul(&omega);

        let expected = Ch1Point {
            x: (2.0 * p[0]).cosh(),
            y: (2.0 * p[0]).sinh() * p[1].cos(),
            z: (2.0 * p[0]).sinh() * p[1].sin(),
        };
        max_proj = max_proj.max(project_su11(&eta).max_abs_diff(&expected));

        let sh = p[0].sinh();
        let z_rate = 2.0 * lambda * sh * sh * v[1];
        let horiz = if lambda == 0.0 {
            // Product connection: the fiber correction itself must vanish.
            z_rate.abs()
        } else {
            // eta' = gamma' omega + gamma omega' z', measured against the
            // fiber direction with the left-invariant metric.
            let gamma_vel = chart_lift_velocity(p, v);
            let omega_vel = [-node.z.sin() * z_rate, -node.z.cos() * z_rate, 0.0, 0.0];
            let mut eta_vel = coord_mul(gamma_vel, omega.coords());
            let second = coord_mul(gamma.coords(), omega_vel);
            for (a, b) in eta_vel.iter_mut().zip(second) {
                *a += b;
            }
            let vertical = coord_mul(eta.coords(), E3_COORDS);
            su11::left_invariant_inner(
                &Su11Tangent::new(eta, eta_vel),
                &Su11Tangent::new(eta, vertical),
            )
            .expect("tangents share a base by construction")
            .abs()
        };
        max_horiz = max_horiz.max(horiz);

        params.push(node.t);
        base.push(p);
        fiber.push(node.z);
        points.push(eta);
    }

    let displacement = fiber.last().unwrap() - fiber.first().unwrap();
    if !displacement.is_finite() || !max_proj.is_finite() || !max_horiz.is_finite() {
        return Err(HolonomyError::IntegrationFailure {
            reason: "non-finite values in lift integration".into(),
        });
    }
    Ok(LiftTrace {
        params,
        base,
        fiber,
        points: LiftPoints::Su11(points),
        displacement,
        max_projection_residual: max_proj,
        max_horizontality_residual: max_horiz,
    })
}

fn assemble_heisenberg_trace(
    segs: &[Segment],
    nodes: Vec<Node>,
    plane: &SurfacePlane,
) -> Result<LiftTrace, HolonomyError> {
    let pairing = plane.imaginary_pairing();
    let count = nodes.len();
    let mut params = Vec::with_capacity(count);
    let mut base = Vec::with_capacity(count);
    let mut fiber = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count);
    let mut max_proj = 0.0f64;
    let mut max_horiz = 0.0f64;

    for node in &nodes {
        let seg = &segs[node.seg];
        let p = seg.point(node.t);
        let v = seg.velocity(node.t);
        let position = ComplexVector::linear_combination(p[0], plane.v(), p[1], plane.w());
        let velocity = ComplexVector::linear_combination(v[0], plane.v(), v[1], plane.w());
        let eta = HeisenbergElement::new(node.z, position);

        // Reconstruct the chart coordinates from the projected point through
        // the orthonormal frame.
        let x_back = plane.v().real_dot(eta.z());
        let y_back = plane.w().real_dot(eta.z());
        max_proj = max_proj.max((x_back - p[0]).abs().max((y_back - p[1]).abs()));

        let z_rate = 2.0 * (p[0] * v[1] - v[0] * p[1]) * pairing;
        let vertical = HeisenbergTangent::left_translated(
            &eta,
            1.0,
            ComplexVector::new(vec![num_complex::Complex64::new(0.0, 0.0); plane.n()]),
        );
        let eta_vel = HeisenbergTangent::new(eta.clone(), z_rate, velocity);
        let horiz = heisenberg::left_invariant_inner(&eta_vel, &vertical)
            .expect("tangents share a base by construction")
            .abs();
        max_horiz = max_horiz.max(horiz);

        params.push(node.t);
        base.push(p);
        fiber.push(node.z);
        points.push(eta);
    }

    let displacement = fiber.last().unwrap() - fiber.first().unwrap();
    if !displacement.is_finite() || !max_proj.is_finite() || !max_horiz.is_finite() {
        return Err(HolonomyError::IntegrationFailure {
            reason: "non-finite values in lift integration".into(),
        });
    }
    Ok(LiftTrace {
        params,
        base,
        fiber,
        points: LiftPoints::Heisenberg(points),
        displacement,
        max_projection_residual: max_proj,
        max_horizontality_residual: max_horiz,
    })
}

fn lift_ch1_closed(curve: &ChartCurve, lambda: f64, n: usize) -> Result<LiftTrace, HolonomyError> {
    let min_x = curve.min_x();
    if min_x < 0.0 {
        return Err(HolonomyError::NegativeChartX { min_x });
    }
    let segs = curve.segments();
    let nodes = rk4_over_segments(&segs, n, |t, _z, seg| {
        let p = seg.point(t);
        let v = seg.velocity(t);
        let sh = p[0].sinh();
        2.0 * lambda * sh * sh * v[1]
    });
    assemble_ch1_trace(&segs, nodes, lambda)
}

/// Horizontal lift over the complex hyperbolic line by the solved fiber
/// equation z' = sinh^2(x) y'; displacement z(1) - z(0).
pub fn lift_su11_closed_form(curve: &ChartCurve, n: usize) -> Result<LiftTrace, HolonomyError> {
    lift_ch1_closed(curve, 0.5, n)
}

/// Horizontal lift over a plane in C^n by the solved fiber equation
/// z' = 2 (x y' - x' y) Im<v,w>.
pub fn lift_heisenberg_closed_form(
    curve: &ChartCurve,
    plane: &SurfacePlane,
    n: usize,
) -> Result<LiftTrace, HolonomyError> {
    let pairing = plane.imaginary_pairing();
    let segs = curve.segments();
    let nodes = rk4_over_segments(&segs, n, |t, _z, seg| {
        let p = seg.point(t);
        let v = seg.velocity(t);
        2.0 * (p[0] * v[1] - v[0] * p[1]) * pairing
    });
    assemble_heisenberg_trace(&segs, nodes, plane)
}

fn lift_generic_once(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
) -> Result<LiftTrace, HolonomyError> {
    match bundle.kind() {
        BundleKind::CpxHyperbolic => {
            let min_x = curve.min_x();
            if min_x < 0.0 {
                return Err(HolonomyError::NegativeChartX { min_x });
            }
            let lambda = bundle.lambda();
            let segs = curve.segments();
            let nodes = if lambda == 0.0 {
                // Product bundle: the connection form is zero; there is no
                // vertical drift to correct.
                rk4_over_segments(&segs, n, |_t, _z, _seg| 0.0)
            } else {
                rk4_over_segments(&segs, n, |t, z, seg| {
                    // Vertical component of the frozen-fiber velocity of the
                    // candidate lift eta = exp_horizontal(x, y) circle(z),
                    // measured with the left-invariant metric. Advancing the
                    // fiber at this rate cancels the drift; the solved fiber
                    // equation is never consulted.
                    let p = seg.point(t);
                    let v = seg.velocity(t);
                    let gamma = Su11Element::exp_horizontal(p[0], p[1]);
                    let omega = Su11Element::circle(z);
                    let eta = gamma.mul(&omega);
                    let frozen = coord_mul(chart_lift_velocity(p, v), omega.coords());
                    let vertical = coord_mul(eta.coords(), E3_COORDS);
                    su11::left_invariant_inner(
                        &Su11Tangent::new(eta, frozen),
                        &Su11Tangent::new(eta, vertical),
                    )
                    .expect("tangents share a base by construction")
                })
            };
            assemble_ch1_trace(&segs, nodes, lambda)
        }
        BundleKind::Heisenberg => {
            let plane = bundle.surface();
            let segs = curve.segments();
            let nodes = rk4_over_segments(&segs, n, |t, _z, seg| {
                // Vertical component of the position velocity, from the
                // actual complex vectors rather than the reduced pairing.
                let p = seg.point(t);
                let v = seg.velocity(t);
                let position = ComplexVector::linear_combination(p[0], plane.v(), p[1], plane.w());
                let velocity = ComplexVector::linear_combination(v[0], plane.v(), v[1], plane.w());
                2.0 * position.hermitian(&velocity).im
            });
            assemble_heisenberg_trace(&segs, nodes, plane)
        }
    }
}

/// Predictor-corrector lift through the connection itself; cross-validates
/// the closed forms. Retries once with halved steps when the horizontality
/// residual exceeds 1e-6 and fails above 1e-5.
pub fn lift_generic(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
) -> Result<LiftTrace, HolonomyError> {
    let first = lift_generic_once(bundle, curve, n)?;
    if first.max_horizontality_residual <= 1e-6 {
        return Ok(first);
    }
    let refined = lift_generic_once(bundle, curve, n * 2)?;
    if refined.max_horizontality_residual <= 1e-5 {
        Ok(refined)
    } else {
        Err(HolonomyError::IntegrationFailure {
            reason: format!(
                "horizontality residual {:e} exceeds 1e-5 after step halving",
                refined.max_horizontality_residual
            ),
        })
    }
}

fn closed_form_lift(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
) -> Result<LiftTrace, HolonomyError> {
    match bundle.kind() {
        BundleKind::CpxHyperbolic => lift_ch1_closed(curve, bundle.lambda(), n),
        BundleKind::Heisenberg => lift_heisenberg_closed_form(curve, bundle.surface(), n),
    }
}

fn bundle_metrics(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
) -> Result<CurveMetrics, HolonomyError> {
    match bundle.kind() {
        BundleKind::CpxHyperbolic => Ok(CurveMetrics {
            area: hyperbolic_area(curve, n)?,
            length: curve_length(curve, n, MetricKind::HyperbolicChart)?,
        }),
        BundleKind::Heisenberg => Ok(CurveMetrics {
            area: euclidean_area(curve, n)?,
            length: curve_length(curve, n, MetricKind::Euclidean)?,
        }),
    }
}

/// Threshold above which closed-form and generic displacements are flagged
/// as inconsistent.
pub const CONSISTENCY_TOL: f64 = 1e-4;

/// Measure the holonomy displacement and compare it against the
/// holonomy-area prediction coefficient * signed area.
pub fn holonomy_with_trace(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
    method: LiftMethod,
) -> Result<(HolonomyReport, LiftTrace), HolonomyError> {
    let metrics = bundle_metrics(bundle, curve, n)?;
    let (trace, disagreement) = match method {
        LiftMethod::ClosedForm => (closed_form_lift(bundle, curve, n)?, None),
        LiftMethod::Generic => (lift_generic(bundle, curve, n)?, None),
        LiftMethod::Both => {
            let closed = closed_form_lift(bundle, curve, n)?;
            let generic = lift_generic(bundle, curve, n)?;
            let gap = (closed.displacement - generic.displacement).abs();
            (closed, Some(gap))
        }
    };
    let measured = trace.displacement;
    let predicted = bundle.lambda() * metrics.area;
    let consistent = disagreement.is_none_or(|d| d <= CONSISTENCY_TOL);
    let report = HolonomyReport {
        measured,
        measured_mod: match bundle.kind() {
            BundleKind::CpxHyperbolic => Some(reduce_angle(measured)),
            BundleKind::Heisenberg => None,
        },
        predicted,
        metrics,
        residual: (measured - predicted).abs(),
        classification: bundle.classification(),
        coefficient: bundle.lambda(),
        steps: n,
        method,
        method_disagreement: disagreement,
        consistent,
    };
    Ok((report, trace))
}

pub fn holonomy(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
    method: LiftMethod,
) -> Result<HolonomyReport, HolonomyError> {
    holonomy_with_trace(bundle, curve, n, method).map(|(report, _)| report)
}

/// Flat quotient of the pullback over the curve: a torus with lattice
/// {(2 pi, 0), (A/2, L/2)} for the circle bundle, a cylinder with
/// translation (e A, L) for the line bundle.
pub fn flat_model(
    bundle: &BundleDescriptor,
    curve: &ChartCurve,
    n: usize,
) -> Result<FlatModel, HolonomyError> {
    let metrics = bundle_metrics(bundle, curve, n)?;
    if metrics.length <= 0.0 {
        return Err(HolonomyError::ZeroLengthCurve);
    }
    Ok(match bundle.kind() {
        BundleKind::CpxHyperbolic => FlatModel::torus(metrics.area, metrics.length),
        BundleKind::Heisenberg => FlatModel::cylinder(
            bundle
                .euler_coefficient()
                .expect("Heisenberg descriptor carries e"),
            metrics.area,
            metrics.length,
        ),
    })
}

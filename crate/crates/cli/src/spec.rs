//! Experiment specs (JSON in), reports (JSON out), and lift traces (CSV
//! out), plus the conversion into library types.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use holonomy::curve::{ChartCurve, Orientation};
use holonomy::lift::{holonomy_with_trace, HolonomyReport, LiftMethod, LiftTrace};
use holonomy::matrix::ComplexVector;
use holonomy::plane::{BundleDescriptor, BundleKind, SurfacePlane};
use holonomy::HolonomyError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleKindSpec {
    CpxHyperbolic,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OrientationSpec {
    #[default]
    Positive,
    Negative,
}

impl From<OrientationSpec> for Orientation {
    fn from(o: OrientationSpec) -> Self {
        match o {
            OrientationSpec::Positive => Orientation::Positive,
            OrientationSpec::Negative => Orientation::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum MethodSpec {
    ClosedForm,
    Generic,
    #[default]
    Both,
}

impl From<MethodSpec> for LiftMethod {
    fn from(m: MethodSpec) -> Self {
        match m {
            MethodSpec::ClosedForm => LiftMethod::ClosedForm,
            MethodSpec::Generic => LiftMethod::Generic,
            MethodSpec::Both => LiftMethod::Both,
        }
    }
}

/// Spanning pair of the surface plane; complex numbers as [re, im] pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub v: Vec<[f64; 2]>,
    pub w: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Rectangle {
        p: f64,
        a: f64,
        q: f64,
        b: f64,
        #[serde(default)]
        orientation: OrientationSpec,
    },
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        orientation: OrientationSpec,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
        #[serde(default)]
        orientation: OrientationSpec,
    },
    Sampled {
        points: Vec<[f64; 2]>,
        #[serde(default)]
        orientation: OrientationSpec,
    },
}

fn default_steps() -> usize {
    10_000
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default)]
    pub method: MethodSpec,
}

impl Default for IntegratorSpec {
    fn default() -> Self {
        Self {
            steps: default_steps(),
            method: MethodSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub trace: Option<PathBuf>,
}

/// One experiment: bundle, surface plane, curve, integrator settings, and
/// output paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub bundle: BundleKindSpec,
    pub n: usize,
    pub surface: SurfaceSpec,
    pub curve: CurveSpec,
    #[serde(default)]
    pub integrator: IntegratorSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub method: String,
}

/// The report schema written for every run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub measured: f64,
    pub measured_mod: Option<f64>,
    pub predicted: f64,
    pub area: f64,
    pub length: f64,
    pub residual: f64,
    pub classification: String,
    pub lambda_or_e: f64,
    pub integrator: IntegratorJson,
    pub status: String,
}

impl ReportJson {
    fn from_report(report: &HolonomyReport) -> Self {
        Self {
            measured: report.measured,
            measured_mod: report.measured_mod,
            predicted: report.predicted,
            area: report.metrics.area,
            length: report.metrics.length,
            residual: report.residual,
            classification: report.classification.tag.as_str().to_string(),
            lambda_or_e: report.coefficient,
            integrator: IntegratorJson {
                n: report.steps,
                method: report.method.as_str().to_string(),
            },
            status: if report.consistent {
                "ok".to_string()
            } else {
                "inconsistent".to_string()
            },
        }
    }
}

/// Failure category, mapped to the process exit code.
#[derive(Debug)]
pub enum RunFailure {
    /// Exit 1: bad spec, invalid curve or plane, chart violations.
    Validation(String),
    /// Exit 2: lift integration failed.
    Integration(String),
}

impl RunFailure {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunFailure::Validation(_) => 1,
            RunFailure::Integration(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunFailure::Validation(m) | RunFailure::Integration(m) => m,
        }
    }
}

fn classify_error(err: HolonomyError) -> RunFailure {
    match err {
        HolonomyError::IntegrationFailure { .. } => RunFailure::Integration(err.to_string()),
        _ => RunFailure::Validation(err.to_string()),
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub report: ReportJson,
    pub trace: LiftTrace,
    /// True when the two integration routes disagreed beyond tolerance
    /// (exit code 3).
    pub inconsistent: bool,
}

fn build_bundle(spec: &ExperimentSpec) -> Result<BundleDescriptor, RunFailure> {
    if spec.n == 0 {
        return Err(RunFailure::Validation("n must be positive".into()));
    }
    for (name, list) in [("v", &spec.surface.v), ("w", &spec.surface.w)] {
        if list.len() != spec.n {
            return Err(RunFailure::Validation(format!(
                "surface vector {name} has {} components, spec says n = {}",
                list.len(),
                spec.n
            )));
        }
    }
    let v = ComplexVector::from_pairs(&spec.surface.v);
    let w = ComplexVector::from_pairs(&spec.surface.w);
    let plane = SurfacePlane::new(v, w).map_err(classify_error)?;
    let kind = match spec.bundle {
        BundleKindSpec::CpxHyperbolic => BundleKind::CpxHyperbolic,
        BundleKindSpec::Heisenberg => BundleKind::Heisenberg,
    };
    BundleDescriptor::new(kind, plane).map_err(classify_error)
}

fn build_curve(spec: &CurveSpec) -> Result<ChartCurve, RunFailure> {
    let curve = match spec.clone() {
        CurveSpec::Rectangle {
            p,
            a,
            q,
            b,
            orientation,
        } => ChartCurve::rectangle(p, a, q, b, orientation.into()),
        CurveSpec::Circle {
            center,
            radius,
            orientation,
        } => ChartCurve::circle(center, radius, orientation.into()),
        CurveSpec::Polygon {
            vertices,
            orientation,
        } => ChartCurve::polygon(vertices, orientation.into()),
        CurveSpec::Sampled {
            points,
            orientation,
        } => ChartCurve::sampled(points, orientation.into()),
    };
    curve.map_err(classify_error)
}

/// Run one spec end to end (no file output; the caller decides where the
/// report and trace go).
pub fn run_spec(spec: &ExperimentSpec) -> Result<RunOutcome, RunFailure> {
    let bundle = build_bundle(spec)?;
    let curve = build_curve(&spec.curve)?;
    let method: LiftMethod = spec.integrator.method.into();
    let (report, trace) = holonomy_with_trace(&bundle, &curve, spec.integrator.steps, method)
        .map_err(classify_error)?;
    Ok(RunOutcome {
        inconsistent: !report.consistent,
        report: ReportJson::from_report(&report),
        trace,
    })
}

/// Deterministic report serialization: identical specs produce
/// byte-identical files.
pub fn report_to_string(report: &ReportJson) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// CSV trace with full double precision (17 significant digits).
pub fn trace_to_csv(trace: &LiftTrace) -> String {
    let mut out = String::with_capacity(trace.params.len() * 80 + 16);
    out.push_str("t,x,y,z\n");
    for i in 0..trace.params.len() {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            trace.params[i], trace.base[i][0], trace.base[i][1], trace.fiber[i]
        ));
    }
    out
}

/// Write via a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn load_spec(path: &Path) -> Result<ExperimentSpec, RunFailure> {
    let raw = fs::read_to_string(path)
        .map_err(|e| RunFailure::Validation(format!("cannot read spec {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| RunFailure::Validation(format!("cannot parse spec {}: {e}", path.display())))
}

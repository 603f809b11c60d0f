//! Batch experiment driver: JSON experiment specs in, JSON holonomy reports
//! and CSV lift traces out.
//!
//! Exit codes: 0 success, 1 validation error, 2 integration failure,
//! 3 the two integration routes disagreed (report still written, with
//! status "inconsistent").

mod spec;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use spec::{
    load_spec, report_to_string, run_spec, trace_to_csv, ExperimentSpec, MethodSpec, RunFailure,
};

#[derive(Parser)]
#[command(
    name = "holonomy",
    version,
    about = "Holonomy displacements of horizontal lifts over closed curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single experiment spec.
    Run {
        /// Path to the experiment spec (JSON).
        spec: PathBuf,
        /// Override the integrator step count.
        #[arg(long)]
        steps: Option<usize>,
        /// Override the integration method.
        #[arg(long, value_enum)]
        method: Option<MethodSpec>,
        /// Write the lift trace CSV here (overrides the spec).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the report JSON here (overrides the spec; default stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every *.json spec in a directory and write a summary CSV.
    Batch {
        /// Directory containing experiment specs.
        dir: PathBuf,
        /// Write reports and the summary here instead of next to the specs.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the integrator step count for every spec.
        #[arg(long)]
        steps: Option<usize>,
        /// Override the integration method for every spec.
        #[arg(long, value_enum)]
        method: Option<MethodSpec>,
    },
}

fn apply_overrides(spec: &mut ExperimentSpec, steps: Option<usize>, method: Option<MethodSpec>) {
    if let Some(s) = steps {
        spec.integrator.steps = s;
    }
    if let Some(m) = method {
        spec.integrator.method = m;
    }
}

fn fail(failure: &RunFailure) -> ! {
    eprintln!("error: {}", failure.message());
    std::process::exit(failure.exit_code());
}

fn write_or_die(path: &Path, contents: &str, what: &str) {
    if let Err(e) = spec::write_atomic(path, contents) {
        eprintln!("error: cannot write {what} {}: {e}", path.display());
        std::process::exit(1);
    }
}

fn cmd_run(
    spec_path: &Path,
    steps: Option<usize>,
    method: Option<MethodSpec>,
    trace: Option<PathBuf>,
    report: Option<PathBuf>,
) -> i32 {
    let mut spec = match load_spec(spec_path) {
        Ok(s) => s,
        Err(f) => fail(&f),
    };
    apply_overrides(&mut spec, steps, method);
    if let Some(t) = trace {
        spec.output.trace = Some(t);
    }
    if let Some(r) = report {
        spec.output.report = Some(r);
    }

    let outcome = match run_spec(&spec) {
        Ok(o) => o,
        Err(f) => fail(&f),
    };
    let text = report_to_string(&outcome.report);
    match &spec.output.report {
        Some(path) => {
            write_or_die(path, &text, "report");
            println!("report: {}", path.display());
        }
        None => print!("{text}"),
    }
    if let Some(path) = &spec.output.trace {
        write_or_die(path, &trace_to_csv(&outcome.trace), "trace");
        println!("trace: {}", path.display());
    }
    if outcome.inconsistent {
        eprintln!(
            "warning: closed-form and generic lifts disagree beyond {:.0e}",
            holonomy::CONSISTENCY_TOL
        );
        3
    } else {
        0
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_batch(
    dir: &Path,
    out: Option<PathBuf>,
    steps: Option<usize>,
    method: Option<MethodSpec>,
) -> i32 {
    let out_dir = out.unwrap_or_else(|| dir.to_path_buf());
    let mut entries: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| {
                p.extension().is_some_and(|x| x == "json")
                    && !p
                        .file_name()
                        .is_some_and(|n| n.to_string_lossy().ends_with(".report.json"))
            })
            .collect(),
        Err(e) => {
            eprintln!("error: cannot read directory {}: {e}", dir.display());
            std::process::exit(1);
        }
    };
    entries.sort();

    let mut summary = String::from("spec,residual,status\n");
    let mut failures = 0usize;
    for path in &entries {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let row = match load_spec(path).and_then(|mut s| {
            apply_overrides(&mut s, steps, method);
            run_spec(&s).map(|o| (s, o))
        }) {
            Ok((spec, outcome)) => {
                let report_path = out_dir.join(format!("{id}.report.json"));
                write_or_die(&report_path, &report_to_string(&outcome.report), "report");
                if let Some(trace_path) = &spec.output.trace {
                    write_or_die(trace_path, &trace_to_csv(&outcome.trace), "trace");
                }
                format!(
                    "{},{:.17e},{}\n",
                    csv_field(&id),
                    outcome.report.residual,
                    outcome.report.status
                )
            }
            Err(f) => {
                failures += 1;
                eprintln!("{id}: {}", f.message());
                let status = match f {
                    RunFailure::Validation(_) => "validation_error",
                    RunFailure::Integration(_) => "integration_error",
                };
                format!("{},,{}\n", csv_field(&id), status)
            }
        };
        summary.push_str(&row);
    }
    let summary_path = out_dir.join("summary.csv");
    write_or_die(&summary_path, &summary, "summary");
    println!(
        "summary: {} ({} specs, {} failed)",
        summary_path.display(),
        entries.len(),
        failures
    );
    0
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            spec,
            steps,
            method,
            trace,
            report,
        } => cmd_run(&spec, steps, method, trace, report),
        Command::Batch {
            dir,
            out,
            steps,
            method,
        } => cmd_batch(&dir, out, steps, method),
    };
    std::process::exit(code);
}

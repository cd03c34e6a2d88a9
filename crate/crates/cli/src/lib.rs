//! Command-line front end. [`run`] holds all the logic so it can be driven
//! from tests without spawning a process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use riemann_fan::format::{fmt9, round_sig, SIG_DIGITS};
use riemann_fan::region::{region_csv_string, Axis, RegionSpec};
use riemann_fan::riemann::{WaveSpeed, WaveSpeeds};
use riemann_fan::subsolution::{verify_subsolution, FeasibilityRecord, ResidualReport};
use riemann_fan::threshold::{scan_feasible_with, threshold_table, threshold_v, ScanConfig};
use riemann_fan::{
    classify, region_map_sweep, Eos, Error, RiemannData, Tolerances, WitnessDocument,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "riemann-fan",
    version,
    about = "Fan subsolutions and non-uniqueness thresholds for planar Riemann data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the self-similar solution of one datum.
    Classify(DataArgs),
    /// Tabulate the eps_2 window over the middle density.
    Feasibility(FeasibilityArgs),
    /// Threshold V on the velocity gap for one right state.
    Threshold(ThresholdArgs),
    /// Thresholds for a list of v_plus2 values.
    ThresholdTable(TableArgs),
    /// Classification and subsolution search over a (rho_plus, v_plus2) grid.
    RegionMap(RegionArgs),
    /// Check a subsolution document against all conditions.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct DataArgs {
    #[arg(long)]
    rho_minus: f64,
    #[arg(long)]
    rho_plus: f64,
    #[arg(long)]
    v_minus2: f64,
    #[arg(long)]
    v_plus2: f64,
    #[arg(long)]
    gamma: f64,
    /// Common first velocity component.
    #[arg(long, default_value_t = 0.0)]
    v1: f64,
}

impl DataArgs {
    fn data(&self) -> Result<RiemannData<f64>, Error> {
        RiemannData::planar(
            self.rho_minus,
            self.v_minus2,
            self.rho_plus,
            self.v_plus2,
            self.v1,
            Eos::new(self.gamma)?,
        )
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct FeasibilityArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Initial density grid size.
    #[arg(long, default_value_t = 2048)]
    grid: usize,
    /// Write a verified subsolution document here when one is found.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ThresholdArgs {
    #[arg(long)]
    rho_minus: f64,
    #[arg(long)]
    rho_plus: f64,
    #[arg(long)]
    v_plus2: f64,
    #[arg(long)]
    gamma: f64,
    /// Include every gap probe in the output.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct TableArgs {
    #[arg(long)]
    rho_minus: f64,
    #[arg(long)]
    rho_plus: f64,
    #[arg(long)]
    gamma: f64,
    /// Comma-separated v_plus2 values.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    v_plus2_list: Vec<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct RegionArgs {
    #[arg(long)]
    rho_minus: f64,
    #[arg(long)]
    v_minus2: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    rho_plus_min: f64,
    #[arg(long)]
    rho_plus_max: f64,
    #[arg(long, default_value_t = 10)]
    rho_plus_n: usize,
    #[arg(long)]
    v_plus2_min: f64,
    #[arg(long)]
    v_plus2_max: f64,
    #[arg(long, default_value_t = 10)]
    v_plus2_n: usize,
    /// Also compute the local threshold V for every cell.
    #[arg(long)]
    with_threshold: bool,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Subsolution document (JSON).
    #[arg(long)]
    input: PathBuf,
}

/// Outcome of a subcommand: output text and exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn new(text: String, positive: bool) -> Self {
        Self {
            text,
            code: if positive { EXIT_OK } else { EXIT_NEGATIVE },
        }
    }
}

enum Failure {
    Input(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code: 0 success, 1 negative finding, 2 input error.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a),
        Command::Feasibility(a) => cmd_feasibility(&a, err),
        Command::Threshold(a) => cmd_threshold(&a, err),
        Command::ThresholdTable(a) => cmd_table(&a, err),
        Command::RegionMap(a) => cmd_region(&a, err),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(o) => {
            if out.write_all(o.text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            o.code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_NEGATIVE
        }
    }
}

fn num(x: f64) -> Value {
    // non-finite values become null
    json!(round_sig(x, SIG_DIGITS))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn speed_json(s: &WaveSpeed<f64>) -> Value {
    match *s {
        WaveSpeed::None => Value::Null,
        WaveSpeed::Shock { speed } => json!({ "type": "shock", "speed": num(speed) }),
        WaveSpeed::Rarefaction {
            left_edge,
            right_edge,
        } => {
            json!({ "type": "rarefaction", "left_edge": num(left_edge), "right_edge": num(right_edge) })
        }
    }
}

fn cmd_classify(a: &DataArgs) -> Result<Outcome, Failure> {
    let data = a.data()?;
    let fan = classify(&data)?;
    let waves = fan.speeds.map(
        |WaveSpeeds { one, three }| json!({ "one": speed_json(&one), "three": speed_json(&three) }),
    );
    let v = json!({
        "kind": fan.kind.tag(),
        "w": num(data.gap()),
        "sqrtT": num(data.shock_bound_sq().sqrt()),
        "middle": fan.middle.map(|m| json!({ "rho": num(m.rho), "v2": num(m.v2) })),
        "waves": waves,
    });
    Ok(Outcome::new(pretty(&v), true))
}

const FEASIBILITY_HEADER: &str =
    "rho_1,nu_minus,nu_plus,beta,eps_1,sign_beta_minus,sign_plus_beta,eps2_lower,eps2_upper,lower_source,upper_source,feasible\n";

fn source_tag(s: riemann_fan::subsolution::BoundSource) -> &'static str {
    use riemann_fan::subsolution::BoundSource::*;
    match s {
        Positivity => "positivity",
        LeftEnergy => "left_energy",
        RightEnergy => "right_energy",
        Unbounded => "unbounded",
    }
}

fn feasibility_row(r: &FeasibilityRecord<f64>) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
        fmt9(r.rho_1),
        fmt9(r.nu_minus),
        fmt9(r.nu_plus),
        fmt9(r.beta),
        fmt9(r.eps_1),
        r.sign_beta_minus,
        r.sign_plus_beta,
        fmt9(r.eps2_lower),
        fmt9(r.eps2_upper),
        source_tag(r.lower_source),
        source_tag(r.upper_source),
        r.feasible
    )
}

fn cmd_feasibility(a: &FeasibilityArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let data = a.data.data()?;
    if a.grid < 2 {
        return Err(Failure::Input(format!(
            "--grid must be at least 2, got {}",
            a.grid
        )));
    }
    let cfg = ScanConfig {
        grid: a.grid,
        ..ScanConfig::default()
    };
    let scan = match scan_feasible_with(&data, &cfg) {
        Ok(s) => s,
        Err(e @ (Error::NonNegativeB { .. } | Error::DegenerateR { .. })) => {
            return Err(Failure::Negative(format!(
                "no fan subsolution of this form: {e}"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = String::from(FEASIBILITY_HEADER);
    for r in &scan.samples {
        text.push_str(&feasibility_row(r));
    }
    let tol = Tolerances::default();
    let verified = match scan.witness_subsolution(&data, &tol) {
        Some(Ok(sub)) if verify_subsolution(&data, &sub).pass => Some(sub),
        _ => None,
    };
    for iv in &scan.intervals {
        let _ = writeln!(err, "feasible rho_1 in [{}, {}]", fmt9(iv.lo), fmt9(iv.hi));
    }
    if let Some(path) = &a.emit_witness {
        match &verified {
            Some(sub) => {
                let doc = WitnessDocument::new(&data, sub);
                fs::write(path, doc.to_json() + "\n")
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            None => {
                let _ = writeln!(err, "no verified witness; {} not written", path.display());
            }
        }
    }
    Ok(Outcome::new(text, verified.is_some()))
}

fn cmd_threshold(a: &ThresholdArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let eos = Eos::new(a.gamma)?;
    let r = match threshold_v(a.rho_minus, a.rho_plus, a.v_plus2, &eos) {
        Ok(r) => r,
        Err(e @ Error::NoThreshold { .. }) => return Err(Failure::Negative(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    for w in &r.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let mut v = json!({
        "V": num(r.v),
        "sqrtT": num(r.sqrt_t),
        "bisection_tol": num(r.bisection_tol),
        "scan_step": num(r.scan_step),
        "probes": r.probes.len(),
        "non_monotone": r.non_monotone,
        "warnings": r.warnings,
    });
    if a.trace {
        v["feasible_probe"] = r
            .probes
            .iter()
            .map(|p| {
                json!({
                    "w": num(p.w),
                    "feasible": p.feasible,
                    "intervals": p.intervals.iter().map(|iv| json!([num(iv.lo), num(iv.hi)])).collect::<Vec<_>>(),
                })
            })
            .collect();
    }
    Ok(Outcome::new(pretty(&v), true))
}

fn cmd_table(a: &TableArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let eos = Eos::new(a.gamma)?;
    let t = threshold_table(a.rho_minus, a.rho_plus, &eos, &a.v_plus2_list);
    let mut text = String::from("v_plus2,V,sqrtT,error\n");
    let mut all_ok = true;
    for row in &t.rows {
        match &row.result {
            Ok(r) => text.push_str(&format!(
                "{},{},{},\n",
                fmt9(row.v_plus2),
                fmt9(r.v),
                fmt9(r.sqrt_t)
            )),
            Err(e) => {
                all_ok = false;
                let msg = e.to_string().replace('"', "'");
                text.push_str(&format!("{},,,\"{msg}\"\n", fmt9(row.v_plus2)));
            }
        }
    }
    let note = match t.nondecreasing {
        Some(true) => "observed: V nondecreasing in v_plus2",
        Some(false) => "observed: V not monotone in v_plus2",
        None => "observed: too few rows for a monotonicity check",
    };
    let _ = writeln!(err, "{note}");
    Ok(Outcome::new(text, all_ok))
}

fn cmd_region(a: &RegionArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let spec = RegionSpec {
        rho_minus: a.rho_minus,
        v_minus2: a.v_minus2,
        eos: Eos::new(a.gamma)?,
        rho_plus: Axis::new(a.rho_plus_min, a.rho_plus_max, a.rho_plus_n)?,
        v_plus2: Axis::new(a.v_plus2_min, a.v_plus2_max, a.v_plus2_n)?,
        with_threshold: a.with_threshold,
    };
    let map = region_map_sweep(&spec)?;
    for f in &map.failures {
        let _ = writeln!(err, "cell {}: {}", f.index, f.error);
    }
    let csv = region_csv_string(&map.cells);
    match &a.output {
        Some(path) => {
            fs::write(path, &csv)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Outcome::new(String::new(), true))
        }
        None => Ok(Outcome::new(csv, true)),
    }
}

fn report_json(r: &ResidualReport<f64>) -> Value {
    json!({
        "pass": r.pass,
        "tolerance": num(r.tolerance),
        "max_equality_residual": num(r.max_equality_residual()),
        "failures": r.failures().iter().map(|c| c.name()).collect::<Vec<_>>(),
        "equalities": r.equalities.iter().map(|e| json!({
            "condition": e.condition.name(),
            "lhs": num(e.lhs),
            "rhs": num(e.rhs),
            "residual": num(e.residual),
        })).collect::<Vec<_>>(),
        "inequalities": r.inequalities.iter().map(|i| json!({
            "condition": i.condition.name(),
            "margin": num(i.margin),
        })).collect::<Vec<_>>(),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(&a.input)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.input.display())))?;
    let (data, sub) = WitnessDocument::from_json(&text)?.parts::<f64>()?;
    let report = verify_subsolution(&data, &sub);
    Ok(Outcome::new(pretty(&report_json(&report)), report.pass))
}

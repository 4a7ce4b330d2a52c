use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use whcenter::exponents::{
    degree_form_lower, degree_form_upper, design_perturbation, family_set, general_bound, general_set,
    DesignOptions, IndexSetReport,
};
use whcenter::melnikov::{count_zeros, m1_series, Perturbation, SeriesOptions, ZeroScan};
use whcenter::oval::{trace_oval, HEvaluator, TraceOptions};
use whcenter::poly::{format_rational, parse_rational};
use whcenter::properties::{run_suite, SuiteOptions};
use whcenter::shoot::{samples_to_csv, ShootOptions, Shooter};
use whcenter::whsys::{
    andreev_monodromy_with_order, check_inverse_integrating_factor, construct_center, detect_weights,
    family, CenterModel, CenterSpec, FamilyParams, PlanarSystem, WeightSignature,
};

mod plot;

#[derive(Parser)]
#[command(name = "whcenter", version, about = "Limit cycles of perturbed weight-homogeneous centers")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Output format on stdout.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Also write every output into this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write data files and a standalone plot script (needs --out).
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long)]
    n: u32,
    /// Rational `p/q`, below -1/4.
    #[arg(long, allow_hyphen_values = true)]
    c: String,
}

impl FamilyArgs {
    fn model(&self) -> anyhow::Result<CenterModel> {
        let params = FamilyParams::new(self.n, parse_rational(&self.c)?)?;
        Ok(family(&params)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weights (alpha, beta, omega) of a polynomial system `{"f", "g"}`.
    DetectWeights { system: PathBuf },
    /// Builds the center from `{"h1", "h2", "h2_scale_sq", "sigma_a", "sigma_t"}`.
    Construct { input: PathBuf },
    /// The family `x' = y + x^{2n}, y' = 2nc x^{4n-1}`.
    Family(FamilyArgs),
    /// Monodromy of the origin by Andreev's criteria.
    Monodromy {
        system: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Traces the oval `H = h`.
    Trace {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        substeps: usize,
    },
    /// First Melnikov function of a perturbation and its zeros.
    Melnikov {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        pert: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        h_min: f64,
        #[arg(long, default_value_t = 10.0)]
        h_max: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Index sets, exponent counts and zero bounds.
    Exponents {
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        d: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// `alpha,beta,omega` for the general set.
        #[arg(long, default_value = "1,2,1")]
        weights: String,
    },
    /// Perturbation whose Melnikov function vanishes at the given levels.
    Design {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Comma-separated positive levels.
        #[arg(long, value_delimiter = ',')]
        zeros: Vec<f64>,
    },
    /// Return map on the positive x-axis and limit cycles.
    Shoot {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        pert: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 0.3)]
        x_lo: f64,
        #[arg(long, default_value_t = 3.0)]
        x_hi: f64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Runs the property suite of the family and prints a pass/fail table.
    VerifyLemmas(FamilyArgs),
}

/// Bad user input that is not a library error.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

struct Output {
    name: &'static str,
    json: Value,
    csv: Option<String>,
    table: Option<String>,
    default: Format,
    /// Extra files for `--out`.
    files: Vec<(String, String)>,
    /// `(csv data file, script name, script)` written with `--plot`.
    plot: Option<(String, String, String)>,
    success: bool,
}

impl Output {
    fn json(name: &'static str, json: Value) -> Self {
        Self {
            name,
            json,
            csv: None,
            table: None,
            default: Format::Json,
            files: Vec::new(),
            plot: None,
            success: true,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// Accepts a bare perturbation or any object holding one under `"perturbation"`.
fn read_perturbation(path: &Path) -> anyhow::Result<Perturbation> {
    let v: Value = read_json(path)?;
    let v = match v.get("perturbation") {
        Some(p) => p.clone(),
        None => v,
    };
    serde_json::from_value(v).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn counts_row(r: &IndexSetReport) -> String {
    format!(
        "{},{},{},{},{}",
        r.cardinality,
        r.repeated,
        r.distinct_exponents,
        r.upper_bound_zeros,
        r.lower_bound_zeros.map(|v| v.to_string()).unwrap_or_default()
    )
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.cmd {
        Command::DetectWeights { system } => {
            let sys: PlanarSystem = read_json(system)?;
            let w = detect_weights(&sys)?;
            let s = &w.signature;
            let mut o = Output::json("weights", to_value(&w)?);
            o.csv = Some(format!(
                "alpha,beta,omega\n{},{},{}\n",
                format_rational(&s.alpha),
                format_rational(&s.beta),
                format_rational(&s.omega)
            ));
            Ok(o)
        }
        Command::Construct { input } => {
            let spec: CenterSpec = read_json(input)?;
            let m = construct_center(&spec)?;
            if !check_inverse_integrating_factor(&m) {
                return Err(anyhow!("inverse integrating factor identity failed"));
            }
            Ok(Output::json("model", to_value(&m)?))
        }
        Command::Family(fam) => Ok(Output::json("model", to_value(&fam.model()?)?)),
        Command::Monodromy { system, order } => {
            let sys: PlanarSystem = read_json(system)?;
            let r = andreev_monodromy_with_order(&sys, *order)?;
            Ok(Output::json("monodromy", to_value(&r)?))
        }
        Command::Trace {
            fam,
            h,
            tol,
            substeps,
        } => {
            if !(*tol > 0.0) {
                return Err(input_err("--tol must be positive"));
            }
            let m = fam.model()?;
            let tr = trace_oval(
                &m,
                *h,
                &TraceOptions {
                    tol: *tol,
                    substeps: (*substeps).max(1),
                },
            )?;
            let ev = HEvaluator::new(&m);
            let mut csv = String::from("t,x,y,H\n");
            let mut rows = Vec::with_capacity(tr.samples.len());
            for s in &tr.samples {
                let hv = ev.eval(s.x, s.y)?;
                csv.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", s.t, s.x, s.y, hv));
                rows.push(json!({"t": s.t, "x": s.x, "y": s.y, "H": hv}));
            }
            let mut o = Output::json(
                "trace",
                json!({
                    "h": tr.h,
                    "period": tr.period,
                    "x_plus": tr.x_plus,
                    "x_minus": tr.x_minus,
                    "y_plus": tr.y_plus,
                    "y_minus": tr.y_minus,
                    "max_h_drift": tr.max_h_drift,
                    "closure_miss": tr.closure_miss,
                    "signed_area": tr.signed_area(),
                    "samples": rows,
                }),
            );
            o.csv = Some(csv.clone());
            o.plot = Some(("trace.csv".into(), "plot_trace.py".into(), plot::trace_script("trace.csv")));
            Ok(o)
        }
        Command::Melnikov {
            fam,
            pert,
            h_min,
            h_max,
            samples,
        } => {
            if !(*h_min > 0.0 && h_max > h_min) || *samples < 2 {
                return Err(input_err("need 0 < h-min < h-max and samples >= 2"));
            }
            let m = fam.model()?;
            let p = read_perturbation(pert)?;
            let series = m1_series(&m, &p, &SeriesOptions::default())?;
            let zeros = count_zeros(&series, *h_min, *h_max, &ZeroScan::default())?;
            let grid = Shooter::log_grid(*h_min, *h_max, *samples);
            let mut m1_csv = String::from("h,M1\n");
            for &h in &grid {
                m1_csv.push_str(&format!("{:.16e},{:.16e}\n", h, series.evaluate(h)));
            }
            let mut o = Output::json(
                "melnikov",
                json!({
                    "series": to_value(&series)?,
                    "zeros": to_value(&zeros)?,
                    "samples": grid.iter().map(|&h| json!([h, series.evaluate(h)])).collect::<Vec<_>>(),
                }),
            );
            o.csv = Some(zeros.to_csv());
            o.files.push(("series.json".into(), serde_json::to_string_pretty(&series)? + "\n"));
            o.files.push(("m1.csv".into(), m1_csv));
            o.plot = Some(("m1.csv".into(), "plot_m1.py".into(), plot::m1_script("m1.csv")));
            Ok(o)
        }
        Command::Exponents { d, n, weights } => {
            let (r, extra) = if let Some(n) = n {
                if *n == 0 {
                    return Err(input_err("--n must be at least 1"));
                }
                (family_set(*n), json!({}))
            } else {
                let d = d.expect("clap requires --d or --n");
                let parts: Vec<&str> = weights.split(',').collect();
                if parts.len() != 3 {
                    return Err(input_err("--weights expects alpha,beta,omega"));
                }
                let sig = WeightSignature::normalized(
                    parse_rational(parts[0])?,
                    parse_rational(parts[1])?,
                    parse_rational(parts[2])?,
                )?;
                (
                    general_set(d, &sig),
                    json!({
                        "bound": general_bound(d),
                        "degree_form_upper": format_rational(&degree_form_upper(d)),
                        "degree_form_lower": format_rational(&degree_form_lower(d)),
                    }),
                )
            };
            let mut v = to_value(&r)?;
            if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
                a.extend(b);
            }
            let mut o = Output::json("exponents", v);
            let header = "cardinality,repeated,distinct,upper,lower";
            o.csv = Some(format!("{header}\n{}\n", counts_row(&r)));
            o.table = Some(format!(
                "{:<12} {:>8} {:>9} {:>6} {:>6}\n{:<12} {:>8} {:>9} {:>6} {:>6}\n",
                "cardinality",
                "repeated",
                "distinct",
                "upper",
                "lower",
                r.cardinality,
                r.repeated,
                r.distinct_exponents,
                r.upper_bound_zeros,
                r.lower_bound_zeros.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
            ));
            Ok(o)
        }
        Command::Design { fam, zeros } => {
            let m = fam.model()?;
            let d = design_perturbation(&m, zeros, &DesignOptions::default())?;
            let (lo, hi) = zeros
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(a, b), &z| (a.min(z), b.max(z)));
            let (lo, hi) = if zeros.is_empty() { (0.1, 10.0) } else { (lo / 10.0, hi * 10.0) };
            let found = count_zeros(&d.series, lo, hi, &ZeroScan::default())?;
            let v = json!({
                "perturbation": to_value(&d.perturbation)?,
                "ids": to_value(&d.ids)?,
                "exponents": d.exponents.iter().map(format_rational).collect::<Vec<_>>(),
                "kernel": d.kernel.iter().map(|k| k.to_f64()).collect::<Vec<_>>(),
                "calibration_h": d.calibration_h,
                "residual": d.residual,
                "series": to_value(&d.series)?,
                "zeros": to_value(&found)?,
            });
            let mut o = Output::json("design", v);
            o.csv = Some(found.to_csv());
            o.files.push((
                "pert.json".into(),
                serde_json::to_string_pretty(&d.perturbation)? + "\n",
            ));
            Ok(o)
        }
        Command::Shoot {
            fam,
            pert,
            epsilon,
            x_lo,
            x_hi,
            grid,
            tol,
        } => {
            if !(*tol > 0.0) || *grid < 2 {
                return Err(input_err("need --tol > 0 and --grid >= 2"));
            }
            let m = fam.model()?;
            let mut p = read_perturbation(pert)?;
            if let Some(e) = epsilon {
                p.epsilon = *e;
            }
            let opts = ShootOptions {
                tol: *tol,
                grid: *grid,
                ..ShootOptions::default()
            };
            let sh = Shooter::new(&m, &p, opts)?;
            let series = m1_series(&m, &p, &SeriesOptions::default())?;
            let h_lo = sh.h.eval(*x_lo, 0.0)?;
            let h_hi = sh.h.eval(*x_hi, 0.0)?;
            let zeros = count_zeros(&series, h_lo, h_hi, &ZeroScan::default())?;
            let zs: Vec<f64> = zeros.zeros.iter().map(|z| z.h).collect();
            let r = sh.find_limit_cycles(*x_lo, *x_hi, p.epsilon, &zs)?;
            let mut v = to_value(&r)?;
            if let Value::Object(a) = &mut v {
                a.insert("m1_zeros".into(), to_value(&zs)?);
            }
            let mut o = Output::json("shoot", v);
            o.csv = Some(samples_to_csv(&r.samples));
            o.plot = Some((
                "shoot.csv".into(),
                "plot_displacement.py".into(),
                plot::displacement_script("shoot.csv"),
            ));
            Ok(o)
        }
        Command::VerifyLemmas(fam) => {
            let m = fam.model()?;
            let r = run_suite(&m, &SuiteOptions::default())?;
            let mut o = Output::json("properties", to_value(&r)?);
            o.table = Some(r.table());
            o.default = Format::Table;
            o.success = r.all_pass();
            Ok(o)
        }
    }
}

fn emit(cli: &Cli, o: &Output) -> anyhow::Result<()> {
    let format = cli.format.unwrap_or(o.default);
    let json_text = serde_json::to_string_pretty(&o.json)? + "\n";
    let text = match format {
        Format::Json => json_text.clone(),
        Format::Csv => o
            .csv
            .clone()
            .ok_or_else(|| input_err(format!("csv output is not available for {}", o.name)))?,
        Format::Table => o
            .table
            .clone()
            .ok_or_else(|| input_err(format!("table output is not available for {}", o.name)))?,
    };
    if cli.plot && cli.out.is_none() {
        return Err(input_err("--plot needs --out"));
    }
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let write = |name: &str, body: &str| -> anyhow::Result<()> {
            let p = dir.join(name);
            fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
        };
        write(&format!("{}.json", o.name), &json_text)?;
        if let Some(csv) = &o.csv {
            write(&format!("{}.csv", o.name), csv)?;
        }
        for (name, body) in &o.files {
            write(name, body)?;
        }
        if cli.plot {
            if let Some((data, script, body)) = &o.plot {
                if !dir.join(data).exists() {
                    return Err(anyhow!("plot data {data} was not written"));
                }
                write(script, body)?;
            }
        }
    }
    print!("{text}");
    Ok(())
}

fn fail(e: &anyhow::Error) -> ExitCode {
    let (kind, code) = if let Some(core) = e.downcast_ref::<whcenter::Error>() {
        (core.kind(), if core.is_validation() { 2 } else { 1 })
    } else if e.downcast_ref::<InputError>().is_some() {
        ("InvalidInput", 2)
    } else {
        ("Io", 1)
    };
    let msg = json!({"error": kind, "message": format!("{e:#}")});
    eprintln!("{msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o).map(|_| o.success)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}

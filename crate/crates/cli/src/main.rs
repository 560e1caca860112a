//! `dirac-bounds`: constants, certificates and discretized channel experiments.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_core::certify::{certify_target, TARGETS};
use dirac_core::constants::{curve_samples, lt_constant, write_curve_csv, ConstantsReport, LLambdaTable};
use dirac_core::special::ChannelIndex;
use dirac_core::spectral::angular::{scalar_sampler, virtual_level_predicate, w_profile, AngularOrders, Verdict, JS};
use dirac_core::spectral::furry::{furry_operator, virtual_level_grid};
use dirac_core::spectral::potential::{Family, PotentialProfile};
use dirac_core::spectral::rayleigh::{rayleigh_check, rayleigh_check_family};
use dirac_core::spectral::transforms::{hankel_unitary, mellin_numeric};
use dirac_core::spectral::{channel_operator, RadialGrid};
use dirac_core::Error;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Extra bisection depth requested through the environment.
const PRECISION_ENV: &str = "DIRAC_BOUNDS_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "dirac-bounds", version, about = "Spectral-bound constants of the Coulomb-Dirac operator")]
struct Cli {
    /// Worker threads for grid and certification jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All constants at one coupling.
    Constants {
        #[arg(long)]
        nu: f64,
        #[command(flatten)]
        out: Output,
    },
    /// `C_ν` sampled on [0, 1] as CSV `nu,c_nu`.
    Curve {
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interval certificate for one proof obligation, or all of them.
    Certify {
        #[arg(long, default_value = "all")]
        target: String,
        #[arg(long, default_value_t = 40)]
        depth: u32,
        #[arg(long, default_value_t = 50.0)]
        tau_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lieb-Thirring constant for the moment `γ`.
    Lt {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Mellin or Hankel transform of a potential profile.
    Transform {
        #[arg(long, value_enum, default_value_t = TransformKind::Mellin)]
        kind: TransformKind,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Largest `τ` (Mellin) or `ϱ` (Hankel) sampled.
        #[arg(long, default_value_t = 5.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
        #[command(flatten)]
        pot: Potential,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Eigenvalues of a discretized channel operator.
    Spectrum {
        #[arg(long, default_value_t = 0.0)]
        nu: f64,
        #[arg(long = "M", default_value_t = 0.0)]
        mass: f64,
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Worst Rayleigh ratio against `√(−Δ)` on a massless channel.
    Rayleigh {
        #[arg(long)]
        nu: f64,
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// At `ν = 1`, check the fractional family with this `λ`.
        #[arg(long)]
        lambda: Option<f64>,
        /// Length scale of the fractional family.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Negative eigenvalues of the projected operator `P₊(|D| − v)P₊`.
    Furry {
        #[arg(long)]
        nu: f64,
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        pot: Potential,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Sufficient condition for a bound state at critical coupling, per `j`.
    VirtualLevel {
        #[command(flatten)]
        pot: Potential,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 64)]
        theta_order: usize,
        #[arg(long, default_value_t = 64)]
        phi_order: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformKind {
    Mellin,
    Hankel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ChannelArgs {
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    s: f64,
    /// Magnetic number; defaults to `l + s`.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
}

impl ChannelArgs {
    fn index(&self) -> Result<ChannelIndex, Error> {
        ChannelIndex::new(self.l, self.m.unwrap_or(self.l as f64 + self.s), self.s)
    }
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Number of radial nodes.
    #[arg(long = "grid")]
    n: Option<usize>,
    #[arg(long)]
    rmin: Option<f64>,
    #[arg(long)]
    rmax: Option<f64>,
}

impl GridArgs {
    fn log(&self, n: usize, rmin: f64, rmax: f64) -> Result<RadialGrid, Error> {
        RadialGrid::log_uniform(self.n.unwrap_or(n), self.rmin.unwrap_or(rmin), self.rmax.unwrap_or(rmax))
    }
}

#[derive(Args, Debug)]
struct Potential {
    /// Built-in family, or `file` to read `--pot-file`.
    #[arg(long, default_value = "exp")]
    pot: String,
    #[arg(long, default_value_t = 1.0)]
    strength: f64,
    /// CSV with columns `r,v`.
    #[arg(long)]
    pot_file: Option<PathBuf>,
}

impl Potential {
    fn profile(&self) -> Result<PotentialProfile, Error> {
        if self.pot == "file" {
            let path = self.pot_file.as_ref().ok_or_else(|| Error::Input("--pot file needs --pot-file PATH".into()))?;
            return PotentialProfile::from_csv(path);
        }
        PotentialProfile::family(self.pot.parse::<Family>()?, self.strength)
    }
}

enum Failure {
    Usage(String),
    Certification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn check_nu(nu: f64) -> Result<(), Failure> {
    if (0.0..=1.0).contains(&nu) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--nu {nu} must lie in [0, 1]")))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                so.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

/// Header plus one row from a flat JSON object.
fn flat_csv(v: &serde_json::Value) -> Result<String, Failure> {
    let obj = v.as_object().ok_or_else(|| Failure::Usage("report is not a flat record".into()))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(obj.keys()).map_err(|e| Failure::Usage(e.to_string()))?;
    let cell = |x: &serde_json::Value| match x {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    w.write_record(obj.values().map(cell)).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("utf8"))
}

fn record(v: serde_json::Value, out: &Output) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(&v).expect("json"),
        Format::Csv => flat_csv(&v)?,
    };
    emit(&text, out.out.as_ref())
}

fn extra_depth() -> Result<u32, Failure> {
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("{PRECISION_ENV}={s} is not a non-negative integer"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(k) = cli.jobs {
        if k == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Constants { nu, out } => {
            check_nu(nu)?;
            record(serde_json::to_value(ConstantsReport::new(nu)?).expect("json"), &out)
        }
        Command::Curve { n, out } => {
            let samples = curve_samples(n)?;
            let mut buf = Vec::new();
            write_curve_csv(&samples, &mut buf)?;
            emit(std::str::from_utf8(&buf).expect("utf8"), out.as_ref())
        }
        Command::Certify { target, depth, tau_max, out } => {
            if !TARGETS.contains(&target.as_str()) {
                return Err(Failure::Usage(format!("unknown target '{target}'; expected one of {}", TARGETS.join(", "))));
            }
            if !(tau_max > 0.0 && tau_max.is_finite()) {
                return Err(Failure::Usage(format!("--tau-max {tau_max} must be positive")));
            }
            let cert = certify_target(&target, depth + extra_depth()?, tau_max).expect("target checked");
            emit(&cert.to_json(), out.as_ref())?;
            if cert.status.is_certified() {
                Ok(())
            } else {
                eprintln!("{target}: {}", cert.status);
                Err(Failure::Certification)
            }
        }
        Command::Lt { nu, gamma, out } => {
            check_nu(nu)?;
            let table = LLambdaTable::synthetic_unit();
            let lt = lt_constant(nu, gamma, &table)?;
            let provenance = if nu < 1.0 { None } else { Some(table.provenance.clone()) };
            record(json!({"nu": nu, "gamma": gamma, "value": lt.value, "argmin": lt.argmin, "table": provenance}), &out)
        }
        Command::Transform { kind, l, tau_max, points, pot, grid, out } => {
            let g = grid.log(2048, 1e-8, 60.0)?;
            let profile = pot.profile()?;
            let psi = g.sample(|r| profile.eval(r));
            if points < 2 {
                return Err(Failure::Usage("--points must be at least 2".into()));
            }
            let mut rows = Vec::with_capacity(points);
            for k in 0..points {
                let x = match kind {
                    TransformKind::Mellin => -tau_max + 2.0 * tau_max * k as f64 / (points - 1) as f64,
                    TransformKind::Hankel => tau_max * (k + 1) as f64 / points as f64,
                };
                let (re, im, warn) = match kind {
                    TransformKind::Mellin => {
                        let q = mellin_numeric(&g, &psi, x)?;
                        (q.value.re, q.value.im, q.warning)
                    }
                    TransformKind::Hankel => {
                        let q = hankel_unitary(l, &g, &psi, x)?;
                        (q.value, 0.0, q.warning)
                    }
                };
                rows.push((x, re, im, warn.map(|w| format!("{w:?}"))));
            }
            let text = match out.format {
                Format::Csv => {
                    let mut s = String::from("x,re,im\n");
                    for (x, re, im, _) in &rows {
                        s.push_str(&format!("{x},{re},{im}\n"));
                    }
                    s
                }
                Format::Json => to_json(&rows
                    .iter()
                    .map(|(x, re, im, w)| json!({"x": x, "re": re, "im": im, "warning": w}))
                    .collect::<Vec<_>>()),
            };
            emit(&text, out.out.as_ref())
        }
        Command::Spectrum { nu, mass, channel, grid, out } => {
            check_nu(nu)?;
            let ch = channel.index()?;
            let g = grid.log(1024, 1e-8, 100.0)?;
            let op = channel_operator(nu, ch, mass, &g)?;
            let e = op.eigen();
            let min_abs = e.min_abs();
            let text = match out.format {
                Format::Csv => {
                    let mut s = String::from("index,eigenvalue\n");
                    for (i, v) in e.values.iter().enumerate() {
                        s.push_str(&format!("{i},{v}\n"));
                    }
                    eprintln!("min |eig| = {min_abs}");
                    s
                }
                Format::Json => to_json(&json!({
                    "nu": nu, "l": ch.l, "s": ch.s.value(), "mass": mass, "n": g.len(),
                    "extended": op.extended, "min_abs": min_abs, "eigenvalues": e.values,
                })),
            };
            emit(&text, out.out.as_ref())
        }
        Command::Rayleigh { nu, channel, grid, lambda, scale, trials, seed, out } => {
            check_nu(nu)?;
            let ch = channel.index()?;
            let g = grid.log(1024, 1e-8, 100.0)?;
            let report = match lambda {
                Some(lam) => {
                    if nu != 1.0 {
                        return Err(Failure::Usage("--lambda applies only at --nu 1".into()));
                    }
                    rayleigh_check_family(ch, &g, lam, scale, &LLambdaTable::synthetic_unit(), trials, seed)?
                }
                None => rayleigh_check(nu, ch, &g, trials, seed)?,
            };
            record(serde_json::to_value(report).expect("json"), &out)
        }
        Command::Furry { nu, channel, pot, grid, out } => {
            check_nu(nu)?;
            let ch = channel.index()?;
            let g = match (grid.rmin, grid.rmax) {
                (None, None) => virtual_level_grid(grid.n.unwrap_or(1024))?,
                _ => grid.log(1024, 1e-6, 1e6)?,
            };
            let f = furry_operator(nu, ch, &pot.profile()?, &g)?;
            match out.format {
                Format::Json => emit(&to_json(&f), out.out.as_ref()),
                Format::Csv => {
                    let mut s = String::from("index,eigenvalue\n");
                    for (i, v) in f.eigenvalues.iter().enumerate() {
                        s.push_str(&format!("{i},{v}\n"));
                    }
                    eprintln!("negatives = {}, clr_bound = {:?}", f.negatives, f.clr_bound);
                    emit(&s, out.out.as_ref())
                }
            }
        }
        Command::VirtualLevel { pot, grid, theta_order, phi_order, out } => {
            let profile = pot.profile()?;
            let g = grid.log(400, 1e-6, 80.0)?;
            if theta_order == 0 || phi_order == 0 {
                return Err(Failure::Usage("angular orders must be positive".into()));
            }
            let orders = AngularOrders { theta: theta_order, phi: phi_order };
            let mut records = Vec::with_capacity(JS.len());
            for j in JS {
                let w = w_profile(scalar_sampler(|r| profile.eval(r)), j, &g, orders)?;
                records.push(virtual_level_predicate(&w));
            }
            let verdict = if records.iter().any(|r| r.verdict == Verdict::NegativeEigenvalueGuaranteed) {
                Verdict::NegativeEigenvalueGuaranteed
            } else if records.iter().any(|r| r.verdict == Verdict::Inconclusive) {
                Verdict::Inconclusive
            } else {
                Verdict::NotGuaranteed
            };
            match out.format {
                Format::Json => emit(&to_json(&json!({"verdict": verdict, "records": records})), out.out.as_ref()),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &records {
                        w.serialize(CsvRecord::from(r)).map_err(|e| Failure::Usage(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
                    emit(std::str::from_utf8(&bytes).expect("utf8"), out.out.as_ref())
                }
            }
        }
    }
}

#[derive(serde::Serialize)]
struct CsvRecord {
    j1: i8,
    j2: i8,
    sign_integral: f64,
    abs_integral: f64,
    norm_integral: f64,
    error_estimate: f64,
    tail_fraction: f64,
    verdict: Verdict,
}

impl From<&dirac_core::spectral::angular::VirtualLevelRecord> for CsvRecord {
    fn from(r: &dirac_core::spectral::angular::VirtualLevelRecord) -> Self {
        CsvRecord {
            j1: r.j.0,
            j2: r.j.1,
            sign_integral: r.sign_integral,
            abs_integral: r.abs_integral,
            norm_integral: r.norm_integral,
            error_estimate: r.error_estimate,
            tail_fraction: r.tail_fraction,
            verdict: r.verdict,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Certification) => ExitCode::from(2),
    }
}

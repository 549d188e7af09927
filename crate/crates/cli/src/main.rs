use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opuc::examples::{arc_reflection_exact, elliott_ratio_check, arc_expansion, ArcMeasureParams, JacobiParams};
use opuc::oracle::{reconstruct_arc_mass, trig_moments, verblunsky_from_moments, TrigMoments};
use opuc::{
    arc_from_a, classify_conditions, closed_eval, envelope_check, krein_check, parse_sequence, support_report,
    szego, Complex, OpucError, Sequence,
};

mod measure;
mod output;
mod selftest;

use output::{emit, json, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Lib(OpucError),
    /// Self-test ran but some check failed.
    Check(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 2,
            CliError::Check(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Check(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<OpucError> for CliError {
    fn from(e: OpucError) -> Self {
        CliError::Lib(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "opuc", version, about = "Orthogonal polynomials on the unit circle from reflection coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Read and print angles in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
}

impl Common {
    fn angle_in(&self, x: f64) -> f64 {
        if self.degrees { x.to_radians() } else { x }
    }

    fn angle_out(&self, x: f64) -> f64 {
        if self.degrees { x.to_degrees() } else { x }
    }

    fn scale(&self) -> f64 {
        self.angle_in(1.0)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Values of φ_n, φ*_n, ψ_n and κ_n on a grid of the unit circle.
    Eval {
        /// Coefficient spec, e.g. const:0.5, zhedanov:q=0.5, file:coeffs.csv.
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        n: u64,
        /// Number of equally spaced angles in [0, 2π).
        #[arg(long, default_value_t = 64)]
        theta_grid: usize,
        /// Explicit angles, comma separated (overrides --theta-grid).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form table for a constant coefficient a, plus the envelope check on its arc.
    Geronimus {
        /// a as re[,im].
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 64)]
        theta_grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Summability conditions on the perturbation Φ_n - a.
    Conditions {
        #[arg(long)]
        coeffs: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        /// Rotation angle of the reference arc.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        tau_angle: f64,
        #[arg(long = "N", default_value_t = 2000)]
        big_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Zeros of Φ_N and their position relative to the arc of a.
    Spectrum {
        #[arg(long)]
        coeffs: String,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Option<Vec<f64>>,
        /// Distance to the circle below which a zero counts as on it.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Rotation, Geronimus-type condition and singularity diagnostics.
    Krein {
        #[arg(long)]
        coeffs: String,
        #[arg(long = "N")]
        big_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exact reflection coefficients of the arc weight against the four-term expansion.
    Example17 {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 1)]
        nmin: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized Jacobi ratio at x > 1 against its two-term expansion.
    Lemma18 {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 2)]
        nmin: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Moment tables, coefficient recovery and arc-mass reconstruction.
    Oracle {
        #[command(subcommand)]
        action: OracleCmd,
    },
    /// Run the invariant suite; exit 0 only if every check passes.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Trigonometric moments c_k, |k| ≤ order, as CSV `k,re,im`.
    Moments {
        /// lebesgue, mass:theta=..., geronimus:a=re[,im], jacobi-arc:alpha=..,gamma=..,delta=..
        #[arg(long)]
        measure: String,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Reflection coefficients from a measure or a moment table, as CSV `n,re,im`.
    Verblunsky {
        #[arg(long, conflicts_with = "moments", required_unless_present = "moments")]
        measure: Option<String>,
        /// Moment table written by `oracle moments`.
        #[arg(long)]
        moments: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// (1/2π)∫ |φ_n|^{-2} over [theta1, theta2].
    Reconstruct {
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta2: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn complex_arg(v: &[f64], name: &str) -> Res<Complex<f64>> {
    match v {
        [re] => Ok(Complex::new(*re, 0.0)),
        [re, im] => Ok(Complex::new(*re, *im)),
        _ => Err(CliError::Usage(format!("--{name} expects re or re,im"))),
    }
}

fn positive(v: usize, name: &str) -> Res<()> {
    if v == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect()
}

const STATE_HEADER: [&str; 8] = [
    "theta", "re_phi", "im_phi", "re_phistar", "im_phistar", "re_psi", "im_psi", "kappa",
];

#[derive(Serialize)]
struct StateRow {
    theta: f64,
    phi: [f64; 2],
    phi_star: [f64; 2],
    psi: [f64; 2],
    kappa: f64,
}

impl StateRow {
    fn new(theta: f64, s: &szego::SzegoState<f64>) -> Self {
        Self {
            theta,
            phi: [s.phi.re, s.phi.im],
            phi_star: [s.phi_star.re, s.phi_star.im],
            psi: [s.psi.re, s.psi.im],
            kappa: s.kappa,
        }
    }

    fn cells(&self) -> [f64; 8] {
        [
            self.theta, self.phi[0], self.phi[1], self.phi_star[0], self.phi_star[1], self.psi[0],
            self.psi[1], self.kappa,
        ]
    }
}

fn state_csv(rows: &[StateRow]) -> String {
    let mut t = Table::new(&STATE_HEADER);
    for r in rows {
        t.row(&r.cells());
    }
    t.into_string()
}

#[derive(Serialize)]
struct StateTable {
    schema_version: u32,
    n: u64,
    rows: Vec<StateRow>,
}

#[derive(Serialize)]
struct GeronimusOut {
    schema_version: u32,
    a: [f64; 2],
    n: u64,
    rows: Vec<StateRow>,
    envelope: opuc::EnvelopeReport<f64>,
}

#[derive(Serialize)]
struct ResidualRow {
    n: u64,
    exact: f64,
    expansion: f64,
    residual: f64,
    n3residual: f64,
}

#[derive(Serialize)]
struct ResidualTable {
    schema_version: u32,
    rows: Vec<ResidualRow>,
}

fn residual_row(n: u64, exact: f64, expansion: f64) -> ResidualRow {
    let residual = exact - expansion;
    ResidualRow {
        n,
        exact,
        expansion,
        residual,
        n3residual: residual * (n as f64).powi(3),
    }
}

fn residual_out(rows: Vec<ResidualRow>, format: Format) -> Res<String> {
    match format {
        Format::Json => json(&ResidualTable {
            schema_version: 1,
            rows,
        }),
        Format::Csv => {
            let mut t = Table::new(&["n", "exact", "expansion", "residual", "n3residual"]);
            for r in &rows {
                t.indexed(r.n, &[r.exact, r.expansion, r.residual, r.n3residual]);
            }
            Ok(t.into_string())
        }
    }
}

fn range(nmin: u64, nmax: u64, floor: u64) -> Res<std::ops::RangeInclusive<u64>> {
    if nmin < floor || nmin > nmax {
        return Err(CliError::Usage(format!(
            "need {floor} <= --nmin <= --nmax, got {nmin} and {nmax}"
        )));
    }
    Ok(nmin..=nmax)
}

#[derive(Serialize)]
struct Mass {
    schema_version: u32,
    n: usize,
    theta1: f64,
    theta2: f64,
    mass: f64,
}

fn coefficient_csv(values: &[Complex<f64>]) -> String {
    let mut t = Table::new(&["n", "re", "im"]);
    for (k, v) in values.iter().enumerate() {
        t.indexed(k as u64 + 1, &[v.re, v.im]);
    }
    t.into_string()
}

fn sequence(spec: &str) -> Res<Sequence> {
    Ok(parse_sequence::<f64>(spec)?)
}

fn run(cmd: Command) -> Res<()> {
    match cmd {
        Command::Eval {
            coeffs,
            n,
            theta_grid,
            theta,
            format,
            common,
        } => {
            let seq = sequence(&coeffs)?;
            let angles: Vec<f64> = if theta.is_empty() {
                positive(theta_grid, "theta-grid")?;
                grid(theta_grid)
            } else {
                theta.iter().map(|&t| common.angle_in(t)).collect()
            };
            let rows = angles
                .iter()
                .map(|&t| {
                    let s = szego::evaluate(&seq, n, Complex::from_polar(1.0, t))?;
                    Ok(StateRow::new(common.angle_out(t), &s))
                })
                .collect::<Res<Vec<_>>>()?;
            let text = match format {
                Format::Csv => state_csv(&rows),
                Format::Json => json(&StateTable {
                    schema_version: 1,
                    n,
                    rows,
                })?,
            };
            emit(&text, common.output.as_deref())
        }
        Command::Geronimus {
            a,
            n,
            theta_grid,
            format,
            common,
        } => {
            let a = complex_arg(&a, "a")?;
            positive(theta_grid, "theta-grid")?;
            let angles = grid(theta_grid);
            let rows = angles
                .iter()
                .map(|&t| {
                    let s = closed_eval(a, n, Complex::from_polar(1.0, t))?;
                    Ok(StateRow::new(common.angle_out(t), &s))
                })
                .collect::<Res<Vec<_>>>()?;
            let text = match format {
                Format::Csv => state_csv(&rows),
                Format::Json => {
                    let arc = arc_from_a(a, Complex::new(1.0, 0.0))?.grid(0.0, theta_grid);
                    let mut envelope = envelope_check(a, n, &arc)?;
                    envelope.c_ratio_at.1 = common.angle_out(envelope.c_ratio_at.1);
                    json(&GeronimusOut {
                        schema_version: 1,
                        a: [a.re, a.im],
                        n,
                        rows,
                        envelope,
                    })?
                }
            };
            emit(&text, common.output.as_deref())
        }
        Command::Conditions {
            coeffs,
            a,
            tau_angle,
            big_n,
            common,
        } => {
            let seq = sequence(&coeffs)?;
            let a = complex_arg(&a, "a")?;
            let tau = Complex::from_polar(1.0, common.angle_in(tau_angle));
            let r = classify_conditions(&seq, a, tau, big_n)?;
            emit(&json(&r)?, common.output.as_deref())
        }
        Command::Spectrum {
            coeffs,
            big_n,
            a,
            tol,
            common,
        } => {
            let seq = sequence(&coeffs)?;
            let a = a.map(|v| complex_arg(&v, "a")).transpose()?;
            let r = support_report(&seq, a, big_n, tol)?;
            emit(&json(&r)?, common.output.as_deref())
        }
        Command::Krein {
            coeffs,
            big_n,
            common,
        } => {
            let r = krein_check(&sequence(&coeffs)?, big_n)?;
            emit(&json(&r)?, common.output.as_deref())
        }
        Command::Example17 {
            alpha,
            gamma,
            delta,
            nmax,
            nmin,
            format,
            common,
        } => {
            let p = ArcMeasureParams::new(common.angle_in(alpha), gamma, delta)?;
            let rows = range(nmin, nmax, 1)?
                .map(|n| Ok(residual_row(n, arc_reflection_exact(&p, n)?, arc_expansion(&p, n)?)))
                .collect::<Res<Vec<_>>>()?;
            emit(&residual_out(rows, format)?, common.output.as_deref())
        }
        Command::Lemma18 {
            a,
            b,
            x,
            nmax,
            nmin,
            format,
            common,
        } => {
            let p = JacobiParams::new(a, b)?;
            let rows = range(nmin, nmax, 2)?
                .map(|n| {
                    let r = elliott_ratio_check(&p, x, n)?;
                    Ok(residual_row(n, r.exact, r.expansion))
                })
                .collect::<Res<Vec<_>>>()?;
            emit(&residual_out(rows, format)?, common.output.as_deref())
        }
        Command::Oracle { action } => oracle(action),
        Command::Selftest { common } => {
            let (text, failed) = selftest::run();
            emit(&text, common.output.as_deref())?;
            if failed > 0 {
                return Err(CliError::Check(format!("selftest: {failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn oracle(action: OracleCmd) -> Res<()> {
    match action {
        OracleCmd::Moments {
            measure,
            order,
            common,
        } => {
            let m = measure::parse_measure(&measure, common.scale())?;
            let mom = trig_moments(&m, order)?;
            let mut t = Table::new(&["k", "re", "im"]);
            for k in -(order as i64)..=order as i64 {
                let c = mom.get(k);
                t.indexed(k, &[c.re, c.im]);
            }
            emit(&t.into_string(), common.output.as_deref())
        }
        OracleCmd::Verblunsky {
            measure,
            moments,
            n,
            common,
        } => {
            positive(n, "n")?;
            let mom = match (measure, moments) {
                (Some(spec), _) => trig_moments(&measure::parse_measure(&spec, common.scale())?, n)?,
                (None, Some(path)) => {
                    let f = std::fs::File::open(&path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    TrigMoments::<f64>::read_csv(f)?
                }
                (None, None) => return Err(CliError::Usage("give --measure or --moments".into())),
            };
            let inv = verblunsky_from_moments(&mom, n)?;
            emit(&coefficient_csv(&inv.values()), common.output.as_deref())
        }
        OracleCmd::Reconstruct {
            coeffs,
            n,
            theta1,
            theta2,
            common,
        } => {
            let seq = sequence(&coeffs)?;
            let arc = (common.angle_in(theta1), common.angle_in(theta2));
            let mass = reconstruct_arc_mass(&seq, arc, n)?;
            emit(
                &json(&Mass {
                    schema_version: 1,
                    n,
                    theta1,
                    theta2,
                    mass,
                })?,
                common.output.as_deref(),
            )
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
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

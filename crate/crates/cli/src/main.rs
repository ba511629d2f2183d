//! `juttner` — command-line front end for the kinetic equation of state.
//!
//! Subcommands: `bessel`, `table`, `invert`, `sound-speed`, `verify`.
//! Every command supports `--format csv` (default) and `--format json`, with
//! identical values in both encodings and byte-identical output for
//! identical invocations.
//!
//! Exit codes: 0 success, 2 domain/usage error, 3 inversion failure,
//! 4 verification failure, 5 verification inconclusive at working precision.

mod output;

use clap::{Parser, Subcommand};

use juttner_eos::bessel::{self, BesselError};
use juttner_eos::eos::{self, EosError, PhysicalConstants, ThermoState};
use juttner_eos::verify::{self, CheckKind, GridSpec};

use output::{Field, Format, Output};

const EXIT_DOMAIN: i32 = 2;
const EXIT_INVERSION: i32 = 3;
const EXIT_VERIFY_FAIL: i32 = 4;
const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "juttner",
    version,
    about = "Relativistic kinetic equation of state of a Jüttner gas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct ConstantFlags {
    /// Particle rest mass.
    #[arg(long, default_value_t = 1.0)]
    m0: f64,
    /// Speed of light.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Boltzmann constant.
    #[arg(long = "kB", default_value_t = 1.0)]
    k_b: f64,
    /// Planck constant.
    #[arg(long, default_value_t = 1.0)]
    h: f64,
}

impl ConstantFlags {
    fn build(&self) -> Result<PhysicalConstants, EosError> {
        PhysicalConstants::new(self.m0, self.c, self.k_b, self.h)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate K_j(beta) in plain, scaled and log form.
    Bessel {
        /// Order j in {0, 1, 2}.
        #[arg(long)]
        order: u8,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Tabulate the thermodynamic state over a log-spaced beta grid.
    Table {
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long)]
        points: usize,
        /// Proper number density for the tabulation.
        #[arg(long, default_value_t = 1.0)]
        n: f64,
        #[command(flatten)]
        constants: ConstantFlags,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Recover (n, beta) from entropy per particle and energy density.
    Invert {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        rho: f64,
        /// Residual tolerance of the inversion.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        constants: ConstantFlags,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Squared sound speed over c², at one beta or over a grid.
    SoundSpeed {
        /// Evaluate at a single beta.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        beta_min: Option<f64>,
        #[arg(long)]
        beta_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Certify the equation-of-state inequalities over a beta grid.
    Verify {
        #[arg(long, default_value_t = 1e-3)]
        beta_min: f64,
        #[arg(long, default_value_t = 1e3)]
        beta_max: f64,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        /// Comma-separated subset of checks (default: all of conjecture1,
        /// conjecture2, reformulation, kunik, ratio-sandwich, envelopes,
        /// polynomial, taylor).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Emit every per-point record instead of the per-check summary.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Debug)]
enum CliError {
    Eos(EosError),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Eos(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<EosError> for CliError {
    fn from(e: EosError) -> Self {
        CliError::Eos(e)
    }
}

impl From<BesselError> for CliError {
    fn from(e: BesselError) -> Self {
        CliError::Eos(EosError::Bessel(e))
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_DOMAIN,
            CliError::Eos(EosError::BracketFailure { .. })
            | CliError::Eos(EosError::ConvergenceFailure { .. }) => EXIT_INVERSION,
            CliError::Eos(_) => EXIT_DOMAIN,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Bessel { order, beta, format } => {
            let v = bessel::bessel_k(order, beta)?;
            let out = Output {
                command: "bessel",
                params: vec![
                    ("order", Field::UInt(order as u64)),
                    ("beta", Field::Real(beta)),
                ],
                columns: vec!["order", "beta", "value", "scaled_value", "log_value"],
                rows: vec![vec![
                    Field::UInt(v.order as u64),
                    v.argument.into(),
                    v.value.into(),
                    v.scaled_value.into(),
                    v.log_value.into(),
                ]],
            };
            print!("{}", out.render(format));
            Ok(0)
        }

        Command::Table {
            beta_min,
            beta_max,
            points,
            n,
            constants,
            format,
        } => {
            let consts = constants.build()?;
            let grid = GridSpec::new(beta_min, beta_max, points)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut rows = Vec::with_capacity(points);
            for beta in grid.betas() {
                let s = ThermoState::new(n, beta, &consts)?;
                rows.push(vec![
                    s.beta.into(),
                    s.theta.into(),
                    s.p.into(),
                    s.rho.into(),
                    s.eta.into(),
                    s.psi.into(),
                    s.cs2.into(),
                ]);
            }
            let out = Output {
                command: "table",
                params: vec![
                    ("beta_min", beta_min.into()),
                    ("beta_max", beta_max.into()),
                    ("points", Field::UInt(points as u64)),
                    ("n", n.into()),
                    ("m0", consts.m0.into()),
                    ("c", consts.c.into()),
                    ("kB", consts.k_b.into()),
                    ("h", consts.h.into()),
                ],
                columns: vec!["beta", "theta", "p", "rho", "eta", "psi", "cs2"],
                rows,
            };
            print!("{}", out.render(format));
            Ok(0)
        }

        Command::Invert {
            eta,
            rho,
            tol,
            constants,
            format,
        } => {
            let consts = constants.build()?;
            let inv = eos::invert_map(eta, rho, &consts, tol)?;
            let p = eos::pressure(inv.n, inv.beta, &consts)?;
            let out = Output {
                command: "invert",
                params: vec![
                    ("eta", eta.into()),
                    ("rho", rho.into()),
                    ("tol", tol.into()),
                    ("m0", consts.m0.into()),
                    ("c", consts.c.into()),
                    ("kB", consts.k_b.into()),
                    ("h", consts.h.into()),
                ],
                columns: vec![
                    "n",
                    "beta",
                    "p",
                    "residual_eta",
                    "residual_rho",
                    "iterations",
                    "bracket_used",
                ],
                rows: vec![vec![
                    inv.n.into(),
                    inv.beta.into(),
                    p.into(),
                    inv.residual_eta.into(),
                    inv.residual_rho.into(),
                    Field::UInt(inv.iterations as u64),
                    inv.bracket_used.into(),
                ]],
            };
            print!("{}", out.render(format));
            Ok(0)
        }

        Command::SoundSpeed {
            beta,
            beta_min,
            beta_max,
            points,
            format,
        } => {
            let (betas, params) = match (beta, beta_min, beta_max, points) {
                (Some(b), None, None, None) => {
                    (vec![b], vec![("beta", Field::Real(b))])
                }
                (None, Some(lo), Some(hi), Some(pts)) => {
                    let grid = GridSpec::new(lo, hi, pts)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    (
                        grid.betas(),
                        vec![
                            ("beta_min", Field::Real(lo)),
                            ("beta_max", Field::Real(hi)),
                            ("points", Field::UInt(pts as u64)),
                        ],
                    )
                }
                _ => {
                    return Err(CliError::Usage(
                        "pass either --beta, or all of --beta-min/--beta-max/--points".into(),
                    ))
                }
            };
            let mut rows = Vec::with_capacity(betas.len());
            for b in betas {
                let cs2 = eos::sound_speed_squared(b)?;
                rows.push(vec![b.into(), cs2.into(), cs2.sqrt().into()]);
            }
            let out = Output {
                command: "sound-speed",
                params,
                columns: vec!["beta", "cs2", "cs_over_c"],
                rows,
            };
            print!("{}", out.render(format));
            Ok(0)
        }

        Command::Verify {
            beta_min,
            beta_max,
            points,
            checks,
            full,
            format,
        } => {
            let selected: Vec<CheckKind> = match &checks {
                None => CheckKind::ALL.to_vec(),
                Some(names) => {
                    let mut list = Vec::new();
                    for name in names {
                        let kind = CheckKind::parse(name).ok_or_else(|| {
                            CliError::Usage(format!(
                                "unknown check '{name}' (expected one of: {})",
                                CheckKind::ALL.map(|c| c.name()).join(", ")
                            ))
                        })?;
                        if !list.contains(&kind) {
                            list.push(kind);
                        }
                    }
                    list
                }
            };
            let grid = GridSpec::new(beta_min, beta_max, points)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let report = verify::sweep(&grid, &selected);

            let check_names: Vec<String> =
                selected.iter().map(|c| c.name().to_owned()).collect();
            let params = vec![
                ("beta_min", Field::Real(beta_min)),
                ("beta_max", Field::Real(beta_max)),
                ("points", Field::UInt(points as u64)),
                ("checks", Field::Str(check_names.join(","))),
                ("full", Field::Bool(full)),
            ];

            let out = if full {
                let rows = report
                    .records
                    .iter()
                    .map(|r| {
                        vec![
                            Field::Str(r.check.name().to_owned()),
                            r.beta.into(),
                            r.value.into(),
                            r.margin.into(),
                            r.pass.into(),
                            r.inconclusive.into(),
                        ]
                    })
                    .collect();
                Output {
                    command: "verify",
                    params,
                    columns: vec!["check", "beta", "value", "margin", "pass", "inconclusive"],
                    rows,
                }
            } else {
                let rows = selected
                    .iter()
                    .filter_map(|c| {
                        let worst = report.worst_margin_per_check.get(c.name())?;
                        let of_check =
                            report.records.iter().filter(|r| r.check == *c);
                        let points = of_check.clone().count() as u64;
                        let failures =
                            of_check.clone().filter(|r| !r.pass && !r.inconclusive).count() as u64;
                        let inconclusive =
                            of_check.filter(|r| r.inconclusive).count() as u64;
                        Some(vec![
                            Field::Str(c.name().to_owned()),
                            Field::UInt(points),
                            Field::UInt(failures),
                            Field::UInt(inconclusive),
                            worst.beta.into(),
                            worst.margin.into(),
                        ])
                    })
                    .collect();
                Output {
                    command: "verify",
                    params,
                    columns: vec![
                        "check",
                        "points",
                        "failures",
                        "inconclusive",
                        "worst_beta",
                        "worst_margin",
                    ],
                    rows,
                }
            };
            print!("{}", out.render(format));

            if report.hard_failures() > 0 {
                Ok(EXIT_VERIFY_FAIL)
            } else if report.inconclusive_count() > 0 {
                Ok(EXIT_INCONCLUSIVE)
            } else {
                Ok(0)
            }
        }
    }
}

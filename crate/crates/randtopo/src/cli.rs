//! Command-line configuration and dispatch.
//!
//! Every subcommand accepts `--config FILE`, a JSON object with the same
//! keys as the long flags (`R` for `--R`, lists as arrays). Flags given on
//! the command line override the file; anything left unset takes the
//! documented default.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use randtopo_core::homology::Signature;
use serde::{Deserialize, Serialize};

use crate::experiments::{
    self, ArnoldParams, CouplingParams, IgsParams, Manifold, MeasureParams, PositivityParams,
    SweepParams, UniversalityParams,
};
use crate::report::{self, Report, Status, Table};
use crate::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "RANDTOPO_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "randtopo",
    version,
    about = "Monte Carlo estimates of the limiting homotopy measure of random geometric complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Windowed component densities and signature ratios over a schedule of R
    Measure(MeasureArgs),
    /// Integral-geometry sandwich on sampled instances
    Igs(IgsArgs),
    /// Torus and sphere empirical measures against each other and the plane
    Universality(UniversalityArgs),
    /// Rescaled local counts on a manifold against the Poisson model
    Coupling(CouplingArgs),
    /// Frequencies of target signatures
    Positivity(PositivityArgs),
    /// Averaged global Betti numbers per unit volume
    Arnold(ArnoldArgs),
    /// Measure and largest-component fraction over a grid of alpha
    Sweep(SweepArgs),
}

macro_rules! command_args {
    ($(#[$m:meta])* $name:ident { $($(#[$fm:meta])* $field:ident: $ty:ty,)* }) => {
        $(#[$m])*
        #[derive(Args, Debug, Clone, Default, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $($(#[$fm])* pub $field: Option<$ty>,)*
            /// Trials per configuration
            #[arg(long)]
            pub trials: Option<u64>,
            /// Master seed
            #[arg(long)]
            pub seed: Option<u64>,
            /// Worker threads, 0 for all cores; never changes the results
            #[arg(long)]
            pub threads: Option<usize>,
            /// Output directory [default: $RANDTOPO_OUTPUT_DIR or .]
            #[arg(long)]
            pub out: Option<PathBuf>,
            /// JSON config file; flags override its values
            #[arg(long)]
            #[serde(skip)]
            pub config: Option<PathBuf>,
        }

        impl $name {
            fn with_config_file(mut self) -> Result<Self> {
                let Some(path) = self.config.clone() else {
                    return Ok(self);
                };
                let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                let file: Self = serde_json::from_str(&text)
                    .map_err(|source| Error::ConfigFile { path, source })?;
                $(self.$field = self.$field.or(file.$field);)*
                self.trials = self.trials.or(file.trials);
                self.seed = self.seed.or(file.seed);
                self.threads = self.threads.or(file.threads);
                self.out = self.out.or(file.out);
                Ok(self)
            }
        }
    };
}

command_args!(MeasureArgs {
    /// Dimension [default: 2]
    #[arg(long)]
    d: usize,
    /// Ball radius [default: 0.5]
    #[arg(long)]
    alpha: f64,
    /// Increasing window radii, comma separated [default: 10,20,40]
    #[arg(long = "R", value_delimiter = ',')]
    #[serde(rename = "R")]
    radii: Vec<f64>,
});

command_args!(IgsArgs {
    /// Dimension [default: 2]
    #[arg(long)]
    d: usize,
    /// Ball radius [default: 1]
    #[arg(long)]
    alpha: f64,
    /// Window radius [default: 20]
    #[arg(long = "R")]
    #[serde(rename = "R")]
    radius: f64,
    /// Probe radius, alpha < r < R [default: 5]
    #[arg(long)]
    r: f64,
    /// Monte Carlo samples per integral [default: 20000]
    #[arg(long)]
    x_samples: u64,
    /// Signatures for the typed sandwiches [default: all observed]
    #[arg(long, value_delimiter = ',')]
    signatures: Vec<String>,
});

command_args!(UniversalityArgs {
    /// Ball radius in thermodynamic units [default: 1]
    #[arg(long)]
    alpha: f64,
    /// Increasing point counts [default: 10000]
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Spaces among torus, sphere [default: torus,sphere]
    #[arg(long, value_delimiter = ',')]
    spaces: Vec<String>,
    /// Window radius of the Euclidean reference [default: 30]
    #[arg(long = "reference-R")]
    #[serde(rename = "reference_R")]
    reference_radius: f64,
    /// Trials of the Euclidean reference [default: 200]
    #[arg(long)]
    reference_trials: u64,
});

command_args!(CouplingArgs {
    /// torus or sphere [default: torus]
    #[arg(long)]
    space: String,
    /// Ball radius in rescaled units [default: 1]
    #[arg(long)]
    alpha: f64,
    /// Rescaled window radius [default: 5]
    #[arg(long = "R")]
    #[serde(rename = "R")]
    radius: f64,
    /// Increasing point counts [default: 1000,10000,100000]
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Signatures kept in the count vectors [default: all]
    #[arg(long, value_delimiter = ',')]
    signatures: Vec<String>,
});

command_args!(PositivityArgs {
    /// Dimension [default: 2]
    #[arg(long)]
    d: usize,
    /// Ball radius [default: 1]
    #[arg(long)]
    alpha: f64,
    /// Window radius per trial [default: 30]
    #[arg(long = "R")]
    #[serde(rename = "R")]
    radius: f64,
    /// Target signatures [default: w0..w5 for d=2, pt for d=1]
    #[arg(long, value_delimiter = ',')]
    targets: Vec<String>,
    /// Run further batches of trials until this many components [default: 0]
    #[arg(long)]
    min_components: u64,
    /// Upper limit on trials across batches [default: trials]
    #[arg(long)]
    max_trials: u64,
});

command_args!(ArnoldArgs {
    /// Dimension [default: 1]
    #[arg(long)]
    d: usize,
    /// Ball radius [default: 0.5]
    #[arg(long)]
    alpha: f64,
    /// Sampling radius [default: 200]
    #[arg(long = "R")]
    #[serde(rename = "R")]
    radius: f64,
});

command_args!(SweepArgs {
    /// Dimension [default: 2]
    #[arg(long)]
    d: usize,
    /// Increasing ball radii [default: 0.1,0.2,...,1.0]
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,
    /// Window radius [default: 20]
    #[arg(long = "R")]
    #[serde(rename = "R")]
    radius: f64,
});

const DEFAULT_TRIALS: u64 = 200;

fn signatures(labels: Option<Vec<String>>) -> Result<Vec<Signature>> {
    labels
        .unwrap_or_default()
        .iter()
        .map(|s| s.parse::<Signature>().map_err(Error::from))
        .collect()
}

/// What a run produced.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub json_path: PathBuf,
    pub csv_path: PathBuf,
    pub summary: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation => 2,
        }
    }
}

fn output_dir(out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

struct Emit<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    seed: u64,
    params: &'a C,
    results: &'a R,
    status: Status,
    table: Table,
    summary: String,
}

fn emit<C: Serialize, R: Serialize>(out: Option<PathBuf>, e: Emit<'_, C, R>) -> Result<Outcome> {
    let dir = output_dir(out);
    std::fs::create_dir_all(&dir).map_err(|source| Error::Io {
        path: dir.clone(),
        source,
    })?;
    let json_path = dir.join(format!("{}.json", e.command));
    let csv_path = dir.join(format!("{}.csv", e.command));
    let report = Report::new(e.command, e.seed, e.params, e.status, e.results);
    report::write_file(&json_path, &report::to_json(&report)?)?;
    report::write_file(&csv_path, &e.table.to_csv()?)?;
    Ok(Outcome {
        status: e.status,
        json_path,
        csv_path,
        summary: e.summary,
    })
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Measure(a) => run_measure(a.with_config_file()?),
        Command::Igs(a) => run_igs(a.with_config_file()?),
        Command::Universality(a) => run_universality(a.with_config_file()?),
        Command::Coupling(a) => run_coupling(a.with_config_file()?),
        Command::Positivity(a) => run_positivity(a.with_config_file()?),
        Command::Arnold(a) => run_arnold(a.with_config_file()?),
        Command::Sweep(a) => run_sweep(a.with_config_file()?),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> std::result::Result<Outcome, CliFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliFailure::Usage)?;
    run(cli).map_err(CliFailure::Run)
}

#[derive(Debug)]
pub enum CliFailure {
    Usage(clap::Error),
    Run(Error),
}

fn run_measure(a: MeasureArgs) -> Result<Outcome> {
    let p = MeasureParams {
        d: a.d.unwrap_or(2),
        alpha: a.alpha.unwrap_or(0.5),
        radii: a.radii.unwrap_or_else(|| vec![10.0, 20.0, 40.0]),
        trials: a.trials.unwrap_or(DEFAULT_TRIALS),
        seed: a.seed.unwrap_or(0),
    };
    let r = experiments::estimate_limit_measure(&p, a.threads.unwrap_or(0))?;
    let mut summary = String::new();
    for (i, row) in r.rows.iter().enumerate() {
        let _ = write!(
            summary,
            "R = {}: {} contained components, density {:.5} ± {:.5}",
            row.radius, row.contained_components, row.density_all.mean, row.density_all.se
        );
        if let Some(Some(tv)) = r.consecutive_tv.get(i.wrapping_sub(1)) {
            let _ = write!(summary, ", TV to previous R {tv:.4}");
        }
        summary.push('\n');
        for s in row.signatures.iter().take(6) {
            let _ = writeln!(summary, "  {:>10} {:.5}", s.signature, s.ratio);
        }
    }
    emit(
        a.out,
        Emit {
            command: "measure",
            seed: p.seed,
            params: &p,
            results: &r,
            status: Status::Ok,
            table: report::measure_table(&r),
            summary,
        },
    )
}

fn run_igs(a: IgsArgs) -> Result<Outcome> {
    let p = IgsParams {
        d: a.d.unwrap_or(2),
        alpha: a.alpha.unwrap_or(1.0),
        radius: a.radius.unwrap_or(20.0),
        r: a.r.unwrap_or(5.0),
        trials: a.trials.unwrap_or(50),
        x_samples: a.x_samples.unwrap_or(20_000),
        seed: a.seed.unwrap_or(0),
        signatures: signatures(a.signatures)?,
    };
    let r = experiments::igs_check(&p, a.threads.unwrap_or(0))?;
    let summary = format!(
        "{} of {} instances satisfy every sandwich\n",
        r.instances.len() as u64 - r.failures,
        r.instances.len()
    );
    let status = if r.all_pass {
        Status::Ok
    } else {
        Status::Violation
    };
    emit(
        a.out,
        Emit {
            command: "igs",
            seed: p.seed,
            params: &p,
            results: &r,
            status,
            table: report::igs_table(&r),
            summary,
        },
    )
}

fn run_universality(a: UniversalityArgs) -> Result<Outcome> {
    let spaces = a
        .spaces
        .unwrap_or_else(|| vec!["torus".into(), "sphere".into()])
        .iter()
        .map(|s| s.parse::<Manifold>())
        .collect::<Result<Vec<_>>>()?;
    let trials = a.trials.unwrap_or(100);
    let p = UniversalityParams {
        alpha: a.alpha.unwrap_or(1.0),
        ns: a.n.unwrap_or_else(|| vec![10_000]),
        spaces,
        trials,
        seed: a.seed.unwrap_or(0),
        reference_radius: a.reference_radius.unwrap_or(30.0),
        reference_trials: a.reference_trials.unwrap_or(DEFAULT_TRIALS),
    };
    let r = experiments::universality_check(&p, a.threads.unwrap_or(0))?;
    let mut summary = String::new();
    for row in &r.rows {
        let _ = write!(summary, "n = {}:", row.n);
        for pair in &row.pairs {
            let _ = write!(summary, " TV({}, {}) = {:.4}", pair.a, pair.b, pair.tv);
        }
        for s in &row.spaces {
            if let Some(tv) = s.tv_reference {
                let _ = write!(summary, " TV({}, plane) = {tv:.4}", s.space);
            }
        }
        summary.push('\n');
    }
    emit(
        a.out,
        Emit {
            command: "universality",
            seed: p.seed,
            params: &p,
            results: &r,
            status: Status::Ok,
            table: report::universality_table(&r),
            summary,
        },
    )
}

fn run_coupling(a: CouplingArgs) -> Result<Outcome> {
    let p = CouplingParams {
        space: a.space.as_deref().unwrap_or("torus").parse()?,
        alpha: a.alpha.unwrap_or(1.0),
        radius: a.radius.unwrap_or(5.0),
        ns: a.n.unwrap_or_else(|| vec![1_000, 10_000, 100_000]),
        trials: a.trials.unwrap_or(DEFAULT_TRIALS),
        seed: a.seed.unwrap_or(0),
        signatures: signatures(a.signatures)?,
    };
    let r = experiments::coupling_check(&p, a.threads.unwrap_or(0))?;
    let mut summary = String::new();
    for row in &r.rows {
        let _ = writeln!(
            summary,
            "n = {}: TV {:.4}, points in B_R {:.3} ± {:.3} (expected {:.3})",
            row.n, row.tv, row.points_in_r.mean, row.points_in_r.se, row.expected_points
        );
    }
    emit(
        a.out,
        Emit {
            command: "coupling",
            seed: p.seed,
            params: &p,
            results: &r,
            status: Status::Ok,
            table: report::coupling_table(&r),
            summary,
        },
    )
}

fn run_positivity(a: PositivityArgs) -> Result<Outcome> {
    let d = a.d.unwrap_or(2);
    let targets = match a.targets {
        Some(t) => signatures(Some(t))?,
        None => PositivityParams::default_targets(d),
    };
    let trials = a.trials.unwrap_or(DEFAULT_TRIALS);
    let p = PositivityParams {
        d,
        alpha: a.alpha.unwrap_or(1.0),
        radius: a.radius.unwrap_or(30.0),
        targets,
        trials,
        min_components: a.min_components.unwrap_or(0),
        max_trials: a.max_trials.unwrap_or(trials),
        seed: a.seed.unwrap_or(0),
    };
    let r = experiments::positivity_check(&p, a.threads.unwrap_or(0))?;
    let mut summary = format!(
        "{} components in {} trials\n",
        r.total_components, r.trials_run
    );
    for t in &r.targets {
        let _ = writeln!(
            summary,
            "  {:>10} {:>10} {:.3e}",
            t.signature, t.count, t.frequency
        );
    }
    if !r.all_observed {
        let _ = writeln!(summary, "never observed: {}", r.missing.join(", "));
    }
    let status = if r.all_observed {
        Status::Ok
    } else {
        Status::Violation
    };
    emit(
        a.out,
        Emit {
            command: "positivity",
            seed: p.seed,
            params: &p,
            results: &r,
            status,
            table: report::positivity_table(&r),
            summary,
        },
    )
}

fn run_arnold(a: ArnoldArgs) -> Result<Outcome> {
    let p = ArnoldParams {
        d: a.d.unwrap_or(1),
        alpha: a.alpha.unwrap_or(0.5),
        radius: a.radius.unwrap_or(200.0),
        trials: a.trials.unwrap_or(DEFAULT_TRIALS),
        seed: a.seed.unwrap_or(0),
    };
    let r = experiments::arnold_betti(&p, a.threads.unwrap_or(0))?;
    let mut summary = String::new();
    for (k, b) in r.betti.iter().enumerate() {
        let _ = writeln!(summary, "beta_{k} = {:.6} ± {:.6}", b.mean, b.se);
    }
    emit(
        a.out,
        Emit {
            command: "arnold",
            seed: p.seed,
            params: &p,
            results: &r,
            status: Status::Ok,
            table: report::arnold_table(&r),
            summary,
        },
    )
}

fn run_sweep(a: SweepArgs) -> Result<Outcome> {
    let p = SweepParams {
        d: a.d.unwrap_or(2),
        alphas: a
            .alphas
            .unwrap_or_else(|| (1..=10).map(|i| i as f64 / 10.0).collect()),
        radius: a.radius.unwrap_or(20.0),
        trials: a.trials.unwrap_or(DEFAULT_TRIALS),
        seed: a.seed.unwrap_or(0),
    };
    let r = experiments::alpha_sweep(&p, a.threads.unwrap_or(0))?;
    let mut summary = String::new();
    for row in &r.rows {
        let _ = writeln!(
            summary,
            "alpha = {}: largest component {:.4} ± {:.4}, oversize in {:.2} of trials",
            row.alpha, row.largest_fraction.mean, row.largest_fraction.se, row.oversize_frequency
        );
    }
    match r.half_crossing.alpha {
        Some(c) => {
            let _ = writeln!(
                summary,
                "largest-component fraction reaches 1/2 at alpha ≈ {c:.4}"
            );
        }
        None => summary.push_str("largest-component fraction stays below 1/2\n"),
    }
    emit(
        a.out,
        Emit {
            command: "sweep",
            seed: p.seed,
            params: &p,
            results: &r,
            status: Status::Ok,
            table: report::sweep_table(&r),
            summary,
        },
    )
}

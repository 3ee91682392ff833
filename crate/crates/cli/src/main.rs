mod output;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use segre_core::affine::reduction_profile;
use segre_core::field::{DEFAULT_PRIME, VERIFICATION_PRIME};
use segre_core::grassmann::{check_corollary, grassmann_defect, grassmann_defect_monte_carlo, GrassmannQuery};
use segre_core::numerology::{closed_form_e, closed_form_estar, computed_thresholds, invariants};
use segre_core::replay::replay_main_theorem;
use segre_core::sweep::{run_sweep, SPolicy, SweepConfig};
use segre_core::terracini::{secant_dimension_with_plan, Method, DEFAULT_BUDGET};
use segre_core::{classify, Error, MonteCarloPlan, SecantReport, SegreVeroneseSpec};

use output::{
    emit, DimOutput, GrassmannCorollaryOutput, GrassmannQueryOutput, NumerologyOutput, ReplayOutput, VerifyOutput,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DISCREPANCY: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "segre-secant", version, about = "Secant dimensions of Segre-Veronese varieties")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format for data on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for point sampling.
    #[arg(long, env = "SEGRE_SECANT_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// Random trials per prime.
    #[arg(long, default_value_t = 3, global = true)]
    trials: usize,
    /// Comma-separated primes; the maximum over all of them is reported.
    #[arg(long, value_delimiter = ',', global = true)]
    primes: Vec<u64>,
    /// Largest matrix, in entries, any single computation may build.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u128,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of one secant variety.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        s: usize,
        /// Also compute through fat points in P^(n+m).
        #[arg(long)]
        cross_check: bool,
    },
    /// Compare Monte-Carlo dimensions with the classification over a grid.
    Verify {
        /// Inclusive range such as 1..4, or a single value.
        #[arg(long, default_value = "1..4", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value = "1", value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(long, default_value = "1..5", value_parser = parse_range)]
        a: RangeInclusive<usize>,
        #[arg(long, default_value = "1..5", value_parser = parse_range)]
        b: RangeInclusive<usize>,
        /// Comma-separated s values (default: 1 through q*+1 for each spec).
        #[arg(long)]
        s: Option<String>,
    },
    /// Replay the inductive step over a box of (n, a, b).
    Replay {
        #[arg(long, default_value_t = 6)]
        n_max: i64,
        #[arg(long, default_value_t = 8)]
        a_max: i64,
        #[arg(long, default_value_t = 6)]
        b_max: i64,
    },
    /// Grassmann secant defects of Veronese varieties.
    Grassmann {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        a_max: usize,
        /// Recompute every k = 1 cell by Monte-Carlo.
        #[arg(long)]
        cross_check: bool,
        /// Single query mode: Veronese source dimension.
        #[arg(long, requires_all = ["a", "k", "s"])]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// q, r, q* and the thresholds e, e*.
    Numerology {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Also measure e and e* by Monte-Carlo.
        #[arg(long)]
        computed: bool,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("{text:?} is not a nonempty range of positive integers"));
    }
    Ok(lo..=hi)
}

fn parse_s_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::InvalidArgument(format!("bad s value {t:?}: {e}")))
        })
        .collect()
}

impl GlobalArgs {
    fn plan(&self) -> MonteCarloPlan {
        MonteCarloPlan {
            trials: self.trials,
            primes: if self.primes.is_empty() {
                vec![DEFAULT_PRIME, VERIFICATION_PRIME]
            } else {
                self.primes.clone()
            },
            seed: self.seed,
            budget: self.budget,
        }
    }
}

/// Outcome of a subcommand: whether the mathematics agreed.
type Outcome = anyhow::Result<bool>;

fn run_dim(g: &GlobalArgs, spec: SegreVeroneseSpec, s: usize, cross_check: bool) -> Outcome {
    let plan = g.plan();
    let report = secant_dimension_with_plan(&spec, s, &plan)?;
    let reduction = if cross_check {
        let profile = reduction_profile(&spec, s, &plan)?;
        Some(SecantReport::new(
            spec,
            s,
            profile.dim(s),
            profile.witness_prime[s - 1],
            plan.seed,
            plan.trials,
            Method::AffineReduction,
        )?)
    } else {
        None
    };
    let classification = if spec.m == 1 {
        Some(classify(spec.n as u64, spec.a as u64, spec.b as u64, s as u64)?)
    } else {
        None
    };
    let agreement = reduction.as_ref().is_none_or(|r| r.computed_dim == report.computed_dim)
        && classification.is_none_or(|c| c.dim as usize == report.computed_dim);
    emit(
        g.format,
        &DimOutput {
            report,
            reduction,
            classification,
            agreement,
        },
    )?;
    Ok(agreement)
}

fn run_verify(g: &GlobalArgs, config: SweepConfig) -> Outcome {
    let report = run_sweep(&config)?;
    eprintln!("{}", report.summary);
    for row in report.rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "error at X({},{},{},{}) s={}: {}",
            row.n,
            row.m,
            row.a,
            row.b,
            row.s,
            row.error.as_deref().unwrap_or_default()
        );
    }
    let ok = report.summary.discrepancies == 0;
    emit(g.format, &VerifyOutput { config, report })?;
    Ok(ok)
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Dim {
            n,
            m,
            a,
            b,
            s,
            cross_check,
        } => run_dim(g, SegreVeroneseSpec::new(*n, *m, *a, *b)?, *s, *cross_check),
        Command::Verify { n, m, a, b, s } => {
            let s_policy = match s {
                Some(text) => SPolicy::Explicit(parse_s_list(text)?),
                None => SPolicy::UpToQStarPlusOne,
            };
            let config = SweepConfig {
                n_range: n.clone(),
                m_range: m.clone(),
                a_range: a.clone(),
                b_range: b.clone(),
                s_policy,
                plan: g.plan(),
            };
            run_verify(g, config)
        }
        Command::Replay { n_max, a_max, b_max } => {
            let report = replay_main_theorem(*n_max, *a_max, *b_max)?;
            for cell in report.failures() {
                eprintln!("({},{},{}) fails: {}", cell.n, cell.a, cell.b, cell.failures.join("; "));
            }
            let ok = report.all_pass;
            emit(g.format, &ReplayOutput { report })?;
            Ok(ok)
        }
        Command::Grassmann {
            n_max,
            a_max,
            cross_check,
            n,
            a,
            k,
            s,
        } => {
            let plan = g.plan();
            if let (Some(n), Some(a), Some(k), Some(s)) = (n, a, k, s) {
                let q = GrassmannQuery::new(*n, *a, *k, *s)?;
                let report = grassmann_defect(&q, &plan)?;
                let monte_carlo = if *cross_check && q.k >= 1 {
                    Some(grassmann_defect_monte_carlo(&q, &plan)?)
                } else {
                    None
                };
                let ok = monte_carlo.as_ref().is_none_or(|mc| mc.defect == report.defect);
                emit(g.format, &GrassmannQueryOutput { report, monte_carlo })?;
                return Ok(ok);
            }
            let report = check_corollary(*n_max, *a_max, cross_check.then_some(&plan))?;
            let ok = report.holds;
            emit(g.format, &GrassmannCorollaryOutput { report })?;
            Ok(ok)
        }
        Command::Numerology {
            n,
            m,
            a,
            b,
            computed,
        } => {
            let spec = SegreVeroneseSpec::new(*n, *m, *a, *b)?;
            let numerology = invariants(&spec);
            let (e, estar) = if spec.m == 1 {
                let (n, a, b) = (*n as u64, *a as u64, *b as u64);
                (Some(closed_form_e(n, a, b)?), Some(closed_form_estar(n, a, b)?))
            } else {
                (None, None)
            };
            let measured = if *computed {
                let s_max = (numerology.qstar as usize) + spec.dim() + 1;
                let (ce, cs) = computed_thresholds(&spec, s_max, &g.plan())?;
                Some((ce as u64, cs as u64))
            } else {
                None
            };
            let agreement = match (e, estar, measured) {
                (Some(e), Some(es), Some((ce, cs))) => e == ce && es == cs,
                _ => true,
            };
            emit(
                g.format,
                &NumerologyOutput {
                    spec,
                    numerology,
                    e,
                    estar,
                    computed_e: measured.map(|m| m.0),
                    computed_estar: measured.map(|m| m.1),
                    agreement,
                },
            )?;
            Ok(agreement)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.global.jobs {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DISCREPANCY),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

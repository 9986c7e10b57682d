use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kspringer::bott::line_cohomology;
use kspringer::grading::{grade, parabolic, GradedDecomposition};
use kspringer::oracle::{
    ad_grading_dims, certify_principal_grading, coordinate_ring_dims, identities, jm_triple,
    ks_normalize, realize_form,
};
use kspringer::pipeline::{self, Check, GradingChoice, JobConfig, Report};
use kspringer::realform::{k_root_datum, CartanDecomposition, FormConfig, KRootDatum, RealForm};
use kspringer::rootdata::{set_cache_dir, RootSubsystem, RootSystem, TypeLabel, Weight};
use kspringer::series::{
    blattner_multiplicity, components_split, hilbert_series, verify_vanishing, Verdict,
};
use kspringer::{Error, Result};

/// K-Springer gradings, vanishing checks and orbit-closure Hilbert functions
/// for equal-rank real forms.
#[derive(Parser, Debug)]
#[command(name = "kspringer", version)]
struct Cli {
    /// Disable the Weyl group cache (also: KSPRINGER_CACHE_DIR).
    #[arg(long, global = true)]
    no_cache: bool,
    /// Master seed for every randomized oracle step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here as well as to stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct FormArgs {
    /// Catalog name such as su(2,1), sp(4,R), so*(6).
    #[arg(long)]
    form: Option<String>,
    /// Cartan type A, B, C, D or G2.
    #[arg(long = "type")]
    type_label: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Simple-root signs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    epsilon: Option<Vec<i64>>,
}

impl FormArgs {
    fn config(&self) -> FormConfig {
        FormConfig {
            form: self.form.clone(),
            type_label: self.type_label.clone(),
            rank: self.rank,
            epsilon: self.epsilon.clone(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded decomposition of g = k ⊕ p under H.
    Grade {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
    },
    /// Line bundle cohomology on K/B_K, or on G/B when no epsilon is given.
    Bott {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        lambda: Vec<i64>,
    },
    /// Positivity of the Euler series of the resolution through degree N.
    VerifyVanishing {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        lambda: Vec<i64>,
        #[arg(long = "N", default_value_t = 6)]
        n: usize,
    },
    /// Graded dimensions of the coordinate ring from the series.
    Hilbert {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// K-type multiplicity of μ from the Blattner-type formula.
    Blattner {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        lambda: Vec<i64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        mu: Vec<i64>,
    },
    /// Per-component and total Hilbert functions; repeat --H per component.
    Components {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long = "H", required = true, allow_hyphen_values = true)]
        h: Vec<String>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Orbit-dimension parity evidence from sampled nilpotents.
    QctReport {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Exact matrix computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run the selected checks from a JSON config or from flags.
    Run {
        /// JSON job config; flags given alongside override it.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[command(flatten)]
        form: FormArgs,
        /// Comma-separated entries, or `search`.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: Option<String>,
        /// λ′ as comma-separated entries; repeat for several.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Vec<String>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Record per-check wall time in the report.
        #[arg(long)]
        timings: bool,
        /// Print the full report instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Every check for a catalog form with searched principal gradings.
    VerifyPaper {
        form: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Normalized sl(2)-triple through a generic element of p₂.
    Triple {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
    },
    /// Evaluation-rank Hilbert function of the closure of K·X, X generic in p₂.
    Hilbert {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Certify H as a principal grading.
    VerifyGrading {
        #[command(flatten)]
        form: FormArgs,
        #[arg(
            long = "H",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        h: Vec<i64>,
    },
}

struct Setup {
    form: RealForm,
    cd: CartanDecomposition,
    kd: KRootDatum,
}

fn setup(args: &FormArgs) -> Result<Setup> {
    let form = args.config().resolve()?;
    let cd = form.decomposition();
    let kd = k_root_datum(&cd)?;
    Ok(Setup { form, cd, kd })
}

fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Input(format!("not an integer list: `{s}`")))
        })
        .collect()
}

fn grading_json(gd: &GradedDecomposition) -> Value {
    let pieces: serde_json::Map<String, Value> = gd
        .pieces()
        .iter()
        .map(|(i, p)| {
            let names = |r: &[kspringer::rootdata::Root]| r.iter().map(ToString::to_string).collect::<Vec<_>>();
            (i.to_string(), json!({ "k": names(&p.k), "p": names(&p.p), "dim_k": p.k.len(), "dim_p": p.p.len() }))
        })
        .collect();
    json!({ "H": gd.h(), "pieces": pieces })
}

fn certified(
    s: &Setup,
    h: &[i64],
    seed: u64,
) -> Result<(
    kspringer::oracle::ClassicalRealization,
    kspringer::oracle::GradingCertificate,
)> {
    let real = realize_form(&s.form)?;
    let cert = certify_principal_grading(&real, h, seed)?;
    Ok((real, cert))
}

/// Result JSON and the exit verdict.
fn execute(cli: &Cli) -> Result<(Value, Verdict, Option<String>)> {
    let seed = cli.seed;
    let pass = |v: Value| Ok((v, Verdict::Pass, None));
    match &cli.command {
        Command::Grade { form, h } => {
            let s = setup(form)?;
            let gd = grade(&s.cd, &s.kd, h)?;
            let pd = parabolic(&gd, &s.kd);
            let mut v = grading_json(&gd);
            v["canonical_weight"] = json!(pd.canonical_weight.0);
            v["two_rho_u_p"] = json!(pd.two_rho_u_p.0);
            v["two_rho_u_k"] = json!(pd.two_rho_u_k.0);
            pass(v)
        }
        Command::Bott { form, lambda } => {
            let (sub, space) = if form.epsilon.is_none() && form.form.is_none() {
                let label: TypeLabel = form.type_label.clone().unwrap_or_default().parse()?;
                let rank = form
                    .rank
                    .ok_or_else(|| Error::Input("`rank` is required with `type`".into()))?;
                (
                    RootSubsystem::full(Arc::new(RootSystem::new(label, rank)?)),
                    "G/B",
                )
            } else {
                (setup(form)?.kd.subsystem().clone(), "K/B_K")
            };
            let w = Weight(lambda.clone());
            if w.rank() != sub.ambient().rank() {
                return Err(Error::Input(format!(
                    "λ has {} entries, expected {}",
                    w.rank(),
                    sub.ambient().rank()
                )));
            }
            let c = line_cohomology(&w, &sub);
            let dims: serde_json::Map<String, Value> = c
                .per_degree
                .iter()
                .map(|(d, chi)| Ok((d.to_string(), json!(chi.dimension(&sub)?))))
                .collect::<Result<_>>()?;
            pass(json!({ "space": space, "lambda": lambda, "cohomology": c, "dims": dims }))
        }
        Command::VerifyVanishing { form, h, lambda, n } => {
            let s = setup(form)?;
            let gd = grade(&s.cd, &s.kd, h)?;
            let pd = parabolic(&gd, &s.kd);
            let r = verify_vanishing(&Weight(lambda.clone()), &gd, &pd, &s.kd, *n)?;
            let verdict = r.verdict;
            Ok((serde_json::to_value(r)?, verdict, None))
        }
        Command::Hilbert { form, h, kmax } => {
            let s = setup(form)?;
            let gd = grade(&s.cd, &s.kd, h)?;
            pass(json!({ "H": h, "dims": hilbert_series(&gd, &s.kd, *kmax)? }))
        }
        Command::Blattner {
            form,
            h,
            lambda,
            mu,
        } => {
            let s = setup(form)?;
            let gd = grade(&s.cd, &s.kd, h)?;
            let m =
                blattner_multiplicity(&Weight(mu.clone()), &Weight(lambda.clone()), &gd, &s.kd)?;
            pass(json!({ "H": h, "lambda": lambda, "mu": mu, "multiplicity": m }))
        }
        Command::Components { form, h, kmax } => {
            let s = setup(form)?;
            let gds = h
                .iter()
                .map(|t| grade(&s.cd, &s.kd, &ints(t)?))
                .collect::<Result<Vec<_>>>()?;
            let split = components_split(&gds, &s.kd, *kmax)?;
            pass(json!({
                "components": gds.iter().map(|g| g.h().to_vec()).collect::<Vec<_>>(),
                "component_dims": split.component_dims,
                "total_dims": split.total_dims,
            }))
        }
        Command::QctReport { form } => {
            let mut config = JobConfig::new(form.config());
            config.seed = seed;
            config.checks = vec![Check::Qct];
            let report = pipeline::run(&config)?;
            let qct = report.check("qct").expect("qct check ran");
            Ok((qct.details.clone(), Verdict::Evidence, None))
        }
        Command::Oracle { command } => match command {
            OracleCommand::Triple { form, h } => {
                let s = setup(form)?;
                let (real, cert) = certified(&s, h, seed)?;
                let t = ks_normalize(&real, &jm_triple(&real, &cert.x)?)?;
                let ok = identities(&real, &t);
                let verdict = if ok.iter().all(|&b| b) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                Ok((
                    json!({ "H": h, "triple": t, "identities": ok }),
                    verdict,
                    None,
                ))
            }
            OracleCommand::Hilbert { form, h, kmax } => {
                let s = setup(form)?;
                let (real, cert) = certified(&s, h, seed)?;
                pass(
                    json!({ "H": h, "x": cert.x, "dims": coordinate_ring_dims(&real, &cert.x, *kmax, seed)? }),
                )
            }
            OracleCommand::VerifyGrading { form, h } => {
                let s = setup(form)?;
                let (real, cert) = certified(&s, h, seed)?;
                let gd = grade(&s.cd, &s.kd, h)?;
                let oracle = ad_grading_dims(&real, &real.cartan_element(h)?)?;
                let dims_match = oracle
                    .iter()
                    .filter(|(_, d)| **d != (0, 0))
                    .all(|(i, d)| gd.dims().get(i) == Some(d));
                let verdict = if cert.confirmed && dims_match {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                let oracle: serde_json::Map<String, Value> = oracle
                    .into_iter()
                    .map(|(i, d)| (i.to_string(), json!(d)))
                    .collect();
                Ok((
                    json!({ "certificate": cert, "oracle_dims": oracle, "dims_match": dims_match }),
                    verdict,
                    None,
                ))
            }
        },
        Command::Run {
            config,
            form,
            h,
            lambda,
            n,
            kmax,
            checks,
            timings,
            json,
        } => {
            let mut job = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    serde_json::from_str::<JobConfig>(&text)
                        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
                }
                None => JobConfig::new(form.config()),
            };
            if config.is_some() && (form.form.is_some() || form.type_label.is_some()) {
                job.form = form.config();
            }
            if let Some(h) = h {
                job.h = if h.trim() == "search" {
                    GradingChoice::Search
                } else {
                    GradingChoice::Given(ints(h)?)
                };
            }
            if !lambda.is_empty() {
                job.lambda = lambda.iter().map(|l| ints(l)).collect::<Result<_>>()?;
            }
            if let Some(n) = n {
                job.n = *n;
            }
            if let Some(k) = kmax {
                job.kmax = *k;
            }
            if let Some(c) = checks {
                job.checks = c.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            }
            if config.is_none() || cli.seed != 0 {
                job.seed = seed;
            }
            job.timings |= timings;
            job.no_cache |= cli.no_cache;
            report_output(pipeline::run(&job)?, *json)
        }
        Command::VerifyPaper { form, json } => {
            report_output(pipeline::verify_paper(form, seed)?, *json)
        }
    }
}

fn report_output(report: Report, full: bool) -> Result<(Value, Verdict, Option<String>)> {
    let summary = (!full).then(|| summary(&report));
    let verdict = report.verdict;
    Ok((serde_json::to_value(report)?, verdict, summary))
}

fn summary(r: &Report) -> String {
    let mut out = format!(
        "{} (type {}{}), H = {:?}\n",
        r.form, r.type_label, r.rank, r.h
    );
    for c in &r.checks {
        out += &format!("  {:<17}{}\n", c.name, c.verdict);
    }
    out += &format!("verdict: {}", r.verdict);
    out
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Fail => 1,
        Verdict::HypothesisUnmet => 2,
        _ => 0,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.no_cache {
        set_cache_dir(None);
    }
    match execute(&cli) {
        Ok((value, verdict, summary)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            if let Some(path) = &cli.json_out {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let _ = writeln!(std::io::stdout(), "{}", summary.unwrap_or(text));
            ExitCode::from(exit_code(verdict))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

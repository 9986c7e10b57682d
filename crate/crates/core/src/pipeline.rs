//! Job configuration, the check pipeline and its JSON report.
//!
//! Checks run in dependency order (matrix model, gradings, oracle
//! cross-checks, series) and the report is a pure function of the config:
//! no clocks unless `timings` is set, ordered maps only.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{input, Error, Result};
use crate::exec;
use crate::grading::{
    grade, is_qk_dominant, parabolic, principal_candidates, GradedDecomposition, ParabolicData,
};
use crate::oracle::{
    ad_grading_dims, canonical_weight, centralizer_in_parabolic, certify_principal_grading,
    coordinate_ring_dims, dense_orbit_check, g_orbit_dimension, identities, jm_triple,
    ks_normalize, nilcone_dimension, orbit_dimension, random_nilpotent, realize_form, rng,
    ClassicalRealization, GradingCertificate,
};
use crate::realform::{k_root_datum, CartanDecomposition, FormConfig, KRootDatum, RealForm};
use crate::rootdata::{set_cache_dir, Weight};
use crate::series::{
    components_split, euler_series, hilbert_series, qct_report, verify_vanishing, Blattner,
    OrbitSample, QctInput, Verdict,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Model,
    Grading,
    OracleGrading,
    DenseOrbit,
    CanonicalWeight,
    Vanishing,
    Hilbert,
    Blattner,
    Components,
    Qct,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Model,
        Check::Grading,
        Check::OracleGrading,
        Check::DenseOrbit,
        Check::CanonicalWeight,
        Check::Vanishing,
        Check::Hilbert,
        Check::Blattner,
        Check::Components,
        Check::Qct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Model => "model",
            Check::Grading => "grading",
            Check::OracleGrading => "oracle-grading",
            Check::DenseOrbit => "dense-orbit",
            Check::CanonicalWeight => "canonical-weight",
            Check::Vanishing => "vanishing",
            Check::Hilbert => "hilbert",
            Check::Blattner => "blattner",
            Check::Components => "components",
            Check::Qct => "qct",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Input(format!("unknown check `{s}`")))
    }
}

/// Either explicit grading entries or `"search"` for the oracle-certified
/// principal gradings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradingChoice {
    #[default]
    #[serde(with = "search_tag")]
    Search,
    Given(Vec<i64>),
}

mod search_tag {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("search")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "search" {
            Ok(())
        } else {
            Err(D::Error::custom(format!(
                "expected \"search\" or a list of integers, got \"{s}\""
            )))
        }
    }
}

fn default_n() -> usize {
    6
}

fn default_kmax() -> usize {
    4
}

fn default_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(flatten)]
    pub form: FormConfig,
    #[serde(default, rename = "H")]
    pub h: GradingChoice,
    /// λ′ values in fundamental-weight coordinates; empty means the default
    /// sample for the vanishing check and λ′ = 0 elsewhere.
    #[serde(default)]
    pub lambda: Vec<Vec<i64>>,
    #[serde(default = "default_n", rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_kmax")]
    pub kmax: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json_out: Option<PathBuf>,
    #[serde(default)]
    pub no_cache: bool,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub timings: bool,
}

impl JobConfig {
    pub fn new(form: FormConfig) -> Self {
        JobConfig {
            form,
            h: GradingChoice::Search,
            lambda: Vec::new(),
            n: default_n(),
            seed: 0,
            kmax: default_kmax(),
            json_out: None,
            no_cache: false,
            checks: default_checks(),
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub form: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub epsilon: Vec<i64>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<i64>>,
    #[serde(rename = "N")]
    pub n: usize,
    pub kmax: usize,
    pub seed: u64,
    pub version: String,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
}

impl Report {
    /// 0 when nothing failed, 1 on a violation, 2 when a hypothesis is unmet.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Fail => 1,
            Verdict::HypothesisUnmet => 2,
            _ => 0,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Everything the checks share.
struct Context {
    form: RealForm,
    cd: CartanDecomposition,
    kd: KRootDatum,
    real: Option<ClassicalRealization>,
    gradings: Vec<Graded>,
    nilcone_dim: Option<usize>,
}

struct Graded {
    gd: GradedDecomposition,
    pd: ParabolicData,
    cert: Option<GradingCertificate>,
}

fn weight_json(w: &Weight) -> Value {
    json!(w.0)
}

/// λ′ in 𝕎(Q∩K) with fundamental-weight coordinates in [−bound, bound] and
/// K-simple pairings at most `bound`.
pub fn vanishing_sample(pd: &ParabolicData, kd: &KRootDatum, bound: i64) -> Vec<Weight> {
    let sub = kd.subsystem();
    let rank = sub.ambient().rank();
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(Weight)
        .filter(|w| is_qk_dominant(w, pd, kd))
        .filter(|w| sub.simple_pairings(w).iter().all(|&p| p <= bound))
        .collect()
}

/// Oracle-certified principal gradings: K-dominant even candidates whose
/// generic p₂ element has the candidate as neutral element, a dense L_K-orbit
/// and a K-orbit of dimension dim 𝒩_θ.
pub fn principal_gradings(
    cd: &CartanDecomposition,
    kd: &KRootDatum,
    real: &ClassicalRealization,
    seed: u64,
) -> Result<Vec<GradingCertificate>> {
    let nil = nilcone_dimension(real, seed)?;
    if nil == 0 {
        return input(format!(
            "{} has p = 0; there is no principal grading",
            real.name
        ));
    }
    let bound = 2 * cd.root_system().highest_root().height();
    let cands = principal_candidates(cd, kd, nil, bound);
    let certs = exec::try_map(&cands, |c| certify_principal_grading(real, &c.h, seed))?;
    Ok(certs.into_iter().filter(|c| c.confirmed).collect())
}

fn setup(config: &JobConfig) -> Result<Context> {
    let form = config.form.resolve()?;
    let cd = form.decomposition();
    let kd = k_root_datum(&cd)?;
    let real = match realize_form(&form) {
        Ok(r) => Some(r),
        Err(Error::OutOfScope { .. }) => None,
        Err(e) => return Err(e),
    };
    for l in &config.lambda {
        if l.len() != cd.rank() {
            return input(format!(
                "λ′ {l:?} has {} entries, expected {}",
                l.len(),
                cd.rank()
            ));
        }
    }
    let nilcone_dim = real
        .as_ref()
        .map(|r| nilcone_dimension(r, config.seed))
        .transpose()?;
    let gradings = match (&config.h, &real) {
        (GradingChoice::Given(h), _) => {
            let gd = grade(&cd, &kd, h)?;
            let cert = match &real {
                Some(r) if gd.p2_roots().iter().any(|_| true) => {
                    Some(certify_principal_grading(r, h, config.seed)?)
                }
                _ => None,
            };
            let pd = parabolic(&gd, &kd);
            vec![Graded { gd, pd, cert }]
        }
        (GradingChoice::Search, Some(r)) => {
            let certs = principal_gradings(&cd, &kd, r, config.seed)?;
            if certs.is_empty() {
                return Err(Error::Oracle(format!(
                    "no principal grading of {} was confirmed",
                    form.name
                )));
            }
            certs
                .into_iter()
                .map(|c| {
                    let gd = grade(&cd, &kd, &c.h)?;
                    let pd = parabolic(&gd, &kd);
                    Ok(Graded {
                        gd,
                        pd,
                        cert: Some(c),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        (GradingChoice::Search, None) => {
            return input(format!(
                "grading search needs a matrix model, which {} lacks; pass H explicitly",
                form.name
            ))
        }
    };
    Ok(Context {
        form,
        cd,
        kd,
        real,
        gradings,
        nilcone_dim,
    })
}

fn skipped(reason: &str) -> (Verdict, Value) {
    (Verdict::Skipped, json!({ "reason": reason }))
}

const NO_MODEL: &str = "no matrix model for this type";

fn check_model(ctx: &Context) -> Result<(Verdict, Value)> {
    let Some(real) = &ctx.real else {
        return Ok(skipped(NO_MODEL));
    };
    let outcome = real.check_invariants();
    let verdict = if outcome.is_ok() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok((
        verdict,
        json!({
            "matrix_size": real.n,
            "dim_k": real.k_dim(),
            "dim_p": real.p_dim(),
            "theta": real.theta,
            "error": outcome.err().map(|e| e.to_string()),
        }),
    ))
}

fn check_grading(ctx: &Context) -> Result<(Verdict, Value)> {
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let invariants = g.gd.check_invariants(&ctx.cd);
        let theta_stable = g.pd.contains_positive(&ctx.kd.positive_roots());
        if invariants.is_err() || !theta_stable {
            verdict = Verdict::Fail;
        }
        let dims: BTreeMap<String, (usize, usize)> =
            g.gd.dims()
                .into_iter()
                .map(|(i, d)| (i.to_string(), d))
                .collect();
        rows.push(json!({
            "H": g.gd.h(),
            "dims": dims,
            "q_contains_b_K": theta_stable,
            "u_cap_p": g.gd.u_cap_p().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "u_cap_k": g.gd.u_cap_k().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "error": invariants.err().map(|e| e.to_string()),
        }));
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn nonzero_dims(d: BTreeMap<i64, (usize, usize)>) -> BTreeMap<i64, (usize, usize)> {
    d.into_iter().filter(|(_, v)| *v != (0, 0)).collect()
}

fn check_oracle_grading(ctx: &Context) -> Result<(Verdict, Value)> {
    let Some(real) = &ctx.real else {
        return Ok(skipped(NO_MODEL));
    };
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let h = real.cartan_element(g.gd.h())?;
        let oracle = nonzero_dims(ad_grading_dims(real, &h)?);
        let combinatorial = nonzero_dims(g.gd.dims());
        let mut row = json!({ "H": g.gd.h(), "dims_match": oracle == combinatorial });
        if oracle != combinatorial {
            verdict = Verdict::Fail;
        }
        if let Some(c) = &g.cert {
            let t = ks_normalize(real, &jm_triple(real, &c.x)?)?;
            let ok = identities(real, &t);
            if ok.iter().any(|b| !b) {
                verdict = Verdict::Fail;
            }
            row["triple_identities"] = json!(ok);
            row["normalized_h_is_grading"] = json!(t.h == h);
        }
        rows.push(row);
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn check_dense(ctx: &Context) -> Result<(Verdict, Value)> {
    let Some(real) = &ctx.real else {
        return Ok(skipped(NO_MODEL));
    };
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let Some(c) = &g.cert else {
            rows.push(json!({ "H": g.gd.h(), "note": "p₂ = 0" }));
            verdict = verdict.combine(Verdict::HypothesisUnmet);
            continue;
        };
        let h = real.cartan_element(g.gd.h())?;
        let (g_x, k_x) = centralizer_in_parabolic(real, &h, &c.x)?;
        let v = if !c.jm_h_matches {
            Verdict::HypothesisUnmet
        } else if c.dense && g_x && k_x {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        verdict = verdict.combine(v);
        let p2 = g.gd.p2_roots();
        let negative = match p2.as_slice() {
            [first, _, ..] => {
                let x = real.root_vector(first).expect("root vector").clone();
                json!({ "x": first.to_string(), "dense": dense_orbit_check(real, &h, &x)? })
            }
            _ => {
                json!({ "x": "0", "dense": dense_orbit_check(real, &h, &crate::linalg::RationalMatrix::zeros(real.n, real.n))? })
            }
        };
        rows.push(json!({
            "H": g.gd.h(),
            "neutral_element": c.jm_h_matches,
            "dense": c.dense,
            "orbit_dim": c.orbit_dim,
            "nilcone_dim": c.nilcone_dim,
            "principal": c.confirmed,
            "centralizer_in_q": { "g": g_x, "k": k_x },
            "non_principal_example": negative,
        }));
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn check_canonical(ctx: &Context) -> Result<(Verdict, Value)> {
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let mut row =
            json!({ "H": g.gd.h(), "combinatorial": weight_json(&g.pd.canonical_weight) });
        if let Some(real) = &ctx.real {
            let w = canonical_weight(real, &real.cartan_element(g.gd.h())?)?;
            if w != g.pd.canonical_weight {
                verdict = Verdict::Fail;
            }
            row["oracle"] = weight_json(&w);
        } else {
            verdict = verdict.combine(Verdict::Skipped);
        }
        rows.push(row);
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn lambdas(config: &JobConfig, rank: usize) -> Vec<Weight> {
    if config.lambda.is_empty() {
        vec![Weight::zero(rank)]
    } else {
        config.lambda.iter().cloned().map(Weight).collect()
    }
}

fn check_vanishing(ctx: &Context, config: &JobConfig) -> Result<(Verdict, Value)> {
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let sample = if config.lambda.is_empty() {
            vanishing_sample(&g.pd, &ctx.kd, 4)
        } else {
            lambdas(config, ctx.cd.rank())
        };
        let reports = exec::try_map(&sample, |l| {
            verify_vanishing(l, &g.gd, &g.pd, &ctx.kd, config.n)
        })?;
        let mut tested = 0;
        let mut unmet = Vec::new();
        let mut violations = Vec::new();
        for r in &reports {
            match r.verdict {
                Verdict::Pass => tested += 1,
                Verdict::HypothesisUnmet => unmet.push(weight_json(&r.lambda)),
                _ => violations.push(serde_json::to_value(r)?),
            }
            verdict = verdict.combine(r.verdict);
        }
        rows.push(json!({
            "H": g.gd.h(),
            "lambda_tested": tested,
            "hypothesis_unmet": unmet,
            "violations": violations,
        }));
    }
    Ok((
        verdict,
        json!({ "gradings": rows, "note": "positivity of the Euler series, a consequence of vanishing" }),
    ))
}

fn check_hilbert(ctx: &Context, config: &JobConfig) -> Result<(Verdict, Value)> {
    let Some(real) = &ctx.real else {
        return Ok(skipped(NO_MODEL));
    };
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let series = hilbert_series(&g.gd, &ctx.kd, config.kmax)?;
        let Some(c) = &g.cert else {
            rows.push(json!({ "H": g.gd.h(), "series": series, "note": "p₂ = 0" }));
            verdict = verdict.combine(Verdict::HypothesisUnmet);
            continue;
        };
        let oracle = coordinate_ring_dims(real, &c.x, config.kmax, config.seed)?;
        let pairs: Vec<(i64, i64)> = series
            .iter()
            .zip(&oracle)
            .map(|(&s, &o)| (s, o as i64))
            .collect();
        let (v, note) = if pairs.iter().all(|(s, o)| s == o) {
            (Verdict::Pass, "equal")
        } else if pairs.iter().all(|(s, o)| o <= s) {
            (
                Verdict::Evidence,
                "oracle below series: the orbit closure is not normal",
            )
        } else {
            (Verdict::Fail, "oracle exceeds series")
        };
        verdict = verdict.combine(v);
        rows.push(json!({ "H": g.gd.h(), "series": series, "oracle": oracle, "verdict": v, "note": note }));
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn check_blattner(ctx: &Context, config: &JobConfig) -> Result<(Verdict, Value)> {
    let mut verdict = Verdict::Pass;
    let mut rows = Vec::new();
    for g in &ctx.gradings {
        let b = Blattner::new(&g.gd, &ctx.kd)?;
        for lambda in lambdas(config, ctx.cd.rank()) {
            if !is_qk_dominant(&lambda, &g.pd, &ctx.kd) {
                rows.push(json!({ "H": g.gd.h(), "lambda": weight_json(&lambda), "note": "not Q∩K-dominant; skipped" }));
                continue;
            }
            let series = euler_series(&lambda, &g.gd, &ctx.kd, config.n);
            let mus: Vec<Weight> = {
                let mut m: Vec<Weight> = series
                    .per_degree
                    .iter()
                    .flat_map(|c| c.iter().map(|(w, _)| w.clone()))
                    .collect();
                m.sort();
                m.dedup();
                m
            };
            let depth = mus
                .iter()
                .map(|mu| b.max_degree(mu, &lambda))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            let deep = if depth > config.n {
                euler_series(&lambda, &g.gd, &ctx.kd, depth)
            } else {
                series
            };
            let mut mismatches = Vec::new();
            for (k, chi) in deep.per_degree.iter().enumerate().take(config.n + 1) {
                for (mu, m) in chi.iter() {
                    let graded = b.graded(mu, &lambda, k)?;
                    if graded != m {
                        mismatches.push(json!({ "k": k, "mu": weight_json(mu), "series": m, "blattner": graded }));
                    }
                }
            }
            for mu in &mus {
                let total = b.multiplicity(mu, &lambda)?;
                let want: i64 = deep.per_degree.iter().map(|c| c.get(mu)).sum();
                if total != want {
                    mismatches.push(json!({ "mu": weight_json(mu), "series_total": want, "blattner_total": total }));
                }
            }
            if !mismatches.is_empty() {
                verdict = Verdict::Fail;
            }
            rows.push(json!({
                "H": g.gd.h(),
                "lambda": weight_json(&lambda),
                "k_types_checked": mus.len(),
                "mismatches": mismatches,
            }));
        }
    }
    Ok((verdict, json!({ "gradings": rows })))
}

fn check_components(ctx: &Context, config: &JobConfig) -> Result<(Verdict, Value)> {
    let gds: Vec<GradedDecomposition> = ctx.gradings.iter().map(|g| g.gd.clone()).collect();
    let split = components_split(&gds, &ctx.kd, config.kmax)?;
    let summed: Vec<i64> = (0..=config.kmax)
        .map(|k| split.component_dims.iter().map(|d| d[k]).sum())
        .collect();
    let verdict = if summed == split.total_dims {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok((
        verdict,
        json!({
            "components": gds.iter().map(|g| g.h().to_vec()).collect::<Vec<_>>(),
            "component_dims": split.component_dims,
            "total_dims": split.total_dims,
        }),
    ))
}

pub const QCT_SAMPLES: usize = 100;

fn check_qct(ctx: &Context, config: &JobConfig) -> Result<(Verdict, Value)> {
    let (Some(real), Some(nil)) = (&ctx.real, ctx.nilcone_dim) else {
        return Ok(skipped(NO_MODEL));
    };
    let principal_orbit_dims: Vec<usize> = ctx
        .gradings
        .iter()
        .filter_map(|g| g.cert.as_ref())
        .filter(|c| c.confirmed)
        .map(|c| c.orbit_dim)
        .collect();
    let samples = if real.p_dim() == 0 {
        Vec::new()
    } else {
        exec::try_map(
            &(0..QCT_SAMPLES as u64).collect::<Vec<_>>(),
            |&i| -> Result<OrbitSample> {
                let x = random_nilpotent(real, &mut rng(config.seed, 5_000_000 + i), false)?;
                Ok(OrbitSample {
                    k_orbit_dim: orbit_dimension(real, &x)?,
                    g_orbit_dim: g_orbit_dimension(real, &x)?,
                })
            },
        )?
    };
    let report = qct_report(&QctInput {
        nilcone_dim: nil,
        principal_orbit_dims,
        samples,
    });
    Ok((Verdict::Evidence, serde_json::to_value(report)?))
}

/// Run the selected checks. Errors in setup (bad form, bad H, no principal
/// grading) abort; each check's verdict goes into the report.
pub fn run(config: &JobConfig) -> Result<Report> {
    if config.no_cache {
        set_cache_dir(None);
    }
    let ctx = setup(config)?;
    let mut checks = Vec::new();
    for &check in Check::ALL.iter().filter(|c| config.checks.contains(c)) {
        let start = Instant::now();
        let (verdict, details) = match check {
            Check::Model => check_model(&ctx),
            Check::Grading => check_grading(&ctx),
            Check::OracleGrading => check_oracle_grading(&ctx),
            Check::DenseOrbit => check_dense(&ctx),
            Check::CanonicalWeight => check_canonical(&ctx),
            Check::Vanishing => check_vanishing(&ctx, config),
            Check::Hilbert => check_hilbert(&ctx, config),
            Check::Blattner => check_blattner(&ctx, config),
            Check::Components => check_components(&ctx, config),
            Check::Qct => check_qct(&ctx, config),
        }
        .map_err(|e| annotate(check, e))?;
        let elapsed_ms = config.timings.then(|| start.elapsed().as_millis() as u64);
        checks.push(CheckResult {
            name: check.name().into(),
            verdict,
            details,
            elapsed_ms,
        });
    }
    // qct output is evidence by definition and never lowers the verdict.
    let verdict =
        checks
            .iter()
            .filter(|c| c.name != Check::Qct.name())
            .fold(Verdict::Pass, |acc, c| match c.verdict {
                Verdict::Skipped => acc,
                v => acc.combine(v),
            });
    let report = Report {
        form: ctx.form.name.clone(),
        type_label: ctx.form.rs.label().to_string(),
        rank: ctx.form.rs.rank(),
        epsilon: ctx.form.eps.epsilon.clone(),
        h: ctx.gradings.iter().map(|g| g.gd.h().to_vec()).collect(),
        n: config.n,
        kmax: config.kmax,
        seed: config.seed,
        version: VERSION.into(),
        checks,
        verdict,
    };
    if let Some(path) = &config.json_out {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    Ok(report)
}

fn annotate(check: Check, e: Error) -> Error {
    match e {
        Error::Consistency(m) => Error::Consistency(format!("{check}: {m}")),
        Error::Oracle(m) => Error::Oracle(format!("{check}: {m}")),
        Error::Input(m) => Error::Input(format!("{check}: {m}")),
        other => other,
    }
}

/// Every check for a catalog form, with searched principal gradings.
pub fn verify_paper(form: &str, seed: u64) -> Result<Report> {
    let mut config = JobConfig::new(FormConfig::named(form));
    config.seed = seed;
    run(&config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_json_round_trip() {
        let text = r#"{"form": "su(2,1)", "H": [2, 2], "lambda": [[0, 0]], "N": 4, "checks": ["grading", "vanishing"]}"#;
        let c: JobConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.h, GradingChoice::Given(vec![2, 2]));
        assert_eq!(c.checks, vec![Check::Grading, Check::Vanishing]);
        assert_eq!(c.kmax, 4);
        let search: JobConfig =
            serde_json::from_str(r#"{"form": "su(1,1)", "H": "search"}"#).unwrap();
        assert_eq!(search.h, GradingChoice::Search);
        assert!(serde_json::from_str::<JobConfig>(r#"{"form": "su(1,1)", "H": "other"}"#).is_err());
        assert!(serde_json::from_str::<JobConfig>(r#"{"form": "su(1,1)", "bogus": 1}"#).is_err());
        let back: JobConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn check_names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }

    #[test]
    fn su11_sample_is_bounded() {
        let f = crate::realform::standard_form_catalog("su(1,1)").unwrap();
        let cd = f.decomposition();
        let kd = k_root_datum(&cd).unwrap();
        let gd = grade(&cd, &kd, &[2]).unwrap();
        let pd = parabolic(&gd, &kd);
        assert_eq!(vanishing_sample(&pd, &kd, 4).len(), 9);
    }
}

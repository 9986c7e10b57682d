//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use kspringer::bott::{euler_of_weights, line_cohomology};
use kspringer::grading::{grade, parabolic, GradedDecomposition, ParabolicData};
use kspringer::oracle::{
    ad_grading_dims, canonical_weight, coordinate_ring_dims, dense_orbit_check, identities,
    jm_triple, ks_normalize, orbit_dimension, random_nilpotent, realize, rng, ClassicalRealization,
    GradingCertificate,
};
use kspringer::pipeline::{principal_gradings, run, vanishing_sample, Check, JobConfig};
use kspringer::realform::{
    k_root_datum, standard_form_catalog, CartanDecomposition, FormConfig, KRootDatum,
};
use kspringer::rootdata::{RootSubsystem, RootSystem, TypeLabel, Weight};
use kspringer::series::{
    blattner_multiplicity, components_split, euler_series, hilbert_series, verify_vanishing,
    Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 0;
const SWEEP_FORMS: [&str; 4] = ["su(1,1)", "su(2,1)", "su(2,2)", "sp(4,R)"];

struct Form {
    cd: CartanDecomposition,
    kd: KRootDatum,
    real: ClassicalRealization,
    principal: Vec<(GradedDecomposition, ParabolicData, GradingCertificate)>,
}

fn form(name: &str) -> Form {
    let f = standard_form_catalog(name).unwrap();
    let cd = f.decomposition();
    let kd = k_root_datum(&cd).unwrap();
    let real = realize(name).unwrap();
    let principal = principal_gradings(&cd, &kd, &real, SEED)
        .unwrap()
        .into_iter()
        .map(|c| {
            let gd = grade(&cd, &kd, &c.h).unwrap();
            let pd = parabolic(&gd, &kd);
            (gd, pd, c)
        })
        .collect();
    Form {
        cd,
        kd,
        real,
        principal,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn canonical_weights() -> Outcome {
    let start = Instant::now();
    for (name, h, want) in [
        ("su(1,1)", vec![2], vec![2]),
        ("su(2,1)", vec![2, 2], vec![0, 0]),
    ] {
        let f = form(name);
        let gd = grade(&f.cd, &f.kd, &h).unwrap();
        let combinatorial = parabolic(&gd, &f.kd).canonical_weight;
        let oracle = canonical_weight(&f.real, &f.real.cartan_element(&h).unwrap()).unwrap();
        ensure(combinatorial == Weight(want.clone()), || {
            format!("{name}: combinatorial {combinatorial:?}, want {want:?}")
        })?;
        ensure(oracle == combinatorial, || {
            format!("{name}: oracle {oracle:?} vs {combinatorial:?}")
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("su(1,1) 2ω, su(2,1) 0, oracle equal, {t:.2?}"))
}

fn vanishing_sweep() -> Outcome {
    let start = Instant::now();
    let mut tested = 0;
    for name in SWEEP_FORMS {
        let f = form(name);
        ensure(!f.principal.is_empty(), || {
            format!("{name}: no principal grading")
        })?;
        for (gd, pd, _) in &f.principal {
            for lambda in vanishing_sample(pd, &f.kd, 4) {
                let r = verify_vanishing(&lambda, gd, pd, &f.kd, 6).unwrap();
                ensure(r.verdict == Verdict::Pass, || {
                    format!("{name} H={:?} λ′={:?}: {:?}", gd.h(), lambda.0, r.verdict)
                })?;
                tested += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{tested} (form, H, λ′) cases, N = 6, {t:.2?}"))
}

/// Pinned from the oracle before the series was compared.
const SU21_ORACLE: [usize; 5] = [1, 4, 9, 16, 25];

fn hilbert() -> Outcome {
    for (name, want) in [
        ("su(1,1)", vec![1usize; 5]),
        ("su(2,1)", SU21_ORACLE.to_vec()),
    ] {
        let f = form(name);
        for (gd, _, cert) in &f.principal {
            let series = hilbert_series(gd, &f.kd, 4).unwrap();
            let oracle = coordinate_ring_dims(&f.real, &cert.x, 4, SEED).unwrap();
            ensure(oracle == want, || {
                format!("{name} H={:?}: oracle {oracle:?}, pinned {want:?}", gd.h())
            })?;
            let series_u: Vec<usize> = series.iter().map(|&v| v as usize).collect();
            ensure(series_u == oracle, || {
                format!(
                    "{name} H={:?}: series {series:?} vs oracle {oracle:?}",
                    gd.h()
                )
            })?;
        }
    }
    Ok("su(1,1) [1,1,1,1,1], su(2,1) [1,4,9,16,25]".into())
}

fn components() -> Outcome {
    let f = form("su(1,1)");
    let gds: Vec<GradedDecomposition> = f.principal.iter().map(|(g, _, _)| g.clone()).collect();
    ensure(gds.len() == 2, || {
        format!("{} principal gradings", gds.len())
    })?;
    let split = components_split(&gds, &f.kd, 4).unwrap();
    ensure(split.total_dims == vec![2, 2, 2, 2, 2], || {
        format!("total {:?}", split.total_dims)
    })?;
    Ok(format!("total {:?}", split.total_dims))
}

fn triples() -> Outcome {
    let mut count = 0;
    for (i, name) in SWEEP_FORMS.iter().enumerate() {
        let f = form(name);
        for j in 0..25u64 {
            let mut r = rng(SEED, 10_000 * i as u64 + j);
            let full = r.random_bool(0.5);
            let x = random_nilpotent(&f.real, &mut r, full).unwrap();
            let t = ks_normalize(&f.real, &jm_triple(&f.real, &x).unwrap()).unwrap();
            let ok = identities(&f.real, &t);
            ensure(ok.iter().all(|&b| b), || {
                format!("{name} trial {j}: {ok:?}")
            })?;
            count += 1;
        }
        for (gd, _, cert) in &f.principal {
            let t = ks_normalize(&f.real, &jm_triple(&f.real, &cert.x).unwrap()).unwrap();
            let oracle: Vec<_> = ad_grading_dims(&f.real, &t.h)
                .unwrap()
                .into_iter()
                .filter(|(_, d)| *d != (0, 0))
                .collect();
            let combinatorial: Vec<_> = gd
                .dims()
                .into_iter()
                .filter(|(_, d)| *d != (0, 0))
                .collect();
            ensure(oracle == combinatorial, || {
                format!("{name} H={:?}: {oracle:?} vs {combinatorial:?}", gd.h())
            })?;
        }
    }
    Ok(format!(
        "{count} random nilpotents, six identities each; principal dims match"
    ))
}

fn dense_orbits() -> Outcome {
    let mut notes = Vec::new();
    for name in SWEEP_FORMS {
        let f = form(name);
        let nil = f.principal[0].2.nilcone_dim;
        for (gd, _, cert) in &f.principal {
            let h = f.real.cartan_element(gd.h()).unwrap();
            ensure(dense_orbit_check(&f.real, &h, &cert.x).unwrap(), || {
                format!("{name} H={:?}: principal not dense", gd.h())
            })?;
        }
        // A single p₂ root vector when dim p₂ ≥ 2, otherwise X = 0.
        let (gd, _, _) = &f.principal[0];
        let h = f.real.cartan_element(gd.h()).unwrap();
        let p2 = gd.p2_roots();
        let (x, label) = if p2.len() >= 2 {
            (
                f.real.root_vector(&p2[0]).unwrap().clone(),
                format!("E_{}", p2[0]),
            )
        } else {
            (
                kspringer::linalg::RationalMatrix::zeros(f.real.n, f.real.n),
                "0".to_string(),
            )
        };
        ensure(orbit_dimension(&f.real, &x).unwrap() < nil, || {
            format!("{name}: {label} is principal")
        })?;
        ensure(!dense_orbit_check(&f.real, &h, &x).unwrap(), || {
            format!("{name}: {label} reported dense")
        })?;
        notes.push(format!("{name}: {label}"));
    }
    Ok(format!("non-principal {}", notes.join(", ")))
}

fn bott() -> Outcome {
    let a1 = RootSubsystem::full(Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap()));
    for n in 0..6 {
        let c = line_cohomology(&Weight(vec![n]), &a1);
        ensure(
            c.nonzero_degrees() == vec![0] && c.total_dimension(&a1).unwrap() == n + 1,
            || format!("H⁰(𝒪({n}))"),
        )?;
    }
    let c = line_cohomology(&Weight(vec![-3]), &a1);
    ensure(
        c.nonzero_degrees() == vec![1] && c.total_dimension(&a1).unwrap() == 2,
        || format!("H(𝒪(−3)) = {c:?}"),
    )?;
    ensure(
        line_cohomology(&Weight(vec![-1]), &a1)
            .nonzero_degrees()
            .is_empty(),
        || "𝒪(−1) not acyclic".into(),
    )?;

    let types = [
        (TypeLabel::A, 1),
        (TypeLabel::A, 2),
        (TypeLabel::A, 3),
        (TypeLabel::B, 2),
        (TypeLabel::B, 3),
        (TypeLabel::C, 3),
        (TypeLabel::G2, 2),
    ];
    let mut r = rng(SEED, 7);
    for trial in 0..200 {
        let (label, rank) = types[trial % types.len()];
        let sub = RootSubsystem::full(Arc::new(RootSystem::new(label, rank).unwrap()));
        let lambda = Weight((0..rank).map(|_| r.random_range(-6..=6)).collect());
        let shifted = Weight(lambda.0.iter().map(|v| v + 1).collect());
        let pairings = sub.positive_pairings(&shifted);
        let c = line_cohomology(&lambda, &sub);
        if pairings.contains(&0) {
            ensure(c.nonzero_degrees().is_empty(), || {
                format!("{label:?}{rank} λ={:?}: singular but nonzero", lambda.0)
            })?;
        } else {
            let length = pairings.iter().filter(|&&p| p < 0).count();
            ensure(c.nonzero_degrees() == vec![length], || {
                format!(
                    "{label:?}{rank} λ={:?}: {:?} vs {length}",
                    lambda.0,
                    c.nonzero_degrees()
                )
            })?;
        }
        let dual_weight = Weight(lambda.0.iter().map(|v| -v - 2).collect());
        let lhs = euler_of_weights(std::slice::from_ref(&lambda), &sub);
        let mut rhs = euler_of_weights(&[dual_weight], &sub).dual(&sub);
        if sub.num_positive() % 2 == 1 {
            rhs = rhs.negated();
        }
        ensure(lhs == rhs, || {
            format!(
                "{label:?}{rank} λ={:?}: Serre duality {lhs:?} vs {rhs:?}",
                lambda.0
            )
        })?;
    }
    Ok("P¹ pins, concentration and Serre duality over 200 weights".into())
}

fn blattner() -> Outcome {
    let mut checked = 0;
    for name in ["su(1,1)", "su(2,1)"] {
        let f = form(name);
        for (gd, pd, _) in &f.principal {
            for lambda in vanishing_sample(pd, &f.kd, 2) {
                let series = euler_series(&lambda, gd, &f.kd, 6);
                let mut mus: Vec<Weight> = series
                    .per_degree
                    .iter()
                    .flat_map(|c| c.iter().map(|(w, _)| w.clone()))
                    .collect();
                mus.sort();
                mus.dedup();
                let b = kspringer::series::Blattner::new(gd, &f.kd).unwrap();
                let depth = mus
                    .iter()
                    .map(|mu| b.max_degree(mu, &lambda).unwrap())
                    .max()
                    .unwrap_or(0)
                    .max(6);
                let deep = euler_series(&lambda, gd, &f.kd, depth);
                for mu in &mus {
                    let want: i64 = deep.per_degree.iter().map(|c| c.get(mu)).sum();
                    let got = blattner_multiplicity(mu, &lambda, gd, &f.kd).unwrap();
                    ensure(got == want, || {
                        format!(
                            "{name} λ′={:?} μ={:?}: blattner {got}, series {want}",
                            lambda.0, mu.0
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (λ′, μ) totals agree"))
}

fn qct() -> Outcome {
    let report = |name: &str| {
        let mut c = JobConfig::new(FormConfig::named(name));
        c.checks = vec![Check::Qct];
        let r = run(&c).unwrap();
        let q = r.check("qct").unwrap().clone();
        (q.verdict, q.details)
    };
    let (v, d) = report("su(1,1)");
    ensure(v == Verdict::Evidence && d["label"] == "EVIDENCE", || {
        format!("su(1,1) labeled {v:?}")
    })?;
    ensure(d["g1_evidence"] == false && d["components"] == 2, || {
        format!("su(1,1): {d}")
    })?;
    let (v, d) = report("su(2,2)");
    ensure(v == Verdict::Evidence && d["label"] == "EVIDENCE", || {
        format!("su(2,2) labeled {v:?}")
    })?;
    ensure(d["principal_k_orbits_even"] == true, || {
        format!("su(2,2) principal orbits: {}", d["principal_orbit_dims"])
    })?;
    ensure(d["sampled_g_orbits_even"] == true, || {
        format!("su(2,2) sampled: {}", d["parity_table"])
    })?;
    Ok(format!("su(1,1) G1 false (2 components); su(2,2) principal K-orbit dims {} even, sampled G-orbit dims even", d["principal_orbit_dims"]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("canonical weight", canonical_weights),
        ("vanishing sweep", vanishing_sweep),
        ("hilbert vs oracle", hilbert),
        ("components", components),
        ("sl2-triple exactness", triples),
        ("dense orbit", dense_orbits),
        ("bott engine", bott),
        ("blattner identity", blattner),
        ("qct evidence", qct),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! One function per workflow. Each builds a [`Report`] whose rows are already
//! in a canonical order, so output never depends on scheduling.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::report::{to_value, Report};
use super::{Method, RunConfig};
use crate::checks::{
    verify_case_table, verify_ineq, verify_jordan_lemmas_exhaustive, verify_jordan_random, CheckReport,
};
use crate::combinatorics::{
    compositions_of, d_alpha, enumerate_bipartitions, enumerate_semistandard, is_semistandard,
    sequence_to_bitableau, Bipartition, BipartitionSequence, Composition,
};
use crate::error::{Error, Result};
use crate::exactla::enumerate_isotropic_in;
use crate::jordan::{exotic_jordan_type, jordan_type};
use crate::polyid::verify_identity_catalog;
use crate::spaltenstein::{
    check_guard, conjecture_evidence, estimate_fiber_size, fiber_census, fit_count_polynomial,
    stratum_census_x2, twos_ones_counts, verify_theorem_main, CountSeries, DegreeMethod, FlagType,
};
use crate::steinberg::{rsk_extract, steinberg_dim_prediction, steinberg_total_counts, RskStatus};
use crate::symplectic::{
    degenerate_form, grass_perp_dim, normal_basis, normal_basis_diagram, normal_index, normal_index_star,
};

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut report = match cfg.command.as_str() {
        "orbits" => orbits(cfg)?,
        "normal-basis" => normal_basis_cmd(cfg)?,
        "ejordan" => ejordan(cfg)?,
        "fibers" => fibers(cfg)?,
        "strata" => strata(cfg)?,
        "verify identities" => identities()?,
        "verify case-analysis" => {
            let n = cfg.n.unwrap_or(2);
            let r = verify_case_table(n, |_| cfg.primes.clone())?;
            check_rows("verify case-analysis", vec![r])
        }
        "verify ineq" => {
            let n = cfg.n.unwrap_or(3);
            let reps = cfg
                .primes
                .iter()
                .map(|&q| {
                    verify_ineq(n, q).map(|mut r| {
                        r.name = format!("ineq q={q}");
                        r
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            check_rows("verify ineq", reps)
        }
        "verify main" => verify_main(cfg)?,
        "verify jordan-lemmas" => {
            let n = cfg.n.unwrap_or(3);
            let exhaustive = verify_jordan_lemmas_exhaustive(n, &cfg.primes)?;
            let random = verify_jordan_random(
                cfg.trials.unwrap_or(10_000),
                cfg.seed,
                &cfg.primes,
                cfg.max_dim.unwrap_or(8),
            )?;
            check_rows("verify jordan-lemmas", vec![exhaustive, random])
        }
        "rsk" => rsk(cfg)?,
        "grass-count" => grass_count(cfg)?,
        other => return Err(Error::InvalidArgument(format!("unknown command {other:?}"))),
    };
    report.params = match to_value(cfg) {
        Value::Object(m) => m,
        _ => unreachable!("RunConfig serializes to an object"),
    };
    Ok(report)
}

fn orbits(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n.expect("resolved");
    let mut r = Report::new("orbits", &["mu", "nu", "jordan_type", "nilpotency_order", "v_is_zero"]);
    for b in enumerate_bipartitions(n) {
        let pt = normal_basis(&b, cfg.primes[0])?;
        r.push_row(vec![
            to_value(&b.mu),
            to_value(&b.nu),
            to_value(jordan_type(&pt.x)?),
            json!(b.row_sums().largest()),
            json!(pt.v_is_zero()),
        ]);
    }
    r.summarize("orbits", r.rows.len());
    Ok(r)
}

fn normal_basis_cmd(cfg: &RunConfig) -> Result<Report> {
    let b = cfg.orbit()?;
    let q = cfg.primes[0];
    let pt = normal_basis(b, q)?;
    let dim = pt.dim();
    let mut names = vec![String::new(); dim];
    for (i0, &len) in b.row_sums().parts().iter().enumerate() {
        for j in 1..=len as usize {
            names[normal_index(b, i0 + 1, j)] = format!("v_{},{}", i0 + 1, j);
            names[normal_index_star(b, i0 + 1, j)] = format!("v*_{},{}", i0 + 1, j);
        }
    }
    let mut r = Report::new(
        "normal-basis",
        &["index", "vector", "x_image", "dual_index", "form_value", "v_coeff"],
    );
    for a in 0..dim {
        let image: Vec<u32> = (0..dim).map(|row| pt.x.get(row, a)).collect();
        let x_image = match image.iter().position(|&c| c != 0) {
            None => Value::Null,
            Some(t) => json!(names[t]),
        };
        let dual = dim - 1 - a;
        r.push_row(vec![
            json!(a),
            json!(names[a]),
            x_image,
            json!(dual),
            json!(pt.space.form().get(a, dual)),
            json!(pt.v[a]),
        ]);
    }
    r.summarize("diagram", normal_basis_diagram(b));
    r.summarize("x", matrix_rows(&pt.x));
    r.summarize("form", matrix_rows(pt.space.form()));
    r.summarize("v", &pt.v);
    r.summarize("q", q);
    Ok(r)
}

fn matrix_rows(m: &crate::exactla::FqMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn ejordan(cfg: &RunConfig) -> Result<Report> {
    let orbits = match &cfg.bipartition {
        Some(b) => vec![b.clone()],
        None => enumerate_bipartitions(cfg.n.expect("resolved")),
    };
    let mut r = Report::new("ejordan", &["mu", "nu", "q", "recovered", "match"]);
    for b in &orbits {
        for &q in &cfg.primes {
            let got = exotic_jordan_type(&normal_basis(b, q)?)?;
            let ok = &got == b;
            r.push_row(vec![to_value(&b.mu), to_value(&b.nu), json!(q), to_value(&got), json!(ok)]);
            if !ok {
                r.fail(json!({"orbit": b, "q": q, "recovered": got}));
            }
        }
    }
    Ok(r)
}

fn key_flags(key: &BipartitionSequence, alpha: &Composition) -> (bool, bool) {
    match sequence_to_bitableau(key) {
        Ok(t) => (true, is_semistandard(&t, alpha).unwrap_or(false)),
        Err(_) => (false, false),
    }
}

fn fibers(cfg: &RunConfig) -> Result<Report> {
    let (b, alpha) = (cfg.orbit()?, cfg.alpha()?);
    let ft = FlagType::new(alpha.clone());
    let mut r = Report::new("fibers", &["q", "key", "nested", "semistandard", "count"]);
    let mut series: BTreeMap<BipartitionSequence, CountSeries> = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for &q in &cfg.primes {
        let pt = normal_basis(b, q)?;
        let census = fiber_census(&pt, &ft, cfg.guard)?;
        totals.insert(q.to_string(), census.values().sum::<u64>());
        for (key, &count) in &census {
            let (nested, semistandard) = key_flags(key, alpha);
            r.push_row(vec![json!(q), to_value(key), json!(nested), json!(semistandard), json!(count)]);
            series.entry(key.clone()).or_default();
        }
        for (key, cs) in series.iter_mut() {
            cs.insert(q, census.get(key).copied().unwrap_or(0))?;
        }
    }
    // Keys first seen at a later prime were absent, i.e. zero, earlier.
    for cs in series.values_mut() {
        for &q in &cfg.primes {
            if cs.get(q).is_none() {
                cs.insert(q, 0)?;
            }
        }
    }
    r.summarize("d_alpha", d_alpha(b, alpha)?);
    r.summarize("semistandard_bitableaux", enumerate_semistandard(b, alpha).len());
    r.summarize("flags", totals);
    if cfg.primes.len() >= 3 {
        let fits: Vec<Value> = series
            .iter()
            .map(|(key, cs)| match fit_count_polynomial(cs, cfg.primes.len() - 2) {
                Ok(p) => json!({"key": key, "polynomial": p.to_string(), "degree": p.degree()}),
                Err(e) => json!({"key": key, "polynomial": null, "reason": e.reason}),
            })
            .collect();
        r.summarize("fits", fits);
    }
    Ok(r)
}

fn strata(cfg: &RunConfig) -> Result<Report> {
    let b = cfg.orbit()?;
    let (n1, n2) = twos_ones_counts(b)
        .ok_or_else(|| Error::InvalidArgument(format!("strata needs x² = 0, and {b} has larger blocks")))?;
    let ks: Vec<usize> = match cfg.k {
        Some(k) => vec![k],
        None => (0..=b.size() as usize).collect(),
    };
    let mut r = Report::new("strata", &["q", "k", "k2", "h", "case", "stratum", "dimension", "count"]);
    for &q in &cfg.primes {
        let pt = normal_basis(b, q)?;
        for &k in &ks {
            for (key, count) in stratum_census_x2(&pt, k, cfg.guard)? {
                r.push_row(vec![
                    json!(q),
                    json!(k),
                    json!(key.k2),
                    json!(key.h),
                    json!(key.tag.kind.to_string()),
                    key.stratum.map_or(Value::Null, |s| json!(s.to_string())),
                    json!(key.dimension(n1, n2)?),
                    json!(count),
                ]);
            }
        }
    }
    Ok(r)
}

fn identities() -> Result<Report> {
    let rep = verify_identity_catalog();
    let mut r = Report::new("verify identities", &["stratum", "passed", "residual"]);
    for o in &rep.outcomes {
        r.push_row(vec![json!(o.stratum.to_string()), json!(o.passed), json!(o.residual)]);
        if !o.passed {
            r.fail(o);
        }
    }
    r.summarize("passed", rep.passed());
    r.summarize("total", rep.outcomes.len());
    Ok(r)
}

fn check_rows(command: &str, reports: Vec<CheckReport>) -> Report {
    let mut r = Report::new(command, &["check", "cases", "mismatches", "skipped"]);
    for rep in &reports {
        r.push_row(vec![
            json!(rep.name),
            json!(rep.cases),
            json!(rep.mismatches),
            json!(rep.skipped.len()),
        ]);
        for c in &rep.counterexamples {
            r.fail(json!({"check": rep.name, "counterexample": c}));
        }
        if rep.mismatches > rep.counterexamples.len() as u64 {
            r.fail(json!({"check": rep.name, "unlisted_mismatches": rep.mismatches - rep.counterexamples.len() as u64}));
        }
        if rep.cases == 0 {
            r.fail(json!({"check": rep.name, "reason": "no cases were run"}));
        }
    }
    let skipped: Vec<&String> = reports.iter().flat_map(|c| &c.skipped).collect();
    r.summarize("skipped", skipped);
    r
}

fn verify_main(cfg: &RunConfig) -> Result<Report> {
    let runs: Vec<(Bipartition, Composition)> = match (&cfg.bipartition, &cfg.alpha) {
        (Some(b), Some(a)) => vec![(b.clone(), a.clone())],
        _ => {
            let n = cfg.n.expect("resolved");
            let orbits: Vec<Bipartition> = enumerate_bipartitions(n)
                .into_iter()
                .filter(|b| twos_ones_counts(b).is_some())
                .collect();
            orbits
                .iter()
                .flat_map(|b| compositions_of(n).into_iter().map(move |a| (b.clone(), a)))
                .collect()
        }
    };
    let method = match cfg.method.unwrap_or(Method::Stratified) {
        Method::Fitted => DegreeMethod::Fitted { primes: cfg.primes.clone() },
        Method::Stratified => DegreeMethod::Stratified { primes: cfg.primes.clone() },
    };
    let mut r = Report::new(
        "verify main",
        &["mu", "nu", "alpha", "d_alpha", "key", "semistandard", "degree", "ok"],
    );
    let mut evidence_only = BTreeSet::new();
    for (b, a) in &runs {
        let ft = FlagType::new(a.clone());
        check_guard(estimate_fiber_size(&normal_basis(b, *cfg.primes.iter().max().expect("nonempty"))?, &ft)?, cfg.guard)?;
        let rep = if twos_ones_counts(b).is_some() {
            verify_theorem_main(b, a, method.clone(), cfg.guard)?
        } else {
            evidence_only.insert(format!("{b} α={a}"));
            conjecture_evidence(b, a, method.clone(), cfg.guard)?
        };
        for k in &rep.keys {
            r.push_row(vec![
                to_value(&b.mu),
                to_value(&b.nu),
                to_value(a),
                json!(rep.d_alpha),
                to_value(&k.key),
                json!(k.semistandard),
                to_value(k.degree),
                json!(k.ok),
            ]);
        }
        if !rep.passed && twos_ones_counts(b).is_some() {
            r.fail(&rep);
        }
    }
    r.summarize("runs", runs.len());
    r.summarize("evidence_only", evidence_only);
    Ok(r)
}

fn rsk(cfg: &RunConfig) -> Result<Report> {
    let alpha = cfg.alpha()?;
    let beta = cfg.beta.as_ref().expect("resolved");
    let rep = rsk_extract(alpha, beta, &cfg.primes, cfg.guard)?;
    let mut r = Report::new("rsk", &["matrix", "t", "t_prime", "degree", "status"]);
    for e in &rep.entries {
        let show = |t: &Option<crate::combinatorics::Bitableau>| t.as_ref().map_or(Value::Null, |t| json!(t.to_string()));
        let status = match &e.status {
            RskStatus::Matched => "matched".to_string(),
            RskStatus::Unresolved(why) => format!("unresolved: {why}"),
        };
        r.push_row(vec![json!(e.matrix.flattened()), show(&e.t), show(&e.t_prime), to_value(e.degree), json!(status)]);
    }
    if !rep.bijective {
        r.fail(json!({
            "reason": "the extracted assignment is not a bijection onto same-shape semistandard pairs",
            "entries": rep.entries,
            "pair_count": rep.pair_count,
        }));
    }
    let total = steinberg_total_counts(alpha, beta, &cfg.primes)?;
    let fit = if cfg.primes.len() >= 3 {
        match fit_count_polynomial(&total, cfg.primes.len() - 2) {
            Ok(p) => json!({"polynomial": p.to_string(), "degree": p.degree()}),
            Err(e) => json!({"polynomial": null, "reason": e.reason}),
        }
    } else {
        json!({"polynomial": null, "reason": "fewer than three primes"})
    };
    r.summarize("bijective", rep.bijective);
    r.summarize("pair_count", rep.pair_count);
    r.summarize("total_counts", &total);
    r.summarize("total_fit", fit);
    r.summarize("predicted_total_degree", steinberg_dim_prediction(alpha, beta, alpha.size()));
    Ok(r)
}

fn grass_count(cfg: &RunConfig) -> Result<Report> {
    let (k, d, rr) = (cfg.k.expect("resolved"), cfg.d.expect("resolved"), cfg.r.expect("resolved"));
    let expected = grass_perp_dim(k as i64, d as i64, rr as i64)?;
    let mut r = Report::new("grass-count", &["q", "count"]);
    let mut cs = CountSeries::new();
    for &q in &cfg.primes {
        let form = degenerate_form(d, rr, q);
        let full = crate::exactla::Subspace::full(q, d);
        let count = enumerate_isotropic_in(&form, k, &full)
            .count_within(cfg.guard)
            .ok_or(Error::GuardExceeded { estimated: u128::from(cfg.guard) + 1, guard: cfg.guard })?;
        cs.insert(q, count)?;
        r.push_row(vec![json!(q), json!(count)]);
    }
    r.summarize("expected_degree", expected);
    if cfg.primes.len() < 2 {
        r.fail(json!({"reason": "fitting needs at least two primes"}));
        return Ok(r);
    }
    match fit_count_polynomial(&cs, cfg.primes.len() - 2) {
        Ok(p) => {
            let degree = p.degree().map_or(-1, |x| x as i64);
            r.summarize("polynomial", p.to_string());
            r.summarize("fitted_degree", degree);
            if degree != expected {
                r.fail(json!({"k": k, "d": d, "r": rr, "fitted_degree": degree, "expected_degree": expected}));
            }
        }
        Err(e) => r.fail(json!({
            "k": k, "d": d, "r": rr,
            "reason": format!("{}; pass more primes with --q (and --max-prime)", e.reason),
        })),
    }
    Ok(r)
}

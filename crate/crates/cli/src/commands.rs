//! One function per subcommand, each returning the text to emit.

use std::collections::BTreeSet;
use std::fmt::Write;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use tandem_walks::bijection::{self, oracle, BijectionError, Walk2, Walk3};
use tandem_walks::classify::{self, FamilySpec};
use tandem_walks::enumerate::{self, EnumerateOptions, Target};
use tandem_walks::exponent::{self, Rationality};
use tandem_walks::fit::{self, FitOptions};
use tandem_walks::guess;
use tandem_walks::{BallotModel, CountSequence, Mode, TandemModel, TABLE1_BALLOT};

use crate::args::*;
use crate::format::{self, SCHEMA_VERSION};
use crate::{series, svg};

/// Output of one subcommand. A failed check still prints its report.
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Self {
            text,
            failure: None,
        }
    }
}

pub fn parse_model(s: &str) -> Result<TandemModel> {
    s.parse().with_context(|| format!("invalid model `{s}`"))
}

fn parse_point(s: &str) -> Result<(i64, i64)> {
    let bad = || anyhow!("invalid target `{s}`: expected `i,j`");
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn options(cell_limit: u64) -> EnumerateOptions {
    EnumerateOptions { cell_limit }
}

pub fn enumerate(a: &EnumerateArgs, cell_limit: u64) -> Result<Outcome> {
    let model = parse_model(&a.model)?;
    let target = match (a.what, &a.target) {
        (What::Endpoint, Some(t)) => Target::Endpoint(parse_point(t)?),
        (What::Endpoint, None) => bail!("--what endpoint requires --target i,j"),
        (_, Some(_)) => bail!("--target is only valid with --what endpoint"),
        (What::Excursions, None) => Target::Excursions,
        (What::Total, None) => Target::Total,
    };
    let seq = enumerate::enumerate(
        &model.step_set(),
        a.n_max,
        a.mode.into(),
        target,
        &options(cell_limit),
    )?;
    if a.json {
        let counts: Vec<Value> = match &seq {
            CountSequence::Exact(v) => v.iter().map(|c| Value::String(c.to_string())).collect(),
            CountSequence::LogFloat(v) => v
                .iter()
                .map(|&x| Value::String(format::log_value(x)))
                .collect(),
        };
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("model".into(), json!(model.to_string()));
        doc.insert("ballot".into(), json!(model.to_ballot().to_string()));
        doc.insert("period".into(), json!(model.period()));
        doc.insert("what".into(), json!(what_name(a.what)));
        if let Target::Endpoint((i, j)) = target {
            doc.insert("target".into(), json!([i, j]));
        }
        doc.insert("mode".into(), json!(mode_name(a.mode)));
        doc.insert("n_max".into(), json!(a.n_max));
        doc.insert("cell_limit".into(), json!(cell_limit));
        let key = if seq.mode() == Mode::Exact {
            "count"
        } else {
            "log_count"
        };
        doc.insert(key.into(), Value::Array(counts));
        return Ok(format::to_json(&Value::Object(doc)).into());
    }
    let mut s = String::new();
    match &seq {
        CountSequence::Exact(v) => {
            s.push_str("n,count\n");
            for (n, c) in v.iter().enumerate() {
                writeln!(s, "{n},{c}").unwrap();
            }
        }
        CountSequence::LogFloat(v) => {
            s.push_str("n,log_count\n");
            for (n, &x) in v.iter().enumerate() {
                writeln!(s, "{n},{}", format::log_value(x)).unwrap();
            }
        }
    }
    Ok(s.into())
}

fn what_name(w: What) -> &'static str {
    match w {
        What::Excursions => "excursions",
        What::Total => "total",
        What::Endpoint => "endpoint",
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Exact => "exact",
        ModeArg::Logfloat => "logfloat",
    }
}

pub fn exponent(a: &ExponentArgs) -> Result<Outcome> {
    let model = parse_model(&a.model)?;
    let r = exponent::exponent_report(&model)?;
    let gamma_sq = r.gamma_sq.as_ref().map(format::ratio).unwrap_or_default();
    let closed = r.alpha_closed_form.clone().unwrap_or_default();
    if a.json {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "model": model.to_string(),
            "ballot": model.to_ballot().to_string(),
            "period": model.period(),
            "X": format::float(r.x),
            "Y": format::float(r.y),
            "mu": format::float(r.mu),
            "gamma_sq": gamma_sq,
            "gamma": format::float(r.gamma),
            "alpha": format::alpha_value(&r),
            "alpha_closed_form": closed,
            "rationality": r.rationality.as_str(),
            "dfiniteness": r.dfiniteness.as_str(),
        });
        return Ok(format::to_json(&doc).into());
    }
    let mut s = String::new();
    writeln!(s, "model: {model}").unwrap();
    writeln!(s, "ballot: {}", model.to_ballot()).unwrap();
    writeln!(s, "period: {}", model.period()).unwrap();
    writeln!(s, "X: {}", r.x).unwrap();
    writeln!(s, "Y: {}", r.y).unwrap();
    writeln!(s, "mu: {}", r.mu).unwrap();
    writeln!(s, "gamma_sq: {gamma_sq}").unwrap();
    writeln!(s, "gamma: {}", r.gamma).unwrap();
    writeln!(s, "alpha: {}", format::alpha(&r)).unwrap();
    writeln!(s, "alpha_closed_form: {closed}").unwrap();
    writeln!(s, "rationality: {}", r.rationality.as_str()).unwrap();
    writeln!(s, "dfiniteness: {}", r.dfiniteness.as_str()).unwrap();
    Ok(s.into())
}

pub fn table1() -> Result<Outcome> {
    let mut s = String::from("a,b,c,A,B,C,gamma_sq,alpha,alpha_closed_form,verdict\n");
    for [a, b, c] in TABLE1_BALLOT {
        let ballot = BallotModel::new(a, b, c)?;
        let m = ballot.to_tandem();
        let r = exponent::exponent_report(&m)?;
        let [ta, tb, tc] = m.lengths();
        writeln!(
            s,
            "{a},{b},{c},{ta},{tb},{tc},{},{},{},{}",
            format::ratio(
                r.gamma_sq
                    .as_ref()
                    .expect("tandem models have exact gamma^2")
            ),
            format::alpha(&r),
            r.alpha_closed_form.as_deref().unwrap_or_default(),
            r.dfiniteness.as_str()
        )
        .unwrap();
    }
    Ok(s.into())
}

pub fn table2(a: &Table2Args) -> Result<Outcome> {
    if a.bound == 0 {
        bail!("--bound must be positive");
    }
    let mut s = String::from("gamma_sq,angle,alpha,A,B,C\n");
    for spec in FamilySpec::ALL {
        let angle = match spec.alpha() {
            -4 => "pi/3",
            -5 => "pi/4",
            _ => "pi/6",
        };
        for m in classify::search_triples(&spec.target_rational(), a.bound) {
            let [x, y, z] = m.lengths();
            writeln!(
                s,
                "{},{angle},{},{x},{y},{z}",
                format::ratio(&spec.target_rational()),
                spec.alpha()
            )
            .unwrap();
        }
    }
    Ok(s.into())
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let r = series::parse_term(s)
        .ok_or_else(|| anyhow!("invalid --gamma-sq `{s}`: expected num/den"))?;
    if !r.is_positive() || r >= BigRational::one() {
        bail!("--gamma-sq `{s}` must lie strictly between 0 and 1");
    }
    Ok(r)
}

pub fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let r = parse_ratio(&a.gamma_sq)?;
    if a.bound == 0 {
        bail!("--bound must be positive");
    }
    let alpha = match exponent::classify_rationality(&r)? {
        Rationality::Rational(k) => k.to_string(),
        _ => {
            let g = (num_traits::ToPrimitive::to_f64(&r).expect("ratio in (0,1)")).sqrt();
            format!("{:.10}", exponent::alpha_from_gamma(-g)?)
        }
    };
    let mut s = String::from("A,B,C,alpha\n");
    for m in classify::search_triples(&r, a.bound) {
        let [x, y, z] = m.lengths();
        writeln!(s, "{x},{y},{z},{alpha}").unwrap();
    }
    Ok(s.into())
}

pub struct FitRun {
    pub result: fit::FitResult,
    pub model: TandemModel,
    pub reference_mu: f64,
    pub n_max: usize,
}

pub fn run_fit(
    model: &TandemModel,
    m_max: usize,
    mode: Mode,
    richardson: usize,
    cell_limit: u64,
) -> Result<FitRun> {
    let p = model.period() as usize;
    let n_max = p
        .checked_mul(m_max)
        .ok_or_else(|| anyhow!("--m-max too large"))?;
    let e = enumerate::enumerate(
        &model.step_set(),
        n_max,
        mode,
        Target::Excursions,
        &options(cell_limit),
    )?;
    let opts = FitOptions {
        richardson,
        ..FitOptions::default()
    };
    let report = exponent::exponent_report(model)?;
    let result = fit::estimate_alpha(&e, p, &opts)?.with_reference(report.alpha);
    Ok(FitRun {
        result,
        model: *model,
        reference_mu: report.mu,
        n_max,
    })
}

pub fn fit(a: &FitArgs, cell_limit: u64) -> Result<Outcome> {
    let model = parse_model(&a.model)?;
    let run = run_fit(
        &model,
        a.m_max,
        a.mode.into(),
        a.richardson as usize,
        cell_limit,
    )?;
    let r = &run.result;
    let levels: Vec<Value> = r
        .richardson_levels
        .iter()
        .map(|l| l.last().map_or(Value::Null, |&(_, v)| format::float(v)))
        .collect();
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "model": model.to_string(),
        "period": r.period,
        "m_max": a.m_max,
        "n_max": run.n_max,
        "mode": mode_name(a.mode),
        "richardson": a.richardson,
        "stability": FitOptions::default().stability,
        "cell_limit": cell_limit,
        "m_range": [r.m_range.0, r.m_range.1],
        "level_used": r.level_used,
        "level_last_values": levels,
        "alpha_final": format::float(r.alpha_final),
        "reference_alpha": r.reference_alpha.map_or(Value::Null, format::float),
        "deviation": r.deviation.map_or(Value::Null, format::float),
        "mu_final": format::float(r.mu_final),
        "reference_mu": format::float(run.reference_mu),
        "mu_deviation": format::float(r.mu_final - run.reference_mu),
    });
    if let Some(path) = &a.summary {
        crate::write_file(path, &format::to_json(&summary))?;
    }
    if let Some(path) = &a.plot {
        let pts: Vec<(f64, f64)> = r
            .alpha_estimates
            .iter()
            .map(|&(m, v)| (m as f64, v))
            .collect();
        let title = format!("alpha estimates for ({model})");
        crate::write_file(path, &svg::line_chart(&title, &pts, r.reference_alpha))?;
    }
    if a.json {
        return Ok(format::to_json(&summary).into());
    }
    let mut s = String::from("m,alpha_hat\n");
    for &(m, v) in &r.alpha_estimates {
        writeln!(s, "{m},{v}").unwrap();
    }
    Ok(s.into())
}

pub fn guess(a: &GuessArgs) -> Result<Outcome> {
    let terms = series::read_series(&a.series)?;
    let out = guess::guess_recurrence(&terms, a.max_order, a.max_degree)?;
    let grid: Vec<Value> = out
        .searched
        .iter()
        .map(|c| json!({"order": c.order, "degree": c.degree, "status": c.status.as_str()}))
        .collect();
    let (order, degree, coefficients, text) = match &out.recurrence {
        Some(rec) => (
            json!(rec.order()),
            json!(rec.degree()),
            Value::Array(
                rec.coefficients()
                    .iter()
                    .map(|p| Value::Array(p.iter().map(format::big).collect()))
                    .collect(),
            ),
            json!(rec.to_string()),
        ),
        None => (Value::Null, Value::Null, json!([]), Value::Null),
    };
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "terms": terms.len(),
        "holdout": guess::HOLDOUT,
        "max_order": a.max_order,
        "max_degree": a.max_degree,
        "found": out.recurrence.is_some(),
        "order": order,
        "degree": degree,
        "coefficients": coefficients,
        "recurrence": text,
        "searched_grid": grid,
    });
    Ok(format::to_json(&doc).into())
}

pub fn bijection_check(a: &BijectionArgs, cell_limit: u64) -> Result<Outcome> {
    let ballot: BallotModel = a
        .ballot
        .parse()
        .with_context(|| format!("invalid ballot model `{}`", a.ballot))?;
    let tandem = ballot.to_tandem();
    let n = usize::try_from(a.rounds).context("--rounds too large")?;
    let len = ballot.round_length() as usize * n;
    let opts = options(cell_limit);
    let ballot_count = enumerate::count_ballot_3d(&ballot, n, &opts)?
        .as_exact()
        .expect("exact")[n]
        .clone();
    let excursions = enumerate::enumerate(
        &tandem.step_set(),
        len,
        Mode::Exact,
        Target::Excursions,
        &opts,
    )?;
    let excursion_count = excursions.as_exact().expect("exact")[len].clone();
    let mut failures = Vec::new();
    if ballot_count != excursion_count {
        failures.push("3D and 2D counts differ");
    }

    let brute = match oracle::ballot_walks(&ballot, a.rounds, a.cap) {
        Ok(walks) => {
            let images: Vec<Walk2> = walks.iter().map(bijection::map_walk_3to2).collect();
            let excursions_ok = images.iter().all(|w| w.len() == len && w.is_excursion());
            let round_trip = walks
                .iter()
                .zip(&images)
                .all(|(w, img)| &bijection::map_walk_2to3(img) == w);
            let distinct: BTreeSet<&Walk2> = images.iter().collect();
            let injective = distinct.len() == images.len();
            let count_ok = BigInt::from(walks.len()) == BigInt::from(ballot_count.clone());
            for (ok, msg) in [
                (excursions_ok, "an image is not an excursion"),
                (round_trip, "inverse map does not recover a walk"),
                (injective, "walk map is not injective"),
                (count_ok, "brute-force count differs from the DP count"),
            ] {
                if !ok {
                    failures.push(msg);
                }
            }
            json!({
                "status": "checked",
                "walks": walks.len(),
                "images_are_excursions": excursions_ok,
                "round_trip": round_trip,
                "injective": injective,
            })
        }
        Err(BijectionError::CapExceeded(cap)) => json!({"status": "skipped", "cap": cap}),
        Err(e) => return Err(e.into()),
    };

    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("ballot".into(), json!(ballot.to_string()));
    doc.insert("tandem".into(), json!(tandem.to_string()));
    doc.insert("rounds".into(), json!(a.rounds));
    doc.insert("length".into(), json!(len));
    doc.insert("ballot_count".into(), json!(ballot_count.to_string()));
    doc.insert("excursion_count".into(), json!(excursion_count.to_string()));
    doc.insert(
        "counts_agree".into(),
        json!(ballot_count == excursion_count),
    );
    doc.insert("brute_force".into(), brute);
    if let Some(letters) = &a.walk {
        let w = Walk3::parse(ballot, letters)
            .with_context(|| format!("invalid ballot walk `{letters}`"))?;
        let img = bijection::map_walk_3to2(&w);
        doc.insert(
            "walk".into(),
            json!({"ballot": w.to_string(), "tandem": img.to_string(), "is_excursion": img.is_excursion()}),
        );
    }
    if let Some(letters) = &a.tandem_walk {
        let w = Walk2::parse(tandem, letters)
            .with_context(|| format!("invalid tandem walk `{letters}`"))?;
        let pre = bijection::map_walk_2to3(&w);
        doc.insert(
            "tandem_walk".into(),
            json!({"tandem": w.to_string(), "ballot": pre.to_string(), "rounds": pre.rounds()}),
        );
    }
    Ok(Outcome {
        text: format::to_json(&Value::Object(doc)),
        failure: (!failures.is_empty())
            .then(|| format!("bijection check failed: {}", failures.join("; "))),
    })
}

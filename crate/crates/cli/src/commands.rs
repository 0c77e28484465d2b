use std::time::Instant;

use serde_json::{json, Value};

use lcs::containment::{
    check_open_elements, conjecture_2k_sweep, containment_index, pbw_witness, sl2_witness, ContainmentReport,
};
use lcs::expr::{max_generator, parse_expr};
use lcs::freealg::Identity;
use lcs::linalg::component_size;
use lcs::pbw::{pbw_degree, straighten};
use lcs::quotients::{
    quotient_dims, r23_structure_dims, structure_basis_r22, QuotientSeries, QuotientSpec,
};
use lcs::series::{
    b_dims, check_generation, dim_table, generators_s, n_dims, parse_ideal, DimTable, PureProduct,
};

use crate::report::{emit, Failure, Report};
use crate::{Command, Global, Structure, WitnessKind, DEFAULT_MAX_COORDS};

/// A report plus, when a check disagreed, the reason for exit status 2.
struct Outcome {
    report: Report,
    n: Option<usize>,
    cutoff: Option<usize>,
    mismatch: Option<String>,
}

impl Outcome {
    fn ok(report: Report, n: Option<usize>, cutoff: Option<usize>) -> Self {
        Outcome { report, n, cutoff, mismatch: None }
    }

    fn flag(mut self, bad: bool, why: impl FnOnce() -> String) -> Self {
        if bad {
            self.mismatch = Some(why());
        }
        self
    }
}

pub fn run(cmd: &Command, g: &Global) -> Result<(), Failure> {
    let start = Instant::now();
    let out = dispatch(cmd, g)?;
    emit(verb(cmd), out.n, out.cutoff, out.report, start, g)?;
    match out.mismatch {
        Some(m) => Err(Failure::Mismatch(m)),
        None => Ok(()),
    }
}

fn verb(cmd: &Command) -> &'static str {
    match cmd {
        Command::Dims { .. } => "dims",
        Command::Containment { .. } => "containment",
        Command::Witness { .. } => "witness",
        Command::PbwDegree { .. } => "pbw-degree",
        Command::Membership { .. } => "membership",
        Command::Generators { .. } => "generators",
        Command::VerifyIdentities { .. } => "verify-identities",
        Command::QuotientDims { .. } => "quotient-dims",
        Command::StructureCheck { .. } => "structure-check",
        Command::ConjectureSweep { .. } => "conjecture-sweep",
        Command::OpenElements { .. } => "open-elements",
    }
}

fn max_coords(g: &Global) -> u64 {
    if g.allow_large {
        u64::MAX
    } else {
        DEFAULT_MAX_COORDS
    }
}

/// Rejects components with more than the allowed number of words.
fn check_size(n: usize, degree: usize, g: &Global) -> Result<(), Failure> {
    if n == 0 || n > 9 {
        return Err(Failure::Usage(format!("--n must be in 1..=9, got {}", n)));
    }
    let size = component_size(n, degree).unwrap_or(u64::MAX);
    if size > max_coords(g) {
        return Err(Failure::Usage(format!(
            "degree {} over {} generators has {} words, above the cap of {}; pass --allow-large to proceed",
            degree,
            n,
            size,
            DEFAULT_MAX_COORDS
        )));
    }
    Ok(())
}

fn dispatch(cmd: &Command, g: &Global) -> Result<Outcome, Failure> {
    match cmd {
        Command::Dims { n, ideal, max_degree } => dims(*n, ideal, *max_degree, g),
        Command::Containment { n, tuple, cutoff } => containment(*n, tuple, *cutoff, g),
        Command::Witness { n, tuple, kind } => match kind {
            WitnessKind::Pbw => witness_pbw(*n, tuple, g),
            WitnessKind::Sl2 => witness_sl2(*n, tuple),
        },
        Command::PbwDegree { expr, n } => pbw(expr, *n),
        Command::Membership { n, expr, ideal, degree } => membership(*n, expr, ideal, *degree, g),
        Command::Generators { i, max_degree, check } => generators(*i, *max_degree, *check, g),
        Command::VerifyIdentities { n } => identities(*n),
        Command::QuotientDims { n, modulus, series, r, max_degree } => {
            quotient(*n, modulus, series, *r, *max_degree, g)
        }
        Command::StructureCheck { which, n, r, max_degree } => structure(*which, *n, r, *max_degree, g),
        Command::ConjectureSweep { n_max, k_max, cutoff, max_coords } => sweep(*n_max, *k_max, *cutoff, *max_coords, g),
        Command::OpenElements { cutoff } => open_elements(*cutoff, g),
    }
}

fn table_json(t: &DimTable) -> Value {
    serde_json::to_value(&t.rows).expect("rows serialize")
}

fn dims(n: usize, ideal: &str, d_max: usize, g: &Global) -> Result<Outcome, Failure> {
    check_size(n, d_max, g)?;
    let quotient_index = |prefix: char| -> Result<Option<usize>, Failure> {
        match ideal.strip_prefix(prefix) {
            Some(k) => k
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .map(Some)
                .ok_or_else(|| Failure::Usage(format!("bad series index in `{}`", ideal))),
            None => Ok(None),
        }
    };
    let table = if let Some(k) = quotient_index('N')? {
        n_dims(n, k, d_max)?
    } else if let Some(k) = quotient_index('B')? {
        b_dims(n, k, d_max)?
    } else {
        dim_table(&parse_ideal(ideal, n)?, d_max)?
    };
    let spec = table.rows.first().map(|r| r.spec.clone()).unwrap_or_default();
    let dims: Vec<String> = table.column(&spec).iter().map(|d| d.to_string()).collect();
    let report = Report::new(format!("{} on A_{}: {}", spec, n, dims.join(" ")))
        .set("ideal", spec)
        .set("max_degree", d_max)
        .set("rows", table_json(&table))
        .csv(table.to_csv());
    Ok(Outcome::ok(report, Some(n), Some(d_max)))
}

fn containment_json(r: &ContainmentReport) -> Report {
    let (expr, degree) = match &r.witness {
        Some(w) => (Value::from(w.expr.clone()), Value::from(w.degree)),
        None => (Value::Null, Value::Null),
    };
    let witness = match &r.witness {
        Some(w) => format!(", witness outside M_{} at degree {}", w.target, w.degree),
        None => String::new(),
    };
    Report::new(format!(
        "I(A_{}, {:?}) = {} through degree {} (bounds {}..={}){}",
        r.n, r.tuple, r.index, r.cutoff, r.lower, r.upper, witness
    ))
    .set("tuple", json!(r.tuple))
    .set("index", r.index)
    .set("upper", r.upper)
    .set("lower", r.lower)
    .set("witness_expr", expr)
    .set("witness_degree", degree)
    .set("per_degree", serde_json::to_value(&r.per_degree).expect("rows serialize"))
}

fn containment(n: usize, tuple: &[usize], cutoff: Option<usize>, g: &Global) -> Result<Outcome, Failure> {
    let c = cutoff.unwrap_or_else(|| lcs::containment::default_cutoff(tuple));
    check_size(n, c, g)?;
    let r = containment_index(n, tuple, Some(c))?;
    let outcome = Outcome::ok(containment_json(&r), Some(n), Some(c));
    Ok(outcome.flag(!r.bounds_hold(), || {
        format!("index {} outside the bounds {}..={}", r.index, r.lower, r.upper)
    }))
}

fn witness_pbw(n: usize, tuple: &[usize], g: &Global) -> Result<Outcome, Failure> {
    let sum: usize = tuple.iter().sum();
    check_size(n, sum, g)?;
    let w = pbw_witness(n, tuple)?;
    let target = sum + 2 - tuple.len();
    let outside = !lcs::series::m_span(n, target, sum)?.contains(&w)?;
    let report = Report::new(format!(
        "{} (degree {}) {} M_{}",
        w,
        sum,
        if outside { "lies outside" } else { "lies inside" },
        target
    ))
    .set("kind", "pbw")
    .set("tuple", json!(tuple))
    .set("witness_expr", w.to_string())
    .set("witness_degree", sum)
    .set("pbw_degree", pbw_degree(&w)?)
    .set("target", target)
    .set("outside", outside);
    Ok(Outcome::ok(report, Some(n), Some(sum)).flag(!outside, || format!("witness lies in M_{}", target)))
}

fn witness_sl2(n: usize, tuple: &[usize]) -> Result<Outcome, Failure> {
    let [i, j] = tuple else {
        return Err(Failure::Usage("the sl2 witness takes --tuple i,j".into()));
    };
    let w = sl2_witness(*i, *j, n)?;
    let matrix: Vec<Vec<String>> = w.matrix.0.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect();
    let report = Report::new(format!("trace of the image of L_{} L_{} witness: {}", i, j, w.trace))
        .set("kind", "sl2")
        .set("tuple", json!(tuple))
        .set("witness_expr", w.element.to_string())
        .set("witness_degree", i + j)
        .set("matrix", json!(matrix))
        .set("trace", w.trace.to_string());
    let zero = w.trace.is_zero();
    Ok(Outcome::ok(report, Some(n), None).flag(zero, || "trace vanishes".into()))
}

fn parse(expr: &str, n: usize) -> Result<lcs::Poly, Failure> {
    parse_expr(expr, n).map_err(|e| Failure::Usage(format!("`{}`: {}", expr, e)))
}

fn pbw(expr: &str, n: Option<usize>) -> Result<Outcome, Failure> {
    let n = n.unwrap_or_else(|| max_generator(expr).max(1));
    let p = parse(expr, n)?;
    let deg = pbw_degree(&p)?;
    let report = Report::new(format!("pbw_degree({}) = {}", p, deg))
        .set("expr", p.to_string())
        .set("pbw_degree", deg)
        .set("pbw_terms", straighten(&p).terms().len());
    Ok(Outcome::ok(report, Some(n), None))
}

fn membership(n: usize, expr: &str, ideal: &str, degree: Option<usize>, g: &Global) -> Result<Outcome, Failure> {
    let p = parse(expr, n)?;
    let d = match degree {
        Some(d) => d,
        None if p.is_zero() => 0,
        None if p.is_homogeneous() => p.degree().unwrap_or(0),
        None => return Err(Failure::Usage("element is not homogeneous; pass --degree".into())),
    };
    check_size(n, d, g)?;
    let spec = parse_ideal(ideal, n)?;
    let part = p.component(d);
    let contained = spec.component(d)?.contains(&part)?;
    let report = Report::new(format!(
        "{} {} {} at degree {}",
        part,
        if contained { "is contained in" } else { "is not contained in" },
        spec,
        d
    ))
    .set("expr", part.to_string())
    .set("ideal", spec.to_string())
    .set("degree", d)
    .set("contained", contained);
    Ok(Outcome::ok(report, Some(n), Some(d)))
}

fn product_expr(p: &PureProduct) -> String {
    p.iter()
        .map(|c| {
            let gens: Vec<String> = c.iter().map(|l| format!("x{}", l)).collect();
            if gens.len() == 1 {
                gens[0].clone()
            } else {
                format!("[{}]", gens.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn generators(i: usize, d_max: usize, check: bool, g: &Global) -> Result<Outcome, Failure> {
    check_size(2, d_max, g)?;
    let gens: Vec<String> = generators_s(i, d_max)?.iter().map(product_expr).collect();
    let mut report = Report::new(format!("S_{} through degree {}: {} products", i, d_max, gens.len()))
        .set("i", i)
        .set("max_degree", d_max)
        .set("generators", json!(gens));
    let mut bad = None;
    if check {
        let rows = check_generation(i, d_max)?;
        bad = rows.iter().find(|r| !r.equal).map(|r| r.degree);
        report = report.set("generation", serde_json::to_value(&rows).expect("rows serialize"));
        report.summary.push_str(if bad.is_none() { ", generates M_i" } else { ", does not generate M_i" });
    }
    Ok(Outcome::ok(report, Some(2), Some(d_max)).flag(bad.is_some(), || {
        format!("S_{} falls short of M_{} at degree {}", i, i, bad.unwrap_or(0))
    }))
}

fn identities(n: usize) -> Result<Outcome, Failure> {
    let mut results = serde_json::Map::new();
    let mut failed = Vec::new();
    for id in Identity::ALL {
        let ok = id.verify(n)?;
        if !ok {
            failed.push(id.name());
        }
        results.insert(id.name().into(), ok.into());
    }
    let summary = if failed.is_empty() {
        format!("all {} identities hold on A_{}", Identity::ALL.len(), n)
    } else {
        format!("failing on A_{}: {}", n, failed.join(", "))
    };
    let report = Report::new(summary).set("identities", Value::Object(results));
    let bad = !failed.is_empty();
    Ok(Outcome::ok(report, Some(n), None).flag(bad, || format!("{} fails", failed.join(", "))))
}

fn quotient(n: usize, modulus: &[usize], series: &str, r: usize, d_max: usize, g: &Global) -> Result<Outcome, Failure> {
    let [i, j] = modulus else {
        return Err(Failure::Usage("--mod takes i,j".into()));
    };
    check_size(n, d_max, g)?;
    let spec = QuotientSpec::new(n, *i, *j)?;
    let s = QuotientSeries::parse(series, r)?;
    let dims = quotient_dims(&spec, s, d_max)?;
    let mut table = DimTable::default();
    for (d, &dim) in dims.iter().enumerate() {
        table.push(s.to_string(), d, dim);
    }
    let shown: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let report = Report::new(format!("{} of {}: {}", s, spec, shown.join(" ")))
        .set("quotient", spec.to_string())
        .set("series", s.to_string())
        .set("max_degree", d_max)
        .set("rows", table_json(&table))
        .csv(table.to_csv());
    Ok(Outcome::ok(report, Some(n), Some(d_max)))
}

fn structure(which: Structure, n_max: usize, rs: &[usize], d_max: Option<usize>, g: &Global) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    let ns: Vec<usize> = match which {
        Structure::R22 => (1..=n_max).collect(),
        Structure::R23 => vec![2],
    };
    let d_max = d_max.unwrap_or(match which {
        Structure::R22 => 7,
        Structure::R23 => 8,
    });
    let rs: Vec<usize> = match (rs.is_empty(), which) {
        (false, _) => rs.to_vec(),
        (true, Structure::R22) => (2..=5).collect(),
        (true, Structure::R23) => vec![5],
    };
    for &n in &ns {
        check_size(n, d_max, g)?;
        let spec = match which {
            Structure::R22 => QuotientSpec::new(n, 2, 2)?,
            Structure::R23 => QuotientSpec::new(n, 2, 3)?,
        };
        for &r in &rs {
            let echelon = quotient_dims(&spec, QuotientSeries::N(r), d_max)?;
            let formula = match which {
                Structure::R22 => (0..=d_max).map(|d| structure_basis_r22(n, r, d)).collect::<lcs::Result<Vec<_>>>()?,
                Structure::R23 => r23_structure_dims(r, d_max)?,
            };
            let equal = echelon == formula;
            if !equal {
                mismatches += 1;
            }
            rows.push(json!({ "n": n, "r": r, "echelon": echelon, "formula": formula, "equal": equal }));
        }
    }
    let name = match which {
        Structure::R22 => "r22",
        Structure::R23 => "r23",
    };
    let report = Report::new(format!("{}: {} of {} (n, r) cases agree", name, rows.len() - mismatches, rows.len()))
        .set("which", name)
        .set("max_degree", d_max)
        .set("n", *ns.last().unwrap_or(&0))
        .set("rows", Value::Array(rows));
    Ok(Outcome::ok(report, None, Some(d_max)).flag(mismatches > 0, || format!("{} cases disagree", mismatches)))
}

fn sweep(n_max: usize, k_max: usize, cutoff: usize, cap: u64, g: &Global) -> Result<Outcome, Failure> {
    let rows = conjecture_2k_sweep(n_max, k_max, cutoff, if g.allow_large { u64::MAX } else { cap })?;
    let observed = rows.iter().filter(|r| r.observed.is_some()).count();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.matches() == Some(false))
        .map(|r| format!("(n={}, k={})", r.n, r.k))
        .collect();
    let report = Report::new(format!(
        "{} of {} entries observed, {} disagree with the conjectured formula",
        observed,
        rows.len(),
        bad.len()
    ))
    .set("n", n_max)
    .set("k_max", k_max)
    .set("rows", serde_json::to_value(&rows).expect("rows serialize"));
    Ok(Outcome::ok(report, None, Some(cutoff)).flag(!bad.is_empty(), || bad.join(", ")))
}

fn open_elements(cutoff: usize, g: &Global) -> Result<Outcome, Failure> {
    if cutoff > 7 && !g.allow_large {
        return Err(Failure::Usage(format!("cutoff {} is above 7; pass --allow-large to proceed", cutoff)));
    }
    let rows = check_open_elements(cutoff)?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.all_members())
        .map(|r| format!("{} at degree {}", r.name, r.degree))
        .collect();
    let report = Report::new(format!("{} family/degree rows, {} with non-members", rows.len(), bad.len()))
        .set("rows", serde_json::to_value(&rows).expect("rows serialize"));
    Ok(Outcome::ok(report, Some(3), Some(cutoff)).flag(!bad.is_empty(), || bad.join(", ")))
}

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use stablecat::algebra::{Algebra, RingSpec};
use stablecat::complexes::{filtration_by_small, verify_filtration, ComplexFile, WindowedComplex};
use stablecat::counterexamples::{build, hom_j_report, CounterexampleSpec, Kind};
use stablecat::exactla::FieldMatrix;
use stablecat::homalg::{self, fp_growth_probe, injective_resolution, projective_resolution};
use stablecat::modrep::{is_injective, is_projective, Module, ModuleFile, Side};
use stablecat::stable::{
    builtin_catalog, classify_inj_complex, classify_proj_complex, duality_pair_check, stable_hom_inj,
    stable_hom_proj, tate_cohomology, tate_via_stable_hom, verify_witnesses, AcyclicityReport,
};

use crate::report::{CliError, Report};
use crate::{DirectionArg, SideArg, WindowArgs};

type CliResult = Result<Report, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn rows(m: &FieldMatrix) -> Vec<Vec<u64>> {
    m.to_rows()
}

fn side_of(s: SideArg) -> Side {
    match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

/// Inclusive range `a..b`; either end may be negative.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || input(format!("invalid range `{s}` (expected a..b)"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(input(format!("empty range `{s}`")));
    }
    Ok((a, b))
}

fn parse_ring(s: &str) -> Result<(RingSpec, Arc<Algebra>), CliError> {
    let spec: RingSpec = s.parse()?;
    Ok((spec, spec.build()?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read `{path}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| input(format!("malformed JSON in `{path}`: {e}")))
}

/// `builtin:NAME`, a bare builtin name, or a module file over `a`.
fn load_module(a: &Arc<Algebra>, side: Side, arg: &str) -> Result<Module, CliError> {
    let name = arg.strip_prefix("builtin:").unwrap_or(arg);
    if ["k", "R", "J", "m"].contains(&name) || arg.starts_with("builtin:") {
        return Ok(Module::builtin(a, side, name)?);
    }
    let file: ModuleFile = read_json(arg)?;
    if file.ring != a.spec() {
        return Err(input(format!("`{arg}` is over {}, expected {}", file.ring, a.spec())));
    }
    if file.side != side {
        return Err(input(format!("`{arg}` is a {} module, expected a {side} module", file.side)));
    }
    Ok(Module::from_file_over(a, &file)?)
}

fn spec_of(kind: Kind, w: &WindowArgs) -> CounterexampleSpec {
    CounterexampleSpec::new(kind, w.p, w.depth, w.base)
}

/// A counterexample name or a complex file.
fn load_complex(arg: &str, w: &WindowArgs) -> Result<(WindowedComplex, Value), CliError> {
    if let Ok(kind) = arg.parse::<Kind>() {
        let spec = spec_of(kind, w);
        return Ok((build(&spec)?, json!({ "counterexample": spec })));
    }
    if !Path::new(arg).exists() {
        return Err(input(format!(
            "`{arg}` is neither a counterexample name ({}) nor a readable file",
            Kind::ALL.map(Kind::cli_name).join(", ")
        )));
    }
    let file: ComplexFile = read_json(arg)?;
    Ok((WindowedComplex::from_file(&file)?, json!({ "file": arg })))
}

fn degree_table(rows: &[(i64, usize)]) -> Vec<Vec<String>> {
    rows.iter().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect()
}

pub fn resolve(echo: String, ring: &str, module: &str, length: usize, direction: DirectionArg, side: SideArg) -> CliResult {
    let (spec, a) = parse_ring(ring)?;
    let m = load_module(&a, side_of(side), module)?;
    let res = match direction {
        DirectionArg::Proj => projective_resolution(&m, length),
        DirectionArg::Inj => injective_resolution(&m, length),
    };
    res.verify()?;
    let dims = res.term_dims();
    let gens = res.generator_counts();
    // A zero term ends the resolution.
    let kept = dims.iter().position(|&d| d == 0).unwrap_or(dims.len()).max(1);
    let maps: Vec<Vec<Vec<u64>>> = res.maps().iter().take(kept - 1).map(|f| rows(f.matrix())).collect();
    let terms: Vec<Value> = (0..kept)
        .map(|i| json!({ "degree": i, "dim": dims[i], "generators": gens[i] }))
        .collect();
    let results = json!({
        "direction": res.direction(),
        "length": kept - 1,
        "dims": &dims[..kept],
        "generator_counts": &gens[..kept],
        "terms": terms,
        "augmentation": rows(res.augmentation().matrix()),
        "maps": maps,
    });
    let table = (0..kept)
        .map(|i| vec![i.to_string(), dims[i].to_string(), gens[i].to_string()])
        .collect();
    Ok(Report::new(
        echo,
        Some(spec.to_string()),
        json!({ "module": module, "length": length, "side": side_of(side) }),
        results,
    )
    .with_table(vec!["degree", "dim", "generators"], table))
}

fn degree_list(degrees: &str) -> Result<Vec<usize>, CliError> {
    let (a, b) = parse_range(degrees)?;
    if a < 0 {
        return Err(input("degrees must be nonnegative"));
    }
    Ok((a as usize..=b as usize).collect())
}

fn dims_report(echo: String, spec: RingSpec, inputs: Value, dims: Vec<(i64, usize)>) -> Report {
    let results = json!({
        "degrees": dims.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        "dims": dims.iter().map(|(_, d)| d).collect::<Vec<_>>(),
    });
    let table = degree_table(&dims);
    Report::new(echo, Some(spec.to_string()), inputs, results).with_table(vec!["n", "dim"], table)
}

pub fn ext(echo: String, ring: &str, m: &str, n: &str, degrees: &str) -> CliResult {
    let (spec, a) = parse_ring(ring)?;
    let mm = load_module(&a, Side::Left, m)?;
    let nn = load_module(&a, Side::Left, n)?;
    let dims = degree_list(degrees)?
        .into_iter()
        .map(|i| Ok((i as i64, homalg::ext(&mm, &nn, i)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(dims_report(echo, spec, json!({ "M": m, "N": n, "degrees": degrees }), dims))
}

pub fn tor(echo: String, ring: &str, m: &str, n: &str, degrees: &str) -> CliResult {
    let (spec, a) = parse_ring(ring)?;
    let mm = load_module(&a, Side::Right, m)?;
    let nn = load_module(&a, Side::Left, n)?;
    let dims = degree_list(degrees)?
        .into_iter()
        .map(|i| Ok((i as i64, homalg::tor(&mm, &nn, i)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(dims_report(echo, spec, json!({ "M": m, "N": n, "degrees": degrees }), dims))
}

pub fn stable_hom(echo: String, ring: &str, m: &str, n: &str, variant: DirectionArg) -> CliResult {
    let (spec, a) = parse_ring(ring)?;
    let mm = load_module(&a, Side::Left, m)?;
    let nn = load_module(&a, Side::Left, n)?;
    let (sh, name) = match variant {
        DirectionArg::Proj => (stable_hom_proj(&mm, &nn)?, "proj"),
        DirectionArg::Inj => (stable_hom_inj(&mm, &nn)?, "inj"),
    };
    let basis: Vec<_> = sh.basis.iter().map(|f| rows(f.matrix())).collect();
    Ok(Report::new(
        echo,
        Some(spec.to_string()),
        json!({ "M": m, "N": n, "variant": name }),
        json!({ "dim": sh.dim, "hom_dim": sh.hom_dim, "basis": basis }),
    ))
}

pub fn tate(echo: String, p: u64, e: u32, range: &str) -> CliResult {
    let r = parse_range(range)?;
    let dims = tate_cohomology(p, e, r)?;
    let mut cross = Vec::new();
    let mut bad = None;
    for &(n, d) in dims.iter().filter(|(n, _)| (-2..=2).contains(n)) {
        let via = tate_via_stable_hom(p, e, n)?;
        if via != d && bad.is_none() {
            bad = Some(format!("degree {n}: complete resolution gives {d}, stable hom gives {via}"));
        }
        cross.push(json!({ "n": n, "stable_hom_dim": via }));
    }
    let spec = RingSpec::CyclicGroup {
        m: (p as usize).pow(e),
        p,
    };
    let mut rep = dims_report(echo, spec, json!({ "p": p, "e": e, "range": range }), dims);
    rep.results["stable_hom_check"] = Value::Array(cross);
    rep.inconsistency = bad;
    Ok(rep)
}

/// Classifies by term type; complexes whose terms are both injective and
/// projective get both reports.
fn classify_complex(x: &WindowedComplex) -> Result<(Value, Vec<String>, Option<String>), CliError> {
    let all = |pred: fn(&Module) -> bool| x.terms().iter().all(pred);
    let (inj, proj) = (all(is_injective), all(is_projective));
    if !inj && !proj {
        return Err(CliError::Precondition(
            "terms are neither all injective nor all projective".into(),
        ));
    }
    let mut out = serde_json::Map::new();
    let mut notes = Vec::new();
    let mut bad = None;
    let mut record = |key: &str, r: AcyclicityReport| -> Result<(), CliError> {
        if !verify_witnesses(x, &r)? {
            bad = Some(format!("a {key} witness failed re-verification"));
        }
        if !r.consistent() {
            bad = Some("AC-acyclic and firmly acyclic verdicts disagree".into());
        }
        notes.extend(r.collapse_notes.iter().cloned());
        out.insert(key.into(), serde_json::to_value(&r).expect("reports serialize"));
        Ok(())
    };
    if inj {
        record("injective", classify_inj_complex(x)?)?;
    }
    if proj {
        record("projective", classify_proj_complex(x)?)?;
    }
    Ok((Value::Object(out), notes, bad))
}

pub fn counterexample(echo: String, name: &str, w: &WindowArgs, emit_complex: bool) -> CliResult {
    let kind: Kind = name.parse()?;
    let spec = spec_of(kind, w);
    let x = build(&spec)?;
    let (report, notes, bad) = if kind.is_injective_kind() {
        let r = classify_inj_complex(&x)?;
        let bad = (!verify_witnesses(&x, &r)?).then(|| "witness failed re-verification".to_string());
        (serde_json::to_value(&r).expect("reports serialize"), r.collapse_notes, bad)
    } else {
        let r = classify_proj_complex(&x)?;
        let mut bad = (!verify_witnesses(&x, &r)?).then(|| "witness failed re-verification".to_string());
        if !r.consistent() {
            bad = Some("AC-acyclic and firmly acyclic verdicts disagree".into());
        }
        (serde_json::to_value(&r).expect("reports serialize"), r.collapse_notes, bad)
    };
    let mut results = json!({
        "name": kind.cli_name(),
        "ranks": spec.ranks(),
        "verdicts": report["verdicts"],
        "witnesses": report["witnesses"],
    });
    if kind.is_injective_kind() {
        let h = hom_j_report(&spec)?.complex;
        results["hom_j_homology"] = json!(h
            .homology_table()
            .into_iter()
            .map(|(n, d)| json!({ "degree": n, "dim": d }))
            .collect::<Vec<_>>());
    }
    if emit_complex {
        results["complex"] = serde_json::to_value(x.to_file()).expect("complexes serialize");
    }
    let mut rep = Report::new(echo, Some(x.algebra().spec().to_string()), json!({ "counterexample": spec }), results)
        .with_notes(notes)
        .with_window(x.window());
    rep.inconsistency = bad;
    Ok(rep)
}

pub fn classify(echo: String, path: &str) -> CliResult {
    let file: ComplexFile = read_json(path)?;
    let x = WindowedComplex::from_file(&file)?;
    let (results, notes, bad) = classify_complex(&x)?;
    let mut rep = Report::new(echo, Some(file.ring.to_string()), json!({ "file": path }), results)
        .with_notes(notes)
        .with_window(x.window());
    rep.inconsistency = bad;
    Ok(rep)
}

pub fn duality_check(echo: String, complex: &str, w: &WindowArgs) -> CliResult {
    let (x, inputs) = load_complex(complex, w)?;
    let catalog = builtin_catalog(x.algebra(), x.side().opposite());
    let rows = duality_pair_check(&x, &catalog)?;
    let disagree: Vec<&str> = rows.iter().filter(|r| !r.agree).map(|r| r.module.as_str()).collect();
    let all_agree = disagree.is_empty();
    let bad = (!all_agree).then(|| format!("tensor and hom exactness disagree for {}", disagree.join(", ")));
    let table = rows
        .iter()
        .map(|r| vec![r.module.clone(), r.tensor_exact.to_string(), r.hom_exact.to_string()])
        .collect();
    let mut rep = Report::new(
        echo,
        Some(x.algebra().spec().to_string()),
        inputs,
        json!({ "rows": rows, "all_agree": all_agree }),
    )
    .with_window(x.window());
    rep.inconsistency = bad;
    Ok(rep.with_table(vec!["module", "tensor_exact", "hom_exact"], table))
}

pub fn fp_probe(echo: String, p: u64, n_range: &str) -> CliResult {
    let (a, b) = parse_range(n_range)?;
    if a < 1 {
        return Err(input("n must be at least 1"));
    }
    let ns: Vec<usize> = (a as usize..=b as usize).collect();
    let rows = fp_growth_probe(p, &ns)?;
    let table = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.mu_omega1.to_string(), r.mu_omega2.to_string()])
        .collect();
    let results = json!({
        "n": ns,
        "mu_omega1": rows.iter().map(|r| r.mu_omega1).collect::<Vec<_>>(),
        "mu_omega2": rows.iter().map(|r| r.mu_omega2).collect::<Vec<_>>(),
        "rows": rows,
    });
    Ok(Report::new(echo, None, json!({ "p": p, "n_range": n_range }), results)
        .with_table(vec!["n", "mu_omega1", "mu_omega2"], table))
}

pub fn filtration(echo: String, complex: &str, a_arg: &str, w: &WindowArgs) -> CliResult {
    let (x, mut inputs) = load_complex(complex, w)?;
    let a = load_module(x.algebra(), x.side().opposite(), a_arg)?;
    inputs["A"] = json!(a_arg);
    let layers = filtration_by_small(&x, &a)?;
    verify_filtration(&x, &a, &layers)?;
    let total = x.tag_counts();
    let layer_json: Vec<Value> = layers
        .iter()
        .map(|l| json!({ "tag_counts": l.tag_counts(), "selection": l.selection }))
        .collect();
    let results = json!({
        "layers": layer_json,
        "layer_count": layers.len(),
        "total_tag_counts": total,
    });
    Ok(Report::new(echo, Some(x.algebra().spec().to_string()), inputs, results).with_window(x.window()))
}

struct Check {
    name: String,
    pass: bool,
    detail: Value,
}

fn check_counterexample(kind: Kind, p: u64, depth: usize) -> Result<Check, CliError> {
    let spec = CounterexampleSpec::new(kind, p, depth, 1);
    let x = build(&spec)?;
    let r: AcyclicityReport = if kind.is_injective_kind() {
        classify_inj_complex(&x)?
    } else {
        classify_proj_complex(&x)?
    };
    let v = &r.verdicts;
    let expected = match kind {
        Kind::InjX => v.exact_interior && v.inj_acyclic == Some(false),
        Kind::InjY => !v.exact_interior && v.inj_acyclic == Some(true),
        Kind::ProjX => v.exact_interior && !v.ac_acyclic,
        Kind::ProjY => !v.exact_interior && v.ac_acyclic,
    };
    Ok(Check {
        name: format!("counterexample {}", kind.cli_name()),
        pass: expected && r.consistent() && verify_witnesses(&x, &r)?,
        detail: serde_json::to_value(v).expect("verdicts serialize"),
    })
}

/// Standard checks; each closure runs on its own thread.
pub fn suite(echo: String, p: u64, depth: usize) -> CliResult {
    type Job = Box<dyn Fn() -> Result<Check, CliError> + Send + Sync>;
    let mut jobs: Vec<Job> = Kind::ALL
        .into_iter()
        .map(|k| Box::new(move || check_counterexample(k, p, depth)) as Job)
        .collect();
    jobs.push(Box::new(move || {
        let spec = CounterexampleSpec::new(Kind::ProjX, p, depth, 1);
        let x = build(&spec)?;
        let rows = duality_pair_check(&x, &builtin_catalog(x.algebra(), Side::Right))?;
        Ok(Check {
            name: "duality-check proj-exact-not-firm".into(),
            pass: rows.iter().all(|r| r.agree),
            detail: json!(rows),
        })
    }));
    jobs.push(Box::new(move || {
        let dims = tate_cohomology(p, 1, (-4, 4))?;
        let via = (-2..=2).map(|n| tate_via_stable_hom(p, 1, n)).collect::<Result<Vec<_>, _>>()?;
        Ok(Check {
            name: format!("tate {p} 1"),
            pass: dims.iter().all(|&(_, d)| d == 1) && via.iter().all(|&d| d == 1),
            detail: json!({ "dims": dims.iter().map(|(_, d)| d).collect::<Vec<_>>(), "stable_hom": via }),
        })
    }));
    jobs.push(Box::new(move || {
        let rows = fp_growth_probe(p, &[1, 2, 3, 4])?;
        Ok(Check {
            name: "fp-probe 1..4".into(),
            pass: rows.iter().all(|r| r.mu_omega1 == r.n && r.mu_omega2 == r.n * r.n),
            detail: json!(rows),
        })
    }));
    jobs.push(Box::new(move || {
        let a = RingSpec::LocalSqZero { n: 2, p }.build()?;
        let k = Module::trivial(&a, Side::Left);
        let dims = (0..4).map(|i| homalg::ext(&k, &k, i)).collect::<Result<Vec<_>, _>>()?;
        Ok(Check {
            name: "ext k k over local_sq_zero(2,p)".into(),
            pass: dims == [1, 2, 4, 8],
            detail: json!(dims),
        })
    }));

    let outcomes: Vec<Result<Check, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(move || j())).collect();
        handles.into_iter().map(|h| h.join().expect("suite job panicked")).collect()
    });
    let checks = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let bad = (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", ")));
    let table = checks
        .iter()
        .map(|c| vec![c.name.clone(), if c.pass { "PASS" } else { "FAIL" }.to_string()])
        .collect();
    let results = json!({
        "all_pass": failed.is_empty(),
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect::<Vec<_>>(),
    });
    let mut rep = Report::new(echo, None, json!({ "p": p, "depth": depth }), results).with_notes(vec![
        stablecat::stable::NOETHERIAN_COLLAPSE.into(),
        stablecat::stable::LEVEL_COLLAPSE.into(),
        stablecat::stable::LOCAL_COLLAPSE.into(),
    ]);
    rep.inconsistency = bad;
    Ok(rep.with_table(vec!["check", "result"], table))
}

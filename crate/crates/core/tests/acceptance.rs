//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_4;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::algebra::{arb_pair, arb_rational, arb_triple, instances};
use common::*;
use num_complex::Complex64;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use qaoalie::closure::{
    analyze, dense_closure_oracle, detect_permutation_symmetries, exact_closure, AnalysisOptions, ClosureOptions,
    ExactStrategy, Verdict,
};
use qaoalie::forcing::{
    forcing_to_universality, is_forcing_set, minimal_forcing_search, sampled_forcing_coefficients, ForcingMode,
};
use qaoalie::hamlib::{Family, GraphSpec, ProblemSpec, Vertex};
use qaoalie::dense::DenseMatrix;
use qaoalie::pauli::{parse_operator, to_dense, ExactOperator, Operator, PauliString, Rational, Scalar};
use qaoalie::verify::{run_all, verify_cnot_identity, CaseStatus, StepRole, VerifyParams};

const SEED: u64 = 42;
const CNOT_TOL: f64 = 1e-12;
const DENSE_TOL: f64 = 1e-9;
const PROPERTY_CASES: u32 = 1000;
const INVARIANCE_INSTANCES: usize = 20;
const STABILITY_SEEDS: usize = 3;
const FORCING_GRAPHS: usize = 10;

const CHAIN3_LIMIT: Duration = Duration::from_secs(1);
const CHAIN5_LIMIT: Duration = Duration::from_secs(60);
const MIRROR_LIMIT: Duration = Duration::from_secs(5);
const VERIFY_LIMIT: Duration = Duration::from_secs(30);
const HYPER_LIMIT: Duration = Duration::from_secs(10);
const GRID_LIMIT: Duration = Duration::from_secs(15 * 60);

type Outcome = Result<String, String>;

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: qaoalie::Error) -> String {
    e.to_string()
}

fn odd_chain_universality() -> Outcome {
    let mut notes = Vec::new();
    for (n, limit) in [(3, CHAIN3_LIMIT), (5, CHAIN5_LIMIT)] {
        let spec = ProblemSpec::chain(n, SEED).map_err(err)?;
        for c in spec.constraints() {
            ensure(c.holds(&spec.coefficients).map_err(err)?, || format!("n={n}: seed violates {}", c.describe()))?;
        }
        let (r, t) = timed(|| analyze(&spec, &AnalysisOptions::default()));
        let r = r.map_err(err)?;
        let want = 4usize.pow(n as u32) - 1;
        ensure(r.dimension == want && r.universal, || format!("n={n}: dimension {} want {want}", r.dimension))?;
        ensure(t < limit, || format!("n={n}: {t:?} over {limit:?}"))?;
        if n == 3 {
            let (hz, hx) = spec.hamiltonians().map_err(err)?;
            let o = dense_closure_oracle(&[hz, hx]).map_err(err)?;
            ensure(o == r.dimension, || format!("n=3: oracle {o} vs {}", r.dimension))?;
        }
        notes.push(format!("n={n} dim {} in {:.2?}", r.dimension, t));
    }
    Ok(notes.join(", ") + ", oracle agrees at n=3")
}

/// Fix `values` as user coefficients; the remaining symbols stay sampled.
fn pin(spec: &ProblemSpec, values: &[(&str, Rational)]) -> Result<ProblemSpec, String> {
    let mut s = spec.clone();
    for (k, v) in values {
        s = s.with_value(k, v.clone()).map_err(err)?;
    }
    for (k, v) in values {
        let got = s.coefficients.get(k).map_err(err)?;
        ensure(got == v, || format!("{k} resampled to {got}"))?;
    }
    Ok(s)
}

fn hypothesis_probes() -> Outcome {
    let mut notes = Vec::new();
    for n in [3usize, 4, 5] {
        let base = ProblemSpec::chain(n, SEED).map_err(err)?;
        let wa = base.coefficients.get("wA").map_err(err)?.clone();
        let gba = base.coefficients.get("gBA").map_err(err)?.clone();
        let probes = [
            ("wA = wB", pin(&base, &[("wA", wa.clone()), ("wB", wa)])?),
            ("gAB^2 = 4 gBA^2", pin(&base, &[("gBA", gba.clone()), ("gAB", gba.mul(&Rational::integer(2)))])?),
        ];
        for (label, spec) in probes {
            let opts = AnalysisOptions {
                stability: STABILITY_SEEDS,
                ..AnalysisOptions::default()
            };
            let r = analyze(&spec, &opts).map_err(err)?;
            let h = r.hypotheses.as_ref().ok_or_else(|| format!("n={n} {label}: no hypotheses checked"))?;
            ensure(!h.hold && !h.violated.is_empty(), || format!("n={n} {label}: violation not flagged"))?;
            ensure(r.notes.iter().any(|s| s.contains("sufficient conditions fail")), || {
                format!("n={n} {label}: missing note")
            })?;
            ensure(r.stability.runs.len() == STABILITY_SEEDS, || format!("n={n} {label}: {} runs", r.stability.runs.len()))?;
            let claims_no_go = r.verdict == Verdict::NonUniversalCertified;
            ensure(!claims_no_go || !r.symmetries.is_empty(), || format!("n={n} {label}: uncertified no-go"))?;
            ensure(r.universal || r.verdict != Verdict::Universal, || format!("n={n} {label}: inconsistent verdict"))?;
            let dims: Vec<String> = r.stability.runs.iter().map(|s| s.dimension.to_string()).collect();
            notes.push(format!("n={n} {label}: [{}] {:?}", dims.join(","), r.verdict));
        }
    }
    Ok(notes.join("; "))
}

fn mirror_certificate() -> Outcome {
    let start = Instant::now();
    let base = ProblemSpec::chain(4, SEED).map_err(err)?;
    let wa = base.coefficients.get("wA").map_err(err)?.clone();
    let spec = pin(&base, &[("wA", wa.clone()), ("wB", wa)])?;
    let (hz, hx) = spec.hamiltonians().map_err(err)?;
    let search = detect_permutation_symmetries(&hz, &hx, None).map_err(err)?;
    let cert = search
        .certificates
        .iter()
        .find(|c| c.cycles == "(1 4)(2 3)")
        .ok_or_else(|| format!("certificates {:?}", search.certificates.iter().map(|c| &c.cycles).collect::<Vec<_>>()))?;
    ensure(cert.verify(&hz, &hx).map_err(err)?, || "certificate does not verify".into())?;
    let c = exact_closure(&[hz, hx], &ClosureOptions::default(), ExactStrategy::Auto).map_err(err)?;
    let d = c.dimension();
    ensure(d < 255, || format!("dimension {d}"))?;
    for row in c.basis.rows() {
        let image = row.apply_permutation(&cert.permutation).map_err(err)?;
        ensure(c.basis.contains(&image).map_err(err)?, || "a basis row leaves the span under the permutation".into())?;
    }
    let t = start.elapsed();
    ensure(t < MIRROR_LIMIT, || format!("{t:?} over {MIRROR_LIMIT:?}"))?;
    Ok(format!("(1 4)(2 3) found, dimension {d} < 255, {d} rows closed under it, {t:.2?}"))
}

fn identity_replays() -> Outcome {
    let (r, t) = timed(|| run_all(SEED, &VerifyParams::default()));
    let r = r.map_err(err)?;
    let mut problems = Vec::new();
    for c in &r.cases {
        if c.status != CaseStatus::Pass {
            problems.push(format!(
                "{} {:?} at \"{}\"",
                c.label(),
                c.status,
                c.failing_step.clone().unwrap_or_default()
            ));
        }
        for s in c.controls() {
            if s.holds {
                problems.push(format!("{}: control \"{}\" holds", c.label(), s.step));
            }
        }
    }
    let controls: usize = r.cases.iter().map(|c| c.steps.iter().filter(|s| s.role == StepRole::Control).count()).sum();
    ensure(t < VERIFY_LIMIT, || format!("{t:?} over {VERIFY_LIMIT:?}"))?;
    let summary = format!("{} cases, {} passed, {controls} controls, {t:.2?}", r.cases.len(), r.passed);
    if problems.is_empty() && r.all_pass {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", problems.join("; ")))
    }
}

fn cnot() -> DenseMatrix {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    DenseMatrix::from_rows(&[
        vec![l, o, o, o],
        vec![o, l, o, o],
        vec![o, o, o, l],
        vec![o, o, l, o],
    ])
}

fn cnot_identity() -> Outcome {
    let c = verify_cnot_identity();
    ensure(c.status == CaseStatus::Pass, || format!("case {:?} at {:?}", c.status, c.failing_step))?;
    ensure(c.controls().all(|s| !s.holds), || "perturbed angle matched".into())?;
    let identity = Operator::from_string(PauliString::identity(2).map_err(err)?, Rational::integer(1));
    let m = identity.add(&parse_operator("-X2 - Z1 + Z1*X2", 2).map_err(err)?).map_err(err)?;
    let u = to_dense(&m, 2).map_err(err)?.scale(Complex64::new(0.0, FRAC_PI_4)).expm();
    let target = cnot();
    let overlap = target.adjoint().matmul(&u).trace();
    let phase = overlap / overlap.norm();
    let d = u.max_abs_diff(&target.scale(phase));
    ensure(d <= CNOT_TOL, || format!("distance {d:e}"))?;
    Ok(format!("max entrywise distance {d:e} <= {CNOT_TOL:e} up to phase {phase:.3}"))
}

fn small_forcing_corpus() -> Vec<(String, GraphSpec, ForcingMode)> {
    use ForcingMode::{Generalized, Zero};
    let tree5 = GraphSpec::new(1..=5).with_edges([(1, 2), (1, 3), (2, 4), (2, 5)]);
    let spider5 = GraphSpec::new(1..=5).with_edges([(1, 2), (2, 3), (1, 4), (4, 5)]);
    vec![
        ("path2".into(), GraphSpec::path(2), Zero),
        ("path3".into(), GraphSpec::path(3), Zero),
        ("path4".into(), GraphSpec::path(4), Zero),
        ("path5".into(), GraphSpec::path(5), Zero),
        ("star3".into(), GraphSpec::star(3), Zero),
        ("star4".into(), GraphSpec::star(4), Zero),
        ("tree5".into(), tree5, Zero),
        ("spider5".into(), spider5, Zero),
        (
            "typed-path4".into(),
            GraphSpec::new(1..=4).with_typed_edges([(1, 2, "a"), (2, 3, "b"), (3, 4, "a")]),
            Generalized,
        ),
        (
            "typed-path5".into(),
            GraphSpec::new(1..=5).with_typed_edges([(1, 2, "a"), (2, 3, "b"), (3, 4, "a"), (4, 5, "b")]),
            Generalized,
        ),
        (
            "typed-star3".into(),
            GraphSpec::new(1..=4).with_typed_edges([(1, 2, "a"), (1, 3, "b"), (1, 4, "a")]),
            Generalized,
        ),
        (
            "typed-tree5".into(),
            GraphSpec::new(1..=5).with_typed_edges([(1, 2, "a"), (1, 3, "b"), (2, 4, "b"), (2, 5, "a")]),
            Generalized,
        ),
    ]
}

fn forcing_conformance() -> Outcome {
    let corpus = small_forcing_corpus();
    ensure(corpus.len() >= FORCING_GRAPHS && corpus.iter().all(|(_, g, _)| g.n() <= 5), || "corpus too small".into())?;
    let mut checks = 0;
    for (name, g, mode) in &corpus {
        let m = minimal_forcing_search(g, *mode, g.n()).map_err(err)?;
        let s1: BTreeSet<Vertex> = m.sets.first().ok_or_else(|| format!("{name}: no forcing set"))?.iter().copied().collect();
        let c = sampled_forcing_coefficients(g, &s1, *mode, SEED).map_err(err)?;
        let u = forcing_to_universality(g, &s1, &BTreeSet::new(), *mode, &c, &ClosureOptions::default()).map_err(err)?;
        ensure(u.forcing, || format!("{name}: {s1:?} does not force"))?;
        ensure(u.mismatches.is_empty(), || format!("{name}: {}", u.mismatches.join(", ")))?;
        ensure(u.checks.iter().all(|c| c.member), || format!("{name}: missing member"))?;
        checks += u.checks.len();
    }
    Ok(format!("{} graphs, {checks} memberships, 0 mismatches", corpus.len()))
}

fn hyperchain_no_go() -> Outcome {
    let spec = ProblemSpec::sampled(Family::Hyperchain, 4, None, None, SEED).map_err(err)?;
    let (r, t) = timed(|| analyze(&spec, &AnalysisOptions::default()));
    let r = r.map_err(err)?;
    ensure(r.dimension == 255 && r.universal, || format!("generic dimension {}", r.dimension))?;
    ensure(t < HYPER_LIMIT, || format!("generic {t:?}"))?;
    let mut dims = Vec::new();
    for k in 0..STABILITY_SEEDS as u64 {
        let s = spec.with_seed(SEED + k).map_err(err)?.with_value("gamma", Rational::integer(0)).map_err(err)?;
        let (c, t) = timed(|| {
            let (hz, hx) = s.hamiltonians()?;
            exact_closure(&[hz, hx], &ClosureOptions::default(), ExactStrategy::Auto)
        });
        let d = c.map_err(err)?.dimension();
        ensure(d < 255, || format!("gamma=0 seed {}: dimension {d}", SEED + k))?;
        ensure(t < HYPER_LIMIT, || format!("gamma=0 seed {}: {t:?}", SEED + k))?;
        dims.push(d);
    }
    ensure(dims.iter().all(|&d| d == dims[0]), || format!("unstable {dims:?}"))?;
    Ok(format!("generic 255 in {t:.2?}; gamma=0 gives {dims:?}"))
}

fn grid_universality() -> Outcome {
    let spec = ProblemSpec::sampled(Family::Grid, 6, Some(2), None, SEED).map_err(err)?;
    let (r, t) = timed(|| analyze(&spec, &AnalysisOptions::default()));
    let r = r.map_err(err)?;
    ensure(r.dimension == 4095 && r.universal, || format!("dimension {}", r.dimension))?;
    ensure(t < GRID_LIMIT, || format!("{t:?} over {GRID_LIMIT:?}"))?;
    Ok(format!("dimension 4095 in {t:.2?} (early exit {})", r.early_exit))
}

fn forcing_oracle() -> Outcome {
    let mut verdicts = 0usize;
    let mut searches = 0usize;
    for mut i in corpus() {
        let g = &i.graph;
        for s1 in subsets(&g.vertices) {
            let choices = match i.mode {
                ForcingMode::Hyper => two_edge_choices(g, &s1),
                _ => vec![BTreeSet::new()],
            };
            for s2 in choices {
                let naive = match i.mode {
                    ForcingMode::Zero => naive_zero(g, &s1),
                    ForcingMode::Generalized => naive_generalized(g, &s1, true),
                    ForcingMode::Hyper => naive_hyper(g, &s1, &s2, None).0,
                };
                let got = is_forcing_set(g, &s1, &s2, i.mode).map_err(err)?;
                ensure(got == (naive.len() == g.n()), || format!("{} {s1:?} {s2:?}", i.name))?;
                verdicts += 1;
            }
        }
        if i.mode == ForcingMode::Hyper {
            i.graph.infected_2edges = vec![(1, 2)];
        }
        let found = minimal_forcing_search(&i.graph, i.mode, i.graph.n()).map_err(err)?;
        let (size, want) = exhaustive_minimum(&i.graph, i.mode);
        let mut got = found.sets.clone();
        got.sort();
        ensure(found.size == size && got == want, || format!("{}: minimum differs", i.name))?;
        searches += 1;
    }
    Ok(format!("{verdicts} verdicts and {searches} minimum searches agree"))
}

fn run_property<S: proptest::strategy::Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn bracket(a: &ExactOperator, b: &ExactOperator) -> Result<ExactOperator, TestCaseError> {
    a.bracket(b).map_err(|e| TestCaseError::fail(e.to_string()))
}

fn dense_of(a: &ExactOperator) -> Result<DenseMatrix, TestCaseError> {
    to_dense(a, 4).map_err(|e| TestCaseError::fail(e.to_string()))
}

fn algebra_suite() -> Outcome {
    run_property("antisymmetry", arb_pair(), |(a, b)| {
        check(bracket(&a, &b)? == bracket(&b, &a)?.neg(), "[a,b] != -[b,a]")
    })?;
    run_property("jacobi", arb_triple(), |(a, b, c)| {
        let t1 = bracket(&a, &bracket(&b, &c)?)?;
        let t2 = bracket(&b, &bracket(&c, &a)?)?;
        let t3 = bracket(&c, &bracket(&a, &b)?)?;
        let s = t1.add(&t2).and_then(|s| s.add(&t3)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(s.is_zero(), "jacobi sum nonzero")
    })?;
    run_property("reality", arb_pair(), |(a, b)| {
        let m = dense_of(&bracket(&a, &b)?)?;
        check(m.max_abs_diff(&m.adjoint()) <= DENSE_TOL, "bracket not Hermitian")
    })?;
    run_property("tracelessness", arb_pair(), |(a, b)| {
        let c = bracket(&a, &b)?;
        check(!c.has_identity() && dense_of(&c)?.trace().norm() <= DENSE_TOL, "trace nonzero")
    })?;
    run_property("dense consistency", arb_pair(), |(a, b)| {
        let (ma, mb) = (dense_of(&a)?, dense_of(&b)?);
        let comm = ma.matmul(&mb).sub(&mb.matmul(&ma)).scale(Complex64::new(0.0, -0.5));
        check(dense_of(&bracket(&a, &b)?)?.max_abs_diff(&comm) <= DENSE_TOL, "dense commutator differs")
    })?;
    run_property("bilinearity", (arb_triple(), arb_rational()), |((a, b, c), k)| {
        let fail = |e: qaoalie::Error| TestCaseError::fail(e.to_string());
        let lhs = bracket(&a.add_scaled(&k, &b).map_err(fail)?, &c)?;
        let rhs = bracket(&a, &c)?.add_scaled(&k, &bracket(&b, &c)?).map_err(fail)?;
        check(lhs == rhs, "not bilinear")
    })?;

    let all = instances();
    ensure(all.len() >= INVARIANCE_INSTANCES, || format!("{} instances", all.len()))?;
    let dim = |g: &[ExactOperator]| -> Result<usize, String> {
        Ok(exact_closure(g, &ClosureOptions::default(), ExactStrategy::Auto).map_err(err)?.dimension())
    };
    let scales = [Rational::new(-3, 2), Rational::new(7, 5), Rational::integer(-1), Rational::new(1, 9)];
    for (i, g) in all.iter().enumerate() {
        let base = dim(g)?;
        let mut rev: Vec<_> = g.iter().rev().cloned().collect();
        ensure(dim(&rev)? == base, || format!("instance {i} reordered"))?;
        for (j, op) in rev.iter_mut().enumerate() {
            *op = op.scale(&scales[j % scales.len()]);
        }
        ensure(dim(&rev)? == base, || format!("instance {i} scaled"))?;
    }
    Ok(format!(
        "6 invariants x {PROPERTY_CASES} cases (n <= 4), {} closure instances invariant",
        all.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("odd chain universality (n=3,5)", odd_chain_universality),
        ("hypothesis-violation probes", hypothesis_probes),
        ("even chain mirror certificate (n=4)", mirror_certificate),
        ("identity replays", identity_replays),
        ("CNOT identity", cnot_identity),
        ("zero forcing to universality", forcing_conformance),
        ("hyperchain universality and no-go (n=4)", hyperchain_no_go),
        ("grid universality (side 2)", grid_universality),
        ("forcing oracle equivalence", forcing_oracle),
        ("algebra property suite", algebra_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (out, t) = timed(f);
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

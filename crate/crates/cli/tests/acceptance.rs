//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use tcone_core::cm::{cm_criterion, cm_oracle, expected_basis};
use tcone_core::curve::{random_bresinsky, BresinskyData};
use tcone_core::engine::{
    buchberger, minimalize, mora_nf, standard_basis, verify_standard_basis, BasisTask, Limits,
    NormalFormTrace,
};
use tcone_core::report::{family_data, parse_poly};
use tcone_core::{Binomial, Monomial, Poly, TermOrder, WeightVector};

const EX1: &str = "141,222,285,232";
const EX2: &str = "1673,2236,2248,2828";
const EX2_A: &str = "a13=7,a14=11,a21=12,a23=4,a32=6,a34=4,a41=16,a42=7";
const EX3: &str = "890,1944,933,1275";

const EX1_GENERATORS: [&str; 5] = [
    "x3^3*x4^3 - x1^11",
    "x2^7 - x1^9*x3",
    "x3^4 - x2^2*x4^3",
    "x4^6 - x1^2*x2^5",
    "x2^5*x3^3 - x1^9*x4^3",
];

const EX2_CONE: [&str; 8] = [
    "x3^7*x4^11",
    "x2^13",
    "x2^6*x4^4",
    "x4^15",
    "x2^7*x3^7",
    "x2*x3^18",
    "x3^18*x4^7",
    "x3^29 - x1^12*x2^5*x4^12",
];

struct Run {
    code: i32,
    records: Vec<Value>,
    elapsed: Duration,
}

impl Run {
    fn record(&self, kind: &str) -> &Value {
        self.records
            .iter()
            .find(|r| r["record"] == kind)
            .unwrap_or(&Value::Null)
    }
}

fn tcone(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tcone"))
        .arg("--format")
        .arg("structured")
        .args(args)
        .env_remove("TCONE_LIMITS")
        .output()
        .unwrap();
    let elapsed = t.elapsed();
    let records = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    Run {
        code: out.status.code().unwrap_or(-1),
        records,
        elapsed,
    }
}

fn polys(v: &Value) -> Vec<Poly> {
    v.as_array()
        .map(|a| {
            a.iter()
                .filter_map(|s| parse_poly(s.as_str()?).ok())
                .collect()
        })
        .unwrap_or_default()
}

fn same_up_to_sign(a: &[Poly], b: &[Poly]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| p.same_up_to_sign(q)))
        && b.iter().all(|q| a.iter().any(|p| p.same_up_to_sign(q)))
}

fn condition(run: &Run, id: &str) -> Option<i64> {
    run.record("criterion")["conditions"]
        .as_array()?
        .iter()
        .find(|c| c["id"] == id)?["value"]
        .as_i64()
}

/// Everything later criteria look at.
#[derive(Default)]
struct Evidence {
    cm_positive: Vec<(String, BresinskyData)>,
    bases: Vec<(String, WeightVector, Vec<Poly>)>,
    nil_traces: Vec<(Monomial, Monomial, NormalFormTrace)>,
}

impl Evidence {
    fn basis(&mut self, name: impl Into<String>, n: &[u64], basis: Vec<Poly>) {
        self.bases
            .push((name.into(), WeightVector::new(n.to_vec()).unwrap(), basis));
    }

    /// Elimination basis in `x1..x4, t` (t weighs 1) and the toric generators.
    fn toric(&mut self, name: &str, run: &Run) {
        let n: Vec<u64> = run.record("curve")["n"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        self.basis(
            format!("{name} toric"),
            &n,
            polys(&run.record("toric")["generators"]),
        );
        let gens: Vec<Binomial> = (0..4)
            .map(|i| {
                Binomial::new(Monomial::var_pow(5, i, 1), Monomial::var_pow(5, 4, n[i])).unwrap()
            })
            .collect();
        let task = BasisTask::new(gens, TermOrder::eliminate_t()).cancel_common_factors(true);
        let gb = buchberger(&task).unwrap().elements();
        let mut w = n.clone();
        w.push(1);
        self.basis(format!("{name} elimination"), &w, gb);
    }
}

struct Line {
    id: u32,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(id: u32, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, detail) = f();
    let line = Line {
        id,
        pass,
        detail,
        elapsed: t.elapsed(),
    };
    println!(
        "{} criterion {}: {} ({:.1?})",
        if line.pass { "PASS" } else { "FAIL" },
        line.id,
        line.detail,
        line.elapsed
    );
    line
}

fn example_one(ev: &mut Evidence) -> (bool, String) {
    let run = tcone(&["analyze", "--n", EX1, "--oracle"]);
    let expected: Vec<Poly> = EX1_GENERATORS
        .iter()
        .map(|s| parse_poly(s).unwrap())
        .collect();
    let gens = polys(&run.record("toric")["generators"]);
    let checks = [
        ("exit 0", run.code == 0),
        ("five generators", same_up_to_sign(&gens, &expected)),
        ("CM1 branch", run.record("criterion")["branch"] == "small"),
        ("CM", run.record("summary")["cohen_macaulay"] == true),
        ("mu 5", run.record("summary")["mu"] == 5),
        ("< 60 s", run.elapsed < Duration::from_secs(60)),
    ];
    ev.toric("example 1", &run);
    let a = tcone_core::report::parse_a("a13=3,a14=3,a21=9,a23=1,a32=2,a34=3,a41=2,a42=5").unwrap();
    ev.cm_positive
        .push(("example 1".into(), BresinskyData::from_free(a).unwrap()));
    verdict(&checks, format!("example 1 in {:.1?}", run.elapsed))
}

fn example_two(ev: &mut Evidence) -> (bool, String) {
    let run = tcone(&["analyze", "--n", EX2]);
    let fast = tcone(&["analyze", "--a", EX2_A]);
    let expected: Vec<Poly> = EX2_CONE.iter().map(|s| parse_poly(s).unwrap()).collect();
    let cone = polys(&run.record("tangent_cone")["cone_generators"]);
    let checks = [
        ("exit 0", run.code == 0 && fast.code == 0),
        ("d 3", run.record("criterion")["d"] == 3),
        ("CM2.6 = 0", condition(&run, "CM2.6") == Some(0)),
        ("CM2.5 = -9", condition(&run, "CM2.5") == Some(-9)),
        ("CM", run.record("summary")["cohen_macaulay"] == true),
        ("T_* has 8 elements", same_up_to_sign(&cone, &expected)),
        (
            "mu 8",
            run.record("summary")["mu"] == 8 && fast.record("summary")["mu"] == 8,
        ),
        ("toric < 10 min", run.elapsed < Duration::from_secs(600)),
        (
            "criterion path < 1 s",
            fast.elapsed < Duration::from_secs(1),
        ),
    ];
    ev.toric("example 2", &run);
    let a = tcone_core::report::parse_a(EX2_A).unwrap();
    ev.cm_positive
        .push(("example 2".into(), BresinskyData::from_free(a).unwrap()));
    verdict(
        &checks,
        format!(
            "example 2 in {:.1?}, criterion path {:.1?}",
            run.elapsed, fast.elapsed
        ),
    )
}

fn example_three(ev: &mut Evidence) -> (bool, String) {
    let run = tcone(&["analyze", "--n", EX3, "--oracle"]);
    let lead = run.record("oracle")["offending_lead"]
        .as_str()
        .unwrap_or("");
    let lead = parse_poly(lead).ok();
    let checks = [
        ("exit 0", run.code == 0),
        ("d 4", run.record("criterion")["d"] == 4),
        ("CM2.4 = 4", condition(&run, "CM2.4") == Some(4)),
        ("not CM", run.record("summary")["cohen_macaulay"] == false),
        (
            "oracle not CM",
            run.record("oracle")["cohen_macaulay"] == false,
        ),
        (
            "x1 divides oracle lead",
            matches!(lead, Some(Poly::Monomial(m)) if m.exp(0) > 0),
        ),
    ];
    ev.toric("example 3", &run);
    let a =
        tcone_core::report::parse_a("a13=5,a14=11,a21=9,a23=6,a32=2,a34=5,a41=12,a42=5").unwrap();
    let a = BresinskyData::from_free(a).unwrap();
    let oracle = cm_oracle(&a, &Limits::default()).unwrap();
    ev.basis("example 3 oracle", &a.n, oracle.basis);
    verdict(
        &checks,
        format!(
            "example 3, oracle lead {}",
            run.record("oracle")["offending_lead"]
                .as_str()
                .unwrap_or("none")
        ),
    )
}

fn family(ev: &mut Evidence) -> (bool, String) {
    let run = tcone(&["family", "--c-range", "2..10"]);
    let rows: Vec<&Value> = run
        .records
        .iter()
        .filter(|r| r["record"] == "family_row")
        .collect();
    let cs: Vec<u64> = rows.iter().filter_map(|r| r["c"].as_u64()).collect();
    let rows_ok = rows.iter().all(|r| {
        let c = r["c"].as_u64().unwrap_or(0);
        r["cohen_macaulay"] == true && r["mu"] == 2 * c + 2 && r["CM2.4"] == -6 && r["CM2.7"] == -5
    });
    let full = tcone(&["family", "--c-range", "2", "--recompute-toric"]);
    let c2 = full.records.iter().find(|r| r["record"] == "family_row");
    let checks = [
        ("exit 0", run.code == 0),
        ("c = 2..10", cs == (2..=10).collect::<Vec<_>>()),
        ("rows", rows_ok),
        ("< 5 min", run.elapsed < Duration::from_secs(300)),
        (
            "c = 2 with toric",
            full.code == 0 && c2.is_some_and(|r| r["n"] == serde_json::json!([6, 44, 23, 25])),
        ),
    ];
    for c in 2..=10 {
        ev.cm_positive
            .push((format!("family c={c}"), family_data(c).unwrap()));
    }
    let toric = tcone(&["toric", "--n", "6,44,23,25"]);
    ev.toric("family c=2", &toric);
    verdict(
        &checks,
        format!(
            "family 2..10 in {:.1?}, c=2 with toric {:.1?}",
            run.elapsed, full.elapsed
        ),
    )
}

fn equivalence(ev: &mut Evidence) -> (bool, String) {
    let mut seen = BTreeSet::new();
    let mut sample = Vec::new();
    let mut seed = 0u64;
    while sample.len() < 600 {
        let a = random_bresinsky(12, seed).unwrap();
        seed += 1;
        if seen.insert(a.n) {
            sample.push(a);
        }
    }
    let limits = Limits::default();
    let results: Vec<_> = sample
        .par_iter()
        .map(|a| {
            let c = cm_criterion(a).unwrap();
            let o = cm_oracle(a, &limits).unwrap();
            (a.clone(), c.verdict, o)
        })
        .collect();
    let mut discrepancies = 0;
    let mut positive = 0;
    for (a, verdict, oracle) in results {
        if verdict != oracle.cohen_macaulay {
            discrepancies += 1;
            println!("  discrepancy at n = {:?}", a.n);
        }
        ev.basis(format!("random {:?} oracle", a.n), &a.n, oracle.basis);
        if verdict {
            positive += 1;
            ev.cm_positive.push((format!("random {:?}", a.n), a));
        }
    }
    (
        discrepancies == 0,
        format!(
            "{} instances, {positive} CM, {discrepancies} discrepancies",
            sample.len()
        ),
    )
}

fn standard_bases(ev: &mut Evidence) -> (bool, String) {
    let order = TermOrder::neg_degrevlex();
    let limits = Limits::default();
    let results: Vec<_> = ev
        .cm_positive
        .par_iter()
        .map(|(name, a)| {
            let expected: Vec<Poly> = expected_basis(a)
                .unwrap()
                .into_iter()
                .map(Poly::from)
                .collect();
            let failures = verify_standard_basis(&expected, &order, &limits)
                .unwrap()
                .failures
                .len();
            let sb = standard_basis(&BasisTask::new(a.generators(), order.clone())).unwrap();
            let norm = |v: &[Poly]| -> BTreeSet<String> {
                v.iter().map(|p| p.normalized(&order).to_string()).collect()
            };
            let minimal = minimalize(&sb.elements, &order);
            let equal = minimal.len() == expected.len() && norm(&minimal) == norm(&expected);
            (name.clone(), a.n, failures, equal, sb.elements, expected)
        })
        .collect();
    let mut bad = Vec::new();
    let count = results.len();
    for (name, n, failures, equal, sb, expected) in results {
        if failures > 0 || !equal {
            bad.push(format!("{name}: {failures} failing pairs, equal {equal}"));
        }
        ev.basis(format!("{name} standard basis"), &n, sb);
        ev.basis(format!("{name} expected"), &n, expected);
    }
    for b in &bad {
        println!("  {b}");
    }
    (
        bad.is_empty(),
        format!("{count} CM-positive instances, {} failures", bad.len()),
    )
}

fn nil(ev: &mut Evidence) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let order = TermOrder::neg_degrevlex();
    let limits = Limits::default();
    let mut failures = 0;
    let mut cases = 0;
    while cases < 1000 {
        let mut draw = || Monomial::new(&[0; 4].map(|_: u64| rng.gen_range(0..=5))).unwrap();
        let (m1, m2) = (draw(), draw());
        if m1 == m2 {
            continue;
        }
        let k = rng.gen_range(1..=5);
        cases += 1;
        let f = Poly::from(Binomial::new(m1.pow(k), m2.pow(k)).unwrap());
        let g = Poly::from(Binomial::new(m1, m2).unwrap());
        match mora_nf(&f, &[g], &order, &limits) {
            Ok((None, trace)) => ev.nil_traces.push((m1, m2, trace)),
            _ => failures += 1,
        }
    }
    (
        failures == 0,
        format!("{cases} cases, {failures} nonzero normal forms"),
    )
}

/// `plus - minus` is an integer multiple of `e1 - e2`.
fn lattice_multiple(b: &Binomial, m1: &Monomial, m2: &Monomial) -> bool {
    let d: Vec<i64> = (0..4)
        .map(|i| m1.exp(i) as i64 - m2.exp(i) as i64)
        .collect();
    let v: Vec<i64> = (0..4)
        .map(|i| b.plus().exp(i) as i64 - b.minus().exp(i) as i64)
        .collect();
    let Some(p) = d.iter().position(|&x| x != 0) else {
        return false;
    };
    if v[p] % d[p] != 0 {
        return false;
    }
    let q = v[p] / d[p];
    (0..4).all(|i| v[i] == q * d[i])
}

fn weights(ev: &Evidence) -> (bool, String) {
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for (name, w, basis) in &ev.bases {
        for p in basis {
            if let Poly::Binomial(b) = p {
                checked += 1;
                if !w.is_balanced(b).unwrap_or(false) {
                    violations.push(format!("{name}: {b}"));
                }
            }
        }
    }
    let mut lattice = 0usize;
    for (m1, m2, trace) in &ev.nil_traces {
        let steps = trace.steps.iter().filter_map(|s| s.result);
        for p in std::iter::once(trace.input).chain(steps) {
            if let Poly::Binomial(b) = p {
                lattice += 1;
                if !lattice_multiple(&b, m1, m2) {
                    violations.push(format!("nil {m1} - {m2}: {b}"));
                }
            }
        }
    }
    for v in violations.iter().take(10) {
        println!("  {v}");
    }
    (
        violations.is_empty(),
        format!(
            "{checked} binomials in {} bases, {lattice} trace binomials, {} violations",
            ev.bases.len(),
            violations.len()
        ),
    )
}

fn verdict(checks: &[(&str, bool)], detail: String) -> (bool, String) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        (true, detail)
    } else {
        (false, format!("{detail}; failed: {}", failed.join(", ")))
    }
}

#[test]
fn acceptance() {
    let mut ev = Evidence::default();
    let lines = [
        timed(1, || example_one(&mut ev)),
        timed(2, || example_two(&mut ev)),
        timed(3, || example_three(&mut ev)),
        timed(4, || family(&mut ev)),
        timed(5, || equivalence(&mut ev)),
        timed(6, || standard_bases(&mut ev)),
        timed(7, || nil(&mut ev)),
        timed(8, || weights(&ev)),
    ];
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!(
        "acceptance: {}/{} criteria pass",
        lines.len() - failed.len(),
        lines.len()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

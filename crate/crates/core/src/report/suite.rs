//! Reproduction of published examples against an expectations file.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    family_generators, parse_poly, run_analysis, AnalysisRequest, Input, Report, Stage, Status,
    SCHEMA,
};
use crate::cm::{build_p, Branch};
use crate::engine::Limits;
use crate::kernel::Poly;

/// The built-in expectations.
pub const PAPER_EXPECTATIONS: &str = include_str!("paper.toml");

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleSpec {
    pub name: String,
    pub n: [u64; 4],
    pub generators: Vec<String>,
    #[serde(default)]
    pub exponents: BTreeMap<String, u64>,
    pub branch: Branch,
    pub d: Option<u64>,
    #[serde(default)]
    pub conditions: BTreeMap<String, i64>,
    pub cm: bool,
    pub p: Option<String>,
    pub cone: Option<Vec<String>>,
    pub mu: Option<u64>,
    pub oracle_lead_has_x1: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub c_from: u64,
    pub c_to: u64,
    #[serde(default)]
    pub recompute: Vec<u64>,
    #[serde(default)]
    pub conditions: BTreeMap<String, i64>,
    pub cm: bool,
    pub mu_slope: u64,
    pub mu_offset: u64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    #[serde(default)]
    pub example: Vec<ExampleSpec>,
    pub family: Option<FamilySpec>,
}

impl SuiteSpec {
    pub fn builtin() -> Self {
        Self::parse(PAPER_EXPECTATIONS).expect("built-in expectations parse")
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub case: String,
    pub check: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
    pub status: Status,
    pub elapsed_ms: f64,
}

struct Case<'a> {
    name: String,
    out: &'a mut Vec<SuiteCheck>,
}

impl Case<'_> {
    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, check: &str, expected: T, actual: T) {
        self.out.push(SuiteCheck {
            case: self.name.clone(),
            check: check.to_string(),
            pass: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        });
    }
}

fn poly_set(items: &[String]) -> Result<Vec<Poly>, String> {
    items
        .iter()
        .map(|s| parse_poly(s).map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

fn set_eq(a: &[Poly], b: &[Poly]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| y.same_up_to_sign(x)))
        && b.iter().all(|y| a.iter().any(|x| x.same_up_to_sign(y)))
}

fn show(ps: &[Poly]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Analysis checks shared by every case: pipeline status, oracle and weight
/// agreement recorded on the report.
fn report_checks(case: &mut Case, r: &Report) {
    case.eq("pipeline status", Status::Pass, r.status);
    for c in &r.checks {
        case.eq(&c.name, true, c.pass);
    }
}

fn run_example(ex: &ExampleSpec, oracle: bool, limits: &Limits) -> Vec<SuiteCheck> {
    let mut out = Vec::new();
    let mut case = Case {
        name: ex.name.clone(),
        out: &mut out,
    };
    let req = AnalysisRequest {
        oracle: oracle || ex.oracle_lead_has_x1.is_some(),
        limits: *limits,
        ..AnalysisRequest::new(Input::NVector { n: ex.n })
    };
    let r = run_analysis(&req);
    report_checks(&mut case, &r);
    match poly_set(&ex.generators) {
        Err(e) => case.eq("expectation parses", String::new(), e),
        Ok(expected) => {
            let got: Vec<Poly> = r
                .toric
                .as_ref()
                .map(|t| t.generators.iter().map(|&b| b.into()).collect())
                .unwrap_or_default();
            let ok = set_eq(&expected, &got);
            case.eq(
                "minimal generators",
                show(&expected),
                if ok { show(&expected) } else { show(&got) },
            );
        }
    }
    let Some(data) = r.data.clone() else {
        case.eq("classified", true, false);
        return out;
    };
    let fields = [
        ("a1", data.a1),
        ("a2", data.a2),
        ("a3", data.a3),
        ("a4", data.a4),
        ("a13", data.a13),
        ("a14", data.a14),
        ("a21", data.a21),
        ("a23", data.a23),
        ("a32", data.a32),
        ("a34", data.a34),
        ("a41", data.a41),
        ("a42", data.a42),
    ];
    for (k, v) in &ex.exponents {
        let actual = fields.iter().find(|(name, _)| name == k).map(|(_, x)| *x);
        case.eq(&format!("exponent {k}"), Some(*v), actual);
    }
    let Some(cert) = r.certificate.as_ref() else {
        case.eq("certificate", true, false);
        return out;
    };
    case.eq("branch", ex.branch, cert.branch);
    if let Some(d) = ex.d {
        case.eq("d", Some(d), cert.d);
    }
    for (id, v) in &ex.conditions {
        case.eq(
            &format!("condition {id}"),
            Some(*v as i128),
            cert.condition(id).map(|c| c.value),
        );
    }
    case.eq("Cohen-Macaulay", ex.cm, cert.verdict);
    if let Some(want) = ex.oracle_lead_has_x1 {
        let lead = cert.oracle.as_ref().and_then(|o| o.offending_lead);
        case.eq(
            "oracle lead divisible by x1",
            want,
            lead.is_some_and(|m| m.exp(0) > 0),
        );
    }
    if let Some(p) = &ex.p {
        match (parse_poly(p), build_p(&data)) {
            (Ok(want), Ok(got)) => case.eq("p", want.to_string(), Poly::from(got).to_string()),
            (w, g) => case.eq("p", format!("{w:?}"), format!("{g:?}")),
        }
    }
    if let (Some(cone), Some(tc)) = (&ex.cone, &r.tangent_cone) {
        match poly_set(cone) {
            Err(e) => case.eq("expectation parses", String::new(), e),
            Ok(expected) => {
                let got: Vec<Poly> = tc.cone_generators.iter().map(|g| *g.poly()).collect();
                let ok = set_eq(&expected, &got);
                case.eq(
                    "cone generators",
                    show(&expected),
                    if ok { show(&expected) } else { show(&got) },
                );
            }
        }
    }
    if let Some(mu) = ex.mu {
        case.eq("mu", Some(mu), r.mu());
    }
    out
}

/// The generating set of the cone listed for the family.
fn family_cone(c: u64) -> Vec<Poly> {
    let m = |e: [u64; 4]| Poly::Monomial(crate::kernel::Monomial::new(&e).expect("arity 4"));
    let mut out = vec![
        m([0, c, 0, 0]),
        m([0, 1, 0, 1]),
        Poly::Binomial(family_generators(c)[3]),
    ];
    for i in 0..c - 1 {
        out.push(m([0, c - (i + 1), 3 * i + 1, 0]));
    }
    for i in 0..c - 1 {
        out.push(m([0, 0, 3 * i + 1, c - (i + 1)]));
    }
    out.push(m([0, 0, 3 * c - 2, 0]));
    out
}

fn run_family_case(f: &FamilySpec, c: u64, oracle: bool, limits: &Limits) -> Vec<SuiteCheck> {
    let mut out = Vec::new();
    let mut case = Case {
        name: format!("family c={c}"),
        out: &mut out,
    };
    let req = AnalysisRequest {
        oracle,
        recompute_toric: f.recompute.contains(&c),
        limits: *limits,
        stage: Stage::Full,
        ..AnalysisRequest::new(Input::FamilyC { c })
    };
    let r = run_analysis(&req);
    report_checks(&mut case, &r);
    let cert = r.certificate.as_ref();
    case.eq("d", Some(c), cert.and_then(|k| k.d));
    for (id, v) in &f.conditions {
        case.eq(
            &format!("condition {id}"),
            Some(*v as i128),
            cert.and_then(|k| k.condition(id)).map(|k| k.value),
        );
    }
    case.eq("Cohen-Macaulay", Some(f.cm), cert.map(|k| k.verdict));
    case.eq("mu", Some(f.mu_slope * c + f.mu_offset), r.mu());
    if let Some(tc) = &r.tangent_cone {
        let got: Vec<Poly> = tc.cone_generators.iter().map(|g| *g.poly()).collect();
        let want = family_cone(c);
        let ok = set_eq(&want, &got);
        case.eq(
            "cone generators",
            show(&want),
            if ok { show(&want) } else { show(&got) },
        );
    }
    out
}

/// Run every case; with `oracle` the leading monomial test runs everywhere.
pub fn run_paper_suite(spec: &SuiteSpec, oracle: bool, limits: &Limits) -> SuiteReport {
    let start = Instant::now();
    let mut jobs: Vec<Box<dyn Fn() -> Vec<SuiteCheck> + Send + Sync + '_>> = Vec::new();
    for ex in &spec.example {
        jobs.push(Box::new(move || run_example(ex, oracle, limits)));
    }
    if let Some(f) = &spec.family {
        for c in f.c_from..=f.c_to {
            if super::check_family_c(c).is_ok() {
                jobs.push(Box::new(move || run_family_case(f, c, oracle, limits)));
            }
        }
    }
    let checks: Vec<SuiteCheck> = jobs.par_iter().map(|j| j()).collect::<Vec<_>>().concat();
    let status = if checks.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Mismatch
    };
    SuiteReport {
        checks,
        status,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn records(&self) -> Vec<Value> {
        let mut out = vec![json!({"record": "header", "schema": SCHEMA, "command": "paper-suite"})];
        for c in &self.checks {
            out.push(json!({
                "record": "check", "case": c.case, "name": c.check, "pass": c.pass,
                "expected": c.expected, "actual": c.actual,
            }));
        }
        let failed = self.failures().count();
        out.push(json!({
            "record": "summary", "status": self.status, "exit_code": self.status.exit_code(),
            "checks": self.checks.len(), "failed": failed,
        }));
        out.push(json!({"record": "timing", "elapsed_ms": self.elapsed_ms}));
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut case = "";
        for c in &self.checks {
            if c.case != case {
                case = &c.case;
                s.push_str(&format!("{case}\n"));
            }
            let mark = if c.pass { "pass" } else { "FAIL" };
            s.push_str(&format!("  {mark} {}", c.check));
            if !c.pass {
                s.push_str(&format!(": expected {}, got {}", c.expected, c.actual));
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "{} checks, {} failed, status {:?} (exit {})\n",
            self.checks.len(),
            self.failures().count(),
            self.status,
            self.status.exit_code()
        ));
        s
    }
}

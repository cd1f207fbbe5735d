//! Request handling, the analysis pipeline and line-delimited reports.
//!
//! Every structured report is a sequence of JSON objects, one per line, each
//! carrying a `"record"` tag. The first record is a `header` naming
//! [`SCHEMA`]; the last is `timing`, so byte comparisons can drop it.

mod parse;
mod suite;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cm::{cm_criterion, cm_oracle, expected_basis, local_basis, CmCertificate, CmError};
use crate::cone::{tangent_cone, ConeError, TangentConeReport};
use crate::curve::{
    binomial_in_toric, match_bresinsky_pattern, toric_ideal, BresinskyData, Classification,
    CurveError, MonomialCurve,
};
use crate::engine::{
    buchberger, minimalize, standard_basis, verify_standard_basis, BasisTask, EngineError,
    EngineStats, Limits,
};
use crate::kernel::{Binomial, KernelError, OrderKind, Poly, TermOrder};

pub use parse::{
    check_family_c, family_data, family_n, parse_a, parse_c, parse_input, parse_n, parse_poly,
    parse_poly_list, Input, ParseError,
};
pub use suite::{run_paper_suite, SuiteCheck, SuiteReport, SuiteSpec, PAPER_EXPECTATIONS};

pub const SCHEMA: &str = "tcone-report/1";

/// Outcome classes, ordered by severity; the exit code is the discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass = 0,
    Mismatch = 1,
    Unsupported = 2,
    Limit = 3,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{0}")]
    Input(String),
}

impl AnalysisError {
    fn engine(&self) -> Option<&EngineError> {
        match self {
            AnalysisError::Curve(CurveError::Engine(e))
            | AnalysisError::Cm(CmError::Engine(e))
            | AnalysisError::Cone(ConeError::Engine(e))
            | AnalysisError::Engine(e) => Some(e),
            _ => None,
        }
    }

    pub fn status(&self) -> Status {
        let cap = |k: &KernelError| matches!(k, KernelError::DegreeCap { .. });
        match self {
            _ if self.engine().is_some_and(|e| e.is_limit()) => Status::Limit,
            AnalysisError::Kernel(k)
            | AnalysisError::Curve(CurveError::Kernel(k))
            | AnalysisError::Cm(CmError::Kernel(k))
                if cap(k) =>
            {
                Status::Limit
            }
            _ => Status::Unsupported,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// How far [`run_analysis`] goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Stage {
    Toric,
    Classify,
    #[default]
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub input: Input,
    pub oracle: bool,
    pub dump_basis: bool,
    pub recompute_toric: bool,
    pub limits: Limits,
    pub stage: Stage,
}

impl AnalysisRequest {
    pub fn new(input: Input) -> Self {
        AnalysisRequest {
            input,
            oracle: false,
            dump_basis: false,
            recompute_toric: false,
            limits: Limits::default(),
            stage: Stage::Full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSummary {
    pub generators: Vec<Binomial>,
    pub elimination_basis_size: usize,
    pub candidates: usize,
    pub stats: EngineStats,
}

/// Which basis fed the tangent cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisSource {
    Expected,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Input,
    pub n: Option<[u64; 4]>,
    pub toric: Option<ToricSummary>,
    pub classification: Option<Classification>,
    pub data: Option<BresinskyData>,
    pub certificate: Option<CmCertificate>,
    pub basis_source: Option<BasisSource>,
    pub basis: Option<Vec<Poly>>,
    pub dump_basis: bool,
    pub tangent_cone: Option<TangentConeReport>,
    pub checks: Vec<Check>,
    pub status: Status,
    pub message: Option<String>,
    pub elapsed_ms: f64,
}

impl Report {
    fn new(command: &str, input: Input) -> Self {
        Report {
            command: command.to_string(),
            input,
            n: None,
            toric: None,
            classification: None,
            data: None,
            certificate: None,
            basis_source: None,
            basis: None,
            dump_basis: false,
            tangent_cone: None,
            checks: Vec::new(),
            status: Status::Pass,
            message: None,
            elapsed_ms: 0.0,
        }
    }

    fn raise(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
        if !pass {
            self.raise(Status::Mismatch);
        }
    }

    pub fn verdict(&self) -> Option<bool> {
        self.certificate.as_ref().map(|c| c.verdict)
    }

    pub fn mu(&self) -> Option<u64> {
        let cm = self.verdict()?;
        self.tangent_cone.as_ref().map(|t| t.mu_of_cone(cm))
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Structured records, timing last.
    pub fn records(&self) -> Vec<Value> {
        let mut out = vec![json!({
            "record": "header",
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input,
            "input_text": self.input.to_string(),
        })];
        if let Some(n) = self.n {
            let w = n.iter().max().unwrap_or(&0) - n.iter().min().unwrap_or(&0);
            out.push(json!({"record": "curve", "n": n, "width": w}));
        }
        if let Some(t) = &self.toric {
            out.push(json!({
                "record": "toric",
                "generators": strings(t.generators.iter()),
                "elimination_basis_size": t.elimination_basis_size,
                "candidates": t.candidates,
                "stats": t.stats,
            }));
        }
        if let Some(c) = &self.classification {
            let mut v = json!({"record": "classification"});
            match c {
                Classification::BresinskyGorenstein { data, generators } => {
                    v["tag"] = json!("bresinsky_gorenstein");
                    v["exponents"] = exponents(data);
                    v["generators"] = strings(generators.iter());
                }
                Classification::OutOfScope { reason } => {
                    v["tag"] = json!("out_of_scope");
                    v["reason"] = json!(reason);
                }
            }
            out.push(v);
        } else if let Some(d) = &self.data {
            out.push(json!({
                "record": "classification",
                "tag": "bresinsky_gorenstein",
                "exponents": exponents(d),
                "generators": strings(d.generators().iter()),
            }));
        }
        if let Some(c) = &self.certificate {
            out.push(json!({
                "record": "criterion",
                "branch": c.branch,
                "d": c.d,
                "conditions": c.conditions,
                "verdict": c.verdict,
            }));
            if let Some(o) = &c.oracle {
                out.push(json!({
                    "record": "oracle",
                    "cohen_macaulay": o.cohen_macaulay,
                    "basis_size": o.basis_size,
                    "offending_lead": o.offending_lead.map(|m| m.to_string()),
                    "agrees": o.cohen_macaulay == c.verdict,
                }));
            }
        }
        if let Some(t) = &self.tangent_cone {
            out.push(json!({
                "record": "tangent_cone",
                "basis_source": self.basis_source,
                "cone_generators": strings(t.cone_generators.iter()),
                "projected": strings(t.projected.iter()),
                "minimal": strings(t.minimal.iter()),
                "mu": t.mu,
                "mu_unprojected": t.mu_unprojected,
                "expected_mu": t.expected_mu,
                "matches": t.matches,
            }));
        }
        if let (true, Some(b)) = (self.dump_basis, &self.basis) {
            out.push(json!({
                "record": "standard_basis",
                "source": self.basis_source,
                "order": "neg_degrevlex",
                "elements": strings(b.iter()),
            }));
        }
        for c in &self.checks {
            out.push(
                json!({"record": "check", "name": c.name, "pass": c.pass, "detail": c.detail}),
            );
        }
        out.push(json!({
            "record": "summary",
            "status": self.status,
            "exit_code": self.exit_code(),
            "cohen_macaulay": self.verdict(),
            "mu": self.mu(),
            "message": self.message,
        }));
        out.push(json!({"record": "timing", "elapsed_ms": self.elapsed_ms}));
        out
    }

    pub fn to_jsonl(&self) -> String {
        jsonl(&self.records())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |l: String| {
            s.push_str(&l);
            s.push('\n');
        };
        line(format!("{} {}", self.command, self.input));
        if let Some(n) = self.n {
            line(format!("  n = {n:?}"));
        }
        if let Some(t) = &self.toric {
            line(format!(
                "  toric ideal: {} generators (elimination basis {}, {} pairs reduced)",
                t.generators.len(),
                t.elimination_basis_size,
                t.stats.pairs_reduced
            ));
            for g in &t.generators {
                line(format!("    {g}"));
            }
        }
        match (&self.classification, &self.data) {
            (Some(Classification::OutOfScope { reason }), _) => {
                line(format!("  out of scope: {reason}"))
            }
            (_, Some(d)) => line(format!("  exponents: {d}")),
            _ => {}
        }
        if let Some(c) = &self.certificate {
            let d = c.d.map(|d| format!(", d = {d}")).unwrap_or_default();
            line(format!("  branch {:?}{d}", c.branch));
            for k in &c.conditions {
                let gate = if k.applicable {
                    ""
                } else {
                    " (not applicable)"
                };
                let mark = if k.satisfied { "ok" } else { "FAILS" };
                line(format!("    {:<6} {:>6}  {mark}{gate}", k.id, k.value));
            }
            line(format!("  Cohen-Macaulay: {}", c.verdict));
            if let Some(o) = &c.oracle {
                let lead = o
                    .offending_lead
                    .map(|m| format!(", lead {m}"))
                    .unwrap_or_default();
                line(format!(
                    "  oracle: {} (basis of {}{lead})",
                    o.cohen_macaulay, o.basis_size
                ));
            }
        }
        if let Some(t) = &self.tangent_cone {
            line(format!(
                "  tangent cone generators ({:?} basis):",
                self.basis_source.unwrap_or(BasisSource::Computed)
            ));
            for g in &t.cone_generators {
                line(format!("    {g}"));
            }
            let exp = t
                .expected_mu
                .map(|e| format!(", formula {e}"))
                .unwrap_or_default();
            line(format!(
                "  mu = {} (projected), {} (direct){exp}",
                t.mu, t.mu_unprojected
            ));
        }
        if let (true, Some(b)) = (self.dump_basis, &self.basis) {
            line("  standard basis:".to_string());
            for p in b {
                line(format!("    {p}"));
            }
        }
        for c in self.checks.iter().filter(|c| !c.pass) {
            line(format!("  check {} failed: {}", c.name, c.detail));
        }
        if let Some(m) = &self.message {
            line(format!("  note: {m}"));
        }
        line(format!(
            "  status: {:?} (exit {})",
            self.status,
            self.exit_code()
        ));
        s
    }
}

pub fn jsonl(records: &[Value]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

/// Drop `timing` records from a JSONL document.
pub fn strip_timing(doc: &str) -> String {
    doc.lines()
        .filter(|l| !l.contains("\"record\":\"timing\""))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn strings<T: ToString>(it: impl Iterator<Item = T>) -> Value {
    Value::Array(it.map(|x| Value::String(x.to_string())).collect())
}

fn exponents(d: &BresinskyData) -> Value {
    json!({
        "a13": d.a13, "a14": d.a14, "a1": d.a1,
        "a2": d.a2, "a21": d.a21, "a23": d.a23,
        "a3": d.a3, "a32": d.a32, "a34": d.a34,
        "a4": d.a4, "a41": d.a41, "a42": d.a42,
    })
}

fn same_set(a: &[Poly], b: &[Poly]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| y.same_up_to_sign(x)))
        && b.iter().all(|y| a.iter().any(|x| x.same_up_to_sign(y)))
}

/// The five generators in the form displayed for the family.
pub fn family_generators(c: u64) -> Vec<Binomial> {
    let b = |p: [u64; 4], q: [u64; 4]| {
        Binomial::new(
            crate::kernel::Monomial::new(&p).expect("arity 4"),
            crate::kernel::Monomial::new(&q).expect("arity 4"),
        )
        .expect("distinct sides")
    };
    vec![
        b([0, 0, 1, c - 1], [2 * c + 4, 0, 0, 0]),
        b([0, c, 0, 0], [2 * c + 3, 0, 2, 0]),
        b([0, 0, 3, 0], [0, 1, 0, 1]),
        b([0, 0, 0, c], [1, c - 1, 0, 0]),
        b([0, c - 1, 1, 0], [2 * c + 3, 0, 0, 1]),
    ]
}

fn weights_check(r: &mut Report, check: &str, curve: &MonomialCurve, sets: &[(&str, &[Poly])]) {
    let mut bad = Vec::new();
    let mut total = 0usize;
    for (name, set) in sets {
        for p in set.iter() {
            if let Poly::Binomial(b) = p {
                total += 1;
                if !binomial_in_toric(b, curve) {
                    bad.push(format!("{name}: {b}"));
                }
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{total} binomials balanced")
    } else {
        bad.join("; ")
    };
    r.check(check, bad.is_empty(), detail);
}

/// Run the pipeline. Failures become a status and message on the report.
pub fn run_analysis(req: &AnalysisRequest) -> Report {
    let start = Instant::now();
    let command = match req.stage {
        Stage::Toric => "toric",
        Stage::Classify => "classify",
        Stage::Full => "analyze",
    };
    let mut r = Report::new(command, req.input.clone());
    r.dump_basis = req.dump_basis;
    if let Err(e) = analyze(req, &mut r) {
        r.raise(e.status());
        r.message = Some(e.to_string());
    }
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    r
}

fn recompute(
    r: &mut Report,
    curve: &MonomialCurve,
    limits: &Limits,
) -> Result<Classification, AnalysisError> {
    let t = toric_ideal(curve, limits)?;
    let class = match_bresinsky_pattern(&t.generators);
    r.toric = Some(ToricSummary {
        generators: t.generators,
        elimination_basis_size: t.elimination_basis_size,
        candidates: t.candidates,
        stats: t.stats,
    });
    Ok(class)
}

fn analyze(req: &AnalysisRequest, r: &mut Report) -> Result<(), AnalysisError> {
    let limits = &req.limits;
    let data = match &req.input {
        Input::NVector { n } => {
            let curve = MonomialCurve::new(n)?;
            r.n = Some(*n);
            let mut class = recompute(r, &curve, limits)?;
            let gens: Vec<Poly> = r
                .toric
                .as_ref()
                .map(|t| t.generators.iter().map(|&b| b.into()).collect())
                .unwrap_or_default();
            weights_check(r, "toric_weights", &curve, &[("toric", &gens)]);
            if req.stage == Stage::Toric {
                return Ok(());
            }
            if let Some(d) = class.data() {
                if d.n != *n {
                    class = Classification::OutOfScope {
                        reason: format!("weight formulas give {:?}, curve is {:?}", d.n, n),
                    };
                }
            }
            r.classification = Some(class.clone());
            match class {
                Classification::BresinskyGorenstein { data, .. } => data,
                Classification::OutOfScope { reason } => {
                    r.raise(Status::Unsupported);
                    r.message = Some(format!("out of scope: {reason}"));
                    return Ok(());
                }
            }
        }
        Input::AMatrix { a } => {
            let data = BresinskyData::from_free(*a)?;
            let curve = data.curve()?;
            r.n = Some(data.n);
            if req.recompute_toric || req.stage != Stage::Full {
                let class = recompute(r, &curve, limits)?;
                let ok = class.data() == Some(&data);
                r.check("toric_matches_exponents", ok, format!("{class:?}"));
                r.classification = Some(class);
            }
            data
        }
        Input::FamilyC { c } => {
            let data = family_data(*c).map_err(AnalysisError::Input)?;
            let curve = data.curve()?;
            r.n = Some(data.n);
            r.check(
                "family_weights",
                data.n == family_n(*c),
                format!("{:?} vs {:?}", data.n, family_n(*c)),
            );
            let shown: Vec<Poly> = family_generators(*c).into_iter().map(Poly::from).collect();
            let built: Vec<Poly> = data.generators().into_iter().map(Poly::from).collect();
            r.check(
                "family_generators",
                same_set(&shown, &built),
                "displayed list against f1..f5",
            );
            if req.recompute_toric || req.stage != Stage::Full {
                let class = recompute(r, &curve, limits)?;
                let toric: Vec<Poly> = r
                    .toric
                    .as_ref()
                    .map(|t| t.generators.iter().map(|&b| b.into()).collect())
                    .unwrap_or_default();
                r.check(
                    "toric_matches_family",
                    same_set(&toric, &shown),
                    "elimination against displayed list",
                );
                r.classification = Some(class);
            }
            data
        }
    };
    r.data = Some(data.clone());
    if req.stage != Stage::Full {
        return Ok(());
    }
    let curve = data.curve()?;

    let mut cert = match cm_criterion(&data) {
        Ok(c) => c,
        Err(e @ CmError::NotN1Min { .. }) => {
            r.raise(Status::Unsupported);
            r.message = Some(format!("unsupported hypothesis: {e}"));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    if req.oracle {
        let o = cm_oracle(&data, limits)?;
        r.check(
            "criterion_equals_oracle",
            o.cohen_macaulay == cert.verdict,
            format!("criterion {}, oracle {}", cert.verdict, o.cohen_macaulay),
        );
        cert.oracle = Some(o);
    }
    let order = TermOrder::neg_degrevlex();
    let basis: Vec<Poly> = if cert.verdict {
        let expected: Vec<Poly> = expected_basis(&data)?
            .into_iter()
            .map(|b| Poly::from(b).normalized(&order))
            .collect();
        let v = verify_standard_basis(&expected, &order, limits)?;
        r.check(
            "expected_basis_verified",
            v.is_standard_basis(),
            format!("{} pairs, {} failures", v.pairs_checked, v.failures.len()),
        );
        if let Some(o) = &cert.oracle {
            r.check(
                "standard_basis_matches_expected",
                same_set(&o.basis, &expected),
                format!("computed {}, expected {}", o.basis.len(), expected.len()),
            );
        }
        r.basis_source = Some(BasisSource::Expected);
        expected
    } else {
        r.basis_source = Some(BasisSource::Computed);
        match &cert.oracle {
            Some(o) => o.basis.clone(),
            None => local_basis(&data, limits)?,
        }
    };
    let tc = tangent_cone(&data, &cert, &basis, limits)?;
    if cert.verdict {
        r.check(
            "mu_formula",
            tc.matches == Some(true),
            format!(
                "mu {}, formula {}",
                tc.mu,
                tc.expected_mu.map_or("none".into(), |e| e.to_string())
            ),
        );
        r.check(
            "projection_sound",
            tc.mu == tc.mu_unprojected,
            format!("projected {}, direct {}", tc.mu, tc.mu_unprojected),
        );
    }
    let oracle_basis = cert
        .oracle
        .as_ref()
        .map(|o| o.basis.clone())
        .unwrap_or_default();
    let gens: Vec<Poly> = data.generators().into_iter().map(Poly::from).collect();
    weights_check(
        r,
        "weight_conservation",
        &curve,
        &[
            ("generators", &gens),
            ("basis", &basis),
            ("oracle", &oracle_basis),
        ],
    );
    r.certificate = Some(cert);
    r.tangent_cone = Some(tc);
    r.basis = Some(basis);
    Ok(())
}

/// One line of the family table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub c: u64,
    pub n: Option<[u64; 4]>,
    pub d: Option<u64>,
    pub cm4: Option<i128>,
    pub cm7: Option<i128>,
    pub verdict: Option<bool>,
    pub mu: Option<u64>,
    pub status: Status,
    pub failed: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub from: u64,
    pub to: u64,
    pub skipped: Vec<u64>,
    pub rows: Vec<FamilyRow>,
    pub status: Status,
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FamilyFlags {
    pub oracle: bool,
    pub recompute_toric: bool,
    pub limits: Limits,
}

fn family_row(c: u64, flags: &FamilyFlags) -> FamilyRow {
    let req = AnalysisRequest {
        oracle: flags.oracle,
        recompute_toric: flags.recompute_toric,
        limits: flags.limits,
        ..AnalysisRequest::new(Input::FamilyC { c })
    };
    let r = run_analysis(&req);
    let cert = r.certificate.as_ref();
    let value = |id: &str| cert.and_then(|k| k.condition(id)).map(|k| k.value);
    let mut row = FamilyRow {
        c,
        n: r.n,
        d: cert.and_then(|k| k.d),
        cm4: value("CM2.4"),
        cm7: value("CM2.7"),
        verdict: r.verdict(),
        mu: r.mu(),
        status: r.status,
        failed: r
            .checks
            .iter()
            .filter(|k| !k.pass)
            .map(|k| k.name.clone())
            .collect(),
        elapsed_ms: r.elapsed_ms,
    };
    let expect = [
        ("d = c", row.d == Some(c)),
        ("CM2.4 = -6", row.cm4 == Some(-6)),
        ("CM2.7 = -5", row.cm7 == Some(-5)),
        ("Cohen-Macaulay", row.verdict == Some(true)),
        ("mu = 2c+2", row.mu == Some(2 * c + 2)),
    ];
    for (what, ok) in expect {
        if !ok {
            row.failed.push(what.to_string());
            row.status = row.status.max(Status::Mismatch);
        }
    }
    row
}

/// Rows for every admissible `c` in `from..=to`, computed in parallel and
/// reported in order.
pub fn run_family(from: u64, to: u64, flags: &FamilyFlags) -> FamilyReport {
    let start = Instant::now();
    let (cs, skipped): (Vec<u64>, Vec<u64>) =
        (from.max(2)..=to).partition(|&c| check_family_c(c).is_ok());
    let mut skipped = skipped;
    skipped.extend(from..from.max(2).min(to.saturating_add(1)));
    skipped.sort_unstable();
    let rows: Vec<FamilyRow> = cs.par_iter().map(|&c| family_row(c, flags)).collect();
    let status = rows.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    FamilyReport {
        from,
        to,
        skipped,
        rows,
        status,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

impl FamilyReport {
    pub fn records(&self) -> Vec<Value> {
        let mut out = vec![json!({
            "record": "header",
            "schema": SCHEMA,
            "command": "family",
            "c_from": self.from,
            "c_to": self.to,
            "skipped": self.skipped,
        })];
        for r in &self.rows {
            out.push(json!({
                "record": "family_row",
                "c": r.c, "n": r.n, "d": r.d,
                "CM2.4": r.cm4, "CM2.7": r.cm7,
                "cohen_macaulay": r.verdict, "mu": r.mu,
                "status": r.status, "failed": r.failed,
            }));
        }
        out.push(json!({"record": "summary", "status": self.status, "exit_code": self.status.exit_code(), "rows": self.rows.len()}));
        let per: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"c": r.c, "elapsed_ms": r.elapsed_ms}))
            .collect();
        out.push(json!({"record": "timing", "elapsed_ms": self.elapsed_ms, "rows": per}));
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:>4} {:>28} {:>4} {:>6} {:>6} {:>5} {:>4} {:>9}\n",
            "c", "n", "d", "CM2.4", "CM2.7", "CM", "mu", "ms"
        );
        let show = |v: Option<i128>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        for r in &self.rows {
            let n =
                r.n.map(|n| format!("{},{},{},{}", n[0], n[1], n[2], n[3]))
                    .unwrap_or_default();
            s.push_str(&format!(
                "{:>4} {:>28} {:>4} {:>6} {:>6} {:>5} {:>4} {:>9.1}{}\n",
                r.c,
                n,
                r.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                show(r.cm4),
                show(r.cm7),
                r.verdict
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "-".into()),
                r.mu.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                r.elapsed_ms,
                if r.failed.is_empty() {
                    String::new()
                } else {
                    format!("  FAIL {}", r.failed.join(", "))
                },
            ));
        }
        if !self.skipped.is_empty() {
            s.push_str(&format!("skipped c: {:?}\n", self.skipped));
        }
        s.push_str(&format!(
            "status: {:?} (exit {})\n",
            self.status,
            self.status.exit_code()
        ));
        s
    }
}

/// Orders selectable for the `standard-basis` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderChoice {
    Local,
    Degrevlex,
    Lex,
}

impl OrderChoice {
    pub fn order(self) -> TermOrder {
        match self {
            OrderChoice::Local => TermOrder::neg_degrevlex(),
            OrderChoice::Degrevlex => TermOrder::degrevlex(4),
            OrderChoice::Lex => TermOrder::with_default_precedence(OrderKind::Lex, 4),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub order: OrderChoice,
    pub generators: Vec<Poly>,
    pub basis: Vec<Poly>,
    pub verified: Option<bool>,
    pub stats: EngineStats,
    pub status: Status,
    pub message: Option<String>,
    pub elapsed_ms: f64,
}

/// Minimal standard basis (local order) or reduced Gröbner basis (global).
pub fn run_standard_basis(generators: &[Poly], order: OrderChoice, limits: &Limits) -> BasisReport {
    let start = Instant::now();
    let ord = order.order();
    let mut rep = BasisReport {
        order,
        generators: generators.to_vec(),
        basis: Vec::new(),
        verified: None,
        stats: EngineStats::default(),
        status: Status::Pass,
        message: None,
        elapsed_ms: 0.0,
    };
    let res: Result<(), AnalysisError> = (|| {
        let task = BasisTask::new(generators.iter().copied(), ord.clone()).limits(*limits);
        if ord.is_local() {
            let sb = standard_basis(&task)?;
            rep.stats = sb.stats;
            rep.basis = minimalize(&sb.elements, &ord)
                .into_iter()
                .map(|p| p.normalized(&ord))
                .collect();
            let v = verify_standard_basis(&rep.basis, &ord, limits)?;
            rep.verified = Some(v.is_standard_basis());
            if !v.is_standard_basis() {
                rep.status = Status::Mismatch;
            }
        } else {
            let gb = buchberger(&task)?;
            rep.stats = gb.stats;
            rep.basis = gb.elements();
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.status = e.status();
        rep.message = Some(e.to_string());
    }
    rep.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    rep
}

impl BasisReport {
    pub fn records(&self) -> Vec<Value> {
        vec![
            json!({"record": "header", "schema": SCHEMA, "command": "standard-basis", "order": self.order,
                   "generators": strings(self.generators.iter())}),
            json!({"record": "standard_basis", "order": self.order, "elements": strings(self.basis.iter()),
                   "verified": self.verified, "stats": self.stats}),
            json!({"record": "summary", "status": self.status, "exit_code": self.status.exit_code(), "message": self.message}),
            json!({"record": "timing", "elapsed_ms": self.elapsed_ms}),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "standard basis ({:?}), {} elements\n",
            self.order,
            self.basis.len()
        );
        for p in &self.basis {
            s.push_str(&format!("  {p}\n"));
        }
        if let Some(v) = self.verified {
            s.push_str(&format!("verified: {v}\n"));
        }
        if let Some(m) = &self.message {
            s.push_str(&format!("note: {m}\n"));
        }
        s.push_str(&format!(
            "status: {:?} (exit {})\n",
            self.status,
            self.status.exit_code()
        ));
        s
    }
}

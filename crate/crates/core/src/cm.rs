//! Cohen-Macaulayness of the associated graded ring for Bresinsky data with
//! `n1` minimal: the invariant `d`, the binomials `g_i`, `h_i`, `p`, the
//! expected standard bases, the closed-form conditions and the leading
//! monomial oracle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::BresinskyData;
use crate::engine::{minimalize, standard_basis, BasisTask, EngineError, Limits};
use crate::kernel::{Binomial, KernelError, Monomial, Poly, TermOrder};

#[derive(Debug, Clone, Error)]
pub enum CmError {
    #[error("n1 = {n1} is not the smallest entry of {n:?}")]
    NotN1Min { n1: u64, n: [u64; 4] },
    #[error("index {i} outside 0..={max}")]
    Index { i: u64, max: u64 },
    #[error("p is only defined when a3 > a32 + a34")]
    NotLarge,
    #[error("hypotheses fail: {0:?}")]
    Hypotheses(Vec<String>),
    #[error("exponent overflow")]
    Overflow,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `a3 <= a32 + a34`
    Small,
    /// `a3 > a32 + a34`
    Large,
}

pub fn branch(a: &BresinskyData) -> Branch {
    if a.a3 <= a.a32 + a.a34 {
        Branch::Small
    } else {
        Branch::Large
    }
}

/// One inequality `value <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub value: i128,
    /// False when the gate on the sign of `a4 - d a34` switches it off.
    pub applicable: bool,
    pub satisfied: bool,
}

impl Condition {
    fn new(id: &str, value: i128, applicable: bool) -> Self {
        Condition {
            id: id.to_string(),
            value,
            applicable,
            satisfied: !applicable || value <= 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cohen_macaulay: bool,
    pub basis_size: usize,
    pub offending_lead: Option<Monomial>,
    /// Minimal standard basis, leads first.
    pub basis: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmCertificate {
    pub branch: Branch,
    pub d: Option<u64>,
    pub conditions: Vec<Condition>,
    pub verdict: bool,
    pub oracle: Option<OracleReport>,
}

impl CmCertificate {
    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> Vec<String> {
        self.conditions
            .iter()
            .filter(|c| !c.satisfied)
            .map(|c| c.id.clone())
            .collect()
    }

    /// `Some(true)` when an attached oracle agrees with the verdict.
    pub fn oracle_agrees(&self) -> Option<bool> {
        self.oracle
            .as_ref()
            .map(|o| o.cohen_macaulay == self.verdict)
    }
}

/// `min(ceil(a2 / a32), ceil(a4 / a34))`.
pub fn compute_d(a: &BresinskyData) -> u64 {
    a.a2.div_ceil(a.a32).min(a.a4.div_ceil(a.a34))
}

fn require_n1_min(a: &BresinskyData) -> Result<(), CmError> {
    if a.n1_is_min() {
        Ok(())
    } else {
        Err(CmError::NotN1Min { n1: a.n[0], n: a.n })
    }
}

fn binomial(plus: [u64; 4], minus: [u64; 4]) -> Result<Binomial, CmError> {
    Ok(Binomial::new(
        Monomial::new(&plus)?,
        Monomial::new(&minus)?,
    )?)
}

fn mul(x: u64, y: u64) -> Result<u64, CmError> {
    x.checked_mul(y).ok_or(CmError::Overflow)
}

fn check_index(a: &BresinskyData, i: u64) -> Result<(), CmError> {
    let max = compute_d(a) - 2;
    if i > max {
        return Err(CmError::Index { i, max });
    }
    Ok(())
}

/// `g_i = x2^(a2-(i+1)a32) x3^(i a3+a13) - x1^a21 x4^((i+1)a34)`
pub fn build_g(a: &BresinskyData, i: u64) -> Result<Binomial, CmError> {
    check_index(a, i)?;
    binomial(
        [0, a.a2 - mul(i + 1, a.a32)?, mul(i, a.a3)? + a.a13, 0],
        [a.a21, 0, 0, mul(i + 1, a.a34)?],
    )
}

/// `h_i = x3^(i a3+a13) x4^(a4-(i+1)a34) - x1^a1 x2^(i a32)`
pub fn build_h(a: &BresinskyData, i: u64) -> Result<Binomial, CmError> {
    check_index(a, i)?;
    binomial(
        [0, 0, mul(i, a.a3)? + a.a13, a.a4 - mul(i + 1, a.a34)?],
        [a.a1, mul(i, a.a32)?, 0, 0],
    )
}

pub fn build_p(a: &BresinskyData) -> Result<Binomial, CmError> {
    if branch(a) != Branch::Large {
        return Err(CmError::NotLarge);
    }
    let d = compute_d(a);
    let x3 = mul(d - 1, a.a3)? + a.a13;
    if a.a4 > mul(d, a.a34)? {
        binomial(
            [0, 0, x3, 0],
            [a.a21, mul(d, a.a32)? - a.a2, 0, mul(d, a.a34)?],
        )
    } else {
        binomial(
            [0, 0, x3, 0],
            [a.a1, mul(d - 1, a.a32)?, 0, mul(d, a.a34)? - a.a4],
        )
    }
}

/// Condition values `lhs - rhs`; an inequality holds when its value is `<= 0`.
pub fn conditions(a: &BresinskyData) -> (Branch, Option<u64>, Vec<Condition>) {
    let v = |x: u64| x as i128;
    let c1 = v(a.a2) - v(a.a21) - v(a.a23);
    let c2 = v(a.a4) - v(a.a41) - v(a.a42);
    match branch(a) {
        Branch::Small => (
            Branch::Small,
            None,
            vec![
                Condition::new("CM1.1", c1, true),
                Condition::new("CM1.2", c2, true),
            ],
        ),
        Branch::Large => {
            let d = compute_d(a);
            let e = v(a.a3) - v(a.a32) - v(a.a34);
            let u = v(a.a2) - v(a.a21) - v(a.a23);
            let w = v(a.a4) + v(a.a32) - v(a.a1) - v(a.a23);
            let gate = v(a.a4) - v(d) * v(a.a34) > 0;
            let dm = v(d) - 1;
            (
                Branch::Large,
                Some(d),
                vec![
                    Condition::new("CM2.1", c1, true),
                    Condition::new("CM2.2", c2, true),
                    Condition::new("CM2.3", v(a.a42) + v(a.a13) - v(a.a21) - v(a.a34), true),
                    Condition::new("CM2.4", dm * e + u, true),
                    Condition::new("CM2.5", dm * e + w, true),
                    Condition::new("CM2.6", v(d) * e + u, gate),
                    Condition::new("CM2.7", v(d) * e + w, !gate),
                ],
            )
        }
    }
}

/// Closed-form verdict. Requires `n1 = min(n)`.
pub fn cm_criterion(a: &BresinskyData) -> Result<CmCertificate, CmError> {
    require_n1_min(a)?;
    let (branch, d, conditions) = conditions(a);
    let verdict = conditions.iter().all(|c| c.satisfied);
    Ok(CmCertificate {
        branch,
        d,
        conditions,
        verdict,
        oracle: None,
    })
}

/// `G` in the small branch, `T = G, g_1.., h_1.., p` in the large one.
/// The conditions of the verdict must all hold.
pub fn expected_basis(a: &BresinskyData) -> Result<Vec<Binomial>, CmError> {
    let cert = cm_criterion(a)?;
    if !cert.verdict {
        return Err(CmError::Hypotheses(cert.failed()));
    }
    let mut out = a.generators().to_vec();
    if let Some(d) = cert.d {
        for i in 1..d - 1 {
            out.push(build_g(a, i)?);
        }
        for i in 1..d - 1 {
            out.push(build_h(a, i)?);
        }
        out.push(build_p(a)?);
    }
    Ok(out)
}

/// Standard basis of `f1..f5` under the local order, minimalized and written
/// lead first.
pub fn local_basis(a: &BresinskyData, limits: &Limits) -> Result<Vec<Poly>, CmError> {
    let order = TermOrder::neg_degrevlex();
    let task = BasisTask::new(a.generators(), order.clone()).limits(*limits);
    let sb = standard_basis(&task)?;
    Ok(minimalize(&sb.elements, &order)
        .into_iter()
        .map(|p| p.normalized(&order))
        .collect())
}

/// Leading monomial test: CM iff no lead of a minimal standard basis involves
/// `x1`.
pub fn cm_oracle(a: &BresinskyData, limits: &Limits) -> Result<OracleReport, CmError> {
    require_n1_min(a)?;
    let order = TermOrder::neg_degrevlex();
    let basis = local_basis(a, limits)?;
    let offending_lead = basis.iter().map(|p| p.lead(&order)).find(|m| m.exp(0) > 0);
    Ok(OracleReport {
        cohen_macaulay: offending_lead.is_none(),
        basis_size: basis.len(),
        offending_lead,
        basis,
    })
}

/// Criterion plus oracle in one certificate.
pub fn certify(a: &BresinskyData, oracle: bool, limits: &Limits) -> Result<CmCertificate, CmError> {
    let mut cert = cm_criterion(a)?;
    if oracle {
        cert.oracle = Some(cm_oracle(a, limits)?);
    }
    Ok(cert)
}

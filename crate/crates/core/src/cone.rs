//! Tangent cone `I(C)_*` from a local standard basis, the projection `x1 -> 0`
//! and minimal generator counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cm::{Branch, CmCertificate};
use crate::curve::BresinskyData;
use crate::engine::{is_member, EngineError, Limits};
use crate::kernel::{Binomial, Monomial, Poly, TermOrder};

#[derive(Debug, Clone, Error)]
pub enum ConeError {
    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("mu formula needs a Cohen-Macaulay verdict")]
    NotCohenMacaulay,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A monomial or a binomial homogeneous in total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Poly", into = "Poly")]
pub struct ConeElement(Poly);

impl TryFrom<Poly> for ConeElement {
    type Error = ConeError;

    fn try_from(p: Poly) -> Result<Self, ConeError> {
        if p.is_homogeneous() {
            Ok(ConeElement(p))
        } else {
            Err(ConeError::NotHomogeneous(p.to_string()))
        }
    }
}

impl From<ConeElement> for Poly {
    fn from(c: ConeElement) -> Poly {
        c.0
    }
}

impl From<Monomial> for ConeElement {
    fn from(m: Monomial) -> Self {
        ConeElement(Poly::Monomial(m))
    }
}

impl ConeElement {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.max_degree()
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.0, Poly::Monomial(_))
    }

    pub fn involves_x1(&self) -> bool {
        self.0.monomials().any(|m| m.exp(0) > 0)
    }
}

impl std::fmt::Display for ConeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Homogeneous summand of least degree.
pub fn least_summand(b: &Binomial) -> ConeElement {
    let (dp, dm) = (b.plus().degree(), b.minus().degree());
    match dp.cmp(&dm) {
        std::cmp::Ordering::Less => (*b.plus()).into(),
        std::cmp::Ordering::Greater => (*b.minus()).into(),
        std::cmp::Ordering::Equal => ConeElement(Poly::Binomial(*b)),
    }
}

fn least(p: &Poly) -> ConeElement {
    match p {
        Poly::Monomial(m) => (*m).into(),
        Poly::Binomial(b) => least_summand(b),
    }
}

/// Least summands of a standard basis under the local order.
pub fn cone_ideal(basis: &[Poly]) -> Vec<ConeElement> {
    basis.iter().map(least).collect()
}

/// Set `x1 = 0`.
pub fn project_x1(gens: &[ConeElement]) -> Vec<ConeElement> {
    let alive = |m: &Monomial| m.exp(0) == 0;
    gens.iter()
        .filter_map(|g| match g.0 {
            Poly::Monomial(m) => alive(&m).then_some(*g),
            Poly::Binomial(b) => match (alive(b.plus()), alive(b.minus())) {
                (true, true) => Some(*g),
                (true, false) => Some((*b.plus()).into()),
                (false, true) => Some((*b.minus()).into()),
                (false, false) => None,
            },
        })
        .collect()
}

/// Greedy minimal generating subset by ascending degree, ties in input
/// order.
pub fn minimal_generators(
    gens: &[ConeElement],
    limits: &Limits,
) -> Result<Vec<ConeElement>, ConeError> {
    let order = TermOrder::degrevlex(4);
    let mut sorted: Vec<ConeElement> = gens.to_vec();
    sorted.sort_by_key(|g| g.degree());
    let mut kept: Vec<ConeElement> = Vec::new();
    let mut polys: Vec<Poly> = Vec::new();
    for g in sorted {
        if !is_member(&g.0, &polys, &order, limits)? {
            polys.push(g.0);
            kept.push(g);
        }
    }
    Ok(kept)
}

/// 5 in the small branch, `2d + 2` in the large one.
pub fn mu_formula(a: &BresinskyData, cm: &CmCertificate) -> Result<u64, ConeError> {
    if !cm.verdict {
        return Err(ConeError::NotCohenMacaulay);
    }
    Ok(match cm.branch {
        Branch::Small => 5,
        Branch::Large => 2 * cm.d.unwrap_or_else(|| crate::cm::compute_d(a)) + 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentConeReport {
    pub cone_generators: Vec<ConeElement>,
    pub projected: Vec<ConeElement>,
    /// Minimal generators of the projected ideal.
    pub minimal: Vec<ConeElement>,
    pub mu: u64,
    /// Count taken on the cone generators before projection.
    pub mu_unprojected: u64,
    pub expected_mu: Option<u64>,
    pub matches: Option<bool>,
}

impl TangentConeReport {
    /// The count that describes `I(C)_*`: the projected one when the ring is
    /// Cohen-Macaulay, the direct one otherwise.
    pub fn mu_of_cone(&self, cm: bool) -> u64 {
        if cm {
            self.mu
        } else {
            self.mu_unprojected
        }
    }
}

/// Cone generators, projection and both counts from a local standard basis.
pub fn tangent_cone(
    a: &BresinskyData,
    cm: &CmCertificate,
    basis: &[Poly],
    limits: &Limits,
) -> Result<TangentConeReport, ConeError> {
    let cone_generators = cone_ideal(basis);
    let projected = project_x1(&cone_generators);
    let minimal = minimal_generators(&projected, limits)?;
    let mu_unprojected = minimal_generators(&cone_generators, limits)?.len() as u64;
    let expected_mu = mu_formula(a, cm).ok();
    let mu = minimal.len() as u64;
    Ok(TangentConeReport {
        cone_generators,
        projected,
        minimal,
        mu,
        mu_unprojected,
        expected_mu,
        matches: expected_mu.map(|e| e == mu),
    })
}

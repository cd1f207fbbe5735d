//! Standard bases for the local order and Gröbner bases for global orders.
//!
//! Both engines share the critical-pair machinery in [`pairs`]: the normal
//! selection strategy (smallest lcm degree first, ties by creation order),
//! the product criterion and Buchberger's chain criterion. Skipped pairs are
//! logged on the returned [`Basis`].

mod buchberger;
mod mora;
mod pairs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{KernelError, Monomial, Poly, TermOrder, DEFAULT_DEGREE_CAP};

pub use buchberger::{buchberger, is_member, reduce_global, GroebnerBasis};
pub use mora::{
    minimalize, mora_nf, standard_basis, verify_standard_basis, NormalFormTrace, TraceStep,
    VerifyReport,
};
pub use pairs::{Criterion, SkippedPair};

/// Environment variable consulted by [`Limits::from_env`].
pub const LIMITS_ENV: &str = "TCONE_LIMITS";

/// Resource ceilings for one engine run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Critical pairs that survive the criteria and get reduced.
    pub max_pairs: usize,
    pub max_basis: usize,
    /// Reduction steps inside a single normal-form computation.
    pub max_steps: usize,
    pub degree_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 50_000,
            max_basis: 5_000,
            max_steps: 2_000_000,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

impl Limits {
    /// Defaults overridden by `TCONE_LIMITS` when it is set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(LIMITS_ENV) {
            Ok(s) if !s.trim().is_empty() => s.parse(),
            _ => Ok(Limits::default()),
        }
    }
}

/// `pairs=N,basis=N,steps=N,degree=N`; any subset, in any order.
impl FromStr for Limits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Limits::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in limits, got '{item}'"))?;
            let v: u64 = value
                .trim()
                .parse()
                .map_err(|_| format!("limit '{key}' is not a nonnegative integer: '{value}'"))?;
            if v == 0 {
                return Err(format!("limit '{key}' must be positive"));
            }
            match key.trim() {
                "pairs" => out.max_pairs = v as usize,
                "basis" => out.max_basis = v as usize,
                "steps" => out.max_steps = v as usize,
                "degree" => out.degree_cap = v,
                other => return Err(format!("unknown limit '{other}'")),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Limits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs={},basis={},steps={},degree={}",
            self.max_pairs, self.max_basis, self.max_steps, self.degree_cap
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[default]
    Normal,
}

/// Input to [`standard_basis`] and [`buchberger`].
#[derive(Clone, Debug)]
pub struct BasisTask {
    pub generators: Vec<Poly>,
    pub order: TermOrder,
    pub strategy: Strategy,
    pub limits: Limits,
    pub chain_criterion: bool,
    /// Global orders only: interreduce the result.
    pub reduce: bool,
    /// Divide every new binomial by the gcd of its two sides. Only sound for
    /// prime ideals that contain no monomial, such as toric ideals.
    pub cancel_common_factors: bool,
}

impl BasisTask {
    pub fn new<I, P>(generators: I, order: TermOrder) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<Poly>,
    {
        BasisTask {
            generators: generators.into_iter().map(Into::into).collect(),
            order,
            strategy: Strategy::Normal,
            limits: Limits::default(),
            chain_criterion: true,
            reduce: true,
            cancel_common_factors: false,
        }
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn chain_criterion(mut self, on: bool) -> Self {
        self.chain_criterion = on;
        self
    }

    pub fn reduce(mut self, on: bool) -> Self {
        self.reduce = on;
        self
    }

    pub fn cancel_common_factors(mut self, on: bool) -> Self {
        self.cancel_common_factors = on;
        self
    }

    fn validate(&self) -> Result<(), EngineError> {
        let arity = self.order.arity();
        for g in &self.generators {
            if g.arity() != arity {
                return Err(KernelError::ArityMismatch(g.arity(), arity).into());
            }
            check_degree(g, &self.limits)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
    pub zero_reductions: usize,
    pub reduction_steps: usize,
}

impl EngineStats {
    pub fn absorb(&mut self, other: &EngineStats) {
        self.pairs_created += other.pairs_created;
        self.pairs_reduced += other.pairs_reduced;
        self.product_criterion += other.product_criterion;
        self.chain_criterion += other.chain_criterion;
        self.zero_reductions += other.zero_reductions;
        self.reduction_steps += other.reduction_steps;
    }
}

/// Output of an engine run.
#[derive(Clone, Debug)]
pub struct Basis {
    pub elements: Vec<Poly>,
    pub stats: EngineStats,
    pub skipped: Vec<SkippedPair>,
}

impl Basis {
    /// Elements that are binomials; the local engine on binomial input only
    /// produces these.
    pub fn binomials(&self) -> Vec<crate::kernel::Binomial> {
        self.elements
            .iter()
            .filter_map(|p| p.as_binomial().copied())
            .collect()
    }
}

#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{0} requires a local order")]
    NeedsLocalOrder(&'static str),
    #[error("{0} requires a global order")]
    NeedsGlobalOrder(&'static str),
    #[error("limit exceeded: {what} > {limit}")]
    Limit {
        what: &'static str,
        limit: u64,
        partial: Option<Box<NormalFormTrace>>,
    },
}

impl EngineError {
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            EngineError::Limit { .. } | EngineError::Kernel(KernelError::DegreeCap { .. })
        )
    }
}

pub(crate) fn check_degree(p: &Poly, limits: &Limits) -> Result<(), EngineError> {
    if p.max_degree() > limits.degree_cap {
        return Err(KernelError::DegreeCap {
            cap: limits.degree_cap,
        }
        .into());
    }
    Ok(())
}

/// An element with its orientation cached.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Element {
    pub poly: Poly,
    pub lead: Monomial,
    pub tail: Option<Monomial>,
    pub ecart: u64,
}

impl Element {
    pub fn new(poly: Poly, order: &TermOrder) -> Self {
        let (lead, tail) = poly.orient(order);
        let ecart = match tail {
            Some(t) if order.is_local() => t.degree() - lead.degree(),
            _ => 0,
        };
        Element {
            poly,
            lead,
            tail,
            ecart,
        }
    }
}

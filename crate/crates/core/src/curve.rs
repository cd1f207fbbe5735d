//! Monomial curves `x_i = t^{n_i}` in 4-space, their toric ideals, and the
//! exponent data of Bresinsky's five generators for the Gorenstein
//! non complete intersection case.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{buchberger, is_member, BasisTask, EngineError, EngineStats, Limits};
use crate::kernel::{gcd, Binomial, KernelError, Monomial, Poly, TermOrder, WeightVector};

#[derive(Debug, Clone, Error)]
pub enum CurveError {
    #[error("curve needs four entries, got {0}")]
    Arity(usize),
    #[error("entries must be positive: {0:?}")]
    NonPositive(Vec<u64>),
    #[error("entries must be pairwise distinct: {0:?}")]
    NotDistinct(Vec<u64>),
    #[error("gcd of {n:?} is {gcd}, not 1")]
    Gcd { n: Vec<u64>, gcd: u64 },
    #[error("exponent {name} must be positive")]
    ZeroExponent { name: &'static str },
    #[error("sum relation violated: {0}")]
    SumRelation(&'static str),
    #[error("weight formula overflows")]
    Overflow,
    #[error("no admissible sample after {0} attempts")]
    RejectionBudget(usize),
    #[error("bound must be at least 1")]
    Bound,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// The curve with parametrization `x_i = t^{n_i}`, `i = 1..4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCurve {
    n: WeightVector,
}

impl MonomialCurve {
    pub fn new(n: &[u64]) -> Result<Self, CurveError> {
        if n.len() != 4 {
            return Err(CurveError::Arity(n.len()));
        }
        let w = WeightVector::new(n.to_vec()).map_err(|_| CurveError::NonPositive(n.to_vec()))?;
        if !w.all_distinct() {
            return Err(CurveError::NotDistinct(n.to_vec()));
        }
        if w.gcd() != 1 {
            return Err(CurveError::Gcd {
                n: n.to_vec(),
                gcd: w.gcd(),
            });
        }
        Ok(MonomialCurve { n: w })
    }

    pub fn weights(&self) -> &WeightVector {
        &self.n
    }

    pub fn n(&self) -> [u64; 4] {
        let s = self.n.as_slice();
        [s[0], s[1], s[2], s[3]]
    }

    pub fn n1_is_min(&self) -> bool {
        self.n.as_slice()[0] == self.n.min()
    }

    /// `max(n) - min(n)`, the width of the semigroup.
    pub fn width(&self) -> u64 {
        self.n.max() - self.n.min()
    }
}

/// `weight(plus) == weight(minus)`.
pub fn binomial_in_toric(b: &Binomial, curve: &MonomialCurve) -> bool {
    curve.n.is_balanced(b).unwrap_or(false)
}

/// Minimal generators of a toric ideal together with engine statistics.
#[derive(Clone, Debug)]
pub struct ToricIdeal {
    pub generators: Vec<Binomial>,
    /// Size of the reduced elimination basis.
    pub elimination_basis_size: usize,
    /// t-free elements of that basis, before minimalization.
    pub candidates: usize,
    pub stats: EngineStats,
}

/// Toric ideal of `curve` by elimination.
///
/// Adjoin `t`, take `{x_i - t^{n_i}}`, compute the reduced Gröbner basis for
/// an order eliminating `t`, keep the t-free part, and prune it to a minimal
/// generating set by ascending weighted degree with membership tests.
pub fn toric_ideal(curve: &MonomialCurve, limits: &Limits) -> Result<ToricIdeal, CurveError> {
    let n = curve.n();
    let gens: Vec<Binomial> = (0..4)
        .map(|i| {
            let x = Monomial::var_pow(5, i, 1);
            let t = Monomial::var_pow(5, 4, n[i]);
            Binomial::new(x, t)
        })
        .collect::<Result<_, _>>()?;
    let task = BasisTask::new(gens, TermOrder::eliminate_t())
        .limits(*limits)
        .cancel_common_factors(true);
    let gb = buchberger(&task)?;
    let stats = gb.stats;
    let elimination_basis_size = gb.len();

    let mut candidates: Vec<Binomial> = gb
        .elements()
        .iter()
        .filter_map(|p| match p {
            Poly::Binomial(b) => Some(*b),
            Poly::Monomial(_) => None,
        })
        .filter_map(|b| Binomial::new(b.plus().truncate()?, b.minus().truncate()?).ok())
        .collect();
    let grevlex = TermOrder::degrevlex(4);
    candidates.sort_by(|a, b| {
        let wa = curve.n.weight(a.plus()).unwrap_or(u128::MAX);
        let wb = curve.n.weight(b.plus()).unwrap_or(u128::MAX);
        wa.cmp(&wb)
            .then_with(|| {
                a.plus()
                    .degree()
                    .max(a.minus().degree())
                    .cmp(&b.plus().degree().max(b.minus().degree()))
            })
            .then_with(|| grevlex.compare(&a.lead(&grevlex), &b.lead(&grevlex)))
    });
    let candidate_count = candidates.len();

    let mut kept: Vec<Poly> = Vec::new();
    for c in candidates {
        let p = Poly::Binomial(c.oriented(&grevlex));
        if !is_member(&p, &kept, &grevlex, limits)? {
            kept.push(p);
        }
    }
    Ok(ToricIdeal {
        generators: kept
            .iter()
            .filter_map(|p| p.as_binomial().copied())
            .collect(),
        elimination_basis_size,
        candidates: candidate_count,
        stats,
    })
}

/// The twelve exponents of Bresinsky's generators
///
/// ```text
/// f1 = x3^a13 x4^a14 - x1^a1      f2 = x2^a2 - x1^a21 x3^a23
/// f3 = x3^a3 - x2^a32 x4^a34      f4 = x4^a4 - x1^a41 x2^a42
/// f5 = x2^a42 x3^a13 - x1^a21 x4^a34
/// ```
///
/// with `a1 = a21 + a41`, `a2 = a32 + a42`, `a3 = a13 + a23`,
/// `a4 = a14 + a34`, and the weights `n` they determine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BresinskyData {
    pub a13: u64,
    pub a14: u64,
    pub a1: u64,
    pub a2: u64,
    pub a21: u64,
    pub a23: u64,
    pub a3: u64,
    pub a32: u64,
    pub a34: u64,
    pub a4: u64,
    pub a41: u64,
    pub a42: u64,
    pub n: [u64; 4],
}

/// The eight exponents that determine the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeExponents {
    pub a13: u64,
    pub a14: u64,
    pub a21: u64,
    pub a23: u64,
    pub a32: u64,
    pub a34: u64,
    pub a41: u64,
    pub a42: u64,
}

impl FreeExponents {
    pub fn validate(&self) -> Result<(), CurveError> {
        for (name, v) in self.named() {
            if v == 0 {
                return Err(CurveError::ZeroExponent { name });
            }
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, u64); 8] {
        [
            ("a13", self.a13),
            ("a14", self.a14),
            ("a21", self.a21),
            ("a23", self.a23),
            ("a32", self.a32),
            ("a34", self.a34),
            ("a41", self.a41),
            ("a42", self.a42),
        ]
    }
}

/// Weights from the exponents:
///
/// ```text
/// n1 = a2 a4 a13 + a42 a14 a23     n2 = a3 a4 a21 + a41 a34 a23
/// n3 = a1 a2 a34 + a32 a21 a14     n4 = a1 a3 a42 + a13 a32 a41
/// ```
pub fn bresinsky_n(e: &FreeExponents) -> Result<[u64; 4], CurveError> {
    e.validate()?;
    let w = |x: u64| x as u128;
    let a1 = w(e.a21) + w(e.a41);
    let a2 = w(e.a32) + w(e.a42);
    let a3 = w(e.a13) + w(e.a23);
    let a4 = w(e.a14) + w(e.a34);
    let prod = |a: u128, b: u128, c: u128| a.checked_mul(b).and_then(|x| x.checked_mul(c));
    let sum = |x: Option<u128>, y: Option<u128>| -> Result<u64, CurveError> {
        let s = x
            .zip(y)
            .and_then(|(x, y)| x.checked_add(y))
            .ok_or(CurveError::Overflow)?;
        u64::try_from(s).map_err(|_| CurveError::Overflow)
    };
    Ok([
        sum(prod(a2, a4, w(e.a13)), prod(w(e.a42), w(e.a14), w(e.a23)))?,
        sum(prod(a3, a4, w(e.a21)), prod(w(e.a41), w(e.a34), w(e.a23)))?,
        sum(prod(a1, a2, w(e.a34)), prod(w(e.a32), w(e.a21), w(e.a14)))?,
        sum(prod(a1, a3, w(e.a42)), prod(w(e.a13), w(e.a32), w(e.a41)))?,
    ])
}

impl BresinskyData {
    pub fn from_free(e: FreeExponents) -> Result<Self, CurveError> {
        let n = bresinsky_n(&e)?;
        Ok(BresinskyData {
            a13: e.a13,
            a14: e.a14,
            a1: e.a21 + e.a41,
            a2: e.a32 + e.a42,
            a21: e.a21,
            a23: e.a23,
            a3: e.a13 + e.a23,
            a32: e.a32,
            a34: e.a34,
            a4: e.a14 + e.a34,
            a41: e.a41,
            a42: e.a42,
            n,
        })
    }

    pub fn free(&self) -> FreeExponents {
        FreeExponents {
            a13: self.a13,
            a14: self.a14,
            a21: self.a21,
            a23: self.a23,
            a32: self.a32,
            a34: self.a34,
            a41: self.a41,
            a42: self.a42,
        }
    }

    /// Re-check every invariant, including the weight formulas.
    pub fn validate(&self) -> Result<(), CurveError> {
        let checks: [(&'static str, u64); 4] = [
            ("a1", self.a1),
            ("a2", self.a2),
            ("a3", self.a3),
            ("a4", self.a4),
        ];
        for (name, v) in checks {
            if v == 0 {
                return Err(CurveError::ZeroExponent { name });
            }
        }
        if self.a1 != self.a21 + self.a41 {
            return Err(CurveError::SumRelation("a1 = a21 + a41"));
        }
        if self.a2 != self.a32 + self.a42 {
            return Err(CurveError::SumRelation("a2 = a32 + a42"));
        }
        if self.a3 != self.a13 + self.a23 {
            return Err(CurveError::SumRelation("a3 = a13 + a23"));
        }
        if self.a4 != self.a14 + self.a34 {
            return Err(CurveError::SumRelation("a4 = a14 + a34"));
        }
        if bresinsky_n(&self.free())? != self.n {
            return Err(CurveError::SumRelation("n matches the weight formulas"));
        }
        Ok(())
    }

    pub fn curve(&self) -> Result<MonomialCurve, CurveError> {
        MonomialCurve::new(&self.n)
    }

    pub fn n1_is_min(&self) -> bool {
        self.n[0] == *self.n.iter().min().expect("four entries")
    }

    /// `[f1, f2, f3, f4, f5]` written as displayed above.
    pub fn generators(&self) -> [Binomial; 5] {
        let m = |e: [u64; 4]| Monomial::new(&e).expect("exponents fit");
        let b = |p: [u64; 4], q: [u64; 4]| {
            Binomial::new(m(p), m(q)).expect("positive exponents give distinct sides")
        };
        [
            b([0, 0, self.a13, self.a14], [self.a1, 0, 0, 0]),
            b([0, self.a2, 0, 0], [self.a21, 0, self.a23, 0]),
            b([0, 0, self.a3, 0], [0, self.a32, 0, self.a34]),
            b([0, 0, 0, self.a4], [self.a41, self.a42, 0, 0]),
            b([0, self.a42, self.a13, 0], [self.a21, 0, 0, self.a34]),
        ]
    }
}

impl fmt::Display for BresinskyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a13={} a14={} a1={} | a2={} a21={} a23={} | a3={} a32={} a34={} | a4={} a41={} a42={}",
            self.a13,
            self.a14,
            self.a1,
            self.a2,
            self.a21,
            self.a23,
            self.a3,
            self.a32,
            self.a34,
            self.a4,
            self.a41,
            self.a42
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Classification {
    BresinskyGorenstein {
        data: BresinskyData,
        generators: Vec<Binomial>,
    },
    OutOfScope {
        reason: String,
    },
}

impl Classification {
    pub fn data(&self) -> Option<&BresinskyData> {
        match self {
            Classification::BresinskyGorenstein { data, .. } => Some(data),
            Classification::OutOfScope { .. } => None,
        }
    }

    fn out(reason: impl Into<String>) -> Self {
        Classification::OutOfScope {
            reason: reason.into(),
        }
    }
}

/// Support shape `(variables of one side, variables of the other)`, zero
/// based.
const SHAPES: [(&[usize], &[usize]); 5] = [
    (&[2, 3], &[0]),
    (&[1], &[0, 2]),
    (&[2], &[1, 3]),
    (&[3], &[0, 1]),
    (&[1, 2], &[0, 3]),
];

fn support(m: &Monomial) -> Vec<usize> {
    (0..m.arity()).filter(|&i| m.exp(i) > 0).collect()
}

/// The binomial written so that its plus side has support `shape.0` and its
/// minus side `shape.1`, if it fits.
fn fit_shape(b: &Binomial, shape: (&[usize], &[usize])) -> Option<Binomial> {
    let (sp, sm) = (support(b.plus()), support(b.minus()));
    if sp == shape.0 && sm == shape.1 {
        Some(*b)
    } else if sm == shape.0 && sp == shape.1 {
        Some(b.negate())
    } else {
        None
    }
}

/// Recognize Bresinsky's generator pattern with fixed variable roles.
pub fn match_bresinsky_pattern(gens: &[Binomial]) -> Classification {
    if gens.len() != 5 {
        return Classification::out(format!("generator count {} != 5", gens.len()));
    }
    if gens.iter().any(|g| g.arity() != 4) {
        return Classification::out("generators must have arity 4");
    }
    let mut slots: [Option<Binomial>; 5] = [None; 5];
    for g in gens {
        let hit = SHAPES
            .iter()
            .enumerate()
            .find_map(|(k, &shape)| fit_shape(g, shape).map(|b| (k, b)));
        match hit {
            None => return Classification::out(format!("generator {g} matches no support shape")),
            Some((k, b)) => {
                if slots[k].is_some() {
                    return Classification::out(format!(
                        "two generators share the support shape of f{}",
                        k + 1
                    ));
                }
                slots[k] = Some(b);
            }
        }
    }
    let [f1, f2, f3, f4, f5] = slots.map(|s| s.expect("all five slots filled"));
    let free = FreeExponents {
        a13: f1.plus().exp(2),
        a14: f1.plus().exp(3),
        a21: f2.minus().exp(0),
        a23: f2.minus().exp(2),
        a32: f3.minus().exp(1),
        a34: f3.minus().exp(3),
        a41: f4.minus().exp(0),
        a42: f4.minus().exp(1),
    };
    let checks = [
        (f1.minus().exp(0) == free.a21 + free.a41, "a1 = a21 + a41"),
        (f2.plus().exp(1) == free.a32 + free.a42, "a2 = a32 + a42"),
        (f3.plus().exp(2) == free.a13 + free.a23, "a3 = a13 + a23"),
        (f4.plus().exp(3) == free.a14 + free.a34, "a4 = a14 + a34"),
        (
            f5.plus().exp(1) == free.a42
                && f5.plus().exp(2) == free.a13
                && f5.minus().exp(0) == free.a21
                && f5.minus().exp(3) == free.a34,
            "f5 = x2^a42 x3^a13 - x1^a21 x4^a34",
        ),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Classification::out(format!("relation fails: {what}"));
    }
    match BresinskyData::from_free(free) {
        Ok(data) => Classification::BresinskyGorenstein {
            data,
            generators: vec![f1, f2, f3, f4, f5],
        },
        Err(e) => Classification::out(e.to_string()),
    }
}

/// Toric ideal followed by pattern matching; the data's weights are checked
/// against the curve.
pub fn classify(
    curve: &MonomialCurve,
    limits: &Limits,
) -> Result<(Classification, ToricIdeal), CurveError> {
    let toric = toric_ideal(curve, limits)?;
    let mut class = match_bresinsky_pattern(&toric.generators);
    if let Classification::BresinskyGorenstein { data, .. } = &class {
        if data.n != curve.n() {
            class = Classification::out(format!(
                "weight formulas give {:?}, curve is {:?}",
                data.n,
                curve.n()
            ));
        }
    }
    Ok((class, toric))
}

/// Sample admissible exponent data: the eight free exponents uniform in
/// `1..=bound`, accepted when the weights are pairwise distinct, coprime and
/// `n1` is the smallest.
pub fn random_bresinsky(bound: u64, seed: u64) -> Result<BresinskyData, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_bresinsky_with(bound, &mut rng, 10_000)
}

pub fn random_bresinsky_with<R: Rng>(
    bound: u64,
    rng: &mut R,
    budget: usize,
) -> Result<BresinskyData, CurveError> {
    if bound == 0 {
        return Err(CurveError::Bound);
    }
    for _ in 0..budget {
        let mut draw = || rng.gen_range(1..=bound);
        let free = FreeExponents {
            a13: draw(),
            a14: draw(),
            a21: draw(),
            a23: draw(),
            a32: draw(),
            a34: draw(),
            a41: draw(),
            a42: draw(),
        };
        let data = BresinskyData::from_free(free)?;
        if admissible(&data.n) {
            return Ok(data);
        }
    }
    Err(CurveError::RejectionBudget(budget))
}

fn admissible(n: &[u64; 4]) -> bool {
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| n[i] != n[j]));
    let g = n.iter().fold(0, |g, &x| gcd(g, x));
    distinct && g == 1 && n[0] == *n.iter().min().expect("four entries")
}

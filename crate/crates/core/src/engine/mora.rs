use serde::{Deserialize, Serialize};

use super::pairs::{PairQueue, SkippedPair};
use super::{check_degree, Basis, BasisTask, Element, EngineError, EngineStats, Limits};
use crate::kernel::{Poly, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Index into the working set: the caller's set first, then elements
    /// appended during the reduction.
    pub reducer: usize,
    pub ecart_before: u64,
    pub result: Option<Poly>,
}

/// Record of one Mora normal-form computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormTrace {
    pub input: Poly,
    pub steps: Vec<TraceStep>,
    pub remainder: Option<Poly>,
}

/// Mora's weak normal form of `h` with respect to `set` under a local order.
///
/// The working set starts as `set`. While some element's lead divides the
/// lead of `h`, the divisor of least ecart (earliest on ties) is chosen; when
/// its ecart exceeds that of `h`, `h` itself joins the working set before
/// `h := spoly(h, g)`. A `None` remainder means `u*h` lies in the ideal for
/// some unit `u` of the local ring.
pub fn mora_nf(
    h: &Poly,
    set: &[Poly],
    order: &TermOrder,
    limits: &Limits,
) -> Result<(Option<Poly>, NormalFormTrace), EngineError> {
    if !order.is_local() {
        return Err(EngineError::NeedsLocalOrder("mora_nf"));
    }
    let elems: Vec<Element> = set.iter().map(|p| Element::new(*p, order)).collect();
    let mut steps = Vec::new();
    let mut stats = EngineStats::default();
    let rem = nf_local(*h, &elems, order, limits, Some(&mut steps), &mut stats);
    match rem {
        Ok(remainder) => Ok((
            remainder,
            NormalFormTrace {
                input: *h,
                steps,
                remainder,
            },
        )),
        Err(EngineError::Limit { what, limit, .. }) => Err(EngineError::Limit {
            what,
            limit,
            partial: Some(Box::new(NormalFormTrace {
                input: *h,
                remainder: steps.last().and_then(|s| s.result),
                steps,
            })),
        }),
        Err(e) => Err(e),
    }
}

pub(crate) fn nf_local(
    h: Poly,
    set: &[Element],
    order: &TermOrder,
    limits: &Limits,
    mut trace: Option<&mut Vec<TraceStep>>,
    stats: &mut EngineStats,
) -> Result<Option<Poly>, EngineError> {
    let mut extra: Vec<Element> = Vec::new();
    let mut h = Element::new(h, order);
    let mut steps = 0usize;
    loop {
        let mut best: Option<(usize, Element)> = None;
        for (idx, g) in set.iter().chain(extra.iter()).enumerate() {
            if g.lead.divides(&h.lead) && best.is_none_or(|(_, b)| g.ecart < b.ecart) {
                best = Some((idx, *g));
            }
        }
        let Some((idx, g)) = best else {
            return Ok(Some(h.poly));
        };
        if steps >= limits.max_steps {
            return Err(EngineError::Limit {
                what: "normal-form steps",
                limit: limits.max_steps as u64,
                partial: None,
            });
        }
        steps += 1;
        stats.reduction_steps += 1;
        if g.ecart > h.ecart {
            extra.push(h);
        }
        let next = h.poly.spoly(&g.poly, order);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep {
                reducer: idx,
                ecart_before: h.ecart,
                result: next,
            });
        }
        match next {
            None => return Ok(None),
            Some(p) => {
                check_degree(&p, limits)?;
                h = Element::new(p, order);
            }
        }
    }
}

/// Standard basis under a local order by the Mora variant of Buchberger's
/// algorithm: every critical pair not removed by a criterion is reduced with
/// [`mora_nf`] against the current basis and nonzero remainders are added.
pub fn standard_basis(task: &BasisTask) -> Result<Basis, EngineError> {
    let order = &task.order;
    if !order.is_local() {
        return Err(EngineError::NeedsLocalOrder("standard_basis"));
    }
    task.validate()?;
    let mut stats = EngineStats::default();
    let mut skipped: Vec<SkippedPair> = Vec::new();
    let mut basis: Vec<Element> = Vec::new();
    let mut queue = PairQueue::default();

    for g in &task.generators {
        if basis.iter().any(|e| e.poly.same_up_to_sign(g)) {
            continue;
        }
        basis.push(Element::new(*g, order));
        queue.add_element(basis.len() - 1, &basis, &mut stats);
    }

    while let Some((i, j)) = queue.pop() {
        if let Some(criterion) = queue.criterion(i, j, &basis, task.chain_criterion) {
            match criterion {
                super::Criterion::Product => stats.product_criterion += 1,
                super::Criterion::Chain => stats.chain_criterion += 1,
            }
            skipped.push(SkippedPair { i, j, criterion });
            continue;
        }
        stats.pairs_reduced += 1;
        if stats.pairs_reduced > task.limits.max_pairs {
            return Err(EngineError::Limit {
                what: "critical pairs",
                limit: task.limits.max_pairs as u64,
                partial: None,
            });
        }
        let Some(s) = basis[i].poly.spoly(&basis[j].poly, order) else {
            stats.zero_reductions += 1;
            continue;
        };
        match nf_local(s, &basis, order, &task.limits, None, &mut stats)? {
            None => stats.zero_reductions += 1,
            Some(h) => {
                let h = match (task.cancel_common_factors, h) {
                    (true, Poly::Binomial(b)) => Poly::Binomial(b.primitive()),
                    (_, h) => h,
                };
                basis.push(Element::new(h, order));
                if basis.len() > task.limits.max_basis {
                    return Err(EngineError::Limit {
                        what: "basis size",
                        limit: task.limits.max_basis as u64,
                        partial: None,
                    });
                }
                queue.add_element(basis.len() - 1, &basis, &mut stats);
            }
        }
    }

    Ok(Basis {
        elements: basis.into_iter().map(|e| e.poly).collect(),
        stats,
        skipped,
    })
}

/// Drop every element whose lead is divisible by the lead of another; among
/// equal leads the earliest survives. Input order is preserved.
pub fn minimalize(set: &[Poly], order: &TermOrder) -> Vec<Poly> {
    let leads: Vec<_> = set.iter().map(|p| p.lead(order)).collect();
    set.iter()
        .enumerate()
        .filter(|&(i, _)| {
            !leads
                .iter()
                .enumerate()
                .any(|(j, lj)| j != i && lj.divides(&leads[i]) && (*lj != leads[i] || j < i))
        })
        .map(|(_, p)| *p)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    pub remainder: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl VerifyReport {
    pub fn is_standard_basis(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reduce every S-polynomial, with no criteria applied, and list the pairs
/// whose Mora normal form is nonzero.
pub fn verify_standard_basis(
    set: &[Poly],
    order: &TermOrder,
    limits: &Limits,
) -> Result<VerifyReport, EngineError> {
    if !order.is_local() {
        return Err(EngineError::NeedsLocalOrder("verify_standard_basis"));
    }
    let elems: Vec<Element> = set.iter().map(|p| Element::new(*p, order)).collect();
    let mut report = VerifyReport::default();
    let mut stats = EngineStats::default();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            report.pairs_checked += 1;
            let Some(s) = elems[i].poly.spoly(&elems[j].poly, order) else {
                continue;
            };
            if let Some(r) = nf_local(s, &elems, order, limits, None, &mut stats)? {
                report.failures.push(PairFailure { i, j, remainder: r });
            }
        }
    }
    Ok(report)
}

use std::cmp::Ordering;

use super::pairs::{PairQueue, SkippedPair};
use super::{check_degree, Basis, BasisTask, Criterion, Element, EngineError, EngineStats, Limits};
use crate::kernel::{Monomial, Poly, TermOrder};

/// A Gröbner basis under a global order, ready for reduction queries.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    limits: Limits,
    elements: Vec<Element>,
    pub stats: EngineStats,
    pub skipped: Vec<SkippedPair>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> Vec<Poly> {
        self.elements.iter().map(|e| e.poly).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Fully reduced normal form of `f`.
    pub fn normal_form(&self, f: &Poly) -> Result<Option<Poly>, EngineError> {
        let mut stats = EngineStats::default();
        nf_global(
            *f,
            &self.elements,
            &self.order,
            &self.limits,
            true,
            false,
            &mut stats,
        )
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, EngineError> {
        let mut stats = EngineStats::default();
        Ok(nf_global(
            *f,
            &self.elements,
            &self.order,
            &self.limits,
            false,
            false,
            &mut stats,
        )?
        .is_none())
    }

    pub fn into_basis(self) -> Basis {
        Basis {
            elements: self.elements.into_iter().map(|e| e.poly).collect(),
            stats: self.stats,
            skipped: self.skipped,
        }
    }
}

/// Division by `set` under a global order. With `full` the tail is reduced
/// as well; otherwise only the leading monomial.
pub fn reduce_global(
    f: &Poly,
    set: &[Poly],
    order: &TermOrder,
    limits: &Limits,
    full: bool,
) -> Result<Option<Poly>, EngineError> {
    if order.is_local() {
        return Err(EngineError::NeedsGlobalOrder("reduce_global"));
    }
    let elems: Vec<Element> = set.iter().map(|p| Element::new(*p, order)).collect();
    let mut stats = EngineStats::default();
    nf_global(*f, &elems, order, limits, full, false, &mut stats)
}

fn find_reducer<'a>(m: &Monomial, set: &'a [Element]) -> Option<&'a Element> {
    set.iter().find(|g| g.lead.divides(m))
}

fn nf_global(
    f: Poly,
    set: &[Element],
    order: &TermOrder,
    limits: &Limits,
    full: bool,
    cancel: bool,
    stats: &mut EngineStats,
) -> Result<Option<Poly>, EngineError> {
    let mut steps = 0usize;
    let mut tick = |stats: &mut EngineStats| -> Result<(), EngineError> {
        steps += 1;
        stats.reduction_steps += 1;
        if steps > limits.max_steps {
            return Err(EngineError::Limit {
                what: "normal-form steps",
                limit: limits.max_steps as u64,
                partial: None,
            });
        }
        Ok(())
    };

    let mut h = f;
    loop {
        let lead = h.lead(order);
        let Some(g) = find_reducer(&lead, set) else {
            break;
        };
        tick(stats)?;
        match h.spoly(&g.poly, order) {
            None => return Ok(None),
            Some(p) => {
                check_degree(&p, limits)?;
                h = match (cancel, p) {
                    (true, Poly::Binomial(b)) => Poly::Binomial(b.primitive()),
                    (_, p) => p,
                };
            }
        }
    }
    if !full {
        return Ok(Some(h));
    }
    reduce_tail(h, set, order, limits, stats)
}

fn reduce_tail(
    h: Poly,
    set: &[Element],
    order: &TermOrder,
    limits: &Limits,
    stats: &mut EngineStats,
) -> Result<Option<Poly>, EngineError> {
    let (lead, mut tail) = h.orient(order);
    let mut steps = 0usize;
    while let Some(t) = tail {
        let Some(g) = find_reducer(&t, set) else {
            break;
        };
        steps += 1;
        stats.reduction_steps += 1;
        if steps > limits.max_steps {
            return Err(EngineError::Limit {
                what: "normal-form steps",
                limit: limits.max_steps as u64,
                partial: None,
            });
        }
        tail = g.tail.map(|gt| t.div_unchecked(&g.lead).mul(&gt));
        if let Some(nt) = tail {
            check_degree(&Poly::Monomial(nt), limits)?;
        }
    }
    Ok(Poly::from_parts(Some(lead), tail))
}

/// Buchberger's algorithm under a global order.
///
/// With `task.reduce` the result is the reduced Gröbner basis: minimal,
/// tails fully reduced, each binomial written lead first and the list sorted
/// ascending by leading monomial.
pub fn buchberger(task: &BasisTask) -> Result<GroebnerBasis, EngineError> {
    let order = &task.order;
    if order.is_local() {
        return Err(EngineError::NeedsGlobalOrder("buchberger"));
    }
    task.validate()?;
    let cancel = task.cancel_common_factors;
    let mut stats = EngineStats::default();
    let mut skipped = Vec::new();
    let mut basis: Vec<Element> = Vec::new();
    let mut queue = PairQueue::default();

    for g in &task.generators {
        let g = match (cancel, g) {
            (true, Poly::Binomial(b)) => Poly::Binomial(b.primitive()),
            (_, g) => *g,
        };
        if basis.iter().any(|e| e.poly.same_up_to_sign(&g)) {
            continue;
        }
        basis.push(Element::new(g, order));
        queue.add_element(basis.len() - 1, &basis, &mut stats);
    }

    while let Some((i, j)) = queue.pop() {
        if let Some(criterion) = queue.criterion(i, j, &basis, task.chain_criterion) {
            match criterion {
                Criterion::Product => stats.product_criterion += 1,
                Criterion::Chain => stats.chain_criterion += 1,
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
        match nf_global(s, &basis, order, &task.limits, false, cancel, &mut stats)? {
            None => stats.zero_reductions += 1,
            Some(h) => {
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

    let elements = if task.reduce {
        interreduce(&basis, order, &task.limits, &mut stats)?
    } else {
        basis
    };
    Ok(GroebnerBasis {
        order: order.clone(),
        limits: task.limits,
        elements,
        stats,
        skipped,
    })
}

fn interreduce(
    basis: &[Element],
    order: &TermOrder,
    limits: &Limits,
    stats: &mut EngineStats,
) -> Result<Vec<Element>, EngineError> {
    let polys: Vec<Poly> = basis.iter().map(|e| e.poly).collect();
    let minimal: Vec<Element> = super::minimalize(&polys, order)
        .into_iter()
        .map(|p| Element::new(p, order))
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for e in &minimal {
        // No other lead divides this lead, so only the tail moves.
        let r = reduce_tail(e.poly, &minimal, order, limits, stats)?;
        if let Some(p) = r {
            out.push(Element::new(p.normalized(order), order));
        }
    }
    out.sort_by(|a, b| order.compare(&a.lead, &b.lead));
    out.dedup_by(|a, b| order.compare(&a.lead, &b.lead) == Ordering::Equal);
    Ok(out)
}

/// Whether `f` lies in the ideal generated by `gens`, via a reduced Gröbner
/// basis under the global `order`.
pub fn is_member(
    f: &Poly,
    gens: &[Poly],
    order: &TermOrder,
    limits: &Limits,
) -> Result<bool, EngineError> {
    if gens.is_empty() {
        return Ok(false);
    }
    let gb = buchberger(&BasisTask::new(gens.iter().copied(), order.clone()).limits(*limits))?;
    gb.contains(f)
}

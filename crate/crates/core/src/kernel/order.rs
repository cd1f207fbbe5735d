use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{KernelError, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Local order: lower total degree is larger, ties broken reverse
    /// lexicographically.
    NegDegRevLex,
    /// Product order: degrevlex on the first `n` variables in precedence,
    /// then degrevlex on the rest.
    EliminationBlock(usize),
}

/// A monomial order together with its variable precedence.
///
/// `precedence` lists variable indices from highest to lowest. The default
/// for arity 4 is `x4 > x3 > x2 > x1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, KernelError> {
        let n = precedence.len();
        let mut seen = vec![false; n];
        for &v in &precedence {
            if v >= n || seen[v] {
                return Err(KernelError::BadPrecedence(precedence.clone()));
            }
            seen[v] = true;
        }
        match kind {
            // x1 has to stay the lowest variable for the local order.
            OrderKind::NegDegRevLex if precedence.last() != Some(&0) => {
                return Err(KernelError::BadPrecedence(precedence));
            }
            OrderKind::EliminationBlock(k) if k == 0 || k >= n => {
                return Err(KernelError::BadBlock { block: k, arity: n });
            }
            _ => {}
        }
        Ok(TermOrder { kind, precedence })
    }

    /// Variables ordered `x_r > ... > x_1`.
    pub fn with_default_precedence(kind: OrderKind, arity: usize) -> Self {
        let precedence: Vec<usize> = (0..arity).rev().collect();
        TermOrder::new(kind, precedence).expect("default precedence is valid")
    }

    /// Negative degree reverse lexicographic order with `x4 > x3 > x2 > x1`.
    pub fn neg_degrevlex() -> Self {
        Self::with_default_precedence(OrderKind::NegDegRevLex, 4)
    }

    pub fn degrevlex(arity: usize) -> Self {
        Self::with_default_precedence(OrderKind::DegRevLex, arity)
    }

    /// Elimination order on arity 5 with the last slot (`t`) eliminated.
    pub fn eliminate_t() -> Self {
        TermOrder::new(OrderKind::EliminationBlock(1), vec![4, 3, 2, 1, 0])
            .expect("valid elimination order")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn arity(&self) -> usize {
        self.precedence.len()
    }

    pub fn is_local(&self) -> bool {
        matches!(self.kind, OrderKind::NegDegRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, KernelError> {
        if a.arity() != b.arity() {
            return Err(KernelError::ArityMismatch(a.arity(), b.arity()));
        }
        if a.arity() != self.arity() {
            return Err(KernelError::ArityMismatch(a.arity(), self.arity()));
        }
        Ok(self.compare(a, b))
    }

    /// Comparison without arity checks; callers inside the crate keep arities
    /// consistent.
    pub(crate) fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => lex(&self.precedence, a, b),
            OrderKind::DegRevLex => degrevlex(&self.precedence, a, b),
            OrderKind::NegDegRevLex => {
                let da = a.degree();
                let db = b.degree();
                if da != db {
                    return db.cmp(&da);
                }
                revlex_tie(&self.precedence, a, b)
            }
            OrderKind::EliminationBlock(k) => {
                let (block, rest) = self.precedence.split_at(k);
                degrevlex(block, a, b).then_with(|| degrevlex(rest, a, b))
            }
        }
    }
}

fn lex(prec: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &v in prec {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn partial_degree(vars: &[usize], m: &Monomial) -> u64 {
    vars.iter().map(|&v| m.exp(v)).sum()
}

fn degrevlex(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    partial_degree(vars, a)
        .cmp(&partial_degree(vars, b))
        .then_with(|| revlex_tie(vars, a, b))
}

/// Scan from the lowest-precedence variable upwards; the first variable where
/// the exponents differ decides, and the smaller exponent wins.
fn revlex_tie(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &v in vars.iter().rev() {
        match a.exp(v).cmp(&b.exp(v)) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{KernelError, Monomial, TermOrder};

/// A pure-difference binomial `plus - minus` with `plus != minus`.
///
/// The zero binomial is never stored; operations that can cancel return
/// `Option<Binomial>` with `None` standing for zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBinomial", into = "RawBinomial")]
pub struct Binomial {
    plus: Monomial,
    minus: Monomial,
}

#[derive(Serialize, Deserialize)]
struct RawBinomial {
    plus: Monomial,
    minus: Monomial,
}

impl TryFrom<RawBinomial> for Binomial {
    type Error = KernelError;
    fn try_from(r: RawBinomial) -> Result<Self, KernelError> {
        Binomial::new(r.plus, r.minus)
    }
}

impl From<Binomial> for RawBinomial {
    fn from(b: Binomial) -> Self {
        RawBinomial {
            plus: b.plus,
            minus: b.minus,
        }
    }
}

impl Binomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Result<Self, KernelError> {
        if plus.arity() != minus.arity() {
            return Err(KernelError::ArityMismatch(plus.arity(), minus.arity()));
        }
        if plus == minus {
            return Err(KernelError::ZeroBinomial);
        }
        Ok(Binomial { plus, minus })
    }

    /// `plus - minus`, or `None` when the two monomials coincide.
    pub fn difference(plus: Monomial, minus: Monomial) -> Option<Self> {
        debug_assert_eq!(plus.arity(), minus.arity());
        (plus != minus).then_some(Binomial { plus, minus })
    }

    pub fn plus(&self) -> &Monomial {
        &self.plus
    }

    pub fn minus(&self) -> &Monomial {
        &self.minus
    }

    pub fn arity(&self) -> usize {
        self.plus.arity()
    }

    pub fn negate(&self) -> Self {
        Binomial {
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// `(lead, tail)` under `order`.
    pub fn orient(&self, order: &TermOrder) -> (Monomial, Monomial) {
        match order.compare(&self.plus, &self.minus) {
            Ordering::Less => (self.minus, self.plus),
            _ => (self.plus, self.minus),
        }
    }

    pub fn lead(&self, order: &TermOrder) -> Monomial {
        self.orient(order).0
    }

    /// The same binomial written with its leading monomial first.
    pub fn oriented(&self, order: &TermOrder) -> Self {
        let (lead, tail) = self.orient(order);
        Binomial {
            plus: lead,
            minus: tail,
        }
    }

    /// `deg(tail) - deg(lead)`; only defined for local orders.
    pub fn ecart(&self, order: &TermOrder) -> Result<u64, KernelError> {
        if !order.is_local() {
            return Err(KernelError::GlobalOrderEcart);
        }
        let (lead, tail) = self.orient(order);
        Ok(tail.degree() - lead.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.plus.degree() == self.minus.degree()
    }

    /// S-polynomial of two binomials. With `g = lcm(lead1, lead2)` the result
    /// is `(g/lead1)*tail1 - (g/lead2)*tail2`, so `self` supplies the plus side.
    pub fn spoly(&self, other: &Binomial, order: &TermOrder) -> Option<Binomial> {
        let (l1, t1) = self.orient(order);
        let (l2, t2) = other.orient(order);
        let g = l1.lcm(&l2);
        let plus = g.div_unchecked(&l1).mul(&t1);
        let minus = g.div_unchecked(&l2).mul(&t2);
        Binomial::difference(plus, minus)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Binomial {
        Binomial {
            plus: self.plus.mul(m),
            minus: self.minus.mul(m),
        }
    }

    /// Divide both sides by their gcd.
    pub fn primitive(&self) -> Binomial {
        let g = self.plus.gcd(&self.minus);
        Binomial {
            plus: self.plus.div_unchecked(&g),
            minus: self.minus.div_unchecked(&g),
        }
    }

    /// Equality up to overall sign.
    pub fn same_up_to_sign(&self, other: &Binomial) -> bool {
        self == other || *self == other.negate()
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonzero polynomial from the binomial-closed world: a single monomial or
/// a pure difference of two monomials.
///
/// Global engines need monomials as well as binomials because tangent-cone
/// ideals mix both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Poly {
    Monomial(Monomial),
    Binomial(Binomial),
}

impl Poly {
    pub fn from_parts(plus: Option<Monomial>, minus: Option<Monomial>) -> Option<Poly> {
        match (plus, minus) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(Poly::Monomial(m)),
            (Some(p), Some(q)) => Binomial::difference(p, q).map(Poly::Binomial),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Poly::Monomial(m) => m.arity(),
            Poly::Binomial(b) => b.arity(),
        }
    }

    pub fn orient(&self, order: &TermOrder) -> (Monomial, Option<Monomial>) {
        match self {
            Poly::Monomial(m) => (*m, None),
            Poly::Binomial(b) => {
                let (l, t) = b.orient(order);
                (l, Some(t))
            }
        }
    }

    pub fn lead(&self, order: &TermOrder) -> Monomial {
        self.orient(order).0
    }

    pub fn ecart(&self, order: &TermOrder) -> Result<u64, KernelError> {
        match self {
            Poly::Monomial(_) if order.is_local() => Ok(0),
            Poly::Monomial(_) => Err(KernelError::GlobalOrderEcart),
            Poly::Binomial(b) => b.ecart(order),
        }
    }

    pub fn spoly(&self, other: &Poly, order: &TermOrder) -> Option<Poly> {
        let (l1, t1) = self.orient(order);
        let (l2, t2) = other.orient(order);
        let g = l1.lcm(&l2);
        let plus = t1.map(|t| g.div_unchecked(&l1).mul(&t));
        let minus = t2.map(|t| g.div_unchecked(&l2).mul(&t));
        Poly::from_parts(plus, minus)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> {
        let (a, b) = match self {
            Poly::Monomial(m) => (*m, None),
            Poly::Binomial(b) => (b.plus, Some(b.minus)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn max_degree(&self) -> u64 {
        self.monomials().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self {
            Poly::Monomial(_) => true,
            Poly::Binomial(b) => b.is_homogeneous(),
        }
    }

    pub fn as_binomial(&self) -> Option<&Binomial> {
        match self {
            Poly::Binomial(b) => Some(b),
            Poly::Monomial(_) => None,
        }
    }

    /// Sign-insensitive equality.
    pub fn same_up_to_sign(&self, other: &Poly) -> bool {
        match (self, other) {
            (Poly::Monomial(a), Poly::Monomial(b)) => a == b,
            (Poly::Binomial(a), Poly::Binomial(b)) => a.same_up_to_sign(b),
            _ => false,
        }
    }

    /// Canonical representative: binomials written lead-first.
    pub fn normalized(&self, order: &TermOrder) -> Poly {
        match self {
            Poly::Monomial(m) => Poly::Monomial(*m),
            Poly::Binomial(b) => Poly::Binomial(b.oriented(order)),
        }
    }
}

impl From<Binomial> for Poly {
    fn from(b: Binomial) -> Self {
        Poly::Binomial(b)
    }
}

impl From<Monomial> for Poly {
    fn from(m: Monomial) -> Self {
        Poly::Monomial(m)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poly::Monomial(m) => fmt::Display::fmt(m, f),
            Poly::Binomial(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

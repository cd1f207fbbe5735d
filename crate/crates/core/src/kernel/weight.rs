use serde::{Deserialize, Serialize};

use super::{Binomial, KernelError, Monomial};

/// Semigroup generators `n_1, ..., n_r`; `x_i` weighs `n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(n: Vec<u64>) -> Result<Self, KernelError> {
        if n.is_empty() || n.contains(&0) {
            return Err(KernelError::BadWeights(n));
        }
        Ok(WeightVector(n))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0, |g, &x| gcd(g, x))
    }

    pub fn all_distinct(&self) -> bool {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn min(&self) -> u64 {
        *self.0.iter().min().expect("nonempty")
    }

    pub fn max(&self) -> u64 {
        *self.0.iter().max().expect("nonempty")
    }

    /// `sum e_i n_i`, accumulated in 128 bits.
    pub fn weight(&self, m: &Monomial) -> Result<u128, KernelError> {
        if m.arity() != self.0.len() {
            return Err(KernelError::ArityMismatch(m.arity(), self.0.len()));
        }
        m.exps()
            .iter()
            .zip(&self.0)
            .try_fold(0u128, |acc, (&e, &n)| {
                acc.checked_add(e as u128 * n as u128)
                    .ok_or(KernelError::WeightOverflow)
            })
    }

    pub fn is_balanced(&self, b: &Binomial) -> Result<bool, KernelError> {
        Ok(self.weight(b.plus())? == self.weight(b.minus())?)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

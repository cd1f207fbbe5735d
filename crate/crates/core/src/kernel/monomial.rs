use std::fmt;

use serde::{Deserialize, Serialize};

use super::KernelError;

/// Largest number of variables a monomial can carry.
pub const MAX_ARITY: usize = 8;

/// Total-degree ceiling applied to constructed monomials unless a caller
/// supplies its own.
pub const DEFAULT_DEGREE_CAP: u64 = 1 << 32;

/// A monomial `x_1^{e_1} ... x_r^{e_r}` stored as a dense exponent vector.
///
/// Variable `i` (zero based) is printed as `x{i+1}`; in arity 5 the last
/// slot is the elimination variable and prints as `t`. Unused slots past the
/// arity are always zero, so derived equality and hashing are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u64; MAX_ARITY],
    arity: u8,
}

impl Monomial {
    pub fn new(exps: &[u64]) -> Result<Self, KernelError> {
        Self::with_cap(exps, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(exps: &[u64], cap: u64) -> Result<Self, KernelError> {
        if exps.is_empty() || exps.len() > MAX_ARITY {
            return Err(KernelError::Arity(exps.len()));
        }
        let mut degree: u64 = 0;
        for &e in exps {
            degree = degree
                .checked_add(e)
                .ok_or(KernelError::DegreeCap { cap })?;
        }
        if degree > cap {
            return Err(KernelError::DegreeCap { cap });
        }
        let mut buf = [0u64; MAX_ARITY];
        buf[..exps.len()].copy_from_slice(exps);
        Ok(Monomial {
            exps: buf,
            arity: exps.len() as u8,
        })
    }

    /// The constant monomial 1.
    pub fn one(arity: usize) -> Self {
        assert!(
            (1..=MAX_ARITY).contains(&arity),
            "arity {arity} out of range"
        );
        Monomial {
            exps: [0; MAX_ARITY],
            arity: arity as u8,
        }
    }

    /// `x_var^exp`, zero based.
    pub fn var_pow(arity: usize, var: usize, exp: u64) -> Self {
        let mut m = Self::one(arity);
        assert!(var < arity);
        m.exps[var] = exp;
        m
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps[..self.arity as usize]
    }

    pub fn exp(&self, var: usize) -> u64 {
        self.exps[var]
    }

    pub fn degree(&self) -> u64 {
        self.exps().iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps().iter().all(|&e| e == 0)
    }

    fn check_arity(&self, other: &Self) -> Result<(), KernelError> {
        if self.arity != other.arity {
            Err(KernelError::ArityMismatch(self.arity(), other.arity()))
        } else {
            Ok(())
        }
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.arity, other.arity);
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn try_divides(&self, other: &Self) -> Result<bool, KernelError> {
        self.check_arity(other)?;
        Ok(self.divides(other))
    }

    /// `self / divisor`; fails unless `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Self) -> Result<Self, KernelError> {
        self.check_arity(divisor)?;
        if !divisor.divides(self) {
            return Err(KernelError::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        let mut out = *self;
        for (o, d) in out.exps.iter_mut().zip(divisor.exps.iter()) {
            *o -= d;
        }
        Ok(out)
    }

    /// Quotient for callers that have already checked divisibility.
    pub(crate) fn div_unchecked(&self, divisor: &Self) -> Self {
        debug_assert!(divisor.divides(self));
        let mut out = *self;
        for (o, d) in out.exps.iter_mut().zip(divisor.exps.iter()) {
            *o -= d;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = *self;
        for (o, e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o += e;
        }
        out
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e *= k;
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = *self;
        for (o, e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).max(*e);
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = *self;
        for (o, e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).min(*e);
        }
        out
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The same monomial with one more (zero) variable appended.
    pub fn extend(&self) -> Self {
        assert!(self.arity() < MAX_ARITY);
        let mut out = *self;
        out.arity += 1;
        out
    }

    /// Drop the last variable; it must have exponent zero.
    pub fn truncate(&self) -> Option<Self> {
        let last = self.arity() - 1;
        if last == 0 || self.exps[last] != 0 {
            return None;
        }
        let mut out = *self;
        out.arity -= 1;
        Some(out)
    }
}

pub(crate) fn var_name(var: usize, arity: usize) -> String {
    if arity == 5 && var == 4 {
        "t".to_string()
    } else {
        format!("x{}", var + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(i, self.arity()))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exps().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        Monomial::new(&v).map_err(serde::de::Error::custom)
    }
}

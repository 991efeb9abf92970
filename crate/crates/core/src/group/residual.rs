use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm_group::PermGroup;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Whether `p` divides `n`.
    pub fn divides(self, n: usize) -> bool {
        (n as u64).is_multiple_of(self.0)
    }

    /// Whether `n` is a power of `p` (including `p⁰ = 1`).
    pub fn is_power(self, mut n: usize) -> bool {
        if n == 0 {
            return false;
        }
        while self.divides(n) {
            n /= self.0 as usize;
        }
        n == 1
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: usize) -> Vec<Prime> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(Prime(d as u64));
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(Prime(n as u64));
    }
    out
}

/// `O^p(H)`: the smallest normal subgroup of `H` whose index is a power of
/// `p`, computed as the subgroup generated by the elements of `H` whose order
/// is coprime to `p`.
pub fn p_residual(group: &PermGroup, h: &Subgroup, p: Prime) -> Subgroup {
    let gens = h
        .elements()
        .iter()
        .filter(|&x| !p.divides(group.element_order(x)));
    Subgroup::generated_by(group, gens)
}

/// `H` is `p`-subnormal in `G` iff `H ⊇ O^p(G)`.
///
/// `h` is given as an element set of `group`; it must be a subgroup.
pub fn is_p_subnormal(group: &PermGroup, h: &super::ElementSet, p: Prime) -> Result<bool> {
    let h = Subgroup::from_elements(group, h.clone())?;
    let residual = p_residual(group, &Subgroup::whole(group), p);
    Ok(residual.is_subgroup_of(&h))
}

/// `H = O^p(H)`.
pub fn is_p_perfect(group: &PermGroup, h: &Subgroup, p: Prime) -> bool {
    p_residual(group, h, p) == *h
}

//! Exchange-property checks: polymatroidal and componentwise polymatroidal ideals.
//!
//! [`is_polymatroidal`] and [`is_componentwise_polymatroidal`] are finite decision
//! procedures. [`verify_exchange_condition_bounded`] and [`verify_dual_exchange_bounded`]
//! enumerate every monomial of the ideal up to a degree cap; they are cross-checks, not
//! decision procedures, because the properties quantify over all of `I`.
//!
//! All checks report the first violation in a fixed enumeration order, independent of how
//! many threads run the search.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{EquigeneratedIdeal, MonomialIdeal};
use crate::monomial::{enumerate_up_to, Monomial};

/// A failed exchange: for the pair `(u, v)` and the 0-based variable index `i`, no
/// admissible `j` lands back in the ideal. `degree` is the graded component the failure
/// was found in (for bounded checks, the degree of `v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeWitness {
    pub u: Monomial,
    pub v: Monomial,
    pub i: usize,
    pub degree: u32,
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u = {}, v = {}, i = {}, degree {}",
            self.u,
            self.v,
            self.i + 1,
            self.degree
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExchangeVerdict {
    Holds,
    Violated(ExchangeWitness),
}

impl ExchangeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ExchangeVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&ExchangeWitness> {
        match self {
            ExchangeVerdict::Holds => None,
            ExchangeVerdict::Violated(w) => Some(w),
        }
    }

    fn from_option(w: Option<ExchangeWitness>) -> Self {
        w.map_or(ExchangeVerdict::Holds, ExchangeVerdict::Violated)
    }
}

/// Symmetric exchange on the generators of an equigenerated ideal: for all `u, v` in G(E)
/// and all `i` with `u_i > v_i` there is `j` with `u_j < v_j` and `x_j * u / x_i` in G(E).
pub fn is_polymatroidal(e: &EquigeneratedIdeal) -> ExchangeVerdict {
    let gens = e.gens();
    let lookup: HashSet<&Monomial> = e.as_ideal().gen_set();
    let n = e.nvars();
    for u in gens {
        for v in gens {
            for i in 0..n {
                if u.exponent(i) <= v.exponent(i) {
                    continue;
                }
                let exchanged = (0..n).any(|j| {
                    u.exponent(j) < v.exponent(j)
                        && u.exchange(i, j).is_some_and(|w| lookup.contains(&w))
                });
                if !exchanged {
                    return ExchangeVerdict::Violated(ExchangeWitness {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                        degree: e.degree(),
                    });
                }
            }
        }
    }
    ExchangeVerdict::Holds
}

/// Every graded component `I<j>` is polymatroidal. Only `alpha <= j <= omega` needs
/// checking: above `omega` the component is a power of `m` times `I<omega>`.
pub fn is_componentwise_polymatroidal(ideal: &MonomialIdeal) -> ExchangeVerdict {
    let Ok((alpha, omega)) = ideal.degree_range() else {
        return ExchangeVerdict::Holds;
    };
    for j in alpha..=omega {
        if let ExchangeVerdict::Violated(w) = is_polymatroidal(&ideal.component(j)) {
            return ExchangeVerdict::Violated(w);
        }
    }
    ExchangeVerdict::Holds
}

/// Strong exchange: `x_j * u / x_i` is in G(E) for *every* admissible pair `(i, j)`.
pub fn has_strong_exchange(e: &EquigeneratedIdeal) -> bool {
    let gens = e.gens();
    let lookup = e.as_ideal().gen_set();
    let n = e.nvars();
    gens.iter().all(|u| {
        gens.iter().all(|v| {
            (0..n)
                .filter(|&i| u.exponent(i) > v.exponent(i))
                .all(|i| {
                    (0..n)
                        .filter(|&j| u.exponent(j) < v.exponent(j))
                        .all(|j| u.exchange(i, j).is_some_and(|w| lookup.contains(&w)))
                })
        })
    })
}

/// Checks, for all monomials `u, v` of `I` with `deg u <= deg v <= cap` and `u` not
/// dividing `v`, and every `i` with `v_i > u_i`: some `j` with `v_j < u_j` has
/// `x_j * v / x_i` in `I`.
pub fn verify_exchange_condition_bounded(ideal: &MonomialIdeal, cap: u32) -> Result<ExchangeVerdict> {
    let table = BoundedMembers::new(ideal, cap)?;
    Ok(table.search(|u, v, kv| {
        let n = u.len();
        if u.iter().zip(v).all(|(a, b)| a <= b) {
            return None;
        }
        (0..n).filter(|&i| v[i] > u[i]).find(|&i| {
            !(0..n).any(|j| v[j] < u[j] && table.has(kv - table.weights[i] + table.weights[j]))
        })
    }))
}

/// Dual exchange: for all monomials `u, v` of `I` with `deg u <= deg v <= cap` and every
/// `i` with `v_i < u_i`, some `j` with `v_j > u_j` has `x_i * v / x_j` in `I`.
pub fn verify_dual_exchange_bounded(ideal: &MonomialIdeal, cap: u32) -> Result<ExchangeVerdict> {
    let table = BoundedMembers::new(ideal, cap)?;
    Ok(table.search(|u, v, kv| {
        let n = u.len();
        (0..n).filter(|&i| v[i] < u[i]).find(|&i| {
            !(0..n).any(|j| v[j] > u[j] && table.has(kv + table.weights[i] - table.weights[j]))
        })
    }))
}

/// Every monomial of an ideal up to a degree cap, with O(1) membership by mixed-radix key.
struct BoundedMembers {
    weights: Vec<u64>,
    /// Sorted by degree, then by the crate-wide order.
    members: Vec<(Monomial, u64)>,
    dense: Option<Vec<bool>>,
    sparse: HashSet<u64>,
}

const DENSE_LIMIT: u64 = 1 << 24;

impl BoundedMembers {
    fn new(ideal: &MonomialIdeal, cap: u32) -> Result<Self> {
        let n = ideal.nvars();
        if let Ok((_, omega)) = ideal.degree_range() {
            if cap < omega {
                return Err(Error::CapTooSmall { cap, top: omega });
            }
        }
        let radix = u64::from(cap) + 1;
        let mut weights = Vec::with_capacity(n);
        let mut w = 1u64;
        for _ in 0..n {
            weights.push(w);
            w = w.checked_mul(radix).ok_or_else(|| {
                Error::InvalidArgument(format!("degree cap {cap} too large for {n} variables"))
            })?;
        }
        let members: Vec<(Monomial, u64)> = if ideal.is_zero() {
            Vec::new()
        } else {
            enumerate_up_to(n, cap)
                .into_iter()
                .filter(|a| ideal.contains(a))
                .map(|a| {
                    let key = a
                        .exponents()
                        .iter()
                        .zip(&weights)
                        .map(|(&e, &w)| u64::from(e) * w)
                        .sum();
                    (a, key)
                })
                .collect()
        };
        let (dense, sparse) = if w <= DENSE_LIMIT {
            let mut bits = vec![false; w as usize];
            for (_, k) in &members {
                bits[*k as usize] = true;
            }
            (Some(bits), HashSet::new())
        } else {
            (None, members.iter().map(|(_, k)| *k).collect())
        };
        Ok(BoundedMembers {
            weights,
            members,
            dense,
            sparse,
        })
    }

    fn has(&self, key: u64) -> bool {
        match &self.dense {
            Some(bits) => bits.get(key as usize).copied().unwrap_or(false),
            None => self.sparse.contains(&key),
        }
    }

    /// Runs `violation(u, v, key_v)` over all pairs with `deg u <= deg v`, returning
    /// the first `(u, v, i)` violation in enumeration order.
    fn search<F>(&self, violation: F) -> ExchangeVerdict
    where
        F: Fn(&[u32], &[u32], u64) -> Option<usize> + Sync,
    {
        let found = self.members.par_iter().find_map_first(|(u, _)| {
            let du = u.degree();
            self.members
                .iter()
                .filter(|(v, _)| v.degree() >= du)
                .find_map(|(v, kv)| {
                    violation(u.exponents(), v.exponents(), *kv).map(|i| ExchangeWitness {
                        u: u.clone(),
                        v: v.clone(),
                        i,
                        degree: v.degree(),
                    })
                })
        });
        ExchangeVerdict::from_option(found)
    }
}

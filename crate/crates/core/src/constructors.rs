//! Builders for the standard componentwise polymatroidal families: ideals of Veronese
//! type, principal Borel ideals, layered sums, fat-point intersections and socles.

use crate::error::{Error, Result};
use crate::ideal::{EquigeneratedIdeal, MonomialIdeal};
use crate::monomial::{enumerate_degree, Monomial};
use crate::polymatroid::{is_polymatroidal, ExchangeVerdict};

/// The ideal of Veronese type `I_{a,d}`: all degree-`d` monomials with exponents bounded by `a`.
pub fn veronese_type(bound: &Monomial, d: u32) -> EquigeneratedIdeal {
    let n = bound.nvars();
    let gens: Vec<_> = enumerate_degree(n, d)
        .into_iter()
        .filter(|b| b.divides(bound))
        .collect();
    let ideal = MonomialIdeal::minimalize_unchecked(n, gens);
    EquigeneratedIdeal::new(ideal, d).expect("degree-d generators")
}

/// The Borel order: `v ⪯ u` when, writing both as sorted index lists, each index of `v`
/// is at most the matching index of `u`.
pub fn borel_leq(v: &Monomial, u: &Monomial) -> Result<bool> {
    if v.nvars() != u.nvars() {
        return Err(Error::LengthMismatch {
            left: v.nvars(),
            right: u.nvars(),
        });
    }
    if v.degree() != u.degree() {
        return Err(Error::InvalidArgument(format!(
            "Borel comparison needs equal degrees, got {} and {}",
            v.degree(),
            u.degree()
        )));
    }
    Ok(v.index_multiset()
        .iter()
        .zip(u.index_multiset())
        .all(|(j, i)| *j <= i))
}

/// `B(u)`: every monomial of degree `deg u` that is Borel-below `u`.
pub fn principal_borel(u: &Monomial) -> EquigeneratedIdeal {
    let top = u.index_multiset();
    let gens: Vec<_> = enumerate_degree(u.nvars(), u.degree())
        .into_iter()
        .filter(|v| v.index_multiset().iter().zip(&top).all(|(j, i)| j <= i))
        .collect();
    let ideal = MonomialIdeal::minimalize_unchecked(u.nvars(), gens);
    EquigeneratedIdeal::new(ideal, u.degree()).expect("degree-preserving")
}

/// The unique Borel-maximal generator of `e`, if there is one.
pub fn borel_maximum(e: &EquigeneratedIdeal) -> Option<&Monomial> {
    let gens = e.gens();
    gens.iter()
        .find(|g| gens.iter().all(|h| borel_leq(h, g).unwrap_or(false)))
}

/// Every component `I<j>`, `alpha <= j <= omega`, is a principal Borel ideal `B(u_j)` and
/// consecutive generators satisfy `u_j * x_n ⪯ u_{j+1}`.
pub fn is_componentwise_principal_borel(ideal: &MonomialIdeal) -> bool {
    let Ok((alpha, omega)) = ideal.degree_range() else {
        return true;
    };
    let n = ideal.nvars();
    let mut previous: Option<Monomial> = None;
    for j in alpha..=omega {
        let component = ideal.component(j);
        let Some(top) = borel_maximum(&component).cloned() else {
            return false;
        };
        if principal_borel(&top) != component {
            return false;
        }
        if let Some(prev) = previous {
            if !borel_leq(&prev.times_var(n - 1), &top).unwrap_or(false) {
                return false;
            }
        }
        previous = Some(top);
    }
    true
}

/// `P_A = (x_i : i in A)` for 1-based indices `A`.
pub fn variable_ideal(n: usize, set: &[usize]) -> Result<MonomialIdeal> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("empty variable set".into()));
    }
    let mut gens = Vec::with_capacity(set.len());
    for &index in set {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        gens.push(Monomial::var(n, index - 1));
    }
    MonomialIdeal::minimalize(n, gens)
}

/// Result of [`fat_point_ideal`]: the intersection plus any pairs `(A_i, A_j)` (0-based
/// positions) whose union is not all of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPoints {
    pub ideal: MonomialIdeal,
    pub uncovered_pairs: Vec<(usize, usize)>,
}

/// `P_{A_1}^{k_1} ∩ ... ∩ P_{A_t}^{k_t}`. Pairs violating `A_i ∪ A_j = [n]` are reported
/// rather than rejected: the intersection is still defined, only the polymatroidal
/// guarantee lapses.
pub fn fat_point_ideal(n: usize, sets: &[Vec<usize>], powers: &[u32]) -> Result<FatPoints> {
    if sets.is_empty() || sets.len() != powers.len() {
        return Err(Error::InvalidArgument(format!(
            "need matching nonempty lists of sets and powers, got {} and {}",
            sets.len(),
            powers.len()
        )));
    }
    if powers.contains(&0) {
        return Err(Error::InvalidArgument("powers must be positive".into()));
    }
    let mut ideal: Option<MonomialIdeal> = None;
    for (set, &k) in sets.iter().zip(powers) {
        let p = variable_ideal(n, set)?.power(k);
        ideal = Some(match ideal {
            None => p,
            Some(acc) => acc.intersect(&p),
        });
    }
    let mut uncovered_pairs = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let mut covered = vec![false; n];
            for &i in sets[a].iter().chain(&sets[b]) {
                covered[i - 1] = true;
            }
            if !covered.iter().all(|&c| c) {
                uncovered_pairs.push((a, b));
            }
        }
    }
    Ok(FatPoints {
        ideal: ideal.expect("nonempty"),
        uncovered_pairs,
    })
}

/// `J_1 + ... + J_t` for equigenerated layers of strictly increasing degree. With
/// `validate`, also checks each layer is polymatroidal and `m^(d_{i+1} - d_i) J_i ⊆ J_{i+1}`.
pub fn layered_sum(layers: &[EquigeneratedIdeal], validate: bool) -> Result<MonomialIdeal> {
    let first = layers
        .first()
        .ok_or_else(|| Error::InvalidArgument("no layers".into()))?;
    let n = first.nvars();
    if layers.iter().any(|l| l.nvars() != n) {
        return Err(Error::InvalidArgument("layers live in different rings".into()));
    }
    if layers.windows(2).any(|w| w[0].degree() >= w[1].degree()) {
        return Err(Error::LayerDegreeOrder);
    }
    if validate {
        for (k, layer) in layers.iter().enumerate() {
            if let ExchangeVerdict::Violated(w) = is_polymatroidal(layer) {
                return Err(Error::LayerNotPolymatroidal(k + 1, w));
            }
        }
        for (k, pair) in layers.windows(2).enumerate() {
            let lifted = MonomialIdeal::maximal(n)
                .power(pair[1].degree() - pair[0].degree())
                .product(pair[0].as_ideal());
            if !pair[1].as_ideal().contains_ideal(&lifted) {
                return Err(Error::LayerInclusion {
                    lower: k + 1,
                    upper: k + 2,
                });
            }
        }
    }
    Ok(layers
        .iter()
        .fold(MonomialIdeal::zero(n), |acc, l| acc.sum(l.as_ideal())))
}

/// `soc(E) = (E : m)<d-1>` for `E` generated in degree `d >= 1`.
pub fn socle(e: &EquigeneratedIdeal) -> Result<EquigeneratedIdeal> {
    let d = e.degree();
    if d == 0 {
        return Err(Error::InvalidArgument("socle needs generators of degree >= 1".into()));
    }
    Ok(e.as_ideal().colon_by_maximal().component(d - 1))
}

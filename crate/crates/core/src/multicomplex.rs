//! Simplicial multicomplexes stored by their facets, and componentwise discrete polymatroids.
//!
//! A multicomplex on `[n]` is a finite down-closed subset of `N^n` containing every unit
//! vector. Only the facets (maximal faces) are stored; faces are materialised only inside
//! [`truncation_sum`] and the exchange route of [`is_componentwise_discrete_polymatroid`].

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{EquigeneratedIdeal, MonomialIdeal};
use crate::linear_quotients::{search_lq_order, synthesize_lq_order, SearchOutcome};
use crate::monomial::{enumerate_up_to, Monomial};
use crate::polymatroid::{is_componentwise_polymatroidal, is_polymatroidal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multicomplex {
    n: usize,
    facets: Vec<Monomial>,
}

/// Maximal elements under componentwise `<=`, deduplicated and sorted.
pub fn maximal_elements(mut vectors: Vec<Monomial>) -> Vec<Monomial> {
    vectors.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
    vectors.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for v in vectors {
        if !kept.iter().any(|f| v.divides(f)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

impl Multicomplex {
    /// `<b_1, ..., b_l>`: the smallest multicomplex containing the given vectors.
    pub fn from_facet_candidates<I>(n: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let vectors: Vec<Monomial> = vectors.into_iter().collect();
        if vectors.is_empty() {
            return Err(Error::InvalidArgument("no facets given".into()));
        }
        for v in &vectors {
            if v.nvars() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: v.nvars(),
                });
            }
            if v.is_one() {
                return Err(Error::ZeroFacet);
            }
        }
        let facets = maximal_elements(vectors);
        if let Some(i) = (0..n).find(|&i| facets.iter().all(|f| f.exponent(i) == 0)) {
            return Err(Error::VertexNotCovered(i + 1));
        }
        Ok(Multicomplex { n, facets })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The facets F(M), sorted.
    pub fn facets(&self) -> &[Monomial] {
        &self.facets
    }

    pub fn contains_face(&self, a: &Monomial) -> bool {
        self.facets.iter().any(|f| a.divides(f))
    }

    pub fn stats(&self) -> Stats {
        let alpha = self.facets.iter().map(Monomial::degree).min().unwrap_or(0);
        let omega = self.facets.iter().map(Monomial::degree).max().unwrap_or(0);
        Stats {
            dim: i64::from(omega) - 1,
            alpha,
            omega,
            pure: alpha == omega,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub dim: i64,
    pub alpha: u32,
    pub omega: u32,
    pub pure: bool,
}

/// The multicomplex `M_I` whose facets are the exponent vectors of G(I).
pub fn ideal_to_multicomplex(ideal: &MonomialIdeal) -> Result<Multicomplex> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Multicomplex::from_facet_candidates(ideal.nvars(), ideal.gens().to_vec())
}

/// Like [`ideal_to_multicomplex`], but first drops the variables dividing no generator.
/// Returns the multicomplex on the support together with the kept 0-based variable indices.
pub fn ideal_to_multicomplex_on_support(ideal: &MonomialIdeal) -> Result<(Multicomplex, Vec<usize>)> {
    let support: Vec<usize> = (0..ideal.nvars())
        .filter(|&i| ideal.gens().iter().any(|g| g.exponent(i) > 0))
        .collect();
    let restricted = ideal
        .gens()
        .iter()
        .map(|g| Monomial::new(support.iter().map(|&i| g.exponent(i)).collect()));
    let mc = Multicomplex::from_facet_candidates(support.len(), restricted)?;
    Ok((mc, support))
}

/// The facet ideal `I(M) = (x^a : a in F(M))`.
pub fn facet_ideal(mc: &Multicomplex) -> MonomialIdeal {
    MonomialIdeal::minimalize_unchecked(mc.n, mc.facets.clone())
}

/// Certificate for one position of a shelling: the facets of `<a_1..a_{j-1}> ∩ <a_j>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingStep {
    pub position: usize,
    pub intersection_facets: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingCertificate {
    pub order: Vec<Monomial>,
    pub steps: Vec<ShellingStep>,
    pub first_failure: Option<usize>,
}

impl ShellingCertificate {
    pub fn is_valid(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that each `<a_1, ..., a_{j-1}> ∩ <a_j>` is pure of dimension `|a_j| - 1`, i.e.
/// all maximal pairwise meets `a_i ∧ a_j` have degree `|a_j| - 1`.
pub fn verify_shelling(mc: &Multicomplex, order: &[Monomial]) -> Result<ShellingCertificate> {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != mc.facets {
        return Err(Error::NotAPermutation);
    }
    let mut steps = Vec::new();
    let mut first_failure = None;
    for j in 1..order.len() {
        let target = order[j].degree() - 1;
        let meets = order[..j].iter().map(|a| a.gcd(&order[j])).collect();
        let intersection_facets = maximal_elements(meets);
        let pure = intersection_facets.iter().all(|f| f.degree() == target);
        steps.push(ShellingStep {
            position: j + 1,
            intersection_facets,
        });
        if !pure {
            first_failure = Some(j + 1);
            break;
        }
    }
    Ok(ShellingCertificate {
        order: order.to_vec(),
        steps,
        first_failure,
    })
}

/// The facet order induced by the synthesized linear-quotients order of the facet ideal,
/// checked with [`verify_shelling`]. The certificate records whether it is a shelling; for
/// non-pure inputs it often is not (see [`search_shelling_order`]).
pub fn shelling_order(mc: &Multicomplex) -> Result<ShellingCertificate> {
    let lq = synthesize_lq_order(&facet_ideal(mc), true)?;
    verify_shelling(mc, &lq.order)
}

/// The componentwise maximum `c` of the facets and the ideal generated by `x^(c - a)` for
/// the facets `a`. An order of the facets is a shelling exactly when the complementary
/// order is a linear-quotients order of this ideal: the colon generators
/// `(c - a_i) - (c - a_i) ∧ (c - a_j)` equal `a_j - a_i ∧ a_j`.
pub fn complement_ideal(mc: &Multicomplex) -> (Monomial, MonomialIdeal) {
    let c = mc.facets.iter().fold(Monomial::one(mc.n), |acc, f| acc.lcm(f));
    let gens = mc
        .facets
        .iter()
        .map(|f| c.quotient(f).expect("facet divides the bounding box"))
        .collect();
    (c, MonomialIdeal::minimalize_unchecked(mc.n, gens))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingSearch {
    Found(ShellingCertificate),
    NoneFound,
    BudgetExhausted,
}

/// Searches for a shelling by running the linear-quotients search on [`complement_ideal`].
/// A found order is re-verified with [`verify_shelling`] before it is returned.
pub fn search_shelling_order(mc: &Multicomplex, budget: u64) -> Result<ShellingSearch> {
    let (c, dual) = complement_ideal(mc);
    Ok(match search_lq_order(&dual, budget) {
        SearchOutcome::Found(lq) => {
            let order: Vec<Monomial> = lq
                .order
                .iter()
                .map(|g| c.quotient(g).expect("complement divides the bounding box"))
                .collect();
            ShellingSearch::Found(verify_shelling(mc, &order)?)
        }
        SearchOutcome::NoneFound => ShellingSearch::NoneFound,
        SearchOutcome::BudgetExhausted => ShellingSearch::BudgetExhausted,
    })
}

/// `A + B = {a + b}`.
pub fn minkowski_sum(a: &BTreeSet<Monomial>, b: &BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.mul(y)))
        .collect()
}

/// `[n]^<d> = {a : |a| <= d}`, as the full down-closed set (including 0).
pub fn simplex_multicomplex(n: usize, d: u32) -> BTreeSet<Monomial> {
    enumerate_up_to(n, d).into_iter().collect()
}

/// The union `⋃_{k=alpha}^{j} (P<k> + [n]^<j-k>)`, where `P<k>` is the set of bases of `P`
/// of degree at most `k`, as a set of vectors.
fn truncation_union(mc: &Multicomplex, j: u32) -> BTreeSet<Monomial> {
    let stats = mc.stats();
    let mut union = BTreeSet::new();
    for k in stats.alpha..=j {
        let bases: BTreeSet<Monomial> = mc
            .facets
            .iter()
            .filter(|f| f.degree() <= k)
            .cloned()
            .collect();
        union.extend(minkowski_sum(&bases, &simplex_multicomplex(mc.n, j - k)));
    }
    union
}

/// The truncation sum at level `j`, represented by its maximal elements. Every facet has
/// degree `j`. At low levels the result need not contain every unit vector, so it is
/// built without the vertex-cover check.
pub fn truncation_sum(mc: &Multicomplex, j: u32) -> Result<Multicomplex> {
    let stats = mc.stats();
    if j < stats.alpha || j > stats.omega {
        return Err(Error::DegreeOutOfRange {
            j,
            alpha: stats.alpha,
            omega: stats.omega,
        });
    }
    let facets = maximal_elements(truncation_union(mc, j).into_iter().collect());
    Ok(Multicomplex { n: mc.n, facets })
}

/// The three equivalent characterizations, each computed independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterizationRoutes {
    /// The facet ideal is componentwise polymatroidal.
    pub facet_ideal: bool,
    /// Every truncation sum is a discrete polymatroid.
    pub truncation_sums: bool,
    /// Exchange holds on the union of all truncation sums.
    pub exchange: bool,
}

impl CharacterizationRoutes {
    pub fn agree(&self) -> bool {
        self.facet_ideal == self.truncation_sums && self.truncation_sums == self.exchange
    }
}

pub fn is_componentwise_discrete_polymatroid(mc: &Multicomplex) -> CharacterizationRoutes {
    CharacterizationRoutes {
        facet_ideal: is_componentwise_polymatroidal(&facet_ideal(mc)).holds(),
        truncation_sums: truncation_sums_are_polymatroids(mc),
        exchange: exchange_on_union(mc),
    }
}

fn truncation_sums_are_polymatroids(mc: &Multicomplex) -> bool {
    let stats = mc.stats();
    (stats.alpha..=stats.omega).into_par_iter().all(|j| {
        let t = truncation_sum(mc, j).expect("j in range");
        let e = EquigeneratedIdeal::new(facet_ideal(&t), j).expect("pure of degree j");
        is_polymatroidal(&e).holds()
    })
}

/// For all `a, b` in the union with `alpha <= |a| <= |b|` and `a ≰ b`, and all `i` with
/// `b[i] > a[i]`, some `j` with `b[j] < a[j]` has `b - e_i + e_j` in the union.
fn exchange_on_union(mc: &Multicomplex) -> bool {
    let stats = mc.stats();
    let mut union: BTreeSet<Monomial> = BTreeSet::new();
    for l in stats.alpha..=stats.omega {
        union.extend(truncation_union(mc, l));
    }
    let members: Vec<&Monomial> = union.iter().filter(|a| a.degree() >= stats.alpha).collect();
    let lookup: HashSet<&Monomial> = union.iter().collect();
    let n = mc.n;
    members.par_iter().all(|a| {
        members
            .iter()
            .filter(|b| b.degree() >= a.degree() && !a.divides(b))
            .all(|b| {
                (0..n).filter(|&i| b.exponent(i) > a.exponent(i)).all(|i| {
                    (0..n).any(|j| {
                        b.exponent(j) < a.exponent(j)
                            && b.exchange(i, j).is_some_and(|c| lookup.contains(&c))
                    })
                })
            })
    })
}

//! Linear-quotients orders: verification with certificates, synthesis for componentwise
//! polymatroidal ideals, and an exhaustive backtracking search used as an independent oracle.
//!
//! An order `u_1, ..., u_m` of G(I) has linear quotients when every colon
//! `(u_1, ..., u_{l-1}) : u_l` is generated by variables.
//!
//! Synthesis follows the inductive splitting argument: strip the common factor, pick the
//! smallest variable `x_v` dividing a generator of least degree, split
//! `I = x_v * I_1 + I_2` by divisibility by `x_v`, order both parts recursively and
//! concatenate the `x_v * I_1` block before the `I_2` block. Every colon in the second
//! block contains `x_v`, because `I_2 ⊆ I_1`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::polymatroid::{is_componentwise_polymatroidal, ExchangeVerdict};

/// Default node budget for [`search_lq_order`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Generator count above which the two halves of the synthesis recursion run in parallel.
const PARALLEL_SPLIT: usize = 64;

/// The colon `(u_1, ..., u_{l-1}) : u_l` at 1-based `position = l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonStep {
    pub position: usize,
    pub colon_generators: Vec<Monomial>,
}

impl ColonStep {
    pub fn is_linear(&self) -> bool {
        self.colon_generators.iter().all(|g| g.degree() == 1)
    }
}

/// An ordering of G(I) together with its verified colon certificate.
///
/// The certificate runs from position 2 up to the last position checked: the end of the
/// order when valid, otherwise the first failing position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrder {
    pub ideal: MonomialIdeal,
    pub order: Vec<Monomial>,
    pub certificate: Vec<ColonStep>,
    pub first_failure: Option<usize>,
}

impl GeneratorOrder {
    pub fn is_valid(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The minimal generators of `(prefix) : u`.
pub fn prefix_colon(prefix: &[Monomial], u: &Monomial) -> Vec<Monomial> {
    let quotients = prefix
        .iter()
        .map(|p| p.quotient(&p.gcd(u)).expect("gcd divides"))
        .collect();
    MonomialIdeal::minimalize_unchecked(u.nvars(), quotients)
        .gens()
        .to_vec()
}

fn is_permutation_of(order: &[Monomial], ideal: &MonomialIdeal) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort();
    sorted == ideal.gens()
}

/// Checks `order` position by position, stopping at the first non-linear colon.
pub fn verify_linear_quotients(ideal: &MonomialIdeal, order: &[Monomial]) -> Result<GeneratorOrder> {
    if !is_permutation_of(order, ideal) {
        return Err(Error::NotAPermutation);
    }
    let mut certificate = Vec::new();
    let mut first_failure = None;
    for l in 1..order.len() {
        let step = ColonStep {
            position: l + 1,
            colon_generators: prefix_colon(&order[..l], &order[l]),
        };
        let linear = step.is_linear();
        certificate.push(step);
        if !linear {
            first_failure = Some(l + 1);
            break;
        }
    }
    Ok(GeneratorOrder {
        ideal: ideal.clone(),
        order: order.to_vec(),
        certificate,
        first_failure,
    })
}

/// `I = x_v * I_1 + I_2`: `I_1` collects the generators divisible by `x_v` (0-based `v`),
/// divided once by `x_v`; `I_2` the rest.
pub fn split(ideal: &MonomialIdeal, v: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let (divisible, rest) = split_gens(ideal.gens(), v);
    if divisible.is_empty() {
        return Err(Error::VariableDividesNothing(v + 1));
    }
    let n = ideal.nvars();
    Ok((
        MonomialIdeal::minimalize_unchecked(n, divisible),
        MonomialIdeal::minimalize_unchecked(n, rest),
    ))
}

fn split_gens(gens: &[Monomial], v: usize) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut divisible = Vec::new();
    let mut rest = Vec::new();
    for g in gens {
        match g.without_var(v) {
            Some(q) => divisible.push(q),
            None => rest.push(g.clone()),
        }
    }
    (divisible, rest)
}

/// The splitting variable: smallest index dividing some generator of least degree.
pub fn splitting_variable(gens: &[Monomial]) -> Option<usize> {
    let alpha = gens.iter().map(Monomial::degree).min()?;
    gens.iter()
        .filter(|g| g.degree() == alpha)
        .filter_map(|g| g.support().next())
        .min()
}

/// Builds a linear-quotients order by the splitting recursion. With `checked`, first
/// confirms the ideal is componentwise polymatroidal and fails with the exchange witness
/// otherwise. The returned order is always re-verified; in unchecked mode on an
/// unsuitable ideal it may come back invalid.
pub fn synthesize_lq_order(ideal: &MonomialIdeal, checked: bool) -> Result<GeneratorOrder> {
    if checked {
        if let ExchangeVerdict::Violated(w) = is_componentwise_polymatroidal(ideal) {
            return Err(Error::NotComponentwisePolymatroidal(w));
        }
    }
    let order = recursive_order(ideal.gens().to_vec());
    verify_linear_quotients(ideal, &order)
}

fn recursive_order(gens: Vec<Monomial>) -> Vec<Monomial> {
    if gens.len() <= 1 {
        return gens;
    }
    let common = gens
        .iter()
        .cloned()
        .reduce(|a, b| a.gcd(&b))
        .expect("nonempty");
    let stripped: Vec<Monomial> = gens
        .iter()
        .map(|g| g.quotient(&common).expect("gcd divides"))
        .collect();
    let v = splitting_variable(&stripped).expect("no common factor, more than one generator");
    let (first, second) = split_gens(&stripped, v);
    debug_assert!(!first.is_empty() && !second.is_empty());

    let (first, second) = if stripped.len() > PARALLEL_SPLIT {
        rayon::join(|| recursive_order(first), || recursive_order(second))
    } else {
        (recursive_order(first), recursive_order(second))
    };
    first
        .into_iter()
        .map(|g| g.times_var(v))
        .chain(second)
        .map(|g| g.mul(&common))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(GeneratorOrder),
    /// The search space was exhausted: no linear-quotients order exists.
    NoneFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn status(&self) -> SearchStatus {
        match self {
            SearchOutcome::Found(_) => SearchStatus::Found,
            SearchOutcome::NoneFound => SearchStatus::NoneFound,
            SearchOutcome::BudgetExhausted => SearchStatus::BudgetExhausted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Found,
    NoneFound,
    BudgetExhausted,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "found",
            SearchStatus::NoneFound => "none found",
            SearchStatus::BudgetExhausted => "budget exhausted",
        }
    }
}

/// Depth-first search for a linear-quotients order. Children are tried by increasing degree,
/// then in the crate-wide monomial order. Feasibility of a prefix depends only on its set of
/// generators, so dead sets are memoized; the search is complete unless `budget` prefix
/// extensions run out.
pub fn search_lq_order(ideal: &MonomialIdeal, budget: u64) -> SearchOutcome {
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    let mut search = Search {
        gens: &gens,
        budget,
        nodes: 0,
        dead: HashSet::new(),
    };
    let mut used = vec![0u64; gens.len().div_ceil(64)];
    let mut prefix = Vec::with_capacity(gens.len());
    match search.extend(&mut prefix, &mut used) {
        Err(Exhausted) => SearchOutcome::BudgetExhausted,
        Ok(false) => SearchOutcome::NoneFound,
        Ok(true) => {
            let order: Vec<Monomial> = prefix.iter().map(|&k| gens[k].clone()).collect();
            let verified = verify_linear_quotients(ideal, &order).expect("permutation");
            debug_assert!(verified.is_valid());
            SearchOutcome::Found(verified)
        }
    }
}

struct Exhausted;

struct Search<'a> {
    gens: &'a [Monomial],
    budget: u64,
    nodes: u64,
    dead: HashSet<Vec<u64>>,
}

impl Search<'_> {
    fn extend(&mut self, prefix: &mut Vec<usize>, used: &mut [u64]) -> std::result::Result<bool, Exhausted> {
        if prefix.len() == self.gens.len() {
            return Ok(true);
        }
        if self.dead.contains(used) {
            return Ok(false);
        }
        for c in 0..self.gens.len() {
            if used[c / 64] & (1 << (c % 64)) != 0 {
                continue;
            }
            if !colon_is_linear(prefix.iter().map(|&k| &self.gens[k]), &self.gens[c]) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Exhausted);
            }
            prefix.push(c);
            used[c / 64] |= 1 << (c % 64);
            if self.extend(prefix, used)? {
                return Ok(true);
            }
            used[c / 64] &= !(1 << (c % 64));
            prefix.pop();
        }
        self.dead.insert(used.to_vec());
        Ok(false)
    }
}

/// Whether `(prefix) : u` is generated by variables, without building the colon ideal:
/// every quotient `p / gcd(p, u)` must be divisible by some quotient of degree one.
fn colon_is_linear<'a, I>(prefix: I, u: &Monomial) -> bool
where
    I: Iterator<Item = &'a Monomial> + Clone,
{
    let n = u.nvars();
    let mut linear_vars = vec![false; n];
    for p in prefix.clone() {
        let mut degree = 0;
        let mut last = 0;
        for i in 0..n {
            let e = p.exponent(i).saturating_sub(u.exponent(i));
            if e > 0 {
                degree += e;
                last = i;
            }
        }
        if degree == 1 {
            linear_vars[last] = true;
        }
    }
    prefix.into_iter().all(|p| {
        (0..n).any(|i| linear_vars[i] && p.exponent(i) > u.exponent(i))
    })
}

/// Linear-quotients status of each graded component `I<j>` for `alpha <= j <= omega`,
/// plus a spot check at `omega + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentwiseReport {
    pub per_degree: Vec<(u32, SearchStatus)>,
    pub spot_check: Option<(u32, SearchStatus)>,
}

impl ComponentwiseReport {
    pub fn holds(&self) -> bool {
        self.per_degree
            .iter()
            .chain(&self.spot_check)
            .all(|(_, s)| *s == SearchStatus::Found)
    }

    pub fn first_failure(&self) -> Option<(u32, SearchStatus)> {
        self.per_degree
            .iter()
            .chain(&self.spot_check)
            .find(|(_, s)| *s != SearchStatus::Found)
            .copied()
    }
}

pub fn has_componentwise_linear_quotients(ideal: &MonomialIdeal, budget: u64) -> ComponentwiseReport {
    let Ok((alpha, omega)) = ideal.degree_range() else {
        return ComponentwiseReport {
            per_degree: Vec::new(),
            spot_check: None,
        };
    };
    let status = |j: u32| search_lq_order(ideal.component(j).as_ideal(), budget).status();
    ComponentwiseReport {
        per_degree: (alpha..=omega).map(|j| (j, status(j))).collect(),
        spot_check: Some((omega + 1, status(omega + 1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_cwp, random_ideal, trial_rng, SizeParams};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use crate::constructors::principal_borel;
    use crate::monomial::enumerate_up_to;

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| m(g))).unwrap()
    }

    fn example_ideal() -> MonomialIdeal {
        ideal(
            4,
            &[
                &[2, 0, 0, 0],
                &[1, 0, 1, 0],
                &[0, 0, 2, 0],
                &[1, 1, 0, 1],
                &[0, 1, 1, 1],
                &[0, 2, 0, 2],
            ],
        )
    }

    fn example_order() -> Vec<Monomial> {
        vec![
            m(&[2, 0, 0, 0]),
            m(&[1, 0, 1, 0]),
            m(&[1, 1, 0, 1]),
            m(&[0, 0, 2, 0]),
            m(&[0, 1, 1, 1]),
            m(&[0, 2, 0, 2]),
        ]
    }

    #[test]
    fn verify_examples() {
        let cert = verify_linear_quotients(&example_ideal(), &example_order()).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.certificate.len(), 5);
        assert!(cert.certificate.iter().all(ColonStep::is_linear));

        let single = ideal(3, &[&[1, 2, 0]]);
        let cert = verify_linear_quotients(&single, single.gens()).unwrap();
        assert!(cert.is_valid() && cert.certificate.is_empty());

        let mut bad = example_order();
        bad.swap(0, 3);
        bad.swap(1, 2);
        // x3^2, x1*x2*x4, ...: (x3^2) : x1*x2*x4 = (x3^2)
        assert_eq!(bad[..2], [m(&[0, 0, 2, 0]), m(&[1, 1, 0, 1])]);
        let cert = verify_linear_quotients(&example_ideal(), &bad).unwrap();
        assert_eq!(cert.first_failure, Some(2));
        assert_eq!(cert.certificate[0].colon_generators, vec![m(&[0, 0, 2, 0])]);

        assert_eq!(
            verify_linear_quotients(&example_ideal(), &example_order()[..5]),
            Err(Error::NotAPermutation)
        );
    }

    #[test]
    fn split_examples() {
        let (i1, i2) = split(&example_ideal(), 0).unwrap();
        assert_eq!(i1, ideal(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]]));
        assert_eq!(i2, ideal(4, &[&[0, 0, 2, 0], &[0, 1, 1, 1], &[0, 2, 0, 2]]));
        assert!(i1.contains_ideal(&i2));

        let (i1, i2) = split(&MonomialIdeal::maximal(2), 0).unwrap();
        assert!(i1.is_unit());
        assert_eq!(i2, ideal(2, &[&[0, 1]]));

        assert_eq!(
            split(&ideal(2, &[&[0, 1]]), 0),
            Err(Error::VariableDividesNothing(1))
        );
    }

    #[test]
    fn synthesize_reproduces_worked_example() {
        let order = synthesize_lq_order(&example_ideal(), true).unwrap();
        assert_eq!(order.order, example_order());
        assert!(order.is_valid());
    }

    #[test]
    fn synthesize_examples() {
        let principal = ideal(3, &[&[2, 1, 0]]);
        assert_eq!(synthesize_lq_order(&principal, true).unwrap().order, principal.gens());

        let borel = principal_borel(&m(&[0, 1, 1]));
        let order = synthesize_lq_order(borel.as_ideal(), true).unwrap();
        assert!(order.is_valid());
        assert!(matches!(
            search_lq_order(borel.as_ideal(), DEFAULT_SEARCH_BUDGET),
            SearchOutcome::Found(_)
        ));

        let two_squares = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(matches!(
            synthesize_lq_order(&two_squares, true),
            Err(Error::NotComponentwisePolymatroidal(_))
        ));
        let unchecked = synthesize_lq_order(&two_squares, false).unwrap();
        assert!(!unchecked.is_valid());

        let empty = synthesize_lq_order(&MonomialIdeal::zero(2), true).unwrap();
        assert!(empty.order.is_empty() && empty.is_valid());
    }

    #[test]
    fn synthesized_blocks_follow_the_split() {
        let i = example_ideal();
        let order = synthesize_lq_order(&i, true).unwrap();
        let r = i.gens().iter().filter(|g| g.exponent(0) > 0).count();
        assert!(order.order[..r].iter().all(|g| g.exponent(0) > 0));
        assert!(order.order[r..].iter().all(|g| g.exponent(0) == 0));
        // every colon in the second block contains x1
        for step in &order.certificate {
            if step.position > r {
                assert!(step.colon_generators.contains(&Monomial::var(4, 0)));
            }
        }
    }

    #[test]
    fn search_examples() {
        match search_lq_order(&example_ideal(), DEFAULT_SEARCH_BUDGET) {
            SearchOutcome::Found(order) => assert!(order.is_valid()),
            other => panic!("{other:?}"),
        }
        let two_squares = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            search_lq_order(&two_squares, DEFAULT_SEARCH_BUDGET),
            SearchOutcome::NoneFound
        );
        assert_eq!(
            search_lq_order(&MonomialIdeal::maximal(4).power(3), 3),
            SearchOutcome::BudgetExhausted
        );
    }

    #[test]
    fn fast_colon_test_agrees_with_colon_ideal() {
        let gens: Vec<_> = enumerate_up_to(3, 3).into_iter().skip(1).collect();
        for u in &gens {
            for w in gens.windows(3) {
                let prefix: Vec<_> = w.iter().filter(|p| !p.divides(u)).cloned().collect();
                let slow = prefix_colon(&prefix, u).iter().all(|g| g.degree() == 1);
                assert_eq!(colon_is_linear(prefix.iter(), u), slow, "{prefix:?} : {u}");
            }
        }
    }

    #[test]
    fn componentwise_linear_quotients_examples() {
        let report = has_componentwise_linear_quotients(&example_ideal(), DEFAULT_SEARCH_BUDGET);
        assert_eq!(
            report.per_degree.iter().map(|(j, _)| *j).collect::<Vec<_>>(),
            vec![2, 3, 4]
        );
        assert!(report.holds());

        let two_squares = ideal(2, &[&[2, 0], &[0, 2]]);
        let report = has_componentwise_linear_quotients(&two_squares, DEFAULT_SEARCH_BUDGET);
        assert_eq!(report.first_failure(), Some((2, SearchStatus::NoneFound)));

        assert!(has_componentwise_linear_quotients(&ideal(3, &[&[1, 1, 2]]), 1000).holds());
    }


    const SMALL: SizeParams = SizeParams {
        max_vars: 4,
        max_degree: 4,
    };

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn synthesized_orders_verify(seed in any::<u64>()) {
            let i = random_cwp(&mut trial_rng(seed, 0), SMALL).ideal;
            let order = synthesize_lq_order(&i, true).unwrap();
            prop_assert!(verify_linear_quotients(&i, &order.order).unwrap().is_valid());

            let v = splitting_variable(i.gens()).unwrap();
            let r = i.gens().iter().filter(|g| g.exponent(v) > 0).count();
            prop_assert!(order.order[..r].iter().all(|g| g.exponent(v) > 0));
            prop_assert!(order.order[r..].iter().all(|g| g.exponent(v) == 0));
            let xv = Monomial::var(i.nvars(), v);
            for step in order.certificate.iter().filter(|s| s.position > r) {
                prop_assert!(step.colon_generators.contains(&xv));
            }
        }

        #[test]
        fn validity_ignores_common_factors(seed in any::<u64>(), w in proptest::collection::vec(0u32..3, 4)) {
            let mut rng = trial_rng(seed, 1);
            let i = random_ideal(&mut rng, SizeParams { max_vars: 4, max_degree: 3 }, 5);
            let w = Monomial::new(w[..i.nvars()].to_vec());
            let mut order = i.gens().to_vec();
            order.shuffle(&mut rng);
            let scaled: Vec<_> = order.iter().map(|g| g.mul(&w)).collect();
            prop_assert_eq!(
                verify_linear_quotients(&i, &order).unwrap().is_valid(),
                verify_linear_quotients(&i.scale(&w), &scaled).unwrap().is_valid()
            );
        }

        #[test]
        fn search_agrees_with_synthesis(seed in any::<u64>()) {
            let i = random_cwp(&mut trial_rng(seed, 2), SMALL).ideal;
            prop_assume!(i.num_gens() <= 8);
            prop_assert!(matches!(search_lq_order(&i, DEFAULT_SEARCH_BUDGET), SearchOutcome::Found(_)));
        }

        #[test]
        fn linear_quotients_imply_componentwise(seed in any::<u64>()) {
            let i = random_ideal(&mut trial_rng(seed, 3), SizeParams { max_vars: 3, max_degree: 3 }, 4);
            if let SearchOutcome::Found(_) = search_lq_order(&i, DEFAULT_SEARCH_BUDGET) {
                prop_assert!(has_componentwise_linear_quotients(&i, DEFAULT_SEARCH_BUDGET).holds());
            }
        }
    }
}

//! Seeded random instances. The cwp families are componentwise polymatroidal by
//! construction: Veronese type, principal Borel, fat points over covering set systems, and
//! layered sums whose layers satisfy the inclusion condition.
//!
//! Every generator draws only from the `Rng` it is handed, so a fixed seed and stream
//! reproduce the same instance.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructors::{fat_point_ideal, layered_sum, principal_borel, variable_ideal, veronese_type};
use crate::ideal::{EquigeneratedIdeal, MonomialIdeal};
use crate::monomial::Monomial;
use crate::polymatroid::is_componentwise_polymatroidal;

/// Size bounds for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeParams {
    pub max_vars: usize,
    pub max_degree: u32,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            max_vars: 4,
            max_degree: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Veronese,
    PrincipalBorel,
    FatPoints,
    Layered,
    Transversal,
    Unstructured,
}

impl Family {
    pub const CWP: [Family; 4] = [
        Family::Veronese,
        Family::PrincipalBorel,
        Family::FatPoints,
        Family::Layered,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Veronese => "veronese",
            Family::PrincipalBorel => "principal-borel",
            Family::FatPoints => "fat-points",
            Family::Layered => "layered",
            Family::Transversal => "transversal",
            Family::Unstructured => "unstructured",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: Family,
    pub ideal: MonomialIdeal,
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn nvars<R: Rng>(rng: &mut R, p: SizeParams) -> usize {
    rng.gen_range(2..=p.max_vars.max(2))
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, d: u32) -> Monomial {
    let mut exps = vec![0u32; n];
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(exps)
}

pub fn random_veronese<R: Rng>(rng: &mut R, p: SizeParams) -> EquigeneratedIdeal {
    let n = nvars(rng, p);
    veronese_in(rng, n, p.max_degree)
}

fn veronese_in<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> EquigeneratedIdeal {
    let mut bound: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_degree)).collect();
    if bound.iter().all(|&a| a == 0) {
        bound[rng.gen_range(0..n)] = 1;
    }
    let total: u32 = bound.iter().sum();
    let d = rng.gen_range(1..=total.min(max_degree).max(1));
    veronese_type(&Monomial::new(bound), d)
}

pub fn random_principal_borel<R: Rng>(rng: &mut R, p: SizeParams) -> EquigeneratedIdeal {
    let n = nvars(rng, p);
    borel_in(rng, n, p.max_degree)
}

fn borel_in<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> EquigeneratedIdeal {
    let d = rng.gen_range(1..=max_degree.max(1));
    principal_borel(&random_monomial(rng, n, d))
}

/// `P_{A_1}^{k_1} ∩ ... ∩ P_{A_t}^{k_t}` with `A_i = [n] \ C_i` for pairwise disjoint `C_i`,
/// so that `A_i ∪ A_j = [n]` for all `i != j`. The powers sum to at most `max_degree`.
pub fn random_fat_points<R: Rng>(rng: &mut R, p: SizeParams) -> MonomialIdeal {
    let n = nvars(rng, p);
    let t = rng.gen_range(1..=3u32.min(p.max_degree.max(1))) as usize;
    let mut owner: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=t)).collect();
    for c in 1..=t {
        if owner.iter().all(|&o| o == c) {
            owner[0] = 0;
        }
    }
    let sets: Vec<Vec<usize>> = (1..=t)
        .map(|c| (0..n).filter(|&i| owner[i] != c).map(|i| i + 1).collect())
        .collect();
    let mut powers = vec![1u32; t];
    let mut spare = p.max_degree.max(1).saturating_sub(t as u32);
    for k in powers.iter_mut() {
        let extra = rng.gen_range(0..=spare);
        *k += extra;
        spare -= extra;
    }
    fat_point_ideal(n, &sets, &powers)
        .expect("covering set system is valid")
        .ideal
}

/// Two or three layers, either Veronese type with bounds growing by at least the degree
/// gap in every entry, or principal Borel with `u_i * x_n^(d_{i+1} - d_i) ⪯ u_{i+1}`.
pub fn random_layered<R: Rng>(rng: &mut R, p: SizeParams) -> MonomialIdeal {
    let n = nvars(rng, p);
    if p.max_degree < 2 {
        return random_veronese(rng, p).into_ideal();
    }
    let layers = rng.gen_range(2..=3u32.min(p.max_degree)) as usize;
    let mut degrees: Vec<u32> = (1..=p.max_degree).collect();
    degrees.shuffle(rng);
    degrees.truncate(layers);
    degrees.sort_unstable();

    let js: Vec<EquigeneratedIdeal> = if rng.gen_bool(0.5) {
        let d0 = degrees[0];
        let slack = rng.gen_range(0..=n as u32);
        let mut bound = random_monomial(rng, n, d0 + slack).into_exponents();
        let mut out = vec![veronese_type(&Monomial::new(bound.clone()), d0)];
        for w in degrees.windows(2) {
            let gap = w[1] - w[0];
            for a in bound.iter_mut() {
                *a += gap + rng.gen_range(0..=1);
            }
            out.push(veronese_type(&Monomial::new(bound.clone()), w[1]));
        }
        out
    } else {
        let mut u = random_monomial(rng, n, degrees[0]);
        let mut out = vec![principal_borel(&u)];
        for w in degrees.windows(2) {
            // raise a few positions of the index multiset, then pad with x_n
            let mut idx = u.index_multiset();
            for _ in 0..rng.gen_range(0..=idx.len()) {
                let k = rng.gen_range(0..idx.len());
                idx[k] = rng.gen_range(idx[k]..n);
            }
            idx.sort_unstable();
            idx.extend(std::iter::repeat_n(n - 1, (w[1] - w[0]) as usize));
            let mut exps = vec![0u32; n];
            for i in idx {
                exps[i] += 1;
            }
            u = Monomial::new(exps);
            out.push(principal_borel(&u));
        }
        out
    };
    layered_sum(&js, true).expect("layers satisfy the inclusion condition")
}

/// Products `P_{A_1} ... P_{A_k}` of variable ideals.
pub fn random_transversal<R: Rng>(rng: &mut R, p: SizeParams) -> EquigeneratedIdeal {
    let n = nvars(rng, p);
    transversal_in(rng, n, p.max_degree)
}

fn transversal_in<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> EquigeneratedIdeal {
    let k = rng.gen_range(1..=max_degree.max(1));
    let mut product = MonomialIdeal::unit(n);
    for _ in 0..k {
        let mut set: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if set.is_empty() {
            set.push(rng.gen_range(1..=n));
        }
        product = product.product(&variable_ideal(n, &set).expect("indices in range"));
    }
    EquigeneratedIdeal::new(product, k).expect("product of linear ideals")
}

/// A componentwise polymatroidal ideal from a uniformly chosen cwp family.
pub fn random_cwp<R: Rng>(rng: &mut R, p: SizeParams) -> Instance {
    let family = *Family::CWP.choose(rng).expect("nonempty");
    random_from_family(rng, family, p)
}

pub fn random_from_family<R: Rng>(rng: &mut R, family: Family, p: SizeParams) -> Instance {
    let ideal = match family {
        Family::Veronese => random_veronese(rng, p).into_ideal(),
        Family::PrincipalBorel => random_principal_borel(rng, p).into_ideal(),
        Family::FatPoints => random_fat_points(rng, p),
        Family::Layered => random_layered(rng, p),
        Family::Transversal => random_transversal(rng, p).into_ideal(),
        Family::Unstructured => random_ideal(rng, p, 4),
    };
    Instance { family, ideal }
}

/// A polymatroidal ideal: Veronese type, principal Borel or transversal.
pub fn random_polymatroidal<R: Rng>(rng: &mut R, p: SizeParams) -> (Family, EquigeneratedIdeal) {
    let n = nvars(rng, p);
    random_polymatroidal_in(rng, n, p.max_degree)
}

/// [`random_polymatroidal`] in a fixed number of variables.
pub fn random_polymatroidal_in<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> (Family, EquigeneratedIdeal) {
    match rng.gen_range(0..3) {
        0 => (Family::Veronese, veronese_in(rng, n, max_degree)),
        1 => (Family::PrincipalBorel, borel_in(rng, n, max_degree)),
        _ => (Family::Transversal, transversal_in(rng, n, max_degree)),
    }
}

/// Up to `max_gens` random generators of degree `1..=max_degree`, minimalized.
pub fn random_ideal<R: Rng>(rng: &mut R, p: SizeParams, max_gens: usize) -> MonomialIdeal {
    let n = nvars(rng, p);
    let count = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..count).map(|_| {
        let d = rng.gen_range(1..=p.max_degree.max(1));
        random_monomial(rng, n, d)
    });
    MonomialIdeal::minimalize(n, gens).expect("lengths agree")
}

/// Rejection-samples [`random_ideal`] until the result is not componentwise polymatroidal.
/// Gives up after `attempts` draws.
pub fn random_non_cwp<R: Rng>(rng: &mut R, p: SizeParams, max_gens: usize, attempts: usize) -> Option<MonomialIdeal> {
    (0..attempts)
        .map(|_| random_ideal(rng, p, max_gens))
        .find(|i| !is_componentwise_polymatroidal(i).holds())
}

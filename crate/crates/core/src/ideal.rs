//! Monomial ideals, represented by their minimal generating set G(I).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{enumerate_degree, Monomial};

/// A monomial ideal of `K[x1..xn]`, stored as its minimal generators in the crate-wide
/// monomial order. The zero ideal has no generators; the unit ideal has the single
/// generator `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The maximal ideal `m = (x1, ..., xn)`.
    pub fn maximal(n: usize) -> Self {
        let mut gens: Vec<_> = (0..n).map(|i| Monomial::var(n, i)).collect();
        gens.sort();
        MonomialIdeal { n, gens }
    }

    pub fn principal(generator: Monomial) -> Self {
        MonomialIdeal {
            n: generator.nvars(),
            gens: vec![generator],
        }
    }

    /// Builds the ideal generated by `vectors`, keeping only the divisibility-minimal ones.
    pub fn minimalize<I>(n: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let vectors: Vec<Monomial> = vectors.into_iter().collect();
        if let Some(bad) = vectors.iter().find(|v| v.nvars() != n) {
            return Err(Error::LengthMismatch {
                left: n,
                right: bad.nvars(),
            });
        }
        Ok(Self::minimalize_unchecked(n, vectors))
    }

    pub(crate) fn minimalize_unchecked(n: usize, mut vectors: Vec<Monomial>) -> Self {
        vectors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        vectors.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for v in vectors {
            if !kept.iter().any(|g| g.divides(&v)) {
                kept.push(v);
            }
        }
        kept.sort();
        MonomialIdeal { n, gens: kept }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The minimal generators G(I), sorted.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Monomial membership: some generator divides `a`.
    pub fn contains(&self, a: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(a))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `(alpha, omega)`: the least and greatest degree of a minimal generator.
    pub fn degree_range(&self) -> Result<(u32, u32)> {
        let mut degrees = self.gens.iter().map(Monomial::degree);
        let first = degrees.next().ok_or(Error::ZeroIdeal)?;
        Ok(degrees.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// The graded component `I<j>`: the ideal generated by the degree-`j` monomials of `I`.
    pub fn component(&self, j: u32) -> EquigeneratedIdeal {
        let mut padded = Vec::new();
        for g in self.gens.iter().filter(|g| g.degree() <= j) {
            for m in enumerate_degree(self.n, j - g.degree()) {
                padded.push(g.mul(&m));
            }
        }
        EquigeneratedIdeal {
            ideal: Self::minimalize_unchecked(self.n, padded),
            degree: j,
        }
    }

    /// The colon ideal `(I : x^v)`.
    pub fn colon(&self, v: &Monomial) -> MonomialIdeal {
        assert_eq!(v.nvars(), self.n, "length mismatch");
        let quotients = self
            .gens
            .iter()
            .map(|g| g.quotient(&g.gcd(v)).expect("gcd divides"))
            .collect();
        Self::minimalize_unchecked(self.n, quotients)
    }

    /// `(I : m)`, the intersection of the colons by every variable.
    pub fn colon_by_maximal(&self) -> MonomialIdeal {
        (0..self.n)
            .map(|i| self.colon(&Monomial::var(self.n, i)))
            .reduce(|acc, c| acc.intersect(&c))
            .unwrap_or_else(|| self.clone())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient rings differ");
        Self::minimalize_unchecked(
            self.n,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        )
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient rings differ");
        let mut sums = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                sums.push(g.mul(h));
            }
        }
        Self::minimalize_unchecked(self.n, sums)
    }

    /// `I^k`; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.n);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.n, other.n, "ambient rings differ");
        let mut joins = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                joins.push(g.lcm(h));
            }
        }
        Self::minimalize_unchecked(self.n, joins)
    }

    /// `x^w * I`.
    pub fn scale(&self, w: &Monomial) -> MonomialIdeal {
        let mut gens: Vec<_> = self.gens.iter().map(|g| g.mul(w)).collect();
        gens.sort();
        MonomialIdeal { n: self.n, gens }
    }

    /// Splits off the gcd `w` of all generators: returns `(w, I')` with `I = x^w * I'`.
    pub fn divide_out_common_factor(&self) -> Result<(Monomial, MonomialIdeal)> {
        let w = self
            .gens
            .iter()
            .cloned()
            .reduce(|acc, g| acc.gcd(&g))
            .ok_or(Error::ZeroIdeal)?;
        let mut gens: Vec<_> = self
            .gens
            .iter()
            .map(|g| g.quotient(&w).expect("gcd divides"))
            .collect();
        gens.sort();
        Ok((w, MonomialIdeal { n: self.n, gens }))
    }

    pub(crate) fn gen_set(&self) -> HashSet<&Monomial> {
        self.gens.iter().collect()
    }
}

/// A monomial ideal all of whose minimal generators have the same degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquigeneratedIdeal {
    ideal: MonomialIdeal,
    degree: u32,
}

impl EquigeneratedIdeal {
    /// Wraps `ideal`, checking every generator has degree `degree`. The zero ideal is
    /// accepted for any degree.
    pub fn new(ideal: MonomialIdeal, degree: u32) -> Result<Self> {
        if let Some(g) = ideal.gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::NotEquigenerated {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(EquigeneratedIdeal { ideal, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn as_ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn into_ideal(self) -> MonomialIdeal {
        self.ideal
    }

    pub fn gens(&self) -> &[Monomial] {
        self.ideal.gens()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn num_gens(&self) -> usize {
        self.ideal.num_gens()
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_zero()
    }

    /// The product of two equigenerated ideals, generated in the sum of their degrees.
    pub fn product(&self, other: &EquigeneratedIdeal) -> EquigeneratedIdeal {
        EquigeneratedIdeal {
            ideal: self.ideal.product(&other.ideal),
            degree: self.degree + other.degree,
        }
    }
}

impl TryFrom<MonomialIdeal> for EquigeneratedIdeal {
    type Error = Error;

    /// Infers the degree from the first generator; the zero ideal has none to infer.
    fn try_from(ideal: MonomialIdeal) -> Result<Self> {
        let degree = ideal.gens.first().ok_or(Error::ZeroIdeal)?.degree();
        EquigeneratedIdeal::new(ideal, degree)
    }
}

impl AsRef<MonomialIdeal> for EquigeneratedIdeal {
    fn as_ref(&self) -> &MonomialIdeal {
        &self.ideal
    }
}

//! Monomials x^a of the polynomial ring in `n` variables, stored as exponent vectors.
//!
//! Variables are 0-based internally and 1-based (`x1 .. xn`) in every text format.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An exponent vector `a`, read as the monomial `x^a = x1^a[0] * ... * xn^a[n-1]`.
///
/// The total order puts lexicographically larger vectors first (x1 > x2 > ... > xn), so a
/// sorted list of monomials starts with the highest powers of x1. Every sorted output and
/// every tie-break in the crate uses this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_{i+1}`, i.e. the unit vector `e_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Number of variables of the ambient ring.
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the variables dividing this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() == other.exps.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                left: self.exps.len(),
                right: other.exps.len(),
            })
        }
    }

    /// `self` divides `other`, i.e. `self <= other` componentwise.
    ///
    /// Panics if the lengths differ; see [`Monomial::try_divides`].
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.exps.len(), other.exps.len(), "length mismatch");
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_divides(&self, other: &Monomial) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.divides(other))
    }

    /// Componentwise minimum (greatest common divisor).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "length mismatch");
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn try_gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        Ok(self.gcd(other))
    }

    /// Componentwise maximum (least common multiple).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "length mismatch");
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn try_lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        Ok(self.lcm(other))
    }

    /// Product `x^a * x^b`, i.e. the vector sum, with overflow checking.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial::new)
    }

    /// Product of two monomials. Panics on length mismatch or exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial product")
    }

    /// Quotient `x^a / x^b`; fails with [`Error::NotDivisible`] unless `b <= a`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        self.check_len(divisor)?;
        self.exps
            .iter()
            .zip(&divisor.exps)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::NotDivisible))
            .collect::<Result<Vec<_>>>()
            .map(Monomial::new)
    }

    /// `x_{i+1} * self`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_add(1).expect("exponent overflow");
        Monomial::new(exps)
    }

    /// `self / x_{i+1}`, if divisible.
    pub fn without_var(&self, i: usize) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_sub(1)?;
        Some(Monomial::new(exps))
    }

    /// The exchange `x_{j+1} * (self / x_{i+1})`, if `x_{i+1}` divides `self`.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        exps[i] = exps[i].checked_sub(1)?;
        exps[j] += 1;
        Some(Monomial::new(exps))
    }

    /// The sorted multiset of 0-based variable indices, `x_{i1} ... x_{id}` with `i1 <= ... <= id`.
    pub fn index_multiset(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Parses the grammar `mono := "1" | factor ("*" factor)*`, `factor := "x" INT ("^" INT)?`.
    /// Whitespace is ignored and repeated variables multiply.
    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let mut exps = vec![0u32; n];
        for (index, power) in parse_factors(text)? {
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            exps[index - 1] = exps[index - 1].checked_add(power).ok_or(Error::Overflow)?;
        }
        Ok(Monomial::new(exps))
    }
}

/// Splits monomial text into `(1-based index, exponent)` factors without knowing `n`.
pub fn parse_factors(text: &str) -> Result<Vec<(usize, u32)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    if compact == "1" {
        return Ok(Vec::new());
    }
    let mut factors = Vec::new();
    for factor in compact.split('*') {
        let body = factor
            .strip_prefix('x')
            .ok_or_else(|| err("factor must start with 'x'"))?;
        let (index, power) = match body.split_once('^') {
            Some((i, p)) => (i, Some(p)),
            None => (body, None),
        };
        let index: usize = parse_uint(index).ok_or_else(|| err("bad variable index"))?;
        let power: u32 = match power {
            Some(p) => parse_uint(p).ok_or_else(|| err("bad exponent"))?,
            None => 1,
        };
        factors.push((index, power));
    }
    Ok(factors)
}

fn parse_uint<T: std::str::FromStr>(s: &str) -> Option<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exps.cmp(&self.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All monomials of degree exactly `d` in `n` variables, largest first.
pub fn enumerate_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut buf = vec![0u32; n];
    fill(&mut buf, 0, d, &mut out);
    out
}

fn fill(buf: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(Monomial::new(buf.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        buf[pos] = e;
        fill(buf, pos + 1, remaining - e, out);
    }
    buf[pos] = 0;
}

/// All monomials of degree at most `d`, grouped by increasing degree.
pub fn enumerate_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| enumerate_degree(n, k)).collect()
}

/// `C(n + d - 1, d)`, the number of monomials of degree `d` in `n` variables.
pub fn count_degree(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    let (top, k) = ((n as u64) + u64::from(d) - 1, u64::from(d));
    let k = k.min(top - k);
    (0..k).fold(1u64, |acc, i| acc * (top - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    #[test]
    fn degree_examples() {
        assert_eq!(m(&[2, 0, 0, 0]).degree(), 2);
        assert_eq!(m(&[0, 0, 0, 0]).degree(), 0);
        assert_eq!(m(&[1, 2, 3]).degree(), 6);
    }

    #[test]
    fn divides_examples() {
        assert!(m(&[1, 0, 1, 0]).divides(&m(&[1, 1, 1, 1])));
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])));
        assert!(Monomial::one(3).divides(&m(&[0, 4, 1])));
        assert_eq!(
            m(&[1, 0]).try_divides(&m(&[1, 0, 0])),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
    }

    /// Common divisors of `a` and `b` by brute force over the box below `a`.
    fn common_divisors(a: &Monomial, b: &Monomial) -> Vec<Monomial> {
        let d = a.degree();
        enumerate_up_to(a.nvars(), d)
            .into_iter()
            .filter(|c| c.divides(a) && c.divides(b))
            .collect()
    }

    #[test]
    fn gcd_and_lcm_against_enumeration() {
        let (a, b) = (m(&[1, 0, 1, 0]), m(&[1, 1, 0, 1]));
        let gcd = a.gcd(&b);
        assert_eq!(gcd, m(&[1, 0, 0, 0]));
        let divisors = common_divisors(&a, &b);
        assert!(divisors.iter().all(|c| c.divides(&gcd)));
        assert!(divisors.contains(&gcd));

        let (a, b) = (m(&[2, 0]), m(&[0, 2]));
        let lcm = a.lcm(&b);
        assert_eq!(lcm, m(&[2, 2]));
        // smallest common multiple among all monomials up to degree 4
        let multiples: Vec<_> = enumerate_up_to(2, 4)
            .into_iter()
            .filter(|c| a.divides(c) && b.divides(c))
            .collect();
        assert!(multiples.iter().all(|c| lcm.divides(c)));
        assert!(multiples.contains(&lcm));

        assert_eq!(a.gcd(&a), a);
        assert!(a.try_gcd(&m(&[1])).is_err());
        assert!(a.try_lcm(&m(&[1])).is_err());
    }

    #[test]
    fn product_and_quotient() {
        assert_eq!(m(&[1, 0]).mul(&m(&[0, 1])), m(&[1, 1]));
        assert_eq!(m(&[2, 1]).quotient(&m(&[1, 0])), Ok(m(&[1, 1])));
        assert_eq!(m(&[1, 0]).quotient(&m(&[0, 1])), Err(Error::NotDivisible));
        assert_eq!(m(&[u32::MAX]).checked_mul(&m(&[1])), Err(Error::Overflow));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_degree(2, 2), vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(enumerate_degree(3, 0), vec![m(&[0, 0, 0])]);
        assert_eq!(
            enumerate_degree(3, 1),
            vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]
        );
    }

    #[test]
    fn enumeration_is_sorted_in_repo_order() {
        let all = enumerate_degree(4, 3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Monomial::parse("x1^2", 4), Ok(m(&[2, 0, 0, 0])));
        assert_eq!(Monomial::parse("x2*x3*x4", 4), Ok(m(&[0, 1, 1, 1])));
        assert_eq!(Monomial::parse("1", 3), Ok(m(&[0, 0, 0])));
        assert_eq!(Monomial::parse(" x2 ^ 3 * x1 ", 2), Ok(m(&[1, 3])));
        assert_eq!(
            Monomial::parse("x5", 4),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        );
        assert!(matches!(Monomial::parse("x0", 4), Err(Error::IndexOutOfRange { .. })));
        for bad in ["", "y1", "x", "x1^", "x1**x2", "x1^-1", "2"] {
            assert!(matches!(Monomial::parse(bad, 4), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn format_examples() {
        assert_eq!(m(&[2, 0, 0, 0]).to_string(), "x1^2");
        assert_eq!(m(&[0, 1, 1, 1]).to_string(), "x2*x3*x4");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }

    fn vec_strategy() -> impl Strategy<Value = (Monomial, Monomial)> {
        (1usize..6).prop_flat_map(|n| {
            (
                proptest::collection::vec(0u32..6, n),
                proptest::collection::vec(0u32..6, n),
            )
                .prop_map(|(a, b)| (Monomial::new(a), Monomial::new(b)))
        })
    }

    proptest! {
        #[test]
        fn gcd_times_lcm_is_product((a, b) in vec_strategy()) {
            prop_assert_eq!(a.gcd(&b).mul(&a.lcm(&b)), a.mul(&b));
        }

        #[test]
        fn divides_iff_quotient_defined((a, b) in vec_strategy()) {
            prop_assert_eq!(a.divides(&b), b.quotient(&a).is_ok());
        }

        #[test]
        fn format_parse_round_trip((a, _b) in vec_strategy()) {
            let text = a.to_string();
            prop_assert_eq!(Monomial::parse(&text, a.nvars()).unwrap(), a.clone());
            prop_assert_eq!(Monomial::parse(&text, a.nvars()).unwrap().to_string(), text);
        }

        #[test]
        fn enumeration_count(n in 1usize..6, d in 0u32..7) {
            let all = enumerate_degree(n, d);
            prop_assert_eq!(all.len() as u64, count_degree(n, d));
            prop_assert!(all.iter().all(|a| a.degree() == d));
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            prop_assert_eq!(distinct.len(), all.len());
        }
    }
}

//! Text and JSON formats. Exponent rows are plain integer arrays; variable indices in
//! monomial text and in witnesses are 1-based.
//!
//! Ideal readers minimalize on load; writers emit the sorted minimal generators.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linear_quotients::GeneratorOrder;
use crate::monomial::{parse_factors, Monomial};
use crate::multicomplex::{Multicomplex, ShellingCertificate};
use crate::polymatroid::ExchangeWitness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            n: ideal.nvars(),
            generators: rows(ideal.gens()),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(json: IdealJson) -> Result<Self> {
        MonomialIdeal::minimalize(json.n, json.generators.into_iter().map(Monomial::new))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticomplexJson {
    pub n: usize,
    pub facets: Vec<Vec<u32>>,
}

impl From<&Multicomplex> for MulticomplexJson {
    fn from(mc: &Multicomplex) -> Self {
        MulticomplexJson {
            n: mc.nvars(),
            facets: rows(mc.facets()),
        }
    }
}

impl TryFrom<MulticomplexJson> for Multicomplex {
    type Error = Error;

    fn try_from(json: MulticomplexJson) -> Result<Self> {
        Multicomplex::from_facet_candidates(json.n, json.facets.into_iter().map(Monomial::new))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    /// 1-based.
    pub i: usize,
    pub degree: u32,
}

impl From<&ExchangeWitness> for WitnessJson {
    fn from(w: &ExchangeWitness) -> Self {
        WitnessJson {
            u: w.u.exponents().to_vec(),
            v: w.v.exponents().to_vec(),
            i: w.i + 1,
            degree: w.degree,
        }
    }
}

impl TryFrom<WitnessJson> for ExchangeWitness {
    type Error = Error;

    fn try_from(json: WitnessJson) -> Result<Self> {
        if json.u.len() != json.v.len() {
            return Err(Error::LengthMismatch {
                left: json.u.len(),
                right: json.v.len(),
            });
        }
        if json.i == 0 || json.i > json.u.len() {
            return Err(Error::IndexOutOfRange {
                index: json.i,
                n: json.u.len(),
            });
        }
        Ok(ExchangeWitness {
            u: Monomial::new(json.u),
            v: Monomial::new(json.v),
            i: json.i - 1,
            degree: json.degree,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonStepJson {
    pub position: usize,
    pub colon_generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub order: Vec<Vec<u32>>,
    pub valid: bool,
    pub certificate: Vec<ColonStepJson>,
}

impl From<&GeneratorOrder> for OrderJson {
    fn from(o: &GeneratorOrder) -> Self {
        OrderJson {
            order: rows(&o.order),
            valid: o.is_valid(),
            certificate: o
                .certificate
                .iter()
                .map(|s| ColonStepJson {
                    position: s.position,
                    colon_generators: rows(&s.colon_generators),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingStepJson {
    pub position: usize,
    pub intersection_facets: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingJson {
    pub order: Vec<Vec<u32>>,
    pub valid: bool,
    pub certificate: Vec<ShellingStepJson>,
}

impl From<&ShellingCertificate> for ShellingJson {
    fn from(c: &ShellingCertificate) -> Self {
        ShellingJson {
            order: rows(&c.order),
            valid: c.is_valid(),
            certificate: c
                .steps
                .iter()
                .map(|s| ShellingStepJson {
                    position: s.position,
                    intersection_facets: rows(&s.intersection_facets),
                })
                .collect(),
        }
    }
}

pub fn rows(monomials: &[Monomial]) -> Vec<Vec<u32>> {
    monomials.iter().map(|m| m.exponents().to_vec()).collect()
}

/// Reads exponent rows of length `n` back into monomials.
pub fn monomials_from_rows(n: usize, rows: Vec<Vec<u32>>) -> Result<Vec<Monomial>> {
    rows.into_iter()
        .map(|r| {
            if r.len() == n {
                Ok(Monomial::new(r))
            } else {
                Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                })
            }
        })
        .collect()
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// One monomial per line; blank lines and lines starting with `#` are skipped.
/// Without `n`, the number of variables is the largest index that occurs.
pub fn parse_ideal_text(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = match n {
        Some(n) => n,
        None => {
            let mut top = 0;
            for line in &lines {
                for (index, _) in parse_factors(line)? {
                    top = top.max(index);
                }
            }
            top
        }
    };
    let monomials = lines
        .iter()
        .map(|l| Monomial::parse(l, n))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::minimalize(n, monomials)
}

pub fn ideal_to_text(ideal: &MonomialIdeal) -> String {
    ideal.gens().iter().map(|g| format!("{g}\n")).collect()
}

/// Ideal JSON when the input starts with `{`, the text format otherwise. `n` overrides
/// the inferred variable count for text and must agree with the JSON `n`.
pub fn parse_ideal(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::EmptyInput);
    }
    if trimmed.starts_with('{') {
        let json: IdealJson = from_json_str(trimmed)?;
        if let Some(n) = n {
            if n != json.n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: json.n,
                });
            }
        }
        MonomialIdeal::try_from(json)
    } else {
        parse_ideal_text(text, n)
    }
}

pub fn parse_multicomplex(text: &str) -> Result<Multicomplex> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    Multicomplex::try_from(from_json_str::<MulticomplexJson>(text)?)
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

pub fn read_ideal(path: &Path, n: Option<usize>) -> Result<MonomialIdeal> {
    parse_ideal(&read_to_string(path)?, n)
}

pub fn read_multicomplex(path: &Path) -> Result<Multicomplex> {
    parse_multicomplex(&read_to_string(path)?)
}

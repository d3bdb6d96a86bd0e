use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DeformParams, Generator, PbwMonomial};
use crate::error::{Error, Result};
use crate::series::{
    format_linear_combination, power_token, Rational, Series, SeriesTermJson, Zeroed,
};

/// A finite combination of PBW monomials with series coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<PbwMonomial, Series>,
    params: Arc<DeformParams>,
}

impl AlgebraElement {
    pub fn zero(params: Arc<DeformParams>) -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
            params,
        }
    }

    pub fn from_terms<I>(params: Arc<DeformParams>, terms: I) -> Self
    where
        I: IntoIterator<Item = (PbwMonomial, Series)>,
    {
        let mut out = Self::zero(params);
        for (m, s) in terms {
            out.add_term(m, &s);
        }
        out
    }

    pub(crate) fn from_map(
        params: Arc<DeformParams>,
        mut terms: BTreeMap<PbwMonomial, Series>,
    ) -> Self {
        terms.retain(|_, s| !s.is_zero());
        AlgebraElement { terms, params }
    }

    pub(crate) fn add_term(&mut self, m: PbwMonomial, s: &Series) {
        if s.is_zero() {
            return;
        }
        let trunc = self.params.truncation;
        let slot = self.terms.entry(m).or_insert_with(|| Series::zero(trunc));
        slot.add_assign_ref(s);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn truncation(&self) -> u32 {
        self.params.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Series)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Series {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.truncation()))
    }

    /// True when only `Θ, Φ, Ψ` occur.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(|m| m.0[3..].iter().all(|&e| e == 0))
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(*m, s);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Series) -> AlgebraElement {
        AlgebraElement::from_map(
            self.params.clone(),
            self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> AlgebraElement {
        AlgebraElement::from_map(
            self.params.clone(),
            self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect(),
        )
    }

    pub fn limit(&self, zeroed: Zeroed) -> AlgebraElement {
        AlgebraElement::from_map(
            self.params.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (*m, c.limit(zeroed)))
                .collect(),
        )
    }

    /// All of `ℏ₁, ℏ₂, ℏ₃` sent to zero.
    pub fn classical_limit(&self) -> AlgebraElement {
        self.limit(Zeroed::ALL)
    }

    /// Coefficient of one `ℏ`-monomial across all PBW terms, as an element
    /// with rational coefficients.
    pub fn hbar_coefficient(&self, h: &crate::series::HMonomial) -> AlgebraElement {
        let trunc = self.truncation();
        AlgebraElement::from_map(
            self.params.clone(),
            self.terms
                .iter()
                .map(|(m, c)| {
                    (
                        *m,
                        Series::constant(c.coeff_at(h).unwrap_or_default(), trunc),
                    )
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            terms: self
                .terms
                .iter()
                .map(|(m, s)| TermJson {
                    exp: *m,
                    coeff: s.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson, params: Arc<DeformParams>) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(params);
        let trunc = out.truncation();
        for t in &json.terms {
            out.add_term(t.exp, &Series::from_json(&t.coeff, trunc)?);
        }
        Ok(out)
    }
}

pub(crate) fn monomial_factors(m: &PbwMonomial) -> Vec<String> {
    Generator::ALL
        .iter()
        .filter(|g| m.0[g.index()] > 0)
        .map(|g| power_token(g.token(), m.0[g.index()]))
        .collect()
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear_combination(
            self.terms.iter().map(|(m, s)| (s, monomial_factors(m))),
        ))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]({})", self.params, self)
    }
}

/// `{"terms":[{"exp":[e1..e7],"coeff":<series JSON>}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: PbwMonomial,
    pub coeff: Vec<SeriesTermJson>,
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    /// Panics if the parameter sets differ; see [`AlgebraElement::try_add`].
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("algebra parameter mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("algebra parameter mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, s)| (*m, -s)).collect(),
            params: self.params.clone(),
        }
    }
}

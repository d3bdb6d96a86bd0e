use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{
    format_linear_combination, HMonomial, Rational, Series, SeriesTermJson, Zeroed,
};
use crate::uea::{AlgebraElement, DeformParams, PbwMonomial};

fn monomial_text(m: &PbwMonomial) -> String {
    let f = crate::uea::monomial_factors(m);
    if f.is_empty() {
        "1".to_string()
    } else {
        f.join("*")
    }
}

/// Finite sum of `x ⊗ y` over pairs of PBW monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(PbwMonomial, PbwMonomial), Series>,
    params: Arc<DeformParams>,
}

impl TensorElement {
    pub fn zero(params: Arc<DeformParams>) -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            params,
        }
    }

    pub fn from_terms<I>(params: Arc<DeformParams>, terms: I) -> Self
    where
        I: IntoIterator<Item = ((PbwMonomial, PbwMonomial), Series)>,
    {
        let mut out = Self::zero(params);
        for (k, s) in terms {
            out.add_term(k, &s);
        }
        out
    }

    pub(crate) fn from_map(
        params: Arc<DeformParams>,
        mut terms: BTreeMap<(PbwMonomial, PbwMonomial), Series>,
    ) -> Self {
        terms.retain(|_, s| !s.is_zero());
        TensorElement { terms, params }
    }

    /// `x ⊗ y`
    pub fn tensor(x: &AlgebraElement, y: &AlgebraElement) -> Result<Self> {
        if x.params() != y.params() {
            return Err(Error::ParamsMismatch);
        }
        let mut out = Self::zero(Arc::new(x.params().clone()));
        for (a, sa) in x.terms() {
            for (b, sb) in y.terms() {
                out.add_term((*a, *b), &(sa * sb));
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, k: (PbwMonomial, PbwMonomial), s: &Series) {
        if s.is_zero() {
            return;
        }
        let trunc = self.params.truncation;
        let slot = self.terms.entry(k).or_insert_with(|| Series::zero(trunc));
        slot.add_assign_ref(s);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub fn truncation(&self) -> u32 {
        self.params.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial), &Series)> {
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

    pub fn coefficient(&self, left: &PbwMonomial, right: &PbwMonomial) -> Series {
        self.terms
            .get(&(*left, *right))
            .cloned()
            .unwrap_or_else(|| Series::zero(self.truncation()))
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.add_term(*k, s);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Series) -> TensorElement {
        TensorElement::from_map(
            self.params.clone(),
            self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> TensorElement {
        TensorElement::from_map(
            self.params.clone(),
            self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect(),
        )
    }

    pub fn limit(&self, zeroed: Zeroed) -> TensorElement {
        TensorElement::from_map(
            self.params.clone(),
            self.terms
                .iter()
                .map(|(k, c)| (*k, c.limit(zeroed)))
                .collect(),
        )
    }

    pub fn classical_limit(&self) -> TensorElement {
        self.limit(Zeroed::ALL)
    }

    /// `x ⊗ y ↦ y ⊗ x`
    pub fn flip(&self) -> TensorElement {
        TensorElement::from_map(
            self.params.clone(),
            self.terms
                .iter()
                .map(|((a, b), c)| ((*b, *a), c.clone()))
                .collect(),
        )
    }

    /// Coefficient of one `ℏ`-monomial in every term, as constant series.
    pub fn hbar_coefficient(&self, h: &HMonomial) -> TensorElement {
        let trunc = self.truncation();
        TensorElement::from_map(
            self.params.clone(),
            self.terms
                .iter()
                .map(|(k, c)| {
                    (
                        *k,
                        Series::constant(c.coeff_at(h).unwrap_or_default(), trunc),
                    )
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            terms: self
                .terms
                .iter()
                .map(|((a, b), s)| TensorTermJson {
                    left: *a,
                    right: *b,
                    coeff: s.to_json(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear_combination(self.terms.iter().map(
            |((a, b), s)| {
                (
                    s,
                    vec![format!("({} ⊗ {})", monomial_text(a), monomial_text(b))],
                )
            },
        )))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement[{}]({})", self.params, self)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;

    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("algebra parameter mismatch")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;

    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_sub(rhs).expect("algebra parameter mismatch")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;

    fn neg(self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().map(|(k, s)| (*k, -s)).collect(),
            params: self.params.clone(),
        }
    }
}

/// `{"terms":[{"left":[..],"right":[..],"coeff":<series>}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub terms: Vec<TensorTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub left: PbwMonomial,
    pub right: PbwMonomial,
    pub coeff: Vec<SeriesTermJson>,
}

pub type Triple = (PbwMonomial, PbwMonomial, PbwMonomial);

/// Finite sum of `x ⊗ y ⊗ z`.
#[derive(Clone, PartialEq, Eq)]
pub struct TripleTensorElement {
    terms: BTreeMap<Triple, Series>,
    trunc: u32,
}

impl TripleTensorElement {
    pub fn zero(trunc: u32) -> Self {
        TripleTensorElement {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub(crate) fn from_map(mut terms: BTreeMap<Triple, Series>, trunc: u32) -> Self {
        terms.retain(|_, s| !s.is_zero());
        TripleTensorElement { terms, trunc }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Triple, &Series)> {
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

    pub fn truncation(&self) -> u32 {
        self.trunc
    }
}

impl fmt::Display for TripleTensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear_combination(self.terms.iter().map(
            |((a, b, c), s)| {
                (
                    s,
                    vec![format!(
                        "({} ⊗ {} ⊗ {})",
                        monomial_text(a),
                        monomial_text(b),
                        monomial_text(c)
                    )],
                )
            },
        )))
    }
}

impl fmt::Debug for TripleTensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleTensorElement({self})")
    }
}

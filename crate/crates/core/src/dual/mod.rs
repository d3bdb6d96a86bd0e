//! The dual side: functionals `W^K Y^L` dual to `Z^I X^J`, the closed
//! star-product, an exact oracle for it built from the coproduct, and the
//! first-order Poisson brackets.
//!
//! ```text
//! W^I Y^J * W^K Y^L = Σ_{M≤I, N≤K} H^{M+N} W^{I+K−M−N} Y^{J+L}
//!                     · C(I,M) C(K,N) (−2|K−N|−|L|)^{|M|} (2|I−M|+|J|)^{|N|}
//! ```

mod oracle;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bialgebra::LieData;
use crate::error::{Error, Result};
use crate::multiindex::{Index3, Index4, Index7, MultiIndex};
use crate::series::{
    format_linear_combination, HMonomial, Rational, Series, SeriesTermJson, Zeroed,
};
use crate::uea::ZMonomial;

pub use oracle::{default_cap, delta_on_zbasis, pairing, pairing_tensor, StarOracle, ZTensor};
pub use verify::{star_diagnostics, verify_star};

/// `W^w Y^y`
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct DualMonomial {
    pub w: Index3,
    pub y: Index4,
}

impl DualMonomial {
    pub fn new(w: Index3, y: Index4) -> Self {
        DualMonomial { w, y }
    }

    pub fn one() -> Self {
        Self::default()
    }

    /// `χ₁..χ₇`: `W` units for `k ≤ 3`, `Y` units for `k ≥ 4`.
    pub fn chi(k: usize) -> Result<Self> {
        match k {
            1..=3 => Ok(Self::new(Index3::unit(k - 1), Index4::zero())),
            4..=7 => Ok(Self::new(Index3::zero(), Index4::unit(k - 4))),
            _ => Err(Error::OutOfRange),
        }
    }

    /// Seven-component exponent `(w, y)`.
    pub fn index7(&self) -> Index7 {
        crate::uea::join(&self.w, &self.y)
    }

    pub fn from_index7(m: &Index7) -> Self {
        let (w, y) = crate::uea::split(m);
        Self::new(w, y)
    }

    pub fn norm(&self) -> u32 {
        self.w.norm() + self.y.norm()
    }

    /// The basis element of `U` this functional is dual to.
    pub fn dual_to(&self) -> ZMonomial {
        ZMonomial::new(self.w, self.y)
    }

    /// All monomials with `|w|+|y| ≤ max`.
    pub fn all_up_to(max: u32) -> Vec<Self> {
        Index7::all_up_to(max)
            .iter()
            .map(Self::from_index7)
            .collect()
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.w.is_zero() {
            out.push(format!("W[{},{},{}]", self.w[0], self.w[1], self.w[2]));
        }
        if !self.y.is_zero() {
            out.push(format!(
                "Y[{},{},{},{}]",
                self.y[0], self.y[1], self.y[2], self.y[3]
            ));
        }
        out
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// Finite sum of dual monomials with series coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct DualElement {
    terms: BTreeMap<DualMonomial, Series>,
    trunc: u32,
}

impl DualElement {
    pub fn zero(trunc: u32) -> Self {
        DualElement {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn monomial(m: DualMonomial, trunc: u32) -> Self {
        let mut out = Self::zero(trunc);
        out.add_term(m, &Series::one(trunc));
        out
    }

    pub fn one(trunc: u32) -> Self {
        Self::monomial(DualMonomial::one(), trunc)
    }

    pub fn chi(k: usize, trunc: u32) -> Result<Self> {
        Ok(Self::monomial(DualMonomial::chi(k)?, trunc))
    }

    pub fn from_terms<I>(terms: I, trunc: u32) -> Self
    where
        I: IntoIterator<Item = (DualMonomial, Series)>,
    {
        let mut out = Self::zero(trunc);
        for (m, s) in terms {
            out.add_term(m, &s);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: DualMonomial, s: &Series) {
        if s.is_zero() {
            return;
        }
        let trunc = self.trunc;
        let slot = self.terms.entry(m).or_insert_with(|| Series::zero(trunc));
        slot.add_assign_ref(s);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DualMonomial, &Series)> {
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

    pub fn coefficient(&self, m: &DualMonomial) -> Series {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.trunc))
    }

    pub fn try_add(&self, other: &DualElement) -> Result<DualElement> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(*m, s);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DualElement) -> Result<DualElement> {
        self.try_add(&-other)
    }

    pub fn scale(&self, s: &Series) -> DualElement {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(*m, &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> DualElement {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.scale(r));
        }
        out
    }

    pub fn limit(&self, zeroed: Zeroed) -> DualElement {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.limit(zeroed));
        }
        out
    }

    /// All `ℏ`-terms of total degree `> d` dropped (truncation lowered to `d`).
    pub fn truncate_to(&self, d: u32) -> DualElement {
        let mut out = Self::zero(d.min(self.trunc));
        for (m, c) in &self.terms {
            out.add_term(*m, &c.truncate_to(d));
        }
        out
    }

    /// Same coefficients, viewed at a larger truncation order.
    pub fn lift(&self, d: u32) -> DualElement {
        let d = d.max(self.trunc);
        DualElement::from_terms(
            self.terms.iter().map(|(m, s)| {
                (
                    *m,
                    Series::from_terms(s.terms().map(|(h, c)| (*h, c.clone())), d),
                )
            }),
            d,
        )
    }

    /// Coefficient of `H^h` in every term, as constant series.
    pub fn hbar_coefficient(&self, h: &HMonomial) -> DualElement {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            if let Ok(r) = c.coeff_at(h) {
                out.add_term(*m, &Series::constant(r, self.trunc));
            }
        }
        out
    }

    pub fn constant_term(&self) -> DualElement {
        self.hbar_coefficient(&HMonomial::zero())
    }

    pub fn to_json(&self) -> DualJson {
        DualJson {
            terms: self
                .terms
                .iter()
                .map(|(m, s)| DualTermJson {
                    w: m.w,
                    y: m.y,
                    coeff: s.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &DualJson, trunc: u32) -> Result<DualElement> {
        let mut out = Self::zero(trunc);
        for t in &json.terms {
            out.add_term(
                DualMonomial::new(t.w, t.y),
                &Series::from_json(&t.coeff, trunc)?,
            );
        }
        Ok(out)
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear_combination(
            self.terms.iter().map(|(m, s)| (s, m.factors())),
        ))
    }
}

impl fmt::Debug for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualElement[D={}]({})", self.trunc, self)
    }
}

impl Add for &DualElement {
    type Output = DualElement;

    fn add(self, rhs: &DualElement) -> DualElement {
        self.try_add(rhs).expect("truncation mismatch")
    }
}

impl Sub for &DualElement {
    type Output = DualElement;

    fn sub(self, rhs: &DualElement) -> DualElement {
        self.try_sub(rhs).expect("truncation mismatch")
    }
}

impl Neg for &DualElement {
    type Output = DualElement;

    fn neg(self) -> DualElement {
        DualElement {
            terms: self.terms.iter().map(|(m, s)| (*m, -s)).collect(),
            trunc: self.trunc,
        }
    }
}

/// `{"terms":[{"w":[..],"y":[..],"coeff":<series>}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualJson {
    pub terms: Vec<DualTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTermJson {
    pub w: Index3,
    pub y: Index4,
    pub coeff: Vec<SeriesTermJson>,
}

/// `bᵉ` with `0⁰ = 1`.
fn int_pow(base: i64, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

/// Closed formula on two monomials, terms of `ℏ`-degree above `trunc` dropped.
pub fn star_monomials(a: &DualMonomial, b: &DualMonomial, trunc: u32) -> DualElement {
    let (i, j, k, l) = (a.w, a.y, b.w, b.y);
    let mut out: BTreeMap<DualMonomial, Series> = BTreeMap::new();
    for m in i.box_below() {
        if m.norm() > trunc {
            continue;
        }
        let i_m = i.checked_sub(&m).expect("M ≤ I");
        let base_n = 2 * i64::from(i_m.norm()) + i64::from(j.norm());
        for n in k.box_below() {
            if m.norm() + n.norm() > trunc {
                continue;
            }
            let k_n = k.checked_sub(&n).expect("N ≤ K");
            let base_m = -2 * i64::from(k_n.norm()) - i64::from(l.norm());
            let c =
                i.binom(&m) * k.binom(&n) * int_pow(base_m, m.norm()) * int_pow(base_n, n.norm());
            if c.is_zero() {
                continue;
            }
            let target = DualMonomial::new(i_m + k_n, j + l);
            out.entry(target)
                .or_insert_with(|| Series::zero(trunc))
                .add_term(m + n, Rational::from_integer(c));
        }
    }
    DualElement::from_terms(out, trunc)
}

/// Bilinear extension of the closed formula.
pub fn star_closed(u: &DualElement, v: &DualElement) -> Result<DualElement> {
    if u.trunc != v.trunc {
        return Err(Error::TruncationMismatch(u.trunc, v.trunc));
    }
    let trunc = u.trunc;
    let mut out = DualElement::zero(trunc);
    for (a, sa) in &u.terms {
        for (b, sb) in &v.terms {
            let coeff = sa * sb;
            if coeff.is_zero() {
                continue;
            }
            for (m, s) in star_monomials(a, b, trunc).terms {
                out.add_term(m, &(&coeff * &s));
            }
        }
    }
    Ok(out)
}

/// `u*v − v*u`
pub fn star_commutator(u: &DualElement, v: &DualElement) -> Result<DualElement> {
    Ok(&star_closed(u, v)? - &star_closed(v, u)?)
}

/// Undeformed product `W^I Y^J · W^K Y^L = W^{I+K} Y^{J+L}`.
pub fn commutative_product(u: &DualElement, v: &DualElement) -> Result<DualElement> {
    if u.trunc != v.trunc {
        return Err(Error::TruncationMismatch(u.trunc, v.trunc));
    }
    let mut out = DualElement::zero(u.trunc);
    for (a, sa) in &u.terms {
        for (b, sb) in &v.terms {
            out.add_term(DualMonomial::new(a.w + b.w, a.y + b.y), &(sa * sb));
        }
    }
    Ok(out)
}

/// `{u, v}ᵢ`: the `ℏᵢ` coefficient of `u*v − v*u`, with constant coefficients.
pub fn poisson_bracket_dir(u: &DualElement, v: &DualElement, i: usize) -> Result<DualElement> {
    if !(1..=3).contains(&i) {
        return Err(Error::OutOfRange);
    }
    if u.trunc != v.trunc {
        return Err(Error::TruncationMismatch(u.trunc, v.trunc));
    }
    let trunc = u.trunc;
    let comm = star_commutator(&u.lift(1), &v.lift(1))?;
    let linear = comm.hbar_coefficient(&MultiIndex::unit(i - 1));
    Ok(DualElement::from_terms(
        linear
            .terms
            .into_iter()
            .map(|(m, s)| (m, Series::constant(s.constant_term(), trunc))),
        trunc,
    ))
}

/// Structure constants of `{·,·}ᵢ` on `χ₁..χ₇`.
pub fn dual_structure_constants(i: usize) -> Result<LieData> {
    let names = (1..=7).map(|k| format!("x{k}")).collect();
    let mut lie = LieData::abelian(names);
    for a in 1..=7 {
        for b in 1..=7 {
            let bracket =
                poisson_bracket_dir(&DualElement::chi(a, 1)?, &DualElement::chi(b, 1)?, i)?;
            for (m, s) in bracket.terms() {
                if m.norm() != 1 {
                    return Err(Error::NonLinearBracket(format!(
                        "{{x{a},x{b}}}_{i} = {bracket}"
                    )));
                }
                let k = m.index7().0.iter().position(|e| e.is_one()).unwrap();
                lie.set_constant(a - 1, b - 1, k, s.constant_term());
            }
        }
    }
    Ok(lie)
}

#[cfg(test)]
mod tests;

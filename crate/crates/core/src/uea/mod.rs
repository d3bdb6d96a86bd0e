//! The deformed enveloping algebra `U_{ℏ₁,ℏ₂,ℏ₃}(𝔤_NC^{α,β,γ})`.
//!
//! Elements are finite sums over the PBW basis
//! `Θ^{e₁}Φ^{e₂}Ψ^{e₃}Q₁^{e₄}Q₂^{e₅}P₁^{e₆}P₂^{e₇}` with [`Series`]
//! coefficients. Multiplication is carried out by [`Uea`], which owns the
//! parameters together with caches of `λ`-powers and monomial products.

mod element;
mod normal_order;
pub mod rho;
mod verify;
mod zbasis;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{Index3, Index4, Index7, MultiIndex};
use crate::series::{format_rational, Rational, Series};

pub(crate) use element::monomial_factors;
pub use element::{AlgebraElement, ElementJson, TermJson};
pub use rho::RhoSeries;
pub use verify::{verify_flatness, verify_relations};
pub use zbasis::{format_zmap, ZMap, ZMonomial};

use normal_order::{CommutatorTable, ProductTerm};

/// PBW exponent vector ordered `(Θ, Φ, Ψ, Q₁, Q₂, P₁, P₂)`.
pub type PbwMonomial = Index7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Theta,
    Phi,
    Psi,
    Q1,
    Q2,
    P1,
    P2,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::Theta,
        Generator::Phi,
        Generator::Psi,
        Generator::Q1,
        Generator::Q2,
        Generator::P1,
        Generator::P2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(k: usize) -> Generator {
        Self::ALL[k]
    }

    pub fn is_central(self) -> bool {
        self.index() < 3
    }

    /// Text token used by the expression grammar.
    pub fn token(self) -> &'static str {
        ["Th", "Ph", "Ps", "Q1", "Q2", "P1", "P2"][self.index()]
    }

    pub fn from_token(tok: &str) -> Option<Generator> {
        Self::ALL.into_iter().find(|g| g.token() == tok)
    }

    pub fn monomial(self) -> PbwMonomial {
        MultiIndex::unit(self.index())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// `(α, β, γ)` and the truncation order `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeformParams {
    #[serde(with = "rational_text")]
    pub alpha: Rational,
    #[serde(with = "rational_text")]
    pub beta: Rational,
    #[serde(with = "rational_text")]
    pub gamma: Rational,
    pub truncation: u32,
}

impl DeformParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, truncation: u32) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidParams("alpha must be nonzero".into()));
        }
        Ok(DeformParams {
            alpha,
            beta,
            gamma,
            truncation,
        })
    }

    /// Convenience constructor from integers.
    pub fn ints(alpha: i64, beta: i64, gamma: i64, truncation: u32) -> Result<Self> {
        use crate::series::int;
        Self::new(int(alpha), int(beta), int(gamma), truncation)
    }

    pub fn with_truncation(&self, truncation: u32) -> Self {
        DeformParams {
            truncation,
            ..self.clone()
        }
    }
}

impl fmt::Display for DeformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} gamma={} D={}",
            format_rational(&self.alpha),
            format_rational(&self.beta),
            format_rational(&self.gamma),
            self.truncation
        )
    }
}

pub(crate) mod rational_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::series::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Central element stored as `(Θ^I-exponent, coefficient)` pairs.
pub(crate) type Central = Vec<(Index3, Series)>;

/// Product of two `Q/P` blocks, fully expanded: central offset, new `Q/P`
/// exponent and coefficient.
pub(crate) type BlockProduct = Vec<(Index3, Index4, Series)>;

pub(crate) fn split(m: &PbwMonomial) -> (Index3, Index4) {
    (
        MultiIndex([m.0[0], m.0[1], m.0[2]]),
        MultiIndex([m.0[3], m.0[4], m.0[5], m.0[6]]),
    )
}

pub(crate) fn join(c: &Index3, n: &Index4) -> PbwMonomial {
    MultiIndex([c.0[0], c.0[1], c.0[2], n.0[0], n.0[1], n.0[2], n.0[3]])
}

/// Multiplication engine for one parameter set.
pub struct Uea {
    params: Arc<DeformParams>,
    table: CommutatorTable,
    lambda_pows: RwLock<HashMap<i64, Arc<Central>>>,
    products: RwLock<HashMap<(Index4, Index4), Arc<BlockProduct>>>,
}

impl fmt::Debug for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea").field("params", &self.params).finish()
    }
}

impl Uea {
    pub fn new(params: DeformParams) -> Self {
        let table = CommutatorTable::new(&params);
        Uea {
            params: Arc::new(params),
            table,
            lambda_pows: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &DeformParams {
        &self.params
    }

    pub(crate) fn params_arc(&self) -> &Arc<DeformParams> {
        &self.params
    }

    pub fn truncation(&self) -> u32 {
        self.params.truncation
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if *x.params() != *self.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.params.clone())
    }

    pub fn one(&self) -> AlgebraElement {
        self.monomial(PbwMonomial::zero())
    }

    pub fn scalar(&self, s: Series) -> AlgebraElement {
        AlgebraElement::from_terms(self.params.clone(), [(PbwMonomial::zero(), s)])
    }

    pub fn rational(&self, r: Rational) -> AlgebraElement {
        self.scalar(Series::constant(r, self.truncation()))
    }

    pub fn monomial(&self, m: PbwMonomial) -> AlgebraElement {
        AlgebraElement::from_terms(self.params.clone(), [(m, Series::one(self.truncation()))])
    }

    pub fn generator(&self, g: Generator) -> AlgebraElement {
        self.monomial(g.monomial())
    }

    pub fn hbar(&self, i: usize) -> AlgebraElement {
        self.scalar(Series::hbar(i, self.truncation()))
    }

    pub fn rho_function(&self, f: &RhoSeries) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.params.clone(),
            f.expand()
                .into_iter()
                .map(|(c, s)| (join(&c, &Index4::zero()), s)),
        )
    }

    /// `ρ = ℏ₁Θ + ℏ₂Φ + ℏ₃Ψ`
    pub fn rho(&self) -> AlgebraElement {
        self.rho_function(&RhoSeries::rho(self.truncation()))
    }

    /// `λ = sinh(2ρ)/(2ρ)`
    pub fn lambda(&self) -> AlgebraElement {
        self.lambda_pow(1)
    }

    /// `e^{cρ}` truncated at `D`.
    pub fn exp_rho(&self, c: &Rational) -> AlgebraElement {
        self.rho_function(&RhoSeries::exp(c, self.truncation()))
    }

    /// `λ^k` for any integer `k` as an element.
    pub fn lambda_pow(&self, k: i64) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.params.clone(),
            self.lambda_pow_central(k)
                .iter()
                .map(|(c, s)| (join(c, &Index4::zero()), s.clone())),
        )
    }

    pub(crate) fn lambda_pow_central(&self, k: i64) -> Arc<Central> {
        if let Some(hit) = self.lambda_pows.read().unwrap().get(&k) {
            return hit.clone();
        }
        let central = Arc::new(RhoSeries::lambda(self.truncation()).pow(k).expand());
        self.lambda_pows
            .write()
            .unwrap()
            .entry(k)
            .or_insert(central)
            .clone()
    }

    /// Normal-ordered product `x·y`.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut acc: BTreeMap<PbwMonomial, Series> = BTreeMap::new();
        for (a, sa) in x.terms() {
            for (b, sb) in y.terms() {
                let coeff = sa * sb;
                if coeff.is_zero() {
                    continue;
                }
                for (m, s) in self.monomial_product(a, b).iter() {
                    accumulate(&mut acc, *m, &coeff, s, self.truncation());
                }
            }
        }
        AlgebraElement::from_map(self.params.clone(), acc)
    }

    /// Product in the undeformed algebra `U(𝔤)[[ℏ]]` (every `λ` replaced by 1).
    pub fn mul_classical(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let d = self.truncation();
        let mut acc: BTreeMap<PbwMonomial, Series> = BTreeMap::new();
        for (a, sa) in x.terms() {
            let (ca, na) = split(a);
            for (b, sb) in y.terms() {
                let (cb, nb) = split(b);
                let coeff = sa * sb;
                for t in self.table.raw_product(&na, &nb) {
                    let m = join(&(ca + cb + t.central), &t.nc);
                    accumulate(&mut acc, m, &coeff, &Series::constant(t.coef, d), d);
                }
            }
        }
        Ok(AlgebraElement::from_map(self.params.clone(), acc))
    }

    /// Product of two basis monomials with unit coefficients, expanded in
    /// the PBW basis.
    pub(crate) fn monomial_product(
        &self,
        a: &PbwMonomial,
        b: &PbwMonomial,
    ) -> Vec<(PbwMonomial, Series)> {
        let (ca, na) = split(a);
        let (cb, nb) = split(b);
        let base = ca + cb;
        if na.is_zero() || nb.is_zero() {
            return vec![(join(&base, &(na + nb)), Series::one(self.truncation()))];
        }
        self.block_product(&na, &nb)
            .iter()
            .map(|(c, n, s)| (join(&(base + *c), n), s.clone()))
            .collect()
    }

    pub(crate) fn block_product(&self, na: &Index4, nb: &Index4) -> Arc<BlockProduct> {
        let key = (*na, *nb);
        if let Some(hit) = self.products.read().unwrap().get(&key) {
            return hit.clone();
        }
        let d = self.truncation();
        let mut acc: BTreeMap<(Index3, Index4), Series> = BTreeMap::new();
        for ProductTerm {
            central,
            lam,
            nc,
            coef,
        } in self.table.raw_product(na, nb)
        {
            if lam == 0 {
                let slot = acc.entry((central, nc)).or_insert_with(|| Series::zero(d));
                slot.add_assign_ref(&Series::constant(coef, d));
                continue;
            }
            for (lc, ls) in self.lambda_pow_central(i64::from(lam)).iter() {
                let slot = acc
                    .entry((central + *lc, nc))
                    .or_insert_with(|| Series::zero(d));
                slot.add_assign_ref(&ls.scale(&coef));
            }
        }
        let product: BlockProduct = acc
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|((c, n), s)| (c, n, s))
            .collect();
        let product = Arc::new(product);
        self.products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(product)
            .clone()
    }

    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    pub fn pow(&self, x: &AlgebraElement, n: u32) -> Result<AlgebraElement> {
        self.check(x)?;
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// Flatness automorphism: a PBW monomial of generator degree `g` is sent
    /// to itself times `λ^{−g}`.
    pub fn phi(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        let d = self.truncation();
        let mut acc: BTreeMap<PbwMonomial, Series> = BTreeMap::new();
        for (m, s) in x.terms() {
            let inv = self.lambda_pow_central(-i64::from(m.norm()));
            for (c, cs) in inv.iter() {
                let shifted = *m + join(c, &Index4::zero());
                accumulate(&mut acc, shifted, s, cs, d);
            }
        }
        Ok(AlgebraElement::from_map(self.params.clone(), acc))
    }
}

/// `acc[m] += a·b`
pub(crate) fn accumulate(
    acc: &mut BTreeMap<PbwMonomial, Series>,
    m: PbwMonomial,
    a: &Series,
    b: &Series,
    trunc: u32,
) {
    let slot = acc.entry(m).or_insert_with(|| Series::zero(trunc));
    if b.is_one() {
        slot.add_assign_ref(a);
    } else if a.is_one() {
        slot.add_assign_ref(b);
    } else {
        slot.add_product(a, b);
    }
}

#[cfg(test)]
mod tests;

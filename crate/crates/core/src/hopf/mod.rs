//! Coproduct, counit and antipode of the deformed algebra.
//!
//! On generators
//!
//! ```text
//! Δ(Qᵢ) = Qᵢ⊗e^ρ + e^{−ρ}⊗Qᵢ          (same for Pᵢ)
//! Δ(Θ)  = (λΘ⊗e^{2ρ} + e^{−2ρ}⊗λΘ)·Δ(λ)⁻¹   (same for Φ, Ψ)
//! ε(g)  = 0,   S(g) = −g
//! ```
//!
//! and `Δ` is extended multiplicatively, `S` anti-multiplicatively.

mod tensor;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multiindex::Index4;
use crate::series::{int, Series};
use crate::uea::{
    join, split, AlgebraElement, DeformParams, Generator, PbwMonomial, RhoSeries, Uea,
};

pub use tensor::{TensorElement, TensorJson, TensorTermJson, Triple, TripleTensorElement};
pub use verify::{heisenberg_limit_report, verify_hopf_axioms};

/// Hopf structure maps over one [`Uea`], with memoized images of PBW monomials.
pub struct Hopf {
    uea: Uea,
    delta_lambda_inv: OnceLock<TensorElement>,
    coproducts: RwLock<HashMap<PbwMonomial, Arc<TensorElement>>>,
    antipodes: RwLock<HashMap<PbwMonomial, Arc<AlgebraElement>>>,
}

impl std::fmt::Debug for Hopf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hopf")
            .field("params", self.uea.params())
            .finish()
    }
}

impl Hopf {
    pub fn new(params: DeformParams) -> Self {
        Self::from_uea(Uea::new(params))
    }

    pub fn from_uea(uea: Uea) -> Self {
        Hopf {
            uea,
            delta_lambda_inv: OnceLock::new(),
            coproducts: RwLock::new(HashMap::new()),
            antipodes: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Uea {
        &self.uea
    }

    pub fn params(&self) -> &DeformParams {
        self.uea.params()
    }

    pub fn truncation(&self) -> u32 {
        self.uea.truncation()
    }

    fn check(&self, params: &DeformParams) -> Result<()> {
        if params != self.uea.params() {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn tensor_zero(&self) -> TensorElement {
        TensorElement::zero(self.uea.params_arc().clone())
    }

    pub fn tensor_one(&self) -> TensorElement {
        self.tensor_monomial(PbwMonomial::zero(), PbwMonomial::zero())
    }

    pub fn tensor_monomial(&self, a: PbwMonomial, b: PbwMonomial) -> TensorElement {
        TensorElement::from_terms(
            self.uea.params_arc().clone(),
            [((a, b), Series::one(self.truncation()))],
        )
    }

    pub fn tensor(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<TensorElement> {
        self.check(x.params())?;
        TensorElement::tensor(x, y)
    }

    /// `(x⊗y)(x′⊗y′) = xx′ ⊗ yy′`
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.check(a.params())?;
        self.check(b.params())?;
        Ok(self.tensor_mul_unchecked(a, b))
    }

    fn tensor_mul_unchecked(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let d = self.truncation();
        let mut acc: BTreeMap<(PbwMonomial, PbwMonomial), Series> = BTreeMap::new();
        for ((a1, a2), sa) in a.terms() {
            for ((b1, b2), sb) in b.terms() {
                let coeff = sa * sb;
                if coeff.is_zero() {
                    continue;
                }
                let left = self.uea.monomial_product(a1, b1);
                let right = self.uea.monomial_product(a2, b2);
                for (l, ls) in &left {
                    let lc = if ls.is_one() {
                        coeff.clone()
                    } else {
                        &coeff * ls
                    };
                    if lc.is_zero() {
                        continue;
                    }
                    for (r, rs) in &right {
                        let slot = acc.entry((*l, *r)).or_insert_with(|| Series::zero(d));
                        if rs.is_one() {
                            slot.add_assign_ref(&lc);
                        } else {
                            slot.add_product(&lc, rs);
                        }
                    }
                }
            }
        }
        TensorElement::from_map(self.uea.params_arc().clone(), acc)
    }

    pub fn tensor_commutator(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        Ok(&self.tensor_mul(a, b)? - &self.tensor_mul(b, a)?)
    }

    /// `Δ(ρ) = ρ⊗1 + 1⊗ρ`
    pub fn delta_rho(&self) -> TensorElement {
        let one = self.uea.one();
        let rho = self.uea.rho();
        &TensorElement::tensor(&rho, &one).unwrap() + &TensorElement::tensor(&one, &rho).unwrap()
    }

    /// `Σ cₙ Δ(ρ)ⁿ` for a central series `Σ cₙ ρⁿ`.
    pub fn rho_function_coproduct(&self, f: &RhoSeries) -> TensorElement {
        let drho = self.delta_rho();
        let mut power = self.tensor_one();
        let mut acc = self.tensor_zero();
        for n in 0..=f.truncation() as usize {
            if n > 0 {
                power = self.tensor_mul_unchecked(&power, &drho);
            }
            let c = f.coeff(n);
            if !c.is_zero() {
                acc = &acc + &power.scale_rational(c);
            }
        }
        acc
    }

    /// `Δ(λ) = Σ 4ⁿ Δ(ρ)²ⁿ/(2n+1)!`
    pub fn delta_lambda(&self) -> TensorElement {
        self.rho_function_coproduct(&RhoSeries::lambda(self.truncation()))
    }

    /// `Δ(λ)⁻¹`, by the geometric series in the commuting central part of
    /// the tensor square.
    pub fn delta_lambda_inverse(&self) -> &TensorElement {
        self.delta_lambda_inv.get_or_init(|| {
            self.central_tensor_inverse(&self.delta_lambda())
                .expect("Δ(λ) has constant term 1⊗1")
        })
    }

    /// Inverse of a central tensor `s·(1⊗1) + N` with `s` invertible and every
    /// coefficient of `N` of positive `ℏ`-order.
    pub fn central_tensor_inverse(&self, t: &TensorElement) -> Result<TensorElement> {
        self.check(t.params())?;
        let zero = PbwMonomial::zero();
        for ((a, b), s) in t.terms() {
            let is_unit = *a == zero && *b == zero;
            let central = a.0[3..].iter().chain(&b.0[3..]).all(|&e| e == 0);
            if !central || (!is_unit && s.order() == Some(0)) {
                return Err(Error::NonInvertible);
            }
        }
        let s_inv = t.coefficient(&zero, &zero).inv()?;
        // t = s(1 − M) with M = 1 − t/s nilpotent in ℏ
        let m = &self.tensor_one() - &t.scale(&s_inv);
        let mut acc = self.tensor_one();
        let mut power = self.tensor_one();
        for _ in 0..self.truncation() {
            power = self.tensor_mul_unchecked(&power, &m);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&s_inv))
    }

    fn generator_coproduct(&self, g: Generator) -> TensorElement {
        let u = &self.uea;
        let x = u.generator(g);
        if g.is_central() {
            let lx = u.mul_unchecked(&u.lambda(), &x);
            let e2 = u.exp_rho(&int(2));
            let em2 = u.exp_rho(&int(-2));
            let num = &TensorElement::tensor(&lx, &e2).unwrap()
                + &TensorElement::tensor(&em2, &lx).unwrap();
            self.tensor_mul_unchecked(&num, self.delta_lambda_inverse())
        } else {
            &TensorElement::tensor(&x, &u.exp_rho(&int(1))).unwrap()
                + &TensorElement::tensor(&u.exp_rho(&int(-1)), &x).unwrap()
        }
    }

    /// `Δ` of a single PBW monomial, memoized. Built as `Δ(m′)·Δ(g)` where
    /// `g` is the last generator of `m` in PBW order.
    pub fn coproduct_monomial(&self, m: &PbwMonomial) -> Arc<TensorElement> {
        if let Some(hit) = self.coproducts.read().unwrap().get(m) {
            return hit.clone();
        }
        let value = match (0..7).rev().find(|&k| m.0[k] > 0) {
            None => self.tensor_one(),
            Some(k) => {
                let g = Generator::from_index(k);
                let mut rest = *m;
                rest.0[k] -= 1;
                if rest.is_zero() {
                    self.generator_coproduct(g)
                } else {
                    let head = self.coproduct_monomial(&rest);
                    let tail = self.coproduct_monomial(&g.monomial());
                    self.tensor_mul_unchecked(&head, &tail)
                }
            }
        };
        self.coproducts
            .write()
            .unwrap()
            .entry(*m)
            .or_insert_with(|| Arc::new(value))
            .clone()
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> Result<TensorElement> {
        self.check(x.params())?;
        let mut acc = self.tensor_zero();
        for (m, s) in x.terms() {
            acc = &acc + &self.coproduct_monomial(m).scale(s);
        }
        Ok(acc)
    }

    /// Coefficient of the empty monomial.
    pub fn counit(&self, x: &AlgebraElement) -> Result<Series> {
        self.check(x.params())?;
        Ok(x.coefficient(&PbwMonomial::zero()))
    }

    /// `S` on a PBW monomial: `(−1)^deg · Θ^I · P₂^{e₇}P₁^{e₆}Q₂^{e₅}Q₁^{e₄}`,
    /// normal-ordered.
    pub fn antipode_monomial(&self, m: &PbwMonomial) -> Arc<AlgebraElement> {
        if let Some(hit) = self.antipodes.read().unwrap().get(m) {
            return hit.clone();
        }
        let u = &self.uea;
        let (central, nc) = split(m);
        let mut acc = u.monomial(join(&central, &Index4::zero()));
        for k in (0..4).rev() {
            if nc.0[k] > 0 {
                let mut block = Index4::zero();
                block.0[k] = nc.0[k];
                acc = u.mul_unchecked(&acc, &u.monomial(join(&Default::default(), &block)));
            }
        }
        if m.norm() % 2 == 1 {
            acc = -&acc;
        }
        self.antipodes
            .write()
            .unwrap()
            .entry(*m)
            .or_insert_with(|| Arc::new(acc))
            .clone()
    }

    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x.params())?;
        let mut acc = self.uea.zero();
        for (m, s) in x.terms() {
            acc = &acc + &self.antipode_monomial(m).scale(s);
        }
        Ok(acc)
    }

    /// `(Δ⊗1)t`
    pub fn coproduct_left(&self, t: &TensorElement) -> TripleTensorElement {
        let d = self.truncation();
        let mut acc: BTreeMap<Triple, Series> = BTreeMap::new();
        for ((a, b), s) in t.terms() {
            for ((a1, a2), s2) in self.coproduct_monomial(a).terms() {
                acc.entry((*a1, *a2, *b))
                    .or_insert_with(|| Series::zero(d))
                    .add_product(s, s2);
            }
        }
        TripleTensorElement::from_map(acc, d)
    }

    /// `(1⊗Δ)t`
    pub fn coproduct_right(&self, t: &TensorElement) -> TripleTensorElement {
        let d = self.truncation();
        let mut acc: BTreeMap<Triple, Series> = BTreeMap::new();
        for ((a, b), s) in t.terms() {
            for ((b1, b2), s2) in self.coproduct_monomial(b).terms() {
                acc.entry((*a, *b1, *b2))
                    .or_insert_with(|| Series::zero(d))
                    .add_product(s, s2);
            }
        }
        TripleTensorElement::from_map(acc, d)
    }

    /// `(ε⊗1)t`
    pub fn counit_left(&self, t: &TensorElement) -> AlgebraElement {
        let zero = PbwMonomial::zero();
        AlgebraElement::from_terms(
            self.uea.params_arc().clone(),
            t.terms()
                .filter(|((a, _), _)| *a == zero)
                .map(|((_, b), s)| (*b, s.clone())),
        )
    }

    /// `(1⊗ε)t`
    pub fn counit_right(&self, t: &TensorElement) -> AlgebraElement {
        let zero = PbwMonomial::zero();
        AlgebraElement::from_terms(
            self.uea.params_arc().clone(),
            t.terms()
                .filter(|((_, b), _)| *b == zero)
                .map(|((a, _), s)| (*a, s.clone())),
        )
    }

    /// `μ(S⊗1)t`
    pub fn antipode_left(&self, t: &TensorElement) -> AlgebraElement {
        let u = &self.uea;
        let mut acc = u.zero();
        for ((a, b), s) in t.terms() {
            let sa = self.antipode_monomial(a);
            acc = &acc + &u.mul_unchecked(&sa, &u.monomial(*b)).scale(s);
        }
        acc
    }

    /// `μ(1⊗S)t`
    pub fn antipode_right(&self, t: &TensorElement) -> AlgebraElement {
        let u = &self.uea;
        let mut acc = u.zero();
        for ((a, b), s) in t.terms() {
            let sb = self.antipode_monomial(b);
            acc = &acc + &u.mul_unchecked(&u.monomial(*a), &sb).scale(s);
        }
        acc
    }

    /// `Δᵒ = flip∘Δ`
    pub fn opposite_coproduct(&self, x: &AlgebraElement) -> Result<TensorElement> {
        Ok(self.coproduct(x)?.flip())
    }
}

#[cfg(test)]
mod tests;

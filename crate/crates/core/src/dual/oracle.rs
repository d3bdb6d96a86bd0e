//! Star-product coefficients computed directly from
//! `⟨u*v, Z^S X^T⟩ = ⟨u⊗v, Δ(Z^S X^T)⟩`, with `Δ` evaluated exactly by the
//! Hopf engine and both tensor legs re-expanded in the `Z^I X^J` basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::{DualElement, DualMonomial};
use crate::error::Result;
use crate::hopf::Hopf;
use crate::multiindex::Index3;
use crate::series::Series;
use crate::uea::{DeformParams, PbwMonomial, ZMap, ZMonomial};

/// `Δ(x)` with both legs in the `Z^I X^J` basis.
pub type ZTensor = BTreeMap<(ZMonomial, ZMonomial), Series>;

/// Default enumeration bound `|a| + |b| + D`: each extra `Z`-degree in
/// `Δ(Z^S X^T)` costs at least one power of `ℏ` in the pairing.
pub fn default_cap(a: &DualMonomial, b: &DualMonomial, trunc: u32) -> u32 {
    a.norm() + b.norm() + trunc
}

pub struct StarOracle {
    hopf: Hopf,
    legs: RwLock<HashMap<PbwMonomial, Arc<ZMap>>>,
    deltas: RwLock<HashMap<ZMonomial, Arc<ZTensor>>>,
}

impl StarOracle {
    pub fn new(params: DeformParams) -> Self {
        StarOracle {
            hopf: Hopf::new(params),
            legs: RwLock::new(HashMap::new()),
            deltas: RwLock::new(HashMap::new()),
        }
    }

    pub fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    pub fn truncation(&self) -> u32 {
        self.hopf.truncation()
    }

    fn leg(&self, m: &PbwMonomial) -> Arc<ZMap> {
        if let Some(hit) = self.legs.read().unwrap().get(m) {
            return hit.clone();
        }
        let u = self.hopf.algebra();
        let z = u.to_z_basis(&u.monomial(*m)).expect("same algebra");
        self.legs
            .write()
            .unwrap()
            .entry(*m)
            .or_insert_with(|| Arc::new(z))
            .clone()
    }

    /// `Δ(Z^S X^T)` in the `Z⊗Z` basis, memoized.
    pub fn delta_on_zbasis(&self, z: &ZMonomial) -> Arc<ZTensor> {
        if let Some(hit) = self.deltas.read().unwrap().get(z) {
            return hit.clone();
        }
        let d = self.truncation();
        let u = self.hopf.algebra();
        let delta = self.hopf.coproduct(&u.z_monomial(z)).expect("same algebra");
        let mut acc = ZTensor::new();
        for ((a, b), s) in delta.terms() {
            let (za, zb) = (self.leg(a), self.leg(b));
            for (ka, sa) in za.iter() {
                let left = s * sa;
                for (kb, sb) in zb.iter() {
                    acc.entry((*ka, *kb))
                        .or_insert_with(|| Series::zero(d))
                        .add_product(&left, sb);
                }
            }
        }
        acc.retain(|_, s| !s.is_zero());
        self.deltas
            .write()
            .unwrap()
            .entry(*z)
            .or_insert_with(|| Arc::new(acc))
            .clone()
    }

    /// Coefficients of `a*b` on every `W^S Y^T` with `|S|+|T| ≤ cap`.
    ///
    /// Each factor of `X^T` lands in exactly one leg of `Δ(Z^S X^T)` and the
    /// leg words stay in PBW order, so only `T = J + L` can pair with
    /// `Z^I X^J ⊗ Z^K X^L`; other `T` are skipped.
    pub fn star_oracle(&self, a: &DualMonomial, b: &DualMonomial, cap: u32) -> DualElement {
        let t = a.y + b.y;
        let mut out = DualElement::zero(self.truncation());
        let Some(budget) = cap.checked_sub(t.norm()) else {
            return out;
        };
        for s in Index3::all_up_to(budget) {
            self.collect(a, b, ZMonomial::new(s, t), &mut out);
        }
        out
    }

    /// [`StarOracle::star_oracle`] without the `T = J + L` shortcut.
    pub fn star_oracle_exhaustive(
        &self,
        a: &DualMonomial,
        b: &DualMonomial,
        cap: u32,
    ) -> DualElement {
        let mut out = DualElement::zero(self.truncation());
        for m in PbwMonomial::all_up_to(cap) {
            let target = DualMonomial::from_index7(&m);
            self.collect(a, b, target.dual_to(), &mut out);
        }
        out
    }

    fn collect(&self, a: &DualMonomial, b: &DualMonomial, z: ZMonomial, out: &mut DualElement) {
        let delta = self.delta_on_zbasis(&z);
        if let Some(s) = delta.get(&(a.dual_to(), b.dual_to())) {
            out.add_term(DualMonomial::new(z.central, z.qp), s);
        }
    }

    /// Bilinear extension with the default cap per monomial pair.
    pub fn star(&self, u: &DualElement, v: &DualElement) -> Result<DualElement> {
        let d = self.truncation();
        let (u, v) = (u.lift(d).truncate_to(d), v.lift(d).truncate_to(d));
        let mut out = DualElement::zero(d);
        for (a, sa) in u.terms() {
            for (b, sb) in v.terms() {
                let piece = self.star_oracle(a, b, default_cap(a, b, d));
                out = out.try_add(&piece.scale(&(sa * sb)))?;
            }
        }
        Ok(out)
    }
}

/// `Δ(Z^S X^T)` in the `Z⊗Z` basis for one parameter set.
pub fn delta_on_zbasis(z: &ZMonomial, params: &DeformParams) -> ZTensor {
    (*StarOracle::new(params.clone()).delta_on_zbasis(z)).clone()
}

/// `⟨u, x⟩` with `⟨W^K Y^L, Z^I X^J⟩ = δ_{KI} δ_{LJ}`.
pub fn pairing(u: &DualElement, x: &ZMap) -> Series {
    let mut acc = Series::zero(u.truncation());
    for (m, s) in u.terms() {
        if let Some(c) = x.get(&m.dual_to()) {
            acc.add_product(s, c);
        }
    }
    acc
}

/// `⟨u⊗v, t⟩`, leg by leg.
pub fn pairing_tensor(u: &DualElement, v: &DualElement, t: &ZTensor) -> Series {
    let mut acc = Series::zero(u.truncation());
    for (a, sa) in u.terms() {
        for (b, sb) in v.terms() {
            if let Some(c) = t.get(&(a.dual_to(), b.dual_to())) {
                acc.add_product(&(sa * sb), c);
            }
        }
    }
    acc
}

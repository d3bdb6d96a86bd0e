//! The divided-power basis `Z^I X^J`, where
//! `Z^I = (λΘ)^{i₁}(λΦ)^{i₂}(λΨ)^{i₃}/I!` and `X^J = Q₁^{j₁}Q₂^{j₂}P₁^{j₃}P₂^{j₄}/J!`.

use std::collections::BTreeMap;
use std::fmt;

use super::{join, split, AlgebraElement, Uea};
use crate::error::Result;
use crate::multiindex::{Index3, Index4};
use crate::series::{format_linear_combination, Rational, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZMonomial {
    pub central: Index3,
    pub qp: Index4,
}

impl ZMonomial {
    pub fn new(central: Index3, qp: Index4) -> Self {
        ZMonomial { central, qp }
    }

    pub fn one() -> Self {
        Self::new(Index3::zero(), Index4::zero())
    }

    pub fn degree(&self) -> u32 {
        self.central.norm() + self.qp.norm()
    }

    /// `I!·J!`
    pub fn factorial(&self) -> Rational {
        Rational::from_integer(self.central.factorial() * self.qp.factorial())
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.central.is_zero() {
            out.push(format!(
                "Z[{},{},{}]",
                self.central[0], self.central[1], self.central[2]
            ));
        }
        if !self.qp.is_zero() {
            out.push(format!(
                "X[{},{},{},{}]",
                self.qp[0], self.qp[1], self.qp[2], self.qp[3]
            ));
        }
        out
    }
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// Coordinates of an element in the `Z^I X^J` basis.
pub type ZMap = BTreeMap<ZMonomial, Series>;

pub fn format_zmap(z: &ZMap) -> String {
    format_linear_combination(z.iter().map(|(m, s)| (s, m.factors())))
}

impl Uea {
    /// `Z^I X^J` as a PBW combination: `λ^{|I|} Θ^I (QP)^J / (I! J!)`.
    pub fn z_monomial(&self, z: &ZMonomial) -> AlgebraElement {
        let inv_fact = z.factorial().recip();
        let lam = self.lambda_pow_central(i64::from(z.central.norm()));
        AlgebraElement::from_terms(
            self.params_arc().clone(),
            lam.iter()
                .map(|(c, s)| (join(&(z.central + *c), &z.qp), s.scale(&inv_fact))),
        )
    }

    pub fn from_z_basis(&self, z: &ZMap) -> AlgebraElement {
        let mut acc = self.zero();
        for (m, s) in z {
            acc = &acc + &self.z_monomial(m).scale(s);
        }
        acc
    }

    /// Coordinates in the `Z^I X^J` basis.
    ///
    /// `I!J!·Z^I X^J = Θ^I(QP)^J + O(ℏ²)`, so subtracting the leading guess
    /// raises the `ℏ`-order of the remainder by two per round.
    pub fn to_z_basis(&self, x: &AlgebraElement) -> Result<ZMap> {
        self.check(x)?;
        let mut result = ZMap::new();
        let mut remainder = x.clone();
        while !remainder.is_zero() {
            let mut guess = ZMap::new();
            for (m, s) in remainder.terms() {
                let (c, n) = split(m);
                let z = ZMonomial::new(c, n);
                guess.insert(z, s.scale(&z.factorial()));
            }
            remainder = &remainder - &self.from_z_basis(&guess);
            for (z, s) in guess {
                let slot = result
                    .entry(z)
                    .or_insert_with(|| Series::zero(self.truncation()));
                *slot = &*slot + &s;
            }
        }
        result.retain(|_, s| !s.is_zero());
        Ok(result)
    }
}

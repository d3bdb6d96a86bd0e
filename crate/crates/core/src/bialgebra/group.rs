use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{format_rational, parse_rational, Rational};
use crate::uea::DeformParams;

/// `(θ, φ, ψ, q, p)` in `G_NC^{α,β,γ}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub theta: Rational,
    pub phi: Rational,
    pub psi: Rational,
    pub q: [Rational; 2],
    pub p: [Rational; 2],
}

fn inner(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn add2(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_slice(v: &[Rational]) -> Result<Self> {
        if v.len() != 7 {
            return Err(Error::DimensionMismatch {
                expected: 7,
                got: v.len(),
            });
        }
        Ok(GroupElement {
            theta: v[0].clone(),
            phi: v[1].clone(),
            psi: v[2].clone(),
            q: [v[3].clone(), v[4].clone()],
            p: [v[5].clone(), v[6].clone()],
        })
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![
            self.theta.clone(),
            self.phi.clone(),
            self.psi.clone(),
            self.q[0].clone(),
            self.q[1].clone(),
            self.p[0].clone(),
            self.p[1].clone(),
        ]
    }

    pub fn is_identity(&self) -> bool {
        self.to_vec().iter().all(Zero::is_zero)
    }

    /// `(θ+θ′+α/2[⟨q,p′⟩−⟨p,q′⟩], φ+φ′+β/2 p∧p′, ψ+ψ′+γ/2 q∧q′, q+q′, p+p′)`
    pub fn compose(&self, h: &GroupElement, params: &DeformParams) -> GroupElement {
        let two = Rational::from_integer(2.into());
        let half_a = &params.alpha / &two;
        let half_b = &params.beta / &two;
        let half_c = &params.gamma / &two;
        GroupElement {
            theta: &self.theta + &h.theta + half_a * (inner(&self.q, &h.p) - inner(&self.p, &h.q)),
            phi: &self.phi + &h.phi + half_b * cross(&self.p, &h.p),
            psi: &self.psi + &h.psi + half_c * cross(&self.q, &h.q),
            q: add2(&self.q, &h.q),
            p: add2(&self.p, &h.p),
        }
    }

    /// Every coordinate negated; the central corrections cancel because
    /// `⟨q,−p⟩ − ⟨p,−q⟩ = 0` and `q∧q = 0`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            theta: -self.theta.clone(),
            phi: -self.phi.clone(),
            psi: -self.psi.clone(),
            q: [-self.q[0].clone(), -self.q[1].clone()],
            p: [-self.p[0].clone(), -self.p[1].clone()],
        }
    }
}

pub fn group_compose(g: &GroupElement, h: &GroupElement, params: &DeformParams) -> GroupElement {
    g.compose(h, params)
}

pub fn group_inverse(g: &GroupElement) -> GroupElement {
    g.inverse()
}

impl FromStr for GroupElement {
    type Err = Error;

    /// `θ,φ,ψ,q1,q2,p1,p2`
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        GroupElement::from_slice(&parts)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

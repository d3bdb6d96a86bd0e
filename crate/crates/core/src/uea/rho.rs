//! Central functions of `ρ = ℏ₁Θ + ℏ₂Φ + ℏ₃Ψ`.
//!
//! Every central series the algebra needs (`λ`, `λ^k`, `e^{cρ}`) is a power
//! series in the single central element `ρ`. Since `ρⁿ` carries `ℏ`-degree
//! exactly `n`, truncation at `D` keeps a polynomial of degree `D` in `ρ`.

use num_traits::{One, Zero};

use crate::multiindex::{factorial, Index3};
use crate::series::{int, Rational, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoSeries {
    coeffs: Vec<Rational>,
}

impl RhoSeries {
    pub fn zero(trunc: u32) -> Self {
        RhoSeries {
            coeffs: vec![Rational::zero(); trunc as usize + 1],
        }
    }

    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn truncation(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `ρ` itself; zero at `D = 0`.
    pub fn rho(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if trunc >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `λ = sinh(2ρ)/(2ρ) = Σ 4ⁿ ρ²ⁿ / (2n+1)!`
    pub fn lambda(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        for (n, c) in s.coeffs.iter_mut().enumerate() {
            if n % 2 == 0 {
                *c = Rational::new(
                    num_bigint::BigInt::from(4).pow(n as u32 / 2),
                    factorial(n as u32 + 1),
                );
            }
        }
        s
    }

    /// `e^{cρ} = Σ (cρ)ⁿ / n!`
    pub fn exp(c: &Rational, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        let mut power = Rational::one();
        for (n, slot) in s.coeffs.iter_mut().enumerate() {
            *slot = &power / Rational::from_integer(factorial(n as u32));
            power *= c;
        }
        s
    }

    pub fn mul(&self, other: &RhoSeries) -> RhoSeries {
        let d = self.coeffs.len();
        let mut out = Self::zero(self.truncation());
        for i in 0..d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..d - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    /// Inverse by geometric series; panics if the constant term vanishes.
    pub fn inv(&self) -> RhoSeries {
        let u = self.coeffs[0].clone();
        assert!(!u.is_zero(), "non-invertible ρ-series");
        let u_inv = u.recip();
        let mut n = Self::zero(self.truncation());
        for k in 1..self.coeffs.len() {
            n.coeffs[k] = -&self.coeffs[k] * &u_inv;
        }
        let mut acc = Self::one(self.truncation());
        let mut power = Self::one(self.truncation());
        for _ in 0..self.truncation() {
            power = power.mul(&n);
            for k in 0..acc.coeffs.len() {
                acc.coeffs[k] += &power.coeffs[k];
            }
        }
        for c in &mut acc.coeffs {
            *c *= &u_inv;
        }
        acc
    }

    pub fn pow(&self, k: i64) -> RhoSeries {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one(self.truncation());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Expands `Σ aₙ ρⁿ` into central PBW terms `(I, aₙ·(n!/I!)·H^I)` for
    /// `Θ^{i₁}Φ^{i₂}Ψ^{i₃}` with `|I| = n`.
    pub fn expand(&self) -> Vec<(Index3, Series)> {
        let trunc = self.truncation();
        let mut out = Vec::new();
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let n_fact = factorial(n as u32);
            for idx in Index3::all_of_degree(n as u32) {
                let c = a * Rational::new(n_fact.clone(), idx.factorial());
                out.push((idx, Series::monomial(idx, c, trunc)));
            }
        }
        out
    }
}

/// Scalar coefficients of `sinh(2x)/(2x)` computed from the exponential
/// series, used as an independent check of [`RhoSeries::lambda`].
pub fn sinh_ratio_coefficients(n: usize) -> Vec<Rational> {
    // (e^{2x} − e^{−2x})/2 has x^k coefficient (2^k − (−2)^k)/(2·k!)
    (0..n)
        .map(|k| {
            let k1 = k as u32 + 1;
            let num = num_bigint::BigInt::from(2).pow(k1) - num_bigint::BigInt::from(-2).pow(k1);
            Rational::new(num, factorial(k1) * 2) / int(2)
        })
        .collect()
}

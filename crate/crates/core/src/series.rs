//! Exact coefficient ring: rationals and truncated formal power series in
//! `ℏ₁, ℏ₂, ℏ₃`.
//!
//! A [`Series`] keeps every term of total `ℏ`-degree at most its truncation
//! order `D` and nothing else, so all ring operations are exact in
//! `ℚ[[ℏ₁,ℏ₂,ℏ₃]] / (ℏ₁,ℏ₂,ℏ₃)^{D+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::Index3;

pub type Rational = BigRational;

/// Exponent triple `(m₁, m₂, m₃)` of `ℏ₁^{m₁}ℏ₂^{m₂}ℏ₃^{m₃}`.
pub type HMonomial = Index3;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational '{s}'"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Which of `ℏ₁, ℏ₂, ℏ₃` to send to zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Zeroed(pub [bool; 3]);

impl Zeroed {
    pub const NONE: Zeroed = Zeroed([false; 3]);
    pub const ALL: Zeroed = Zeroed([true; 3]);

    /// Keep only `ℏ_i` (1-based) active.
    pub fn all_but(i: usize) -> Zeroed {
        let mut z = [true; 3];
        z[i - 1] = false;
        Zeroed(z)
    }

    /// From 1-based variable numbers.
    pub fn vars(vars: &[usize]) -> Zeroed {
        let mut z = [false; 3];
        for &v in vars {
            z[v - 1] = true;
        }
        Zeroed(z)
    }

    fn kills(&self, h: &HMonomial) -> bool {
        (0..3).any(|k| self.0[k] && h.0[k] > 0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    terms: BTreeMap<HMonomial, Rational>,
    trunc: u32,
}

impl Series {
    pub fn zero(trunc: u32) -> Self {
        Series {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: u32) -> Self {
        Self::monomial(HMonomial::zero(), c, trunc)
    }

    /// `c·H^h`, or zero when `|h| > trunc`.
    pub fn monomial(h: HMonomial, c: Rational, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        if h.norm() <= trunc && !c.is_zero() {
            s.terms.insert(h, c);
        }
        s
    }

    /// The variable `ℏ_i` (1-based).
    pub fn hbar(i: usize, trunc: u32) -> Self {
        Self::monomial(HMonomial::unit(i - 1), Rational::one(), trunc)
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&HMonomial::zero())
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree carrying a nonzero coefficient (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|h| h.norm()).min()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&HMonomial::zero())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Builds a series from raw terms, dropping zeros and over-degree terms.
    pub fn from_terms<I>(terms: I, trunc: u32) -> Self
    where
        I: IntoIterator<Item = (HMonomial, Rational)>,
    {
        let mut s = Self::zero(trunc);
        for (h, c) in terms {
            s.add_term(h, c);
        }
        s
    }

    pub(crate) fn add_term(&mut self, h: HMonomial, c: Rational) {
        if h.norm() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Series) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(*h, -c);
        }
        Ok(out)
    }

    /// Cauchy product with all terms above the truncation order discarded.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let mut out = Series::zero(self.trunc);
        for (ha, ca) in &self.terms {
            let room = self.trunc - ha.norm();
            for (hb, cb) in &other.terms {
                if hb.norm() > room {
                    continue;
                }
                out.add_term(*ha + *hb, ca * cb);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Series) {
        debug_assert_eq!(self.trunc, other.trunc);
        for (h, c) in &other.terms {
            self.add_term(*h, c.clone());
        }
    }

    /// `self += a·b`, skipping the intermediate allocation of `a·b`.
    pub(crate) fn add_product(&mut self, a: &Series, b: &Series) {
        for (ha, ca) in &a.terms {
            let room = self.trunc.saturating_sub(ha.norm());
            if ha.norm() > self.trunc {
                continue;
            }
            for (hb, cb) in &b.terms {
                if hb.norm() > room {
                    continue;
                }
                self.add_term(*ha + *hb, ca * cb);
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Series {
        if r.is_zero() {
            return Series::zero(self.trunc);
        }
        Series {
            terms: self.terms.iter().map(|(h, c)| (*h, c * r)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplicative inverse by geometric iteration on `1 − a/u`, where `u`
    /// is the constant term.
    pub fn inv(&self) -> Result<Series> {
        let u = self.constant_term();
        if u.is_zero() {
            return Err(Error::NonInvertible);
        }
        let u_inv = u.recip();
        // a/u = 1 − n with n nilpotent of order ≥ 1
        let n = Series::one(self.trunc).try_sub(&self.scale(&u_inv))?;
        let mut acc = Series::one(self.trunc);
        let mut power = Series::one(self.trunc);
        for _ in 0..self.trunc {
            power = power.try_mul(&n)?;
            if power.is_zero() {
                break;
            }
            acc.add_assign_ref(&power);
        }
        Ok(acc.scale(&u_inv))
    }

    /// Sends the selected variables to zero.
    pub fn limit(&self, zeroed: Zeroed) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(h, _)| !zeroed.kills(h))
                .map(|(h, c)| (*h, c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn coeff_at(&self, h: &HMonomial) -> Result<Rational> {
        if h.norm() > self.trunc {
            return Err(Error::DegreeOverflow {
                degree: h.norm(),
                truncation: self.trunc,
            });
        }
        Ok(self.terms.get(h).cloned().unwrap_or_else(Rational::zero))
    }

    /// Re-truncates at a lower (or equal) order.
    pub fn truncate_to(&self, trunc: u32) -> Series {
        Series::from_terms(
            self.terms.iter().map(|(h, c)| (*h, c.clone())),
            trunc.min(self.trunc),
        )
    }

    /// JSON form: `[{"h":[a,b,c],"c":"p/q"}, ...]`.
    pub fn to_json(&self) -> Vec<SeriesTermJson> {
        self.terms
            .iter()
            .map(|(h, c)| SeriesTermJson {
                h: *h,
                c: format_rational(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[SeriesTermJson], trunc: u32) -> Result<Series> {
        let mut s = Series::zero(trunc);
        for t in terms {
            if t.h.norm() > trunc {
                return Err(Error::DegreeOverflow {
                    degree: t.h.norm(),
                    truncation: trunc,
                });
            }
            s.add_term(t.h, parse_rational(&t.c)?);
        }
        Ok(s)
    }

    /// Parses the text form `coef*h1^a*h2^b*h3^c + ...`.
    pub fn parse(text: &str, trunc: u32) -> Result<Series> {
        let mut out = Series::zero(trunc);
        for (sign, term) in split_signed_terms(text)? {
            let mut coeff = int(sign);
            let mut h = HMonomial::zero();
            for factor in term.split('*').map(str::trim) {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim().parse::<u32>().map_err(|_| Error::Parse {
                            pos: 0,
                            msg: format!("bad exponent in '{factor}'"),
                        })?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "h1" => h.0[0] += exp,
                    "h2" => h.0[1] += exp,
                    "h3" => h.0[2] += exp,
                    _ => {
                        let lit = base.trim_start_matches('(').trim_end_matches(')');
                        let r = parse_rational(lit)?;
                        coeff *= num_traits::pow(r, exp as usize);
                    }
                }
            }
            out.add_term(h, coeff);
        }
        Ok(out)
    }
}

/// Splits `a + b - c` into signed terms, respecting parentheses.
fn split_signed_terms(text: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1i64;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let this = if ch == '-' { -1 } else { 1 };
                if cur.trim().is_empty() {
                    sign *= this;
                } else {
                    out.push((sign, cur.trim().to_string()));
                    sign = this;
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            pos: text.len(),
            msg: "unbalanced parentheses".into(),
        });
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.len() == 1 && out[0].1 == "0" {
        out.clear();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub h: HMonomial,
    pub c: String,
}

impl Add for &Series {
    type Output = Series;

    /// Panics on truncation mismatch; use [`Series::try_add`] to get an error.
    fn add(self, rhs: &Series) -> Series {
        self.try_add(rhs).expect("series truncation mismatch")
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self.try_sub(rhs).expect("series truncation mismatch")
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        self.try_mul(rhs).expect("series truncation mismatch")
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

/// Writes a rational coefficient in front of a product of factors:
/// `1` is omitted, `-1` becomes a bare minus, fractions are parenthesised.
pub(crate) fn write_coeff_prefix(out: &mut String, c: &Rational, has_factors: bool) {
    let abs = c.abs();
    if c.is_negative() {
        out.push('-');
    }
    if abs.is_one() && has_factors {
        return;
    }
    if abs.is_integer() {
        out.push_str(&abs.numer().to_string());
    } else {
        out.push_str(&format!("({}/{})", abs.numer(), abs.denom()));
    }
    if has_factors {
        out.push('*');
    }
}

pub(crate) fn hbar_factors(h: &HMonomial) -> Vec<String> {
    (0..3)
        .filter(|&k| h.0[k] > 0)
        .map(|k| power_token(&format!("h{}", k + 1), h.0[k]))
        .collect()
}

pub(crate) fn power_token(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

/// Renders `Σ series · factors` as a flat sum of `coef*h-powers*factors`
/// terms, in the iteration order given (then by `ℏ`-monomial).
pub(crate) fn format_linear_combination<'a, I>(items: I) -> String
where
    I: IntoIterator<Item = (&'a Series, Vec<String>)>,
{
    let mut out = String::new();
    for (series, basis) in items {
        for (h, c) in series.terms() {
            let mut factors = hbar_factors(h);
            factors.extend(basis.iter().cloned());
            let mut piece = String::new();
            write_coeff_prefix(&mut piece, c, !factors.is_empty());
            piece.push_str(&factors.join("*"));
            if out.is_empty() {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_linear_combination([(self, Vec::new())]))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[D={}]({})", self.trunc, self)
    }
}

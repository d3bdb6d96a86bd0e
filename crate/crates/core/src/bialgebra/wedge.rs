use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::lie::LieData;
use crate::error::{Error, Result};
use crate::series::{format_rational, parse_rational, write_coeff_prefix, Rational};
use crate::uea::Generator;

/// Element of `Λ²𝔤`, stored on `e_i∧e_j` with `i < j`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WedgeElement {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl WedgeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·e_i∧e_j`, normalized to `i < j`.
    pub fn basis(i: usize, j: usize, c: Rational) -> Self {
        let mut w = Self::zero();
        w.add_basis(i, j, c);
        w
    }

    pub fn add_basis(&mut self, i: usize, j: usize, c: Rational) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `x∧y` for coordinate vectors.
    pub fn wedge(x: &[Rational], y: &[Rational]) -> Self {
        let mut w = Self::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    w.add_basis(i, j, xi * yj);
                }
            }
        }
        w
    }

    /// Coefficient of `e_i∧e_j` for any ordering (antisymmetric).
    pub fn coefficient(&self, i: usize, j: usize) -> Rational {
        if i < j {
            self.terms.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            -self.terms.get(&(j, i)).cloned().unwrap_or_default()
        } else {
            Rational::zero()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every stored pair has `i < j`.
    pub fn is_normalized(&self) -> bool {
        self.terms.keys().all(|(i, j)| i < j)
    }

    pub fn add(&self, other: &WedgeElement) -> WedgeElement {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_basis(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WedgeElement) -> WedgeElement {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, r: &Rational) -> WedgeElement {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out.add_basis(*i, *j, c * r);
        }
        out
    }

    /// `(ad_x⊗1 + 1⊗ad_x)`: `e_a∧e_b ↦ [x,e_a]∧e_b + e_a∧[x,e_b]`.
    pub fn ad(&self, x: &[Rational], lie: &LieData) -> Result<WedgeElement> {
        let n = lie.dim();
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let ea = super::lie::unit(n, *a);
            let eb = super::lie::unit(n, *b);
            let xa = lie.bracket(x, &ea)?;
            let xb = lie.bracket(x, &eb)?;
            out = out
                .add(&WedgeElement::wedge(&xa, &eb).scale(c))
                .add(&WedgeElement::wedge(&ea, &xb).scale(c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<WedgeTermJson> {
        self.terms
            .iter()
            .map(|((i, j), c)| WedgeTermJson {
                i: *i,
                j: *j,
                c: format_rational(c),
            })
            .collect()
    }

    pub fn from_json(terms: &[WedgeTermJson]) -> Result<WedgeElement> {
        let mut w = Self::zero();
        for t in terms {
            if t.i >= 7 || t.j >= 7 {
                return Err(Error::OutOfRange);
            }
            w.add_basis(t.i, t.j, parse_rational(&t.c)?);
        }
        Ok(w)
    }
}

/// `{"i":idx,"j":idx,"c":"p/q"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeTermJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |k: usize| {
            if k < 7 {
                Generator::from_index(k).token().to_string()
            } else {
                format!("e{k}")
            }
        };
        let mut out = String::new();
        for ((i, j), c) in &self.terms {
            let mut piece = String::new();
            write_coeff_prefix(&mut piece, c, true);
            piece.push_str(&format!("{}∧{}", name(*i), name(*j)));
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
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WedgeElement({self})")
    }
}

/// A linear map `δ: 𝔤 → Λ²𝔤`, given by its values on the seven generators.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Cocommutator {
    values: [WedgeElement; 7],
}

impl Cocommutator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_values(values: [WedgeElement; 7]) -> Self {
        Cocommutator { values }
    }

    pub fn get(&self, g: Generator) -> &WedgeElement {
        &self.values[g.index()]
    }

    pub fn set(&mut self, g: Generator, w: WedgeElement) {
        self.values[g.index()] = w;
    }

    pub fn values(&self) -> &[WedgeElement; 7] {
        &self.values
    }

    /// Linear extension to a coordinate vector.
    pub fn apply(&self, x: &[Rational]) -> WedgeElement {
        let mut out = WedgeElement::zero();
        for (c, w) in x.iter().zip(&self.values) {
            if !c.is_zero() {
                out = out.add(&w.scale(c));
            }
        }
        out
    }

    pub fn add(&self, other: &Cocommutator) -> Cocommutator {
        Cocommutator {
            values: std::array::from_fn(|k| self.values[k].add(&other.values[k])),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cocommutator {
        Cocommutator {
            values: std::array::from_fn(|k| self.values[k].scale(r)),
        }
    }
}

impl fmt::Display for Cocommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.values.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "δ({}) = {}", Generator::from_index(k), w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cocommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocommutator({self})")
    }
}

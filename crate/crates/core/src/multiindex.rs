//! Fixed-length multi-indices.
//!
//! Length 3 indexes central data (`H^I`, `Z^I`, `W^K`), length 4 indexes the
//! `Q₁, Q₂, P₁, P₂` block (`X^J`, `Y^L`), length 7 is a full PBW exponent.

use std::fmt;
use std::ops::{Add, Index, IndexMut};

use num_bigint::BigInt;
use num_traits::One;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex<const N: usize>(pub [u32; N]);

pub type Index3 = MultiIndex<3>;
pub type Index4 = MultiIndex<4>;
pub type Index7 = MultiIndex<7>;

impl<const N: usize> MultiIndex<N> {
    pub const fn zero() -> Self {
        MultiIndex([0; N])
    }

    /// The unit index with a one in position `k`.
    pub fn unit(k: usize) -> Self {
        let mut e = [0; N];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `|I|`
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `I!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `(|I|, I!)`
    pub fn norm_factorial(&self) -> (u32, BigInt) {
        (self.norm(), self.factorial())
    }

    /// Product of componentwise binomial coefficients; zero when some `jₖ > iₖ`.
    pub fn binom(&self, lower: &Self) -> BigInt {
        let mut acc = BigInt::one();
        for k in 0..N {
            if lower.0[k] > self.0[k] {
                return BigInt::from(0);
            }
            acc *= binomial(self.0[k], lower.0[k]);
        }
        acc
    }

    /// Componentwise `0 ≤ self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `a·I + b·J`, failing with [`Error::OutOfRange`] on a negative component.
    pub fn combine(a: i64, i: &Self, b: i64, j: &Self) -> Result<Self> {
        let mut out = [0u32; N];
        for k in 0..N {
            let v = a * i64::from(i.0[k]) + b * i64::from(j.0[k]);
            if v < 0 || v > i64::from(u32::MAX) {
                return Err(Error::OutOfRange);
            }
            out[k] = v as u32;
        }
        Ok(MultiIndex(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = [0u32; N];
        for k in 0..N {
            out[k] = self.0[k].checked_sub(other.0[k])?;
        }
        Some(MultiIndex(out))
    }

    /// All `M` with `0 ≤ M ≤ self`, in lexicographic order.
    pub fn box_below(&self) -> BoxIter<N> {
        BoxIter {
            bound: *self,
            next: Some(Self::zero()),
        }
    }

    /// All indices of total degree at most `max`, in lexicographic order.
    pub fn all_up_to(max: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = [0u32; N];
        fill_up_to(&mut cur, 0, max, &mut out);
        out
    }

    /// All indices of total degree exactly `deg`, in lexicographic order.
    pub fn all_of_degree(deg: u32) -> Vec<Self> {
        Self::all_up_to(deg)
            .into_iter()
            .filter(|m| m.norm() == deg)
            .collect()
    }
}

fn fill_up_to<const N: usize>(
    cur: &mut [u32; N],
    pos: usize,
    budget: u32,
    out: &mut Vec<MultiIndex<N>>,
) {
    if pos == N {
        out.push(MultiIndex(*cur));
        return;
    }
    for e in 0..=budget {
        cur[pos] = e;
        fill_up_to(cur, pos + 1, budget - e, out);
    }
    cur[pos] = 0;
}

pub struct BoxIter<const N: usize> {
    bound: MultiIndex<N>,
    next: Option<MultiIndex<N>>,
}

impl<const N: usize> Iterator for BoxIter<N> {
    type Item = MultiIndex<N>;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.next?;
        let mut succ = cur;
        let mut k = N;
        self.next = loop {
            if k == 0 {
                break None;
            }
            k -= 1;
            if succ.0[k] < self.bound.0[k] {
                succ.0[k] += 1;
                break Some(succ);
            }
            succ.0[k] = 0;
        };
        Some(cur)
    }
}

impl<const N: usize> Add for MultiIndex<N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for k in 0..N {
            out[k] += rhs.0[k];
        }
        MultiIndex(out)
    }
}

impl<const N: usize> Index<usize> for MultiIndex<N> {
    type Output = u32;

    fn index(&self, k: usize) -> &u32 {
        &self.0[k]
    }
}

impl<const N: usize> IndexMut<usize> for MultiIndex<N> {
    fn index_mut(&mut self, k: usize) -> &mut u32 {
        &mut self.0[k]
    }
}

impl<const N: usize> Default for MultiIndex<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> fmt::Display for MultiIndex<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> fmt::Debug for MultiIndex<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const N: usize> std::str::FromStr for MultiIndex<N> {
    type Err = Error;

    /// Parses `(i1,i2,...)` or a bare comma list.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != N {
            return Err(Error::DimensionMismatch {
                expected: N,
                got: parts.len(),
            });
        }
        let mut out = [0u32; N];
        for (k, p) in parts.iter().enumerate() {
            out[k] = p.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad index entry '{p}'"),
            })?;
        }
        Ok(MultiIndex(out))
    }
}

impl<const N: usize> Serialize for MultiIndex<N> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(N))?;
        for e in &self.0 {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

impl<'de, const N: usize> Deserialize<'de> for MultiIndex<N> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V<const N: usize>;
        impl<'de, const N: usize> Visitor<'de> for V<N> {
            type Value = MultiIndex<N>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of {N} naturals")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = [0u32; N];
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(k, &self))?;
                }
                if seq.next_element::<u32>()?.is_some() {
                    return Err(de::Error::invalid_length(N + 1, &self));
                }
                Ok(MultiIndex(out))
            }
        }
        deserializer.deserialize_seq(V::<N>)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

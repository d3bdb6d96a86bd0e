//! Straightening of `Q/P` words.
//!
//! Every commutator among `Q₁, Q₂, P₁, P₂` is central: `[Qᵢ,Pⱼ] = δᵢⱼ λΘ/α`,
//! `[Q₁,Q₂] = βλΦ/α²`, `[P₁,P₂] = γλΨ/α²`. Reordering therefore only needs
//! the exchange rule for a pair `A, B` with central `c = [A,B]`:
//!
//! ```text
//! Bⁿ Aᵐ = Σ_k (−1)ᵏ k! C(m,k) C(n,k) cᵏ A^{m−k} B^{n−k}
//! ```
//!
//! Products are computed symbolically in the number of `λ` factors; the
//! caller expands `λ^k` afterwards (or drops it for the undeformed algebra).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::DeformParams;
use crate::multiindex::{binomial, factorial, Index3, Index4};
use crate::series::Rational;

/// `coef · λ^lam · Θ^central · (Q₁Q₂P₁P₂)^nc`
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ProductTerm {
    pub central: Index3,
    pub lam: u32,
    pub nc: Index4,
    pub coef: Rational,
}

/// `[A, B]` for PBW-ordered `A < B` among `Q₁, Q₂, P₁, P₂`, as a rational
/// multiple of `λ` times one central generator.
#[derive(Clone, Debug)]
pub(crate) struct CommutatorTable {
    entries: [[Option<(Rational, usize)>; 4]; 4],
}

impl CommutatorTable {
    pub fn new(params: &DeformParams) -> Self {
        let alpha_inv = params.alpha.recip();
        let alpha_sq_inv = &alpha_inv * &alpha_inv;
        let mut entries: [[Option<(Rational, usize)>; 4]; 4] = Default::default();
        let mut set = |a: usize, b: usize, c: Rational, central: usize| {
            if !c.is_zero() {
                entries[a][b] = Some((c, central));
            }
        };
        // indices: 0 = Q₁, 1 = Q₂, 2 = P₁, 3 = P₂
        set(0, 1, &params.beta * &alpha_sq_inv, 1);
        set(0, 2, alpha_inv.clone(), 0);
        set(1, 3, alpha_inv, 0);
        set(2, 3, &params.gamma * &alpha_sq_inv, 2);
        CommutatorTable { entries }
    }

    /// `(Q₁Q₂P₁P₂)^a · (Q₁Q₂P₁P₂)^b` re-expressed in PBW order.
    pub fn raw_product(&self, a: &Index4, b: &Index4) -> Vec<ProductTerm> {
        let mut states = vec![ProductTerm {
            central: Index3::zero(),
            lam: 0,
            nc: *a,
            coef: Rational::one(),
        }];
        for t in 0..4 {
            let n = b.0[t];
            if n == 0 {
                continue;
            }
            let mut next = Vec::new();
            for st in states {
                self.push_right(st, t, n, &mut next);
            }
            states = merge(next);
        }
        states
    }

    /// Right-multiplies `st` by `G_t^n`, moving it left past every
    /// `g_s^{e}` with `s > t`.
    fn push_right(&self, st: ProductTerm, t: usize, n: u32, out: &mut Vec<ProductTerm>) {
        let mut partial = vec![(st, n)];
        for s in (t + 1..4).rev() {
            let Some((c, central)) = &self.entries[t][s] else {
                continue;
            };
            let mut next = Vec::with_capacity(partial.len());
            for (st, m) in partial {
                let e = st.nc.0[s];
                for k in 0..=m.min(e) {
                    let mut weight =
                        Rational::from_integer(factorial(k) * binomial(m, k) * binomial(e, k))
                            * num_traits::pow(c.clone(), k as usize);
                    if k % 2 == 1 {
                        weight = -weight;
                    }
                    let mut moved = st.clone();
                    moved.coef *= weight;
                    moved.central.0[*central] += k;
                    moved.lam += k;
                    moved.nc.0[s] -= k;
                    next.push((moved, m - k));
                }
            }
            partial = next;
        }
        for (mut st, m) in partial {
            st.nc.0[t] += m;
            out.push(st);
        }
    }
}

fn merge(terms: Vec<ProductTerm>) -> Vec<ProductTerm> {
    let mut acc: BTreeMap<(Index3, u32, Index4), Rational> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.central, t.lam, t.nc))
            .or_insert_with(Rational::zero) += t.coef;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((central, lam, nc), coef)| ProductTerm {
            central,
            lam,
            nc,
            coef,
        })
        .collect()
}

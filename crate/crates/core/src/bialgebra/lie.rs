use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};
use crate::series::Rational;
use crate::uea::{DeformParams, Generator};

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieData {
    names: Vec<String>,
    constants: Vec<Vec<Vec<Rational>>>,
}

impl LieData {
    pub fn new(names: Vec<String>, constants: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = names.len();
        for row in &constants {
            for col in row {
                if col.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: col.len(),
                    });
                }
            }
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        if constants.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: constants.len(),
            });
        }
        Ok(LieData { names, constants })
    }

    /// All constants zero.
    pub fn abelian(names: Vec<String>) -> Self {
        let n = names.len();
        LieData {
            names,
            constants: vec![vec![vec![Rational::zero(); n]; n]; n],
        }
    }

    /// `𝔤_NC^{α,β,γ}` on `Θ, Φ, Ψ, Q₁, Q₂, P₁, P₂`:
    /// `[Qᵢ,Pⱼ] = δᵢⱼΘ/α`, `[Q₁,Q₂] = βΦ/α²`, `[P₁,P₂] = γΨ/α²`.
    pub fn from_params(params: &DeformParams) -> Self {
        use Generator::*;
        let names = Generator::ALL
            .iter()
            .map(|g| g.token().to_string())
            .collect();
        let mut lie = LieData::abelian(names);
        let a_inv = params.alpha.recip();
        let a2_inv = &a_inv * &a_inv;
        lie.set(Q1, P1, Theta, a_inv.clone());
        lie.set(Q2, P2, Theta, a_inv);
        lie.set(Q1, Q2, Phi, &params.beta * &a2_inv);
        lie.set(P1, P2, Psi, &params.gamma * &a2_inv);
        lie
    }

    fn set(&mut self, a: Generator, b: Generator, c: Generator, v: Rational) {
        let (i, j, k) = (a.index(), b.index(), c.index());
        self.constants[j][i][k] = -v.clone();
        self.constants[i][j][k] = v;
    }

    /// Sets `c[i][j][k] = v` and `c[j][i][k] = −v`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.constants[j][i][k] = -v.clone();
        self.constants[i][j][k] = v;
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.constants[i][j][k] = v;
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[i][j][k]
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.constants
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        self.constants[i][j].clone()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| self.constants[i][j][k] == -self.constants[j][i][k].clone())
            })
        })
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let e = |m: usize| unit(self.dim(), m);
        let term = |a: usize, b: usize, c: usize| {
            self.bracket(&self.basis_bracket(a, b), &e(c))
                .expect("dimension")
        };
        let mut out = term(i, j, k);
        for (o, (x, y)) in out
            .iter_mut()
            .zip(term(j, k, i).into_iter().zip(term(k, i, j)))
        {
            *o += x + y;
        }
        out
    }

    /// Antisymmetry plus Jacobi on every triple `i < j < k`.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        report.push(if self.is_antisymmetric() {
            Check::ok("antisymmetry", "structure constants")
        } else {
            Check::failed("antisymmetry", "structure constants", "c[i][j] != -c[j][i]")
        });
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let subject =
                        format!("({},{},{})", self.names[i], self.names[j], self.names[k]);
                    let jac = self.jacobiator(i, j, k);
                    report.push(if jac.iter().all(Zero::is_zero) {
                        Check::ok("jacobi", subject)
                    } else {
                        Check::failed("jacobi", subject, format_vector(&jac, &self.names))
                    });
                }
            }
        }
        report
    }
}

/// `Σ c[i][j][k] xᵢ yⱼ e_k`
pub fn lie_bracket(x: &[Rational], y: &[Rational], lie: &LieData) -> Result<Vec<Rational>> {
    lie.bracket(x, y)
}

pub fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::from_integer(1.into());
    v
}

/// `c₁*e₁ + c₂*e₂ …` with the given basis names; `0` when empty.
pub fn format_vector(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let mut piece = String::new();
        crate::series::write_coeff_prefix(&mut piece, c, true);
        piece.push_str(name);
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
    out
}

impl fmt::Display for LieData {
    /// Nonzero brackets `[a,b] = …` for `a < b`, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut any = false;
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.constants[i][j];
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                if any {
                    writeln!(f)?;
                }
                any = true;
                write!(
                    f,
                    "[{},{}] = {}",
                    self.names[i],
                    self.names[j],
                    format_vector(v, &self.names)
                )?;
            }
        }
        if !any {
            f.write_str("abelian")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieData({self})")
    }
}

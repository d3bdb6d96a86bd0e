use num_traits::Zero;
use rayon::prelude::*;

use super::{Hopf, TensorElement};
use crate::multiindex::{factorial, MultiIndex};
use crate::report::{Check, VerificationReport};
use crate::series::{Rational, Series, Zeroed};
use crate::uea::{AlgebraElement, DeformParams, Generator, PbwMonomial};

fn subject(m: &PbwMonomial) -> String {
    let f = crate::uea::monomial_factors(m);
    if f.is_empty() {
        "1".into()
    } else {
        f.join("*")
    }
}

/// Exhaustive check of the Hopf axioms on every PBW monomial of generator
/// degree at most `max_degree`.
pub fn verify_hopf_axioms(max_degree: u32, params: &DeformParams) -> VerificationReport {
    Hopf::new(params.clone()).verify_axioms(max_degree)
}

impl Hopf {
    pub fn verify_axioms(&self, max_degree: u32) -> VerificationReport {
        // fill the coproduct cache one degree at a time so parallel workers
        // never recompute a shared prefix
        for deg in 0..=max_degree {
            PbwMonomial::all_of_degree(deg).par_iter().for_each(|m| {
                self.coproduct_monomial(m);
            });
        }
        let monomials = PbwMonomial::all_up_to(max_degree);
        let per_monomial: Vec<Vec<Check>> = monomials
            .par_iter()
            .map(|m| self.monomial_checks(m))
            .collect();

        let pairs: Vec<(Generator, Generator)> = Generator::ALL
            .iter()
            .flat_map(|&x| Generator::ALL.iter().map(move |&y| (x, y)))
            .filter(|(x, y)| x < y)
            .collect();
        let per_pair: Vec<Vec<Check>> = pairs
            .par_iter()
            .map(|&(x, y)| self.pair_checks(x, y))
            .collect();

        per_monomial.into_iter().chain(per_pair).flatten().collect()
    }

    /// Coassociativity, both counit laws, both antipode laws, and
    /// multiplicativity of `Δ` for one monomial.
    pub fn monomial_checks(&self, m: &PbwMonomial) -> Vec<Check> {
        let u = self.algebra();
        let x = u.monomial(*m);
        let name = subject(m);
        let delta = self.coproduct_monomial(m);
        let mut out = Vec::with_capacity(6);

        let left = self.coproduct_left(&delta);
        let right = self.coproduct_right(&delta);
        out.push(Check::equal("coassociativity", &name, &left, &right));

        out.push(Check::equal(
            "counit_left",
            &name,
            &self.counit_left(&delta),
            &x,
        ));
        out.push(Check::equal(
            "counit_right",
            &name,
            &self.counit_right(&delta),
            &x,
        ));

        let unit_counit = u.scalar(x.coefficient(&PbwMonomial::zero()));
        out.push(Check::equal(
            "antipode_left",
            &name,
            &self.antipode_left(&delta),
            &unit_counit,
        ));
        out.push(Check::equal(
            "antipode_right",
            &name,
            &self.antipode_right(&delta),
            &unit_counit,
        ));

        if m.norm() >= 2 {
            // split off the first generator: Δ(m) was built from the right
            let k = (0..7).find(|&k| m.0[k] > 0).unwrap();
            let g = Generator::from_index(k).monomial();
            let mut rest = *m;
            rest.0[k] -= 1;
            let dg = self.coproduct_monomial(&g);
            let dr = self.coproduct_monomial(&rest);
            let product = self.tensor_mul_unchecked(&dg, &dr);
            out.push(Check::equal(
                "coproduct_multiplicative",
                &name,
                &*delta,
                &product,
            ));

            // the reversed product is not PBW-ordered, so both sides differ
            // from the cached construction
            let reversed = u.mul_unchecked(&u.monomial(rest), &u.monomial(g));
            let lhs = self.coproduct(&reversed).unwrap();
            let rhs = self.tensor_mul_unchecked(&dr, &dg);
            out.push(Check::equal(
                "coproduct_multiplicative",
                format!("{}*{}", subject(&rest), subject(&g)),
                &lhs,
                &rhs,
            ));
        }
        out
    }

    /// `Δ([x,y]) = [Δx,Δy]` and `S([x,y]) = [S(y),S(x)]`.
    pub fn pair_checks(&self, x: Generator, y: Generator) -> Vec<Check> {
        let u = self.algebra();
        let (gx, gy) = (u.generator(x), u.generator(y));
        let name = format!("[{x},{y}]");
        let bracket = u.commutator(&gx, &gy).unwrap();

        let dx = self.coproduct(&gx).unwrap();
        let dy = self.coproduct(&gy).unwrap();
        let lhs = self.coproduct(&bracket).unwrap();
        let rhs = self.tensor_commutator(&dx, &dy).unwrap();
        let first = Check::equal("coproduct_bracket", &name, &lhs, &rhs);

        let sx = self.antipode(&gx).unwrap();
        let sy = self.antipode(&gy).unwrap();
        let lhs = self.antipode(&bracket).unwrap();
        let rhs = u.commutator(&sy, &sx).unwrap();
        let second = Check::equal("antipode_bracket", &name, &lhs, &rhs);
        vec![first, second]
    }
}

/// `sinh(2x)/(2x)` through the exponential series:
/// `(e^{2x} − e^{−2x})/(4x) = Σ_{n odd} 2^{n−1} x^{n−1} / n!`.
fn sinh_ratio_via_exp(max_power: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); max_power as usize + 1];
    for n in (1..=max_power + 1).step_by(2) {
        out[n as usize - 1] = Rational::new(num_bigint::BigInt::from(2).pow(n - 1), factorial(n));
    }
    out
}

/// Heisenberg limit: `α = 1`, `β = γ = 0`, `ℏ₂ = ℏ₃ = 0`, checked through
/// `ℏ`-degree `degree`.
pub fn heisenberg_limit_report(degree: u32) -> VerificationReport {
    let params = DeformParams::ints(1, 0, 0, degree).expect("α = 1");
    let hopf = Hopf::new(params);
    let u = hopf.algebra();
    let only_h1 = Zeroed::vars(&[2, 3]);
    let lim = |x: &AlgebraElement| x.limit(only_h1);
    let tlim = |t: &TensorElement| t.limit(only_h1);
    let mut report = VerificationReport::new();

    // Σ c_k ℏ₁^k Θ^{k+1}
    let mut sinh_theta = u.zero();
    for (k, c) in sinh_ratio_via_exp(degree).iter().enumerate() {
        let k = k as u32;
        let s = Series::monomial(MultiIndex([k, 0, 0]), c.clone(), degree);
        sinh_theta = &sinh_theta + &u.monomial(MultiIndex([k + 1, 0, 0, 0, 0, 0, 0])).scale(&s);
    }
    let qs = [Generator::Q1, Generator::Q2];
    let ps = [Generator::P1, Generator::P2];
    for (i, q) in qs.iter().enumerate() {
        for (j, p) in ps.iter().enumerate() {
            let got = lim(&u.commutator(&u.generator(*q), &u.generator(*p)).unwrap());
            let expected = if i == j { sinh_theta.clone() } else { u.zero() };
            report.push(Check::equal(
                "commutator_sinh",
                format!("[{q},{p}]"),
                &got,
                &expected,
            ));
        }
    }
    for (a, b) in [
        (Generator::Q1, Generator::Q2),
        (Generator::P1, Generator::P2),
    ] {
        let got = lim(&u.commutator(&u.generator(a), &u.generator(b)).unwrap());
        report.push(Check::equal(
            "commutator_zero",
            format!("[{a},{b}]"),
            &got,
            &u.zero(),
        ));
    }

    let theta = u.generator(Generator::Theta);
    let one = u.one();
    let primitive = &TensorElement::tensor(&theta, &one).unwrap()
        + &TensorElement::tensor(&one, &theta).unwrap();
    let got = tlim(&hopf.coproduct(&theta).unwrap());
    report.push(Check::equal("coproduct_primitive", "Th", &got, &primitive));

    // e^{±ℏ₁Θ} = Σ (±1)ⁿ ℏ₁ⁿ Θⁿ / n!
    let exp_h_theta = |sign: i64| {
        let mut acc = u.zero();
        for n in 0..=degree {
            let c = Rational::new(num_bigint::BigInt::from(sign).pow(n), factorial(n));
            let s = Series::monomial(MultiIndex([n, 0, 0]), c, degree);
            acc = &acc + &u.monomial(MultiIndex([n, 0, 0, 0, 0, 0, 0])).scale(&s);
        }
        acc
    };
    let (ep, em) = (exp_h_theta(1), exp_h_theta(-1));
    for g in qs.iter().chain(&ps) {
        let x = u.generator(*g);
        let expected =
            &TensorElement::tensor(&x, &ep).unwrap() + &TensorElement::tensor(&em, &x).unwrap();
        let got = tlim(&hopf.coproduct(&x).unwrap());
        report.push(Check::equal(
            "coproduct_exponential",
            g.token(),
            &got,
            &expected,
        ));
    }
    report
}

use super::{AlgebraElement, DeformParams, Generator, Uea};
use crate::report::{Check, VerificationReport};
use crate::series::Rational;

/// `[a, b]` for the defining relations, with `central` standing for
/// `Θ, Φ, Ψ` (times `λ` in `U`, times nothing after `φ`).
fn relation_rhs<F>(u: &Uea, a: Generator, b: Generator, central: F) -> AlgebraElement
where
    F: Fn(Generator) -> AlgebraElement,
{
    use Generator::*;
    let p = u.params();
    let a_inv = p.alpha.recip();
    let a2_inv = &a_inv * &a_inv;
    let (sign, (x, y)) = if a <= b { (1, (a, b)) } else { (-1, (b, a)) };
    let value: Option<(Generator, Rational)> = match (x, y) {
        (Q1, P1) | (Q2, P2) => Some((Theta, a_inv)),
        (Q1, Q2) => Some((Phi, &p.beta * &a2_inv)),
        (P1, P2) => Some((Psi, &p.gamma * &a2_inv)),
        _ => None,
    };
    match value {
        Some((c, r)) => central(c).scale_rational(&(r * Rational::from_integer(sign.into()))),
        None => u.zero(),
    }
}

/// `[Qᵢ,Pⱼ] = δᵢⱼλΘ/α`, `[Q₁,Q₂] = βλΦ/α²`, `[P₁,P₂] = γλΨ/α²`, all other
/// brackets zero, on every ordered pair of generators.
pub fn verify_relations(params: &DeformParams) -> VerificationReport {
    let u = Uea::new(params.clone());
    let lambda = u.lambda();
    let central = |g: Generator| u.mul(&lambda, &u.generator(g)).expect("same algebra");
    let mut report = VerificationReport::new();
    for a in Generator::ALL {
        for b in Generator::ALL {
            let got = u
                .commutator(&u.generator(a), &u.generator(b))
                .expect("same algebra");
            let expected = relation_rhs(&u, a, b, central);
            report.push(Check::equal(
                "relation",
                format!("[{a},{b}]"),
                &got,
                &expected,
            ));
        }
    }
    report
}

/// The same relations after `φ`, with `λ` absorbed:
/// `[φ(Qᵢ),φ(Pⱼ)] = δᵢⱼφ(Θ)/α` and so on.
pub fn verify_flatness(params: &DeformParams) -> VerificationReport {
    let u = Uea::new(params.clone());
    let phi = |g: Generator| u.phi(&u.generator(g)).expect("same algebra");
    let mut report = VerificationReport::new();
    for a in Generator::ALL {
        for b in Generator::ALL {
            let got = u.commutator(&phi(a), &phi(b)).expect("same algebra");
            let expected = relation_rhs(&u, a, b, phi);
            report.push(Check::equal(
                "flatness",
                format!("[φ({a}),φ({b})]"),
                &got,
                &expected,
            ));
        }
    }
    report
}

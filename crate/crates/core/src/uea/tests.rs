use proptest::prelude::*;

use super::*;
use crate::multiindex::MultiIndex;
use crate::series::{int, rat, Zeroed};

use Generator::*;

fn uea(alpha: Rational, beta: Rational, gamma: Rational, d: u32) -> Uea {
    Uea::new(DeformParams::new(alpha, beta, gamma, d).unwrap())
}

fn g(u: &Uea, x: Generator) -> AlgebraElement {
    u.generator(x)
}

fn comm(u: &Uea, a: Generator, b: Generator) -> AlgebraElement {
    u.commutator(&g(u, a), &g(u, b)).unwrap()
}

fn scaled(x: &AlgebraElement, r: Rational) -> AlgebraElement {
    x.scale_rational(&r)
}

#[test]
fn generators_are_unit_monomials() {
    let u = uea(int(1), int(0), int(0), 2);
    let th = g(&u, Theta);
    let terms: Vec<_> = th.terms().collect();
    assert_eq!(terms.len(), 1);
    assert_eq!(*terms[0].0, MultiIndex([1, 0, 0, 0, 0, 0, 0]));
    assert!(terms[0].1.is_one());
    assert_eq!(
        g(&u, Q1).terms().next().unwrap().0 .0,
        [0, 0, 0, 1, 0, 0, 0]
    );
    assert_eq!(
        g(&u, P2).terms().next().unwrap().0 .0,
        [0, 0, 0, 0, 0, 0, 1]
    );
}

#[test]
fn rho_construction() {
    let u = uea(int(1), int(1), int(1), 2);
    let rho = u.rho();
    let expected = &(&u.mul(&u.hbar(1), &g(&u, Theta)).unwrap()
        + &u.mul(&u.hbar(2), &g(&u, Phi)).unwrap())
        + &u.mul(&u.hbar(3), &g(&u, Psi)).unwrap();
    assert_eq!(rho, expected);
    assert_eq!(rho.len(), 3);

    let u0 = uea(int(1), int(1), int(1), 0);
    assert!(u0.rho().is_zero());

    let limited = rho.limit(Zeroed::vars(&[2, 3]));
    assert_eq!(limited, u.mul(&u.hbar(1), &g(&u, Theta)).unwrap());
}

#[test]
fn lambda_low_orders() {
    for d in [0, 1] {
        let u = uea(int(1), int(1), int(1), d);
        assert_eq!(u.lambda(), u.one());
    }
    let u = uea(int(1), int(1), int(1), 2);
    let rho = u.rho();
    let rho_sq = u.mul(&rho, &rho).unwrap();
    let expected = &u.one() + &scaled(&rho_sq, rat(2, 3));
    assert_eq!(u.lambda(), expected);
    // explicit multinomial form of the ℏ₁ℏ₂ cross term: 2·(2/3)
    let cross = u.lambda().coefficient(&MultiIndex([1, 1, 0, 0, 0, 0, 0]));
    assert_eq!(cross, Series::monomial(MultiIndex([1, 1, 0]), rat(4, 3), 2));
}

#[test]
fn lambda_theta_in_heisenberg_limit() {
    // λΘ = sinh(2ℏ₁Θ)/(2ℏ₁) with ℏ₂ = ℏ₃ = 0
    let d = 5;
    let u = uea(int(1), int(0), int(0), d);
    let lt = u
        .mul(&u.lambda(), &g(&u, Theta))
        .unwrap()
        .limit(Zeroed::vars(&[2, 3]));
    let coeffs = rho::sinh_ratio_coefficients(d as usize + 1);
    let mut expected = u.zero();
    for (k, c) in coeffs.iter().enumerate() {
        // c_k (ℏ₁Θ)^k Θ
        let m = MultiIndex([k as u32 + 1, 0, 0, 0, 0, 0, 0]);
        let s = Series::monomial(MultiIndex([k as u32, 0, 0]), c.clone(), d);
        expected = &expected + &u.monomial(m).scale(&s);
    }
    assert_eq!(lt, expected);
}

#[test]
fn exponential_of_rho() {
    let u = uea(int(2), int(1), int(-1), 2);
    assert_eq!(u.exp_rho(&int(0)), u.one());
    let rho = u.rho();
    let expected = &(&u.one() + &rho) + &scaled(&u.mul(&rho, &rho).unwrap(), rat(1, 2));
    assert_eq!(u.exp_rho(&int(1)), expected);
    for d in 0..=4 {
        let u = uea(int(1), int(1), int(1), d);
        let prod = u.mul(&u.exp_rho(&int(1)), &u.exp_rho(&int(-1))).unwrap();
        assert_eq!(prod, u.one(), "D = {d}");
        let prod = u
            .mul(&u.exp_rho(&rat(3, 2)), &u.exp_rho(&rat(-3, 2)))
            .unwrap();
        assert_eq!(prod, u.one(), "D = {d}");
    }
}

#[test]
fn defining_relations() {
    let u = uea(int(1), int(1), int(1), 1);
    assert_eq!(comm(&u, Q1, P1), g(&u, Theta));
    assert_eq!(comm(&u, Q1, Q2), g(&u, Phi));
    assert!(comm(&u, P1, Q2).is_zero());

    let u = uea(int(3), rat(1, 2), int(-2), 3);
    let lam = u.lambda();
    let lt = u.mul(&lam, &g(&u, Theta)).unwrap();
    assert_eq!(comm(&u, Q1, P1), scaled(&lt, rat(1, 3)));
    assert_eq!(comm(&u, Q2, P2), scaled(&lt, rat(1, 3)));
    let lp = u.mul(&lam, &g(&u, Phi)).unwrap();
    assert_eq!(comm(&u, Q1, Q2), scaled(&lp, rat(1, 18)));
    let ls = u.mul(&lam, &g(&u, Psi)).unwrap();
    assert_eq!(comm(&u, P1, P2), scaled(&ls, rat(-2, 9)));
    assert!(comm(&u, Q1, P2).is_zero());
}

#[test]
fn p1_squared_q1_squared_at_order_zero() {
    let u = uea(int(1), int(0), int(0), 0);
    let p1sq = u.pow(&g(&u, P1), 2).unwrap();
    let q1sq = u.pow(&g(&u, Q1), 2).unwrap();
    let got = u.mul(&p1sq, &q1sq).unwrap();
    let expected = &(&u.monomial(MultiIndex([0, 0, 0, 2, 0, 2, 0]))
        - &scaled(&u.monomial(MultiIndex([1, 0, 0, 1, 0, 1, 0])), int(4)))
        + &scaled(&u.monomial(MultiIndex([2, 0, 0, 0, 0, 0, 0])), int(2));
    assert_eq!(got, expected);
}

#[test]
fn commutator_basics() {
    let u = uea(int(2), int(1), int(3), 2);
    for x in Generator::ALL {
        assert!(comm(&u, Theta, x).is_zero());
        assert!(comm(&u, x, x).is_zero());
    }
    let lt = u.mul(&u.lambda(), &g(&u, Theta)).unwrap();
    assert_eq!(comm(&u, Q2, P2), scaled(&lt, rat(1, 2)));
    let x = &g(&u, Q1) + &u.mul(&g(&u, P1), &g(&u, Q2)).unwrap();
    assert!(u.commutator(&x, &x).unwrap().is_zero());
}

#[test]
fn params_mismatch_is_an_error() {
    let a = uea(int(1), int(0), int(0), 2);
    let b = uea(int(2), int(0), int(0), 2);
    assert_eq!(a.mul(&g(&a, Q1), &g(&b, P1)), Err(Error::ParamsMismatch));
    assert_eq!(g(&a, Q1).try_add(&g(&b, Q1)), Err(Error::ParamsMismatch));
}

#[test]
fn alpha_must_be_nonzero() {
    assert!(matches!(
        DeformParams::ints(0, 1, 1, 2),
        Err(Error::InvalidParams(_))
    ));
}

#[test]
fn classical_limits() {
    let u = uea(int(2), int(1), int(1), 3);
    assert_eq!(
        comm(&u, Q1, P1).classical_limit(),
        scaled(&g(&u, Theta), rat(1, 2))
    );
    assert_eq!(u.lambda().classical_limit(), u.one());
    assert_eq!(g(&u, Q1).classical_limit(), g(&u, Q1));
}

#[test]
fn centrality_of_rho_series() {
    let u = uea(int(1), int(2), int(-1), 3);
    let centrals = [u.rho(), u.lambda(), u.exp_rho(&int(2)), u.lambda_pow(-2)];
    for c in &centrals {
        assert!(c.is_central());
        for x in Generator::ALL {
            assert!(u.commutator(c, &g(&u, x)).unwrap().is_zero());
        }
    }
}

#[test]
fn lambda_reciprocal() {
    for d in 0..=5 {
        let u = uea(int(1), int(1), int(1), d);
        assert_eq!(u.mul(&u.lambda(), &u.lambda_pow(-1)).unwrap(), u.one());
    }
}

#[test]
fn z_basis_examples() {
    let u = uea(int(1), int(1), int(1), 1);
    let z = u.to_z_basis(&g(&u, Theta)).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(
        z.get(&ZMonomial::new(MultiIndex([1, 0, 0]), Index4::zero())),
        Some(&Series::one(1))
    );

    let q1q2 = u.mul(&g(&u, Q1), &g(&u, Q2)).unwrap();
    let z = u.to_z_basis(&q1q2).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(
        z.get(&ZMonomial::new(Index3::zero(), MultiIndex([1, 1, 0, 0]))),
        Some(&Series::one(1))
    );

    // Θ = Z^{(1,0,0)}·λ^{-1}: at D=2 the correction lives in central degree 3
    let u = uea(int(1), int(1), int(1), 2);
    let z = u.to_z_basis(&g(&u, Theta)).unwrap();
    assert_eq!(
        z.get(&ZMonomial::new(MultiIndex([1, 0, 0]), Index4::zero())),
        Some(&Series::one(2))
    );
    for (m, s) in &z {
        if m.central != MultiIndex([1, 0, 0]) {
            assert_eq!(m.central.norm(), 3);
            assert_eq!(s.order(), Some(2));
        }
    }
    assert_eq!(u.from_z_basis(&z), g(&u, Theta));
    // Z^{(3,0,0)} = (λΘ)³/6, Θ³ coefficient of λ^{-1}Θ is −(2/3)ℏ₁² → −4ℏ₁²
    assert_eq!(
        z.get(&ZMonomial::new(MultiIndex([3, 0, 0]), Index4::zero())),
        Some(&Series::monomial(MultiIndex([2, 0, 0]), int(-4), 2))
    );
}

#[test]
fn z_basis_round_trip() {
    for d in 0..=4 {
        let u = uea(int(2), int(-1), rat(1, 3), d);
        for m in Index7::all_up_to(3) {
            let x = u.monomial(m);
            let z = u.to_z_basis(&x).unwrap();
            assert_eq!(u.from_z_basis(&z), x, "D={d} m={m}");
        }
        for c in Index3::all_up_to(2) {
            for q in Index4::all_up_to(1) {
                let mut zm = ZMap::new();
                zm.insert(ZMonomial::new(c, q), Series::one(d));
                let back = u.to_z_basis(&u.from_z_basis(&zm)).unwrap();
                assert_eq!(back, zm);
            }
        }
    }
}

#[test]
fn phi_examples() {
    let u = uea(int(1), int(1), int(1), 1);
    assert_eq!(u.phi(&g(&u, Q1)).unwrap(), g(&u, Q1));

    let u = uea(int(2), int(3), int(-1), 3);
    let phi = |x: Generator| u.phi(&g(&u, x)).unwrap();
    assert_eq!(
        u.commutator(&phi(Q1), &phi(P1)).unwrap(),
        scaled(&phi(Theta), rat(1, 2))
    );
    assert_eq!(
        u.commutator(&phi(Q1), &phi(Q2)).unwrap(),
        scaled(&phi(Phi), rat(3, 4))
    );
}

#[test]
fn phi_is_multiplicative_from_the_undeformed_algebra() {
    let u = uea(int(1), rat(1, 2), int(2), 3);
    for a in Generator::ALL {
        for b in Generator::ALL {
            let xy = u.mul_classical(&g(&u, a), &g(&u, b)).unwrap();
            let lhs = u.phi(&xy).unwrap();
            let rhs = u
                .mul(&u.phi(&g(&u, a)).unwrap(), &u.phi(&g(&u, b)).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{a}·{b}");
        }
    }
}

#[test]
fn associativity_on_generator_triples() {
    let u = uea(int(2), int(-1), int(3), 3);
    for a in Generator::ALL {
        for b in Generator::ALL {
            let ab = u.mul(&g(&u, a), &g(&u, b)).unwrap();
            for c in Generator::ALL {
                let bc = u.mul(&g(&u, b), &g(&u, c)).unwrap();
                assert_eq!(
                    u.mul(&ab, &g(&u, c)).unwrap(),
                    u.mul(&g(&u, a), &bc).unwrap()
                );
            }
        }
    }
}

#[test]
fn ordered_monomials_are_fixed_points() {
    let u = uea(int(1), int(1), int(1), 2);
    for m in Index7::all_up_to(3) {
        let x = u.monomial(m);
        assert_eq!(u.mul(&u.one(), &x).unwrap(), x);
        assert_eq!(u.mul(&x, &u.one()).unwrap(), x);
        // product of its generators in PBW order
        let mut acc = u.one();
        for gen in Generator::ALL {
            for _ in 0..m.0[gen.index()] {
                acc = u.mul(&acc, &g(&u, gen)).unwrap();
            }
        }
        assert_eq!(acc, x);
    }
}

fn arb_monomial(max: u32) -> impl Strategy<Value = Index7> {
    prop::array::uniform7(0u32..=max)
        .prop_filter("degree", move |e| e.iter().sum::<u32>() <= max)
        .prop_map(MultiIndex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity_on_random_monomials(
        a in arb_monomial(3), b in arb_monomial(3), c in arb_monomial(3), d in 0u32..=3,
    ) {
        let u = uea(int(1), int(2), rat(-1, 2), d);
        let (x, y, z) = (u.monomial(a), u.monomial(b), u.monomial(c));
        let left = u.mul(&u.mul(&x, &y).unwrap(), &z).unwrap();
        let right = u.mul(&x, &u.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_stay_in_the_pbw_basis(a in arb_monomial(3), b in arb_monomial(3)) {
        let u = uea(int(3), int(1), int(1), 2);
        let p = u.mul(&u.monomial(a), &u.monomial(b)).unwrap();
        // re-ordering an already ordered element is the identity
        prop_assert_eq!(u.mul(&p, &u.one()).unwrap(), p.clone());
        // generator degree never grows, and the classical part has the summed degree
        let top = a.norm() + b.norm();
        for (m, _) in p.terms() {
            prop_assert!(m.norm() <= top + u.truncation());
        }
    }
}

#[test]
fn relation_and_flatness_reports() {
    for p in [
        DeformParams::ints(1, 1, 1, 2).unwrap(),
        DeformParams::new(rat(2, 3), int(-1), int(5), 3).unwrap(),
    ] {
        let r = verify_relations(&p);
        assert!(r.passed(), "{}", r.first_failure().unwrap());
        assert_eq!(r.count(), 49);
        let f = verify_flatness(&p);
        assert!(f.passed(), "{}", f.first_failure().unwrap());
    }
}

use proptest::prelude::*;

use super::*;
use crate::multiindex::MultiIndex;
use crate::series::{int, rat, Rational};

use Generator::*;

fn hopf(alpha: Rational, beta: Rational, gamma: Rational, d: u32) -> Hopf {
    Hopf::new(DeformParams::new(alpha, beta, gamma, d).unwrap())
}

fn t(h: &Hopf, x: &AlgebraElement, y: &AlgebraElement) -> TensorElement {
    h.tensor(x, y).unwrap()
}

#[test]
fn tensor_products_multiply_legwise() {
    let h = hopf(int(1), int(0), int(0), 2);
    let u = h.algebra();
    let (q1, p1, one) = (u.generator(Q1), u.generator(P1), u.one());
    let prod = h.tensor_mul(&t(&h, &q1, &one), &t(&h, &one, &p1)).unwrap();
    assert_eq!(prod, t(&h, &q1, &p1));
}

#[test]
fn tensor_commutators_of_coproduct_pieces() {
    let h = hopf(int(2), int(1), int(-1), 3);
    let u = h.algebra();
    let (q1, p1) = (u.generator(Q1), u.generator(P1));
    let (ep, em) = (u.exp_rho(&int(1)), u.exp_rho(&int(-1)));
    let a = t(&h, &q1, &ep);
    assert!(h.tensor_commutator(&a, &t(&h, &em, &p1)).unwrap().is_zero());

    let got = h.tensor_commutator(&a, &t(&h, &p1, &ep)).unwrap();
    let lt = u
        .mul(&u.lambda(), &u.generator(Theta))
        .unwrap()
        .scale_rational(&rat(1, 2));
    assert_eq!(got, t(&h, &lt, &u.exp_rho(&int(2))));
}

#[test]
fn coproduct_of_q1() {
    let h = hopf(int(1), int(1), int(1), 3);
    let u = h.algebra();
    let q1 = u.generator(Q1);
    let expected = &t(&h, &q1, &u.exp_rho(&int(1))) + &t(&h, &u.exp_rho(&int(-1)), &q1);
    assert_eq!(h.coproduct(&q1).unwrap(), expected);
}

#[test]
fn rho_is_primitive() {
    for d in 0..=4 {
        let h = hopf(int(1), int(2), int(3), d);
        let rho = h.algebra().rho();
        assert_eq!(h.coproduct(&rho).unwrap(), h.delta_rho(), "D = {d}");
    }
}

#[test]
fn theta_coproduct_at_first_order() {
    let h = hopf(int(1), int(1), int(1), 1);
    let u = h.algebra();
    let (th, one, rho) = (u.generator(Theta), u.one(), u.rho());
    let primitive = &t(&h, &th, &one) + &t(&h, &one, &th);
    let delta = h.coproduct(&th).unwrap();
    assert_eq!(delta.classical_limit(), primitive);
    // the first-order part is what the cocommutator sees
    let skew = (&t(&h, &th, &rho) - &t(&h, &rho, &th)).scale_rational(&int(2));
    assert_eq!(delta, &primitive + &skew);
}

#[test]
fn coproduct_of_lambda_theta() {
    let h = hopf(int(1), int(1), int(1), 3);
    let u = h.algebra();
    for g in [Theta, Phi, Psi] {
        let lx = u.mul(&u.lambda(), &u.generator(g)).unwrap();
        let expected = &t(&h, &lx, &u.exp_rho(&int(2))) + &t(&h, &u.exp_rho(&int(-2)), &lx);
        let got = h
            .tensor_mul(
                &h.coproduct(&u.lambda()).unwrap(),
                &h.coproduct(&u.generator(g)).unwrap(),
            )
            .unwrap();
        assert_eq!(got, expected);
        assert_eq!(h.coproduct(&lx).unwrap(), expected);
    }
}

#[test]
fn delta_lambda_inverse_two_ways() {
    for d in 0..=4 {
        let h = hopf(int(1), int(1), int(1), d);
        let inv = h.delta_lambda_inverse();
        let by_series = h.rho_function_coproduct(&RhoSeries::lambda(d).pow(-1));
        assert_eq!(*inv, by_series, "D = {d}");
        assert_eq!(
            h.tensor_mul(&h.delta_lambda(), inv).unwrap(),
            h.tensor_one()
        );
    }
}

#[test]
fn central_inverse_rejects_noncentral_input() {
    let h = hopf(int(1), int(0), int(0), 2);
    let u = h.algebra();
    let x = t(&h, &u.generator(Q1), &u.one());
    assert_eq!(h.central_tensor_inverse(&x), Err(Error::NonInvertible));
}

#[test]
fn counit_examples() {
    let h = hopf(int(1), int(1), int(1), 3);
    let u = h.algebra();
    assert!(h.counit(&u.generator(Q1)).unwrap().is_zero());
    let x = &u.one()
        + &u.mul(&u.hbar(1), &u.generator(Theta))
            .unwrap()
            .scale_rational(&int(3));
    assert!(h.counit(&x).unwrap().is_one());
    assert!(h.counit(&u.lambda()).unwrap().is_one());
}

#[test]
fn antipode_examples() {
    let h = hopf(int(2), int(1), int(1), 3);
    let u = h.algebra();
    let q1 = u.generator(Q1);
    assert_eq!(h.antipode(&q1).unwrap(), -&q1);
    assert_eq!(h.antipode(&u.lambda()).unwrap(), u.lambda());

    let q1p1 = u.mul(&q1, &u.generator(P1)).unwrap();
    let lt = u
        .mul(&u.lambda(), &u.generator(Theta))
        .unwrap()
        .scale_rational(&rat(1, 2));
    assert_eq!(h.antipode(&q1p1).unwrap(), &q1p1 - &lt);
}

#[test]
fn antipode_kills_p1() {
    let h = hopf(int(1), int(1), int(1), 3);
    let d = h.coproduct(&h.algebra().generator(P1)).unwrap();
    assert!(h.antipode_left(&d).is_zero());
    assert!(h.antipode_right(&d).is_zero());
}

#[test]
fn generators_are_primitive_classically() {
    let h = hopf(int(3), int(-1), rat(1, 2), 3);
    let u = h.algebra();
    for g in Generator::ALL {
        let x = u.generator(g);
        let diff = &h.coproduct(&x).unwrap() - &(&t(&h, &x, &u.one()) + &t(&h, &u.one(), &x));
        assert!(diff.classical_limit().is_zero(), "{g}");
        let skew = &h.coproduct(&x).unwrap() - &h.opposite_coproduct(&x).unwrap();
        assert!(skew.classical_limit().is_zero(), "{g}");
    }
}

#[test]
fn axioms_on_small_grid() {
    let report = verify_hopf_axioms(
        2,
        &DeformParams::new(int(2), int(-1), rat(1, 3), 2).unwrap(),
    );
    assert!(
        report.passed(),
        "{}",
        report
            .first_failure()
            .unwrap()
            .counterexample
            .as_deref()
            .unwrap_or("")
    );
}

#[test]
fn axioms_detect_a_wrong_antipode() {
    // the identity map in place of S breaks the antipode law for Q₁
    let h = hopf(int(1), int(0), int(0), 1);
    let q1 = MultiIndex([0, 0, 0, 1, 0, 0, 0]);
    let d = h.coproduct_monomial(&q1);
    let u = h.algebra();
    let mut acc = u.zero();
    for ((a, b), s) in d.terms() {
        acc = &acc + &u.mul(&u.monomial(*a), &u.monomial(*b)).unwrap().scale(s);
    }
    assert!(!acc.is_zero());
    assert!(h.antipode_left(&d).is_zero());
}

#[test]
fn heisenberg_limit() {
    let report = heisenberg_limit_report(3);
    assert!(report.passed(), "{report}");

    // [Q₁,P₁] = Θ + (2/3)ℏ₁²Θ³ at degree 3
    let u = Uea::new(DeformParams::ints(1, 0, 0, 3).unwrap());
    let got = u
        .commutator(&u.generator(Q1), &u.generator(P1))
        .unwrap()
        .limit(crate::series::Zeroed::vars(&[2, 3]));
    let h2 = Series::monomial(MultiIndex([2, 0, 0]), rat(2, 3), 3);
    let expected = &u.generator(Theta) + &u.monomial(MultiIndex([3, 0, 0, 0, 0, 0, 0])).scale(&h2);
    assert_eq!(got, expected);
}

fn arb_monomial(max: u32) -> impl Strategy<Value = PbwMonomial> {
    prop::array::uniform7(0u32..=max)
        .prop_filter("degree", move |e| e.iter().sum::<u32>() <= max)
        .prop_map(MultiIndex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_is_multiplicative(a in arb_monomial(2), b in arb_monomial(2)) {
        let h = hopf(int(1), int(2), int(-1), 2);
        let u = h.algebra();
        let (x, y) = (u.monomial(a), u.monomial(b));
        let lhs = h.coproduct(&u.mul(&x, &y).unwrap()).unwrap();
        let rhs = h.tensor_mul(&h.coproduct(&x).unwrap(), &h.coproduct(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_is_antimultiplicative(a in arb_monomial(2), b in arb_monomial(2)) {
        let h = hopf(int(2), int(1), int(1), 2);
        let u = h.algebra();
        let (x, y) = (u.monomial(a), u.monomial(b));
        let lhs = h.antipode(&u.mul(&x, &y).unwrap()).unwrap();
        let rhs = u.mul(&h.antipode(&y).unwrap(), &h.antipode(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

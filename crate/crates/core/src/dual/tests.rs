use proptest::prelude::*;

use super::*;
use crate::series::{int, rat};
use crate::uea::DeformParams;

fn h(i: usize, d: u32) -> Series {
    Series::hbar(i, d)
}

fn chi(k: usize, d: u32) -> DualElement {
    DualElement::chi(k, d).unwrap()
}

fn dm(w: [u32; 3], y: [u32; 4]) -> DualMonomial {
    DualMonomial::new(MultiIndex(w), MultiIndex(y))
}

fn element(terms: Vec<(DualMonomial, Series)>, d: u32) -> DualElement {
    DualElement::from_terms(terms, d)
}

#[test]
fn chi_indexing() {
    assert_eq!(DualMonomial::chi(1).unwrap(), dm([1, 0, 0], [0; 4]));
    assert_eq!(DualMonomial::chi(7).unwrap(), dm([0; 3], [0, 0, 0, 1]));
    assert!(DualMonomial::chi(0).is_err());
    assert!(DualMonomial::chi(8).is_err());
    assert_eq!(DualMonomial::all_up_to(1).len(), 8);
    assert_eq!(DualMonomial::all_up_to(2).len(), 36);
}

#[test]
fn y_times_w_picks_up_hbar() {
    let d = 2;
    let got = star_closed(&chi(4, d), &chi(1, d)).unwrap();
    let expected = element(
        vec![
            (dm([1, 0, 0], [1, 0, 0, 0]), Series::one(d)),
            (dm([0; 3], [1, 0, 0, 0]), h(1, d)),
        ],
        d,
    );
    assert_eq!(got, expected);
    let reversed = star_closed(&chi(1, d), &chi(4, d)).unwrap();
    let expected = element(
        vec![
            (dm([1, 0, 0], [1, 0, 0, 0]), Series::one(d)),
            (dm([0; 3], [1, 0, 0, 0]), -&h(1, d)),
        ],
        d,
    );
    assert_eq!(reversed, expected);
    assert_eq!(
        star_commutator(&chi(4, d), &chi(1, d)).unwrap(),
        chi(4, d).scale(&h(1, d).scale(&int(2)))
    );
}

#[test]
fn w_squares_and_mixed_w() {
    let d = 3;
    assert_eq!(
        star_closed(&chi(1, d), &chi(1, d)).unwrap(),
        DualElement::monomial(dm([2, 0, 0], [0; 4]), d)
    );
    let got = star_closed(&chi(1, d), &chi(2, d)).unwrap();
    let expected = element(
        vec![
            (dm([1, 1, 0], [0; 4]), Series::one(d)),
            (dm([0, 1, 0], [0; 4]), h(1, d).scale(&int(-2))),
            (dm([1, 0, 0], [0; 4]), h(2, d).scale(&int(2))),
        ],
        d,
    );
    assert_eq!(got, expected);
}

#[test]
fn truncation_drops_high_orders() {
    let a = dm([2, 0, 0], [0; 4]);
    let b = dm([0; 3], [1, 0, 0, 0]);
    let full = star_monomials(&b, &a, 3);
    let low = star_monomials(&b, &a, 1);
    assert_eq!(full.truncate_to(1), low);
    // Y·W² = W²Y + 2ℏ₁·W·Y·(|J|=1) + ℏ₁²·Y·1
    let expected = element(
        vec![
            (dm([2, 0, 0], [1, 0, 0, 0]), Series::one(3)),
            (dm([1, 0, 0], [1, 0, 0, 0]), h(1, 3).scale(&int(2))),
            (
                dm([0, 0, 0], [1, 0, 0, 0]),
                Series::monomial(MultiIndex([2, 0, 0]), int(1), 3),
            ),
        ],
        3,
    );
    assert_eq!(full, expected);
}

#[test]
fn unit_law() {
    let d = 2;
    for m in DualMonomial::all_up_to(2) {
        let u = DualElement::monomial(m, d);
        assert_eq!(star_closed(&DualElement::one(d), &u).unwrap(), u);
        assert_eq!(star_closed(&u, &DualElement::one(d)).unwrap(), u);
    }
}

#[test]
fn truncation_mismatch_is_an_error() {
    assert!(star_closed(&chi(1, 1), &chi(2, 2)).is_err());
    assert!(chi(1, 1).try_add(&chi(1, 2)).is_err());
    assert!(poisson_bracket_dir(&chi(1, 1), &chi(2, 1), 4).is_err());
}

#[test]
fn poisson_examples() {
    let d = 0;
    assert_eq!(
        poisson_bracket_dir(&chi(1, d), &chi(2, d), 2).unwrap(),
        chi(1, d).scale_rational(&int(4))
    );
    assert_eq!(
        poisson_bracket_dir(&chi(1, d), &chi(2, d), 1).unwrap(),
        chi(2, d).scale_rational(&int(-4))
    );
    assert_eq!(
        poisson_bracket_dir(&chi(4, d), &chi(1, d), 1).unwrap(),
        chi(4, d).scale_rational(&int(2))
    );
    assert!(poisson_bracket_dir(&chi(4, d), &chi(5, d), 1)
        .unwrap()
        .is_zero());
    assert!(poisson_bracket_dir(&chi(4, d), &chi(1, d), 2)
        .unwrap()
        .is_zero());
    assert_eq!(
        poisson_bracket_dir(&chi(6, d), &chi(3, d), 3).unwrap(),
        chi(6, d).scale_rational(&int(2))
    );
}

#[test]
fn structure_constants_direction_one() {
    let lie = dual_structure_constants(1).unwrap();
    let mut expected =
        crate::bialgebra::LieData::abelian((1..=7).map(|k| format!("x{k}")).collect());
    expected.set_antisymmetric(0, 1, 1, int(-4));
    expected.set_antisymmetric(0, 2, 2, int(-4));
    for k in 3..7 {
        expected.set_antisymmetric(k, 0, k, int(2));
    }
    assert_eq!(lie, expected);
    assert!(lie.verify().passed());
}

#[test]
fn structure_constants_are_linear_in_every_direction() {
    for i in 1..=3 {
        let lie = dual_structure_constants(i).unwrap();
        assert!(lie.is_antisymmetric());
        assert!(lie.verify().passed(), "direction {i}");
    }
}

#[test]
fn oracle_reproduces_unit_and_classical_product() {
    let oracle = StarOracle::new(DeformParams::new(int(1), int(1), int(1), 1).unwrap());
    for a in DualMonomial::all_up_to(2) {
        let got = oracle.star_oracle(
            &a,
            &DualMonomial::one(),
            default_cap(&a, &DualMonomial::one(), 1),
        );
        assert_eq!(got, DualElement::monomial(a, 1), "{a}");
    }
    let (x1, x2) = (DualMonomial::chi(1).unwrap(), DualMonomial::chi(2).unwrap());
    let got = oracle.star_oracle(&x1, &x2, default_cap(&x1, &x2, 1));
    assert_eq!(
        got.constant_term(),
        DualElement::monomial(dm([1, 1, 0], [0; 4]), 1)
    );
}

#[test]
fn oracle_matches_closed_formula_on_generators() {
    let params = DeformParams::new(int(2), int(-1), rat(1, 3), 2).unwrap();
    let oracle = StarOracle::new(params);
    for a in 1..=7 {
        for b in 1..=7 {
            let (u, v) = (chi(a, 2), chi(b, 2));
            let exact = oracle.star(&u, &v).unwrap();
            let closed = star_closed(&u, &v).unwrap();
            assert_eq!(exact.truncate_to(1), closed.truncate_to(1), "χ{a}*χ{b}");
        }
    }
}

#[test]
fn pruned_oracle_equals_exhaustive() {
    let oracle = StarOracle::new(DeformParams::new(int(1), int(2), int(3), 1).unwrap());
    let grid = DualMonomial::all_up_to(1);
    for a in &grid {
        for b in &grid {
            let cap = default_cap(a, b, 1);
            assert_eq!(
                oracle.star_oracle(a, b, cap),
                oracle.star_oracle_exhaustive(a, b, cap),
                "{a}, {b}"
            );
        }
    }
}

#[test]
fn classical_coproduct_on_divided_powers() {
    // at D = 0 the coproduct of Z^S X^T is Σ Z^{S'}X^{T'} ⊗ Z^{S−S'}X^{T−T'}
    let params = DeformParams::new(int(1), int(1), int(1), 0).unwrap();
    let z = ZMonomial::new(MultiIndex([1, 0, 1]), MultiIndex([1, 0, 2, 0]));
    let tensor = delta_on_zbasis(&z, &params);
    let mut count = 0;
    for s in z.central.box_below() {
        for t in z.qp.box_below() {
            let left = ZMonomial::new(s, t);
            let right = ZMonomial::new(
                z.central.checked_sub(&s).unwrap(),
                z.qp.checked_sub(&t).unwrap(),
            );
            assert_eq!(
                tensor.get(&(left, right)),
                Some(&Series::one(0)),
                "{left} ⊗ {right}"
            );
            count += 1;
        }
    }
    assert_eq!(tensor.len(), count);
}

#[test]
fn pairing_examples() {
    let params = DeformParams::new(int(1), int(1), int(1), 2).unwrap();
    let u = crate::uea::Uea::new(params.clone());
    let theta = u
        .to_z_basis(&u.generator(crate::uea::Generator::Theta))
        .unwrap();
    let w1 = chi(1, 2);
    // Θ = Z^{e1} − (2/3)ρ² Z^{e1} + …, so ⟨W^{e1}, Θ⟩ = 1
    assert_eq!(pairing(&w1, &theta), Series::one(2));
    assert!(pairing(&chi(4, 2), &theta).is_zero());
    let z = ZMonomial::new(MultiIndex([1, 0, 0]), MultiIndex([1, 0, 0, 0]));
    let t = delta_on_zbasis(&z, &params);
    assert_eq!(pairing_tensor(&chi(1, 2), &chi(4, 2), &t), Series::one(2));
}

#[test]
fn json_round_trip() {
    let x = star_closed(&chi(4, 2), &chi(1, 2)).unwrap();
    let back = DualElement::from_json(&x.to_json(), 2).unwrap();
    assert_eq!(back, x);
    let text = serde_json::to_string(&x.to_json()).unwrap();
    let parsed: DualJson = serde_json::from_str(&text).unwrap();
    assert_eq!(DualElement::from_json(&parsed, 2).unwrap(), x);
}

#[test]
fn display() {
    assert_eq!(DualMonomial::one().to_string(), "1");
    assert_eq!(
        dm([1, 0, 2], [0, 1, 0, 0]).to_string(),
        "W[1,0,2]*Y[0,1,0,0]"
    );
    assert_eq!(chi(4, 1).to_string(), "Y[1,0,0,0]");
}

#[test]
fn small_gate_passes() {
    let params = DeformParams::new(int(1), int(1), int(1), 1).unwrap();
    let report = verify_star(1, &params);
    assert!(report.passed(), "{}", report.first_failure().unwrap());
}

fn arb_dual(max: u32) -> impl Strategy<Value = DualMonomial> {
    proptest::collection::vec(0..=max, 7)
        .prop_filter("norm", move |v| v.iter().sum::<u32>() <= max)
        .prop_map(|v| dm([v[0], v[1], v[2]], [v[3], v[4], v[5], v[6]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative_to_first_order(a in arb_dual(2), b in arb_dual(2), c in arb_dual(2)) {
        let (u, v, w) = (DualElement::monomial(a, 1), DualElement::monomial(b, 1), DualElement::monomial(c, 1));
        let left = star_closed(&star_closed(&u, &v).unwrap(), &w).unwrap();
        let right = star_closed(&u, &star_closed(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn classical_part_is_commutative_product(a in arb_dual(3), b in arb_dual(3)) {
        let (u, v) = (DualElement::monomial(a, 2), DualElement::monomial(b, 2));
        let got = star_closed(&u, &v).unwrap().constant_term();
        prop_assert_eq!(got, commutative_product(&u, &v).unwrap());
    }

    #[test]
    fn brackets_are_antisymmetric(a in arb_dual(3), b in arb_dual(3), i in 1usize..=3) {
        let (u, v) = (DualElement::monomial(a, 0), DualElement::monomial(b, 0));
        let uv = poisson_bracket_dir(&u, &v, i).unwrap();
        let vu = poisson_bracket_dir(&v, &u, i).unwrap();
        prop_assert!((&uv + &vu).is_zero());
    }
}

use fedcalc::algebra::*;
use fedcalc::random::{Probe, Shape};
use proptest::prelude::*;

const U: u32 = UNTRUNCATED;

fn sign(e: i32) -> Rational {
    if e.rem_euclid(2) == 1 {
        Rational::from_int(-1)
    } else {
        Rational::one()
    }
}

fn deg<K: Key>(a: &Series<K>) -> i32 {
    a.homogeneous_degree().unwrap_or(0)
}

fn shape(d: usize, dx: u32) -> Shape {
    Shape::new(d, U).terms(2).x_deg(1).y_deg(2).dx(dx)
}

fn op(p: &mut Probe, d: usize) -> PolyDiffOp {
    let rank = p.below(2) as usize;
    let dx = p.below(1);
    p.diffop(&shape(d, dx), rank, 2)
}

fn pv(p: &mut Probe, d: usize) -> PolyVector {
    let ar = p.below(2);
    let dx = p.below(1);
    p.polyvector(&shape(d, dx), ar)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gerstenhaber_jacobi(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let (a, b, c) = (op(&mut p, 2), op(&mut p, 2), op(&mut p, 2));
        let (ka, kb, kc) = (deg(&a), deg(&b), deg(&c));
        let mut s = a.gerstenhaber(&b).gerstenhaber(&c).scale(&sign(ka * kc));
        s.add_assign(&b.gerstenhaber(&c).gerstenhaber(&a).scale(&sign(kb * ka)));
        s.add_assign(&c.gerstenhaber(&a).gerstenhaber(&b).scale(&sign(kc * kb)));
        prop_assert!(s.is_zero(), "{:?}", s);
    }

    #[test]
    fn gerstenhaber_antisymmetry(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let (a, b) = (op(&mut p, 3), op(&mut p, 3));
        let lhs = a.gerstenhaber(&b);
        let rhs = b.gerstenhaber(&a).scale(&sign(deg(&a) * deg(&b))).neg();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_jacobi_and_antisymmetry(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let (a, b, c) = (pv(&mut p, 3), pv(&mut p, 3), pv(&mut p, 3));
        let (ka, kb, kc) = (deg(&a), deg(&b), deg(&c));
        let mut s = a.schouten(&b).schouten(&c).scale(&sign(ka * kc));
        s.add_assign(&b.schouten(&c).schouten(&a).scale(&sign(kb * ka)));
        s.add_assign(&c.schouten(&a).schouten(&b).scale(&sign(kc * kb)));
        prop_assert!(s.is_zero(), "{:?}", s);
        prop_assert_eq!(a.schouten(&b), b.schouten(&a).scale(&sign(ka * kb)).neg());
    }

    #[test]
    fn module_axiom(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let (a, b) = (op(&mut p, 2), op(&mut p, 2));
        let slots = p.below(2) as usize + 2;
        let dx = p.below(1);
        let ch = p.chain(&shape(2, dx).y_deg(3), slots);
        let lhs = a.gerstenhaber(&b).chain_action(&ch);
        let mut rhs = a.chain_action(&b.chain_action(&ch));
        rhs.sub_assign(&b.chain_action(&a.chain_action(&ch)).scale(&sign(deg(&a) * deg(&b))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let a = op(&mut p, 2);
        prop_assert!(a.hochschild_d().hochschild_d().is_zero());
        let slots = p.below(2) as usize + 2;
        let dx = p.below(1);
        let ch = p.chain(&shape(3, dx).y_deg(4), slots);
        prop_assert!(ch.hochschild_b().hochschild_b().is_zero());
    }

    #[test]
    fn action_of_boundary(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let a = op(&mut p, 2);
        let k = deg(&a);
        let slots = p.below(2) as usize + 2;
        let dx = p.below(1);
        let ch = p.chain(&shape(2, dx).y_deg(3), slots);
        let lhs = a.hochschild_d().chain_action(&ch);
        let mut rhs = a.chain_action(&ch).hochschild_b();
        rhs.sub_assign(&a.chain_action(&ch.hochschild_b()).scale(&sign(k)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hkr_lands_in_cocycles(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let g = pv(&mut p, 3);
        prop_assert!(g.hkr().hochschild_d().is_zero());
    }

    #[test]
    fn connes_kills_boundaries(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let slots = p.below(2) as usize + 2;
        let dx = p.below(1);
        let ch = p.chain(&shape(3, dx).y_deg(4), slots);
        prop_assert!(ch.hochschild_b().connes().is_zero());
    }

    #[test]
    fn lie_derivative_is_an_action(seed in any::<u64>()) {
        let mut p = Probe::new(seed);
        let (a, b) = (pv(&mut p, 3), pv(&mut p, 3));
        let cdeg = p.below(2);
        let dx = p.below(1);
        let w = p.eform(&shape(3, dx), cdeg);
        let lhs = a.schouten(&b).lie_derivative(&w);
        let mut rhs = a.lie_derivative(&b.lie_derivative(&w));
        rhs.sub_assign(&b.lie_derivative(&a.lie_derivative(&w)).scale(&sign(deg(&a) * deg(&b))));
        prop_assert_eq!(lhs, rhs);
    }
}

fn y(d: usize, idx: &[usize]) -> SmElement {
    SmElement::normalize(d, U, [(RawKey { y: idx.to_vec(), ..Default::default() }, XPoly::one())]).unwrap()
}

fn dop(d: usize, slots: &[&[usize]], yy: &[usize]) -> PolyDiffOp {
    let raw = RawKey { y: yy.to_vec(), slots: slots.iter().map(|s| s.to_vec()).collect(), ..Default::default() };
    PolyDiffOp::normalize(d, U, [(raw, XPoly::one())]).unwrap()
}

#[test]
fn bracket_with_function_applies_operator() {
    let phi = dop(2, &[&[0, 1]], &[0]);
    let a = y(2, &[0, 1, 1]);
    let got = phi.gerstenhaber(&PolyDiffOp::from_function(&a)).to_function();
    assert_eq!(got, phi.eval(&[a]));
}

#[test]
fn bracket_of_first_order_operators_is_commutator() {
    let mut p = Probe::new(7);
    let v1 = dop(2, &[&[0]], &[1]).add(&dop(2, &[&[1]], &[0, 0]));
    let v2 = dop(2, &[&[1]], &[1, 1]);
    let br = v1.gerstenhaber(&v2);
    for _ in 0..10 {
        let a = p.sm(&Shape::new(2, U).y_deg(4).x_deg(1));
        let want = v1.eval(&[v2.eval(std::slice::from_ref(&a))]).sub(&v2.eval(&[v1.eval(std::slice::from_ref(&a))]));
        assert_eq!(br.eval(&[a]), want);
    }
}

#[test]
fn insertion_matches_composition() {
    let outer = dop(2, &[&[1]], &[0]);
    let inner = dop(2, &[&[0]], &[1]);
    let comp = outer.insert_compose(0, &inner);
    let a = y(2, &[0, 0, 1, 1]);
    assert_eq!(comp.eval(std::slice::from_ref(&a)), outer.eval(&[inner.eval(&[a])]));
    let id = PolyDiffOp::identity(2, U);
    assert_eq!(outer.insert_compose(0, &id), outer);
}

#[test]
fn rank_one_action_on_single_slot() {
    let phi = dop(2, &[&[0]], &[1]);
    let a = y(2, &[0, 0]);
    let got = phi.chain_action(&ChainElement::tensor(std::slice::from_ref(&a)));
    assert_eq!(got, ChainElement::tensor(&[phi.eval(&[a])]));
}

#[test]
fn hkr_examples() {
    let d1 = PolyVector::dy(2, U, 0);
    assert_eq!(d1.hkr(), dop(2, &[&[0]], &[]));
    let f = PolyVector::from_function(&y(2, &[1]));
    assert_eq!(f.hkr(), PolyDiffOp::from_function(&y(2, &[1])));
    let th = d1.wedge(&PolyVector::dy(2, U, 1));
    let h = th.hkr();
    assert_eq!(h, dop(2, &[&[0], &[1]], &[]).sub(&dop(2, &[&[1], &[0]], &[])));
    assert!(h.hochschild_d().is_zero());
}

#[test]
fn connes_examples() {
    let a0 = y(2, &[0]);
    assert_eq!(ChainElement::tensor(std::slice::from_ref(&a0)).connes(), EForm::from_function(&a0));
    let a1 = y(2, &[0, 1]);
    let got = ChainElement::tensor(&[a0, a1]).connes();
    let want = EForm::normalize(
        2,
        U,
        [
            (RawKey { y: vec![0, 1], c: vec![0], ..Default::default() }, XPoly::one()),
            (RawKey { y: vec![0, 0], c: vec![1], ..Default::default() }, XPoly::one()),
        ],
    )
    .unwrap();
    assert_eq!(got, want);
}

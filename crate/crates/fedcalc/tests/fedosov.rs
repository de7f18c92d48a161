use fedcalc::algebra::*;
use fedcalc::fedosov::base::{function, taylor, to_base, to_fiber};
use fedcalc::fedosov::*;
use fedcalc::random::{Probe, Shape};
use proptest::prelude::*;

const N: u32 = 6;

fn x(i: usize) -> XPoly {
    XPoly::var(i)
}

fn curved() -> FedosovData {
    FedosovData::compute(&Connection::curved_fixture(), N)
}

fn random_fd(seed: u64, dim: usize) -> FedosovData {
    FedosovData::compute(&Connection::random(&mut Probe::new(seed), dim, 3, 2), N)
}

fn pv(d: usize, dx: &[usize], dy: &[usize], y: &[usize], c: XPoly) -> PolyVector {
    PolyVector::normalize(d, N, [(RawKey { dx: dx.to_vec(), dy: dy.to_vec(), y: y.to_vec(), ..Default::default() }, c)])
        .unwrap()
}

fn assert_d_squared(fd: &FedosovData, seed: u64) {
    let d = fd.dim();
    let mut p = Probe::new(seed);
    let s = Shape::new(d, N).terms(3).y_deg(N).x_deg(2);
    for _ in 0..4 {
        let dx = p.below(1);
        let s = s.dx(dx);
        let a = p.sm(&s);
        assert!(fd.d(&fd.d(&a)).below(N - 2).vanishes());
        let ar = p.below(2);
        let v = p.polyvector(&s, ar);
        assert!(fd.d(&fd.d(&v)).below(N - 2).vanishes());
        let o = p.diffop(&s, 2, 1);
        assert!(fd.d(&fd.d(&o)).below(N - 2).vanishes());
        let o2 = p.diffop(&s, 2, 2);
        assert!(fd.d(&fd.d(&o2)).below(N - 3).vanishes());
        let w = p.eform(&s, 1);
        assert!(fd.d(&fd.d(&w)).below(N - 2).vanishes());
        let c = p.chain(&s, 2);
        assert!(fd.d(&fd.d(&c)).below(N - 2).vanishes());
    }
}

#[test]
fn flat_connection() {
    let fd = FedosovData::compute(&Connection::flat(2), N);
    assert!(fd.a().is_zero());
    let a = function(2, N, &x(0))
        .add(&SmElement::normalize(2, N, [(RawKey { y: vec![0], ..Default::default() }, XPoly::one())]).unwrap());
    assert!(fd.d(&a).is_zero());
    let mut p = Probe::new(5);
    let b = p.sm(&Shape::new(2, N).dx(1));
    assert_eq!(fd.d(&b), b.d().sub(&Fiberwise::delta(&b)));
    assert_eq!(fd.conjugator(), PolyDiffOp::identity(2, N));
}

#[test]
fn curved_fixture_resolution() {
    let fd = curved();
    assert!(fd.iterations() <= N as usize);
    assert!(fd.a().delta_inv().is_zero());
    assert_eq!(fd.a().min_y_degree(), Some(2));
    // leading term is δ⁻¹𝓡
    let r = fd.connection().curvature(N);
    assert_eq!(fd.a().filter(|k| k.y.degree() == 2), r.delta_inv());
    assert!(fd.a().terms().all(|(k, _)| k.dx.len() == 1 && k.dy.len() == 1));
    // re-applying the iteration is the identity
    let again = FedosovData::compute(fd.connection(), N);
    assert_eq!(again.a(), fd.a());
    assert_d_squared(&fd, 11);
}

#[test]
fn random_connection_resolution() {
    for seed in [1u64, 2] {
        let fd = random_fd(seed, 2 + seed as usize % 2);
        assert!(fd.iterations() <= N as usize + 1);
        assert!(fd.a().delta_inv().is_zero());
        assert_d_squared(&fd, seed + 40);
    }
}

#[test]
fn mc_element_of_the_resolution() {
    let flat = FedosovData::compute(&Connection::flat(2), N);
    assert!(flat.mc_residual().is_zero());
    for fd in [curved(), random_fd(9, 2)] {
        assert!(fd.mc_residual().up_to_degree(N - 1).is_zero());
    }
}

#[test]
fn flat_tau_is_taylor() {
    let fd = FedosovData::compute(&Connection::flat(2), N);
    let y1 = SmElement::normalize(2, N, [(RawKey { y: vec![0], ..Default::default() }, XPoly::one())]).unwrap();
    assert_eq!(fd.tau_function(&x(0)), function(2, N, &x(0)).add(&y1));
    let mut p = Probe::new(17);
    for _ in 0..20 {
        let f = p.xpoly(2, 4);
        assert_eq!(fd.tau_function(&f), taylor(2, N, &f));
    }
}

#[test]
fn tau_rejects_non_base_input() {
    let fd = curved();
    let a = SmElement::normalize(2, N, [(RawKey { y: vec![0], ..Default::default() }, XPoly::one())]).unwrap();
    assert_eq!(fd.tau(&a), Err(LiftError::NotFlat));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lifts_are_flat_sections(seed in any::<u64>()) {
        let fd = if seed % 3 == 0 { random_fd(seed, 2) } else { curved() };
        let mut p = Probe::new(seed);
        let f = p.xpoly(2, 3);
        let t = fd.tau_function(&f);
        prop_assert_eq!(value_of(&t.sigma()), f.clone());
        prop_assert!(fd.d(&t).below(N - 2).is_zero());
        // multiplicativity
        let g = p.xpoly(2, 2);
        let tg = fd.tau_function(&g);
        prop_assert_eq!(fd.tau_function(&f.mul(&g)).up_to_degree(N - 2), t.graded_mul(&tg).up_to_degree(N - 2));
        // polyvectors and operators in ker δ
        let v = pv(2, &[], &[0], &[], p.xpoly(2, 2)).add(&pv(2, &[], &[0, 1], &[], p.xpoly(2, 1)));
        let tv = fd.tau(&v).unwrap();
        prop_assert_eq!(tv.sigma(), v);
        prop_assert!(fd.d(&tv).below(N - 2).is_zero());
        let o = p.diffop(&Shape::new(2, N).y_deg(0).terms(2), 2, 1);
        let to = fd.tau(&o).unwrap();
        prop_assert_eq!(to.sigma(), o);
        prop_assert!(fd.d(&to).below(N - 2).is_zero());
        // forms in C
        let c1 = p.below(2);
        let w = p.eform(&Shape::new(2, N).y_deg(0).terms(2), c1);
        let tw = fd.tau(&w).unwrap();
        prop_assert_eq!(tw.sigma(), w.clone());
        prop_assert!(fd.d(&tw).below(N - 2).is_zero());
        prop_assert_eq!(tw.fiber_d().up_to_degree(N - 2), fd.tau(&w.base_d()).unwrap().up_to_degree(N - 2));
        let c2 = p.below(1);
        let w2 = p.eform(&Shape::new(2, N).y_deg(0).terms(2), c2);
        let lhs = fd.tau(&w.graded_mul(&w2)).unwrap();
        prop_assert_eq!(lhs.up_to_degree(N - 2), tw.graded_mul(&fd.tau(&w2).unwrap()).up_to_degree(N - 2));
    }

    #[test]
    fn varrho_is_flat(seed in any::<u64>()) {
        let fd = if seed % 2 == 0 { random_fd(seed, 2) } else { curved() };
        let mut p = Probe::new(seed);
        let slots = 1 + p.below(2) as usize;
        let mut a = p.chain(&Shape::new(2, N).x_deg(0).y_deg(3), slots);
        a = a.filter(|_| true);
        let r = fd.varrho(&a).unwrap();
        prop_assert!(fd.d(&r).below(N - 2).is_zero());
        // at y = 0 every slot evaluates to the base polynomial
        let at_zero = r.filter(|k| k.slots.iter().all(|m| m.is_zero()));
        let mut want = XPoly::zero();
        for (k, c) in a.terms() {
            let m = k.slots.iter().fold(Multi::ZERO, |s, m| s.add(m));
            want.add_assign(&XPoly::monomial(m, c.as_constant().unwrap()));
        }
        let got: XPoly = at_zero.terms().fold(XPoly::zero(), |s, (_, c)| s.add(c));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn lie_compatibility(seed in any::<u64>()) {
        let fd = if seed % 2 == 0 { random_fd(seed, 2) } else { curved() };
        let mut p = Probe::new(seed);
        let ar = p.below(2);
        let gamma = p.polyvector(&Shape::new(2, U).y_deg(0).x_deg(2).terms(2), ar);
        let c = p.below(2);
        let a = p.eform(&Shape::new(2, U).y_deg(0).x_deg(2).terms(2), c);
        let base_l = to_base(&to_fiber(&gamma).lie_derivative(&to_fiber(&a)));
        let lhs = fd.tau(&base_l.with_order(N)).unwrap();
        let lifted = fd.tau(&fd.nu_inv_polyvector(&gamma).unwrap()).unwrap();
        let rhs = lifted.lie_derivative(&fd.tau(&a.with_order(N)).unwrap());
        prop_assert_eq!(lhs.up_to_degree(N - 2), rhs.up_to_degree(N - 2));
    }
}

const U: u32 = UNTRUNCATED;

fn value_of(a: &SmElement) -> XPoly {
    fedcalc::fedosov::base::value_at_zero(a)
}

#[test]
fn flat_varrho_example() {
    let fd = FedosovData::compute(&Connection::flat(2), N);
    let a =
        ChainElement::normalize(2, U, [(RawKey { slots: vec![vec![0], vec![1]], ..Default::default() }, XPoly::one())])
            .unwrap();
    let want = ChainElement::tensor(&[taylor(2, N, &x(0)), taylor(2, N, &x(1))]);
    assert_eq!(fd.varrho(&a).unwrap(), want);
}

#[test]
fn nu_examples() {
    let fd = curved();
    let d1 = PolyVector::dy(2, N, 0);
    assert_eq!(fd.nu_polyvector(&d1).unwrap(), PolyVector::dy(2, U, 0));
    let th = pv(2, &[], &[0, 1], &[], XPoly::one());
    assert_eq!(fd.nu_polyvector(&th).unwrap(), th.with_order(U));
    let mu = PolyDiffOp::mu(2, N);
    assert_eq!(fd.nu_diffop(&mu).unwrap(), PolyDiffOp::mu(2, U));
    let d1op = d1.hkr();
    assert_eq!(fd.nu_diffop(&d1op).unwrap(), d1op.with_order(U));
}

#[test]
fn nu_of_second_order_operator_sees_the_connection() {
    let fd = curved();
    // v = ∂_{y²}∂_{y²}; τ(a) carries −½Γ¹₂₂ (y²)² ∂₁a, so νv = ∂₂² − x¹ ∂₁
    let v = PolyDiffOp::normalize(2, N, [(RawKey { slots: vec![vec![1, 1]], ..Default::default() }, XPoly::one())])
        .unwrap();
    let nv = fd.nu_diffop(&v).unwrap();
    let want = PolyDiffOp::normalize(
        2,
        U,
        [
            (RawKey { slots: vec![vec![1, 1]], ..Default::default() }, XPoly::one()),
            (RawKey { slots: vec![vec![0]], ..Default::default() }, x(0).neg()),
        ],
    )
    .unwrap();
    assert_eq!(nv, want);
    let back = fd.nu_inv_diffop(&nv).unwrap();
    assert_eq!(back, v);
    let mut p = Probe::new(4);
    for _ in 0..5 {
        let b = p.diffop(&Shape::new(2, U).y_deg(0).terms(3), 2, 2);
        let v = fd.nu_inv_diffop(&b).unwrap();
        assert_eq!(fd.nu_diffop(&v).unwrap(), b);
    }
}

#[test]
fn conjugator() {
    for fd in [curved(), random_fd(21, 2)] {
        let p = fd.conjugator();
        assert_eq!(p.filter(|k| k.y.is_zero() && k.slots[0].is_zero()), PolyDiffOp::identity(2, N));
        assert!(fd.conjugator_residual(&p).up_to_degree(N - 2).is_zero());
        let mut pr = Probe::new(8);
        for _ in 0..10 {
            let a = pr.sm(&Shape::new(2, N).y_deg(N).x_deg(2));
            let lhs = fd.d0(&p.apply(&a));
            let rhs = p.apply(&fd.d(&a));
            assert!(lhs.sub(&rhs).up_to_degree(N - 2).is_zero());
        }
    }
    // leading correction δ⁻¹(−T) in lowest y-degree
    let fd = curved();
    let p = fd.conjugator();
    let t = fd.t_field().hkr();
    let lead = t.neg().delta_inv();
    let lowest = |o: &PolyDiffOp| o.filter(|k| k.y.degree() == 2);
    assert_eq!(lowest(&p.sub(&PolyDiffOp::identity(2, N))).filter(|k| k.slots[0].degree() == 1), lowest(&lead));
}

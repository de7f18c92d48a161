use std::sync::Arc;

use fedcalc::algebra::Rational;
use fedcalc::linfty::toy::{self, FinVec, W, X, Y, Z};
use fedcalc::linfty::{
    compose, mc_pushforward, mc_residual, relation_check_algebra, relation_check_module,
    relation_check_module_morphism, relation_check_morphism, twist_algebra, twist_module, twist_module_morphism,
    twist_morphism, Element, Filtration, HbarSeries, MorphismTable, TableError,
};

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn diamond_probes() -> Vec<FinVec> {
    vec![toy::diamond_basis(X), toy::diamond_basis(Y), toy::diamond_basis(Z)]
}

#[test]
fn toy_algebras_are_dglas() {
    for q in [toy::diamond(), toy::line()] {
        let probes = if q.name == "L" { vec![toy::u()] } else { diamond_probes() };
        let rep = relation_check_algebra(&q, &probes, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
    let club: Vec<FinVec> = (0..4).map(toy::club_basis).collect();
    assert!(relation_check_algebra(&toy::club(), &club, 3).unwrap().passed());
}

#[test]
fn two_term_morphism_constant() {
    let (l, ld) = (toy::line(), toy::diamond());
    let good = relation_check_morphism(&toy::two_term_morphism(r(2)), &l, &ld, &[toy::u()], 4).unwrap();
    assert!(good.passed(), "{good:?}");
    for c in [0, 1, -2, 3] {
        let bad = relation_check_morphism(&toy::two_term_morphism(r(c)), &l, &ld, &[toy::u()], 4).unwrap();
        assert_eq!(bad.first_failure(), Some(2), "c = {c}");
    }
}

#[test]
fn inclusion_morphism_is_a_morphism() {
    let rep = relation_check_morphism(&toy::inclusion_morphism(), &toy::diamond(), &toy::club(), &diamond_probes(), 4)
        .unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn toy_modules() {
    let probes = [toy::module_basis(0), toy::module_basis(1)];
    let rep = relation_check_module(&toy::shift_module("M"), &toy::line(), &[toy::u()], &probes, 3).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let (m, n) = (toy::shift_module("M"), toy::shift_module("N"));
    let k = toy::module_morphism(r(1), r(1));
    let rep = relation_check_module_morphism(&k, &m, &n, &toy::line(), &[toy::u()], &probes, 3).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let k = toy::module_morphism(r(1), r(-1));
    let rep = relation_check_module_morphism(&k, &m, &n, &toy::line(), &[toy::u()], &probes, 3).unwrap();
    assert!(!rep.passed());
}

fn hbar_u(n: usize) -> HbarSeries<FinVec> {
    HbarSeries::monomial(&toy::u(), 1, n)
}

#[test]
fn pushforward_of_toy_morphism() {
    let n = 4;
    let f = toy::two_term_morphism(r(2)).over_hbar(n);
    let pi = hbar_u(n);
    assert!(mc_residual(&toy::line().over_hbar(n), &pi, Filtration::Hbar(n)).unwrap().is_zero());
    let s = mc_pushforward(&f, &pi, Filtration::Hbar(n)).unwrap();
    // S = ħx + ħ²y
    assert_eq!(s.coeff(1), &toy::diamond_basis(X));
    assert_eq!(s.coeff(2), &toy::diamond_basis(Y));
    assert!(s.coeff(3).is_zero());
    let res = mc_residual(&toy::diamond().over_hbar(n), &s, Filtration::Hbar(n)).unwrap();
    assert!(res.is_zero(), "{res:?}");
    // a non-morphism pushes forward to a non-MC element
    let s1 = mc_pushforward(&toy::two_term_morphism(r(1)).over_hbar(n), &pi, Filtration::Hbar(n)).unwrap();
    let res = mc_residual(&toy::diamond().over_hbar(n), &s1, Filtration::Hbar(n)).unwrap();
    assert_eq!(res.valuation(), Some(2));
}

#[test]
fn functoriality() {
    let n = 4;
    let filt = Filtration::Hbar(n);
    let f = toy::two_term_morphism(r(2)).over_hbar(n);
    let g = toy::inclusion_morphism().over_hbar(n);
    let pi = hbar_u(n);
    let s = mc_pushforward(&f, &pi, filt).unwrap();
    let lhs = twist_morphism(&compose(&f, &g), &pi, filt).unwrap();
    let rhs = compose(&twist_morphism(&f, &pi, filt).unwrap(), &twist_morphism(&g, &s, filt).unwrap());
    let probes = [HbarSeries::monomial(&toy::u(), 0, n), hbar_u(n), HbarSeries::monomial(&toy::u(), 2, n)];
    for a in &probes {
        assert_eq!(lhs.f(std::slice::from_ref(a)).unwrap(), rhs.f(std::slice::from_ref(a)).unwrap());
        for b in &probes {
            assert_eq!(lhs.f(&[a.clone(), b.clone()]).unwrap(), rhs.f(&[a.clone(), b.clone()]).unwrap());
        }
    }
    let _ = W;
}

#[test]
fn twisted_module_morphism_is_a_chain_map() {
    let n = 4;
    let filt = Filtration::Hbar(n);
    let pi = hbar_u(n);
    let (m, nn) = (toy::shift_module("M").over_hbar(n), toy::shift_module("N").over_hbar(n));
    let k = toy::module_morphism(r(3), r(3)).over_hbar(n);
    let (mp, np, kp) = (
        twist_module(&m, &pi, filt).unwrap(),
        twist_module(&nn, &pi, filt).unwrap(),
        twist_module_morphism(&k, &pi, filt).unwrap(),
    );
    for i in 0..2 {
        let v = HbarSeries::monomial(&toy::module_basis(i), 0, n);
        let lhs = kp.kappa(&[], &mp.phi(&[], &v).unwrap()).unwrap();
        let rhs = np.phi(&[], &kp.kappa(&[], &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    // the twisted differential is nonzero: v₀ ↦ ħ v₁
    let v0 = HbarSeries::monomial(&toy::module_basis(0), 0, n);
    assert_eq!(mp.phi(&[], &v0).unwrap(), HbarSeries::monomial(&toy::module_basis(1), 1, n));
}

#[test]
fn twisting_back() {
    let n = 3;
    let filt = Filtration::Hbar(n);
    let q = toy::diamond().over_hbar(n);
    let s = mc_pushforward(&toy::two_term_morphism(r(2)).over_hbar(n), &hbar_u(n), filt).unwrap();
    let tw = twist_algebra(&q, &s, filt).unwrap();
    let back = twist_algebra(&tw, &s.scale(&r(-1)), filt).unwrap();
    for i in [X, Y, Z] {
        let e = HbarSeries::monomial(&toy::diamond_basis(i), 0, n);
        assert_eq!(back.l(std::slice::from_ref(&e)).unwrap(), q.l(std::slice::from_ref(&e)).unwrap());
    }
    // [S, x] is visible in the twisted differential
    let x = HbarSeries::monomial(&toy::diamond_basis(X), 0, n);
    assert_eq!(
        tw.l(std::slice::from_ref(&x)).unwrap(),
        HbarSeries::monomial(&toy::diamond_basis(Z), 1, n).scale(&r(-2))
    );
}

#[test]
fn capacity_is_reported() {
    let f = toy::two_term_morphism(r(2));
    let short = MorphismTable::from_shifted("short", f.zero().clone(), vec![], false);
    assert!(matches!(short.f(&[toy::u()]), Err(TableError::Capacity { needed: 1, .. })));
    let n = 3;
    let partial = MorphismTable::from_antisymmetric(
        "partial",
        HbarSeries::monomial(&toy::diamond_basis(X).zero_like(), 0, n),
        vec![Arc::new(|a: &[HbarSeries<FinVec>]| a[0].scale(&r(0)))],
        false,
    );
    let err = mc_pushforward(&partial, &hbar_u(n), Filtration::Hbar(n)).unwrap_err();
    assert!(matches!(err, TableError::Capacity { needed: 2, available: 1, .. }), "{err}");
    assert!(matches!(
        mc_residual(&toy::line(), &toy::module_basis(0), Filtration::Hbar(1)),
        Err(TableError::DegreeMismatch { expected: 1, .. })
    ));
}

mod instances {
    use std::sync::Arc;

    use fedcalc::algebra::{ChainElement, EForm, PolyDiffOp, PolyVector};
    use fedcalc::fedosov::{Connection, FedosovData};
    use fedcalc::linfty::instances::{chains, diffops, forms, polyvectors};
    use fedcalc::linfty::{
        mc_residual, relation_check_algebra, relation_check_module, twist_algebra, twist_differential, twist_module,
        AlgebraTable, Filtration, MapFn, ModFn, ModuleTable,
    };
    use fedcalc::random::{Probe, Shape};

    const N: u32 = 6;

    fn shape(dim: usize, dx: u32) -> Shape {
        Shape::new(dim, N).terms(2).x_deg(2).y_deg(2).dx(dx)
    }

    fn pv_probes(p: &mut Probe, dim: usize) -> Vec<PolyVector> {
        [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 1)]
            .iter()
            .map(|&(dx, a)| p.polyvector(&shape(dim, dx), a))
            .collect()
    }

    fn do_probes(p: &mut Probe, dim: usize) -> Vec<PolyDiffOp> {
        [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)].iter().map(|&(dx, r)| p.diffop(&shape(dim, dx), r, 1)).collect()
    }

    fn chain_probes(p: &mut Probe, dim: usize) -> Vec<ChainElement> {
        [(0, 1), (0, 2), (0, 3), (1, 2)].iter().map(|&(dx, s)| p.chain(&shape(dim, dx), s)).collect()
    }

    fn form_probes(p: &mut Probe, dim: usize) -> Vec<EForm> {
        [(0, 0), (0, 1), (1, 1), (0, 2)].iter().map(|&(dx, c)| p.eform(&shape(dim, dx), c)).collect()
    }

    #[test]
    fn polyvector_dgla() {
        let mut p = Probe::new(11);
        for dim in [2, 3] {
            let probes = pv_probes(&mut p, dim);
            let rep = relation_check_algebra(&polyvectors(dim, N), &probes, 3).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.rows.iter().map(|r| r.tuples).collect::<Vec<_>>(), [6, 21, 56]);
        }
    }

    #[test]
    fn diffop_dgla() {
        let mut p = Probe::new(12);
        let probes = do_probes(&mut p, 2);
        let rep = relation_check_algebra(&diffops(2, N), &probes, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn chain_module() {
        let mut p = Probe::new(13);
        let (ops, vs) = (do_probes(&mut p, 2), chain_probes(&mut p, 2));
        let rep = relation_check_module(&chains(2, N), &diffops(2, N), &ops[..4], &vs, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn form_module() {
        let mut p = Probe::new(14);
        let (pvs, vs) = (pv_probes(&mut p, 2), form_probes(&mut p, 2));
        let rep = relation_check_module(&forms(2, N), &polyvectors(2, N), &pvs, &vs, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn mutations_are_flagged() {
        let mut p = Probe::new(15);
        let probes = pv_probes(&mut p, 2);
        let dim = 2;

        // bracket without the décalage sign
        let d: MapFn<PolyVector, PolyVector> = Arc::new(|a: &[PolyVector]| a[0].d());
        let b: MapFn<PolyVector, PolyVector> = Arc::new(|a: &[PolyVector]| a[0].schouten(&a[1]));
        let q = AlgebraTable::from_shifted("unsigned", PolyVector::new(dim, N), vec![d, b], true);
        let rep = relation_check_algebra(&q, &probes, 3).unwrap();
        assert!(!rep.passed());

        // differential d + dx¹∧
        let q = AlgebraTable::from_dgla(
            "shifted d",
            PolyVector::new(dim, N),
            |a| a.d().add(&a.dx_left(0)),
            |a, b| a.schouten(b),
        );
        let rep = relation_check_algebra(&q, &probes, 3).unwrap();
        assert_eq!(rep.first_failure(), Some(2));

        // negated action on chains
        let ops = do_probes(&mut p, dim);
        let vs = chain_probes(&mut p, dim);
        let good = chains(dim, N);
        let b: ModFn<PolyDiffOp, ChainElement, ChainElement> =
            Arc::new(|_: &[PolyDiffOp], v: &ChainElement| v.d().add(&v.hochschild_b()));
        let r: ModFn<PolyDiffOp, ChainElement, ChainElement> =
            Arc::new(|a: &[PolyDiffOp], v: &ChainElement| a[0].chain_action(v).neg());
        let bad = ModuleTable::from_antisymmetric("negated", good.zero().clone(), vec![b, r], true);
        let rep = relation_check_module(&bad, &diffops(dim, N), &ops[..3], &vs, 2).unwrap();
        assert!(!rep.passed());
    }

    fn fixture(conn: &Connection) -> FedosovData {
        FedosovData::compute(conn, N)
    }

    #[test]
    fn fedosov_form_is_maurer_cartan() {
        let mut p = Probe::new(16);
        for conn in [Connection::flat(2), Connection::curved_fixture()] {
            let fd = fixture(&conn);
            let b = fd.mc_element().clone();
            let q = polyvectors(2, N);
            let filt = Filtration::Nilpotent(2);
            assert!(mc_residual(&q, &b, filt).unwrap().is_zero());
            let dd = twist_differential(&q, &b, filt).unwrap();
            let probes = pv_probes(&mut p, 2);
            for x in &probes {
                assert_eq!(dd(x), fd.d(x));
            }
            // twisting back by −B
            let tw = twist_algebra(&q, &b, filt).unwrap();
            let back = twist_algebra(&tw, &b.neg(), filt).unwrap();
            for x in &probes {
                assert_eq!(back.l(std::slice::from_ref(x)).unwrap(), x.d());
            }
            // forms: φ^B_0 = d + L_B
            let fm = twist_module(&forms(2, N), &b, filt).unwrap();
            for w in form_probes(&mut p, 2) {
                assert_eq!(fm.phi(&[], &w).unwrap(), fd.d(&w));
            }
        }
    }

    #[test]
    fn non_poisson_bivector_is_not_maurer_cartan() {
        use fedcalc::linfty::HbarSeries;
        let n = 3;
        let mut p = Probe::new(17);
        let alpha = loop {
            let a = p.polyvector(&Shape::new(3, N).terms(2).x_deg(0).y_deg(1), 2);
            if !a.schouten(&a).is_zero() {
                break a;
            }
        };
        let q3 = polyvectors(3, N).over_hbar(n);
        let pi = HbarSeries::monomial(&alpha, 1, n);
        let res = mc_residual(&q3, &pi, Filtration::Hbar(n)).unwrap();
        assert_eq!(res.valuation(), Some(2));
        assert_eq!(res.coeff(2), &alpha.schouten(&alpha).scale(&fedcalc::algebra::Rational::new(1, 2)));
    }
}

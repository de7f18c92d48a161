//! End-to-end acceptance: nine criteria, exact arithmetic, one status line each.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use fedcalc::algebra::*;
use fedcalc::cli::{suites, Scenario};
use fedcalc::fedosov::base::{to_base, to_fiber, value_at_zero};
use fedcalc::fedosov::{Connection, Contractible, FedosovData, Fiberwise};
use fedcalc::linfty::instances::{chains, diffops, forms, polyvectors};
use fedcalc::linfty::{self, toy, AlgebraTable, Element, Filtration, HbarSeries};
use fedcalc::quantization::{
    moyal_product, star_mc_check, twisted_chain_differential, twisted_form_differential, ConstPoisson,
};
use fedcalc::random::{Probe, Shape};

const N: u32 = 6;
const U: u32 = UNTRUNCATED;

/// Running tally for one criterion.
#[derive(Default)]
struct Tally {
    probes: usize,
    failures: Vec<String>,
}

impl Tally {
    fn zero<E: Element>(&mut self, what: &str, r: &E) {
        self.probes += 1;
        if !r.is_zero() && self.failures.len() < 5 {
            self.failures.push(format!("{what}: {} residual terms", r.term_count()));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        self.probes += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what.to_string());
        }
    }

    fn done(self, note: String) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(format!("{} probes, {note}", self.probes))
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn e<T>(r: Result<T, linfty::TableError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sign(e: i32) -> Rational {
    Rational::sign(e as i64)
}

fn deg<K: Key>(a: &Series<K>) -> i32 {
    a.homogeneous_degree().unwrap_or(0)
}

fn hodge<K: FiberKey>(t: &mut Tally, name: &str, a: &Series<K>)
where
    Series<K>: Contractible,
{
    t.zero(&format!("δ² {name}"), &Fiberwise::delta(&Fiberwise::delta(a)));
    t.zero(&format!("(δ⁻¹)² {name}"), &a.delta_inv().delta_inv());
    let r = a.sub(&Contractible::sigma(a)).sub(&Fiberwise::delta(&a.delta_inv())).sub(&Fiberwise::delta(a).delta_inv());
    t.zero(&format!("Hodge {name}"), &r);
}

fn homotopy_calculus() -> Result<String, String> {
    let start = Instant::now();
    let mut t = Tally::default();
    let per_family = 200;
    for d in [2usize, 3] {
        let mut p = Probe::new(100 + d as u64);
        for n in 0..per_family {
            let dx = (n % (d + 1)) as u32;
            let s = Shape::new(d, N).terms(4).x_deg(3).y_deg(N - dx).dx(dx);
            hodge(&mut t, "sm", &p.sm(&s));
            let ar = p.below(d as u32);
            hodge(&mut t, "pv", &p.polyvector(&s, ar));
            let rank = p.below(2) as usize;
            hodge(&mut t, "do", &p.diffop(&s, rank, 2));
            let c = p.below(d as u32);
            hodge(&mut t, "ef", &p.eform(&s, c));
            let slots = 1 + p.below(2) as usize;
            let ch = p.chain(&s, slots);
            t.zero("δ² chain", &Fiberwise::delta(&Fiberwise::delta(&ch)));
        }
        for n in 0..100 {
            let dx = 1 + (n % d) as u32;
            let s = Shape::new(d, N).terms(4).x_deg(3).y_deg(N - dx).dx(dx);
            let slots = 1 + p.below(2) as usize;
            let b = p.chain(&s, slots);
            t.zero("δh + hδ − id", &Fiberwise::delta(&b.h_chain()).add(&Fiberwise::delta(&b).h_chain()).sub(&b));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    t.holds(&format!("runtime {secs:.1}s over 60s"), secs < 60.0);
    t.done(format!("{per_family} per family per dimension, {secs:.1}s"))
}

fn bracket_axioms() -> Result<String, String> {
    let mut t = Tally::default();
    let mut p = Probe::new(2);
    for d in [2usize, 3] {
        let sh = |p: &mut Probe| {
            let dx = p.below(1);
            Shape::new(d, U).terms(2).x_deg(1).y_deg(2).dx(dx)
        };
        let op = |p: &mut Probe| {
            let rank = p.below(2) as usize;
            let s = sh(p);
            p.diffop(&s, rank, 2)
        };
        let pv = |p: &mut Probe| {
            let ar = p.below(2);
            let s = sh(p);
            p.polyvector(&s, ar)
        };
        for _ in 0..40 {
            let (a, b, c) = (op(&mut p), op(&mut p), op(&mut p));
            let (ka, kb, kc) = (deg(&a), deg(&b), deg(&c));
            let mut j = a.gerstenhaber(&b).gerstenhaber(&c).scale(&sign(ka * kc));
            j.add_assign(&b.gerstenhaber(&c).gerstenhaber(&a).scale(&sign(kb * ka)));
            j.add_assign(&c.gerstenhaber(&a).gerstenhaber(&b).scale(&sign(kc * kb)));
            t.zero("Jacobi [,]_G", &j);
            t.zero("antisymmetry [,]_G", &a.gerstenhaber(&b).add(&b.gerstenhaber(&a).scale(&sign(ka * kb))));
            t.zero("∂²", &a.hochschild_d().hochschild_d());

            let (u, v, w) = (pv(&mut p), pv(&mut p), pv(&mut p));
            let (ku, kv, kw) = (deg(&u), deg(&v), deg(&w));
            let mut j = u.schouten(&v).schouten(&w).scale(&sign(ku * kw));
            j.add_assign(&v.schouten(&w).schouten(&u).scale(&sign(kv * ku)));
            j.add_assign(&w.schouten(&u).schouten(&v).scale(&sign(kw * kv)));
            t.zero("Jacobi [,]_SN", &j);
            t.zero("antisymmetry [,]_SN", &u.schouten(&v).add(&v.schouten(&u).scale(&sign(ku * kv))));

            let slots = 2 + p.below(2) as usize;
            let s = sh(&mut p);
            let ch = p.chain(&s, slots);
            t.zero("𝔟²", &ch.hochschild_b().hochschild_b());
            let lhs = a.gerstenhaber(&b).chain_action(&ch);
            let mut rhs = a.chain_action(&b.chain_action(&ch));
            rhs.sub_assign(&b.chain_action(&a.chain_action(&ch)).scale(&sign(ka * kb)));
            t.zero("R_[Φ,Ψ] = [R_Φ, R_Ψ]", &lhs.sub(&rhs));
            let lhs = a.hochschild_d().chain_action(&ch);
            let mut rhs = a.chain_action(&ch).hochschild_b();
            rhs.sub_assign(&a.chain_action(&ch.hochschild_b()).scale(&sign(ka)));
            t.zero("R_∂Φ", &lhs.sub(&rhs));
        }
    }
    t.done("ranks ≤ 2, slot orders ≤ 2, d = 2, 3".into())
}

fn comparison_maps() -> Result<String, String> {
    let mut t = Tally::default();
    let mut p = Probe::new(3);
    for n in 0..60 {
        let d = 2 + n % 2;
        let dx = p.below(1);
        let s = Shape::new(d, U).terms(3).x_deg(2).y_deg(3).dx(dx);
        let ar = p.below(d as u32);
        let g = p.polyvector(&s, ar);
        t.zero("∂ hkr", &g.hkr().hochschild_d());
        let slots = 1 + p.below(3) as usize;
        let ch = p.chain(&s, slots);
        t.zero("𝔠𝔟", &ch.hochschild_b().connes());
        let (ka, kb, kw) = (p.below(2), p.below(2), p.below(2));
        let (a, b) = (p.polyvector(&s.dx(0), ka), p.polyvector(&s, kb));
        let w = p.eform(&s, kw);
        let lhs = a.schouten(&b).lie_derivative(&w);
        let mut rhs = a.lie_derivative(&b.lie_derivative(&w));
        rhs.sub_assign(&b.lie_derivative(&a.lie_derivative(&w)).scale(&sign(deg(&a) * deg(&b))));
        t.zero("L_[γ₁,γ₂]", &lhs.sub(&rhs));
    }
    t.done("60 each".into())
}

fn fiber_probes(p: &mut Probe, d: usize, n: usize) -> Vec<(SmElement, PolyVector, PolyDiffOp, EForm, ChainElement)> {
    (0..n)
        .map(|_| {
            let dx = p.below(1);
            let s = Shape::new(d, N).terms(3).x_deg(2).y_deg(N).dx(dx);
            let ar = p.below(2);
            (p.sm(&s), p.polyvector(&s, ar), p.diffop(&s, 2, 1), p.eform(&s, 1), p.chain(&s, 2))
        })
        .collect()
}

fn fedosov_construction() -> Result<String, String> {
    let mut t = Tally::default();
    let mut p = Probe::new(4);
    let random = Connection::random(&mut p, 2, 3, 2);
    for conn in [Connection::curved_fixture(), random] {
        let fd = FedosovData::compute(&conn, N);
        t.holds("iterations within N", fd.iterations() <= N as usize);
        t.zero("δ⁻¹A", &fd.a().delta_inv());
        t.holds("A ≠ 0 for a curved connection", !fd.a().is_zero());
        for (a, v, o, w, c) in fiber_probes(&mut p, 2, 8) {
            t.zero("D² sm", &fd.d(&fd.d(&a)).below(N - 2));
            t.zero("D² pv", &fd.d(&fd.d(&v)).below(N - 2));
            t.zero("D² do", &fd.d(&fd.d(&o)).below(N - 2));
            t.zero("D² ef", &fd.d(&fd.d(&w)).below(N - 2));
            t.zero("D² ch", &fd.d(&fd.d(&c)).below(N - 2));
            // second-order slots: one degree is lost to truncation
            let o2 = p.diffop(&Shape::new(2, N).terms(3).y_deg(N), 2, 2);
            t.zero("D² do (order 2)", &fd.d(&fd.d(&o2)).below(N - 3));
        }
    }
    let flat = FedosovData::compute(&Connection::flat(3), N);
    t.zero("flat A", flat.a());
    for (a, v, o, w, c) in fiber_probes(&mut p, 3, 8) {
        t.holds("flat D sm", flat.d(&a) == flat.d0(&a));
        t.holds("flat D pv", flat.d(&v) == flat.d0(&v));
        t.holds("flat D do", flat.d(&o) == flat.d0(&o));
        t.holds("flat D ef", flat.d(&w) == flat.d0(&w));
        t.holds("flat D ch", flat.d(&c) == flat.d0(&c));
    }
    t.done(format!("curved fixture and a random connection, N = {N}"))
}

/// Independent oracle: `Σ_{|α| ≤ n} ∂^α f · y^α / α!`.
fn taylor_oracle(d: usize, n: u32, f: &XPoly) -> SmElement {
    let mut out = SmElement::new(d, n);
    let mut stack = vec![(Multi::ZERO, 0usize)];
    while let Some((alpha, from)) = stack.pop() {
        let mut fact = Rational::one();
        for i in 0..d {
            for k in 1..=alpha.get(i) {
                fact = &fact * &Rational::from_int(k as i64);
            }
        }
        out.add_term(SmKey { dx: Mask::EMPTY, y: alpha }, &f.partial_multi(&alpha).scale(&fact.recip()));
        if alpha.degree() < n {
            for i in from..d {
                stack.push((alpha.inc(i), i));
            }
        }
    }
    out
}

fn lifts() -> Result<String, String> {
    let mut t = Tally::default();
    let mut p = Probe::new(5);
    let random = Connection::random(&mut p, 2, 3, 2);
    let mut compat = 0;
    for conn in [Connection::curved_fixture(), random] {
        let fd = FedosovData::compute(&conn, N);
        for _ in 0..12 {
            let f = p.xpoly(2, 3);
            let tf = fd.tau_function(&f);
            t.holds("στ = id", value_at_zero(&tf.sigma()) == f && tf.sigma().len() <= f.len());
            t.zero("Dτ", &fd.d(&tf).below(N - 2));
            let g = p.xpoly(2, 2);
            t.zero(
                "τ(fg) − τfτg",
                &fd.tau_function(&f.mul(&g)).sub(&tf.graded_mul(&fd.tau_function(&g))).up_to_degree(N - 2),
            );
            let c = p.below(2);
            let w = p.eform(&Shape::new(2, N).y_deg(0).terms(2), c);
            let tw = fd.tau(&w).map_err(|e| e.to_string())?;
            t.holds("στ = id on forms", tw.sigma() == w);
            t.zero("Dτ forms", &fd.d(&tw).below(N - 2));
            let rhs = fd.tau(&w.base_d()).map_err(|e| e.to_string())?;
            t.zero("δ^fτ − τd_C", &tw.fiber_d().sub(&rhs).up_to_degree(N - 2));
            let slots = 1 + p.below(2) as usize;
            let a = p.chain(&Shape::new(2, N).x_deg(0).y_deg(3), slots);
            t.zero("Dϱ", &fd.d(&fd.varrho(&a).map_err(|e| e.to_string())?).below(N - 2));

            let ar = p.below(2);
            let gamma = p.polyvector(&Shape::new(2, U).y_deg(0).x_deg(2).terms(2), ar);
            let c = p.below(2);
            let a = p.eform(&Shape::new(2, U).y_deg(0).x_deg(2).terms(2), c);
            let base_l = to_base(&to_fiber(&gamma).lie_derivative(&to_fiber(&a)));
            let lhs = fd.tau(&base_l.with_order(N)).map_err(|e| e.to_string())?;
            let lifted =
                fd.tau(&fd.nu_inv_polyvector(&gamma).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rhs = lifted.lie_derivative(&fd.tau(&a.with_order(N)).map_err(|e| e.to_string())?);
            t.zero("τL_γ − L_{τν⁻¹γ}τ", &lhs.sub(&rhs).up_to_degree(N - 2));
            compat += 1;
        }
    }
    for d in [2usize, 3] {
        let flat = FedosovData::compute(&Connection::flat(d), N);
        for _ in 0..10 {
            let f = p.xpoly(d, 4);
            t.holds("flat τ = Taylor", flat.tau_function(&f) == taylor_oracle(d, N, &f));
        }
    }
    t.done(format!("{compat} compatibility probes"))
}

fn conjugator() -> Result<String, String> {
    let mut t = Tally::default();
    let fd = FedosovData::compute(&Connection::curved_fixture(), N);
    let c = fd.conjugator();
    t.zero("D₀𝔓 − 𝔓D", &fd.conjugator_residual(&c).up_to_degree(N - 2));
    t.holds("𝔓 ≠ I when curved", c != PolyDiffOp::identity(2, N));
    for d in [2usize, 3] {
        t.holds(
            "𝔓 = I when flat",
            FedosovData::compute(&Connection::flat(d), N).conjugator() == PolyDiffOp::identity(d, N),
        );
    }
    t.done("curved fixture and flat d = 2, 3".into())
}

fn twisting() -> Result<String, String> {
    let mut t = Tally::default();
    let mut p = Probe::new(7);
    let (d, n) = (2usize, 4u32);
    let s = |dx: u32| Shape::new(d, n).terms(2).x_deg(2).y_deg(2).dx(dx);
    let pvs: Vec<PolyVector> = (0..4).map(|i| p.polyvector(&s(i / 2), i % 3)).collect();
    let ops: Vec<PolyDiffOp> = (0..4).map(|i| p.diffop(&s(i as u32 / 2), i % 3, 1)).collect();
    let chs: Vec<ChainElement> = (0..3).map(|i| p.chain(&s(0), 1 + i)).collect();
    let efs: Vec<EForm> = (0..3).map(|i| p.eform(&s(i % 2), i % 2)).collect();
    t.holds("𝒯_poly relations", e(linfty::relation_check_algebra(&polyvectors(d, n), &pvs, 3))?.passed());
    t.holds("𝒟_poly relations", e(linfty::relation_check_algebra(&diffops(d, n), &ops, 3))?.passed());
    t.holds("chain module", e(linfty::relation_check_module(&chains(d, n), &diffops(d, n), &ops, &chs, 2))?.passed());
    t.holds("form module", e(linfty::relation_check_module(&forms(d, n), &polyvectors(d, n), &pvs, &efs, 2))?.passed());

    let mut caught = 0;
    let unsigned = AlgebraTable::from_shifted(
        "unsigned bracket",
        PolyVector::new(d, n),
        vec![
            std::sync::Arc::new(|a: &[PolyVector]| a[0].d()),
            std::sync::Arc::new(|a: &[PolyVector]| a[0].schouten(&a[1])),
        ],
        true,
    );
    let shifted_d =
        AlgebraTable::from_dgla("d + dx¹", PolyVector::new(d, n), |a| a.d().add(&a.dx_left(0)), |a, b| a.schouten(b));
    let shifted_dd = AlgebraTable::from_dgla(
        "d + ∂ + dx¹",
        PolyDiffOp::new(d, n),
        |a| a.d().add(&a.hochschild_d()).add(&a.dx_left(0)),
        |a, b| a.gerstenhaber(b),
    );
    for q in [unsigned, shifted_d] {
        caught += !e(linfty::relation_check_algebra(&q, &pvs, 3))?.passed() as usize;
    }
    caught += !e(linfty::relation_check_algebra(&shifted_dd, &ops, 3))?.passed() as usize;
    for c in [0, 1, -2, 3] {
        let f = toy::two_term_morphism(Rational::from_int(c));
        caught +=
            !e(linfty::relation_check_morphism(&f, &toy::line(), &toy::diamond(), &[toy::u()], 3))?.passed() as usize;
    }
    t.holds("at least 3 mutations caught", caught >= 3);

    let nh = 4;
    let filt = Filtration::Hbar(nh);
    let f = toy::two_term_morphism(Rational::from_int(2));
    t.holds(
        "toy morphism",
        e(linfty::relation_check_morphism(&f, &toy::line(), &toy::diamond(), &[toy::u()], 4))?.passed(),
    );
    let f = f.over_hbar(nh);
    let g = toy::inclusion_morphism().over_hbar(nh);
    let pi = HbarSeries::monomial(&toy::u(), 1, nh);
    let s_mc = e(linfty::mc_pushforward(&f, &pi, filt))?;
    t.zero("pushforward MC residual", &e(linfty::mc_residual(&toy::diamond().over_hbar(nh), &s_mc, filt))?);
    let s2 = e(linfty::mc_pushforward(&linfty::compose(&f, &g), &pi, filt))?;
    t.zero("composite pushforward MC residual", &e(linfty::mc_residual(&toy::club().over_hbar(nh), &s2, filt))?);

    let lhs = e(linfty::twist_morphism(&linfty::compose(&f, &g), &pi, filt))?;
    let rhs = linfty::compose(&e(linfty::twist_morphism(&f, &pi, filt))?, &e(linfty::twist_morphism(&g, &s_mc, filt))?);
    let probes: Vec<_> = (0..nh).map(|j| HbarSeries::monomial(&toy::u(), j, nh)).collect();
    for a in &probes {
        t.zero("functoriality arity 1", &e(lhs.f(std::slice::from_ref(a)))?.sub(&e(rhs.f(std::slice::from_ref(a)))?));
        for b in &probes {
            let two = [a.clone(), b.clone()];
            t.zero("functoriality arity 2", &e(lhs.f(&two))?.sub(&e(rhs.f(&two))?));
        }
    }
    t.done(format!("{caught} of 7 mutations caught"))
}

fn quantization() -> Result<String, String> {
    let mut t = Tally::default();
    let n = 8;
    let theta = ConstPoisson::standard();
    let pi = moyal_product(&theta, 4, n);
    let mut p = Probe::new(8);
    let s = Shape::new(2, n).terms(3).x_deg(1).y_deg(3);
    for _ in 0..20 {
        let (f, g, h) = (p.sm(&s), p.sm(&s), p.sm(&s));
        t.zero("associator", &pi.associator(&f, &g, &h));
    }
    t.zero("star_mc_check", &star_mc_check(&pi));

    let pi3 = moyal_product(&theta, 3, n);
    for k in 0..36 {
        let c = HbarSeries::monomial(&p.chain(&Shape::new(2, n).terms(3).y_deg(5), 1 + k % 3), 0, 3);
        t.zero("R_Π²", &twisted_chain_differential(&pi3, &twisted_chain_differential(&pi3, &c)));
    }
    let alpha = HbarSeries::monomial(&theta.bivector(n), 1, 3);
    let l = twisted_form_differential(&alpha).map_err(|e| e.to_string())?;
    for k in 0..30 {
        let w = HbarSeries::monomial(&p.eform(&Shape::new(2, n).y_deg(4), k % 3), 0, 3);
        t.zero("L_α²", &l(&l(&w)));
    }
    let s1 = Shape::new(2, n).y_deg(3);
    for _ in 0..30 {
        let (a0, a1) = (p.sm(&s1), p.sm(&s1));
        let out = twisted_chain_differential(
            &pi3,
            &HbarSeries::monomial(&ChainElement::tensor(&[a0.clone(), a1.clone()]), 0, 3),
        );
        // ½ θ^{ij}(∂_i a₀ ∂_j a₁ − ∂_j a₀ ∂_i a₁), θ^{12} = −θ^{21} = 1
        let half = Rational::new(1, 2);
        let mut want = SmElement::new(2, n);
        for (i, j, th) in [(0, 1, Rational::one()), (1, 0, -Rational::one())] {
            let term = a0.partial_y(i).graded_mul(&a1.partial_y(j)).sub(&a0.partial_y(j).graded_mul(&a1.partial_y(i)));
            want.add_scaled(&term, &(&th * &half));
        }
        t.zero("ħ¹ of R_Π", &out.coeff(1).sub(&ChainElement::tensor(&[want])));
    }
    t.done("through ħ⁴ (product), ħ³ (chains, forms)".into())
}

fn determinism() -> Result<String, String> {
    let mut t = Tally::default();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/flat.toml");
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_fedcalc"))
            .arg("--config")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        let body = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let hash = body.lines().last().unwrap_or_default().to_string();
        Ok::<_, String>((out.status.code(), hash))
    };
    let (a, b) = (run()?, run()?);
    t.holds("exit status 0", a.0 == Some(0));
    t.holds("hash lines match", a.1 == b.1 && a.1.contains("canonical_sha256"));
    let src = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let sc = Scenario::parse(&src).map_err(|e| e.to_string())?;
    let (x, y) = (suites::run(&sc), suites::run(&sc));
    t.holds("library hashes match", x.canonical_hash(&sc.name, sc.seed) == y.canonical_hash(&sc.name, sc.seed));
    t.holds("binary and library agree", a.1.contains(&x.canonical_hash(&sc.name, sc.seed)));
    t.done(a.1)
}

type Criterion = fn() -> Result<String, String>;

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Criterion); 9] = [
        ("homotopy calculus", homotopy_calculus),
        ("bracket and action axioms", bracket_axioms),
        ("comparison maps", comparison_maps),
        ("Fedosov construction", fedosov_construction),
        ("lifts", lifts),
        ("conjugator", conjugator),
        ("twisting machinery", twisting),
        ("quantization", quantization),
        ("determinism", determinism),
    ];
    // written to the process stdout directly so the lines survive output capture
    let mut out = std::io::stdout().lock();
    // libtest has already printed the test name without a newline
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let line = match &r {
            Ok(note) => format!("PASS  {}. {name}: {note}", i + 1),
            Err(why) => format!("FAIL  {}. {name}: {why}", i + 1),
        };
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
        if r.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

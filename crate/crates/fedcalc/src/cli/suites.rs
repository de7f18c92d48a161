//! The checks run by each suite. Every check is exact: a record passes iff its
//! residual has no terms.

use std::time::Instant;

use serde_json::json;

use super::config::{Scenario, Suite};
use super::report::{Record, Report, Status};
use crate::algebra::{
    ChainElement, EForm, FiberKey, GradedMul, Key, PolyDiffOp, PolyVector, Rational, Series, UNTRUNCATED,
};
use crate::fedosov::base::{to_base, to_fiber, value_at_zero};
use crate::fedosov::{Connection, Contractible, FedosovData, Fiberwise};
use crate::linfty::{self, Element, Filtration, HbarSeries};
use crate::quantization;
use crate::random::{Probe, Shape};

/// Residual bookkeeping for one check.
#[derive(Default)]
struct Outcome {
    terms: usize,
    max_deg: Option<u32>,
    probes: usize,
    input: Option<String>,
    data: Option<serde_json::Value>,
}

impl Outcome {
    /// Adds a residual; `input` describes the probe and is kept for the first failure.
    fn add<E: Element>(&mut self, residual: &E, input: impl FnOnce() -> String) {
        self.probes += 1;
        let t = residual.term_count();
        if t > 0 {
            self.terms += t;
            self.max_deg = self.max_deg.max(residual.max_y_degree());
            if self.input.is_none() {
                self.input = Some(input());
            }
        }
    }

    /// A boolean condition, counted as one residual term when it fails.
    fn require(&mut self, ok: bool, input: impl FnOnce() -> String) {
        self.probes += 1;
        if !ok {
            self.terms += 1;
            if self.input.is_none() {
                self.input = Some(input());
            }
        }
    }

    fn with_data(mut self, v: serde_json::Value) -> Self {
        self.data = Some(v);
        self
    }
}

struct Runner<'a> {
    report: &'a mut Report,
    suite: &'static str,
}

impl Runner<'_> {
    fn run(&mut self, name: impl Into<String>, anchor: &'static str, f: impl FnOnce() -> Result<Outcome, String>) {
        let start = Instant::now();
        let out = f().unwrap_or_else(|e| Outcome { terms: 1, input: Some(e), ..Default::default() });
        self.report.records.push(Record {
            suite: self.suite,
            name: name.into(),
            anchor,
            status: if out.terms == 0 { Status::Pass } else { Status::Fail },
            residual_terms: out.terms,
            max_residual_degree: out.max_deg,
            probes: out.probes,
            input: out.input,
            data: out.data,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
}

fn text<K: Key>(a: &Series<K>) -> String {
    a.fmt_text()
}

fn sign(e: i32) -> Rational {
    Rational::sign(e as i64)
}

fn deg<K: Key>(a: &Series<K>) -> i32 {
    a.homogeneous_degree().unwrap_or(0)
}

/// Runs the selected suites in a fixed order.
pub fn run(sc: &Scenario) -> Report {
    let mut report = Report::default();
    for s in &sc.suites {
        // each suite has its own stream so that selections do not shift each other's probes
        let mut p = Probe::new(sc.seed ^ (*s as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut r = Runner { report: &mut report, suite: s.name() };
        match s {
            Suite::Check => check_suite(sc, &mut p, &mut r),
            Suite::Fedosov => fedosov_suite(sc, &mut p, &mut r),
            Suite::Moyal => moyal_suite(sc, &mut p, &mut r),
            Suite::Linfty => linfty_suite(sc, &mut p, &mut r),
        }
    }
    report
}

fn homotopy_family<K: FiberKey>(out: &mut Outcome, a: &Series<K>)
where
    Series<K>: Contractible,
{
    let show = || text(a);
    out.add(&Fiberwise::delta(&Fiberwise::delta(a)), show);
    out.add(&a.delta_inv().delta_inv(), show);
    let hodge = a.minus(&a.sigma()).minus(&a.delta_inv().delta()).minus(&Fiberwise::delta(a).delta_inv());
    out.add(&hodge, show);
}

fn check_suite(sc: &Scenario, p: &mut Probe, r: &mut Runner) {
    let (d, n) = (sc.dim, sc.ny);
    let pr = &sc.probes;
    let hshape = |p: &mut Probe| {
        let dx = p.below(d as u32);
        Shape::new(d, n).terms(4).x_deg(3).y_deg(n.saturating_sub(dx)).dx(dx)
    };
    r.run("homotopy.sm", "δ² = 0, (δ⁻¹)² = 0, δδ⁻¹ + δ⁻¹δ + σ = id", || {
        let mut o = Outcome::default();
        for _ in 0..pr.homotopy {
            let s = hshape(p);
            homotopy_family(&mut o, &p.sm(&s));
        }
        Ok(o)
    });
    r.run("homotopy.pv", "δ² = 0, (δ⁻¹)² = 0, δδ⁻¹ + δ⁻¹δ + σ = id", || {
        let mut o = Outcome::default();
        for _ in 0..pr.homotopy {
            let s = hshape(p);
            let ar = p.below(2.min(d as u32));
            homotopy_family(&mut o, &p.polyvector(&s, ar));
        }
        Ok(o)
    });
    r.run("homotopy.do", "δ² = 0, (δ⁻¹)² = 0, δδ⁻¹ + δ⁻¹δ + σ = id", || {
        let mut o = Outcome::default();
        for _ in 0..pr.homotopy {
            let s = hshape(p);
            let rank = 1 + p.below(1) as usize;
            homotopy_family(&mut o, &p.diffop(&s, rank, 2));
        }
        Ok(o)
    });
    r.run("homotopy.ef", "δ² = 0, (δ⁻¹)² = 0, δδ⁻¹ + δ⁻¹δ + σ = id", || {
        let mut o = Outcome::default();
        for _ in 0..pr.homotopy {
            let s = hshape(p);
            let c = p.below(2.min(d as u32));
            homotopy_family(&mut o, &p.eform(&s, c));
        }
        Ok(o)
    });
    r.run("homotopy.chain", "δh + hδ = id on exterior degree ≥ 1", || {
        let mut o = Outcome::default();
        for _ in 0..pr.chain_homotopy {
            let dx = 1 + p.below(d as u32 - 1);
            let s = Shape::new(d, n).terms(4).x_deg(3).y_deg(n - dx.min(n)).dx(dx);
            let slots = 1 + p.below(2) as usize;
            let b = p.chain(&s, slots);
            o.add(&Fiberwise::delta(&Fiberwise::delta(&b)), || text(&b));
            o.add(&b.h_chain().delta().add(&Fiberwise::delta(&b).h_chain()).sub(&b), || text(&b));
        }
        Ok(o)
    });

    let u = UNTRUNCATED;
    let bshape = |p: &mut Probe| {
        let dx = p.below(1);
        Shape::new(d, u).terms(2).x_deg(1).y_deg(2).dx(dx)
    };
    let op = |p: &mut Probe| {
        let rank = p.below(2) as usize;
        let s = bshape(p);
        p.diffop(&s, rank, 2)
    };
    let pv = |p: &mut Probe| {
        let ar = p.below(2.min(d as u32));
        let s = bshape(p);
        p.polyvector(&s, ar)
    };
    let chain = |p: &mut Probe, y: u32| {
        let slots = 2 + p.below(1) as usize;
        let s = bshape(p).y_deg(y);
        p.chain(&s, slots)
    };
    r.run("brackets.gerstenhaber", "graded Jacobi and antisymmetry of [,]_G", || {
        let mut o = Outcome::default();
        for _ in 0..pr.brackets {
            let (a, b, c) = (op(p), op(p), op(p));
            let (ka, kb, kc) = (deg(&a), deg(&b), deg(&c));
            let mut s = a.gerstenhaber(&b).gerstenhaber(&c).scale(&sign(ka * kc));
            s.add_assign(&b.gerstenhaber(&c).gerstenhaber(&a).scale(&sign(kb * ka)));
            s.add_assign(&c.gerstenhaber(&a).gerstenhaber(&b).scale(&sign(kc * kb)));
            o.add(&s, || format!("{} | {} | {}", text(&a), text(&b), text(&c)));
            o.add(&a.gerstenhaber(&b).add(&b.gerstenhaber(&a).scale(&sign(ka * kb))), || {
                format!("{} | {}", text(&a), text(&b))
            });
        }
        Ok(o)
    });
    r.run("brackets.schouten", "graded Jacobi and antisymmetry of [,]_SN", || {
        let mut o = Outcome::default();
        for _ in 0..pr.brackets {
            let (a, b, c) = (pv(p), pv(p), pv(p));
            let (ka, kb, kc) = (deg(&a), deg(&b), deg(&c));
            let mut s = a.schouten(&b).schouten(&c).scale(&sign(ka * kc));
            s.add_assign(&b.schouten(&c).schouten(&a).scale(&sign(kb * ka)));
            s.add_assign(&c.schouten(&a).schouten(&b).scale(&sign(kc * kb)));
            o.add(&s, || format!("{} | {} | {}", text(&a), text(&b), text(&c)));
            o.add(&a.schouten(&b).add(&b.schouten(&a).scale(&sign(ka * kb))), || {
                format!("{} | {}", text(&a), text(&b))
            });
        }
        Ok(o)
    });
    r.run("brackets.module", "R_{[Φ,Ψ]} = [R_Φ, R_Ψ]", || {
        let mut o = Outcome::default();
        for _ in 0..pr.brackets {
            let (a, b, ch) = (op(p), op(p), chain(p, 3));
            let lhs = a.gerstenhaber(&b).chain_action(&ch);
            let mut rhs = a.chain_action(&b.chain_action(&ch));
            rhs.sub_assign(&b.chain_action(&a.chain_action(&ch)).scale(&sign(deg(&a) * deg(&b))));
            o.add(&lhs.sub(&rhs), || format!("{} | {} | {}", text(&a), text(&b), text(&ch)));
        }
        Ok(o)
    });
    r.run("brackets.differentials", "∂² = 0, 𝔟² = 0", || {
        let mut o = Outcome::default();
        for _ in 0..pr.brackets {
            let (a, ch) = (op(p), chain(p, 4));
            o.add(&a.hochschild_d().hochschild_d(), || text(&a));
            o.add(&ch.hochschild_b().hochschild_b(), || text(&ch));
        }
        Ok(o)
    });
    r.run("brackets.boundary_action", "R_{∂Φ} = 𝔟R_Φ − (−1)^k R_Φ𝔟", || {
        let mut o = Outcome::default();
        for _ in 0..pr.brackets {
            let (a, ch) = (op(p), chain(p, 3));
            let lhs = a.hochschild_d().chain_action(&ch);
            let mut rhs = a.chain_action(&ch).hochschild_b();
            rhs.sub_assign(&a.chain_action(&ch.hochschild_b()).scale(&sign(deg(&a))));
            o.add(&lhs.sub(&rhs), || format!("{} | {}", text(&a), text(&ch)));
        }
        Ok(o)
    });
    r.run("comparison.hkr", "∂ ∘ hkr = 0", || {
        let mut o = Outcome::default();
        for _ in 0..pr.comparison {
            let g = pv(p);
            o.add(&g.hkr().hochschild_d(), || text(&g));
        }
        Ok(o)
    });
    r.run("comparison.connes", "𝔠 ∘ 𝔟 = 0", || {
        let mut o = Outcome::default();
        for _ in 0..pr.comparison {
            let ch = chain(p, 4);
            o.add(&ch.hochschild_b().connes(), || text(&ch));
        }
        Ok(o)
    });
    r.run("comparison.lie_derivative", "L_{[γ₁,γ₂]} = [L_{γ₁}, L_{γ₂}]", || {
        let mut o = Outcome::default();
        for _ in 0..pr.comparison {
            let (a, b) = (pv(p), pv(p));
            let c = p.below(2.min(d as u32));
            let s = bshape(p);
            let w = p.eform(&s, c);
            let lhs = a.schouten(&b).lie_derivative(&w);
            let mut rhs = a.lie_derivative(&b.lie_derivative(&w));
            rhs.sub_assign(&b.lie_derivative(&a.lie_derivative(&w)).scale(&sign(deg(&a) * deg(&b))));
            o.add(&lhs.sub(&rhs), || format!("{} | {} | {}", text(&a), text(&b), text(&w)));
        }
        Ok(o)
    });
}

/// Per-y-degree term counts of `D²x`.
fn d_squared_table<T: Fiberwise + Element>(
    fd: &FedosovData,
    xs: &[T],
    valid: u32,
    table: &mut [usize],
    o: &mut Outcome,
    show: impl Fn(&T) -> String,
) {
    for x in xs {
        let r = fd.d(&fd.d(x));
        for (deg, slot) in table.iter_mut().enumerate() {
            let part = r.below(deg as u32);
            let lower = if deg == 0 { 0 } else { r.below(deg as u32 - 1).term_count() };
            *slot += part.term_count() - lower;
        }
        o.add(&r.below(valid), || show(x));
    }
}

fn connections(sc: &Scenario, p: &mut Probe) -> Vec<(String, Connection)> {
    let mut out = vec![("configured".to_string(), sc.connection.clone())];
    if sc.random_entries > 0 {
        out.push(("random".to_string(), Connection::random(p, sc.dim, sc.random_entries, 2)));
    }
    out
}

fn fedosov_suite(sc: &Scenario, p: &mut Probe, r: &mut Runner) {
    let (d, n) = (sc.dim, sc.ny);
    let count = sc.probes.lifts;
    for (label, conn) in connections(sc, p) {
        let fd = FedosovData::compute(&conn, n);
        r.run(format!("resolution.{label}"), "A = δ⁻¹(𝓡 + ∇A + ½[A,A]), δ⁻¹A = 0", || {
            let mut o = Outcome::default();
            o.add(&fd.a().delta_inv(), || text(fd.a()));
            o.require(fd.iterations() <= n as usize, || format!("{} iterations", fd.iterations()));
            if conn.is_trivial() {
                o.add(fd.a(), || "flat connection".into());
            }
            let symbols: Vec<String> =
                conn.entries().map(|(i, j, k, v)| format!("Γ^{}_{}{} = {v}", k + 1, i + 1, j + 1)).collect();
            let a_terms: Vec<String> =
                fd.a().terms().map(|(k, c)| text(&PolyVector::from_key(d, n, *k, c.clone()))).collect();
            Ok(o.with_data(json!({ "connection": symbols, "iterations": fd.iterations(), "A": a_terms })))
        });
        r.run(format!("mc_element.{label}"), "dB + ½[B,B] = 0", || {
            let mut o = Outcome::default();
            o.add(&fd.mc_residual().up_to_degree(n - 1), || text(fd.mc_element()));
            Ok(o)
        });
        r.run(format!("d_squared.{label}"), "D² = 0 in the valid y-degree range", || {
            let mut o = Outcome::default();
            let s = Shape::new(d, n).terms(3).y_deg(n).x_deg(2);
            let mut tables = serde_json::Map::new();
            let mut sm = Vec::new();
            let mut pvs = Vec::new();
            let mut ops = Vec::new();
            let mut ops2 = Vec::new();
            let mut efs = Vec::new();
            let mut chs = Vec::new();
            for _ in 0..count {
                let s = s.dx(p.below(1));
                sm.push(p.sm(&s));
                let ar = p.below(2.min(d as u32));
                pvs.push(p.polyvector(&s, ar));
                ops.push(p.diffop(&s, 2, 1));
                ops2.push(p.diffop(&s, 2, 2));
                efs.push(p.eform(&s, 1));
                chs.push(p.chain(&s, 2));
            }
            let width = n as usize + 1;
            let mut t = vec![0; width];
            d_squared_table(&fd, &sm, n - 2, &mut t, &mut o, text);
            tables.insert("sm".into(), json!(t));
            let mut t = vec![0; width];
            d_squared_table(&fd, &pvs, n - 2, &mut t, &mut o, text);
            tables.insert("pv".into(), json!(t));
            let mut t = vec![0; width];
            d_squared_table(&fd, &ops, n - 2, &mut t, &mut o, text);
            tables.insert("do".into(), json!(t));
            // second-order slots lose one more degree to truncation
            let mut t = vec![0; width];
            d_squared_table(&fd, &ops2, n.saturating_sub(3), &mut t, &mut o, text);
            tables.insert("do_order2".into(), json!(t));
            let mut t = vec![0; width];
            d_squared_table(&fd, &efs, n - 2, &mut t, &mut o, text);
            tables.insert("ef".into(), json!(t));
            let mut t = vec![0; width];
            d_squared_table(&fd, &chs, n - 2, &mut t, &mut o, text);
            tables.insert("ch".into(), json!(t));
            Ok(o.with_data(json!({ "valid_degree": n - 2, "valid_degree_order2": n.saturating_sub(3), "terms_by_y_degree": tables })))
        });
        r.run(format!("lifts.{label}"), "στ = id, Dτ = 0, τ(fg) = τfτg, δ^fτ = τd_C, Dϱ = 0", || {
            let mut o = Outcome::default();
            for _ in 0..count {
                let f = p.xpoly(d, 3);
                let t = fd.tau_function(&f);
                o.require(value_at_zero(&t.sigma()) == f, || f.to_string());
                o.add(&fd.d(&t).below(n - 2), || f.to_string());
                let g = p.xpoly(d, 2);
                let tg = fd.tau_function(&g);
                o.add(&fd.tau_function(&f.mul(&g)).sub(&t.graded_mul(&tg)).up_to_degree(n - 2), || {
                    format!("{f} | {g}")
                });
                let c = p.below(2.min(d as u32));
                let w = p.eform(&Shape::new(d, n).y_deg(0).terms(2), c);
                let tw = fd.tau(&w).map_err(|e| e.to_string())?;
                o.add(&fd.d(&tw).below(n - 2), || text(&w));
                let rhs = fd.tau(&w.base_d()).map_err(|e| e.to_string())?;
                o.add(&tw.fiber_d().sub(&rhs).up_to_degree(n - 2), || text(&w));
                let slots = 1 + p.below(2) as usize;
                let a = p.chain(&Shape::new(d, n).x_deg(0).y_deg(3), slots);
                let rho = fd.varrho(&a).map_err(|e| e.to_string())?;
                o.add(&fd.d(&rho).below(n - 2), || text(&a));
            }
            Ok(o)
        });
        r.run(format!("lie_compatibility.{label}"), "τ(L_γ a) = L_{τν⁻¹γ} τa", || {
            let mut o = Outcome::default();
            let u = UNTRUNCATED;
            for _ in 0..count {
                let ar = p.below(2.min(d as u32));
                let gamma = p.polyvector(&Shape::new(d, u).y_deg(0).x_deg(2).terms(2), ar);
                let c = p.below(2.min(d as u32));
                let a = p.eform(&Shape::new(d, u).y_deg(0).x_deg(2).terms(2), c);
                let base_l = to_base(&to_fiber(&gamma).lie_derivative(&to_fiber(&a)));
                let lhs = fd.tau(&base_l.with_order(n)).map_err(|e| e.to_string())?;
                let lifted =
                    fd.tau(&fd.nu_inv_polyvector(&gamma).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                let rhs = lifted.lie_derivative(&fd.tau(&a.with_order(n)).map_err(|e| e.to_string())?);
                o.add(&lhs.sub(&rhs).up_to_degree(n - 2), || format!("{} | {}", text(&gamma), text(&a)));
            }
            Ok(o)
        });
        r.run(format!("conjugator.{label}"), "D₀𝔓 − 𝔓D = 0", || {
            let mut o = Outcome::default();
            let c = fd.conjugator();
            o.add(&fd.conjugator_residual(&c).up_to_degree(n - 2), || "𝔓".into());
            if conn.is_trivial() {
                o.add(&c.sub(&PolyDiffOp::identity(d, n)), || "flat connection".into());
            }
            Ok(o)
        });
    }
}

fn moyal_suite(sc: &Scenario, p: &mut Probe, r: &mut Runner) {
    let Some(theta) = sc.theta_or_default() else {
        r.run("theta", "θ needs dimension ≥ 2", || Err("dimension 1 has no nonzero Poisson tensor".into()));
        return;
    };
    let (d, nh) = (sc.dim, sc.nhbar);
    let n = sc.ny.max(8);
    let pi = quantization::moyal_product(&theta, nh, n);
    r.run("associativity", "(f⋆g)⋆h = f⋆(g⋆h)", || {
        let mut o = Outcome::default();
        let s = Shape::new(d, n).terms(3).x_deg(1).y_deg(3);
        for _ in 0..sc.probes.moyal_chains {
            let (f, g, h) = (p.sm(&s), p.sm(&s), p.sm(&s));
            o.add(&pi.associator(&f, &g, &h), || format!("{} | {} | {}", text(&f), text(&g), text(&h)));
        }
        Ok(o)
    });
    r.run("maurer_cartan", "∂Ψ + ½[Ψ,Ψ]_G = 0", || {
        let mut o = Outcome::default();
        o.add(&quantization::star_mc_check(&pi), || "Ψ = Π − μ₀".into());
        Ok(o)
    });
    let chains = |p: &mut Probe| {
        let slots = 1 + p.below(2) as usize;
        p.chain(&Shape::new(d, n).terms(3).y_deg(5), slots)
    };
    r.run("chain_differential", "R_Π² = 0", || {
        let mut o = Outcome::default();
        for _ in 0..sc.probes.moyal_chains {
            let c = HbarSeries::monomial(&chains(p), 0, nh);
            let rr = quantization::twisted_chain_differential(&pi, &quantization::twisted_chain_differential(&pi, &c));
            o.add(&rr, || text(c.coeff(0)));
        }
        Ok(o)
    });
    r.run("first_order", "ħ¹ part of R_Π(a₀⊗a₁) = {a₀, a₁}", || {
        let mut o = Outcome::default();
        if nh == 0 {
            return Ok(o);
        }
        let s = Shape::new(d, n).y_deg(3);
        for _ in 0..sc.probes.moyal_chains {
            let (a0, a1) = (p.sm(&s), p.sm(&s));
            let out = quantization::twisted_chain_differential(
                &pi,
                &HbarSeries::monomial(&ChainElement::tensor(&[a0.clone(), a1.clone()]), 0, nh),
            );
            o.add(&out.coeff(1).sub(&ChainElement::tensor(&[theta.bracket(&a0, &a1)])), || {
                format!("{} | {}", text(&a0), text(&a1))
            });
        }
        Ok(o)
    });
    r.run("form_differential", "L_α² = 0 for α = ħθ", || {
        let mut o = Outcome::default();
        let alpha = HbarSeries::monomial(&theta.bivector(n), 1, nh);
        let l = quantization::twisted_form_differential(&alpha).map_err(|e| e.to_string())?;
        for _ in 0..sc.probes.moyal_chains {
            let c = p.below(2.min(d as u32));
            let w = HbarSeries::monomial(&p.eform(&Shape::new(d, n).y_deg(4), c), 0, nh);
            o.add(&l(&l(&w)), || text(w.coeff(0)));
        }
        Ok(o)
    });
}

fn report_rows(o: &mut Outcome, rep: &linfty::RelationReport) {
    o.probes += rep.rows.iter().map(|r| r.tuples).sum::<usize>();
    o.terms += rep.residual_terms();
    o.max_deg = o.max_deg.max(rep.max_y_degree());
    if let Some(a) = rep.first_failure() {
        o.input.get_or_insert_with(|| format!("{} fails at arity {a}", rep.relation));
    }
}

fn rows_json(rep: &linfty::RelationReport) -> serde_json::Value {
    serde_json::to_value(&rep.rows).expect("serializable")
}

fn linfty_suite(sc: &Scenario, p: &mut Probe, r: &mut Runner) {
    use crate::linfty::instances::{chains, diffops, forms, polyvectors};
    use crate::linfty::toy;
    let (d, n) = (sc.dim, sc.ny);
    let (k, arity) = (sc.probes.linfty, sc.probes.max_arity);
    let s = |dx: u32| Shape::new(d, n).terms(2).x_deg(2).y_deg(2).dx(dx.min(d as u32));
    let pvs: Vec<PolyVector> = (0..k)
        .map(|i| {
            let ar = (i as u32) % 3;
            let sh = s(i as u32 / 3 % 2);
            p.polyvector(&sh, ar.min(d as u32))
        })
        .collect();
    let ops: Vec<PolyDiffOp> = (0..k)
        .map(|i| {
            let sh = s(i as u32 / 3 % 2);
            p.diffop(&sh, i % 3, 1)
        })
        .collect();
    let chs: Vec<ChainElement> = (0..k)
        .map(|i| {
            let sh = s(0);
            p.chain(&sh, 1 + i % 3)
        })
        .collect();
    let efs: Vec<EForm> = (0..k)
        .map(|i| {
            let sh = s(i as u32 / 2 % 2);
            p.eform(&sh, (i as u32 % 2).min(d as u32))
        })
        .collect();

    r.run("t_poly", "L∞ relations of (Ω(T_poly), d, [,]_SN)", || {
        let rep = linfty::relation_check_algebra(&polyvectors(d, n), &pvs, arity).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        report_rows(&mut o, &rep);
        Ok(o.with_data(rows_json(&rep)))
    });
    r.run("d_poly", "L∞ relations of (Ω(D_poly), d + ∂, [,]_G)", || {
        let rep = linfty::relation_check_algebra(&diffops(d, n), &ops, arity).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        report_rows(&mut o, &rep);
        Ok(o.with_data(rows_json(&rep)))
    });
    r.run("chain_module", "module relations of (C_poly, d + 𝔟, R)", || {
        let rep = linfty::relation_check_module(&chains(d, n), &diffops(d, n), &ops, &chs, arity.saturating_sub(1))
            .map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        report_rows(&mut o, &rep);
        Ok(o.with_data(rows_json(&rep)))
    });
    r.run("form_module", "module relations of (E, d, L)", || {
        let rep = linfty::relation_check_module(&forms(d, n), &polyvectors(d, n), &pvs, &efs, arity.saturating_sub(1))
            .map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        report_rows(&mut o, &rep);
        Ok(o.with_data(rows_json(&rep)))
    });
    r.run("mutations", "corrupted tables are rejected", || {
        let mut o = Outcome::default();
        let mut flagged = Vec::new();
        let bad_sign = linfty::AlgebraTable::from_shifted(
            "unsigned bracket",
            PolyVector::new(d, n),
            vec![
                std::sync::Arc::new(|a: &[PolyVector]| a[0].d()),
                std::sync::Arc::new(|a: &[PolyVector]| a[0].schouten(&a[1])),
            ],
            true,
        );
        let bad_d = linfty::AlgebraTable::from_dgla(
            "d + dx¹",
            PolyVector::new(d, n),
            |a| a.d().add(&a.dx_left(0)),
            |a, b| a.schouten(b),
        );
        for q in [bad_sign, bad_d] {
            let rep = linfty::relation_check_algebra(&q, &pvs, arity.max(3)).map_err(|e| e.to_string())?;
            flagged.push((q.name.clone(), !rep.passed()));
        }
        let rep = linfty::relation_check_morphism(
            &toy::two_term_morphism(Rational::one()),
            &toy::line(),
            &toy::diamond(),
            &[toy::u()],
            3,
        )
        .map_err(|e| e.to_string())?;
        flagged.push(("F₂ scaled".into(), !rep.passed()));
        let m = toy::shift_module("M");
        let vs = [toy::module_basis(0), toy::module_basis(1)];
        let rep = linfty::relation_check_module_morphism(
            &toy::module_morphism(Rational::one(), -Rational::one()),
            &m,
            &m,
            &toy::line(),
            &[toy::u()],
            &vs,
            2,
        )
        .map_err(|e| e.to_string())?;
        flagged.push(("κ sign".into(), !rep.passed()));
        for (name, f) in &flagged {
            o.require(*f, || format!("mutation `{name}` passed the relation check"));
        }
        Ok(o.with_data(json!(flagged.iter().map(|(n, f)| json!({ "mutation": n, "flagged": f })).collect::<Vec<_>>())))
    });
    let nh = sc.nhbar.max(2);
    let filt = Filtration::Hbar(nh);
    r.run("pushforward", "S = Σ 1/n! F_n(π^n) is Maurer–Cartan", || {
        let mut o = Outcome::default();
        let f = toy::two_term_morphism(Rational::from_int(2));
        let rep = linfty::relation_check_morphism(&f, &toy::line(), &toy::diamond(), &[toy::u()], 4)
            .map_err(|e| e.to_string())?;
        report_rows(&mut o, &rep);
        let pi = HbarSeries::monomial(&toy::u(), 1, nh);
        let s = linfty::mc_pushforward(&f.over_hbar(nh), &pi, filt).map_err(|e| e.to_string())?;
        o.add(&linfty::mc_residual(&toy::diamond().over_hbar(nh), &s, filt).map_err(|e| e.to_string())?, || {
            "π = ħu".into()
        });
        Ok(o)
    });
    r.run("functoriality", "(G∘F)^π = G^S ∘ F^π", || {
        let mut o = Outcome::default();
        let f = toy::two_term_morphism(Rational::from_int(2)).over_hbar(nh);
        let g = toy::inclusion_morphism().over_hbar(nh);
        let pi = HbarSeries::monomial(&toy::u(), 1, nh);
        let s = linfty::mc_pushforward(&f, &pi, filt).map_err(|e| e.to_string())?;
        let lhs = linfty::twist_morphism(&linfty::compose(&f, &g), &pi, filt).map_err(|e| e.to_string())?;
        let rhs = linfty::compose(
            &linfty::twist_morphism(&f, &pi, filt).map_err(|e| e.to_string())?,
            &linfty::twist_morphism(&g, &s, filt).map_err(|e| e.to_string())?,
        );
        let probes: Vec<_> = (0..nh).map(|j| HbarSeries::monomial(&toy::u(), j, nh)).collect();
        for a in &probes {
            let one = std::slice::from_ref(a);
            o.add(&lhs.f(one).map_err(|e| e.to_string())?.sub(&rhs.f(one).map_err(|e| e.to_string())?), || {
                "arity 1".into()
            });
            for b in &probes {
                let two = [a.clone(), b.clone()];
                o.add(&lhs.f(&two).map_err(|e| e.to_string())?.sub(&rhs.f(&two).map_err(|e| e.to_string())?), || {
                    "arity 2".into()
                });
            }
        }
        Ok(o)
    });
    r.run("fedosov_twist", "B is Maurer–Cartan and twisting by B gives D", || {
        let mut o = Outcome::default();
        let fd = FedosovData::compute(&sc.connection, n);
        let q = polyvectors(d, n);
        let filt = Filtration::Nilpotent(d);
        let b = fd.mc_element();
        o.add(&linfty::mc_residual(&q, b, filt).map_err(|e| e.to_string())?.up_to_degree(n - 1), || text(b));
        let tw = linfty::twist_algebra(&q, b, filt).map_err(|e| e.to_string())?;
        for x in &pvs {
            o.add(&tw.l(std::slice::from_ref(x)).map_err(|e| e.to_string())?.sub(&fd.d(x)), || text(x));
        }
        Ok(o)
    });
}

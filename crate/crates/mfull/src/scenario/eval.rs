use super::report::{CheckOutcome, Report, Verdict};
use super::suites::{self, Tally};
use super::{list_items, parse_usize, parse_window, CheckDef, Located, RingKind, RingSpec, Scenario};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmodule::{FPModule, ModRef};
use crate::homalg::{self, Detail, DimensionProbe, HomologyReport, ProbeValue};
use crate::idealkit::{self, Ideal};
use crate::monomial::MonoCtx;
use crate::parse::parse_poly_with;
use crate::ring::{Elt, Ring, RingRef};
use crate::semigroup::{self, NumericalSemigroup, SemigroupRing};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::time::Instant;

pub(super) enum Obj<F: Field> {
    Ideal(Ideal<F>, ModRef<F>),
    Module(ModRef<F>),
}

pub(super) struct Ctx<F: Field> {
    pub ring: RingRef<F>,
    pub sg: Option<SemigroupRing<F>>,
    pub toric: bool,
    pub objs: BTreeMap<String, Obj<F>>,
    pub sc: Scenario,
}

pub(super) fn build_ring<F: Field>(spec: &RingSpec, field: F) -> Result<(RingRef<F>, Option<SemigroupRing<F>>)> {
    match &spec.kind {
        RingKind::Semigroup { gens, extra, names } => {
            let s = NumericalSemigroup::new(gens)?;
            let sr = semigroup::build_ring(&s, extra, field, names.clone())?;
            Ok((sr.ring.clone(), Some(sr)))
        }
        RingKind::Explicit { vars, weights, relations } => {
            let ctx = MonoCtx::new(weights.clone(), 0);
            let rels = relations
                .iter()
                .map(|l| parse_poly_with(&field, vars, &ctx, &l.text, None).map_err(|e| l.relocate(e)))
                .collect::<Result<Vec<_>>>()?;
            Ok((Ring::new(field, vars.clone(), weights.clone(), rels)?, None))
        }
    }
}

impl<F: Field> Ctx<F> {
    pub fn poly(&self, l: &Located) -> Result<Elt<F>> {
        let r = &self.ring;
        let tp = |d: u32| self.sg.as_ref().and_then(|s| s.element(d));
        let tpow: Option<crate::parse::TPow<'_, crate::field::El<F>>> = if self.sg.is_some() { Some(&tp) } else { None };
        let v = parse_poly_with(&r.field, &r.names, &r.ctx, &l.text, tpow).map_err(|e| l.relocate(e))?;
        Ok(r.nf(&v))
    }

    fn obj(&self, l: &Located) -> Result<&Obj<F>> {
        self.objs.get(l.text.trim()).ok_or_else(|| l.err(format!("undefined object {}", l.text)))
    }

    /// A named object, or a constructor expression evaluated in place.
    pub fn module(&self, l: &Located) -> Result<ModRef<F>> {
        if !self.objs.contains_key(l.text.trim()) && l.text.contains('(') {
            return Ok(match self.build(l)? {
                Obj::Ideal(_, m) | Obj::Module(m) => m,
            });
        }
        Ok(match self.obj(l)? {
            Obj::Ideal(_, m) => m.clone(),
            Obj::Module(m) => m.clone(),
        })
    }

    pub fn ideal(&self, l: &Located) -> Result<&Ideal<F>> {
        match self.obj(l)? {
            Obj::Ideal(i, _) => Ok(i),
            Obj::Module(_) => Err(l.err(format!("{} is a module, not an ideal", l.text))),
        }
    }

    fn define(&mut self, name: &str, l: &Located) -> Result<()> {
        let obj = self.build(l)?;
        self.objs.insert(name.to_string(), obj);
        Ok(())
    }

    fn build(&self, l: &Located) -> Result<Obj<F>> {
        let r = self.ring.clone();
        let t = l.text.trim();
        let (head, args) = match t.find('(') {
            Some(i) => {
                if !t.ends_with(')') {
                    return Err(l.err("missing closing parenthesis"));
                }
                let inner = Located { text: t[i + 1..t.len() - 1].to_string(), line: l.line, col: l.col + i + 1 };
                (t[..i].trim(), list_items(&inner))
            }
            None => (t, Vec::new()),
        };
        let want = |k: usize| -> Result<()> {
            if args.len() != k {
                return Err(l.err(format!("{head} takes {k} argument(s)")));
            }
            Ok(())
        };
        let obj = match head {
            "ideal" => {
                let gens = args.iter().map(|a| self.poly(a)).collect::<Result<Vec<_>>>()?;
                let i = Ideal::new(r.clone(), &gens).map_err(|e| l.relocate(e))?;
                let m = FPModule::ideal(r.clone(), &i.gens)?;
                Obj::Ideal(i, m)
            }
            "maximal" => {
                want(0)?;
                let i = Ideal::maximal(r.clone());
                let m = FPModule::ideal(r.clone(), &i.gens)?;
                Obj::Ideal(i, m)
            }
            "residue" => {
                want(0)?;
                Obj::Module(FPModule::residue_field(r.clone()))
            }
            "free" => {
                let k = if args.is_empty() { 1 } else { parse_usize(&args[0])? };
                Obj::Module(FPModule::free(r.clone(), vec![0; k]))
            }
            "quotient" => {
                let gens = if args.len() == 1 && self.objs.contains_key(&args[0].text) {
                    self.ideal(&args[0])?.gens.clone()
                } else {
                    args.iter().map(|a| self.poly(a)).collect::<Result<Vec<_>>>()?
                };
                Obj::Module(FPModule::cyclic(r.clone(), &gens)?)
            }
            "module" => {
                want(1)?;
                Obj::Module(self.module(&args[0])?)
            }
            "syzygy" => {
                want(2)?;
                let n = parse_usize(&args[1])?;
                Obj::Module(self.module(&args[0])?.syzygy(n)?)
            }
            "transpose" => {
                want(1)?;
                Obj::Module(self.module(&args[0])?.transpose()?)
            }
            "dual" => {
                want(1)?;
                Obj::Module(self.module(&args[0])?.dual()?)
            }
            "tensor" => {
                want(2)?;
                Obj::Module(self.module(&args[0])?.tensor(&*self.module(&args[1])?)?)
            }
            "sum" => {
                want(2)?;
                Obj::Module(self.module(&args[0])?.direct_sum(&*self.module(&args[1])?)?)
            }
            _ => return Err(l.err(format!("unknown constructor {head}"))),
        };
        Ok(obj)
    }
}

pub(super) fn context<F: Field>(sc: &Scenario, field: F) -> Result<Ctx<F>> {
    let (ring, sg) = build_ring(&sc.ring, field)?;
    let mut cx = Ctx { ring, sg, toric: sc.ring.toric, objs: BTreeMap::new(), sc: sc.clone() };
    for o in &sc.objects {
        cx.define(&o.name, &o.expr)?;
    }
    Ok(cx)
}

pub(super) fn run<F: Field>(sc: &Scenario, field: F) -> Result<Report> {
    let t0 = Instant::now();
    let cx = context(sc, field)?;
    let mut rep = Report::new("scenario", &sc.name, &sc.ring.field, sc.settings.clone());
    rep.checks = sc
        .checks
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let mut out = match run_check(&cx, c) {
                Ok(o) => o,
                Err(e) => CheckOutcome::new(c.text.clone(), Verdict::Error, json!({ "error": e.to_string(), "budget_exceeded": e.is_budget() })),
            };
            out.elapsed = t.elapsed();
            out
        })
        .collect();
    let mut rep = rep.finish();
    rep.elapsed = t0.elapsed();
    Ok(rep)
}

fn probe_facts(p: &DimensionProbe) -> Vec<String> {
    match p.value {
        ProbeValue::Exact(n) => vec![n.to_string(), "exact".into(), "finite".into()],
        ProbeValue::Exceeds(b) => vec!["exceeds".into(), format!("exceeds({b})")],
    }
}

fn homology_facts(rs: &[HomologyReport]) -> Vec<String> {
    let mut f = Vec::new();
    if rs.iter().all(|r| r.is_zero) {
        f.push("zero".into());
    } else if rs.iter().all(|r| !r.is_zero) {
        f.push("nonzero".into());
    } else {
        f.push("mixed".into());
    }
    if let [r] = rs {
        if let Some(d) = r.k_dimension {
            f.push(format!("dim={d}"));
        }
    }
    f
}

fn bool_fact(b: bool) -> Vec<String> {
    vec![b.to_string()]
}

pub(super) fn tally_verdict(t: &Tally) -> Verdict {
    if !t.violations.is_empty() {
        Verdict::Fail
    } else if t.hits == 0 {
        Verdict::Vacuous
    } else {
        Verdict::Pass
    }
}

fn run_check<F: Field>(cx: &Ctx<F>, c: &CheckDef) -> Result<CheckOutcome> {
    let st = &cx.sc.settings;
    let bound = match c.kv.get("bound") {
        Some(b) => parse_usize(b)?,
        None => st.bound,
    };
    let window = match c.kv.get("window") {
        Some(w) => parse_window(w)?,
        None => st.window,
    };
    let detail = if c.get("detail") == Some("full") { Detail::Full } else { Detail::ZeroOnly };
    let a = &c.args;
    // (facts, values, verdict when nothing is expected)
    let (facts, values, default): (Vec<String>, Value, Verdict) = match c.name.as_str() {
        "weakly_mfull" => {
            let b = idealkit::is_weakly_mfull(cx.ideal(&a[0])?)?;
            (bool_fact(b), json!(b), Verdict::Pass)
        }
        "depth_zero" => {
            let b = idealkit::depth_zero(cx.ideal(&a[0])?)?;
            (bool_fact(b), json!(b), Verdict::Pass)
        }
        "burch" => {
            let b = idealkit::burch_condition(cx.ideal(&a[0])?)?;
            (bool_fact(b), json!(b), Verdict::Pass)
        }
        "mfull" => {
            let budget = match c.kv.get("budget") {
                Some(b) => parse_usize(b)?,
                None => st.budget,
            };
            let v = idealkit::is_mfull(cx.ideal(&a[0])?, budget, st.seed, cx.toric)?;
            let mut f = vec![v.label().to_string()];
            if let idealkit::MfullVerdict::FalseOnCandidates { certificate, .. } = &v {
                f.push("false".into());
                if certificate.is_some() {
                    f.push("certified".into());
                }
            }
            let d = if v.label() == "unknown" { Verdict::Unknown } else { Verdict::Pass };
            (f, serde_json::to_value(&v).unwrap(), d)
        }
        "socle" => {
            let i = cx.ideal(&a[0])?;
            let s = idealkit::socle(i)?;
            let els: Vec<Value> = s.iter().map(|(d, e)| json!({ "degree": d, "element": cx.ring.render(e) })).collect();
            (vec![format!("dim={}", s.len())], json!({ "dimension": s.len(), "basis": els }), Verdict::Pass)
        }
        "colon" => {
            let i = cx.ideal(&a[0])?;
            let j = cx.ideal(&a[1])?;
            let k = idealkit::colon(i, j)?;
            let eq = k.equals(i);
            let g: Vec<String> = k.minimal_gens()?.iter().map(|x| cx.ring.render(x)).collect();
            (vec![if eq { "equal".into() } else { "larger".into() }], json!({ "generators": g, "equals_first": eq }), Verdict::Pass)
        }
        "integral_witness" => {
            let i = cx.ideal(&a[0])?;
            let r = cx.poly(&c.kv["r"])?;
            let coeffs = list_items(&c.kv["coeffs"]).iter().map(|l| cx.poly(l)).collect::<Result<Vec<_>>>()?;
            let w = idealkit::integral_witness_check(i, &r, &coeffs)?;
            let f = vec![if w.valid { "valid".into() } else { "invalid".into() }, if w.r_in_ideal { "r_in_ideal".into() } else { "r_not_in_ideal".into() }];
            (f, serde_json::to_value(&w).unwrap(), Verdict::Pass)
        }
        "assume" => (vec![], json!({ "object": a[0].text, "assumption": a[1].text, "verified": false }), Verdict::Pass),
        "celwag" => {
            let i = cx.ideal(&a[0])?;
            let samples = match c.kv.get("samples") {
                Some(s) => parse_usize(s)?,
                None => 12,
            };
            let t = suites::celwag_instance(&cx.ring, i, samples, window, bound)?;
            let v = tally_verdict(&t);
            (vec![v.label().to_string()], t.to_json(), v)
        }
        "depth" | "grade" | "pd" | "id" => {
            let m = cx.module(&a[0])?;
            let p = match c.name.as_str() {
                "depth" => homalg::depth(&m, bound)?,
                "grade" => homalg::grade(&m, bound)?,
                "pd" => homalg::pd_probe(&m, bound)?,
                _ => homalg::id_probe(&m, bound)?,
            };
            (probe_facts(&p), serde_json::to_value(&p).unwrap(), Verdict::Pass)
        }
        "ext" | "tor" => {
            let m = cx.module(&a[0])?;
            let n = cx.module(&a[1])?;
            let (lo, hi) = if a[2].text.contains("..") { parse_window(&a[2])? } else { let i = parse_usize(&a[2])?; (i, i) };
            let rs = (lo..=hi)
                .map(|i| if c.name == "ext" { homalg::ext(&m, &n, i, detail) } else { homalg::tor(&m, &n, i, detail) })
                .collect::<Result<Vec<_>>>()?;
            (homology_facts(&rs), serde_json::to_value(&rs).unwrap(), Verdict::Pass)
        }
        "lhom" => {
            let r = homalg::stable_hom(&*cx.module(&a[0])?, &*cx.module(&a[1])?, detail)?;
            let rs = vec![r];
            (homology_facts(&rs), serde_json::to_value(&rs[0]).unwrap(), Verdict::Pass)
        }
        "betti" => {
            let steps = match c.kv.get("steps") {
                Some(s) => parse_usize(s)?,
                None => bound,
            };
            let res = cx.module(&a[0])?.resolve(steps)?;
            let f = vec![if res.terminated.is_some() { "terminates".into() } else { "exceeds".into() }];
            (f, json!({ "betti": res.betti(), "terminated": res.terminated }), Verdict::Pass)
        }
        "hilbert" => {
            let m = cx.module(&a[0])?;
            let k = match c.kv.get("degrees") {
                Some(s) => parse_usize(s)?,
                None => st.degrees,
            };
            let lo = m.gen_twists().iter().copied().min().unwrap_or(0);
            let v = (lo..=lo + k as i32).map(|d| m.hilbert(d)).collect::<Result<Vec<_>>>()?;
            (vec![], json!({ "from": lo, "values": v }), Verdict::Pass)
        }
        "cm_type" => {
            let t = semigroup::cm_type(&cx.ring)?;
            let f = t.map(|t| vec![t.to_string()]).unwrap_or_default();
            (f, json!(t), if t.is_some() { Verdict::Pass } else { Verdict::Unknown })
        }
        "exactness" => {
            let m = cx.module(&a[0])?;
            let x = cx.module(&a[1])?;
            let n = parse_usize(&a[2])?;
            let e = homalg::four_term_exactness(&m, &x, n)?;
            let ok = e.at_tensor && e.at_ext && e.at_tor;
            (vec![if ok { "exact".into() } else { "not_exact".into() }], serde_json::to_value(&e).unwrap(), if ok { Verdict::Pass } else { Verdict::Fail })
        }
        "rigidity" => {
            let n = cx.module(&a[0])?;
            let k = match c.kv.get("samples") {
                Some(s) => parse_usize(s)?,
                None => 20,
            };
            let samples = suites::finite_length_samples(&cx.ring, k, st.seed)?;
            let mods: Vec<ModRef<F>> = samples.iter().map(|s| s.1.clone()).collect();
            let rr = homalg::rigidity_check(&n, &mods, window)?;
            let v = if !rr.violations.is_empty() {
                Verdict::Fail
            } else if rr.hypothesis_hits == 0 {
                Verdict::Vacuous
            } else {
                Verdict::Pass
            };
            let labels: Vec<&String> = samples.iter().map(|s| &s.0).collect();
            (vec![v.label().to_string()], json!({ "report": rr, "samples": labels }), v)
        }
        other => return Err(Error::Scenario(format!("check {other} has no evaluator"))),
    };
    let verdict = match c.kv.get("expect") {
        Some(e) => {
            let want: Vec<String> = e.text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if want.iter().all(|w| facts.contains(w)) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        None => default,
    };
    let mut values = json!({ "result": values, "observed": facts });
    if let Some(e) = c.get("expect") {
        values["expected"] = json!(e);
    }
    Ok(CheckOutcome::new(c.text.clone(), verdict, values))
}

/// Presentation and Hilbert data of the scenario's ring.
pub(super) fn ring_info<F: Field>(sc: &Scenario, field: F, degrees: usize) -> Result<Value> {
    let (r, sg) = build_ring(&sc.ring, field)?;
    let mut v = json!({
        "field": sc.ring.field.label(),
        "variables": r.names,
        "weights": r.weights(),
        "relation_basis": r.rels.iter().map(|e| r.render(e)).collect::<Vec<_>>(),
        "hilbert_function": r.hilbert_function(degrees as i32),
        "artinian": r.is_artinian(),
        "toric": sc.ring.toric,
    });
    if let Some(s) = &sg {
        v["semigroup"] = json!({
            "generators": s.semigroup.gens,
            "frobenius": s.semigroup.frobenius(),
            "gaps": s.semigroup.gaps(),
        });
        v["cm_type"] = json!(semigroup::cm_type(&r)?);
    }
    Ok(v)
}

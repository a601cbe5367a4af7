//! Property suites for the lemmas, the main theorem and its corollaries.
//!
//! Every conditional statement is tallied per instance: `instances` counts
//! what was examined, `hits` those where the hypothesis held, and a suite
//! with no hits is reported as vacuous rather than passing. `inconclusive`
//! counts instances where a bound cut the evaluation short.

use super::eval::{self, tally_verdict};
use super::report::{CheckOutcome, Report, Settings, Verdict};
use super::{builtin, load, FieldSpec};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Q};
use crate::fpmodule::{FPModule, ModRef};
use crate::homalg::{self, Detail, ProbeValue};
use crate::idealkit::{self, Ideal};
use crate::monomial::MonoCtx;
use crate::parse::parse_poly;
use crate::ring::{Elt, Ring, RingRef};
use crate::semigroup::{self, NumericalSemigroup, SemigroupRing};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::time::Instant;

const SUITES: &[&str] = &["lemmas", "main-l2", "cor-ext-pairs", "cor-window", "cor-regular-id", "burch", "celwag", "rigidity", "codim2", "jorgensen"];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.to_vec()
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub bound: usize,
    pub seed: u64,
    pub field: FieldSpec,
    pub window: (usize, usize),
    /// Sampled (M, N) pairs per ring in the pair-based suites.
    pub pairs: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { bound: 8, seed: 1, field: FieldSpec::Q, window: (1, 6), pairs: 60 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub instances: usize,
    pub hits: usize,
    pub inconclusive: usize,
    pub violations: Vec<Value>,
    pub info: Vec<Value>,
}

impl Tally {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "instances": self.instances,
            "hypothesis_hits": self.hits,
            "inconclusive": self.inconclusive,
            "violations": self.violations,
            "vacuous": self.hits == 0,
        });
        if !self.info.is_empty() {
            v["info"] = json!(self.info);
        }
        v
    }

    fn add(&mut self, o: Tally) {
        self.instances += o.instances;
        self.hits += o.hits;
        self.inconclusive += o.inconclusive;
        self.violations.extend(o.violations);
        self.info.extend(o.info);
    }

    fn sum(ts: Vec<Tally>) -> Tally {
        let mut t = Tally::default();
        for x in ts {
            t.add(x);
        }
        t
    }
}

fn timed(label: String, f: impl FnOnce() -> Result<Tally>) -> CheckOutcome {
    let t = Instant::now();
    let mut o = match f() {
        Ok(t) => CheckOutcome::new(label, tally_verdict(&t), t.to_json()),
        Err(e) => CheckOutcome::new(label, Verdict::Error, json!({ "error": e.to_string(), "budget_exceeded": e.is_budget() })),
    };
    o.elapsed = t.elapsed();
    o
}

pub fn theorem_suite(name: &str, p: &SuiteParams) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::Scenario(format!("unknown suite {name}; known: {}", SUITES.join(", "))));
    }
    let t0 = Instant::now();
    let mut rep = match p.field {
        FieldSpec::Q => run_typed(name, p, Q)?,
        FieldSpec::P(q) => run_typed(name, p, Fp::new(q).unwrap())?,
    };
    rep.elapsed = t0.elapsed();
    Ok(rep)
}

fn run_typed<F: Field>(name: &str, p: &SuiteParams, f: F) -> Result<Report> {
    let settings = Settings { seed: p.seed, bound: p.bound, window: p.window, ..Settings::default() };
    let mut rep = Report::new("suite", name, &p.field, settings);
    rep.checks = match name {
        "lemmas" => lemmas(p, f)?,
        "main-l2" => main_l2(p, f)?,
        "cor-ext-pairs" => cor_ext_pairs(p, f)?,
        "cor-window" => cor_window(p, f)?,
        "cor-regular-id" => cor_regular_id(p, f)?,
        "burch" => burch(p, f)?,
        "rigidity" => rigidity(p, f)?,
        "codim2" => codim2(p, f)?,
        "celwag" => {
            let mut out = Vec::new();
            for b in ["celwag-456", "celwag-345", "celwag-quadric"] {
                for mut c in scenario_checks(b, p, f.clone())? {
                    c.label = format!("{b}: {}", c.label);
                    out.push(c);
                }
            }
            out
        }
        "jorgensen" => scenario_checks("jorgensen", p, f)?,
        _ => unreachable!(),
    };
    Ok(rep.finish())
}

/// The Jorgensen-type example, run from its built-in scenario.
pub fn jorgensen_suite() -> Result<Report> {
    theorem_suite("jorgensen", &SuiteParams::default())
}

fn scenario_checks<F: Field>(name: &str, p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let mut sc = load(builtin(name).expect("registered scenario"), name)?;
    sc.settings.seed = p.seed;
    sc.settings.bound = p.bound;
    Ok(eval::run(&sc, f)?.checks)
}

// ---------------------------------------------------------------- rings

fn explicit<F: Field>(f: F, vars: &[&str], w: &[i32], rels: &[&str]) -> Result<RingRef<F>> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let ctx = MonoCtx::new(w.to_vec(), 0);
    let rels = rels.iter().map(|r| parse_poly(&f, &names, &ctx, r)).collect::<Result<Vec<_>>>()?;
    Ring::new(f, names, w.to_vec(), rels)
}

fn sg<F: Field>(f: F, gens: &[u32]) -> Result<SemigroupRing<F>> {
    semigroup::build_ring(&NumericalSemigroup::new(gens)?, &[], f, None)
}

struct TestRing<F: Field> {
    label: String,
    ring: RingRef<F>,
    /// Which quotients R/J count as 2-Tor-rigid here.
    rigid: Rigid,
}

#[derive(Clone, Copy, PartialEq)]
enum Rigid {
    /// Regular rings and hypersurfaces: every module.
    All,
    /// Codimension two complete intersections: finite length modules.
    FiniteLength,
    /// Elsewhere: R/I with m(I:m) ≠ mI.
    Burch,
}

fn hypersurface<F: Field>(f: F) -> Result<TestRing<F>> {
    Ok(TestRing { label: "k[x,y,z]/(xz-y^2)".into(), ring: explicit(f, &["x", "y", "z"], &[1, 1, 1], &["x*z - y^2"])?, rigid: Rigid::All })
}

fn jorgensen_ring<F: Field>(f: F) -> Result<TestRing<F>> {
    Ok(TestRing {
        label: "k[x,y,z]/(xz-y^2, xy-z^2)".into(),
        ring: explicit(f, &["x", "y", "z"], &[1, 1, 1], &["x*z - y^2", "x*y - z^2"])?,
        rigid: Rigid::FiniteLength,
    })
}

fn sg_test<F: Field>(f: F, gens: &[u32], rigid: Rigid) -> Result<TestRing<F>> {
    let label = format!("k[{}]", gens.iter().map(|a| format!("t^{a}")).collect::<Vec<_>>().join(","));
    Ok(TestRing { label, ring: sg(f, gens)?.ring, rigid })
}

// --------------------------------------------------------------- corpus

/// A module of the corpus with the facts the suites filter on.
#[derive(Clone)]
pub(super) struct Sample<F: Field> {
    pub label: String,
    pub module: ModRef<F>,
    /// The defining ideal of a cyclic quotient, when there is one.
    pub ideal: Option<Ideal<F>>,
    pub finite_length: bool,
    pub free: bool,
}

fn quotient_sample<F: Field>(r: &RingRef<F>, j: Ideal<F>) -> Result<Sample<F>> {
    let gens = j.minimal_gens()?;
    let label = format!("R/({})", gens.iter().map(|g| r.render(g)).collect::<Vec<_>>().join(", "));
    let fl = j.is_m_primary()?;
    Ok(Sample { label, module: FPModule::cyclic(r.clone(), &gens)?, ideal: Some(j), finite_length: fl, free: false })
}

/// R, k and the cyclic quotients R/J by monomial ideals with at most
/// `max_gens` generators of degree ≤ `degree_bound`, in enumeration order.
pub(super) fn corpus<F: Field>(r: &RingRef<F>, degree_bound: i32, max_gens: usize, limit: usize) -> Result<Vec<Sample<F>>> {
    let mut out = vec![
        Sample { label: "R".into(), module: FPModule::free(r.clone(), vec![0]), ideal: None, finite_length: false, free: true },
        Sample { label: "k".into(), module: FPModule::residue_field(r.clone()), ideal: Some(Ideal::maximal(r.clone())), finite_length: true, free: false },
    ];
    for j in idealkit::enumerate_monomial_ideals(r, degree_bound, max_gens)? {
        if out.len() >= limit {
            break;
        }
        if j.equals(&Ideal::maximal(r.clone())) {
            continue;
        }
        out.push(quotient_sample(r, j)?);
    }
    Ok(out)
}

/// Corpus with the smallest degree bound giving at least `want` modules.
fn auto_corpus<F: Field>(r: &RingRef<F>, want: usize, max_gens: usize) -> Result<Vec<Sample<F>>> {
    let mut c = Vec::new();
    for d in 1..=12 {
        c = corpus(r, d, max_gens, want)?;
        if c.len() >= want {
            break;
        }
    }
    Ok(c)
}

/// Seeded m-primary monomial quotients: a power of every variable plus up
/// to two random standard monomials.
pub(super) fn finite_length_samples<F: Field>(r: &RingRef<F>, count: usize, seed: u64) -> Result<Vec<(String, ModRef<F>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, ModRef<F>)> = Vec::new();
    let mut seen: Vec<Ideal<F>> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count {
        tries += 1;
        let mut gens: Vec<Elt<F>> = (0..r.nvars()).map(|v| r.mono(r.ctx.var_pow(v, rng.gen_range(1..=3)))).collect();
        for _ in 0..rng.gen_range(0..=2) {
            let d = rng.gen_range(1..=3) * r.weights().iter().copied().min().unwrap_or(1);
            let ms = r.std_monos(d);
            if !ms.is_empty() {
                gens.push(r.mono(ms[rng.gen_range(0..ms.len())]));
            }
        }
        let j = Ideal::new(r.clone(), &gens)?;
        if seen.iter().any(|s| s.equals(&j)) {
            continue;
        }
        let s = quotient_sample(r, j.clone())?;
        seen.push(j);
        out.push((s.label, s.module));
    }
    Ok(out)
}

/// Seeded sample of ordered pairs (i, j) from 0..n, filtered by `keep`.
fn sample_pairs(n: usize, count: usize, seed: u64, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
    if all.len() <= count {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = index::sample(&mut rng, all.len(), count).into_vec();
    idx.sort();
    idx.into_iter().map(|k| all[k]).collect()
}

fn zero<F: Field>(r: Result<homalg::HomologyReport>) -> Result<bool> {
    Ok(r?.is_zero)
}

/// pd k ≤ number of variables over a regular ring, so one step past that settles it.
fn is_regular_ring<F: Field>(r: &RingRef<F>) -> Result<bool> {
    Ok(homalg::pd_probe(&FPModule::residue_field(r.clone()), r.nvars() + 1)?.exact().is_some())
}

fn is_rigid<F: Field>(t: &TestRing<F>, s: &Sample<F>) -> Result<bool> {
    Ok(match t.rigid {
        Rigid::All => true,
        Rigid::FiniteLength => s.finite_length,
        Rigid::Burch => match &s.ideal {
            Some(i) => i.is_proper_nonzero() && idealkit::burch_condition(i)?,
            None => false,
        },
    })
}

// --------------------------------------------------------------- lemmas

fn lemma_rings<F: Field>(f: F) -> Result<Vec<(TestRing<F>, i32, usize)>> {
    // (ring, generator degree bound, generators per ideal)
    Ok(vec![
        (hypersurface(f.clone())?, 2, 3),
        (sg_test(f.clone(), &[4, 5, 6], Rigid::FiniteLength)?, 10, 6),
        (sg_test(f, &[3, 4, 5], Rigid::Burch)?, 10, 6),
    ])
}

/// Corpus size per ring in the lemma suite.
pub const LEMMA_CORPUS: usize = 40;
pub const LEMMA_MIN: usize = 30;

fn lemmas<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (k, (t, deg, gens)) in lemma_rings(f)?.into_iter().enumerate() {
        let r = &t.ring;
        // Raise the degree bound until the corpus reaches the minimum size.
        let mut c = corpus(r, deg, gens, LEMMA_CORPUS)?;
        for d in deg + 1..deg + 8 {
            if c.len() >= LEMMA_MIN {
                break;
            }
            c = corpus(r, d, gens, LEMMA_CORPUS)?;
        }
        let seed = p.seed.wrapping_add(k as u64);
        let lab = |s: &str| format!("{} [{}; {} modules]", s, t.label, c.len());
        let pairs = sample_pairs(c.len(), p.pairs, seed, |_, _| true);
        let fl_pairs = sample_pairs(c.len(), p.pairs, seed ^ 0x55, |i, j| c[i].finite_length && c[j].finite_length);
        // Tr Ω^n M and Ω^i N, shared by several checks.
        let tr: Vec<Vec<ModRef<F>>> = c
            .par_iter()
            .map(|s| (1..=2).map(|n| s.module.syzygy(n).and_then(|x| x.transpose())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let om: Vec<ModRef<F>> = c.par_iter().map(|s| s.module.syzygy(1)).collect::<Result<_>>()?;
        out.push(timed(lab("Tor_2(Tr Ω^n M,N) → Ext^n(M,R) ⊗ N → Ext^n(M,N) → Tor_1(Tr Ω^n M,N) → 0 exact, n = 1..3"), || exactness_tally(&c, &pairs)));
        out.push(timed(lab("Tor_n(M,N) = Ext^1(Tr Ω M, Ω^{n-1} N), n = 2,3"), || lem_tally(&c, &fl_pairs)));
        out.push(timed(lab("Ext^1(M,ΩN) = 0 ⇒ Tor_2(Tr Ω M, N) = 0"), || prop_tally(&c, &om, &tr, &pairs, 1)));
        out.push(timed(lab("Ext^2(M,ΩN) = 0 ⇒ Tor_1(Tr Ω M, N) = 0"), || prop_tally(&c, &om, &tr, &pairs, 2)));
        out.push(timed(lab("Ext^n(M,R) ⊗ Ω^i N ≅ Ext^n(M, Ω^i N) when Tor_1, Tor_2 vanish"), || natural_iso_tally(&c, &om, &tr, &pairs)));
        out.push(timed(lab("Ext^n, Ext^{n+1}(M,ΩN) = 0 with N rigid ⇒ Tor_j(Tr Ω^n M, N) = 0, Ext^n(M, Ω^i N ⊕ R) = 0"), || rigid_vanishing_tally(&t, &c, &om, &tr, &pairs)));
        out.push(timed(lab("pd Tr Ω^n M < ∞ ⇒ Ext^i(Tr Ω^n M, R) = 0, 1 ≤ i ≤ n"), || tr_finite_pd_tally(r, &tr, &c, p.bound)));
        out.push(timed(lab("dim Tor_i(M,N) = dim Tor_i(N,M), i ≤ 4"), || symmetry_tally(&c, &fl_pairs)));
        out.push(timed(lab("depth R/I = 0 ⇔ I:m ≠ I"), || depth_colon_tally(&c, p.bound)));
    }
    Ok(out)
}

fn exactness_tally<F: Field>(c: &[Sample<F>], pairs: &[(usize, usize)]) -> Result<Tally> {
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            for n in 1..=3 {
                t.instances += 1;
                t.hits += 1;
                let e = homalg::four_term_exactness(&c[i].module, &c[j].module, n)?;
                if !(e.at_tensor && e.at_ext && e.at_tor) {
                    t.violations.push(json!({ "M": c[i].label, "X": c[j].label, "n": n, "report": e }));
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn lem_tally<F: Field>(c: &[Sample<F>], pairs: &[(usize, usize)]) -> Result<Tally> {
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            let (m, nn) = (&c[i].module, &c[j].module);
            let trm = m.syzygy(1)?.transpose()?;
            for n in 2..=3 {
                t.instances += 1;
                let a = homalg::tor(m, nn, n, Detail::Full)?;
                let b = homalg::ext(&trm, &*nn.syzygy(n - 1)?, 1, Detail::Full)?;
                match (a.k_dimension, b.k_dimension) {
                    (Some(x), Some(y)) => {
                        t.hits += 1;
                        if x != y {
                            t.violations.push(json!({ "M": c[i].label, "N": c[j].label, "n": n, "tor": x, "ext": y }));
                        }
                    }
                    _ => t.inconclusive += 1,
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn prop_tally<F: Field>(c: &[Sample<F>], om: &[ModRef<F>], tr: &[Vec<ModRef<F>>], pairs: &[(usize, usize)], which: usize) -> Result<Tally> {
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            t.instances += 1;
            if zero::<F>(homalg::ext(&c[i].module, &om[j], which, Detail::ZeroOnly))? {
                t.hits += 1;
                let k = if which == 1 { 2 } else { 1 };
                if !zero::<F>(homalg::tor(&tr[i][0], &c[j].module, k, Detail::ZeroOnly))? {
                    t.violations.push(json!({ "M": c[i].label, "N": c[j].label, "ext_index": which, "tor_index": k }));
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn natural_iso_tally<F: Field>(c: &[Sample<F>], om: &[ModRef<F>], tr: &[Vec<ModRef<F>>], pairs: &[(usize, usize)]) -> Result<Tally> {
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            for n in 1..=2 {
                for (k, x) in [c[j].module.clone(), om[j].clone()].iter().enumerate() {
                    t.instances += 1;
                    let tm = &tr[i][n - 1];
                    if zero::<F>(homalg::tor(tm, x, 1, Detail::ZeroOnly))? && zero::<F>(homalg::tor(tm, x, 2, Detail::ZeroOnly))? {
                        t.hits += 1;
                        let e = homalg::four_term_exactness(&c[i].module, x, n)?;
                        if !(e.phi_injective && e.phi_surjective) {
                            t.violations.push(json!({ "M": c[i].label, "N": c[j].label, "n": n, "i": k, "report": e }));
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn rigid_vanishing_tally<F: Field>(tr_ring: &TestRing<F>, c: &[Sample<F>], om: &[ModRef<F>], tr: &[Vec<ModRef<F>>], pairs: &[(usize, usize)]) -> Result<Tally> {
    let r = &tr_ring.ring;
    let rr = FPModule::free(r.clone(), vec![0]);
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            let (m, nn) = (&c[i].module, &c[j]);
            for n in 1..=2 {
                t.instances += 1;
                if nn.free || !is_rigid(tr_ring, nn)? {
                    continue;
                }
                if !(zero::<F>(homalg::ext(m, &om[j], n, Detail::ZeroOnly))? && zero::<F>(homalg::ext(m, &om[j], n + 1, Detail::ZeroOnly))?) {
                    continue;
                }
                t.hits += 1;
                let mut bad = Vec::new();
                for jj in 1..=4 {
                    if !zero::<F>(homalg::tor(&tr[i][n - 1], &nn.module, jj, Detail::ZeroOnly))? {
                        bad.push(format!("Tor_{jj}(Tr Ω^{n} M, N) ≠ 0"));
                    }
                }
                if !zero::<F>(homalg::ext(m, &rr, n, Detail::ZeroOnly))? {
                    bad.push(format!("Ext^{n}(M,R) ≠ 0"));
                }
                for ii in 0..=2 {
                    let x = nn.module.syzygy(ii)?;
                    if !zero::<F>(homalg::ext(m, &x, n, Detail::ZeroOnly))? {
                        bad.push(format!("Ext^{n}(M, Ω^{ii} N) ≠ 0"));
                    }
                }
                if !bad.is_empty() {
                    t.violations.push(json!({ "M": c[i].label, "N": nn.label, "n": n, "failed": bad }));
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn tr_finite_pd_tally<F: Field>(r: &RingRef<F>, tr: &[Vec<ModRef<F>>], c: &[Sample<F>], bound: usize) -> Result<Tally> {
    let rr = FPModule::free(r.clone(), vec![0]);
    let ts: Vec<Tally> = (0..c.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for n in 1..=2 {
                t.instances += 1;
                let tm = &tr[i][n - 1];
                match homalg::pd_probe(tm, bound)?.value {
                    ProbeValue::Exact(_) => {
                        t.hits += 1;
                        for k in 1..=n {
                            if !zero::<F>(homalg::ext(tm, &rr, k, Detail::ZeroOnly))? {
                                t.violations.push(json!({ "M": c[i].label, "n": n, "ext_index": k }));
                            }
                        }
                    }
                    ProbeValue::Exceeds(_) => {}
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn symmetry_tally<F: Field>(c: &[Sample<F>], pairs: &[(usize, usize)]) -> Result<Tally> {
    let ts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            for k in 0..=4 {
                t.instances += 1;
                let a = homalg::tor(&c[i].module, &c[j].module, k, Detail::Full)?;
                let b = homalg::tor(&c[j].module, &c[i].module, k, Detail::Full)?;
                match (a.k_dimension, b.k_dimension) {
                    (Some(x), Some(y)) => {
                        t.hits += 1;
                        if x != y {
                            t.violations.push(json!({ "M": c[i].label, "N": c[j].label, "i": k, "dims": [x, y] }));
                        }
                    }
                    _ => t.inconclusive += 1,
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

fn depth_colon_tally<F: Field>(c: &[Sample<F>], bound: usize) -> Result<Tally> {
    let ts: Vec<Tally> = c
        .par_iter()
        .filter(|s| s.ideal.as_ref().is_some_and(|i| i.is_proper_nonzero()))
        .map(|s| {
            let mut t = Tally { instances: 1, hits: 1, ..Tally::default() };
            let i = s.ideal.as_ref().unwrap();
            let dz = idealkit::depth_zero(i)?;
            let d = homalg::depth(&s.module, bound)?;
            if dz != (d.exact() == Some(0)) {
                t.violations.push(json!({ "module": s.label, "colon_differs": dz, "depth": d.value }));
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

// -------------------------------------------------------------- main-l2

fn main_l2<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let rings = vec![
        (TestRing { label: "k[x,y]".into(), ring: explicit(f.clone(), &["x", "y"], &[1, 1], &[])?, rigid: Rigid::All }, 2, 3),
        (hypersurface(f.clone())?, 2, 2),
        (jorgensen_ring(f)?, 2, 2),
    ];
    let mut out = Vec::new();
    for (k, (t, deg, gens)) in rings.into_iter().enumerate() {
        let c = corpus(&t.ring, deg, gens, LEMMA_CORPUS)?;
        let pairs = sample_pairs(c.len(), p.pairs, p.seed.wrapping_add(k as u64), |_, j| !c[j].free);
        let label = format!("pd M < n from rigid N, pd Tr Ω^n M < ∞, Ext^n = Ext^n+1(M,ΩN) = 0 [{}; {} pairs]", t.label, pairs.len());
        out.push(timed(label, || {
            let ts: Vec<Tally> = pairs
                .par_iter()
                .map(|&(i, j)| l2_instance(&t, &c[i], &c[j], p.bound))
                .collect::<Result<_>>()?;
            Ok(Tally::sum(ts))
        }));
    }
    Ok(out)
}

fn l2_instance<F: Field>(t: &TestRing<F>, m: &Sample<F>, n: &Sample<F>, bound: usize) -> Result<Tally> {
    let mut tl = Tally::default();
    if !is_rigid(t, n)? {
        tl.instances += 3;
        return Ok(tl);
    }
    let dn = homalg::depth(&n.module, bound)?;
    let on = n.module.syzygy(1)?;
    for k in 1..=3usize {
        tl.instances += 1;
        let Some(d) = dn.exact() else {
            tl.inconclusive += 1;
            continue;
        };
        if k < d {
            continue;
        }
        if !(zero::<F>(homalg::ext(&m.module, &on, k, Detail::ZeroOnly))? && zero::<F>(homalg::ext(&m.module, &on, k + 1, Detail::ZeroOnly))?) {
            continue;
        }
        let trm = m.module.syzygy(k)?.transpose()?;
        if homalg::pd_probe(&trm, bound)?.exact().is_none() {
            continue;
        }
        tl.hits += 1;
        match homalg::pd_probe(&m.module, bound)?.value {
            ProbeValue::Exact(pd) if pd < k => {}
            v => tl.violations.push(json!({ "M": m.label, "N": n.label, "n": k, "pd_M": v })),
        }
    }
    Ok(tl)
}

// -------------------------------------------------------- cor-ext-pairs

fn cor_ext_pairs<F: Field>(_p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let rings = vec![(sg_test(f.clone(), &[4, 5, 6], Rigid::FiniteLength)?, 12, 3), (sg_test(f, &[3, 4, 5], Rigid::Burch)?, 10, 3)];
    let mut out = Vec::new();
    for (t, deg, gens) in rings {
        let r = t.ring.clone();
        let label = format!("Ext^n(I,I), Ext^n+1(I,I) not both zero, I weakly m-full with depth R/I = 0, n = 1..4 [{}; ideals ≤ {} gens of degree ≤ {}]", t.label, gens, deg);
        out.push(timed(label, || {
            let regular = is_regular_ring(&r)?;
            let ideals = idealkit::enumerate_monomial_ideals(&r, deg, gens)?;
            let ts: Vec<Tally> = ideals
                .par_iter()
                .map(|i| {
                    let mut t = Tally { instances: 4, ..Tally::default() };
                    if regular || !i.is_proper_nonzero() || !idealkit::depth_zero(i)? || !idealkit::is_weakly_mfull(i)? {
                        return Ok(t);
                    }
                    let im = FPModule::ideal(r.clone(), &i.gens)?;
                    let z: Vec<bool> = (1..=5).map(|n| zero::<F>(homalg::ext(&im, &im, n, Detail::ZeroOnly))).collect::<Result<_>>()?;
                    t.hits = 4;
                    for n in 1..=4 {
                        if z[n - 1] && z[n] {
                            t.violations.push(json!({ "ring": r.rels.iter().map(|x| r.render(x)).collect::<Vec<_>>(), "I": i.render(), "n": n }));
                        }
                    }
                    t.info.push(json!({ "I": i.render(), "ext_zero": z }));
                    Ok(t)
                })
                .collect::<Result<_>>()?;
            Ok(Tally::sum(ts))
        }));
    }
    Ok(out)
}

// ------------------------------------------------------------ cor-window

fn cor_window<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let s = sg(f, &[5, 6, 8, 9])?;
    let r = s.ring.clone();
    let label = "some Ext^i(m,R) ≠ 0 with n ≤ i ≤ n+d+1, n = 1..4 [k[t^5,t^6,t^8,t^9]]".to_string();
    let bound = p.bound;
    Ok(vec![timed(label, || {
        let mut t = Tally::default();
        let m = Ideal::maximal(r.clone());
        let rr = FPModule::free(r.clone(), vec![0]);
        let d = homalg::ring_depth(&r, bound)?.exact().ok_or_else(|| Error::Invalid("depth of R not certified".into()))?;
        let ty = semigroup::cm_type(&r)?;
        let hyp = idealkit::depth_zero(&m)? && idealkit::is_weakly_mfull(&m)? && ty.is_some_and(|x| x > 1);
        // Ext^i(m,R) ≅ Ext^{i+1}(k,R) for i ≥ 1, the Bass numbers of R.
        let need = 4 + d + 2;
        let mu = homalg::bass_numbers(&rr, need.max(bound))?.ok_or_else(|| Error::Invalid("no Artinian reduction".into()))?;
        let nonzero: Vec<bool> = (0..=4 + d + 1).map(|i| i >= 1 && mu[i + 1] > 0).collect();
        // Direct cross-check on the smallest indices.
        let mm = FPModule::ideal(r.clone(), &m.gens)?;
        for i in 1..=2 {
            let direct = !homalg::ext(&mm, &rr, i, Detail::ZeroOnly)?.is_zero;
            if direct != nonzero[i] {
                t.violations.push(json!({ "cross_check": i, "direct_nonzero": direct, "bass_nonzero": nonzero[i] }));
            }
        }
        t.info.push(json!({ "depth_R": d, "type": ty, "bass_numbers": mu }));
        for n in 1..=4 {
            t.instances += 1;
            if !hyp {
                continue;
            }
            t.hits += 1;
            if !(n..=n + d + 1).any(|i| nonzero[i]) {
                t.violations.push(json!({ "I": "m", "n": n, "window": [n, n + d + 1] }));
            }
        }
        Ok(t)
    })])
}

// -------------------------------------------------------- cor-regular-id

fn cor_regular_id<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let rings = vec![
        (sg_test(f.clone(), &[4, 5, 6], Rigid::FiniteLength)?, 12, 3),
        (sg_test(f.clone(), &[3, 4, 5], Rigid::Burch)?, 10, 3),
        (sg_test(f.clone(), &[5, 6, 8, 9], Rigid::Burch)?, 12, 3),
        (TestRing { label: "k[x,y]".into(), ring: explicit(f, &["x", "y"], &[1, 1], &[])?, rigid: Rigid::All }, 2, 2),
    ];
    let mut out = Vec::new();
    for (t, deg, gens) in rings {
        let r = t.ring.clone();
        let label = format!("id I < ∞ ⇒ R regular, I weakly m-full with depth R/I = 0 [{}]", t.label);
        out.push(timed(label, || {
            let regular = is_regular_ring(&r)?;
            let ideals = idealkit::enumerate_monomial_ideals(&r, deg, gens)?;
            let ts: Vec<Tally> = ideals
                .par_iter()
                .map(|i| {
                    let mut t = Tally { instances: 1, ..Tally::default() };
                    if !i.is_proper_nonzero() || !idealkit::depth_zero(i)? || !idealkit::is_weakly_mfull(i)? {
                        return Ok(t);
                    }
                    let im = FPModule::ideal(r.clone(), &i.gens)?;
                    let id = homalg::id_probe(&im, p.bound)?;
                    match id.value {
                        ProbeValue::Exact(v) => {
                            t.hits += 1;
                            if !regular {
                                t.violations.push(json!({ "I": i.render(), "id": v }));
                            }
                        }
                        ProbeValue::Exceeds(_) => {}
                    }
                    Ok(t)
                })
                .collect::<Result<_>>()?;
            let mut t = Tally::sum(ts);
            t.info.push(json!({ "regular": regular }));
            Ok(t)
        }));
    }
    Ok(out)
}

// ----------------------------------------------------------- burch, celwag

/// For M in the sample list and n in the window: Tor_n = Tor_{n+1}(M, R/I) = 0
/// must give pd M ≤ n.
pub(super) fn tor_pd_test<F: Field>(r: &RingRef<F>, i: &Ideal<F>, samples: &[Sample<F>], window: (usize, usize), bound: usize) -> Result<Tally> {
    let q = FPModule::cyclic(r.clone(), &i.gens)?;
    let (lo, hi) = window;
    let ts: Vec<Tally> = samples
        .par_iter()
        .map(|s| {
            let mut t = Tally::default();
            let z: Vec<bool> = (lo..=hi + 1).map(|k| zero::<F>(homalg::tor(&s.module, &q, k, Detail::ZeroOnly))).collect::<Result<_>>()?;
            let mut pd = None;
            for n in lo..=hi {
                t.instances += 1;
                if !(z[n - lo] && z[n + 1 - lo]) {
                    continue;
                }
                t.hits += 1;
                let v = match pd {
                    Some(v) => v,
                    None => {
                        let v = homalg::pd_probe(&s.module, bound)?.value;
                        pd = Some(v);
                        v
                    }
                };
                match v {
                    ProbeValue::Exact(x) if x <= n => {}
                    ProbeValue::Exceeds(b) if b <= n => t.inconclusive += 1,
                    v => t.violations.push(json!({ "I": i.render(), "M": s.label, "n": n, "pd_M": v })),
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(Tally::sum(ts))
}

/// Tor test samples: cyclic quotients other than R and k.
fn tor_samples<F: Field>(r: &RingRef<F>, count: usize) -> Result<Vec<Sample<F>>> {
    let c = auto_corpus(r, count + 2, 2)?;
    Ok(c.into_iter().filter(|s| !s.free && s.label != "k").take(count).collect())
}

pub(super) fn celwag_instance<F: Field>(r: &RingRef<F>, i: &Ideal<F>, samples: usize, window: (usize, usize), bound: usize) -> Result<Tally> {
    if !i.is_proper_nonzero() || !idealkit::depth_zero(i)? {
        let (lo, hi) = window;
        return Ok(Tally { instances: samples * (hi - lo + 1), info: vec![json!("depth R/I > 0: hypothesis fails")], ..Tally::default() });
    }
    tor_pd_test(r, i, &tor_samples(r, samples)?, window, bound)
}

fn burch<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let rings = vec![(sg_test(f.clone(), &[4, 5, 6], Rigid::FiniteLength)?, 10, p.window), (sg_test(f, &[3, 4, 5], Rigid::Burch)?, 8, (p.window.0, p.window.1.min(5)))];
    let mut out = Vec::new();
    for (t, deg, window) in rings {
        let r = t.ring.clone();
        let label = format!("m(I:m) ≠ mI and Tor_n = Tor_n+1(M,R/I) = 0 ⇒ pd M ≤ n, n = {}..{} [{}]", window.0, window.1, t.label);
        out.push(timed(label, || {
            let ideals: Vec<Ideal<F>> = idealkit::enumerate_monomial_ideals(&r, deg, 2)?
                .into_iter()
                .filter(|i| i.is_proper_nonzero())
                .collect();
            let mut burch = Vec::new();
            let mut others = 0;
            for i in ideals {
                if burch.len() >= 6 {
                    break;
                }
                if idealkit::burch_condition(&i)? {
                    burch.push(i);
                } else {
                    others += 1;
                }
            }
            let samples = tor_samples(&r, 14)?;
            let mut t = Tally::default();
            for i in &burch {
                t.add(tor_pd_test(&r, i, &samples, window, p.bound)?);
            }
            t.info.push(json!({ "burch_ideals": burch.iter().map(|i| i.render()).collect::<Vec<_>>(), "skipped_non_burch": others, "samples": samples.iter().map(|s| s.label.clone()).collect::<Vec<_>>() }));
            Ok(t)
        }));
    }
    Ok(out)
}

// ------------------------------------------------------------- rigidity

fn rigidity<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let t = hypersurface(f)?;
    rigidity_on(&t, p, 20)
}

fn rigidity_on<F: Field>(t: &TestRing<F>, p: &SuiteParams, count: usize) -> Result<Vec<CheckOutcome>> {
    let r = &t.ring;
    let samples = finite_length_samples(r, count, p.seed)?;
    let mods: Vec<ModRef<F>> = samples.iter().map(|s| s.1.clone()).collect();
    let x = |s: &str| -> Result<Elt<F>> { Ok(r.nf(&parse_poly(&r.field, &r.names, &r.ctx, s)?)) };
    let mut ns: Vec<(String, ModRef<F>)> = vec![("k".into(), FPModule::residue_field(r.clone())), ("R/(x)".into(), FPModule::cyclic(r.clone(), &[x("x")?])?)];
    ns.extend(samples.iter().take(3).cloned());
    let mut out = Vec::new();
    for (label, n) in ns {
        out.push(timed(format!("2-Tor-rigidity of N = {label}, window {}..{} [{}; {} samples]", p.window.0, p.window.1, t.label, mods.len()), || {
            let rr = homalg::rigidity_check(&n, &mods, p.window)?;
            let (lo, hi) = p.window;
            Ok(Tally {
                instances: mods.len() * (hi - lo + 1),
                hits: rr.hypothesis_hits,
                inconclusive: 0,
                violations: rr.violations.iter().map(|v| json!({ "N": label, "M": samples[v.sample].0, "n": v.n, "nonzero_at": v.nonzero_at })).collect(),
                info: vec![],
            })
        }));
    }
    Ok(out)
}

// --------------------------------------------------------------- codim2

fn codim2<F: Field>(p: &SuiteParams, f: F) -> Result<Vec<CheckOutcome>> {
    let t = jorgensen_ring(f)?;
    let r = t.ring.clone();
    let bound = p.bound;
    let mut out = Vec::new();
    let c = corpus(&r, 2, 2, 24)?;
    let label = "Ext^1(M,I), Ext^2(M,I) not both zero, M not MCM, I m-primary [k[x,y,z]/(xz-y^2, xy-z^2)]".to_string();
    out.push(timed(label, || {
        let dr = homalg::ring_depth(&r, bound)?.exact().ok_or_else(|| Error::Invalid("depth of R not certified".into()))?;
        let ideals: Vec<Ideal<F>> = idealkit::enumerate_monomial_ideals(&r, 2, 3)?
            .into_iter()
            .filter(|i| i.is_proper_nonzero() && i.is_m_primary().unwrap_or(false))
            .take(8)
            .collect();
        let imods: Vec<ModRef<F>> = ideals.iter().map(|i| FPModule::ideal(r.clone(), &i.gens)).collect::<Result<_>>()?;
        let ms: Vec<&Sample<F>> = c.iter().filter(|s| !s.free).take(10).collect();
        let ts: Vec<Tally> = ms
            .par_iter()
            .map(|s| {
                let mut t = Tally::default();
                let d = homalg::depth(&s.module, bound)?;
                for (i, im) in ideals.iter().zip(&imods) {
                    t.instances += 1;
                    match d.exact() {
                        Some(x) if x < dr => {}
                        Some(_) => continue,
                        None => {
                            t.inconclusive += 1;
                            continue;
                        }
                    }
                    t.hits += 1;
                    let e1 = zero::<F>(homalg::ext(&s.module, im, 1, Detail::ZeroOnly))?;
                    let e2 = zero::<F>(homalg::ext(&s.module, im, 2, Detail::ZeroOnly))?;
                    if e1 && e2 {
                        t.violations.push(json!({ "M": s.label, "I": i.render() }));
                    }
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        Ok(Tally::sum(ts))
    }));
    // Finite length quotients R/I are 2-Tor-rigid here.
    let fl: Vec<&Sample<F>> = c.iter().filter(|s| s.finite_length && s.label != "k").take(3).collect();
    let samples = finite_length_samples(&r, 10, p.seed)?;
    let mods: Vec<ModRef<F>> = samples.iter().map(|s| s.1.clone()).collect();
    for s in fl {
        out.push(timed(format!("2-Tor-rigidity of finite length N = {} [{}]", s.label, t.label), || {
            let rr = homalg::rigidity_check(&s.module, &mods, p.window)?;
            let (lo, hi) = p.window;
            Ok(Tally {
                instances: mods.len() * (hi - lo + 1),
                hits: rr.hypothesis_hits,
                inconclusive: 0,
                violations: rr.violations.iter().map(|v| json!({ "N": s.label, "M": samples[v.sample].0, "n": v.n, "nonzero_at": v.nonzero_at })).collect(),
                info: vec![],
            })
        }));
    }
    Ok(out)
}

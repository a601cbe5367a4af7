//! Buchberger's algorithm for homogeneous submodules of graded free modules
//! over k[x]/J, with J given by a reduced Groebner basis.
//!
//! Relations act at every position: the submodule is augmented by J·e_p.
//! Pairs are processed degree by degree, which also yields minimal
//! generating sets (an input is minimal iff it survives reduction once all
//! pairs of its degree are done).

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::monomial::{Mono, MonoCtx};
use crate::vector::{make_monic, merge_into, mul_term, term_cmp, Term, Vector};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

pub const DEFAULT_BUDGET: usize = 200_000;
pub const BUDGET_ENV: &str = "MFULL_SPAIR_BUDGET";

/// S-pair budget: `MFULL_SPAIR_BUDGET` if set, else 200000.
pub fn default_budget() -> usize {
    static B: OnceLock<usize> = OnceLock::new();
    *B.get_or_init(|| {
        std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
    })
}

/// The coefficient field, monomial context and relation basis of a ring.
pub struct Base<'a, F: Field> {
    pub f: &'a F,
    pub ctx: &'a MonoCtx,
    pub rels: &'a [Vector<El<F>>],
}

impl<F: Field> Clone for Base<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<F: Field> Copy for Base<'_, F> {}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub budget: usize,
    /// Stop once every input has been placed (minimal generators only).
    pub inputs_only: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { budget: default_budget(), inputs_only: false }
    }
}

#[derive(Clone, Debug)]
pub struct GbOutput<E> {
    /// Reduced, monic, sorted by leading term (empty when `inputs_only`).
    pub basis: Vec<Vector<E>>,
    /// Which inputs belong to the minimal generating set found.
    pub minimal: Vec<bool>,
    pub pairs: usize,
}

struct Elem<E> {
    v: Vector<E>,
    lm: Mono,
    mask: u32,
    rel: bool,
    pure: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Mono,
}

/// Weighted degree of a homogeneous vector, checking homogeneity.
pub fn vector_degree<E>(v: &Vector<E>, twists: &[i32]) -> Result<Option<i32>> {
    let mut d = None;
    for t in &v.terms {
        let tw = *twists.get(t.pos as usize).ok_or_else(|| {
            Error::Ambient(format!("position {} outside rank {}", t.pos, twists.len()))
        })?;
        let e = t.m.deg + tw;
        match d {
            None => d = Some(e),
            Some(x) if x != e => {
                return Err(Error::NonHomogeneous(format!(
                    "term at position {} has degree {} but expected {}",
                    t.pos, e, x
                )))
            }
            _ => {}
        }
    }
    Ok(d)
}

struct Engine<'a, F: Field> {
    b: Base<'a, F>,
    twists: &'a [i32],
    rel_lm: Vec<(Mono, u32)>,
    elems: Vec<Elem<El<F>>>,
    per_pos: HashMap<u32, Vec<usize>>,
    pairs: BTreeMap<i32, Vec<Pair>>,
    processed: usize,
    budget: usize,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(b: Base<'a, F>, twists: &'a [i32], budget: usize) -> Self {
        let rel_lm = b.rels.iter().map(|r| {
            let m = r.terms[0].m;
            (m, m.mask())
        });
        Engine {
            b,
            twists,
            rel_lm: rel_lm.collect(),
            elems: Vec::new(),
            per_pos: HashMap::new(),
            pairs: BTreeMap::new(),
            processed: 0,
            budget,
        }
    }

    fn find(&self, pos: u32, m: &Mono) -> Option<Vector<El<F>>> {
        let mk = m.mask();
        for (k, (lm, msk)) in self.rel_lm.iter().enumerate() {
            if msk & !mk == 0 && lm.divides(m) {
                return Some(self.b.rels[k].at_pos(pos));
            }
        }
        None.or_else(|| {
            let list = self.per_pos.get(&pos)?;
            for &i in list {
                let e = &self.elems[i];
                if !e.rel && e.mask & !mk == 0 && e.lm.divides(m) {
                    return Some(e.v.clone());
                }
            }
            None
        })
    }

    /// Full reduction; the result is zero or has no reducible term.
    fn reduce(&self, v: Vector<El<F>>) -> Vector<El<F>> {
        let f = self.b.f;
        let mut done: Vec<Term<El<F>>> = Vec::new();
        let mut rest = v.terms;
        let mut idx = 0;
        while idx < rest.len() {
            let (pos, m) = (rest[idx].pos, rest[idx].m);
            if let Some(g) = self.find(pos, &m) {
                let lm = g.terms[0].m;
                let q = m.div(&lm);
                let c = f.neg(&rest[idx].c);
                let mut out = Vec::with_capacity(rest.len() - idx + g.len());
                merge_into(f, &rest[idx..], &c, &q, &g.terms, &mut out);
                rest = out;
                idx = 0;
            } else {
                done.push(rest[idx].clone());
                idx += 1;
            }
        }
        Vector { terms: done }
    }

    fn ensure_rels(&mut self, p: u32) {
        if self.per_pos.contains_key(&p) {
            return;
        }
        let mut list = Vec::new();
        for r in self.b.rels {
            let v = r.at_pos(p);
            let lm = v.terms[0].m;
            self.elems.push(Elem { v, lm, mask: lm.mask(), rel: true, pure: true });
            list.push(self.elems.len() - 1);
        }
        self.per_pos.insert(p, list);
    }

    fn insert(&mut self, v: Vector<El<F>>) {
        let lead = v.terms[0].clone();
        let p = lead.pos;
        self.ensure_rels(p);
        let pure = v.terms.iter().all(|t| t.pos == p);
        let lm = lead.m;
        let t = self.elems.len();
        self.elems.push(Elem { v, lm, mask: lm.mask(), rel: false, pure });
        let ctx = self.b.ctx;

        // Chain criterion on existing pairs at this position.
        for list in self.pairs.values_mut() {
            list.retain(|pr| {
                if pr.pos != p || !lm.divides(&pr.lcm) {
                    return true;
                }
                let a = ctx.lcm(&self.elems[pr.i].lm, &lm);
                let b = ctx.lcm(&self.elems[pr.j].lm, &lm);
                a == pr.lcm || b == pr.lcm
            });
        }
        self.pairs.retain(|_, l| !l.is_empty());

        let partners = self.per_pos[&p].clone();
        let mut cand: Vec<(usize, Mono, bool)> = partners
            .iter()
            .map(|&i| {
                let e = &self.elems[i];
                let l = ctx.lcm(&e.lm, &lm);
                let prod = e.pure && pure && e.lm.coprime(&lm);
                (i, l, prod)
            })
            .collect();
        // Criterion M: drop pairs whose lcm is properly divisible by another.
        let keep: Vec<bool> = cand
            .iter()
            .map(|(_, l, _)| !cand.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)))
            .collect();
        let mut c2 = Vec::new();
        for (k, x) in cand.drain(..).enumerate() {
            if keep[k] {
                c2.push(x);
            }
        }
        // Criterion F with the product criterion per lcm class.
        let mut seen: HashMap<Mono, bool> = HashMap::new();
        for (_, l, prod) in &c2 {
            let e = seen.entry(*l).or_insert(false);
            *e |= *prod;
        }
        let mut used: HashMap<Mono, ()> = HashMap::new();
        for (i, l, _) in c2 {
            if seen[&l] || used.contains_key(&l) {
                continue;
            }
            used.insert(l, ());
            let d = l.deg + self.twists[p as usize];
            self.pairs.entry(d).or_default().push(Pair { i, j: t, pos: p, lcm: l });
        }
        self.per_pos.get_mut(&p).unwrap().push(t);
    }

    fn spoly(&self, pr: &Pair) -> Vector<El<F>> {
        let f = self.b.f;
        let a = &self.elems[pr.i];
        let b = &self.elems[pr.j];
        let qa = pr.lcm.div(&a.lm);
        let qb = pr.lcm.div(&b.lm);
        let s = mul_term(f, &f.one(), &qa, &a.v);
        let mut out = Vec::with_capacity(s.len() + b.v.len());
        merge_into(f, &s.terms, &f.neg(&f.one()), &qb, &b.v.terms, &mut out);
        Vector { terms: out }
    }

    fn process_degree(&mut self, d: i32) -> Result<()> {
        while let Some(list) = self.pairs.remove(&d) {
            for pr in list {
                self.processed += 1;
                if self.processed > self.budget {
                    return Err(Error::Budget(self.budget));
                }
                let s = self.spoly(&pr);
                let r = self.reduce(s);
                if !r.is_zero() {
                    let r = make_monic(self.b.f, &r);
                    self.insert(r);
                }
            }
        }
        Ok(())
    }
}

/// Runs Buchberger on `gens` inside the free module with the given twists.
pub fn groebner<F: Field>(
    b: Base<'_, F>,
    twists: &[i32],
    gens: &[Vector<El<F>>],
    opt: &GbOptions,
) -> Result<GbOutput<El<F>>> {
    let mut order: Vec<(i32, usize)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if let Some(d) = vector_degree(g, twists)? {
            order.push((d, k));
        }
    }
    order.sort();
    let mut eng = Engine::new(b, twists, opt.budget);
    let mut minimal = vec![false; gens.len()];
    let mut next = 0;
    loop {
        let pd = eng.pairs.keys().next().copied();
        let id = order.get(next).map(|x| x.0);
        let d = match (pd, id) {
            (None, None) => break,
            (Some(a), None) => {
                if opt.inputs_only {
                    break;
                }
                a
            }
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        eng.process_degree(d)?;
        while next < order.len() && order[next].0 == d {
            let k = order[next].1;
            let r = eng.reduce(gens[k].clone());
            if !r.is_zero() {
                minimal[k] = true;
                let r = make_monic(b.f, &r);
                eng.insert(r);
            }
            next += 1;
        }
    }
    let pairs = eng.processed;
    if opt.inputs_only {
        return Ok(GbOutput { basis: Vec::new(), minimal, pairs });
    }
    // Interreduce tails.
    let idx: Vec<usize> = (0..eng.elems.len()).filter(|&i| !eng.elems[i].rel).collect();
    for &i in &idx {
        let v = &eng.elems[i].v;
        let lead = v.terms[0].clone();
        let tail = Vector { terms: v.terms[1..].to_vec() };
        let r = eng.reduce(tail);
        let mut t = vec![lead];
        t.extend(r.terms);
        eng.elems[i].v = Vector { terms: t };
    }
    let mut basis: Vec<Vector<El<F>>> = idx.iter().map(|&i| eng.elems[i].v.clone()).collect();
    basis.sort_by(|a, b| {
        let (x, y) = (&a.terms[0], &b.terms[0]);
        term_cmp(y.pos, &y.m, x.pos, &x.m)
    });
    Ok(GbOutput { basis, minimal, pairs })
}

/// A reduced Groebner basis of a submodule, with reduction and membership.
#[derive(Clone, Debug)]
pub struct Gb<E> {
    pub twists: Vec<i32>,
    pub basis: Vec<Vector<E>>,
    lead_index: HashMap<u32, Vec<(Mono, u32, usize)>>,
}

impl<E: Clone> Gb<E> {
    pub fn from_basis(twists: Vec<i32>, basis: Vec<Vector<E>>) -> Self {
        let mut lead_index: HashMap<u32, Vec<(Mono, u32, usize)>> = HashMap::new();
        for (k, v) in basis.iter().enumerate() {
            let t = &v.terms[0];
            lead_index.entry(t.pos).or_default().push((t.m, t.m.mask(), k));
        }
        Gb { twists, basis, lead_index }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Leading monomials at position `p`.
    pub fn leads_at(&self, p: u32) -> Vec<Mono> {
        self.lead_index.get(&p).map(|l| l.iter().map(|x| x.0).collect()).unwrap_or_default()
    }

    pub fn is_lead_divisible(&self, p: u32, m: &Mono) -> bool {
        let mk = m.mask();
        self.lead_index
            .get(&p)
            .map(|l| l.iter().any(|(lm, msk, _)| msk & !mk == 0 && lm.divides(m)))
            .unwrap_or(false)
    }
}

impl<E: Clone + PartialEq> Gb<E> {
    /// Normal form of `v` modulo the submodule plus the relations.
    pub fn reduce<F: Field<Elem = E>>(&self, b: Base<'_, F>, v: &Vector<E>) -> Vector<E> {
        let f = b.f;
        let rel_lm: Vec<(Mono, u32)> = b.rels.iter().map(|r| (r.terms[0].m, r.terms[0].m.mask())).collect();
        let mut done: Vec<Term<E>> = Vec::new();
        let mut rest = v.terms.clone();
        let mut idx = 0;
        while idx < rest.len() {
            let (pos, m) = (rest[idx].pos, rest[idx].m);
            let mk = m.mask();
            let mut red: Option<Vector<E>> = None;
            for (k, (lm, msk)) in rel_lm.iter().enumerate() {
                if msk & !mk == 0 && lm.divides(&m) {
                    red = Some(b.rels[k].at_pos(pos));
                    break;
                }
            }
            if red.is_none() {
                if let Some(l) = self.lead_index.get(&pos) {
                    for (lm, msk, k) in l {
                        if msk & !mk == 0 && lm.divides(&m) {
                            red = Some(self.basis[*k].clone());
                            break;
                        }
                    }
                }
            }
            match red {
                Some(g) => {
                    let q = m.div(&g.terms[0].m);
                    let c = f.div(&f.neg(&rest[idx].c), &g.terms[0].c);
                    let mut out = Vec::with_capacity(rest.len() - idx + g.len());
                    merge_into(f, &rest[idx..], &c, &q, &g.terms, &mut out);
                    rest = out;
                    idx = 0;
                }
                None => {
                    done.push(rest[idx].clone());
                    idx += 1;
                }
            }
        }
        Vector { terms: done }
    }

    pub fn member<F: Field<Elem = E>>(&self, b: Base<'_, F>, v: &Vector<E>) -> bool {
        self.reduce(b, v).is_zero()
    }

    /// Number of standard (position, monomial) pairs of total degree `d`.
    pub fn hilbert(&self, std_monos: &dyn Fn(i32) -> Vec<Mono>, d: i32) -> usize {
        let mut n = 0;
        for (p, tw) in self.twists.iter().enumerate() {
            for m in std_monos(d - tw) {
                if !self.is_lead_divisible(p as u32, &m) {
                    n += 1;
                }
            }
        }
        n
    }
}

/// Computes a reduced Groebner basis handle.
pub fn gb<F: Field>(b: Base<'_, F>, twists: &[i32], gens: &[Vector<El<F>>]) -> Result<Gb<El<F>>> {
    let out = groebner(b, twists, gens, &GbOptions::default())?;
    Ok(Gb::from_basis(twists.to_vec(), out.basis))
}

/// Indices of a minimal generating subset of `gens` (in input order).
pub fn minimal_generators<F: Field>(b: Base<'_, F>, twists: &[i32], gens: &[Vector<El<F>>]) -> Result<Vec<usize>> {
    let opt = GbOptions { inputs_only: true, ..GbOptions::default() };
    let out = groebner(b, twists, gens, &opt)?;
    Ok((0..gens.len()).filter(|&k| out.minimal[k]).collect())
}

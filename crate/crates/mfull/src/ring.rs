//! Weighted-graded quotient rings k[x_1..x_n]/J.

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::groebner::{self, Base, Gb};
use crate::monomial::{Mono, MonoCtx, MAX_VARS};
use crate::vector::{self, poly_times, Term, Vector};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub type Elt<F> = Vector<El<F>>;

/// An immutable graded ring; share it behind an `Arc`.
#[derive(Debug)]
pub struct Ring<F: Field> {
    pub field: F,
    pub names: Vec<String>,
    pub ctx: MonoCtx,
    /// Reduced Groebner basis of the relation ideal.
    pub rels: Vec<Elt<F>>,
    /// Relations as given.
    pub given: Vec<Elt<F>>,
    empty: Gb<El<F>>,
    std_cache: RwLock<HashMap<i32, Arc<Vec<Mono>>>>,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    /// Builds k[vars]/(relations), checking weights and homogeneity.
    pub fn new(field: F, names: Vec<String>, weights: Vec<i32>, relations: Vec<Elt<F>>) -> Result<RingRef<F>> {
        Ring::with_block(field, names, weights, relations, 0)
    }

    /// As `new`, with the first `block` variables forming an elimination block.
    pub fn with_block(
        field: F,
        names: Vec<String>,
        weights: Vec<i32>,
        relations: Vec<Elt<F>>,
        block: usize,
    ) -> Result<RingRef<F>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing("one weight per variable required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable name {n}")));
            }
        }
        for (n, w) in names.iter().zip(&weights) {
            if *w <= 0 {
                return Err(Error::InvalidRing(format!("weight of {n} must be positive, got {w}")));
            }
        }
        let ctx = MonoCtx::new(weights, block);
        // Recompute cached degrees under this context.
        let relations: Vec<Elt<F>> = relations
            .into_iter()
            .map(|r| {
                let t = r.terms.iter().map(|t| Term { pos: 0, m: ctx.make(t.m.e), c: t.c.clone() }).collect();
                Vector::from_terms(&field, t)
            })
            .filter(|r: &Elt<F>| !r.is_zero())
            .collect();
        for r in &relations {
            let d0 = r.terms[0].m.deg;
            for t in &r.terms {
                if t.m.deg != d0 {
                    return Err(Error::NonHomogeneous(format!(
                        "relation term {} has degree {} but the relation starts in degree {}",
                        render_mono(&names, &t.m),
                        t.m.deg,
                        d0
                    )));
                }
            }
            if t_is_const(r) {
                return Err(Error::InvalidRing("relations must lie in the irrelevant ideal".into()));
            }
        }
        let base = Base { f: &field, ctx: &ctx, rels: &[] };
        let rels = groebner::gb(base, &[0], &relations)?.basis;
        let empty = Gb::from_basis(vec![0], Vec::new());
        Ok(Arc::new(Ring {
            field,
            names,
            ctx,
            rels,
            given: relations,
            empty,
            std_cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn base(&self) -> Base<'_, F> {
        Base { f: &self.field, ctx: &self.ctx, rels: &self.rels }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn weights(&self) -> &[i32] {
        &self.ctx.weights
    }

    /// Structural equality (same variables, weights, relation basis, field).
    pub fn same(&self, o: &Ring<F>) -> bool {
        std::ptr::eq(self, o) || (self.names == o.names && self.ctx == o.ctx && self.rels == o.rels && self.field.name() == o.field.name())
    }

    /// The quotient by additional homogeneous elements.
    pub fn quotient(&self, extra: &[Elt<F>]) -> Result<RingRef<F>> {
        let mut rels = self.rels.clone();
        rels.extend(extra.iter().filter(|e| !e.is_zero()).cloned());
        Ring::with_block(self.field.clone(), self.names.clone(), self.ctx.weights.clone(), rels, self.ctx.block)
    }

    /// Normal form modulo the relations (works on vectors of any rank).
    pub fn nf(&self, v: &Elt<F>) -> Elt<F> {
        if self.rels.is_empty() {
            return v.clone();
        }
        self.empty.reduce(self.base(), v)
    }

    pub fn mul(&self, a: &Elt<F>, b: &Elt<F>) -> Elt<F> {
        self.nf(&poly_times(&self.field, a, b))
    }

    pub fn add(&self, a: &Elt<F>, b: &Elt<F>) -> Elt<F> {
        vector::add(&self.field, a, b)
    }

    pub fn sub(&self, a: &Elt<F>, b: &Elt<F>) -> Elt<F> {
        vector::sub(&self.field, a, b)
    }

    pub fn pow(&self, a: &Elt<F>, n: u32) -> Elt<F> {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn one(&self) -> Elt<F> {
        Vector::constant(&self.field, self.field.one())
    }

    pub fn scalar(&self, n: i64) -> Elt<F> {
        Vector::constant(&self.field, self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Elt<F> {
        self.nf(&Vector::monomial(&self.field, 0, self.ctx.var(i), self.field.one()))
    }

    pub fn mono(&self, m: Mono) -> Elt<F> {
        self.nf(&Vector::monomial(&self.field, 0, m, self.field.one()))
    }

    pub fn vars(&self) -> Vec<Elt<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Standard monomials of weighted degree `d` (a k-basis of R_d), descending.
    pub fn std_monos(&self, d: i32) -> Arc<Vec<Mono>> {
        if let Some(v) = self.std_cache.read().unwrap().get(&d) {
            return v.clone();
        }
        let leads: Vec<Mono> = self.rels.iter().map(|r| r.terms[0].m).collect();
        let v: Vec<Mono> = self
            .ctx
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        let v = Arc::new(v);
        self.std_cache.write().unwrap().insert(d, v.clone());
        v
    }

    /// dim_k R_d for 0 <= d <= bound.
    pub fn hilbert_function(&self, bound: i32) -> Vec<usize> {
        (0..=bound).map(|d| self.std_monos(d).len()).collect()
    }

    /// True when some power of every variable is a leading monomial of J.
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars()).all(|i| {
            self.rels.iter().any(|r| {
                let m = &r.terms[0].m;
                m.e[i] > 0 && m.e.iter().enumerate().all(|(j, &x)| j == i || x == 0)
            })
        })
    }

    /// Highest degree with a nonzero graded piece, for Artinian rings.
    pub fn top_degree(&self) -> Option<i32> {
        if !self.is_artinian() {
            return None;
        }
        let mut bound = 0;
        for i in 0..self.nvars() {
            let k = self
                .rels
                .iter()
                .filter_map(|r| {
                    let m = &r.terms[0].m;
                    if m.e.iter().enumerate().all(|(j, &x)| j == i || x == 0) {
                        Some(m.e[i] as i32)
                    } else {
                        None
                    }
                })
                .min()
                .unwrap();
            bound += (k - 1) * self.ctx.weights[i];
        }
        (0..=bound).rev().find(|&d| !self.std_monos(d).is_empty())
    }

    pub fn degree_of(&self, e: &Elt<F>) -> Option<i32> {
        e.terms.first().map(|t| t.m.deg)
    }

    pub fn is_homogeneous(&self, e: &Elt<F>) -> bool {
        match e.terms.first() {
            None => true,
            Some(t) => e.terms.iter().all(|s| s.m.deg == t.m.deg),
        }
    }

    pub fn render(&self, e: &Elt<F>) -> String {
        render_elt(&self.field, &self.names, e)
    }
}

fn t_is_const<E>(r: &Vector<E>) -> bool {
    r.terms.iter().any(|t| t.m.is_one())
}

pub fn render_mono(names: &[String], m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, n) in names.iter().enumerate() {
        match m.e[i] {
            0 => {}
            1 => parts.push(n.clone()),
            k => parts.push(format!("{n}^{k}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn render_elt<F: Field>(f: &F, names: &[String], e: &Elt<F>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, t) in e.terms.iter().enumerate() {
        let c = f.render(&t.c);
        let (neg, c) = match c.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, c),
        };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let m = render_mono(names, &t.m);
        if t.m.is_one() {
            s.push_str(&c);
        } else if c == "1" {
            s.push_str(&m);
        } else {
            s.push_str(&format!("{c}*{m}"));
        }
    }
    s
}

#![allow(dead_code)]

#[path = "../support/mod.rs"]
pub mod support;

use mfull::field::{Field, Rat, Q};
use mfull::matrix::Matrix;
use mfull::monomial::{Mono, MonoCtx};
use mfull::parse::parse_poly;
use mfull::ring::{Elt, Ring, RingRef};
use mfull::semigroup::{build_ring, NumericalSemigroup, SemigroupRing};
use mfull::vector::{Term, Vector};
use rand::Rng;
use std::collections::BTreeMap;
use support::{Mat, Qn};

pub fn ring(vars: &[&str], w: &[i32], rels: &[&str]) -> RingRef<Q> {
    try_ring(vars, w, rels).unwrap()
}

pub fn try_ring(vars: &[&str], w: &[i32], rels: &[&str]) -> mfull::Result<RingRef<Q>> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let ctx = MonoCtx::new(w.iter().map(|&x| x.max(1)).collect(), 0);
    let rels = rels.iter().map(|r| parse_poly(&Q, &names, &ctx, r)).collect::<mfull::Result<Vec<_>>>()?;
    Ring::new(Q, names, w.to_vec(), rels)
}

pub fn el(r: &RingRef<Q>, s: &str) -> Elt<Q> {
    r.nf(&parse_poly(&Q, &r.names, &r.ctx, s).unwrap())
}

pub fn els(r: &RingRef<Q>, s: &[&str]) -> Vec<Elt<Q>> {
    s.iter().map(|x| el(r, x)).collect()
}

pub fn sg(gens: &[u32]) -> SemigroupRing<Q> {
    sg_extra(gens, &[])
}

pub fn sg_extra(gens: &[u32], extra: &[(&str, i32)]) -> SemigroupRing<Q> {
    let extra: Vec<(String, i32)> = extra.iter().map(|(n, w)| (n.to_string(), *w)).collect();
    build_ring(&NumericalSemigroup::new(gens).unwrap(), &extra, Q, None).unwrap()
}

/// Elements t^d of a semigroup ring.
pub fn t(s: &SemigroupRing<Q>, d: &[u32]) -> Vec<Elt<Q>> {
    d.iter().map(|&k| s.element(k).unwrap()).collect()
}

/// Image under x_i ↦ t^{a_i} (for the first gens.len() variables), as
/// t-degree → coefficient. Extra variables must not occur.
pub fn t_image(gens: &[u32], e: &Elt<Q>) -> BTreeMap<u32, Rat> {
    let mut acc: BTreeMap<u32, Rat> = BTreeMap::new();
    for term in &e.terms {
        assert!(term.m.e[gens.len()..].iter().all(|&x| x == 0));
        let d: u32 = (0..gens.len()).map(|i| term.m.e[i] as u32 * gens[i]).sum();
        let c = acc.remove(&d).unwrap_or(Q.zero());
        acc.insert(d, Q.add(&c, &term.c));
    }
    acc.into_iter().filter(|(_, c)| !Q.is_zero(c)).collect()
}

/// All monomials of weighted degree d, by exhausting exponent boxes.
pub fn brute_monomials(ctx: &MonoCtx, d: i32) -> Vec<Mono> {
    fn rec(i: usize, left: i32, w: &[i32], e: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == w.len() {
            if left == 0 {
                out.push(e.clone());
            }
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            e[i] = k as u16;
            rec(i + 1, left - k * w[i], w, e, out);
            k += 1;
        }
        e[i] = 0;
    }
    let w = &ctx.weights;
    let mut raw = Vec::new();
    rec(0, d, w, &mut vec![0; w.len()], &mut raw);
    raw.iter().map(|x| ctx.from_slice(x)).collect()
}

/// Monomials of degree d outside the leading term ideal of the relations.
pub fn brute_standard(r: &RingRef<Q>, d: i32) -> Vec<Mono> {
    let leads: Vec<Mono> = r.rels.iter().map(|g| g.lead().unwrap().m).collect();
    brute_monomials(&r.ctx, d).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).collect()
}

pub fn to_qn(c: &Rat) -> Qn {
    c.to_big()
}

pub fn from_qn(c: &Qn) -> Rat {
    Rat::from_big(c.clone())
}

/// Basis (position, standard monomial) of the degree-d part of a free module.
pub fn degree_basis(r: &RingRef<Q>, twists: &[i32], d: i32) -> Vec<(u32, Mono)> {
    let mut b = Vec::new();
    for (p, &tw) in twists.iter().enumerate() {
        for m in r.std_monos(d - tw).iter() {
            b.push((p as u32, *m));
        }
    }
    b
}

/// Coordinates of a vector of degree d on `degree_basis`.
pub fn coords(r: &RingRef<Q>, basis: &[(u32, Mono)], v: &Elt<Q>) -> Vec<Qn> {
    let v = r.nf(v);
    let mut out = vec![Qn::from_integer(0.into()); basis.len()];
    for term in &v.terms {
        let k = basis.iter().position(|(p, m)| *p == term.pos && *m == term.m).expect("term of the expected degree");
        out[k] = to_qn(&term.c);
    }
    out
}

pub fn from_coords(basis: &[(u32, Mono)], c: &[Qn]) -> Elt<Q> {
    let terms = basis
        .iter()
        .zip(c)
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|((p, m), x)| Term { pos: *p, m: *m, c: from_qn(x) })
        .collect();
    Vector::from_terms(&Q, terms)
}

/// A·v for a column vector v of ring elements.
pub fn apply(r: &RingRef<Q>, a: &Matrix<Rat>, v: &Elt<Q>) -> Elt<Q> {
    let mut acc = Vector::zero();
    for j in 0..a.ncols() {
        let c = v.component(j as u32);
        if !c.is_zero() {
            let c0 = Vector { terms: c.terms.iter().map(|t| Term { pos: 0, m: t.m, c: t.c.clone() }).collect() };
            acc = r.add(&acc, &mfull::vector::poly_times(&Q, &c0, &a.col[j]));
        }
    }
    r.nf(&acc)
}

/// The degree-d part of ker A, by dense linear algebra.
pub fn dense_kernel(r: &RingRef<Q>, a: &Matrix<Rat>, d: i32) -> Vec<Elt<Q>> {
    let src = degree_basis(r, &a.cols, d);
    let tgt = degree_basis(r, &a.rows, d);
    if src.is_empty() {
        return vec![];
    }
    let cols: Vec<Vec<Qn>> = src
        .iter()
        .map(|(p, m)| {
            let v = Vector::from_terms(&Q, vec![Term { pos: *p, m: *m, c: Q.one() }]);
            coords(r, &tgt, &apply(r, a, &v))
        })
        .collect();
    if tgt.is_empty() {
        return src.iter().map(|(p, m)| Vector::from_terms(&Q, vec![Term { pos: *p, m: *m, c: Q.one() }])).collect();
    }
    let m = Mat::from_cols(tgt.len(), &cols);
    support::kernel(&m).iter().map(|k| from_coords(&src, k)).collect()
}

/// Dimension of the degree-d part of the span of `gens` (vectors in a free
/// module with the given twists), by multiplying out by standard monomials.
pub fn span_dim(r: &RingRef<Q>, twists: &[i32], gens: &[Elt<Q>], d: i32) -> usize {
    let basis = degree_basis(r, twists, d);
    let mut cols = Vec::new();
    for g in gens {
        let Some(dg) = mfull::groebner::vector_degree(g, twists).unwrap() else { continue };
        for m in r.std_monos(d - dg).iter() {
            let v = r.nf(&mfull::vector::mul_term(&Q, &Q.one(), m, g));
            cols.push(coords(r, &basis, &v));
        }
    }
    if cols.is_empty() || basis.is_empty() {
        return 0;
    }
    support::rank(&Mat::from_cols(basis.len(), &cols))
}

/// A random homogeneous element of degree d, built from arbitrary
/// monomials (not only standard ones) with small coefficients.
pub fn random_elt<R: Rng>(r: &RingRef<Q>, rng: &mut R, d: i32) -> Elt<Q> {
    let ms = brute_monomials(&r.ctx, d);
    let mut terms = Vec::new();
    for m in ms {
        if rng.gen_bool(0.6) {
            terms.push(Term { pos: 0, m, c: Q.from_i64(rng.gen_range(-3..=3)) });
        }
    }
    Vector::from_terms(&Q, terms)
}

pub fn matrix(rows: Vec<i32>, cols: Vec<i32>, col: Vec<Elt<Q>>) -> Matrix<Rat> {
    Matrix { rows, cols, col }
}

/// A column vector (entries placed at positions 0, 1, ...).
pub fn column(entries: &[Elt<Q>]) -> Elt<Q> {
    let mut terms = Vec::new();
    for (p, e) in entries.iter().enumerate() {
        for t in &e.terms {
            terms.push(Term { pos: p as u32, m: t.m, c: t.c.clone() });
        }
    }
    Vector::from_terms(&Q, terms)
}

//! Sparse vectors in graded free modules (ring elements are the rank-one case).
//!
//! Terms are kept sorted in descending position-over-term order: a lower
//! position is bigger, and within a position the monomial order decides.

use crate::field::Field;
use crate::monomial::Mono;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub pos: u32,
    pub m: Mono,
    pub c: E,
}

#[inline]
pub fn term_cmp(ap: u32, am: &Mono, bp: u32, bm: &Mono) -> Ordering {
    bp.cmp(&ap).then_with(|| am.cmp(bm))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<E> {
    pub terms: Vec<Term<E>>,
}

impl<E: Clone> Vector<E> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds a vector from unsorted terms, combining duplicates.
    pub fn from_terms<F: Field<Elem = E>>(f: &F, mut t: Vec<Term<E>>) -> Self {
        t.sort_by(|a, b| term_cmp(b.pos, &b.m, a.pos, &a.m));
        let mut out: Vec<Term<E>> = Vec::with_capacity(t.len());
        for x in t {
            if let Some(last) = out.last_mut() {
                if last.pos == x.pos && last.m == x.m {
                    last.c = f.add(&last.c, &x.c);
                    if f.is_zero(&last.c) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !f.is_zero(&x.c) {
                out.push(x);
            }
        }
        Vector { terms: out }
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, pos: u32, m: Mono, c: E) -> Self {
        if f.is_zero(&c) {
            return Vector::zero();
        }
        Vector { terms: vec![Term { pos, m, c }] }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Vector::monomial(f, 0, Mono::ONE, c)
    }

    /// The component at position `p`, moved to position 0.
    pub fn component(&self, p: u32) -> Vector<E> {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos == p)
                .map(|t| Term { pos: 0, m: t.m, c: t.c.clone() })
                .collect(),
        }
    }

    /// Moves every term to position `p` (used on rank-one vectors).
    pub fn at_pos(&self, p: u32) -> Vector<E> {
        Vector {
            terms: self.terms.iter().map(|t| Term { pos: p, m: t.m, c: t.c.clone() }).collect(),
        }
    }

    /// Renumbers positions through `map`; order is preserved only if `map` is increasing.
    pub fn map_pos<G: Fn(u32) -> u32, F: Field<Elem = E>>(&self, f: &F, g: G) -> Vector<E> {
        let t = self.terms.iter().map(|t| Term { pos: g(t.pos), m: t.m, c: t.c.clone() }).collect();
        Vector::from_terms(f, t)
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.pos).max()
    }

    pub fn positions(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.terms.iter().map(|t| t.pos).collect();
        p.dedup();
        p
    }
}

pub fn add<F: Field>(f: &F, a: &Vector<F::Elem>, b: &Vector<F::Elem>) -> Vector<F::Elem> {
    combine(f, a, &f.one(), &Mono::ONE, b)
}

pub fn sub<F: Field>(f: &F, a: &Vector<F::Elem>, b: &Vector<F::Elem>) -> Vector<F::Elem> {
    combine(f, a, &f.neg(&f.one()), &Mono::ONE, b)
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Vector<F::Elem>) -> Vector<F::Elem> {
    if f.is_zero(c) {
        return Vector::zero();
    }
    Vector {
        terms: a.terms.iter().map(|t| Term { pos: t.pos, m: t.m, c: f.mul(c, &t.c) }).collect(),
    }
}

pub fn mul_term<F: Field>(f: &F, c: &F::Elem, m: &Mono, a: &Vector<F::Elem>) -> Vector<F::Elem> {
    if f.is_zero(c) {
        return Vector::zero();
    }
    Vector {
        terms: a.terms.iter().map(|t| Term { pos: t.pos, m: t.m.mul(m), c: f.mul(c, &t.c) }).collect(),
    }
}

/// `a + c·m·b`, by merging.
pub fn combine<F: Field>(
    f: &F,
    a: &Vector<F::Elem>,
    c: &F::Elem,
    m: &Mono,
    b: &Vector<F::Elem>,
) -> Vector<F::Elem> {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    merge_into(f, &a.terms, c, m, &b.terms, &mut out);
    Vector { terms: out }
}

/// Appends the merge of `a` and `c·m·b` to `out`.
pub fn merge_into<F: Field>(
    f: &F,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Mono,
    b: &[Term<F::Elem>],
    out: &mut Vec<Term<F::Elem>>,
) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].m.mul(m);
        match term_cmp(a[i].pos, &a[i].m, b[j].pos, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { pos: b[j].pos, m: bm, c: f.mul(c, &b[j].c) });
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(&a[i].c, &f.mul(c, &b[j].c));
                if !f.is_zero(&s) {
                    out.push(Term { pos: a[i].pos, m: a[i].m, c: s });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(Term { pos: b[j].pos, m: b[j].m.mul(m), c: f.mul(c, &b[j].c) });
        j += 1;
    }
}

/// Product of a rank-one element `p` (all terms at position 0) and a vector.
pub fn poly_times<F: Field>(f: &F, p: &Vector<F::Elem>, v: &Vector<F::Elem>) -> Vector<F::Elem> {
    let mut acc = Vector::zero();
    for t in &p.terms {
        debug_assert_eq!(t.pos, 0);
        acc = combine(f, &acc, &t.c, &t.m, v);
    }
    acc
}

/// Divides by the leading coefficient.
pub fn make_monic<F: Field>(f: &F, v: &Vector<F::Elem>) -> Vector<F::Elem> {
    match v.lead() {
        None => v.clone(),
        Some(t) if f.is_one(&t.c) => v.clone(),
        Some(t) => scale(f, &f.inv(&t.c), v),
    }
}

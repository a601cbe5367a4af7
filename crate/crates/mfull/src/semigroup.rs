//! Numerical semigroup rings k[t^a1, ..., t^as] as weighted quotient rings.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmodule::FPModule;
use crate::homalg;
use crate::monomial::MAX_VARS;
use crate::ring::{Elt, Ring, RingRef};
use crate::vector::{Term, Vector};

const DEFAULT_NAMES: [&str; 8] = ["x", "y", "z", "w", "v", "s", "p", "q"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    pub gens: Vec<u32>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NumericalSemigroup {
    /// Sorted, deduplicated generators with gcd 1.
    pub fn new(gens: &[u32]) -> Result<Self> {
        let mut g: Vec<u32> = gens.to_vec();
        g.sort();
        g.dedup();
        if g.is_empty() || g[0] == 0 {
            return Err(Error::Invalid("semigroup generators must be positive".into()));
        }
        if g.iter().fold(0, |a, &b| gcd(a, b)) != 1 {
            return Err(Error::Invalid("semigroup generators must have gcd 1".into()));
        }
        Ok(NumericalSemigroup { gens: g })
    }

    /// Membership table for 0..=bound.
    pub fn table(&self, bound: u32) -> Vec<bool> {
        let mut t = vec![false; bound as usize + 1];
        t[0] = true;
        for d in 1..=bound as usize {
            t[d] = self.gens.iter().any(|&a| a as usize <= d && t[d - a as usize]);
        }
        t
    }

    pub fn contains(&self, d: u32) -> bool {
        self.table(d)[d as usize]
    }

    pub fn frobenius(&self) -> i64 {
        let a = self.gens[0];
        // Beyond conductor every residue class mod a is hit; a run of a members ends the search.
        let mut t = vec![true];
        let mut run = 0;
        let mut last_gap: i64 = -1;
        let mut d = 1usize;
        while run < a {
            let m = self.gens.iter().any(|&g| g as usize <= d && t[d - g as usize]);
            t.push(m);
            if m {
                run += 1;
            } else {
                run = 0;
                last_gap = d as i64;
            }
            d += 1;
        }
        last_gap
    }

    pub fn gaps(&self) -> Vec<u32> {
        let f = self.frobenius();
        if f < 0 {
            return Vec::new();
        }
        let t = self.table(f as u32);
        (1..=f as u32).filter(|&d| !t[d as usize]).collect()
    }

    /// A generator lying in the semigroup of the others, if any.
    pub fn redundant(&self) -> Option<u32> {
        for (i, &a) in self.gens.iter().enumerate() {
            let others: Vec<u32> = self.gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &g)| g).collect();
            let mut t = vec![false; a as usize + 1];
            t[0] = true;
            for d in 1..=a as usize {
                t[d] = others.iter().any(|&g| g as usize <= d && t[d - g as usize]);
            }
            if t[a as usize] {
                return Some(a);
            }
        }
        None
    }
}

/// A semigroup ring: one variable per generator, then extra free variables.
#[derive(Clone, Debug)]
pub struct SemigroupRing<F: Field> {
    pub semigroup: NumericalSemigroup,
    pub ring: RingRef<F>,
}

/// Builds k[x_i]/J with x_i ↦ t^{a_i}; J by eliminating t from (x_i − t^{a_i}).
/// `extra` lists (name, weight) of adjoined free variables.
pub fn build_ring<F: Field>(s: &NumericalSemigroup, extra: &[(String, i32)], field: F, names: Option<Vec<String>>) -> Result<SemigroupRing<F>> {
    if let Some(a) = s.redundant() {
        return Err(Error::Invalid(format!("generator {a} lies in the semigroup of the others")));
    }
    let n = s.gens.len();
    if n + extra.len() > MAX_VARS || n + 1 > MAX_VARS {
        return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
    }
    let names: Vec<String> = match names {
        Some(v) => {
            if v.len() != n {
                return Err(Error::Invalid("one name per semigroup generator required".into()));
            }
            v
        }
        None => {
            let taken: Vec<&str> = extra.iter().map(|e| e.0.as_str()).collect();
            DEFAULT_NAMES.iter().filter(|x| !taken.contains(*x)).take(n).map(|x| x.to_string()).collect()
        }
    };
    if names.len() < n {
        return Err(Error::InvalidRing("not enough variable names".into()));
    }
    // Elimination ring k[t, x_1..x_n] with t in its own block.
    let mut enames = vec!["t".to_string()];
    enames.extend(names.iter().cloned());
    let mut ew = vec![1];
    ew.extend(s.gens.iter().map(|&a| a as i32));
    let ctx = crate::monomial::MonoCtx::new(ew.clone(), 1);
    let f = &field;
    let gens: Vec<Elt<F>> = (0..n)
        .map(|i| {
            Vector::from_terms(
                f,
                vec![
                    Term { pos: 0, m: ctx.var(i + 1), c: f.one() },
                    Term { pos: 0, m: ctx.var_pow(0, s.gens[i] as u16), c: f.neg(&f.one()) },
                ],
            )
        })
        .collect();
    let elim = Ring::with_block(field.clone(), enames, ew, gens, 1)?;
    let mut all_names = names.clone();
    all_names.extend(extra.iter().map(|e| e.0.clone()));
    let mut w: Vec<i32> = s.gens.iter().map(|&a| a as i32).collect();
    w.extend(extra.iter().map(|e| e.1));
    let ctx2 = crate::monomial::MonoCtx::new(w.clone(), 0);
    let rels: Vec<Elt<F>> = elim
        .rels
        .iter()
        .filter(|r| r.terms.iter().all(|t| t.m.e[0] == 0))
        .map(|r| {
            let t = r
                .terms
                .iter()
                .map(|t| {
                    let mut e = [0u16; MAX_VARS];
                    e[..n].copy_from_slice(&t.m.e[1..=n]);
                    Term { pos: 0, m: ctx2.make(e), c: t.c.clone() }
                })
                .collect();
            Vector::from_terms(f, t)
        })
        .collect();
    let ring = Ring::new(field, all_names, w, rels)?;
    Ok(SemigroupRing { semigroup: s.clone(), ring })
}

impl<F: Field> SemigroupRing<F> {
    /// Exponent vector for t^d: greedy largest generator first, backtracking.
    pub fn factor(&self, d: u32) -> Option<Vec<u16>> {
        fn go(g: &[u32], i: usize, left: u32, e: &mut Vec<u16>) -> bool {
            if left == 0 {
                return true;
            }
            if i == g.len() {
                return false;
            }
            let a = g[i];
            let mut k = left / a;
            loop {
                e[i] = k as u16;
                if go(g, i + 1, left - k * a, e) {
                    return true;
                }
                if k == 0 {
                    break;
                }
                k -= 1;
            }
            e[i] = 0;
            false
        }
        let mut order: Vec<usize> = (0..self.semigroup.gens.len()).collect();
        order.sort_by(|a, b| self.semigroup.gens[*b].cmp(&self.semigroup.gens[*a]));
        let g: Vec<u32> = order.iter().map(|&i| self.semigroup.gens[i]).collect();
        let mut e = vec![0u16; g.len()];
        if !go(&g, 0, d, &mut e) {
            return None;
        }
        let mut out = vec![0u16; self.semigroup.gens.len()];
        for (k, &i) in order.iter().enumerate() {
            out[i] = e[k];
        }
        Some(out)
    }

    /// The monomial naming t^d, or None for a gap.
    pub fn element(&self, d: u32) -> Option<Elt<F>> {
        let e = self.factor(d)?;
        let m = self.ring.ctx.from_slice(&e);
        Some(self.ring.nf(&self.ring.mono(m)))
    }
}

/// Cohen–Macaulay type dim Ext^{depth}(k, R), when the Artinian route applies.
pub fn cm_type<F: Field>(r: &RingRef<F>) -> Result<Option<usize>> {
    let rr = FPModule::free(r.clone(), vec![0]);
    let Some(red) = homalg::reduce_to_artinian(&rr)? else { return Ok(None) };
    let mu = homalg::bass_numbers(&rr, red.length)?.unwrap();
    Ok(Some(mu[red.length]))
}

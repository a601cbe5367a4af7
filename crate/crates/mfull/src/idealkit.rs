//! Homogeneous ideals: colon, products, powers, and the m-full family of
//! predicates (weakly m-full, m-full, Burch), socles and integral witnesses.

use crate::artinian::ArtAlg;
use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::fpmodule::homogeneous_degree;
use crate::groebner::{self, Gb};
use crate::linalg;
use crate::matrix::{self, Matrix};
use crate::monomial::Mono;
use crate::ring::{Elt, RingRef};
use crate::vector::{self, Term, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

/// Largest evaluation grid tried when certifying that no element of m works.
pub const GRID_LIMIT: u64 = 200_000;
/// Degree bound for monomial candidates in `is_mfull`.
pub const MONOMIAL_DEGREE: i32 = 12;

#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    pub ring: RingRef<F>,
    /// Nonzero homogeneous generators in normal form.
    pub gens: Vec<Elt<F>>,
    gb: Gb<El<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: RingRef<F>, gens: &[Elt<F>]) -> Result<Self> {
        let mut g = Vec::new();
        for x in gens {
            let x = ring.nf(&x.map_pos(&ring.field, |_| 0));
            if x.is_zero() {
                continue;
            }
            homogeneous_degree(&ring, &x)?;
            g.push(x);
        }
        let gb = groebner::gb(ring.base(), &[0], &g)?;
        Ok(Ideal { ring, gens: g, gb })
    }

    /// The irrelevant ideal m.
    pub fn maximal(ring: RingRef<F>) -> Self {
        let v = ring.vars();
        Ideal::new(ring, &v).expect("variables are homogeneous")
    }

    pub fn unit(ring: RingRef<F>) -> Self {
        let one = ring.one();
        Ideal::new(ring, &[one]).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.basis.iter().any(|v| v.terms[0].m.is_one())
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn contains(&self, x: &Elt<F>) -> bool {
        self.gb.member(self.ring.base(), &self.ring.nf(x))
    }

    pub fn contains_ideal(&self, j: &Ideal<F>) -> bool {
        j.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by two-way generator membership.
    pub fn equals(&self, j: &Ideal<F>) -> bool {
        self.contains_ideal(j) && j.contains_ideal(self)
    }

    pub fn basis(&self) -> &[Elt<F>] {
        &self.gb.basis
    }

    /// A minimal homogeneous generating set.
    pub fn minimal_gens(&self) -> Result<Vec<Elt<F>>> {
        let idx = groebner::minimal_generators(self.ring.base(), &[0], &self.gens)?;
        Ok(idx.into_iter().map(|i| self.gens[i].clone()).collect())
    }

    pub fn render(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|x| self.ring.render(x)).collect();
        format!("({})", g.join(", "))
    }

    /// True when R/I is Artinian.
    pub fn is_m_primary(&self) -> Result<bool> {
        Ok(self.ring.quotient(&self.gens)?.is_artinian())
    }
}

fn same<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<()> {
    if i.ring.same(&j.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// (I : J) as one kernel: r ↦ (r g_1, ..., r g_s) modulo I in every slot.
pub fn colon<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    same(i, j)?;
    let r = &i.ring;
    let f = &r.field;
    if j.gens.is_empty() {
        return Ok(Ideal::unit(r.clone()));
    }
    let jd: Vec<i32> = j.gens.iter().map(|g| r.degree_of(g).unwrap()).collect();
    let rows: Vec<i32> = jd.iter().map(|d| -d).collect();
    let mut first = Vector::zero();
    for (k, g) in j.gens.iter().enumerate() {
        first = vector::add(f, &first, &g.map_pos(f, |_| k as u32));
    }
    let mut cols = vec![0];
    let mut col = vec![first];
    for (k, d) in jd.iter().enumerate() {
        for g in &i.gens {
            cols.push(r.degree_of(g).unwrap() - d);
            col.push(g.map_pos(f, |_| k as u32));
        }
    }
    let a = Matrix { rows, cols, col };
    let z = matrix::kernel_projection(r, &a, 1)?;
    Ideal::new(r.clone(), &z)
}

/// (I : x) for a single element.
pub fn colon_element<F: Field>(i: &Ideal<F>, x: &Elt<F>) -> Result<Ideal<F>> {
    colon(i, &Ideal::new(i.ring.clone(), std::slice::from_ref(x))?)
}

pub fn colon_maximal<F: Field>(i: &Ideal<F>) -> Result<Ideal<F>> {
    colon(i, &Ideal::maximal(i.ring.clone()))
}

pub fn product<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    same(i, j)?;
    let r = &i.ring;
    let mut g = Vec::new();
    for a in &i.gens {
        for b in &j.gens {
            g.push(r.mul(a, b));
        }
    }
    let id = Ideal::new(r.clone(), &g)?;
    let m = id.minimal_gens()?;
    Ideal::new(r.clone(), &m)
}

pub fn ideal_power<F: Field>(i: &Ideal<F>, n: u32) -> Result<Ideal<F>> {
    if n == 0 {
        return Ok(Ideal::unit(i.ring.clone()));
    }
    let mut p = i.clone();
    for _ in 1..n {
        p = product(&p, i)?;
    }
    Ok(p)
}

fn proper<F: Field>(i: &Ideal<F>) -> Result<()> {
    if i.is_proper_nonzero() {
        Ok(())
    } else {
        Err(Error::Improper)
    }
}

/// mI : m = I.
pub fn is_weakly_mfull<F: Field>(i: &Ideal<F>) -> Result<bool> {
    proper(i)?;
    let m = Ideal::maximal(i.ring.clone());
    let c = colon(&product(&m, i)?, &m)?;
    Ok(c.equals(i))
}

/// depth R/I = 0, i.e. I : m ≠ I.
pub fn depth_zero<F: Field>(i: &Ideal<F>) -> Result<bool> {
    if i.is_unit() {
        return Err(Error::Improper);
    }
    Ok(!colon_maximal(i)?.equals(i))
}

/// m(I : m) ≠ mI.
pub fn burch_condition<F: Field>(i: &Ideal<F>) -> Result<bool> {
    proper(i)?;
    let m = Ideal::maximal(i.ring.clone());
    let a = product(&m, &colon_maximal(i)?)?;
    let b = product(&m, i)?;
    Ok(!a.equals(&b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MfullVerdict {
    True { witness: String },
    FalseOnCandidates { tried: usize, certificate: Option<String> },
    Unknown { tried: usize },
}

impl MfullVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, MfullVerdict::True { .. })
    }
    pub fn label(&self) -> &'static str {
        match self {
            MfullVerdict::True { .. } => "true",
            MfullVerdict::FalseOnCandidates { .. } => "false_on_candidates",
            MfullVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Searches x ∈ m with mI : x = I.
///
/// Candidates: variables, monomials up to degree 12, then `budget` seeded
/// random linear forms inside each weight class. A negative answer is
/// certified in two cases. (a) Monomial ideals over a toric domain such as
/// a semigroup ring (`toric`), where fine-graded pieces are spanned by one
/// monomial:
/// if r·x ∈ mI with r ∉ I, the lowest terms give a monomial r' ∉ I with
/// r'·lt(x) ∈ mI, and lt(x) is a multiple of a variable; so failing every
/// variable is conclusive. (b) m-primary I: x works iff multiplication by x
/// on R/mI has rank ℓ(R/mI) − μ(I); with x = Σ c_b b over a basis of
/// m/mI the rank condition is a nonvanishing minor of degree ≤ target in
/// each c_b, so the grid {0..target}^N decides it.
pub fn is_mfull<F: Field>(i: &Ideal<F>, budget: usize, seed: u64, toric: bool) -> Result<MfullVerdict> {
    proper(i)?;
    let r = &i.ring;
    let f = &r.field;
    if !is_weakly_mfull(i)? {
        return Ok(MfullVerdict::FalseOnCandidates { tried: 0, certificate: Some("not weakly m-full".into()) });
    }
    let m = Ideal::maximal(r.clone());
    let mi = product(&m, i)?;
    let mut tried = 0;
    let mut works = |x: &Elt<F>| -> Result<bool> {
        tried += 1;
        Ok(i.contains_ideal(&colon_element(&mi, x)?))
    };
    for x in &r.vars() {
        if x.is_zero() {
            continue;
        }
        if works(x)? {
            return Ok(MfullVerdict::True { witness: r.render(x) });
        }
    }
    for d in 1..=MONOMIAL_DEGREE {
        for mo in r.std_monos(d).iter() {
            if mo.e.iter().filter(|&&e| e > 0).count() == 1 && mo.e.iter().sum::<u16>() == 1 {
                continue;
            }
            let x = r.mono(*mo);
            if works(&x)? {
                return Ok(MfullVerdict::True { witness: r.render(&x) });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = r.weights().to_vec();
    let mut classes = w.clone();
    classes.sort();
    classes.dedup();
    for k in 0..budget {
        let c = classes[k % classes.len()];
        let terms: Vec<Term<El<F>>> = (0..r.nvars())
            .filter(|&v| w[v] == c)
            .map(|v| Term { pos: 0, m: r.ctx.var(v), c: f.from_i64(rng.gen_range(1..1000)) })
            .collect();
        let x = r.nf(&Vector::from_terms(f, terms));
        if x.is_zero() {
            continue;
        }
        if works(&x)? {
            return Ok(MfullVerdict::True { witness: r.render(&x) });
        }
    }
    drop(works);
    if toric && i.gens.iter().all(|g| g.terms.len() == 1) {
        return Ok(MfullVerdict::FalseOnCandidates {
            tried,
            certificate: Some("monomial ideal over a toric domain: every variable fails, hence every lowest term fails".into()),
        });
    }
    if i.is_m_primary()? {
        if let Some(v) = generic_rank(i, &mi)? {
            return Ok(v);
        }
    }
    Ok(MfullVerdict::Unknown { tried })
}

/// Decides m-fullness of an m-primary ideal by the rank of a generic
/// element of m on R/mI. None when the grid is too large.
fn generic_rank<F: Field>(i: &Ideal<F>, mi: &Ideal<F>) -> Result<Option<MfullVerdict>> {
    let r = &i.ring;
    let f = &r.field;
    let q = r.quotient(&mi.gens)?;
    let alg = ArtAlg::new(q.clone())?;
    let len = alg.total_dim();
    let mu = i.minimal_gens()?.len();
    let target = len - mu;
    let mut offs = Vec::new();
    let mut acc = 0;
    for e in 0..=alg.top {
        offs.push(acc);
        acc += alg.dim(e);
    }
    let basis: Vec<(i32, Mono)> = (1..=alg.top).flat_map(|e| alg.basis[e as usize].iter().map(move |m| (e, *m))).collect();
    let n = basis.len();
    let pts = (target as u64 + 1).checked_pow(n as u32).unwrap_or(u64::MAX);
    if target == 0 {
        let x = r.var(0);
        return Ok(Some(MfullVerdict::True { witness: r.render(&x) }));
    }
    if pts > GRID_LIMIT {
        return Ok(None);
    }
    // mats[b][col] = image of basis column under monomial b.
    let mats: Vec<Vec<Vec<(usize, El<F>)>>> = basis
        .iter()
        .map(|(_, b)| {
            let mut cols = Vec::with_capacity(len);
            for e in 0..=alg.top {
                for k in 0..alg.dim(e) {
                    let img = alg.times(b, e, k);
                    let te = e + b.deg;
                    cols.push(img.into_iter().map(|(j, c)| (offs.get(te as usize).copied().unwrap_or(0) + j, c)).collect());
                }
            }
            cols
        })
        .collect();
    let mut c = vec![0u64; n];
    loop {
        let mut cols: Vec<linalg::SVec<El<F>>> = vec![Vec::new(); len];
        for (b, &cb) in c.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let s = f.from_i64(cb as i64);
            for (k, col) in mats[b].iter().enumerate() {
                for (j, x) in col {
                    cols[k].push((*j, f.mul(&s, x)));
                }
            }
        }
        let cols: Vec<linalg::SVec<El<F>>> = cols.into_iter().map(|v| combine_sorted(f, v)).collect();
        if linalg::rank(f, &cols, len) == target {
            let terms: Vec<Term<El<F>>> = c
                .iter()
                .zip(&basis)
                .filter(|(cb, _)| **cb > 0)
                .map(|(cb, (_, m))| Term { pos: 0, m: *m, c: f.from_i64(*cb as i64) })
                .collect();
            let x = Vector::from_terms(f, terms);
            return Ok(Some(MfullVerdict::True { witness: r.render(&x) }));
        }
        // next grid point
        let mut k = 0;
        loop {
            if k == n {
                return Ok(Some(MfullVerdict::FalseOnCandidates {
                    tried: pts as usize,
                    certificate: Some(format!("generic rank below {target} on the full grid {{0..{target}}}^{n}")),
                }));
            }
            c[k] += 1;
            if c[k] <= target as u64 {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

fn combine_sorted<F: Field>(f: &F, mut v: linalg::SVec<El<F>>) -> linalg::SVec<El<F>> {
    v.sort_by_key(|x| x.0);
    let mut out: linalg::SVec<El<F>> = Vec::with_capacity(v.len());
    for (i, c) in v {
        if let Some(last) = out.last_mut() {
            if last.0 == i {
                last.1 = f.add(&last.1, &c);
                continue;
            }
        }
        out.push((i, c));
    }
    out.retain(|(_, c)| !f.is_zero(c));
    out
}

/// k-basis of the socle of R/K, as (degree, element) pairs.
pub fn socle<F: Field>(k: &Ideal<F>) -> Result<Vec<(i32, Elt<F>)>> {
    let q = k.ring.quotient(&k.gens)?;
    if !q.is_artinian() {
        return Err(Error::NotArtinian("R/K has infinitely many standard monomials".into()));
    }
    let alg = ArtAlg::new(q)?;
    Ok(alg.socle().into_iter().map(|(e, v)| (e, alg.to_elt(e, &v))).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub valid: bool,
    /// Which a_i ∈ I^i checks passed.
    pub coefficient_membership: Vec<bool>,
    pub equation_holds: bool,
    pub r_in_ideal: bool,
}

/// Checks r^n + a_1 r^{n−1} + ... + a_n = 0 with a_i ∈ I^i.
pub fn integral_witness_check<F: Field>(i: &Ideal<F>, r: &Elt<F>, coeffs: &[Elt<F>]) -> Result<WitnessReport> {
    if coeffs.is_empty() {
        return Err(Error::Invalid("witness needs at least one coefficient".into()));
    }
    let ring = &i.ring;
    let n = coeffs.len() as u32;
    let mut mem = Vec::new();
    let mut p = i.clone();
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            p = product(&p, i)?;
        }
        mem.push(p.contains(a));
    }
    let mut sum = ring.pow(r, n);
    for (k, a) in coeffs.iter().enumerate() {
        let e = n - 1 - k as u32;
        sum = ring.add(&sum, &ring.mul(a, &ring.pow(r, e)));
    }
    let eq = sum.is_zero();
    let valid = eq && mem.iter().all(|&b| b);
    Ok(WitnessReport { valid, coefficient_membership: mem, equation_holds: eq, r_in_ideal: i.contains(r) })
}

/// Monomial ideals with at most `max_gens` minimal monomial generators of
/// degree ≤ `degree_bound`, each ideal once, ordered by (degree vector,
/// generator exponents).
pub fn enumerate_monomial_ideals<F: Field>(r: &RingRef<F>, degree_bound: i32, max_gens: usize) -> Result<Vec<Ideal<F>>> {
    let mut monos: Vec<Mono> = Vec::new();
    for d in 1..=degree_bound {
        let mut v = r.std_monos(d).to_vec();
        v.sort_by(|a, b| b.e.cmp(&a.e));
        monos.extend(v);
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    fn rec(n: usize, start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(monos.len(), 0, max_gens, &mut Vec::new(), &mut subsets);
    let key = |s: &Vec<usize>| -> (Vec<i32>, Vec<[u16; 8]>) {
        let mut d: Vec<i32> = s.iter().map(|&i| monos[i].deg).collect();
        d.sort();
        let mut e: Vec<[u16; 8]> = s.iter().map(|&i| monos[i].e).collect();
        e.sort_by(|a, b| b.cmp(a));
        (d, e)
    };
    subsets.sort_by_key(key);
    let mut seen: HashSet<Vec<Vector<El<F>>>> = HashSet::new();
    let mut out = Vec::new();
    for s in subsets {
        let gens: Vec<Elt<F>> = s.iter().map(|&i| r.mono(monos[i])).collect();
        // Skip non-minimal generating sets.
        let minimal = (0..gens.len()).all(|k| {
            let others: Vec<Elt<F>> = gens.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
            match groebner::gb(r.base(), &[0], &others) {
                Ok(g) => !g.member(r.base(), &gens[k]),
                Err(_) => false,
            }
        });
        if !minimal {
            continue;
        }
        let id = Ideal::new(r.clone(), &gens)?;
        if seen.insert(id.gb.basis.clone()) {
            out.push(id);
        }
    }
    Ok(out)
}

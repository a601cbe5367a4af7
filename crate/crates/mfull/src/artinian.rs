//! Degreewise linear algebra over graded Artinian quotients A = k[x]/J.
//!
//! Modules are finite-dimensional graded vector spaces with one matrix per
//! variable. Minimal resolutions are built degree by degree; Bass numbers of
//! N are the Betti numbers of its graded k-dual (Ext_A(k,N) is dual to
//! Tor_A(k, N^∨)).

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::fpmodule::FPModule;
use crate::linalg::{self, SVec};
use crate::monomial::Mono;
use crate::ring::RingRef;
use crate::vector::Vector;
use std::collections::HashMap;

/// A graded Artinian algebra with multiplication tables by each variable.
pub struct ArtAlg<F: Field> {
    pub ring: RingRef<F>,
    pub top: i32,
    pub basis: Vec<Vec<Mono>>,
    index: HashMap<Mono, usize>,
    /// mul[v][e][i]: x_v times basis i of degree e, in degree e + w_v.
    mul: Vec<Vec<Vec<SVec<El<F>>>>>,
}

impl<F: Field> ArtAlg<F> {
    pub fn new(ring: RingRef<F>) -> Result<Self> {
        let top = ring.top_degree().ok_or_else(|| Error::NotArtinian("ring has infinitely many standard monomials".into()))?;
        let basis: Vec<Vec<Mono>> = (0..=top).map(|e| ring.std_monos(e).to_vec()).collect();
        let mut index = HashMap::new();
        for b in &basis {
            for (i, m) in b.iter().enumerate() {
                index.insert(*m, i);
            }
        }
        let n = ring.nvars();
        let mut mul = Vec::with_capacity(n);
        for v in 0..n {
            let w = ring.weights()[v];
            let mut per = Vec::with_capacity(basis.len());
            for (e, b) in basis.iter().enumerate() {
                let te = e as i32 + w;
                let row: Vec<SVec<El<F>>> = b
                    .iter()
                    .map(|m| {
                        if te > top {
                            return Vec::new();
                        }
                        let p = ring.mono(m.mul(&ring.ctx.var(v)));
                        coords(&index, &p)
                    })
                    .collect();
                per.push(row);
            }
            mul.push(per);
        }
        Ok(ArtAlg { ring, top, basis, index, mul })
    }

    pub fn dim(&self, e: i32) -> usize {
        if e < 0 || e > self.top {
            0
        } else {
            self.basis[e as usize].len()
        }
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    fn nvars(&self) -> usize {
        self.mul.len()
    }

    /// Product of a monomial with basis element i of degree e.
    pub fn times(&self, x: &Mono, e: i32, i: usize) -> SVec<El<F>> {
        if e + x.deg > self.top {
            return Vec::new();
        }
        let p = self.ring.mono(x.mul(&self.basis[e as usize][i]));
        coords(&self.index, &p)
    }

    /// The element with coordinates `v` in degree e.
    pub fn to_elt(&self, e: i32, v: &SVec<El<F>>) -> Vector<El<F>> {
        let f = &self.ring.field;
        let t = v.iter().map(|(i, c)| crate::vector::Term { pos: 0, m: self.basis[e as usize][*i], c: c.clone() }).collect();
        Vector::from_terms(f, t)
    }

    /// A basis of the socle (0 : m), degree by degree.
    pub fn socle(&self) -> Vec<(i32, SVec<El<F>>)> {
        let f = &self.ring.field;
        let n = self.nvars();
        let mut out = Vec::new();
        for e in 0..=self.top {
            // Stack the maps x_v: A_e -> A_{e+w_v} into one target.
            let mut offs = Vec::with_capacity(n);
            let mut total = 0;
            for v in 0..n {
                offs.push(total);
                total += self.dim(e + self.weight(v));
            }
            let imgs: Vec<SVec<El<F>>> = (0..self.dim(e))
                .map(|i| {
                    let mut s = Vec::new();
                    for v in 0..n {
                        if e + self.weight(v) <= self.top {
                            s.extend(self.mul[v][e as usize][i].iter().map(|(j, c)| (offs[v] + j, c.clone())));
                        }
                    }
                    s
                })
                .collect();
            for k in linalg::kernel(f, &imgs, total) {
                out.push((e, k));
            }
        }
        out
    }

    fn weight(&self, v: usize) -> i32 {
        self.ring.weights()[v]
    }
}

fn coords<E: Clone>(index: &HashMap<Mono, usize>, p: &Vector<E>) -> SVec<E> {
    let mut v: SVec<E> = p.terms.iter().map(|t| (index[&t.m], t.c.clone())).collect();
    v.sort_by_key(|x| x.0);
    v
}

/// A finite-dimensional graded module given by its variable actions.
#[derive(Clone, Debug)]
pub struct GMod<F: Field> {
    pub lo: i32,
    pub dims: Vec<usize>,
    /// act[v][d - lo][i]: x_v times basis i of degree d, in degree d + w_v.
    pub act: Vec<Vec<Vec<SVec<El<F>>>>>,
    pub weights: Vec<i32>,
}

impl<F: Field> GMod<F> {
    pub fn dim(&self, d: i32) -> usize {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The module M/xM-style finite module from a presentation over an Artinian ring.
    pub fn from_module(alg: &ArtAlg<F>, m: &FPModule<F>) -> Result<GMod<F>> {
        let ring = &alg.ring;
        let gb = m.try_rel_gb()?;
        let tw = m.gen_twists();
        if tw.is_empty() {
            return Ok(GMod { lo: 0, dims: Vec::new(), act: vec![Vec::new(); ring.nvars()], weights: ring.weights().to_vec() });
        }
        let lo = *tw.iter().min().unwrap();
        let hi = *tw.iter().max().unwrap() + alg.top;
        let mut basis: Vec<Vec<(u32, Mono)>> = Vec::new();
        let mut index: HashMap<(u32, Mono), usize> = HashMap::new();
        for d in lo..=hi {
            let mut b = Vec::new();
            for (p, t) in tw.iter().enumerate() {
                for mo in ring.std_monos(d - t).iter() {
                    if !gb.is_lead_divisible(p as u32, mo) {
                        b.push((p as u32, *mo));
                    }
                }
            }
            for (i, x) in b.iter().enumerate() {
                index.insert(*x, i);
            }
            basis.push(b);
        }
        let f = &ring.field;
        let mut act = Vec::new();
        for v in 0..ring.nvars() {
            let xv = ring.ctx.var(v);
            let mut per = Vec::new();
            for b in &basis {
                let row: Vec<SVec<El<F>>> = b
                    .iter()
                    .map(|(p, mo)| {
                        let vec = Vector::monomial(f, *p, mo.mul(&xv), f.one());
                        let r = gb.reduce(ring.base(), &vec);
                        let mut s: SVec<El<F>> = r.terms.iter().map(|t| (index[&(t.pos, t.m)], t.c.clone())).collect();
                        s.sort_by_key(|x| x.0);
                        s
                    })
                    .collect();
                per.push(row);
            }
            act.push(per);
        }
        let dims = basis.iter().map(|b| b.len()).collect();
        Ok(GMod { lo, dims, act, weights: ring.weights().to_vec() }.trimmed())
    }

    fn trimmed(mut self) -> Self {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            for a in self.act.iter_mut() {
                a.pop();
            }
        }
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            for a in self.act.iter_mut() {
                a.remove(0);
            }
            self.lo += 1;
        }
        if self.dims.is_empty() {
            self.lo = 0;
        }
        self
    }

    /// Graded k-dual: degree d of the dual is the dual of degree -d.
    pub fn dual(&self) -> GMod<F> {
        if self.dims.is_empty() {
            return self.clone();
        }
        let hi = self.hi();
        let lo = -hi;
        let n = self.dims.len();
        let dims: Vec<usize> = (0..n).map(|k| self.dims[n - 1 - k]).collect();
        let mut act = Vec::new();
        for (v, w) in self.weights.iter().enumerate() {
            let mut per: Vec<Vec<SVec<El<F>>>> = dims.iter().map(|&dm| vec![Vec::new(); dm]).collect();
            // x_v on the dual maps (N_{d+w})^* to (N_d)^*: transpose of N_d -> N_{d+w}.
            for d in self.lo..=hi {
                let src = d + w; // dual degree -(d+w) -> -d
                if src > hi {
                    continue;
                }
                let kd = (d - self.lo) as usize;
                let ksrc_dual = (-src - lo) as usize;
                for (i, img) in self.act[v][kd].iter().enumerate() {
                    for (j, c) in img {
                        per[ksrc_dual][*j].push((i, c.clone()));
                    }
                }
            }
            for row in per.iter_mut() {
                for s in row.iter_mut() {
                    s.sort_by_key(|x| x.0);
                }
            }
            act.push(per);
        }
        GMod { lo, dims, act, weights: self.weights.clone() }
    }
}

trait Act<F: Field> {
    fn dim_at(&self, d: i32) -> usize;
    fn apply(&self, v: usize, d: i32, x: &SVec<El<F>>, f: &F) -> SVec<El<F>>;
}

fn apply_table<F: Field>(f: &F, table: &[SVec<El<F>>], x: &SVec<El<F>>) -> SVec<El<F>> {
    let mut acc: std::collections::BTreeMap<usize, El<F>> = std::collections::BTreeMap::new();
    for (i, c) in x {
        for (j, a) in &table[*i] {
            let e = acc.entry(*j).or_insert_with(|| f.zero());
            *e = f.add(e, &f.mul(c, a));
        }
    }
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
}

impl<F: Field> Act<F> for GMod<F> {
    fn dim_at(&self, d: i32) -> usize {
        self.dim(d)
    }
    fn apply(&self, v: usize, d: i32, x: &SVec<El<F>>, f: &F) -> SVec<El<F>> {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.dims.len() || self.dim(d + self.weights[v]) == 0 {
            return Vec::new();
        }
        apply_table(f, &self.act[v][k as usize], x)
    }
}

/// Free module ⊕ A(-g); degree-d basis is (generator, basis monomial of A).
struct Free<'a, F: Field> {
    alg: &'a ArtAlg<F>,
    gens: Vec<i32>,
    /// offsets[d - lo][g]: start of generator g's block in degree d.
    lo: i32,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl<'a, F: Field> Free<'a, F> {
    fn new(alg: &'a ArtAlg<F>, gens: Vec<i32>) -> Self {
        let lo = gens.iter().copied().min().unwrap_or(0);
        let hi = gens.iter().copied().max().unwrap_or(-1) + alg.top;
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for d in lo..=hi {
            let mut off = Vec::with_capacity(gens.len());
            let mut acc = 0;
            for g in &gens {
                off.push(acc);
                acc += alg.dim(d - g);
            }
            offsets.push(off);
            dims.push(acc);
        }
        Free { alg, gens, lo, offsets, dims }
    }
    fn dim(&self, d: i32) -> usize {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }
    fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }
    /// Coordinates of generator g's block in degree d: (offset, length).
    fn block(&self, d: i32, g: usize) -> (usize, usize) {
        let k = (d - self.lo) as usize;
        (self.offsets[k][g], self.alg.dim(d - self.gens[g]))
    }
}

impl<F: Field> Act<F> for Free<'_, F> {
    fn dim_at(&self, d: i32) -> usize {
        self.dim(d)
    }
    fn apply(&self, v: usize, d: i32, x: &SVec<El<F>>, f: &F) -> SVec<El<F>> {
        let w = self.alg.weight(v);
        if self.dim(d + w) == 0 {
            return Vec::new();
        }
        let mut acc: std::collections::BTreeMap<usize, El<F>> = std::collections::BTreeMap::new();
        let mut g = 0;
        for (i, c) in x {
            while g + 1 < self.gens.len() && self.block(d, g + 1).0 <= *i {
                g += 1;
            }
            let (off, _) = self.block(d, g);
            let e = d - self.gens[g];
            let s = i - off;
            let te = e + w;
            if te > self.alg.top {
                continue;
            }
            let (toff, _) = self.block(d + w, g);
            for (j, a) in &self.alg.mul[v][e as usize][s] {
                let t = acc.entry(toff + j).or_insert_with(|| f.zero());
                *t = f.add(t, &f.mul(c, a));
            }
        }
        acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
    }
}

/// Minimal generators of a graded subspace family closed under the action:
/// `sub[d]` spans the degree-d piece. Returns (degree, vector) pairs.
fn min_gens<F: Field, T: Act<F>>(f: &F, t: &T, w: &[i32], lo: i32, sub: &[Vec<SVec<El<F>>>]) -> Vec<(i32, SVec<El<F>>)> {
    let mut out = Vec::new();
    for (k, basis) in sub.iter().enumerate() {
        if basis.is_empty() {
            continue;
        }
        let d = lo + k as i32;
        let mut msub = Vec::new();
        for (v, wv) in w.iter().enumerate() {
            let kk = k as i32 - wv;
            if kk < 0 {
                continue;
            }
            for x in &sub[kk as usize] {
                let y = t.apply(v, d - wv, x, f);
                if !y.is_empty() {
                    msub.push(y);
                }
            }
        }
        for i in linalg::complement(f, &msub, basis, t.dim_at(d)) {
            out.push((d, basis[i].clone()));
        }
    }
    out
}

/// Graded Betti numbers β_0..β_steps of a finite module over A; each entry
/// maps degree to multiplicity.
pub fn graded_betti<F: Field>(alg: &ArtAlg<F>, p: &GMod<F>, steps: usize) -> Vec<Vec<(i32, usize)>> {
    let f = &alg.ring.field;
    let w: Vec<i32> = alg.ring.weights().to_vec();
    let mut out = Vec::new();
    if p.total_dim() == 0 {
        return vec![Vec::new(); steps + 1];
    }
    // Generators of P: complement of mP, among unit vectors.
    let units: Vec<Vec<SVec<El<F>>>> = (0..p.dims.len())
        .map(|k| (0..p.dims[k]).map(|i| vec![(i, f.one())]).collect())
        .collect();
    let mut gens = min_gens(f, p, &w, p.lo, &units);
    // First map F_0 -> P.
    let mut free_gens: Vec<i32> = gens.iter().map(|g| g.0).collect();
    out.push(count(&free_gens));
    if steps == 0 {
        return out;
    }
    let mut images: Vec<(i32, SVec<El<F>>)> = gens.drain(..).collect();
    let mut target_is_p = true;
    let mut target_free: Option<Free<F>> = None;
    for _step in 1..=steps {
        let src = Free::new(alg, free_gens.clone());
        // images of the basis of src, degree by degree
        let ker: Vec<Vec<SVec<El<F>>>> = {
            let mut ker = Vec::new();
            let orbits: Vec<Vec<Vec<SVec<El<F>>>>> = images
                .iter()
                .map(|(dg, img)| {
                    if target_is_p {
                        orbit(alg, p, *dg, img)
                    } else {
                        orbit(alg, target_free.as_ref().unwrap(), *dg, img)
                    }
                })
                .collect();
            for d in src.lo..=src.hi() {
                let tdim = if target_is_p { p.dim(d) } else { target_free.as_ref().unwrap().dim(d) };
                let mut imgs = Vec::with_capacity(src.dim(d));
                for (g, dg) in src.gens.iter().enumerate() {
                    let e = d - dg;
                    if e < 0 || e > alg.top {
                        continue;
                    }
                    for s in 0..alg.dim(e) {
                        imgs.push(orbits[g][e as usize][s].clone());
                    }
                }
                ker.push(linalg::kernel(f, &imgs, tdim));
            }
            ker
        };
        if ker.iter().all(|k| k.is_empty()) {
            for _ in out.len()..=steps {
                out.push(Vec::new());
            }
            return out;
        }
        let ng = min_gens(f, &src, &w, src.lo, &ker);
        free_gens = ng.iter().map(|g| g.0).collect();
        out.push(count(&free_gens));
        images = ng;
        target_is_p = false;
        target_free = Some(src);
    }
    out
}

fn count(gens: &[i32]) -> Vec<(i32, usize)> {
    let mut m: std::collections::BTreeMap<i32, usize> = std::collections::BTreeMap::new();
    for g in gens {
        *m.entry(*g).or_default() += 1;
    }
    m.into_iter().collect()
}

/// orbit[e][s] = (basis monomial s of A_e) · y, for y in degree dg of the target.
fn orbit<F: Field, T: Act<F>>(alg: &ArtAlg<F>, t: &T, dg: i32, y: &SVec<El<F>>) -> Vec<Vec<SVec<El<F>>>> {
    let f = &alg.ring.field;
    let mut out: Vec<Vec<SVec<El<F>>>> = Vec::with_capacity(alg.basis.len());
    for (e, b) in alg.basis.iter().enumerate() {
        let mut row = Vec::with_capacity(b.len());
        for m in b {
            if m.is_one() {
                row.push(y.clone());
                continue;
            }
            let v = (0..alg.nvars()).find(|&v| m.e[v] > 0).unwrap();
            let w = alg.weight(v);
            let prev = m.div(&alg.ring.ctx.var(v));
            let pe = e as i32 - w;
            let pi = alg.index[&prev];
            let z = &out[pe as usize][pi];
            row.push(t.apply(v, dg + pe, z, f));
        }
        out.push(row);
    }
    out
}

/// Total Betti numbers β_0..β_steps.
pub fn betti<F: Field>(alg: &ArtAlg<F>, p: &GMod<F>, steps: usize) -> Vec<usize> {
    graded_betti(alg, p, steps).iter().map(|b| b.iter().map(|x| x.1).sum()).collect()
}

/// Bass numbers dim Ext^j_A(k, N) for j = 0..=steps.
pub fn bass<F: Field>(alg: &ArtAlg<F>, n: &GMod<F>, steps: usize) -> Vec<usize> {
    betti(alg, &n.dual(), steps)
}

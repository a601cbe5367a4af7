//! Ext, Tor, stable Hom and the dimension probes.
//!
//! Homology is always handed around as a pair (Z, Bd) of submodules of one
//! free module with Bd ⊆ Z; vanishing is decided by membership of the Z
//! generators in Bd.

use crate::artinian::{self, ArtAlg, GMod};
use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::fpmodule::{FPModule, ModRef};
use crate::groebner::{self, Gb};
use crate::matrix::{self, Matrix};
use crate::ring::{Elt, RingRef};
use crate::vector::{self, Term, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Power of each variable tried when certifying finite length.
pub const FINITE_LENGTH_POWER: u16 = 12;
/// Number of degrees listed when finite length is not certified.
pub const HILBERT_DEGREES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Functor {
    Ext,
    Tor,
    Lhom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detail {
    ZeroOnly,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub functor: Functor,
    pub index: usize,
    pub is_zero: bool,
    /// None when not examined (zero-only mode).
    pub finite_length: Option<bool>,
    pub k_dimension: Option<usize>,
    /// (first degree, dimensions) when finite length was not certified.
    pub hilbert_values: Option<(i32, Vec<usize>)>,
}

impl HomologyReport {
    fn zero(functor: Functor, index: usize) -> Self {
        HomologyReport { functor, index, is_zero: true, finite_length: Some(true), k_dimension: Some(0), hilbert_values: None }
    }
}

/// H = Z/Bd inside the free module with the given twists; `z` must be a
/// Groebner basis.
pub fn homology<F: Field>(
    r: &RingRef<F>,
    functor: Functor,
    index: usize,
    twists: &[i32],
    z: Vec<Elt<F>>,
    bd: Vec<Elt<F>>,
    detail: Detail,
) -> Result<HomologyReport> {
    let b = r.base();
    let bd: Vec<Elt<F>> = bd.into_iter().map(|v| r.nf(&v)).filter(|v| !v.is_zero()).collect();
    let bgb = groebner::gb(b, twists, &bd)?;
    let outside: Vec<&Elt<F>> = z.iter().filter(|v| !bgb.member(b, v)).collect();
    if outside.is_empty() {
        return Ok(HomologyReport::zero(functor, index));
    }
    let mut rep = HomologyReport { functor, index, is_zero: false, finite_length: None, k_dimension: None, hilbert_values: None };
    if detail == Detail::ZeroOnly {
        return Ok(rep);
    }
    let degs: Vec<i32> = outside.iter().map(|v| groebner::vector_degree(v, twists).map(|d| d.unwrap())).collect::<Result<_>>()?;
    let lo = *degs.iter().min().unwrap();
    let hi = *degs.iter().max().unwrap();
    // x_v^s Z ⊆ Bd for each variable v.
    let mut extra = 0;
    let mut finite = true;
    for v in 0..r.nvars() {
        let mut found = None;
        for s in 1..=FINITE_LENGTH_POWER {
            let m = r.ctx.var_pow(v, s);
            if outside.iter().all(|g| bgb.member(b, &r.nf(&vector::mul_term(&r.field, &r.field.one(), &m, g)))) {
                found = Some(s);
                break;
            }
        }
        match found {
            Some(s) => extra += (s as i32 - 1) * r.weights()[v],
            None => {
                finite = false;
                break;
            }
        }
    }
    let zgb = Gb::from_basis(twists.to_vec(), z.clone());
    let std = |e: i32| r.std_monos(e).to_vec();
    let diff = |d: i32| bgb.hilbert(&std, d) - zgb.hilbert(&std, d);
    if finite {
        let dim = (lo..=hi + extra).map(diff).sum();
        rep.finite_length = Some(true);
        rep.k_dimension = Some(dim);
    } else {
        rep.finite_length = Some(false);
        let vals = (0..HILBERT_DEGREES as i32).map(|k| diff(lo + k)).collect();
        rep.hilbert_values = Some((lo, vals));
    }
    Ok(rep)
}

fn neg(t: &[i32]) -> Vec<i32> {
    t.iter().map(|x| -x).collect()
}

/// Ext^i_R(M, N) from the minimal resolution of M.
pub fn ext<F: Field>(m: &FPModule<F>, n: &FPModule<F>, i: usize, detail: Detail) -> Result<HomologyReport> {
    if !m.ring.same(&n.ring) {
        return Err(Error::RingMismatch);
    }
    let r = &m.ring;
    let f = &r.field;
    let res = m.resolve(i + 1)?;
    let fi = res.free(i);
    let np = n.minimal_presentation()?;
    let g0 = np.pres.rows.clone();
    if fi.is_empty() || g0.is_empty() {
        return Ok(HomologyReport::zero(Functor::Ext, i));
    }
    let b = &np.pres;
    let fid = neg(&fi);
    let fnext = neg(&res.free(i + 1));
    let x = matrix::tensor_left(f, &matrix::dual(r, &res.d(i + 1)), &g0);
    let b1 = matrix::tensor_right(f, &fnext, b);
    let z = matrix::kernel_projection(r, &matrix::hcat(&x, &b1), fid.len() * g0.len())?;
    let mut bd = matrix::tensor_left(f, &matrix::dual(r, &res.d(i)), &g0).col;
    bd.extend(matrix::tensor_right(f, &fid, b).col);
    homology(r, Functor::Ext, i, &matrix::kron_twists(&fid, &g0), z, bd, detail)
}

/// Tor_i^R(M, N) from the minimal resolution of M.
pub fn tor<F: Field>(m: &FPModule<F>, n: &FPModule<F>, i: usize, detail: Detail) -> Result<HomologyReport> {
    tor_tagged(m, n, i, detail, Functor::Tor)
}

fn tor_tagged<F: Field>(m: &FPModule<F>, n: &FPModule<F>, i: usize, detail: Detail, tag: Functor) -> Result<HomologyReport> {
    if !m.ring.same(&n.ring) {
        return Err(Error::RingMismatch);
    }
    let r = &m.ring;
    let f = &r.field;
    let res = m.resolve(i + 1)?;
    let fi = res.free(i);
    let np = n.minimal_presentation()?;
    let g0 = np.pres.rows.clone();
    if fi.is_empty() || g0.is_empty() {
        return Ok(HomologyReport::zero(tag, i));
    }
    let b = &np.pres;
    let prev = if i == 0 { Vec::new() } else { res.free(i - 1) };
    let x = matrix::tensor_left(f, &res.d(i), &g0);
    let b1 = matrix::tensor_right(f, &prev, b);
    let z = matrix::kernel_projection(r, &matrix::hcat(&x, &b1), fi.len() * g0.len())?;
    let mut bd = matrix::tensor_left(f, &res.d(i + 1), &g0).col;
    bd.extend(matrix::tensor_right(f, &fi, b).col);
    let mut rep = homology(r, tag, i, &matrix::kron_twists(&fi, &g0), z, bd, detail)?;
    rep.index = i;
    Ok(rep)
}

/// Stable Hom, as Tor_1(Tr M, N).
pub fn stable_hom<F: Field>(m: &FPModule<F>, n: &FPModule<F>, detail: Detail) -> Result<HomologyReport> {
    let t = m.transpose()?;
    let mut rep = tor_tagged(&t, n, 1, detail, Functor::Lhom)?;
    rep.index = 0;
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Depth,
    Grade,
    Pd,
    Id,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "n")]
pub enum ProbeValue {
    Exact(usize),
    Exceeds(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionProbe {
    pub quantity: Quantity,
    pub value: ProbeValue,
    /// (index, is_zero) pairs inspected.
    pub evidence: Vec<(usize, bool)>,
    /// True when the value rests on the trailing-zero window.
    pub heuristic: bool,
    pub method: String,
}

impl DimensionProbe {
    pub fn exact(&self) -> Option<usize> {
        match self.value {
            ProbeValue::Exact(v) => Some(v),
            ProbeValue::Exceeds(_) => None,
        }
    }
}

/// Multiplication by x on F0 composed into M: the matrix [x·I | A].
fn times_x<F: Field>(m: &FPModule<F>, x: &Elt<F>, dx: i32) -> Matrix<El<F>> {
    let f = &m.ring.field;
    let rows = m.pres.rows.clone();
    let xcols: Vec<Elt<F>> = (0..rows.len()).map(|i| x.map_pos(f, |_| i as u32)).collect();
    let xm = Matrix { rows: rows.clone(), cols: rows.iter().map(|t| t + dx).collect(), col: xcols };
    matrix::hcat(&xm, &m.pres)
}

/// Whether x is a nonzerodivisor on M.
pub fn is_regular<F: Field>(m: &FPModule<F>, x: &Elt<F>) -> Result<bool> {
    if m.rank0() == 0 {
        return Ok(true);
    }
    let r = &m.ring;
    let x = r.nf(x);
    if x.is_zero() {
        return Ok(m.is_zero()?);
    }
    let dx = r.degree_of(&x).unwrap();
    let z = matrix::kernel_projection(r, &times_x(m, &x, dx), m.rank0())?;
    let g = m.try_rel_gb()?;
    Ok(z.iter().all(|v| g.member(r.base(), v)))
}

/// M/xM over the same ring.
pub fn mod_element<F: Field>(m: &FPModule<F>, x: &Elt<F>) -> Result<ModRef<F>> {
    let r = &m.ring;
    let x = r.nf(x);
    let dx = r.degree_of(&x).unwrap_or(0);
    FPModule::new(r.clone(), times_x(m, &x, dx))
}

/// Homogeneous candidates for a regular element, in a fixed order.
pub fn regular_candidates<F: Field>(r: &RingRef<F>, seed: u64) -> Vec<Elt<F>> {
    let f = &r.field;
    let w = r.weights().to_vec();
    let n = r.nvars();
    let mut out: Vec<Elt<F>> = r.vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes: Vec<i32> = w.clone();
    classes.sort();
    classes.dedup();
    for c in &classes {
        let vs: Vec<usize> = (0..n).filter(|&v| w[v] == *c).collect();
        if vs.len() < 2 {
            continue;
        }
        for _ in 0..3 {
            let terms = vs.iter().map(|&v| Term { pos: 0, m: r.ctx.var(v), c: f.from_i64(rng.gen_range(1..100)) }).collect();
            out.push(r.nf(&Vector::from_terms(f, terms)));
        }
    }
    // Binomials in powers of two variables of different weights.
    for a in 0..n {
        for b in a + 1..n {
            if w[a] == w[b] {
                continue;
            }
            let l = num_integer::lcm(w[a], w[b]);
            let ma = r.ctx.var_pow(a, (l / w[a]) as u16);
            let mb = r.ctx.var_pow(b, (l / w[b]) as u16);
            let c = f.from_i64(rng.gen_range(1..100));
            let v = Vector::from_terms(f, vec![Term { pos: 0, m: ma, c: f.one() }, Term { pos: 0, m: mb, c }]);
            out.push(r.nf(&v));
        }
    }
    out.retain(|v| !v.is_zero());
    out
}

const SEED: u64 = 0x5eed;

/// Hom(k, M) ≠ 0.
fn has_socle<F: Field>(m: &FPModule<F>) -> Result<bool> {
    let k = FPModule::residue_field(m.ring.clone());
    Ok(!ext(&k, m, 0, Detail::ZeroOnly)?.is_zero)
}

/// depth M as the least i with Ext^i(k, M) ≠ 0. Regular elements are
/// factored out first; the remainder is probed directly.
pub fn depth<F: Field>(m: &FPModule<F>, bound: usize) -> Result<DimensionProbe> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let mut cur = m.minimal_presentation()?;
    let mut evidence = Vec::new();
    let cands = regular_candidates(&m.ring, SEED);
    let mut r = 0;
    loop {
        if has_socle(&cur)? {
            evidence.push((r, false));
            return Ok(DimensionProbe { quantity: Quantity::Depth, value: ProbeValue::Exact(r), evidence, heuristic: false, method: "regular-sequence".into() });
        }
        evidence.push((r, true));
        if r >= bound {
            return Ok(DimensionProbe { quantity: Quantity::Depth, value: ProbeValue::Exceeds(bound), evidence, heuristic: false, method: "regular-sequence".into() });
        }
        let mut next = None;
        for x in &cands {
            if is_regular(&cur, x)? {
                next = Some(mod_element(&cur, x)?.minimal_presentation()?);
                break;
            }
        }
        match next {
            Some(n) => {
                cur = n;
                r += 1;
            }
            None => break,
        }
    }
    // No candidate was regular: Ext^j(k, cur) for j ≥ 1 directly.
    let k = FPModule::residue_field(m.ring.clone());
    for j in 1..=bound - r {
        let z = ext(&k, &cur, j, Detail::ZeroOnly)?.is_zero;
        evidence.push((r + j, z));
        if !z {
            return Ok(DimensionProbe { quantity: Quantity::Depth, value: ProbeValue::Exact(r + j), evidence, heuristic: false, method: "direct".into() });
        }
    }
    Ok(DimensionProbe { quantity: Quantity::Depth, value: ProbeValue::Exceeds(bound), evidence, heuristic: false, method: "direct".into() })
}

/// grade M = least i with Ext^i(M, R) ≠ 0.
pub fn grade<F: Field>(m: &FPModule<F>, bound: usize) -> Result<DimensionProbe> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let rr = FPModule::free(m.ring.clone(), vec![0]);
    let mut evidence = Vec::new();
    for i in 0..=bound {
        let z = ext(m, &rr, i, Detail::ZeroOnly)?.is_zero;
        evidence.push((i, z));
        if !z {
            return Ok(DimensionProbe { quantity: Quantity::Grade, value: ProbeValue::Exact(i), evidence, heuristic: false, method: "direct".into() });
        }
    }
    Ok(DimensionProbe { quantity: Quantity::Grade, value: ProbeValue::Exceeds(bound), evidence, heuristic: false, method: "direct".into() })
}

/// Projective dimension from the minimal resolution.
pub fn pd_probe<F: Field>(m: &FPModule<F>, bound: usize) -> Result<DimensionProbe> {
    let res = m.resolve(bound)?;
    let b = res.betti();
    let evidence: Vec<(usize, bool)> = (0..=bound).map(|i| (i, b.get(i).copied().unwrap_or(0) == 0)).collect();
    let value = match res.terminated {
        Some(s) if s <= bound => ProbeValue::Exact(s),
        _ => ProbeValue::Exceeds(bound),
    };
    Ok(DimensionProbe { quantity: Quantity::Pd, value, evidence, heuristic: false, method: "resolution".into() })
}

/// Reduction of (R, M) modulo a sequence regular on both, until the ring is
/// Artinian. Returns the Artinian ring, the reduced module and the length.
pub struct Reduction<F: Field> {
    pub ring: RingRef<F>,
    pub module: ModRef<F>,
    pub length: usize,
    pub sequence: Vec<Elt<F>>,
}

pub fn reduce_to_artinian<F: Field>(m: &FPModule<F>) -> Result<Option<Reduction<F>>> {
    let mut ring = m.ring.clone();
    let mut module = m.minimal_presentation()?;
    let mut seq = Vec::new();
    while !ring.is_artinian() {
        let rr = FPModule::free(ring.clone(), vec![0]);
        let mut found = None;
        for x in regular_candidates(&ring, SEED) {
            if is_regular(&rr, &x)? && is_regular(&module, &x)? {
                found = Some(x);
                break;
            }
        }
        let Some(x) = found else { return Ok(None) };
        let nr = ring.quotient(std::slice::from_ref(&x))?;
        module = FPModule::new(nr.clone(), module.pres.clone())?.minimal_presentation()?;
        ring = nr;
        seq.push(x);
    }
    let length = seq.len();
    Ok(Some(Reduction { ring, module, length, sequence: seq }))
}

/// Bass numbers μ^0..μ^bound of M, via an Artinian reduction.
pub fn bass_numbers<F: Field>(m: &FPModule<F>, bound: usize) -> Result<Option<Vec<usize>>> {
    let Some(red) = reduce_to_artinian(m)? else { return Ok(None) };
    let alg = ArtAlg::new(red.ring.clone())?;
    let n = GMod::from_module(&alg, &red.module)?;
    let mut out = vec![0; red.length.min(bound + 1)];
    if bound >= red.length {
        out.extend(artinian::bass(&alg, &n, bound - red.length));
    }
    Ok(Some(out))
}

/// Depth of the ring itself.
pub fn ring_depth<F: Field>(r: &RingRef<F>, bound: usize) -> Result<DimensionProbe> {
    depth(&FPModule::free(r.clone(), vec![0]), bound)
}

/// Injective dimension from Bass numbers; exact only with a trailing zero
/// window of length ≥ 2 and value ≥ depth R (flagged heuristic).
pub fn id_probe<F: Field>(m: &FPModule<F>, bound: usize) -> Result<DimensionProbe> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let (mu, method) = match bass_numbers(m, bound)? {
        Some(mu) => (mu, "artinian-reduction"),
        None => {
            let k = FPModule::residue_field(m.ring.clone());
            let mut mu = Vec::new();
            for i in 0..=bound {
                let z = ext(&k, m, i, Detail::ZeroOnly)?.is_zero;
                mu.push(if z { 0 } else { 1 });
            }
            (mu, "direct")
        }
    };
    let evidence: Vec<(usize, bool)> = mu.iter().enumerate().map(|(i, &x)| (i, x == 0)).collect();
    let dr = ring_depth(&m.ring, bound)?.exact();
    let last = mu.iter().rposition(|&x| x > 0).unwrap_or(0);
    let value = match dr {
        Some(d) if bound >= last + 2 && last >= d => ProbeValue::Exact(last),
        _ => ProbeValue::Exceeds(bound),
    };
    Ok(DimensionProbe { quantity: Quantity::Id, value, evidence, heuristic: true, method: method.into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityViolation {
    pub sample: usize,
    pub n: usize,
    pub nonzero_at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub samples: usize,
    /// Instances where two consecutive Tor vanished.
    pub hypothesis_hits: usize,
    pub violations: Vec<RigidityViolation>,
}

/// Two consecutive vanishing Tor_n, Tor_{n+1}(M, N) must force Tor_i = 0 for
/// n ≤ i ≤ end of window.
pub fn rigidity_check<F: Field>(n: &FPModule<F>, samples: &[ModRef<F>], window: (usize, usize)) -> Result<RigidityReport> {
    if n.is_zero()? {
        return Err(Error::ZeroModule);
    }
    let (lo, hi) = window;
    let mut rep = RigidityReport { samples: samples.len(), hypothesis_hits: 0, violations: Vec::new() };
    for (s, m) in samples.iter().enumerate() {
        let zs: Vec<bool> = (lo..=hi + 1).map(|i| tor(m, n, i, Detail::ZeroOnly).map(|r| r.is_zero)).collect::<Result<_>>()?;
        for k in lo..=hi {
            let a = k - lo;
            if zs[a] && zs[a + 1] {
                rep.hypothesis_hits += 1;
                if let Some(j) = (k..=hi).find(|&j| !zs[j - lo]) {
                    rep.violations.push(RigidityViolation { sample: s, n: k, nonzero_at: j });
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub n: usize,
    /// Exact at Ext^n(M,R) ⊗ X.
    pub at_tensor: bool,
    /// Exact at Ext^n(M,X).
    pub at_ext: bool,
    /// Ext^n(M,X) → Tor_1(Tr Ω^n M, X) onto, compared against Tor_1 computed
    /// from the resolution of the transpose.
    pub at_tor: bool,
    /// The natural map Ext^n(M,R) ⊗ X → Ext^n(M,X) is one-to-one.
    pub phi_injective: bool,
    /// ... and onto.
    pub phi_surjective: bool,
}

fn span<F: Field>(r: &RingRef<F>, rows: &[i32], v: Vec<Elt<F>>) -> Result<Matrix<El<F>>> {
    let v: Vec<Elt<F>> = v.into_iter().map(|x| r.nf(&x)).filter(|x| !x.is_zero()).collect();
    Ok(matrix::from_columns(rows.to_vec(), matrix::with_degrees(rows, v)?))
}

/// Generators of the intersection of two column spans.
fn intersect<F: Field>(r: &RingRef<F>, a: &Matrix<El<F>>, b: &Matrix<El<F>>) -> Result<Vec<Elt<F>>> {
    if a.ncols() == 0 || b.ncols() == 0 {
        return Ok(Vec::new());
    }
    let k = matrix::kernel_projection(r, &matrix::hcat(a, b), a.ncols())?;
    let k = span(r, &a.cols, k)?;
    Ok(matrix::compose(r, a, &k).col)
}

fn all_in<F: Field>(r: &RingRef<F>, g: &Gb<El<F>>, v: &[Elt<F>]) -> bool {
    v.iter().all(|x| g.member(r.base(), &r.nf(x)))
}

fn kron_cols<F: Field>(r: &RingRef<F>, a: &Matrix<El<F>>, b: &Matrix<El<F>>) -> Vec<Elt<F>> {
    let f = &r.field;
    let g = b.nrows() as u32;
    let mut out = Vec::new();
    for ca in &a.col {
        for cb in &b.col {
            let mut t = Vec::new();
            for x in &ca.terms {
                for y in &cb.terms {
                    t.push(Term { pos: x.pos * g + y.pos, m: x.m.mul(&y.m), c: f.mul(&x.c, &y.c) });
                }
            }
            out.push(r.nf(&Vector::from_terms(f, t)));
        }
    }
    out
}

/// The sequence Tor_2(Tr Ω^n M, X) → Ext^n(M,R) ⊗ X → Ext^n(M,X) → Tor_1(Tr Ω^n M, X) → 0,
/// with every term a subquotient of F_n* ⊗ G0. There Ext^n(M,R) ⊗ X is
/// W/(B_R ⊗ G0 + δ ⊗ B) for W = (Ω^n M)* ⊗ G0, and the maps are induced by
/// inclusions, so exactness is a pair of membership tests per spot.
pub fn four_term_exactness<F: Field>(m: &FPModule<F>, x: &FPModule<F>, n: usize) -> Result<ExactnessReport> {
    if !m.ring.same(&x.ring) {
        return Err(Error::RingMismatch);
    }
    if n == 0 {
        return Err(Error::Invalid("sequence needs n ≥ 1".into()));
    }
    let r = &m.ring;
    let f = &r.field;
    let mut rep = ExactnessReport { n, at_tensor: true, at_ext: true, at_tor: true, phi_injective: true, phi_surjective: true };
    let res = m.resolve(n + 1)?;
    let fnd = neg(&res.free(n));
    let xp = x.minimal_presentation()?;
    let g0 = xp.pres.rows.clone();
    if fnd.is_empty() || g0.is_empty() {
        return Ok(rep);
    }
    let bm = &xp.pres;
    let amb = matrix::kron_twists(&fnd, &g0);
    let dn1 = matrix::dual(r, &res.d(n + 1));
    let dn = matrix::dual(r, &res.d(n));
    let delta = if dn1.nrows() == 0 { span(r, &fnd, (0..fnd.len()).map(|i| Vector::monomial(f, i as u32, crate::monomial::Mono::ONE, f.one())).collect())? } else { matrix::kernel(r, &dn1)? };
    let w = matrix::tensor_left(f, &delta, &g0);
    let b_r = matrix::tensor_left(f, &dn, &g0).col;
    let fb = matrix::tensor_right(f, &fnd, bm);
    let zx = matrix::kernel_projection(r, &matrix::hcat(&matrix::tensor_left(f, &dn1, &g0), &matrix::tensor_right(f, &neg(&res.free(n + 1)), bm)), amb.len())?;
    let gb = |v: &[Elt<F>]| -> Result<Gb<El<F>>> {
        let v: Vec<Elt<F>> = v.iter().map(|x| r.nf(x)).filter(|x| !x.is_zero()).collect();
        groebner::gb(r.base(), &amb, &v)
    };

    // Ext^n(M,R) ⊗ X: ker = W ∩ Bd_X, image of Tor_2 = W ∩ (F* ⊗ B).
    let mut bdx = b_r.clone();
    bdx.extend(fb.col.iter().cloned());
    let bdx_m = span(r, &amb, bdx.clone())?;
    let ker_a = intersect(r, &w, &bdx_m)?;
    let mut im_a = intersect(r, &w, &fb)?;
    let mut rel = b_r.clone();
    rel.extend(kron_cols(r, &delta, bm));
    im_a.extend(rel.iter().cloned());
    let (gw, gbd, gim) = (gb(&w.col)?, gb(&bdx)?, gb(&im_a)?);
    rep.phi_injective = all_in(r, &gb(&rel)?, &ker_a);
    rep.at_tensor = all_in(r, &gw, &im_a) && all_in(r, &gbd, &im_a) && all_in(r, &gim, &ker_a);

    // Ext^n(M,X): image W + Bd_X, kernel (Z_X ∩ (W + F* ⊗ B)) + Bd_X.
    let mut im_b = w.col.clone();
    im_b.extend(bdx.iter().cloned());
    let mut wfb = w.col.clone();
    wfb.extend(fb.col.iter().cloned());
    let zx_m = span(r, &amb, zx.clone())?;
    let mut ker_b = intersect(r, &zx_m, &span(r, &amb, wfb.clone())?)?;
    ker_b.extend(bdx.iter().cloned());
    let (gib, gkb) = (gb(&im_b)?, gb(&ker_b)?);
    rep.at_ext = all_in(r, &gkb, &im_b) && all_in(r, &gib, &ker_b);
    rep.phi_surjective = all_in(r, &gib, &zx);

    // Tor_1: the cokernel Z_X / (W + F* ⊗ B) against Tor_1 of the transpose.
    let here = homology(r, Functor::Tor, 1, &amb, zx, wfb, Detail::Full)?;
    let t = FPModule::new(r.clone(), dn1)?;
    let there = tor(&t, x, 1, Detail::Full)?;
    rep.at_tor = here.is_zero == there.is_zero && here.k_dimension == there.k_dimension && here.hilbert_values == there.hilbert_values;
    Ok(rep)
}

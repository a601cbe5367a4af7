//! Finitely presented graded modules M = coker(A: F1 -> F0).

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::groebner::Gb;
use crate::matrix::{self, Matrix};
use crate::ring::{Elt, RingRef};
use crate::vector::{self, Term, Vector};
use std::sync::{Arc, Mutex, OnceLock};

pub const DEFAULT_STEPS: usize = 8;

#[derive(Debug)]
pub struct FPModule<F: Field> {
    pub ring: RingRef<F>,
    /// Presentation matrix; its rows are the generator twists.
    pub pres: Matrix<El<F>>,
    minimal: OnceLock<Arc<FPModule<F>>>,
    is_min: bool,
    res: Mutex<Option<Arc<Resolution<F>>>>,
    gb: OnceLock<Gb<El<F>>>,
}

pub type ModRef<F> = Arc<FPModule<F>>;

/// A minimal graded free resolution computed out to some length.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    /// twists[i] = twists of F_i.
    pub twists: Vec<Vec<i32>>,
    /// maps[i] = d_{i+1}: F_{i+1} -> F_i.
    pub maps: Vec<Matrix<El<F>>>,
    /// Some(s) when ker d_s = 0 was certified (pd = s).
    pub terminated: Option<usize>,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> Vec<usize> {
        self.twists.iter().map(|t| t.len()).collect()
    }
    /// The free module F_i (empty past termination).
    pub fn free(&self, i: usize) -> Vec<i32> {
        self.twists.get(i).cloned().unwrap_or_default()
    }
    /// d_i: F_i -> F_{i-1}; zero map past the computed range.
    pub fn d(&self, i: usize) -> Matrix<El<F>> {
        if i == 0 {
            return Matrix::zero(Vec::new(), self.free(0));
        }
        match self.maps.get(i - 1) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.free(i - 1), self.free(i)),
        }
    }
    /// Number of steps known exactly (all of them once terminated).
    pub fn known(&self) -> usize {
        self.maps.len()
    }
}

impl<F: Field> FPModule<F> {
    pub fn new(ring: RingRef<F>, pres: Matrix<El<F>>) -> Result<ModRef<F>> {
        matrix::check::<F>(&pres)?;
        let pres = Matrix { col: pres.col.iter().map(|c| ring.nf(c)).collect(), ..pres };
        Ok(Arc::new(Self::raw(ring, pres, false)))
    }

    fn raw(ring: RingRef<F>, pres: Matrix<El<F>>, is_min: bool) -> Self {
        FPModule { ring, pres, minimal: OnceLock::new(), is_min, res: Mutex::new(None), gb: OnceLock::new() }
    }

    pub fn free(ring: RingRef<F>, twists: Vec<i32>) -> ModRef<F> {
        let m = Self::raw(ring, Matrix::zero(twists, Vec::new()), true);
        Arc::new(m)
    }

    /// R/I for I generated by `gens`.
    pub fn cyclic(ring: RingRef<F>, gens: &[Elt<F>]) -> Result<ModRef<F>> {
        let mut cols = Vec::new();
        for g in gens {
            let g = ring.nf(g);
            if g.is_zero() {
                continue;
            }
            let d = homogeneous_degree(&ring, &g)?;
            cols.push((d, g));
        }
        FPModule::new(ring, matrix::from_columns(vec![0], cols))
    }

    /// The residue field k = R/m.
    pub fn residue_field(ring: RingRef<F>) -> ModRef<F> {
        let v = ring.vars();
        FPModule::cyclic(ring, &v).expect("variables are homogeneous")
    }

    /// The ideal I as a module: the image of R^g -> R, presented by syzygies.
    pub fn ideal(ring: RingRef<F>, gens: &[Elt<F>]) -> Result<ModRef<F>> {
        let mut row = Vec::new();
        for g in gens {
            let g = ring.nf(g);
            if g.is_zero() {
                continue;
            }
            row.push((homogeneous_degree(&ring, &g)?, g));
        }
        let a = matrix::from_columns(vec![0], row);
        let idx = crate::groebner::minimal_generators(ring.base(), &a.rows, &a.col)?;
        let a = Matrix {
            rows: vec![0],
            cols: idx.iter().map(|&i| a.cols[i]).collect(),
            col: idx.iter().map(|&i| a.col[i].clone()).collect(),
        };
        let k = matrix::kernel(&ring, &a)?;
        let pres = Matrix { rows: a.cols.clone(), cols: k.cols, col: k.col };
        FPModule::new(ring, pres)
    }

    pub fn rank0(&self) -> usize {
        self.pres.nrows()
    }

    pub fn gen_twists(&self) -> &[i32] {
        &self.pres.rows
    }

    /// Groebner basis of the relation submodule of F0.
    pub fn rel_gb(&self) -> &Gb<El<F>> {
        self.gb.get_or_init(|| matrix::column_gb(&self.ring, &self.pres).expect("relation basis within budget"))
    }

    /// As `rel_gb` but propagating budget errors.
    pub fn try_rel_gb(&self) -> Result<&Gb<El<F>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = matrix::column_gb(&self.ring, &self.pres)?;
        Ok(self.gb.get_or_init(|| g))
    }

    /// dim_k M_d.
    pub fn hilbert(&self, d: i32) -> Result<usize> {
        let g = self.try_rel_gb()?;
        let r = &self.ring;
        Ok(g.hilbert(&|e| r.std_monos(e).to_vec(), d))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.minimal_presentation()?.rank0() == 0)
    }

    /// Presentation with no unit entries and a minimal set of relations.
    pub fn minimal_presentation(&self) -> Result<ModRef<F>> {
        if let Some(m) = self.minimal.get() {
            return Ok(m.clone());
        }
        let m = if self.is_min {
            Arc::new(Self::raw(self.ring.clone(), self.pres.clone(), true))
        } else {
            let p = prune_units(&self.ring, &self.pres);
            let mc = matrix::minimal_columns(&self.ring, &p.rows, p.col.clone())?;
            Arc::new(Self::raw(self.ring.clone(), mc, true))
        };
        Ok(self.minimal.get_or_init(|| m).clone())
    }

    /// Minimal free resolution out to `steps` (reusing any cached prefix).
    pub fn resolve(&self, steps: usize) -> Result<Arc<Resolution<F>>> {
        let mut guard = self.res.lock().unwrap();
        if let Some(r) = guard.as_ref() {
            if r.terminated.is_some() || r.known() >= steps {
                return Ok(r.clone());
            }
        }
        let mut res = match guard.as_ref() {
            Some(r) => (**r).clone(),
            None => {
                let mp = self.minimal_presentation()?;
                let mut res = Resolution { twists: vec![mp.pres.rows.clone()], maps: Vec::new(), terminated: None };
                if mp.rank0() == 0 {
                    res.terminated = Some(0);
                } else if mp.pres.ncols() == 0 {
                    res.terminated = Some(0);
                } else {
                    res.twists.push(mp.pres.cols.clone());
                    res.maps.push(mp.pres.clone());
                }
                res
            }
        };
        while res.terminated.is_none() && res.known() < steps {
            let last = res.maps.last().unwrap().clone();
            let k = matrix::kernel(&self.ring, &last)?;
            if k.ncols() == 0 {
                res.terminated = Some(res.maps.len());
            } else {
                res.twists.push(k.cols.clone());
                res.maps.push(k);
            }
        }
        // One more kernel decides termination at exactly `steps`.
        if res.terminated.is_none() && res.known() == steps && steps > 0 {
            let last = res.maps.last().unwrap().clone();
            let k = matrix::kernel(&self.ring, &last)?;
            if k.ncols() == 0 {
                res.terminated = Some(res.maps.len());
            } else {
                res.twists.push(k.cols.clone());
                res.maps.push(k);
            }
        }
        let r = Arc::new(res);
        *guard = Some(r.clone());
        Ok(r)
    }

    /// Ω^n M as coker(d_{n+1}) on F_n; Ω^0 M is the minimal presentation.
    pub fn syzygy(&self, n: usize) -> Result<ModRef<F>> {
        if n == 0 {
            return self.minimal_presentation();
        }
        let r = self.resolve(n + 1)?;
        let pres = r.d(n + 1);
        Ok(Arc::new(Self::raw(self.ring.clone(), pres, true)))
    }

    /// Tr M = coker(A^T) for the minimal presentation A.
    pub fn transpose(&self) -> Result<ModRef<F>> {
        let mp = self.minimal_presentation()?;
        let at = matrix::dual(&self.ring, &mp.pres);
        FPModule::new(self.ring.clone(), at)
    }

    /// M ⊗ N = coker(A ⊗ 1 | 1 ⊗ B).
    pub fn tensor(&self, n: &FPModule<F>) -> Result<ModRef<F>> {
        same_ring(self, n)?;
        let f = &self.ring.field;
        let a = &self.pres;
        let b = &n.pres;
        let m1 = matrix::tensor_left(f, a, &b.rows);
        let m2 = matrix::tensor_right(f, &a.rows, b);
        FPModule::new(self.ring.clone(), matrix::hcat(&m1, &m2))
    }

    pub fn direct_sum(&self, n: &FPModule<F>) -> Result<ModRef<F>> {
        same_ring(self, n)?;
        FPModule::new(self.ring.clone(), matrix::direct_sum(&self.ring.field, &self.pres, &n.pres))
    }

    /// Hom(M, N) presented as a subquotient of Hom(F0, G0).
    pub fn hom_module(&self, n: &FPModule<F>) -> Result<ModRef<F>> {
        same_ring(self, n)?;
        let mp = self.minimal_presentation()?;
        let np = n.minimal_presentation()?;
        let r = &self.ring;
        let f = &r.field;
        let g0 = np.pres.rows.clone();
        let b = &np.pres;
        let a = &mp.pres;
        // Hom(F_i, G0) = F_i^* ⊗ G0.
        let f0d: Vec<i32> = a.rows.iter().map(|x| -x).collect();
        let f1d: Vec<i32> = a.cols.iter().map(|x| -x).collect();
        let x = matrix::tensor_left(f, &matrix::dual(r, a), &g0);
        let b1 = matrix::tensor_right(f, &f1d, b);
        let keep = x.ncols();
        let z = matrix::kernel_projection(r, &matrix::hcat(&x, &b1), keep)?;
        let bd = matrix::tensor_right(f, &f0d, b).col;
        let tw = matrix::kron_twists(&f0d, &g0);
        subquotient(r.clone(), &tw, z, bd)
    }

    pub fn dual(&self) -> Result<ModRef<F>> {
        let rr = FPModule::free(self.ring.clone(), vec![0]);
        self.hom_module(&rr)
    }
}

/// The module (Z + Bd)/Bd presented by generators of Z: relations are the
/// syzygies of [Z | Bd] projected to the Z coordinates.
pub fn subquotient<F: Field>(
    ring: RingRef<F>,
    twists: &[i32],
    z: Vec<Elt<F>>,
    bd: Vec<Elt<F>>,
) -> Result<ModRef<F>> {
    let zm = matrix::minimal_columns(&ring, twists, z)?;
    let bdc: Vec<Elt<F>> = bd.into_iter().map(|v| ring.nf(&v)).filter(|v| !v.is_zero()).collect();
    let bdm = matrix::from_columns(twists.to_vec(), matrix::with_degrees(twists, bdc)?);
    let s = zm.ncols();
    let big = matrix::hcat(&zm, &bdm);
    let k = matrix::kernel_projection(&ring, &big, s)?;
    let pres = matrix::minimal_columns(&ring, &zm.cols, k)?;
    FPModule::new(ring, pres)
}

fn same_ring<F: Field>(a: &FPModule<F>, b: &FPModule<F>) -> Result<()> {
    if a.ring.same(&b.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

pub fn homogeneous_degree<F: Field>(r: &crate::ring::Ring<F>, g: &Elt<F>) -> Result<i32> {
    if !r.is_homogeneous(g) {
        return Err(Error::NonHomogeneous(format!("{} is not homogeneous", r.render(g))));
    }
    Ok(r.degree_of(g).unwrap_or(0))
}

/// Removes unit entries by pivoting, scanning row-major, to a fixpoint.
pub fn prune_units<F: Field>(r: &crate::ring::Ring<F>, a: &Matrix<El<F>>) -> Matrix<El<F>> {
    let f = &r.field;
    let mut rows = a.rows.clone();
    let mut cols = a.cols.clone();
    let mut col: Vec<Elt<F>> = a.col.clone();
    loop {
        // find pivot: smallest row index i, then first column j with a unit at row i
        let mut piv: Option<(u32, usize, El<F>)> = None;
        for (j, c) in col.iter().enumerate() {
            for t in &c.terms {
                if t.m.is_one() {
                    if piv.as_ref().map(|p| t.pos < p.0).unwrap_or(true) {
                        piv = Some((t.pos, j, t.c.clone()));
                    }
                    break;
                }
            }
        }
        let Some((i, j, u)) = piv else { break };
        let pc = col[j].clone();
        let inv = f.inv(&u);
        let mut ncol = Vec::with_capacity(col.len() - 1);
        let mut ncols = Vec::with_capacity(col.len() - 1);
        for (l, c) in col.iter().enumerate() {
            if l == j {
                continue;
            }
            let e = c.component(i);
            let v = if e.is_zero() {
                c.clone()
            } else {
                // c - e/u * pc
                let s = vector::poly_times(f, &vector::scale(f, &f.neg(&inv), &e), &pc);
                r.nf(&vector::add(f, c, &s))
            };
            ncol.push(v);
            ncols.push(cols[l]);
        }
        // delete row i
        ncol = ncol
            .into_iter()
            .map(|c| Vector {
                terms: c
                    .terms
                    .into_iter()
                    .filter(|t| t.pos != i)
                    .map(|t| Term { pos: if t.pos > i { t.pos - 1 } else { t.pos }, m: t.m, c: t.c })
                    .collect(),
            })
            .collect();
        rows.remove(i as usize);
        col = ncol;
        cols = ncols;
    }
    Matrix { rows, cols, col }
}

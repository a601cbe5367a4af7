//! Homogeneous matrices between graded free modules, stored by columns, and
//! the kernel computations built on the Groebner engine.

use crate::error::{Error, Result};
use crate::field::{El, Field};
use crate::groebner::{self, vector_degree, Gb};
use crate::monomial::Mono;
use crate::ring::{Elt, Ring};
use crate::vector::{self, Term, Vector};

/// A map F_src -> F_tgt. `rows` are target twists, `cols` source twists;
/// column j is the image of the j-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    pub rows: Vec<i32>,
    pub cols: Vec<i32>,
    pub col: Vec<Vector<E>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zero(rows: Vec<i32>, cols: Vec<i32>) -> Self {
        let n = cols.len();
        Matrix { rows, cols, col: vec![Vector::zero(); n] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Vector<E> {
        self.col[j].component(i as u32)
    }

    /// Degree-0 entries anywhere (a non-minimal map).
    pub fn has_unit_entry(&self) -> bool {
        self.col.iter().any(|c| c.terms.iter().any(|t| t.m.is_one()))
    }

    pub fn is_zero(&self) -> bool {
        self.col.iter().all(|c| c.is_zero())
    }
}

/// Checks that every column is homogeneous of its declared degree.
pub fn check<F: Field>(a: &Matrix<El<F>>) -> Result<()> {
    if a.col.len() != a.cols.len() {
        return Err(Error::Twist("column count does not match source rank".into()));
    }
    for (j, c) in a.col.iter().enumerate() {
        if let Some(d) = vector_degree(c, &a.rows)? {
            if d != a.cols[j] {
                return Err(Error::Twist(format!("column {j} has degree {d}, source twist is {}", a.cols[j])));
            }
        }
    }
    Ok(())
}

/// A·B (apply B first).
pub fn compose<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>, b: &Matrix<El<F>>) -> Matrix<El<F>> {
    assert_eq!(a.cols.len(), b.rows.len(), "composable shapes");
    let f = &r.field;
    let col = b
        .col
        .iter()
        .map(|bc| {
            let mut acc = Vector::zero();
            for t in &bc.terms {
                acc = vector::combine(f, &acc, &t.c, &t.m, &a.col[t.pos as usize]);
            }
            r.nf(&acc)
        })
        .collect();
    Matrix { rows: a.rows.clone(), cols: b.cols.clone(), col }
}

/// Transpose with dualized twists: (A: F1 -> F0) becomes A^T: F0* -> F1*.
pub fn dual<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>) -> Matrix<El<F>> {
    let f = &r.field;
    let mut cols: Vec<Vec<Term<El<F>>>> = vec![Vec::new(); a.nrows()];
    for (j, c) in a.col.iter().enumerate() {
        for t in &c.terms {
            cols[t.pos as usize].push(Term { pos: j as u32, m: t.m, c: t.c.clone() });
        }
    }
    Matrix {
        rows: a.cols.iter().map(|x| -x).collect(),
        cols: a.rows.iter().map(|x| -x).collect(),
        col: cols.into_iter().map(|t| Vector::from_terms(f, t)).collect(),
    }
}

/// Horizontal concatenation [A | B] with a shared target.
pub fn hcat<E: Clone + PartialEq>(a: &Matrix<E>, b: &Matrix<E>) -> Matrix<E> {
    assert_eq!(a.rows, b.rows);
    let mut m = a.clone();
    m.cols.extend_from_slice(&b.cols);
    m.col.extend(b.col.iter().cloned());
    m
}

/// Block diagonal A ⊕ B.
pub fn direct_sum<F: Field>(f: &F, a: &Matrix<El<F>>, b: &Matrix<El<F>>) -> Matrix<El<F>> {
    let off = a.nrows() as u32;
    let mut rows = a.rows.clone();
    rows.extend_from_slice(&b.rows);
    let mut cols = a.cols.clone();
    cols.extend_from_slice(&b.cols);
    let mut col = a.col.clone();
    col.extend(b.col.iter().map(|c| c.map_pos(f, |p| p + off)));
    Matrix { rows, cols, col }
}

/// A ⊗ id_G: (F1 ⊗ G) -> (F0 ⊗ G), basis (j, q) at index j*g + q.
pub fn tensor_left<F: Field>(f: &F, a: &Matrix<El<F>>, g: &[i32]) -> Matrix<El<F>> {
    let gl = g.len() as u32;
    let rows = kron_twists(&a.rows, g);
    let cols = kron_twists(&a.cols, g);
    let mut col = Vec::with_capacity(cols.len());
    for c in &a.col {
        for q in 0..gl {
            col.push(c.map_pos(f, |p| p * gl + q));
        }
    }
    Matrix { rows, cols, col }
}

/// id_F ⊗ B: (F ⊗ G1) -> (F ⊗ G0), basis (j, q) at index j*g + q.
pub fn tensor_right<F: Field>(f: &F, fr: &[i32], b: &Matrix<El<F>>) -> Matrix<El<F>> {
    let g0 = b.nrows() as u32;
    let rows = kron_twists(fr, &b.rows);
    let cols = kron_twists(fr, &b.cols);
    let mut col = Vec::with_capacity(cols.len());
    for j in 0..fr.len() as u32 {
        for c in &b.col {
            col.push(c.map_pos(f, |p| j * g0 + p));
        }
    }
    Matrix { rows, cols, col }
}

pub fn kron_twists(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x + y);
        }
    }
    out
}

/// Generators of a submodule spanned by columns, as a matrix into `rows`.
pub fn from_columns<E: Clone + PartialEq>(rows: Vec<i32>, gens: Vec<(i32, Vector<E>)>) -> Matrix<E> {
    let (cols, col) = gens.into_iter().unzip();
    Matrix { rows, cols, col }
}

/// Degree of each vector, for building column twists.
pub fn with_degrees<E: Clone>(twists: &[i32], v: Vec<Vector<E>>) -> Result<Vec<(i32, Vector<E>)>> {
    v.into_iter()
        .map(|x| {
            let d = vector_degree(&x, twists)?.ok_or_else(|| Error::Invalid("zero generator".into()))?;
            Ok((d, x))
        })
        .collect()
}

/// Groebner basis of the kernel of A restricted to the first `keep` source
/// coordinates after elimination: the returned vectors generate the
/// projection of ker A onto those coordinates (all of ker A when `keep` is
/// the number of columns). The result is a Groebner basis.
pub fn kernel_projection<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>, keep: usize) -> Result<Vec<Elt<F>>> {
    check::<F>(a)?;
    let f = &r.field;
    let b = a.nrows() as u32;
    let mut twists = a.rows.clone();
    twists.extend_from_slice(&a.cols);
    let gens: Vec<Elt<F>> = a
        .col
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut t = r.nf(c).terms;
            t.push(Term { pos: b + j as u32, m: Mono::ONE, c: f.one() });
            Vector { terms: t }
        })
        .collect();
    let basis = groebner::gb(r.base(), &twists, &gens)?.basis;
    let lo = b;
    let hi = b + keep as u32;
    Ok(basis
        .into_iter()
        .filter(|v| {
            let p = v.terms[0].pos;
            p >= lo && p < hi
        })
        .map(|v| Vector {
            terms: v
                .terms
                .into_iter()
                .filter(|t| t.pos < hi)
                .map(|t| Term { pos: t.pos - lo, m: t.m, c: t.c })
                .collect(),
        })
        .collect())
}

/// Groebner basis of ker A (vectors in the source module).
pub fn kernel_gb<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>) -> Result<Vec<Elt<F>>> {
    kernel_projection(r, a, a.ncols())
}

/// Minimal generators of ker A as the columns of a matrix into the source.
pub fn kernel<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>) -> Result<Matrix<El<F>>> {
    let k = kernel_gb(r, a)?;
    let m = minimal_columns(r, &a.cols, k)?;
    Ok(m)
}

/// Minimal generating subset of a list of vectors, as a matrix.
pub fn minimal_columns<F: Field>(r: &Ring<F>, twists: &[i32], v: Vec<Elt<F>>) -> Result<Matrix<El<F>>> {
    let v: Vec<Elt<F>> = v.into_iter().map(|x| r.nf(&x)).filter(|x| !x.is_zero()).collect();
    let idx = groebner::minimal_generators(r.base(), twists, &v)?;
    let gens: Vec<Elt<F>> = idx.into_iter().map(|i| v[i].clone()).collect();
    let gens = with_degrees(twists, gens)?;
    Ok(from_columns(twists.to_vec(), gens))
}

/// Groebner basis handle of the column span.
pub fn column_gb<F: Field>(r: &Ring<F>, a: &Matrix<El<F>>) -> Result<Gb<El<F>>> {
    let gens: Vec<Elt<F>> = a.col.iter().map(|c| r.nf(c)).filter(|c| !c.is_zero()).collect();
    groebner::gb(r.base(), &a.rows, &gens)
}

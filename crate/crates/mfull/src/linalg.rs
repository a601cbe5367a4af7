//! Sparse exact linear algebra over a field.

use crate::field::{El, Field};
use std::collections::{BTreeMap, HashMap};

/// Sparse vector: (index, nonzero coefficient), indices increasing.
pub type SVec<E> = Vec<(usize, E)>;

/// Row echelon form built incrementally. Each stored row has a distinct
/// pivot (its first index) with coefficient one; pivots are only taken
/// among indices below `limit`, so higher indices can carry bookkeeping.
pub struct Echelon<F: Field> {
    f: F,
    limit: usize,
    rows: HashMap<usize, SVec<El<F>>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(f: F, limit: usize) -> Self {
        Echelon { f, limit, rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot index below `limit` from `v`.
    pub fn reduce(&self, v: &SVec<El<F>>) -> SVec<El<F>> {
        let f = &self.f;
        let mut acc: BTreeMap<usize, El<F>> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..self.limit).next().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            cursor = k + 1;
            if let Some(row) = self.rows.get(&k) {
                for (i, x) in row {
                    let e = acc.entry(*i).or_insert_with(|| f.zero());
                    *e = f.sub(e, &f.mul(&c, x));
                    if f.is_zero(e) {
                        acc.remove(i);
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Adds `v`; returns true when it was independent of the rows so far
    /// (judged on indices below `limit`). On dependence the reduced vector
    /// is returned in the error branch, letting callers read bookkeeping.
    pub fn insert(&mut self, v: &SVec<El<F>>) -> std::result::Result<(), SVec<El<F>>> {
        let r = self.reduce(v);
        match r.first() {
            Some((k, c)) if *k < self.limit => {
                let k = *k;
                let inv = self.f.inv(c);
                let row: SVec<El<F>> = r.iter().map(|(i, x)| (*i, self.f.mul(&inv, x))).collect();
                self.rows.insert(k, row);
                Ok(())
            }
            _ => Err(r),
        }
    }

    pub fn contains(&self, v: &SVec<El<F>>) -> bool {
        self.reduce(v).iter().all(|(i, _)| *i >= self.limit)
    }
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(f: &F, vs: &[SVec<El<F>>], dim: usize) -> usize {
    let mut e = Echelon::new(f.clone(), dim);
    for v in vs {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending unit vector j to `images[j]`
/// (vectors in a space of dimension `dim`). Kernel vectors are returned in
/// source coordinates.
pub fn kernel<F: Field>(f: &F, images: &[SVec<El<F>>], dim: usize) -> Vec<SVec<El<F>>> {
    let mut e = Echelon::new(f.clone(), dim);
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        let mut aug = v.clone();
        aug.push((dim + j, f.one()));
        if let Err(r) = e.insert(&aug) {
            out.push(r.into_iter().map(|(i, c)| (i - dim, c)).collect());
        }
    }
    out
}

/// Indices of the vectors in `cands` that extend a basis of span(`sub`)
/// greedily (a complement of span(sub) inside span(sub, cands)).
pub fn complement<F: Field>(f: &F, sub: &[SVec<El<F>>], cands: &[SVec<El<F>>], dim: usize) -> Vec<usize> {
    let mut e = Echelon::new(f.clone(), dim);
    for v in sub {
        let _ = e.insert(v);
    }
    let mut out = Vec::new();
    for (k, v) in cands.iter().enumerate() {
        if e.insert(v).is_ok() {
            out.push(k);
        }
    }
    out
}

/// Dense matrix rank, for small oracle computations.
pub fn dense_rank<F: Field>(f: &F, m: &[Vec<El<F>>]) -> usize {
    let rows: Vec<SVec<El<F>>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i, c.clone())).collect())
        .collect();
    let dim = m.first().map(|r| r.len()).unwrap_or(0);
    rank(f, &rows, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};

    #[test]
    fn kernel_of_small_map() {
        let f = Q;
        let one = f.one();
        // e0 -> (1,0), e1 -> (0,1), e2 -> (1,1)
        let imgs = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(0, one.clone()), (1, one.clone())]];
        let k = kernel(&f, &imgs, 2);
        assert_eq!(k.len(), 1);
        // e2 - e0 - e1
        let v = &k[0];
        assert_eq!(v.len(), 3);
        assert_eq!(rank(&f, &imgs, 2), 2);
    }

    #[test]
    fn complement_picks_new_directions() {
        let f = Fp::default();
        let sub = vec![vec![(0, 1u32)]];
        let cands = vec![vec![(0, 5u32)], vec![(1, 1u32)], vec![(0, 1), (1, 1)]];
        assert_eq!(complement(&f, &sub, &cands, 2), vec![1]);
    }
}

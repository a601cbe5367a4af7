//! Dense linear algebra over finite dimensional algebras, used as an
//! independent check on the Gröbner engine.
//!
//! An algebra A is a vector space with a monomial basis and one
//! multiplication matrix per variable. Modules are vector spaces with
//! commuting action matrices. Resolutions, Tor, Ext and stable Hom are
//! computed from ranks of explicit block matrices; nothing here touches the
//! engine's Gröbner code.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Qn = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub r: usize,
    pub c: usize,
    pub a: Vec<Qn>,
}

impl Mat {
    pub fn zero(r: usize, c: usize) -> Mat {
        Mat { r, c, a: vec![Qn::zero(); r * c] }
    }
    pub fn id(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = Qn::one();
        }
        m
    }
    pub fn at(&self, i: usize, j: usize) -> &Qn {
        &self.a[i * self.c + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Qn) {
        self.a[i * self.c + j] = v;
    }
    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.c, o.r);
        let mut m = Mat::zero(self.r, o.c);
        for i in 0..self.r {
            for k in 0..self.c {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.c {
                    let y = o.at(k, j);
                    if !y.is_zero() {
                        m.a[i * o.c + j] += x * y;
                    }
                }
            }
        }
        m
    }
    pub fn add(&self, o: &Mat) -> Mat {
        Mat { r: self.r, c: self.c, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect() }
    }
    pub fn scale(&self, s: &Qn) -> Mat {
        Mat { r: self.r, c: self.c, a: self.a.iter().map(|x| x * s).collect() }
    }
    pub fn col(&self, j: usize) -> Vec<Qn> {
        (0..self.r).map(|i| self.at(i, j).clone()).collect()
    }
    pub fn from_cols(r: usize, cols: &[Vec<Qn>]) -> Mat {
        let mut m = Mat::zero(r, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }
    pub fn apply(&self, v: &[Qn]) -> Vec<Qn> {
        (0..self.r).map(|i| (0..self.c).fold(Qn::zero(), |s, j| s + self.at(i, j) * &v[j])).collect()
    }
}

/// Row echelon form in place; returns pivot columns.
fn rref(m: &mut Mat) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut row = 0;
    for col in 0..m.c {
        if row == m.r {
            break;
        }
        let Some(p) = (row..m.r).find(|&i| !m.at(i, col).is_zero()) else { continue };
        for j in 0..m.c {
            m.a.swap(row * m.c + j, p * m.c + j);
        }
        let inv = Qn::one() / m.at(row, col).clone();
        for j in 0..m.c {
            let v = m.at(row, j) * &inv;
            m.set(row, j, v);
        }
        for i in 0..m.r {
            if i != row && !m.at(i, col).is_zero() {
                let f = m.at(i, col).clone();
                for j in 0..m.c {
                    let v = m.at(i, j) - &f * m.at(row, j);
                    m.set(i, j, v);
                }
            }
        }
        piv.push(col);
        row += 1;
    }
    piv
}

pub fn rank(m: &Mat) -> usize {
    if m.r == 0 || m.c == 0 {
        return 0;
    }
    let mut t = m.clone();
    rref(&mut t).len()
}

/// Basis of the null space, as columns.
pub fn kernel(m: &Mat) -> Vec<Vec<Qn>> {
    kernel_free(m).0
}

/// Null space basis together with its free columns: basis vector j is 1 at
/// free[j] and 0 at the other free columns, so w[free] are the coordinates of w.
fn kernel_free(m: &Mat) -> (Vec<Vec<Qn>>, Vec<usize>) {
    let mut t = m.clone();
    let piv = rref(&mut t);
    let free: Vec<usize> = (0..m.c).filter(|c| !piv.contains(c)).collect();
    let b = free
        .iter()
        .map(|&f| {
            let mut v = vec![Qn::zero(); m.c];
            v[f] = Qn::one();
            for (row, &p) in piv.iter().enumerate() {
                v[p] = -t.at(row, f).clone();
            }
            v
        })
        .collect();
    (b, free)
}

/// A subspace W of k^n in reduced echelon form, for reduction modulo W.
struct Sub {
    rows: Mat,
    piv: Vec<usize>,
}

impl Sub {
    fn new(n: usize, cols: &[Vec<Qn>]) -> Sub {
        let mut m = Mat::zero(cols.len(), n);
        for (i, c) in cols.iter().enumerate() {
            for j in 0..n {
                m.set(i, j, c[j].clone());
            }
        }
        let piv = rref(&mut m);
        Sub { rows: m, piv }
    }
    fn reduce(&self, v: &[Qn]) -> Vec<Qn> {
        let mut v = v.to_vec();
        for (i, &p) in self.piv.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..v.len() {
                    v[j] -= &f * self.rows.at(i, j);
                }
            }
        }
        v
    }
    fn free(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|c| !self.piv.contains(c)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Module {
    pub dim: usize,
    pub act: Vec<Mat>,
}

#[derive(Clone, Debug)]
pub struct Alg {
    /// Basis monomials as exponent vectors; the first is 1.
    pub basis: Vec<Vec<u32>>,
    /// Multiplication by each variable on basis coordinates.
    pub mult: Vec<Mat>,
}

fn q(n: i64) -> Qn {
    Qn::from_integer(n.into())
}

impl Alg {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn nvars(&self) -> usize {
        self.mult.len()
    }

    /// k[x_1..x_n]/I for a monomial ideal I (given by exponent vectors) with
    /// finite colength.
    pub fn monomial(nvars: usize, gens: &[Vec<u32>], max_exp: u32) -> Alg {
        let divides = |g: &[u32], m: &[u32]| g.iter().zip(m).all(|(a, b)| a <= b);
        let mut basis: Vec<Vec<u32>> = vec![vec![0; nvars]];
        let mut i = 0;
        while i < basis.len() {
            for v in 0..nvars {
                let mut m = basis[i].clone();
                m[v] += 1;
                assert!(m[v] <= max_exp, "not Artinian within bound");
                if !gens.iter().any(|g| divides(g, &m)) && !basis.contains(&m) {
                    basis.push(m);
                }
            }
            i += 1;
        }
        let n = basis.len();
        let mult = (0..nvars)
            .map(|v| {
                let mut m = Mat::zero(n, n);
                for (j, b) in basis.iter().enumerate() {
                    let mut e = b.clone();
                    e[v] += 1;
                    if let Some(k) = basis.iter().position(|x| *x == e) {
                        m.set(k, j, Qn::one());
                    }
                }
                m
            })
            .collect();
        Alg { basis, mult }
    }

    /// An algebra from explicit data: basis monomials and, for each variable
    /// and basis element, the product as a coefficient vector.
    pub fn explicit(basis: Vec<Vec<u32>>, products: Vec<Vec<Vec<i64>>>) -> Alg {
        let n = basis.len();
        let mult = products
            .iter()
            .map(|pv| {
                let cols: Vec<Vec<Qn>> = pv.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect();
                Mat::from_cols(n, &cols)
            })
            .collect();
        Alg { basis, mult }
    }

    /// Action of every basis monomial on a module, from its variable actions.
    pub fn monomial_actions(&self, act: &[Mat], dim: usize) -> Vec<Mat> {
        self.basis
            .iter()
            .map(|b| {
                let mut m = Mat::id(dim);
                for (v, &e) in b.iter().enumerate() {
                    for _ in 0..e {
                        m = act[v].mul(&m);
                    }
                }
                m
            })
            .collect()
    }

    /// Action of an algebra element (basis coordinates) on a module.
    pub fn element_action(&self, a: &[Qn], mono: &[Mat], dim: usize) -> Mat {
        let mut m = Mat::zero(dim, dim);
        for (k, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&mono[k].scale(c));
            }
        }
        m
    }

    pub fn free(&self, g: usize) -> Module {
        let n = self.dim();
        let act = self
            .mult
            .iter()
            .map(|x| {
                let mut m = Mat::zero(n * g, n * g);
                for b in 0..g {
                    for i in 0..n {
                        for j in 0..n {
                            m.set(b * n + i, b * n + j, x.at(i, j).clone());
                        }
                    }
                }
                m
            })
            .collect();
        Module { dim: n * g, act }
    }

    /// The quotient A^g / (submodule generated by `gens`), gens in A^g coordinates.
    pub fn quotient(&self, g: usize, gens: &[Vec<Qn>]) -> Module {
        let f = self.free(g);
        let mono = self.monomial_actions(&f.act, f.dim);
        let span: Vec<Vec<Qn>> = gens.iter().flat_map(|v| mono.iter().map(move |m| m.apply(v))).collect();
        let s = Sub::new(f.dim, &span);
        let free = s.free(f.dim);
        let act = f
            .act
            .iter()
            .map(|x| {
                let mut m = Mat::zero(free.len(), free.len());
                for (j, &fj) in free.iter().enumerate() {
                    let mut e = vec![Qn::zero(); f.dim];
                    e[fj] = Qn::one();
                    let w = s.reduce(&x.apply(&e));
                    for (i, &fi) in free.iter().enumerate() {
                        m.set(i, j, w[fi].clone());
                    }
                }
                m
            })
            .collect();
        Module { dim: free.len(), act }
    }

    /// A / (ideal generated by the given monomials).
    pub fn cyclic_monomial(&self, gens: &[Vec<u32>]) -> Module {
        let n = self.dim();
        let vs: Vec<Vec<Qn>> = gens
            .iter()
            .map(|g| {
                let mut v = vec![Qn::zero(); n];
                if let Some(k) = self.basis.iter().position(|b| b == g) {
                    v[k] = Qn::one();
                }
                v
            })
            .collect();
        self.quotient(1, &vs)
    }

    pub fn residue(&self) -> Module {
        let gens: Vec<Vec<u32>> = (0..self.nvars())
            .map(|v| {
                let mut e = vec![0; self.nvars()];
                e[v] = 1;
                e
            })
            .collect();
        self.cyclic_monomial(&gens)
    }

    /// Minimal generators of a module: lifts of a basis of M / mM.
    pub fn min_gens(&self, m: &Module) -> Vec<Vec<Qn>> {
        let span: Vec<Vec<Qn>> = m.act.iter().flat_map(|x| (0..x.c).map(move |j| x.col(j))).collect();
        let s = Sub::new(m.dim, &span);
        s.free(m.dim)
            .into_iter()
            .map(|f| {
                let mut e = vec![Qn::zero(); m.dim];
                e[f] = Qn::one();
                e
            })
            .collect()
    }

    /// Minimal free resolution to `steps` maps. Entry i is d_{i+1} as a
    /// g_i × g_{i+1} matrix of algebra elements; also returns the ranks.
    pub fn resolve(&self, m: &Module, steps: usize) -> (Vec<usize>, Vec<Vec<Vec<Vec<Qn>>>>) {
        let (b, d, _) = self.resolve_full(m, steps);
        (b, d)
    }

    /// Ω^i M for i = 0..=steps.
    pub fn syzygies(&self, m: &Module, steps: usize) -> Vec<Module> {
        self.resolve_full(m, steps).2
    }

    pub fn resolve_full(&self, m: &Module, steps: usize) -> (Vec<usize>, Vec<Vec<Vec<Vec<Qn>>>>, Vec<Module>) {
        let n = self.dim();
        let mut syz = Vec::new();
        let mut betti = Vec::new();
        let mut maps = Vec::new();
        let mut cur = m.clone();
        let mut embed: Option<(Mat, usize)> = None;
        for step in 0..=steps {
            syz.push(cur.clone());
            let gens = self.min_gens(&cur);
            let g = gens.len();
            betti.push(g);
            if let Some((e, gp)) = &embed {
                // Generators of the kernel, read as g_prev-tuples of algebra elements.
                let d: Vec<Vec<Vec<Qn>>> = (0..*gp)
                    .map(|r| {
                        gens.iter()
                            .map(|v| {
                                let w = e.apply(v);
                                w[r * n..(r + 1) * n].to_vec()
                            })
                            .collect()
                    })
                    .collect();
                maps.push(d);
            }
            if step == steps || g == 0 {
                break;
            }
            let mono = self.monomial_actions(&cur.act, cur.dim);
            let cols: Vec<Vec<Qn>> = (0..g).flat_map(|j| mono.iter().map(|a| a.apply(&gens[j])).collect::<Vec<_>>()).collect();
            let pi = Mat::from_cols(cur.dim, &cols);
            let (ker, fc) = kernel_free(&pi);
            let f = self.free(g);
            let kb = Mat::from_cols(n * g, &ker);
            let act = f
                .act
                .iter()
                .map(|x| {
                    let cols: Vec<Vec<Qn>> = ker
                        .iter()
                        .map(|v| {
                            let w = x.apply(v);
                            fc.iter().map(|&c| w[c].clone()).collect()
                        })
                        .collect();
                    Mat::from_cols(ker.len(), &cols)
                })
                .collect();
            cur = Module { dim: ker.len(), act };
            embed = Some((kb, g));
        }
        (betti, maps, syz)
    }

    /// d ⊗ N, for d a g_{i-1} × g_i matrix over A.
    fn tensor_map(&self, d: &[Vec<Vec<Qn>>], gi: usize, nm: &Module, mono: &[Mat]) -> Mat {
        let dn = nm.dim;
        let gp = d.len();
        let mut m = Mat::zero(gp * dn, gi * dn);
        for r in 0..gp {
            for c in 0..gi {
                let b = self.element_action(&d[r][c], mono, dn);
                for i in 0..dn {
                    for j in 0..dn {
                        m.set(r * dn + i, c * dn + j, b.at(i, j).clone());
                    }
                }
            }
        }
        m
    }

    /// Hom(d, N): N^{g_{i-1}} → N^{g_i}.
    fn hom_map(&self, d: &[Vec<Vec<Qn>>], gi: usize, nm: &Module, mono: &[Mat]) -> Mat {
        let dn = nm.dim;
        let gp = d.len();
        let mut m = Mat::zero(gi * dn, gp * dn);
        for r in 0..gp {
            for c in 0..gi {
                let b = self.element_action(&d[r][c], mono, dn);
                for i in 0..dn {
                    for j in 0..dn {
                        m.set(c * dn + i, r * dn + j, b.at(i, j).clone());
                    }
                }
            }
        }
        m
    }

    /// dim Tor_i(M,N) for i = 0..=top.
    pub fn tor_dims(&self, m: &Module, nm: &Module, top: usize) -> Vec<usize> {
        let (betti, maps) = self.resolve(m, top + 1);
        self.tor_from(&betti, &maps, nm, top)
    }

    /// Tor from a resolution computed to at least `top + 1` steps.
    pub fn tor_from(&self, betti: &[usize], maps: &[Vec<Vec<Vec<Qn>>>], nm: &Module, top: usize) -> Vec<usize> {
        let mono = self.monomial_actions(&nm.act, nm.dim);
        let b = |i: usize| betti.get(i).copied().unwrap_or(0);
        let rk = |i: usize| -> usize {
            // rank of d_i ⊗ N, d_i : F_i → F_{i-1}
            if i == 0 || i > maps.len() {
                0
            } else {
                rank(&self.tensor_map(&maps[i - 1], b(i), nm, &mono))
            }
        };
        (0..=top).map(|i| b(i) * nm.dim - rk(i) - rk(i + 1)).collect()
    }

    pub fn ext_dims(&self, m: &Module, nm: &Module, top: usize) -> Vec<usize> {
        let (betti, maps) = self.resolve(m, top + 1);
        self.ext_from(&betti, &maps, nm, top)
    }

    pub fn ext_from(&self, betti: &[usize], maps: &[Vec<Vec<Vec<Qn>>>], nm: &Module, top: usize) -> Vec<usize> {
        let mono = self.monomial_actions(&nm.act, nm.dim);
        let b = |i: usize| betti.get(i).copied().unwrap_or(0);
        let rk = |i: usize| -> usize {
            if i == 0 || i > maps.len() {
                0
            } else {
                rank(&self.hom_map(&maps[i - 1], b(i), nm, &mono))
            }
        };
        (0..=top).map(|i| b(i) * nm.dim - rk(i + 1) - rk(i)).collect()
    }

    /// Homomorphisms M → N as the null space of f X_v = Y_v f, vectorised
    /// row-major (f is dim N × dim M).
    pub fn hom(&self, m: &Module, nm: &Module) -> Vec<Vec<Qn>> {
        let (dm, dn) = (m.dim, nm.dim);
        let mut rows = Vec::new();
        for v in 0..self.nvars() {
            // (Y f − f X)_{ij} = Σ_k Y_ik f_kj − Σ_k f_ik X_kj
            for i in 0..dn {
                for j in 0..dm {
                    let mut row = vec![Qn::zero(); dn * dm];
                    for k in 0..dn {
                        row[k * dm + j] += nm.act[v].at(i, k);
                    }
                    for k in 0..dm {
                        row[i * dm + k] -= m.act[v].at(k, j);
                    }
                    rows.push(row);
                }
            }
        }
        let mut a = Mat::zero(rows.len(), dn * dm);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                a.set(i, j, x);
            }
        }
        kernel(&a)
    }

    /// dim of Hom(M,N) modulo maps factoring through a free module.
    pub fn stable_hom_dim(&self, m: &Module, nm: &Module) -> usize {
        let g = self.min_gens(nm).len();
        let through = self.hom(m, &self.free(g));
        self.stable_hom_with(m, nm, &through)
    }

    /// As `stable_hom_dim`, given Hom(M, A^g) for g = μ(N).
    pub fn stable_hom_with(&self, m: &Module, nm: &Module, through: &[Vec<Qn>]) -> usize {
        let hom = self.hom(m, nm);
        let gens = self.min_gens(nm);
        let g = gens.len();
        if g == 0 {
            return 0;
        }
        let f = self.free(g);
        let mono = self.monomial_actions(&nm.act, nm.dim);
        let cols: Vec<Vec<Qn>> = (0..g).flat_map(|j| mono.iter().map(|a| a.apply(&gens[j])).collect::<Vec<_>>()).collect();
        let pi = Mat::from_cols(nm.dim, &cols);
        let dm = m.dim;
        let images: Vec<Vec<Qn>> = through
            .iter()
            .map(|h| {
                let hm = Mat { r: f.dim, c: dm, a: h.clone() };
                pi.mul(&hm).a
            })
            .collect();
        let sub = if images.is_empty() { 0 } else { rank(&Mat::from_cols(nm.dim * dm, &images)) };
        hom.len() - sub
    }
}

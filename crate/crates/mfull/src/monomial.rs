//! Exponent vectors under a block-weighted degree reverse lexicographic order.

use std::cmp::Ordering;

pub const MAX_VARS: usize = 8;

/// A monomial with cached weighted degree `deg` and block degree `bdeg`.
///
/// `bdeg` is the weighted degree in the leading block of variables (used for
/// elimination); it is zero when no block is declared.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub e: [u16; MAX_VARS],
    pub deg: i32,
    pub bdeg: i32,
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.bdeg
            .cmp(&o.bdeg)
            .then(self.deg.cmp(&o.deg))
            .then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if self.e[i] != o.e[i] {
                        return o.e[i].cmp(&self.e[i]);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mono {
    pub const ONE: Mono = Mono { e: [0; MAX_VARS], deg: 0, bdeg: 0 };

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a += *b;
        }
        Mono { e, deg: self.deg + o.deg, bdeg: self.bdeg + o.bdeg }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        Mono { e, deg: self.deg - o.deg, bdeg: self.bdeg - o.bdeg }
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit mask with bits for exponent thresholds 1, 2, 4, 8 per variable.
    pub fn mask(&self) -> u32 {
        let mut m = 0u32;
        for (i, &x) in self.e.iter().enumerate() {
            let mut t = 0u32;
            if x >= 1 {
                t |= 1;
            }
            if x >= 2 {
                t |= 2;
            }
            if x >= 4 {
                t |= 4;
            }
            if x >= 8 {
                t |= 8;
            }
            m |= t << (4 * i);
        }
        m
    }
}

/// Variable weights plus the size of the elimination block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoCtx {
    pub weights: Vec<i32>,
    pub block: usize,
}

impl MonoCtx {
    pub fn new(weights: Vec<i32>, block: usize) -> MonoCtx {
        assert!(weights.len() <= MAX_VARS);
        MonoCtx { weights, block }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn make(&self, e: [u16; MAX_VARS]) -> Mono {
        let mut deg = 0;
        let mut bdeg = 0;
        for (i, w) in self.weights.iter().enumerate() {
            deg += e[i] as i32 * w;
            if i < self.block {
                bdeg += e[i] as i32 * w;
            }
        }
        Mono { e, deg, bdeg }
    }

    pub fn from_slice(&self, exps: &[u16]) -> Mono {
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        self.make(e)
    }

    pub fn var(&self, i: usize) -> Mono {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        self.make(e)
    }

    pub fn var_pow(&self, i: usize, k: u16) -> Mono {
        let mut e = [0u16; MAX_VARS];
        e[i] = k;
        self.make(e)
    }

    pub fn lcm(&self, a: &Mono, b: &Mono) -> Mono {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = a.e[i].max(b.e[i]);
        }
        self.make(e)
    }

    /// All monomials of weighted degree exactly `d`, in descending order.
    pub fn monomials_of_degree(&self, d: i32) -> Vec<Mono> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let n = self.nvars();
        let mut e = [0u16; MAX_VARS];
        fn rec(ctx: &MonoCtx, i: usize, n: usize, left: i32, e: &mut [u16; MAX_VARS], out: &mut Vec<Mono>) {
            if i + 1 == n {
                let w = ctx.weights[i];
                if left % w == 0 {
                    e[i] = (left / w) as u16;
                    out.push(ctx.make(*e));
                    e[i] = 0;
                }
                return;
            }
            let w = ctx.weights[i];
            let mut k = 0;
            while k * w <= left {
                e[i] = k as u16;
                rec(ctx, i + 1, n, left - k * w, e, out);
                k += 1;
            }
            e[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(self, 0, n, d, &mut e, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

//! Artinian test algebras shared by the oracle test and the acceptance run.

#![allow(dead_code)]

use crate::support::{Alg, Module};
use mfull::field::Q;
use mfull::fpmodule::{FPModule, ModRef};
use mfull::homalg::{ext, stable_hom, tor, Detail};
use mfull::monomial::MonoCtx;
use mfull::parse::parse_poly;
use mfull::ring::{Ring, RingRef};
use std::collections::HashMap;

pub const TOP: usize = 4;

pub struct Case {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub rels: &'static [&'static str],
    pub alg: Alg,
    /// Cyclic modules as monomial generators, in both worlds.
    pub mods: Vec<(&'static str, Vec<Vec<u32>>)>,
}

pub fn engine_ring(c: &Case) -> RingRef<Q> {
    let names: Vec<String> = c.vars.iter().map(|s| s.to_string()).collect();
    let w = vec![1; names.len()];
    let ctx = MonoCtx::new(w.clone(), 0);
    let rels = c.rels.iter().map(|r| parse_poly(&Q, &names, &ctx, r).unwrap()).collect();
    Ring::new(Q, names, w, rels).unwrap()
}

pub fn engine_module(r: &RingRef<Q>, gens: &str) -> ModRef<Q> {
    if gens == "k" {
        return FPModule::residue_field(r.clone());
    }
    let g: Vec<_> = gens.split(',').map(|s| r.nf(&parse_poly(&Q, &r.names, &r.ctx, s.trim()).unwrap())).collect();
    FPModule::cyclic(r.clone(), &g).unwrap()
}

pub fn oracle_module(a: &Alg, label: &str, gens: &[Vec<u32>]) -> Module {
    if label == "k" {
        a.residue()
    } else {
        a.cyclic_monomial(gens)
    }
}

pub fn cases() -> Vec<Case> {
    let e = |v: &[u32]| v.to_vec();
    vec![
        Case {
            name: "k[x,y]/(x^2,y^2)",
            vars: &["x", "y"],
            rels: &["x^2", "y^2"],
            alg: Alg::monomial(2, &[e(&[2, 0]), e(&[0, 2])], 4),
            mods: vec![("k", vec![]), ("x", vec![e(&[1, 0])]), ("x*y", vec![e(&[1, 1])])],
        },
        Case {
            name: "k[x,y]/(x^3,x*y,y^2)",
            vars: &["x", "y"],
            rels: &["x^3", "x*y", "y^2"],
            alg: Alg::monomial(2, &[e(&[3, 0]), e(&[1, 1]), e(&[0, 2])], 4),
            mods: vec![("k", vec![]), ("y", vec![e(&[0, 1])]), ("x^2", vec![e(&[2, 0])])],
        },
        Case {
            name: "k[x,y,z]/(x^2,y^2,z^2)",
            vars: &["x", "y", "z"],
            rels: &["x^2", "y^2", "z^2"],
            alg: Alg::monomial(3, &[e(&[2, 0, 0]), e(&[0, 2, 0]), e(&[0, 0, 2])], 4),
            mods: vec![("k", vec![]), ("x, y*z", vec![e(&[1, 0, 0]), e(&[0, 1, 1])])],
        },
        Case {
            name: "k[x,y]/(x^2,y^3)",
            vars: &["x", "y"],
            rels: &["x^2", "y^3"],
            alg: Alg::monomial(2, &[e(&[2, 0]), e(&[0, 3])], 4),
            mods: vec![("k", vec![]), ("y", vec![e(&[0, 1])]), ("x*y", vec![e(&[1, 1])])],
        },
        Case {
            name: "k[x,y]/(x^2-y^2,x*y)",
            vars: &["x", "y"],
            rels: &["x^2 - y^2", "x*y"],
            // basis 1, x, y, x^2 with y^2 = x^2
            alg: Alg::explicit(
                vec![e(&[0, 0]), e(&[1, 0]), e(&[0, 1]), e(&[2, 0])],
                vec![
                    vec![vec![0, 1, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
                    vec![vec![0, 0, 1, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]],
                ],
            ),
            mods: vec![("k", vec![]), ("x", vec![e(&[1, 0])]), ("y", vec![e(&[0, 1])])],
        },
        Case {
            name: "k[x,y]/(x^3,y^4)",
            vars: &["x", "y"],
            rels: &["x^3", "y^4"],
            alg: Alg::monomial(2, &[e(&[3, 0]), e(&[0, 4])], 5),
            mods: vec![("k", vec![]), ("x", vec![e(&[1, 0])]), ("x, y^2", vec![e(&[1, 0]), e(&[0, 2])])],
        },
    ]
}

/// Compares Tor_i, Ext^i and stable Hom(Ω^i M, N) for i ≤ TOP over all
/// pairs of the case's modules. Returns the number of values compared, or
/// the first mismatch.
pub fn compare(c: &Case) -> Result<usize, String> {
    if c.alg.dim() > 40 {
        return Err(format!("{} has dimension {}", c.name, c.alg.dim()));
    }
    let r = engine_ring(c);
    let total: usize = r.hilbert_function(12).iter().sum();
    if total != c.alg.dim() {
        return Err(format!("{}: engine length {total}, oracle {}", c.name, c.alg.dim()));
    }
    let omods: Vec<Module> = c.mods.iter().map(|(l, g)| oracle_module(&c.alg, l, g)).collect();
    let emods: Vec<ModRef<Q>> = c.mods.iter().map(|(l, _)| engine_module(&r, l)).collect();
    let gens: Vec<usize> = omods.iter().map(|m| c.alg.min_gens(m).len()).collect();
    let mut n = 0;
    let check = |got: Option<usize>, want: usize, what: String| if got == Some(want) { Ok(()) } else { Err(format!("{}: {what}: engine {got:?}, oracle {want}", c.name)) };
    for (a, (lm, _)) in c.mods.iter().enumerate() {
        let (betti, maps, osyz) = c.alg.resolve_full(&omods[a], TOP + 1);
        let esyz: Vec<_> = (0..=TOP).map(|i| emods[a].syzygy(i).unwrap()).collect();
        let mut through: HashMap<(usize, usize), Vec<_>> = HashMap::new();
        for (b, (ln, _)) in c.mods.iter().enumerate() {
            let (em, en, on) = (&emods[a], &emods[b], &omods[b]);
            let ot = c.alg.tor_from(&betti, &maps, on, TOP);
            let oe = c.alg.ext_from(&betti, &maps, on, TOP);
            for i in 0..=TOP {
                let t = tor(em, en, i, Detail::Full).map_err(|e| e.to_string())?.k_dimension;
                check(t, ot[i], format!("Tor_{i}(R/({lm}), R/({ln}))"))?;
                let x = ext(em, en, i, Detail::Full).map_err(|e| e.to_string())?.k_dimension;
                check(x, oe[i], format!("Ext^{i}(R/({lm}), R/({ln}))"))?;
                let s = stable_hom(&esyz[i], en, Detail::Full).map_err(|e| e.to_string())?.k_dimension;
                let th = through.entry((i, gens[b])).or_insert_with(|| c.alg.hom(&osyz[i], &c.alg.free(gens[b])));
                let want = c.alg.stable_hom_with(&osyz[i], on, th);
                check(s, want, format!("stable Hom(Ω^{i} R/({lm}), R/({ln}))"))?;
                n += 3;
            }
        }
    }
    Ok(n)
}

mod common;

use common::*;
use mfull::field::Q;
use mfull::idealkit::*;
use mfull::ring::{Elt, RingRef};

fn ideal(r: &RingRef<Q>, g: &[&str]) -> Ideal<Q> {
    Ideal::new(r.clone(), &els(r, g)).unwrap()
}

fn mono_ideal(s: &mfull::semigroup::SemigroupRing<Q>, d: &[u32]) -> Ideal<Q> {
    Ideal::new(s.ring.clone(), &t(s, d)).unwrap()
}

/// dim of (I)_d for d ≤ top, by dense rank.
fn dims(i: &Ideal<Q>, top: i32) -> Vec<usize> {
    (0..=top).map(|d| span_dim(&i.ring, &[0], &i.gens, d)).collect()
}

#[test]
fn colon_examples() {
    let s = sg(&[4, 5, 6]);
    let i = mono_ideal(&s, &[4, 11]);
    assert!(colon(&i, &Ideal::unit(s.ring.clone())).unwrap().equals(&i));
    assert!(!colon_maximal(&i).unwrap().equals(&i));
}

#[test]
fn colon_of_zero_by_m_is_the_socle() {
    for (vars, rels) in [
        (&["x", "y"][..], &["x^2", "x*y", "y^2"][..]),
        (&["x", "y"], &["x^2", "y^3"]),
        (&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y*z"]),
        (&["x", "y"], &["x^2 - y^2", "x*y"]),
    ] {
        let r = ring(vars, &vec![1; vars.len()], rels);
        let zero = Ideal::new(r.clone(), &[]).unwrap();
        let m = Ideal::maximal(r.clone());
        let c = colon(&zero, &m).unwrap();
        // dense: r with r·x_i = 0 for every variable
        let a = matrix(vec![-1; vars.len()], vec![0], vec![column(&r.vars())]);
        let top = r.top_degree().unwrap();
        for d in 0..=top {
            assert_eq!(span_dim(&r, &[0], &c.gens, d), dense_kernel(&r, &a, d).len(), "{rels:?} degree {d}");
        }
        let soc: usize = socle(&zero).unwrap().len();
        assert_eq!(soc, dims(&c, top).iter().sum::<usize>());
    }
}

#[test]
fn socle_examples() {
    let p = ring(&["x", "y"], &[1, 1], &[]);
    let m = Ideal::maximal(p.clone());
    assert_eq!(socle(&m).unwrap().len(), 1);
    let m2 = product(&m, &m).unwrap();
    let soc = socle(&m2).unwrap();
    assert_eq!(soc.len(), 2);
    assert!(soc.iter().all(|(d, _)| *d == 1));
    // a dense degree-1 kernel over R/m^2: both variables
    let q = p.quotient(&m2.gens).unwrap();
    let a = matrix(vec![-1, -1], vec![0], vec![column(&q.vars())]);
    assert_eq!(dense_kernel(&q, &a, 1).len(), 2);
    assert!(socle(&ideal(&p, &["x"])).is_err());
}

#[test]
fn socle_of_r_mod_mi_certifies_the_colon() {
    let s = sg(&[5, 6, 8, 9]);
    let r = s.ring.clone();
    let i = mono_ideal(&s, &[5, 8, 9]);
    let mi = product(&Ideal::maximal(r.clone()), &i).unwrap();
    let soc = socle(&mi).unwrap();
    let outside: Vec<&(i32, Elt<Q>)> = soc.iter().filter(|(_, e)| !i.contains(e)).collect();
    assert!(!outside.is_empty());
    for (_, e) in outside {
        for v in r.vars() {
            assert!(mi.contains(&r.mul(e, &v)));
        }
        assert!(colon_maximal(&mi).unwrap().contains(e));
    }
    assert!(!colon_maximal(&mi).unwrap().equals(&i));
}

#[test]
fn weakly_mfull_examples() {
    let s = sg(&[4, 5, 6]);
    assert!(is_weakly_mfull(&mono_ideal(&s, &[4, 11])).unwrap());
    let s = sg(&[5, 6, 8, 9]);
    assert!(!is_weakly_mfull(&mono_ideal(&s, &[5, 8, 9])).unwrap());
    assert!(is_weakly_mfull(&Ideal::maximal(s.ring.clone())).unwrap());
    assert!(is_weakly_mfull(&Ideal::unit(s.ring.clone())).is_err());
}

#[test]
fn mfull_examples() {
    let s = sg_extra(&[3, 4, 5], &[("u", 1)]);
    let v = is_mfull(&mono_ideal(&s, &[3, 4]), 16, 1, true).unwrap();
    match v {
        MfullVerdict::True { witness } => assert_eq!(witness, "u"),
        other => panic!("{other:?}"),
    }
    let s = sg(&[4, 5, 6]);
    let v = is_mfull(&mono_ideal(&s, &[4, 11]), 16, 1, true).unwrap();
    assert!(matches!(v, MfullVerdict::FalseOnCandidates { .. }), "{v:?}");
    let r = ring(&["x", "y", "z"], &[1, 1, 1], &["x*y - z^2"]);
    assert!(is_mfull(&ideal(&r, &["x"]), 16, 1, false).unwrap().is_true());
}

#[test]
fn burch_examples() {
    let s = sg(&[4, 5, 6]);
    assert!(burch_condition(&mono_ideal(&s, &[4, 11])).unwrap());
    let r = ring(&["x", "y", "z"], &[1, 1, 1], &["x*y - z^2"]);
    let i = ideal(&r, &["x"]);
    assert!(colon_maximal(&i).unwrap().equals(&i));
    assert!(!burch_condition(&i).unwrap());
    // the direct computation, compared degreewise against dense spans
    let s = sg(&[5, 6, 8, 9]);
    for d in [&[5, 8, 9][..], &[5, 6], &[6, 8, 9], &[5]] {
        let i = mono_ideal(&s, d);
        let m = Ideal::maximal(s.ring.clone());
        let lhs = product(&m, &colon_maximal(&i).unwrap()).unwrap();
        let rhs = product(&m, &i).unwrap();
        let differ = dims(&lhs, 24) != dims(&rhs, 24);
        assert_eq!(burch_condition(&i).unwrap(), differ, "{d:?}");
    }
}

#[test]
fn depth_zero_examples() {
    let s = sg(&[4, 5, 6]);
    assert!(depth_zero(&mono_ideal(&s, &[4, 11])).unwrap());
    let r = ring(&["x", "y", "z"], &[1, 1, 1], &["x*y - z^2"]);
    assert!(!depth_zero(&ideal(&r, &["x"])).unwrap());
    for r in [r, s.ring.clone(), ring(&["x", "y"], &[1, 1], &[])] {
        assert!(depth_zero(&Ideal::maximal(r)).unwrap());
    }
}

#[test]
fn integral_witnesses() {
    let s = sg_extra(&[3, 4, 5], &[("u", 1)]);
    let r = &s.ring;
    let i = mono_ideal(&s, &[3, 4]);
    let t5 = s.element(5).unwrap();
    let a2 = r.sub(&r.scalar(0), &r.mul(&r.pow(&s.element(3).unwrap(), 2), &s.element(4).unwrap()));
    let w = integral_witness_check(&i, &t5, &[r.scalar(0), a2]).unwrap();
    assert!(w.valid && !w.r_in_ideal, "{w:?}");
    let s = sg(&[5, 6, 8, 9]);
    let r = &s.ring;
    let i = mono_ideal(&s, &[5, 8, 9]);
    let t6 = s.element(6).unwrap();
    let a3 = r.sub(&r.scalar(0), &r.mul(&r.pow(&s.element(5).unwrap(), 2), &s.element(8).unwrap()));
    let w = integral_witness_check(&i, &t6, &[r.scalar(0), r.scalar(0), a3]).unwrap();
    assert!(w.valid && !w.r_in_ideal, "{w:?}");
    // r ∈ I with a_1 = -r
    let t8 = s.element(8).unwrap();
    let w = integral_witness_check(&i, &t8, &[r.sub(&r.scalar(0), &t8)]).unwrap();
    assert!(w.valid && w.r_in_ideal);
    assert!(integral_witness_check(&i, &t8, &[]).is_err());
}

#[test]
fn ideal_powers() {
    let s = sg(&[4, 5, 6]);
    let i = mono_ideal(&s, &[4, 5]);
    let i3 = ideal_power(&i, 3).unwrap();
    let direct = product(&product(&i, &i).unwrap(), &i).unwrap();
    assert!(i3.equals(&direct));
    for d in [12, 13, 14, 15] {
        assert!(i3.contains(&s.element(d).unwrap()));
    }
    assert!(!i3.contains(&s.element(11).unwrap()));
}

#[test]
fn enumeration() {
    let s = sg(&[4, 5, 6]);
    let all = enumerate_monomial_ideals(&s.ring, 12, 2).unwrap();
    let target = mono_ideal(&s, &[4, 11]);
    assert_eq!(all.iter().filter(|i| i.equals(&target)).count(), 1);
    let t4 = mono_ideal(&s, &[4]);
    assert!(mono_ideal(&s, &[4, 8]).equals(&t4));
    assert_eq!(all.iter().filter(|i| i.equals(&t4)).count(), 1);
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            assert!(!all[a].equals(&all[b]));
        }
    }
    // deterministic
    let again = enumerate_monomial_ideals(&s.ring, 12, 2).unwrap();
    assert_eq!(all.iter().map(|i| i.render()).collect::<Vec<_>>(), again.iter().map(|i| i.render()).collect::<Vec<_>>());
    // only t^4 has degree ≤ 4
    let tiny = enumerate_monomial_ideals(&s.ring, 4, 2).unwrap();
    assert_eq!(tiny.len(), 1);
    assert!(tiny[0].equals(&t4));
}

fn suite_ideals() -> Vec<Ideal<Q>> {
    let mut out = Vec::new();
    for g in [&[4, 5, 6][..], &[3, 4, 5], &[5, 6, 8, 9]] {
        let s = sg(g);
        out.extend(enumerate_monomial_ideals(&s.ring, 11, 2).unwrap());
    }
    let h = ring(&["x", "y", "z"], &[1, 1, 1], &["x*z - y^2"]);
    out.extend(enumerate_monomial_ideals(&h, 2, 2).unwrap());
    out.into_iter().filter(|i| i.is_proper_nonzero()).collect()
}

#[test]
fn predicate_implications() {
    let ideals = suite_ideals();
    assert!(ideals.len() > 40);
    let (mut wmf_d0, mut mfull) = (0, 0);
    for i in &ideals {
        let wmf = is_weakly_mfull(i).unwrap();
        let d0 = depth_zero(i).unwrap();
        if !d0 {
            assert!(wmf, "{}", i.render());
        }
        if wmf && d0 {
            wmf_d0 += 1;
            assert!(burch_condition(i).unwrap(), "{}", i.render());
        }
        if is_mfull(i, 4, 1, true).unwrap().is_true() {
            mfull += 1;
            assert!(wmf, "{}", i.render());
        }
    }
    assert!(wmf_d0 > 0 && mfull > 0);
}

#[test]
fn colon_is_monotone() {
    let s = sg(&[4, 5, 6]);
    let ideals = enumerate_monomial_ideals(&s.ring, 10, 2).unwrap();
    for i in ideals.iter().step_by(3) {
        for j in ideals.iter().step_by(5) {
            let c = colon(i, j).unwrap();
            assert!(c.contains_ideal(i));
            for g in &c.gens {
                for h in &j.gens {
                    assert!(i.contains(&s.ring.mul(g, h)));
                }
            }
        }
    }
}

#[test]
fn primes_are_weakly_mfull() {
    let r = ring(&["x", "y"], &[1, 1], &["x*y"]);
    assert!(is_weakly_mfull(&ideal(&r, &["x"])).unwrap());
    assert!(is_weakly_mfull(&ideal(&r, &["y"])).unwrap());
    let s = sg_extra(&[4, 5, 6], &[("u", 1)]);
    let u = Ideal::new(s.ring.clone(), &els(&s.ring, &["u"])).unwrap();
    assert!(is_weakly_mfull(&u).unwrap());
    let h = ring(&["x", "y", "z"], &[1, 1, 1], &["x*z - y^2"]);
    assert!(is_weakly_mfull(&ideal(&h, &["x", "y"])).unwrap());
}

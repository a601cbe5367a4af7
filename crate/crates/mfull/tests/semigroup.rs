mod common;

use common::*;
use mfull::field::{Field, Q};
use mfull::groebner::gb;
use mfull::monomial::Mono;
use mfull::ring::{Elt, RingRef};
use mfull::semigroup::{build_ring, cm_type, NumericalSemigroup};
use mfull::vector::{Term, Vector};

fn mono(m: Mono) -> Elt<Q> {
    Vector::from_terms(&Q, vec![Term { pos: 0, m, c: Q.one() }])
}

fn t_degree(gens: &[u32], m: &Mono) -> u32 {
    (0..gens.len()).map(|i| m.e[i] as u32 * gens[i]).sum()
}

/// Every binomial x^u - x^v with equal t-degree at most `top` vanishes in the
/// built ring, and each relation of the built ring lies in the ideal spanned
/// by those binomials (it is one of them, once checked to have zero image).
fn lattice_kernel_check(gens: &[u32], top: u32) -> usize {
    let s = sg(gens);
    let r = &s.ring;
    let mut count = 0;
    for d in 0..=top as i32 {
        let ms = brute_monomials(&r.ctx, d);
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                assert_eq!(t_degree(gens, a), t_degree(gens, b));
                assert_eq!(r.nf(&mono(*a)), r.nf(&mono(*b)), "{:?} vs {:?}", a.e, b.e);
                count += 1;
            }
        }
    }
    for g in &r.rels {
        assert!(t_image(gens, g).is_empty(), "relation {}", r.render(g));
        assert!(g.terms.len() == 2, "not a binomial: {}", r.render(g));
    }
    count
}

/// The built relations and a stated list generate the same ideal.
fn same_ideal(r: &RingRef<Q>, stated: &[&str]) {
    let names: Vec<&str> = r.names.iter().map(|s| s.as_str()).collect();
    let free = ring(&names, r.weights(), &[]);
    let want = els(&free, stated);
    let g = gb(free.base(), &[0], &want).unwrap();
    for rel in &r.rels {
        assert!(g.member(free.base(), rel), "{}", r.render(rel));
    }
    for w in &want {
        assert!(r.nf(w).is_zero(), "{}", free.render(w));
    }
}

#[test]
fn toric_relations() {
    let s = sg(&[4, 5, 6]);
    same_ideal(&s.ring, &["y^2 - x*z", "x^3 - z^2"]);
    let s = sg(&[3, 4, 5]);
    same_ideal(&s.ring, &["y^2 - x*z", "z^2 - x^2*y", "x^3 - y*z"]);
    let s = sg(&[2, 3]);
    same_ideal(&s.ring, &["y^2 - x^3"]);
}

#[test]
fn relations_match_the_lattice_kernel() {
    for g in [&[4u32, 5, 6][..], &[3, 4, 5], &[2, 3]] {
        assert!(lattice_kernel_check(g, 30) > 50);
    }
}

#[test]
fn element_examples() {
    let s = sg(&[4, 5, 6]);
    let r = &s.ring;
    assert_eq!(s.element(8).unwrap(), el(r, "x^2"));
    assert!(s.element(7).is_none());
    assert_eq!(s.element(11).unwrap(), el(r, "y*z"));
    assert_eq!(s.element(0).unwrap(), r.one());
    for d in 0..=40 {
        match s.element(d) {
            Some(e) => {
                let img = t_image(&[4, 5, 6], &e);
                assert_eq!(img.keys().copied().collect::<Vec<_>>(), vec![d]);
            }
            None => assert!(!s.semigroup.contains(d)),
        }
    }
}

#[test]
fn membership_table_matches_dynamic_programming() {
    for g in [&[4u32, 5, 6][..], &[3, 4, 5], &[5, 6, 8, 9], &[2, 3], &[7, 11, 13]] {
        let s = NumericalSemigroup::new(g).unwrap();
        let mut dp = vec![false; 101];
        dp[0] = true;
        for d in 1..=100usize {
            dp[d] = g.iter().any(|&a| a as usize <= d && dp[d - a as usize]);
        }
        assert_eq!(s.table(100), dp, "{g:?}");
        let gaps: Vec<u32> = (0..=100u32).filter(|&d| !dp[d as usize]).collect();
        assert_eq!(s.gaps(), gaps);
        assert_eq!(s.frobenius(), *gaps.last().unwrap() as i64);
    }
}

#[test]
fn hilbert_function_is_the_indicator() {
    for g in [&[4u32, 5, 6][..], &[3, 4, 5], &[5, 6, 8, 9], &[2, 3]] {
        let s = sg(g);
        for (d, v) in s.ring.hilbert_function(30).into_iter().enumerate() {
            assert_eq!(v, s.semigroup.contains(d as u32) as usize, "{g:?} degree {d}");
        }
    }
    // with u of weight 1 the series is the indicator convolved with 1/(1-t)
    let s = sg_extra(&[3, 4, 5], &[("u", 1)]);
    let h = s.ring.hilbert_function(30);
    for d in 0..=30u32 {
        let want = (0..=d).filter(|&j| s.semigroup.contains(j)).count();
        assert_eq!(h[d as usize], want, "degree {d}");
    }
    let s = sg_extra(&[4, 5, 6], &[("u", 2), ("v", 3)]);
    let h = s.ring.hilbert_function(30);
    for d in 0..=30u32 {
        let free = |k: u32| (0..=k / 2).filter(|a| (k - 2 * a) % 3 == 0).count();
        let want: usize = (0..=d).filter(|&j| s.semigroup.contains(j)).map(|j| free(d - j)).sum();
        assert_eq!(h[d as usize], want, "degree {d}");
    }
}

#[test]
fn toric_ideal_contains_no_monomials() {
    for s in [sg(&[4, 5, 6]), sg(&[5, 6, 8, 9]), sg_extra(&[3, 4, 5], &[("u", 1)])] {
        let r = &s.ring;
        for d in 0..=20 {
            for m in brute_monomials(&r.ctx, d) {
                assert!(!r.nf(&mono(m)).is_zero(), "{:?}", m.e);
            }
        }
    }
}

#[test]
fn cohen_macaulay_type() {
    assert_eq!(cm_type(&sg(&[4, 5, 6]).ring).unwrap(), Some(1));
    assert_eq!(cm_type(&sg(&[2, 3]).ring).unwrap(), Some(1));
    // (t^3, t^4) is a two-generated canonical ideal, so the type is 2
    assert_eq!(cm_type(&sg_extra(&[3, 4, 5], &[("u", 1)]).ring).unwrap(), Some(2));
    let it = cm_type(&sg(&[5, 6, 8, 9]).ring).unwrap().unwrap();
    assert!(it >= 2);
    // pseudo-Frobenius count
    for g in [&[4u32, 5, 6][..], &[3, 4, 5], &[5, 6, 8, 9], &[7, 11, 13]] {
        let s = NumericalSemigroup::new(g).unwrap();
        let pf = s.gaps().into_iter().filter(|x| g.iter().all(|a| s.contains(x + a))).count();
        assert_eq!(cm_type(&sg(g).ring).unwrap(), Some(pf), "{g:?}");
    }
}

#[test]
fn non_minimal_generators_are_rejected() {
    let s = NumericalSemigroup::new(&[3, 5, 6]).unwrap();
    let err = build_ring(&s, &[], Q, None).unwrap_err();
    assert!(format!("{err}").contains('6'), "{err}");
    assert!(NumericalSemigroup::new(&[4, 6]).is_err());
}

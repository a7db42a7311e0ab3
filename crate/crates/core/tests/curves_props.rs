//! Cross-ratio identities, the Knudsen round trip over an exhaustive tree
//! enumeration, and the cross-ratio oracle for stable limits: every
//! four-element subset of the markings must degenerate exactly the way the
//! limit tree separates it.

use std::collections::BTreeSet;

use degenerata_core::arith::{Field, FieldSpec, K};
use degenerata_core::curves0::*;
use degenerata_core::valued::{Elem, Place, RatFun};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::test_seed;

fn qk(n: i64) -> K {
    FieldSpec::Q.from_i64(n)
}

fn qpt(n: i64) -> ProjPoint<K> {
    ProjPoint::affine(qk(n))
}

#[test]
fn cross_ratio_fixes_the_standard_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0xc40a));
    let zero = qpt(0);
    let one = qpt(1);
    let inf = ProjPoint::infinity(&qk(0));
    for _ in 0..1000 {
        let z = qk(rng.gen_range(-1000i64..=1000));
        let l = cross_ratio(&zero, &one, &inf, &ProjPoint::affine(z.clone())).unwrap();
        assert_eq!(l, ProjPoint::affine(z));
    }
}

#[test]
fn cross_ratio_is_moebius_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x30b1));
    let mut done = 0;
    while done < 500 {
        // four distinct points and an invertible matrix
        let mut vals = BTreeSet::new();
        while vals.len() < 4 {
            vals.insert(rng.gen_range(-20i64..=20));
        }
        let pts: Vec<ProjPoint<K>> = vals.iter().map(|&v| qpt(v)).collect();
        let (a, b, c, d) = (
            rng.gen_range(-5i64..=5),
            rng.gen_range(-5i64..=5),
            rng.gen_range(-5i64..=5),
            rng.gen_range(-5i64..=5),
        );
        if a * d - b * c == 0 {
            continue;
        }
        let transform = |p: &ProjPoint<K>| -> ProjPoint<K> {
            let (x, y) = (p.numerator(), p.denominator());
            ProjPoint::new(
                qk(a).mul(x).add(&qk(b).mul(y)),
                qk(c).mul(x).add(&qk(d).mul(y)),
            )
            .unwrap()
        };
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let after = cross_ratio(
            &transform(&pts[0]),
            &transform(&pts[1]),
            &transform(&pts[2]),
            &transform(&pts[3]),
        )
        .unwrap();
        assert_eq!(before, after);
        done += 1;
    }
}

// ---- exhaustive tree enumeration and the Knudsen round trip -----------------

/// All stable trees with the given number of markings, generated by
/// stabilizing every tree with one marking fewer at every attachment point.
fn enumerate_stable_trees(n: u32) -> Vec<MarkedTree> {
    assert!(n >= 3);
    let base = MarkedTree::new(1, vec![], [(1, 0), (2, 0), (3, 0)].into(), None).unwrap();
    let mut level = vec![base];
    for _ in 3..n {
        let mut next: Vec<MarkedTree> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for t in &level {
            for attach in t.attach_points() {
                let s = t.stabilize(&attach).unwrap();
                let key = format!("{:?}{:?}", s.edges(), s.markings());
                if seen.insert(key) {
                    next.push(s);
                }
            }
        }
        level = next;
    }
    level
}

#[test]
fn tree_counts_match_the_boundary_stratification() {
    // numbers of stable labeled trees: 1, 4, 26, 236 for n = 3..6
    assert_eq!(enumerate_stable_trees(3).len(), 1);
    assert_eq!(enumerate_stable_trees(4).len(), 4);
    assert_eq!(enumerate_stable_trees(5).len(), 26);
    assert_eq!(enumerate_stable_trees(6).len(), 236);
}

#[test]
fn knudsen_round_trip_exhaustive_small() {
    // full check to n = 6 here; the acceptance suite pushes to n = 8
    for n in 3..=6u32 {
        for t in enumerate_stable_trees(n) {
            assert!(t.is_stable());
            for attach in t.attach_points() {
                let s = t.stabilize(&attach).unwrap();
                assert!(s.is_stable());
                let back = s.contract(n + 1).unwrap();
                assert_eq!(back, t, "attach {attach:?} on {t:?}");
            }
        }
    }
}

// ---- the stable-limit cross-ratio oracle -------------------------------------

fn residue_class(place: &Place, p: &ProjPoint<RatFun>) -> Option<K> {
    // None encodes the infinite residue
    if p.is_infinity() {
        return None;
    }
    let e = Elem::Fun(p.numerator().clone());
    match place.valuation(&e).unwrap() {
        Some(v) if v < 0 => None,
        _ => Some(place.residue(&e).unwrap()),
    }
}

/// For every four-element subset of the markings, the reduction of the
/// cross-ratio must be 0, 1, infinity, or generic exactly as the tree
/// separates the quadruple, and in the generic case the value must agree
/// with the cross-ratio of the four residue positions.
pub fn check_limit_against_cross_ratios(
    place: &Place,
    points: &[ProjPoint<RatFun>],
    tree: &MarkedTree,
) {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let lam = cross_ratio(&points[i], &points[j], &points[k], &points[l]).unwrap();
                    let res = residue_class(place, &lam);
                    let (mi, mj, mk, ml) =
                        (i as u32 + 1, j as u32 + 1, k as u32 + 1, l as u32 + 1);
                    let sep = tree.quartet_separation(mi, mj, mk, ml).unwrap();
                    match sep {
                        QuartetSeparation::WithFirst => {
                            assert_eq!(res, Some(FieldSpec::Q.zero()), "{mi},{mj},{mk};{ml}")
                        }
                        QuartetSeparation::WithSecond => {
                            assert_eq!(res, Some(FieldSpec::Q.one()), "{mi},{mj},{mk};{ml}")
                        }
                        QuartetSeparation::WithThird => {
                            assert_eq!(res, None, "{mi},{mj},{mk};{ml}")
                        }
                        QuartetSeparation::Star(center) => {
                            let pi = tree.direction_position(center, mi).unwrap();
                            let pj = tree.direction_position(center, mj).unwrap();
                            let pk = tree.direction_position(center, mk).unwrap();
                            let pl = tree.direction_position(center, ml).unwrap();
                            let expected = cross_ratio(&pi, &pj, &pk, &pl).unwrap();
                            let got = match res {
                                None => ProjPoint::infinity(&FieldSpec::Q.zero()),
                                Some(v) => ProjPoint::affine(v),
                            };
                            assert_eq!(got, expected, "{mi},{mj},{mk};{ml}");
                        }
                    }
                }
            }
        }
    }
}

fn random_configuration(rng: &mut ChaCha8Rng, n: usize) -> Vec<ProjPoint<RatFun>> {
    let f = FieldSpec::Q;
    let mut pts: Vec<ProjPoint<RatFun>> = Vec::new();
    let mut used_inf = false;
    while pts.len() < n {
        let style = rng.gen_range(0..5);
        let cand = match style {
            0 if !used_inf => ProjPoint::infinity(&RatFun::zero(f)),
            1 => {
                // constant
                ProjPoint::affine(RatFun::constant(K::Q(num::BigRational::new(
                    rng.gen_range(-6i64..=6).into(),
                    rng.gen_range(1i64..=3).into(),
                ))))
            }
            2 => {
                // c + d t^k
                let s = format!(
                    "{}+{}*t^{}",
                    rng.gen_range(-4i64..=4),
                    rng.gen_range(1i64..=3),
                    rng.gen_range(1u32..=3)
                );
                ProjPoint::affine(RatFun::parse(f, "t", &s).unwrap())
            }
            3 => {
                // pure power, possibly inverted
                let k = rng.gen_range(1u32..=3);
                let s = if rng.gen_bool(0.5) {
                    format!("t^{k}")
                } else {
                    format!("1/(t^{k})")
                };
                ProjPoint::affine(RatFun::parse(f, "t", &s).unwrap())
            }
            _ => {
                // two-term deep cluster fodder
                let s = format!(
                    "{}*t^{}+{}*t^{}",
                    rng.gen_range(1i64..=3),
                    rng.gen_range(1u32..=2),
                    rng.gen_range(1i64..=3),
                    rng.gen_range(3u32..=5)
                );
                ProjPoint::affine(RatFun::parse(f, "t", &s).unwrap())
            }
        };
        if style == 0 {
            used_inf = true;
        }
        if pts.iter().all(|p| !p.det(&cand).is_zero()) {
            pts.push(cand);
        }
    }
    pts
}

#[test]
fn stable_limits_agree_with_all_cross_ratios() {
    // a lighter randomized pass; the acceptance suite runs one thousand
    let place = Place::t_adic_q();
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x11517));
    for _ in 0..150 {
        let n = rng.gen_range(3..=8);
        let pts = random_configuration(&mut rng, n);
        let tree = stable_limit(&place, &pts).unwrap();
        assert!(tree.is_stable());
        check_limit_against_cross_ratios(&place, &pts, &tree);
    }
}

#[test]
fn rebasing_gives_isomorphic_limits() {
    // the tree is independent of the choice of normalization basis up to
    // relabeling: compare separation patterns under a permuted basis
    let place = Place::t_adic_q();
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x5e6a));
    for _ in 0..50 {
        let n = rng.gen_range(4..=7);
        let pts = random_configuration(&mut rng, n);
        let tree = stable_limit(&place, &pts).unwrap();
        // rotate the configuration; markings permute the same way
        let mut rotated = pts.clone();
        rotated.rotate_left(1);
        let tree2 = stable_limit(&place, &rotated).unwrap();
        let perm = |m: u32| -> u32 {
            // marking m of `rotated` is marking m+1 of `pts` (cyclically)
            (m % n as u32) + 1
        };
        for i in 1..=n as u32 {
            for j in (i + 1)..=n as u32 {
                for k in (j + 1)..=n as u32 {
                    for l in (k + 1)..=n as u32 {
                        let a = tree2.quartet_separation(i, j, k, l).unwrap();
                        let b = tree
                            .quartet_separation(perm(i), perm(j), perm(k), perm(l))
                            .unwrap();
                        let same = matches!(
                            (a, b),
                            (QuartetSeparation::WithFirst, QuartetSeparation::WithFirst)
                                | (QuartetSeparation::WithSecond, QuartetSeparation::WithSecond)
                                | (QuartetSeparation::WithThird, QuartetSeparation::WithThird)
                                | (QuartetSeparation::Star(_), QuartetSeparation::Star(_))
                        );
                        assert!(same, "separation changed under rebasing");
                    }
                }
            }
        }
    }
}

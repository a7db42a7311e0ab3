//! Randomized and structural properties of the Groebner engine.

use std::sync::Arc;

use degenerata_core::arith::FieldSpec;
use degenerata_core::polyring::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::test_seed;

fn q_ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::from_names(names, FieldSpec::Q)
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, max_terms: usize, max_deg: u32) -> MultiPoly {
    let nt = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..nt {
        let mono: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..=max_deg)).collect();
        let c = ring.field().from_i64(rng.gen_range(-5..=5));
        terms.push((mono, c));
    }
    MultiPoly::from_terms(ring, terms)
}

/// The cone-over-a-space-quartic ideal in the affine chart, in T1..T4.
pub fn quartic_cone_ideal(r: &Arc<PolyRing>) -> Vec<MultiPoly> {
    [
        "T1^2*T3-T2^3",
        "T1*T4-T2*T3",
        "T1*T3^2-T2^2*T4",
        "T2*T4^2-T3^3",
    ]
    .iter()
    .map(|s| parse_poly(r, s).unwrap())
    .collect()
}

#[test]
fn quartic_parameterization_vanishes_on_its_ideal() {
    // (T1:T2:T3:T4) = (t^4 : t^3 s : t s^3 : s^4) must kill every generator.
    let r = q_ring(&["T1", "T2", "T3", "T4"]);
    let ts = q_ring(&["t", "s"]);
    let t = MultiPoly::var(&ts, 0);
    let s = MultiPoly::var(&ts, 1);
    let images = vec![
        t.pow(4),
        t.pow(3).mul(&s),
        t.mul(&s.pow(3)),
        s.pow(4),
    ];
    for g in quartic_cone_ideal(&r) {
        assert!(g.substitute(&ts, &images).is_zero());
    }
    // and membership of 0 through the basis, for the same generators
    let gb = buchberger(&quartic_cone_ideal(&r), MonomialOrder::GrevLex).unwrap();
    for g in quartic_cone_ideal(&r) {
        assert!(normal_form(&g, &gb).unwrap().is_zero());
    }
}

#[test]
fn quartic_cone_quotient_dimension_is_five() {
    // Staircase oracle for the chart quotient by (ideal, T1, T4): the tensor
    // length that feeds the Euler-characteristic computation. Killing T1 and
    // T4 leaves (T2^3, T2*T3, T3^3), with staircase {1, T2, T2^2, T3, T3^2}.
    let r = q_ring(&["T1", "T2", "T3", "T4"]);
    let mut gens = quartic_cone_ideal(&r);
    gens.push(parse_poly(&r, "T1").unwrap());
    gens.push(parse_poly(&r, "T4").unwrap());
    assert_eq!(
        std_monomial_count(&gens, MonomialOrder::GrevLex).unwrap(),
        QuotientDim::Finite(5)
    );
    assert_eq!(
        std_monomial_count(&gens, MonomialOrder::Lex).unwrap(),
        QuotientDim::Finite(5)
    );
}

#[test]
fn normal_form_is_path_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x9f1));
    let r = q_ring(&["x", "y", "z"]);
    let mut done = 0;
    while done < 500 {
        let k = rng.gen_range(1..=3);
        let gens: Vec<MultiPoly> = (0..k)
            .map(|_| random_poly(&mut rng, &r, 3, 3))
            .filter(|p| !p.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let Ok(gb) = buchberger(&gens, MonomialOrder::GrevLex) else {
            continue;
        };
        let f = random_poly(&mut rng, &r, 5, 4);
        let canonical = normal_form(&f, &gb).unwrap();
        let scrambled = normal_form_scrambled(&f, &gb, rng.gen()).unwrap();
        assert_eq!(canonical, scrambled, "normal form depends on reduction path");
        done += 1;
    }
}

#[test]
fn buchberger_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0xb0b));
    let r = q_ring(&["x", "y"]);
    for _ in 0..100 {
        let gens: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut rng, &r, 3, 3)).collect();
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let Ok(gb) = buchberger(&gens, MonomialOrder::GrevLex) else {
            continue;
        };
        if gb.generators().is_empty() {
            continue;
        }
        let again = buchberger(gb.generators(), MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.generators(), again.generators());
    }
}

#[test]
fn ideal_membership_consistency() {
    // f constructed as sum h_i g_i must have normal form zero.
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x3e3));
    let r = q_ring(&["x", "y", "z"]);
    for _ in 0..200 {
        let gens: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut rng, &r, 3, 2)).collect();
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let Ok(gb) = buchberger(&gens, MonomialOrder::GrevLex) else {
            continue;
        };
        let mut f = MultiPoly::zero(&r);
        for g in &gens {
            let h = random_poly(&mut rng, &r, 2, 2);
            f = f.add(&h.mul(g));
        }
        assert!(normal_form(&f, &gb).unwrap().is_zero());
    }
}

#[test]
fn staircase_count_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x57a1));
    let r = q_ring(&["x", "y"]);
    let mut done = 0;
    while done < 100 {
        // force finite codimension by including pure powers, plus noise
        let a = rng.gen_range(1..=4);
        let b = rng.gen_range(1..=4);
        let mut gens = vec![
            MultiPoly::var(&r, 0).pow(a),
            MultiPoly::var(&r, 1).pow(b),
        ];
        gens.push(random_poly(&mut rng, &r, 2, 3));
        let lex = std_monomial_count(&gens, MonomialOrder::Lex).unwrap();
        let grevlex = std_monomial_count(&gens, MonomialOrder::GrevLex).unwrap();
        assert_eq!(lex, grevlex);
        done += 1;
    }
}

#[test]
fn syzygies_expand_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x5e5));
    let r = q_ring(&["x", "y", "z"]);
    for _ in 0..60 {
        let k = rng.gen_range(2..=3);
        let gens: Vec<MultiPoly> = (0..k)
            .map(|_| random_poly(&mut rng, &r, 2, 2))
            .filter(|p| !p.is_zero())
            .collect();
        if gens.len() < 2 {
            continue;
        }
        // module_syzygies asserts exact annihilation internally
        let syz = module_syzygies(&gens).unwrap();
        for s in &syz {
            let mut acc = MultiPoly::zero(&r);
            for (a, g) in s.iter().zip(&gens) {
                acc = acc.add(&a.mul(g));
            }
            assert!(acc.is_zero());
        }
    }
}

//! Randomized properties of the reduction-theory layer: the j-invariant
//! identity, invariance under admissible rescaling, and the equivalence of
//! the j-integrality criterion with the constructive semistable witness.

use degenerata_core::elliptic::*;
use degenerata_core::valued::{Elem, Place, RatFun};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::test_seed;

fn tq() -> Place {
    Place::t_adic_q()
}

fn random_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
    let place = tq();
    let mut parts: Vec<String> = Vec::new();
    for k in 0..=2 {
        let c = rng.gen_range(-4i64..=4);
        if c != 0 {
            parts.push(format!("{c}*t^{k}"));
        }
    }
    let num = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    };
    let den_pow = rng.gen_range(0..=2);
    let s = if den_pow > 0 {
        format!("({num})/(t^{den_pow})")
    } else {
        num
    };
    match place.parse(&s).unwrap() {
        Elem::Fun(f) => f,
        _ => unreachable!(),
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> WeierstrassModel {
    loop {
        let a = Elem::Fun(random_ratfun(rng));
        let b = Elem::Fun(random_ratfun(rng));
        if let Ok(m) = WeierstrassModel::new(tq(), a, b) {
            return m;
        }
    }
}

#[test]
fn j_invariant_identity_holds_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x0e11));
    for _ in 0..1000 {
        let m = random_model(&mut rng);
        // the identity j * (4A^3 + 27B^2) = 1728 * 4A^3 is asserted inside
        let _ = m.invariants();
    }
}

#[test]
fn classification_is_invariant_under_admissible_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x5ca1e));
    let place = tq();
    let units = [
        "1", "2", "3/5", "1+t", "(1+t)/(1-2*t)", "-1+3*t", "(2+t^2)/(3-t)",
    ];
    for _ in 0..200 {
        let m = random_model(&mut rng);
        let base = m.reduction_type().unwrap().rtype;
        let u = place.parse(units[rng.gen_range(0..units.len())]).unwrap();
        assert_eq!(place.valuation(&u).unwrap(), Some(0));
        let scaled = WeierstrassModel::new(
            place,
            m.a().mul(&u.pow(4)),
            m.b().mul(&u.pow(6)),
        )
        .unwrap();
        assert_eq!(scaled.reduction_type().unwrap().rtype, base);
    }
}

#[test]
fn j_integrality_matches_the_constructive_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x900d));
    for _ in 0..200 {
        let m = random_model(&mut rng);
        let pot_good = m.potentially_good().unwrap();
        let (_, _, data) = m.semistable_degree().unwrap();
        // the witness model re-classifies as good exactly when j is integral
        assert_eq!(
            pot_good,
            data.rtype == ReductionType::Good,
            "A = {}, B = {}",
            m.a(),
            m.b()
        );
        assert!(matches!(
            data.rtype,
            ReductionType::Good | ReductionType::Multiplicative
        ));
    }
}

#[test]
fn residue_cubic_root_multiplicity_matches_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0x3003));
    for _ in 0..300 {
        let m = random_model(&mut rng);
        let d = m.reduction_type().unwrap();
        let min = WeierstrassModel::new(tq(), d.a_min.clone(), d.b_min.clone()).unwrap();
        let cubic = min.residue_cubic().unwrap();
        let g = cubic.gcd(&cubic.derivative());
        match d.rtype {
            ReductionType::Good => assert_eq!(g.degree(), Some(0)),
            ReductionType::Multiplicative => assert_eq!(g.degree(), Some(1)),
            ReductionType::Additive => assert_eq!(g.degree(), Some(2)),
        }
    }
}

//! The quartic-cone intersection profile, a Bezout-style property over
//! random plane curves with an independent resultant oracle, and an
//! independent Euler-characteristic recomputation by the Koszul recursion.

use std::sync::Arc;

use degenerata_core::arith::FieldSpec;
use degenerata_core::intersection::*;
use degenerata_core::polyring::*;
use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::test_seed;

fn q_ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::from_names(names, FieldSpec::Q)
}

fn quartic_cone_ideal(r: &Arc<PolyRing>) -> Vec<MultiPoly> {
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

fn quartic_problem() -> IntersectionProblem {
    let r = q_ring(&["T1", "T2", "T3", "T4"]);
    IntersectionProblem::new(
        parse_poly(&r, "T1").unwrap(),
        Some(parse_poly(&r, "T4").unwrap()),
        quartic_cone_ideal(&r),
        MonomialOrder::GrevLex,
    )
    .unwrap()
}

#[test]
fn quartic_cone_profile() {
    let p = quartic_problem();
    let t = p.koszul_tor_lengths().unwrap();
    assert_eq!(t.chi, 4);
    assert_ne!(t.l0, 4, "the plain tensor length is the wrong multiplicity");
    assert_eq!(t.l0, 5);
    assert_eq!(t.l1, 1);
    assert_eq!(t.l2, 0, "the ideal is prime, so the top homology vanishes");
    assert!(p.support_at_origin().unwrap());
}

/// Independent recomputation: when g is a nonzerodivisor modulo the ideal,
/// the Euler characteristic collapses to the two-term complex of f acting
/// on the quotient by (ideal, g).
fn chi_by_recursion(
    f: &MultiPoly,
    g: &MultiPoly,
    ideal: &[MultiPoly],
    order: MonomialOrder,
) -> i64 {
    // verify g is a nonzerodivisor: (ideal : g) = ideal
    let gb = buchberger(ideal, order).unwrap();
    for a in colon_ideal(ideal, g).unwrap() {
        assert!(
            normal_form(&a, &gb).unwrap().is_zero(),
            "g is a zerodivisor modulo the ideal; recursion inapplicable"
        );
    }
    let mut bigger = ideal.to_vec();
    bigger.push(g.clone());
    let mut all = bigger.clone();
    all.push(f.clone());
    let l0 = std_monomial_count(&all, order).unwrap().finite().unwrap();
    let ann = ideal_quotient_dim(&colon_ideal(&bigger, f).unwrap(), &bigger, order).unwrap();
    l0 as i64 - ann as i64
}

#[test]
fn quartic_cone_chi_agrees_with_recursion() {
    let r = q_ring(&["T1", "T2", "T3", "T4"]);
    let f = parse_poly(&r, "T1").unwrap();
    let g = parse_poly(&r, "T4").unwrap();
    let chi = chi_by_recursion(&f, &g, &quartic_cone_ideal(&r), MonomialOrder::GrevLex);
    assert_eq!(chi, 4);
    assert_eq!(chi, quartic_problem().serre_chi().unwrap());
}

#[test]
fn top_homology_vanishes_for_prime_ideals() {
    // ideals prime by construction (irreducible hypersurfaces, a monomial
    // curve), paired with complete intersections that stay finite
    let r = q_ring(&["x", "y"]);
    let cases = vec![
        ("y-x^2", "x", Some("y")),
        ("y", "x", None),
        ("y^2-x^3", "x", Some("y")),
    ];
    for (j, f, g) in cases {
        let p = IntersectionProblem::new(
            parse_poly(&r, f).unwrap(),
            g.map(|g| parse_poly(&r, g).unwrap()),
            vec![parse_poly(&r, j).unwrap()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let t = p.koszul_tor_lengths().unwrap();
        assert_eq!(t.l2, 0, "torsion pair over a domain: J={j}, f={f}");
        assert!(t.chi >= 0);
    }
}

// ---- Bezout oracle -------------------------------------------------------

/// Sylvester resultant of two univariate polynomials with rational
/// coefficients, given as coefficient vectors lowest-degree-first.
fn resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let da = a.len() - 1;
    let db = b.len() - 1;
    if da == 0 && db == 0 {
        return BigRational::from_integer(1.into());
    }
    let n = da + db;
    // Sylvester matrix, row-major
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..db {
        for (k, c) in a.iter().enumerate() {
            m[i][i + (da - k)] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in b.iter().enumerate() {
            m[db + i][i + (db - k)] = c.clone();
        }
    }
    // fraction-full Gaussian elimination
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone() * inv.clone();
            for j in col..n {
                let t = m[col][j].clone() * factor.clone();
                m[i][j] -= t;
            }
        }
    }
    det
}

fn rational(k: &degenerata_core::arith::K) -> BigRational {
    match k {
        degenerata_core::arith::K::Q(r) => r.clone(),
        _ => panic!("expected a rational"),
    }
}

/// Leading-form coefficients of the degree-d part, as a univariate in x
/// after setting y = 1: index i holds the coefficient of x^i y^(d-i).
fn leading_form(p: &MultiPoly, d: u32) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); d as usize + 1];
    for (m, c) in p.terms() {
        if m[0] + m[1] == d {
            coeffs[m[0] as usize] = rational(c);
        }
    }
    coeffs
}

/// True iff the two plane curves share no point on the line at infinity:
/// the resultant of their leading binary forms is nonzero.
fn affine_complete(f: &MultiPoly, g: &MultiPoly, df: u32, dg: u32) -> bool {
    let a = leading_form(f, df);
    let b = leading_form(g, dg);
    // common zero at (1:0), i.e. both divisible by y, shows up as vanishing
    // top coefficients
    if a[df as usize].is_zero() && b[dg as usize].is_zero() {
        return false;
    }
    !resultant(&a, &b).is_zero()
}

fn random_curve(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, d: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                terms.push((vec![i, j], r.field().from_i64(c)));
            }
        }
    }
    MultiPoly::from_terms(r, terms)
}

#[test]
fn bezout_for_random_plane_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(test_seed(0xbe20));
    let r = q_ring(&["x", "y"]);
    let mut done = 0;
    while done < 40 {
        let df = rng.gen_range(1..=3u32);
        let dg = rng.gen_range(1..=3u32);
        let f = random_curve(&mut rng, &r, df);
        let g = random_curve(&mut rng, &r, dg);
        if f.total_degree() != Some(df as u64) || g.total_degree() != Some(dg as u64) {
            continue;
        }
        if !affine_complete(&f, &g, df, dg) {
            continue;
        }
        let p = IntersectionProblem::new(
            f.clone(),
            None,
            vec![g.clone()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let Ok(t) = p.koszul_tor_lengths() else {
            // shared component; resultant in one direction can miss it
            continue;
        };
        assert!(t.chi >= 0);
        assert_eq!(
            t.chi,
            (df as i64) * (dg as i64),
            "degrees ({df},{dg}), f={f}, g={g}"
        );
        done += 1;
    }
}

//! Double description: from a list of halfspace constraints to the extremal
//! rays and lineality of the polar cone, exactly over the integers.

use std::collections::BTreeSet;

use num::bigint::Sign;
use num::BigInt;

use crate::lattice::{row_hermite_normal_form, LatticeMatrix, LatticeVector};

/// Generators of a (not necessarily pointed) polyhedral cone: extremal rays
/// modulo the lineality space, plus a lineality basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

#[derive(Clone)]
struct Ray {
    v: LatticeVector,
    tight: BTreeSet<usize>,
}

/// Computes `{x : <c, x> >= 0 for all constraints c}` as a generator set.
/// With no constraints this is all of `Z^n` (pure lineality).
pub fn polar(constraints: &[LatticeVector], n: usize) -> GeneratorSet {
    let mut lineality: Vec<LatticeVector> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::from(0); n];
            e[i] = BigInt::from(1);
            LatticeVector::new(e)
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: BTreeSet<usize> = BTreeSet::new();

    for (ci, a) in constraints.iter().enumerate() {
        assert_eq!(a.rank(), n);
        if a.is_zero() {
            processed.insert(ci);
            continue;
        }
        // if the constraint cuts the lineality space, peel one direction off
        if let Some(pos) = lineality.iter().position(|l| a.dot(l) != BigInt::from(0)) {
            let mut l0 = lineality.remove(pos);
            if a.dot(&l0).sign() == Sign::Minus {
                l0 = l0.neg();
            }
            let pl0 = a.dot(&l0);
            for l in lineality.iter_mut() {
                let pl = a.dot(l);
                if pl != BigInt::from(0) {
                    *l = l.scale(&pl0).add(&l0.scale(&(-pl))).primitive().unwrap();
                }
            }
            for r in rays.iter_mut() {
                let pr = a.dot(&r.v);
                if pr != BigInt::from(0) {
                    r.v = r.v.scale(&pl0).add(&l0.scale(&(-pr))).primitive().unwrap();
                }
                r.tight.insert(ci);
            }
            // l0 was lineality, hence tight on every earlier constraint
            rays.push(Ray {
                v: l0,
                tight: processed.clone(),
            });
            processed.insert(ci);
            continue;
        }
        // lineality is inside the hyperplane; split the rays
        let mut plus: Vec<usize> = Vec::new();
        let mut minus: Vec<usize> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            match a.dot(&r.v).sign() {
                Sign::Plus => plus.push(i),
                Sign::Minus => minus.push(i),
                Sign::NoSign => {}
            }
        }
        if minus.is_empty() {
            for r in rays.iter_mut() {
                if a.dot(&r.v) == BigInt::from(0) {
                    r.tight.insert(ci);
                }
            }
            processed.insert(ci);
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &m in &minus {
                if !adjacent(&rays, p, m) {
                    continue;
                }
                let pp = a.dot(&rays[p].v);
                let pm = a.dot(&rays[m].v);
                let v = rays[m]
                    .v
                    .scale(&pp)
                    .add(&rays[p].v.scale(&(-pm.clone())))
                    .primitive()
                    .expect("combination of distinct extremal rays is nonzero");
                let mut tight: BTreeSet<usize> = rays[p]
                    .tight
                    .intersection(&rays[m].tight)
                    .copied()
                    .collect();
                tight.insert(ci);
                new_rays.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if minus.contains(&i) {
                continue;
            }
            let mut r = r.clone();
            if a.dot(&r.v) == BigInt::from(0) {
                r.tight.insert(ci);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
        processed.insert(ci);
    }

    let mut ray_vecs: Vec<LatticeVector> = rays.into_iter().map(|r| r.v).collect();
    debug_assert_eq!(
        ray_vecs.iter().collect::<BTreeSet<_>>().len(),
        ray_vecs.len(),
        "duplicate extremal rays out of the double description"
    );
    ray_vecs.sort();
    GeneratorSet {
        rays: ray_vecs,
        lineality: canonical_lineality(lineality, n),
    }
}

/// Combinatorial adjacency test: p and m are adjacent iff no third ray is
/// tight on every constraint tight on both.
fn adjacent(rays: &[Ray], p: usize, m: usize) -> bool {
    let common: BTreeSet<usize> = rays[p]
        .tight
        .intersection(&rays[m].tight)
        .copied()
        .collect();
    for (i, r) in rays.iter().enumerate() {
        if i == p || i == m {
            continue;
        }
        if common.is_subset(&r.tight) {
            return false;
        }
    }
    true
}

fn canonical_lineality(lineality: Vec<LatticeVector>, n: usize) -> Vec<LatticeVector> {
    if lineality.is_empty() {
        return lineality;
    }
    let m = LatticeMatrix::from_rows(&lineality).expect("nonempty");
    let (h, _) = row_hermite_normal_form(&m).expect("nonempty");
    let _ = n;
    (0..h.rows())
        .map(|i| h.row(i))
        .filter(|r| !r.is_zero())
        .collect()
}

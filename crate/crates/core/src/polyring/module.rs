use std::collections::BTreeSet;
use std::sync::Arc;

use super::grobner::{basis_cap, std_count_from_lms, QuotientDim};
use super::{
    monomial_deg, monomial_divides, monomial_lcm, monomial_quot, Monomial, MonomialOrder,
    MultiPoly, PolyError, PolyRing,
};
use crate::arith::K;

/// An element of a free module `A^rank` over a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    comps: Vec<MultiPoly>,
}

impl PolyVec {
    pub fn new(comps: Vec<MultiPoly>) -> PolyVec {
        assert!(!comps.is_empty());
        assert!(comps.iter().all(|c| c.same_ring(&comps[0])));
        PolyVec { comps }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> PolyVec {
        PolyVec {
            comps: (0..rank).map(|_| MultiPoly::zero(ring)).collect(),
        }
    }

    /// `f * e_i` in `A^rank`.
    pub fn monomial_basis(ring: &Arc<PolyRing>, rank: usize, i: usize, f: &MultiPoly) -> PolyVec {
        let mut v = PolyVec::zero(ring, rank);
        v.comps[i] = f.clone();
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.rank(), other.rank());
        PolyVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.rank(), other.rank());
        PolyVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &[u32], c: &K) -> PolyVec {
        PolyVec {
            comps: self.comps.iter().map(|f| f.mul_term(m, c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> PolyVec {
        PolyVec {
            comps: self.comps.iter().map(|g| g.mul(f)).collect(),
        }
    }

    /// Leading module term under position-over-term: lower component index
    /// dominates, ties broken by the ring order within a component.
    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(usize, &Monomial, &K)> {
        for (i, f) in self.comps.iter().enumerate() {
            if let Some((m, c)) = f.leading_term(ord) {
                return Some((i, m, c));
            }
        }
        None
    }

    fn scale(&self, c: &K) -> PolyVec {
        PolyVec {
            comps: self.comps.iter().map(|f| f.scale(c)).collect(),
        }
    }

    fn make_monic(&self, ord: MonomialOrder) -> PolyVec {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, _, c)) => self.scale(&c.inv().expect("unit leading coefficient")),
        }
    }
}

fn reduce_vec(v: &PolyVec, basis: &[PolyVec], ord: MonomialOrder) -> PolyVec {
    let mut rem = v.clone();
    let lts: Vec<(usize, Monomial, K)> = basis
        .iter()
        .map(|g| {
            let (i, m, c) = g.leading_term(ord).expect("nonzero basis element");
            (i, m.clone(), c.clone())
        })
        .collect();
    'outer: loop {
        // reduce every reducible term, largest first within each component
        for comp in 0..rem.rank() {
            let terms: Vec<(Monomial, K)> = rem.comps[comp]
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            let mut reducible: Vec<&(Monomial, K)> = terms
                .iter()
                .filter(|(m, _)| {
                    lts.iter()
                        .any(|(i, lm, _)| *i == comp && monomial_divides(lm, m))
                })
                .collect();
            if reducible.is_empty() {
                continue;
            }
            reducible.sort_by(|a, b| ord.cmp(&b.0, &a.0));
            let (m, c) = reducible[0];
            let (gi, lm, lc) = lts
                .iter()
                .enumerate()
                .find_map(|(gi, (i, lm, lc))| {
                    (*i == comp && monomial_divides(lm, m)).then_some((gi, lm, lc))
                })
                .unwrap();
            let q = monomial_quot(m, lm);
            let factor = c.div(lc);
            rem = rem.sub(&basis[gi].mul_term(&q, &factor));
            continue 'outer;
        }
        return rem;
    }
}

/// Buchberger for submodules of a free module under position-over-term.
/// No pair-skip criteria are applied; the final interreduced basis is
/// deterministic.
pub fn module_groebner(
    gens: &[PolyVec],
    ord: MonomialOrder,
    cap: usize,
) -> Result<Vec<PolyVec>, PolyError> {
    let mut basis: Vec<PolyVec> = gens
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.make_monic(ord))
        .collect();
    if basis.is_empty() {
        return Ok(vec![]);
    }

    let lt = |v: &PolyVec| -> (usize, Monomial) {
        let (i, m, _) = v.leading_term(ord).unwrap();
        (i, m.clone())
    };

    let mut pairs: BTreeSet<(u64, usize, Monomial, usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u64, usize, Monomial, usize, usize)>,
                   basis: &[PolyVec],
                   i: usize,
                   j: usize| {
        let (ci, mi) = lt(&basis[i]);
        let (cj, mj) = lt(&basis[j]);
        if ci != cj {
            return; // no S-pair across components
        }
        let l = monomial_lcm(&mi, &mj);
        pairs.insert((monomial_deg(&l), ci, l, i, j));
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            enqueue(&mut pairs, &basis, i, j);
        }
    }
    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, _, l, i, j) = entry;
        let (_, mi, ci) = basis[i].leading_term(ord).map(|(a, b, c)| (a, b.clone(), c.clone())).unwrap();
        let (_, mj, cj) = basis[j].leading_term(ord).map(|(a, b, c)| (a, b.clone(), c.clone())).unwrap();
        let one = ci.spec().one();
        let a = basis[i].mul_term(&monomial_quot(&l, &mi), &one.div(&ci));
        let b = basis[j].mul_term(&monomial_quot(&l, &mj), &one.div(&cj));
        let s = a.sub(&b);
        let rem = reduce_vec(&s, &basis, ord);
        if rem.is_zero() {
            continue;
        }
        basis.push(rem.make_monic(ord));
        if basis.len() > cap {
            return Err(PolyError::BasisCap(cap));
        }
        let newi = basis.len() - 1;
        for k in 0..newi {
            enqueue(&mut pairs, &basis, k, newi);
        }
    }

    // interreduce
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ci, mi) = lt(&basis[i]);
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, mj) = lt(&basis[j]);
            if ci == cj && monomial_divides(&mj, &mi) && (mi != mj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let survivors: Vec<PolyVec> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(v, _)| v.clone())
        .collect();
    let mut reduced = Vec::new();
    for i in 0..survivors.len() {
        let others: Vec<PolyVec> = survivors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let r = reduce_vec(&survivors[i], &others, ord);
        if !r.is_zero() {
            reduced.push(r.make_monic(ord));
        }
    }
    reduced.sort_by(|a, b| {
        let (ca, ma, _) = a.leading_term(ord).unwrap();
        let (cb, mb, _) = b.leading_term(ord).unwrap();
        ca.cmp(&cb).then_with(|| ord.cmp(ma, mb))
    });
    Ok(reduced)
}

/// Generators of the syzygy module of a list of vectors in `A^r`:
/// all `(a_1..a_k)` with `sum a_i v_i = 0`, via the lifted construction
/// under a position-over-term order in which the value block dominates.
pub fn syzygies_of_vectors(elems: &[PolyVec]) -> Result<Vec<PolyVec>, PolyError> {
    if elems.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let r = elems[0].rank();
    if elems.iter().any(|v| v.rank() != r) {
        return Err(PolyError::RingMismatch);
    }
    let ring = elems[0].comps()[0].ring().clone();
    let k = elems.len();
    let lifted: Vec<PolyVec> = elems
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut comps = v.comps().to_vec();
            for j in 0..k {
                comps.push(if i == j {
                    MultiPoly::one(&ring)
                } else {
                    MultiPoly::zero(&ring)
                });
            }
            PolyVec::new(comps)
        })
        .collect();
    let gb = module_groebner(&lifted, MonomialOrder::GrevLex, basis_cap())?;
    let mut syz = Vec::new();
    for v in gb {
        if v.comps()[..r].iter().all(|f| f.is_zero()) {
            syz.push(PolyVec::new(v.comps()[r..].to_vec()));
        }
    }
    // every returned tuple must annihilate exactly
    for s in &syz {
        let mut acc = PolyVec::zero(&ring, r);
        for (a, v) in s.comps().iter().zip(elems) {
            acc = acc.add(&v.mul_poly(a));
        }
        assert!(acc.is_zero(), "syzygy fails to annihilate");
    }
    Ok(syz)
}

/// Syzygies of ring elements `f_1..f_k`: generators of
/// `{(a_1..a_k) : sum a_i f_i = 0}`.
pub fn module_syzygies(polys: &[MultiPoly]) -> Result<Vec<Vec<MultiPoly>>, PolyError> {
    if polys.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    let elems: Vec<PolyVec> = polys.iter().map(|f| PolyVec::new(vec![f.clone()])).collect();
    Ok(syzygies_of_vectors(&elems)?
        .into_iter()
        .map(|v| v.comps().to_vec())
        .collect())
}

/// Vector-space dimension of `A^rank / <gens>`, by counting standard module
/// monomials componentwise.
pub fn module_quotient_dim(
    gens: &[PolyVec],
    rank: usize,
    ord: MonomialOrder,
) -> Result<QuotientDim, PolyError> {
    if gens.is_empty() {
        return Ok(if rank == 0 {
            QuotientDim::Finite(0)
        } else {
            QuotientDim::Infinite
        });
    }
    let nvars = gens[0].comps()[0].ring().nvars();
    let gb = module_groebner(gens, ord, basis_cap())?;
    let mut total = 0usize;
    for comp in 0..rank {
        let lms: Vec<Monomial> = gb
            .iter()
            .filter_map(|v| {
                let (c, m, _) = v.leading_term(ord)?;
                (c == comp).then(|| m.clone())
            })
            .collect();
        if lms.is_empty() {
            return Ok(QuotientDim::Infinite);
        }
        match std_count_from_lms(&lms, nvars)? {
            QuotientDim::Finite(n) => total += n,
            QuotientDim::Infinite => return Ok(QuotientDim::Infinite),
        }
    }
    Ok(QuotientDim::Finite(total))
}

/// Normal form of a vector against a module Groebner basis.
pub fn module_normal_form(v: &PolyVec, basis: &[PolyVec], ord: MonomialOrder) -> PolyVec {
    reduce_vec(v, basis, ord)
}

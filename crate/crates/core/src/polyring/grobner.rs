use std::collections::BTreeSet;

use super::{
    monomial_deg, monomial_divides, monomial_lcm, monomial_mul, monomial_quot, Monomial,
    MonomialOrder, MultiPoly, PolyError,
};

/// Hard default on the number of basis elements, a guard against
/// nontermination-in-practice. Exceeding it is a resource error.
pub const DEFAULT_BASIS_CAP: usize = 2000;

static BASIS_CAP: std::sync::atomic::AtomicUsize =
    std::sync::atomic::AtomicUsize::new(DEFAULT_BASIS_CAP);

/// The cap used by [`buchberger`]; configurable at process start.
pub fn basis_cap() -> usize {
    BASIS_CAP.load(std::sync::atomic::Ordering::Relaxed)
}

/// Overrides the default basis cap process-wide. Intended for startup
/// configuration; concurrent basis computations see the new value on their
/// next call.
pub fn set_basis_cap(cap: usize) {
    BASIS_CAP.store(cap.max(1), std::sync::atomic::Ordering::Relaxed);
}

const ENUMERATION_CAP: usize = 20_000_000;

/// A reduced Groebner basis: monic generators sorted by leading monomial,
/// no term of any generator divisible by another's leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    gens: Vec<MultiPoly>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero generator").0.clone())
            .collect()
    }

    pub fn contains_one(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].num_terms() == 1 && {
            let (m, _) = self.gens[0].terms().next().unwrap();
            m.iter().all(|&e| e == 0)
        }
    }
}

/// One full reduction step strategy. `Canonical` always reduces the largest
/// reducible term by the first eligible divisor; the randomized variants
/// exist so tests can confirm path independence of normal forms.
#[derive(Clone, Copy)]
pub enum ReductionStrategy {
    Canonical,
    /// (term_choice_seed, reducer_choice_seed) driven simple LCG picks.
    Scrambled(u64),
}

fn reduce_full(
    f: &MultiPoly,
    reducers: &[MultiPoly],
    ord: MonomialOrder,
    strategy: ReductionStrategy,
) -> MultiPoly {
    let mut rem = f.clone();
    let mut state = match strategy {
        ReductionStrategy::Canonical => 0u64,
        ReductionStrategy::Scrambled(s) => s | 1,
    };
    let lms: Vec<Option<(Monomial, crate::arith::K)>> = reducers
        .iter()
        .map(|g| g.leading_term(ord).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    loop {
        // collect reducible terms of rem
        let mut candidates: Vec<(Monomial, Vec<usize>)> = Vec::new();
        for (m, _) in rem.terms() {
            let div: Vec<usize> = lms
                .iter()
                .enumerate()
                .filter_map(|(i, lm)| match lm {
                    Some((lmm, _)) if monomial_divides(lmm, m) => Some(i),
                    _ => None,
                })
                .collect();
            if !div.is_empty() {
                candidates.push((m.clone(), div));
            }
        }
        if candidates.is_empty() {
            return rem;
        }
        let (m, div) = match strategy {
            ReductionStrategy::Canonical => {
                // largest reducible term, first eligible reducer
                let best = candidates
                    .iter()
                    .max_by(|a, b| ord.cmp(&a.0, &b.0))
                    .unwrap();
                (best.0.clone(), best.1[0])
            }
            ReductionStrategy::Scrambled(_) => {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let ci = (state >> 33) as usize % candidates.len();
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let ri = (state >> 33) as usize % candidates[ci].1.len();
                (candidates[ci].0.clone(), candidates[ci].1[ri])
            }
        };
        let (lmm, lmc) = lms[div].as_ref().unwrap();
        let c = rem.coeff(&m);
        let q = monomial_quot(&m, lmm);
        let factor = c.div(lmc);
        rem = rem.sub(&reducers[div].mul_term(&q, &factor));
        debug_assert!(rem.coeff(&m).is_zero());
    }
}

/// The unique remainder of `f` modulo a Groebner basis: no term of the
/// result is divisible by any leading monomial, and `f - result` lies in
/// the ideal.
pub fn normal_form(f: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly, PolyError> {
    if !gb.gens.is_empty() && !f.same_ring(&gb.gens[0]) {
        return Err(PolyError::RingMismatch);
    }
    Ok(reduce_full(f, &gb.gens, gb.order, ReductionStrategy::Canonical))
}

/// Normal form with a scrambled reduction path; agrees with [`normal_form`]
/// for a Groebner basis. Exposed for the path-independence tests.
pub fn normal_form_scrambled(
    f: &MultiPoly,
    gb: &GroebnerBasis,
    seed: u64,
) -> Result<MultiPoly, PolyError> {
    if !gb.gens.is_empty() && !f.same_ring(&gb.gens[0]) {
        return Err(PolyError::RingMismatch);
    }
    Ok(reduce_full(
        f,
        &gb.gens,
        gb.order,
        ReductionStrategy::Scrambled(seed),
    ))
}

fn s_poly(f: &MultiPoly, g: &MultiPoly, ord: MonomialOrder) -> MultiPoly {
    let (fm, fc) = f.leading_term(ord).expect("nonzero");
    let (gm, gc) = g.leading_term(ord).expect("nonzero");
    let l = monomial_lcm(fm, gm);
    let one = f.ring().field().one();
    let a = f.mul_term(&monomial_quot(&l, fm), &one.div(fc));
    let b = g.mul_term(&monomial_quot(&l, gm), &one.div(gc));
    a.sub(&b)
}

/// Buchberger with the normal selection strategy (smallest lcm first) and
/// both classical pair-elimination criteria, then interreduction to the
/// reduced basis. Deterministic: identical inputs give identical bases.
pub fn buchberger_with_cap(
    gens: &[MultiPoly],
    order: MonomialOrder,
    cap: usize,
) -> Result<GroebnerBasis, PolyError> {
    if gens.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    if gens.iter().any(|g| !g.same_ring(&gens[0])) {
        return Err(PolyError::RingMismatch);
    }
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.make_monic(order));
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            gens: vec![],
            order,
        });
    }

    let lm = |f: &MultiPoly| f.leading_term(order).unwrap().0.clone();

    // pair queue keyed by (lcm degree, lcm, i, j) for the normal strategy
    let mut pairs: BTreeSet<(u64, Monomial, usize, usize)> = BTreeSet::new();
    let mut done_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u64, Monomial, usize, usize)>,
                       basis: &[MultiPoly],
                       i: usize,
                       j: usize| {
        let l = monomial_lcm(&lm(&basis[i]), &lm(&basis[j]));
        pairs.insert((monomial_deg(&l), l, i, j));
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            enqueue(&mut pairs, &basis, i, j);
        }
    }

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, l, i, j) = entry;
        done_pairs.insert((i, j));
        let lmi = lm(&basis[i]);
        let lmj = lm(&basis[j]);
        // product criterion: coprime leading monomials
        if monomial_mul(&lmi, &lmj) == l {
            continue;
        }
        // chain criterion: some k with lm(k) | lcm and both pairs treated
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if monomial_divides(&lm(&basis[k]), &l) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if done_pairs.contains(&a) && done_pairs.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let rem = reduce_full(&s, &basis, order, ReductionStrategy::Canonical);
        if rem.is_zero() {
            continue;
        }
        let rem = rem.make_monic(order);
        basis.push(rem);
        let newi = basis.len() - 1;
        if basis.len() > cap {
            return Err(PolyError::BasisCap(cap));
        }
        for k in 0..newi {
            enqueue(&mut pairs, &basis, k, newi);
        }
    }

    // interreduce to the unique reduced basis
    let mut reduced: Vec<MultiPoly> = Vec::new();
    // drop generators whose leading monomial is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[i] {
                continue;
            }
            if keep[j] {
                let lmi = lm(&basis[i]);
                let lmj = lm(&basis[j]);
                if monomial_divides(&lmj, &lmi) && (lmi != lmj || j < i) {
                    keep[i] = false;
                }
            }
        }
    }
    let survivors: Vec<MultiPoly> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    for i in 0..survivors.len() {
        let others: Vec<MultiPoly> = survivors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(&survivors[i], &others, order, ReductionStrategy::Canonical);
        if !r.is_zero() {
            reduced.push(r.make_monic(order));
        }
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    let gb = GroebnerBasis {
        gens: reduced,
        order,
    };

    // Buchberger criterion, asserted on construction: every S-polynomial of
    // the final basis reduces to zero.
    for i in 0..gb.gens.len() {
        for j in i + 1..gb.gens.len() {
            let s = s_poly(&gb.gens[i], &gb.gens[j], order);
            let r = reduce_full(&s, &gb.gens, order, ReductionStrategy::Canonical);
            assert!(
                r.is_zero(),
                "S-polynomial of basis pair ({i},{j}) does not reduce to zero"
            );
        }
    }
    // membership of the inputs
    for g in gens {
        let r = reduce_full(g, &gb.gens, order, ReductionStrategy::Canonical);
        assert!(r.is_zero(), "input generator escapes its own basis");
    }
    Ok(gb)
}

pub fn buchberger(gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis, PolyError> {
    buchberger_with_cap(gens, order, basis_cap())
}

/// Vector-space dimension of the quotient ring, as a count of standard
/// monomials (monomials outside the leading ideal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl QuotientDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            QuotientDim::Finite(n) => Some(*n),
            QuotientDim::Infinite => None,
        }
    }
}

pub(crate) fn std_count_from_lms(lms: &[Monomial], nvars: usize) -> Result<QuotientDim, PolyError> {
    if lms.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Ok(QuotientDim::Finite(0)); // ideal contains a unit
    }
    // finite iff every variable has a pure power among the leading monomials
    let mut bound = vec![0u32; nvars];
    for v in 0..nvars {
        let mut best: Option<u32> = None;
        for m in lms {
            if m.iter().enumerate().all(|(i, &e)| i == v || e == 0) {
                let e = m[v];
                best = Some(match best {
                    None => e,
                    Some(b) => b.min(e),
                });
            }
        }
        match best {
            Some(b) => bound[v] = b,
            None => return Ok(QuotientDim::Infinite),
        }
    }
    let mut total: usize = 1;
    for &b in &bound {
        total = total
            .checked_mul(b as usize)
            .ok_or(PolyError::EnumerationCap(ENUMERATION_CAP))?;
        if total > ENUMERATION_CAP {
            return Err(PolyError::EnumerationCap(ENUMERATION_CAP));
        }
    }
    // walk the box, counting monomials not divisible by any leading monomial
    let mut count = 0usize;
    let mut cur = vec![0u32; nvars];
    'outer: loop {
        if !lms.iter().any(|m| monomial_divides(m, &cur)) {
            count += 1;
        }
        for v in 0..nvars {
            cur[v] += 1;
            if cur[v] < bound[v] {
                continue 'outer;
            }
            cur[v] = 0;
        }
        break;
    }
    Ok(QuotientDim::Finite(count))
}

/// Number of standard monomials of the ideal generated by `gens`:
/// the vector-space dimension of the quotient.
pub fn std_monomial_count(
    gens: &[MultiPoly],
    order: MonomialOrder,
) -> Result<QuotientDim, PolyError> {
    let gb = buchberger(gens, order)?;
    std_monomial_count_of(&gb)
}

pub fn std_monomial_count_of(gb: &GroebnerBasis) -> Result<QuotientDim, PolyError> {
    if gb.gens.is_empty() {
        // the zero ideal: infinite unless the ring has no variables
        let nvars = 0;
        let _ = nvars;
        return Ok(QuotientDim::Infinite);
    }
    let nvars = gb.gens[0].ring().nvars();
    if nvars == 0 {
        return Ok(QuotientDim::Finite(if gb.contains_one() { 0 } else { 1 }));
    }
    std_count_from_lms(&gb.leading_monomials(), nvars)
}

/// True iff some power of the variable lies in the ideal. Requires the
/// quotient to be finite-dimensional; in a quotient of dimension d, a
/// nilpotent variable satisfies x^d = 0.
pub fn is_nilpotent_mod(
    var: usize,
    gens: &[MultiPoly],
    order: MonomialOrder,
) -> Result<bool, PolyError> {
    let gb = buchberger(gens, order)?;
    let d = match std_monomial_count_of(&gb)? {
        QuotientDim::Finite(d) => d,
        QuotientDim::Infinite => return Err(PolyError::InfiniteQuotient),
    };
    if d == 0 {
        return Ok(true); // zero ring
    }
    let ring = gens[0].ring().clone();
    let x = MultiPoly::var(&ring, var);
    let p = x.pow(d as u32);
    Ok(normal_form(&p, &gb)?.is_zero())
}

//! Euler-characteristic intersection multiplicities for a one- or
//! two-element Koszul side against an arbitrary ideal: the alternating sum
//! of the lengths of the Koszul homology modules.

use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{
    buchberger, is_nilpotent_mod, module_quotient_dim, module_syzygies, std_monomial_count_of,
    syzygies_of_vectors, MonomialOrder, MultiPoly, PolyError, PolyRing, PolyVec, QuotientDim,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("quotient by the combined ideal is not finite-dimensional")]
    InfiniteQuotient,
    #[error("ideal generator list is empty")]
    EmptyIdeal,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Lengths of the homology of the Koszul complex tensored with the quotient
/// by the ideal, and their alternating sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorProfile {
    pub l0: usize,
    pub l1: usize,
    pub l2: usize,
    pub chi: i64,
}

/// A complete-intersection side (one or two elements) against an ideal.
#[derive(Debug, Clone)]
pub struct IntersectionProblem {
    ring: Arc<PolyRing>,
    f: MultiPoly,
    g: Option<MultiPoly>,
    ideal: Vec<MultiPoly>,
    order: MonomialOrder,
}

impl IntersectionProblem {
    pub fn new(
        f: MultiPoly,
        g: Option<MultiPoly>,
        ideal: Vec<MultiPoly>,
        order: MonomialOrder,
    ) -> Result<IntersectionProblem, IntersectionError> {
        if ideal.is_empty() {
            return Err(IntersectionError::EmptyIdeal);
        }
        let ring = f.ring().clone();
        let all_match = ideal.iter().all(|h| h.same_ring(&f))
            && g.as_ref().map_or(true, |g| g.same_ring(&f));
        if !all_match {
            return Err(IntersectionError::RingMismatch);
        }
        Ok(IntersectionProblem {
            ring,
            f,
            g,
            ideal,
            order,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    fn combined_generators(&self) -> Vec<MultiPoly> {
        let mut gens = self.ideal.clone();
        gens.push(self.f.clone());
        if let Some(g) = &self.g {
            gens.push(g.clone());
        }
        gens
    }

    /// Vector-space dimension of the quotient by ideal + Koszul side, i.e.
    /// the length of the plain tensor product.
    pub fn tensor_length(&self) -> Result<usize, IntersectionError> {
        let gb = buchberger(&self.combined_generators(), self.order)?;
        match std_monomial_count_of(&gb)? {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => Err(IntersectionError::InfiniteQuotient),
        }
    }

    /// True iff every ring variable is nilpotent modulo ideal + Koszul side,
    /// so the whole length is concentrated at the origin.
    pub fn support_at_origin(&self) -> Result<bool, IntersectionError> {
        let gens = self.combined_generators();
        for v in 0..self.ring.nvars() {
            match is_nilpotent_mod(v, &gens, self.order) {
                Ok(true) => continue,
                Ok(false) => return Ok(false),
                Err(PolyError::InfiniteQuotient) => {
                    return Err(IntersectionError::InfiniteQuotient)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(true)
    }

    /// The homology lengths of the Koszul complex of the one- or two-element
    /// side, with coefficients in the quotient by the ideal.
    pub fn koszul_tor_lengths(&self) -> Result<TorProfile, IntersectionError> {
        let l0 = self.tensor_length()?;
        let (l1, l2) = match &self.g {
            None => {
                // 0 -> N -f-> N -> 0
                let l1 = ideal_quotient_dim(
                    &colon_ideal(&self.ideal, &self.f)?,
                    &self.ideal,
                    self.order,
                )?;
                (l1, 0)
            }
            Some(g) => {
                let l2 = {
                    let cf = colon_ideal(&self.ideal, &self.f)?;
                    let cg = colon_ideal(&self.ideal, g)?;
                    let both = ideal_intersection(&cf, &cg)?;
                    ideal_quotient_dim(&both, &self.ideal, self.order)?
                };
                let l1 = self.middle_homology_dim(g)?;
                (l1, l2)
            }
        };
        Ok(TorProfile {
            l0,
            l1,
            l2,
            chi: l0 as i64 - l1 as i64 + l2 as i64,
        })
    }

    /// dim of {(a,b) : a f + b g in J} modulo J*A^2 + A*(g,-f).
    fn middle_homology_dim(&self, g: &MultiPoly) -> Result<usize, IntersectionError> {
        let ring = &self.ring;
        // generators of K1 = {(a,b) : a f + b g in J}
        let mut list = vec![self.f.clone(), g.clone()];
        list.extend(self.ideal.iter().cloned());
        let syz = module_syzygies(&list)?;
        let k1: Vec<PolyVec> = syz
            .into_iter()
            .map(|t| PolyVec::new(vec![t[0].clone(), t[1].clone()]))
            .filter(|v| !v.is_zero())
            .collect();
        if k1.is_empty() {
            return Ok(0);
        }
        // boundary generators inside A^2
        let mut boundary: Vec<PolyVec> = vec![PolyVec::new(vec![g.clone(), self.f.neg()])];
        for h in &self.ideal {
            boundary.push(PolyVec::new(vec![h.clone(), MultiPoly::zero(ring)]));
            boundary.push(PolyVec::new(vec![MultiPoly::zero(ring), h.clone()]));
        }
        // present K1/boundary on the k1 generators
        let mut elems = k1.clone();
        elems.extend(boundary.iter().cloned());
        let syz2 = syzygies_of_vectors(&elems)?;
        let s = k1.len();
        let relations: Vec<PolyVec> = syz2
            .into_iter()
            .map(|v| PolyVec::new(v.comps()[..s].to_vec()))
            .filter(|v| !v.is_zero())
            .collect();
        match module_quotient_dim(&relations, s, self.order)? {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => Err(IntersectionError::InfiniteQuotient),
        }
    }

    /// The alternating sum alone.
    pub fn serre_chi(&self) -> Result<i64, IntersectionError> {
        Ok(self.koszul_tor_lengths()?.chi)
    }
}

/// Generators of the ideal quotient {a : a*f in J}.
pub fn colon_ideal(ideal: &[MultiPoly], f: &MultiPoly) -> Result<Vec<MultiPoly>, IntersectionError> {
    let mut list = vec![f.clone()];
    list.extend(ideal.iter().cloned());
    let syz = module_syzygies(&list)?;
    Ok(syz
        .into_iter()
        .map(|t| t[0].clone())
        .filter(|a| !a.is_zero())
        .collect())
}

/// Generators of the intersection of two ideals.
pub fn ideal_intersection(
    a: &[MultiPoly],
    b: &[MultiPoly],
) -> Result<Vec<MultiPoly>, IntersectionError> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let mut list = a.to_vec();
    list.extend(b.iter().cloned());
    let syz = module_syzygies(&list)?;
    let mut out = Vec::new();
    for t in syz {
        let mut w = MultiPoly::zero(a[0].ring());
        for (coef, gen) in t.iter().take(a.len()).zip(a) {
            w = w.add(&coef.mul(gen));
        }
        if !w.is_zero() {
            out.push(w);
        }
    }
    Ok(out)
}

/// dim over the base field of upper/lower for ideals lower subseteq upper,
/// via a presentation of the quotient on the generators of upper. Finite
/// whenever the quotient is a module over a finite-dimensional algebra.
pub fn ideal_quotient_dim(
    upper: &[MultiPoly],
    lower: &[MultiPoly],
    order: MonomialOrder,
) -> Result<usize, IntersectionError> {
    let upper: Vec<MultiPoly> = upper.iter().filter(|u| !u.is_zero()).cloned().collect();
    if upper.is_empty() {
        return Ok(0);
    }
    let mut list = upper.clone();
    list.extend(lower.iter().cloned());
    let syz = module_syzygies(&list)?;
    let s = upper.len();
    let relations: Vec<PolyVec> = syz
        .into_iter()
        .map(|t| PolyVec::new(t[..s].to_vec()))
        .filter(|v| !v.is_zero())
        .collect();
    match module_quotient_dim(&relations, s, order)? {
        QuotientDim::Finite(n) => Ok(n),
        QuotientDim::Infinite => Err(IntersectionError::InfiniteQuotient),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::polyring::parse_poly;

    fn q_ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::from_names(names, FieldSpec::Q)
    }

    #[test]
    fn transverse_lines() {
        let r = q_ring(&["x", "y"]);
        let p = IntersectionProblem::new(
            parse_poly(&r, "x").unwrap(),
            None,
            vec![parse_poly(&r, "y").unwrap()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let t = p.koszul_tor_lengths().unwrap();
        assert_eq!((t.l0, t.l1, t.l2, t.chi), (1, 0, 0, 1));
        assert!(p.support_at_origin().unwrap());
    }

    #[test]
    fn tangent_conic_and_line() {
        let r = q_ring(&["x", "y"]);
        let p = IntersectionProblem::new(
            parse_poly(&r, "y").unwrap(),
            None,
            vec![parse_poly(&r, "y-x^2").unwrap()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let t = p.koszul_tor_lengths().unwrap();
        assert_eq!((t.l0, t.l1, t.chi), (2, 0, 2));
    }

    #[test]
    fn support_moves_off_origin() {
        let r = q_ring(&["x", "y"]);
        let p = IntersectionProblem::new(
            parse_poly(&r, "x-1").unwrap(),
            None,
            vec![parse_poly(&r, "y").unwrap()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        assert!(!p.support_at_origin().unwrap());
    }

    #[test]
    fn infinite_quotient_is_an_error() {
        let r = q_ring(&["x", "y"]);
        let p = IntersectionProblem::new(
            parse_poly(&r, "x").unwrap(),
            None,
            vec![parse_poly(&r, "x").unwrap()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        assert_eq!(
            p.koszul_tor_lengths().unwrap_err(),
            IntersectionError::InfiniteQuotient
        );
    }
}

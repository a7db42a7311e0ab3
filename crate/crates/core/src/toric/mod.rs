//! Rational polyhedral cones and fans over an integer lattice: duality,
//! faces, smoothness, multiplicity, stellar subdivision, and resolution of
//! a fan to a smooth one.

pub mod dd;
mod nodal_cone;
mod resolve;

pub use nodal_cone::{cone_for_nodal_model, normal_form_2d};
pub use resolve::{
    replay_history, resolve_fan, resolve_fan_with_cap, star_subdivision, HistoryStepJson,
    SubdivisionHistory, SubdivisionStep,
};

use std::collections::BTreeSet;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    coords_in_saturation, lattice_index, smith_with_inverses, LatticeError, LatticeIndex,
    LatticeMatrix, LatticeVector, SmithData,
};

use dd::{polar, GeneratorSet};

/// Facet enumeration is exponential in the worst case; duals are guarded.
pub const DUAL_RANK_GUARD: usize = 8;
/// Resolution is guarded more tightly.
pub const RESOLVE_RANK_GUARD: usize = 6;
/// Cap on total subdivision steps; hitting it signals a bug.
pub const RESOLVE_STEP_CAP: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("rank {got} exceeds the guard of {limit} for this operation")]
    RankGuard { limit: usize, got: usize },
    #[error("ray is not primitive")]
    NotPrimitive,
    #[error("zero vector cannot be a ray")]
    ZeroRay,
    #[error("ray lies outside the support of the fan")]
    RayOutsideSupport,
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("operation requires a simplicial cone")]
    NonSimplicial,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("subdivision step cap of {0} exceeded")]
    IterationCap(u64),
    #[error("all exponents are zero")]
    AllExponentsZero,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A rational polyhedral cone, stored by its primitive extremal rays in
/// lexicographic order, with its polar description cached.
///
/// Cones built with [`Cone::from_rays`] are strictly convex. Duals of
/// non-full-dimensional cones contain lines; these are encoded as paired
/// opposite rays and flagged by [`Cone::has_lines`].
#[derive(Debug, Clone)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    dual_rays: Vec<LatticeVector>,
    dual_lineality: Vec<LatticeVector>,
    has_lines: bool,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays
    }
}
impl Eq for Cone {}

impl Cone {
    /// Builds the cone spanned by `gens`, canonicalizing to primitive
    /// extremal rays. Fails if the cone contains a line.
    pub fn from_rays(rank: usize, gens: &[LatticeVector]) -> Result<Cone, ToricError> {
        let c = Cone::from_generators_allowing_lines(rank, gens)?;
        if c.has_lines {
            return Err(ToricError::NotStrictlyConvex);
        }
        Ok(c)
    }

    fn from_generators_allowing_lines(
        rank: usize,
        gens: &[LatticeVector],
    ) -> Result<Cone, ToricError> {
        let mut prims: Vec<LatticeVector> = Vec::new();
        for g in gens {
            if g.rank() != rank {
                return Err(ToricError::InvalidFan(
                    "generator rank differs from ambient rank".into(),
                ));
            }
            if let Some(p) = g.primitive() {
                if !prims.contains(&p) {
                    prims.push(p);
                }
            }
        }
        // polar of the generators, then polar again for the canonical
        // extremal generator set
        let dual = polar(&prims, rank);
        let strictly_convex = {
            let mut all = dual.rays.clone();
            all.extend(dual.lineality.iter().cloned());
            if all.is_empty() {
                rank == 0
            } else {
                LatticeMatrix::from_rows(&all)
                    .map(|m| m.rank() == rank)
                    .unwrap_or(rank == 0)
            }
        };
        let mut constraints = dual.rays.clone();
        for l in &dual.lineality {
            constraints.push(l.clone());
            constraints.push(l.neg());
        }
        let canonical = polar(&constraints, rank);
        let mut rays = canonical.rays;
        for l in &canonical.lineality {
            rays.push(l.clone());
            rays.push(l.neg());
        }
        rays.sort();
        Ok(Cone {
            rank,
            rays,
            dual_rays: dual.rays,
            dual_lineality: dual.lineality,
            has_lines: !strictly_convex,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn has_lines(&self) -> bool {
        self.has_lines
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            LatticeMatrix::from_rows(&self.rays).expect("nonempty").rank()
        }
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// The polar cone `{m : <m, n> >= 0 for all n here}`. Lines in the
    /// result (present when this cone is not full-dimensional) appear as
    /// paired opposite rays.
    pub fn dual(&self) -> Result<Cone, ToricError> {
        if self.rank > DUAL_RANK_GUARD {
            return Err(ToricError::RankGuard {
                limit: DUAL_RANK_GUARD,
                got: self.rank,
            });
        }
        let mut gens = self.dual_rays.clone();
        for l in &self.dual_lineality {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        Cone::from_generators_allowing_lines(self.rank, &gens)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        if v.rank() != self.rank {
            return false;
        }
        self.dual_rays.iter().all(|f| f.dot(v) >= BigInt::zero())
            && self.dual_lineality.iter().all(|l| l.dot(v).is_zero())
    }

    /// Nonsingularity: simplicial and the rays extend to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        self.is_simplicial()
            && lattice_index(&self.rays)
                .map(|i| i.is_one())
                .unwrap_or(false)
    }

    /// Index of the sublattice spanned by the rays inside its saturation;
    /// 1 exactly when the cone is smooth. Requires a simplicial cone.
    pub fn multiplicity(&self) -> Result<BigInt, ToricError> {
        if self.rays.is_empty() {
            return Ok(BigInt::one());
        }
        if !self.is_simplicial() {
            return Err(ToricError::NonSimplicial);
        }
        match lattice_index(&self.rays)? {
            LatticeIndex::Finite(n) => Ok(n),
            LatticeIndex::Infinite => Err(ToricError::Internal(
                "saturation index cannot be infinite".into(),
            )),
        }
    }

    /// Smith data of the ray matrix, for span-coordinate work.
    pub(crate) fn span_data(&self) -> Result<(SmithData, Vec<LatticeVector>), ToricError> {
        let m = LatticeMatrix::from_rows(&self.rays)?;
        let s = smith_with_inverses(&m)?;
        let basis = crate::lattice::saturation_basis(&m)?;
        Ok((s, basis))
    }

    /// Facets as sorted ray-index lists, computed in the saturated span.
    pub fn facets(&self) -> Result<Vec<Vec<usize>>, ToricError> {
        if self.rays.is_empty() {
            return Ok(vec![]);
        }
        let (smith, basis) = self.span_data()?;
        let d = basis.len();
        let restricted: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| {
                coords_in_saturation(&smith, r)
                    .map(LatticeVector::new)
                    .ok_or_else(|| ToricError::Internal("ray outside its own span".into()))
            })
            .collect::<Result<_, _>>()?;
        let p = polar(&restricted, d);
        if !p.lineality.is_empty() {
            return Err(ToricError::NotStrictlyConvex);
        }
        let mut facets: Vec<Vec<usize>> = p
            .rays
            .iter()
            .map(|f| {
                (0..restricted.len())
                    .filter(|&i| f.dot(&restricted[i]).is_zero())
                    .collect()
            })
            .collect();
        facets.sort();
        facets.dedup();
        Ok(facets)
    }

    /// Ray indices of the smallest face containing all of `vecs`; the
    /// vectors must lie in the cone.
    pub fn smallest_face_containing(
        &self,
        vecs: &[LatticeVector],
    ) -> Result<Vec<usize>, ToricError> {
        for v in vecs {
            if !self.contains(v) {
                return Err(ToricError::Internal(
                    "face query with a vector outside the cone".into(),
                ));
            }
        }
        let mut mhat = LatticeVector::zero(self.rank);
        for f in &self.dual_rays {
            if vecs.iter().all(|v| f.dot(v).is_zero()) {
                mhat = mhat.add(f);
            }
        }
        Ok((0..self.rays.len())
            .filter(|&i| mhat.dot(&self.rays[i]).is_zero())
            .collect())
    }
}

/// Extremal rays of the intersection of two strictly convex cones.
pub fn cone_intersection(a: &Cone, b: &Cone) -> Result<Vec<LatticeVector>, ToricError> {
    assert_eq!(a.rank, b.rank);
    let mut constraints: Vec<LatticeVector> = Vec::new();
    for c in [a, b] {
        constraints.extend(c.dual_rays.iter().cloned());
        for l in &c.dual_lineality {
            constraints.push(l.clone());
            constraints.push(l.neg());
        }
    }
    let g: GeneratorSet = polar(&constraints, a.rank);
    if !g.lineality.is_empty() {
        return Err(ToricError::NotStrictlyConvex);
    }
    Ok(g.rays)
}

/// A fan: a global list of primitive rays in lexicographic order, and
/// maximal cones as sorted ray-index lists. Pairwise intersections are
/// faces of both sides; this is validated at construction.
#[derive(Debug, Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
    built: Vec<Cone>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}
impl Eq for Fan {}

impl Fan {
    pub fn new(
        rank: usize,
        rays: Vec<LatticeVector>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, ToricError> {
        let fan = Fan::assemble(rank, rays, cones)?;
        fan.validate()?;
        Ok(fan)
    }

    /// Canonicalizes and builds the per-cone data without the quadratic
    /// face validation; used internally where validity is preserved by
    /// construction.
    pub(crate) fn assemble(
        rank: usize,
        rays: Vec<LatticeVector>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, ToricError> {
        for r in &rays {
            if r.rank() != rank {
                return Err(ToricError::InvalidFan("ray of wrong rank".into()));
            }
            if r.is_zero() {
                return Err(ToricError::ZeroRay);
            }
            if !r.is_primitive() {
                return Err(ToricError::NotPrimitive);
            }
        }
        // canonical global ray order
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&i, &j| rays[i].cmp(&rays[j]));
        let mut sorted = Vec::with_capacity(rays.len());
        let mut remap = vec![0usize; rays.len()];
        for (new_i, &old_i) in order.iter().enumerate() {
            remap[old_i] = new_i;
            sorted.push(rays[old_i].clone());
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(ToricError::InvalidFan("duplicate rays".into()));
        }
        let mut new_cones: Vec<Vec<usize>> = Vec::new();
        for c in &cones {
            let mut idx: Vec<usize> = c
                .iter()
                .map(|&i| {
                    if i < rays.len() {
                        Ok(remap[i])
                    } else {
                        Err(ToricError::InvalidFan(format!("ray index {i} out of range")))
                    }
                })
                .collect::<Result<_, _>>()?;
            idx.sort_unstable();
            idx.dedup();
            new_cones.push(idx);
        }
        new_cones.sort();
        new_cones.dedup();
        let built: Vec<Cone> = new_cones
            .iter()
            .map(|c| {
                let gens: Vec<LatticeVector> = c.iter().map(|&i| sorted[i].clone()).collect();
                Cone::from_rays(rank, &gens)
            })
            .collect::<Result<_, _>>()?;
        // listed rays must be the extremal rays of their cones
        for (c, cone) in new_cones.iter().zip(&built) {
            if cone.rays().len() != c.len() {
                return Err(ToricError::InvalidFan(
                    "cone ray list contains non-extremal rays".into(),
                ));
            }
        }
        Ok(Fan {
            rank,
            rays: sorted,
            cones: new_cones,
            built,
        })
    }

    /// Pairwise face compatibility and maximality of the listed cones.
    pub fn validate(&self) -> Result<(), ToricError> {
        for i in 0..self.built.len() {
            for j in i + 1..self.built.len() {
                let a = &self.built[i];
                let b = &self.built[j];
                let inter = cone_intersection(a, b)?;
                for (label, cone) in [("first", a), ("second", b)] {
                    let face = cone.smallest_face_containing(&inter)?;
                    let face_rays: BTreeSet<&LatticeVector> =
                        face.iter().map(|&k| &cone.rays()[k]).collect();
                    let inter_set: BTreeSet<&LatticeVector> = inter.iter().collect();
                    if face_rays != inter_set {
                        return Err(ToricError::InvalidFan(format!(
                            "cones {i} and {j} intersect in a non-face of the {label}"
                        )));
                    }
                }
                let swallowed = |c: &Cone| {
                    inter.len() == c.rays().len() && c.rays().iter().all(|r| inter.contains(r))
                };
                if swallowed(a) || swallowed(b) {
                    return Err(ToricError::InvalidFan(format!(
                        "cones {i} and {j} are nested; listed cones must be maximal"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.built[i]
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn support_contains(&self, v: &LatticeVector) -> bool {
        self.built.iter().any(|c| c.contains(v))
    }

    pub fn is_smooth(&self) -> bool {
        self.built.iter().all(|c| c.is_smooth())
    }

    pub fn is_simplicial(&self) -> bool {
        self.built.iter().all(|c| c.is_simplicial())
    }

    /// True iff every maximal cone here is contained in some maximal cone
    /// of `coarser` (the usual refinement relation, given equal support).
    pub fn refines(&self, coarser: &Fan) -> bool {
        self.built.iter().all(|c| {
            coarser
                .built
                .iter()
                .any(|big| c.rays().iter().all(|r| big.contains(r)))
        })
    }
}

// ---- JSON wire format ------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn to_json(&self) -> Result<FanJson, ToricError> {
        let rays = self
            .rays
            .iter()
            .map(|r| {
                r.entries()
                    .iter()
                    .map(|x| {
                        i64::try_from(x.clone()).map_err(|_| {
                            ToricError::InvalidFan("ray entry exceeds 64-bit range".into())
                        })
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(FanJson {
            rank: self.rank,
            rays,
            cones: self.cones.clone(),
        })
    }

    pub fn from_json(j: &FanJson) -> Result<Fan, ToricError> {
        let rays: Vec<LatticeVector> = j.rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Fan::new(j.rank, rays, j.cones.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(e: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(e)
    }

    #[test]
    fn first_quadrant_self_dual() {
        let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.rays(), c.rays());
        assert!(c.is_smooth());
    }

    #[test]
    fn skew_cone_dual() {
        let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.rays(), &[lv(&[0, 1]), lv(&[2, -1])]);
        let dd = d.dual().unwrap();
        assert_eq!(dd, c);
    }

    #[test]
    fn zero_cone_dual_is_everything() {
        let c = Cone::from_rays(2, &[]).unwrap();
        let d = c.dual().unwrap();
        assert!(d.has_lines());
        assert_eq!(
            d.rays(),
            &[lv(&[-1, 0]), lv(&[0, -1]), lv(&[0, 1]), lv(&[1, 0])]
        );
    }

    #[test]
    fn line_is_rejected() {
        let res = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0])]);
        assert_eq!(res.unwrap_err(), ToricError::NotStrictlyConvex);
    }

    #[test]
    fn redundant_generator_dropped() {
        let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 1]), lv(&[0, 1])]).unwrap();
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn smoothness_examples() {
        let quadric = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        assert!(!quadric.is_smooth());
        assert_eq!(quadric.multiplicity().unwrap(), BigInt::from(2));

        let square = Cone::from_rays(
            3,
            &[lv(&[0, 0, 1]), lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[1, 1, 1])],
        )
        .unwrap();
        assert!(!square.is_smooth());
        assert!(!square.is_simplicial());
        assert_eq!(square.multiplicity().unwrap_err(), ToricError::NonSimplicial);

        let mult2 = Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 2])]).unwrap();
        assert_eq!(mult2.multiplicity().unwrap(), BigInt::from(2));

        for n in 1..=50i64 {
            let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, n])]).unwrap();
            assert_eq!(c.multiplicity().unwrap(), BigInt::from(n));
        }
    }

    #[test]
    fn facets_of_square_cone() {
        let square = Cone::from_rays(
            3,
            &[lv(&[0, 0, 1]), lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[1, 1, 1])],
        )
        .unwrap();
        let facets = square.facets().unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            assert_eq!(f.len(), 2);
        }
    }

    #[test]
    fn containment() {
        let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        assert!(c.contains(&lv(&[1, 1])));
        assert!(c.contains(&lv(&[1, 0])));
        assert!(!c.contains(&lv(&[0, 1])));
        assert!(!c.contains(&lv(&[-1, 0])));
    }

    #[test]
    fn projective_plane_fan_is_valid_and_smooth() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
        let cones = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let fan = Fan::new(2, rays, cones).unwrap();
        assert!(fan.is_smooth());
        assert!(fan.support_contains(&lv(&[5, -3])));
    }

    #[test]
    fn overlapping_cones_rejected() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])];
        // two full quadrant-ish cones overlapping in a 2-dim region
        let cones = vec![vec![0, 1], vec![0, 2]];
        assert!(Fan::new(2, rays, cones).is_err());
    }

    #[test]
    fn json_round_trip() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
        let cones = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let fan = Fan::new(2, rays, cones).unwrap();
        let j = fan.to_json().unwrap();
        let back = Fan::from_json(&j).unwrap();
        assert_eq!(fan, back);
    }
}

//! Stellar subdivision of fans and the resolution loop that refines a fan
//! until every cone is nonsingular.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{coords_in_saturation, smith_with_inverses, LatticeMatrix, LatticeVector};

use super::{Cone, Fan, ToricError, RESOLVE_RANK_GUARD, RESOLVE_STEP_CAP};

/// One subdivision step: the inserted ray and the indices (in the fan it
/// was applied to) of the maximal cones it replaced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionStep {
    pub ray: LatticeVector,
    pub replaced: Vec<usize>,
}

/// Replaying the recorded steps on the input fan reproduces the output fan
/// exactly; see [`replay_history`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubdivisionHistory {
    pub steps: Vec<SubdivisionStep>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HistoryStepJson {
    pub ray: Vec<i64>,
    pub replaced: Vec<usize>,
}

impl SubdivisionHistory {
    pub fn to_json(&self) -> Result<Vec<HistoryStepJson>, ToricError> {
        self.steps
            .iter()
            .map(|s| {
                let ray = s
                    .ray
                    .entries()
                    .iter()
                    .map(|x| {
                        i64::try_from(x.clone()).map_err(|_| {
                            ToricError::InvalidFan("ray entry exceeds 64-bit range".into())
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Ok(HistoryStepJson {
                    ray,
                    replaced: s.replaced.clone(),
                })
            })
            .collect()
    }

    pub fn from_json(steps: &[HistoryStepJson]) -> SubdivisionHistory {
        SubdivisionHistory {
            steps: steps
                .iter()
                .map(|s| SubdivisionStep {
                    ray: LatticeVector::from_i64(&s.ray),
                    replaced: s.replaced.clone(),
                })
                .collect(),
        }
    }
}

/// Stellar subdivision at `ray`: every maximal cone containing the ray is
/// replaced by the joins of the ray with its facets not containing it.
/// The result refines the input with identical support.
pub fn star_subdivision(fan: &Fan, ray: &LatticeVector) -> Result<(Fan, SubdivisionStep), ToricError> {
    if ray.is_zero() {
        return Err(ToricError::ZeroRay);
    }
    if !ray.is_primitive() {
        return Err(ToricError::NotPrimitive);
    }
    let affected: Vec<usize> = (0..fan.num_cones())
        .filter(|&i| fan.cone(i).contains(ray))
        .collect();
    if affected.is_empty() {
        return Err(ToricError::RayOutsideSupport);
    }

    let mut new_rays: Vec<LatticeVector> = fan.rays().to_vec();
    if !new_rays.contains(ray) {
        new_rays.push(ray.clone());
    }
    let ray_index_of = |v: &LatticeVector, rays: &[LatticeVector]| -> usize {
        rays.iter().position(|r| r == v).expect("known ray")
    };

    let mut new_cones: Vec<Vec<usize>> = Vec::new();
    for i in 0..fan.num_cones() {
        if !affected.contains(&i) {
            new_cones.push(
                fan.cones()[i]
                    .iter()
                    .map(|&k| ray_index_of(&fan.rays()[k], &new_rays))
                    .collect(),
            );
            continue;
        }
        let cone = fan.cone(i);
        let pieces = subdivide_cone(cone, ray)?;
        for piece in pieces {
            new_cones.push(
                piece
                    .iter()
                    .map(|v| ray_index_of(v, &new_rays))
                    .collect(),
            );
        }
    }
    let out = Fan::assemble(fan.rank(), new_rays, new_cones)?;
    Ok((
        out,
        SubdivisionStep {
            ray: ray.clone(),
            replaced: affected,
        },
    ))
}

/// The maximal cones of the stellar subdivision of a single cone: joins of
/// `ray` with the facets that do not contain it.
fn subdivide_cone(cone: &Cone, ray: &LatticeVector) -> Result<Vec<Vec<LatticeVector>>, ToricError> {
    let (smith, _basis) = cone.span_data()?;
    let ray_coords = coords_in_saturation(&smith, ray)
        .map(LatticeVector::new)
        .ok_or_else(|| ToricError::Internal("ray contained but outside span".into()))?;
    let restricted: Vec<LatticeVector> = cone
        .rays()
        .iter()
        .map(|r| {
            coords_in_saturation(&smith, r)
                .map(LatticeVector::new)
                .ok_or_else(|| ToricError::Internal("cone ray outside its span".into()))
        })
        .collect::<Result<_, _>>()?;
    let d = restricted.first().map(|v| v.rank()).unwrap_or(0);
    let p = super::dd::polar(&restricted, d);
    if !p.lineality.is_empty() {
        return Err(ToricError::NotStrictlyConvex);
    }
    let mut pieces = Vec::new();
    for normal in &p.rays {
        if normal.dot(&ray_coords).is_zero() {
            continue; // facet contains the ray
        }
        let mut gens: Vec<LatticeVector> = (0..cone.rays().len())
            .filter(|&i| normal.dot(&restricted[i]).is_zero())
            .map(|i| cone.rays()[i].clone())
            .collect();
        gens.push(ray.clone());
        pieces.push(gens);
    }
    if pieces.is_empty() {
        // zero-dimensional facet set: the cone is the ray itself
        pieces.push(vec![ray.clone()]);
    }
    Ok(pieces)
}

/// Applies recorded steps in order, checking that each step replaces the
/// cones it recorded.
pub fn replay_history(input: &Fan, history: &SubdivisionHistory) -> Result<Fan, ToricError> {
    let mut fan = input.clone();
    for (n, step) in history.steps.iter().enumerate() {
        let (next, applied) = star_subdivision(&fan, &step.ray)?;
        if applied.replaced != step.replaced {
            return Err(ToricError::Internal(format!(
                "replay step {n} replaced cones {:?}, recorded {:?}",
                applied.replaced, step.replaced
            )));
        }
        fan = next;
    }
    Ok(fan)
}

/// Multiset of multiplicities of all maximal cones, descending.
fn multiplicity_profile(fan: &Fan) -> Result<Vec<BigInt>, ToricError> {
    let mut v: Vec<BigInt> = (0..fan.num_cones())
        .map(|i| fan.cone(i).multiplicity())
        .collect::<Result<_, _>>()?;
    v.sort();
    v.reverse();
    Ok(v)
}

/// Dershowitz-Manna multiset decrease: something was removed, and every
/// added element is smaller than some removed element.
fn multiset_strictly_decreased(before: &[BigInt], after: &[BigInt]) -> bool {
    let mut removed = before.to_vec();
    let mut added: Vec<BigInt> = Vec::new();
    for x in after {
        if let Some(pos) = removed.iter().position(|y| y == x) {
            removed.remove(pos);
        } else {
            added.push(x.clone());
        }
    }
    if removed.is_empty() {
        return false;
    }
    let max_removed = removed.iter().max().unwrap();
    added.iter().all(|a| a < max_removed)
}

/// Refines `fan` until every maximal cone is nonsingular: first stellar
/// subdivisions at existing rays until every cone is simplicial, then
/// repeated insertion of fundamental-parallelepiped points of the worst
/// cone. Deterministic; the returned history replays to the output.
pub fn resolve_fan(fan: &Fan) -> Result<(Fan, SubdivisionHistory), ToricError> {
    resolve_fan_with_cap(fan, RESOLVE_STEP_CAP)
}

/// [`resolve_fan`] with a configurable step cap.
pub fn resolve_fan_with_cap(
    fan: &Fan,
    step_cap: u64,
) -> Result<(Fan, SubdivisionHistory), ToricError> {
    if fan.rank() > RESOLVE_RANK_GUARD {
        return Err(ToricError::RankGuard {
            limit: RESOLVE_RANK_GUARD,
            got: fan.rank(),
        });
    }
    let mut current = fan.clone();
    let mut history = SubdivisionHistory::default();
    let mut steps: u64 = 0;

    // phase one: make every cone simplicial by pulling at existing rays
    loop {
        let mut changed = false;
        for ray in current.rays().to_vec() {
            let needs = (0..current.num_cones())
                .any(|i| !current.cone(i).is_simplicial() && current.cone(i).contains(&ray));
            if !needs {
                continue;
            }
            let (next, step) = star_subdivision(&current, &ray)?;
            steps += 1;
            if steps > step_cap {
                return Err(ToricError::IterationCap(step_cap));
            }
            if next != current {
                history.steps.push(step);
                current = next;
                changed = true;
            }
        }
        if current.is_simplicial() {
            break;
        }
        if !changed {
            return Err(ToricError::Internal(
                "simplicialization made no progress".into(),
            ));
        }
    }

    // phase two: insert parallelepiped points until smooth
    loop {
        let worst = match worst_singular_cone(&current)? {
            None => break,
            Some(i) => i,
        };
        let point = parallelepiped_insertion_point(current.cone(worst))?;
        let before = multiplicity_profile(&current)?;
        let (next, step) = star_subdivision(&current, &point)?;
        let after = multiplicity_profile(&next)?;
        if !multiset_strictly_decreased(&before, &after) {
            return Err(ToricError::Internal(
                "termination certificate failed: multiplicities did not drop".into(),
            ));
        }
        history.steps.push(step);
        current = next;
        steps += 1;
        if steps > step_cap {
            return Err(ToricError::IterationCap(step_cap));
        }
    }
    Ok((current, history))
}

/// Index of the non-smooth cone with the largest multiplicity, ties broken
/// by the lexicographically smallest sorted ray list.
fn worst_singular_cone(fan: &Fan) -> Result<Option<usize>, ToricError> {
    let mut best: Option<(BigInt, Vec<LatticeVector>, usize)> = None;
    for i in 0..fan.num_cones() {
        let cone = fan.cone(i);
        if cone.is_smooth() {
            continue;
        }
        let m = cone.multiplicity()?;
        let rays = cone.rays().to_vec();
        let better = match &best {
            None => true,
            Some((bm, brays, _)) => m > *bm || (m == *bm && rays < *brays),
        };
        if better {
            best = Some((m, rays, i));
        }
    }
    Ok(best.map(|(_, _, i)| i))
}

/// The lattice point of the half-open fundamental parallelepiped of a
/// simplicial cone with the smallest coefficient sum, ties broken by
/// lexicographic order on the ambient vector.
fn parallelepiped_insertion_point(cone: &Cone) -> Result<LatticeVector, ToricError> {
    if !cone.is_simplicial() {
        return Err(ToricError::NonSimplicial);
    }
    let d = cone.rays().len();
    let (smith, basis) = cone.span_data()?;
    let restricted: Vec<Vec<BigInt>> = cone
        .rays()
        .iter()
        .map(|r| {
            coords_in_saturation(&smith, r)
                .ok_or_else(|| ToricError::Internal("ray outside span".into()))
        })
        .collect::<Result<_, _>>()?;
    let rmat = LatticeMatrix::new(d, d, restricted.concat())?;
    let det = rmat.det();
    if det.is_zero() {
        return Err(ToricError::Internal("simplicial cone with singular ray matrix".into()));
    }
    // rational inverse of the ray matrix, for coefficient vectors
    let rinv = rational_inverse(&rmat);
    let snf = smith_with_inverses(&rmat)?;
    let diag: Vec<BigInt> = (0..d).map(|i| snf.d.at(i, i).clone()).collect();
    for x in &diag {
        if x.is_zero() {
            return Err(ToricError::Internal("zero invariant in parallelepiped".into()));
        }
    }
    let mult: BigInt = diag.iter().product();

    // enumerate coset representatives c . v_inv of the quotient by the row
    // lattice, reduce into the half-open parallelepiped
    let mut candidates: Vec<(BigRational, LatticeVector, LatticeVector)> = Vec::new();
    let mut counter = vec![BigInt::zero(); d];
    let mut seen = BTreeSet::new();
    'outer: loop {
        let rep = LatticeMatrix::vec_mul(
            &LatticeVector::new(counter.clone()),
            &snf.v_inv,
        );
        // coefficients of the representative in the ray basis
        let lambda: Vec<BigRational> = (0..d)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, x) in rep.entries().iter().enumerate() {
                    acc += BigRational::from_integer(x.clone()) * rinv[i][j].clone();
                }
                acc
            })
            .collect();
        let floors: Vec<BigInt> = lambda.iter().map(|q| q.floor().to_integer()).collect();
        let shift = LatticeMatrix::vec_mul(&LatticeVector::new(floors.clone()), &rmat);
        let point_span = rep.add(&shift.neg());
        if !point_span.is_zero() && seen.insert(point_span.clone()) {
            let fracs: Vec<BigRational> = lambda
                .iter()
                .zip(&floors)
                .map(|(q, f)| q - BigRational::from_integer(f.clone()))
                .collect();
            let sum: BigRational = fracs.iter().cloned().sum();
            debug_assert!(fracs.iter().all(|f| !f.is_negative() && *f < BigRational::one()));
            // lift back to the ambient lattice
            let mut ambient = LatticeVector::zero(cone.rank());
            for (c, b) in point_span.entries().iter().zip(&basis) {
                ambient = ambient.add(&b.scale(c));
            }
            candidates.push((sum, ambient, point_span));
        }
        // odometer over the diagonal box
        for i in 0..d {
            counter[i] += 1;
            if counter[i] < diag[i] {
                continue 'outer;
            }
            counter[i] = BigInt::zero();
        }
        break;
    }
    let expected = &mult - BigInt::one();
    if BigInt::from(candidates.len()) != expected {
        return Err(ToricError::Internal(format!(
            "parallelepiped enumeration found {} points, expected {}",
            candidates.len(),
            expected
        )));
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let chosen = candidates
        .first()
        .ok_or_else(|| ToricError::Internal("smooth cone has no insertion point".into()))?;
    let point = chosen.1.clone();
    if !point.is_primitive() {
        return Err(ToricError::Internal(
            "minimal-sum parallelepiped point is imprimitive".into(),
        ));
    }
    Ok(point)
}

fn rational_inverse(m: &LatticeMatrix) -> Vec<Vec<BigRational>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(m.at(i, j).clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("invertible matrix");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let t = a[col][j].clone() * f.clone();
                a[i][j] -= t;
                let t = inv[col][j].clone() * f.clone();
                inv[i][j] -= t;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(e: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(e)
    }

    fn single_cone_fan(rays: &[LatticeVector]) -> Fan {
        let idx: Vec<usize> = (0..rays.len()).collect();
        Fan::new(rays[0].rank(), rays.to_vec(), vec![idx]).unwrap()
    }

    #[test]
    fn barycentric_split_of_smooth_quadrant() {
        let fan = single_cone_fan(&[lv(&[1, 0]), lv(&[0, 1])]);
        let (out, step) = star_subdivision(&fan, &lv(&[1, 1])).unwrap();
        assert_eq!(step.replaced, vec![0]);
        assert_eq!(out.num_cones(), 2);
        assert!(out.is_smooth());
        let ray_sets: Vec<Vec<LatticeVector>> = (0..2).map(|i| out.cone(i).rays().to_vec()).collect();
        assert!(ray_sets.contains(&vec![lv(&[0, 1]), lv(&[1, 1])]));
        assert!(ray_sets.contains(&vec![lv(&[1, 0]), lv(&[1, 1])]));
    }

    #[test]
    fn square_cone_splits_at_corner_ray() {
        // the cone over the unit square, subdivided at one of its own rays
        let fan = single_cone_fan(&[
            lv(&[0, 0, 1]),
            lv(&[1, 0, 1]),
            lv(&[0, 1, 1]),
            lv(&[1, 1, 1]),
        ]);
        let (out, _) = star_subdivision(&fan, &lv(&[1, 0, 1])).unwrap();
        assert_eq!(out.num_cones(), 2);
        assert!(out.is_simplicial());
    }

    #[test]
    fn quadric_cone_splits_at_interior_point() {
        let fan = single_cone_fan(&[lv(&[1, 0]), lv(&[1, 2])]);
        let (out, _) = star_subdivision(&fan, &lv(&[1, 1])).unwrap();
        assert_eq!(out.num_cones(), 2);
        assert!(out.is_smooth());
    }

    #[test]
    fn subdivision_preconditions() {
        let fan = single_cone_fan(&[lv(&[1, 0]), lv(&[0, 1])]);
        assert_eq!(
            star_subdivision(&fan, &lv(&[2, 2])).unwrap_err(),
            ToricError::NotPrimitive
        );
        assert_eq!(
            star_subdivision(&fan, &lv(&[-1, 0])).unwrap_err(),
            ToricError::RayOutsideSupport
        );
    }

    #[test]
    fn smooth_fan_resolves_to_itself() {
        let rays = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
        let cones = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let fan = Fan::new(2, rays, cones).unwrap();
        let (out, history) = resolve_fan(&fan).unwrap();
        assert_eq!(out, fan);
        assert!(history.steps.is_empty());
    }

    #[test]
    fn quadric_cone_resolution() {
        let fan = single_cone_fan(&[lv(&[1, 0]), lv(&[1, 2])]);
        let (out, history) = resolve_fan(&fan).unwrap();
        assert!(out.is_smooth());
        assert_eq!(history.steps.len(), 1);
        assert_eq!(history.steps[0].ray, lv(&[1, 1]));
        assert_eq!(out.num_cones(), 2);
        let replayed = replay_history(&fan, &history).unwrap();
        assert_eq!(replayed, out);
    }

    #[test]
    fn rank_guard() {
        let rays: Vec<LatticeVector> = (0..7)
            .map(|i| {
                let mut e = vec![0i64; 7];
                e[i] = 1;
                lv(&e)
            })
            .collect();
        let fan = Fan::new(7, rays.clone(), vec![(0..7).collect()]).unwrap();
        assert!(matches!(
            resolve_fan(&fan).unwrap_err(),
            ToricError::RankGuard { .. }
        ));
    }
}

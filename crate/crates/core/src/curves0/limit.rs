//! Stable limits of marked projective lines over a field with a t-adic
//! place: normalize the first three markings to 0, 1, infinity, then
//! cluster markings by their residues, recentering and rescaling each
//! cluster onto a child line until all markings separate.

use std::collections::BTreeMap;

use crate::arith::K;
use crate::valued::{Elem, Place, RatFun};

use super::{cross_ratio, CurvesError, MarkedTree, Positions, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum ResidueKey {
    Finite(K),
    Infinite,
}

struct Builder {
    next_vertex: usize,
    edges: Vec<(usize, usize)>,
    marking_vertex: BTreeMap<u32, usize>,
    marking_pos: BTreeMap<u32, ProjPoint<K>>,
    edge_pos: Vec<(ProjPoint<K>, ProjPoint<K>)>,
}

/// The special fiber of the stable model of distinct marked points on the
/// projective line over `k(t)`, as a marked tree with residue positions.
/// The normalization basis is always the first three markings.
pub fn stable_limit(
    place: &Place,
    points: &[ProjPoint<RatFun>],
) -> Result<MarkedTree, CurvesError> {
    let field = match place {
        Place::TAdic(f) => *f,
        Place::PAdic(_) => return Err(CurvesError::NonComputableValuation),
    };
    let n = points.len();
    if n < 3 {
        return Err(CurvesError::TooFewMarkings(3));
    }
    for p in points {
        if p.numerator().field() != field {
            return Err(CurvesError::InvalidTree(
                "points do not live over this place's field".into(),
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i].det(&points[j]).is_zero() {
                return Err(CurvesError::CoincidentPoints);
            }
        }
    }
    // send the first three markings to 0, 1, infinity
    let normalized: Vec<(u32, ProjPoint<RatFun>)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok((
                i as u32 + 1,
                cross_ratio(&points[0], &points[1], &points[2], p)?,
            ))
        })
        .collect::<Result<_, CurvesError>>()?;

    let mut builder = Builder {
        next_vertex: 0,
        edges: Vec::new(),
        marking_vertex: BTreeMap::new(),
        marking_pos: BTreeMap::new(),
        edge_pos: Vec::new(),
    };
    build_vertex(place, field, &normalized, false, &mut builder)?;

    let tree = MarkedTree::new(
        builder.next_vertex,
        builder.edges,
        builder.marking_vertex,
        Some(Positions {
            markings: builder.marking_pos,
            edge_ends: builder.edge_pos,
        }),
    )?;
    assert!(tree.is_stable(), "stable limit must be stable");
    Ok(tree)
}

fn residue_key(
    place: &Place,
    p: &ProjPoint<RatFun>,
) -> Result<ResidueKey, CurvesError> {
    if p.is_infinity() {
        return Ok(ResidueKey::Infinite);
    }
    let v = place
        .valuation(&Elem::Fun(p.numerator().clone()))
        .expect("t-adic element");
    match v {
        Some(v) if v < 0 => Ok(ResidueKey::Infinite),
        _ => {
            let r = place
                .residue(&Elem::Fun(p.numerator().clone()))
                .expect("nonnegative valuation");
            Ok(ResidueKey::Finite(r))
        }
    }
}

fn key_position(field: crate::arith::FieldSpec, key: &ResidueKey) -> ProjPoint<K> {
    match key {
        ResidueKey::Finite(k) => ProjPoint::affine(k.clone()),
        ResidueKey::Infinite => ProjPoint::infinity(&field.zero()),
    }
}

/// Builds one vertex: markings with a lone residue sit on it, residue
/// classes of two or more markings hang off it on child lines. Returns the
/// vertex id; when `parent` is given, the connecting edge was already
/// created by the caller.
fn build_vertex(
    place: &Place,
    field: crate::arith::FieldSpec,
    members: &[(u32, ProjPoint<RatFun>)],
    has_parent: bool,
    builder: &mut Builder,
) -> Result<usize, CurvesError> {
    let v = builder.next_vertex;
    builder.next_vertex += 1;

    let mut classes: BTreeMap<ResidueKey, Vec<(u32, ProjPoint<RatFun>)>> = BTreeMap::new();
    for (m, p) in members {
        classes
            .entry(residue_key(place, p)?)
            .or_default()
            .push((*m, p.clone()));
    }
    if has_parent {
        // the recursion keeps the parent direction at infinity; members
        // always have nonnegative valuation in the child chart
        assert!(
            !classes.contains_key(&ResidueKey::Infinite),
            "child chart members must have finite residues"
        );
        assert!(classes.len() >= 2, "child vertex fails to separate");
    }

    for (key, class) in classes {
        if class.len() == 1 {
            let (m, _) = class[0];
            builder.marking_vertex.insert(m, v);
            builder.marking_pos.insert(m, key_position(field, &key));
            continue;
        }
        // a cluster: move to an affine chart with positive valuations
        let affine: Vec<(u32, RatFun)> = class
            .iter()
            .map(|(m, p)| {
                let x = match &key {
                    ResidueKey::Infinite => p.flip().numerator().clone(),
                    ResidueKey::Finite(c) => {
                        let lift = RatFun::constant(c.clone());
                        p.numerator().sub(&lift)
                    }
                };
                (*m, x)
            })
            .collect();
        // recenter at the member of least marking, rescale by the least
        // pairwise valuation gap
        let x0 = affine[0].1.clone();
        let mut gap: Option<i64> = None;
        for i in 0..affine.len() {
            for j in i + 1..affine.len() {
                let d = affine[i].1.sub(&affine[j].1);
                let vd = place
                    .valuation(&Elem::Fun(d))
                    .expect("t-adic element")
                    .expect("distinct points");
                gap = Some(gap.map_or(vd, |g: i64| g.min(vd)));
            }
        }
        let s = gap.expect("cluster has at least two members");
        assert!(s >= 1, "cluster members share a residue");
        let scale = RatFun::var(field).pow(s as u32);
        let child_members: Vec<(u32, ProjPoint<RatFun>)> = affine
            .iter()
            .map(|(m, x)| (*m, ProjPoint::affine(x.sub(&x0).div(&scale))))
            .collect();

        // edge to the child; this end sits at the class residue, the child
        // end at infinity
        let here = key_position(field, &key);
        let child_inf = ProjPoint::infinity(&field.zero());
        let edge_index = builder.edges.len();
        builder.edges.push((v, usize::MAX)); // patched below
        builder.edge_pos.push((here, child_inf));
        let child = build_vertex(place, field, &child_members, true, builder)?;
        builder.edges[edge_index].1 = child;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    fn place() -> Place {
        Place::t_adic_q()
    }

    fn pt(s: &str) -> ProjPoint<RatFun> {
        if s == "inf" {
            ProjPoint::infinity(&RatFun::zero(FieldSpec::Q))
        } else {
            ProjPoint::affine(RatFun::parse(FieldSpec::Q, "t", s).unwrap())
        }
    }

    #[test]
    fn three_points_is_one_vertex() {
        let t = stable_limit(&place(), &[pt("0"), pt("1"), pt("inf")]).unwrap();
        assert_eq!(t.num_vertices(), 1);
        assert!(t.is_stable());
    }

    #[test]
    fn colliding_pair_splits_off() {
        // (0, 1, inf, t): marking 4 reduces to 0, joining marking 1
        let t = stable_limit(&place(), &[pt("0"), pt("1"), pt("inf"), pt("t")]).unwrap();
        assert_eq!(t.num_vertices(), 2);
        let v1 = t.marking_vertex(1).unwrap();
        let v4 = t.marking_vertex(4).unwrap();
        assert_eq!(v1, v4);
        let v2 = t.marking_vertex(2).unwrap();
        let v3 = t.marking_vertex(3).unwrap();
        assert_eq!(v2, v3);
        assert_ne!(v1, v2);
    }

    #[test]
    fn geometric_progression() {
        // (0, t, t^2, inf): after normalization the tight pair is {1, 3}
        let t = stable_limit(&place(), &[pt("0"), pt("t"), pt("t^2"), pt("inf")]).unwrap();
        assert_eq!(t.num_vertices(), 2);
        assert_eq!(
            t.marking_vertex(1).unwrap(),
            t.marking_vertex(3).unwrap()
        );
        assert_eq!(
            t.marking_vertex(2).unwrap(),
            t.marking_vertex(4).unwrap()
        );
    }

    #[test]
    fn deep_cluster_makes_a_chain() {
        // 0, 1, inf, t, t+t^3: markings 1, 4, 5 collide at zero; then 4 and
        // 5 collide again one level down
        let t = stable_limit(
            &place(),
            &[pt("0"), pt("1"), pt("inf"), pt("t"), pt("t+t^3")],
        )
        .unwrap();
        assert_eq!(t.num_vertices(), 3);
        assert!(t.is_stable());
        let v4 = t.marking_vertex(4).unwrap();
        let v5 = t.marking_vertex(5).unwrap();
        assert_eq!(v4, v5);
        assert_ne!(t.marking_vertex(1).unwrap(), v4);
    }

    #[test]
    fn rejects_coincident_points() {
        assert_eq!(
            stable_limit(&place(), &[pt("0"), pt("1"), pt("1")]).unwrap_err(),
            CurvesError::CoincidentPoints
        );
    }

    #[test]
    fn rejects_p_adic_places() {
        let p = Place::p_adic(5).unwrap();
        assert_eq!(
            stable_limit(&p, &[pt("0"), pt("1"), pt("inf")]).unwrap_err(),
            CurvesError::NonComputableValuation
        );
    }
}

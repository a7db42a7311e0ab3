//! The cone of the affine toric hypersurface `x y = t_1^{k_1} ... t_r^{k_r}`,
//! and a normal form for two-dimensional cones used to compare such cones
//! up to lattice isomorphism.

use num::bigint::Sign;
use num::{BigInt, Integer, Zero};

use crate::lattice::{row_hermite_normal_form, LatticeMatrix, LatticeVector};

use super::dd::polar;
use super::{Cone, ToricError};

/// Builds the cone of `x y = prod t_i^{k_i}`: the character lattice is the
/// quotient of the free lattice on x, y, t_1..t_r by the single relation
/// x + y - sum k_i t_i, the dual monoid is the image of the standard
/// orthant, and the returned cone is its polar.
pub fn cone_for_nodal_model(exponents: &[u32]) -> Result<Cone, ToricError> {
    let r = exponents.len();
    if r == 0 || exponents.iter().all(|&k| k == 0) {
        return Err(ToricError::AllExponentsZero);
    }
    let dim = r + 2;
    let mut relation = vec![BigInt::from(1), BigInt::from(1)];
    relation.extend(exponents.iter().map(|&k| BigInt::from(-(k as i64))));
    let col = LatticeMatrix::new(dim, 1, relation)?;
    let (h, u) = row_hermite_normal_form(&col)?;
    debug_assert!(h.at(0, 0) == &BigInt::from(1));
    // quotient map: the last dim-1 coordinates in the new basis
    let images: Vec<LatticeVector> = (0..dim)
        .map(|i| LatticeVector::new((1..dim).map(|row| u.at(row, i).clone()).collect()))
        .collect();
    let g = polar(&images, dim - 1);
    if !g.lineality.is_empty() {
        return Err(ToricError::Internal(
            "nodal cone acquired a lineality space".into(),
        ));
    }
    Cone::from_rays(dim - 1, &g.rays)
}

/// Canonical invariant of a two-dimensional cone up to lattice isomorphism:
/// `(m, q)` where `m` is the multiplicity and the cone is isomorphic to the
/// span of `(1,0)` and `(q, m)`, with `0 <= q < m` minimized over the two
/// ray orderings. Smooth two-dimensional cones give `(1, 0)`.
pub fn normal_form_2d(cone: &Cone) -> Result<(BigInt, BigInt), ToricError> {
    if cone.rays().len() != 2 || cone.dim() != 2 {
        return Err(ToricError::NonSimplicial);
    }
    let (smith, _) = cone.span_data()?;
    let restricted: Vec<LatticeVector> = cone
        .rays()
        .iter()
        .map(|r| {
            crate::lattice::coords_in_saturation(&smith, r)
                .map(LatticeVector::new)
                .ok_or_else(|| ToricError::Internal("ray outside span".into()))
        })
        .collect::<Result<_, _>>()?;
    let forms: Vec<(BigInt, BigInt)> = [(0usize, 1usize), (1, 0)]
        .iter()
        .map(|&(a, b)| oriented_type(&restricted[a], &restricted[b]))
        .collect();
    Ok(forms.into_iter().min().unwrap())
}

fn oriented_type(u: &LatticeVector, v: &LatticeVector) -> (BigInt, BigInt) {
    let (u1, u2) = (u.entries()[0].clone(), u.entries()[1].clone());
    let e = u1.extended_gcd(&u2);
    debug_assert!(e.gcd == BigInt::from(1));
    // rows (x, y) and (-u2, u1) send u to (1, 0)
    let p = &e.x * &v.entries()[0] + &e.y * &v.entries()[1];
    let mut q = -&u2 * &v.entries()[0] + &u1 * &v.entries()[1];
    let mut p = p;
    if q.sign() == Sign::Minus {
        q = -q;
        p = -p;
    }
    assert!(!q.is_zero(), "proportional rays in a two-dimensional cone");
    let p_mod = p.mod_floor(&q);
    (q, p_mod)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(e: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(e)
    }

    fn skew(n: i64) -> Cone {
        Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, n])]).unwrap()
    }

    #[test]
    fn single_exponent_one_is_smooth() {
        let c = cone_for_nodal_model(&[1]).unwrap();
        assert!(c.is_smooth());
        assert_eq!(c.multiplicity().unwrap(), BigInt::from(1));
    }

    #[test]
    fn single_exponent_matches_skew_cone() {
        for n in 2..=6u32 {
            let c = cone_for_nodal_model(&[n]).unwrap();
            assert_eq!(c.rays().len(), 2);
            assert_eq!(c.multiplicity().unwrap(), BigInt::from(n));
            assert_eq!(
                normal_form_2d(&c).unwrap(),
                normal_form_2d(&skew(n as i64)).unwrap()
            );
        }
    }

    #[test]
    fn two_units_give_the_square_cone() {
        // x y = t1 t2: the cone over the unit square, up to isomorphism
        let c = cone_for_nodal_model(&[1, 1]).unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.dim(), 3);
        assert!(!c.is_simplicial());
        // dualization oracle: the polar of the result is generated by the
        // images of the orthant generators
        let d = c.dual().unwrap();
        assert_eq!(d.rays().len(), 4);
        let dd = d.dual().unwrap();
        assert_eq!(dd, c);
        // combinatorially a square: every facet has two rays
        for f in c.facets().unwrap() {
            assert_eq!(f.len(), 2);
        }
    }

    #[test]
    fn zero_exponents_rejected() {
        assert_eq!(
            cone_for_nodal_model(&[]).unwrap_err(),
            ToricError::AllExponentsZero
        );
        assert_eq!(
            cone_for_nodal_model(&[0, 0]).unwrap_err(),
            ToricError::AllExponentsZero
        );
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            normal_form_2d(&skew(1)).unwrap(),
            (BigInt::from(1), BigInt::from(0))
        );
        let c = Cone::from_rays(2, &[lv(&[0, 1]), lv(&[2, 1])]).unwrap();
        assert_eq!(normal_form_2d(&c).unwrap(), normal_form_2d(&skew(2)).unwrap());
    }
}

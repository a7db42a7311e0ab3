use std::fmt;

use crate::arith::Field;

use super::CurvesError;

/// A point of the projective line over a field, in canonical form: either
/// `[a : 1]` or `[1 : 0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint<F: Field> {
    a: F,
    b: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(a: F, b: F) -> Result<ProjPoint<F>, CurvesError> {
        if a.is_zero() && b.is_zero() {
            return Err(CurvesError::ZeroPoint);
        }
        Ok(if b.is_zero() {
            ProjPoint {
                a: a.one_like(),
                b: a.zero_like(),
            }
        } else {
            let binv = b.inv().expect("nonzero");
            ProjPoint {
                a: a.mul(&binv),
                b: b.one_like(),
            }
        })
    }

    pub fn affine(x: F) -> ProjPoint<F> {
        let one = x.one_like();
        ProjPoint { a: x, b: one }
    }

    /// The point at infinity, minted from any field element for context.
    pub fn infinity(like: &F) -> ProjPoint<F> {
        ProjPoint {
            a: like.one_like(),
            b: like.zero_like(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// The affine value, `None` at infinity.
    pub fn value(&self) -> Option<&F> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.a)
        }
    }

    pub fn numerator(&self) -> &F {
        &self.a
    }

    pub fn denominator(&self) -> &F {
        &self.b
    }

    /// `[a : b] -> [b : a]`.
    pub fn flip(&self) -> ProjPoint<F> {
        ProjPoint::new(self.b.clone(), self.a.clone()).expect("nonzero point")
    }

    /// The two-by-two determinant pairing `a_p b_q - a_q b_p`; zero exactly
    /// when the points coincide.
    pub fn det(&self, other: &ProjPoint<F>) -> F {
        self.a.mul(&other.b).sub(&other.a.mul(&self.b))
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.a)
        }
    }
}

/// The unique Moebius image of `z` under the map carrying `p1, p2, p3` to
/// `0, 1` and infinity, computed projectively so no input needs special
/// casing.
pub fn cross_ratio<F: Field>(
    p1: &ProjPoint<F>,
    p2: &ProjPoint<F>,
    p3: &ProjPoint<F>,
    z: &ProjPoint<F>,
) -> Result<ProjPoint<F>, CurvesError> {
    if p1.det(p2).is_zero() || p1.det(p3).is_zero() || p2.det(p3).is_zero() {
        return Err(CurvesError::CoincidentPoints);
    }
    let num = z.det(p1).mul(&p2.det(p3));
    let den = z.det(p3).mul(&p2.det(p1));
    ProjPoint::new(num, den)
}

/// The coordinate of the moduli point of four distinct marked points on the
/// line: the cross-ratio, which lands outside 0, 1 and infinity.
pub fn moduli_point_m04<F: Field>(
    p1: &ProjPoint<F>,
    p2: &ProjPoint<F>,
    p3: &ProjPoint<F>,
    p4: &ProjPoint<F>,
) -> Result<F, CurvesError> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i].det(pts[j]).is_zero() {
                return Err(CurvesError::CoincidentPoints);
            }
        }
    }
    let lambda = cross_ratio(p1, p2, p3, p4)?;
    let v = lambda
        .value()
        .expect("cross-ratio of four distinct points is finite")
        .clone();
    assert!(!v.is_zero() && !v.sub(&v.one_like()).is_zero());
    Ok(v)
}

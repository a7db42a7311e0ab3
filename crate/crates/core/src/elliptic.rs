//! Reduction theory for elliptic curves in short Weierstrass form over an
//! exactly-represented discretely valued field: invariants, minimal models,
//! the good/multiplicative/additive trichotomy, integrality of the
//! j-invariant, and the minimal semistable base-change degree over
//! function fields.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{FieldSpec, K};
use crate::polyring::{
    buchberger, std_monomial_count_of, MonomialOrder, MultiPoly, PolyError, PolyRing, QuotientDim,
};
use crate::valued::{Elem, Place, RatFun, UniPoly, ValuedError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EllipticError {
    #[error("singular cubic, not an elliptic curve")]
    SingularCubic,
    #[error("residue characteristic {0} is not supported (needs to avoid 2 and 3)")]
    BadResidueCharacteristic(u64),
    #[error("this operation needs a function-field place")]
    UnsupportedPlace,
    #[error("degenerate pencil member: both parameters vanish")]
    DegenerateHesse,
    #[error("the cubic does not split over the base field; needs a field extension")]
    NeedsFieldExtension,
    #[error("root search requires constant coefficients here")]
    NonConstantCoefficients,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Valued(#[from] ValuedError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A short Weierstrass model `y^2 = x^3 + A x + B` over a valued field with
/// residue characteristic away from 2 and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    place: Place,
    a: Elem,
    b: Elem,
}

/// The standard invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub delta: Elem,
    pub c4: Elem,
    pub j: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionType::Good => write!(f, "Good"),
            ReductionType::Multiplicative => write!(f, "Multiplicative"),
            ReductionType::Additive => write!(f, "Additive"),
        }
    }
}

/// Everything the classification produces: the minimal model, the scaling
/// that reaches it, the key valuations (`None` encodes infinite valuation),
/// and the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub a_min: Elem,
    pub b_min: Elem,
    /// `A = u^4 A_min`, `B = u^6 B_min`, with `u` this power of the
    /// uniformizer.
    pub u_power: i64,
    pub v_delta: Option<i64>,
    pub v_c4: Option<i64>,
    pub v_j: Option<i64>,
    pub rtype: ReductionType,
}

impl WeierstrassModel {
    pub fn new(place: Place, a: Elem, b: Elem) -> Result<WeierstrassModel, EllipticError> {
        let p = place.residue_characteristic();
        if p == 2 || p == 3 {
            return Err(EllipticError::BadResidueCharacteristic(p));
        }
        if !place.accepts(&a) || !place.accepts(&b) {
            return Err(EllipticError::Valued(ValuedError::FieldMismatch));
        }
        let m = WeierstrassModel { place, a, b };
        if m.discriminant().is_zero() {
            return Err(EllipticError::SingularCubic);
        }
        Ok(m)
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn a(&self) -> &Elem {
        &self.a
    }

    pub fn b(&self) -> &Elem {
        &self.b
    }

    fn discriminant(&self) -> Elem {
        // -16 (4 A^3 + 27 B^2)
        let four_a3 = self.a.pow(3).mul(&Elem::from_i64(&self.place, 4));
        let twenty7_b2 = self.b.pow(2).mul(&Elem::from_i64(&self.place, 27));
        four_a3
            .add(&twenty7_b2)
            .mul(&Elem::from_i64(&self.place, -16))
    }

    /// Discriminant, c4, and the j-invariant, with the exact identity
    /// `j * (4A^3 + 27B^2) = 1728 * 4A^3` asserted on the way out.
    pub fn invariants(&self) -> Invariants {
        let delta = self.discriminant();
        let c4 = self.a.mul(&Elem::from_i64(&self.place, -48));
        let four_a3 = self.a.pow(3).mul(&Elem::from_i64(&self.place, 4));
        let denom = four_a3.add(&self.b.pow(2).mul(&Elem::from_i64(&self.place, 27)));
        let j = four_a3.mul(&Elem::from_i64(&self.place, 1728)).div(&denom);
        assert_eq!(
            j.mul(&denom),
            four_a3.mul(&Elem::from_i64(&self.place, 1728)),
            "j-invariant identity failed"
        );
        Invariants { delta, c4, j }
    }

    /// Scales `(A, B) -> (A / pi^4, B / pi^6)` while both valuations allow,
    /// after first scaling up to integral coefficients. For residue
    /// characteristic at least 5 (or zero) the result is minimal.
    pub fn minimal_model(&self) -> (Elem, Elem, i64) {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut u: i64 = 0;
        let v = |e: &Elem, place: &Place| place.valuation(e).expect("same place");
        loop {
            let va = v(&a, &self.place).unwrap_or(i64::MAX);
            let vb = v(&b, &self.place).unwrap_or(i64::MAX);
            if va >= 0 && vb >= 0 {
                break;
            }
            a = self.place.shift(&a, 4).expect("same place");
            b = self.place.shift(&b, 6).expect("same place");
            u -= 1;
        }
        loop {
            let va = v(&a, &self.place).unwrap_or(i64::MAX);
            let vb = v(&b, &self.place).unwrap_or(i64::MAX);
            if va >= 4 && vb >= 6 {
                a = self.place.shift(&a, -4).expect("same place");
                b = self.place.shift(&b, -6).expect("same place");
                u += 1;
            } else {
                break;
            }
        }
        (a, b, u)
    }

    /// Classifies the reduction of the minimal model: good when the minimal
    /// discriminant is a unit, multiplicative when only c4 stays a unit,
    /// additive otherwise.
    pub fn reduction_type(&self) -> Result<ReductionData, EllipticError> {
        let (a_min, b_min, u_power) = self.minimal_model();
        let min = WeierstrassModel {
            place: self.place,
            a: a_min.clone(),
            b: b_min.clone(),
        };
        let inv = min.invariants();
        let v_delta = self.place.valuation(&inv.delta)?;
        let v_c4 = self.place.valuation(&inv.c4)?;
        let v_j = self.place.valuation(&inv.j)?;
        let rtype = match (v_delta, v_c4) {
            (Some(0), _) => ReductionType::Good,
            (_, Some(0)) => ReductionType::Multiplicative,
            _ => ReductionType::Additive,
        };
        Ok(ReductionData {
            a_min,
            b_min,
            u_power,
            v_delta,
            v_c4,
            v_j,
            rtype,
        })
    }

    /// Integrality of the j-invariant.
    pub fn potentially_good(&self) -> Result<bool, EllipticError> {
        let inv = self.invariants();
        Ok(match self.place.valuation(&inv.j)? {
            None => true, // j = 0
            Some(v) => v >= 0,
        })
    }

    /// The residue cubic `x^3 + A x + B` of the minimal model.
    pub fn residue_cubic(&self) -> Result<UniPoly, EllipticError> {
        let (a_min, b_min, _) = self.minimal_model();
        let field = self.place.residue_field();
        let a = self.place.residue(&a_min)?;
        let b = self.place.residue(&b_min)?;
        Ok(UniPoly::new(field, vec![b, a, field.zero(), field.one()]))
    }

    /// Minimal `e` among the divisors of 12 such that the base change
    /// `t -> s^e` acquires good or multiplicative reduction, with the
    /// transformed model and its re-verified classification as a witness.
    /// Function-field places only: a ramified extension of a p-adic place
    /// is not exactly representable here.
    pub fn semistable_degree(
        &self,
    ) -> Result<(u32, WeierstrassModel, ReductionData), EllipticError> {
        if matches!(self.place, Place::PAdic(_)) {
            return Err(EllipticError::UnsupportedPlace);
        }
        for e in [1u32, 2, 3, 4, 6, 12] {
            let witness = WeierstrassModel {
                place: self.place,
                a: self.a.stretch(e as usize),
                b: self.b.stretch(e as usize),
            };
            let data = witness.reduction_type()?;
            if matches!(
                data.rtype,
                ReductionType::Good | ReductionType::Multiplicative
            ) {
                return Ok((e, witness, data));
            }
        }
        Err(EllipticError::Internal(
            "no semistable model among the divisors of 12".into(),
        ))
    }

    /// When `x^3 + A x + B` splits over the base field, the coordinate of
    /// the third root after the first two are moved to 0 and 1. Root
    /// extraction is exact and restricted to constant coefficients; a
    /// genuinely t-dependent cubic reports that a field extension is
    /// needed.
    pub fn legendre_lambda(&self) -> Result<Elem, EllipticError> {
        let [e1, e2, e3] = self.constant_cubic_roots()?;
        // y^2 = (x - e1)(x - e2)(x - e3) -> x (x - 1) (x - lambda)
        Ok(e3.sub(&e1).div(&e2.sub(&e1)))
    }

    fn constant_cubic_roots(&self) -> Result<[Elem; 3], EllipticError> {
        let (a, b) = match (&self.a, &self.b) {
            (Elem::Rat(a), Elem::Rat(b)) => (a.clone(), b.clone()),
            (Elem::Fun(a), Elem::Fun(b)) => {
                let constant = |r: &RatFun| -> Option<K> {
                    (r.num().degree().unwrap_or(0) == 0 && r.den().degree() == Some(0))
                        .then(|| r.num().eval_zero().div(&r.den().eval_zero()))
                };
                match (constant(a), constant(b)) {
                    (Some(K::Q(a)), Some(K::Q(b))) => (a, b),
                    (Some(_), Some(_)) => return self.prime_field_roots(),
                    _ => return Err(EllipticError::NonConstantCoefficients),
                }
            }
            _ => return Err(EllipticError::Internal("mixed elements".into())),
        };
        let mut roots = rational_cubic_roots(&a, &b);
        if roots.len() != 3 {
            return Err(EllipticError::NeedsFieldExtension);
        }
        roots.sort();
        let lift = |q: num::BigRational| match &self.place {
            Place::PAdic(_) => Elem::Rat(q),
            Place::TAdic(f) => {
                assert_eq!(*f, FieldSpec::Q);
                Elem::Fun(RatFun::constant(K::Q(q)))
            }
        };
        Ok([
            lift(roots[0].clone()),
            lift(roots[1].clone()),
            lift(roots[2].clone()),
        ])
    }

    fn prime_field_roots(&self) -> Result<[Elem; 3], EllipticError> {
        let (f, a, b) = match (&self.a, &self.b) {
            (Elem::Fun(a), Elem::Fun(b)) => {
                let fld = a.field();
                (
                    fld,
                    a.num().eval_zero().div(&a.den().eval_zero()),
                    b.num().eval_zero().div(&b.den().eval_zero()),
                )
            }
            _ => return Err(EllipticError::Internal("expected function field".into())),
        };
        let FieldSpec::Fp(p) = f else {
            return Err(EllipticError::Internal("expected a prime field".into()));
        };
        if p > 1_000_000 {
            return Err(EllipticError::NeedsFieldExtension);
        }
        let mut roots = Vec::new();
        for x in 0..p {
            let xk = f.from_i64(x as i64);
            let val = xk.pow(3).add(&a.mul(&xk)).add(&b);
            if val.is_zero() {
                roots.push(Elem::Fun(RatFun::constant(xk)));
            }
        }
        <[Elem; 3]>::try_from(roots).map_err(|_| EllipticError::NeedsFieldExtension)
    }
}

/// Roots of `x^3 + a x + b` over the rationals, with multiplicity, by exact
/// divisor search after clearing denominators.
fn rational_cubic_roots(a: &num::BigRational, b: &num::BigRational) -> Vec<num::BigRational> {
    use num::{BigInt, BigRational, Integer, One, Signed, Zero};
    // x = y / d: y^3 + (a d^2) y + (b d^3) with integer coefficients
    let d = a.denom().lcm(b.denom());
    let aa = (a * BigRational::from_integer(&d * &d)).to_integer();
    let bb = (b * BigRational::from_integer(&d * &d * &d)).to_integer();
    let mut roots: Vec<BigRational> = Vec::new();
    let eval = |y: &BigInt| y * y * y + &aa * y + &bb;
    let deflate_quadratic = |y0: &BigInt, roots: &mut Vec<BigRational>| {
        // remaining factor y^2 + y0 y + (y0^2 + aa)
        let c1 = y0.clone();
        let c0 = y0 * y0 + &aa;
        let disc = &c1 * &c1 - BigInt::from(4) * &c0;
        if disc.is_negative() {
            return;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return;
        }
        let two = BigInt::from(2);
        if ((-&c1 + &s) % &two).is_zero() {
            roots.push(BigRational::new((-&c1 + &s) / &two, d.clone()));
            roots.push(BigRational::new((-&c1 - &s) / &two, d.clone()));
        }
    };
    if bb.is_zero() {
        roots.push(BigRational::zero());
        deflate_quadratic(&BigInt::zero(), &mut roots);
        return roots;
    }
    // an integer root of the monic cubic divides the constant term
    let abs_b = bb.abs();
    let mut k = BigInt::one();
    let mut found: Option<BigInt> = None;
    'search: while &k * &k <= abs_b {
        if (&abs_b % &k).is_zero() {
            for c in [k.clone(), abs_b.clone() / &k] {
                for y in [c.clone(), -c.clone()] {
                    if eval(&y).is_zero() {
                        found = Some(y);
                        break 'search;
                    }
                }
            }
        }
        k += 1;
    }
    let Some(y0) = found else {
        return roots;
    };
    roots.push(BigRational::new(y0.clone(), d.clone()));
    deflate_quadratic(&y0, &mut roots);
    roots
}

// ---- Hesse pencil special fibers -------------------------------------------

/// What the residue of a Hesse-pencil member looks like.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeReport {
    Smooth,
    Nodal { nodes: usize },
}

/// Reduces `lambda (X^3 + Y^3 + Z^3) = 3 mu X Y Z` to the residue field
/// after projective normalization and classifies the singular points of
/// the resulting plane cubic: smooth, or nodal with a geometric node
/// count. Away from characteristic 3 the pencil never degenerates to a
/// cusp, and the computation verifies that the singular scheme is reduced.
pub fn hesse_special_fiber_check(
    place: &Place,
    lambda: &Elem,
    mu: &Elem,
) -> Result<NodeReport, EllipticError> {
    let p = place.residue_characteristic();
    if p == 3 {
        return Err(EllipticError::BadResidueCharacteristic(3));
    }
    if lambda.is_zero() && mu.is_zero() {
        return Err(EllipticError::DegenerateHesse);
    }
    // projective normalization: clear the smaller valuation
    let vl = place.valuation(lambda)?;
    let vm = place.valuation(mu)?;
    let vmin = match (vl, vm) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(EllipticError::DegenerateHesse),
    };
    let lam = place.shift(lambda, -vmin)?;
    let mu = place.shift(mu, -vmin)?;
    let lbar = place.residue(&lam)?;
    let mbar = place.residue(&mu)?;
    if lbar.is_zero() && mbar.is_zero() {
        return Err(EllipticError::DegenerateHesse);
    }

    let field = place.residue_field();
    let ring = PolyRing::from_names(&["X", "Y", "Z"], field);
    let x = MultiPoly::var(&ring, 0);
    let y = MultiPoly::var(&ring, 1);
    let z = MultiPoly::var(&ring, 2);
    let fermat = x.pow(3).add(&y.pow(3)).add(&z.pow(3));
    let xyz = x.mul(&y).mul(&z);
    let f = fermat
        .scale(&lbar)
        .sub(&xyz.scale(&mbar.mul(&field.from_i64(3))));
    let jac: Vec<MultiPoly> = vec![f.derivative(0), f.derivative(1), f.derivative(2)];

    // smooth iff the singular scheme of the cone sits only at the origin,
    // i.e. the Jacobian quotient is finite-dimensional
    let gb = buchberger(&jac, MonomialOrder::GrevLex)?;
    if matches!(std_monomial_count_of(&gb)?, QuotientDim::Finite(_)) {
        return Ok(NodeReport::Smooth);
    }

    let total = projective_scheme_length(&ring, &jac, false)?;
    let reduced = projective_scheme_length(&ring, &jac, true)?;
    if total == reduced {
        Ok(NodeReport::Nodal { nodes: total })
    } else {
        // a non-reduced singular scheme would mean a cusp or worse
        Err(EllipticError::Internal(format!(
            "non-nodal degeneration: scheme length {total} on {reduced} points"
        )))
    }
}

/// Length of the zero-dimensional subscheme of the projective plane cut
/// out by `gens`, summed over the standard chart partition; with `radical`
/// the points are counted without multiplicity.
fn projective_scheme_length(
    ring: &Arc<PolyRing>,
    gens: &[MultiPoly],
    radical: bool,
) -> Result<usize, EllipticError> {
    let field = ring.field();
    let chart = |set_one: usize, vanish: &[usize]| -> Result<usize, EllipticError> {
        let keep: Vec<usize> = (0..3).filter(|&v| v != set_one).collect();
        let sub = PolyRing::new(keep.iter().map(|&v| ring.vars()[v].clone()).collect(), field);
        let images: Vec<MultiPoly> = (0..3)
            .map(|v| {
                if v == set_one {
                    MultiPoly::one(&sub)
                } else {
                    MultiPoly::var(&sub, keep.iter().position(|&k| k == v).unwrap())
                }
            })
            .collect();
        let affine: Vec<MultiPoly> = gens.iter().map(|g| g.substitute(&sub, &images)).collect();
        // restrict to the locus where the earlier chart coordinates vanish:
        // adding a high power of each cuts away the other components; raise
        // the power until the length stabilizes
        let mut best: Option<usize> = None;
        let mut exp = 1u32;
        loop {
            let mut current = affine.clone();
            for &v in vanish {
                let idx = keep.iter().position(|&k| k == v).unwrap();
                current.push(MultiPoly::var(&sub, idx).pow(exp));
            }
            if radical {
                current = add_squarefree_eliminants(&sub, &current)?;
            }
            let gb = buchberger(&current, MonomialOrder::GrevLex)?;
            let n = match std_monomial_count_of(&gb)? {
                QuotientDim::Finite(n) => n,
                QuotientDim::Infinite => {
                    return Err(EllipticError::Internal(
                        "singular scheme has positive dimension in a chart".into(),
                    ))
                }
            };
            if best == Some(n) {
                return Ok(n);
            }
            best = Some(n);
            exp *= 2;
            if exp > 64 {
                return Err(EllipticError::Internal(
                    "support separation failed to stabilize".into(),
                ));
            }
        }
    };
    // points with Z nonzero; then Z = 0, Y nonzero; then the point with
    // only X nonzero
    Ok(chart(2, &[])? + chart(1, &[2])? + chart(0, &[1, 2])?)
}

/// Adds the squarefree parts of the univariate eliminants in each variable,
/// cutting a zero-dimensional scheme down to its reduced points.
fn add_squarefree_eliminants(
    ring: &Arc<PolyRing>,
    gens: &[MultiPoly],
) -> Result<Vec<MultiPoly>, EllipticError> {
    let mut out = gens.to_vec();
    for v in 0..ring.nvars() {
        if let Some(e) = univariate_eliminant(ring, gens, v)? {
            let de = e.derivative();
            if de.is_zero() {
                continue;
            }
            let g = e.gcd(&de);
            let (sqfree, _) = e.divrem(&g);
            let mut terms = Vec::new();
            for (i, c) in sqfree.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut m = vec![0u32; ring.nvars()];
                    m[v] = i as u32;
                    terms.push((m, c.clone()));
                }
            }
            out.push(MultiPoly::from_terms(ring, terms));
        }
    }
    Ok(out)
}

/// The monic generator of the elimination ideal in a single variable, from
/// a lex basis with that variable weakest.
fn univariate_eliminant(
    ring: &Arc<PolyRing>,
    gens: &[MultiPoly],
    var: usize,
) -> Result<Option<UniPoly>, EllipticError> {
    let mut names: Vec<String> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != var)
        .map(|(_, n)| n.clone())
        .collect();
    names.push(ring.vars()[var].clone());
    let reordered = PolyRing::new(names, ring.field());
    let images: Vec<MultiPoly> = (0..ring.nvars())
        .map(|i| {
            let pos = if i == var {
                ring.nvars() - 1
            } else {
                (0..i).filter(|&k| k != var).count()
            };
            MultiPoly::var(&reordered, pos)
        })
        .collect();
    let moved: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.substitute(&reordered, &images))
        .collect();
    let gb = buchberger(&moved, MonomialOrder::Lex)?;
    let last = reordered.nvars() - 1;
    for g in gb.generators() {
        if g.terms().all(|(m, _)| m[..last].iter().all(|&e| e == 0)) {
            let deg = g.total_degree().unwrap_or(0) as usize;
            let field = ring.field();
            let mut coeffs = vec![field.zero(); deg + 1];
            for (m, c) in g.terms() {
                coeffs[m[last] as usize] = c.clone();
            }
            return Ok(Some(UniPoly::new(field, coeffs)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tq() -> Place {
        Place::t_adic_q()
    }

    fn e(place: &Place, s: &str) -> Elem {
        place.parse(s).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let p = tq();
        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "1")).unwrap();
        let inv = m.invariants();
        assert_eq!(inv.delta, e(&p, "-432"));
        assert!(inv.j.is_zero());

        let m = WeierstrassModel::new(p, e(&p, "1"), e(&p, "0")).unwrap();
        assert_eq!(m.invariants().j, e(&p, "1728"));

        // A = -3, B = 2 + t: the discriminant vanishes to first order
        let m = WeierstrassModel::new(p, e(&p, "-3"), e(&p, "2+t")).unwrap();
        assert_eq!(p.valuation(&m.invariants().delta).unwrap(), Some(1));
    }

    #[test]
    fn singular_cubic_rejected() {
        let p = tq();
        // y^2 = x^2 (x - 1) completed to short form: A = -1/3, B = -2/27
        let res = WeierstrassModel::new(p, e(&p, "-1/3"), e(&p, "-2/27"));
        assert_eq!(res.unwrap_err(), EllipticError::SingularCubic);
        assert_eq!(
            EllipticError::SingularCubic.to_string(),
            "singular cubic, not an elliptic curve"
        );
    }

    #[test]
    fn residue_characteristic_guard() {
        let p = Place::p_adic(5).unwrap();
        let bad = Place::PAdic(3);
        let a = Elem::from_i64(&bad, 1);
        let b = Elem::from_i64(&bad, 1);
        assert_eq!(
            WeierstrassModel::new(bad, a, b).unwrap_err(),
            EllipticError::BadResidueCharacteristic(3)
        );
        let m = WeierstrassModel::new(p, Elem::from_i64(&p, 1), Elem::from_i64(&p, 1));
        assert!(m.is_ok());
    }

    #[test]
    fn good_reduction_after_scaling() {
        // y^2 = x^3 + t^6 has good reduction: the minimal model is (0, 1)
        let p = tq();
        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "t^6")).unwrap();
        let d = m.reduction_type().unwrap();
        assert_eq!(d.rtype, ReductionType::Good);
        assert_eq!(d.u_power, 1);
        assert_eq!(d.b_min, e(&p, "1"));
        assert_eq!(d.v_delta, Some(0));
    }

    #[test]
    fn additive_example() {
        // y^2 = x^3 + t is minimal with a cuspidal residue
        let p = tq();
        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "t")).unwrap();
        let d = m.reduction_type().unwrap();
        assert_eq!(d.rtype, ReductionType::Additive);
        assert_eq!(d.v_delta, Some(2));
        assert!(m.potentially_good().unwrap());
        // triple root in the residue cubic
        let cubic = m.residue_cubic().unwrap();
        let g = cubic.gcd(&cubic.derivative());
        assert_eq!(g.degree(), Some(2));
    }

    #[test]
    fn multiplicative_example() {
        let p = tq();
        let m = WeierstrassModel::new(p, e(&p, "-3"), e(&p, "2+t")).unwrap();
        let d = m.reduction_type().unwrap();
        assert_eq!(d.rtype, ReductionType::Multiplicative);
        assert_eq!(d.v_delta, Some(1));
        assert_eq!(d.v_c4, Some(0));
        assert_eq!(d.v_j, Some(-1));
        assert!(!m.potentially_good().unwrap());
        // double, not triple, root
        let cubic = m.residue_cubic().unwrap();
        let g = cubic.gcd(&cubic.derivative());
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn p_adic_classification() {
        let p = Place::p_adic(5).unwrap();
        let m =
            WeierstrassModel::new(p, Elem::from_i64(&p, 1), Elem::from_i64(&p, 1)).unwrap();
        let d = m.reduction_type().unwrap();
        assert_eq!(d.rtype, ReductionType::Good);
        assert!(m.potentially_good().unwrap());
        assert_eq!(
            m.semistable_degree().unwrap_err(),
            EllipticError::UnsupportedPlace
        );
    }

    #[test]
    fn semistable_degrees() {
        let p = tq();
        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "t^6")).unwrap();
        assert_eq!(m.semistable_degree().unwrap().0, 1);

        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "t")).unwrap();
        let (deg, _, data) = m.semistable_degree().unwrap();
        assert_eq!(deg, 6);
        assert_eq!(data.rtype, ReductionType::Good);

        let m = WeierstrassModel::new(p, e(&p, "-3"), e(&p, "2+t")).unwrap();
        assert_eq!(m.semistable_degree().unwrap().0, 1);
    }

    #[test]
    fn legendre_extraction() {
        let p = tq();
        // roots 0, 1, 4 shifted to zero sum: a = -5/3, b = -2/3, c = 7/3
        // gives A = -13/3, B = -70/27
        let m = WeierstrassModel::new(p, e(&p, "-13/3"), e(&p, "-70/27")).unwrap();
        let lam = m.legendre_lambda().unwrap();
        let lv = match &lam {
            Elem::Fun(f) => f.clone(),
            _ => unreachable!(),
        };
        assert!(!lv.is_zero());
        assert!(!lv.sub(&RatFun::one(FieldSpec::Q)).is_zero());

        let m = WeierstrassModel::new(p, e(&p, "1"), e(&p, "1")).unwrap();
        assert_eq!(
            m.legendre_lambda().unwrap_err(),
            EllipticError::NeedsFieldExtension
        );
        let m = WeierstrassModel::new(p, e(&p, "0"), e(&p, "t^6")).unwrap();
        assert_eq!(
            m.legendre_lambda().unwrap_err(),
            EllipticError::NonConstantCoefficients
        );
    }

    #[test]
    fn hesse_members() {
        let p = tq();
        // the Fermat member is smooth
        let r = hesse_special_fiber_check(&p, &e(&p, "1"), &e(&p, "0")).unwrap();
        assert_eq!(r, NodeReport::Smooth);
        // lambda = mu = 1 is a triangle of lines over the closure
        let r = hesse_special_fiber_check(&p, &e(&p, "1"), &e(&p, "1")).unwrap();
        assert_eq!(r, NodeReport::Nodal { nodes: 3 });
        // (t : 1) reduces to the coordinate triangle
        let r = hesse_special_fiber_check(&p, &e(&p, "t"), &e(&p, "1")).unwrap();
        assert_eq!(r, NodeReport::Nodal { nodes: 3 });
        assert_eq!(
            hesse_special_fiber_check(&p, &e(&p, "0"), &e(&p, "0")).unwrap_err(),
            EllipticError::DegenerateHesse
        );
    }
}

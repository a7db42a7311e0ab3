//! Exactly-represented discretely valued fields: rational functions in one
//! variable over the rationals or a prime field with the t-adic place, and
//! the rationals with a p-adic place.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::arith::{is_prime_u64, Field, FieldSpec, K};
use crate::polyring::{parse_poly, parse_ratfun_split, PolyError, PolyRing};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValuedError {
    #[error("element does not belong to this place's field")]
    FieldMismatch,
    #[error("residue of an element with negative valuation")]
    NegativeValuation,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

// ---- dense univariate polynomials ------------------------------------------

/// Dense univariate polynomial over `Q` or a prime field; coefficients are
/// stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<K>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<K>) -> UniPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> UniPoly {
        UniPoly {
            field,
            coeffs: vec![],
        }
    }

    pub fn constant(c: K) -> UniPoly {
        UniPoly::new(c.spec(), vec![c])
    }

    pub fn monomial(field: FieldSpec, c: K, deg: usize) -> UniPoly {
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        UniPoly::new(field, coeffs)
    }

    pub fn var(field: FieldSpec) -> UniPoly {
        UniPoly::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at the origin; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.field, other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(self.field, coeffs)
    }

    pub fn scale(&self, c: &K) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = UniPoly::zero(self.field);
        let dl = d.degree().unwrap();
        let dinv = d.coeffs[dl].inv().unwrap();
        while let Some(rl) = rem.degree() {
            if rl < dl {
                break;
            }
            let c = rem.coeffs[rl].mul(&dinv);
            let shift = rl - dl;
            quo = quo.add(&UniPoly::monomial(self.field, c.clone(), shift));
            rem = rem.sub(&d.mul(&UniPoly::monomial(self.field, c, shift)));
        }
        (quo, rem)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        // keeping every remainder monic tames rational coefficient growth
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn monic(&self) -> UniPoly {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.scale(&self.coeffs[d].inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.field);
        }
        UniPoly::new(
            self.field,
            (1..self.coeffs.len())
                .map(|i| self.coeffs[i].mul(&self.field.from_i64(i as i64)))
                .collect(),
        )
    }

    /// Value at the origin.
    pub fn eval_zero(&self) -> K {
        self.coeff(0)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitution t -> t^e.
    pub fn stretch(&self, e: usize) -> UniPoly {
        assert!(e >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        UniPoly::new(self.field, coeffs)
    }

    /// Exact division by t^k; panics if the order is too small.
    pub fn shift_down(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        assert!(self.ord().unwrap() >= k, "not divisible by t^{k}");
        UniPoly::new(self.field, self.coeffs[k..].to_vec())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{}*", mag)?;
                }
                write!(f, "t")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

// ---- rational functions -----------------------------------------------------

/// A rational function in one variable, kept in lowest terms with a monic
/// denominator. Used as the exactly-represented valued field `k(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RatFun, ValuedError> {
        if den.is_zero() {
            return Err(ValuedError::DivisionByZero);
        }
        Ok(RatFun::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> RatFun {
        if num.is_zero() {
            return RatFun {
                num: UniPoly::zero(den.field()),
                den: UniPoly::constant(den.field().one()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead = den.coeffs[den.degree().unwrap()].clone();
        let inv = lead.inv().unwrap();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UniPoly) -> RatFun {
        let field = p.field();
        RatFun::reduced(p, UniPoly::constant(field.one()))
    }

    pub fn constant(c: K) -> RatFun {
        RatFun::from_poly(UniPoly::constant(c))
    }

    pub fn var(field: FieldSpec) -> RatFun {
        RatFun::from_poly(UniPoly::var(field))
    }

    pub fn zero(field: FieldSpec) -> RatFun {
        RatFun::from_poly(UniPoly::zero(field))
    }

    pub fn one(field: FieldSpec) -> RatFun {
        RatFun::constant(field.one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn field(&self) -> FieldSpec {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<RatFun> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> RatFun {
        self.mul(&other.inv().expect("division by zero"))
    }

    pub fn pow(&self, e: u32) -> RatFun {
        let mut acc = RatFun::one(self.field());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitution t -> t^e.
    pub fn stretch(&self, e: usize) -> RatFun {
        RatFun::reduced(self.num.stretch(e), self.den.stretch(e))
    }

    /// Parses the shared grammar in the given variable name: a polynomial,
    /// or a quotient of two (optionally parenthesized) polynomials.
    pub fn parse(field: FieldSpec, var: &str, input: &str) -> Result<RatFun, ValuedError> {
        let (num_s, den_s) = parse_ratfun_split(input)?;
        let ring = PolyRing::from_names(&[var], field);
        let to_uni = |s: &str| -> Result<UniPoly, ValuedError> {
            let p = parse_poly(&ring, s)?;
            let mut coeffs = vec![field.zero(); p.total_degree().map_or(0, |d| d as usize + 1)];
            for (m, c) in p.terms() {
                coeffs[m[0] as usize] = c.clone();
            }
            Ok(UniPoly::new(field, coeffs))
        };
        let num = to_uni(&num_s)?;
        match den_s {
            None => Ok(RatFun::from_poly(num)),
            Some(d) => RatFun::new(num, to_uni(&d)?),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) || self.is_zero() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}

impl UniPoly {
    fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Field for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFun::one(self.field())
    }
    fn add(&self, other: &Self) -> Self {
        RatFun::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFun::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFun::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFun::inv(self)
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

// ---- valued fields ----------------------------------------------------------

/// A field with a chosen discrete place: `Q(t)` or `F_p(t)` with the
/// t-adic place, or `Q` with the p-adic place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    TAdic(FieldSpec),
    PAdic(u64),
}

impl Place {
    pub fn t_adic_q() -> Place {
        Place::TAdic(FieldSpec::Q)
    }

    pub fn t_adic_fp(p: u64) -> Result<Place, ValuedError> {
        if !is_prime_u64(p) {
            return Err(ValuedError::NotPrime(p));
        }
        Ok(Place::TAdic(FieldSpec::Fp(p)))
    }

    pub fn p_adic(p: u64) -> Result<Place, ValuedError> {
        if !is_prime_u64(p) {
            return Err(ValuedError::NotPrime(p));
        }
        Ok(Place::PAdic(p))
    }

    pub fn residue_field(&self) -> FieldSpec {
        match self {
            Place::TAdic(f) => *f,
            Place::PAdic(p) => FieldSpec::Fp(*p),
        }
    }

    pub fn residue_characteristic(&self) -> u64 {
        self.residue_field().characteristic()
    }

    pub fn zero(&self) -> Elem {
        match self {
            Place::TAdic(f) => Elem::Fun(RatFun::zero(*f)),
            Place::PAdic(_) => Elem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Place::TAdic(f) => Elem::Fun(RatFun::one(*f)),
            Place::PAdic(_) => Elem::Rat(BigRational::one()),
        }
    }

    pub fn uniformizer(&self) -> Elem {
        match self {
            Place::TAdic(f) => Elem::Fun(RatFun::var(*f)),
            Place::PAdic(p) => Elem::Rat(BigRational::from_integer(BigInt::from(*p))),
        }
    }

    pub fn accepts(&self, e: &Elem) -> bool {
        match (self, e) {
            (Place::TAdic(f), Elem::Fun(r)) => r.field() == *f,
            (Place::PAdic(_), Elem::Rat(_)) => true,
            _ => false,
        }
    }

    /// Valuation; `None` for the zero element (infinite valuation).
    pub fn valuation(&self, e: &Elem) -> Result<Option<i64>, ValuedError> {
        if !self.accepts(e) {
            return Err(ValuedError::FieldMismatch);
        }
        Ok(match (self, e) {
            (Place::TAdic(_), Elem::Fun(r)) => {
                if r.is_zero() {
                    None
                } else {
                    let vn = r.num().ord().unwrap() as i64;
                    let vd = r.den().ord().unwrap() as i64;
                    Some(vn - vd)
                }
            }
            (Place::PAdic(p), Elem::Rat(q)) => {
                if q.is_zero() {
                    None
                } else {
                    let p = BigInt::from(*p);
                    Some(int_val(q.numer(), &p) - int_val(q.denom(), &p))
                }
            }
            _ => unreachable!(),
        })
    }

    /// Residue of an element of nonnegative valuation in the residue field.
    pub fn residue(&self, e: &Elem) -> Result<K, ValuedError> {
        match self.valuation(e)? {
            None => Ok(self.residue_field().zero()),
            Some(v) if v > 0 => Ok(self.residue_field().zero()),
            Some(v) if v < 0 => Err(ValuedError::NegativeValuation),
            _ => Ok(match (self, e) {
                (Place::TAdic(_), Elem::Fun(r)) => {
                    // in lowest terms, valuation zero means both orders agree
                    let k = r.num().ord().unwrap().min(r.den().ord().unwrap());
                    let n0 = r.num().shift_down(k).eval_zero();
                    let d0 = r.den().shift_down(k).eval_zero();
                    n0.div(&d0)
                }
                (Place::PAdic(p), Elem::Rat(q)) => {
                    let spec = FieldSpec::Fp(*p);
                    let n = spec.from_bigint(q.numer());
                    let d = spec.from_bigint(q.denom());
                    n.div(&d)
                }
                _ => unreachable!(),
            }),
        }
    }

    /// Multiplies by the k-th power of the uniformizer (k may be negative).
    pub fn shift(&self, e: &Elem, k: i64) -> Result<Elem, ValuedError> {
        if !self.accepts(e) {
            return Err(ValuedError::FieldMismatch);
        }
        let pi = self.uniformizer();
        let mut out = e.clone();
        if k >= 0 {
            for _ in 0..k {
                out = out.mul(&pi);
            }
        } else {
            let inv = pi.inv().unwrap();
            for _ in 0..-k {
                out = out.mul(&inv);
            }
        }
        Ok(out)
    }

    /// Parses an element in this place's field: a rational function in `t`
    /// for t-adic places, a rational constant for p-adic places.
    pub fn parse(&self, input: &str) -> Result<Elem, ValuedError> {
        match self {
            Place::TAdic(f) => Ok(Elem::Fun(RatFun::parse(*f, "t", input)?)),
            Place::PAdic(_) => {
                let (n, d) = parse_ratfun_split(input)?;
                let parse_int = |s: &str| -> Result<BigInt, ValuedError> {
                    s.trim()
                        .parse()
                        .map_err(|_| ValuedError::Poly(PolyError::Parse(s.to_string())))
                };
                let num = parse_int(&n)?;
                let den = match d {
                    None => BigInt::one(),
                    Some(d) => parse_int(&d)?,
                };
                if den.is_zero() {
                    return Err(ValuedError::DivisionByZero);
                }
                Ok(Elem::Rat(BigRational::new(num, den)))
            }
        }
    }
}

fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// An element of a valued field: a rational function for the t-adic
/// places, a rational number for the p-adic ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Fun(RatFun),
    Rat(BigRational),
}

impl Elem {
    pub fn from_i64(place: &Place, n: i64) -> Elem {
        match place {
            Place::TAdic(f) => Elem::Fun(RatFun::constant(f.from_i64(n))),
            Place::PAdic(_) => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Fun(r) => r.is_zero(),
            Elem::Rat(q) => q.is_zero(),
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Fun(a), Elem::Fun(b)) => Elem::Fun(a.add(b)),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => panic!("mixed valued-field elements"),
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Fun(a) => Elem::Fun(a.neg()),
            Elem::Rat(a) => Elem::Rat(-a),
        }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Fun(a), Elem::Fun(b)) => Elem::Fun(a.mul(b)),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            _ => panic!("mixed valued-field elements"),
        }
    }

    pub fn inv(&self) -> Option<Elem> {
        match self {
            Elem::Fun(a) => a.inv().map(Elem::Fun),
            Elem::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Elem::Rat(a.recip()))
                }
            }
        }
    }

    pub fn div(&self, other: &Elem) -> Elem {
        self.mul(&other.inv().expect("division by zero"))
    }

    pub fn pow(&self, e: u32) -> Elem {
        match self {
            Elem::Fun(a) => Elem::Fun(a.pow(e)),
            Elem::Rat(a) => {
                let mut acc = BigRational::one();
                for _ in 0..e {
                    acc *= a;
                }
                Elem::Rat(acc)
            }
        }
    }

    /// Substitution t -> t^e; the identity on p-adic elements.
    pub fn stretch(&self, e: usize) -> Elem {
        match self {
            Elem::Fun(a) => Elem::Fun(a.stretch(e)),
            Elem::Rat(a) => Elem::Rat(a.clone()),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Fun(r) => write!(f, "{}", r),
            Elem::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RatFun {
        RatFun::parse(FieldSpec::Q, "t", s).unwrap()
    }

    #[test]
    fn ratfun_reduction_and_display() {
        let f = q("(t^2-1)/(t-1)");
        assert_eq!(f, q("t+1"));
        assert_eq!(f.to_string(), "t+1");
        // the canonical denominator is monic, so the sign moves up
        let g = q("(2+t)/(1-t)");
        assert_eq!(g.to_string(), "(-t-2)/(t-1)");
        assert!(g.den().coeffs()[g.den().degree().unwrap()].is_one());
        assert_eq!(g, q("(4+2*t)/(2-2*t)"));
    }

    #[test]
    fn t_adic_valuations() {
        let place = Place::t_adic_q();
        let v = |s: &str| place.valuation(&Elem::Fun(q(s))).unwrap();
        assert_eq!(v("t^3"), Some(3));
        assert_eq!(v("t^2+t^5"), Some(2));
        assert_eq!(v("1/t"), Some(-1));
        assert_eq!(v("(t^2+t^3)/(t^5)"), Some(-3));
        assert_eq!(v("7"), Some(0));
        assert_eq!(v("0"), None);
    }

    #[test]
    fn t_adic_residues() {
        let place = Place::t_adic_q();
        let r = |s: &str| place.residue(&Elem::Fun(q(s))).unwrap();
        assert_eq!(r("2+t").to_string(), "2");
        assert_eq!(r("t^2").to_string(), "0");
        assert_eq!(r("(2+t)/(1-t)").to_string(), "2");
        assert_eq!(
            place.residue(&Elem::Fun(q("1/t"))).unwrap_err(),
            ValuedError::NegativeValuation
        );
    }

    #[test]
    fn p_adic_place() {
        let place = Place::p_adic(5).unwrap();
        let e = place.parse("50/3").unwrap();
        assert_eq!(place.valuation(&e).unwrap(), Some(2));
        let u = place.parse("7/3").unwrap();
        assert_eq!(place.valuation(&u).unwrap(), Some(0));
        // 7/3 mod 5 = 2 * inv(3) = 2 * 2 = 4
        assert_eq!(place.residue(&u).unwrap().to_string(), "4");
        assert_eq!(Place::p_adic(6).unwrap_err(), ValuedError::NotPrime(6));
    }

    #[test]
    fn stretch_substitution() {
        let f = q("t^2+2*t");
        let place = Place::t_adic_q();
        let stretched = Elem::Fun(f.stretch(3));
        assert_eq!(place.valuation(&stretched).unwrap(), Some(3));
        assert_eq!(f.stretch(3), q("t^6+2*t^3"));
    }

    #[test]
    fn prime_field_functions() {
        let place = Place::t_adic_fp(7).unwrap();
        let f = place.parse("(t+10)/(1+t)").unwrap();
        assert_eq!(place.residue(&f).unwrap().to_string(), "3");
    }
}

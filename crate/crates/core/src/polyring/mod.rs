//! Exact multivariate polynomial arithmetic with monomial orders, Buchberger
//! Groebner bases, normal forms, standard-monomial counting, and module
//! syzygies under a position-over-term order.

mod grobner;
mod module;
mod order;
mod parse;

pub use grobner::{
    basis_cap, buchberger, buchberger_with_cap, is_nilpotent_mod, normal_form,
    normal_form_scrambled, set_basis_cap, std_monomial_count, std_monomial_count_of,
    GroebnerBasis, QuotientDim, DEFAULT_BASIS_CAP,
};
pub use module::{
    module_groebner, module_normal_form, module_quotient_dim, module_syzygies,
    syzygies_of_vectors, PolyVec,
};
pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_ratfun_split};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{FieldSpec, K};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("generator list is empty")]
    EmptyInput,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("basis cap of {0} elements exceeded")]
    BasisCap(usize),
    #[error("standard monomial enumeration exceeds {0} candidates")]
    EnumerationCap(usize),
    #[error("quotient is infinite-dimensional")]
    InfiniteQuotient,
}

/// A polynomial ring: an ordered variable list over a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldSpec,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldSpec) -> Arc<PolyRing> {
        assert!(
            vars.iter().collect::<std::collections::BTreeSet<_>>().len() == vars.len(),
            "duplicate variable names"
        );
        Arc::new(PolyRing { vars, field })
    }

    pub fn from_names(names: &[&str], field: FieldSpec) -> Arc<PolyRing> {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect(), field)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub type Monomial = Vec<u32>;

pub fn monomial_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn monomial_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// b / a, assuming divisibility.
pub fn monomial_quot(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn monomial_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn monomial_deg(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

/// An exact multivariate polynomial. Terms are keyed by exponent vector;
/// no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, K>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> MultiPoly {
        MultiPoly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: K) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, idx: usize) -> MultiPoly {
        let mut e = vec![0u32; ring.nvars()];
        e[idx] = 1;
        MultiPoly::from_terms(ring, vec![(e, ring.field.one())])
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, K)>) -> MultiPoly {
        let mut p = MultiPoly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "exponent vector length mismatch");
            p.add_term_in_place(&m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn same_ring(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| monomial_deg(m)).max()
    }

    pub fn coeff(&self, m: &[u32]) -> K {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn add_term_in_place(&mut self, m: &[u32], c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m.to_vec(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term_in_place(m, c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term_in_place(&monomial_mul(ma, mb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &[u32], c: &K) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (monomial_mul(mm, m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> MultiPoly {
        self.mul_term(&vec![0; self.ring.nvars()], c)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under `ord`, or `None` for the zero polynomial.
    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&Monomial, &K)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn make_monic(&self, ord: MonomialOrder) -> MultiPoly {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is a unit");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[var] -= 1;
            let factor = self.ring.field.from_i64(m[var] as i64);
            out.add_term_in_place(&mm, &c.mul(&factor));
        }
        out
    }

    /// Evaluates by substituting `images[i]` for variable `i`; the images
    /// live in `target` and there must be one per variable.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        assert!(images.iter().all(|f| *f.ring == **target));
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Polynomial with each exponent of `var` dropped to zero and the
    /// variable replaced by the constant `value`.
    pub fn eval_var(&self, var: usize, value: &K) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            let e = mm[var];
            mm[var] = 0;
            out.add_term_in_place(&mm, &c.mul(&value.pow(e as u64)));
        }
        out
    }

    /// Exact division by `var^e`; panics if some term is not divisible.
    pub fn divide_by_var_power(&self, var: usize, e: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m[var] >= e, "term not divisible by variable power");
                    let mut mm = m.clone();
                    mm[var] -= e;
                    (mm, c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // grevlex-descending display, parse-compatible with the input grammar
        let mut monos: Vec<&Monomial> = self.terms.keys().collect();
        monos.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b, a));
        for (i, m) in monos.iter().enumerate() {
            let c = &self.terms[*m];
            let is_const = m.iter().all(|&e| e == 0);
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut wrote_factor = false;
            if mag != "1" || is_const {
                write!(f, "{}", mag)?;
                wrote_factor = true;
            }
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.vars[v])?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::from_names(&["x", "y"], FieldSpec::Q)
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring2();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = x.mul(&x).sub(&y.scale(&r.field().from_i64(2)));
        assert_eq!(p.to_string(), "x^2-2*y");
        let q = p.add(&y.scale(&r.field().from_i64(2)));
        assert_eq!(q.to_string(), "x^2");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn substitution() {
        let r = ring2();
        let target = PolyRing::from_names(&["t"], FieldSpec::Q);
        let t = MultiPoly::var(&target, 0);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        // x^2 - y at (t, t^2) vanishes
        let p = x.mul(&x).sub(&y);
        let image = p.substitute(&target, &[t.clone(), t.mul(&t)]);
        assert!(image.is_zero());
    }

    #[test]
    fn derivative_rules() {
        let r = ring2();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = x.pow(3).mul(&y).add(&x); // x^3 y + x
        let dx = p.derivative(0);
        assert_eq!(dx.to_string(), "3*x^2*y+1");
    }
}

//! Shared exact coefficient arithmetic: the rationals and prime fields,
//! behind one element type, plus a small field abstraction used by the
//! projective and rational-function layers.

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("residue characteristic {0} is not supported here")]
    BadCharacteristic(u64),
    #[error("cannot parse {0:?} as a field element")]
    Parse(String),
}

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    /// The rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl FieldSpec {
    pub fn fp(p: u64) -> Result<FieldSpec, ArithError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Fp(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::zero()),
            FieldSpec::Fp(p) => K::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> K {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                K::Fp { p: *p, v: m }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> K {
        match self {
            FieldSpec::Q => K::Q(BigRational::from_integer(n.clone())),
            FieldSpec::Fp(p) => {
                let pp = BigInt::from(*p);
                let mut m = n % &pp;
                if m.sign() == Sign::Minus {
                    m += &pp;
                }
                let (_, digits) = m.to_u64_digits();
                K::Fp {
                    p: *p,
                    v: digits.first().copied().unwrap_or(0),
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "F{}", p),
        }
    }
}

/// An element of `Q` or of a prime field, tagged with its field.
///
/// Mixing elements of different fields is a programming error and panics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum K {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl K {
    pub fn spec(&self) -> FieldSpec {
        match self {
            K::Q(_) => FieldSpec::Q,
            K::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            K::Q(r) => r.is_zero(),
            K::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            K::Q(r) => r.is_one(),
            K::Fp { v, .. } => *v == 1,
        }
    }

    fn check_same(&self, other: &K) -> FieldSpec {
        let s = self.spec();
        assert_eq!(s, other.spec(), "mixed coefficient fields");
        s
    }

    pub fn add(&self, other: &K) -> K {
        self.check_same(other);
        match (self, other) {
            (K::Q(a), K::Q(b)) => K::Q(a + b),
            (K::Fp { p, v: a }, K::Fp { v: b, .. }) => K::Fp {
                p: *p,
                v: addmod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &K) -> K {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> K {
        match self {
            K::Q(a) => K::Q(-a),
            K::Fp { p, v } => K::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn mul(&self, other: &K) -> K {
        self.check_same(other);
        match (self, other) {
            (K::Q(a), K::Q(b)) => K::Q(a * b),
            (K::Fp { p, v: a }, K::Fp { v: b, .. }) => K::Fp {
                p: *p,
                v: mulmod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<K> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            K::Q(a) => K::Q(a.recip()),
            K::Fp { p, v } => K::Fp {
                p: *p,
                v: invmod(*v, *p),
            },
        })
    }

    pub fn div(&self, other: &K) -> K {
        self.mul(&other.inv().expect("division by zero"))
    }

    pub fn pow(&self, mut e: u64) -> K {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Parses `n` or `n/d` with optional leading sign.
    pub fn parse(spec: FieldSpec, s: &str) -> Result<K, ArithError> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let n: BigInt = num.parse().map_err(|_| ArithError::Parse(s.to_string()))?;
        let mut k = spec.from_bigint(&n);
        if let Some(d) = den {
            let d: BigInt = d.parse().map_err(|_| ArithError::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(ArithError::Parse(s.to_string()));
            }
            let kd = spec.from_bigint(&d);
            let inv = kd.inv().ok_or_else(|| ArithError::Parse(s.to_string()))?;
            k = k.mul(&inv);
        }
        Ok(k)
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            K::Fp { v, .. } => write!(f, "{}", v),
        }
    }
}

/// Minimal field interface: enough for projective points, cross-ratios and
/// rational-function arithmetic to be written once.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Field for K {
    fn zero_like(&self) -> Self {
        self.spec().zero()
    }
    fn one_like(&self) -> Self {
        self.spec().one()
    }
    fn add(&self, other: &Self) -> Self {
        K::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        K::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        K::mul(self, other)
    }
    fn neg(&self) -> Self {
        K::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        K::inv(self)
    }
    fn is_zero(&self) -> bool {
        K::is_zero(self)
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a nonzero mod p
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// gcd of a slice of integers, nonnegative; 0 for an empty or all-zero slice.
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = num::Integer::gcd(&g, x);
        if g.is_one() {
            break;
        }
    }
    g.abs()
}

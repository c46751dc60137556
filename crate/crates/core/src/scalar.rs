//! Exact arithmetic in the three coordinate division rings: prime fields
//! GF(p), arbitrary-precision rationals, and quaternions with rational
//! components.
//!
//! All values are exact; nothing ever rounds. Quaternion multiplication is
//! non-commutative, which is the whole point: it is what makes the Pappus
//! and Gallucci counterexample models tick.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("scalar kind mismatch: {0} vs {1}")]
    KindMismatch(ScalarKind, ScalarKind),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {kind} scalar from {text:?}")]
    Parse { kind: ScalarKind, text: String },
}

/// Which division ring a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Gf(u64),
    Rational,
    Quaternion,
}

impl ScalarKind {
    pub fn is_commutative(&self) -> bool {
        !matches!(self, ScalarKind::Quaternion)
    }

    /// Field order for finite kinds, `None` otherwise.
    pub fn order(&self) -> Option<u64> {
        match self {
            ScalarKind::Gf(p) => Some(*p),
            _ => None,
        }
    }

    /// A concrete non-commuting pair when one exists (quaternions only).
    pub fn commutativity_counterexample(&self) -> Option<(Scalar, Scalar)> {
        match self {
            ScalarKind::Quaternion => Some((Scalar::quaternion_i(), Scalar::quaternion_j())),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Gf(p) => write!(f, "gf:{p}"),
            ScalarKind::Rational => write!(f, "rational"),
            ScalarKind::Quaternion => write!(f, "quaternion"),
        }
    }
}

impl FromStr for ScalarKind {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(ScalarKind::Rational),
            "quaternion" => Ok(ScalarKind::Quaternion),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .and_then(|rest| rest.parse::<u64>().ok())
                    .ok_or_else(|| ScalarError::Parse {
                        kind: ScalarKind::Rational,
                        text: s.to_owned(),
                    })?;
                if !is_prime(p) {
                    return Err(ScalarError::NotPrime(p));
                }
                Ok(ScalarKind::Gf(p))
            }
        }
    }
}

impl Serialize for ScalarKind {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ScalarKind {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Quaternion with exact rational components: `a + b*i + c*j + d*k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Quaternion {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        Quaternion::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }

    pub fn sub(&self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }

    /// Hamilton product; order matters.
    pub fn mul(&self, rhs: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    /// Reduced norm `a^2 + b^2 + c^2 + d^2`; zero only for the zero quaternion.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn inverse(&self) -> Option<Quaternion> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let conj = self.conjugate();
        Some(Quaternion::new(
            conj.a / &n,
            conj.b / &n,
            conj.c / &n,
            conj.d / &n,
        ))
    }
}

/// One element of a division ring, tagged with its kind. Binary operations
/// require both operands to share the kind and report a mismatch otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Gf { p: u64, residue: u64 },
    Rational(BigRational),
    Quaternion(Quaternion),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Gf { p, .. } => ScalarKind::Gf(*p),
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Quaternion(_) => ScalarKind::Quaternion,
        }
    }

    pub fn zero(kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Gf(p) => Scalar::Gf { p, residue: 0 },
            ScalarKind::Rational => Scalar::Rational(BigRational::zero()),
            ScalarKind::Quaternion => Scalar::Quaternion(Quaternion::zero()),
        }
    }

    pub fn one(kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Gf(p) => Scalar::Gf { p, residue: 1 % p },
            ScalarKind::Rational => Scalar::Rational(BigRational::one()),
            ScalarKind::Quaternion => Scalar::Quaternion(Quaternion::one()),
        }
    }

    /// Embed a small integer into the ring.
    pub fn from_i64(kind: ScalarKind, n: i64) -> Scalar {
        match kind {
            ScalarKind::Gf(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Gf { p, residue: r }
            }
            ScalarKind::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            ScalarKind::Quaternion => Scalar::Quaternion(Quaternion::from_ints(n, 0, 0, 0)),
        }
    }

    pub fn gf(p: u64, n: i64) -> Scalar {
        Scalar::from_i64(ScalarKind::Gf(p), n)
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn quaternion(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::Quaternion(Quaternion::from_ints(a, b, c, d))
    }

    pub fn quaternion_i() -> Scalar {
        Scalar::quaternion(0, 1, 0, 0)
    }

    pub fn quaternion_j() -> Scalar {
        Scalar::quaternion(0, 0, 1, 0)
    }

    pub fn quaternion_k() -> Scalar {
        Scalar::quaternion(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gf { residue, .. } => *residue == 0,
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quaternion(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.kind())
    }

    fn check_kind(&self, rhs: &Scalar) -> Result<(), ScalarError> {
        if self.kind() != rhs.kind() {
            return Err(ScalarError::KindMismatch(self.kind(), rhs.kind()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_kind(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Gf { p, residue: a }, Scalar::Gf { residue: b, .. }) => Scalar::Gf {
                p: *p,
                residue: (a + b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_kind(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Gf { p, residue: a }, Scalar::Gf { residue: b, .. }) => Scalar::Gf {
                p: *p,
                residue: (a + p - b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.sub(b)),
            _ => unreachable!(),
        })
    }

    /// Product; non-commutative for quaternions.
    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_kind(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Gf { p, residue: a }, Scalar::Gf { residue: b, .. }) => Scalar::Gf {
                p: *p,
                residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Quaternion(a), Scalar::Quaternion(b)) => Scalar::Quaternion(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        Scalar::zero(self.kind())
            .sub(self)
            .expect("same kind by construction")
    }

    /// Two-sided multiplicative inverse. Errors on zero.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInverse);
        }
        Ok(match self {
            Scalar::Gf { p, residue } => Scalar::Gf {
                p: *p,
                residue: mod_inverse(*residue, *p),
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quaternion(q) => Scalar::Quaternion(q.inverse().expect("nonzero")),
        })
    }

    /// Canonical string form: decimal residue for GF(p), `n/d` (or plain `n`)
    /// for rationals, `a+bi+cj+dk` for quaternions.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn parse(kind: ScalarKind, text: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse {
            kind,
            text: text.to_owned(),
        };
        let t = text.trim();
        match kind {
            ScalarKind::Gf(p) => {
                let n: i64 = t.parse().map_err(|_| err())?;
                Ok(Scalar::gf(p, n))
            }
            ScalarKind::Rational => Ok(Scalar::Rational(parse_rational(t).ok_or_else(err)?)),
            ScalarKind::Quaternion => {
                Ok(Scalar::Quaternion(parse_quaternion(t).ok_or_else(err)?))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gf { residue, .. } => write!(f, "{residue}"),
            Scalar::Rational(r) => write!(f, "{}", format_rational(r)),
            Scalar::Quaternion(q) => {
                write!(f, "{}", format_rational(&q.a))?;
                for (comp, unit) in [(&q.b, "i"), (&q.c, "j"), (&q.d, "k")] {
                    if comp.is_negative() {
                        write!(f, "-{}{unit}", format_rational(&-comp))?;
                    } else {
                        write!(f, "+{}{unit}", format_rational(comp))?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Accepts the canonical `a+bi+cj+dk` form (signs may replace the `+`
/// separators) and short forms like `i`, `-2j`, `1/2`.
fn parse_quaternion(t: &str) -> Option<Quaternion> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut comps = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    let mut seen = [false; 4];
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (idx, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && idx != 0 && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        if ch == '+' && cur.is_empty() && idx != 0 {
            continue; // separator plus
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        if term.is_empty() || term == "+" || term == "-" {
            return None;
        }
        let (slot, body) = match term.chars().last() {
            Some('i') => (1, &term[..term.len() - 1]),
            Some('j') => (2, &term[..term.len() - 1]),
            Some('k') => (3, &term[..term.len() - 1]),
            _ => (0, term.as_str()),
        };
        if seen[slot] {
            return None;
        }
        seen[slot] = true;
        let coeff = match body {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rational(body)?,
        };
        comps[slot] = coeff;
    }
    let [a, b, c, d] = comps;
    Some(Quaternion::new(a, b, c, d))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "input not invertible");
    t.rem_euclid(p as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

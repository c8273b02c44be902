//! Exact scalar fields.
//!
//! A [`Field`] is a small context object that knows how to do arithmetic on
//! its element type. Two are provided: the rationals and prime fields with a
//! prime below 2^31.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field an algebra is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p as u64,
        }
    }

    /// Checks that a prime field really has prime order that fits the
    /// arithmetic.
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::Prime(p) = self {
            if p >= 1 << 31 || !is_prime(p as u64) {
                return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
            }
        }
        Ok(self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Prime(p) => write!(f, "gf({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `rational`, `gf(p)` and `gf:p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let inner = s
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("gf:"))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u32 = inner
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        FieldSpec::Prime(p).validate()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for a field.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Parses the `Display` form of an element.
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Roots in the field of the polynomial `sum poly[i] t^i`, or `None`
    /// when the search would be too expensive.
    fn roots(&self, poly: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }
}

/// An exact rational number.
///
/// Small values live in an `i64` ratio; anything that overflows moves to a
/// big rational and comes back when it fits again.
#[derive(Clone, Debug)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn from_int(v: i64) -> Self {
        Rational::Small(Ratio::from_integer(v))
    }

    pub fn new(n: i64, d: i64) -> Option<Self> {
        if d == 0 {
            return None;
        }
        Some(Rational::from_big(BigRational::new(n.into(), d.into())))
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            // i64::MIN would make negation overflow later.
            (Some(n), Some(d)) if n != i64::MIN => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(b),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(b) => b.is_negative(),
        }
    }

    fn binop(
        &self,
        other: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(r) = small(a, b) {
                if *r.numer() != i64::MIN {
                    return Rational::Small(r);
                }
            }
        }
        Rational::from_big(big(self.to_big(), other.to_big()))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a == b,
            (Rational::Big(a), Rational::Big(b)) => a == b,
            // Values are normalised, so a big value never fits in i64.
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> Rational {
        Rational::from_int(0)
    }
    fn one(&self) -> Rational {
        Rational::from_int(1)
    }
    fn from_i64(&self, v: i64) -> Rational {
        if v == i64::MIN {
            Rational::Big(BigRational::from_integer(v.into()))
        } else {
            Rational::from_int(v)
        }
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_add(y), |x, y| x + y)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_sub(y), |x, y| x - y)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_mul(y), |x, y| x * y)
    }
    fn neg(&self, a: &Rational) -> Rational {
        match a {
            Rational::Small(r) => Rational::Small(-r),
            Rational::Big(b) => Rational::from_big(-b.clone()),
        }
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            return None;
        }
        Some(match a {
            Rational::Small(r) => Rational::Small(r.recip()),
            Rational::Big(b) => Rational::from_big(b.recip()),
        })
    }
    fn div(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        if b.is_zero() {
            return None;
        }
        Some(a.binop(b, |x, y| x.checked_div(y), |x, y| x / y))
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        matches!(a, Rational::Small(r) if r.is_one())
    }
    fn parse_elem(&self, s: &str) -> Option<Rational> {
        s.parse().ok()
    }
    fn roots(&self, poly: &[Rational]) -> Option<Vec<Rational>> {
        rational_roots(poly)
    }
}

fn eval<K: Field>(k: &K, poly: &[K::Elem], x: &K::Elem) -> K::Elem {
    let mut acc = k.zero();
    for c in poly.iter().rev() {
        acc = k.add(&k.mul(&acc, x), c);
    }
    acc
}

fn divisors(n: u64) -> Option<Vec<u64>> {
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational root theorem on the integer polynomial obtained by clearing
/// denominators.
fn rational_roots(poly: &[Rational]) -> Option<Vec<Rational>> {
    let q = Rationals;
    let mut p: Vec<Rational> = poly.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut out = Vec::new();
    // Factor out t^m
    let low = p.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        out.push(q.zero());
    }
    let p = &p[low..];
    if p.len() <= 1 {
        return Some(out);
    }
    let mut lcm = BigInt::one();
    for c in p {
        let d = c.to_big().denom().clone();
        lcm = num_integer::Integer::lcm(&lcm, &d);
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c.to_big() * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let c0 = ints[0].abs().to_u64()?;
    let cn = ints[ints.len() - 1].abs().to_u64()?;
    let (d0, dn) = (divisors(c0)?, divisors(cn)?);
    for &a in &d0 {
        for &b in &dn {
            for sign in [1i64, -1] {
                let Some(r) = Rational::new(sign * a as i64, b as i64) else { continue };
                if !out.contains(&r) && eval(&q, p, &r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    Some(out)
}

/// An element of a prime field, stored as its least non-negative residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(pub u32);

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field with `p` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let p = self.p as u64;
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> Fp {
        Fp(0)
    }
    fn one(&self) -> Fp {
        Fp(1 % self.p)
    }
    fn from_i64(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u32)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        Fp((s % self.p as u64) as u32)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        let s = a.0 as u64 + self.p as u64 - b.0 as u64;
        Fp((s % self.p as u64) as u32)
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp((a.0 as u64 * b.0 as u64 % self.p as u64) as u32)
    }
    fn neg(&self, a: &Fp) -> Fp {
        if a.0 == 0 {
            Fp(0)
        } else {
            Fp(self.p - a.0)
        }
    }
    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            None
        } else {
            Some(Fp(self.pow(a.0 as u64, self.p as u64 - 2) as u32))
        }
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
    fn parse_elem(&self, s: &str) -> Option<Fp> {
        let v: i64 = s.trim().parse().ok()?;
        Some(self.from_i64(v))
    }
    fn roots(&self, poly: &[Fp]) -> Option<Vec<Fp>> {
        if self.p > 1 << 20 {
            return None;
        }
        Some((0..self.p).map(Fp).filter(|x| eval(self, poly, x).0 == 0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let q = Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = q.div(&sq, &big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_)));
    }

    #[test]
    fn rational_parse_display() {
        let r: Rational = "-6/4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rationals.parse_elem("7"), Some(Rational::from_int(7)));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let x = f.from_i64(a);
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        assert_eq!(f.from_i64(-1), Fp(6));
        assert!(PrimeField::new(8).is_err());
    }

    #[test]
    fn field_spec_parse() {
        assert_eq!("gf:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert_eq!("gf(5)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("gf(9)".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(3).to_string(), "gf(3)");
    }

    #[test]
    fn roots_of_small_polynomials() {
        let q = Rationals;
        // (t - 1/2)(t + 3) t = t^3 + 5/2 t^2 - 3/2 t
        let p = [q.zero(), Rational::new(-3, 2).unwrap(), Rational::new(5, 2).unwrap(), q.one()];
        let mut r = q.roots(&p).unwrap();
        r.sort_by_key(|x| x.to_string());
        assert_eq!(r.len(), 3);
        assert!(r.contains(&Rational::new(1, 2).unwrap()) && r.contains(&q.from_i64(-3)));
        let f = PrimeField::new(7).unwrap();
        // t^2 + 1 has no roots mod 7
        assert!(f.roots(&[Fp(1), Fp(0), Fp(1)]).unwrap().is_empty());
    }

    #[test]
    fn min_value_does_not_overflow() {
        let q = Rationals;
        let m = q.from_i64(i64::MIN);
        let n = q.neg(&m);
        assert_eq!(q.add(&m, &n), q.zero());
        let a = q.from_i64(i64::MIN + 1);
        let b = q.sub(&a, &q.one());
        assert_eq!(b, m);
    }
}

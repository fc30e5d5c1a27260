//! Exact scalar towers: rationals, Gaussian rationals, and truncated series in
//! a formal parameter `t` and its conjugate `t̄`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact commutative ring element with a conjugation.
///
/// Every tower in this crate implements it; forms and matrices are generic
/// over it.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Involutive ring automorphism fixing the rationals.
    fn conj(&self) -> Self;
    fn from_rational(q: &Q) -> Self;
    fn from_gauss(g: &Gq) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A scalar ring that is also a field.
pub trait Field: Scalar + Div<Output = Self> {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $tr::$m(&self, rhs)
            }
        }
    };
    ($ty:ty, $tr:ident, $m:ident, $assign_tr:ident, $assign_m:ident) => {
        forward_binop!($ty, $tr, $m);
        impl $assign_tr for $ty {
            fn $assign_m(&mut self, rhs: $ty) {
                *self = $tr::$m(&*self, &rhs);
            }
        }
        impl<'a> $assign_tr<&'a $ty> for $ty {
            fn $assign_m(&mut self, rhs: &'a $ty) {
                *self = $tr::$m(&*self, rhs);
            }
        }
    };
}

// ---------------------------------------------------------------------------
// Rationals

/// Exact rational number, always stored reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Q {
        Q(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Exact square root, if the value is the square of a rational.
    pub fn sqrt(&self) -> Option<Q> {
        if self.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Q(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut out = Q::from(1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        if rhs.0.is_zero() {
            return self.clone();
        }
        if self.0.is_zero() {
            return rhs.clone();
        }
        Q(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, rhs: &Q) -> Q {
        if rhs.0.is_zero() {
            return self.clone();
        }
        Q(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        if self.0.is_zero() || rhs.0.is_zero() {
            return Q::default();
        }
        if self.0.is_one() {
            return rhs.clone();
        }
        if rhs.0.is_one() {
            return self.clone();
        }
        Q(&self.0 * &rhs.0)
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, rhs: &Q) -> Q {
        assert!(!rhs.0.is_zero(), "division by zero");
        Q(&self.0 / &rhs.0)
    }
}

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        &self / &rhs
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

forward_binop!(Q, Add, add, AddAssign, add_assign);
forward_binop!(Q, Sub, sub, SubAssign, sub_assign);
forward_binop!(Q, Mul, mul);

impl Scalar for Q {
    fn zero() -> Q {
        Q::default()
    }
    fn one() -> Q {
        Q::from(1)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn conj(&self) -> Q {
        self.clone()
    }
    fn from_rational(q: &Q) -> Q {
        q.clone()
    }
    fn from_gauss(g: &Gq) -> Q {
        assert!(g.im.is_zero(), "non-real value {g} in the rational tower");
        g.re.clone()
    }
}

impl Field for Q {
    fn inv(&self) -> Q {
        assert!(!self.0.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = Error;

    fn from_str(s: &str) -> Result<Q, Error> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid rational `{s}`"),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q(BigRational::new(n, d)))
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    pub re: Q,
    pub im: Q,
}

impl Gq {
    pub fn new(re: Q, im: Q) -> Gq {
        Gq { re, im }
    }

    pub fn real(re: Q) -> Gq {
        Gq { re, im: Q::default() }
    }

    pub fn i() -> Gq {
        Gq::new(Q::default(), Q::from(1))
    }

    pub fn int(n: i64) -> Gq {
        Gq::real(Q::from(n))
    }

    pub fn ratio(num: i64, den: i64) -> Gq {
        Gq::real(Q::new(num, den))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`, a rational.
    pub fn norm_sqr(&self) -> Q {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, q: &Q) -> Gq {
        Gq::new(&self.re * q, &self.im * q)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Gq {
        Gq::int(n)
    }
}

impl From<Q> for Gq {
    fn from(q: Q) -> Gq {
        Gq::real(q)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, rhs: &Gq) -> Gq {
        Gq::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, rhs: &Gq) -> Gq {
        Gq::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, rhs: &Gq) -> Gq {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Gq::new(re, im)
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Gq) -> Gq {
        self * &rhs.inv()
    }
}

impl Div for Gq {
    type Output = Gq;
    fn div(self, rhs: Gq) -> Gq {
        &self / &rhs
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-&self.re, -&self.im)
    }
}

forward_binop!(Gq, Add, add, AddAssign, add_assign);
forward_binop!(Gq, Sub, sub, SubAssign, sub_assign);
forward_binop!(Gq, Mul, mul);

impl Scalar for Gq {
    fn zero() -> Gq {
        Gq::default()
    }
    fn one() -> Gq {
        Gq::int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Gq {
        Gq::new(self.re.clone(), -&self.im)
    }
    fn from_rational(q: &Q) -> Gq {
        Gq::real(q.clone())
    }
    fn from_gauss(g: &Gq) -> Gq {
        g.clone()
    }
}

impl Field for Gq {
    fn inv(&self) -> Gq {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return Gq::real(self.re.inv());
        }
        let ninv = n.inv();
        Gq::new(&self.re * &ninv, -(&self.im * &ninv))
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_str = |im: &Q| -> String {
            if im.is_one() {
                "i".to_string()
            } else if *im == Q::from(-1) {
                "-i".to_string()
            } else {
                format!("{im} i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_str(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}", self.re, im_str(&-&self.im))
                } else {
                    write!(f, "{}+{}", self.re, im_str(&self.im))
                }
            }
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gq {
    type Err = Error;

    /// Accepts the `Display` output: `a`, `b i`, `a+b i`, `a-b i`, `i`, `-i`,
    /// plus the compact spellings `bi` and `a+bi`.
    fn from_str(s: &str) -> Result<Gq, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid Gaussian rational `{s}`"),
        };
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gq::real(t.parse()?));
        };
        // Split real and imaginary parts at the last sign that is not leading.
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im {
            "" | "+" => Q::from(1),
            "-" => Q::from(-1),
            other => other.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        let re = if re.is_empty() {
            Q::default()
        } else {
            re.parse().map_err(|_| bad())?
        };
        Ok(Gq::new(re, im))
    }
}

// Integers travel as JSON numbers, everything else as strings.

fn small_integer(q: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    q.is_integer().then(|| q.numer().to_i64()).flatten()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Int(i64),
    Str(String),
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match small_integer(self) {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Int(n) => Ok(Q::from(n)),
            NumberOrString::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for Gq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (self.im.is_zero(), small_integer(&self.re)) {
            (true, Some(n)) => s.serialize_i64(n),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Gq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Gq, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Int(n) => Ok(Gq::from(Q::from(n))),
            NumberOrString::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

// ---------------------------------------------------------------------------
// Truncated series in t and t̄

/// Default truncation order for series arithmetic.
pub const DEFAULT_ORDER: u32 = 2;

/// Polynomial in `t` and `t̄` with Gaussian-rational coefficients, truncated
/// at total degree `order`.
///
/// `t` and `t̄` are independent formal variables; [`Series::eval`] substitutes
/// `t̄ := conj(t)`. Terms of total degree above `order` are dropped by every
/// operation, and mixing two orders keeps the smaller one.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    order: u32,
    /// `(a, b)` ↦ coefficient of `t^a t̄^b`; zero coefficients are not stored.
    terms: BTreeMap<(u32, u32), Gq>,
}

impl Series {
    pub fn constant(c: Gq, order: u32) -> Series {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Series { order, terms }
    }

    /// `c · t^a t̄^b`.
    pub fn monomial(c: Gq, a: u32, b: u32, order: u32) -> Series {
        let mut terms = BTreeMap::new();
        if a + b <= order && !c.is_zero() {
            terms.insert((a, b), c);
        }
        Series { order, terms }
    }

    /// The parameter `t` itself.
    pub fn t(order: u32) -> Series {
        Series::monomial(Gq::int(1), 1, 0, order)
    }

    pub fn tbar(order: u32) -> Series {
        Series::monomial(Gq::int(1), 0, 1, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn with_order(mut self, order: u32) -> Series {
        self.order = order;
        self.terms.retain(|&(a, b), _| a + b <= order);
        self
    }

    /// Coefficient of `t^a t̄^b`.
    pub fn coeff(&self, a: u32, b: u32) -> Gq {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Gq)> {
        self.terms.iter()
    }

    /// Substitute `t := t0` and `t̄ := conj(t0)`.
    pub fn eval(&self, t0: &Gq) -> Gq {
        let tb = t0.conj();
        let mut acc = Gq::zero();
        for (&(a, b), c) in &self.terms {
            let mut m = c.clone();
            for _ in 0..a {
                m = &m * t0;
            }
            for _ in 0..b {
                m = &m * &tb;
            }
            acc += m;
        }
        acc
    }

    fn combine(&self, rhs: &Series, sign: bool) -> Series {
        let order = self.order.min(rhs.order);
        let mut terms: BTreeMap<(u32, u32), Gq> = self
            .terms
            .iter()
            .filter(|(&(a, b), _)| a + b <= order)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (&k, v) in &rhs.terms {
            if k.0 + k.1 > order {
                continue;
            }
            let e = terms.entry(k).or_default();
            if sign {
                *e += v;
            } else {
                *e -= v;
            }
            if e.is_zero() {
                terms.remove(&k);
            }
        }
        Series { order, terms }
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.combine(rhs, true)
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.combine(rhs, false)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let mut terms: BTreeMap<(u32, u32), Gq> = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                let key = (a1 + a2, b1 + b2);
                if key.0 + key.1 > order {
                    continue;
                }
                *terms.entry(key).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Series { order, terms }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            order: self.order,
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

forward_binop!(Series, Add, add, AddAssign, add_assign);
forward_binop!(Series, Sub, sub, SubAssign, sub_assign);
forward_binop!(Series, Mul, mul);

impl Scalar for Series {
    /// Constants built through the trait carry no truncation of their own
    /// and adopt the order of whatever they are combined with.
    fn zero() -> Series {
        Series::constant(Gq::zero(), u32::MAX)
    }
    fn one() -> Series {
        Series::constant(Gq::one(), u32::MAX)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn conj(&self) -> Series {
        Series {
            order: self.order,
            terms: self.terms.iter().map(|(&(a, b), v)| ((b, a), v.conj())).collect(),
        }
    }
    fn from_rational(q: &Q) -> Series {
        Series::constant(Gq::real(q.clone()), u32::MAX)
    }
    fn from_gauss(g: &Gq) -> Series {
        Series::constant(g.clone(), u32::MAX)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match a {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "tb")?,
                _ => write!(f, "tb^{b}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[K={}]({self})", self.order)
    }
}

//! Exact scalars: arbitrary-precision rationals and prime-field elements.
//!
//! Rationals keep a machine-word fast path and promote to `BigRational`
//! on overflow. A `Scalar` is either kind; integer-valued rationals are
//! coerced into F_p when the two meet, so constants such as `Scalar::zero()`
//! work in both settings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for F_p (products of residues fit in `u64`).
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Debug)]
pub enum Rational {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(num.into(), den.into()))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n == 0,
            Rational::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Self::from_i128(a + c, b);
            }
            return Self::from_i128(a * d + c * b, b * d);
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == o.to_big(),
        }
    }
}
impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// Residue class modulo a prime `p ≤ MAX_PRIME`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.v;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }

    fn inv(self) -> Result<Fp> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    fn from_rational(r: &Rational, p: u64) -> Result<Fp> {
        let pb = BigInt::from(p);
        let n = r.numer().mod_floor(&pb).to_u64().unwrap();
        let d = r.denom().mod_floor(&pb).to_u64().unwrap();
        let d = Fp { v: d, p };
        Ok(Fp { v: n, p }.mul(d.inv().map_err(|_| {
            Error::Parse(format!("denominator of {r} is not invertible modulo {p}"))
        })?))
    }

    fn add(self, o: Fp) -> Fp {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }

    fn mul(self, o: Fp) -> Fp {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }

    fn neg(self) -> Fp {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
}

/// Base field of a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldKind {
    #[default]
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::Parse(format!(
                "field characteristic {p} is not a prime in [2, {MAX_PRIME}]"
            )));
        }
        Ok(FieldKind::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime { p } => *p,
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Q(Rational::from_int(n)),
            FieldKind::Prime { p } => Scalar::F(Fp::new(n, *p)),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// Coerces a scalar into this field.
    pub fn embed(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (FieldKind::Rational, Scalar::Q(_)) => Ok(s.clone()),
            (FieldKind::Prime { p }, Scalar::Q(r)) => Ok(Scalar::F(Fp::from_rational(r, *p)?)),
            (FieldKind::Prime { p }, Scalar::F(f)) if f.p == *p => Ok(s.clone()),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Parses an exact coefficient literal (`"3"`, `"-1/3"`).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        self.embed(&Scalar::Q(Rational::parse(s)?))
    }

    pub fn describe(&self) -> String {
        match self {
            FieldKind::Rational => "Q".to_string(),
            FieldKind::Prime { p } => format!("F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Q(Rational),
    F(Fp),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(Rational::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar::Q(Rational::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Q(Rational::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(f) => f.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rational::Small(1, 1)) => true,
            Scalar::Q(_) => false,
            Scalar::F(f) => f.v == 1,
        }
    }

    /// Integer value when the scalar is an integer rational or an F_p residue
    /// (symmetric representative).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rational::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::F(f) => {
                let v = f.v as i64;
                Some(if f.v > f.p / 2 { v - f.p as i64 } else { v })
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => Ok(Scalar::Q(r.inv()?)),
            Scalar::F(f) => Ok(Scalar::F(f.inv()?)),
        }
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::F(f) => Some(f.p),
            Scalar::Q(_) => None,
        }
    }

    fn as_fp(&self, p: u64) -> Fp {
        match self {
            Scalar::F(f) => *f,
            Scalar::Q(r) => Fp::from_rational(r, p).expect("rational not representable in F_p"),
        }
    }

    fn binop(
        &self,
        o: &Scalar,
        q: impl Fn(&Rational, &Rational) -> Rational,
        f: impl Fn(Fp, Fp) -> Fp,
    ) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q(a, b)),
            _ => {
                let p = self.modulus().or(o.modulus()).unwrap();
                Scalar::F(f(self.as_fp(p), o.as_fp(p)))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }
}
impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(x) => write!(f, "{}", x.v),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.binop(o, Rational::add, Fp::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.binop(o, Rational::sub, |a, b| a.add(b.neg()))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.binop(o, Rational::mul, Fp::mul)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.neg()),
            Scalar::F(f) => Scalar::F(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

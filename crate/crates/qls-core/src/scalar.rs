//! Exact scalars: rationals, optionally extended to Gaussian rationals `a + b·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::QlsError;

/// Which exact field a computation is allowed to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers.
    #[default]
    Rational,
    /// The Gaussian rationals `ℚ(i)`.
    Gaussian,
}

impl Field {
    /// Reads the field selection from the `QLS_FIELD` environment variable.
    pub fn from_env() -> Result<Self, QlsError> {
        match std::env::var("QLS_FIELD") {
            Err(_) => Ok(Field::Rational),
            Ok(v) => v.parse(),
        }
    }

    /// Whether `s` belongs to this field.
    pub fn contains(self, s: &Scalar) -> bool {
        self == Field::Gaussian || s.is_real()
    }
}

impl FromStr for Field {
    type Err = QlsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "" | "rational" => Ok(Field::Rational),
            "gaussian" => Ok(Field::Gaussian),
            other => Err(QlsError::Parse(format!("unknown field `{other}`"))),
        }
    }
}

/// An exact element of `ℚ(i)`; purely rational values have a zero imaginary part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational number `num / den`; fails when `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Result<Self, QlsError> {
        if den == 0 {
            return Err(QlsError::DivisionByZero);
        }
        Ok(Self::real(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Exact division; dividing by zero is an error.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, QlsError> {
        rhs.inv().map(|r| self * &r).ok_or(QlsError::DivisionByZero)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Approximate value as `(re, im)` floating-point pair.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Canonical string of a rational: `"p"` for integers, `"p/q"` otherwise.
    pub fn rational_string(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Parses `"p"`, `"-p/q"` and similar exact rational strings.
    pub fn parse_rational(s: &str) -> Result<BigRational, QlsError> {
        let bad = || QlsError::Parse(format!("invalid rational `{s}`"));
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(QlsError::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl FromStr for Scalar {
    type Err = QlsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self::real(Self::parse_rational(s)?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return f.write_str(&Self::rational_string(&self.re));
        }
        let im = &self.im;
        let im_str = if im.abs().is_one() {
            String::new()
        } else {
            Self::rational_string(&im.abs())
        };
        if self.re.is_zero() {
            let sign = if im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_str}i")
        } else {
            let sign = if im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{im_str}i", Self::rational_string(&self.re))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_real() && rhs.is_real() {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn field_arithmetic_is_exact() {
        let a = q(1, 3);
        let b = q(2, 3);
        assert_eq!(&a + &b, Scalar::one());
        assert_eq!(&a * &b, q(2, 9));
        assert_eq!(a.checked_div(&b).unwrap(), q(1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(QlsError::DivisionByZero)));
        assert!(Scalar::ratio(1, 0).is_err());
        assert!("3/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::gaussian(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(q(-6, 4).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!("  -3/6 ".parse::<Scalar>().unwrap(), q(-1, 2));
        assert_eq!(Scalar::i().to_string(), "i");
        let z = Scalar::gaussian(BigRational::from_integer(1.into()), BigRational::new((-1).into(), 2.into()));
        assert_eq!(z.to_string(), "1-1/2i");
    }

    #[test]
    fn field_selection_parses() {
        assert_eq!("gaussian".parse::<Field>().unwrap(), Field::Gaussian);
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("real".parse::<Field>().is_err());
        assert!(!Field::Rational.contains(&Scalar::i()));
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        if self.is_real() {
            serializer.serialize_str(&Scalar::rational_string(&self.re))
        } else {
            let mut map = serializer.serialize_map(Some(2))?;
            map.serialize_entry("im", &Scalar::rational_string(&self.im))?;
            map.serialize_entry("re", &Scalar::rational_string(&self.re))?;
            map.end()
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
    Pair { re: Box<RawScalar>, im: Box<RawScalar> },
}

impl RawScalar {
    fn real_part(self) -> Result<BigRational, QlsError> {
        match self {
            RawScalar::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
            RawScalar::Text(s) => Scalar::parse_rational(&s),
            RawScalar::Pair { .. } => Err(QlsError::Parse("nested complex scalar".into())),
        }
    }

    fn into_scalar(self) -> Result<Scalar, QlsError> {
        match self {
            RawScalar::Pair { re, im } => Ok(Scalar::gaussian(re.real_part()?, im.real_part()?)),
            RawScalar::Text(s) => s.parse(),
            other => Ok(Scalar::real(other.real_part()?)),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawScalar::deserialize(deserializer)?.into_scalar().map_err(serde::de::Error::custom)
    }
}

//! Exact scalars: big rationals, real quadratic surds `a + b√d`, and the
//! integer cubic polynomials that arise as characteristic polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big_rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Splits `d = f² · r` with `r` squarefree.
pub fn square_part(d: u64) -> (u64, u64) {
    if d == 0 {
        return (1, 0);
    }
    let mut rest = d;
    let (mut f, mut r) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (f, r * rest)
}

/// A real number `a + b√d` with rational `a`, `b` and squarefree `d`.
///
/// `d = 0` encodes a rational value; any input that turns out rational after
/// normalization is stored with `b = 0, d = 0`, so derived equality is exact
/// value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Canonical form of `a + b√d`: square factors of `d` move into `b`, and a
/// value that is rational collapses to `d = 0`.
pub fn surd_normalize(a: Rational, b: Rational, d: u64) -> QuadSurd {
    if d == 0 || b.is_zero() {
        return QuadSurd {
            a,
            b: Rational::zero(),
            d: 0,
        };
    }
    let (f, r) = square_part(d);
    let b = b * big_rat(f);
    if r == 1 {
        QuadSurd {
            a: a + b,
            b: Rational::zero(),
            d: 0,
        }
    } else {
        QuadSurd { a, b, d: r }
    }
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        surd_normalize(a, b, d)
    }

    pub fn zero() -> Self {
        QuadSurd::from(Rational::zero())
    }

    pub fn one() -> Self {
        QuadSurd::from(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        QuadSurd::from(int(n))
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        surd_normalize(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.b
    }

    /// Radicand; 0 for rational values.
    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * big_rat(self.d)
    }

    fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::IncompatibleFields(x, y)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(surd_normalize(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(surd_normalize(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * big_rat(d);
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(surd_normalize(a, b, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(surd_normalize(
            &self.a / &n,
            -(&self.b / &n),
            self.d,
        ))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        surd_normalize(&self.a * r, &self.b * r, self.d)
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = QuadSurd::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact sign, by comparing `a²` against `d·b²` when the parts disagree.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            (sa, sb) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * big_rat(self.d);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Writes the value as `(A + B√d)/2`, returning `(A, B)` when both are integers.
    pub fn half_integral_parts(&self) -> Option<(BigInt, BigInt)> {
        let two = big_rat(2);
        let a2 = &self.a * &two;
        let b2 = &self.b * &two;
        (a2.is_integer() && b2.is_integer()).then(|| (a2.to_integer(), b2.to_integer()))
    }
}

fn sign_of(r: &Rational) -> Ordering {
    r.cmp(&Rational::zero())
}

/// Three-way comparison without floating point.
pub fn surd_compare(x: &QuadSurd, y: &QuadSurd) -> Result<Ordering> {
    Ok(x.checked_sub(y)?.signum())
}

/// Roots `(α, 1/α)` of `t² - st + 1`, larger first.
pub fn solve_unit_quadratic(s: i64) -> Result<(QuadSurd, QuadSurd)> {
    let disc = (s as i128) * (s as i128) - 4;
    if disc < 0 {
        return Err(Error::ComplexRoots(s));
    }
    let d = u64::try_from(disc).map_err(|_| Error::Overflow)?;
    let half_s = rat(s, 2);
    let half = rat(1, 2);
    let hi = surd_normalize(half_s.clone(), half.clone(), d);
    let lo = surd_normalize(half_s, -half, d);
    Ok((hi, lo))
}

impl From<Rational> for QuadSurd {
    fn from(a: Rational) -> Self {
        QuadSurd {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }
}

impl From<i64> for QuadSurd {
    fn from(n: i64) -> Self {
        QuadSurd::from_int(n)
    }
}

impl PartialOrd for QuadSurd {
    /// `None` across incompatible fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        surd_compare(self, other).ok()
    }
}

// Operator sugar for values already known to share a field. Mixing fields
// through these panics; use the `checked_*` forms on untrusted combinations.
macro_rules! surd_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadSurd> for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                self.$checked(rhs).expect("surd operands from different fields")
            }
        }
        impl $trait<QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                (&self).$method(&rhs)
            }
        }
    };
}

surd_binop!(Add, add, checked_add);
surd_binop!(Sub, sub, checked_sub);
surd_binop!(Mul, mul, checked_mul);

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = self.b.abs();
        let root = if coeff.is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", coeff, self.d)
        };
        let negative = self.b.is_negative();
        if self.a.is_zero() {
            if negative {
                write!(f, "-{root}")
            } else {
                f.write_str(&root)
            }
        } else {
            let op = if negative { '-' } else { '+' };
            write!(f, "{} {} {}", self.a, op, root)
        }
    }
}

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

/// Strict rational parser: `[-]digits[/digits]`, nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(format!("invalid rational {s:?}")));
        }
        BigInt::from_str(t).map_err(|e| parse_err(e.to_string()))
    };
    let mut n = digits(num)?;
    if neg {
        n = -n;
    }
    let d = match den {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(parse_err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

impl FromStr for QuadSurd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(pos) = s.find('√') else {
            return Ok(QuadSurd::from(parse_rational(s)?));
        };
        let radicand = &s[pos + '√'.len_utf8()..];
        if radicand.is_empty() || !radicand.bytes().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(format!("invalid radicand in {s:?}")));
        }
        let d: u64 = radicand
            .parse()
            .map_err(|_| parse_err(format!("radicand out of range in {s:?}")))?;
        if d == 0 {
            return Err(parse_err("radicand must be positive"));
        }
        let head = &s[..pos];
        let left = head.trim_end();
        let (a, coeff, negative) = if let Some(idx) = head.rfind(" + ") {
            (parse_rational(&head[..idx])?, head[idx + 3..].trim(), false)
        } else if let Some(idx) = head.rfind(" - ") {
            (parse_rational(&head[..idx])?, head[idx + 3..].trim(), true)
        } else if let Some(rest) = left.strip_prefix('-') {
            (Rational::zero(), rest, true)
        } else {
            (Rational::zero(), left, false)
        };
        let mut b = if coeff.is_empty() {
            Rational::one()
        } else {
            if coeff.starts_with('-') {
                return Err(parse_err(format!("misplaced sign in {s:?}")));
            }
            parse_rational(coeff)?
        };
        if negative {
            b = -b;
        }
        Ok(surd_normalize(a, b, d))
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadSurd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter rendering a [`Rational`] as `"a/b"`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// `c3·t³ + c2·t² + c1·t + c0` with `c3 = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i128; 4]", into = "[i128; 4]")]
pub struct CubicPolyZ {
    coeffs: [i128; 4],
}

impl CubicPolyZ {
    pub fn new(coeffs: [i128; 4]) -> Result<Self> {
        if coeffs[0].abs() != 1 {
            return Err(Error::Validation(format!(
                "leading coefficient {} is not a unit",
                coeffs[0]
            )));
        }
        Ok(CubicPolyZ { coeffs })
    }

    /// Coefficients from the leading one down.
    pub fn coeffs(&self) -> [i128; 4] {
        self.coeffs
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().fold(0, |acc, c| acc * t + c)
    }

    /// For a monic cubic with root 1, returns `(p, q)` with
    /// `self = (t - 1)(t² + p·t + q)`.
    pub fn divide_by_t_minus_one(&self) -> Option<(i128, i128)> {
        if self.coeffs[0] != 1 || self.eval(1) != 0 {
            return None;
        }
        let [_, c2, c1, _] = self.coeffs;
        let p = c2 + 1;
        let q = c1 + p;
        Some((p, q))
    }
}

impl TryFrom<[i128; 4]> for CubicPolyZ {
    type Error = Error;
    fn try_from(c: [i128; 4]) -> Result<Self> {
        CubicPolyZ::new(c)
    }
}

impl From<CubicPolyZ> for [i128; 4] {
    fn from(p: CubicPolyZ) -> Self {
        p.coeffs
    }
}

impl fmt::Display for CubicPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = 3 - i;
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match power {
                0 => String::new(),
                1 => "t".to_string(),
                p => format!("t^{p}"),
            };
            if mag != 1 || power == 0 {
                write!(f, "{mag}{mono}")?;
            } else {
                f.write_str(&mono)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: Rational, b: Rational, d: u64) -> QuadSurd {
        surd_normalize(a, b, d)
    }

    #[test]
    fn normalize_examples() {
        let x = s(int(0), int(1), 8);
        assert_eq!((x.rational_part(), x.surd_coefficient(), x.field()), (&int(0), &int(2), 2));
        let y = s(int(3), int(0), 5);
        assert_eq!(y, QuadSurd::from_int(3));
        assert_eq!(y.field(), 0);
        let z = s(rat(1, 2), rat(1, 2), 9);
        assert_eq!(z, QuadSurd::from_int(2));
        assert_eq!(s(int(4), int(7), 1), QuadSurd::from_int(11));
        assert_eq!(s(int(4), int(7), 0), QuadSurd::from_int(4));
    }

    #[test]
    fn square_part_cases() {
        assert_eq!(square_part(8), (2, 2));
        assert_eq!(square_part(5), (1, 5));
        assert_eq!(square_part(72), (6, 2));
        assert_eq!(square_part(1), (1, 1));
        assert_eq!(square_part(45), (3, 5));
        assert_eq!(square_part(12), (2, 3));
        assert_eq!(square_part(180), (6, 5));
        assert_eq!(square_part(30), (1, 30));
    }

    #[test]
    fn unit_quadratic_examples() {
        let (a, b) = solve_unit_quadratic(2).unwrap();
        assert_eq!((a, b), (QuadSurd::one(), QuadSurd::one()));

        let (a, b) = solve_unit_quadratic(3).unwrap();
        assert_eq!(a, s(rat(3, 2), rat(1, 2), 5));
        assert_eq!(b, s(rat(3, 2), rat(-1, 2), 5));
        assert!((&a * &b).is_one());
        assert_eq!(&a + &b, QuadSurd::from_int(3));

        let (a, b) = solve_unit_quadratic(18).unwrap();
        assert_eq!(a, s(int(9), int(4), 5));
        assert_eq!(b, s(int(9), int(-4), 5));
        assert!((&a * &b).is_one());

        for k in [-1, 0, 1] {
            assert_eq!(solve_unit_quadratic(k), Err(Error::ComplexRoots(k)));
        }
    }

    #[test]
    fn compare_examples() {
        let (hi, lo) = solve_unit_quadratic(3).unwrap();
        let one = QuadSurd::one();
        assert_eq!(surd_compare(&hi, &one).unwrap(), Ordering::Greater);
        assert_eq!(surd_compare(&lo, &one).unwrap(), Ordering::Less);
        let two = QuadSurd::from_int(2);
        assert_eq!(surd_compare(&two, &two).unwrap(), Ordering::Equal);
        assert_eq!(
            surd_compare(&QuadSurd::sqrt(2), &QuadSurd::sqrt(3)),
            Err(Error::IncompatibleFields(2, 3))
        );
    }

    #[test]
    fn inverse_and_pow() {
        let x = s(int(2), int(1), 3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(QuadSurd::zero().inv(), Err(Error::DivisionByZero));
        let phi = s(rat(1, 2), rat(1, 2), 5);
        assert_eq!(phi.pow(2).unwrap(), s(rat(3, 2), rat(1, 2), 5));
        assert_eq!(phi.pow(3).unwrap(), s(int(2), int(1), 5));
        assert_eq!(phi.pow(4).unwrap(), s(rat(7, 2), rat(3, 2), 5));
        assert!((&phi.pow(-3).unwrap() * &phi.pow(3).unwrap()).is_one());
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            (s(rat(3, 2), rat(1, 2), 5), "3/2 + 1/2√5"),
            (s(rat(3, 2), rat(-1, 2), 5), "3/2 - 1/2√5"),
            (s(int(0), int(1), 2), "√2"),
            (s(int(0), int(-3), 7), "-3√7"),
            (s(int(1), int(-1), 5), "1 - √5"),
            (s(rat(-1, 2), int(1), 3), "-1/2 + √3"),
            (QuadSurd::from(rat(-5, 6)), "-5/6"),
            (QuadSurd::zero(), "0"),
        ];
        for (value, text) in cases {
            assert_eq!(value.to_string(), text);
            assert_eq!(text.parse::<QuadSurd>().unwrap(), value);
        }
        assert_eq!("√8".parse::<QuadSurd>().unwrap(), s(int(0), int(2), 2));
        for bad in ["", "1/0", "√", "√0", "1 + -2√3", "abc", "1/2/3", "- 3"] {
            assert!(bad.parse::<QuadSurd>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn char_poly_display_and_division() {
        let p = CubicPolyZ::new([1, -3, 3, -1]).unwrap();
        assert_eq!(p.to_string(), "t^3 - 3t^2 + 3t - 1");
        assert_eq!(p.divide_by_t_minus_one(), Some((-2, 1)));
        let q = CubicPolyZ::new([1, -4, 4, -1]).unwrap();
        assert_eq!(q.divide_by_t_minus_one(), Some((-3, 1)));
        assert!(CubicPolyZ::new([2, 0, 0, 1]).is_err());
        assert_eq!(CubicPolyZ::new([1, 0, 0, 1]).unwrap().divide_by_t_minus_one(), None);
    }
}

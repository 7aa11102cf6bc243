//! Exact arithmetic over `Q * pi^(h/2)`.
//!
//! Every Gamma value at a half-integer is a rational multiple of `pi^0` or
//! `pi^(1/2)`, and every pole of Gamma is simple with a rational residue.
//! [`PiValue`] carries the first kind of quantity, [`GammaSym`] the leading
//! Laurent datum of a single Gamma factor, and [`ProductValue`] the leading
//! datum of a quotient of such factors together with its net vanishing order.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base^exp` for a possibly negative integer exponent. `base` must be nonzero
/// when `exp < 0`.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Canonical `a/b` text of a rational; integers keep the `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if this half-integer is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exact value `coeff * pi^(half_pi_exp / 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiValue {
    coeff: Rational,
    half_pi_exp: i64,
}

impl PiValue {
    pub fn new(coeff: Rational, half_pi_exp: i64) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            PiValue { coeff, half_pi_exp }
        }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn zero() -> Self {
        PiValue {
            coeff: Rational::zero(),
            half_pi_exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `pi^(half_pi_exp / 2)`.
    pub fn pi_power(half_pi_exp: i64) -> Self {
        PiValue {
            coeff: Rational::one(),
            half_pi_exp,
        }
    }

    /// `(2 pi)^k` for an integer `k`.
    pub fn two_pi_pow(k: i64) -> Self {
        PiValue {
            coeff: rat_pow(&int(2), k),
            half_pi_exp: 2 * k,
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn half_pi_exp(&self) -> i64 {
        self.half_pi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// True when the power of pi is a whole number.
    pub fn has_integer_pi_power(&self) -> bool {
        self.half_pi_exp % 2 == 0
    }

    /// The whole-number power of pi, if there is one.
    pub fn pi_exponent(&self) -> Option<i64> {
        self.has_integer_pi_power().then_some(self.half_pi_exp / 2)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PiValue {
            coeff: self.coeff.recip(),
            half_pi_exp: -self.half_pi_exp,
        })
    }

    pub fn checked_div(&self, rhs: &PiValue) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = PiValue::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs(&self) -> Self {
        PiValue {
            coeff: self.coeff.abs(),
            half_pi_exp: self.half_pi_exp,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        PiValue::new(&self.coeff * q, self.half_pi_exp)
    }
}

impl Mul for &PiValue {
    type Output = PiValue;

    fn mul(self, rhs: &PiValue) -> PiValue {
        PiValue::new(&self.coeff * &rhs.coeff, self.half_pi_exp + rhs.half_pi_exp)
    }
}

impl Mul for PiValue {
    type Output = PiValue;

    fn mul(self, rhs: PiValue) -> PiValue {
        &self * &rhs
    }
}

impl Div for &PiValue {
    type Output = PiValue;

    /// Panics on an exact zero divisor; use [`PiValue::checked_div`] otherwise.
    fn div(self, rhs: &PiValue) -> PiValue {
        self.checked_div(rhs).expect("division by zero PiValue")
    }
}

impl Neg for PiValue {
    type Output = PiValue;

    fn neg(self) -> PiValue {
        PiValue::new(-self.coeff, self.half_pi_exp)
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * pi^({}/2)",
            format_rational(&self.coeff),
            self.half_pi_exp
        )
    }
}

impl serde::Serialize for PiValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for PiValue {
    type Err = Error;

    /// Parses the `q * pi^(h/2)` form emitted by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a PiValue: {s:?}"));
        let (q, rest) = s.split_once('*').ok_or_else(bad)?;
        let rest = rest.trim();
        let h = rest
            .strip_prefix("pi^(")
            .and_then(|r| r.strip_suffix("/2)"))
            .ok_or_else(bad)?;
        let half_pi_exp: i64 = h.trim().parse().map_err(|_| bad())?;
        let coeff = parse_rational(q)?;
        if coeff.is_zero() && half_pi_exp != 0 {
            return Err(bad());
        }
        Ok(PiValue::new(coeff, half_pi_exp))
    }
}

/// Leading Laurent datum of a single Gamma factor at a half-integer point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSym {
    pole_order: i64,
    lead: PiValue,
}

impl GammaSym {
    /// `0` for a regular point, `-1` at a simple pole.
    pub fn pole_order(&self) -> i64 {
        self.pole_order
    }

    /// The value at a regular point, the residue at a pole.
    pub fn lead(&self) -> &PiValue {
        &self.lead
    }

    /// Re-expresses the datum in a variable `t` with `z = z0 + slope * (t - t0)`.
    /// Only the residue changes: it picks up a factor `1/slope`.
    pub fn in_variable_with_slope(&self, slope: &Rational) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead = if self.pole_order == 0 {
            self.lead.clone()
        } else {
            self.lead.scale(&slope.recip())
        };
        Ok(GammaSym {
            pole_order: self.pole_order,
            lead,
        })
    }
}

/// Gamma at the half-integer `z`.
///
/// Regular points come from the recursion `Gamma(z+1) = z Gamma(z)` started at
/// `Gamma(1) = 1` or `Gamma(1/2) = sqrt(pi)`; at `z = -m` the residue comes from
/// the same recursion run downwards from the residue `1` at `0`.
pub fn gamma_at(z: HalfInt) -> GammaSym {
    let t = z.twice();
    if t % 2 == 0 && t <= 0 {
        // residue (-1)^m / m!
        let m = -t / 2;
        let fact: BigInt = (1..=m).map(BigInt::from).product();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        return GammaSym {
            pole_order: -1,
            lead: PiValue::rational(Rational::new(BigInt::from(sign), fact)),
        };
    }
    let (start_twice, half_pi_exp) = if t % 2 == 0 { (2, 0) } else { (1, 1) };
    // Each step multiplies or divides by cur / 2; collect integers, reduce once.
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut cur = start_twice;
    while cur < t {
        num *= cur;
        den *= 2;
        cur += 2;
    }
    while cur > t {
        cur -= 2;
        num *= 2;
        den *= cur;
    }
    GammaSym {
        pole_order: 0,
        lead: PiValue::new(Rational::new(num, den), half_pi_exp),
    }
}

/// One factor of a quotient handed to [`product_eval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Gamma(GammaSym),
    Value(PiValue),
    /// A linear function `slope * (t - t0) + value` evaluated at `t0`: an order
    /// one zero with leading coefficient `slope` when `value` is zero.
    Linear {
        value: Rational,
        slope: Rational,
    },
}

impl Factor {
    fn order_and_lead(&self) -> (i64, PiValue) {
        match self {
            Factor::Gamma(g) => (g.pole_order, g.lead.clone()),
            Factor::Value(v) => (0, v.clone()),
            Factor::Linear { value, slope } if value.is_zero() => {
                (1, PiValue::rational(slope.clone()))
            }
            Factor::Linear { value, .. } => (0, PiValue::rational(value.clone())),
        }
    }
}

impl From<GammaSym> for Factor {
    fn from(g: GammaSym) -> Self {
        Factor::Gamma(g)
    }
}

impl From<PiValue> for Factor {
    fn from(v: PiValue) -> Self {
        Factor::Value(v)
    }
}

/// Leading datum of a product of meromorphic factors: vanishes to order
/// `net_order` when positive, a pole of order `-net_order` when negative, and
/// the finite value `lead` when zero.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProductValue {
    net_order: i64,
    lead: PiValue,
}

impl ProductValue {
    pub fn finite(value: PiValue) -> Self {
        ProductValue {
            net_order: 0,
            lead: value,
        }
    }

    pub fn one() -> Self {
        Self::finite(PiValue::one())
    }

    pub fn net_order(&self) -> i64 {
        self.net_order
    }

    pub fn lead(&self) -> &PiValue {
        &self.lead
    }

    pub fn is_finite(&self) -> bool {
        self.net_order >= 0
    }

    pub fn is_pole(&self) -> bool {
        self.net_order < 0
    }

    /// The exact value when the product is regular and nonvanishing.
    pub fn value(&self) -> Option<&PiValue> {
        (self.net_order == 0).then_some(&self.lead)
    }

    pub fn scale(&self, v: &PiValue) -> Self {
        ProductValue {
            net_order: self.net_order,
            lead: &self.lead * v,
        }
    }

    pub fn checked_div(&self, rhs: &ProductValue) -> Result<Self> {
        Ok(ProductValue {
            net_order: self.net_order - rhs.net_order,
            lead: self.lead.checked_div(&rhs.lead)?,
        })
    }

    /// Converts a leading datum taken in `z` to the variable `t` where
    /// `z - z0 = slope * (t - t0)`.
    pub fn in_variable_with_slope(&self, slope: &Rational) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ProductValue {
            net_order: self.net_order,
            lead: self.lead.scale(&rat_pow(slope, self.net_order)),
        })
    }
}

impl Mul for &ProductValue {
    type Output = ProductValue;

    fn mul(self, rhs: &ProductValue) -> ProductValue {
        ProductValue {
            net_order: self.net_order + rhs.net_order,
            lead: &self.lead * &rhs.lead,
        }
    }
}

/// Leading datum of `prod(numerators) / prod(denominators)`.
pub fn product_eval(numerators: &[Factor], denominators: &[Factor]) -> Result<ProductValue> {
    let mut net_order = 0;
    let mut lead = PiValue::one();
    for f in numerators {
        let (o, l) = f.order_and_lead();
        net_order += o;
        lead = &lead * &l;
    }
    for f in denominators {
        let (o, l) = f.order_and_lead();
        if l.is_zero() {
            return Err(Error::MalformedFactor);
        }
        net_order -= o;
        lead = lead.checked_div(&l)?;
    }
    Ok(ProductValue { net_order, lead })
}

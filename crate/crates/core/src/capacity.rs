//! Exact capacity arithmetic.
//!
//! Every graph stores capacities as unsigned 128-bit numerators over one
//! per-graph denominator (its `scale`). Algorithms rescale whole graphs by
//! integer factors so that derived weights stay integral.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Capacity numerator in the units of the owning graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Capacity(pub u128);

impl Capacity {
    pub const ZERO: Capacity = Capacity(0);

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn checked_mul(self, k: u128) -> Result<Capacity> {
        self.0.checked_mul(k).map(Capacity).ok_or(Error::CapacityOverflow)
    }

    pub fn checked_add(self, other: Capacity) -> Result<Capacity> {
        self.0.checked_add(other.0).map(Capacity).ok_or(Error::CapacityOverflow)
    }
}

impl Add for Capacity {
    type Output = Capacity;
    fn add(self, rhs: Capacity) -> Capacity {
        Capacity(self.0 + rhs.0)
    }
}

impl AddAssign for Capacity {
    fn add_assign(&mut self, rhs: Capacity) {
        self.0 += rhs.0;
    }
}

impl Sub for Capacity {
    type Output = Capacity;
    fn sub(self, rhs: Capacity) -> Capacity {
        Capacity(self.0 - rhs.0)
    }
}

impl Sum for Capacity {
    fn sum<I: Iterator<Item = Capacity>>(iter: I) -> Capacity {
        iter.fold(Capacity::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Capacity> for Capacity {
    fn sum<I: Iterator<Item = &'a Capacity>>(iter: I) -> Capacity {
        iter.copied().sum()
    }
}

impl From<u128> for Capacity {
    fn from(v: u128) -> Self {
        Capacity(v)
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Nonnegative rational with a positive denominator, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u128,
    den: u128,
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Rational {
        assert!(den > 0, "zero denominator");
        let g = num.gcd(&den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(v: u128) -> Rational {
        Rational { num: v, den: 1 }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Parses a nonnegative decimal such as `"0.2"`, `"3"` or `"1.125"`.
    pub fn parse_decimal(s: &str) -> Option<Rational> {
        let (num, scale) = parse_decimal_parts(s)?;
        Some(Rational::new(num, 10u128.checked_pow(scale)?))
    }

    /// Parses a nonnegative decimal or a fraction such as `"3/4"`.
    pub fn parse(s: &str) -> Option<Rational> {
        match s.trim().split_once('/') {
            Some((p, q)) => {
                let p: u128 = p.parse().ok()?;
                let q: u128 = q.parse().ok()?;
                (q > 0).then(|| Rational::new(p, q))
            }
            None => Rational::parse_decimal(s),
        }
    }

    /// Shortest decimal rendering of a float, parsed exactly.
    pub fn from_f64(x: f64) -> Option<Rational> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        Rational::parse_decimal(&format!("{x}"))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self < other`, compared exactly by cross multiplication.
    pub fn lt(&self, other: &Rational) -> bool {
        self.num * other.den < other.num * self.den
    }

    pub fn div_int(&self, k: u128) -> Rational {
        Rational::new(self.num, self.den * k)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(self.num, self.den))
    }
}

/// Writes exact values as integer numerators over their least common
/// denominator. Returns `(numerators, scale)`.
pub fn common_scale(values: &[Rational]) -> Result<(Vec<u128>, u128)> {
    let mut scale = 1u128;
    for r in values {
        scale = scale
            .checked_mul(r.den / scale.gcd(&r.den))
            .ok_or(Error::CapacityOverflow)?;
    }
    let mut nums = Vec::with_capacity(values.len());
    let mut total = 0u128;
    for r in values {
        let v = r.num.checked_mul(scale / r.den).ok_or(Error::CapacityOverflow)?;
        total = total.checked_add(v).ok_or(Error::CapacityOverflow)?;
        nums.push(v);
    }
    Ok((nums, scale))
}

/// Splits a decimal literal into (digits as integer, number of fractional digits).
pub(crate) fn parse_decimal_parts(s: &str) -> Option<(u128, u32)> {
    let s = s.trim();
    if s.is_empty() || s.starts_with('-') || s.starts_with('+') {
        return None;
    }
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut v: u128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        v = v.checked_mul(10)?.checked_add((b - b'0') as u128)?;
    }
    Some((v, frac.len() as u32))
}

/// Renders `num / den` as an exact decimal when `den` divides a power of ten,
/// and as `num/den` otherwise.
pub fn format_ratio(num: u128, den: u128) -> String {
    let g = num.gcd(&den).max(1);
    let (num, den) = (num / g, den / g);
    if den == 1 {
        return num.to_string();
    }
    let mut d = den;
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{num}/{den}");
    }
    let digits = twos.max(fives);
    let Some(pow) = 10u128.checked_pow(digits) else {
        return format!("{num}/{den}");
    };
    let Some(scaled) = num.checked_mul(pow / den) else {
        return format!("{num}/{den}");
    };
    let int = scaled / pow;
    let frac = scaled % pow;
    format!("{int}.{frac:0width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing() {
        assert_eq!(Rational::parse_decimal("0.2"), Some(Rational::new(1, 5)));
        assert_eq!(Rational::parse_decimal("3"), Some(Rational::integer(3)));
        assert_eq!(Rational::parse_decimal("1.125"), Some(Rational::new(9, 8)));
        assert_eq!(Rational::parse_decimal(".5"), Some(Rational::new(1, 2)));
        assert_eq!(Rational::parse_decimal("-3"), None);
        assert_eq!(Rational::parse_decimal("1e3"), None);
        assert_eq!(Rational::parse_decimal(""), None);
        assert_eq!(Rational::from_f64(0.2), Some(Rational::new(1, 5)));
        assert_eq!(Rational::parse("6/8"), Some(Rational::new(3, 4)));
        assert_eq!(Rational::parse("1/0"), None);
        assert_eq!(Rational::parse("-1/2"), None);
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(25, 10), "2.5");
        assert_eq!(format_ratio(7, 1), "7");
        assert_eq!(format_ratio(1, 4), "0.25");
        assert_eq!(format_ratio(1, 3), "1/3");
        assert_eq!(format_ratio(0, 100), "0");
        assert_eq!(format_ratio(105, 100), "1.05");
    }

    #[test]
    fn common_denominator() {
        let vals = [Rational::new(1, 2), Rational::new(3, 4), Rational::integer(2)];
        assert_eq!(common_scale(&vals).unwrap(), (vec![2, 3, 8], 4));
        let evens = [Rational::integer(4), Rational::integer(6)];
        assert_eq!(common_scale(&evens).unwrap(), (vec![4, 6], 1));
        assert_eq!(
            common_scale(&[Rational::integer(u128::MAX), Rational::integer(1)]),
            Err(Error::CapacityOverflow)
        );
    }

    #[test]
    fn exact_comparison() {
        assert!(Rational::new(1, 3).lt(&Rational::new(1, 2)));
        assert!(!Rational::new(2, 4).lt(&Rational::new(1, 2)));
    }
}

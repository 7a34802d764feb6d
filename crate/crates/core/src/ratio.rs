//! Exact non-negative rationals, compared by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// A fraction `num/den` kept unreduced, so an expansion ratio still shows
/// the set sizes it came from.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Ratio { num, den }
    }

    pub fn integer(v: u64) -> Self {
        Ratio { num: v, den: 1 }
    }

    /// Parses `a/b`, an integer, or a plain decimal such as `0.3`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num: u64 = a.trim().parse().map_err(|_| bad(t))?;
            let den: u64 = b.trim().parse().map_err(|_| bad(t))?;
            if den == 0 {
                return input(format!("zero denominator in `{t}`"));
            }
            return Ok(Ratio { num, den });
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad(t));
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad(t))? };
            let den = 10u64.pow(frac.len() as u32);
            let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad(t))? };
            return Ok(Ratio { num: int * den + f, den });
        }
        let v: u64 = t.parse().map_err(|_| bad(t))?;
        Ok(Ratio::integer(v))
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `floor(self * n)`.
    pub fn floor_mul(self, n: usize) -> usize {
        ((self.num as u128 * n as u128) / self.den as u128) as usize
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Ratio { num: self.num / g, den: self.den / g }
    }
}

fn bad(t: &str) -> crate::Error {
    crate::Error::Input(format!("cannot read `{t}` as a fraction"))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Ratio::parse("1/3").unwrap(), Ratio::new(1, 3));
        assert_eq!(Ratio::parse("0.3").unwrap(), Ratio::new(3, 10));
        assert_eq!(Ratio::parse("2").unwrap(), Ratio::new(2, 1));
        assert!(Ratio::parse("1/0").is_err());
        assert!(Ratio::parse("x").is_err());
    }

    #[test]
    fn exact_floor() {
        // 1/3 of 6 must be 2, which a float product can miss
        assert_eq!(Ratio::new(1, 3).floor_mul(6), 2);
        assert_eq!(Ratio::parse("0.3").unwrap().floor_mul(10), 3);
    }

    #[test]
    fn equality_is_by_value() {
        assert_eq!(Ratio::new(2, 4), Ratio::new(1, 2));
        assert!(Ratio::new(2, 3) > Ratio::new(3, 5));
        assert_eq!(Ratio::new(6, 4).reduced().num, 3);
    }
}

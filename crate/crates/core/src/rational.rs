use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational used for every objective value and threshold.
pub type Rational = num_rational::Ratio<i128>;

/// Parses `"p/q"` or a bare integer `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::input(format!("expected a rational of the form p/q, got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (
            i128::from_str(p.trim()).map_err(|_| bad())?,
            i128::from_str(q.trim()).map_err(|_| bad())?,
        ),
        None => (i128::from_str(s).map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(Error::input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Smallest integer not below `r`.
pub fn ceil_to_int(r: &Rational) -> i128 {
    r.ceil().to_integer()
}

/// Edge weight `α ∈ [0, 1]`, stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alpha {
    numerator: u64,
    denominator: u64,
}

impl Alpha {
    pub const ZERO: Alpha = Alpha {
        numerator: 0,
        denominator: 1,
    };
    pub const ONE: Alpha = Alpha {
        numerator: 1,
        denominator: 1,
    };
    pub const ONE_THIRD: Alpha = Alpha {
        numerator: 1,
        denominator: 3,
    };

    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::input("alpha denominator must be positive"));
        }
        if numerator > denominator {
            return Err(Error::input(format!(
                "alpha must lie in [0, 1], got {numerator}/{denominator}"
            )));
        }
        let g = numerator.gcd(&denominator);
        Ok(Alpha {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() || *r > Rational::one() {
            return Err(Error::input(format!(
                "alpha must lie in [0, 1], got {}",
                format_rational(r)
            )));
        }
        Alpha::new(*r.numer() as u64, *r.denom() as u64)
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numerator as i128, self.denominator as i128)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alpha::from_rational(&parse_rational(s)?)
    }
}

impl PartialOrd for Alpha {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alpha {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

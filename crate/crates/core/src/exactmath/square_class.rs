use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::squarefree_part;

/// An element of `Q* / (Q*)^2`, or the separate zero class.
///
/// Nonzero classes are stored as their signed squarefree representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SquareClass {
    Zero,
    NonZero(BigInt),
}

/// Square class of a rational.
pub fn square_class(x: &BigRational) -> SquareClass {
    if x.is_zero() {
        return SquareClass::Zero;
    }
    // num/den and num*den differ by the square den^2
    let m = x.numer() * x.denom();
    SquareClass::NonZero(squarefree_part(&m).expect("nonzero"))
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass::NonZero(BigInt::one())
    }

    pub fn of_integer(n: i64) -> Self {
        square_class(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SquareClass::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, SquareClass::NonZero(s) if s.is_one())
    }

    pub fn representative(&self) -> Option<&BigInt> {
        match self {
            SquareClass::Zero => None,
            SquareClass::NonZero(s) => Some(s),
        }
    }

    /// Product of classes. Squarefree `a`, `b` with `g = gcd(a, b)` give
    /// `a b = g^2 (a/g)(b/g)`, so no factorization is needed.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        match (self, other) {
            (SquareClass::NonZero(a), SquareClass::NonZero(b)) => {
                let g = a.gcd(b);
                SquareClass::NonZero((a / &g) * (b / &g))
            }
            _ => SquareClass::Zero,
        }
    }

    /// Same as `mul`: every class is its own inverse.
    pub fn div(&self, other: &SquareClass) -> SquareClass {
        self.mul(other)
    }

    /// Representative of the coset `{s, p s}` that is prime to `p`.
    pub fn without_prime(&self, p: u64) -> SquareClass {
        match self {
            SquareClass::Zero => SquareClass::Zero,
            SquareClass::NonZero(s) => {
                let pb = BigInt::from(p);
                if (s % &pb).is_zero() {
                    SquareClass::NonZero(s / pb)
                } else {
                    self.clone()
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, SquareClass::NonZero(s) if s.is_negative())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Zero => write!(f, "zero"),
            SquareClass::NonZero(s) => write!(f, "{s}"),
        }
    }
}

impl From<SquareClass> for String {
    fn from(c: SquareClass) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for SquareClass {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        if s == "zero" {
            return Ok(SquareClass::Zero);
        }
        let n: BigInt = s
            .parse()
            .map_err(|e| format!("bad square class {s:?}: {e}"))?;
        if n.is_zero() {
            return Err("use \"zero\" for the zero class".into());
        }
        let sf = squarefree_part(&n).map_err(|e| e.to_string())?;
        if sf != n {
            return Err(format!("{n} is not squarefree"));
        }
        Ok(SquareClass::NonZero(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, rat};

    #[test]
    fn classes_of_examples() {
        assert_eq!(square_class(&frac(60, 7)), SquareClass::of_integer(105));
        assert_eq!(square_class(&rat(0)), SquareClass::Zero);
        assert!(square_class(&rat(1 << 24)).is_one());
        assert_eq!(square_class(&frac(-9, 4)), SquareClass::of_integer(-1));
    }

    #[test]
    fn product_reduces() {
        let a = SquareClass::of_integer(6);
        let b = SquareClass::of_integer(-10);
        assert_eq!(a.mul(&b), SquareClass::of_integer(-15));
        assert_eq!(a.mul(&SquareClass::Zero), SquareClass::Zero);
    }

    #[test]
    fn p_part_removal() {
        assert_eq!(
            SquareClass::of_integer(105).without_prime(7),
            SquareClass::of_integer(15)
        );
        assert!(SquareClass::of_integer(2).without_prime(2).is_one());
        assert_eq!(
            SquareClass::of_integer(15).without_prime(7),
            SquareClass::of_integer(15)
        );
    }

    #[test]
    fn string_form() {
        let c = SquareClass::of_integer(-31);
        let s: String = c.clone().into();
        assert_eq!(SquareClass::try_from(s).unwrap(), c);
        assert!(SquareClass::try_from("12".to_string()).is_err());
        assert_eq!(
            SquareClass::try_from("zero".to_string()).unwrap(),
            SquareClass::Zero
        );
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{nu_q, RatPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::json::rational")]
    pub slope: BigRational,
    pub length: usize,
}

/// Lower convex hull of the points `(r, nu_q(c_r))`.
///
/// Hull slopes are stored as computed; a segment of slope `s` and length `l`
/// accounts for `l` roots of valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// `(nu_q(z), multiplicity)` in increasing valuation order.
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        self.segments
            .iter()
            .rev()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    /// Sum of all root valuations, i.e. `nu_q(c_0 / c_N)`.
    pub fn valuation_sum(&self) -> BigRational {
        self.root_valuations()
            .into_iter()
            .map(|(v, m)| v * BigRational::from_integer(BigInt::from(m)))
            .sum()
    }

    /// `-(sum of the negative root valuations)`.
    pub fn negative_slope_mass(&self) -> BigRational {
        self.root_valuations()
            .into_iter()
            .filter(|(v, _)| v.is_negative())
            .map(|(v, m)| -v * BigRational::from_integer(BigInt::from(m)))
            .sum()
    }

    pub fn is_pure(&self, slope: &BigRational) -> bool {
        self.segments.iter().all(|s| &s.slope == slope)
    }
}

pub fn newton_polygon(f: &RatPoly, p: u64, k: u32) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let pts: Vec<(i64, BigRational)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(r, c)| nu_q(c, p, k).map(|v| (r as i64, v)))
        .collect();
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point when it is on or above the chord
            let lhs = (y2 - y1) * BigRational::from_integer(BigInt::from(pt.0 - x1));
            let rhs = (&pt.1 - y1) * BigRational::from_integer(BigInt::from(x2 - x1));
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment {
                slope: (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(len)),
                length: len as usize,
            }
        })
        .collect();
    Ok(NewtonPolygon { segments })
}

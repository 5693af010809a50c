//! Bundled data: a K3 surface over F_7 and a cubic fourfold over F_2.
//!
//! The JSON files under `data/` carry the point counts and polynomials; the
//! functions below rebuild the two printed polynomials directly from their
//! factored forms so tests can compare the two sources.

use crate::exactmath::{frac, rat, BigRational, RatPoly};
use crate::json::{from_json_str, DescriptorFile, PolynomialFile};
use crate::Result;

pub const K3_F7_JSON: &str = include_str!("../data/k3_f7.json");
pub const CUBIC4_F2_JSON: &str = include_str!("../data/cubic4_f2.json");
pub const K3_PHI0_JSON: &str = include_str!("../data/k3_phi0.json");
pub const K3_PHI1_JSON: &str = include_str!("../data/k3_phi1.json");
pub const CUBIC4_PHI_JSON: &str = include_str!("../data/cubic4_phi.json");

/// `#X(F_{7^n})`, n = 1..10, for the double sextic K3 surface.
pub const K3_COUNTS: [&str; 10] = [
    "60",
    "2488",
    "118587",
    "5765828",
    "282498600",
    "13841656159",
    "678225676496",
    "33232936342644",
    "1628413665268026",
    "79792266679604918",
];

/// `#X(F_{2^n})`, n = 1..11, for the cubic fourfold.
pub const CUBIC4_COUNTS: [&str; 11] = [
    "33",
    "361",
    "4545",
    "69665",
    "1084673",
    "17044609",
    "270543873",
    "4311990785",
    "68853026817",
    "1100586076161",
    "17600769409025",
];

/// The two K3 candidates `Phi_i`, i = 0 (plus sign) or 1 (minus sign):
/// `(1/7) (A(t) + (-1)^i B(t))`.
pub fn k3_phi(i: u32) -> RatPoly {
    // A: t^22 .. t^12, B: t^10 .. t^0 (index = exponent)
    let mut a = vec![0i64; 23];
    for (e, c) in [
        (22, 7),
        (21, -10),
        (20, 1),
        (19, -1),
        (18, 6),
        (17, -3),
        (16, -2),
        (14, 4),
        (13, -1),
        (12, -1),
    ] {
        a[e] = c;
    }
    let mut b = vec![0i64; 23];
    for (e, c) in [
        (10, -1),
        (9, -1),
        (8, 4),
        (6, -2),
        (5, -3),
        (4, 6),
        (3, -1),
        (2, 1),
        (1, -10),
        (0, 7),
    ] {
        b[e] = c;
    }
    let sign = if i % 2 == 0 { 1 } else { -1 };
    let coeffs: Vec<BigRational> = (0..23).map(|e| frac(a[e] + sign * b[e], 7)).collect();
    RatPoly::from_coeffs(coeffs)
}

/// The cubic fourfold polynomial `(1/2) (t - 1) F(t)` with `F` of degree 22.
pub fn cubic4_phi() -> RatPoly {
    let f = RatPoly::from_ints(&[
        2, -1, -1, 2, 0, -2, 1, 1, -2, 1, 1, -1, 1, 1, -2, 1, 1, -2, 0, 2, -1, -1, 2,
    ]);
    (&RatPoly::from_ints(&[-1, 1]) * &f).scale(&frac(1, 2))
}

pub fn k3_descriptor() -> Result<DescriptorFile> {
    from_json_str(K3_F7_JSON, "k3_f7.json")
}

pub fn cubic4_descriptor() -> Result<DescriptorFile> {
    from_json_str(CUBIC4_F2_JSON, "cubic4_f2.json")
}

pub fn polynomial_file(text: &str) -> Result<PolynomialFile> {
    from_json_str(text, "polynomial file")
}

/// `phi(-1)` for the K3 `Phi_0`, as printed.
pub fn k3_phi0_at_minus_one() -> BigRational {
    frac(60, 7)
}

/// `phi(-1)` for the cubic fourfold, as printed.
pub fn cubic4_at_minus_one() -> BigRational {
    rat(-1)
}

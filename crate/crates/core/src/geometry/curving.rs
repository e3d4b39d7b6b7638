//! Area gained by replacing a pair of parallel sides with circular arcs.
//!
//! The pair sits in a trapezoid `ABDC` with `|AB| = a`, `|CD| = b` and unit
//! diagonals `AD`, `BC`. Two ways of bending the sides keep the width at most 1:
//! `s1` uses radius-1 arcs, `s2` splits the unit diagonal at the crossing point
//! `O` into radii `r` and `1 - r`.

use serde::{Deserialize, Serialize};

use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvingEvaluation {
    pub a: f64,
    pub b: f64,
    pub h: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub r: f64,
    pub s1: f64,
    pub s2: f64,
}

fn check(a: f64, b: f64, allow_zero: bool) -> Result<(), GeometryError> {
    let ok_side = |v: f64| if allow_zero { v >= 0.0 } else { v > 0.0 };
    if !(a.is_finite() && b.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    if !ok_side(a) || !ok_side(b) || a + b <= 0.0 || a + b >= 2.0 {
        return Err(GeometryError::Domain(format!("curving needs sides a={a}, b={b} with 0 < a + b < 2")));
    }
    Ok(())
}

fn blank(a: f64, b: f64) -> CurvingEvaluation {
    CurvingEvaluation { a, b, h: f64::NAN, alpha: f64::NAN, beta: f64::NAN, gamma: f64::NAN, r: f64::NAN, s1: f64::NAN, s2: f64::NAN }
}

pub fn curving_s1(a: f64, b: f64) -> Result<CurvingEvaluation, GeometryError> {
    check(a, b, false)?;
    let h = (1.0 - (a / 2.0).powi(2)).sqrt() - (1.0 - ((a + b) / 2.0).powi(2)).sqrt();
    let beta = (1.0 - ((b / 2.0).powi(2) + h * h) / 2.0).acos();
    let gamma = 2.0 * (a / 2.0).asin();
    let s1 = b * h / 2.0 + beta - beta.sin() + (gamma - gamma.sin()) / 2.0;
    Ok(CurvingEvaluation { h, beta, gamma, s1, ..blank(a, b) })
}

/// Split-radius curving. Unlike [`curving_s1`] one side may have zero length,
/// which is the triangle case where a single unit-radius arc remains.
pub fn curving_s2(a: f64, b: f64) -> Result<CurvingEvaluation, GeometryError> {
    check(a, b, true)?;
    let alpha = 2.0 * ((a + b) / 2.0).asin();
    let s2 = (0.5 - a * b / (a + b).powi(2)) * (alpha - alpha.sin());
    Ok(CurvingEvaluation { alpha, r: a / (a + b), s2, ..blank(a, b) })
}

/// Area of the circular segment cut off by a chord of length `c` from a circle of radius `radius`.
pub fn circular_segment_area(c: f64, radius: f64) -> f64 {
    let phi = 2.0 * (c / (2.0 * radius)).min(1.0).asin();
    0.5 * radius * radius * (phi - phi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_sides_ratio() {
        let e1 = curving_s1(0.1, 0.1).unwrap();
        let e2 = curving_s2(0.1, 0.1).unwrap();
        assert!((e2.s2 - 3.3434e-4).abs() < 1e-8);
        assert_eq!(e2.r, 0.5);
        let gain = e2.s2 / e1.s1 - 1.0;
        assert!((gain - 0.13).abs() < 0.02, "{gain}");
    }

    #[test]
    fn s2_is_two_segments() {
        let (a, b) = (0.03, 0.07);
        let e = curving_s2(a, b).unwrap();
        let r = a / (a + b);
        let direct = circular_segment_area(a, r) + circular_segment_area(b, 1.0 - r);
        assert!((e.s2 - direct).abs() < 1e-16);
    }

    #[test]
    fn domain_errors() {
        assert!(curving_s1(0.0, 0.1).is_err());
        assert!(curving_s1(1.0, 1.0).is_err());
        assert!(curving_s2(0.0, 0.0).is_err());
        assert!(curving_s2(0.0, 0.1).is_ok());
    }
}

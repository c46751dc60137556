//! The Moulton plane: the classical non-Desarguesian plane of incidence.
//!
//! Points are affine rational pairs plus one ideal point per parallel class;
//! lines are verticals, graphs `y = m*x + b` that bend at the y-axis
//! (negative slopes halve on `x >= 0`), and the ideal line. All arithmetic
//! is exact rational, so incidence is decidable with no tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::plane::PlaneOps;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_from_string(s: &str) -> Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

mod rational_str {
    use super::*;
    use serde::Deserializer;

    pub fn serialize<S: serde::Serializer>(r: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(de)?;
        rational_from_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Direction of a parallel class: the shared line parameter, or vertical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "dir")]
pub enum IdealSlope {
    Finite {
        #[serde(with = "rational_str")]
        m: BigRational,
    },
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum MoultonPoint {
    Affine {
        #[serde(with = "rational_str")]
        x: BigRational,
        #[serde(with = "rational_str")]
        y: BigRational,
    },
    Ideal { slope: IdealSlope },
}

impl MoultonPoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        MoultonPoint::Affine { x, y }
    }

    pub fn affine_ints(x: i64, y: i64) -> Self {
        MoultonPoint::affine(rat(x, 1), rat(y, 1))
    }
}

/// A Moulton line. `Graph` covers both straight lines (`m >= 0`) and bent
/// ones (`m < 0`, effective slope `m/2` on `x >= 0`); the parameter pair
/// `(m, b)` is canonical, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum MoultonLine {
    Vertical {
        #[serde(with = "rational_str")]
        x: BigRational,
    },
    Graph {
        #[serde(with = "rational_str")]
        m: BigRational,
        #[serde(with = "rational_str")]
        b: BigRational,
    },
    Ideal,
}

impl MoultonLine {
    /// Effective slope on the right half-plane.
    fn right_slope(m: &BigRational) -> BigRational {
        if m.is_negative() {
            m / BigRational::from_integer(BigInt::from(2))
        } else {
            m.clone()
        }
    }

    /// y-value of a graph line at `x`.
    pub fn y_at(m: &BigRational, b: &BigRational, x: &BigRational) -> BigRational {
        if x.is_negative() {
            m * x + b
        } else {
            Self::right_slope(m) * x + b
        }
    }

    pub fn ideal_point(&self) -> MoultonPoint {
        match self {
            MoultonLine::Vertical { .. } => MoultonPoint::Ideal {
                slope: IdealSlope::Vertical,
            },
            MoultonLine::Graph { m, .. } => MoultonPoint::Ideal {
                slope: IdealSlope::Finite { m: m.clone() },
            },
            MoultonLine::Ideal => panic!("the ideal line has no single ideal point"),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum MoultonError {
    #[error("the two points coincide")]
    EqualPoints,
}

/// The unique Moulton line through two distinct points.
pub fn moulton_line_through(
    p: &MoultonPoint,
    q: &MoultonPoint,
) -> Result<MoultonLine, MoultonError> {
    if p == q {
        return Err(MoultonError::EqualPoints);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let line = match (p, q) {
        (MoultonPoint::Ideal { .. }, MoultonPoint::Ideal { .. }) => MoultonLine::Ideal,
        (MoultonPoint::Ideal { slope }, MoultonPoint::Affine { x, y })
        | (MoultonPoint::Affine { x, y }, MoultonPoint::Ideal { slope }) => match slope {
            IdealSlope::Vertical => MoultonLine::Vertical { x: x.clone() },
            IdealSlope::Finite { m } => {
                let b = if x.is_negative() {
                    y - m * x
                } else {
                    y - MoultonLine::right_slope(m) * x
                };
                MoultonLine::Graph { m: m.clone(), b }
            }
        },
        (MoultonPoint::Affine { x: x1, y: y1 }, MoultonPoint::Affine { x: x2, y: y2 }) => {
            if x1 == x2 {
                MoultonLine::Vertical { x: x1.clone() }
            } else {
                // order so that xl < xr
                let (xl, yl, xr, yr) = if x1 < x2 {
                    (x1, y1, x2, y2)
                } else {
                    (x2, y2, x1, y1)
                };
                let straight = (yr - yl) / (xr - xl);
                let m = if !xr.is_positive() {
                    // both on the left (or touching the axis): left slope rules
                    straight.clone()
                } else if !xl.is_negative() {
                    // both on the right: right slope = straight, so m doubles if negative
                    if straight.is_negative() {
                        &straight * &two
                    } else {
                        straight.clone()
                    }
                } else if !straight.is_negative() {
                    // crossing pair with non-negative slope: no bend
                    straight.clone()
                } else {
                    // crossing pair, bending: yl = m*xl + b, yr = (m/2)*xr + b
                    (yl - yr) / (xl - &(xr / &two))
                };
                let b = if xl.is_negative() {
                    yl - &m * xl
                } else {
                    yl - MoultonLine::right_slope(&m) * xl
                };
                MoultonLine::Graph { m, b }
            }
        }
    };
    debug_assert!(moulton_incident(p, &line) && moulton_incident(q, &line));
    Ok(line)
}

pub fn moulton_incident(p: &MoultonPoint, l: &MoultonLine) -> bool {
    match (p, l) {
        (MoultonPoint::Affine { x, .. }, MoultonLine::Vertical { x: c }) => x == c,
        (MoultonPoint::Affine { x, y }, MoultonLine::Graph { m, b }) => {
            *y == MoultonLine::y_at(m, b, x)
        }
        (MoultonPoint::Affine { .. }, MoultonLine::Ideal) => false,
        (MoultonPoint::Ideal { slope }, MoultonLine::Vertical { .. }) => {
            *slope == IdealSlope::Vertical
        }
        (MoultonPoint::Ideal { slope }, MoultonLine::Graph { m, .. }) => {
            matches!(slope, IdealSlope::Finite { m: s } if s == m)
        }
        (MoultonPoint::Ideal { .. }, MoultonLine::Ideal) => true,
    }
}

/// The unique common point of two distinct Moulton lines.
pub fn moulton_meet(l1: &MoultonLine, l2: &MoultonLine) -> Option<MoultonPoint> {
    if l1 == l2 {
        return None;
    }
    let point = match (l1, l2) {
        (MoultonLine::Ideal, other) | (other, MoultonLine::Ideal) => other.ideal_point(),
        (MoultonLine::Vertical { .. }, MoultonLine::Vertical { .. }) => MoultonPoint::Ideal {
            slope: IdealSlope::Vertical,
        },
        (MoultonLine::Vertical { x }, MoultonLine::Graph { m, b })
        | (MoultonLine::Graph { m, b }, MoultonLine::Vertical { x }) => {
            MoultonPoint::affine(x.clone(), MoultonLine::y_at(m, b, x))
        }
        (MoultonLine::Graph { m: m1, b: b1 }, MoultonLine::Graph { m: m2, b: b2 }) => {
            if m1 == m2 {
                MoultonPoint::Ideal {
                    slope: IdealSlope::Finite { m: m1.clone() },
                }
            } else {
                // difference of the two graphs is strictly monotone; exactly
                // one of the half-plane solutions is admissible
                let left_x = (b2 - b1) / (m1 - m2);
                if left_x.is_negative() {
                    MoultonPoint::affine(left_x.clone(), MoultonLine::y_at(m1, b1, &left_x))
                } else {
                    let s1 = MoultonLine::right_slope(m1);
                    let s2 = MoultonLine::right_slope(m2);
                    debug_assert_ne!(s1, s2);
                    let right_x = (b2 - b1) / (s1 - s2);
                    debug_assert!(!right_x.is_negative());
                    MoultonPoint::affine(right_x.clone(), MoultonLine::y_at(m1, b1, &right_x))
                }
            }
        }
    };
    debug_assert!(moulton_incident(&point, l1) && moulton_incident(&point, l2));
    Some(point)
}

/// The Moulton plane as a [`PlaneOps`] geometry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoultonPlane;

impl PlaneOps for MoultonPlane {
    type Pt = MoultonPoint;
    type Ln = MoultonLine;

    fn join(&self, p: &MoultonPoint, q: &MoultonPoint) -> Option<MoultonLine> {
        moulton_line_through(p, q).ok()
    }

    fn meet(&self, l: &MoultonLine, m: &MoultonLine) -> Option<MoultonPoint> {
        moulton_meet(l, m)
    }

    fn incident(&self, p: &MoultonPoint, l: &MoultonLine) -> bool {
        moulton_incident(p, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_slope_is_ordinary() {
        let l = moulton_line_through(
            &MoultonPoint::affine_ints(0, 0),
            &MoultonPoint::affine_ints(1, 1),
        )
        .unwrap();
        assert_eq!(
            l,
            MoultonLine::Graph {
                m: rat(1, 1),
                b: rat(0, 1)
            }
        );
    }

    #[test]
    fn bent_line_through_origin() {
        // (0,0),(2,-1): right slope -1/2, so the parameter slope is -1
        let l = moulton_line_through(
            &MoultonPoint::affine_ints(0, 0),
            &MoultonPoint::affine_ints(2, -1),
        )
        .unwrap();
        assert_eq!(
            l,
            MoultonLine::Graph {
                m: rat(-1, 1),
                b: rat(0, 1)
            }
        );
        // left ray has slope -1
        assert!(moulton_incident(&MoultonPoint::affine_ints(-1, 1), &l));
    }

    #[test]
    fn horizontal_line() {
        let l = moulton_line_through(
            &MoultonPoint::affine_ints(-1, 1),
            &MoultonPoint::affine_ints(1, 1),
        )
        .unwrap();
        assert_eq!(
            l,
            MoultonLine::Graph {
                m: rat(0, 1),
                b: rat(1, 1)
            }
        );
    }

    #[test]
    fn crossing_pair_with_negative_slope_bends() {
        // (-2, 1) to (2, -1): straight slope -1/2 < 0, must bend
        let p = MoultonPoint::affine_ints(-2, 1);
        let q = MoultonPoint::affine_ints(2, -1);
        let l = moulton_line_through(&p, &q).unwrap();
        let MoultonLine::Graph { m, .. } = &l else {
            panic!("expected graph line")
        };
        assert!(m.is_negative());
        assert!(moulton_incident(&p, &l) && moulton_incident(&q, &l));
    }

    #[test]
    fn equal_points_error() {
        let p = MoultonPoint::affine_ints(1, 1);
        assert_eq!(
            moulton_line_through(&p, &p),
            Err(MoultonError::EqualPoints)
        );
    }

    #[test]
    fn meets_are_unique_and_incident() {
        let a = moulton_line_through(
            &MoultonPoint::affine_ints(-3, 2),
            &MoultonPoint::affine_ints(1, -1),
        )
        .unwrap();
        let b = moulton_line_through(
            &MoultonPoint::affine_ints(0, -2),
            &MoultonPoint::affine_ints(2, 3),
        )
        .unwrap();
        let x = moulton_meet(&a, &b).unwrap();
        assert!(moulton_incident(&x, &a) && moulton_incident(&x, &b));
        // parallel bent lines meet at their shared ideal point
        let c = MoultonLine::Graph {
            m: rat(-2, 1),
            b: rat(0, 1),
        };
        let d = MoultonLine::Graph {
            m: rat(-2, 1),
            b: rat(3, 1),
        };
        assert_eq!(
            moulton_meet(&c, &d).unwrap(),
            MoultonPoint::Ideal {
                slope: IdealSlope::Finite { m: rat(-2, 1) }
            }
        );
    }

    #[test]
    fn projectivized_plane_axioms_smoke() {
        let plane = MoultonPlane;
        // ideal + affine joins
        let p = MoultonPoint::affine_ints(1, 2);
        let ideal = MoultonPoint::Ideal {
            slope: IdealSlope::Finite { m: rat(-1, 1) },
        };
        let l = plane.join(&p, &ideal).unwrap();
        assert!(plane.incident(&p, &l) && plane.incident(&ideal, &l));
        // two verticals meet at the vertical ideal point
        let v1 = MoultonLine::Vertical { x: rat(0, 1) };
        let v2 = MoultonLine::Vertical { x: rat(5, 1) };
        assert_eq!(
            plane.meet(&v1, &v2).unwrap(),
            MoultonPoint::Ideal {
                slope: IdealSlope::Vertical
            }
        );
    }
}

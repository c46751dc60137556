//! A minimal projective-plane interface shared by coordinatized planes
//! (any plane flat of `PG(3,K)`) and the Moulton plane, plus the polarity
//! used to dualize configurations over commutative fields.
//!
//! The planar configuration verifiers are generic over [`PlaneOps`], so the
//! same Desargues/Pappus code runs on exact coordinates and on the Moulton
//! counterexample model.

use crate::flats::{Flat, FlatError};
use crate::scalar::{Scalar, ScalarKind};

/// Join/meet/incidence of a projective plane. `join` returns `None` exactly
/// when the points coincide, `meet` exactly when the lines coincide.
pub trait PlaneOps {
    type Pt: Clone + PartialEq + std::fmt::Debug;
    type Ln: Clone + PartialEq + std::fmt::Debug;

    fn join(&self, p: &Self::Pt, q: &Self::Pt) -> Option<Self::Ln>;
    fn meet(&self, l: &Self::Ln, m: &Self::Ln) -> Option<Self::Pt>;
    fn incident(&self, p: &Self::Pt, l: &Self::Ln) -> bool;

    fn collinear(&self, pts: &[Self::Pt]) -> bool {
        let Some((first, rest)) = pts.split_first() else {
            return true;
        };
        let Some(second) = rest.iter().find(|p| *p != first) else {
            return true; // all equal
        };
        let Some(line) = self.join(first, second) else {
            return true;
        };
        pts.iter().all(|p| self.incident(p, &line))
    }
}

/// A plane of `PG(3,K)` acting as a projective plane in its own right.
/// Points are rank-1 flats incident with `carrier`, lines rank-2 subflats.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordPlane {
    carrier: Flat,
}

impl CoordPlane {
    pub fn new(carrier: Flat) -> Result<CoordPlane, FlatError> {
        carrier.expect_rank(3)?;
        Ok(CoordPlane { carrier })
    }

    /// The plane `x4 = 0`, the default home of planar configurations.
    pub fn standard(ring: ScalarKind) -> CoordPlane {
        let carrier = Flat::from_ints(ring, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
            .expect("standard plane");
        CoordPlane { carrier }
    }

    pub fn ring(&self) -> ScalarKind {
        self.carrier.ring()
    }

    pub fn carrier(&self) -> &Flat {
        &self.carrier
    }

    pub fn contains_point(&self, p: &Flat) -> bool {
        p.is_point() && p.incident(&self.carrier).unwrap_or(false)
    }

    /// Affine chart point `(x, y) -> (x : y : 1 : 0)` of the standard plane.
    pub fn chart_point(ring: ScalarKind, x: i64, y: i64) -> Flat {
        Flat::point_from_ints(ring, [x, y, 1, 0]).expect("chart point")
    }

    /// Chart point with exact scalar coordinates.
    pub fn chart_point_scalar(ring: ScalarKind, x: &Scalar, y: &Scalar) -> Result<Flat, FlatError> {
        let v = vec![
            x.clone(),
            y.clone(),
            Scalar::one(ring),
            Scalar::zero(ring),
        ];
        Flat::from_generators(ring, &[v])
    }

    /// The polar line of a point of this plane under the standard bilinear
    /// form: `meet(P_perp, carrier)`. Commutative rings only; errors when the
    /// point is the pole of the carrier (isotropic degenerate case).
    pub fn polar_of_point(&self, p: &Flat) -> Result<Flat, FlatError> {
        p.expect_rank(1)?;
        let perp = p.annihilator()?;
        let l = perp.meet(&self.carrier)?;
        if l.rank() != 2 {
            return Err(FlatError::Degenerate(
                "point is the pole of the carrier plane".into(),
            ));
        }
        Ok(l)
    }

    /// Inverse of [`CoordPlane::polar_of_point`] on lines of this plane.
    pub fn pole_of_line(&self, l: &Flat) -> Result<Flat, FlatError> {
        l.expect_rank(2)?;
        let perp = l.annihilator()?;
        let p = perp.meet(&self.carrier)?;
        if p.rank() != 1 {
            return Err(FlatError::Degenerate(
                "line has no unique pole in the carrier plane".into(),
            ));
        }
        Ok(p)
    }
}

impl PlaneOps for CoordPlane {
    type Pt = Flat;
    type Ln = Flat;

    fn join(&self, p: &Flat, q: &Flat) -> Option<Flat> {
        if p == q {
            return None;
        }
        let j = p.join(q).ok()?;
        j.is_line().then_some(j)
    }

    fn meet(&self, l: &Flat, m: &Flat) -> Option<Flat> {
        if l == m {
            return None;
        }
        let x = l.meet(m).ok()?;
        x.is_point().then_some(x)
    }

    fn incident(&self, p: &Flat, l: &Flat) -> bool {
        p.incident(l).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coord_plane_join_meet() {
        let plane = CoordPlane::standard(ScalarKind::Rational);
        let a = CoordPlane::chart_point(ScalarKind::Rational, 0, 0);
        let b = CoordPlane::chart_point(ScalarKind::Rational, 1, 1);
        let c = CoordPlane::chart_point(ScalarKind::Rational, 2, 2);
        let l = plane.join(&a, &b).unwrap();
        assert!(plane.incident(&c, &l));
        assert!(plane.collinear(&[a.clone(), b, c]));
        assert!(plane.join(&a, &a).is_none());
    }

    #[test]
    fn two_lines_of_a_plane_always_meet() {
        let plane = CoordPlane::standard(ScalarKind::Gf(5));
        let a = plane
            .join(
                &CoordPlane::chart_point(ScalarKind::Gf(5), 0, 0),
                &CoordPlane::chart_point(ScalarKind::Gf(5), 1, 0),
            )
            .unwrap();
        let b = plane
            .join(
                &CoordPlane::chart_point(ScalarKind::Gf(5), 0, 1),
                &CoordPlane::chart_point(ScalarKind::Gf(5), 1, 2),
            )
            .unwrap();
        let x = plane.meet(&a, &b).unwrap();
        assert!(x.is_point());
        assert!(plane.incident(&x, &a) && plane.incident(&x, &b));
    }

    #[test]
    fn polarity_reverses_incidence() {
        let plane = CoordPlane::standard(ScalarKind::Gf(5));
        let p = CoordPlane::chart_point(ScalarKind::Gf(5), 1, 2);
        let q = CoordPlane::chart_point(ScalarKind::Gf(5), 3, 0);
        let polar_p = plane.polar_of_point(&p).unwrap();
        let polar_q = plane.polar_of_point(&q).unwrap();
        assert_eq!(
            q.incident(&polar_p).unwrap(),
            p.incident(&polar_q).unwrap()
        );
        let l = plane.join(&p, &q).unwrap();
        assert_eq!(plane.polar_of_point(&plane.pole_of_line(&l).unwrap()).unwrap(), l);
    }
}

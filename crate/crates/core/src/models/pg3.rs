//! Coordinatized `PG(3,K)`: the projective 3-space over a division ring,
//! with full enumeration for finite prime fields and deterministic sampling
//! elsewhere.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ModelError;
use crate::flats::Flat;
use crate::scalar::{Scalar, ScalarKind};

/// `PG(3,K)` presented through coordinates. Enumeration is available only
/// over finite rings; the infinite rings expose seeded sampling instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordSpace {
    ring: ScalarKind,
}

/// Number of points of `PG(3,q)`: `(q^4-1)/(q-1)`.
pub fn point_count_formula(q: u64) -> u64 {
    q * q * q + q * q + q + 1
}

/// Number of lines of `PG(3,q)`: `(q^2+1)(q^2+q+1)`.
pub fn line_count_formula(q: u64) -> u64 {
    (q * q + 1) * (q * q + q + 1)
}

impl CoordSpace {
    pub fn new(ring: ScalarKind) -> CoordSpace {
        CoordSpace { ring }
    }

    pub fn ring(&self) -> ScalarKind {
        self.ring
    }

    pub fn is_finite(&self) -> bool {
        self.ring.order().is_some()
    }

    fn order(&self) -> Result<u64, ModelError> {
        self.ring
            .order()
            .ok_or(ModelError::EnumerateInfinite(self.ring))
    }

    /// All points, as canonical rank-1 flats (first nonzero coordinate 1).
    pub fn enumerate_points(&self) -> Result<Vec<Flat>, ModelError> {
        let q = self.order()?;
        let mut out = Vec::new();
        for lead in 0..4usize {
            let free = 3 - lead;
            for combo in 0..q.pow(free as u32) {
                let mut v = [0i64; 4];
                v[lead] = 1;
                let mut rest = combo;
                for k in 0..free {
                    v[lead + 1 + k] = (rest % q) as i64;
                    rest /= q;
                }
                out.push(Flat::point_from_ints(self.ring, v)?);
            }
        }
        debug_assert_eq!(out.len() as u64, point_count_formula(q));
        Ok(out)
    }

    /// All lines, deduplicated through the canonical form.
    pub fn enumerate_lines(&self) -> Result<Vec<Flat>, ModelError> {
        let points = self.enumerate_points()?;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let l = points[i].join(&points[j])?;
                if seen.insert(l.clone()) {
                    out.push(l);
                }
            }
        }
        Ok(out)
    }

    /// All planes, via the point-plane duality of the prime field.
    pub fn enumerate_planes(&self) -> Result<Vec<Flat>, ModelError> {
        let points = self.enumerate_points()?;
        points
            .iter()
            .map(|p| p.annihilator().map_err(ModelError::from))
            .collect()
    }

    /// A random point with height-bounded coordinates.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng, height: u32) -> Flat {
        loop {
            let v: Vec<Scalar> = (0..4).map(|_| sample_scalar(rng, self.ring, height)).collect();
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            if let Ok(f) = Flat::from_generators(self.ring, &[v]) {
                return f;
            }
        }
    }

    /// A random line (join of two distinct sampled points).
    pub fn sample_line(&self, rng: &mut ChaCha8Rng, height: u32) -> Flat {
        loop {
            let p = self.sample_point(rng, height);
            let q = self.sample_point(rng, height);
            if let Ok(l) = p.join(&q) {
                if l.is_line() {
                    return l;
                }
            }
        }
    }

    /// A random plane.
    pub fn sample_plane(&self, rng: &mut ChaCha8Rng, height: u32) -> Flat {
        loop {
            let l = self.sample_line(rng, height);
            let p = self.sample_point(rng, height);
            if let Ok(pl) = l.join(&p) {
                if pl.is_plane() {
                    return pl;
                }
            }
        }
    }

    /// A random point on a flat: a random right combination of generators.
    pub fn sample_point_on(&self, rng: &mut ChaCha8Rng, flat: &Flat, height: u32) -> Flat {
        let gens = flat.generators();
        loop {
            let mut acc = vec![Scalar::zero(self.ring); 4];
            for g in gens {
                let c = sample_scalar(rng, self.ring, height);
                for (a, x) in acc.iter_mut().zip(g) {
                    *a = a.add(&x.mul(&c).expect("ring")).expect("ring");
                }
            }
            if acc.iter().all(Scalar::is_zero) {
                continue;
            }
            if let Ok(p) = Flat::from_generators(self.ring, &[acc]) {
                return p;
            }
        }
    }
}

/// Uniform scalar of bounded height: full range for GF(p), numerators in
/// `[-h, h]` and denominators in `[1, h]` for the rational kinds.
pub fn sample_scalar(rng: &mut ChaCha8Rng, ring: ScalarKind, height: u32) -> Scalar {
    let h = height.max(1) as i64;
    match ring {
        ScalarKind::Gf(p) => Scalar::gf(p, rng.gen_range(0..p as i64)),
        ScalarKind::Rational => Scalar::rational(rng.gen_range(-h..=h), rng.gen_range(1..=h)),
        ScalarKind::Quaternion => {
            let mut c = || {
                num_rational::BigRational::new(
                    num_bigint::BigInt::from(rng.gen_range(-h..=h)),
                    num_bigint::BigInt::from(rng.gen_range(1..=h)),
                )
            };
            Scalar::Quaternion(crate::scalar::Quaternion::new(c(), c(), c(), c()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg32_counts_match_formulas() {
        let space = CoordSpace::new(ScalarKind::Gf(2));
        let points = space.enumerate_points().unwrap();
        let lines = space.enumerate_lines().unwrap();
        let planes = space.enumerate_planes().unwrap();
        assert_eq!(points.len(), 15);
        assert_eq!(lines.len(), 35);
        assert_eq!(planes.len(), 15);
        assert_eq!(points.len() as u64, point_count_formula(2));
        assert_eq!(lines.len() as u64, line_count_formula(2));
    }

    #[test]
    fn pg33_counts_match_formulas() {
        let space = CoordSpace::new(ScalarKind::Gf(3));
        assert_eq!(space.enumerate_points().unwrap().len(), 40);
        assert_eq!(space.enumerate_lines().unwrap().len(), 130);
        assert_eq!(space.enumerate_planes().unwrap().len(), 40);
    }

    #[test]
    fn infinite_rings_cannot_enumerate() {
        let space = CoordSpace::new(ScalarKind::Rational);
        assert!(matches!(
            space.enumerate_points(),
            Err(ModelError::EnumerateInfinite(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        use rand::SeedableRng;
        let space = CoordSpace::new(ScalarKind::Quaternion);
        let a: Vec<Flat> = {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..10).map(|_| space.sample_point(&mut rng, 3)).collect()
        };
        let b: Vec<Flat> = {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..10).map(|_| space.sample_point(&mut rng, 3)).collect()
        };
        assert_eq!(a, b);
    }
}

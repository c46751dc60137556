//! Projective linear algebra over a division ring: points, lines and planes
//! of `PG(3,K)` in a unique reduced echelon canonical form, with the
//! join/meet lattice, incidence tests and (for commutative rings) duality.
//!
//! Coordinate space is a *right* vector space over the ring: projective
//! points are right one-dimensional subspaces and scalars multiply vectors
//! on the right. All elimination coefficients are applied on the right as
//! well, which keeps spans intact over the quaternions. Mixing sides would
//! silently break span equality.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarError, ScalarKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlatError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(ScalarKind, ScalarKind),
    #[error("generator set contains no nonzero vector")]
    NoNonzeroGenerator,
    #[error("coordinate vectors must have length 4, got {0}")]
    BadVectorLength(usize),
    #[error("expected a flat of rank {expected}, got rank {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("duality is unsupported over a noncommutative ring")]
    NoncommutativeDual,
    #[error("{0}")]
    Degenerate(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A flat of `PG(3,K)`: rank 1 = point, 2 = line, 3 = plane. Rank 0 is the
/// explicit empty sentinel (the result of a disjoint meet) and rank 4 the
/// whole space; neither is an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    ring: ScalarKind,
    rows: Vec<Vec<Scalar>>,
}

impl Flat {
    /// Canonicalize a generator set into its unique reduced echelon form.
    /// Dependent generators reduce the rank rather than erroring.
    pub fn from_generators(ring: ScalarKind, generators: &[Vec<Scalar>]) -> Result<Flat, FlatError> {
        for v in generators {
            if v.len() != 4 {
                return Err(FlatError::BadVectorLength(v.len()));
            }
            for s in v {
                if s.kind() != ring {
                    return Err(FlatError::RingMismatch(ring, s.kind()));
                }
            }
        }
        let rows = rref(generators.to_vec())?;
        if rows.is_empty() {
            return Err(FlatError::NoNonzeroGenerator);
        }
        Ok(Flat { ring, rows })
    }

    /// Convenience constructor from small integers (components embed into
    /// the ring); mostly used by tests and samplers.
    pub fn from_ints(ring: ScalarKind, generators: &[[i64; 4]]) -> Result<Flat, FlatError> {
        let gens: Vec<Vec<Scalar>> = generators
            .iter()
            .map(|v| v.iter().map(|&n| Scalar::from_i64(ring, n)).collect())
            .collect();
        Flat::from_generators(ring, &gens)
    }

    pub fn point_from_ints(ring: ScalarKind, v: [i64; 4]) -> Result<Flat, FlatError> {
        let f = Flat::from_ints(ring, &[v])?;
        f.expect_rank(1)?;
        Ok(f)
    }

    pub fn empty(ring: ScalarKind) -> Flat {
        Flat { ring, rows: Vec::new() }
    }

    pub fn full(ring: ScalarKind) -> Flat {
        let rows = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i == j {
                            Scalar::one(ring)
                        } else {
                            Scalar::zero(ring)
                        }
                    })
                    .collect()
            })
            .collect();
        Flat { ring, rows }
    }

    pub fn ring(&self) -> ScalarKind {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.rank() == 1
    }

    pub fn is_line(&self) -> bool {
        self.rank() == 2
    }

    pub fn is_plane(&self) -> bool {
        self.rank() == 3
    }

    pub fn is_full_space(&self) -> bool {
        self.rank() == 4
    }

    pub fn expect_rank(&self, expected: usize) -> Result<(), FlatError> {
        if self.rank() != expected {
            return Err(FlatError::WrongRank { expected, got: self.rank() });
        }
        Ok(())
    }

    /// Canonical generators (reduced echelon rows).
    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn check_ring(&self, other: &Flat) -> Result<(), FlatError> {
        if self.ring != other.ring {
            return Err(FlatError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    /// Smallest flat containing both operands.
    pub fn join(&self, other: &Flat) -> Result<Flat, FlatError> {
        self.check_ring(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        let rows = rref(rows)?;
        Ok(Flat { ring: self.ring, rows })
    }

    /// Largest common subflat; the empty sentinel when the subspace
    /// intersection is zero. Computed by the Zassenhaus block trick, which
    /// is plain elimination and therefore valid over division rings.
    pub fn meet(&self, other: &Flat) -> Result<Flat, FlatError> {
        self.check_ring(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Flat::empty(self.ring));
        }
        let zero = Scalar::zero(self.ring);
        let mut wide: Vec<Vec<Scalar>> = Vec::with_capacity(self.rank() + other.rank());
        for r in &self.rows {
            let mut w = r.clone();
            w.extend(r.iter().cloned());
            wide.push(w);
        }
        for r in &other.rows {
            let mut w = r.clone();
            w.extend(std::iter::repeat(zero.clone()).take(4));
            wide.push(w);
        }
        let wide = rref(wide)?;
        let mut rows = Vec::new();
        for w in wide {
            if w[..4].iter().all(Scalar::is_zero) {
                rows.push(w[4..].to_vec());
            }
        }
        let rows = rref(rows)?;
        Ok(Flat { ring: self.ring, rows })
    }

    /// True iff `self` is contained in `sup`.
    pub fn incident(&self, sup: &Flat) -> Result<bool, FlatError> {
        self.check_ring(sup)?;
        if self.is_empty() {
            return Ok(true);
        }
        for row in &self.rows {
            if !reduces_to_zero(row, &sup.rows)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Two lines with empty meet (equivalently, full-space join).
    pub fn are_skew(&self, other: &Flat) -> Result<bool, FlatError> {
        self.expect_rank(2)?;
        other.expect_rank(2)?;
        Ok(self.meet(other)?.is_empty())
    }

    /// Annihilator under the standard bilinear form; maps rank r to rank
    /// 4-r and reverses inclusion. Commutative rings only: the natural dual
    /// of a right space over a skew field is a left space, so there is no
    /// such flat to return.
    pub fn annihilator(&self) -> Result<Flat, FlatError> {
        if !self.ring.is_commutative() {
            return Err(FlatError::NoncommutativeDual);
        }
        if self.is_empty() {
            return Ok(Flat::full(self.ring));
        }
        if self.is_full_space() {
            return Ok(Flat::empty(self.ring));
        }
        // rows are rref; solve rows . y = 0 by free-column back substitution
        let pivots: Vec<usize> = self.rows.iter().map(|r| pivot_col(r).unwrap()).collect();
        let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut y = vec![Scalar::zero(self.ring); 4];
            y[f] = Scalar::one(self.ring);
            for (i, &p) in pivots.iter().enumerate() {
                y[p] = self.rows[i][f].neg();
            }
            basis.push(y);
        }
        Flat::from_generators(self.ring, &basis)
    }

    /// The q+1 points of a line over GF(q), or the first `limit` points of a
    /// deterministic sweep over an infinite ring.
    pub fn points_on_line(&self, limit: usize) -> Result<Vec<Flat>, FlatError> {
        self.expect_rank(2)?;
        let g1 = &self.rows[0];
        let g2 = &self.rows[1];
        let mut out = Vec::new();
        match self.ring {
            ScalarKind::Gf(p) => {
                for t in 0..p as i64 {
                    let tt = Scalar::from_i64(self.ring, t);
                    let v = vec_add(g1, &vec_scale(g2, &tt))?;
                    out.push(Flat::from_generators(self.ring, &[v])?);
                }
                out.push(Flat::from_generators(self.ring, &[g2.clone()])?);
            }
            _ => {
                // t = 0, 1, -1, 2, -2, ... then the point at g2
                let mut ts: Vec<i64> = vec![0];
                let mut k = 1i64;
                while ts.len() + 1 < limit {
                    ts.push(k);
                    ts.push(-k);
                    k += 1;
                }
                ts.truncate(limit.saturating_sub(1));
                for t in ts {
                    let tt = Scalar::from_i64(self.ring, t);
                    let v = vec_add(g1, &vec_scale(g2, &tt))?;
                    out.push(Flat::from_generators(self.ring, &[v])?);
                }
                if out.len() < limit {
                    out.push(Flat::from_generators(self.ring, &[g2.clone()])?);
                }
            }
        }
        Ok(out)
    }
}

/// True iff every point of `points` lies on one line.
pub fn collinear(points: &[Flat]) -> Result<bool, FlatError> {
    span_rank_at_most(points, 2)
}

/// True iff every point of `points` lies on one plane.
pub fn coplanar(points: &[Flat]) -> Result<bool, FlatError> {
    span_rank_at_most(points, 3)
}

fn span_rank_at_most(points: &[Flat], bound: usize) -> Result<bool, FlatError> {
    let mut it = points.iter();
    let first = it
        .next()
        .ok_or_else(|| FlatError::Degenerate("no points given".into()))?;
    let mut acc = first.clone();
    for p in it {
        acc = acc.join(p)?;
    }
    Ok(acc.rank() <= bound)
}

/// Join of a slice of flats.
pub fn join_all(flats: &[Flat]) -> Result<Flat, FlatError> {
    let mut it = flats.iter();
    let first = it
        .next()
        .ok_or_else(|| FlatError::Degenerate("no flats given".into()))?;
    let mut acc = first.clone();
    for f in it {
        acc = acc.join(f)?;
    }
    Ok(acc)
}

fn pivot_col(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|s| !s.is_zero())
}

fn vec_scale(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x.mul(s).expect("same ring")).collect()
}

fn vec_add(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, ScalarError> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, ScalarError> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Reduced row echelon form for the *right* row span: rows are recombined
/// with coefficients on the right, pivots normalized to 1 by right
/// multiplication with the pivot inverse, zeros above and below each pivot,
/// pivot columns strictly increasing. The output is the unique canonical
/// representation of the span; zero rows are dropped.
fn rref(mut rows: Vec<Vec<Scalar>>) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    let width = rows.first().map_or(0, Vec::len);
    let mut done = 0usize;
    for col in 0..width {
        let Some(pivot_row) = (done..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(done, pivot_row);
        let inv = rows[done][col].inverse()?;
        rows[done] = vec_scale(&rows[done], &inv);
        for r in 0..rows.len() {
            if r != done && !rows[r][col].is_zero() {
                let coeff = rows[r][col].clone();
                let scaled = vec_scale(&rows[done], &coeff);
                rows[r] = vec_sub(&rows[r], &scaled)?;
            }
        }
        done += 1;
        if done == rows.len() {
            break;
        }
    }
    rows.truncate(done);
    Ok(rows)
}

/// Reduce `row` against canonical rref rows; true iff it lands on zero,
/// i.e. lies in their right span.
fn reduces_to_zero(row: &[Scalar], rref_rows: &[Vec<Scalar>]) -> Result<bool, ScalarError> {
    let mut r = row.to_vec();
    for base in rref_rows {
        let p = pivot_col(base).expect("canonical rows are nonzero");
        if !r[p].is_zero() {
            let coeff = r[p].clone();
            let scaled = vec_scale(base, &coeff);
            r = vec_sub(&r, &scaled)?;
        }
    }
    Ok(r.iter().all(Scalar::is_zero))
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let comps: Vec<String> = r.iter().map(Scalar::canonical_string).collect();
                format!("({})", comps.join(","))
            })
            .collect();
        write!(f, "{}[{}]{{{}}}", self.ring, self.rank(), rows.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct FlatWire {
    ring: ScalarKind,
    rank: usize,
    rows: Vec<Vec<String>>,
}

impl Serialize for Flat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = FlatWire {
            ring: self.ring,
            rank: self.rank(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(Scalar::canonical_string).collect())
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Flat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = FlatWire::deserialize(de)?;
        if wire.rank == 0 {
            return Ok(Flat::empty(wire.ring));
        }
        let mut gens = Vec::new();
        for row in &wire.rows {
            let mut v = Vec::new();
            for s in row {
                v.push(Scalar::parse(wire.ring, s).map_err(D::Error::custom)?);
            }
            gens.push(v);
        }
        let flat = Flat::from_generators(wire.ring, &gens).map_err(D::Error::custom)?;
        if flat.rank() != wire.rank {
            return Err(D::Error::custom(format!(
                "declared rank {} but generators span rank {}",
                wire.rank,
                flat.rank()
            )));
        }
        Ok(flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: ScalarKind = ScalarKind::Rational;
    const G3: ScalarKind = ScalarKind::Gf(3);
    const H: ScalarKind = ScalarKind::Quaternion;

    fn pt(ring: ScalarKind, v: [i64; 4]) -> Flat {
        Flat::point_from_ints(ring, v).unwrap()
    }

    #[test]
    fn canonicalize_rational_point() {
        let f = pt(Q, [2, 4, 0, 0]);
        assert_eq!(f, pt(Q, [1, 2, 0, 0]));
        assert_eq!(f.generators()[0][0], Scalar::rational(1, 1));
    }

    #[test]
    fn canonicalize_gf3_line() {
        let l = Flat::from_ints(G3, &[[1, 0, 0, 0], [1, 1, 0, 0]]).unwrap();
        let expected = Flat::from_ints(G3, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        assert_eq!(l, expected);
    }

    #[test]
    fn canonicalize_quaternion_point() {
        // (i, k, 0, 0) normalizes by right multiplication with i^{-1}
        let i = Scalar::quaternion_i();
        let k = Scalar::quaternion_k();
        let zero = Scalar::zero(H);
        let f = Flat::from_generators(H, &[vec![i.clone(), k.clone(), zero.clone(), zero.clone()]])
            .unwrap();
        // expected (1, -j, 0, 0); cross-check both vectors span the same flat
        let minus_j = Scalar::quaternion_j().neg();
        let g = Flat::from_generators(
            H,
            &[vec![Scalar::one(H), minus_j, zero.clone(), zero.clone()]],
        )
        .unwrap();
        assert_eq!(f, g);
        assert!(f.incident(&g).unwrap() && g.incident(&f).unwrap());
    }

    #[test]
    fn join_examples() {
        let e1 = pt(Q, [1, 0, 0, 0]);
        let e2 = pt(Q, [0, 1, 0, 0]);
        let line = e1.join(&e2).unwrap();
        assert_eq!(line, Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap());
        // join(line, (1,1,1,1)) is the plane x3 = x4
        let p = pt(Q, [1, 1, 1, 1]);
        let plane = line.join(&p).unwrap();
        let expected =
            Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(plane, expected);
        for gen in [&e1, &e2, &p] {
            assert!(gen.incident(&plane).unwrap());
        }
        // idempotence
        assert_eq!(e1.join(&e1).unwrap(), e1);
    }

    #[test]
    fn meet_examples() {
        let x4 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]).unwrap();
        let x3 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]).unwrap();
        let line = x4.meet(&x3).unwrap();
        assert_eq!(line, Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap());

        let l1 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let l2 = Flat::from_ints(Q, &[[0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert!(l1.meet(&l2).unwrap().is_empty());

        // planes x1=x2 and x3=x4 meet in span{(1,1,0,0),(0,0,1,1)}
        let p1 = Flat::from_ints(Q, &[[1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        let p2 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        let l = p1.meet(&p2).unwrap();
        assert_eq!(l, Flat::from_ints(Q, &[[1, 1, 0, 0], [0, 0, 1, 1]]).unwrap());
    }

    #[test]
    fn incidence_examples() {
        let e1 = pt(Q, [1, 0, 0, 0]);
        let e3 = pt(Q, [0, 0, 1, 0]);
        let line = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let x3_eq_x4 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        let x3_zero = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]).unwrap();
        assert!(e1.incident(&line).unwrap());
        assert!(!e3.incident(&x3_zero).unwrap());
        assert!(line.incident(&x3_eq_x4).unwrap());
    }

    #[test]
    fn skew_examples() {
        let l1 = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let l2 = Flat::from_ints(Q, &[[0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        let l3 = Flat::from_ints(Q, &[[0, 1, 0, 0], [0, 0, 1, 0]]).unwrap();
        assert!(l1.are_skew(&l2).unwrap());
        assert!(!l1.are_skew(&l3).unwrap());
        let a = Flat::from_ints(G3, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let c = Flat::from_ints(G3, &[[1, 0, 1, 0], [0, 1, 0, 1]]).unwrap();
        assert!(a.are_skew(&c).unwrap());
        assert_eq!(a.join(&c).unwrap().rank(), 4);
    }

    #[test]
    fn collinearity_and_coplanarity() {
        let e1 = pt(Q, [1, 0, 0, 0]);
        let e2 = pt(Q, [0, 1, 0, 0]);
        let e3 = pt(Q, [0, 0, 1, 0]);
        let d = pt(Q, [1, 1, 0, 0]);
        let all = pt(Q, [1, 1, 1, 1]);
        assert!(collinear(&[e1.clone(), e2.clone(), d]).unwrap());
        assert!(!collinear(&[e1.clone(), e2.clone(), e3.clone()]).unwrap());
        assert!(coplanar(&[e1.clone(), e2.clone(), e3.clone()]).unwrap());
        assert!(!coplanar(&[e1, e2, e3, all]).unwrap());
    }

    #[test]
    fn zero_input_is_an_error() {
        assert!(matches!(
            Flat::from_ints(Q, &[[0, 0, 0, 0]]),
            Err(FlatError::NoNonzeroGenerator)
        ));
    }

    #[test]
    fn dependent_generators_reduce_rank() {
        let f = Flat::from_ints(Q, &[[1, 0, 0, 0], [2, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        assert_eq!(f.rank(), 2);
    }

    fn random_scalar(rng: &mut ChaCha8Rng, ring: ScalarKind) -> Scalar {
        match ring {
            ScalarKind::Gf(p) => Scalar::gf(p, rng.gen_range(0..p as i64)),
            ScalarKind::Rational => Scalar::rational(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
            ScalarKind::Quaternion => Scalar::quaternion(
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
            ),
        }
    }

    /// Canonical form is invariant under random invertible right
    /// recombinations of the generators, in all three rings.
    #[test]
    fn canonical_form_is_representation_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for ring in [G3, Q, H] {
            for _ in 0..60 {
                let rank = rng.gen_range(1..=3);
                let gens: Vec<Vec<Scalar>> = (0..rank)
                    .map(|_| (0..4).map(|_| random_scalar(&mut rng, ring)).collect())
                    .collect();
                let Ok(f) = Flat::from_generators(ring, &gens) else {
                    continue;
                };
                if f.rank() != rank {
                    continue; // dependent sample
                }
                // new generators: random invertible recombination (right coefficients)
                let mut new_gens = Vec::new();
                for i in 0..rank {
                    let mut v = gens[i].clone();
                    for (j, g) in gens.iter().enumerate() {
                        if i != j && rng.gen_bool(0.7) {
                            let c = random_scalar(&mut rng, ring);
                            v = vec_add(&v, &vec_scale(g, &c)).unwrap();
                        }
                    }
                    let mut unit = random_scalar(&mut rng, ring);
                    if unit.is_zero() {
                        unit = Scalar::one(ring);
                    }
                    new_gens.push(vec_scale(&v, &unit));
                }
                let g = Flat::from_generators(ring, &new_gens).unwrap();
                if g.rank() == rank {
                    assert_eq!(f, g, "ring {ring}");
                }
            }
        }
    }

    /// rank(join) + rank(meet) = rank(a) + rank(b): exhaustive over PG(3,2),
    /// randomized over the rationals and quaternions.
    #[test]
    fn rank_formula_exhaustive_pg32() {
        let ring = ScalarKind::Gf(2);
        let mut flats = vec![Flat::full(ring)];
        let vectors: Vec<[i64; 4]> = (1..16)
            .map(|m| [(m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1])
            .collect();
        let mut seen = std::collections::HashSet::new();
        for v in &vectors {
            for w in &vectors {
                for x in &vectors {
                    let f = Flat::from_ints(ring, &[*v, *w, *x]).unwrap();
                    if seen.insert(f.clone()) {
                        flats.push(f);
                    }
                }
            }
        }
        // 15 points + 35 lines + 15 planes + full
        assert_eq!(flats.len(), 1 + 15 + 35 + 15);
        for a in &flats {
            for b in &flats {
                let j = a.join(b).unwrap().rank();
                let m = a.meet(b).unwrap().rank();
                assert_eq!(j + m, a.rank() + b.rank(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn rank_formula_randomized_infinite_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for ring in [Q, H] {
            for _ in 0..40 {
                let ra = rng.gen_range(1..=3);
                let rb = rng.gen_range(1..=3);
                let mk = |rng: &mut ChaCha8Rng, r: usize| {
                    let gens: Vec<Vec<Scalar>> = (0..r)
                        .map(|_| (0..4).map(|_| random_scalar(rng, ring)).collect())
                        .collect();
                    Flat::from_generators(ring, &gens)
                };
                let (Ok(a), Ok(b)) = (mk(&mut rng, ra), mk(&mut rng, rb)) else {
                    continue;
                };
                let j = a.join(&b).unwrap();
                let m = a.meet(&b).unwrap();
                assert_eq!(j.rank() + m.rank(), a.rank() + b.rank());
                assert!(a.incident(&j).unwrap());
                assert!(m.incident(&a).unwrap());
            }
        }
    }

    #[test]
    fn annihilator_round_trip() {
        let plane = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]]).unwrap();
        let ann = plane.annihilator().unwrap();
        assert_eq!(ann.rank(), 1);
        assert_eq!(ann.annihilator().unwrap(), plane);
        let p = pt(G3, [1, 2, 0, 1]);
        assert_eq!(p.annihilator().unwrap().annihilator().unwrap(), p);
    }

    #[test]
    fn quaternion_duality_errors() {
        let p = pt(H, [1, 0, 0, 0]);
        assert!(matches!(p.annihilator(), Err(FlatError::NoncommutativeDual)));
    }

    #[test]
    fn line_point_enumeration() {
        let l = Flat::from_ints(G3, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let pts = l.points_on_line(0).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!(p.incident(&l).unwrap());
        }
        let lq = Flat::from_ints(Q, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        let pts = lq.points_on_line(5).unwrap();
        assert_eq!(pts.len(), 5);
        let set: std::collections::HashSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 5);
    }

    #[test]
    fn serde_round_trip() {
        let f = Flat::from_ints(G3, &[[1, 0, 1, 0], [0, 1, 0, 1]]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: Flat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}

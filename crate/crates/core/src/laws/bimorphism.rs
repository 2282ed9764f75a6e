//! Bimorphisms out of pairs of one-dimensional areas and their extension to
//! two-dimensional covers.

use std::fmt::Debug;

use rand::Rng;

use crate::area::CubicalArea;
use crate::cube::{Cube, CubeFamily};
use crate::error::{AlgebraError, FormatError};
use crate::interval::{ratio, Endpoint, Interval, OneDimArea, Rational};

/// A finite join-semilattice with zero, elements `0..size`, given by its
/// join table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemilatticeZ {
    size: usize,
    table: Vec<usize>,
    zero: usize,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SemilatticeError {
    #[error("join table must have {expected} entries, got {found}")]
    TableSize { expected: usize, found: usize },
    #[error("join table entry out of range")]
    OutOfRange,
    #[error("join is not idempotent at {0}")]
    NotIdempotent(usize),
    #[error("join is not commutative at ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("join is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("{0} is not neutral for join")]
    NotNeutral(usize),
}

impl FiniteSemilatticeZ {
    /// Checks the semilattice axioms on the whole table.
    pub fn new(size: usize, table: Vec<usize>, zero: usize) -> Result<Self, SemilatticeError> {
        if table.len() != size * size {
            return Err(SemilatticeError::TableSize {
                expected: size * size,
                found: table.len(),
            });
        }
        if zero >= size || table.iter().any(|&x| x >= size) {
            return Err(SemilatticeError::OutOfRange);
        }
        let j = |a: usize, b: usize| table[a * size + b];
        for a in 0..size {
            if j(a, a) != a {
                return Err(SemilatticeError::NotIdempotent(a));
            }
            if j(zero, a) != a {
                return Err(SemilatticeError::NotNeutral(zero));
            }
            for b in 0..size {
                if j(a, b) != j(b, a) {
                    return Err(SemilatticeError::NotCommutative(a, b));
                }
                for c in 0..size {
                    if j(j(a, b), c) != j(a, j(b, c)) {
                        return Err(SemilatticeError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteSemilatticeZ { size, table, zero })
    }

    /// Subsets of `{0, …, bits-1}` under union, each subset encoded as its
    /// bitmask.
    pub fn powerset(bits: u32) -> Self {
        let size = 1usize << bits;
        let table = (0..size * size).map(|k| (k / size) | (k % size)).collect();
        Self::new(size, table, 0).expect("union is a semilattice")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }
}

/// A map `A × B → X` that preserves joins and zero in each argument
/// separately. Implementations are trusted; [`spot_check`] tests the laws on
/// given arguments.
pub trait Bimorphism {
    type Value: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Value;
    fn join(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn apply(&self, a: &OneDimArea, b: &OneDimArea) -> Self::Value;
}

/// The inclusion `(a, b) ↦ a × b` into two-dimensional areas.
#[derive(Clone, Copy, Debug, Default)]
pub struct CanonicalEmbedding;

impl Bimorphism for CanonicalEmbedding {
    type Value = CubicalArea;

    fn zero(&self) -> CubicalArea {
        CubicalArea::empty(2)
    }

    fn join(&self, x: &CubicalArea, y: &CubicalArea) -> CubicalArea {
        x.union(y).expect("both two-dimensional")
    }

    fn apply(&self, a: &OneDimArea, b: &OneDimArea) -> CubicalArea {
        CubicalArea::from(a).product(&CubicalArea::from(b))
    }
}

/// Into a powerset lattice: each sample point `(x, y)` carries a set of
/// labels, and `f(a, b)` collects the labels of the samples inside `a × b`.
#[derive(Clone, Debug)]
pub struct PowersetBimorphism {
    lattice: FiniteSemilatticeZ,
    samples: Vec<(Rational, Rational, usize)>,
}

impl PowersetBimorphism {
    pub fn new(bits: u32, samples: Vec<(Rational, Rational, usize)>) -> Self {
        let lattice = FiniteSemilatticeZ::powerset(bits);
        assert!(samples.iter().all(|s| s.2 < lattice.size()));
        PowersetBimorphism { lattice, samples }
    }

    /// Samples on the quarter lattice around `[0, 8]`, plus a few far away
    /// to see unbounded factors.
    pub fn random<R: Rng>(rng: &mut R, bits: u32, count: usize) -> Self {
        let size = 1usize << bits;
        let coord = |rng: &mut R| {
            if rng.random_ratio(1, 10) {
                if rng.random_bool(0.5) {
                    ratio(-100, 1)
                } else {
                    ratio(100, 1)
                }
            } else {
                ratio(rng.random_range(-4..=36), 4)
            }
        };
        let samples = (0..count)
            .map(|_| {
                let x = coord(rng);
                let y = coord(rng);
                (x, y, rng.random_range(1..size))
            })
            .collect();
        Self::new(bits, samples)
    }

    pub fn lattice(&self) -> &FiniteSemilatticeZ {
        &self.lattice
    }
}

impl Bimorphism for PowersetBimorphism {
    type Value = usize;

    fn zero(&self) -> usize {
        self.lattice.zero()
    }

    fn join(&self, x: &usize, y: &usize) -> usize {
        self.lattice.join(*x, *y)
    }

    fn apply(&self, a: &OneDimArea, b: &OneDimArea) -> usize {
        self.samples
            .iter()
            .filter(|(x, y, _)| a.contains_point(x) && b.contains_point(y))
            .fold(self.lattice.zero(), |acc, (_, _, labels)| {
                self.lattice.join(acc, *labels)
            })
    }
}

/// Checks zero preservation and join preservation in each argument on the
/// given areas.
pub fn spot_check<F: Bimorphism>(f: &F, a1: &OneDimArea, a2: &OneDimArea, b: &OneDimArea) -> bool {
    let empty = OneDimArea::empty();
    let joined = a1.union(a2);
    f.apply(&empty, b) == f.zero()
        && f.apply(b, &empty) == f.zero()
        && f.apply(&joined, b) == f.join(&f.apply(a1, b), &f.apply(a2, b))
        && f.apply(b, &joined) == f.join(&f.apply(b, a1), &f.apply(b, a2))
}

/// `h(⋃ aᵢ × bᵢ) = ⋁ f(aᵢ, bᵢ)` evaluated on the given cover.
pub fn extend_bimorphism<F: Bimorphism>(f: &F, cover: &CubeFamily) -> Result<F::Value, AlgebraError> {
    if cover.dim() != 2 {
        return Err(AlgebraError::DimensionMismatch {
            left: cover.dim(),
            right: 2,
        });
    }
    Ok(cover.cubes().iter().fold(f.zero(), |acc, c| {
        let a = OneDimArea::from(c.factor(0).clone());
        let b = OneDimArea::from(c.factor(1).clone());
        f.join(&acc, &f.apply(&a, &b))
    }))
}

/// Whether the extension takes the same value on two covers of `area`.
/// Fails when either cover does not describe `area`.
pub fn check_cover_invariance<F: Bimorphism>(
    f: &F,
    area: &CubicalArea,
    cover1: &CubeFamily,
    cover2: &CubeFamily,
) -> Result<bool, AlgebraError> {
    for cover in [cover1, cover2] {
        if !CubicalArea::normalize(cover).area_eq(area)? {
            return Err(AlgebraError::CoverMismatch);
        }
    }
    Ok(extend_bimorphism(f, cover1)? == extend_bimorphism(f, cover2)?)
}

/// Cuts `iv` at the given values (each strictly inside it). At every cut the
/// two pieces either split the point between them or both keep it.
fn cut_interval<R: Rng>(rng: &mut R, iv: &Interval, cuts: &[Rational]) -> Vec<Interval> {
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    let mut lo = iv.lo().clone();
    for c in cuts {
        let (left_closed, right_closed) = match rng.random_range(0..3) {
            0 => (true, false),
            1 => (false, true),
            _ => (true, true),
        };
        pieces.push(
            Interval::new(
                lo,
                Endpoint::Finite {
                    value: c.clone(),
                    closed: left_closed,
                },
            )
            .expect("cut strictly inside"),
        );
        lo = Endpoint::Finite {
            value: c.clone(),
            closed: right_closed,
        };
    }
    pieces.push(Interval::new(lo, iv.hi().clone()).expect("cut strictly inside"));
    pieces
}

/// A cover of `area` subdividing each maximal cube along randomly chosen
/// hyperplanes through critical values of the area (and a few extra half
/// integers).
pub fn random_refinement<R: Rng>(rng: &mut R, area: &CubicalArea) -> Result<CubeFamily, FormatError> {
    let dim = area.dim();
    let mut out = Vec::new();
    for cube in area.cubes() {
        let mut axis_pieces = Vec::with_capacity(dim);
        for axis in 0..dim {
            let iv = cube.factor(axis);
            let mut candidates = area.critical_values(axis);
            candidates.extend((0..2).map(|_| ratio(rng.random_range(0..=16), 2)));
            candidates.sort();
            candidates.dedup();
            let cuts: Vec<Rational> = candidates
                .into_iter()
                .filter(|v| iv.contains_point(v) && iv.lo().value() != Some(v) && iv.hi().value() != Some(v))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            axis_pieces.push(cut_interval(rng, iv, &cuts));
        }
        let mut rows: Vec<Vec<Interval>> = vec![Vec::new()];
        for pieces in &axis_pieces {
            rows = rows
                .into_iter()
                .flat_map(|row| {
                    pieces.iter().map(move |p| {
                        let mut r = row.clone();
                        r.push(p.clone());
                        r
                    })
                })
                .collect();
        }
        for row in rows {
            out.push(Cube::new(row)?);
        }
    }
    CubeFamily::new(dim, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::laws::random::rng_from_seed;

    fn closed(a: i64, b: i64) -> Interval {
        Interval::closed(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn powerset_is_a_semilattice() {
        let l = FiniteSemilatticeZ::powerset(3);
        assert_eq!(l.size(), 8);
        assert_eq!(l.join(0b001, 0b100), 0b101);
    }

    #[test]
    fn rejects_non_semilattices() {
        // max with zero 1 is not neutral for 0
        let table = vec![0, 1, 1, 1];
        assert_eq!(
            FiniteSemilatticeZ::new(2, table, 1).unwrap_err(),
            SemilatticeError::NotNeutral(1)
        );
        let table = vec![0, 0, 1, 1];
        assert!(FiniteSemilatticeZ::new(2, table, 0).is_err());
    }

    #[test]
    fn bounded_lattice_bimorphisms_force_zero_equal_one() {
        // Maps f: 2 × 2 → 2 preserving 0, 1, join and meet in each argument.
        // f(0, 1) must be 0 (zero in the first argument) and 1 (one in the
        // second), so no such map exists into the two-element lattice, and
        // exactly one into the one-element lattice.
        let count_into = |target: usize| {
            let (zero, one) = (0, target - 1);
            let mut count = 0;
            for code in 0..target.pow(4) {
                let f = |a: usize, b: usize| (code / target.pow((2 * a + b) as u32)) % target;
                let mut ok = true;
                for x in 0..2 {
                    ok &= f(0, x) == zero && f(x, 0) == zero;
                    ok &= f(x, 1) == one && f(1, x) == one;
                    for y in 0..2 {
                        for z in 0..2 {
                            ok &= f(x, y.max(z)) == f(x, y).max(f(x, z));
                            ok &= f(y.max(z), x) == f(y, x).max(f(z, x));
                            ok &= f(x, y.min(z)) == f(x, y).min(f(x, z));
                            ok &= f(y.min(z), x) == f(y, x).min(f(z, x));
                        }
                    }
                }
                count += ok as usize;
            }
            count
        };
        assert_eq!(count_into(2), 0);
        assert_eq!(count_into(1), 1);
    }

    #[test]
    fn extension_on_small_covers() {
        let f = PowersetBimorphism::new(2, vec![(rat(0), rat(0), 0b01), (rat(2), rat(2), 0b10)]);
        let a = OneDimArea::from(closed(0, 2));
        let cover = CubeFamily::new(2, vec![Cube::new(vec![closed(0, 2), closed(0, 2)]).unwrap()]).unwrap();
        assert_eq!(extend_bimorphism(&f, &cover).unwrap(), f.apply(&a, &a));
        assert_eq!(extend_bimorphism(&f, &CubeFamily::empty(2)).unwrap(), 0);
        assert!(extend_bimorphism(&f, &CubeFamily::empty(1)).is_err());
    }

    #[test]
    fn subdivided_square_has_the_same_value() {
        // with a1 = (0,1] the pieces would miss (0, 3/2); a1 = [0,1] covers
        let a1 = Interval::closed(rat(0), rat(1)).unwrap();
        let a2 = closed(1, 2);
        let b1 = closed(0, 1);
        let b2 = closed(1, 2);
        let a = closed(0, 2);
        let cover = CubeFamily::new(
            2,
            vec![
                Cube::new(vec![a1.clone(), b2.clone()]).unwrap(),
                Cube::new(vec![a2, b2]).unwrap(),
                Cube::new(vec![a.clone(), b1]).unwrap(),
            ],
        )
        .unwrap();
        let square = CubicalArea::from_cube(Cube::new(vec![a.clone(), a.clone()]).unwrap());
        assert_eq!(CubicalArea::normalize(&cover), square);
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let f = PowersetBimorphism::random(&mut rng, 4, 12);
            let whole = OneDimArea::from(a.clone());
            assert_eq!(extend_bimorphism(&f, &cover).unwrap(), f.apply(&whole, &whole));
        }
        assert_eq!(extend_bimorphism(&CanonicalEmbedding, &cover).unwrap(), square);
    }

    #[test]
    fn refinements_cover_the_same_area() {
        let mut rng = rng_from_seed(3);
        for seed in 0..30 {
            let area = crate::laws::random::random_area(seed, 2, 3);
            let cover = random_refinement(&mut rng, &area).unwrap();
            assert!(cover.len() >= area.len());
            assert_eq!(CubicalArea::normalize(&cover), area);
            assert!(check_cover_invariance(&CanonicalEmbedding, &area, &area.as_family(), &cover).unwrap());
        }
    }

    #[test]
    fn cover_mismatch_is_an_error() {
        let area = CubicalArea::from_cube(Cube::new(vec![closed(0, 2), closed(0, 2)]).unwrap());
        let other = CubeFamily::new(2, vec![Cube::new(vec![closed(0, 1), closed(0, 2)]).unwrap()]).unwrap();
        assert_eq!(
            check_cover_invariance(&CanonicalEmbedding, &area, &area.as_family(), &other),
            Err(AlgebraError::CoverMismatch)
        );
    }

    #[test]
    fn bimorphism_laws_hold_for_samples() {
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let f = PowersetBimorphism::random(&mut rng, 4, 10);
            let a1 = crate::laws::random::random_one_dim(&mut rng, 2);
            let a2 = crate::laws::random::random_one_dim(&mut rng, 2);
            let b = crate::laws::random::random_one_dim(&mut rng, 2);
            assert!(spot_check(&f, &a1, &a2, &b));
            assert!(spot_check(&CanonicalEmbedding, &a1, &a2, &b));
        }
    }
}

//! n-cubes (products of nonempty intervals) and finite families of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, FormatError};
use crate::interval::{Interval, Rational};
use crate::kernel::{self, Codec};

/// A product of `dim` nonempty intervals, the k-th factor spanning axis k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cube {
    factors: Vec<Interval>,
}

impl Cube {
    pub fn new(factors: Vec<Interval>) -> Result<Self, FormatError> {
        if factors.is_empty() {
            return Err(FormatError::ZeroDimension);
        }
        Ok(Cube { factors })
    }

    /// `ℝ^dim`
    pub fn full(dim: usize) -> Self {
        assert!(dim >= 1, "cubes have dimension at least 1");
        Cube {
            factors: vec![Interval::full(); dim],
        }
    }

    pub(crate) fn from_factors(factors: Vec<Interval>) -> Self {
        debug_assert!(!factors.is_empty());
        Cube { factors }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Interval] {
        &self.factors
    }

    pub fn factor(&self, axis: usize) -> &Interval {
        &self.factors[axis]
    }

    pub fn into_factors(self) -> Vec<Interval> {
        self.factors
    }

    pub fn intersect(&self, other: &Cube) -> Result<Option<Cube>, AlgebraError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.meet(other))
    }

    /// Componentwise intersection; `None` as soon as one factor is empty.
    pub(crate) fn meet(&self, other: &Cube) -> Option<Cube> {
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()
            .map(Cube::from_factors)
    }

    /// Set inclusion `other ⊆ self`. Both cubes must share a dimension.
    pub fn contains(&self, other: &Cube) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.factors.iter().zip(&other.factors).all(|(a, b)| a.contains(b))
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        p.len() == self.dim() && self.factors.iter().zip(p).all(|(iv, x)| iv.contains_point(x))
    }

    /// The maximal subcubes of the complement: one slab `ℝ×…×J×…×ℝ` per
    /// maximal interval `J` of the complement of each factor.
    pub fn complement(&self) -> CubeFamily {
        CubeFamily {
            dim: self.dim(),
            cubes: self.complement_slabs(),
        }
    }

    pub(crate) fn complement_slabs(&self) -> Vec<Cube> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(2 * dim);
        for (axis, iv) in self.factors.iter().enumerate() {
            for gap in iv.complement() {
                let mut factors = vec![Interval::full(); dim];
                factors[axis] = gap;
                out.push(Cube::from_factors(factors));
            }
        }
        out
    }

    /// A point strictly representative of the cube (midpoints of bounded
    /// factors).
    pub fn representative(&self) -> Vec<Rational> {
        self.factors.iter().map(Interval::representative).collect()
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A finite family of cubes of one dimension. Its point set is the union of
/// its members; no canonical form is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeFamily {
    dim: usize,
    cubes: Vec<Cube>,
}

impl CubeFamily {
    pub fn new(dim: usize, cubes: Vec<Cube>) -> Result<Self, FormatError> {
        if dim == 0 {
            return Err(FormatError::ZeroDimension);
        }
        if let Some(bad) = cubes.iter().find(|c| c.dim() != dim) {
            return Err(FormatError::WrongArity {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(CubeFamily { dim, cubes })
    }

    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "families have dimension at least 1");
        CubeFamily { dim, cubes: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn into_cubes(self) -> Vec<Cube> {
        self.cubes
    }

    /// `self ≼ other`: every member of `self` lies inside some member of
    /// `other`.
    pub fn refines(&self, other: &CubeFamily) -> Result<bool, AlgebraError> {
        check_dims(self.dim, other.dim)?;
        Ok(self.cubes.iter().all(|c| other.cubes.iter().any(|d| d.contains(c))))
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.cubes.iter().any(|c| c.contains_point(p))
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<(), AlgebraError> {
    if left == right {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { left, right })
    }
}

/// Drops duplicates and every cube strictly contained in another member.
/// The result is sorted.
pub(crate) fn maximal(cubes: Vec<Cube>) -> Vec<Cube> {
    let Some(dim) = cubes.first().map(Cube::dim) else {
        return cubes;
    };
    let codec = Codec::new(dim, &cubes);
    let coded = cubes.iter().map(|c| codec.encode(c)).collect();
    codec.decode_all(&kernel::maximal(coded))
}

/// Pairwise intersections of two families, filtered to maximal members.
/// When both inputs contain every maximal subcube of their unions, so does
/// the output for the intersection of the unions.
pub(crate) fn meet_families(a: &[Cube], b: &[Cube]) -> Vec<Cube> {
    let Some(dim) = a.first().map(Cube::dim) else {
        return Vec::new();
    };
    let codec = Codec::new(dim, a.iter().chain(b));
    let ca: Vec<_> = a.iter().map(|c| codec.encode(c)).collect();
    let cb: Vec<_> = b.iter().map(|c| codec.encode(c)).collect();
    codec.decode_all(&kernel::meet_families(&ca, &cb))
}

/// Maximal subcubes of the complement of the union of `cubes`, or with
/// `twice`, of the union itself.
pub(crate) fn complement_of_union(dim: usize, cubes: &[Cube], twice: bool) -> Vec<Cube> {
    let codec = Codec::new(dim, cubes);
    let coded: Vec<_> = cubes.iter().map(|c| codec.encode(c)).collect();
    let mut out = kernel::complement_of_union(dim, &coded);
    if twice {
        out = kernel::complement_of_union(dim, &out);
    }
    codec.decode_all(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{rat, Endpoint};

    fn closed(a: i64, b: i64) -> Interval {
        Interval::closed(rat(a), rat(b)).unwrap()
    }

    fn open(a: i64, b: i64) -> Interval {
        Interval::open(rat(a), rat(b)).unwrap()
    }

    fn cube(f: &[Interval]) -> Cube {
        Cube::new(f.to_vec()).unwrap()
    }

    #[test]
    fn intersect_examples() {
        let a = cube(&[closed(0, 2), closed(0, 2)]);
        let b = cube(&[closed(1, 3), closed(1, 3)]);
        assert_eq!(a.intersect(&b).unwrap(), Some(cube(&[closed(1, 2), closed(1, 2)])));

        let h = cube(&[open(1, 4), open(2, 3)]);
        let v = cube(&[open(2, 3), open(1, 4)]);
        assert_eq!(h.intersect(&v).unwrap(), Some(cube(&[open(2, 3), open(2, 3)])));

        let l = cube(&[closed(0, 1), closed(0, 1)]);
        let r = cube(&[closed(2, 3), closed(0, 1)]);
        assert_eq!(l.intersect(&r).unwrap(), None);

        assert!(matches!(
            l.intersect(&cube(&[closed(0, 1)])),
            Err(AlgebraError::DimensionMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn complement_examples() {
        let unit = cube(&[closed(0, 1), closed(0, 1)]);
        let below = Interval::new(Endpoint::NegInf, Endpoint::open(rat(0))).unwrap();
        let above = Interval::new(Endpoint::open(rat(1)), Endpoint::PosInf).unwrap();
        let full = Interval::full();
        assert_eq!(
            unit.complement().cubes(),
            &[
                cube(&[below.clone(), full.clone()]),
                cube(&[above.clone(), full.clone()]),
                cube(&[full.clone(), below.clone()]),
                cube(&[full.clone(), above.clone()]),
            ]
        );
        let strip = cube(&[full.clone(), closed(0, 1)]);
        assert_eq!(
            strip.complement().cubes(),
            &[cube(&[full.clone(), below]), cube(&[full.clone(), above])]
        );
        assert!(Cube::full(3).complement().is_empty());
    }

    #[test]
    fn refines_examples() {
        let fam = |cs: Vec<Cube>| CubeFamily::new(2, cs).unwrap();
        let small = fam(vec![cube(&[closed(0, 1), closed(0, 1)])]);
        let big = fam(vec![cube(&[closed(0, 2), closed(0, 2)])]);
        let split = fam(vec![
            cube(&[closed(0, 1), closed(0, 1)]),
            cube(&[closed(1, 2), closed(1, 2)]),
        ]);
        assert!(small.refines(&big).unwrap());
        assert!(!big.refines(&split).unwrap());
        assert!(CubeFamily::empty(2).refines(&split).unwrap());
        assert!(CubeFamily::empty(2).refines(&CubeFamily::empty(2)).unwrap());
        assert!(small.refines(&CubeFamily::empty(1)).is_err());
    }

    #[test]
    fn maximal_drops_dominated_and_duplicates() {
        let a = cube(&[closed(0, 2), closed(0, 2)]);
        let b = cube(&[closed(0, 1), closed(0, 1)]);
        let c = cube(&[closed(3, 4), closed(0, 1)]);
        let out = maximal(vec![b, a.clone(), c.clone(), a.clone()]);
        assert_eq!(out, vec![a, c]);
    }

    #[test]
    fn family_rejects_mixed_dimensions() {
        let err = CubeFamily::new(2, vec![cube(&[closed(0, 1)])]).unwrap_err();
        assert_eq!(err, FormatError::WrongArity { expected: 2, found: 1 });
        assert_eq!(CubeFamily::new(0, vec![]).unwrap_err(), FormatError::ZeroDimension);
    }
}

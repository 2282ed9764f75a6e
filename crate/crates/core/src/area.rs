//! Cubical areas of `ℝⁿ` in canonical form.
//!
//! An area is stored as the set of *all* its maximal subcubes, sorted. Two
//! areas denote the same point set iff their cube lists are equal, so
//! equality is structural.
//!
//! Normalization of an arbitrary cover complements it twice. Complementing
//! a union folds the complement slabs of each cube with pairwise
//! intersection; at every step the family still contains every maximal
//! subcube of the set it denotes, and dominated members are dropped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cube::{check_dims, complement_of_union, maximal, meet_families, Cube, CubeFamily};
use crate::error::{AlgebraError, FormatError};
use crate::interval::{Interval, OneDimArea, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AreaRepr", into = "AreaRepr")]
pub struct CubicalArea {
    dim: usize,
    cubes: Vec<Cube>,
}

impl CubicalArea {
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "areas have dimension at least 1");
        CubicalArea { dim, cubes: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_cube(Cube::full(dim))
    }

    pub fn from_cube(cube: Cube) -> Self {
        CubicalArea {
            dim: cube.dim(),
            cubes: vec![cube],
        }
    }

    /// `α(γ(family))`: the maximal subcubes of the union of the family.
    pub fn normalize(family: &CubeFamily) -> Self {
        Self::from_cubes(family.dim(), family.cubes())
    }

    pub(crate) fn from_cubes(dim: usize, cubes: &[Cube]) -> Self {
        if cubes.len() <= 1 {
            return CubicalArea {
                dim,
                cubes: cubes.to_vec(),
            };
        }
        CubicalArea {
            dim,
            cubes: complement_of_union(dim, cubes, true),
        }
    }

    /// Wraps cubes already known to be the maximal subcubes of their union.
    pub(crate) fn from_canonical(dim: usize, mut cubes: Vec<Cube>) -> Self {
        cubes.sort();
        CubicalArea { dim, cubes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The maximal subcubes, in canonical order.
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.cubes.len() == 1 && self.cubes[0].factors().iter().all(Interval::is_full)
    }

    pub fn as_family(&self) -> CubeFamily {
        CubeFamily::new(self.dim, self.cubes.clone()).expect("area invariant")
    }

    pub fn intersect(&self, other: &CubicalArea) -> Result<CubicalArea, AlgebraError> {
        check_dims(self.dim, other.dim)?;
        Ok(CubicalArea {
            dim: self.dim,
            cubes: meet_families(&self.cubes, &other.cubes),
        })
    }

    pub fn complement(&self) -> CubicalArea {
        CubicalArea {
            dim: self.dim,
            cubes: complement_of_union(self.dim, &self.cubes, false),
        }
    }

    pub fn union(&self, other: &CubicalArea) -> Result<CubicalArea, AlgebraError> {
        check_dims(self.dim, other.dim)?;
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let all: Vec<Cube> = self.cubes.iter().chain(&other.cubes).cloned().collect();
        Ok(Self::from_cubes(self.dim, &all))
    }

    /// `self ∖ other`
    pub fn difference(&self, other: &CubicalArea) -> Result<CubicalArea, AlgebraError> {
        self.intersect(&other.complement())
    }

    /// Set equality. Canonical forms make this a list comparison.
    pub fn area_eq(&self, other: &CubicalArea) -> Result<bool, AlgebraError> {
        check_dims(self.dim, other.dim)?;
        Ok(self.cubes == other.cubes)
    }

    /// Set inclusion `other ⊆ self`.
    pub fn includes(&self, other: &CubicalArea) -> Result<bool, AlgebraError> {
        check_dims(self.dim, other.dim)?;
        // every maximal cube of `other` is a subcube of `self`, hence inside
        // one of its maximal cubes
        Ok(other.cubes.iter().all(|c| self.cubes.iter().any(|d| d.contains(c))))
    }

    pub fn contains_point(&self, p: &[Rational]) -> Result<bool, AlgebraError> {
        check_dims(self.dim, p.len())?;
        Ok(self.cubes.iter().any(|c| c.contains_point(p)))
    }

    /// Cartesian product, `self`'s axes first.
    pub fn product(&self, other: &CubicalArea) -> CubicalArea {
        let left: Vec<usize> = (0..self.dim).collect();
        let right: Vec<usize> = (self.dim..self.dim + other.dim).collect();
        Self::product_interleaved(&[(&left, self), (&right, other)]).expect("disjoint axes")
    }

    /// Cartesian product where the k-th axis of each factor is placed at
    /// position `axes[k]` of the result. The axis lists must partition
    /// `0..n` for the total dimension `n`.
    ///
    /// Maximal subcubes of a product are the products of maximal subcubes,
    /// so no normalization pass is needed.
    pub fn product_interleaved(parts: &[(&[usize], &CubicalArea)]) -> Result<CubicalArea, AlgebraError> {
        let dim: usize = parts.iter().map(|(_, a)| a.dim).sum();
        if parts.is_empty() {
            return Err(AlgebraError::BadAxes);
        }
        let mut seen = vec![false; dim];
        for (axes, area) in parts {
            check_dims(axes.len(), area.dim)?;
            for &axis in axes.iter() {
                if axis >= dim {
                    return Err(AlgebraError::AxisOutOfRange { axis, dim });
                }
                if std::mem::replace(&mut seen[axis], true) {
                    return Err(AlgebraError::BadAxes);
                }
            }
        }
        if parts.iter().any(|(_, a)| a.is_empty()) {
            return Ok(CubicalArea::empty(dim));
        }

        let mut partial: Vec<Vec<Option<Interval>>> = vec![vec![None; dim]];
        for (axes, area) in parts {
            let mut next = Vec::with_capacity(partial.len() * area.len());
            for prefix in &partial {
                for cube in &area.cubes {
                    let mut row = prefix.clone();
                    for (k, &axis) in axes.iter().enumerate() {
                        row[axis] = Some(cube.factor(k).clone());
                    }
                    next.push(row);
                }
            }
            partial = next;
        }
        let cubes = partial
            .into_iter()
            .map(|row| Cube::from_factors(row.into_iter().map(|iv| iv.expect("all axes covered")).collect()))
            .collect();
        Ok(Self::from_canonical(dim, cubes))
    }

    /// Projection onto the listed axes, in the listed order. Also serves to
    /// permute coordinates when `axes` is a permutation.
    pub fn project(&self, axes: &[usize]) -> Result<CubicalArea, AlgebraError> {
        if axes.is_empty() {
            return Err(AlgebraError::BadAxes);
        }
        let mut seen = vec![false; self.dim];
        for &axis in axes {
            if axis >= self.dim {
                return Err(AlgebraError::AxisOutOfRange { axis, dim: self.dim });
            }
            if std::mem::replace(&mut seen[axis], true) {
                return Err(AlgebraError::BadAxes);
            }
        }
        let projected: Vec<Cube> = self
            .cubes
            .iter()
            .map(|c| Cube::from_factors(axes.iter().map(|&a| c.factor(a).clone()).collect()))
            .collect();
        if axes.len() == self.dim {
            // a coordinate permutation maps maximal cubes to maximal cubes
            return Ok(Self::from_canonical(self.dim, projected));
        }
        Ok(Self::from_cubes(axes.len(), &maximal(projected)))
    }

    /// Every finite endpoint value used on `axis`, sorted and deduplicated.
    pub fn critical_values(&self, axis: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .cubes
            .iter()
            .flat_map(|c| {
                let iv = c.factor(axis);
                [iv.lo().value().cloned(), iv.hi().value().cloned()]
            })
            .flatten()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("area serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("area serializes")
    }
}

impl From<&OneDimArea> for CubicalArea {
    fn from(area: &OneDimArea) -> Self {
        CubicalArea::from_canonical(
            1,
            area.parts()
                .iter()
                .map(|iv| Cube::from_factors(vec![iv.clone()]))
                .collect(),
        )
    }
}

impl From<Cube> for CubicalArea {
    fn from(cube: Cube) -> Self {
        CubicalArea::from_cube(cube)
    }
}

impl fmt::Display for CubicalArea {
    /// One maximal cube per line; `{}` for the empty area.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cubes.is_empty() {
            return writeln!(f, "{{}}");
        }
        for c in &self.cubes {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Wire form of an area. Cubes are emitted in canonical order; incoming
/// cube lists may be any cover and are normalized.
#[derive(Serialize, Deserialize)]
struct AreaRepr {
    dim: usize,
    cubes: Vec<Vec<Interval>>,
}

impl From<CubicalArea> for AreaRepr {
    fn from(area: CubicalArea) -> Self {
        AreaRepr {
            dim: area.dim,
            cubes: area.cubes.into_iter().map(Cube::into_factors).collect(),
        }
    }
}

impl TryFrom<AreaRepr> for CubicalArea {
    type Error = FormatError;

    fn try_from(repr: AreaRepr) -> Result<Self, Self::Error> {
        let cubes = repr.cubes.into_iter().map(Cube::new).collect::<Result<Vec<_>, _>>()?;
        let family = CubeFamily::new(repr.dim, cubes)?;
        Ok(CubicalArea::normalize(&family))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{rat, ratio, Endpoint};

    fn closed(a: i64, b: i64) -> Interval {
        Interval::closed(rat(a), rat(b)).unwrap()
    }

    fn open(a: i64, b: i64) -> Interval {
        Interval::open(rat(a), rat(b)).unwrap()
    }

    fn cube(f: &[Interval]) -> Cube {
        Cube::new(f.to_vec()).unwrap()
    }

    fn area(dim: usize, cs: &[&[Interval]]) -> CubicalArea {
        CubicalArea::normalize(&CubeFamily::new(dim, cs.iter().map(|f| cube(f)).collect()).unwrap())
    }

    fn swiss_forbidden() -> CubicalArea {
        area(2, &[&[open(1, 4), open(2, 3)], &[open(2, 3), open(1, 4)]])
    }

    #[test]
    fn subdivided_square_normalizes_to_one_cube() {
        let a = area(
            2,
            &[
                &[closed(0, 2), closed(0, 1)],
                &[closed(0, 1), closed(0, 2)],
                &[closed(1, 2), closed(1, 2)],
            ],
        );
        assert_eq!(a.cubes(), &[cube(&[closed(0, 2), closed(0, 2)])]);
    }

    #[test]
    fn single_cube_is_canonical() {
        let a = area(2, &[&[closed(0, 1), closed(0, 1)]]);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn swiss_cross_keeps_both_rectangles() {
        let f = swiss_forbidden();
        assert_eq!(
            f.cubes(),
            &[cube(&[open(1, 4), open(2, 3)]), cube(&[open(2, 3), open(1, 4)])]
        );
    }

    #[test]
    fn complement_laws_on_the_cross() {
        let f = swiss_forbidden();
        assert!(f.intersect(&f.complement()).unwrap().is_empty());
        assert!(f.union(&f.complement()).unwrap().is_full());
        assert_eq!(f.complement().complement(), f);
    }

    #[test]
    fn distributes_over_disjoint_parts() {
        let full = Interval::full();
        let a = area(2, &[&[closed(0, 1), full.clone()], &[closed(2, 3), full.clone()]]);
        let b = area(2, &[&[full.clone(), closed(0, 1)]]);
        let expected = area(2, &[&[closed(0, 1), closed(0, 1)], &[closed(2, 3), closed(0, 1)]]);
        assert_eq!(a.intersect(&b).unwrap(), expected);
        assert_eq!(expected.len(), 2);
    }

    #[test]
    fn point_membership() {
        let f = swiss_forbidden();
        assert!(f.contains_point(&[ratio(5, 2), ratio(5, 2)]).unwrap());
        assert!(!f.contains_point(&[rat(2), rat(2)]).unwrap());
        assert!(CubicalArea::full(3)
            .contains_point(&[rat(-7), rat(0), ratio(1, 3)])
            .unwrap());
        assert!(!CubicalArea::empty(1).contains_point(&[rat(0)]).unwrap());
        assert!(f.contains_point(&[rat(1)]).is_err());
    }

    #[test]
    fn product_examples() {
        let a = area(1, &[&[closed(0, 1)]]);
        let b = area(1, &[&[closed(2, 3)]]);
        assert_eq!(a.product(&b).cubes(), &[cube(&[closed(0, 1), closed(2, 3)])]);

        let two = area(1, &[&[closed(0, 1)], &[closed(2, 3)]]);
        let p = two.product(&a);
        assert_eq!(p.len(), 2);
        assert!(p.intersect(&p.complement()).unwrap().is_empty());

        assert!(CubicalArea::empty(1).product(&a).is_empty());
        assert_eq!(CubicalArea::empty(1).product(&a).dim(), 2);
    }

    #[test]
    fn interleaved_product_places_axes() {
        let a = area(1, &[&[closed(0, 1)]]);
        let b = area(2, &[&[closed(2, 3), closed(4, 5)]]);
        let p = CubicalArea::product_interleaved(&[(&[1], &a), (&[0, 2], &b)]).unwrap();
        assert_eq!(p.cubes(), &[cube(&[closed(2, 3), closed(0, 1), closed(4, 5)])]);
        assert!(CubicalArea::product_interleaved(&[(&[0], &a), (&[0, 2], &b)]).is_err());
        assert!(CubicalArea::product_interleaved(&[(&[1], &a), (&[0, 3], &b)]).is_err());
    }

    #[test]
    fn projection_examples() {
        let r = area(2, &[&[closed(0, 1), closed(2, 3)]]);
        assert_eq!(r.project(&[0]).unwrap().cubes(), &[cube(&[closed(0, 1)])]);
        assert_eq!(swiss_forbidden().project(&[0]).unwrap().cubes(), &[cube(&[open(1, 4)])]);
        let full = CubicalArea::full(2);
        assert_eq!(full.project(&[0, 1]).unwrap(), full);
        assert!(r.project(&[]).is_err());
        assert!(r.project(&[2]).is_err());
        assert!(r.project(&[0, 0]).is_err());
    }

    #[test]
    fn swapping_axes_transposes() {
        let f = swiss_forbidden();
        assert_eq!(f.project(&[1, 0]).unwrap(), f);
        let r = area(2, &[&[closed(0, 1), closed(2, 3)]]);
        assert_eq!(
            r.project(&[1, 0]).unwrap().cubes(),
            &[cube(&[closed(2, 3), closed(0, 1)])]
        );
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let f = swiss_forbidden();
        let text = f.to_json();
        assert!(text.starts_with(r#"{"dim":2,"cubes":[[{"lo":"1","lo_closed":false,"hi":"4""#));
        let back: CubicalArea = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);

        // non-canonical input is normalized on the way in
        let cover = r#"{"dim":1,"cubes":[[{"lo":"0","lo_closed":true,"hi":"1","hi_closed":true}],
                                         [{"lo":"1","lo_closed":true,"hi":"2","hi_closed":false}]]}"#;
        let a: CubicalArea = serde_json::from_str(cover).unwrap();
        assert_eq!(
            a.cubes(),
            &[cube(&[
                Interval::new(Endpoint::closed(rat(0)), Endpoint::open(rat(2))).unwrap()
            ])]
        );

        assert!(serde_json::from_str::<CubicalArea>(r#"{"dim":0,"cubes":[]}"#).is_err());
        let wrong = r#"{"dim":2,"cubes":[[{"lo":"0","lo_closed":true,"hi":"1","hi_closed":true}]]}"#;
        assert!(serde_json::from_str::<CubicalArea>(wrong).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = CubicalArea::full(1);
        let b = CubicalArea::full(2);
        assert!(a.intersect(&b).is_err());
        assert!(a.union(&b).is_err());
        assert!(a.area_eq(&b).is_err());
    }
}

use crate::area::CubicalArea;
use crate::cube::{check_dims, Cube, CubeFamily};
use crate::error::AlgebraError;
use crate::interval::{Endpoint, Interval, Rational};

/// The grid of elementary cells induced by every finite endpoint of an
/// area and of its ambient cube. Each axis is cut into singletons `{v}` at
/// the critical values and open gaps between them; a cell picks one
/// elementary interval per axis. The analyzed area is a union of cells.
///
/// Cells are stored row-major with the last axis varying fastest, so moving
/// forward along any axis increases the flat index.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    criticals: Vec<Vec<Rational>>,
    elementary: Vec<Vec<Interval>>,
    strides: Vec<usize>,
    inside: Vec<bool>,
}

fn elementary_intervals(range: &Interval, criticals: &[Rational]) -> Vec<Interval> {
    let mut out = Vec::with_capacity(2 * criticals.len() + 1);
    if criticals.is_empty() {
        out.push(range.clone());
        return out;
    }
    if *range.lo() == Endpoint::NegInf {
        out.push(Interval::new(Endpoint::NegInf, Endpoint::open(criticals[0].clone())).expect("nonempty"));
    }
    for (i, c) in criticals.iter().enumerate() {
        if range.contains_point(c) {
            out.push(Interval::point(c.clone()));
        }
        if let Some(next) = criticals.get(i + 1) {
            out.push(Interval::open(c.clone(), next.clone()).expect("strictly increasing"));
        }
    }
    if *range.hi() == Endpoint::PosInf {
        let last = criticals.last().expect("nonempty").clone();
        out.push(Interval::new(Endpoint::open(last), Endpoint::PosInf).expect("nonempty"));
    }
    out
}

fn within_closure(range: &Interval, v: &Rational) -> bool {
    let above = range.lo().value().is_none_or(|lo| lo <= v);
    let below = range.hi().value().is_none_or(|hi| v <= hi);
    above && below
}

impl CellDecomposition {
    /// Cuts `ambient` along every critical value and classifies each cell
    /// by testing one representative point against `area`.
    pub fn build(area: &CubicalArea, ambient: &Cube) -> Result<Self, AlgebraError> {
        check_dims(area.dim(), ambient.dim())?;
        let dim = area.dim();
        let mut criticals = Vec::with_capacity(dim);
        let mut elementary = Vec::with_capacity(dim);
        for axis in 0..dim {
            let range = ambient.factor(axis);
            let mut values = area.critical_values(axis);
            values.extend(range.lo().value().cloned());
            values.extend(range.hi().value().cloned());
            values.retain(|v| within_closure(range, v));
            values.sort();
            values.dedup();
            elementary.push(elementary_intervals(range, &values));
            criticals.push(values);
        }
        let mut strides = vec![1; dim];
        for axis in (0..dim.saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * elementary[axis + 1].len();
        }
        let total = strides[0] * elementary[0].len();
        let mut cells = CellDecomposition {
            criticals,
            elementary,
            strides,
            inside: Vec::new(),
        };
        cells.inside = (0..total)
            .map(|i| {
                let p = cells.representative(i);
                area.cubes().iter().any(|c| c.contains_point(&p))
            })
            .collect();
        Ok(cells)
    }

    pub fn dim(&self) -> usize {
        self.elementary.len()
    }

    pub fn criticals(&self, axis: usize) -> &[Rational] {
        &self.criticals[axis]
    }

    pub fn elementary(&self, axis: usize) -> &[Interval] {
        &self.elementary[axis]
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }

    pub fn is_inside(&self, cell: usize) -> bool {
        self.inside[cell]
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, mut cell: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let c = cell / s;
                cell %= s;
                c
            })
            .collect()
    }

    /// The neighbouring cell one elementary interval further along `axis`.
    pub fn successor(&self, cell: usize, axis: usize) -> Option<usize> {
        let c = (cell / self.strides[axis]) % self.elementary[axis].len();
        (c + 1 < self.elementary[axis].len()).then(|| cell + self.strides[axis])
    }

    /// The cell holding the upper corner of the ambient cube.
    pub fn final_cell(&self) -> usize {
        self.len() - 1
    }

    pub fn is_vertex(&self, cell: usize) -> bool {
        self.coords(cell)
            .iter()
            .zip(&self.elementary)
            .all(|(&c, axis)| axis[c].lo() == axis[c].hi())
    }

    pub fn cube(&self, cell: usize) -> Cube {
        Cube::new(
            self.coords(cell)
                .iter()
                .zip(&self.elementary)
                .map(|(&c, axis)| axis[c].clone())
                .collect(),
        )
        .expect("dim >= 1")
    }

    pub fn representative(&self, cell: usize) -> Vec<Rational> {
        self.coords(cell)
            .iter()
            .zip(&self.elementary)
            .map(|(&c, axis)| axis[c].representative())
            .collect()
    }

    /// Canonical form of the union of the selected cells.
    pub fn area_of(&self, selected: &[bool]) -> CubicalArea {
        let cubes = (0..self.len()).filter(|&i| selected[i]).map(|i| self.cube(i)).collect();
        CubicalArea::normalize(&CubeFamily::new(self.dim(), cubes).expect("same dimension"))
    }
}

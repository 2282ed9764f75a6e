use crate::area::CubicalArea;
use crate::cube::Cube;
use crate::error::AlgebraError;
use crate::interval::Rational;

use super::cells::CellDecomposition;

/// Vertex states of `model` other than the final corner from which no
/// forward move along any single axis stays in the model.
pub fn find_deadlocks(model: &CubicalArea, ambient: &Cube) -> Result<Vec<Vec<Rational>>, AlgebraError> {
    let cells = CellDecomposition::build(model, ambient)?;
    Ok(deadlock_cells(&cells)
        .into_iter()
        .map(|i| cells.representative(i))
        .collect())
}

pub(crate) fn deadlock_cells(cells: &CellDecomposition) -> Vec<usize> {
    let last = cells.final_cell();
    (0..cells.len())
        .filter(|&i| cells.is_inside(i) && i != last && cells.is_vertex(i))
        .filter(|&i| {
            (0..cells.dim()).all(|axis| match cells.successor(i, axis) {
                Some(next) => !cells.is_inside(next),
                None => true,
            })
        })
        .collect()
}

/// Marks the cells from which every forward path inevitably ends stuck.
///
/// A cell is doomed when it lies in the model, is not the final cell, and
/// each of its in-model successors is doomed; cells without in-model
/// successors are the base case. Successors have larger flat indices, so a
/// single descending sweep reaches the least fixpoint.
pub(crate) fn doomed_cells(cells: &CellDecomposition) -> Vec<bool> {
    let last = cells.final_cell();
    let mut doomed = vec![false; cells.len()];
    for i in (0..cells.len()).rev() {
        if !cells.is_inside(i) || i == last {
            continue;
        }
        doomed[i] = (0..cells.dim())
            .filter_map(|axis| cells.successor(i, axis))
            .filter(|&next| cells.is_inside(next))
            .all(|next| doomed[next]);
    }
    doomed
}

/// The deadlock attractor of `model`, as a cubical area.
pub fn doomed_region(model: &CubicalArea, ambient: &Cube) -> Result<CubicalArea, AlgebraError> {
    let cells = CellDecomposition::build(model, ambient)?;
    Ok(cells.area_of(&doomed_cells(&cells)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{rat, ratio};
    use crate::pv::{ambient, model, parse};

    fn analyze(src: &str) -> (CubicalArea, Cube) {
        let prog = parse(src).unwrap();
        (model(&prog).unwrap(), ambient(&prog).unwrap())
    }

    #[test]
    fn swiss_flag_deadlock() {
        let (m, amb) = analyze("T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb");
        assert_eq!(find_deadlocks(&m, &amb).unwrap(), vec![vec![rat(2), rat(2)]]);
    }

    #[test]
    fn no_deadlock_without_conflicts() {
        let (m, amb) = analyze("T1 = Pa.Va\nT2 = Pb.Vb");
        assert!(find_deadlocks(&m, &amb).unwrap().is_empty());
        assert!(doomed_region(&m, &amb).unwrap().is_empty());
    }

    #[test]
    fn independent_third_thread_only_blocks_at_its_end() {
        // below z = 3 the third thread can still move, so only the corner
        // where it has finished is stuck
        let (m, amb) = analyze("T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb\nT3 = Pc.Vc");
        let found = find_deadlocks(&m, &amb).unwrap();
        assert_eq!(found, vec![vec![rat(2), rat(2), rat(3)]]);
        let d = doomed_region(&m, &amb).unwrap();
        for k in 0..=3 {
            assert!(d.contains_point(&[rat(2), rat(2), rat(k)]).unwrap());
        }
    }

    #[test]
    fn swiss_flag_attractor_shape() {
        let (m, amb) = analyze("T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb");
        let d = doomed_region(&m, &amb).unwrap();
        assert!(m.includes(&d).unwrap());
        assert!(d.contains_point(&[rat(2), rat(2)]).unwrap());
        assert!(d.contains_point(&[ratio(3, 2), ratio(3, 2)]).unwrap());
        assert!(!d.contains_point(&[rat(1), rat(1)]).unwrap());
        assert!(!d.contains_point(&[rat(5), rat(5)]).unwrap());
    }
}

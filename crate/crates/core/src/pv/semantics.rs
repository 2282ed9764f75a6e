use crate::area::CubicalArea;
use crate::cube::{Cube, CubeFamily};
use crate::interval::{rat, Endpoint, Interval};

use super::{HoldInterval, PvError, PvProgram};

/// Whether the instruction coordinates of a lock span belong to the
/// forbidden rectangle it generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoldBoundary {
    Open,
    Closed,
}

/// Forbidden rectangles are open: the state sitting exactly at a `P` or
/// `V` instruction is consistent.
pub const FORBIDDEN_BOUNDARY: HoldBoundary = HoldBoundary::Open;

fn hold_span(h: &HoldInterval) -> Interval {
    let closed = FORBIDDEN_BOUNDARY == HoldBoundary::Closed;
    Interval::new(
        Endpoint::Finite {
            value: rat(h.p_pos as i64),
            closed,
        },
        Endpoint::Finite {
            value: rat(h.v_pos as i64),
            closed,
        },
    )
    .expect("p_pos < v_pos")
}

/// The bounded state space `∏ [0, Lᵢ + 1]`; instruction k of a thread sits
/// at coordinate k.
pub fn ambient(prog: &PvProgram) -> Result<Cube, PvError> {
    if prog.thread_count() == 0 {
        return Err(PvError::NoProcesses);
    }
    let factors = prog
        .threads()
        .iter()
        .map(|p| Interval::closed(rat(0), rat(p.body.len() as i64 + 1)).expect("nonempty"))
        .collect();
    Ok(Cube::new(factors).expect("at least one thread"))
}

/// One cube per pair of threads holding the same mutex at the same time:
/// the two lock spans on their axes, the ambient range elsewhere. Not
/// normalized.
pub fn forbidden_cubes(prog: &PvProgram) -> Result<CubeFamily, PvError> {
    let space = ambient(prog)?;
    let holds = prog.validate()?;
    let mut cubes = Vec::new();
    for (k, first) in holds.iter().enumerate() {
        for second in &holds[k + 1..] {
            if first.thread == second.thread || first.resource != second.resource {
                continue;
            }
            let mut factors = space.factors().to_vec();
            factors[first.thread] = hold_span(first);
            factors[second.thread] = hold_span(second);
            cubes.push(Cube::new(factors).expect("nonempty"));
        }
    }
    Ok(CubeFamily::new(space.dim(), cubes).expect("same dimension"))
}

/// The inconsistent states, in canonical form.
pub fn forbidden_region(prog: &PvProgram) -> Result<CubicalArea, PvError> {
    Ok(CubicalArea::normalize(&forbidden_cubes(prog)?))
}

/// The consistent states: the ambient cube minus the forbidden region.
pub fn model(prog: &PvProgram) -> Result<CubicalArea, PvError> {
    let space = CubicalArea::from_cube(ambient(prog)?);
    let forbidden = forbidden_region(prog)?;
    Ok(space.intersect(&forbidden.complement()).expect("same dimension"))
}

/// Connected components of the thread/mutex sharing graph, each listed by
/// increasing thread index; groups ordered by their smallest member.
pub fn resource_groups(prog: &PvProgram) -> Result<Vec<Vec<usize>>, PvError> {
    let holds = prog.validate()?;
    let n = prog.thread_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, a) in holds.iter().enumerate() {
        for b in &holds[k + 1..] {
            if a.resource == b.resource {
                let (ra, rb) = (root(&mut parent, a.thread), root(&mut parent, b.thread));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for t in 0..n {
        let r = root(&mut parent, t);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(t);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::ratio;
    use crate::pv::parse;

    fn open(a: i64, b: i64) -> Interval {
        Interval::open(rat(a), rat(b)).unwrap()
    }

    const SWISS: &str = "T1 = Pa.Pb.Vb.Va\nT2 = Pb.Pa.Va.Vb\n";

    #[test]
    fn swiss_flag_forbidden_region() {
        let prog = parse(SWISS).unwrap();
        let f = forbidden_region(&prog).unwrap();
        assert_eq!(
            f.cubes(),
            &[
                Cube::new(vec![open(1, 4), open(2, 3)]).unwrap(),
                Cube::new(vec![open(2, 3), open(1, 4)]).unwrap(),
            ]
        );
        let amb = ambient(&prog).unwrap();
        assert_eq!(
            amb.factors(),
            vec![Interval::closed(rat(0), rat(5)).unwrap(); 2].as_slice()
        );
    }

    #[test]
    fn swiss_flag_model() {
        let prog = parse(SWISS).unwrap();
        let m = model(&prog).unwrap();
        assert!(m.contains_point(&[rat(0), rat(0)]).unwrap());
        assert!(m.contains_point(&[rat(5), rat(5)]).unwrap());
        assert!(m.contains_point(&[rat(2), rat(2)]).unwrap());
        assert!(!m.contains_point(&[ratio(5, 2), ratio(5, 2)]).unwrap());
        let f = forbidden_region(&prog).unwrap();
        let amb = CubicalArea::from_cube(ambient(&prog).unwrap());
        assert!(m.intersect(&f).unwrap().is_empty());
        assert_eq!(m.union(&f).unwrap(), amb);
    }

    #[test]
    fn no_conflicts_without_shared_mutexes() {
        let single = parse("T = Pa.Pb.Vb.Va").unwrap();
        assert!(forbidden_region(&single).unwrap().is_empty());
        let disjoint = parse("T1 = Pa.Va\nT2 = Pb.Vb").unwrap();
        assert!(forbidden_region(&disjoint).unwrap().is_empty());
        let m = model(&disjoint).unwrap();
        assert_eq!(m, CubicalArea::from_cube(ambient(&disjoint).unwrap()));
    }

    #[test]
    fn resource_group_examples() {
        let prog = parse(SWISS).unwrap();
        assert_eq!(resource_groups(&prog).unwrap(), vec![vec![0, 1]]);
        let prog = parse("T1 = Pa.Va\nT2 = Pb.Vb").unwrap();
        assert_eq!(resource_groups(&prog).unwrap(), vec![vec![0], vec![1]]);
        let prog = parse("T1 = Pa.Va\nT2 = Pa.Va.Pb.Vb\nT3 = Pb.Vb").unwrap();
        assert_eq!(resource_groups(&prog).unwrap(), vec![vec![0, 1, 2]]);
        let prog = parse("T1 = Pa.Va\nT2 = Pb.Vb\nT3 = Pa.Va").unwrap();
        assert_eq!(resource_groups(&prog).unwrap(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn empty_program_has_no_ambient() {
        let prog = parse("").unwrap();
        assert_eq!(ambient(&prog).unwrap_err(), PvError::NoProcesses);
        assert_eq!(forbidden_region(&prog).unwrap_err(), PvError::NoProcesses);
    }

    #[test]
    fn same_process_twice_conflicts_with_itself() {
        let prog = parse("T = Pa.Va\nmain = T | T").unwrap();
        let f = forbidden_region(&prog).unwrap();
        assert_eq!(f.cubes(), &[Cube::new(vec![open(1, 2), open(1, 2)]).unwrap()]);
    }
}

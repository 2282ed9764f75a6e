mod common;

use cubicalc::analysis::{factorize, find_deadlocks, AnalysisReport, GridOracle};
use cubicalc::area::CubicalArea;
use cubicalc::cube::Cube;
use cubicalc::interval::{rat, Endpoint, Interval, OneDimArea};
use cubicalc::pv::{ambient, forbidden_region, model, resource_groups};

use common::{corpus, program, q};

/// Every interval with integer bounds in `0..=n`, open or closed at each end.
fn integer_intervals(n: i64) -> Vec<Interval> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in a..=n {
            for (ca, cb) in [(true, true), (true, false), (false, true), (false, false)] {
                let lo = Endpoint::Finite {
                    value: rat(a),
                    closed: ca,
                };
                let hi = Endpoint::Finite {
                    value: rat(b),
                    closed: cb,
                };
                if let Some(iv) = Interval::new(lo, hi) {
                    out.push(iv);
                }
            }
        }
    }
    out
}

/// Maximal boxes inside a set of the plane given by its quarter-point
/// membership, among boxes with integer bounds in `[0, n]`. Exact for sets
/// made of integer grid cells.
fn brute_force_maximal(n: i64, member: impl Fn(i64, i64) -> bool) -> Vec<Cube> {
    let ivs = integer_intervals(n);
    let quarters = |iv: &Interval| -> Vec<i64> { (0..=4 * n).filter(|&k| iv.contains_point(&q(k, 4))).collect() };
    let mut inside = Vec::new();
    for x in &ivs {
        let xs = quarters(x);
        for y in &ivs {
            let ys = quarters(y);
            if xs.iter().all(|&i| ys.iter().all(|&j| member(i, j))) {
                inside.push(Cube::new(vec![x.clone(), y.clone()]).unwrap());
            }
        }
    }
    let mut maximal: Vec<Cube> = inside
        .iter()
        .filter(|c| !inside.iter().any(|d| d != *c && d.contains(c)))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

#[test]
fn swiss_flag_model_has_eight_maximal_cubes() {
    let prog = program("swiss_flag");
    let grid = GridOracle::new(&prog, &q(1, 4)).unwrap();
    let expected = brute_force_maximal(5, |i, j| grid.is_member(&[q(i, 4), q(j, 4)]).unwrap());
    let m = model(&prog).unwrap();
    assert_eq!(expected.len(), 8);
    assert_eq!(m.cubes(), expected.as_slice());
}

#[test]
fn swiss_flag_forbidden_region_by_brute_force() {
    let prog = program("swiss_flag");
    let grid = GridOracle::new(&prog, &q(1, 4)).unwrap();
    let expected = brute_force_maximal(5, |i, j| !grid.is_member(&[q(i, 4), q(j, 4)]).unwrap());
    assert_eq!(forbidden_region(&prog).unwrap().cubes(), expected.as_slice());
}

#[test]
fn swiss_flag_point_checks() {
    let prog = program("swiss_flag");
    let m = model(&prog).unwrap();
    assert!(m.contains_point(&[rat(2), rat(2)]).unwrap());
    assert!(!m.contains_point(&[q(5, 2), q(5, 2)]).unwrap());
    assert!(m.contains_point(&[rat(0), rat(0)]).unwrap());
    assert!(m.contains_point(&[rat(5), rat(5)]).unwrap());
    let shadow = forbidden_region(&prog).unwrap().project(&[1]).unwrap();
    let expected = OneDimArea::from(Interval::open(rat(1), rat(4)).unwrap());
    assert_eq!(shadow, CubicalArea::from(&expected));
    assert_eq!(resource_groups(&prog).unwrap(), vec![vec![0, 1]]);
}

#[test]
fn deadlocks_across_the_corpus() {
    for (name, prog) in corpus() {
        let deadlocks = find_deadlocks(&model(&prog).unwrap(), &ambient(&prog).unwrap()).unwrap();
        let grid = GridOracle::new(&prog, &q(1, 2)).unwrap();
        assert_eq!(deadlocks, grid.deadlocks(), "{name}");
    }
    let expect = |name: &str, points: Vec<Vec<i64>>| {
        let prog = program(name);
        let found = find_deadlocks(&model(&prog).unwrap(), &ambient(&prog).unwrap()).unwrap();
        let points: Vec<Vec<_>> = points.into_iter().map(|p| p.into_iter().map(rat).collect()).collect();
        assert_eq!(found, points, "{name}");
    };
    expect("independent_pair", vec![]);
    expect("mutual_lock", vec![]);
    expect("philosophers", vec![vec![2, 2, 2, 3]]);
    expect(
        "two_swiss_flags",
        vec![vec![2, 2, 2, 2], vec![2, 2, 5, 5], vec![5, 5, 2, 2]],
    );
}

#[test]
fn factorization_matches_resource_groups() {
    for (name, prog) in corpus() {
        let blocks: Vec<Vec<usize>> = factorize(&model(&prog).unwrap()).into_iter().map(|f| f.axes).collect();
        let groups = resource_groups(&prog).unwrap();
        // every group here is tangled enough not to split further
        assert_eq!(blocks, groups, "{name}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |k| {
                let mut q = p.clone();
                q.insert(k, n - 1);
                q
            })
        })
        .collect()
}

#[test]
fn finest_factorization_does_not_depend_on_axis_order() {
    for (name, prog) in corpus() {
        let m = model(&prog).unwrap();
        let base: Vec<Vec<usize>> = factorize(&m).into_iter().map(|f| f.axes).collect();
        for perm in permutations(m.dim()).into_iter().take(24) {
            // axis k of the permuted area is axis perm[k] of the original
            let permuted = m.project(&perm).unwrap();
            let mut blocks: Vec<Vec<usize>> = factorize(&permuted)
                .into_iter()
                .map(|f| {
                    let mut b: Vec<usize> = f.axes.iter().map(|&k| perm[k]).collect();
                    b.sort();
                    b
                })
                .collect();
            blocks.sort();
            assert_eq!(blocks, base, "{name} under {perm:?}");
        }
    }
}

#[test]
fn reports_round_trip_through_json() {
    for (name, prog) in corpus() {
        let report = AnalysisReport::new(&model(&prog).unwrap(), &ambient(&prog).unwrap()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let doomed: CubicalArea = serde_json::from_value(json["doomed"].clone()).unwrap();
        assert_eq!(doomed, report.doomed, "{name}");
        assert_eq!(json["deadlocks"].as_array().unwrap().len(), report.deadlocks.len());
    }
}

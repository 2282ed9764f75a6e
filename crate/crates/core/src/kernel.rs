//! Family operations on integer-coded cubes.
//!
//! The operations only ever compare bounds, so each axis's finite values are
//! replaced by their rank among the values occurring in the input. A bound is
//! coded as `2·rank + bit`, the bit chosen so that plain integer order is the
//! set-theoretic bound order: a lower bound `[v` codes below `(v`, an upper
//! bound `v)` below `v]`. A factor is then nonempty iff `lo < hi`, and the
//! complement of a lower bound is the upper bound with the same code.

use std::cmp::Ordering;

use crate::cube::Cube;
use crate::interval::{Endpoint, Interval, Rational};

const NEG: i64 = i64::MIN;
const POS: i64 = i64::MAX;

/// `[lo₀, hi₀, lo₁, hi₁, …]`
type Coded = Vec<i64>;

pub(crate) struct Codec {
    values: Vec<Vec<Rational>>,
}

impl Codec {
    pub(crate) fn new<'a>(dim: usize, cubes: impl IntoIterator<Item = &'a Cube>) -> Self {
        let mut values = vec![Vec::new(); dim];
        for c in cubes {
            for (axis, iv) in c.factors().iter().enumerate() {
                values[axis].extend(iv.lo().value().cloned());
                values[axis].extend(iv.hi().value().cloned());
            }
        }
        for v in &mut values {
            v.sort();
            v.dedup();
        }
        Codec { values }
    }

    fn rank(&self, axis: usize, v: &Rational) -> i64 {
        2 * self.values[axis].binary_search(v).expect("value registered") as i64
    }

    pub(crate) fn encode(&self, cube: &Cube) -> Coded {
        let mut out = Vec::with_capacity(2 * cube.dim());
        for (axis, iv) in cube.factors().iter().enumerate() {
            out.push(match iv.lo() {
                Endpoint::Finite { value, closed } => self.rank(axis, value) + i64::from(!closed),
                _ => NEG,
            });
            out.push(match iv.hi() {
                Endpoint::Finite { value, closed } => self.rank(axis, value) + i64::from(*closed),
                _ => POS,
            });
        }
        out
    }

    pub(crate) fn decode(&self, coded: &[i64]) -> Cube {
        let factors = coded
            .chunks_exact(2)
            .enumerate()
            .map(|(axis, b)| {
                let value = |c: i64| self.values[axis][(c / 2) as usize].clone();
                let lo = match b[0] {
                    NEG => Endpoint::NegInf,
                    c => Endpoint::Finite {
                        value: value(c),
                        closed: c % 2 == 0,
                    },
                };
                let hi = match b[1] {
                    POS => Endpoint::PosInf,
                    c => Endpoint::Finite {
                        value: value(c),
                        closed: c % 2 == 1,
                    },
                };
                Interval::new(lo, hi).expect("coded factors are nonempty")
            })
            .collect();
        Cube::from_factors(factors)
    }

    /// Decodes and sorts into canonical order.
    pub(crate) fn decode_all(&self, coded: &[Coded]) -> Vec<Cube> {
        let mut out: Vec<Cube> = coded.iter().map(|c| self.decode(c)).collect();
        out.sort();
        out
    }
}

fn meet(x: &[i64], y: &[i64]) -> Option<Coded> {
    let mut out = Vec::with_capacity(x.len());
    for (a, b) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        let lo = a[0].max(b[0]);
        let hi = a[1].min(b[1]);
        if lo >= hi {
            return None;
        }
        out.push(lo);
        out.push(hi);
    }
    Some(out)
}

fn disjoint(x: &[i64], y: &[i64]) -> bool {
    x.chunks_exact(2)
        .zip(y.chunks_exact(2))
        .any(|(a, b)| a[0].max(b[0]) >= a[1].min(b[1]))
}

/// `y ⊆ x`
fn contains(x: &[i64], y: &[i64]) -> bool {
    x.chunks_exact(2)
        .zip(y.chunks_exact(2))
        .all(|(a, b)| a[0] <= b[0] && b[1] <= a[1])
}

/// Lower bounds ascending, upper bounds descending, axis by axis. A cube
/// strictly containing another sorts before it.
fn containment_order(x: &Coded, y: &Coded) -> Ordering {
    for (k, (a, b)) in x.iter().zip(y).enumerate() {
        let o = if k % 2 == 0 { a.cmp(b) } else { b.cmp(a) };
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Appends the members of `cubes` not contained in a member of `kept` or in
/// another member of `cubes`.
fn keep_maximal(kept: &mut Vec<Coded>, mut cubes: Vec<Coded>) {
    cubes.sort_unstable_by(containment_order);
    cubes.dedup();
    for c in cubes {
        // anything containing `c` was either kept already or is inside
        // something kept
        if !kept.iter().any(|d| contains(d, &c)) {
            kept.push(c);
        }
    }
}

pub(crate) fn maximal(cubes: Vec<Coded>) -> Vec<Coded> {
    let mut kept = Vec::new();
    keep_maximal(&mut kept, cubes);
    kept
}

pub(crate) fn meet_families(a: &[Coded], b: &[Coded]) -> Vec<Coded> {
    let out = a
        .iter()
        .flat_map(|x| b.iter().filter_map(move |y| meet(x, y)))
        .collect();
    maximal(out)
}

fn complement_slabs(c: &[i64]) -> Vec<Coded> {
    let dim = c.len() / 2;
    let mut out = Vec::with_capacity(c.len());
    for axis in 0..dim {
        let (lo, hi) = (c[2 * axis], c[2 * axis + 1]);
        let mut slab = |l: i64, h: i64| {
            let mut s = full(dim);
            s[2 * axis] = l;
            s[2 * axis + 1] = h;
            out.push(s);
        };
        if lo != NEG {
            slab(NEG, lo);
        }
        if hi != POS {
            slab(hi, POS);
        }
    }
    out
}

fn full(dim: usize) -> Coded {
    (0..dim).flat_map(|_| [NEG, POS]).collect()
}

/// Maximal subcubes of the complement of the union of `cubes`.
pub(crate) fn complement_of_union(dim: usize, cubes: &[Coded]) -> Vec<Coded> {
    let mut acc = vec![full(dim)];
    for c in cubes {
        // Members missing `c` survive unchanged. They stay maximal, since a
        // piece containing one would put it inside another member, so only
        // the pieces cut from the rest need filtering.
        let (mut next, hit): (Vec<Coded>, Vec<Coded>) = acc.into_iter().partition(|x| disjoint(x, c));
        let slabs = complement_slabs(c);
        let pieces: Vec<Coded> = hit
            .iter()
            .flat_map(|x| slabs.iter().filter_map(move |s| meet(x, s)))
            .collect();
        keep_maximal(&mut next, pieces);
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

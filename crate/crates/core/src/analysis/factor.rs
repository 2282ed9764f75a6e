use rayon::prelude::*;
use serde::Serialize;

use crate::area::CubicalArea;

/// Largest block searched exhaustively (2^(n-1) - 1 bipartitions).
pub const EXHAUSTIVE_BLOCK_LIMIT: usize = 12;

/// A block of axes together with the projection of the area onto them,
/// in increasing axis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub axes: Vec<usize>,
    pub factor: CubicalArea,
}

/// Splits an area into the finest product of projections onto disjoint
/// axis blocks. Blocks are listed by their smallest axis.
pub fn factorize(area: &CubicalArea) -> Vec<Factor> {
    let mut out = Vec::new();
    split(area.clone(), (0..area.dim()).collect(), &mut out);
    out.sort_by(|a, b| a.axes.cmp(&b.axes));
    out
}

/// Whether `area` equals the product of its projections onto the local
/// axes `left` and `right` (which partition `0..area.dim()`).
pub fn splits_as_product(area: &CubicalArea, left: &[usize], right: &[usize]) -> bool {
    let a = area.project(left).expect("valid axes");
    let b = area.project(right).expect("valid axes");
    let rebuilt = CubicalArea::product_interleaved(&[(left, &a), (right, &b)]).expect("partition");
    rebuilt == *area
}

fn local_halves(n: usize, mask: u64) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|&k| mask & (1 << k) != 0)
}

/// Finds a bipartition of the local axes passing the product test, if any.
fn find_split(area: &CubicalArea) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = area.dim();
    if n < 2 {
        return None;
    }
    if n <= EXHAUSTIVE_BLOCK_LIMIT {
        // masks always contain axis 0, so each bipartition is tried once
        let full = (1u64 << n) - 1;
        return (0..1u64 << (n - 1))
            .into_par_iter()
            .map(|m| (m << 1) | 1)
            .filter(|&mask| mask != full)
            .find_first(|&mask| {
                let (l, r) = local_halves(n, mask);
                splits_as_product(area, &l, &r)
            })
            .map(|mask| local_halves(n, mask));
    }
    // too large to enumerate: peel off single axes only
    (0..n).find_map(|k| {
        let rest: Vec<usize> = (0..n).filter(|&j| j != k).collect();
        splits_as_product(area, &[k], &rest).then(|| (vec![k], rest))
    })
}

fn split(area: CubicalArea, axes: Vec<usize>, out: &mut Vec<Factor>) {
    match find_split(&area) {
        None => out.push(Factor { axes, factor: area }),
        Some((left, right)) => {
            for half in [left, right] {
                let sub = area.project(&half).expect("valid axes");
                let global = half.iter().map(|&k| axes[k]).collect();
                split(sub, global, out);
            }
        }
    }
}

/// Reassembles factors into the area over all their axes.
pub fn recompose(factors: &[Factor]) -> CubicalArea {
    let parts: Vec<(&[usize], &CubicalArea)> = factors.iter().map(|f| (f.axes.as_slice(), &f.factor)).collect();
    CubicalArea::product_interleaved(&parts).expect("factors partition the axes")
}

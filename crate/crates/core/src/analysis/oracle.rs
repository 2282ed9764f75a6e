//! Brute-force reference semantics on a regular lattice, for checking the
//! cubical analyses. Works directly from the lock spans of a program with
//! integer arithmetic; nothing here goes through the area algebra.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::interval::Rational;
use crate::pv::{HoldBoundary, HoldInterval, PvProgram, FORBIDDEN_BOUNDARY};

use super::OracleError;

/// Membership, deadlock and doomed flags for every lattice point
/// `k · step` of the ambient box of a program.
#[derive(Clone, Debug)]
pub struct GridOracle {
    scale: i64,
    extents: Vec<usize>,
    strides: Vec<usize>,
    member: Vec<bool>,
    deadlock: Vec<bool>,
    doomed: Vec<bool>,
}

impl GridOracle {
    /// `step` must be `1/m` for a positive integer `m`.
    pub fn new(prog: &PvProgram, step: &Rational) -> Result<Self, OracleError> {
        if !step.numer().is_one() || step.denom() <= &BigInt::from(0) {
            return Err(OracleError::BadStep(step.to_string()));
        }
        let scale = step
            .denom()
            .to_i64()
            .ok_or_else(|| OracleError::BadStep(step.to_string()))?;
        if prog.thread_count() == 0 {
            return Err(OracleError::Program(crate::pv::PvError::NoProcesses));
        }
        let holds = prog.validate().map_err(|e| OracleError::Program(e.into()))?;
        let extents: Vec<usize> = prog
            .threads()
            .iter()
            .map(|p| (p.body.len() + 1) * scale as usize + 1)
            .collect();
        let dim = extents.len();
        let mut strides = vec![1usize; dim];
        for axis in (0..dim - 1).rev() {
            strides[axis] = strides[axis + 1] * extents[axis + 1];
        }
        let total = strides[0] * extents[0];

        let conflicts: Vec<(&HoldInterval, &HoldInterval)> = holds
            .iter()
            .enumerate()
            .flat_map(|(k, a)| holds[k + 1..].iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.thread != b.thread && a.resource == b.resource)
            .collect();
        let inside_span = |h: &HoldInterval, k: i64| {
            let (lo, hi) = (h.p_pos as i64 * scale, h.v_pos as i64 * scale);
            match FORBIDDEN_BOUNDARY {
                HoldBoundary::Open => lo < k && k < hi,
                HoldBoundary::Closed => lo <= k && k <= hi,
            }
        };

        let mut oracle = GridOracle {
            scale,
            extents,
            strides,
            member: vec![false; total],
            deadlock: vec![false; total],
            doomed: vec![false; total],
        };
        for i in 0..total {
            let ks = oracle.lattice_coords(i);
            oracle.member[i] = !conflicts
                .iter()
                .any(|(a, b)| inside_span(a, ks[a.thread]) && inside_span(b, ks[b.thread]));
        }

        let last = total - 1;
        for i in (0..total).rev() {
            if !oracle.member[i] || i == last {
                continue;
            }
            let ks = oracle.lattice_coords(i);
            let next: Vec<usize> = (0..dim)
                .filter(|&axis| (ks[axis] as usize) + 1 < oracle.extents[axis])
                .map(|axis| i + oracle.strides[axis])
                .filter(|&j| oracle.member[j])
                .collect();
            oracle.deadlock[i] = next.is_empty();
            oracle.doomed[i] = next.iter().all(|&j| oracle.doomed[j]);
        }
        Ok(oracle)
    }

    fn lattice_coords(&self, mut i: usize) -> Vec<i64> {
        self.strides
            .iter()
            .map(|s| {
                let k = i / s;
                i %= s;
                k as i64
            })
            .collect()
    }

    fn point(&self, i: usize) -> Vec<Rational> {
        self.lattice_coords(i)
            .into_iter()
            .map(|k| Rational::new(BigInt::from(k), BigInt::from(self.scale)))
            .collect()
    }

    fn locate(&self, p: &[Rational]) -> Option<usize> {
        if p.len() != self.extents.len() {
            return None;
        }
        let mut index = 0;
        for ((x, extent), stride) in p.iter().zip(&self.extents).zip(&self.strides) {
            let scaled = x * Rational::from_integer(BigInt::from(self.scale));
            if !scaled.is_integer() {
                return None;
            }
            let k = scaled.to_integer().to_i64()?;
            if k < 0 || k as usize >= *extent {
                return None;
            }
            index += k as usize * stride;
        }
        Some(index)
    }

    pub fn len(&self) -> usize {
        self.member.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member.is_empty()
    }

    /// Every lattice point, in row-major order.
    pub fn points(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// `None` when `p` is not a lattice point of the ambient box.
    pub fn is_member(&self, p: &[Rational]) -> Option<bool> {
        self.locate(p).map(|i| self.member[i])
    }

    pub fn is_deadlock(&self, p: &[Rational]) -> Option<bool> {
        self.locate(p).map(|i| self.deadlock[i])
    }

    pub fn is_doomed(&self, p: &[Rational]) -> Option<bool> {
        self.locate(p).map(|i| self.doomed[i])
    }

    pub fn deadlocks(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .filter(|&i| self.deadlock[i])
            .map(|i| self.point(i))
            .collect()
    }

    pub fn doomed_points(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .filter(|&i| self.doomed[i])
            .map(|i| self.point(i))
            .collect()
    }
}

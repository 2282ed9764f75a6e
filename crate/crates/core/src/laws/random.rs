//! Seeded generators for areas, intervals and PV programs. The same seed
//! always yields the same value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::area::CubicalArea;
use crate::cube::{Cube, CubeFamily};
use crate::interval::{ratio, Endpoint, Interval, OneDimArea};
use crate::pv::{Action, Process, PvProgram};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer, used to derive independent per-trial seeds.
pub fn mix_seed(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// An interval with endpoints among the halves `0, 1/2, …, 8`, random
/// closedness, and an occasional infinite side.
pub fn random_interval<R: Rng>(rng: &mut R) -> Interval {
    let mut k1: i64 = rng.random_range(0..=16);
    let mut k2: i64 = rng.random_range(0..=16);
    if k1 > k2 {
        std::mem::swap(&mut k1, &mut k2);
    }
    let lo = if rng.random_ratio(1, 8) {
        Endpoint::NegInf
    } else {
        Endpoint::Finite {
            value: ratio(k1, 2),
            closed: rng.random_bool(0.5),
        }
    };
    let hi = if rng.random_ratio(1, 8) {
        Endpoint::PosInf
    } else {
        Endpoint::Finite {
            value: ratio(k2, 2),
            closed: rng.random_bool(0.5),
        }
    };
    let lo = match lo {
        // a degenerate pair becomes a point
        Endpoint::Finite { value, .. } if k1 == k2 && hi.is_finite() => Endpoint::closed(value),
        other => other,
    };
    let hi = match hi {
        Endpoint::Finite { value, .. } if k1 == k2 && lo.is_finite() => Endpoint::closed(value),
        other => other,
    };
    Interval::new(lo, hi).expect("constructed nonempty")
}

pub fn random_cube<R: Rng>(rng: &mut R, dim: usize) -> Cube {
    Cube::new((0..dim).map(|_| random_interval(rng)).collect()).expect("dim >= 1")
}

/// `complexity` random cubes, normalized.
pub fn random_area_with<R: Rng>(rng: &mut R, dim: usize, complexity: usize) -> CubicalArea {
    let cubes = (0..complexity).map(|_| random_cube(rng, dim)).collect();
    CubicalArea::normalize(&CubeFamily::new(dim, cubes).expect("dim >= 1"))
}

pub fn random_area(seed: u64, dim: usize, complexity: usize) -> CubicalArea {
    random_area_with(&mut rng_from_seed(seed), dim, complexity)
}

pub fn random_one_dim<R: Rng>(rng: &mut R, parts: usize) -> OneDimArea {
    OneDimArea::normalize((0..parts).map(|_| random_interval(rng)))
}

/// A well-bracketed program of `threads` processes with at most `max_len`
/// actions each, over mutexes `a`, `b`, … (`mutexes` of them).
pub fn random_program(seed: u64, threads: usize, max_len: usize, mutexes: usize) -> PvProgram {
    assert!(max_len >= 2 && mutexes >= 1);
    let mut rng = rng_from_seed(seed);
    let names: Vec<String> = (0..mutexes).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
    let processes = (0..threads)
        .map(|t| {
            let pairs = rng.random_range(1..=max_len / 2);
            let mut body = Vec::with_capacity(2 * pairs);
            let mut held: Vec<&String> = Vec::new();
            let mut locks_left = pairs;
            while locks_left > 0 || !held.is_empty() {
                let free: Vec<&String> = names.iter().filter(|n| !held.contains(n)).collect();
                let can_lock = locks_left > 0 && !free.is_empty();
                if can_lock && (held.is_empty() || rng.random_bool(0.5)) {
                    let r = free[rng.random_range(0..free.len())];
                    body.push(Action::lock(r));
                    held.push(r);
                    locks_left -= 1;
                } else {
                    let r = held.remove(rng.random_range(0..held.len()));
                    body.push(Action::unlock(r));
                }
            }
            Process {
                name: format!("T{}", t + 1),
                body,
            }
        })
        .collect();
    PvProgram::from_processes(processes).expect("generated names are unique")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_complexity_is_empty() {
        for seed in 0..5 {
            assert!(random_area(seed, 1, 0).is_empty());
        }
    }

    #[test]
    fn same_seed_same_area() {
        for seed in 0..20 {
            assert_eq!(random_area(seed, 2, 3), random_area(seed, 2, 3));
        }
    }

    #[test]
    fn random_areas_preserve_their_cover() {
        // sampling oracle: the canonical form denotes the raw union
        for seed in 0..50 {
            let mut rng = rng_from_seed(seed);
            let cubes: Vec<Cube> = (0..3).map(|_| random_cube(&mut rng, 2)).collect();
            let family = CubeFamily::new(2, cubes).unwrap();
            let area = CubicalArea::normalize(&family);
            for i in -2..=34 {
                for j in -2..=34 {
                    let p = [ratio(i, 4), ratio(j, 4)];
                    assert_eq!(family.contains_point(&p), area.contains_point(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn random_programs_validate() {
        for seed in 0..100 {
            let prog = random_program(seed, 2, 6, 2);
            prog.validate().unwrap();
            assert!(prog.threads().iter().all(|p| p.body.len() <= 6 && p.body.len() >= 2));
        }
    }
}

//! The seeded law suite. Every trial draws from its own generator, derived
//! from the suite seed, the law and the trial index, so results do not depend
//! on scheduling.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::area::CubicalArea;
use crate::cube::CubeFamily;
use crate::interval::{Interval, OneDimArea};

use super::bimorphism::{
    check_cover_invariance, extend_bimorphism, random_refinement, spot_check, Bimorphism, CanonicalEmbedding,
    PowersetBimorphism,
};
use super::random::{mix_seed, random_area_with, random_interval, random_one_dim, rng_from_seed};
use super::{boolean_law_failures, check_generator_complement_n, check_generator_meet_n};

pub const LAW_NAMES: [&str; 5] = [
    "boolean_laws",
    "generator_meet",
    "generator_complement",
    "cover_invariance",
    "universal_property",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("iterations must be at least 1")]
    NoIterations,
    #[error("dimension must be 1, 2 or 3, got {0}")]
    BadDimension(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawSuite {
    seed: u64,
    iters: usize,
    dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
    /// The inputs after greedy shrinking; one-dimensional arguments appear
    /// as areas of dimension 1.
    pub counterexample: Vec<CubicalArea>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub iters: usize,
    pub dim: usize,
    pub laws: Vec<LawResult>,
}

/// The inputs of one trial, regenerated from its seed.
enum Trial {
    Boolean(Vec<CubicalArea>),
    Meet(Vec<OneDimArea>, Vec<OneDimArea>),
    Complement(Vec<Interval>),
    Cover {
        area: CubicalArea,
        rng: ChaCha8Rng,
    },
    Universal {
        a: OneDimArea,
        b: OneDimArea,
        rng: ChaCha8Rng,
    },
}

impl LawSuite {
    pub fn new(seed: u64, iters: usize, dim: usize) -> Result<Self, SuiteError> {
        if iters == 0 {
            return Err(SuiteError::NoIterations);
        }
        if !(1..=3).contains(&dim) {
            return Err(SuiteError::BadDimension(dim));
        }
        Ok(LawSuite { seed, iters, dim })
    }

    pub fn trial_seed(&self, law: usize, trial: usize) -> u64 {
        mix_seed(mix_seed(self.seed ^ ((law as u64) << 56)).wrapping_add(trial as u64))
    }

    /// Axes of the generator trials; the 1-D suite still needs a plane.
    fn generator_arity(&self) -> usize {
        self.dim.max(2)
    }

    fn trial(&self, law: usize, seed: u64) -> Trial {
        let mut rng = rng_from_seed(seed);
        let n = self.generator_arity();
        match law {
            0 => Trial::Boolean(
                (0..3)
                    .map(|_| {
                        let k = rng.random_range(0..=4);
                        random_area_with(&mut rng, self.dim, k)
                    })
                    .collect(),
            ),
            1 => {
                let draw = |rng: &mut ChaCha8Rng| {
                    (0..n)
                        .map(|_| {
                            let parts = rng.random_range(0..=2);
                            random_one_dim(rng, parts)
                        })
                        .collect::<Vec<_>>()
                };
                let a = draw(&mut rng);
                let b = draw(&mut rng);
                Trial::Meet(a, b)
            }
            2 => Trial::Complement((0..n).map(|_| random_interval(&mut rng)).collect()),
            3 => {
                let k = rng.random_range(1..=4);
                let area = random_area_with(&mut rng, 2, k);
                Trial::Cover { area, rng }
            }
            _ => {
                let pa = rng.random_range(0..=3);
                let a = random_one_dim(&mut rng, pa);
                let pb = rng.random_range(0..=3);
                let b = random_one_dim(&mut rng, pb);
                Trial::Universal { a, b, rng }
            }
        }
    }

    /// Runs every law and collects the results in a fixed order.
    pub fn run(&self) -> LawReport {
        let laws = (0..LAW_NAMES.len())
            .map(|law| {
                let failures: Vec<Failure> = (0..self.iters)
                    .into_par_iter()
                    .filter_map(|t| {
                        let seed = self.trial_seed(law, t);
                        run_trial(self.trial(law, seed)).err().map(|(detail, inputs)| Failure {
                            trial: t,
                            seed,
                            detail,
                            counterexample: inputs,
                        })
                    })
                    .collect();
                LawResult {
                    law: LAW_NAMES[law].to_string(),
                    trials: self.iters,
                    passed: self.iters - failures.len(),
                    failures,
                }
            })
            .collect();
        LawReport {
            seed: self.seed,
            iters: self.iters,
            dim: self.dim,
            laws,
        }
    }
}

type TrialOutcome = Result<(), (String, Vec<CubicalArea>)>;

fn one_dim_areas(parts: &[OneDimArea]) -> Vec<CubicalArea> {
    parts.iter().map(CubicalArea::from).collect()
}

fn run_trial(trial: Trial) -> TrialOutcome {
    match trial {
        Trial::Boolean(areas) => {
            let fails = |xs: &[CubicalArea]| {
                !boolean_law_failures(&xs[0], &xs[1], &xs[2])
                    .expect("same dim")
                    .is_empty()
            };
            if fails(&areas) {
                let small = shrink(areas, fails);
                let names = boolean_law_failures(&small[0], &small[1], &small[2]).expect("same dim");
                return Err((names.join(", "), small));
            }
            Ok(())
        }
        Trial::Meet(a, b) => {
            if check_generator_meet_n(&a, &b) {
                return Ok(());
            }
            let n = a.len();
            let mut inputs = one_dim_areas(&a);
            inputs.extend(one_dim_areas(&b));
            let fails = |xs: &[CubicalArea]| {
                let parts: Vec<OneDimArea> = xs.iter().map(area_to_one_dim).collect();
                !check_generator_meet_n(&parts[..n], &parts[n..])
            };
            Err((
                "meet of generators differs from generator of meets".into(),
                shrink(inputs, fails),
            ))
        }
        Trial::Complement(sides) => {
            if check_generator_complement_n(&sides) {
                return Ok(());
            }
            let inputs = sides
                .into_iter()
                .map(|s| CubicalArea::from(&OneDimArea::from(s)))
                .collect();
            Err(("complement of a generator is not a complement".into(), inputs))
        }
        Trial::Cover { area, mut rng } => cover_trial(&area, &mut rng),
        Trial::Universal { a, b, mut rng } => {
            let f = PowersetBimorphism::random(&mut rng, 4, 12);
            let generator = CanonicalEmbedding.apply(&a, &b);
            let cover = generator.as_family();
            let inputs = || one_dim_areas(&[a.clone(), b.clone()]);
            if extend_bimorphism(&f, &cover).expect("dim 2") != f.apply(&a, &b) {
                return Err((
                    "h(a x b) differs from f(a, b) for a powerset bimorphism".into(),
                    inputs(),
                ));
            }
            if extend_bimorphism(&CanonicalEmbedding, &cover).expect("dim 2") != generator {
                return Err(("h(a x b) differs from a x b for the embedding".into(), inputs()));
            }
            Ok(())
        }
    }
}

fn cover_trial(area: &CubicalArea, rng: &mut ChaCha8Rng) -> TrialOutcome {
    let refined = random_refinement(rng, area).expect("dim 2");
    let f = PowersetBimorphism::random(rng, 4, 12);
    let fail = |detail: &str| {
        let cover = serde_json::to_string(refined.cubes()).expect("cubes serialize");
        Err((format!("{detail}; refined cover {cover}"), vec![area.clone()]))
    };

    // spot-check the bimorphism laws on generator pairs from the refinement
    let pieces = refined.cubes();
    for w in pieces.windows(2) {
        let a1 = OneDimArea::from(w[0].factor(0).clone());
        let a2 = OneDimArea::from(w[1].factor(0).clone());
        let b = OneDimArea::from(w[0].factor(1).clone());
        if !spot_check(&f, &a1, &a2, &b) {
            return fail("sampled map is not a bimorphism");
        }
    }
    let maximal = area.as_family();
    match check_cover_invariance(&f, area, &maximal, &refined) {
        Ok(true) => {}
        Ok(false) => return fail("powerset bimorphism differs between covers"),
        Err(_) => return fail("refinement does not cover the area"),
    }
    match check_cover_invariance(&CanonicalEmbedding, area, &maximal, &refined) {
        Ok(true) => {}
        Ok(false) => return fail("embedding differs between covers"),
        Err(_) => return fail("refinement does not cover the area"),
    }
    if extend_bimorphism(&CanonicalEmbedding, &refined).expect("dim 2") != *area {
        return fail("embedding does not rebuild the area");
    }
    Ok(())
}

fn area_to_one_dim(a: &CubicalArea) -> OneDimArea {
    OneDimArea::normalize(a.cubes().iter().map(|c| c.factor(0).clone()))
}

/// Greedily drops cubes from the inputs while the failure persists.
fn shrink(mut inputs: Vec<CubicalArea>, fails: impl Fn(&[CubicalArea]) -> bool) -> Vec<CubicalArea> {
    loop {
        let mut progressed = false;
        'search: for k in 0..inputs.len() {
            for drop in 0..inputs[k].len() {
                let mut cubes = inputs[k].cubes().to_vec();
                cubes.remove(drop);
                let mut candidate = inputs.clone();
                candidate[k] = CubicalArea::normalize(&CubeFamily::new(inputs[k].dim(), cubes).expect("dim kept"));
                if fails(&candidate) {
                    inputs = candidate;
                    progressed = true;
                    break 'search;
                }
            }
        }
        if !progressed {
            return inputs;
        }
    }
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.failures.is_empty())
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "law suite: seed {}, {} trials per law, dimension {}",
            self.seed, self.iters, self.dim
        )
        .unwrap();
        for law in &self.laws {
            writeln!(out, "{:<22}{}/{} passed", law.law, law.passed, law.trials).unwrap();
            for f in &law.failures {
                writeln!(out, "  trial {} (seed {}): {}", f.trial, f.seed, f.detail).unwrap();
                for (k, a) in f.counterexample.iter().enumerate() {
                    writeln!(out, "    input {k}: {}", a.to_json()).unwrap();
                }
            }
        }
        out.push_str(if self.all_passed() {
            "all laws hold\n"
        } else {
            "LAW FAILURES\n"
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Cube;
    use crate::interval::rat;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(LawSuite::new(1, 0, 2), Err(SuiteError::NoIterations));
        assert_eq!(LawSuite::new(1, 5, 0), Err(SuiteError::BadDimension(0)));
        assert_eq!(LawSuite::new(1, 5, 4), Err(SuiteError::BadDimension(4)));
    }

    #[test]
    fn small_suite_passes_in_every_dimension() {
        for dim in 1..=3 {
            let report = LawSuite::new(5, 20, dim).unwrap().run();
            assert!(report.all_passed(), "{}", report.to_text());
            assert_eq!(report.laws.len(), LAW_NAMES.len());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let suite = LawSuite::new(42, 30, 2).unwrap();
        assert_eq!(suite.run().to_json(), suite.run().to_json());
        let other = LawSuite::new(43, 30, 2).unwrap();
        assert_ne!(suite.trial_seed(0, 0), other.trial_seed(0, 0));
        assert_ne!(suite.trial_seed(0, 1), suite.trial_seed(1, 0));
    }

    #[test]
    fn shrinking_keeps_a_failing_core() {
        // "fails" whenever the first input contains the origin
        let origin = [rat(0), rat(0)];
        let square = |a: i64, b: i64| {
            Cube::new(vec![
                Interval::closed(rat(a), rat(b)).unwrap(),
                Interval::closed(rat(a), rat(b)).unwrap(),
            ])
            .unwrap()
        };
        let big = CubicalArea::normalize(&CubeFamily::new(2, vec![square(-1, 1), square(3, 4), square(6, 7)]).unwrap());
        let fails = |xs: &[CubicalArea]| xs[0].contains_point(&origin).unwrap();
        let small = shrink(vec![big, CubicalArea::full(2)], fails);
        assert_eq!(small[0], CubicalArea::from_cube(square(-1, 1)));
        assert!(small[1].is_empty());
    }
}

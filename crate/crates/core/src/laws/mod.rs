//! Executable versions of the tensor-product laws: boolean laws on canonical
//! forms, the generator identities, and bimorphism extension over covers.

mod bimorphism;
mod random;
mod suite;

pub use bimorphism::{
    check_cover_invariance, extend_bimorphism, random_refinement, spot_check, Bimorphism, CanonicalEmbedding,
    FiniteSemilatticeZ, PowersetBimorphism, SemilatticeError,
};
pub use random::{
    mix_seed, random_area, random_area_with, random_cube, random_interval, random_one_dim, random_program,
    rng_from_seed,
};
pub use suite::{Failure, LawReport, LawResult, LawSuite, SuiteError, LAW_NAMES};

use crate::area::CubicalArea;
use crate::error::AlgebraError;
use crate::interval::{Interval, OneDimArea};

fn product_of(parts: &[OneDimArea]) -> CubicalArea {
    parts
        .iter()
        .map(CubicalArea::from)
        .reduce(|acc, p| acc.product(&p))
        .expect("at least one factor")
}

/// `(a₁⊗b₁) ∧ (a₂⊗b₂) = (a₁∧a₂)⊗(b₁∧b₂)` in the plane.
pub fn check_generator_meet(a1: &OneDimArea, b1: &OneDimArea, a2: &OneDimArea, b2: &OneDimArea) -> bool {
    check_generator_meet_n(&[a1.clone(), b1.clone()], &[a2.clone(), b2.clone()])
}

/// The n-fold form: `(⊗aᵢ) ∧ (⊗bᵢ) = ⊗(aᵢ ∧ bᵢ)`.
pub fn check_generator_meet_n(a: &[OneDimArea], b: &[OneDimArea]) -> bool {
    assert_eq!(a.len(), b.len());
    let lhs = product_of(a).intersect(&product_of(b)).expect("same dimension");
    let meets: Vec<OneDimArea> = a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect();
    lhs == product_of(&meets)
}

/// `(a⊗b) ∨ ((1⊗bᶜ) ∨ (aᶜ⊗1)) = 1` and `(a⊗b) ∧ ((1⊗bᶜ) ∨ (aᶜ⊗1)) = 0`.
pub fn check_generator_complement(a: &Interval, b: &Interval) -> bool {
    check_generator_complement_n(&[a.clone(), b.clone()])
}

/// The n-fold form, with the complement part `⋃ᵢ 1⊗…⊗aᵢᶜ⊗…⊗1`.
pub fn check_generator_complement_n(sides: &[Interval]) -> bool {
    let n = sides.len();
    let generator = product_of(&sides.iter().cloned().map(OneDimArea::from).collect::<Vec<_>>());
    let mut rest = CubicalArea::empty(n);
    for k in 0..n {
        let mut factors = vec![OneDimArea::full(); n];
        factors[k] = OneDimArea::from(sides[k].clone()).complement();
        rest = rest.union(&product_of(&factors)).expect("same dimension");
    }
    generator.union(&rest).expect("same dimension").is_full()
        && generator.intersect(&rest).expect("same dimension").is_empty()
}

/// Names of the boolean-algebra laws that fail on the triple.
pub fn boolean_law_failures(
    a: &CubicalArea,
    b: &CubicalArea,
    c: &CubicalArea,
) -> Result<Vec<&'static str>, AlgebraError> {
    let dim = a.dim();
    crate::cube::check_dims(dim, b.dim())?;
    crate::cube::check_dims(dim, c.dim())?;
    let u = |x: &CubicalArea, y: &CubicalArea| x.union(y).expect("checked");
    let i = |x: &CubicalArea, y: &CubicalArea| x.intersect(y).expect("checked");
    let n = |x: &CubicalArea| x.complement();

    let checks: [(&'static str, bool); 13] = [
        ("union commutes", u(a, b) == u(b, a)),
        ("intersection commutes", i(a, b) == i(b, a)),
        ("union associates", u(&u(a, b), c) == u(a, &u(b, c))),
        ("intersection associates", i(&i(a, b), c) == i(a, &i(b, c))),
        ("absorption over union", u(a, &i(a, b)) == *a),
        ("absorption over intersection", i(a, &u(a, b)) == *a),
        ("intersection distributes", i(a, &u(b, c)) == u(&i(a, b), &i(a, c))),
        ("union distributes", u(a, &i(b, c)) == i(&u(a, b), &u(a, c))),
        ("De Morgan for union", n(&u(a, b)) == i(&n(a), &n(b))),
        ("De Morgan for intersection", n(&i(a, b)) == u(&n(a), &n(b))),
        ("involution", n(&n(a)) == *a),
        ("meet with complement", i(a, &n(a)) == CubicalArea::empty(dim)),
        ("join with complement", u(a, &n(a)) == CubicalArea::full(dim)),
    ];
    Ok(checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect())
}

pub fn check_boolean_laws(a: &CubicalArea, b: &CubicalArea, c: &CubicalArea) -> Result<bool, AlgebraError> {
    Ok(boolean_law_failures(a, b, c)?.is_empty())
}

//! Fixtures shared by the benchmarks under `benches/`.

use trumpkit::{normalize, sample_s, ProbVec, Rational};

/// Strictly decreasing target `(d, d-1, ..., 1)` normalized.
pub fn staircase(d: usize) -> ProbVec {
    let raw: Vec<Rational> = (1..=d as i64)
        .rev()
        .map(|v| Rational::from_integer(v.into()))
        .collect();
    normalize(&raw).expect("positive weights")
}

/// A deterministic point majorized by `y`.
pub fn majorized_by(y: &ProbVec, seed: u64) -> ProbVec {
    sample_s(y, 1, seed).pop().expect("one sample")
}

/// Midpoint of `y` and the uniform vector. Its extremes are strictly inside
/// those of any non-uniform `y`.
pub fn halfway_to_uniform(y: &ProbVec) -> ProbVec {
    y.mix(
        &ProbVec::uniform(y.dim()),
        &Rational::new(1.into(), 2.into()),
    )
    .expect("same dimension")
}

/// Catalysis example pair `(x, y)` with a dimension-2 catalyst.
pub fn catalysis_pair() -> (ProbVec, ProbVec) {
    (
        ProbVec::parse_list("0.4,0.4,0.1,0.1").expect("valid literal"),
        ProbVec::parse_list("0.5,0.25,0.25,0").expect("valid literal"),
    )
}

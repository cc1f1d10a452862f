//! The majorization order and its classical equivalent criteria.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vector::{same_dim, sort_desc, ProbVec, SortedProbVec};

/// Per-prefix ledger for `x ≺ y`.
///
/// `prefix_gaps[l - 1]` is `sum_{i<=l} y↓_i - sum_{i<=l} x↓_i` for
/// `l = 1..dim-1`; the `l = dim` gap is always zero and is omitted.
/// `tight_indices` holds the 1-based `l` with a zero gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationReport {
    pub verdict: bool,
    pub prefix_gaps: Vec<Rational>,
    pub tight_indices: Vec<usize>,
}

impl MajorizationReport {
    pub(crate) fn from_sorted(xs: &[Rational], ys: &[Rational]) -> Self {
        debug_assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut prefix_gaps = Vec::with_capacity(n.saturating_sub(1));
        let mut tight_indices = Vec::new();
        let mut gap = Rational::zero();
        for l in 1..n {
            gap += &ys[l - 1];
            gap -= &xs[l - 1];
            if gap.is_zero() {
                tight_indices.push(l);
            }
            prefix_gaps.push(gap.clone());
        }
        let verdict = prefix_gaps.iter().all(|g| !g.is_negative());
        MajorizationReport {
            verdict,
            prefix_gaps,
            tight_indices,
        }
    }

    /// Smallest prefix gap, or `None` for one-dimensional inputs.
    pub fn min_gap(&self) -> Option<&Rational> {
        self.prefix_gaps.iter().min()
    }

    /// 1-based prefix lengths with a negative gap.
    pub fn violations(&self) -> Vec<usize> {
        self.prefix_gaps
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_negative())
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn all_strict(&self) -> bool {
        self.prefix_gaps.iter().all(|g| g.is_positive())
    }
}

/// Decides `x ≺ y` exactly. Dimensions must agree; pad explicitly first.
pub fn majorizes(x: &ProbVec, y: &ProbVec) -> Result<MajorizationReport> {
    same_dim(x, y)?;
    let xs = sort_desc(x);
    let ys = sort_desc(y);
    Ok(MajorizationReport::from_sorted(
        xs.components(),
        ys.components(),
    ))
}

/// Verdicts of the suffix-sum and `sum |v_i - t|` criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AltVerdicts {
    pub tail: bool,
    pub tsum: bool,
}

/// Checks `x ≺ y` through two criteria independent of [`majorizes`]:
/// suffix sums of the sorted vectors, and `sum |x_i - t| <= sum |y_i - t|`.
pub fn majorizes_alt(x: &ProbVec, y: &ProbVec) -> Result<AltVerdicts> {
    same_dim(x, y)?;
    let xs = sort_desc(x);
    let ys = sort_desc(y);
    let n = x.dim();

    let mut tail = true;
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for l in (1..n).rev() {
        sx += &xs[l];
        sy += &ys[l];
        if sx < sy {
            tail = false;
            break;
        }
    }

    // Both sides are piecewise linear in t with kinks only at components,
    // and they coincide for t beyond every component because the totals
    // match. Checking every kink therefore covers all real t.
    let abs_sum =
        |v: &[Rational], t: &Rational| -> Rational { v.iter().map(|c| (c - t).abs()).sum() };
    let tsum = x
        .iter()
        .chain(y.iter())
        .all(|t| abs_sum(x, t) <= abs_sum(y, t));

    Ok(AltVerdicts { tail, tsum })
}

/// `lambda * I + (1 - lambda) * P_ij` where `P_ij` swaps coordinates `i`
/// and `j` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TTransform {
    pub i: usize,
    pub j: usize,
    pub lambda: Rational,
}

impl TTransform {
    pub fn apply(&self, v: &mut [Rational]) {
        let mu = Rational::one() - &self.lambda;
        let (a, b) = (v[self.i].clone(), v[self.j].clone());
        v[self.i] = &self.lambda * &a + &mu * &b;
        v[self.j] = &self.lambda * &b + &mu * &a;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublyStochasticMatrix {
    entries: Vec<Vec<Rational>>,
}

impl DoublyStochasticMatrix {
    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        DoublyStochasticMatrix { entries }
    }

    /// Validates nonnegativity and unit row and column sums.
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = DoublyStochasticMatrix { entries };
        if !m.is_doubly_stochastic() {
            return Err(Error::InvalidArgument(
                "matrix is not doubly stochastic".into(),
            ));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        let n = self.entries.len();
        if self.entries.iter().any(|row| row.len() != n) {
            return false;
        }
        let nonneg = self.entries.iter().flatten().all(|e| !e.is_negative());
        let rows = self
            .entries
            .iter()
            .all(|row| row.iter().sum::<Rational>().is_one());
        let cols = (0..n).all(|c| {
            self.entries
                .iter()
                .map(|row| &row[c])
                .sum::<Rational>()
                .is_one()
        });
        nonneg && rows && cols
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn left_multiply(&mut self, t: &TTransform) {
        let mu = Rational::one() - &t.lambda;
        let ri = self.entries[t.i].clone();
        let rj = self.entries[t.j].clone();
        for c in 0..ri.len() {
            self.entries[t.i][c] = &t.lambda * &ri[c] + &mu * &rj[c];
            self.entries[t.j][c] = &t.lambda * &rj[c] + &mu * &ri[c];
        }
    }
}

/// A doubly stochastic `D` with `D y = x`, kept with the T-transform chain
/// it was composed from (`D = T_m ... T_1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsWitness {
    pub matrix: DoublyStochasticMatrix,
    pub transforms: Vec<TTransform>,
}

/// Hardy–Littlewood–Pólya construction of a doubly stochastic `D` with
/// `D y = x`, as a chain of at most `dim - 1` T-transforms.
///
/// Each step takes the largest index `i` where the running vector still
/// exceeds `x`, the smallest `j > i` where it falls short, and moves
/// `min(surplus, deficit)` from `i` to `j`. At least one coordinate is
/// settled per step and settled coordinates are never touched again.
pub fn ds_witness(x: &SortedProbVec, y: &SortedProbVec) -> Result<DsWitness> {
    same_dim(x, y)?;
    if !MajorizationReport::from_sorted(x.components(), y.components()).verdict {
        return Err(Error::NotMajorized);
    }
    let target = x.components();
    let n = target.len();
    let mut v = y.components().to_vec();
    let mut matrix = DoublyStochasticMatrix::identity(n);
    let mut transforms = Vec::new();

    while v.as_slice() != target {
        let i = (0..n)
            .rev()
            .find(|&i| v[i] > target[i])
            .ok_or_else(|| Error::VerificationFailed("no surplus coordinate".into()))?;
        let j = (i + 1..n)
            .find(|&j| v[j] < target[j])
            .ok_or_else(|| Error::VerificationFailed("no deficit coordinate".into()))?;
        let surplus = &v[i] - &target[i];
        let deficit = &target[j] - &v[j];
        let delta = surplus.min(deficit);
        let lambda = Rational::one() - &delta / (&v[i] - &v[j]);
        let t = TTransform { i, j, lambda };
        t.apply(&mut v);
        matrix.left_multiply(&t);
        transforms.push(t);
        if transforms.len() >= n {
            return Err(Error::VerificationFailed(
                "T-transform chain exceeded dim - 1 steps".into(),
            ));
        }
    }

    if matrix.apply(y.components()) != target || !matrix.is_doubly_stochastic() {
        return Err(Error::VerificationFailed("D y != x".into()));
    }
    Ok(DsWitness { matrix, transforms })
}

/// Random points of the permutation polytope of `y`: convex combinations
/// with rational weights of random rearrangements of `y`. Every output is
/// majorized by `y`.
pub fn sample_s(y: &ProbVec, n: usize, seed: u64) -> Vec<ProbVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = y.dim();
    (0..n)
        .map(|_| {
            let m = rng.random_range(1..=d + 1);
            let mut acc = vec![Rational::zero(); d];
            let mut total = 0u64;
            for _ in 0..m {
                let w: u64 = rng.random_range(1..=1000);
                total += w;
                let mut perm: Vec<usize> = (0..d).collect();
                perm.shuffle(&mut rng);
                let w = Rational::from_integer(w.into());
                for (slot, &src) in acc.iter_mut().zip(&perm) {
                    *slot += &w * &y[src];
                }
            }
            let total = Rational::from_integer(total.into());
            ProbVec::from_trusted(acc.into_iter().map(|c| c / &total).collect())
        })
        .collect()
}

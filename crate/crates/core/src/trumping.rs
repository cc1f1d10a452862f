//! Catalytic majorization: certificates, the usefulness classification of
//! a target `y`, and the explicit catalyst constructions.
//!
//! Every constructor here re-checks what it builds in exact arithmetic
//! before returning it.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::majorization::{majorizes, MajorizationReport};
use crate::rational::{to_ratio_string, Rational};
use crate::vector::{normalize, same_dim, sort_desc, tensor, ProbVec, SortedProbVec};

/// Exact proof that `x ⊗ z ≺ y ⊗ z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrumpCertificate {
    pub x: ProbVec,
    pub y: ProbVec,
    pub z: ProbVec,
    /// Report for `x ⊗ z` against `y ⊗ z`.
    pub report: MajorizationReport,
    pub all_strict: bool,
}

impl TrumpCertificate {
    /// Re-runs the tensor comparison from scratch.
    pub fn recheck(&self) -> bool {
        matches!(
            trumps_with(&self.x, &self.y, &self.z),
            Ok(Some(ref c)) if c == self
        )
    }
}

/// Returns a certificate iff `x ⊗ z ≺ y ⊗ z`.
pub fn trumps_with(x: &ProbVec, y: &ProbVec, z: &ProbVec) -> Result<Option<TrumpCertificate>> {
    same_dim(x, y)?;
    let report = majorizes(&tensor(x, z), &tensor(y, z))?;
    if !report.verdict {
        return Ok(None);
    }
    let all_strict = report.tight_indices.is_empty();
    Ok(Some(TrumpCertificate {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        report,
        all_strict,
    }))
}

/// Whether catalysis can enlarge the set of vectors majorized by `y`.
///
/// `d1` and `d2` count components equal to the largest and smallest
/// component. `l` and `m` are 1-based positions in the sorted `y`
/// (`l = d1 + 1`, `m = dim - d2`) and are present only when `useful`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalysisClassification {
    pub useful: bool,
    pub d1: usize,
    pub d2: usize,
    pub l: Option<usize>,
    pub m: Option<usize>,
}

/// Catalysis helps for `y` exactly when at least two sorted components
/// differ from both the largest and the smallest one, i.e.
/// `d1 + d2 + 2 <= dim`.
pub fn classify(y: &ProbVec) -> CatalysisClassification {
    let ys = sort_desc(y);
    let d = ys.dim();
    let d1 = ys.iter().take_while(|c| *c == ys.first()).count();
    let d2 = ys.iter().rev().take_while(|c| *c == ys.last()).count();
    let useful = d1 + d2 + 2 <= d;
    CatalysisClassification {
        useful,
        d1,
        d2,
        l: useful.then_some(d1 + 1),
        m: useful.then_some(d - d2),
    }
}

/// The vector on the boundary of the majorization polytope of `y` whose
/// first `d1 + 1` components are their average in `y↓`, whose last
/// `d2 + 1` components are their average, and whose middle matches `y↓`.
///
/// The result is sorted, majorized by `y`, and tight at prefix `d1 + 1`.
pub fn boundary_witness(y: &ProbVec) -> Result<ProbVec> {
    let class = classify(y);
    if !class.useful {
        return Err(Error::NotUseful);
    }
    let ys = sort_desc(y);
    let d = ys.dim();
    let head = class.d1 + 1;
    let tail_start = d - class.d2 - 1;
    let mut x = ys.components().to_vec();
    average_in_place(&mut x[..head]);
    average_in_place(&mut x[tail_start..]);
    let x = ProbVec::from_trusted(x);

    let report = majorizes(&x, &ys)?;
    if !report.verdict || !report.tight_indices.contains(&head) {
        return Err(Error::VerificationFailed(format!(
            "boundary witness {x} is not tight at prefix {head}"
        )));
    }
    Ok(x)
}

fn average_in_place(block: &mut [Rational]) {
    let n = Rational::from_integer((block.len() as u64).into());
    let avg = block.iter().sum::<Rational>() / n;
    block.iter_mut().for_each(|c| *c = avg.clone());
}

/// Normalized `(1, alpha, ..., alpha^(k-1))` catalyst for a sorted pair
/// with `x ≺ y`, `y_1 > x_1` and `y_d < x_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricCatalyst {
    pub alpha: Rational,
    pub k: usize,
    pub z: ProbVec,
    pub certificate: TrumpCertificate,
}

/// Builds the geometric catalyst placing `x` in the interior of the set of
/// vectors trumped by `y`.
///
/// `alpha` is the midpoint of `(max(x_1/y_1, y_d/x_d), 1)` and `k` is the
/// least integer with `x_1 alpha^(k-1) < x_d`. Every one of the `dk - 1`
/// prefix inequalities between `x ⊗ z` and `y ⊗ z` is checked to be
/// strict before returning.
pub fn geometric_catalyst(x: &SortedProbVec, y: &SortedProbVec) -> Result<GeometricCatalyst> {
    same_dim(x, y)?;
    let mut failed = Vec::new();
    if !MajorizationReport::from_sorted(x.components(), y.components()).verdict {
        failed.push("x ≺ y");
    }
    if y.first() <= x.first() {
        failed.push("y_1 > x_1");
    }
    if y.last() >= x.last() {
        failed.push("y_d < x_d");
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "failed: {}",
            failed.join(", ")
        )));
    }

    // x_d > y_d >= 0, so both ratios are well defined.
    let r1 = x.first() / y.first();
    let r2 = y.last() / x.last();
    let alpha = (Rational::one() + r1.max(r2)) / Rational::from_integer(2.into());

    let mut powers = vec![Rational::one()];
    let mut lead = x.first().clone();
    while &lead >= x.last() {
        lead *= &alpha;
        let next = powers.last().expect("nonempty") * &alpha;
        powers.push(next);
    }
    let k = powers.len();
    let z = normalize(&powers)?;

    let certificate = trumps_with(x, y, &z)?
        .ok_or_else(|| Error::VerificationFailed("geometric catalyst does not catalyze".into()))?;
    if !certificate.all_strict {
        return Err(Error::VerificationFailed(format!(
            "geometric catalyst leaves tight prefixes {:?}",
            certificate.report.tight_indices
        )));
    }
    Ok(GeometricCatalyst {
        alpha,
        k,
        z,
        certificate,
    })
}

/// Smallest prefix gap of `x ⊗ z` against `y ⊗ z`.
///
/// Any probability vector within l1 distance strictly less than the result
/// is still catalyzed by `z`: each sorted prefix sum of `x' ⊗ z` moves by
/// at most `||x' - x||_1` because `z` sums to one. With no prefix
/// constraints at all (`dim(x) * dim(z) == 1`) the radius is 2, the
/// diameter of the simplex.
pub fn interior_radius(x: &ProbVec, y: &ProbVec, z: &ProbVec) -> Result<Rational> {
    let cert = trumps_with(x, y, z)?.ok_or(Error::NotTrumped)?;
    if !cert.all_strict {
        return Err(Error::NotStrict(cert.report.tight_indices));
    }
    Ok(cert
        .report
        .min_gap()
        .cloned()
        .unwrap_or_else(|| Rational::from_integer(2.into())))
}

/// A vector trumped by `y` that is not majorized by `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    pub x_prime: ProbVec,
    pub y: ProbVec,
    pub certificate: TrumpCertificate,
    /// `x_prime` against `y`; always has a negative gap.
    pub not_majorized_proof: MajorizationReport,
}

impl SeparationWitness {
    fn verified(x_prime: ProbVec, y: &ProbVec, z: &ProbVec) -> Result<Self> {
        let not_majorized_proof = majorizes(&x_prime, y)?;
        if not_majorized_proof.verdict {
            return Err(Error::VerificationFailed(format!(
                "perturbed vector {x_prime} is still majorized by y"
            )));
        }
        let certificate = trumps_with(&x_prime, y, z)?.ok_or_else(|| {
            Error::VerificationFailed(format!("perturbed vector {x_prime} lost the catalyst"))
        })?;
        Ok(SeparationWitness {
            x_prime,
            y: y.clone(),
            certificate,
            not_majorized_proof,
        })
    }
}

/// Produces an explicit member of `T(y) \ S(y)` when catalysis is useful
/// for `y`.
///
/// Starts from [`boundary_witness`], takes its [`geometric_catalyst`] and
/// [`interior_radius`] `r`, then pushes `eps = r/4` of mass from the last
/// coordinate onto coordinate `d1 + 1`. That breaks the tight prefix while
/// staying within l1 distance `2 eps < r`.
pub fn separating_example(y: &ProbVec) -> Result<SeparationWitness> {
    let class = classify(y);
    if !class.useful {
        return Err(Error::NotUseful);
    }
    let ys = sort_desc(y);
    let x = SortedProbVec::new(boundary_witness(y)?)?;
    let catalyst = geometric_catalyst(&x, &ys)?;
    let r = interior_radius(&x, &ys, &catalyst.z)?;

    let four = Rational::from_integer(4.into());
    let two = Rational::from_integer(2.into());
    let d = x.dim();
    let mut eps = r / four;
    let cap = x.last() / two;
    if eps > cap {
        eps = cap;
    }
    let mut xp = x.components().to_vec();
    xp[class.d1] += &eps;
    xp[d - 1] -= &eps;
    debug_assert!(xp.iter().all(|c| !c.is_negative()));
    SeparationWitness::verified(ProbVec::from_trusted(xp), y, &catalyst.z)
}

/// Shows that a non-uniform `z` catalyzes some four-dimensional pair.
///
/// With `z` restricted to its support and sorted, `alpha = z_1/(z_1+z_k)`
/// and `beta = 1 - alpha`:
/// `x = (alpha/2 + beta/4, alpha/2 + beta/4, beta/4, beta/4)` and
/// `y = (alpha, beta/2, beta/2, 0)`. All `4k - 1` prefix inequalities of
/// `x ⊗ z ≺ y ⊗ z` are strict, so shifting `eps = r/8` from the last two
/// coordinates of `x` to the first two keeps the catalysis while breaking
/// `x ≺ y` at prefix 2.
///
/// The certificate in the returned witness uses the sorted support of `z`.
pub fn nonuniform_demo(z: &ProbVec) -> Result<SeparationWitness> {
    let zs = sort_desc(&z.support()).into_prob_vec();
    let (z1, zk) = (&zs[0], &zs[zs.dim() - 1]);
    if z1 == zk {
        return Err(Error::UniformCatalyst);
    }
    let alpha = z1 / (z1 + zk);
    let beta = Rational::one() - &alpha;
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());

    let top = &alpha * &half + &beta * &quarter;
    let low = &beta * &quarter;
    let x = ProbVec::from_trusted(vec![top.clone(), top, low.clone(), low]);
    let y = ProbVec::from_trusted(vec![
        alpha.clone(),
        &beta * &half,
        &beta * &half,
        Rational::zero(),
    ]);

    let r = match interior_radius(&x, &y, &zs) {
        Ok(r) => r,
        Err(e) => {
            return Err(Error::VerificationFailed(format!(
                "construction for z = {zs} is not strict: {e}"
            )))
        }
    };
    let eps = r / Rational::from_integer(8.into());
    let xp: Vec<Rational> = x
        .iter()
        .enumerate()
        .map(|(i, c)| if i < 2 { c + &eps } else { c - &eps })
        .collect();
    let witness = SeparationWitness::verified(ProbVec::from_trusted(xp), &y, &zs)?;
    if !witness.not_majorized_proof.violations().contains(&2) {
        return Err(Error::VerificationFailed(format!(
            "expected a violation at prefix 2, got gaps {:?}",
            witness
                .not_majorized_proof
                .prefix_gaps
                .iter()
                .map(to_ratio_string)
                .collect::<Vec<_>>()
        )));
    }
    Ok(witness)
}

//! Catalyst search over the probability simplex.
//!
//! Floating point finds candidates, exact arithmetic certifies them. For a
//! fixed catalyst dimension `k`,
//! `f(x) = min_z max_{j < dk} sum_{i<=j} ((x⊗z)↓_i - (y⊗z)↓_i)`
//! and `x` has a `k`-dimensional catalyst iff `f(x) <= 0`. The search is a
//! multi-start coordinate-pair descent with exact line searches on the
//! piecewise-linear restriction of the objective. A reported
//! [`SearchStatus::NotFound`] never means that no catalyst exists.

pub(crate) mod objective;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorization::majorizes;
use crate::rational::{from_f64, limit_denominator, Rational};
use crate::trumping::{classify, trumps_with, TrumpCertificate};
use crate::vector::{pad_zeros, same_dim, sort_desc, ProbVec};
use objective::Objective;

/// Denominator bounds tried, in order, when turning a float candidate into
/// an exact catalyst.
pub const DENOMINATOR_LADDER: [u64; 4] = [10, 100, 10_000, 1_000_000];

/// Float candidates with `f` at most the tolerance that get a certification
/// attempt, per catalyst dimension.
const MAX_CANDIDATES: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Catalyst dimension for [`minimize_f`].
    pub k: usize,
    pub restarts: usize,
    /// Descent sweeps per restart.
    pub max_iters: usize,
    pub seed: u64,
    /// Candidates with `f` at or below this are sent to certification.
    pub float_tolerance: f64,
    pub max_denominator: u64,
    /// Bisection steps per catalyst dimension in [`ray_probe`].
    pub bisection_steps: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k: 2,
            restarts: 12,
            max_iters: 200,
            seed: 0,
            float_tolerance: 1e-9,
            max_denominator: 1_000_000,
            bisection_steps: 12,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.k < 1 {
            return bad("k must be at least 1");
        }
        if self.restarts < 1 {
            return bad("restarts must be at least 1");
        }
        if self.float_tolerance.is_nan() || self.float_tolerance <= 0.0 {
            return bad("float_tolerance must be positive");
        }
        if self.max_denominator < 2 {
            return bad("max_denominator must be at least 2");
        }
        Ok(())
    }

    fn ladder(&self) -> Vec<u64> {
        let mut l: Vec<u64> = DENOMINATOR_LADDER
            .iter()
            .copied()
            .filter(|&d| d <= self.max_denominator)
            .collect();
        if l.last() != Some(&self.max_denominator) {
            l.push(self.max_denominator);
        }
        l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    CertifiedFound,
    NumericOnly,
    NotFound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Dimension of `z_float`.
    pub k: usize,
    pub z_float: Vec<f64>,
    /// `h(x, z_float)`.
    pub f_value: f64,
    pub certificate: Option<TrumpCertificate>,
    pub status: SearchStatus,
    /// Set when `x↓_1 > y↓_1` or `x↓_d < y↓_d`. No catalyst of any
    /// dimension exists then, so this `NotFound` is a disproof.
    pub ruled_out_by_extremes: bool,
}

impl SearchResult {
    fn uncertified(k: usize, z_float: Vec<f64>, f_value: f64, tol: f64) -> Self {
        let status = if f_value <= tol {
            SearchStatus::NumericOnly
        } else {
            SearchStatus::NotFound
        };
        SearchResult {
            k,
            z_float,
            f_value,
            certificate: None,
            status,
            ruled_out_by_extremes: false,
        }
    }
}

pub(crate) fn objective(x: &ProbVec, y: &ProbVec) -> Objective {
    let xs = sort_desc(x).to_f64();
    let ys = sort_desc(y).to_f64();
    Objective::new(xs, ys)
}

fn check_simplex(z: &[f64]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::Empty);
    }
    if z.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::InvalidArgument(
            "catalyst components must be finite and nonnegative".into(),
        ));
    }
    let s: f64 = z.iter().sum();
    if (s - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "catalyst components sum to {s}, not 1"
        )));
    }
    Ok(())
}

/// Float value of the largest prefix excess of `x ⊗ z` over `y ⊗ z`.
/// Nonpositive iff `z` catalyzes `x` into `y` (up to rounding).
pub fn h_value(x: &ProbVec, y: &ProbVec, z: &[f64]) -> Result<f64> {
    same_dim(x, y)?;
    check_simplex(z)?;
    Ok(objective(x, y).h(z))
}

#[derive(Debug, Clone)]
struct LocalOptimum {
    index: usize,
    f: f64,
    z: Vec<f64>,
}

fn rng_for(seed: u64, k: usize, index: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose << 62) | ((k as u64) << 32) | index as u64);
    rng
}

fn geometric_start(k: usize, ratio: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|i| ratio.powi(i as i32)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

fn dirichlet_start(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..k)
        .map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-12)
        .collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

fn renormalize(z: &mut [f64]) {
    for c in z.iter_mut() {
        if *c < 0.0 {
            *c = 0.0;
        }
    }
    let s: f64 = z.iter().sum();
    z.iter_mut().for_each(|c| *c /= s);
}

fn descend(
    obj: &Objective,
    mut z: Vec<f64>,
    max_iters: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, f64) {
    let k = z.len();
    let mut fz = obj.h(&z);
    let mut dir = vec![0.0; k];
    let try_move = |z: &mut Vec<f64>, fz: &mut f64, dir: &[f64]| {
        if let Some((t, v)) = obj.line_search(z, dir) {
            if v < *fz - 1e-15 {
                let mut cand: Vec<f64> = z.iter().zip(dir).map(|(a, d)| a + t * d).collect();
                renormalize(&mut cand);
                let fc = obj.h(&cand);
                if fc < *fz {
                    *z = cand;
                    *fz = fc;
                }
            }
        }
    };
    for _ in 0..max_iters {
        let before = fz;
        for a in 0..k {
            for b in a + 1..k {
                dir.iter_mut().for_each(|d| *d = 0.0);
                dir[a] = 1.0;
                dir[b] = -1.0;
                try_move(&mut z, &mut fz, &dir);
            }
        }
        // Random tangent directions get past kinks where no single
        // pairwise transfer descends.
        if k > 2 {
            for _ in 0..k {
                dir.iter_mut()
                    .for_each(|d| *d = rng.random::<f64>() * 2.0 - 1.0);
                let mean = dir.iter().sum::<f64>() / k as f64;
                dir.iter_mut().for_each(|d| *d -= mean);
                try_move(&mut z, &mut fz, &dir);
            }
        }
        if fz >= before - 1e-15 {
            break;
        }
    }
    (z, fz)
}

/// Runs every restart (in parallel) and returns the local optima ordered by
/// `(f, restart index)`, so the outcome does not depend on scheduling.
fn local_search(
    obj: &Objective,
    k: usize,
    config: &SearchConfig,
    warm: &[Vec<f64>],
) -> Vec<LocalOptimum> {
    if k == 1 {
        return vec![LocalOptimum {
            index: 0,
            f: obj.h(&[1.0]),
            z: vec![1.0],
        }];
    }
    let mut starts: Vec<Vec<f64>> = warm.iter().filter(|w| w.len() == k).cloned().collect();
    let deterministic = [None, Some(0.5), Some(0.75), Some(0.9)];
    for ratio in deterministic.iter().take(config.restarts) {
        starts.push(match ratio {
            None => vec![1.0 / k as f64; k],
            Some(r) => geometric_start(k, *r),
        });
    }
    for i in deterministic.len()..config.restarts {
        starts.push(dirichlet_start(k, &mut rng_for(config.seed, k, i, 0)));
    }

    let mut optima: Vec<LocalOptimum> = starts
        .into_par_iter()
        .enumerate()
        .map(|(index, z0)| {
            let mut rng = rng_for(config.seed, k, index, 1);
            let (z, f) = descend(obj, z0, config.max_iters, &mut rng);
            LocalOptimum { index, f, z }
        })
        .collect();
    optima.sort_by(|a, b| a.f.total_cmp(&b.f).then(a.index.cmp(&b.index)));
    optima
}

/// Best float catalyst of dimension `config.k` found by the multi-start
/// descent. Never certifies; see [`find_catalyst`].
pub fn minimize_f(x: &ProbVec, y: &ProbVec, config: &SearchConfig) -> Result<SearchResult> {
    same_dim(x, y)?;
    config.validate()?;
    let obj = objective(x, y);
    let best = local_search(&obj, config.k, config, &[])
        .into_iter()
        .next()
        .expect("at least one restart");
    Ok(SearchResult::uncertified(
        config.k,
        best.z,
        best.f,
        config.float_tolerance,
    ))
}

/// Exact probability vector near `z_float`: every component but the last is
/// replaced by its best rational approximation with denominator at most
/// `max_denominator`, and the last absorbs whatever makes the sum one.
pub fn rationalize(z_float: &[f64], max_denominator: u64) -> Result<ProbVec> {
    if z_float.is_empty() {
        return Err(Error::Empty);
    }
    if z_float.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::NotNormalizable(
            "components must be finite and nonnegative".into(),
        ));
    }
    let s: f64 = z_float.iter().sum();
    if (s - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalizable(format!("components sum to {s}")));
    }
    let bound = BigInt::from(max_denominator.max(1));
    let n = z_float.len();
    let mut comps: Vec<Rational> = z_float[..n - 1]
        .iter()
        .map(|&c| limit_denominator(&from_f64(c).expect("finite"), &bound))
        .collect();
    let last = Rational::one() - comps.iter().sum::<Rational>();
    if last.is_negative() {
        return Err(Error::NotNormalizable(
            "rounded components exceed 1; last component would be negative".into(),
        ));
    }
    comps.push(last);
    ProbVec::new(comps)
}

fn certify(
    x: &ProbVec,
    y: &ProbVec,
    z_float: &[f64],
    config: &SearchConfig,
) -> Option<TrumpCertificate> {
    // Catalyst order is irrelevant; ascending order lets the largest
    // component absorb the rounding.
    let mut zs = z_float.to_vec();
    zs.sort_by(f64::total_cmp);
    config.ladder().into_iter().find_map(|den| {
        let zq = rationalize(&zs, den).ok()?;
        trumps_with(x, y, &zq).ok().flatten()
    })
}

/// Search at exactly dimension `k`, certifying the best candidates.
pub(crate) fn search_dimension(
    x: &ProbVec,
    y: &ProbVec,
    obj: &Objective,
    k: usize,
    config: &SearchConfig,
    warm: &[Vec<f64>],
) -> SearchResult {
    let tol = config.float_tolerance;
    if k == 1 {
        let f = obj.h(&[1.0]);
        let cert = trumps_with(x, y, &ProbVec::basis(1)).ok().flatten();
        return match cert {
            Some(c) => SearchResult {
                k,
                z_float: vec![1.0],
                f_value: f,
                certificate: Some(c),
                status: SearchStatus::CertifiedFound,
                ruled_out_by_extremes: false,
            },
            None => SearchResult::uncertified(k, vec![1.0], f, tol),
        };
    }
    let optima = local_search(obj, k, config, warm);
    for cand in optima.iter().filter(|o| o.f <= tol).take(MAX_CANDIDATES) {
        if let Some(c) = certify(x, y, &cand.z, config) {
            return SearchResult {
                k,
                z_float: cand.z.clone(),
                f_value: cand.f,
                certificate: Some(c),
                status: SearchStatus::CertifiedFound,
                ruled_out_by_extremes: false,
            };
        }
    }
    let best = &optima[0];
    SearchResult::uncertified(k, best.z.clone(), best.f, tol)
}

pub(crate) fn pad_float(z: &[f64], k: usize) -> Vec<f64> {
    let mut v = z.to_vec();
    v.resize(k, 0.0);
    v
}

/// `true` when the extreme components already rule out every catalyst.
pub(crate) fn extremes_forbid(x: &ProbVec, y: &ProbVec) -> bool {
    let xs = sort_desc(x);
    let ys = sort_desc(y);
    xs.first() > ys.first() || xs.last() < ys.last()
}

/// Looks for an exactly certified catalyst of dimension `1..=k_max`.
///
/// The first certified catalyst wins. `NumericOnly` means some float
/// candidate met the tolerance but none of its rationalizations certified;
/// `NotFound` means nothing was found within budget. Only when
/// `ruled_out_by_extremes` is set does `NotFound` prove that `x` is not
/// trumped by `y`.
pub fn find_catalyst(
    x: &ProbVec,
    y: &ProbVec,
    k_max: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    same_dim(x, y)?;
    config.validate()?;
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let obj = objective(x, y);
    if extremes_forbid(x, y) {
        return Ok(SearchResult {
            k: 1,
            z_float: vec![1.0],
            f_value: obj.h(&[1.0]),
            certificate: None,
            status: SearchStatus::NotFound,
            ruled_out_by_extremes: true,
        });
    }
    let mut warm: Vec<Vec<f64>> = Vec::new();
    let mut best: Option<SearchResult> = None;
    for k in 1..=k_max {
        let r = search_dimension(x, y, &obj, k, config, &warm);
        if r.status == SearchStatus::CertifiedFound {
            return Ok(r);
        }
        warm = warm.iter().map(|w| pad_float(w, k + 1)).collect();
        warm.push(pad_float(&r.z_float, k + 1));
        if best.as_ref().is_none_or(|b| r.f_value < b.f_value) {
            best = Some(r);
        }
    }
    Ok(best.expect("k_max >= 1"))
}

/// Certified lower bound on how far the probe ray stays inside the set of
/// vectors trumped by `y` with a catalyst of dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayBound {
    pub k: usize,
    pub t: Rational,
    /// Catalyst of dimension `k` for `t x + (1 - t) w`.
    pub certificate: TrumpCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayProbe {
    /// Far end of the ray; majorizes `y` strictly, so it is never trumped.
    pub x: ProbVec,
    /// Uniform start of the ray.
    pub w: ProbVec,
    /// One entry per dimension `1..=k`, with non-decreasing `t`.
    pub bounds: Vec<RayBound>,
}

/// Probes the ray from the uniform vector `w` toward a vector `x` with
/// `y ≺ x` and `x ⊀ y`, built by moving `Δ = min(y_1 - y_l, y_m - y_d)`
/// from position `m` to position `l` of `y↓` (`l` first index not equal
/// to `y_1`, `m` last index not equal to `y_d`).
///
/// For each catalyst dimension `1..=k` it bisects `t` starting from the
/// bound certified at the previous dimension (a catalyst padded with a zero
/// still works). Dimension 1 is plain majorization and is decided exactly.
/// Only certified points raise a bound; failed probes are not evidence of
/// non-membership.
pub fn ray_probe(y: &ProbVec, k: usize, config: &SearchConfig) -> Result<RayProbe> {
    config.validate()?;
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let class = classify(y);
    if !class.useful {
        return Err(Error::NotUseful);
    }
    let ys = sort_desc(y).into_prob_vec();
    let d = ys.dim();
    let (l, m) = (class.d1, d - class.d2 - 1);
    let delta = (&ys[0] - &ys[l]).min(&ys[m] - &ys[d - 1]);
    let mut xc = ys.components().to_vec();
    xc[l] += &delta;
    xc[m] -= &delta;
    let x = ProbVec::new(xc)?;
    let w = ProbVec::uniform(d);
    let two = Rational::from_integer(2.into());

    let point = |t: &Rational| x.mix(&w, t).expect("same dimension, t in [0, 1]");
    let mut bounds: Vec<RayBound> = Vec::with_capacity(k);

    // Dimension 1: exact bisection against plain majorization.
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let mut cert = trumps_with(&w, y, &ProbVec::basis(1))?
        .ok_or_else(|| Error::VerificationFailed("uniform vector not majorized".into()))?;
    for _ in 0..config.bisection_steps {
        let mid = (&lo + &hi) / &two;
        let p = point(&mid);
        if majorizes(&p, y)?.verdict {
            cert = trumps_with(&p, y, &ProbVec::basis(1))?.expect("majorized");
            lo = mid;
        } else {
            hi = mid;
        }
    }
    bounds.push(RayBound {
        k: 1,
        t: lo.clone(),
        certificate: cert,
    });

    for dim in 2..=k {
        let prev = bounds.last().expect("dimension 1 done");
        let padded = pad_zeros(&prev.certificate.z, dim)?;
        let mut cert = trumps_with(&prev.certificate.x, y, &padded)?
            .ok_or_else(|| Error::VerificationFailed("zero-padded catalyst failed".into()))?;
        let mut lo = prev.t.clone();
        let mut hi = Rational::one();
        let mut warm = vec![padded.to_f64()];
        for _ in 0..config.bisection_steps {
            let mid = (&lo + &hi) / &two;
            let p = point(&mid);
            let obj = objective(&p, y);
            let r = search_dimension(&p, y, &obj, dim, config, &warm);
            match r.certificate {
                Some(c) => {
                    warm.push(c.z.to_f64());
                    cert = c;
                    lo = mid;
                }
                None => hi = mid,
            }
        }
        bounds.push(RayBound {
            k: dim,
            t: lo,
            certificate: cert,
        });
    }

    Ok(RayProbe { x, w, bounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> ProbVec {
        ProbVec::parse_list(s).unwrap()
    }

    fn jp() -> (ProbVec, ProbVec) {
        (pv("0.4,0.4,0.1,0.1"), pv("0.5,0.25,0.25,0"))
    }

    /// Exact oracle for `h`: the negated smallest prefix gap, computed from
    /// a certificate report (or from the raw gaps when not majorized).
    fn exact_h(x: &ProbVec, y: &ProbVec, z: &ProbVec) -> Rational {
        let r = majorizes(&crate::tensor(x, z), &crate::tensor(y, z)).unwrap();
        -r.prefix_gaps.iter().min().unwrap().clone()
    }

    #[test]
    fn h_value_examples() {
        let (x, y) = jp();
        let z = pv("0.6,0.4");
        let h = h_value(&x, &y, &z.to_f64()).unwrap();
        assert!((h - crate::rational::to_f64(&exact_h(&x, &y, &z))).abs() < 1e-12);
        assert!(h.abs() < 1e-12);
        assert_eq!(h_value(&x, &x, &[0.3, 0.7]).unwrap(), 0.0);
        assert!(h_value(&x, &y, &[0.5, 0.5]).unwrap() > 0.0);
        assert!(h_value(&x, &pv("1"), &[1.0]).is_err());
        assert!(h_value(&x, &y, &[0.5, 0.6]).is_err());
    }

    #[test]
    fn h_value_agrees_with_exact_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let d = rng.random_range(2..=5);
            let k = rng.random_range(1..=4);
            let mut draw = |n: usize| {
                let raw: Vec<Rational> = (0..n)
                    .map(|_| Rational::from_integer(rng.random_range(0..10_000u32).into()))
                    .collect();
                crate::normalize(&raw).unwrap()
            };
            let (x, y, z) = (draw(d), draw(d), draw(k));
            let h = h_value(&x, &y, &z.to_f64()).unwrap();
            let e = crate::rational::to_f64(&exact_h(&x, &y, &z));
            assert!((h - e).abs() < 1e-9, "{h} vs {e}");
        }
    }

    #[test]
    fn minimize_finds_classic_catalyst() {
        let (x, y) = jp();
        let r = minimize_f(&x, &y, &SearchConfig::default()).unwrap();
        assert!(r.f_value <= 1e-9, "{r:?}");
        assert_eq!(r.z_float.len(), 2);
        let h = h_value(&x, &y, &r.z_float).unwrap();
        assert_eq!(h, r.f_value);
    }

    #[test]
    fn minimize_trivial_and_hopeless() {
        let x = pv("0.3,0.7");
        let cfg = SearchConfig {
            k: 1,
            ..SearchConfig::default()
        };
        let r = minimize_f(&x, &x, &cfg).unwrap();
        assert_eq!(r.f_value, 0.0);
        assert_eq!(r.z_float, vec![1.0]);

        let x = pv("0.5,0.25,0.25");
        let y = pv("0.4,0.4,0.2");
        for k in 1..=4 {
            let cfg = SearchConfig {
                k,
                ..SearchConfig::default()
            };
            assert!(minimize_f(&x, &y, &cfg).unwrap().f_value > 0.0);
        }
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(
            rationalize(&[0.6000001, 0.3999999], 10).unwrap(),
            pv("3/5,2/5")
        );
        assert_eq!(rationalize(&[1.0], 7).unwrap(), pv("1"));
        let third = 1.0 / 3.0;
        assert_eq!(
            rationalize(&[third + 1e-9, third, third - 1e-9], 100).unwrap(),
            pv("1/3,1/3,1/3")
        );
        assert!(matches!(
            rationalize(&[0.3, 0.3, 0.3, 0.1], 2),
            Err(Error::NotNormalizable(_))
        ));
        assert!(matches!(
            rationalize(&[0.5, 0.4], 10),
            Err(Error::NotNormalizable(_))
        ));
        assert!(matches!(
            rationalize(&[1.5, -0.5], 10),
            Err(Error::NotNormalizable(_))
        ));
    }

    #[test]
    fn find_catalyst_classic_pair() {
        let (x, y) = jp();
        let r = find_catalyst(&x, &y, 2, &SearchConfig::default()).unwrap();
        assert_eq!(r.status, SearchStatus::CertifiedFound);
        let c = r.certificate.unwrap();
        assert_eq!(c.z.dim(), 2);
        assert!(c.recheck());
    }

    #[test]
    fn find_catalyst_majorized_needs_no_catalyst() {
        let x = pv("0.375,0.375,0.125,0.125");
        let y = pv("0.5,0.25,0.25,0");
        let r = find_catalyst(&x, &y, 1, &SearchConfig::default()).unwrap();
        assert_eq!(r.status, SearchStatus::CertifiedFound);
        assert_eq!(r.certificate.unwrap().z, pv("1"));
    }

    #[test]
    fn find_catalyst_extremes_disproof() {
        let x = pv("0.6,0.2,0.2,0");
        let y = pv("0.5,0.25,0.25,0");
        let r = find_catalyst(&x, &y, 5, &SearchConfig::default()).unwrap();
        assert_eq!(r.status, SearchStatus::NotFound);
        assert!(r.ruled_out_by_extremes);
        let r = find_catalyst(
            &pv("0.5,0.3,0.2"),
            &pv("0.5,0.4,0.1"),
            3,
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(!r.ruled_out_by_extremes);
    }

    #[test]
    fn search_is_deterministic() {
        let (x, y) = jp();
        let cfg = SearchConfig {
            k: 3,
            seed: 99,
            ..SearchConfig::default()
        };
        let a = minimize_f(&x, &y, &cfg).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| minimize_f(&x, &y, &cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn ray_probe_dimension_one_is_exact() {
        let y = pv("0.5,0.25,0.25,0");
        let cfg = SearchConfig::default();
        let probe = ray_probe(&y, 1, &cfg).unwrap();
        assert_eq!(probe.x, pv("0.5,0.5,0,0"));
        // On the ray, prefix 2 binds: 1/2 + t/2 <= 3/4, so t <= 1/2, and
        // the remaining prefixes allow all t in [0, 1].
        // Oracle: the largest grid point at most the closed-form supremum.
        let steps = cfg.bisection_steps;
        let scale = Rational::from_integer(BigInt::from(1u64 << steps));
        let sup = Rational::new(1.into(), 2.into());
        let expected = (&sup * &scale).floor() / &scale;
        assert_eq!(probe.bounds[0].t, expected);
        assert!(probe.bounds[0].certificate.recheck());
    }

    #[test]
    fn ray_probe_rejects_useless_target() {
        assert_eq!(
            ray_probe(&pv("0.5,0.5,0,0"), 2, &SearchConfig::default()),
            Err(Error::NotUseful)
        );
    }

    #[test]
    fn config_validation() {
        let bad = [
            SearchConfig {
                k: 0,
                ..SearchConfig::default()
            },
            SearchConfig {
                restarts: 0,
                ..SearchConfig::default()
            },
            SearchConfig {
                float_tolerance: 0.0,
                ..SearchConfig::default()
            },
            SearchConfig {
                max_denominator: 1,
                ..SearchConfig::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err());
        }
        assert_eq!(
            SearchConfig {
                max_denominator: 500,
                ..SearchConfig::default()
            }
            .ladder(),
            vec![10, 100, 500]
        );
    }
}

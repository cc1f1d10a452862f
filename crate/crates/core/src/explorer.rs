//! Labeled samples of the simplex around a target `y`, for plotting how
//! the majorized set grows once catalysts are allowed.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::majorization::{majorizes, sample_s};
use crate::rational::{to_ratio_string, Rational};
use crate::report::CertificateDocument;
use crate::solver::{extremes_forbid, objective, pad_float, search_dimension, SearchConfig};
use crate::trumping::{
    boundary_witness, classify, separating_example, trumps_with, TrumpCertificate,
};
use crate::vector::{pad_zeros, sort_desc, ProbVec};

/// Grid used for exact uniform draws from the simplex.
const SIMPLEX_GRID: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleOrigin {
    /// A constructed point injected into every batch.
    Landmark(&'static str),
    Uniform,
    NearBoundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionRecord {
    /// Sorted non-increasingly.
    pub x: ProbVec,
    pub origin: SampleOrigin,
    pub in_s: bool,
    /// Tight prefixes of `x ≺ y` (empty unless `in_s`).
    pub tight_indices: Vec<usize>,
    /// Smallest `k <= k_max` with a certified catalyst.
    pub catalyst_dim_found: Option<usize>,
    pub certificate: Option<TrumpCertificate>,
    /// Best search value per `k = 1..=k_max`. `None` where no search was
    /// needed because the extreme components already rule out catalysis.
    pub f_values: Vec<Option<f64>>,
}

fn uniform_on_simplex(d: usize, rng: &mut ChaCha8Rng) -> ProbVec {
    let mut cuts: Vec<u64> = (0..d - 1)
        .map(|_| rng.random_range(0..=SIMPLEX_GRID))
        .collect();
    cuts.push(0);
    cuts.push(SIMPLEX_GRID);
    cuts.sort_unstable();
    let grid = Rational::from_integer(SIMPLEX_GRID.into());
    ProbVec::from_trusted(
        cuts.windows(2)
            .map(|w| Rational::from_integer((w[1] - w[0]).into()) / &grid)
            .collect(),
    )
}

/// A point of the majorization polytope pulled toward `y`, then nudged by
/// a small transfer between two random coordinates.
fn near_boundary(y: &ProbVec, rng: &mut ChaCha8Rng) -> ProbVec {
    let d = y.dim();
    let s = sample_s(y, 1, rng.random()).pop().expect("one sample");
    let lambda = Rational::new(rng.random_range(500..=1000u32).into(), 1000u32.into());
    let mut v = y
        .mix(&s, &lambda)
        .expect("same dimension")
        .into_components();
    if d > 1 {
        let i = rng.random_range(0..d);
        let j = (i + rng.random_range(1..d)) % d;
        let eps = Rational::new(rng.random_range(0..=50u32).into(), 1000u32.into());
        let eps = eps.min(v[j].clone());
        v[i] += &eps;
        v[j] -= &eps;
    }
    ProbVec::from_trusted(v)
}

fn landmarks(y: &ProbVec) -> Vec<(&'static str, ProbVec)> {
    let mut out = Vec::new();
    if classify(y).useful {
        if let Ok(b) = boundary_witness(y) {
            out.push(("boundary_witness", b));
        }
        if let Ok(w) = separating_example(y) {
            out.push(("separating_example", w.x_prime));
        }
    }
    let classic_y = ProbVec::parse_list("0.5,0.25,0.25,0").expect("valid literal");
    if sort_desc(y).as_prob_vec() == &classic_y {
        out.push((
            "catalysis_example",
            ProbVec::parse_list("0.4,0.4,0.1,0.1").expect("valid literal"),
        ));
    }
    out
}

fn label(
    x: ProbVec,
    origin: SampleOrigin,
    y: &ProbVec,
    k_max: usize,
    config: &SearchConfig,
) -> Result<RegionRecord> {
    let report = majorizes(&x, y)?;
    let in_s = report.verdict;
    let tight_indices = if in_s {
        report.tight_indices
    } else {
        Vec::new()
    };
    let forbidden = extremes_forbid(&x, y);
    let obj = objective(&x, y);
    let mut f_values = Vec::with_capacity(k_max);
    let mut found: Option<(usize, TrumpCertificate)> = None;
    let mut warm: Vec<Vec<f64>> = Vec::new();

    for k in 1..=k_max {
        if let Some((_, cert)) = &found {
            // A catalyst padded with zeros still works in higher dimension.
            let z = pad_zeros(&cert.z, k)?;
            f_values.push(Some(obj.h(&z.to_f64())));
            continue;
        }
        if forbidden && k > 1 {
            f_values.push(None);
            continue;
        }
        let r = search_dimension(&x, y, &obj, k, config, &warm);
        f_values.push(Some(r.f_value));
        if let Some(c) = r.certificate {
            found = Some((k, c));
        } else {
            warm = warm.iter().map(|w| pad_float(w, k + 1)).collect();
            warm.push(pad_float(&r.z_float, k + 1));
        }
    }

    let (catalyst_dim_found, certificate) = match found {
        Some((k, c)) => (Some(k), Some(c)),
        None => (None, None),
    };
    Ok(RegionRecord {
        x,
        origin,
        in_s,
        tight_indices,
        catalyst_dim_found,
        certificate,
        f_values,
    })
}

/// Draws `n` labeled points for target `y`.
///
/// Landmarks come first (the boundary witness and separating example when
/// catalysis is useful for `y`, and the classic catalysis point when `y` is
/// its target). The remainder is split between exact uniform draws from
/// the simplex and near-boundary points of the majorization polytope. Each
/// point is labeled with exact `x ≺ y` and with certified catalyst search
/// for `k = 1..=k_max`. Output order is the draw order.
pub fn sample_region(
    y: &ProbVec,
    k_max: usize,
    n: usize,
    seed: u64,
    config: &SearchConfig,
) -> Result<Vec<RegionRecord>> {
    if n < 1 || k_max < 1 {
        return Err(Error::InvalidArgument(
            "n and k_max must be at least 1".into(),
        ));
    }
    config.validate()?;
    let mut points: Vec<(ProbVec, SampleOrigin)> = landmarks(y)
        .into_iter()
        .take(n)
        .map(|(name, v)| (v, SampleOrigin::Landmark(name)))
        .collect();
    let remaining = n - points.len();
    let n_uniform = remaining.div_ceil(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..remaining {
        if i < n_uniform {
            points.push((uniform_on_simplex(y.dim(), &mut rng), SampleOrigin::Uniform));
        } else {
            points.push((near_boundary(y, &mut rng), SampleOrigin::NearBoundary));
        }
    }

    points
        .into_par_iter()
        .map(|(x, origin)| label(sort_desc(&x).into_prob_vec(), origin, y, k_max, config))
        .collect()
}

fn sidecar_path(csv_path: &Path, index: usize) -> PathBuf {
    let stem = csv_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "region".into());
    csv_path.with_file_name(format!("{stem}.cert{index}.json"))
}

/// Writes the records as CSV plus one JSON certificate sidecar per
/// certified record, next to `csv_path`.
///
/// The first line is a `#` comment describing the sampler; the header row
/// follows: `x1..xd, in_S, catalyst_dim_found, f_1..f_kmax, certificate`.
pub fn write_region_csv(
    csv_path: &Path,
    y: &ProbVec,
    records: &[RegionRecord],
    k_max: usize,
    seed: u64,
) -> Result<()> {
    let d = y.dim();
    let mut file = File::create(csv_path)?;
    writeln!(
        file,
        "# y=({}) seed={seed} k_max={k_max}; sampler: landmarks first, then half exact uniform \
         draws on the 1/{SIMPLEX_GRID} simplex grid, half mixtures of y with a random point of \
         its majorization polytope nudged by a transfer of at most 0.05",
        y.to_strings().join(" ")
    )?;
    let mut w = csv::Writer::from_writer(file);
    let mut header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    header.push("in_S".into());
    header.push("catalyst_dim_found".into());
    header.extend((1..=k_max).map(|k| format!("f_{k}")));
    header.push("certificate".into());
    w.write_record(&header)?;

    for (index, r) in records.iter().enumerate() {
        let mut row: Vec<String> = r.x.iter().map(to_ratio_string).collect();
        row.push(r.in_s.to_string());
        row.push(
            r.catalyst_dim_found
                .map(|k| k.to_string())
                .unwrap_or_default(),
        );
        for k in 0..k_max {
            row.push(
                r.f_values
                    .get(k)
                    .copied()
                    .flatten()
                    .map(|f| f.to_string())
                    .unwrap_or_default(),
            );
        }
        match &r.certificate {
            Some(c) => {
                let path = sidecar_path(csv_path, index);
                let doc = CertificateDocument::from(c);
                std::fs::write(&path, serde_json::to_string_pretty(&doc)?)?;
                row.push(
                    path.file_name()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_default(),
                );
            }
            None => row.push(String::new()),
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Re-checks a record's certificate against `y`.
pub fn record_is_sound(r: &RegionRecord, y: &ProbVec) -> bool {
    match &r.certificate {
        Some(c) => c.x == r.x && &c.y == y && matches!(trumps_with(&c.x, y, &c.z), Ok(Some(_))),
        None => r.catalyst_dim_found.is_none() && !r.in_s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(s: &str) -> ProbVec {
        ProbVec::parse_list(s).unwrap()
    }

    fn cheap() -> SearchConfig {
        SearchConfig {
            restarts: 6,
            max_iters: 50,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn single_record_is_the_boundary_witness() {
        let y = pv("0.5,0.25,0.25,0");
        let recs = sample_region(&y, 2, 1, 0, &cheap()).unwrap();
        assert_eq!(recs.len(), 1);
        let r = &recs[0];
        assert_eq!(r.origin, SampleOrigin::Landmark("boundary_witness"));
        assert_eq!(r.x, pv("0.375,0.375,0.125,0.125"));
        assert!(r.in_s);
        assert_eq!(r.tight_indices, vec![2]);
        assert_eq!(r.catalyst_dim_found, Some(1));
        assert_eq!(r.f_values.len(), 2);
    }

    #[test]
    fn uniform_target_admits_only_itself() {
        let y = ProbVec::uniform(3);
        let recs = sample_region(&y, 2, 40, 3, &cheap()).unwrap();
        for r in &recs {
            let is_y = r.x == y;
            assert_eq!(r.in_s, is_y);
            assert_eq!(r.catalyst_dim_found.is_some(), is_y);
            assert!(record_is_sound(r, &y));
        }
    }

    #[test]
    fn draws_are_valid_and_seeded() {
        let y = pv("0.4,0.3,0.2,0.1");
        let a = sample_region(&y, 1, 30, 9, &cheap()).unwrap();
        let b = sample_region(&y, 1, 30, 9, &cheap()).unwrap();
        assert_eq!(a, b);
        for r in &a {
            assert_eq!(r.x.dim(), 4);
            assert!(r.x.windows(2).all(|w| w[0] >= w[1]));
            assert!(record_is_sound(r, &y));
        }
        assert!(a.iter().any(|r| r.origin == SampleOrigin::Uniform));
        assert!(a.iter().any(|r| r.origin == SampleOrigin::NearBoundary));
    }

    #[test]
    fn csv_and_sidecars() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("region.csv");
        let y = pv("0.5,0.25,0.25,0");
        let recs = sample_region(&y, 2, 6, 1, &cheap()).unwrap();
        write_region_csv(&path, &y, &recs, 2, 1).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# y=("));
        assert_eq!(
            lines.next().unwrap(),
            "x1,x2,x3,x4,in_S,catalyst_dim_found,f_1,f_2,certificate"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..4], &["3/8", "3/8", "1/8", "1/8"]);
        assert_eq!(first[4], "true");
        let sidecar = dir.path().join(first[8]);
        let doc: CertificateDocument =
            serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
        assert!(doc.verify().is_ok());
    }
}

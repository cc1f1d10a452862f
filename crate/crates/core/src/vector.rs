//! Probability vectors and the elementary operations on them.

use std::fmt;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_f64, to_ratio_string, Rational};

/// Nonnegative rational components summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbVec(Vec<Rational>);

impl ProbVec {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty);
        }
        check_nonnegative(&components)?;
        let sum: Rational = components.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotNormalized {
                sum: to_ratio_string(&sum),
            });
        }
        Ok(ProbVec(components))
    }

    /// Parses a comma-separated list such as `"0.4,0.4,0.1,0.1"` or
    /// `"1/2, 1/3, 1/6"`.
    pub fn parse_list(list: &str) -> Result<Self> {
        ProbVec::new(parse_components(list)?)
    }

    pub fn from_strs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let comps = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ProbVec::new(comps)
    }

    /// The point `(1/d, ..., 1/d)`.
    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0, "uniform vector needs a positive dimension");
        let c = Rational::new(1.into(), (dim as u64).into());
        ProbVec(vec![c; dim])
    }

    /// `(1, 0, ..., 0)`.
    pub fn basis(dim: usize) -> Self {
        assert!(dim > 0, "basis vector needs a positive dimension");
        let mut v = vec![Rational::zero(); dim];
        v[0] = Rational::one();
        ProbVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Rational> {
        self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(to_ratio_string).collect()
    }

    /// `sum |self_i - other_i|`.
    pub fn l1_distance(&self, other: &ProbVec) -> Result<Rational> {
        same_dim(self, other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }

    /// `t * self + (1 - t) * other` for `t` in `[0, 1]`.
    pub fn mix(&self, other: &ProbVec, t: &Rational) -> Result<ProbVec> {
        same_dim(self, other)?;
        if t.is_negative() || t > &Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {} outside [0, 1]",
                to_ratio_string(t)
            )));
        }
        let s = Rational::one() - t;
        Ok(ProbVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * t + b * &s)
                .collect(),
        ))
    }

    /// Nonzero components only (order preserved). Never empty.
    pub fn support(&self) -> ProbVec {
        ProbVec(self.0.iter().filter(|c| !c.is_zero()).cloned().collect())
    }

    /// Builds without validation. Callers guarantee the invariants.
    pub(crate) fn from_trusted(components: Vec<Rational>) -> Self {
        debug_assert!(components.iter().all(|c| !c.is_negative()));
        debug_assert!(components.iter().sum::<Rational>().is_one());
        ProbVec(components)
    }
}

impl Deref for ProbVec {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for ProbVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A probability vector whose components are non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SortedProbVec(ProbVec);

impl SortedProbVec {
    /// Accepts `v` only if it is already sorted non-increasingly.
    pub fn new(v: ProbVec) -> Result<Self> {
        if v.0.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::PreconditionViolated(
                "components are not in non-increasing order".into(),
            ));
        }
        Ok(SortedProbVec(v))
    }

    pub fn as_prob_vec(&self) -> &ProbVec {
        &self.0
    }

    pub fn into_prob_vec(self) -> ProbVec {
        self.0
    }

    pub fn first(&self) -> &Rational {
        &self.0 .0[0]
    }

    pub fn last(&self) -> &Rational {
        self.0 .0.last().expect("probability vectors are nonempty")
    }
}

impl Deref for SortedProbVec {
    type Target = ProbVec;
    fn deref(&self) -> &ProbVec {
        &self.0
    }
}

pub(crate) fn parse_components(list: &str) -> Result<Vec<Rational>> {
    list.split(',').map(parse_rational).collect()
}

fn check_nonnegative(components: &[Rational]) -> Result<()> {
    if let Some((index, c)) = components.iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeEntry {
            index,
            value: to_ratio_string(c),
        });
    }
    Ok(())
}

pub(crate) fn same_dim(a: &[Rational], b: &[Rational]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Divides `raw` by its sum.
pub fn normalize(raw: &[Rational]) -> Result<ProbVec> {
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    check_nonnegative(raw)?;
    let sum: Rational = raw.iter().sum();
    if sum.is_zero() {
        return Err(Error::AllZero);
    }
    Ok(ProbVec(raw.iter().map(|c| c / &sum).collect()))
}

/// Non-increasing rearrangement. Ties keep their original relative order.
pub fn sort_desc(v: &ProbVec) -> SortedProbVec {
    let mut c = v.0.clone();
    // `sort_by` is stable, so equal values stay in index order.
    c.sort_by(|a, b| b.cmp(a));
    SortedProbVec(ProbVec(c))
}

/// Kronecker product: component `(i, j)` is `x_i * z_j`, `i` major.
pub fn tensor(x: &ProbVec, z: &ProbVec) -> ProbVec {
    let mut out = Vec::with_capacity(x.dim() * z.dim());
    for xi in &x.0 {
        for zj in &z.0 {
            out.push(xi * zj);
        }
    }
    ProbVec(out)
}

/// Appends zeros up to dimension `d`.
pub fn pad_zeros(v: &ProbVec, d: usize) -> Result<ProbVec> {
    if d < v.dim() {
        return Err(Error::TargetTooSmall {
            target: d,
            current: v.dim(),
        });
    }
    let mut c = v.0.clone();
    c.resize(d, Rational::zero());
    Ok(ProbVec(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pv(s: &str) -> ProbVec {
        ProbVec::parse_list(s).unwrap()
    }

    #[test]
    fn new_rejects_bad_vectors() {
        assert_eq!(ProbVec::new(vec![]), Err(Error::Empty));
        assert!(matches!(
            ProbVec::parse_list("0.5,0.6"),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbVec::parse_list("1.5,-0.5"),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let half = q(1, 2);
        let raw = vec![q(1, 1), half.clone(), q(1, 4)];
        assert_eq!(normalize(&raw).unwrap(), pv("4/7,2/7,1/7"));
        assert_eq!(normalize(&[q(1, 1), q(1, 1)]).unwrap(), pv("1/2,1/2"));
        assert_eq!(
            normalize(&[q(3, 1), q(2, 1), q(1, 1), q(0, 1)]).unwrap(),
            pv("1/2,1/3,1/6,0")
        );
        assert_eq!(normalize(&[q(0, 1), q(0, 1)]), Err(Error::AllZero));
        assert!(matches!(
            normalize(&[q(1, 1), q(-1, 3)]),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
    }

    #[test]
    fn sort_desc_examples() {
        assert_eq!(
            sort_desc(&pv("0.1,0.4,0.4,0.1")).as_prob_vec(),
            &pv("0.4,0.4,0.1,0.1")
        );
        let s = pv("0.5,0.3,0.2");
        assert_eq!(sort_desc(&s).as_prob_vec(), &s);
        let xz = tensor(&pv("0.4,0.4,0.1,0.1"), &pv("0.6,0.4"));
        assert_eq!(
            sort_desc(&xz).as_prob_vec(),
            &pv("0.24,0.24,0.16,0.16,0.06,0.06,0.04,0.04")
        );
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            tensor(&pv("0.4,0.4,0.1,0.1"), &pv("0.6,0.4")),
            pv("0.24,0.16,0.24,0.16,0.06,0.04,0.06,0.04")
        );
        let x = pv("0.4,0.4,0.1,0.1");
        assert_eq!(tensor(&x, &pv("1")), x);
        assert_eq!(tensor(&pv("1/2,1/2"), &pv("1/2,1/2")), ProbVec::uniform(4));
    }

    #[test]
    fn pad_examples() {
        assert_eq!(pad_zeros(&pv("0.5,0.5"), 4).unwrap(), pv("0.5,0.5,0,0"));
        let v = pv("0.2,0.8");
        assert_eq!(pad_zeros(&v, 2).unwrap(), v);
        assert_eq!(pad_zeros(&pv("1"), 3).unwrap(), pv("1,0,0"));
        assert_eq!(
            pad_zeros(&v, 1),
            Err(Error::TargetTooSmall {
                target: 1,
                current: 2
            })
        );
    }

    #[test]
    fn sorted_wrapper_checks_order() {
        assert!(SortedProbVec::new(pv("0.2,0.8")).is_err());
        let s = SortedProbVec::new(pv("0.8,0.2")).unwrap();
        assert_eq!(s.first(), &q(4, 5));
        assert_eq!(s.last(), &q(1, 5));
    }

    #[test]
    fn mix_and_distance() {
        let a = pv("1,0");
        let b = pv("0,1");
        let m = a.mix(&b, &q(1, 4)).unwrap();
        assert_eq!(m, pv("1/4,3/4"));
        assert_eq!(a.l1_distance(&b).unwrap(), q(2, 1));
        assert!(a.mix(&b, &q(5, 4)).is_err());
    }
}

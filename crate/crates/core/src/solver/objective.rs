//! Floating-point evaluation of the minimax objective and the exact line
//! search used by the descent.
//!
//! For fixed `x` and `y`, `h(z)` is the largest prefix-sum excess of
//! `(x ⊗ z)↓` over `(y ⊗ z)↓`. Along a segment `z + t * dir` every product
//! is affine in `t`, so the sorted order changes only where two products
//! cross. Between consecutive crossings each prefix difference is affine
//! and `h` is their maximum, a convex piecewise-linear function.

#[derive(Debug, Clone)]
pub(crate) struct Objective {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Objective {
    pub(crate) fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        debug_assert_eq!(x.len(), y.len());
        Objective { x, y }
    }

    /// `max_{1 <= j < n} sum_{i<=j} ((x⊗z)↓_i - (y⊗z)↓_i)`, or 0 when the
    /// tensor product has a single component.
    pub(crate) fn h(&self, z: &[f64]) -> f64 {
        let n = self.x.len() * z.len();
        if n <= 1 {
            return 0.0;
        }
        let px = sorted_products(&self.x, z);
        let py = sorted_products(&self.y, z);
        let mut acc = 0.0;
        let mut best = f64::NEG_INFINITY;
        for j in 0..n - 1 {
            acc += px[j] - py[j];
            best = best.max(acc);
        }
        best
    }

    /// Minimizes `h(z + t * dir)` over the feasible `t` (all coordinates
    /// stay nonnegative). Returns `(t, value)`.
    pub(crate) fn line_search(&self, z: &[f64], dir: &[f64]) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (&zc, &dc) in z.iter().zip(dir) {
            if dc > 0.0 {
                lo = lo.max(-zc / dc);
            } else if dc < 0.0 {
                hi = hi.min(zc / -dc);
            }
        }
        if !(lo.is_finite() && hi.is_finite()) || hi - lo <= 1e-15 {
            return None;
        }

        let ex = affine_entries(&self.x, z, dir);
        let ey = affine_entries(&self.y, z, dir);
        let mut cuts = vec![lo, hi];
        crossings(&ex, lo, hi, &mut cuts);
        crossings(&ey, lo, hi, &mut cuts);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);

        let n = ex.len();
        if n <= 1 {
            return Some((0.0, 0.0));
        }
        let mut lines = Vec::with_capacity(n - 1);
        let mut best: Option<(f64, f64)> = None;
        let mut ox = ex.clone();
        let mut oy = ey.clone();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= 0.0 {
                continue;
            }
            let mid = 0.5 * (a + b);
            sort_at(&mut ox, mid);
            sort_at(&mut oy, mid);
            lines.clear();
            let (mut ca, mut cs) = (0.0, 0.0);
            for j in 0..n - 1 {
                ca += ox[j].0 - oy[j].0;
                cs += ox[j].1 - oy[j].1;
                lines.push((ca, cs));
            }
            let (t, v) = min_of_max(&lines, a, b);
            let better = match best {
                None => true,
                Some((bt, bv)) => v < bv || (v == bv && t.abs() < bt.abs()),
            };
            if better {
                best = Some((t, v));
            }
        }
        best
    }
}

fn sorted_products(v: &[f64], z: &[f64]) -> Vec<f64> {
    let mut p: Vec<f64> = v
        .iter()
        .flat_map(|a| z.iter().map(move |b| a * b))
        .collect();
    p.sort_unstable_by(|a, b| b.total_cmp(a));
    p
}

/// Each product `v_i (z_c + t dir_c)` as `(intercept, slope)`.
fn affine_entries(v: &[f64], z: &[f64], dir: &[f64]) -> Vec<(f64, f64)> {
    v.iter()
        .flat_map(|&a| z.iter().zip(dir).map(move |(&zc, &dc)| (a * zc, a * dc)))
        .collect()
}

fn crossings(entries: &[(f64, f64)], lo: f64, hi: f64, out: &mut Vec<f64>) {
    for (i, &(ua, sa)) in entries.iter().enumerate() {
        for &(ub, sb) in &entries[i + 1..] {
            let ds = sa - sb;
            if ds.abs() <= 1e-300 {
                continue;
            }
            let t = (ub - ua) / ds;
            if t > lo && t < hi {
                out.push(t);
            }
        }
    }
}

fn sort_at(entries: &mut [(f64, f64)], t: f64) {
    entries.sort_unstable_by(|a, b| (b.0 + b.1 * t).total_cmp(&(a.0 + a.1 * t)));
}

/// Minimum over `[a, b]` of `max_j (A_j + B_j t)`.
///
/// Walks right from `a` along the upper envelope: the right derivative at
/// `t` is the largest slope among the active lines; while it is negative,
/// jump to the nearest point where a steeper line overtakes the envelope.
/// Slopes strictly increase, so there are at most `lines.len()` jumps.
fn min_of_max(lines: &[(f64, f64)], a: f64, b: f64) -> (f64, f64) {
    let eval = |t: f64| {
        lines
            .iter()
            .map(|&(c, s)| c + s * t)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut t = a;
    for _ in 0..=lines.len() + 1 {
        let vmax = eval(t);
        let tol = 1e-14 * (1.0 + vmax.abs());
        let (ac, slope) = lines
            .iter()
            .filter(|&&(c, s)| c + s * t >= vmax - tol)
            .fold((0.0, f64::NEG_INFINITY), |acc, &(c, s)| {
                if s > acc.1 {
                    (c, s)
                } else {
                    acc
                }
            });
        if slope >= 0.0 {
            return (t, vmax);
        }
        let next = lines
            .iter()
            .filter(|&&(_, s)| s > slope)
            .map(|&(c, s)| (ac - c) / (s - slope))
            .filter(|&tc| tc > t)
            .fold(f64::INFINITY, f64::min);
        if next >= b {
            return (b, eval(b));
        }
        t = next;
    }
    (t, eval(t))
}

//! The δ-hypercube neighborhood and its lower/higher area-ratio estimator,
//! the per-point valley test against the sphere benchmark, valley width α,
//! narrowness β, and the gradient-alignment diagnostic.
//!
//! Areas are estimated by Monte-Carlo counts; the cube volume cancels in
//! the ratio, so counts are used directly. A point is a tie when its value
//! is within `1e-12` absolute of the center value; ties belong to neither
//! the lower nor the higher set (both sets are open and their boundary has
//! measure zero).

use std::fmt;

use crate::error::{Error, Result};
use crate::landscape::{gradient, Landscape, Point};
use crate::sampling::{substream, RngStream};
use crate::scalar::{real, Real};

/// Absolute tolerance under which two fitness values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// The axis-aligned hypercube of half-width δ around a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Neighborhood<F> {
    center: Point<F>,
    delta: F,
}

impl<F: Real> Neighborhood<F> {
    pub fn new(center: Point<F>, delta: F) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::Input(format!("non-finite center {center}")));
        }
        if !(delta > F::zero()) || !delta.is_finite() {
            return Err(Error::Config(format!("delta {delta} must be finite and > 0")));
        }
        Ok(Self { center, delta })
    }

    pub fn center(&self) -> &Point<F> {
        &self.center
    }

    pub fn delta(&self) -> F {
        self.delta
    }

    /// `[center_i - delta, center_i + delta]`.
    pub fn bounds(&self, axis: usize) -> (F, F) {
        (self.center[axis] - self.delta, self.center[axis] + self.delta)
    }

    /// One uniform sample, coordinate by coordinate.
    #[inline]
    fn sample_into(&self, stream: &mut RngStream, out: &mut [F]) {
        for (axis, slot) in out.iter_mut().enumerate() {
            let (lo, hi) = self.bounds(axis);
            *slot = stream.uniform(lo, hi);
        }
    }
}

/// A lower/higher area ratio, which can degenerate at extrema.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatioValue<F> {
    Finite(F),
    /// Lower points seen but no higher ones (local maximum territory).
    Infinite,
    /// Neither lower nor higher points (plateau at the tie tolerance).
    Undefined,
}

impl<F: Real> RatioValue<F> {
    pub fn as_finite(&self) -> Option<F> {
        match self {
            RatioValue::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Strict comparison where finite values order normally and anything
    /// finite is below `Infinite`; comparisons involving `Undefined` carry
    /// no information and return `None`.
    pub fn strictly_less(&self, other: &Self) -> Option<bool> {
        use RatioValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(a < b),
            (Finite(_), Infinite) => Some(true),
            (Infinite, _) => Some(false),
            (Undefined, _) | (_, Undefined) => None,
        }
    }
}

impl<F: Real> fmt::Display for RatioValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioValue::Finite(v) => write!(f, "{v}"),
            RatioValue::Infinite => write!(f, "inf"),
            RatioValue::Undefined => write!(f, "undefined"),
        }
    }
}

/// Monte-Carlo estimate of the lower/higher area ratio in a δ-cube.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioEstimate<F> {
    pub lower: u64,
    pub higher: u64,
    pub ties: u64,
    pub samples: u64,
    pub ratio: RatioValue<F>,
    /// Delta-method standard error; only meaningful for finite ratios.
    pub std_error: Option<F>,
}

impl<F: Real> RatioEstimate<F> {
    fn from_counts(lower: u64, higher: u64, ties: u64, samples: u64) -> Self {
        debug_assert_eq!(lower + higher + ties, samples);
        let ratio = match (lower, higher) {
            (0, 0) => RatioValue::Undefined,
            (_, 0) => RatioValue::Infinite,
            (l, h) => RatioValue::Finite(real::<F>(l as f64 / h as f64)),
        };
        let std_error = ratio.as_finite().map(|r| {
            // delta method for L/H under multinomial (L, H, ties) counts:
            // Var(L/H) ~ (L/H)^2 [ (1-pl)/L + (1-ph)/H + 2/n ]
            let n = samples as f64;
            let l = lower as f64;
            let h = higher as f64;
            let var_rel = if l == 0.0 {
                0.0
            } else {
                (1.0 - l / n) / l + (1.0 - h / n) / h + 2.0 / n
            };
            r * real::<F>(var_rel.sqrt())
        });
        Self { lower, higher, ties, samples, ratio, std_error }
    }
}

/// Draws `samples` uniform points in the δ-cube around `x` and classifies
/// each as strictly lower, strictly higher, or tied against `f(x)`.
pub fn estimate_area_ratio<F: Real>(
    landscape: &Landscape<F>,
    x: &Point<F>,
    delta: F,
    samples: u64,
    stream: &mut RngStream,
) -> Result<RatioEstimate<F>> {
    if samples < 1 {
        return Err(Error::Config("sample budget must be >= 1".into()));
    }
    let hood = Neighborhood::new(x.clone(), delta)?;
    let threshold = landscape.evaluate(x)?;
    let tie_tol = real::<F>(TIE_TOLERANCE);
    let mut probe = vec![F::zero(); x.dim()];
    let (mut lower, mut higher, mut ties) = (0u64, 0u64, 0u64);
    for _ in 0..samples {
        hood.sample_into(stream, &mut probe);
        let diff = landscape.value(&probe) - threshold;
        if diff.abs() <= tie_tol {
            ties += 1;
        } else if diff < F::zero() {
            lower += 1;
        } else {
            higher += 1;
        }
    }
    Ok(RatioEstimate::from_counts(lower, higher, ties, samples))
}

/// Per-point valley verdict against the sphere benchmark.
#[derive(Clone, Debug)]
pub struct ValleyTestResult<F> {
    pub point: Point<F>,
    pub delta: F,
    pub tested: RatioEstimate<F>,
    pub benchmark: RatioEstimate<F>,
    /// True iff the tested ratio is strictly below the benchmark ratio.
    pub verdict: bool,
    /// `benchmark - tested` when both ratios are finite.
    pub margin: Option<F>,
}

/// Tests the valley inequality at `x`: the landscape's area ratio must be
/// strictly smaller than the sphere benchmark's ratio at the same point,
/// same δ, and the same sample draws (paired streams cancel common noise).
pub fn valley_point_test<F: Real>(
    landscape: &Landscape<F>,
    x: &Point<F>,
    delta: F,
    samples: u64,
    seed: u64,
) -> Result<ValleyTestResult<F>> {
    valley_point_test_with(landscape, x, delta, samples, &substream(seed, 0))
}

/// As [`valley_point_test`], drawing from clones of the given stream.
pub fn valley_point_test_with<F: Real>(
    landscape: &Landscape<F>,
    x: &Point<F>,
    delta: F,
    samples: u64,
    stream: &RngStream,
) -> Result<ValleyTestResult<F>> {
    let sphere = Landscape::sphere(landscape.dim());
    let tested = estimate_area_ratio(landscape, x, delta, samples, &mut stream.clone())?;
    let benchmark = estimate_area_ratio(&sphere, x, delta, samples, &mut stream.clone())?;
    if tested.ratio == RatioValue::Undefined && benchmark.ratio == RatioValue::Undefined {
        return Err(Error::Indeterminate(format!(
            "both ratios undefined at {x} with delta {delta}"
        )));
    }
    // a one-sided undefined ratio cannot certify the strict inequality
    let verdict = tested.ratio.strictly_less(&benchmark.ratio).unwrap_or(false);
    let margin = match (tested.ratio.as_finite(), benchmark.ratio.as_finite()) {
        (Some(t), Some(b)) => Some(b - t),
        _ => None,
    };
    Ok(ValleyTestResult { point: x.clone(), delta, tested, benchmark, verdict, margin })
}

/// Narrowness β: the maximum per-point area ratio over the supplied
/// valley points.
#[derive(Clone, Debug)]
pub struct NarrownessReport<F> {
    pub beta: RatioValue<F>,
    /// Index (into the supplied points) attaining β.
    pub argmax: Option<usize>,
    pub per_point: Vec<RatioEstimate<F>>,
}

/// Estimates β over `points` with one substream per point (id = point
/// index). An infinite per-point ratio makes β infinite; undefined
/// per-point ratios are skipped.
pub fn narrowness_beta<F: Real>(
    landscape: &Landscape<F>,
    points: &[Point<F>],
    delta: F,
    samples: u64,
    seed: u64,
) -> Result<NarrownessReport<F>> {
    if points.is_empty() {
        return Err(Error::Config("narrowness needs at least one valley point".into()));
    }
    let mut per_point = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let mut stream = substream(seed, i as u64);
        per_point.push(estimate_area_ratio(landscape, p, delta, samples, &mut stream)?);
    }
    let mut beta = RatioValue::Undefined;
    let mut argmax = None;
    for (i, est) in per_point.iter().enumerate() {
        match (est.ratio, beta) {
            (RatioValue::Infinite, _) => {
                return Ok(NarrownessReport {
                    beta: RatioValue::Infinite,
                    argmax: Some(i),
                    per_point,
                });
            }
            (RatioValue::Finite(v), RatioValue::Finite(best)) => {
                if v > best {
                    beta = RatioValue::Finite(v);
                    argmax = Some(i);
                }
            }
            (RatioValue::Finite(v), RatioValue::Undefined) => {
                beta = RatioValue::Finite(v);
                argmax = Some(i);
            }
            (RatioValue::Undefined, _) => {}
            (_, RatioValue::Infinite) => unreachable!("infinite beta returns early"),
        }
    }
    Ok(NarrownessReport { beta, argmax, per_point })
}

/// One candidate δ of a width search.
#[derive(Clone, Debug)]
pub struct WidthRow<F> {
    pub delta: F,
    /// Per-point verdicts in point order.
    pub verdicts: Vec<bool>,
    pub all_pass: bool,
}

/// Result of the width-α search over a candidate δ grid.
#[derive(Clone, Debug)]
pub struct WidthReport<F> {
    /// Largest candidate δ such that it and every smaller candidate pass
    /// the valley test at all points; `None` when the smallest fails.
    pub alpha: Option<F>,
    pub rows: Vec<WidthRow<F>>,
}

/// Runs the valley test for every (δ candidate, valley point) pair.
/// Substream id is `delta_index * points.len() + point_index`, so results
/// are independent of evaluation order.
pub fn width_alpha<F: Real>(
    landscape: &Landscape<F>,
    points: &[Point<F>],
    deltas: &[F],
    samples: u64,
    seed: u64,
) -> Result<WidthReport<F>> {
    if deltas.is_empty() {
        return Err(Error::Config("empty delta candidate list".into()));
    }
    if points.is_empty() {
        return Err(Error::Config("width search needs at least one valley point".into()));
    }
    if deltas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Config("delta candidates must be strictly ascending".into()));
    }
    if !(deltas[0] > F::zero()) {
        return Err(Error::Config("delta candidates must be > 0".into()));
    }
    let mut rows = Vec::with_capacity(deltas.len());
    for (di, &delta) in deltas.iter().enumerate() {
        let mut verdicts = Vec::with_capacity(points.len());
        for (pi, p) in points.iter().enumerate() {
            let id = (di * points.len() + pi) as u64;
            let result =
                valley_point_test_with(landscape, p, delta, samples, &substream(seed, id))?;
            verdicts.push(result.verdict);
        }
        let all_pass = verdicts.iter().all(|&v| v);
        rows.push(WidthRow { delta, verdicts, all_pass });
    }
    Ok(WidthReport { alpha: alpha_prefix(&rows), rows })
}

/// α is the largest candidate whose own test and every smaller
/// candidate's test passed; a failing candidate caps the search.
fn alpha_prefix<F: Real>(rows: &[WidthRow<F>]) -> Option<F> {
    rows.iter().take_while(|r| r.all_pass).last().map(|r| r.delta)
}

/// Angle between the local gradient and a candidate valley direction.
#[derive(Clone, Debug)]
pub struct Alignment<F> {
    pub point: Point<F>,
    /// Angle in degrees to the nearer of ±direction, in `[0, 90]`.
    pub angle_deg: F,
    /// Gradient exactly zero: the point is stationary and the angle is
    /// reported as 0.
    pub stationary: bool,
}

/// For each point, the angle between the finite-difference gradient and
/// the line spanned by `direction` (which must be a unit vector).
pub fn gradient_alignment<F: Real>(
    landscape: &Landscape<F>,
    direction: &[F],
    points: &[Point<F>],
    step: F,
) -> Result<Vec<Alignment<F>>> {
    if direction.len() != landscape.dim() {
        return Err(Error::Dimension { expected: landscape.dim(), actual: direction.len() });
    }
    let norm = direction.iter().fold(F::zero(), |acc, &c| acc + c * c).sqrt();
    if (norm - F::one()).abs() > F::epsilon().sqrt() {
        return Err(Error::Input(format!("direction must be a unit vector, |v| = {norm}")));
    }
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let g = gradient(landscape, p, step)?;
        let gnorm = g.coords().iter().fold(F::zero(), |acc, &c| acc + c * c).sqrt();
        if gnorm == F::zero() {
            out.push(Alignment { point: p.clone(), angle_deg: F::zero(), stationary: true });
            continue;
        }
        let dot = g
            .coords()
            .iter()
            .zip(direction)
            .fold(F::zero(), |acc, (&gi, &vi)| acc + gi * vi);
        let cos = (dot / gnorm).abs().min(F::one());
        let angle = cos.acos() * real::<F>(180.0 / std::f64::consts::PI);
        out.push(Alignment { point: p.clone(), angle_deg: angle, stationary: false });
    }
    Ok(out)
}

/// `ratio-scan` CSV: one row per valley test, header
/// `x1,...,xd,delta,lower,higher,ties,ratio,se,sphere_ratio,verdict`.
pub fn ratio_scan_csv<F: Real>(results: &[ValleyTestResult<F>]) -> String {
    let mut out = String::new();
    let dim = results.first().map_or(0, |r| r.point.dim());
    for axis in 0..dim {
        out.push_str(&format!("x{},", axis + 1));
    }
    out.push_str("delta,lower,higher,ties,ratio,se,sphere_ratio,verdict\n");
    for r in results {
        for &c in r.point.coords() {
            out.push_str(&crate::textio::csv_float(c));
            out.push(',');
        }
        let se = match r.tested.std_error {
            Some(se) => crate::textio::csv_float(se),
            None => "nan".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            crate::textio::csv_float(r.delta),
            r.tested.lower,
            r.tested.higher,
            r.tested.ties,
            ratio_field(&r.tested.ratio),
            se,
            ratio_field(&r.benchmark.ratio),
            r.verdict
        ));
    }
    out
}

fn ratio_field<F: Real>(v: &RatioValue<F>) -> String {
    match v {
        RatioValue::Finite(x) => crate::textio::csv_float(*x),
        RatioValue::Infinite => "inf".into(),
        RatioValue::Undefined => "undefined".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{make_elliptic, EllipticParams};

    fn p2(a: f64, b: f64) -> Point<f64> {
        Point::new(vec![a, b])
    }

    fn fe() -> Landscape<f64> {
        make_elliptic(&EllipticParams::new(vec![1.0, 0.01]).unwrap())
    }

    fn fz() -> Landscape<f64> {
        make_elliptic(&EllipticParams::with_zeros(vec![1.0, 0.0]).unwrap())
    }

    // Dense-grid oracle values (2000x2000 cell centers over the cube,
    // strict classification, tie tolerance 1e-12), computed independently
    // of the Monte-Carlo path:
    //   sphere at (5,0), delta 1: lower 1932944, higher 2067056
    //     -> ratio 0.9351193194572377
    //   elliptic 1,0.01 at (0,5), delta 1: lower 408768, higher 3591232
    //     -> ratio 0.11382389107693404
    //   sphere at (0,3), delta 1: lower 1886964, higher 2113036
    //     -> ratio 0.8930108147707848
    const SPHERE_5_0_D1: f64 = 0.9351193194572377;
    const FE_0_5_D1: f64 = 0.11382389107693404;

    #[test]
    fn minimum_has_empty_lower_set() {
        let sphere = Landscape::sphere(2);
        let mut s = substream(1, 0);
        let est = estimate_area_ratio(&sphere, &p2(0.0, 0.0), 1.0, 20_000, &mut s).unwrap();
        assert_eq!(est.lower, 0);
        assert_eq!(est.ratio, RatioValue::Finite(0.0));
        assert_eq!(est.std_error, Some(0.0));
    }

    #[test]
    fn degenerate_valley_point_has_zero_ratio() {
        let mut s = substream(1, 0);
        let est = estimate_area_ratio(&fz(), &p2(0.0, 3.0), 1.0, 100_000, &mut s).unwrap();
        assert_eq!(est.lower, 0);
        assert_eq!(est.ratio, RatioValue::Finite(0.0));
    }

    #[test]
    fn estimate_matches_grid_oracle_within_3_se() {
        let sphere = Landscape::sphere(2);
        let mut s = substream(7, 0);
        let est = estimate_area_ratio(&sphere, &p2(5.0, 0.0), 1.0, 100_000, &mut s).unwrap();
        let r = est.ratio.as_finite().unwrap();
        let se = est.std_error.unwrap();
        assert!(
            (r - SPHERE_5_0_D1).abs() <= 3.0 * se,
            "estimate {r} vs oracle {SPHERE_5_0_D1} (se {se})"
        );
    }

    #[test]
    fn elliptic_ratio_beats_sphere_ratio_at_valley_point() {
        let result = valley_point_test(&fe(), &p2(0.0, 5.0), 1.0, 100_000, 13).unwrap();
        assert!(result.verdict);
        let t = result.tested.ratio.as_finite().unwrap();
        let b = result.benchmark.ratio.as_finite().unwrap();
        assert!(t < b);
        // both sides near their grid-oracle values
        assert!((t - FE_0_5_D1).abs() < 0.01, "tested {t}");
        assert!((b - SPHERE_5_0_D1).abs() < 0.01, "benchmark {b}");
        assert!(result.margin.unwrap() > 0.5);
    }

    #[test]
    fn sphere_against_itself_is_never_strictly_smaller() {
        let sphere = Landscape::sphere(2);
        let result = valley_point_test(&sphere, &p2(5.0, 0.0), 1.0, 50_000, 3).unwrap();
        assert!(!result.verdict);
        // paired draws make the two estimates identical, not just close
        assert_eq!(result.tested, result.benchmark);
        assert_eq!(result.margin, Some(0.0));
    }

    #[test]
    fn degenerate_landscape_passes_valley_test() {
        let result = valley_point_test(&fz(), &p2(0.0, 3.0), 1.0, 100_000, 5).unwrap();
        assert!(result.verdict);
        assert_eq!(result.tested.ratio, RatioValue::Finite(0.0));
        assert!(result.benchmark.ratio.as_finite().unwrap() > 0.0);
    }

    #[test]
    fn beta_of_degenerate_landscape_is_exactly_zero() {
        let points: Vec<Point<f64>> = (-5..=5).map(|t| p2(0.0, t as f64)).collect();
        let report = narrowness_beta(&fz(), &points, 1.0, 100_000, 0).unwrap();
        assert_eq!(report.beta, RatioValue::Finite(0.0));
        assert!(report.per_point.iter().all(|e| e.lower == 0));
    }

    #[test]
    fn beta_of_singleton_is_that_points_ratio() {
        let points = vec![p2(0.0, 5.0)];
        let report = narrowness_beta(&fe(), &points, 1.0, 50_000, 2).unwrap();
        assert_eq!(report.beta, report.per_point[0].ratio);
        assert_eq!(report.argmax, Some(0));
    }

    #[test]
    fn beta_matches_grid_oracle_max() {
        // per-point grid-oracle ratios for elliptic 1,0.01 at (0,t),
        // delta 1 rise monotonically to t = 9:
        //   t=9: lower 556154, higher 3443846 -> 0.16149212247005237
        const ORACLE_MAX: f64 = 0.16149212247005237;
        let points: Vec<Point<f64>> = (1..=9).map(|t| p2(0.0, t as f64)).collect();
        let report = narrowness_beta(&fe(), &points, 1.0, 100_000, 17).unwrap();
        let beta = report.beta.as_finite().unwrap();
        let argmax = report.argmax.unwrap();
        let se = report.per_point[argmax].std_error.unwrap();
        assert!(
            (beta - ORACLE_MAX).abs() <= 3.0 * se,
            "beta {beta} vs oracle {ORACLE_MAX} (se {se})"
        );
        assert_eq!(argmax, 8);
    }

    #[test]
    fn width_alpha_of_elliptic_is_largest_candidate() {
        let points: Vec<Point<f64>> = (1..=9).map(|t| p2(0.0, t as f64)).collect();
        let deltas = [0.5, 1.0, 2.0, 5.0, 10.0];
        // modest budget: the separation is wide at every candidate
        let report = width_alpha(&fe(), &points, &deltas, 20_000, 0).unwrap();
        assert_eq!(report.alpha, Some(10.0));
        assert!(report.rows.iter().all(|r| r.all_pass));
    }

    #[test]
    fn width_alpha_of_sphere_is_none() {
        let points = vec![p2(0.0, 1.0), p2(0.0, 2.0)];
        let report =
            width_alpha(&Landscape::sphere(2), &points, &[0.5, 1.0], 10_000, 0).unwrap();
        assert_eq!(report.alpha, None);
        assert!(report.rows.iter().all(|r| !r.all_pass));
    }

    #[test]
    fn alpha_is_capped_by_the_first_failing_candidate() {
        let row = |delta: f64, all_pass| WidthRow { delta, verdicts: vec![all_pass], all_pass };
        assert_eq!(alpha_prefix(&[row(0.5, true), row(1.0, true)]), Some(1.0));
        assert_eq!(
            alpha_prefix(&[row(0.5, true), row(1.0, false), row(2.0, true)]),
            Some(0.5)
        );
        assert_eq!(alpha_prefix(&[row(0.5, false), row(1.0, true)]), None);
    }

    #[test]
    fn width_alpha_rejects_bad_candidates() {
        let points = vec![p2(0.0, 1.0)];
        assert!(matches!(
            width_alpha(&fe(), &points, &[], 100, 0),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            width_alpha(&fe(), &points, &[2.0, 1.0], 100, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn se_halves_when_samples_quadruple() {
        let sphere = Landscape::sphere(2);
        let se_at = |n: u64| {
            let mut s = substream(21, 0);
            estimate_area_ratio(&sphere, &p2(5.0, 0.0), 1.0, n, &mut s)
                .unwrap()
                .std_error
                .unwrap()
        };
        let r = se_at(25_000) / se_at(100_000);
        assert!((1.6..=2.4).contains(&r), "se ratio {r}");
    }

    #[test]
    fn alignment_angles_on_elliptic() {
        let e = fe();
        let dir = [0.0, 1.0];
        let out = gradient_alignment(&e, &dir, &[p2(0.0, 5.0), p2(1.0, 0.0)], 1e-5).unwrap();
        assert!(out[0].angle_deg.abs() < 1e-6); // gradient (0, 0.1) along axis
        assert!(!out[0].stationary);
        assert!((out[1].angle_deg - 90.0).abs() < 1e-6); // gradient (2, 0)
    }

    #[test]
    fn alignment_flags_stationary_points() {
        let out = gradient_alignment(&fz(), &[0.0, 1.0], &[p2(0.0, 3.0)], 1e-5).unwrap();
        assert!(out[0].stationary);
        assert_eq!(out[0].angle_deg, 0.0);
    }

    #[test]
    fn alignment_rejects_non_unit_direction() {
        assert!(matches!(
            gradient_alignment(&fe(), &[0.0, 2.0], &[p2(0.0, 1.0)], 1e-5),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn ratio_counts_partition_samples() {
        let mut s = substream(4, 0);
        let est = estimate_area_ratio(&fe(), &p2(0.3, 2.0), 0.7, 10_000, &mut s).unwrap();
        assert_eq!(est.lower + est.higher + est.ties, est.samples);
        assert_eq!(est.samples, 10_000);
    }

    #[test]
    fn scan_csv_shape() {
        let r = valley_point_test(&fe(), &p2(0.0, 5.0), 1.0, 1000, 0).unwrap();
        let csv = ratio_scan_csv(&[r]);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x1,x2,delta,lower,higher,ties,ratio,se,sphere_ratio,verdict"
        );
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 10);
        assert!(row.ends_with("true"));
    }
}

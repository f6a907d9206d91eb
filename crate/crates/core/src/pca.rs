//! The PCA-projection pipeline that estimates a valley's direction and
//! location: sample a population, keep the best M points, fit mean and
//! covariance, take the first principal component, and reconstruct the
//! selected points on the line it spans.

use std::fmt;

use crate::error::{Error, Result};
use crate::landscape::{Domain, Landscape, Point};
use crate::sampling::{substream, uniform_in_box};
use crate::scalar::{real, Real};

/// Small dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Real> Matrix<F> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![F::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix rows must form a square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.n + j] = v;
    }

    /// Largest absolute asymmetry `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> F {
        let mut worst = F::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = (self.get(i, j) - self.get(j, i)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// `M v` for a length-n vector.
    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.n)
            .map(|i| (0..self.n).fold(F::zero(), |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }
}

/// The M lowest-fitness points of a population, fitness attached.
#[derive(Clone, Debug)]
pub struct SelectedSet<F> {
    pub points: Vec<Point<F>>,
    pub fitness: Vec<F>,
}

impl<F: Real> SelectedSet<F> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Truncation selection: the `m` points of smallest fitness, ties broken
/// by population index (earlier wins), so selection is a pure function of
/// the population order.
pub fn select_best<F: Real>(
    population: &[Point<F>],
    landscape: &Landscape<F>,
    m: usize,
) -> Result<SelectedSet<F>> {
    if m < 1 || m > population.len() {
        return Err(Error::Config(format!(
            "selection size {m} out of range 1..={}",
            population.len()
        )));
    }
    let mut scored: Vec<(usize, F)> = population
        .iter()
        .enumerate()
        .map(|(i, p)| Ok((i, landscape.evaluate(p)?)))
        .collect::<Result<_>>()?;
    scored.sort_by(|(ia, fa), (ib, fb)| {
        fa.partial_cmp(fb).unwrap_or(std::cmp::Ordering::Equal).then(ia.cmp(ib))
    });
    scored.truncate(m);
    Ok(SelectedSet {
        points: scored.iter().map(|&(i, _)| population[i].clone()).collect(),
        fitness: scored.iter().map(|&(_, f)| f).collect(),
    })
}

/// Sample mean and unbiased sample covariance of a selected set.
#[derive(Clone, Debug)]
pub struct CovarianceModel<F> {
    pub mean: Vec<F>,
    pub covariance: Matrix<F>,
}

/// `m = (1/M) sum x_i` and `Sigma = 1/(M-1) sum (x_i - m)(x_i - m)^T`.
pub fn mean_and_covariance<F: Real>(set: &SelectedSet<F>) -> Result<CovarianceModel<F>> {
    let m_count = set.len();
    if m_count < 2 {
        return Err(Error::Config("covariance needs at least 2 points".into()));
    }
    let d = set.points[0].dim();
    let inv_m = F::one() / real::<F>(m_count as f64);
    let mut mean = vec![F::zero(); d];
    for p in &set.points {
        for (mi, &ci) in mean.iter_mut().zip(p.coords()) {
            *mi = *mi + ci;
        }
    }
    for mi in &mut mean {
        *mi = *mi * inv_m;
    }
    let inv_m1 = F::one() / real::<F>((m_count - 1) as f64);
    let mut cov = Matrix::zeros(d);
    for p in &set.points {
        for i in 0..d {
            let di = p[i] - mean[i];
            for j in 0..d {
                let dj = p[j] - mean[j];
                cov.set(i, j, cov.get(i, j) + di * dj * inv_m1);
            }
        }
    }
    Ok(CovarianceModel { mean, covariance: cov })
}

/// Full symmetric eigendecomposition, eigenvalues descending, eigenvectors
/// unit length with the largest-magnitude component positive.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<F> {
    pub values: Vec<F>,
    pub vectors: Vec<Vec<F>>,
}

/// Cyclic Jacobi rotations. Input must be symmetric within `1e-12`
/// componentwise.
pub fn eigendecompose_symmetric<F: Real>(m: &Matrix<F>) -> Result<EigenDecomposition<F>> {
    let asym = m.asymmetry();
    if asym > real::<F>(1e-12) {
        return Err(Error::Input(format!("matrix asymmetry {asym} exceeds 1e-12")));
    }
    let n = m.n();
    let mut a = m.clone();
    // enforce exact symmetry so rotations see one consistent value
    for i in 0..n {
        for j in (i + 1)..n {
            a.set(j, i, a.get(i, j));
        }
    }
    let mut v = Matrix::identity(n);
    let half = real::<F>(0.5);
    for _sweep in 0..64 {
        let mut off = F::zero();
        let mut diag = F::zero();
        for i in 0..n {
            diag = diag + a.get(i, i).abs();
            for j in (i + 1)..n {
                off = off + a.get(i, j).abs();
            }
        }
        if off <= F::epsilon() * diag.max(F::min_positive_value()) {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == F::zero() {
                    continue;
                }
                let theta = half * (a.get(q, q) - a.get(p, p)) / apq;
                let denom = theta.abs() + (theta * theta + F::one()).sqrt();
                let t = if denom.is_finite() {
                    theta.signum() / denom
                } else {
                    // theta^2 overflowed; the rotation is tiny
                    half / theta
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                let tapq = t * apq;
                a.set(p, p, a.get(p, p) - tapq);
                a.set(q, q, a.get(q, q) + tapq);
                a.set(p, q, F::zero());
                a.set(q, p, F::zero());
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, c * akp - s * akq);
                        a.set(p, k, a.get(k, p));
                        a.set(k, q, s * akp + c * akq);
                        a.set(q, k, a.get(k, q));
                    }
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(j, j).partial_cmp(&a.get(i, i)).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j))
    });
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &col in &order {
        values.push(a.get(col, col));
        let mut vec: Vec<F> = (0..n).map(|row| v.get(row, col)).collect();
        normalize_sign(&mut vec);
        vectors.push(vec);
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Flips the vector so its largest-magnitude component (first such index)
/// is positive; PCA directions are otherwise sign-ambiguous.
fn normalize_sign<F: Real>(v: &mut [F]) {
    let mut idx = 0;
    for (i, c) in v.iter().enumerate() {
        if c.abs() > v[idx].abs() {
            idx = i;
        }
    }
    if v[idx] < F::zero() {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
}

/// Scalar projections onto the line through `mean` with unit direction
/// `v1`, and the reconstructed points `mean + v1 * y_i`.
pub fn project_reconstruct<F: Real>(
    points: &[Point<F>],
    mean: &[F],
    v1: &[F],
) -> Result<(Vec<F>, Vec<Point<F>>)> {
    let norm = v1.iter().fold(F::zero(), |acc, &c| acc + c * c).sqrt();
    if (norm - F::one()).abs() > F::epsilon().sqrt() {
        return Err(Error::Input(format!("v1 must be a unit vector, |v1| = {norm}")));
    }
    if mean.len() != v1.len() {
        return Err(Error::Dimension { expected: mean.len(), actual: v1.len() });
    }
    let mut projections = Vec::with_capacity(points.len());
    let mut reconstructed = Vec::with_capacity(points.len());
    for p in points {
        if p.dim() != mean.len() {
            return Err(Error::Dimension { expected: mean.len(), actual: p.dim() });
        }
        let y = p
            .coords()
            .iter()
            .zip(mean)
            .zip(v1)
            .fold(F::zero(), |acc, ((&xi, &mi), &vi)| acc + (xi - mi) * vi);
        projections.push(y);
        reconstructed.push(Point::new(
            mean.iter().zip(v1).map(|(&mi, &vi)| mi + vi * y).collect(),
        ));
    }
    Ok((projections, reconstructed))
}

/// Anisotropy score λ1/λ2 of a selected set; `Infinite` when the cloud is
/// collinear (λ2 = 0).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenRatio<F> {
    Finite(F),
    Infinite,
}

impl<F: Real> EigenRatio<F> {
    pub fn as_finite(&self) -> Option<F> {
        match self {
            EigenRatio::Finite(v) => Some(*v),
            EigenRatio::Infinite => None,
        }
    }
}

impl<F: Real> fmt::Display for EigenRatio<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenRatio::Finite(v) => write!(f, "{v}"),
            EigenRatio::Infinite => write!(f, "inf"),
        }
    }
}

/// λ1/λ2 from a descending eigenvalue spectrum.
pub fn eigen_ratio<F: Real>(values: &[F]) -> Result<EigenRatio<F>> {
    if values.len() < 2 {
        return Err(Error::Config("eigen ratio needs dimension >= 2".into()));
    }
    if values[1] > F::zero() {
        Ok(EigenRatio::Finite(values[0] / values[1]))
    } else {
        Ok(EigenRatio::Infinite)
    }
}

/// Everything the PCA projection produces for one run.
#[derive(Clone, Debug)]
pub struct ValleyEstimate<F> {
    pub population: Vec<Point<F>>,
    pub population_fitness: Vec<F>,
    pub selected: SelectedSet<F>,
    pub mean: Vec<F>,
    /// First principal direction, sign-normalized.
    pub direction: Vec<F>,
    /// Full spectrum, descending.
    pub eigenvalues: Vec<F>,
    pub projections: Vec<F>,
    pub reconstructed: Vec<Point<F>>,
    pub reconstructed_fitness: Vec<F>,
    /// λ1/λ2; `None` in dimension 1.
    pub eigen_ratio: Option<EigenRatio<F>>,
    /// λ1 and λ2 agree within 1e-9: the selected cloud carries no
    /// preferred direction and `direction` is arbitrary.
    pub isotropic: bool,
}

impl<F: Real> ValleyEstimate<F> {
    /// CSV with one row per point: `role,x1,...,xd,f,y` where role is
    /// population, selected, or projected. Population rows leave `y`
    /// empty; projected rows carry the reconstructed point, its fitness,
    /// and its scalar projection.
    pub fn to_csv(&self) -> String {
        let d = self.mean.len();
        let mut out = String::from("role,");
        for axis in 0..d {
            out.push_str(&format!("x{},", axis + 1));
        }
        out.push_str("f,y\n");
        let mut push_row = |role: &str, p: &Point<F>, f: F, y: Option<F>| {
            out.push_str(role);
            for &c in p.coords() {
                out.push(',');
                out.push_str(&crate::textio::csv_float(c));
            }
            out.push(',');
            out.push_str(&crate::textio::csv_float(f));
            out.push(',');
            if let Some(y) = y {
                out.push_str(&crate::textio::csv_float(y));
            }
            out.push('\n');
        };
        for (p, &f) in self.population.iter().zip(&self.population_fitness) {
            push_row("population", p, f, None);
        }
        for (i, (p, &f)) in self.selected.points.iter().zip(&self.selected.fitness).enumerate() {
            push_row("selected", p, f, Some(self.projections[i]));
        }
        for (i, p) in self.reconstructed.iter().enumerate() {
            push_row("projected", p, self.reconstructed_fitness[i], Some(self.projections[i]));
        }
        out
    }

    /// Human-readable summary block.
    pub fn summary(&self) -> String {
        let vec_str = |v: &[F]| {
            v.iter().map(|c| crate::textio::csv_float(*c)).collect::<Vec<_>>().join(", ")
        };
        let ratio = match &self.eigen_ratio {
            Some(r) => r.to_string(),
            None => "n/a".into(),
        };
        format!(
            "mean        = ({})\nv1          = ({})\neigenvalues = ({})\nlambda1/lambda2 = {}\nisotropic   = {}\nselected    = {}\n",
            vec_str(&self.mean),
            vec_str(&self.direction),
            vec_str(&self.eigenvalues),
            ratio,
            self.isotropic,
            self.selected.len(),
        )
    }
}

/// The full pipeline: sample `population` uniform points (substream id 0
/// of `seed`), keep the best `selection`, fit mean/covariance, decompose,
/// and project the selected points onto the first principal component.
pub fn pca_projection<F: Real>(
    landscape: &Landscape<F>,
    domain: &Domain<F>,
    population: usize,
    selection: usize,
    seed: u64,
) -> Result<ValleyEstimate<F>> {
    if selection < 2 {
        return Err(Error::Config("selection size must be >= 2".into()));
    }
    if domain.dim() != landscape.dim() {
        return Err(Error::Dimension { expected: landscape.dim(), actual: domain.dim() });
    }
    let mut stream = substream(seed, 0);
    let points = uniform_in_box(&mut stream, domain, population);
    let population_fitness = points
        .iter()
        .map(|p| landscape.evaluate(p))
        .collect::<Result<Vec<_>>>()?;
    let selected = select_best(&points, landscape, selection)?;
    let model = mean_and_covariance(&selected)?;
    let eig = eigendecompose_symmetric(&model.covariance)?;
    let direction = eig.vectors[0].clone();
    let (projections, reconstructed) =
        project_reconstruct(&selected.points, &model.mean, &direction)?;
    let reconstructed_fitness = reconstructed
        .iter()
        .map(|p| landscape.evaluate(p))
        .collect::<Result<Vec<_>>>()?;
    let d = landscape.dim();
    let ratio = if d >= 2 { Some(eigen_ratio(&eig.values)?) } else { None };
    let isotropic = d >= 2 && (eig.values[0] - eig.values[1]).abs() <= real::<F>(1e-9);
    Ok(ValleyEstimate {
        population: points,
        population_fitness,
        selected,
        mean: model.mean,
        direction,
        eigenvalues: eig.values,
        projections,
        reconstructed,
        reconstructed_fitness,
        eigen_ratio: ratio,
        isotropic,
    })
}

/// λ1/λ2 of a finished estimate.
pub fn eigen_ratio_diagnostic<F: Real>(estimate: &ValleyEstimate<F>) -> Result<EigenRatio<F>> {
    estimate
        .eigen_ratio
        .ok_or_else(|| Error::Config("eigen ratio needs dimension >= 2".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{make_elliptic, EllipticParams};

    fn p2(a: f64, b: f64) -> Point<f64> {
        Point::new(vec![a, b])
    }

    #[test]
    fn selection_keeps_smallest_fitness() {
        let sphere = Landscape::sphere(2);
        let pop = vec![p2(0.0, 0.0), p2(1.0, 0.0), p2(2.0, 0.0)];
        let sel = select_best(&pop, &sphere, 2).unwrap();
        assert_eq!(sel.points, vec![p2(0.0, 0.0), p2(1.0, 0.0)]);
        assert_eq!(sel.fitness, vec![0.0, 1.0]);
        // whole population when m = n
        let all = select_best(&pop, &sphere, 3).unwrap();
        assert_eq!(all.len(), 3);
        assert!(select_best(&pop, &sphere, 0).is_err());
        assert!(select_best(&pop, &sphere, 4).is_err());
    }

    #[test]
    fn selection_breaks_ties_by_population_index() {
        let sphere = Landscape::sphere(2);
        let pop = vec![p2(1.0, 0.0), p2(0.0, 1.0), p2(-1.0, 0.0)];
        let sel = select_best(&pop, &sphere, 2).unwrap();
        assert_eq!(sel.points, vec![p2(1.0, 0.0), p2(0.0, 1.0)]);
    }

    #[test]
    fn covariance_known_cases() {
        let sel = SelectedSet { points: vec![p2(1.0, 0.0), p2(-1.0, 0.0)], fitness: vec![0.0; 2] };
        let m = mean_and_covariance(&sel).unwrap();
        assert_eq!(m.mean, vec![0.0, 0.0]);
        assert_eq!(m.covariance.get(0, 0), 2.0);
        assert_eq!(m.covariance.get(0, 1), 0.0);
        assert_eq!(m.covariance.get(1, 1), 0.0);

        let sel = SelectedSet { points: vec![p2(3.0, -1.0); 4], fitness: vec![0.0; 4] };
        let m = mean_and_covariance(&sel).unwrap();
        assert_eq!(m.mean, vec![3.0, -1.0]);
        assert!(m.covariance.data.iter().all(|&v| v == 0.0));

        let sel = SelectedSet { points: vec![p2(1.0, 1.0), p2(-1.0, -1.0)], fitness: vec![0.0; 2] };
        let m = mean_and_covariance(&sel).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(m.covariance.get(i, j), 2.0);
        }

        let single = SelectedSet { points: vec![p2(0.0, 0.0)], fitness: vec![0.0] };
        assert!(mean_and_covariance(&single).is_err());
    }

    #[test]
    fn eigendecomposition_textbook_cases() {
        let eig = eigendecompose_symmetric(
            &Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 0.5]]).unwrap(),
        )
        .unwrap();
        assert_eq!(eig.values, vec![2.0, 0.5]);
        assert_eq!(eig.vectors[0], vec![1.0, 0.0]);
        assert_eq!(eig.vectors[1], vec![0.0, 1.0]);

        let eig = eigendecompose_symmetric(
            &Matrix::<f64>::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap(),
        )
        .unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((eig.values[0] - 3.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
        assert!((eig.vectors[0][0] - inv_sqrt2).abs() < 1e-12);
        assert!((eig.vectors[0][1] - inv_sqrt2).abs() < 1e-12);
        assert!((eig.vectors[1][0] - inv_sqrt2).abs() < 1e-12);
        assert!((eig.vectors[1][1] + inv_sqrt2).abs() < 1e-12);

        // rank one
        let eig = eigendecompose_symmetric(
            &Matrix::<f64>::from_rows(vec![vec![2.0, 2.0], vec![2.0, 2.0]]).unwrap(),
        )
        .unwrap();
        assert!((eig.values[0] - 4.0).abs() < 1e-12);
        assert!(eig.values[1].abs() < 1e-12);
        assert!((eig.vectors[0][0] - inv_sqrt2).abs() < 1e-12);
        assert!((eig.vectors[0][1] - inv_sqrt2).abs() < 1e-12);
    }

    #[test]
    fn eigendecomposition_rejects_asymmetry() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(eigendecompose_symmetric(&m), Err(Error::Input(_))));
    }

    #[test]
    fn eigen_invariants_on_random_symmetric_matrices() {
        let mut stream = substream(99, 0);
        for trial in 0..100 {
            let n = 2 + (stream.next_u64() % 9) as usize; // d in 2..=10
            let mut m = Matrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    let v = stream.uniform(-5.0f64, 5.0);
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            let eig = eigendecompose_symmetric(&m).unwrap();
            for i in 0..n {
                // residual || M v - lambda v ||_inf
                let mv = m.mul_vec(&eig.vectors[i]);
                for (k, &mvk) in mv.iter().enumerate() {
                    let r = (mvk - eig.values[i] * eig.vectors[i][k]).abs();
                    assert!(
                        r <= 1e-9 * (1.0 + eig.values[i].abs()),
                        "trial {trial}: residual {r}"
                    );
                }
                // unit norm
                let norm: f64 = eig.vectors[i].iter().map(|c| c * c).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() <= 1e-12);
                // orthogonality and ordering
                for j in (i + 1)..n {
                    let dot: f64 =
                        eig.vectors[i].iter().zip(&eig.vectors[j]).map(|(a, b)| a * b).sum();
                    assert!(dot.abs() <= 1e-9, "trial {trial}: dot {dot}");
                    assert!(eig.values[i] >= eig.values[j]);
                }
            }
        }
    }

    #[test]
    fn projection_known_cases() {
        // center maps to center
        let (y, r) = project_reconstruct(&[p2(1.0, 2.0)], &[1.0, 2.0], &[0.0, 1.0]).unwrap();
        assert_eq!(y, vec![0.0]);
        assert_eq!(r, vec![p2(1.0, 2.0)]);

        // points already on the line are reproduced
        let pts = vec![p2(0.0, -3.0), p2(0.0, 7.0)];
        let (y, r) = project_reconstruct(&pts, &[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(y, vec![-3.0, 7.0]);
        for (a, b) in r.iter().zip(&pts) {
            for (ca, cb) in a.coords().iter().zip(b.coords()) {
                assert!((ca - cb).abs() <= 1e-12);
            }
        }

        let (y, r) = project_reconstruct(&[p2(3.0, 4.0)], &[0.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(y, vec![4.0]);
        assert_eq!(r, vec![p2(0.0, 4.0)]);

        assert!(project_reconstruct(&[p2(0.0, 0.0)], &[0.0, 0.0], &[0.0, 2.0]).is_err());
    }

    #[test]
    fn projection_is_idempotent() {
        let pts = vec![p2(1.5, -2.0), p2(0.25, 8.0), p2(-3.0, 1.0)];
        let mean = [0.5, 1.0];
        let dir = [3.0f64 / 5.0, 4.0 / 5.0];
        let (y, recon) = project_reconstruct(&pts, &mean, &dir).unwrap();
        let (y2, _) = project_reconstruct(&recon, &mean, &dir).unwrap();
        for (a, b) in y.iter().zip(&y2) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn eigen_ratio_cases() {
        // collinear cloud: zero second eigenvalue
        let sel = SelectedSet {
            points: vec![p2(1.0, 0.0), p2(-1.0, 0.0), p2(2.0, 0.0), p2(-2.0, 0.0)],
            fitness: vec![0.0; 4],
        };
        let model = mean_and_covariance(&sel).unwrap();
        let eig = eigendecompose_symmetric(&model.covariance).unwrap();
        assert_eq!(eigen_ratio(&eig.values).unwrap(), EigenRatio::Infinite);
        // isotropic spectrum
        assert_eq!(eigen_ratio(&[1.0, 1.0]).unwrap(), EigenRatio::Finite(1.0));
        assert!(eigen_ratio(&[1.0]).is_err());
    }

    #[test]
    fn pca_finds_the_elliptic_valley_direction() {
        let e = make_elliptic(&EllipticParams::new(vec![1.0, 0.01]).unwrap());
        let domain = Domain::<f64>::cube(-10.0, 10.0, 2).unwrap();
        let est = pca_projection(&e, &domain, 100, 10, 9).unwrap();
        // angle between v1 and the x2 axis
        let angle = est.direction[1].abs().min(1.0).acos().to_degrees();
        assert!(angle < 30.0, "angle {angle}");
        assert!(!est.isotropic);
        assert_eq!(est.population.len(), 100);
        assert_eq!(est.selected.len(), 10);
        assert_eq!(est.reconstructed.len(), 10);
        // reconstructed points lie on the line mean + t v1
        for (p, &y) in est.reconstructed.iter().zip(&est.projections) {
            for k in 0..2 {
                let want = est.mean[k] + est.direction[k] * y;
                assert!((p[k] - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn pca_runs_are_deterministic() {
        let e = make_elliptic(&EllipticParams::new(vec![1.0, 0.01]).unwrap());
        let domain = Domain::cube(-10.0, 10.0, 2).unwrap();
        let a = pca_projection(&e, &domain, 50, 8, 123).unwrap();
        let b = pca_projection(&e, &domain, 50, 8, 123).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.summary(), b.summary());
    }

    #[test]
    fn pca_csv_shape() {
        let sphere = Landscape::<f64>::sphere(2);
        let domain = Domain::cube(-10.0, 10.0, 2).unwrap();
        let est = pca_projection(&sphere, &domain, 20, 5, 1).unwrap();
        let csv = est.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "role,x1,x2,f,y");
        assert_eq!(csv.matches("\npopulation,").count() + 1, 21); // first row follows header
        assert_eq!(csv.matches("\nselected,").count(), 5);
        assert_eq!(csv.matches("\nprojected,").count(), 5);
        // population rows leave y empty
        let pop_row = csv.lines().nth(1).unwrap();
        assert!(pop_row.ends_with(','));
    }

    #[test]
    fn selected_dominates_rest_of_population() {
        let sphere = Landscape::sphere(2);
        let domain = Domain::cube(-10.0, 10.0, 2).unwrap();
        let est = pca_projection(&sphere, &domain, 60, 12, 5).unwrap();
        let worst_selected = est.selected.fitness.iter().cloned().fold(f64::MIN, f64::max);
        let mut sorted = est.population_fitness.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // every non-selected fitness is >= every selected fitness
        assert!(sorted[12..].iter().all(|&f| f >= worst_selected));
    }
}

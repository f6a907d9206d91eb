//! Objective functions over boxed domains: parametric elliptic families,
//! negation (ridge duality), finite-difference gradients, and lattice
//! evaluation. Homeomorphism-based construction lives in [`transform`],
//! grid evaluation in [`grid`].

mod grid;
mod transform;

pub use grid::{grid_evaluate, Grid};
pub use transform::{
    check_order_preservation, make_transformed, Homeomorphism, OrderCheck, TransformedLandscape,
};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

type Objective<F> = Arc<dyn Fn(&[F]) -> F + Send + Sync>;

/// A search-space point: `d` real coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<F> {
    coords: Vec<F>,
}

impl<F: Real> Point<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Self { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self { coords: vec![F::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl<F> std::ops::Index<usize> for Point<F> {
    type Output = F;
    fn index(&self, axis: usize) -> &F {
        &self.coords[axis]
    }
}

impl<F: Real> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses `c1,c2,...,cd` (e.g. `0,3`). Coordinates are parsed as `f64` and
/// converted into the working scalar type.
impl<F: Real> FromStr for Point<F> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|tok| {
                let v: f64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Input(format!("bad coordinate '{tok}'")))?;
                if !v.is_finite() {
                    return Err(Error::Input(format!("non-finite coordinate '{tok}'")));
                }
                Ok(real::<F>(v))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Input("empty point".into()));
        }
        Ok(Point::new(coords))
    }
}

/// An axis-aligned box `[lower_1, upper_1] x ... x [lower_d, upper_d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain<F> {
    lower: Point<F>,
    upper: Point<F>,
}

impl<F: Real> Domain<F> {
    /// Requires `lower[i] < upper[i]` on every axis.
    pub fn new(lower: Point<F>, upper: Point<F>) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::Dimension { expected: lower.dim(), actual: upper.dim() });
        }
        if lower.dim() == 0 {
            return Err(Error::Config("domain must have at least one axis".into()));
        }
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::Config("domain bounds must be finite".into()));
        }
        for i in 0..lower.dim() {
            if !(lower[i] < upper[i]) {
                return Err(Error::Config(format!(
                    "degenerate domain on axis {}: {} is not below {}",
                    i + 1,
                    lower[i],
                    upper[i]
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// `[lo, hi]` on every one of `dim` axes.
    pub fn cube(lo: f64, hi: f64, dim: usize) -> Result<Self> {
        Self::new(
            Point::new(vec![real(lo); dim]),
            Point::new(vec![real(hi); dim]),
        )
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &Point<F> {
        &self.lower
    }

    pub fn upper(&self) -> &Point<F> {
        &self.upper
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        p.dim() == self.dim()
            && (0..self.dim()).all(|i| self.lower[i] <= p[i] && p[i] <= self.upper[i])
    }
}

impl<F: Real> fmt::Display for Domain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", self.lower[i], self.upper[i])?;
        }
        Ok(())
    }
}

/// Parses `lo:hi[,lo:hi...]` (e.g. `-10:10,-10:10`); the axis count fixes
/// the dimension.
impl<F: Real> FromStr for Domain<F> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for seg in s.split(',') {
            let (lo, hi) = seg
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("bad domain segment '{seg}', want lo:hi")))?;
            let lo: f64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad domain bound '{lo}'")))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad domain bound '{hi}'")))?;
            lower.push(real::<F>(lo));
            upper.push(real::<F>(hi));
        }
        Domain::new(Point::new(lower), Point::new(upper))
    }
}

/// A minimization objective over `R^d`, tagged with a label.
///
/// Landscapes are immutable after construction and safe to evaluate from
/// many threads. The objective must be deterministic and total.
#[derive(Clone)]
pub struct Landscape<F> {
    objective: Objective<F>,
    dim: usize,
    label: String,
}

impl<F: Real> Landscape<F> {
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        objective: impl Fn(&[F]) -> F + Send + Sync + 'static,
    ) -> Self {
        Self { objective: Arc::new(objective), dim, label: label.into() }
    }

    /// The sphere benchmark `f(x) = sum x_i^2`.
    pub fn sphere(dim: usize) -> Self {
        Self::new("sphere", dim, |x: &[F]| {
            x.iter().fold(F::zero(), |acc, &c| acc + c * c)
        })
    }

    /// The two-dimensional Rosenbrock function
    /// `f(x) = (1 - x1)^2 + 100 (x2 - x1^2)^2`, minimum 0 at (1, 1).
    pub fn rosenbrock() -> Self {
        Self::new("rosenbrock", 2, |x: &[F]| {
            let one = F::one();
            let hundred = real::<F>(100.0);
            let a = one - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + hundred * b * b
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Raw objective value; callers guarantee `coords` has the right
    /// dimension and finite entries.
    #[inline]
    pub fn value(&self, coords: &[F]) -> F {
        debug_assert_eq!(coords.len(), self.dim);
        (self.objective)(coords)
    }

    /// Validated evaluation.
    pub fn evaluate(&self, x: &Point<F>) -> Result<F> {
        if x.dim() != self.dim {
            return Err(Error::Dimension { expected: self.dim, actual: x.dim() });
        }
        if !x.is_finite() {
            return Err(Error::Input(format!("non-finite point {x}")));
        }
        Ok(self.value(x.coords()))
    }
}

impl<F> fmt::Debug for Landscape<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Landscape")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Coefficients of the elliptic family `f(x) = sum c_i x_i^2`.
///
/// The sphere is the all-ones case. Zero coefficients describe degenerate
/// landscapes (flat along an axis) and must be requested explicitly via
/// [`EllipticParams::with_zeros`].
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticParams<F> {
    coefficients: Vec<F>,
    zeros_allowed: bool,
}

impl<F: Real> EllipticParams<F> {
    /// Strictly positive coefficients.
    pub fn new(coefficients: Vec<F>) -> Result<Self> {
        Self::build(coefficients, false)
    }

    /// Non-negative coefficients; zeros flag a degenerate landscape.
    pub fn with_zeros(coefficients: Vec<F>) -> Result<Self> {
        Self::build(coefficients, true)
    }

    fn build(coefficients: Vec<F>, zeros_allowed: bool) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Config("empty coefficient list".into()));
        }
        for (i, &c) in coefficients.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::Config(format!("coefficient {} is not finite", i + 1)));
            }
            let ok = if zeros_allowed { c >= F::zero() } else { c > F::zero() };
            if !ok {
                return Err(Error::Config(format!(
                    "coefficient {} = {} must be {}",
                    i + 1,
                    c,
                    if zeros_allowed { ">= 0" } else { "> 0 (use with_zeros for degenerate landscapes)" }
                )));
            }
        }
        Ok(Self { coefficients, zeros_allowed })
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coefficients
    }

    pub fn zeros_allowed(&self) -> bool {
        self.zeros_allowed
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }
}

/// Builds the landscape `f(x) = sum c_i x_i^2`; the label records the
/// coefficients (`elliptic:1,0.01`).
pub fn make_elliptic<F: Real>(params: &EllipticParams<F>) -> Landscape<F> {
    let coeffs = params.coefficients.clone();
    let label = format!(
        "elliptic:{}",
        coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    Landscape::new(label, coeffs.len(), move |x: &[F]| {
        coeffs
            .iter()
            .zip(x)
            .fold(F::zero(), |acc, (&c, &xi)| acc + c * xi * xi)
    })
}

/// The coordinate line singled out as an elliptic landscape's valley: all
/// coordinates zero except the free axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValleyAxis {
    /// 0-based index of the axis with the smallest coefficient.
    pub free_axis: usize,
    pub dim: usize,
    /// True when the smallest coefficient is exactly zero: every point on
    /// the line is then a global minimizer.
    pub globally_flat: bool,
}

impl ValleyAxis {
    /// The point on the valley line with parameter `t` on the free axis.
    pub fn point_at<F: Real>(&self, t: F) -> Point<F> {
        let mut coords = vec![F::zero(); self.dim];
        coords[self.free_axis] = t;
        Point::new(coords)
    }

    /// A unit vector along the valley line.
    pub fn direction<F: Real>(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[self.free_axis] = F::one();
        v
    }
}

impl fmt::Display for ValleyAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fixed: Vec<String> = (0..self.dim)
            .filter(|&i| i != self.free_axis)
            .map(|i| format!("x{} = 0", i + 1))
            .collect();
        write!(f, "axis x{}: {{ x | {} }}", self.free_axis + 1, fixed.join(", "))
    }
}

/// The coordinate axis of weakest curvature: the unique smallest
/// coefficient picks the valley line. Ties (exact coefficient equality)
/// mean no unique valley exists, as on the sphere.
pub fn valley_axis<F: Real>(params: &EllipticParams<F>) -> Result<ValleyAxis> {
    let coeffs = params.coefficients();
    let mut k = 0;
    for (i, &c) in coeffs.iter().enumerate() {
        if c < coeffs[k] {
            k = i;
        }
    }
    let ties = coeffs.iter().filter(|&&c| c == coeffs[k]).count();
    if ties > 1 {
        return Err(Error::AmbiguousValley(format!(
            "{} coefficients tie at the minimum {}",
            ties, coeffs[k]
        )));
    }
    Ok(ValleyAxis {
        free_axis: k,
        dim: coeffs.len(),
        globally_flat: coeffs[k] == F::zero(),
    })
}

/// Sign-flipped landscape: ridge analysis of `f` is valley analysis of
/// `negate(f)`. Negation is an exact involution.
pub fn negate<F: Real>(l: &Landscape<F>) -> Landscape<F> {
    let inner = l.objective.clone();
    Landscape {
        objective: Arc::new(move |x: &[F]| -(inner)(x)),
        dim: l.dim,
        label: format!("neg:{}", l.label),
    }
}

/// Central finite-difference gradient with absolute step `step`:
/// component i is `(f(x + step e_i) - f(x - step e_i)) / (2 step)`.
pub fn gradient<F: Real>(l: &Landscape<F>, x: &Point<F>, step: F) -> Result<Point<F>> {
    if !(step > F::zero()) {
        return Err(Error::Config(format!("gradient step {step} must be > 0")));
    }
    l.evaluate(x)?; // dimension and finiteness checks
    let two = real::<F>(2.0);
    let mut probe = x.coords().to_vec();
    let mut g = Vec::with_capacity(x.dim());
    for i in 0..x.dim() {
        let xi = probe[i];
        probe[i] = xi + step;
        let hi = l.value(&probe);
        probe[i] = xi - step;
        let lo = l.value(&probe);
        probe[i] = xi;
        g.push((hi - lo) / (two * step));
    }
    Ok(Point::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(a: f64, b: f64) -> Point<f64> {
        Point::new(vec![a, b])
    }

    fn fe() -> Landscape<f64> {
        make_elliptic(&EllipticParams::new(vec![1.0, 0.01]).unwrap())
    }

    #[test]
    fn evaluate_known_values() {
        let s = Landscape::sphere(2);
        assert_eq!(s.evaluate(&p2(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(s.evaluate(&p2(3.0, 4.0)).unwrap(), 25.0);
        assert_eq!(Landscape::rosenbrock().evaluate(&p2(1.0, 1.0)).unwrap(), 0.0);
        // x1^2 + (0.1 x2)^2 at (0, 10)
        assert_eq!(fe().evaluate(&p2(0.0, 10.0)).unwrap(), 1.0);
    }

    #[test]
    fn evaluate_rejects_bad_input() {
        let s = Landscape::sphere(2);
        assert!(matches!(
            s.evaluate(&Point::new(vec![1.0])),
            Err(Error::Dimension { expected: 2, actual: 1 })
        ));
        assert!(matches!(s.evaluate(&p2(f64::NAN, 0.0)), Err(Error::Input(_))));
        assert!(matches!(s.evaluate(&p2(f64::INFINITY, 0.0)), Err(Error::Input(_))));
    }

    #[test]
    fn elliptic_family_members() {
        // all-ones coefficients reproduce the sphere
        let s = make_elliptic(&EllipticParams::new(vec![1.0, 1.0]).unwrap());
        let sphere = Landscape::sphere(2);
        for &(a, b) in &[(0.5, -2.0), (3.0, 4.0), (-1.0, 1.0)] {
            assert_eq!(s.value(&[a, b]), sphere.value(&[a, b]));
        }
        // (1, 0.01) is x1^2 + (0.1 x2)^2
        let e = fe();
        for &(a, b) in &[(0.0, 10.0), (1.0, 5.0), (-2.0, -3.0)] {
            let direct = a * a + (0.1 * b) * (0.1 * b);
            assert!((e.value(&[a, b]) - direct).abs() <= 1e-15 * (1.0 + direct.abs()));
        }
        // degenerate landscape x1^2 via the explicit zero flag
        let z = make_elliptic(&EllipticParams::with_zeros(vec![1.0, 0.0]).unwrap());
        assert_eq!(z.value(&[2.0, 77.0]), 4.0);
        assert_eq!(z.value(&[0.0, -5.0]), 0.0);
        // zeros require the flag
        assert!(EllipticParams::new(vec![1.0, 0.0]).is_err());
        assert!(EllipticParams::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn elliptic_labels_record_coefficients() {
        assert_eq!(fe().label(), "elliptic:1,0.01");
    }

    #[test]
    fn valley_axis_picks_smallest_coefficient() {
        // brute-force check: minimize growth along each coordinate line
        let params = EllipticParams::new(vec![1.0, 0.01]).unwrap();
        let e = make_elliptic(&params);
        let growth_along = |axis: usize| {
            let mut x = [0.0, 0.0];
            x[axis] = 5.0;
            e.value(&x)
        };
        assert!(growth_along(1) < growth_along(0));
        let axis = valley_axis(&params).unwrap();
        assert_eq!(axis.free_axis, 1);
        assert!(!axis.globally_flat);
        assert_eq!(axis.point_at(3.0), p2(0.0, 3.0));
        assert_eq!(axis.to_string(), "axis x2: { x | x1 = 0 }");
    }

    #[test]
    fn valley_axis_tie_is_ambiguous() {
        let sphere = EllipticParams::new(vec![1.0, 1.0]).unwrap();
        assert!(matches!(valley_axis(&sphere), Err(Error::AmbiguousValley(_))));
    }

    #[test]
    fn valley_axis_flat_line_is_global_minimum() {
        let params = EllipticParams::with_zeros(vec![1.0, 0.0]).unwrap();
        let axis = valley_axis(&params).unwrap();
        assert_eq!(axis.free_axis, 1);
        assert!(axis.globally_flat);
        let z = make_elliptic(&params);
        for t in [-5.0, 0.0, 9.0] {
            assert_eq!(z.evaluate(&axis.point_at(t)).unwrap(), 0.0);
        }
    }

    #[test]
    fn negate_flips_sign_and_is_involutive() {
        let e = fe();
        let n = negate(&e);
        assert_eq!(n.evaluate(&p2(0.0, 10.0)).unwrap(), -1.0);
        assert_eq!(n.label(), "neg:elliptic:1,0.01");
        let nn = negate(&n);
        for &(a, b) in &[(0.3, -7.1), (0.0, 0.0), (-2.5, 4.0)] {
            // bitwise equality: double sign flip is exact
            assert_eq!(nn.value(&[a, b]).to_bits(), e.value(&[a, b]).to_bits());
        }
    }

    #[test]
    fn ridge_of_negated_elliptic_is_valley_of_elliptic() {
        // the ridge landscape -x1^2 - (0.1 x2)^2: its negation is fe,
        // whose valley axis is the ridge line { x1 = 0 }
        let ridge = negate(&fe());
        let back = negate(&ridge);
        assert_eq!(back.value(&[0.0, 10.0]), 1.0);
        let axis = valley_axis(&EllipticParams::new(vec![1.0, 0.01]).unwrap()).unwrap();
        assert_eq!(axis.free_axis, 1); // line x1 = 0
    }

    #[test]
    fn gradient_matches_analytic() {
        let s = Landscape::sphere(2);
        let g = gradient(&s, &p2(1.0, 0.0), 1e-5).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-6);
        assert!(g[1].abs() < 1e-6);

        let g = gradient(&fe(), &p2(0.0, 5.0), 1e-5).unwrap();
        assert!(g[0].abs() < 1e-6);
        assert!((g[1] - 0.1).abs() < 1e-6);

        // stationarity at global minima
        for l in [Landscape::sphere(2), fe(), Landscape::rosenbrock()] {
            let min = if l.label() == "rosenbrock" { p2(1.0, 1.0) } else { p2(0.0, 0.0) };
            let g = gradient(&l, &min, 1e-5).unwrap();
            assert!(g.coords().iter().all(|c| c.abs() < 1e-3), "{l:?}: {g}");
        }
    }

    #[test]
    fn gradient_rejects_bad_step() {
        assert!(matches!(
            gradient(&Landscape::sphere(2), &p2(0.0, 0.0), 0.0),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            gradient(&Landscape::sphere(2), &p2(0.0, 0.0), -1.0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn domain_validation() {
        assert!(Domain::<f64>::cube(5.0, 5.0, 2).is_err());
        assert!(Domain::<f64>::cube(6.0, 5.0, 2).is_err());
        let d = Domain::<f64>::cube(5.0, 6.0, 2).unwrap();
        assert!(d.contains(&p2(5.5, 6.0)));
        assert!(!d.contains(&p2(4.9, 5.5)));
    }

    #[test]
    fn domain_and_point_parsing() {
        let d: Domain<f64> = "-10:10,-1:2".parse().unwrap();
        assert_eq!(d.lower(), &p2(-10.0, -1.0));
        assert_eq!(d.upper(), &p2(10.0, 2.0));
        assert_eq!(d.to_string(), "-10:10,-1:2");
        let p: Point<f64> = "0,3".parse().unwrap();
        assert_eq!(p, p2(0.0, 3.0));
        assert!("5:4".parse::<Domain<f64>>().is_err());
        assert!("1:".parse::<Domain<f64>>().is_err());
        assert!("a,b".parse::<Point<f64>>().is_err());
        assert!("inf,0".parse::<Point<f64>>().is_err());
    }

    #[test]
    fn generic_scalar_evaluation() {
        let e32 = make_elliptic(&EllipticParams::<f32>::new(vec![1.0, 0.01]).unwrap());
        let v = e32.evaluate(&Point::new(vec![0.0f32, 10.0])).unwrap();
        assert!((v - 1.0).abs() < 1e-6);
    }
}

//! Homeomorphism-based construction of new landscapes: `g = f ∘ h⁻¹`.

use std::fmt;
use std::sync::Arc;

use super::{Landscape, Point};
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

type CoordMap<F> = Arc<dyn Fn(&[F]) -> Vec<F> + Send + Sync>;

/// A continuous bijection `R^d -> R^d` with its inverse.
///
/// Constructors only supply the two maps; `inverse(forward(x)) = x` is
/// enforced (on probe points) when the map is used to build a landscape.
#[derive(Clone)]
pub struct Homeomorphism<F> {
    forward: CoordMap<F>,
    inverse: CoordMap<F>,
    dim: usize,
    label: String,
}

impl<F: Real> Homeomorphism<F> {
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        forward: impl Fn(&[F]) -> Vec<F> + Send + Sync + 'static,
        inverse: impl Fn(&[F]) -> Vec<F> + Send + Sync + 'static,
    ) -> Self {
        Self {
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            dim,
            label: label.into(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new("id", dim, |x: &[F]| x.to_vec(), |y: &[F]| y.to_vec())
    }

    /// The linear map `y_i = a_i x_i`; every `a_i` must be nonzero.
    pub fn axis_scaling(scales: Vec<F>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::Config("empty scale list".into()));
        }
        if scales.iter().any(|&a| a == F::zero() || !a.is_finite()) {
            return Err(Error::Config("axis scales must be finite and nonzero".into()));
        }
        let label = format!(
            "scale:{}",
            scales.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        );
        let dim = scales.len();
        let fwd = scales.clone();
        let inv = scales;
        Ok(Self::new(
            label,
            dim,
            move |x: &[F]| x.iter().zip(&fwd).map(|(&xi, &a)| a * xi).collect(),
            move |y: &[F]| y.iter().zip(&inv).map(|(&yi, &a)| yi / a).collect(),
        ))
    }

    /// The planar map `y1 = 1 - x1`, `y2 = x2 + (1 - x1)^2` that turns the
    /// elliptic landscape `x1^2 + 100 x2^2` into the Rosenbrock function.
    pub fn rosenbrock_map() -> Self {
        Self::new(
            "rosen",
            2,
            |x: &[F]| {
                let one = F::one();
                let y1 = one - x[0];
                vec![y1, x[1] + y1 * y1]
            },
            |y: &[F]| {
                let one = F::one();
                vec![one - y[0], y[1] - y[0] * y[0]]
            },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn forward(&self, x: &[F]) -> Vec<F> {
        debug_assert_eq!(x.len(), self.dim);
        (self.forward)(x)
    }

    pub fn inverse(&self, y: &[F]) -> Vec<F> {
        debug_assert_eq!(y.len(), self.dim);
        (self.inverse)(y)
    }

    /// Max infinity-norm round-trip error of `inverse ∘ forward` and
    /// `forward ∘ inverse` over the given points.
    pub fn round_trip_error<'a>(&self, points: impl IntoIterator<Item = &'a Point<F>>) -> F
    where
        F: 'a,
    {
        let mut worst = F::zero();
        for p in points {
            let x = p.coords();
            for back in [self.inverse(&self.forward(x)), self.forward(&self.inverse(x))] {
                for (bi, &xi) in back.iter().zip(x) {
                    let err = (*bi - xi).abs();
                    if err > worst {
                        worst = err;
                    }
                }
            }
        }
        worst
    }
}

impl<F> fmt::Debug for Homeomorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homeomorphism")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .finish()
    }
}

/// A landscape induced through a coordinate map: `g(y) = f(h⁻¹(y))`, so
/// `g(h(x)) = f(x)` by construction.
#[derive(Clone, Debug)]
pub struct TransformedLandscape<F> {
    base: Landscape<F>,
    map: Homeomorphism<F>,
    induced: Landscape<F>,
}

impl<F: Real> TransformedLandscape<F> {
    pub fn base(&self) -> &Landscape<F> {
        &self.base
    }

    pub fn map(&self) -> &Homeomorphism<F> {
        &self.map
    }

    /// The induced landscape `g`.
    pub fn landscape(&self) -> &Landscape<F> {
        &self.induced
    }

    pub fn into_landscape(self) -> Landscape<F> {
        self.induced
    }
}

/// Probe lattice for the round-trip check: origin, `±e_i`, `±e_i/2`, and
/// the corners of `[-1,1]^d` (capped at 64 corners).
fn probe_points<F: Real>(dim: usize) -> Vec<Point<F>> {
    let half = real::<F>(0.5);
    let mut pts = vec![Point::origin(dim)];
    for i in 0..dim {
        for mag in [F::one(), half] {
            for sign in [F::one(), -F::one()] {
                let mut coords = vec![F::zero(); dim];
                coords[i] = sign * mag;
                pts.push(Point::new(coords));
            }
        }
    }
    let corners = 1usize << dim.min(6);
    for bits in 0..corners {
        let coords = (0..dim)
            .map(|i| if i < 6 && bits >> i & 1 == 1 { F::one() } else { -F::one() })
            .collect();
        pts.push(Point::new(coords));
    }
    pts
}

/// Builds `g(y) = base(h⁻¹(y))` after verifying the map round-trips on a
/// deterministic probe lattice. The tolerance is `1e-9`, widened to a few
/// machine epsilons for low-precision scalars.
pub fn make_transformed<F: Real>(
    base: &Landscape<F>,
    map: &Homeomorphism<F>,
) -> Result<TransformedLandscape<F>> {
    if base.dim() != map.dim() {
        return Err(Error::Dimension { expected: base.dim(), actual: map.dim() });
    }
    let tol = real::<F>(1e-9).max(real::<F>(32.0) * F::epsilon());
    let err = map.round_trip_error(&probe_points(map.dim()));
    if !(err <= tol) {
        return Err(Error::InvalidHomeomorphism(format!(
            "map '{}' round-trip error {} exceeds {}",
            map.label(),
            err,
            tol
        )));
    }
    let inverse = map.inverse.clone();
    let base_fn = base.objective.clone();
    let induced = Landscape {
        objective: Arc::new(move |y: &[F]| (base_fn)(&(inverse)(y))),
        dim: base.dim(),
        label: format!("homeo:{}({})", map.label(), base.label()),
    };
    Ok(TransformedLandscape { base: base.clone(), map: map.clone(), induced })
}

/// Outcome of a fitness-order comparison between a base landscape and a
/// transformed one over sampled point pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    /// Pairs whose comparison sign differs between `f` and `g ∘ h`.
    pub violations: usize,
    /// Pairs within the tie tolerance on either side (not counted as
    /// violations).
    pub ties: usize,
    pub total: usize,
}

/// Counts pairs `(x, x')` for which `sign(f(x) - f(x'))` disagrees with
/// `sign(g(h(x)) - g(h(x')))`. Differences within `1e-12` absolute on
/// either side are ties and are excluded.
pub fn check_order_preservation<F: Real>(
    base: &Landscape<F>,
    transformed: &TransformedLandscape<F>,
    pairs: &[(Point<F>, Point<F>)],
) -> Result<OrderCheck> {
    let tol = real::<F>(1e-12);
    let g = transformed.landscape();
    let h = transformed.map();
    let mut violations = 0;
    let mut ties = 0;
    for (x, x2) in pairs {
        let df = base.evaluate(x)? - base.evaluate(x2)?;
        let dg = g.value(&h.forward(x.coords())) - g.value(&h.forward(x2.coords()));
        if df.abs() <= tol || dg.abs() <= tol {
            ties += 1;
        } else if (df > F::zero()) != (dg > F::zero()) {
            violations += 1;
        }
    }
    Ok(OrderCheck { violations, ties, total: pairs.len() })
}

//! Deterministic, splittable random sampling.
//!
//! Every random quantity in this crate is drawn from a counter-based
//! SplitMix64 stream addressed by a `(seed, stream id)` pair, so any run is
//! bit-reproducible from its [`RunConfig`] alone, independently of thread
//! scheduling or call order.
//!
//! The exact construction, for cross-implementation compatibility:
//!
//! - `mix64` is the SplitMix64 finalizer (Vigna):
//!   `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!    z *= 0x94D049BB133111EB; z ^= z >> 31` (wrapping arithmetic).
//! - a stream's base state is
//!   `mix64(mix64(seed) ^ mix64(id ^ 0x9E3779B97F4A7C15))`.
//! - the k-th output (k starting at 1) is
//!   `mix64(base + k * 0x9E3779B97F4A7C15)` (wrapping).
//! - uniform reals in `[0, 1)` take the top 53 bits of the output:
//!   `(u >> 11) * 2^-53` evaluated in f64.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::landscape::{Domain, Point};
use crate::scalar::{real, Real};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A counter-based SplitMix64 stream. Value-like: clone freely, never
/// share mutably; parallel consumers own distinct stream ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    id: u64,
    base: u64,
    drawn: u64,
}

impl RngStream {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Draws consumed so far.
    pub fn drawn(&self) -> u64 {
        self.drawn
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.drawn += 1;
        mix64(self.base.wrapping_add(GOLDEN.wrapping_mul(self.drawn)))
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform in `[lo, hi]`. The draw happens in f64 and is then
    /// converted, so all scalar types see the same underlying sequence.
    #[inline]
    pub fn uniform<F: Real>(&mut self, lo: F, hi: F) -> F {
        let lo = lo.to_f64().expect("finite bound");
        let hi = hi.to_f64().expect("finite bound");
        real(lo + self.next_f64() * (hi - lo))
    }
}

impl fmt::Display for RngStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stream(seed={}, id={}, drawn={})", self.seed, self.id, self.drawn)
    }
}

/// The stream addressed by `(seed, id)`; a pure function of its inputs.
pub fn substream(seed: u64, id: u64) -> RngStream {
    RngStream {
        seed,
        id,
        base: mix64(mix64(seed) ^ mix64(id ^ GOLDEN)),
        drawn: 0,
    }
}

/// `count` i.i.d. uniform points in the box; consumes exactly
/// `count * d` draws, coordinate order within each point.
pub fn uniform_in_box<F: Real>(
    stream: &mut RngStream,
    domain: &Domain<F>,
    count: usize,
) -> Vec<Point<F>> {
    let d = domain.dim();
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let coords = (0..d)
            .map(|i| stream.uniform(domain.lower()[i], domain.upper()[i]))
            .collect();
        points.push(Point::new(coords));
    }
    points
}

/// The full determinism contract of one experiment run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig<F> {
    /// Landscape label resolved through the function registry.
    pub function: String,
    pub domain: Domain<F>,
    pub seed: u64,
    /// Population size N for sampling-based commands.
    pub population: usize,
    /// Selection size M (best-of-population truncation).
    pub selection: usize,
    /// Monte-Carlo sample budget n per ratio estimate.
    pub samples: u64,
    /// Neighborhood half-width candidates, ascending.
    pub deltas: Vec<F>,
}

impl<F: Real> RunConfig<F> {
    pub fn validate(&self) -> Result<()> {
        if self.selection < 1 || self.selection > self.population {
            return Err(Error::Config(format!(
                "need 1 <= selection <= population, got {} and {}",
                self.selection, self.population
            )));
        }
        if self.samples < 1 {
            return Err(Error::Config("sample budget must be >= 1".into()));
        }
        if self.deltas.is_empty() {
            return Err(Error::Config("delta list must not be empty".into()));
        }
        for &d in &self.deltas {
            if !(d > F::zero()) || !d.is_finite() {
                return Err(Error::Config(format!("delta {d} must be finite and > 0")));
            }
        }
        Ok(())
    }

    /// Serializes as the flat `key=value` text format, one pair per line.
    pub fn to_text(&self) -> String {
        let deltas = self
            .deltas
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "function={}\ndomain={}\nseed={}\npopulation={}\nselection={}\nsamples={}\ndeltas={}\n",
            self.function, self.domain, self.seed, self.population, self.selection, self.samples,
            deltas
        )
    }
}

/// A partially specified [`RunConfig`], as read from a `key=value` file.
/// Later sources (CLI flags) override these values; missing keys fall back
/// to defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialRunConfig<F> {
    pub function: Option<String>,
    pub domain: Option<Domain<F>>,
    pub seed: Option<u64>,
    pub population: Option<usize>,
    pub selection: Option<usize>,
    pub samples: Option<u64>,
    pub deltas: Option<Vec<F>>,
}

impl<F> Default for PartialRunConfig<F> {
    fn default() -> Self {
        Self {
            function: None,
            domain: None,
            seed: None,
            population: None,
            selection: None,
            samples: None,
            deltas: None,
        }
    }
}

impl<F: Real> PartialRunConfig<F> {
    /// Parses the `key=value` format: one pair per line, `#` comments and
    /// blank lines ignored, later duplicates win.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "function" => cfg.function = Some(value.to_string()),
                "domain" => cfg.domain = Some(value.parse()?),
                "seed" => cfg.seed = Some(parse_num(key, value)?),
                "population" => cfg.population = Some(parse_num(key, value)?),
                "selection" => cfg.selection = Some(parse_num(key, value)?),
                "samples" => cfg.samples = Some(parse_num(key, value)?),
                "deltas" => cfg.deltas = Some(parse_deltas(value)?),
                _ => return Err(Error::Config(format!("unknown config key '{key}'"))),
            }
        }
        Ok(cfg)
    }

    /// Overlays `self` on top of `base` (set fields win).
    pub fn over(self, base: Self) -> Self {
        Self {
            function: self.function.or(base.function),
            domain: self.domain.or(base.domain),
            seed: self.seed.or(base.seed),
            population: self.population.or(base.population),
            selection: self.selection.or(base.selection),
            samples: self.samples.or(base.samples),
            deltas: self.deltas.or(base.deltas),
        }
    }
}

pub fn parse_deltas<F: Real>(value: &str) -> Result<Vec<F>> {
    value
        .split(',')
        .map(|tok| {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad delta '{tok}'")))?;
            Ok(real::<F>(v))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{value}' for key '{key}'")))
}

/// Map of `(key, value)` pairs sorted by key, handy for provenance echoes.
pub fn config_lines(cfg: &RunConfig<impl Real>) -> BTreeMap<&'static str, String> {
    let mut map = BTreeMap::new();
    map.insert("function", cfg.function.clone());
    map.insert("domain", cfg.domain.to_string());
    map.insert("seed", cfg.seed.to_string());
    map.insert("population", cfg.population.to_string());
    map.insert("selection", cfg.selection.to_string());
    map.insert("samples", cfg.samples.to_string());
    map.insert(
        "deltas",
        cfg.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
    );
    map
}

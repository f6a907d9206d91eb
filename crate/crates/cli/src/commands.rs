//! Subcommand implementations.

use valleyscape::landscape::grid_evaluate;
use valleyscape::pca::pca_projection;
use valleyscape::ratio::{
    gradient_alignment, narrowness_beta, ratio_scan_csv, valley_point_test_with, width_alpha,
    RatioValue,
};
use valleyscape::registry::{available_forms, parse_landscape, split_function_list};
use valleyscape::render::{render_contour_svg, render_scatter_svg, Layer, Marker, PlotSpec};
use valleyscape::sampling::substream;
use valleyscape::{median, Landscape64, Point64, RunConfig64};

use crate::config::{echo_config, emit, parse_points};
use crate::csvin;
use crate::{CliError, Command};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::ListFunctions => list_functions(),
        Command::EvalGrid { cfg, res, out } => {
            let resolved = cfg.resolve(None, true)?;
            echo_config(&resolved.config);
            println!("# res={res}");
            let grid = grid_evaluate(
                resolved.landscape.as_ref().unwrap(),
                &resolved.config.domain,
                res,
            )?;
            emit(&out, &grid.to_csv())
        }
        Command::Ratio { cfg, point, delta, out } => {
            let points = parse_point_flags(&point)?;
            let resolved = cfg.resolve(Some(points[0].dim()), true)?;
            let config = override_delta(resolved.config, delta)?;
            echo_config(&config);
            let csv = scan(resolved.landscape.as_ref().unwrap(), &points, &config)?;
            emit(&out, &csv)
        }
        Command::ValleyTest { cfg, point, delta, out } => {
            let p: Point64 = point.parse()?;
            let resolved = cfg.resolve(Some(p.dim()), true)?;
            let config = override_delta(resolved.config, delta)?;
            echo_config(&config);
            let landscape = resolved.landscape.as_ref().unwrap();
            let points = [p];
            let csv = scan(landscape, &points, &config)?;
            // one verdict line per delta
            for (i, &d) in config.deltas.iter().enumerate() {
                let row = csv.lines().nth(i + 1).unwrap_or_default();
                let verdict = row.rsplit(',').next().unwrap_or("?");
                println!("delta={d}: valley point = {verdict}");
            }
            emit(&out, &csv)
        }
        Command::Beta { cfg, points, delta, out } => {
            let pts = parse_points(&points.points)?;
            let resolved = cfg.resolve(Some(pts[0].dim()), true)?;
            let config = override_delta(resolved.config, delta)?;
            echo_config(&config);
            let landscape = resolved.landscape.as_ref().unwrap();
            let d = config.deltas[0];
            let report = narrowness_beta(landscape, &pts, d, config.samples, config.seed)?;
            let mut csv = per_point_header(pts[0].dim());
            for (p, est) in pts.iter().zip(&report.per_point) {
                csv.push_str(&per_point_row(p, d, est));
            }
            println!("beta = {}", report.beta);
            if let Some(i) = report.argmax {
                println!("argmax point = {}", pts[i]);
            }
            emit(&out, &csv)
        }
        Command::Alpha { cfg, points, out } => {
            let pts = parse_points(&points.points)?;
            let resolved = cfg.resolve(Some(pts[0].dim()), true)?;
            echo_config(&resolved.config);
            let landscape = resolved.landscape.as_ref().unwrap();
            let config = &resolved.config;
            let report =
                width_alpha(landscape, &pts, &config.deltas, config.samples, config.seed)?;
            let mut csv = String::from("delta,pass_count,total,all_pass\n");
            for row in &report.rows {
                let passes = row.verdicts.iter().filter(|&&v| v).count();
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    row.delta,
                    passes,
                    row.verdicts.len(),
                    row.all_pass
                ));
            }
            match report.alpha {
                Some(a) => println!("alpha = {a}"),
                None => println!("alpha = none (smallest candidate already fails)"),
            }
            emit(&out, &csv)
        }
        Command::Align { cfg, points, direction, step, out } => {
            let pts = parse_points(&points.points)?;
            let resolved = cfg.resolve(Some(pts[0].dim()), true)?;
            echo_config(&resolved.config);
            println!("# step={step}");
            let dir = normalized_direction(&direction, pts[0].dim())?;
            let landscape = resolved.landscape.as_ref().unwrap();
            let alignments = gradient_alignment(landscape, &dir, &pts, step)?;
            let mut csv = String::new();
            for axis in 0..pts[0].dim() {
                csv.push_str(&format!("x{},", axis + 1));
            }
            csv.push_str("angle_deg,stationary\n");
            for a in &alignments {
                for &c in a.point.coords() {
                    csv.push_str(&format!("{c},"));
                }
                csv.push_str(&format!("{},{}\n", a.angle_deg, a.stationary));
            }
            emit(&out, &csv)
        }
        Command::Pca { cfg, out, svg } => {
            let resolved = cfg.resolve(None, true)?;
            echo_config(&resolved.config);
            let config = &resolved.config;
            let landscape = resolved.landscape.as_ref().unwrap();
            let estimate = pca_projection(
                landscape,
                &config.domain,
                config.population,
                config.selection,
                config.seed,
            )?;
            println!("{}", estimate.summary());
            if let Some(path) = &svg {
                if config.domain.dim() != 2 {
                    return Err(CliError::Usage("--svg needs a 2-d domain".into()));
                }
                let doc = render_scatter_svg(&pca_plot_spec(config, &estimate))?;
                emit(&Some(path.clone()), &doc)?;
            }
            emit(&out, &estimate.to_csv())
        }
        Command::ComparePca { cfg, functions, seeds, out } => {
            if seeds == 0 {
                return Err(CliError::Usage("--seeds must be >= 1".into()));
            }
            let labels = split_function_list(&functions)?;
            let resolved = cfg.resolve(None, false)?;
            echo_config(&resolved.config);
            println!("# functions={}", labels.join("|"));
            println!("# seeds={seeds}");
            let config = &resolved.config;
            let mut csv = String::from("function,median_eigen_ratio\n");
            println!("{:<28} median lambda1/lambda2 over {seeds} seeds", "function");
            for label in &labels {
                let landscape: Landscape64 = parse_landscape(label, config.domain.dim())?;
                let ratios: Vec<f64> = (config.seed..config.seed + seeds)
                    .map(|seed| {
                        let est = pca_projection(
                            &landscape,
                            &config.domain,
                            config.population,
                            config.selection,
                            seed,
                        )?;
                        Ok(match est.eigen_ratio {
                            Some(r) => r.as_finite().unwrap_or(f64::INFINITY),
                            None => f64::INFINITY,
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                let m = median(&ratios);
                println!("{label:<28} {m}");
                csv.push_str(&format!("{label},{m}\n"));
            }
            if out.is_some() {
                emit(&out, &csv)?;
            }
            Ok(())
        }
        Command::Render { grid, pca, levels, title, out } => {
            if grid.is_none() && pca.is_none() {
                return Err(CliError::Usage("render needs --grid and/or --pca".into()));
            }
            if levels < 2 {
                return Err(CliError::Usage("--levels must be >= 2".into()));
            }
            let doc = match (&grid, &pca) {
                (Some(gpath), None) => {
                    let g = csvin::read_grid(gpath)?;
                    render_contour_svg(&g, levels)?
                }
                _ => {
                    let mut spec = layered_spec(&title, &grid, &pca, levels)?;
                    spec.title = title;
                    render_scatter_svg(&spec)?
                }
            };
            emit(&Some(out), &doc)
        }
    }
}

fn list_functions() -> Result<(), CliError> {
    println!("available function labels:");
    println!("  sphere                 sum of squares (benchmark, no valley)");
    println!("  elliptic:<c1,...,cd>   sum of c_i x_i^2, all c_i > 0");
    println!("  fz                     x1^2 (degenerate: flat valley line x1 = 0)");
    println!("  rosenbrock             (1-x1)^2 + 100 (x2 - x1^2)^2");
    println!("  neg:<label>            sign flip of another label (ridge analysis)");
    println!("  homeo:rosen(<label>)   Rosenbrock coordinate map applied to a base");
    println!();
    println!("grammar: {}", available_forms());
    Ok(())
}

fn parse_point_flags(raw: &[String]) -> Result<Vec<Point64>, CliError> {
    let points = raw
        .iter()
        .map(|s| s.parse::<Point64>())
        .collect::<Result<Vec<_>, _>>()?;
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(CliError::Usage("points must share one dimension".into()));
    }
    Ok(points)
}

fn override_delta(mut config: RunConfig64, delta: Option<f64>) -> Result<RunConfig64, CliError> {
    if let Some(d) = delta {
        config.deltas = vec![d];
        config.validate()?;
    }
    Ok(config)
}

/// Valley tests for every (delta, point) pair; substream id is
/// `delta_index * points + point_index`, matching the width search.
fn scan(
    landscape: &Landscape64,
    points: &[Point64],
    config: &RunConfig64,
) -> Result<String, CliError> {
    let mut results = Vec::new();
    for (di, &delta) in config.deltas.iter().enumerate() {
        for (pi, p) in points.iter().enumerate() {
            let id = (di * points.len() + pi) as u64;
            results.push(valley_point_test_with(
                landscape,
                p,
                delta,
                config.samples,
                &substream(config.seed, id),
            )?);
        }
    }
    Ok(ratio_scan_csv(&results))
}

fn per_point_header(dim: usize) -> String {
    let mut s = String::new();
    for axis in 0..dim {
        s.push_str(&format!("x{},", axis + 1));
    }
    s.push_str("delta,lower,higher,ties,ratio,se\n");
    s
}

fn per_point_row(p: &Point64, delta: f64, est: &valleyscape::RatioEstimate64) -> String {
    let mut s = String::new();
    for &c in p.coords() {
        s.push_str(&format!("{c},"));
    }
    let se = match est.std_error {
        Some(se) => se.to_string(),
        None => "nan".into(),
    };
    let ratio = match est.ratio {
        RatioValue::Finite(r) => r.to_string(),
        RatioValue::Infinite => "inf".into(),
        RatioValue::Undefined => "undefined".into(),
    };
    s.push_str(&format!(
        "{delta},{},{},{},{ratio},{se}\n",
        est.lower, est.higher, est.ties
    ));
    s
}

fn normalized_direction(raw: &str, dim: usize) -> Result<Vec<f64>, CliError> {
    let p: Point64 = raw.parse()?;
    if p.dim() != dim {
        return Err(CliError::Usage(format!(
            "direction has dimension {}, points have {dim}",
            p.dim()
        )));
    }
    let norm = p.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(CliError::Usage("direction must be nonzero".into()));
    }
    Ok(p.coords().iter().map(|c| c / norm).collect())
}

fn pca_plot_spec(config: &RunConfig64, estimate: &valleyscape::ValleyEstimate64) -> PlotSpec {
    let to_xy = |pts: &[Point64]| pts.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
    let mut spec = PlotSpec::new(
        format!(
            "{} pca: N={} M={} seed={}",
            config.function, config.population, config.selection, config.seed
        ),
        (config.domain.lower()[0], config.domain.upper()[0]),
        (config.domain.lower()[1], config.domain.upper()[1]),
    );
    spec.layers.push(Layer::Points {
        label: "population".into(),
        marker: Marker::Circle,
        points: to_xy(&estimate.population),
    });
    spec.layers.push(Layer::Points {
        label: "selected".into(),
        marker: Marker::Cross,
        points: to_xy(&estimate.selected.points),
    });
    spec.layers.push(Layer::Points {
        label: "projected".into(),
        marker: Marker::Dot,
        points: to_xy(&estimate.reconstructed),
    });
    spec
}

/// Scatter spec combining an optional heatmap with optional PCA layers.
fn layered_spec(
    title: &str,
    grid: &Option<std::path::PathBuf>,
    pca: &Option<std::path::PathBuf>,
    levels: usize,
) -> Result<PlotSpec, CliError> {
    let mut layers = Vec::new();
    let mut ranges: Option<((f64, f64), (f64, f64))> = None;
    if let Some(gpath) = grid {
        let g = csvin::read_grid(gpath)?;
        ranges = Some((
            (g.domain().lower()[0], g.domain().upper()[0]),
            (g.domain().lower()[1], g.domain().upper()[1]),
        ));
        layers.push(Layer::Heatmap { grid: g, levels });
    }
    if let Some(ppath) = pca {
        let pts = csvin::read_pca(ppath)?;
        if pts.population.first().map(Point64::dim).unwrap_or(2) != 2 {
            return Err(CliError::Usage("render needs 2-d PCA data".into()));
        }
        if ranges.is_none() {
            ranges = Some(bounding_ranges(&pts)?);
        }
        let to_xy = |v: &[Point64]| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        layers.push(Layer::Points {
            label: "population".into(),
            marker: Marker::Circle,
            points: to_xy(&pts.population),
        });
        layers.push(Layer::Points {
            label: "selected".into(),
            marker: Marker::Cross,
            points: to_xy(&pts.selected),
        });
        layers.push(Layer::Points {
            label: "projected".into(),
            marker: Marker::Dot,
            points: to_xy(&pts.projected),
        });
    }
    let (x_range, y_range) = ranges.ok_or_else(|| CliError::Usage("no drawable data".into()))?;
    let mut spec = PlotSpec::new(title, x_range, y_range);
    spec.layers = layers;
    Ok(spec)
}

/// Bounding box of all PCA point sets, padded 5% per side.
fn bounding_ranges(pts: &csvin::PcaPoints) -> Result<((f64, f64), (f64, f64)), CliError> {
    let all = pts
        .population
        .iter()
        .chain(&pts.selected)
        .chain(&pts.projected)
        .collect::<Vec<_>>();
    if all.is_empty() {
        return Err(CliError::Usage("PCA CSV holds no points".into()));
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in all {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let pad = |lo: f64, hi: f64| {
        let span = if hi > lo { hi - lo } else { 2.0 };
        (lo - 0.05 * span, hi + 0.05 * span)
    };
    Ok((pad(lo[0], hi[0]), pad(lo[1], hi[1])))
}

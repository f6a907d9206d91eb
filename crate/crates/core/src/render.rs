//! Self-contained SVG renderings: cell heatmaps of grid dumps and layered
//! scatter plots of point sets. Rendering is a pure function of its
//! inputs, so identical data gives byte-identical documents.

use crate::error::{Error, Result};
use crate::landscape::Grid;
use crate::scalar::Real;

const CANVAS_W: f64 = 720.0;
const CANVAS_H: f64 = 480.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 136.0; // leaves room for the legend
const MARGIN_TOP: f64 = 28.0;
const MARGIN_BOTTOM: f64 = 44.0;

/// Marker styles for point layers. Population points render as small
/// circles, selected points as an `x` cross, projected points as filled
/// dots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    Circle,
    Cross,
    Dot,
}

impl Marker {
    fn color(self) -> &'static str {
        match self {
            Marker::Circle => "#1f77b4",
            Marker::Cross => "#d62728",
            Marker::Dot => "#2ca02c",
        }
    }
}

/// One drawable layer; layers render in order.
#[derive(Clone, Debug)]
pub enum Layer {
    /// Filled-cell heatmap of a 2-d grid with `levels` quantile bins.
    Heatmap { grid: Grid<f64>, levels: usize },
    Points { label: String, marker: Marker, points: Vec<(f64, f64)> },
    Segments { label: String, segments: Vec<((f64, f64), (f64, f64))> },
}

/// A complete plot description.
#[derive(Clone, Debug)]
pub struct PlotSpec {
    pub title: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub layers: Vec<Layer>,
}

impl PlotSpec {
    pub fn new(title: impl Into<String>, x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        Self { title: title.into(), x_range, y_range, layers: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("x", self.x_range), ("y", self.y_range)] {
            if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
                return Err(Error::Config(format!("bad {name} range {lo}..{hi}")));
            }
        }
        for layer in &self.layers {
            if let Layer::Heatmap { grid, levels } = layer {
                if grid.dim() != 2 {
                    return Err(Error::Config(format!(
                        "heatmap layer needs a 2-d grid, got {}-d",
                        grid.dim()
                    )));
                }
                if *levels < 2 {
                    return Err(Error::Config("heatmap needs at least 2 levels".into()));
                }
            }
        }
        Ok(())
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn plot_w(&self) -> f64 {
        CANVAS_W - MARGIN_LEFT - MARGIN_RIGHT
    }

    fn plot_h(&self) -> f64 {
        CANVAS_H - MARGIN_TOP - MARGIN_BOTTOM
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * self.plot_w()
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN_TOP + (1.0 - (y - self.y0) / (self.y1 - self.y0)) * self.plot_h()
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }
}

fn fmt_px(v: f64) -> String {
    format!("{v:.2}")
}

fn svg_header(title: &str) -> String {
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            "\n",
            r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##,
            "\n",
            r#"<text x="{tx}" y="18" font-family="monospace" font-size="13" text-anchor="middle">{title}</text>"#,
            "\n"
        ),
        w = CANVAS_W,
        h = CANVAS_H,
        tx = MARGIN_LEFT + (CANVAS_W - MARGIN_LEFT - MARGIN_RIGHT) / 2.0,
        title = xml_escape(title),
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(frame: &Frame) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000000" stroke-width="1"/>"##,
        fmt_px(MARGIN_LEFT),
        fmt_px(MARGIN_TOP),
        fmt_px(frame.plot_w()),
        fmt_px(frame.plot_h()),
    ));
    out.push('\n');
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = frame.x0 + t * (frame.x1 - frame.x0);
        let yv = frame.y0 + t * (frame.y1 - frame.y0);
        let px = frame.px(xv);
        let py = frame.py(yv);
        out.push_str(&format!(
            r##"<line x1="{px}" y1="{b}" x2="{px}" y2="{b2}" stroke="#000000"/>"##,
            px = fmt_px(px),
            b = fmt_px(CANVAS_H - MARGIN_BOTTOM),
            b2 = fmt_px(CANVAS_H - MARGIN_BOTTOM + 4.0),
        ));
        out.push_str(&format!(
            r#"<text x="{px}" y="{ty}" font-family="monospace" font-size="10" text-anchor="middle">{xv}</text>"#,
            px = fmt_px(px),
            ty = fmt_px(CANVAS_H - MARGIN_BOTTOM + 16.0),
            xv = tick_label(xv),
        ));
        out.push_str(&format!(
            r##"<line x1="{l2}" y1="{py}" x2="{l}" y2="{py}" stroke="#000000"/>"##,
            l2 = fmt_px(MARGIN_LEFT - 4.0),
            l = fmt_px(MARGIN_LEFT),
            py = fmt_px(py),
        ));
        out.push_str(&format!(
            r#"<text x="{tx}" y="{py}" font-family="monospace" font-size="10" text-anchor="end" dominant-baseline="middle">{yv}</text>"#,
            tx = fmt_px(MARGIN_LEFT - 7.0),
            py = fmt_px(py + 1.0),
            yv = tick_label(yv),
        ));
        out.push('\n');
    }
    out.push_str(&format!(
        r#"<text x="{x}" y="{y}" font-family="monospace" font-size="11" text-anchor="middle">x1</text>"#,
        x = fmt_px(MARGIN_LEFT + frame.plot_w() / 2.0),
        y = fmt_px(CANVAS_H - 10.0),
    ));
    out.push_str(&format!(
        r#"<text x="14" y="{y}" font-family="monospace" font-size="11" text-anchor="middle" transform="rotate(-90 14 {y})">x2</text>"#,
        y = fmt_px(MARGIN_TOP + frame.plot_h() / 2.0),
    ));
    out.push('\n');
    out
}

fn tick_label(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6; // drop affine-arithmetic dust
    format!("{r}")
}

/// Quantile bin edges (nearest-rank) for `levels` bins over the values.
fn quantile_edges(values: &[f64], levels: usize) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (1..levels)
        .map(|k| sorted[(k * sorted.len() / levels).min(sorted.len() - 1)])
        .collect()
}

fn bin_of(edges: &[f64], v: f64) -> usize {
    edges.iter().filter(|&&e| e < v).count()
}

/// Dark-to-light color ramp over `[0, 1]`.
fn ramp(t: f64) -> String {
    let lerp = |a: f64, b: f64| (a + t * (b - a)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(68.0, 253.0), lerp(1.0, 231.0), lerp(84.0, 37.0))
}

struct Binning {
    edges: Vec<f64>,
    levels: usize,
    min: f64,
    max: f64,
}

impl Binning {
    fn new(values: &[f64], levels: usize) -> Self {
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            // constant grid: a single bin
            Self { edges: Vec::new(), levels: 1, min, max }
        } else {
            Self { edges: quantile_edges(values, levels), levels, min, max }
        }
    }

    fn color(&self, v: f64) -> String {
        if self.levels == 1 {
            return ramp(0.0);
        }
        let bin = bin_of(&self.edges, v).min(self.levels - 1);
        ramp(bin as f64 / (self.levels - 1) as f64)
    }

    fn legend(&self) -> String {
        let mut out = String::new();
        let x = CANVAS_W - MARGIN_RIGHT + 14.0;
        out.push_str(&format!(
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="10">f bins</text>"#,
            x = fmt_px(x),
            y = fmt_px(MARGIN_TOP + 8.0),
        ));
        out.push('\n');
        for bin in 0..self.levels {
            let y = MARGIN_TOP + 16.0 + bin as f64 * 16.0;
            let color = if self.levels == 1 {
                ramp(0.0)
            } else {
                ramp(bin as f64 / (self.levels - 1) as f64)
            };
            let lo = if bin == 0 { self.min } else { self.edges[bin - 1] };
            let hi = if bin + 1 == self.levels { self.max } else { self.edges[bin] };
            out.push_str(&format!(
                r#"<rect x="{x}" y="{y}" width="12" height="12" fill="{color}"/>"#,
                x = fmt_px(x),
                y = fmt_px(y),
            ));
            out.push_str(&format!(
                r#"<text x="{tx}" y="{ty}" font-family="monospace" font-size="9">{lo:.3e} .. {hi:.3e}</text>"#,
                tx = fmt_px(x + 16.0),
                ty = fmt_px(y + 10.0),
            ));
            out.push('\n');
        }
        out
    }
}

fn heatmap_cells(grid: &Grid<f64>, binning: &Binning, frame: &Frame) -> String {
    let res = grid.resolution();
    // cell edges: domain bounds at the ends, midpoints between lattice
    // coordinates inside
    let edges = |axis: usize| -> Vec<f64> {
        let mut e = Vec::with_capacity(res + 1);
        e.push(if axis == 0 { grid.domain().lower()[0] } else { grid.domain().lower()[1] });
        for i in 1..res {
            e.push((grid.coord(axis, i - 1) + grid.coord(axis, i)) / 2.0);
        }
        e.push(if axis == 0 { grid.domain().upper()[0] } else { grid.domain().upper()[1] });
        e
    };
    let ex = edges(0);
    let ey = edges(1);
    let mut out = String::new();
    for i in 0..res {
        for j in 0..res {
            let color = binning.color(grid.value_2d(i, j));
            let x = frame.px(ex[i]);
            let y = frame.py(ey[j + 1]);
            let w = frame.px(ex[i + 1]) - x;
            let h = frame.py(ey[j]) - y;
            out.push_str(&format!(
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
                fmt_px(x),
                fmt_px(y),
                fmt_px(w),
                fmt_px(h),
            ));
            out.push('\n');
        }
    }
    out
}

fn marker_svg(marker: Marker, px: f64, py: f64) -> String {
    let color = marker.color();
    match marker {
        Marker::Circle => format!(
            r#"<circle cx="{}" cy="{}" r="2.5" fill="none" stroke="{color}" stroke-width="1"/>"#,
            fmt_px(px),
            fmt_px(py),
        ),
        Marker::Cross => format!(
            concat!(
                r#"<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="{color}" stroke-width="1.4"/>"#,
                r#"<line x1="{a}" y1="{d}" x2="{c}" y2="{b}" stroke="{color}" stroke-width="1.4"/>"#
            ),
            a = fmt_px(px - 3.0),
            b = fmt_px(py - 3.0),
            c = fmt_px(px + 3.0),
            d = fmt_px(py + 3.0),
            color = color,
        ),
        Marker::Dot => format!(
            r#"<circle cx="{}" cy="{}" r="1.8" fill="{color}"/>"#,
            fmt_px(px),
            fmt_px(py),
        ),
    }
}

/// Renders a layered 2-d plot. Point and segment data outside the axis
/// ranges is skipped; everything inside maps into the plot box.
pub fn render_scatter_svg(spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    let frame = Frame {
        x0: spec.x_range.0,
        x1: spec.x_range.1,
        y0: spec.y_range.0,
        y1: spec.y_range.1,
    };
    let mut out = svg_header(&spec.title);
    let mut legend: Option<String> = None;
    for layer in &spec.layers {
        if let Layer::Heatmap { grid, levels } = layer {
            let values: Vec<f64> = grid.values().to_vec();
            let binning = Binning::new(&values, *levels);
            out.push_str(&heatmap_cells(grid, &binning, &frame));
            legend = Some(binning.legend());
        }
    }
    out.push_str(&axes(&frame));
    if let Some(l) = legend {
        out.push_str(&l);
    }
    let mut key_y = MARGIN_TOP + 8.0;
    for layer in &spec.layers {
        match layer {
            Layer::Heatmap { .. } => {}
            Layer::Points { label, marker, points } => {
                for &(x, y) in points {
                    if frame.contains(x, y) {
                        out.push_str(&marker_svg(*marker, frame.px(x), frame.py(y)));
                        out.push('\n');
                    }
                }
                // layer key on the right
                out.push_str(&marker_svg(*marker, CANVAS_W - MARGIN_RIGHT + 20.0, key_y));
                out.push_str(&format!(
                    r#"<text x="{x}" y="{y}" font-family="monospace" font-size="10">{label}</text>"#,
                    x = fmt_px(CANVAS_W - MARGIN_RIGHT + 30.0),
                    y = fmt_px(key_y + 3.0),
                    label = xml_escape(label),
                ));
                out.push('\n');
                key_y += 16.0;
            }
            Layer::Segments { label: _, segments } => {
                for &((ax, ay), (bx, by)) in segments {
                    if frame.contains(ax, ay) && frame.contains(bx, by) {
                        out.push_str(&format!(
                            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="1"/>"##,
                            fmt_px(frame.px(ax)),
                            fmt_px(frame.py(ay)),
                            fmt_px(frame.px(bx)),
                            fmt_px(frame.py(by)),
                        ));
                        out.push('\n');
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders a filled-cell heatmap of a 2-d grid with `levels` quantile
/// color bins and a legend.
pub fn render_contour_svg<F: Real>(grid: &Grid<F>, levels: usize) -> Result<String> {
    if grid.dim() != 2 {
        return Err(Error::Dimension { expected: 2, actual: grid.dim() });
    }
    if levels < 2 {
        return Err(Error::Config("need at least 2 contour levels".into()));
    }
    let f64_grid = grid.to_f64();
    let mut spec = PlotSpec::new(
        format!("grid heatmap ({} levels)", levels),
        (f64_grid.domain().lower()[0], f64_grid.domain().upper()[0]),
        (f64_grid.domain().lower()[1], f64_grid.domain().upper()[1]),
    );
    spec.layers.push(Layer::Heatmap { grid: f64_grid, levels });
    render_scatter_svg(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{grid_evaluate, make_elliptic, Domain, EllipticParams, Landscape};

    #[test]
    fn empty_layers_render_axes_only() {
        let spec = PlotSpec::new("empty", (-1.0, 1.0), (-1.0, 1.0));
        let svg = render_scatter_svg(&spec).unwrap();
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("<rect")); // the axes box
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn center_point_maps_to_plot_box_center() {
        let mut spec = PlotSpec::new("center", (-1.0, 1.0), (-1.0, 1.0));
        spec.layers.push(Layer::Points {
            label: "p".into(),
            marker: Marker::Dot,
            points: vec![(0.0, 0.0)],
        });
        let svg = render_scatter_svg(&spec).unwrap();
        let cx = MARGIN_LEFT + (CANVAS_W - MARGIN_LEFT - MARGIN_RIGHT) / 2.0;
        let cy = MARGIN_TOP + (CANVAS_H - MARGIN_TOP - MARGIN_BOTTOM) / 2.0;
        assert!(svg.contains(&format!(r#"<circle cx="{}" cy="{}""#, fmt_px(cx), fmt_px(cy))));
    }

    #[test]
    fn rendering_is_deterministic() {
        let d = Domain::<f64>::cube(-10.0, 10.0, 2).unwrap();
        let grid = grid_evaluate(&Landscape::sphere(2), &d, 12).unwrap();
        let a = render_contour_svg(&grid, 10).unwrap();
        let b = render_contour_svg(&grid, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constant_grid_uses_a_single_bin() {
        let d = Domain::cube(-1.0, 1.0, 2).unwrap();
        let flat = Landscape::new("flat", 2, |_: &[f64]| 3.5);
        let grid = grid_evaluate(&flat, &d, 5).unwrap();
        let svg = render_contour_svg(&grid, 10).unwrap();
        // all cells share the lowest ramp color
        let color = ramp(0.0);
        assert_eq!(svg.matches(&format!("fill=\"{color}\"")).count(), 25 + 1); // cells + legend swatch
    }

    #[test]
    fn sphere_bins_are_symmetric_under_coordinate_swap() {
        let d = Domain::cube(-10.0, 10.0, 2).unwrap();
        let grid = grid_evaluate(&Landscape::sphere(2), &d, 21).unwrap();
        let values: Vec<f64> = grid.values().to_vec();
        let binning = Binning::new(&values, 10);
        for i in 0..21 {
            for j in 0..21 {
                assert_eq!(
                    binning.color(grid.value_2d(i, j)),
                    binning.color(grid.value_2d(j, i))
                );
            }
        }
    }

    #[test]
    fn elliptic_low_bin_is_elongated_along_small_coefficient_axis() {
        let e = make_elliptic(&EllipticParams::new(vec![1.0, 0.01]).unwrap());
        let d = Domain::cube(-10.0, 10.0, 2).unwrap();
        let grid = grid_evaluate(&e, &d, 41).unwrap();
        let values: Vec<f64> = grid.values().to_vec();
        let binning = Binning::new(&values, 10);
        let lowest = ramp(0.0);
        let (mut span1, mut span2) = (0usize, 0usize);
        for i in 0..41 {
            if (0..41).any(|j| binning.color(grid.value_2d(i, j)) == lowest) {
                span1 += 1;
            }
            if (0..41).any(|j| binning.color(grid.value_2d(j, i)) == lowest) {
                span2 += 1;
            }
        }
        // the valley runs along x2, so the lowest bin spans more x2 rows
        assert!(span2 > span1, "x1 span {span1}, x2 span {span2}");
    }

    #[test]
    fn rejects_bad_specs() {
        let spec = PlotSpec::new("bad", (1.0, 1.0), (0.0, 1.0));
        assert!(render_scatter_svg(&spec).is_err());
        let d = Domain::<f64>::cube(-1.0, 1.0, 2).unwrap();
        let grid = grid_evaluate(&Landscape::sphere(2), &d, 3).unwrap();
        assert!(render_contour_svg(&grid, 1).is_err());
    }

    #[test]
    fn points_within_range_stay_inside_plot_box() {
        let mut spec = PlotSpec::new("inside", (-5.0, 5.0), (-5.0, 5.0));
        let pts: Vec<(f64, f64)> =
            (0..50).map(|k| (-5.0 + 0.2 * k as f64, 5.0 - 0.2 * k as f64)).collect();
        spec.layers.push(Layer::Points { label: "p".into(), marker: Marker::Dot, points: pts });
        let svg = render_scatter_svg(&spec).unwrap();
        for cap in svg.split("<circle cx=\"").skip(1) {
            let cx: f64 = cap.split('"').next().unwrap().parse().unwrap();
            if cx >= CANVAS_W - MARGIN_RIGHT + 10.0 {
                continue; // legend key marker
            }
            let cy: f64 = cap.split("cy=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
            assert!((MARGIN_LEFT..=CANVAS_W - MARGIN_RIGHT).contains(&cx));
            assert!((MARGIN_TOP..=CANVAS_H - MARGIN_BOTTOM).contains(&cy));
        }
    }
}

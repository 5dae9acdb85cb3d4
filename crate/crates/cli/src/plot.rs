//! Figure documents in data coordinates plus a deterministic SVG 1.1
//! renderer. Two figure kinds exist: cobweb staircases on [0,1]² and
//! bifurcation scatter diagrams on [r_lo, r_hi]×[0,1].

use innodyn::bifurcation::BifurcationDiagram;
use innodyn::map::MapParams;
use innodyn::{Error, Result};

/// Default viewport width in pixels.
pub const DEFAULT_WIDTH: u32 = 800;
/// Default viewport height in pixels.
pub const DEFAULT_HEIGHT: u32 = 600;
/// Pixels reserved on every side for the frame and labels.
const MARGIN: f64 = 60.0;
/// Segments used to sample the map's parabola.
const CURVE_SEGMENTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Cobweb,
    Bifurcation,
}

impl PlotKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PlotKind::Cobweb => "cobweb",
            PlotKind::Bifurcation => "bifurcation",
        }
    }
}

/// A connected path in data coordinates with a stable class name.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub class: &'static str,
    pub stroke: &'static str,
    pub vertices: Vec<(f64, f64)>,
}

/// A renderable figure: geometry in data coordinates plus the affine
/// data-to-viewport mapping implied by the ranges and margins.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotDocument {
    pub kind: PlotKind,
    pub width: u32,
    pub height: u32,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub polylines: Vec<Polyline>,
    pub points: Vec<(f64, f64)>,
}

/// Builds a cobweb figure: the map's parabola, the diagonal, and the
/// staircase tracing `steps` iterations from `x0`. The staircase polyline
/// holds `2·steps + 1` vertices — one rise/run pair per iteration after the
/// starting point on the horizontal axis.
pub fn cobweb(params: MapParams, x0: f64, steps: usize) -> Result<PlotDocument> {
    if steps < 1 {
        return Err(Error::Domain("cobweb needs at least 1 step".into()));
    }
    if !(0.0..=1.0).contains(&x0) {
        return Err(Error::Domain(format!(
            "cobweb start must lie in [0, 1], got {x0}"
        )));
    }

    let curve: Vec<(f64, f64)> = (0..=CURVE_SEGMENTS)
        .map(|k| {
            let x = k as f64 / CURVE_SEGMENTS as f64;
            let y = params.step(x).expect("curve samples lie in [0, 1]");
            (x, y)
        })
        .collect();

    let mut staircase = Vec::with_capacity(2 * steps + 1);
    staircase.push((x0, 0.0));
    let mut x = x0;
    for _ in 0..steps {
        let y = params.step(x)?;
        staircase.push((x, y));
        staircase.push((y, y));
        x = y;
    }

    Ok(PlotDocument {
        kind: PlotKind::Cobweb,
        width: DEFAULT_WIDTH,
        height: DEFAULT_HEIGHT,
        x_range: (0.0, 1.0),
        y_range: (0.0, 1.0),
        polylines: vec![
            Polyline {
                class: "map-curve",
                stroke: "#1f77b4",
                vertices: curve,
            },
            Polyline {
                class: "diagonal",
                stroke: "#999999",
                vertices: vec![(0.0, 0.0), (1.0, 1.0)],
            },
            Polyline {
                class: "staircase",
                stroke: "#d62728",
                vertices: staircase,
            },
        ],
        points: Vec::new(),
    })
}

/// Builds a bifurcation scatter figure: one point per recorded attractor
/// sample, at its grid parameter.
pub fn bifurcation(diagram: &BifurcationDiagram) -> PlotDocument {
    let points: Vec<(f64, f64)> = diagram
        .r_grid
        .iter()
        .zip(&diagram.attractor_samples)
        .flat_map(|(r, samples)| samples.iter().map(move |s| (*r, *s)))
        .collect();
    let x_range = (
        *diagram.r_grid.first().expect("a diagram has at least one grid point"),
        *diagram.r_grid.last().expect("a diagram has at least one grid point"),
    );
    PlotDocument {
        kind: PlotKind::Bifurcation,
        width: DEFAULT_WIDTH,
        height: DEFAULT_HEIGHT,
        x_range,
        y_range: (0.0, 1.0),
        polylines: Vec::new(),
        points,
    }
}

impl PlotDocument {
    /// The staircase path of a cobweb figure, when present.
    pub fn staircase(&self) -> Option<&Polyline> {
        self.polylines.iter().find(|p| p.class == "staircase")
    }

    /// Renders SVG 1.1. Pure function of the document: identical documents
    /// produce identical bytes. Pixel coordinates are written at two
    /// decimals, which keeps the text stable and diffable.
    pub fn to_svg(&self) -> String {
        let w = self.width as f64;
        let h = self.height as f64;
        // A degenerate range (single-parameter diagram) is centered in a
        // unit-wide window so the transform stays finite.
        let (x0, x1) = if self.x_range.0 < self.x_range.1 {
            self.x_range
        } else {
            (self.x_range.0 - 0.5, self.x_range.1 + 0.5)
        };
        let (y0, y1) = self.y_range;
        let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (w - 2.0 * MARGIN);
        let py = |y: f64| h - MARGIN - (y - y0) / (y1 - y0) * (h - 2.0 * MARGIN);

        let mut svg = String::new();
        svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
            self.width, self.height, self.width, self.height
        ));
        svg.push_str(&format!(
            "  <desc>{} figure on [{}, {}] x [{}, {}]</desc>\n",
            self.kind.as_str(),
            self.x_range.0,
            self.x_range.1,
            y0,
            y1
        ));
        svg.push_str(&format!(
            "  <rect class=\"frame\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            MARGIN,
            MARGIN,
            w - 2.0 * MARGIN,
            h - 2.0 * MARGIN
        ));
        for (value, anchor_x, anchor_y, align) in [
            (x0, px(x0), h - MARGIN + 20.0, "middle"),
            (x1, px(x1), h - MARGIN + 20.0, "middle"),
            (y0, MARGIN - 8.0, py(y0) + 4.0, "end"),
            (y1, MARGIN - 8.0, py(y1) + 4.0, "end"),
        ] {
            svg.push_str(&format!(
                "  <text x=\"{anchor_x:.2}\" y=\"{anchor_y:.2}\" text-anchor=\"{align}\" \
                 font-family=\"sans-serif\" font-size=\"12\">{value}</text>\n"
            ));
        }
        for line in &self.polylines {
            let mut points_attr = String::new();
            for (k, (x, y)) in line.vertices.iter().enumerate() {
                if k > 0 {
                    points_attr.push(' ');
                }
                points_attr.push_str(&format!("{:.2},{:.2}", px(*x), py(*y)));
            }
            svg.push_str(&format!(
                "  <polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" \
                 points=\"{}\"/>\n",
                line.class, line.stroke, points_attr
            ));
        }
        for (x, y) in &self.points {
            svg.push_str(&format!(
                "  <circle class=\"sample\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"1\" \
                 fill=\"#1f77b4\"/>\n",
                px(*x),
                py(*y)
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

//! SVG figures of real slices in the affine chart `x0 = 1`, `(x, y) = (x1, x2)`.
//!
//! Curves are traced by marching squares on a sign grid; the drawing is
//! illustrative only and never feeds a certificate check.

use std::fmt::Write;

use poncelet_core::forms::TernaryForm;
use poncelet_core::numeric::Float;
use poncelet_core::projective::{ProjLine, ProjPoint};

pub const DEFAULT_GRID: usize = 512;
pub const DEFAULT_VIEW: [f64; 4] = [-3.0, 3.0, -3.0, 3.0];
const CANVAS: f64 = 512.0;
// imaginary parts below this (relative) count as real
const REAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default)]
pub struct Figure {
    /// `[xmin, xmax, ymin, ymax]`.
    pub view: Option<[f64; 4]>,
    pub grid: Option<usize>,
    pub conics: Vec<(String, TernaryForm<Float>)>,
    pub curves: Vec<(String, TernaryForm<Float>)>,
    pub sides: Vec<ProjLine<Float>>,
    pub vertices: Vec<ProjPoint<Float>>,
    pub points: Vec<(String, ProjPoint<Float>)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Rendered {
    pub svg: String,
    pub conic_paths: usize,
    pub curve_paths: usize,
    pub sides: usize,
    pub vertices: usize,
    pub points: usize,
    pub warnings: Vec<String>,
}

struct Chart {
    view: [f64; 4],
}

impl Chart {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.view;
        ((x - x0) / (x1 - x0) * CANVAS, (y1 - y) / (y1 - y0) * CANVAS)
    }
}

pub fn render(fig: &Figure) -> Rendered {
    let view = fig.view.unwrap_or(DEFAULT_VIEW);
    let grid = fig.grid.unwrap_or(DEFAULT_GRID).max(2);
    let chart = Chart { view };
    let mut out = Rendered::default();
    let mut body = String::new();

    for (y, horizontal) in [
        (ProjLine::new(re3(0.0, 0.0, 1.0)), true),
        (ProjLine::new(re3(0.0, 1.0, 0.0)), false),
    ] {
        let l = y.expect("axis");
        if let Some(((ax, ay), (bx, by))) = clip(&l, view) {
            let (a, b) = (chart.px(ax, ay), chart.px(bx, by));
            let _ = writeln!(
                body,
                r#"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" data-axis="{}"/>"#,
                a.0,
                a.1,
                b.0,
                b.1,
                if horizontal { "x" } else { "y" }
            );
        }
    }

    for (class, list) in [("conic", &fig.conics), ("curve", &fig.curves)] {
        for (name, form) in list {
            match contour(form, &chart, grid) {
                Err(msg) => out.warnings.push(format!("{class} {name}: {msg}")),
                Ok(d) if d.is_empty() => out
                    .warnings
                    .push(format!("{class} {name}: no real points in view")),
                Ok(d) => {
                    let _ = writeln!(
                        body,
                        r#"<path class="{class}" data-name="{}" d="{d}"/>"#,
                        escape(name)
                    );
                    if class == "conic" {
                        out.conic_paths += 1;
                    } else {
                        out.curve_paths += 1;
                    }
                }
            }
        }
    }

    for (i, l) in fig.sides.iter().enumerate() {
        match real_line(l).and_then(|l| clip_coords(l, view)) {
            Some(((ax, ay), (bx, by))) => {
                let (a, b) = (chart.px(ax, ay), chart.px(bx, by));
                let _ = writeln!(
                    body,
                    r#"<line class="side" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    a.0, a.1, b.0, b.1
                );
                out.sides += 1;
            }
            None => out
                .warnings
                .push(format!("side {i} has no real segment in view")),
        }
    }

    let mut marker =
        |class: &str, label: String, p: &ProjPoint<Float>, r: f64, count: &mut usize| match affine(
            p,
        ) {
            Some((x, y)) => {
                let (cx, cy) = chart.px(x, y);
                let _ = writeln!(
                    body,
                    r#"<circle class="{class}" data-name="{}" cx="{cx:.2}" cy="{cy:.2}" r="{r}"/>"#,
                    escape(&label)
                );
                *count += 1;
            }
            None => out
                .warnings
                .push(format!("{class} {label} is not a real affine point")),
        };
    let (mut nv, mut np) = (0, 0);
    for (i, v) in fig.vertices.iter().enumerate() {
        marker("vertex", i.to_string(), v, 3.0, &mut nv);
    }
    for (name, p) in &fig.points {
        marker("point", name.clone(), p, 4.0, &mut np);
    }
    out.vertices = nv;
    out.points = np;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    svg.push_str(concat!(
        "<style>",
        ".axis{stroke:#bbb;stroke-width:1}",
        ".conic{fill:none;stroke:#1f4e96;stroke-width:1.5}",
        ".curve{fill:none;stroke:#b3331f;stroke-width:1.5}",
        ".side{stroke:#222;stroke-width:1}",
        ".vertex{fill:#222}",
        ".point{fill:none;stroke:#c07000;stroke-width:1.5}",
        "</style>\n"
    ));
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    out.svg = svg;
    out
}

fn re3(a: f64, b: f64, c: f64) -> [Float; 3] {
    [Float::new(a, 0.0), Float::new(b, 0.0), Float::new(c, 0.0)]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn affine(p: &ProjPoint<Float>) -> Option<(f64, f64)> {
    let [w, x, y] = p.coords();
    let scale = p.coords().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if w.norm() <= 1e-12 * scale {
        return None;
    }
    let (x, y) = (x / w, y / w);
    (x.im.abs() <= REAL_TOL * (1.0 + x.norm()) && y.im.abs() <= REAL_TOL * (1.0 + y.norm()))
        .then_some((x.re, y.re))
}

fn real_line(l: &ProjLine<Float>) -> Option<[f64; 3]> {
    // rotate so the dominant coordinate is real, then drop imaginary parts
    let c = l.coords();
    let k = (0..3).max_by(|&a, &b| c[a].norm().total_cmp(&c[b].norm()))?;
    let phase = c[k].conj() / c[k].norm();
    let r: Vec<Float> = c.iter().map(|z| z * phase).collect();
    let scale = c[k].norm();
    r.iter()
        .all(|z| z.im.abs() <= REAL_TOL * scale)
        .then(|| [r[0].re, r[1].re, r[2].re])
}

fn clip(l: &ProjLine<Float>, view: [f64; 4]) -> Option<((f64, f64), (f64, f64))> {
    real_line(l).and_then(|c| clip_coords(c, view))
}

/// Segment of `a + b x + c y = 0` inside the view box.
fn clip_coords(l: [f64; 3], view: [f64; 4]) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l;
    let [x0, x1, y0, y1] = view;
    if b.abs().max(c.abs()) <= 1e-14 * a.abs() {
        return None;
    }
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-12 * (x1 - x0).abs().max((y1 - y0).abs());
    if c != 0.0 {
        for x in [x0, x1] {
            let y = -(a + b * x) / c;
            if y >= y0 - eps && y <= y1 + eps {
                hits.push((x, y));
            }
        }
    }
    if b != 0.0 {
        for y in [y0, y1] {
            let x = -(a + c * y) / b;
            if x >= x0 - eps && x <= x1 + eps {
                hits.push((x, y));
            }
        }
    }
    let (mut best, mut far) = (None, -1.0);
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            let d = (hits[i].0 - hits[j].0).hypot(hits[i].1 - hits[j].1);
            if d > far {
                far = d;
                best = Some((hits[i], hits[j]));
            }
        }
    }
    best.filter(|_| far > eps)
}

/// Sign-change contour as path data, or an error for non-real curves.
fn contour(form: &TernaryForm<Float>, chart: &Chart, grid: usize) -> Result<String, String> {
    let scale = form.norm();
    if scale == 0.0 {
        return Err("zero form".into());
    }
    let terms: Vec<([u32; 3], f64)> = form.terms().map(|(m, c)| (*m, c.re)).collect();
    let max_im = form.terms().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
    if max_im > REAL_TOL * scale {
        return Err("coefficients are not real".into());
    }
    let eval = |x: f64, y: f64| -> f64 {
        terms
            .iter()
            .map(|(m, c)| c * x.powi(m[1] as i32) * y.powi(m[2] as i32))
            .sum()
    };
    let [x0, x1, y0, y1] = chart.view;
    let xs: Vec<f64> = (0..=grid)
        .map(|i| x0 + (x1 - x0) * i as f64 / grid as f64)
        .collect();
    let ys: Vec<f64> = (0..=grid)
        .map(|j| y0 + (y1 - y0) * j as f64 / grid as f64)
        .collect();
    let values: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| xs.iter().map(|&x| eval(x, y)).collect())
        .collect();

    let mut d = String::new();
    for j in 0..grid {
        for i in 0..grid {
            let v = [
                values[j][i],
                values[j][i + 1],
                values[j + 1][i + 1],
                values[j + 1][i],
            ];
            let p = [
                (xs[i], ys[j]),
                (xs[i + 1], ys[j]),
                (xs[i + 1], ys[j + 1]),
                (xs[i], ys[j + 1]),
            ];
            let pos = v.map(|x| x > 0.0);
            // crossing on edge k between corners k and k + 1
            let cross = |k: usize| -> Option<(f64, f64)> {
                let (a, b) = (k, (k + 1) % 4);
                (pos[a] != pos[b]).then(|| {
                    let t = v[a] / (v[a] - v[b]);
                    (
                        p[a].0 + t * (p[b].0 - p[a].0),
                        p[a].1 + t * (p[b].1 - p[a].1),
                    )
                })
            };
            let edges: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
            let pairs: Vec<(usize, usize)> = match edges.len() {
                2 => vec![(edges[0], edges[1])],
                4 => {
                    let center = eval((xs[i] + xs[i + 1]) / 2.0, (ys[j] + ys[j + 1]) / 2.0) > 0.0;
                    if center == pos[0] {
                        vec![(0, 1), (2, 3)]
                    } else {
                        vec![(3, 0), (1, 2)]
                    }
                }
                _ => vec![],
            };
            for (a, b) in pairs {
                let (pa, pb) = (cross(a).expect("edge"), cross(b).expect("edge"));
                let (a, b) = (chart.px(pa.0, pa.1), chart.px(pb.0, pb.1));
                let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1);
            }
        }
    }
    Ok(d)
}

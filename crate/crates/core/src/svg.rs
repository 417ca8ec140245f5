//! Barycentric SVG plots of rank-3 slices: the triangle of normalized
//! simple roots, the normalized isotropic conic, root dots, and optional
//! fiber chords and root segments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::projective::normalize;
use crate::roots::{RootId, RootSlice};
use crate::scalar::Scalar;

// Layout constants; fixed so outputs are byte-stable.
const CANVAS_W: f64 = 1000.0;
const CANVAS_H: f64 = 900.0;
const V1: (f64, f64) = (100.0, 820.0); // normalized a1
const V2: (f64, f64) = (900.0, 820.0); // normalized a2
const TRI_SIDE: f64 = 800.0;
const DOT_BASE: f64 = 4.0;
const DOT_DECAY: f64 = 0.85;
const DOT_MIN: f64 = 1.1;
const CONE_GRID: usize = 160;
const FIBER_COLORS: [&str; 4] = ["#1f4fd8", "#1e8f3e", "#8e24aa", "#e07000"];
const SEGMENT_COLOR: &str = "#d81f6f";

fn v3() -> (f64, f64) {
    (500.0, 820.0 - TRI_SIDE * 3f64.sqrt() / 2.0)
}

#[derive(Debug, Clone)]
pub struct SvgOptions<S> {
    /// Chords of constant barycentric coordinate: (axis, value).
    pub highlight_fibers: Vec<(usize, S)>,
    /// Straight segments between two normalized roots.
    pub highlight_segments: Vec<(RootId, RootId)>,
    /// Label the three edge midpoints with their coordinates.
    pub edge_midpoint_labels: bool,
}

impl<S> Default for SvgOptions<S> {
    fn default() -> Self {
        SvgOptions {
            highlight_fibers: Vec::new(),
            highlight_segments: Vec::new(),
            edge_midpoint_labels: false,
        }
    }
}

fn bary_to_canvas(c: &[f64; 3]) -> (f64, f64) {
    let v3 = v3();
    (
        c[0] * V1.0 + c[1] * V2.0 + c[2] * v3.0,
        c[0] * V1.1 + c[1] * V2.1 + c[2] * v3.1,
    )
}

fn canvas_to_bary(x: f64, y: f64) -> [f64; 3] {
    let v3 = v3();
    let c3 = (V1.1 - y) / (V1.1 - v3.1);
    let c2 = (x - V1.0 - (v3.0 - V1.0) * c3) / (V2.0 - V1.0);
    [1.0 - c2 - c3, c2, c3]
}

/// Renders the slice as a barycentric plot. Rank must be 3.
pub fn render_svg<S: Scalar>(slice: &RootSlice<S>, options: &SvgOptions<S>) -> Result<String> {
    if slice.rank() != 3 {
        return Err(Error::RankUnsupported {
            rank: slice.rank(),
            needed: "barycentric rendering works on rank-3 slices",
        });
    }
    let mut gram = [[0f64; 3]; 3];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = slice.gram().entry(i, j).to_f64();
        }
    }
    let qval = move |x: f64, y: f64| -> f64 {
        let c = canvas_to_bary(x, y);
        let mut q = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                q += c[i] * c[j] * gram[i][j];
            }
        }
        q
    };

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_W}" height="{CANVAS_H}" viewBox="0 0 {CANVAS_W} {CANVAS_H}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let v3 = v3();
    writeln!(
        out,
        r#"  <polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        V1.0, V1.1, V2.0, V2.1, v3.0, v3.1
    )
    .unwrap();

    // Isotropic conic by marching squares on the sign of Q, restricted to
    // the triangle. Empty for definite forms.
    let mut conic = String::new();
    let (x0, y0) = (V1.0, v3.1);
    let (dx, dy) = ((V2.0 - V1.0) / CONE_GRID as f64, (V1.1 - v3.1) / CONE_GRID as f64);
    for gy in 0..CONE_GRID {
        for gx in 0..CONE_GRID {
            let xs = [
                x0 + gx as f64 * dx,
                x0 + (gx + 1) as f64 * dx,
                x0 + (gx + 1) as f64 * dx,
                x0 + gx as f64 * dx,
            ];
            let ys = [
                y0 + gy as f64 * dy,
                y0 + gy as f64 * dy,
                y0 + (gy + 1) as f64 * dy,
                y0 + (gy + 1) as f64 * dy,
            ];
            let mut inside = true;
            let mut q = [0f64; 4];
            for k in 0..4 {
                let bc = canvas_to_bary(xs[k], ys[k]);
                if bc.iter().any(|&c| c < -0.02) {
                    inside = false;
                    break;
                }
                q[k] = qval(xs[k], ys[k]);
            }
            if !inside {
                continue;
            }
            // Corner order: 0 top-left, 1 top-right, 2 bottom-right,
            // 3 bottom-left. Edges hold a crossing when signs differ.
            let mut crossings: Vec<(f64, f64)> = Vec::new();
            for (a, b) in [(0usize, 1usize), (1, 2), (2, 3), (3, 0)] {
                if (q[a] < 0.0) != (q[b] < 0.0) {
                    let t = q[a] / (q[a] - q[b]);
                    crossings.push((xs[a] + t * (xs[b] - xs[a]), ys[a] + t * (ys[b] - ys[a])));
                }
            }
            if crossings.len() == 2 {
                write!(
                    conic,
                    "M{:.2} {:.2}L{:.2} {:.2}",
                    crossings[0].0, crossings[0].1, crossings[1].0, crossings[1].1
                )
                .unwrap();
            }
        }
    }
    if !conic.is_empty() {
        writeln!(
            out,
            r#"  <path class="conic" d="{conic}" fill="none" stroke="black" stroke-width="1.2"/>"#
        )
        .unwrap();
    }

    // Fiber chords.
    for (fi, (axis, value)) in options.highlight_fibers.iter().enumerate() {
        let color = FIBER_COLORS[fi % FIBER_COLORS.len()];
        let v = value.to_f64();
        let verts = [V1, V2, v3];
        let a = *axis;
        let (b, c) = match a {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let p1 = (
            v * verts[a].0 + (1.0 - v) * verts[b].0,
            v * verts[a].1 + (1.0 - v) * verts[b].1,
        );
        let p2 = (
            v * verts[a].0 + (1.0 - v) * verts[c].0,
            v * verts[a].1 + (1.0 - v) * verts[c].1,
        );
        writeln!(
            out,
            r#"  <line class="fiber" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
            p1.0, p1.1, p2.0, p2.1
        )
        .unwrap();
    }

    // Highlighted segments between normalized roots.
    for (a, b) in &options.highlight_segments {
        let pa = point_of(slice, *a);
        let pb = point_of(slice, *b);
        writeln!(
            out,
            r#"  <line class="segment" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{SEGMENT_COLOR}" stroke-width="2"/>"#,
            pa.0, pa.1, pb.0, pb.1
        )
        .unwrap();
    }

    // Root dots, fiber members colored like their chord.
    for id in slice.ids() {
        let nr = normalize(id, slice);
        let mut color = "black";
        for (fi, (axis, value)) in options.highlight_fibers.iter().enumerate() {
            if nr.coords[*axis].compare(value) == std::cmp::Ordering::Equal {
                color = FIBER_COLORS[fi % FIBER_COLORS.len()];
            }
        }
        let p = point_of(slice, id);
        let depth = slice.root(id).depth;
        let r = (DOT_BASE * DOT_DECAY.powi(depth as i32)).max(DOT_MIN);
        writeln!(
            out,
            r#"  <circle class="root" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{color}"/>"#,
            p.0, p.1, r
        )
        .unwrap();
    }

    // Vertex labels.
    let labels = [
        (V1.0 - 30.0, V1.1 + 24.0, "a1"),
        (V2.0 + 6.0, V2.1 + 24.0, "a2"),
        (v3.0 - 10.0, v3.1 - 12.0, "a3"),
    ];
    for (x, y, text) in labels {
        writeln!(
            out,
            r#"  <text x="{x:.2}" y="{y:.2}" font-family="serif" font-size="22">{text}</text>"#
        )
        .unwrap();
    }
    if options.edge_midpoint_labels {
        let mids = [
            ((V1.0 + V2.0) / 2.0, V1.1 + 24.0, "(1/2, 1/2, 0)"),
            ((V2.0 + v3.0) / 2.0 + 10.0, (V2.1 + v3.1) / 2.0, "(0, 1/2, 1/2)"),
            ((V1.0 + v3.0) / 2.0 - 130.0, (V1.1 + v3.1) / 2.0, "(1/2, 0, 1/2)"),
        ];
        for (x, y, text) in mids {
            writeln!(
                out,
                r#"  <text x="{x:.2}" y="{y:.2}" font-family="serif" font-size="16">{text}</text>"#
            )
            .unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

fn point_of<S: Scalar>(slice: &RootSlice<S>, id: RootId) -> (f64, f64) {
    let nr = normalize(id, slice);
    let c = [nr.coords[0].to_f64(), nr.coords[1].to_f64(), nr.coords[2].to_f64()];
    bary_to_canvas(&c)
}

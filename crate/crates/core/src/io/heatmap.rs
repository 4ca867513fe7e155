//! Gray-scale pictures of the F-symbols.
//!
//! All blocks are placed along the diagonal of one square matrix, in block
//! key order. Real data maps linearly onto gray with white at `-clip` and
//! black at `+clip`; values outside are clipped. Complex data gets two panels
//! side by side: magnitude (white at 0, black at `clip`) and phase (white at
//! `-π`, black at `+π`, zero entries white).

use std::fmt::Write as _;

use crate::category::data::FusionCategoryData;
use crate::linalg::{CMatrix, C64};

#[derive(Clone, Copy, Debug)]
pub struct HeatmapOptions {
    /// Pixels per matrix entry.
    pub cell: usize,
    pub clip: f64,
    /// Imaginary parts below this count as real data.
    pub real_tol: f64,
}

impl Default for HeatmapOptions {
    fn default() -> Self {
        HeatmapOptions { cell: 12, clip: 1.0, real_tol: 1e-12 }
    }
}

/// Every F-block on the diagonal of one matrix.
pub fn flatten_f(cat: &FusionCategoryData) -> CMatrix {
    let blocks: Vec<CMatrix> = cat.symbols().blocks().map(|(_, b)| b.matrix.clone()).collect();
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((at, at), (k, b.ncols())).copy_from(&b);
        at += k;
    }
    out
}

/// One or two gray-level panels, row-major.
struct Panels {
    n: usize,
    panels: Vec<Vec<u8>>,
}

fn gray_signed(t: f64) -> u8 {
    let t = t.clamp(-1.0, 1.0);
    (255.0 * (1.0 - t) / 2.0).round() as u8
}

fn panels(m: &CMatrix, opts: &HeatmapOptions) -> Panels {
    let n = m.nrows();
    let real = m.iter().all(|z| z.im.abs() <= opts.real_tol);
    let cells = |f: &dyn Fn(C64) -> u8| -> Vec<u8> { (0..n * n).map(|k| f(m[(k / n, k % n)])).collect() };
    let panels = if real {
        vec![cells(&|z| gray_signed(z.re / opts.clip))]
    } else {
        vec![
            cells(&|z| (255.0 * (1.0 - (z.norm() / opts.clip).clamp(0.0, 1.0))).round() as u8),
            cells(&|z| if z.norm() <= opts.real_tol { 255 } else { gray_signed(z.arg() / std::f64::consts::PI) }),
        ]
    };
    Panels { n, panels }
}

fn canvas(p: &Panels, cell: usize) -> (usize, usize) {
    let k = p.panels.len();
    ((p.n * k + (k - 1)) * cell, p.n * cell)
}

pub fn render_svg(m: &CMatrix, opts: &HeatmapOptions) -> String {
    let p = panels(m, opts);
    let (w, h) = canvas(&p, opts.cell);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for (k, panel) in p.panels.iter().enumerate() {
        let x0 = k * (p.n + 1) * opts.cell;
        writeln!(s, r#"<g transform="translate({x0},0)">"#).unwrap();
        for (idx, &g) in panel.iter().enumerate() {
            if g == 255 {
                continue;
            }
            let (i, j) = (idx / p.n, idx % p.n);
            writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{c}" height="{c}" fill="rgb({g},{g},{g})"/>"#,
                j * opts.cell,
                i * opts.cell,
                c = opts.cell
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Binary portable graymap (`P5`).
pub fn render_pgm(m: &CMatrix, opts: &HeatmapOptions) -> Vec<u8> {
    let p = panels(m, opts);
    let (w, h) = canvas(&p, opts.cell);
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    let mut row = vec![255u8; w];
    for y in 0..h {
        row.iter_mut().for_each(|v| *v = 255);
        for (k, panel) in p.panels.iter().enumerate() {
            let x0 = k * (p.n + 1) * opts.cell;
            for j in 0..p.n {
                let g = panel[(y / opts.cell) * p.n + j];
                row[x0 + j * opts.cell..x0 + (j + 1) * opts.cell].fill(g);
            }
        }
        out.extend_from_slice(&row);
    }
    out
}

//! SVG pictures of planar arrangements with their bounded complex.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::bounded::{AffineOM, BoundedComplex};
use crate::error::{Error, Result};
use crate::realization::{realize, vertex_point, Arrangement};
use crate::signvec::SignVector;

/// Drawing window `[xmin, xmax] × [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Bounds {
    /// Bounding box of `points` grown by 20% on each side.
    pub fn around(points: &[(f64, f64)]) -> Bounds {
        if points.is_empty() {
            return Bounds {
                xmin: -1.0,
                xmax: 1.0,
                ymin: -1.0,
                ymax: 1.0,
            };
        }
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        // a single point or a collinear set still needs some room
        let w = (xmax - xmin).max(1.0);
        let h = (ymax - ymin).max(1.0);
        Bounds {
            xmin: xmin - 0.2 * w,
            xmax: xmax + 0.2 * w,
            ymin: ymin - 0.2 * h,
            ymax: ymax + 0.2 * h,
        }
    }
}

const SIZE: f64 = 600.0;

fn point_of(arr: &Arrangement, x: &SignVector) -> Option<(f64, f64)> {
    let p = vertex_point(arr, x)?;
    Some((p[0].to_f64()?, p[1].to_f64()?))
}

/// Clip `a·p = b` to the window; `None` if it misses.
fn clip(a: (f64, f64), b: f64, w: &Bounds) -> Option<((f64, f64), (f64, f64))> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-12;
    if a.1.abs() > eps {
        for x in [w.xmin, w.xmax] {
            let y = (b - a.0 * x) / a.1;
            if y >= w.ymin - eps && y <= w.ymax + eps {
                hits.push((x, y));
            }
        }
    }
    if a.0.abs() > eps {
        for y in [w.ymin, w.ymax] {
            let x = (b - a.1 * y) / a.0;
            if x >= w.xmin - eps && x <= w.xmax + eps {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    (hits.len() >= 2).then(|| (hits[0], hits[hits.len() - 1]))
}

/// Render lines, shaded bounded regions, and the bounded skeleton.
pub fn render(arr: &Arrangement, bounds: Option<Bounds>) -> Result<String> {
    if arr.dim() != 2 {
        return Err(Error::Precondition(format!("drawing needs d = 2, got d = {}", arr.dim())));
    }
    let aom = AffineOM::from_verified(realize(arr)?)?;
    let bc: BoundedComplex = aom.bounded_complex();
    let vertex_cells: Vec<(SignVector, (f64, f64))> = (0..bc.len())
        .filter(|&i| bc.cell_dim(i) == 0)
        .filter_map(|i| point_of(arr, &bc.cells()[i]).map(|p| (bc.cells()[i], p)))
        .collect();
    let all_vertices: Vec<(f64, f64)> = aom
        .positive_part()
        .iter()
        .filter(|x| x.zero_set().len() >= 2)
        .filter_map(|x| point_of(arr, x))
        .collect();
    let w = bounds.unwrap_or_else(|| Bounds::around(&all_vertices));
    let sx = SIZE / (w.xmax - w.xmin);
    let sy = SIZE / (w.ymax - w.ymin);
    let px = |p: (f64, f64)| ((p.0 - w.xmin) * sx, (w.ymax - p.1) * sy);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // bounded regions
    for i in (0..bc.len()).filter(|&i| bc.cell_dim(i) == 2) {
        let cell = bc.cells()[i];
        let mut pts: Vec<(f64, f64)> = vertex_cells
            .iter()
            .filter(|(v, _)| v.leq(&cell))
            .map(|(_, p)| *p)
            .collect();
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let cy = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        pts.sort_by(|a, b| {
            let ta = (a.1 - cy).atan2(a.0 - cx);
            let tb = (b.1 - cy).atan2(b.0 - cx);
            ta.partial_cmp(&tb).expect("finite")
        });
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.6" stroke="none"><title>{cell}</title></polygon>"##,
            coords.join(" ")
        );
    }

    // arrangement lines
    for h in arr.hyperplanes() {
        let a = (h.normal[0].to_f64().unwrap_or(0.0), h.normal[1].to_f64().unwrap_or(0.0));
        let b = h.offset.to_f64().unwrap_or(0.0);
        if let Some((p, q)) = clip(a, b, &w) {
            let (x1, y1) = px(p);
            let (x2, y2) = px(q);
            let _ = writeln!(
                s,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#555" stroke-width="1"><title>{}</title></line>"##,
                h.label
            );
        }
    }

    // bounded skeleton: edges, then vertices
    for i in (0..bc.len()).filter(|&i| bc.cell_dim(i) == 1) {
        let cell = bc.cells()[i];
        let ends: Vec<(f64, f64)> = vertex_cells
            .iter()
            .filter(|(v, _)| v.leq(&cell))
            .map(|(_, p)| *p)
            .collect();
        if let [p, q] = ends[..] {
            let (x1, y1) = px(p);
            let (x2, y2) = px(q);
            let _ = writeln!(
                s,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#08519c" stroke-width="3"/>"##
            );
        }
    }
    for (v, p) in &vertex_cells {
        let (x, y) = px(*p);
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#08519c"><title>{v}</title></circle>"##
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

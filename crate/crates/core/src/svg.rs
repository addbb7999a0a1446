//! SVG rendering of the canonical complex of a network on the plane.

use std::fmt::Write;

use crate::complex::CanonicalComplex;
use crate::error::{Error, Result};
use crate::geometry::{Affine, Polyhedron};
use crate::rational::{int, to_f64, Rational};

const SIZE: f64 = 640.0;

/// Renders the first-layer lines as `<line>` elements, every 1-cell as a
/// `<path>` (with an arrowhead pointing towards increasing `F` unless the edge
/// is flat), flat 2-cells as shaded `<polygon>`s and vertices as `<circle>`s.
/// Unbounded cells are clipped to a square window holding every vertex and
/// crossing every line.
pub fn export_svg(cx: &CanonicalComplex) -> Result<String> {
    if cx.ambient_dim() != 2 {
        return Err(Error::Unsupported(format!("SVG export needs a 2-dimensional input, found {}", cx.ambient_dim())));
    }
    let half = window(cx);
    let h = to_f64(&half);
    let px = |p: &[f64]| ((p[0] + h) / (2.0 * h) * SIZE, (h - p[1]) / (2.0 * h) * SIZE);
    let clip = Polyhedron::new(
        2,
        vec![],
        vec![
            Affine::new(vec![int(1), int(0)], half.clone()),
            Affine::new(vec![int(-1), int(0)], half.clone()),
            Affine::new(vec![int(0), int(1)], half.clone()),
            Affine::new(vec![int(0), int(-1)], half.clone()),
        ],
    );

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path fill="black" d="M0,0 L10,5 L0,10 z"/></marker></defs>"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    for c in cx.cells().iter().filter(|c| c.dim == 2 && c.flat) {
        let pts = ordered_polygon(&clipped_vertices(&c.polyhedron, &clip)?);
        let coords: Vec<String> = pts.iter().map(|p| px(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(out, r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.6" stroke="none"/>"##, coords.join(" "));
    }

    let first = &cx.network().layers()[0];
    for i in 0..first.output_dim() {
        if let Some((a, b)) = clip_line(&first.neuron(i), h) {
            let (x1, y1) = px(&a);
            let (x2, y2) = px(&b);
            let _ = writeln!(
                out,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 3"/>"##
            );
        }
    }

    for (i, c) in cx.cells().iter().enumerate().filter(|(_, c)| c.dim == 1) {
        let ends = clipped_vertices(&c.polyhedron, &clip)?;
        if ends.len() != 2 {
            continue;
        }
        let o = cx.edge_orientation(i)?;
        let d: Vec<f64> = o.direction.iter().map(to_f64).collect();
        let along = |p: &[f64]| p[0] * d[0] + p[1] * d[1];
        let (mut a, mut b) = (ends[0].clone(), ends[1].clone());
        if (along(&b) - along(&a)) * f64::from(o.slope_sign) < 0.0 {
            std::mem::swap(&mut a, &mut b);
        }
        let (x1, y1) = px(&a);
        let (x2, y2) = px(&b);
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        if o.slope_sign == 0 {
            let _ = writeln!(
                out,
                r##"<path d="M{x1:.2},{y1:.2} L{x2:.2},{y2:.2}" stroke="#08519c" stroke-width="3" fill="none"/>"##
            );
        } else {
            let _ = writeln!(
                out,
                r#"<path d="M{x1:.2},{y1:.2} L{mx:.2},{my:.2} L{x2:.2},{y2:.2}" stroke="black" stroke-width="1.5" fill="none" marker-mid="url(#arrow)"/>"#
            );
        }
    }

    for c in cx.cells().iter().filter(|c| c.dim == 0) {
        let p: Vec<f64> = c.interior_point.iter().map(to_f64).collect();
        let (x, y) = px(&p);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Half-width of the drawing window: an integer beyond every vertex and every
/// line's closest point to the origin.
fn window(cx: &CanonicalComplex) -> Rational {
    let mut r: f64 = 1.0;
    for c in cx.cells().iter().filter(|c| c.dim == 0) {
        for x in &c.interior_point {
            r = r.max(to_f64(x).abs());
        }
    }
    let first = &cx.network().layers()[0];
    for i in 0..first.output_dim() {
        let f = first.neuron(i);
        let norm = f.coeffs.iter().map(|w| to_f64(w).powi(2)).sum::<f64>().sqrt();
        if norm > 0.0 {
            r = r.max(to_f64(&f.constant).abs() / norm);
        }
    }
    int((r * 1.3).ceil() as i64 + 1)
}

fn clipped_vertices(p: &Polyhedron, clip: &Polyhedron) -> Result<Vec<Vec<f64>>> {
    let bounded = p.intersect(clip)?;
    if bounded.is_empty() {
        return Ok(vec![]);
    }
    Ok(bounded.vertices_and_rays()?.vertices.iter().map(|v| v.iter().map(to_f64).collect()).collect())
}

fn ordered_polygon(pts: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut out = pts.to_vec();
    out.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    out
}

/// Endpoints of the zero line of `f` inside the square `[-h, h]^2`.
fn clip_line(f: &Affine, h: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    let (a, b, c) = (to_f64(&f.coeffs[0]), to_f64(&f.coeffs[1]), to_f64(&f.constant));
    let mut pts: Vec<Vec<f64>> = Vec::new();
    let tol = 1e-9 * h;
    for s in [-h, h] {
        if b != 0.0 {
            let y = -(a * s + c) / b;
            if y.abs() <= h + tol {
                pts.push(vec![s, y.clamp(-h, h)]);
            }
        }
        if a != 0.0 {
            let x = -(b * s + c) / a;
            if x.abs() <= h + tol {
                pts.push(vec![x.clamp(-h, h), s]);
            }
        }
    }
    let first = pts.first()?.clone();
    let far = pts
        .iter()
        .max_by(|p, q| dist(p, &first).total_cmp(&dist(q, &first)))?
        .clone();
    Some((first, far))
}

fn dist(p: &[f64], q: &[f64]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fan_network;
    use num_traits::Zero;

    #[test]
    fn fan_has_one_line_per_neuron() {
        let cx = CanonicalComplex::build(&fan_network(2));
        let svg = export_svg(&cx).unwrap();
        assert_eq!(svg.matches("<line ").count(), 6);
        assert_eq!(svg.matches("<polygon ").count(), 1);
        let edges = cx.cells_of_dim(1).count();
        assert_eq!(svg.matches("<path d=\"M").count(), edges);
    }

    #[test]
    fn clip_diagonal() {
        let f = Affine::new(vec![int(1), int(-1)], Rational::zero());
        let (a, b) = clip_line(&f, 2.0).unwrap();
        assert!((dist(&a, &b) - 4.0 * 2f64.sqrt()).abs() < 1e-9);
    }
}

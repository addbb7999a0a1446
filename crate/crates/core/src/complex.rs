//! The canonical polyhedral complex of a ReLU network, built layer by layer
//! and neuron by neuron, with optional refinement by level thresholds.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{find_point, Affine, Polyhedron};
use crate::linalg::{in_span, nullspace, rank};
use crate::network::{Network, TernaryLabel};
use crate::rational::{format_rational, primitive_direction, sign, Rational};

/// A closed cell, stored together with a point of its relative interior.
#[derive(Clone, Debug)]
pub struct Cell {
    /// Signs of every hidden pre-activation, followed by the signs of
    /// `F − c` for each refinement level `c`.
    pub label: TernaryLabel,
    /// Closure of the cell; its equalities span the cell's affine hull.
    pub polyhedron: Polyhedron,
    /// `F` restricted to the cell.
    pub form: Affine,
    pub dim: usize,
    pub flat: bool,
    pub interior_point: Vec<Rational>,
}

impl Cell {
    /// Value of `F` when the cell is flat.
    pub fn flat_value(&self) -> Option<Rational> {
        self.flat.then(|| self.form.eval(&self.interior_point))
    }

    pub fn is_bounded(&self) -> bool {
        self.polyhedron.is_bounded().expect("cells are nonempty")
    }
}

/// Orientation of a 1-cell relative to its stored reference direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrientation {
    pub direction: Vec<Rational>,
    /// Sign of the slope of `F` along `direction`; 0 for a flat edge.
    pub slope_sign: i8,
}

/// Which generic-position requirement failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityWitness {
    pub layer: usize,
    pub neurons: Vec<usize>,
}

/// A node map that takes the value 0 on one of its flat cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityWitness {
    pub layer: usize,
    pub neuron: usize,
    pub cell_label: TernaryLabel,
}

/// Cell counts by dimension, split by boundedness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub bounded: Vec<usize>,
    pub unbounded: Vec<usize>,
}

impl Census {
    pub fn total(&self, dim: usize) -> usize {
        self.bounded[dim] + self.unbounded[dim]
    }
}

/// A connected, face-closed union of flat cells at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatComponent {
    pub level: Rational,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CanonicalComplex {
    network: Network,
    levels: Vec<Rational>,
    cells: Vec<Cell>,
    index: HashMap<TernaryLabel, usize>,
    /// Proper faces of each cell.
    faces: Vec<Vec<usize>>,
    /// Proper cofaces of each cell.
    cofaces: Vec<Vec<usize>>,
}

/// A relatively open piece during subdivision.
struct Piece {
    label: Vec<i8>,
    eqs: Vec<Affine>,
    gts: Vec<Affine>,
    point: Vec<Rational>,
    /// Current layer input as affine forms on the domain.
    map: Vec<Affine>,
}

impl Piece {
    fn hull_rows(&self) -> Vec<Vec<Rational>> {
        self.eqs.iter().map(|e| e.coeffs.clone()).collect()
    }

    fn is_constant(&self, g: &Affine) -> bool {
        g.is_constant() || in_span(&self.hull_rows(), &g.coeffs)
    }

    fn child(&self, s: i8, g: &Affine, point: Vec<Rational>) -> Piece {
        let mut next = Piece {
            label: self.label.clone(),
            eqs: self.eqs.clone(),
            gts: self.gts.clone(),
            point,
            map: self.map.clone(),
        };
        next.label.push(s);
        match s {
            1 => next.gts.push(g.clone()),
            -1 => next.gts.push(g.neg()),
            _ => next.eqs.push(g.clone()),
        }
        next
    }

    /// Splits by the sign of `g`, returning the nonempty pieces.
    fn split(self, g: &Affine, dim: usize) -> Vec<Piece> {
        let s = sign(&g.eval(&self.point));
        if self.is_constant(g) {
            let mut p = self;
            p.label.push(s);
            return vec![p];
        }
        let side = |t: i8| -> Option<Vec<Rational>> {
            let mut gts = self.gts.clone();
            gts.push(if t > 0 { g.clone() } else { g.neg() });
            find_point(dim, &self.eqs, &[], &gts)
        };
        let (pos, neg) = match s {
            0 => (side(1).expect("nonconstant form"), side(-1).expect("nonconstant form")),
            1 => match side(-1) {
                Some(q) => (self.point.clone(), q),
                None => {
                    let p = self.point.clone();
                    return vec![self.child(1, g, p)];
                }
            },
            _ => match side(1) {
                Some(q) => (q, self.point.clone()),
                None => {
                    let p = self.point.clone();
                    return vec![self.child(-1, g, p)];
                }
            },
        };
        let zero = if s == 0 { self.point.clone() } else { interpolate_zero(g, &neg, &pos) };
        vec![self.child(-1, g, neg), self.child(0, g, zero), self.child(1, g, pos)]
    }
}

/// The point where `g` vanishes on the segment `[a, b]` (signs of `g` differ at the ends).
fn interpolate_zero(g: &Affine, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let ga = g.eval(a);
    let gb = g.eval(b);
    let t = &ga / (&ga - &gb);
    a.iter().zip(b).map(|(x, y)| x + &t * (y - x)).collect()
}

impl CanonicalComplex {
    /// Builds `C(F)`.
    pub fn build(net: &Network) -> CanonicalComplex {
        let n = net.input_dim();
        let mut pieces = vec![Piece {
            label: Vec::new(),
            eqs: Vec::new(),
            gts: Vec::new(),
            point: vec![Rational::zero(); n],
            map: (0..n).map(|i| Affine::coordinate(n, i)).collect(),
        }];
        for layer in net.hidden_layers() {
            for j in 0..layer.output_dim() {
                pieces = pieces
                    .into_iter()
                    .flat_map(|p| {
                        let g = compose(&layer.neuron(j), &p.map);
                        p.split(&g, n)
                    })
                    .collect();
            }
            let width = layer.output_dim();
            for p in &mut pieces {
                let block: Vec<i8> = p.label[p.label.len() - width..].to_vec();
                p.map = (0..width)
                    .map(|j| if block[j] > 0 { compose(&layer.neuron(j), &p.map) } else { Affine::zero(n) })
                    .collect();
            }
        }
        let output = net.output_layer().neuron(0);
        for p in &mut pieces {
            p.map = vec![compose(&output, &p.map)];
        }
        Self::assemble(net.clone(), Vec::new(), Self::finish(n, pieces))
    }

    /// Builds `C(F)` refined by the level sets `F = c` for each `c` in `levels`.
    pub fn build_refined(net: &Network, levels: &[Rational]) -> CanonicalComplex {
        Self::build(net).refine(levels)
    }

    /// Subdivides every cell by the level sets `F = c`. Labels gain one entry
    /// per new level, in increasing order of the levels.
    pub fn refine(&self, levels: &[Rational]) -> CanonicalComplex {
        let mut new_levels: Vec<Rational> = levels.iter().filter(|c| !self.levels.contains(c)).cloned().collect();
        new_levels.sort();
        new_levels.dedup();
        let n = self.ambient_dim();
        let mut pieces: Vec<Piece> = self
            .cells
            .iter()
            .map(|c| Piece {
                label: c.label.0.clone(),
                eqs: c.polyhedron.equalities().to_vec(),
                gts: c.polyhedron.inequalities().to_vec(),
                point: c.interior_point.clone(),
                map: vec![c.form.clone()],
            })
            .collect();
        for c in &new_levels {
            pieces = pieces
                .into_iter()
                .flat_map(|p| {
                    let g = p.map[0].shifted(&-c);
                    p.split(&g, n)
                })
                .collect();
        }
        let mut all = self.levels.clone();
        all.extend(new_levels);
        Self::assemble(self.network.clone(), all, Self::finish(n, pieces))
    }

    fn finish(n: usize, pieces: Vec<Piece>) -> Vec<Cell> {
        pieces
            .into_iter()
            .map(|p| {
                let hull = p.hull_rows();
                let dim = n - rank(&hull);
                let form = p.map[0].clone();
                let flat = form.is_constant() || in_span(&hull, &form.coeffs);
                Cell {
                    label: TernaryLabel(p.label),
                    polyhedron: Polyhedron::new(n, p.eqs, p.gts),
                    form,
                    dim,
                    flat,
                    interior_point: p.point,
                }
            })
            .sorted_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)))
            .collect()
    }

    /// Position of `level` among the refinement levels, i.e. its label entry
    /// is `label[total_hidden + position]`.
    pub fn level_entry(&self, level: &Rational) -> Option<usize> {
        self.levels.iter().position(|c| c == level).map(|i| self.network.total_hidden() + i)
    }

    fn assemble(network: Network, levels: Vec<Rational>, cells: Vec<Cell>) -> CanonicalComplex {
        let index = cells.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect();
        let mut faces = vec![Vec::new(); cells.len()];
        let mut cofaces = vec![Vec::new(); cells.len()];
        for (ci, c) in cells.iter().enumerate() {
            for (di, d) in cells.iter().enumerate() {
                if d.dim < c.dim && d.label.is_face_of(&c.label) && c.polyhedron.contains_point(&d.interior_point) {
                    faces[ci].push(di);
                    cofaces[di].push(ci);
                }
            }
        }
        CanonicalComplex { network, levels, cells, index, faces, cofaces }
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    /// Refinement levels in label order.
    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn ambient_dim(&self) -> usize {
        self.network.input_dim()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// `d` is a face of `c` (including `d = c`).
    pub fn is_face(&self, d: usize, c: usize) -> bool {
        d == c || self.faces[c].contains(&d)
    }

    pub fn index_of(&self, label: &TernaryLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The cell whose relative interior contains `x`.
    pub fn locate(&self, x: &[Rational]) -> Result<usize> {
        let ev = self.network.evaluate(x)?;
        let mut label: Vec<i8> = ev.preactivations.iter().flatten().map(sign).collect();
        label.extend(self.levels.iter().map(|c| sign(&(&ev.value - c))));
        self.index_of(&TernaryLabel(label))
            .ok_or_else(|| Error::Precondition("point lies in no cell (inconsistent complex)".into()))
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(move |&i| self.cells[i].dim == dim)
    }

    /// Vertices with their values.
    pub fn zero_cells(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.cells_of_dim(0)
            .map(|i| {
                let p = self.cells[i].interior_point.clone();
                let v = self.cells[i].form.eval(&p);
                (p, v)
            })
            .collect()
    }

    /// Sorted distinct values of `F` on flat cells.
    pub fn nontransversal_thresholds(&self) -> Vec<Rational> {
        let mut vals: Vec<Rational> = self.cells.iter().filter_map(Cell::flat_value).collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// Connected components of the flat subcomplex, grouped by level and
    /// ordered by level, then by smallest cell index.
    pub fn flat_components(&self) -> Vec<FlatComponent> {
        let flat: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].flat).collect();
        let mut uf = UnionFind::new(self.cells.len());
        for &c in &flat {
            for &d in &self.faces[c] {
                // faces of flat cells are flat at the same level
                uf.union(c, d);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &c in &flat {
            groups.entry(uf.find(c)).or_default().push(c);
        }
        let mut comps: Vec<FlatComponent> = groups
            .into_values()
            .map(|mut cells| {
                cells.sort();
                let level = self.cells[cells[0]].flat_value().expect("flat");
                FlatComponent { level, cells }
            })
            .collect();
        comps.sort_by(|a, b| (&a.level, a.cells[0]).cmp(&(&b.level, b.cells[0])));
        comps
    }

    /// Orientation of a 1-cell along its primitive reference direction.
    pub fn edge_orientation(&self, edge: usize) -> Result<EdgeOrientation> {
        let c = &self.cells[edge];
        if c.dim != 1 {
            return Err(Error::Precondition(format!("cell {} has dimension {}, expected 1", c.label, c.dim)));
        }
        let rows: Vec<Vec<Rational>> = c.polyhedron.equalities().iter().map(|e| e.coeffs.clone()).collect();
        let dir = primitive_direction(&nullspace(&rows, self.ambient_dim())[0]);
        let slope_sign = sign(&c.form.slope(&dir));
        Ok(EdgeOrientation { direction: dir, slope_sign })
    }

    /// Direction pointing from the vertex `v` into the edge `edge`.
    pub fn direction_from(&self, v: usize, edge: usize) -> Result<Vec<Rational>> {
        let o = self.edge_orientation(edge)?;
        let p = &self.cells[v].interior_point;
        let w = &self.cells[edge].interior_point;
        let delta: Vec<Rational> = w.iter().zip(p).map(|(a, b)| a - b).collect();
        let along = crate::rational::dot(&delta, &o.direction);
        Ok(if along.is_negative() { o.direction.iter().map(|x| -x).collect() } else { o.direction })
    }

    /// Sign of the change of `F` when leaving vertex `v` along `edge`.
    pub fn slope_away(&self, v: usize, edge: usize) -> Result<i8> {
        let d = self.direction_from(v, edge)?;
        Ok(sign(&self.cells[edge].form.slope(&d)))
    }

    pub fn census(&self) -> Census {
        let n = self.ambient_dim();
        let mut c = Census { bounded: vec![0; n + 1], unbounded: vec![0; n + 1] };
        for cell in &self.cells {
            if cell.is_bounded() {
                c.bounded[cell.dim] += 1;
            } else {
                c.unbounded[cell.dim] += 1;
            }
        }
        c
    }

    /// Diagnostic dump of every cell.
    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = c.polyhedron.vertices_and_rays().expect("nonempty");
                let fmt = |pts: &[Vec<Rational>]| -> Vec<Vec<String>> {
                    pts.iter().map(|p| p.iter().map(format_rational).collect()).collect()
                };
                let mut obj = json!({
                    "label": c.label.to_string(),
                    "dimension": c.dim,
                    "flat": c.flat,
                    "vertices": fmt(&v.vertices),
                    "rays": fmt(&v.rays),
                    "lineality": fmt(&v.lineality),
                    "gradient": c.form.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                    "constant": format_rational(&c.form.constant),
                });
                if c.dim == 1 {
                    let o = self.edge_orientation(i).expect("1-cell");
                    obj["direction"] = json!(o.direction.iter().map(format_rational).collect::<Vec<_>>());
                    obj["orientation"] = json!(o.slope_sign);
                }
                obj
            })
            .collect();
        json!({
            "dimension": self.ambient_dim(),
            "levels": self.levels.iter().map(format_rational).collect::<Vec<_>>(),
            "cells": cells,
        })
    }
}

/// `f ∘ map` for an affine `f` on the codomain of `map`.
fn compose(f: &Affine, map: &[Affine]) -> Affine {
    let n = map.first().map_or(0, Affine::dim);
    let mut out = Affine::constant(n, f.constant.clone());
    for (w, m) in f.coeffs.iter().zip(map) {
        if !w.is_zero() {
            out = out.add(&m.scaled(w));
        }
    }
    out
}

/// First violation of generic position: in some hidden layer, `p ≤ d` of the
/// hyperplanes meeting in codimension below `p`, or `d + 1` of them meeting at all
/// (`d` the layer's input width).
pub fn genericity_violation(net: &Network) -> Option<GenericityWitness> {
    for (li, layer) in net.hidden_layers().iter().enumerate() {
        let d = layer.input_dim();
        let k = layer.output_dim();
        for p in 1..=(d + 1).min(k) {
            for subset in (0..k).combinations(p) {
                let w: Vec<Vec<Rational>> = subset.iter().map(|&i| layer.weights[i].clone()).collect();
                let ok = if p <= d {
                    rank(&w) == p
                } else {
                    let aug: Vec<Vec<Rational>> = subset
                        .iter()
                        .map(|&i| {
                            let mut r = layer.weights[i].clone();
                            r.push(layer.bias[i].clone());
                            r
                        })
                        .collect();
                    rank(&aug) > rank(&w)
                };
                if !ok {
                    return Some(GenericityWitness { layer: li, neurons: subset });
                }
            }
        }
    }
    None
}

pub fn is_generic(net: &Network) -> bool {
    genericity_violation(net).is_none()
}

/// First node map with a flat cell at value 0. The flat cells of the node map
/// of layer `ℓ` are the cells of the complex of the first `ℓ − 1` layers on
/// which the neuron's pre-activation is constant.
pub fn transversality_violation(net: &Network) -> Option<TransversalityWitness> {
    let n = net.input_dim();
    let mut pieces = vec![Piece {
        label: Vec::new(),
        eqs: Vec::new(),
        gts: Vec::new(),
        point: vec![Rational::zero(); n],
        map: (0..n).map(|i| Affine::coordinate(n, i)).collect(),
    }];
    let depth = net.depth();
    for (li, layer) in net.hidden_layers().iter().enumerate() {
        for p in &pieces {
            for j in 0..layer.output_dim() {
                let g = compose(&layer.neuron(j), &p.map);
                if p.is_constant(&g) && g.eval(&p.point).is_zero() {
                    return Some(TransversalityWitness { layer: li, neuron: j, cell_label: TernaryLabel(p.label.clone()) });
                }
            }
        }
        if li + 1 == depth {
            break;
        }
        for j in 0..layer.output_dim() {
            pieces = pieces
                .into_iter()
                .flat_map(|p| {
                    let g = compose(&layer.neuron(j), &p.map);
                    p.split(&g, n)
                })
                .collect();
        }
        let width = layer.output_dim();
        for p in &mut pieces {
            let block: Vec<i8> = p.label[p.label.len() - width..].to_vec();
            p.map = (0..width)
                .map(|j| if block[j] > 0 { compose(&layer.neuron(j), &p.map) } else { Affine::zero(n) })
                .collect();
        }
    }
    None
}

pub fn is_transversal(net: &Network) -> bool {
    transversality_violation(net).is_none()
}

/// Plain union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{fan_network, random_network, Activation, AffineLayer, Scheme};
    use crate::rational::{int, vec_of};

    fn n1() -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap()
    }

    fn three_line(output: &[i64]) -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[-1, -1, 1]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(output), int(0)).unwrap()
    }

    #[test]
    fn n1_has_nine_cells() {
        let cx = CanonicalComplex::build(&n1());
        let c = cx.census();
        assert_eq!(cx.len(), 9);
        assert_eq!(c.total(2), 4);
        assert_eq!(c.total(1), 4);
        assert_eq!(c.total(0), 1);
        assert_eq!(c.unbounded[1], 4);
        assert_eq!(c.unbounded[2], 4);
        assert_eq!(cx.zero_cells(), vec![(vec_of(&[0, 0]), int(0))]);
    }

    #[test]
    fn n1_flat_component() {
        let cx = CanonicalComplex::build(&n1());
        let comps = cx.flat_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].level, int(0));
        assert_eq!(comps[0].cells.len(), 4);
        let labels: Vec<String> = comps[0].cells.iter().map(|&i| cx.cell(i).label.to_string()).collect();
        assert!(labels.contains(&"--".to_string()));
        assert_eq!(cx.nontransversal_thresholds(), vec![int(0)]);
    }

    #[test]
    fn n1_edge_orientations() {
        let cx = CanonicalComplex::build(&n1());
        let v = cx.index_of(&"00".parse().unwrap()).unwrap();
        let pos_x = cx.index_of(&"+0".parse().unwrap()).unwrap();
        let neg_x = cx.index_of(&"-0".parse().unwrap()).unwrap();
        assert_eq!(cx.slope_away(v, pos_x).unwrap(), 1);
        assert_eq!(cx.edge_orientation(neg_x).unwrap().slope_sign, 0);
        assert!(cx.edge_orientation(v).is_err());
    }

    #[test]
    fn faces_follow_labels() {
        let cx = CanonicalComplex::build(&n1());
        let q3 = cx.index_of(&"--".parse().unwrap()).unwrap();
        assert_eq!(cx.faces(q3).len(), 3);
        let v = cx.index_of(&"00".parse().unwrap()).unwrap();
        assert_eq!(cx.cofaces(v).len(), 8);
    }

    #[test]
    fn three_line_net_flat_cells() {
        let cx = CanonicalComplex::build(&three_line(&[2, -3, 1]));
        assert_eq!(cx.cells_of_dim(0).count(), 3);
        // the all-negative region {x ≤ 0, y ≥ 0, x + y ≥ 1} is a flat 2-cell at level 0
        let minus = cx.index_of(&"---".parse().unwrap()).unwrap();
        assert!(cx.cell(minus).flat);
        assert_eq!(cx.nontransversal_thresholds(), vec![int(0), int(1), int(2)]);

        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 1]], Activation::Relu).unwrap();
        let net = Network::shallow(first, vec_of(&[2, -3, 1]), int(0)).unwrap();
        let cx = CanonicalComplex::build(&net);
        assert!(cx.cells().iter().all(|c| !c.flat || c.dim == 0));
    }

    #[test]
    fn fan_one_vertices() {
        let cx = CanonicalComplex::build(&fan_network(1));
        let zs = cx.zero_cells();
        assert_eq!(zs.len(), 4);
        for (p, v) in &zs {
            assert_eq!(p[0].abs(), int(1));
            assert_eq!(p[1].abs(), int(1));
            assert_eq!(v, &fan_network(1).value(p).unwrap());
        }
    }

    #[test]
    fn fan_edges_alternate() {
        let net = fan_network(1);
        let cx = CanonicalComplex::build(&net);
        let square = cx.index_of(&"----".parse().unwrap()).unwrap();
        let comp = cx.flat_components().into_iter().find(|c| c.cells.contains(&square)).unwrap();
        for &v in cx.faces(square).iter().filter(|&&f| cx.cell(f).dim == 0) {
            for &e in cx.cofaces(v) {
                if cx.cell(e).dim == 1 && !comp.cells.contains(&e) {
                    // the single positive neuron on the edge decides its orientation
                    let j = cx.cell(e).label.0.iter().position(|&s| s == 1).unwrap();
                    let expected = if j % 2 == 1 { 1 } else { -1 };
                    assert_eq!(cx.slope_away(v, e).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn random_generic_census() {
        let net = random_network(&[2, 3, 1], 5, Scheme::Gaussian).unwrap();
        assert!(is_generic(&net));
        assert!(is_transversal(&net));
        let c = CanonicalComplex::build(&net).census();
        assert_eq!(c.total(2), 7);
        assert_eq!(c.total(1), 9);
        assert_eq!(c.total(0), 3);
        assert_eq!(c.unbounded[1], 6);
        assert_eq!(c.unbounded[2], 6);
        assert_eq!(c.bounded[2], 1);
    }

    #[test]
    fn genericity_witnesses() {
        let w = genericity_violation(&fan_network(2)).unwrap();
        assert_eq!(w.layer, 0);
        let dup = AffineLayer::from_ints(&[&[1, 0], &[1, 0]], Activation::Relu).unwrap();
        let net = Network::shallow(dup, vec_of(&[1, 1]), int(0)).unwrap();
        assert_eq!(genericity_violation(&net).unwrap().neurons, vec![0, 1]);
        assert!(is_generic(&n1()));
    }

    #[test]
    fn transversality() {
        assert!(is_transversal(&n1()));
        let zero = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 0, 0]], Activation::Relu).unwrap();
        let net = Network::shallow(zero, vec_of(&[1, 1]), int(0)).unwrap();
        let w = transversality_violation(&net).unwrap();
        assert_eq!((w.layer, w.neuron), (0, 1));
        // second-layer neuron vanishing at the vertex of the first layer
        let l1 = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        let l2 = AffineLayer::from_ints(&[&[1, 1, 0]], Activation::Relu).unwrap();
        let out = AffineLayer::from_ints(&[&[1, 0]], Activation::Identity).unwrap();
        let deep = Network::new(vec![l1, l2, out]).unwrap();
        assert_eq!(transversality_violation(&deep).unwrap().layer, 1);
    }

    #[test]
    fn refinement_splits_quadrant() {
        let cx = CanonicalComplex::build_refined(&n1(), &[int(1)]);
        // the open quadrant splits in two; the half-plane bands of F = x and F = y split too
        let quadrant = cx.cells_of_dim(2).filter(|&i| cx.cell(i).label.0[..2] == [1, 1]).count();
        assert_eq!(quadrant, 2);
        assert_eq!(cx.cells_of_dim(2).count(), 7);
        assert_eq!(cx.cells_of_dim(0).count(), 3);
        let same = CanonicalComplex::build_refined(&n1(), &[int(-1)]);
        assert_eq!(same.len(), 9);
    }

    #[test]
    fn locate_matches_labels() {
        let net = random_network(&[2, 4, 3, 1], 11, Scheme::Uniform).unwrap();
        let cx = CanonicalComplex::build(&net);
        for x in [[1, 2], [-3, 1], [0, 0], [5, -7]] {
            let p = vec_of(&x);
            let c = cx.locate(&p).unwrap();
            assert!(cx.cell(c).polyhedron.contains_point(&p));
            assert_eq!(cx.cell(c).form.eval(&p), net.value(&p).unwrap());
        }
    }
}

//! Local, global, stable and coarse H-complexity, and the depth-2 Morse
//! classification of vertices.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::compact::{bounded_pair_model, strip_pair_model, sublevel_model, superlevel_model, CompactModel, PairModel, Selection};
use crate::complex::{genericity_violation, transversality_violation, CanonicalComplex, FlatComponent};
use crate::error::{Error, Result};
use crate::geometry::{strict_feasible, Affine};
use crate::homology::{betti, triangulate, SimplicialComplex, SimplicialPair};
use crate::homology::triangulate_cells;
use crate::network::Network;
use crate::rational::{format_rational, int, Rational};

/// Local H-complexity of one flat component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComplexity {
    pub level: Rational,
    /// Cells of the component in the canonical complex.
    pub cells: Vec<usize>,
    /// `rank H_i(F≤a, F≤a ∖ K)` for `i = 0..=n`.
    pub ranks: Vec<usize>,
    pub total: usize,
    pub h_critical: bool,
}

/// Half the gap from `a` down to the next smaller threshold, or 1 if there is none.
pub fn strip_width(thresholds: &[Rational], a: &Rational) -> Rational {
    thresholds
        .iter()
        .filter(|t| *t < a)
        .max()
        .map_or_else(Rational::one, |t| (a - t) / int(2))
}

/// Betti numbers of a compact model, padded to length `len`.
pub fn model_betti(model: &CompactModel, len: usize) -> Vec<usize> {
    betti(&triangulate(&model.complex), len)
}

/// Relative Betti numbers of a model pair. The distinguished part is made
/// full by one barycentric subdivision.
pub fn pair_betti(pair: &PairModel, len: usize) -> Vec<usize> {
    let (x, a) = subdivided_pair(pair);
    SimplicialPair::new_full(x, a).expect("barycentric images are full").relative_betti(len)
}

fn subdivided_pair(pair: &PairModel) -> (SimplicialComplex, SimplicialComplex) {
    let x = triangulate(&pair.model.complex);
    let a = triangulate_cells(&pair.model.complex, pair.sub.iter().copied());
    let (xb, sources) = x.barycentric_with_map();
    let ab = SimplicialComplex::subdivide_sub(&a, &xb, &sources);
    (xb, ab)
}

/// `rank H_i(F≤a, F≤a ∖ K)` via the strip model of `K`: the complement of `K`
/// in the subdivided model is replaced by its complement complex.
pub fn local_h_complexity(cx: &CanonicalComplex, component: &FlatComponent) -> Result<LocalComplexity> {
    let n = cx.ambient_dim();
    let a = &component.level;
    let eps = strip_width(&cx.nontransversal_thresholds(), a);
    let pair = strip_pair_model(cx, &component.cells, a, &eps)?;
    let (x, k) = subdivided_pair(&pair);
    let rest = x.complement_complex(&k)?;
    let ranks = SimplicialPair::new_full(x, rest)?.relative_betti(n + 1);
    let total = ranks.iter().sum();
    Ok(LocalComplexity { level: a.clone(), cells: component.cells.clone(), ranks, total, h_critical: total > 0 })
}

/// Every flat component with its local complexity, and their total.
pub fn global_h_complexity(cx: &CanonicalComplex) -> Result<(usize, Vec<LocalComplexity>)> {
    let locals = cx
        .flat_components()
        .iter()
        .map(|c| local_h_complexity(cx, c))
        .collect::<Result<Vec<_>>>()?;
    Ok((locals.iter().map(|l| l.total).sum(), locals))
}

/// `max |threshold| + 1`.
pub fn stable_bound(cx: &CanonicalComplex) -> Rational {
    cx.nontransversal_thresholds().iter().map(|t| t.abs()).max().unwrap_or_else(Rational::zero) + Rational::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableComplexities {
    pub m: Rational,
    /// Betti numbers of `F ≤ −M`.
    pub sublevel_neg: Vec<usize>,
    /// Betti numbers of `F ≤ M`.
    pub sublevel_pos: Vec<usize>,
    /// Betti numbers of `F ≥ −M`.
    pub superlevel_neg: Vec<usize>,
    /// Betti numbers of `F ≥ M`.
    pub superlevel_pos: Vec<usize>,
}

pub fn stable_complexities(cx: &CanonicalComplex) -> StableComplexities {
    stable_complexities_at(cx, &stable_bound(cx))
}

pub fn stable_complexities_at(cx: &CanonicalComplex, m: &Rational) -> StableComplexities {
    let len = cx.ambient_dim() + 1;
    let neg = -m;
    StableComplexities {
        m: m.clone(),
        sublevel_neg: model_betti(&sublevel_model(cx, &neg), len),
        sublevel_pos: model_betti(&sublevel_model(cx, m), len),
        superlevel_neg: model_betti(&superlevel_model(cx, &neg), len),
        superlevel_pos: model_betti(&superlevel_model(cx, m), len),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseComplexities {
    /// Ranks of `H_*(F≤M, F≤−M)`.
    pub sublevel: Vec<usize>,
    /// Ranks of `H_*(F≥−M, F≥M)`.
    pub superlevel: Vec<usize>,
}

impl CoarseComplexities {
    pub fn sublevel_total(&self) -> usize {
        self.sublevel.iter().sum()
    }

    pub fn superlevel_total(&self) -> usize {
        self.superlevel.iter().sum()
    }
}

pub fn coarse_complexities(cx: &CanonicalComplex) -> CoarseComplexities {
    coarse_complexities_at(cx, &stable_bound(cx))
}

/// Computed on the strips `[−M−1, M]` and `[−M, M+1]`, which carry the same
/// relative homology by excision.
pub fn coarse_complexities_at(cx: &CanonicalComplex, m: &Rational) -> CoarseComplexities {
    let len = cx.ambient_dim() + 1;
    let outer = m + Rational::one();
    let neg = -m;
    let sub = bounded_pair_model(cx, &-&outer, m, &Selection::AtMost(neg.clone()));
    let sup = bounded_pair_model(cx, &neg, &outer, &Selection::AtLeast(m.clone()));
    CoarseComplexities { sublevel: pair_betti(&sub, len), superlevel: pair_betti(&sup, len) }
}

/// Numbers of connected components of `F ≤ −M`, `F ≤ M`, `F ≥ −M`, `F ≥ M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentCounts {
    pub n_minus: usize,
    pub n_plus: usize,
    pub n_sup_minus: usize,
    pub n_sup_plus: usize,
}

impl ComponentCounts {
    pub fn from_stable(s: &StableComplexities) -> Self {
        ComponentCounts {
            n_minus: s.sublevel_neg[0],
            n_plus: s.sublevel_pos[0],
            n_sup_minus: s.superlevel_neg[0],
            n_sup_plus: s.superlevel_pos[0],
        }
    }
}

pub fn component_counts(cx: &CanonicalComplex) -> ComponentCounts {
    ComponentCounts::from_stable(&stable_complexities(cx))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    Regular,
    Nondegenerate { index: usize },
    Degenerate,
}

impl VertexClass {
    pub fn name(&self) -> &'static str {
        match self {
            VertexClass::Regular => "regular",
            VertexClass::Nondegenerate { .. } => "nondegenerate_critical",
            VertexClass::Degenerate => "degenerate_critical",
        }
    }
}

fn require_depth2_generic(net: &Network) -> Result<()> {
    if net.depth() != 1 {
        return Err(Error::Unsupported(format!("classification needs one hidden layer, found {}", net.depth())));
    }
    if let Some(w) = genericity_violation(net) {
        return Err(Error::Unsupported(format!("network is not generic (layer {}, neurons {:?})", w.layer, w.neurons)));
    }
    if let Some(w) = transversality_violation(net) {
        return Err(Error::Unsupported(format!("network is not transversal (layer {}, neuron {})", w.layer, w.neuron)));
    }
    Ok(())
}

/// Morse type of a vertex of a generic, transversal network with one hidden
/// layer. The edges at the vertex come in pairs on the same line (same zero
/// set); a flat edge makes the vertex degenerate, a pair along which `F`
/// increases through the vertex makes it regular, and otherwise the index is
/// the number of pairs along which `F` decreases away from the vertex.
pub fn classify_vertex(cx: &CanonicalComplex, vertex: usize) -> Result<VertexClass> {
    require_depth2_generic(cx.network())?;
    classify_unchecked(cx, vertex)
}

fn classify_unchecked(cx: &CanonicalComplex, vertex: usize) -> Result<VertexClass> {
    if cx.cell(vertex).dim != 0 {
        return Err(Error::Precondition("classification applies to 0-cells".into()));
    }
    if !cx.levels().is_empty() {
        return Err(Error::Precondition("classification needs the unrefined complex".into()));
    }
    let mut pairs: BTreeMap<Vec<usize>, Vec<i8>> = BTreeMap::new();
    for &e in cx.cofaces(vertex) {
        if cx.cell(e).dim != 1 {
            continue;
        }
        let zeros: Vec<usize> = cx.cell(e).label.0.iter().enumerate().filter(|(_, &s)| s == 0).map(|(i, _)| i).collect();
        pairs.entry(zeros).or_default().push(cx.slope_away(vertex, e)?);
    }
    if pairs.values().flatten().any(|&s| s == 0) {
        return Ok(VertexClass::Degenerate);
    }
    let mut index = 0;
    for slopes in pairs.values() {
        if slopes.len() != 2 {
            return Err(Error::Precondition("vertex edges do not pair up; network is not generic".into()));
        }
        if slopes[0] != slopes[1] {
            return Ok(VertexClass::Regular);
        }
        if slopes[0] < 0 {
            index += 1;
        }
    }
    Ok(VertexClass::Nondegenerate { index })
}

/// A generic network with one hidden layer is PL Morse exactly when its
/// all-negative region is empty.
pub fn is_pl_morse_depth2(net: &Network) -> Result<bool> {
    require_depth2_generic(net)?;
    let layer = &net.layers()[0];
    let forms: Vec<Affine> = (0..layer.output_dim()).map(|i| layer.neuron(i)).collect();
    Ok(!strict_feasible(&forms))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexRecord {
    pub point: Vec<Rational>,
    pub value: Rational,
    pub class: Option<VertexClass>,
}

/// Everything the analyzer reports about a network.
#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub thresholds: Vec<Rational>,
    pub components: Vec<LocalComplexity>,
    /// Labels of the cells of each component, parallel to `components`.
    pub component_labels: Vec<Vec<String>>,
    pub global: usize,
    pub stable: StableComplexities,
    pub coarse: CoarseComplexities,
    pub counts: ComponentCounts,
    pub vertices: Vec<VertexRecord>,
}

impl ComplexityReport {
    /// Informational: coarse sublevel total ≤ global complexity.
    pub fn coarse_le_global(&self) -> bool {
        self.coarse.sublevel_total() <= self.global && self.coarse.superlevel_total() <= self.global
    }

    /// Informational: global complexity ≤ number of vertices.
    pub fn global_le_vertex_count(&self) -> bool {
        self.global <= self.vertices.len()
    }

    pub fn to_json(&self) -> Value {
        let q = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "thresholds": q(&self.thresholds),
            "components": self.components.iter().zip(&self.component_labels).map(|(c, labels)| json!({
                "level": format_rational(&c.level),
                "cells": labels,
                "ranks": c.ranks,
                "total": c.total,
                "h_critical": c.h_critical,
            })).collect::<Vec<_>>(),
            "global": self.global,
            "global_h_complexity": self.global,
            "stable": {
                "M": format_rational(&self.stable.m),
                "sublevel_neg": self.stable.sublevel_neg,
                "sublevel_pos": self.stable.sublevel_pos,
                "superlevel_neg": self.stable.superlevel_neg,
                "superlevel_pos": self.stable.superlevel_pos,
            },
            "coarse": { "sublevel": self.coarse.sublevel, "superlevel": self.coarse.superlevel },
            "counts": {
                "n_minus": self.counts.n_minus,
                "n_plus": self.counts.n_plus,
                "n_sup_minus": self.counts.n_sup_minus,
                "n_sup_plus": self.counts.n_sup_plus,
            },
            "vertices": self.vertices.iter().map(|v| {
                let mut o = json!({
                    "point": q(&v.point),
                    "value": format_rational(&v.value),
                    "class": v.class.map_or("unclassified", |c| c.name()),
                });
                if let Some(VertexClass::Nondegenerate { index }) = v.class {
                    o["index"] = json!(index);
                }
                o
            }).collect::<Vec<_>>(),
            "flags": {
                "coarse_le_global": self.coarse_le_global(),
                "global_le_vertex_count": self.global_le_vertex_count(),
            },
        })
    }
}

/// Full analysis of a transversal network.
pub fn analyze(net: &Network) -> Result<ComplexityReport> {
    if let Some(w) = transversality_violation(net) {
        return Err(Error::Unsupported(format!(
            "network is not transversal: neuron {} of hidden layer {} vanishes on the flat cell {}",
            w.neuron, w.layer, w.cell_label
        )));
    }
    let cx = CanonicalComplex::build(net);
    analyze_complex(&cx)
}

pub fn analyze_complex(cx: &CanonicalComplex) -> Result<ComplexityReport> {
    let (global, components) = global_h_complexity(cx)?;
    let component_labels = components
        .iter()
        .map(|c| c.cells.iter().map(|&i| cx.cell(i).label.to_string()).collect())
        .collect();
    let stable = stable_complexities(cx);
    let coarse = coarse_complexities(cx);
    let counts = ComponentCounts::from_stable(&stable);
    let classifiable = require_depth2_generic(cx.network()).is_ok();
    let vertices = cx
        .cells_of_dim(0)
        .map(|v| {
            let point = cx.cell(v).interior_point.clone();
            let value = cx.cell(v).form.eval(&point);
            let class = if classifiable { Some(classify_unchecked(cx, v)?) } else { None };
            Ok(VertexRecord { point, value, class })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexityReport {
        thresholds: cx.nontransversal_thresholds(),
        components,
        component_labels,
        global,
        stable,
        coarse,
        counts,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Activation, AffineLayer};
    use crate::rational::vec_of;

    fn n1() -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap()
    }

    fn three_line(rows: &[&[i64]], output: &[i64]) -> Network {
        let first = AffineLayer::from_ints(rows, Activation::Relu).unwrap();
        Network::shallow(first, vec_of(output), int(0)).unwrap()
    }

    #[test]
    fn widths() {
        let t = vec![int(0), int(1), int(3)];
        assert_eq!(strip_width(&t, &int(3)), int(1));
        assert_eq!(strip_width(&t, &int(0)), int(1));
        assert_eq!(strip_width(&t, &int(1)), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn n1_local_and_global() {
        let cx = CanonicalComplex::build(&n1());
        let (g, locals) = global_h_complexity(&cx).unwrap();
        assert_eq!(locals.len(), 1);
        assert_eq!(locals[0].ranks, vec![1, 0, 0]);
        assert_eq!(g, 1);
    }

    #[test]
    fn n1_stable_and_coarse() {
        let cx = CanonicalComplex::build(&n1());
        let s = stable_complexities(&cx);
        assert_eq!(s.sublevel_neg, vec![0, 0, 0]);
        assert_eq!(s.superlevel_pos, vec![1, 0, 0]);
        let c = coarse_complexities(&cx);
        assert_eq!(c.sublevel, vec![1, 0, 0]);
        let counts = ComponentCounts::from_stable(&s);
        assert_eq!((counts.n_minus, counts.n_plus), (0, 1));
        let s5 = stable_complexities_at(&cx, &(stable_bound(&cx) + int(5)));
        assert_eq!((s5.sublevel_neg, s5.superlevel_pos), (s.sublevel_neg, s.superlevel_pos));
    }

    #[test]
    fn vertex_classes() {
        let rows: &[&[i64]] = &[&[1, 0, 0], &[0, -1, 0], &[-1, -1, 1]];
        let cx = CanonicalComplex::build(&three_line(rows, &[2, -3, 1]));
        let origin = cx.locate(&vec_of(&[0, 0])).unwrap();
        assert_eq!(classify_vertex(&cx, origin).unwrap(), VertexClass::Nondegenerate { index: 1 });
        let cx = CanonicalComplex::build(&three_line(rows, &[2, 1, 1]));
        assert_eq!(classify_vertex(&cx, origin).unwrap(), VertexClass::Regular);
        let cx = CanonicalComplex::build(&n1());
        let origin = cx.locate(&vec_of(&[0, 0])).unwrap();
        assert_eq!(classify_vertex(&cx, origin).unwrap(), VertexClass::Degenerate);
    }

    #[test]
    fn pl_morse() {
        assert!(!is_pl_morse_depth2(&n1()).unwrap());
        let rows: &[&[i64]] = &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 1]];
        assert!(is_pl_morse_depth2(&three_line(rows, &[2, -3, 1])).unwrap());
        assert!(matches!(is_pl_morse_depth2(&crate::network::fan_network(2)), Err(Error::Unsupported(_))));
    }
}

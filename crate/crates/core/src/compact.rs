//! Compact polytopal models of subcomplexes of a canonical complex:
//! essentialization, vertex hulls, and the sub/superlevel, level and strip
//! selections used for (relative) homology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::complex::{CanonicalComplex, UnionFind};
use crate::error::{Error, Result};
use crate::geometry::{Affine, Polyhedron};
use crate::linalg::{nullspace, rank, rref};
use crate::rational::{dot, Rational};

/// A bounded cell of a [`PolytopalComplex`], given by its vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCell {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub facets: Vec<usize>,
}

/// Polytopes closed under faces, on a shared vertex list sorted lexicographically.
#[derive(Clone, Debug, Default)]
pub struct PolytopalComplex {
    points: Vec<Vec<Rational>>,
    cells: Vec<PolyCell>,
    index: HashMap<Vec<usize>, usize>,
}

impl PolytopalComplex {
    /// The complex generated by the convex hulls of the given point sets.
    pub fn from_hulls(hulls: &[Vec<Vec<Rational>>]) -> PolytopalComplex {
        let points: Vec<Vec<Rational>> = hulls.iter().flatten().cloned().sorted().dedup().collect();
        let id: HashMap<&Vec<Rational>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut out = PolytopalComplex { points: points.clone(), cells: Vec::new(), index: HashMap::new() };
        for h in hulls {
            let ids: Vec<usize> = h.iter().map(|p| id[p]).sorted().dedup().collect();
            out.add_polytope(ids);
        }
        out
    }

    fn add_polytope(&mut self, ids: Vec<usize>) -> usize {
        if let Some(&i) = self.index.get(&ids) {
            return i;
        }
        let pts: Vec<&Vec<Rational>> = ids.iter().map(|&i| &self.points[i]).collect();
        let (dim, facets) = facets_of(&pts);
        let facet_ids: Vec<usize> = facets
            .into_iter()
            .map(|f| {
                let sub: Vec<usize> = f.into_iter().map(|k| ids[k]).collect();
                self.add_polytope(sub)
            })
            .collect();
        let i = self.cells.len();
        self.cells.push(PolyCell { vertices: ids.clone(), dim, facets: facet_ids });
        self.index.insert(ids, i);
        i
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn cells(&self) -> &[PolyCell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &PolyCell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_by_vertices(&self, ids: &[usize]) -> Option<usize> {
        self.index.get(ids).copied()
    }

    pub fn vertex_id(&self, p: &[Rational]) -> Option<usize> {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    /// All faces of the given cells, including the cells themselves.
    pub fn closure(&self, cells: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = cells.into_iter().collect();
        while let Some(c) = stack.pop() {
            if out.insert(c) {
                stack.extend(&self.cells[c].facets);
            }
        }
        out
    }

    /// Whether `d` is a face of `c`.
    pub fn is_face(&self, d: usize, c: usize) -> bool {
        let vc = &self.cells[c].vertices;
        self.cells[d].vertices.iter().all(|v| vc.binary_search(v).is_ok()) && self.closure([c]).contains(&d)
    }
}

/// Affine dimension of a point set and its facets as index subsets.
fn facets_of(pts: &[&Vec<Rational>]) -> (usize, Vec<Vec<usize>>) {
    if pts.len() <= 1 {
        return (0, Vec::new());
    }
    let origin = pts[0];
    let mut dirs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| sub(p, origin)).collect();
    let ambient = origin.len();
    let pivots = rref(&mut dirs, ambient);
    let d = pivots.len();
    // coordinates on the pivot columns are injective on the affine hull
    let local: Vec<Vec<Rational>> = pts.iter().map(|p| pivots.iter().map(|&j| p[j].clone()).collect()).collect();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    if d == 1 {
        let (lo, _) = local.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
        let (hi, _) = local.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).unwrap();
        return (1, vec![vec![lo], vec![hi]]);
    }
    for subset in (0..local.len()).combinations(d) {
        let base = &local[subset[0]];
        let rows: Vec<Vec<Rational>> = subset[1..].iter().map(|&i| sub(&local[i], base)).collect();
        if rank(&rows) != d - 1 {
            continue;
        }
        let normal = nullspace(&rows, d).pop().expect("corank one");
        let offset = dot(&normal, base);
        let vals: Vec<Rational> = local.iter().map(|p| dot(&normal, p) - &offset).collect();
        let all_ge = vals.iter().all(|v| !v.is_negative());
        let all_le = vals.iter().all(|v| !v.is_positive());
        if all_ge || all_le {
            facets.insert((0..local.len()).filter(|&i| vals[i].is_zero()).collect());
        }
    }
    (d, facets.into_iter().collect())
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Compact model of a subcomplex, with the model cell of each source cell's vertex hull.
#[derive(Clone, Debug, Default)]
pub struct CompactModel {
    pub complex: PolytopalComplex,
    pub provenance: BTreeMap<usize, usize>,
}

impl CompactModel {
    /// Model cells generated by the hulls of the given source cells.
    pub fn image_of(&self, sources: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        self.complex.closure(sources.into_iter().filter_map(|s| self.provenance.get(&s).copied()))
    }
}

/// Source cells of a subcomplex after essentialization: each cell intersected
/// with the orthogonal complement of the common lineality space.
#[derive(Clone, Debug)]
pub struct Essentialized {
    pub lineality: Vec<Vec<Rational>>,
    pub cells: Vec<(usize, Polyhedron)>,
}

/// Connected components of a face-closed cell set, each sorted.
pub fn components(cx: &CanonicalComplex, cells: &[usize]) -> Vec<Vec<usize>> {
    let set: BTreeSet<usize> = cells.iter().copied().collect();
    let mut uf = UnionFind::new(cx.len());
    for &c in &set {
        for &d in cx.faces(c) {
            if set.contains(&d) {
                uf.union(c, d);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &c in &set {
        groups.entry(uf.find(c)).or_default().push(c);
    }
    groups.into_values().collect()
}

/// Essentialization of a connected subcomplex. All cells of a connected
/// complex share one lineality space `L`; intersecting with `L^⊥` leaves
/// pointed cells, and orthogonal projection retracts onto them.
pub fn essentialize(cx: &CanonicalComplex, component: &[usize]) -> Essentialized {
    let Some(&first) = component.first() else {
        return Essentialized { lineality: Vec::new(), cells: Vec::new() };
    };
    let lineality = cx.cell(first).polyhedron.lineality();
    let n = cx.ambient_dim();
    let cuts: Vec<Affine> = lineality.iter().map(|l| Affine::new(l.clone(), Rational::zero())).collect();
    let cells = component
        .iter()
        .map(|&c| {
            let p = &cx.cell(c).polyhedron;
            let q = if cuts.is_empty() { p.clone() } else { p.with_equalities(&cuts) };
            debug_assert_eq!(q.ambient_dim(), n);
            (c, q)
        })
        .collect();
    Essentialized { lineality, cells }
}

/// Vertex hulls of pointed cells and all their faces.
pub fn compact_part(cells: &[(usize, Polyhedron)]) -> Result<CompactModel> {
    let mut hulls = Vec::with_capacity(cells.len());
    for (c, p) in cells {
        let v = p.vertices_and_rays()?;
        if !v.lineality.is_empty() || v.vertices.is_empty() {
            return Err(Error::Precondition(format!("cell {c} is not pointed; essentialize first")));
        }
        hulls.push(v.vertices.clone());
    }
    let complex = PolytopalComplex::from_hulls(&hulls);
    let provenance = cells
        .iter()
        .zip(&hulls)
        .map(|((c, _), h)| {
            let ids: Vec<usize> = h.iter().map(|p| complex.vertex_id(p).expect("hull vertex")).sorted().collect();
            (*c, complex.cell_by_vertices(&ids).expect("hull cell"))
        })
        .collect();
    Ok(CompactModel { complex, provenance })
}

/// Compact model of an arbitrary face-closed cell set: per component
/// essentialization followed by the compact part.
pub fn model_of(cx: &CanonicalComplex, cells: &[usize]) -> CompactModel {
    let mut pointed = Vec::new();
    for comp in components(cx, cells) {
        pointed.extend(essentialize(cx, &comp).cells);
    }
    compact_part(&pointed).expect("essentialized cells are pointed")
}

/// Which part of the domain a selection keeps, by the value of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    AtMost(Rational),
    AtLeast(Rational),
    Equal(Rational),
    Between(Rational, Rational),
}

impl Selection {
    fn levels(&self) -> Vec<Rational> {
        match self {
            Selection::AtMost(c) | Selection::AtLeast(c) | Selection::Equal(c) => vec![c.clone()],
            Selection::Between(a, b) => vec![a.clone(), b.clone()],
        }
    }
}

/// Cells of a complex refined at the selection's levels lying in the selected set.
pub fn select(cx: &CanonicalComplex, sel: &Selection) -> Vec<usize> {
    let entry = |c: &Rational| cx.level_entry(c).expect("complex is refined at the selection levels");
    let keep = |label: &[i8]| -> bool {
        match sel {
            Selection::AtMost(c) => label[entry(c)] <= 0,
            Selection::AtLeast(c) => label[entry(c)] >= 0,
            Selection::Equal(c) => label[entry(c)] == 0,
            Selection::Between(a, b) => label[entry(a)] >= 0 && label[entry(b)] <= 0,
        }
    };
    (0..cx.len()).filter(|&i| keep(&cx.cell(i).label.0)).collect()
}

/// Refines `cx` as needed and returns the refined complex with the selected cells.
pub fn refine_and_select(cx: &CanonicalComplex, sel: &Selection) -> (CanonicalComplex, Vec<usize>) {
    let refined = cx.refine(&sel.levels());
    let cells = select(&refined, sel);
    (refined, cells)
}

/// Compact model homotopy equivalent to `{F ≤ c}`.
pub fn sublevel_model(cx: &CanonicalComplex, c: &Rational) -> CompactModel {
    let (r, cells) = refine_and_select(cx, &Selection::AtMost(c.clone()));
    model_of(&r, &cells)
}

/// Compact model homotopy equivalent to `{F ≥ c}`.
pub fn superlevel_model(cx: &CanonicalComplex, c: &Rational) -> CompactModel {
    let (r, cells) = refine_and_select(cx, &Selection::AtLeast(c.clone()));
    model_of(&r, &cells)
}

/// Compact model homotopy equivalent to `{F = c}`.
pub fn level_model(cx: &CanonicalComplex, c: &Rational) -> CompactModel {
    let (r, cells) = refine_and_select(cx, &Selection::Equal(c.clone()));
    model_of(&r, &cells)
}

/// A compact model of a bounded-range strip together with the model cells of
/// a distinguished subcomplex.
#[derive(Clone, Debug)]
pub struct PairModel {
    pub model: CompactModel,
    pub sub: BTreeSet<usize>,
}

/// Model of `(F ∈ [lo, hi], sub)` restricted to the components of the strip
/// that meet `keep`, where `sub` is given by cells of the refined complex.
fn strip_pair(refined: &CanonicalComplex, lo: &Rational, hi: &Rational, sub_of: impl Fn(&CanonicalComplex, usize) -> bool, only_meeting_sub: bool) -> PairModel {
    let strip = select(refined, &Selection::Between(lo.clone(), hi.clone()));
    let mut pointed = Vec::new();
    for comp in components(refined, &strip) {
        if only_meeting_sub && !comp.iter().any(|&c| sub_of(refined, c)) {
            continue;
        }
        for &c in &comp {
            // within a bounded range, F is constant along every recession direction
            let v = refined.cell(c).polyhedron.vertices_and_rays().expect("nonempty");
            debug_assert!(v.rays.iter().chain(&v.lineality).all(|r| refined.cell(c).form.slope(r).is_zero()));
        }
        pointed.extend(essentialize(refined, &comp).cells);
    }
    let model = compact_part(&pointed).expect("essentialized cells are pointed");
    let sub_cells: Vec<usize> = pointed.iter().map(|(c, _)| *c).filter(|&c| sub_of(refined, c)).collect();
    let sub = model.image_of(sub_cells);
    PairModel { model, sub }
}

/// Model of the strip `F ∈ [a − ε, a]` around the flat component `k` (cells
/// of `cx`, all at level `a`), restricted to the strip component containing
/// it, with `sub` the model cells of `K`.
pub fn strip_pair_model(cx: &CanonicalComplex, k: &[usize], a: &Rational, eps: &Rational) -> Result<PairModel> {
    if !eps.is_positive() {
        return Err(Error::Precondition("strip width must be positive".into()));
    }
    let lower = a - eps;
    let thresholds = cx.nontransversal_thresholds();
    if let Some(t) = thresholds.iter().find(|t| **t >= lower && *t < a) {
        return Err(Error::Precondition(format!("strip [{lower}, {a}) contains the nontransversal value {t}")));
    }
    if k.iter().any(|&c| cx.cell(c).flat_value().as_ref() != Some(a)) {
        return Err(Error::Precondition("component cells must be flat at the strip's top level".into()));
    }
    let prefix = cx.cell(k[0]).label.len();
    let k_labels: BTreeSet<&[i8]> = k.iter().map(|&c| cx.cell(c).label.0.as_slice()).collect();
    let refined = cx.refine(&[lower.clone(), a.clone()]);
    let in_k = |r: &CanonicalComplex, c: usize| k_labels.contains(&r.cell(c).label.0[..prefix]);
    Ok(strip_pair(&refined, &lower, a, in_k, true))
}

/// Model of `(F ∈ [lo, hi], part)` where `part` is a further selection
/// inside the strip, e.g. `F ≤ mid`.
pub fn bounded_pair_model(cx: &CanonicalComplex, lo: &Rational, hi: &Rational, part: &Selection) -> PairModel {
    let mut levels = vec![lo.clone(), hi.clone()];
    levels.extend(part.levels());
    let refined = cx.refine(&levels);
    let part_cells: BTreeSet<usize> = select(&refined, part).into_iter().collect();
    strip_pair(&refined, lo, hi, move |_, c| part_cells.contains(&c), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Activation, AffineLayer, Network};
    use crate::rational::{int, vec_of};

    fn n1() -> Network {
        let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, 1, 0]], Activation::Relu).unwrap();
        Network::shallow(first, vec_of(&[1, 1]), int(0)).unwrap()
    }

    fn square() -> Vec<Vec<Rational>> {
        vec![vec_of(&[0, 0]), vec_of(&[1, 0]), vec_of(&[0, 1]), vec_of(&[1, 1])]
    }

    #[test]
    fn square_faces() {
        let pc = PolytopalComplex::from_hulls(&[square()]);
        assert_eq!(pc.len(), 9);
        let top = pc.cells().iter().find(|c| c.dim == 2).unwrap();
        assert_eq!(top.facets.len(), 4);
    }

    #[test]
    fn hexagon_faces() {
        let hex: Vec<Vec<Rational>> =
            [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]].iter().map(|p| vec_of(p)).collect();
        let pc = PolytopalComplex::from_hulls(&[hex]);
        assert_eq!(pc.cells().iter().filter(|c| c.dim == 1).count(), 6);
    }

    #[test]
    fn n1_models() {
        let cx = CanonicalComplex::build(&n1());
        assert!(sublevel_model(&cx, &int(-1)).complex.is_empty());
        let m0 = sublevel_model(&cx, &int(0));
        assert_eq!(m0.complex.len(), 1);
        let all: Vec<usize> = (0..cx.len()).collect();
        let m = model_of(&cx, &all);
        assert_eq!(m.complex.points(), &[vec_of(&[0, 0])]);
    }

    #[test]
    fn half_plane_essentializes_to_a_line() {
        let first = AffineLayer::from_ints(&[&[1, 0, 0]], Activation::Relu).unwrap();
        let net = Network::shallow(first, vec_of(&[1]), int(0)).unwrap();
        let cx = CanonicalComplex::build(&net);
        let all: Vec<usize> = (0..cx.len()).collect();
        let e = essentialize(&cx, &all);
        assert_eq!(e.lineality.len(), 1);
        for (c, p) in &e.cells {
            assert!(p.is_pointed());
            assert_eq!(p.dimension().unwrap() + 1, cx.cell(*c).dim);
        }
    }

    #[test]
    fn unpointed_input_is_rejected() {
        let half = Polyhedron::new(2, vec![], vec![Affine::new(vec_of(&[0, 1]), int(0))]);
        assert!(matches!(compact_part(&[(0, half)]), Err(Error::Precondition(_))));
    }

    #[test]
    fn n1_strip_is_a_point() {
        let cx = CanonicalComplex::build(&n1());
        let k = cx.flat_components()[0].cells.clone();
        let pair = strip_pair_model(&cx, &k, &int(0), &int(1)).unwrap();
        assert_eq!(pair.model.complex.len(), 1);
        assert_eq!(pair.sub.len(), 1);
    }
}

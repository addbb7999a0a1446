use std::collections::HashMap;

use super::simplicial::SimplicialComplex;
use crate::compact::PolytopalComplex;

/// Pulling triangulation: each cell is coned from its smallest vertex over
/// the triangulations of the facets not containing it. Vertex ids of the
/// model are ordered lexicographically by coordinates, so the triangulations
/// of shared faces agree and no vertices are added.
pub fn triangulate(model: &PolytopalComplex) -> SimplicialComplex {
    triangulate_cells(model, 0..model.len())
}

/// Triangulation of the subcomplex generated by the given cells, on the
/// model's vertex numbering.
pub fn triangulate_cells(model: &PolytopalComplex, cells: impl IntoIterator<Item = usize>) -> SimplicialComplex {
    let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut tops = Vec::new();
    for c in cells {
        tops.extend(pull(model, c, &mut memo));
    }
    SimplicialComplex::from_simplices(model.points().to_vec(), tops)
}

fn pull(model: &PolytopalComplex, c: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&c) {
        return t.clone();
    }
    let cell = model.cell(c);
    let out = if cell.dim == 0 {
        vec![cell.vertices.clone()]
    } else {
        let apex = cell.vertices[0];
        let mut out = Vec::new();
        for &f in &cell.facets {
            if model.cell(f).vertices.contains(&apex) {
                continue;
            }
            for mut s in pull(model, f, memo) {
                s.push(apex);
                s.sort_unstable();
                out.push(s);
            }
        }
        out
    };
    memo.insert(c, out.clone());
    out
}

use std::collections::BTreeSet;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::affine::Affine;
use super::feasibility::{find_point, is_feasible};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, row_basis, solve_linear, Solution};
use crate::rational::{dot, primitive_direction, Rational};

/// Vertices, extreme rays of the pointed part of the recession cone, and a
/// lineality basis, such that the set is `conv(vertices) + cone(rays) + span(lineality)`
/// whenever it is pointed.
#[derive(Clone, Debug, PartialEq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

/// `{x : e(x) = 0 for e in equalities, g(x) ≥ 0 for g in inequalities}`.
#[derive(Debug)]
pub struct Polyhedron {
    dim: usize,
    equalities: Vec<Affine>,
    inequalities: Vec<Affine>,
    vrep: OnceLock<Option<VRep>>,
    hull: OnceLock<Option<Vec<Affine>>>,
}

impl Clone for Polyhedron {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            equalities: self.equalities.clone(),
            inequalities: self.inequalities.clone(),
            vrep: self.vrep.clone(),
            hull: self.hull.clone(),
        }
    }
}

impl Polyhedron {
    /// Builds a polyhedron, canonicalizing and deduplicating constraints.
    pub fn new(dim: usize, equalities: Vec<Affine>, inequalities: Vec<Affine>) -> Self {
        let mut eqs = BTreeSet::new();
        let mut ineqs = BTreeSet::new();
        let mut infeasible = false;
        for e in equalities {
            assert_eq!(e.dim(), dim, "equality has wrong ambient dimension");
            let c = e.canonical_equality();
            if c.is_constant() {
                infeasible |= !c.constant.is_zero();
            } else {
                eqs.insert(c);
            }
        }
        for g in inequalities {
            assert_eq!(g.dim(), dim, "inequality has wrong ambient dimension");
            let c = g.canonical();
            if c.is_constant() {
                infeasible |= c.constant.is_negative();
            } else {
                ineqs.insert(c);
            }
        }
        if infeasible {
            ineqs.insert(Affine::constant(dim, Rational::from_integer((-1).into())));
        }
        Self {
            dim,
            equalities: eqs.into_iter().collect(),
            inequalities: ineqs.into_iter().collect(),
            vrep: OnceLock::new(),
            hull: OnceLock::new(),
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::new(dim, Vec::new(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[Affine] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Affine] {
        &self.inequalities
    }

    pub fn is_empty(&self) -> bool {
        !is_feasible(self.dim, &self.equalities, &self.inequalities, &[])
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|e| e.eval(x).is_zero())
            && self.inequalities.iter().all(|g| !g.eval(x).is_negative())
    }

    /// Equalities of the affine hull: the explicit equalities plus every
    /// inequality that is tight on the whole set. `None` when empty.
    pub fn affine_hull(&self) -> Option<&[Affine]> {
        self.hull
            .get_or_init(|| {
                if self.is_empty() {
                    return None;
                }
                let mut hull = self.equalities.clone();
                for (i, g) in self.inequalities.iter().enumerate() {
                    let others: Vec<Affine> = self
                        .inequalities
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, h)| h.clone())
                        .collect();
                    if !is_feasible(self.dim, &self.equalities, &others, std::slice::from_ref(g)) {
                        hull.push(g.canonical_equality());
                    }
                }
                Some(hull)
            })
            .as_deref()
    }

    pub fn dimension(&self) -> Option<usize> {
        let hull = self.affine_hull()?;
        let rows: Vec<Vec<Rational>> = hull.iter().map(|e| e.coeffs.clone()).collect();
        Some(self.dim - rank(&rows))
    }

    /// A point in the relative interior.
    pub fn relative_interior_point(&self) -> Option<Vec<Rational>> {
        let hull = self.affine_hull()?;
        let strict: Vec<Affine> = self
            .inequalities
            .iter()
            .filter(|g| !hull.contains(&g.canonical_equality()))
            .cloned()
            .collect();
        find_point(self.dim, hull, &[], &strict)
    }

    /// Basis of the lineality space `{d : every constraint normal ⟂ d}`.
    pub fn lineality(&self) -> Vec<Vec<Rational>> {
        let rows = self.normals();
        nullspace(&rows, self.dim)
    }

    fn normals(&self) -> Vec<Vec<Rational>> {
        self.equalities
            .iter()
            .chain(&self.inequalities)
            .map(|c| c.coeffs.clone())
            .collect()
    }

    /// Basis of the span of all constraint normals.
    pub fn normal_span(&self) -> Result<Vec<Vec<Rational>>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(row_basis(&self.normals(), self.dim))
    }

    pub fn rank(&self) -> Result<usize> {
        self.normal_span().map(|b| b.len())
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_empty()
    }

    pub fn is_bounded(&self) -> Result<bool> {
        let v = self.vertices_and_rays()?;
        Ok(v.rays.is_empty() && v.lineality.is_empty())
    }

    /// Tight-subset enumeration of vertices and extreme rays.
    pub fn vertices_and_rays(&self) -> Result<&VRep> {
        self.vrep
            .get_or_init(|| {
                if self.is_empty() {
                    return None;
                }
                Some(self.compute_vrep())
            })
            .as_ref()
            .ok_or(Error::EmptyPolyhedron)
    }

    fn compute_vrep(&self) -> VRep {
        let n = self.dim;
        let lineality = self.lineality();
        let eq_rows: Vec<Vec<Rational>> = self.equalities.iter().map(|e| e.coeffs.clone()).collect();
        let eq_rank = rank(&eq_rows);

        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        if lineality.is_empty() {
            let need = n - eq_rank;
            for subset in (0..self.inequalities.len()).combinations(need) {
                let mut rows = eq_rows.clone();
                let mut rhs: Vec<Rational> = self.equalities.iter().map(|e| -&e.constant).collect();
                for &i in &subset {
                    rows.push(self.inequalities[i].coeffs.clone());
                    rhs.push(-&self.inequalities[i].constant);
                }
                if let Solution::Unique(x) = solve_linear(&rows, &rhs, n) {
                    if self.contains_point(&x) && !vertices.contains(&x) {
                        vertices.push(x);
                    }
                }
            }
            vertices.sort();
        }

        let mut base = eq_rows;
        base.extend(lineality.iter().cloned());
        let base_rank = rank(&base);
        let mut rays: Vec<Vec<Rational>> = Vec::new();
        if base_rank < n {
            let need = n - 1 - base_rank;
            for subset in (0..self.inequalities.len()).combinations(need) {
                let mut rows = base.clone();
                rows.extend(subset.iter().map(|&i| self.inequalities[i].coeffs.clone()));
                let ns = nullspace(&rows, n);
                if ns.len() != 1 {
                    continue;
                }
                let d = &ns[0];
                let neg: Vec<Rational> = d.iter().map(|x| -x).collect();
                for cand in [d.clone(), neg] {
                    if self.inequalities.iter().all(|g| !dot(&g.coeffs, &cand).is_negative()) {
                        let p = primitive_direction(&cand);
                        if !rays.contains(&p) {
                            rays.push(p);
                        }
                    }
                }
            }
            rays.sort();
        }
        VRep { vertices, rays, lineality }
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(Polyhedron::new(
            self.dim,
            self.equalities.iter().chain(&other.equalities).cloned().collect(),
            self.inequalities.iter().chain(&other.inequalities).cloned().collect(),
        ))
    }

    /// Adds equality constraints.
    pub fn with_equalities(&self, extra: &[Affine]) -> Polyhedron {
        Polyhedron::new(
            self.dim,
            self.equalities.iter().chain(extra).cloned().collect(),
            self.inequalities.clone(),
        )
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        let (e, g) = (&other.equalities, &other.inequalities);
        self.equalities
            .iter()
            .all(|c| !is_feasible(self.dim, e, g, std::slice::from_ref(c)) && !is_feasible(self.dim, e, g, &[c.neg()]))
            && self.inequalities.iter().all(|c| !is_feasible(self.dim, e, g, &[c.neg()]))
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.contains(other) && other.contains(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, vec_of};

    fn ge(c: &[i64], b: i64) -> Affine {
        Affine::new(vec_of(c), int(b))
    }

    fn quadrant() -> Polyhedron {
        Polyhedron::new(2, vec![], vec![ge(&[1, 0], 0), ge(&[0, 1], 0)])
    }

    fn unit_square() -> Polyhedron {
        Polyhedron::new(
            2,
            vec![],
            vec![ge(&[1, 0], 0), ge(&[0, 1], 0), ge(&[-1, 0], 1), ge(&[0, -1], 1)],
        )
    }

    #[test]
    fn quadrant_vrep() {
        let v = quadrant().vertices_and_rays().unwrap().clone();
        assert_eq!(v.vertices, vec![vec_of(&[0, 0])]);
        assert_eq!(v.rays, vec![vec_of(&[0, 1]), vec_of(&[1, 0])]);
        assert!(v.lineality.is_empty());
    }

    #[test]
    fn square_vrep() {
        let v = unit_square().vertices_and_rays().unwrap().clone();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.rays.is_empty());
        assert!(unit_square().is_bounded().unwrap());
    }

    #[test]
    fn half_plane_is_unpointed() {
        let p = Polyhedron::new(2, vec![], vec![ge(&[0, 1], 0)]);
        let v = p.vertices_and_rays().unwrap();
        assert!(v.vertices.is_empty());
        assert_eq!(v.lineality.len(), 1);
        assert_eq!(v.rays, vec![vec_of(&[0, 1])]);
        assert!(!p.is_pointed());
        assert_eq!(p.rank().unwrap(), 1);
    }

    #[test]
    fn normal_spans() {
        assert_eq!(unit_square().rank().unwrap(), 2);
        assert_eq!(Polyhedron::whole_space(2).rank().unwrap(), 0);
        let empty = Polyhedron::new(1, vec![], vec![ge(&[1], -1), ge(&[-1], 0)]);
        assert!(matches!(empty.normal_span(), Err(Error::EmptyPolyhedron)));
    }

    #[test]
    fn intersections() {
        let box_ = Polyhedron::new(2, vec![], vec![ge(&[-1, 0], 1), ge(&[0, -1], 1)]);
        let sq = quadrant().intersect(&box_).unwrap();
        assert!(sq.same_set(&unit_square()));
        let a = Polyhedron::new(1, vec![], vec![ge(&[1], -1)]);
        let b = Polyhedron::new(1, vec![], vec![ge(&[-1], 0)]);
        assert!(a.intersect(&b).unwrap().is_empty());
        assert!(sq.intersect(&sq).unwrap().same_set(&sq));
        let other = Polyhedron::whole_space(3);
        assert!(matches!(sq.intersect(&other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn implicit_equalities_and_dimension() {
        // x >= 0, x <= 0, y >= 0: a ray on the y-axis
        let p = Polyhedron::new(2, vec![], vec![ge(&[1, 0], 0), ge(&[-1, 0], 0), ge(&[0, 1], 0)]);
        assert_eq!(p.dimension(), Some(1));
        let x = p.relative_interior_point().unwrap();
        assert_eq!(x[0], int(0));
        assert!(x[1].is_positive());
    }
}

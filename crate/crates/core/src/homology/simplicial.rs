use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::rank::{column_rank, Column};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Finite simplicial complex on numbered vertices, closed under faces.
/// Simplices are sorted vertex-index tuples; vertex `i` sits at `points[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    points: Vec<Vec<Rational>>,
    /// `simplices[k]` holds the k-simplices.
    simplices: Vec<BTreeSet<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty(points: Vec<Vec<Rational>>) -> Self {
        Self { points, simplices: Vec::new() }
    }

    /// Face closure of the given simplices.
    pub fn from_simplices<I>(points: Vec<Vec<Rational>>, simplices: I) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut sc = Self::empty(points);
        for s in simplices {
            sc.insert_closed(s);
        }
        sc
    }

    /// Abstract complex with no meaningful coordinates.
    pub fn abstract_from<I>(vertex_count: usize, simplices: I) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        Self::from_simplices(vec![Vec::new(); vertex_count], simplices)
    }

    fn insert_closed(&mut self, mut s: Vec<usize>) {
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return;
        }
        assert!(s.iter().all(|&v| v < self.points.len()), "simplex uses an unknown vertex");
        let k = s.len() - 1;
        if self.simplices.len() <= k {
            self.simplices.resize(k + 1, BTreeSet::new());
        }
        if self.simplices[k].contains(&s) {
            return;
        }
        if k > 0 {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                self.insert_closed(f);
            }
        }
        self.simplices[k].insert(s);
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// Dimension, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|s| !s.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.get(k).into_iter().flatten()
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, BTreeSet::len)
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(BTreeSet::len).sum()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.simplices.get(s.len() - 1).is_some_and(|set| set.contains(s))
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().flatten()
    }

    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for k in (0..self.simplices.len()).rev() {
            for s in &self.simplices[k] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
                for i in 0..s.len() {
                    if s.len() > 1 {
                        let mut f = s.clone();
                        f.remove(i);
                        covered.insert(f);
                    }
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.simplices(0).map(|s| s[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.simplices.len()).map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) }).sum()
    }

    /// Whether every simplex of `sub` is a simplex of `self`.
    pub fn is_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        sub.all_simplices().all(|s| self.contains(s))
    }

    /// First simplex of `self` whose vertices all lie in `sub` but which `sub` lacks.
    pub fn fullness_violation(&self, sub: &SimplicialComplex) -> Option<Vec<usize>> {
        let verts = sub.vertices();
        self.all_simplices().find(|s| s.iter().all(|v| verts.contains(v)) && !sub.contains(s)).cloned()
    }

    /// The full subcomplex spanned by `verts`.
    pub fn induced(&self, verts: &BTreeSet<usize>) -> SimplicialComplex {
        let mut out = Self::empty(self.points.clone());
        out.simplices = self
            .simplices
            .iter()
            .map(|set| set.iter().filter(|s| s.iter().all(|v| verts.contains(v))).cloned().collect())
            .collect();
        out
    }

    /// The full subcomplex on the vertices outside `k`; `k` must be full.
    pub fn complement_complex(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(s) = self.fullness_violation(k) {
            return Err(Error::NotFull(s));
        }
        let inside = k.vertices();
        let outside: BTreeSet<usize> = self.vertices().difference(&inside).copied().collect();
        Ok(self.induced(&outside))
    }

    /// Barycentric subdivision. Vertex ids of the result are indices into the
    /// returned list of source simplices, whose barycenters are the new points.
    pub fn barycentric_with_map(&self) -> (SimplicialComplex, Vec<Vec<usize>>) {
        let sources: Vec<Vec<usize>> = self.all_simplices().cloned().collect();
        let id: HashMap<&Vec<usize>, usize> = sources.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let points: Vec<Vec<Rational>> = sources
            .iter()
            .map(|s| {
                let dim = self.points[s[0]].len();
                let k = Rational::from_integer((s.len() as i64).into());
                (0..dim)
                    .map(|j| s.iter().map(|&v| self.points[v][j].clone()).sum::<Rational>() / &k)
                    .collect()
            })
            .collect();
        let mut out = Self::empty(points);
        for top in self.maximal_simplices() {
            for chain in flags(&top) {
                out.insert_closed(chain.iter().map(|f| id[f]).collect());
            }
        }
        (out, sources)
    }

    pub fn barycentric(&self) -> SimplicialComplex {
        self.barycentric_with_map().0
    }

    /// Image of a subcomplex under [`Self::barycentric_with_map`].
    pub fn subdivide_sub(
        sub: &SimplicialComplex,
        subdivided: &SimplicialComplex,
        sources: &[Vec<usize>],
    ) -> SimplicialComplex {
        let keep: BTreeSet<usize> = (0..sources.len()).filter(|&i| sub.contains(&sources[i])).collect();
        subdivided.induced(&keep)
    }
}

/// Maximal flags `v ⊂ e ⊂ … ⊂ top` of faces of a simplex.
fn flags(top: &[usize]) -> Vec<Vec<Vec<usize>>> {
    top.iter()
        .copied()
        .permutations(top.len())
        .map(|perm| (1..=perm.len()).map(|k| perm[..k].iter().copied().sorted().collect()).collect())
        .collect()
}

/// Relative simplicial chain complex `C(X)/C(A)` ranks.
fn boundary_rank(x: &SimplicialComplex, a: Option<&SimplicialComplex>, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let keep = |s: &Vec<usize>| a.is_none_or(|a| !a.contains(s));
    let rows: HashMap<&Vec<usize>, usize> = x.simplices(k - 1).filter(|s| keep(s)).enumerate().map(|(i, s)| (s, i)).collect();
    let cols: Vec<Column> = x
        .simplices(k)
        .filter(|s| keep(s))
        .map(|s| {
            let mut col: Column = (0..s.len())
                .filter_map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    rows.get(&f).map(|&r| (r, if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    column_rank(&cols)
}

fn ranks(x: &SimplicialComplex, a: Option<&SimplicialComplex>, len: usize) -> Vec<usize> {
    let n = len.max(x.dim().map_or(0, |d| d + 1));
    let chains = |k: usize| x.simplices(k).filter(|s| a.is_none_or(|a| !a.contains(s))).count();
    let bd: Vec<usize> = (0..=n).map(|k| boundary_rank(x, a, k)).collect();
    (0..n).map(|k| chains(k) - bd[k] - bd[k + 1]).collect()
}

/// Betti numbers `(b0, …, b_{len−1})` over the rationals.
pub fn betti(x: &SimplicialComplex, len: usize) -> Vec<usize> {
    ranks(x, None, len)
}

/// A complex together with a subcomplex.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub complex: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(complex: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        if let Some(s) = sub.all_simplices().find(|s| !complex.contains(s)) {
            return Err(Error::Precondition(format!("simplex {s:?} of the subcomplex is missing from the complex")));
        }
        Ok(Self { complex, sub })
    }

    /// Like [`Self::new`], additionally requiring the subcomplex to be full.
    pub fn new_full(complex: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        let pair = Self::new(complex, sub)?;
        if let Some(s) = pair.complex.fullness_violation(&pair.sub) {
            return Err(Error::NotFull(s));
        }
        Ok(pair)
    }

    /// Ranks of `H_k(X, A)` for `k < len` (longer if the complex needs it).
    pub fn relative_betti(&self, len: usize) -> Vec<usize> {
        ranks(&self.complex, Some(&self.sub), len)
    }
}

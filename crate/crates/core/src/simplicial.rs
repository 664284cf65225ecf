//! Finite simplicial complexes with a vertex-valued function, and the full
//! subcomplexes used as combinatorial preimages.
//!
//! The preimage of an open interval `V` is the full subcomplex spanned by the
//! vertices whose value lies strictly inside `V`. Because the function is
//! extended affinely over simplices, this is exactly the set of simplices whose
//! image lies in `V`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::chain::SparseVec;
use crate::cover::OpenInterval;
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertexInSimplex(Vec<usize>),
    #[error("vertex {0} has no function value")]
    MissingFunctionValue(usize),
    #[error("vertex {0} has a non-finite function value")]
    NonFiniteValue(usize),
    #[error("vertex {0} is given two function values")]
    DuplicateVertex(usize),
    #[error("boundary degree {degree} out of range 1..={max_dim}")]
    DegreeOutOfRange { degree: usize, max_dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    /// External vertex ids, ascending; position is the vertex index.
    ids: Vec<usize>,
    /// Per dimension, lexicographically sorted tuples of vertex indices.
    simplices: Vec<Vec<Vec<usize>>>,
    /// Per dimension >= 1, index of the face opposite each vertex position.
    faces: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Face-closes the given tuples of vertex indices `0..vertex_count`.
    fn from_index_tuples(ids: Vec<usize>, tuples: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let mut add = |s: Vec<usize>| {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        };
        for v in 0..ids.len() {
            add(vec![v]);
        }
        for t in tuples {
            let k = t.len();
            assert!(k <= 16, "simplex dimension too large");
            for mask in 1u32..(1u32 << k) {
                add((0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| t[i])
                    .collect());
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let lookup: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for d in 1..simplices.len() {
            let level = simplices[d]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            lookup[d - 1][&f]
                        })
                        .collect()
                })
                .collect();
            faces.push(level);
        }
        SimplicialComplex {
            ids,
            simplices,
            faces,
            lookup,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn vertex_index(&self, id: usize) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|l| !l.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, Vec::len)
    }

    /// Vertex indices of a simplex.
    pub fn simplex(&self, dim: usize, idx: usize) -> &[usize] {
        &self.simplices[dim][idx]
    }

    pub fn simplex_ids(&self, dim: usize, idx: usize) -> Vec<usize> {
        self.simplex(dim, idx)
            .iter()
            .map(|&v| self.ids[v])
            .collect()
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let d = vertices.len().checked_sub(1)?;
        self.lookup.get(d)?.get(vertices).copied()
    }

    /// Face indices (dimension `dim - 1`) opposite each vertex position.
    pub fn faces(&self, dim: usize, idx: usize) -> &[usize] {
        &self.faces[dim][idx]
    }

    /// Simplices that are not a proper face of another, by dimension then index.
    pub fn maximal_simplices(&self) -> Vec<(usize, usize)> {
        let dims = self.simplices.len();
        let mut has_coface: Vec<Vec<bool>> = self
            .simplices
            .iter()
            .map(|l| vec![false; l.len()])
            .collect();
        for d in 1..dims {
            for faces in &self.faces[d] {
                for &f in faces {
                    has_coface[d - 1][f] = true;
                }
            }
        }
        (0..dims)
            .flat_map(|d| (0..self.count(d)).map(move |i| (d, i)))
            .filter(|&(d, i)| !has_coface[d][i])
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// The whole complex as a subcomplex of itself.
    pub fn whole(self: &Arc<Self>) -> Subcomplex {
        Subcomplex {
            parent: Arc::clone(self),
            simplices: self
                .simplices
                .iter()
                .map(|l| (0..l.len()).collect())
                .collect(),
        }
    }
}

/// Vertex function values, indexed like the vertices of the complex.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    ids: Vec<usize>,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, vertex: usize) -> f64 {
        self.values[vertex]
    }

    pub fn id(&self, vertex: usize) -> usize {
        self.ids[vertex]
    }

    /// `(min, max)` over the given vertex indices.
    pub fn span(&self, vertices: &[usize]) -> (f64, f64) {
        vertices
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(self.values[v]), hi.max(self.values[v]))
            })
    }

    /// `(min f, max f)`; `None` on the empty complex.
    pub fn range(&self) -> Option<(f64, f64)> {
        (!self.values.is_empty()).then(|| {
            let all: Vec<usize> = (0..self.values.len()).collect();
            self.span(&all)
        })
    }
}

/// Build a complex from maximal simplices (vertex ids) and vertex values.
///
/// Faces are closed automatically. Every id with a value becomes a vertex,
/// so isolated vertices only need a value.
pub fn build_complex(
    simplices: &[Vec<usize>],
    values: &[(usize, f64)],
) -> Result<(SimplicialComplex, ScalarField), ComplexError> {
    let mut value_of: HashMap<usize, f64> = HashMap::with_capacity(values.len());
    for &(id, v) in values {
        if !v.is_finite() {
            return Err(ComplexError::NonFiniteValue(id));
        }
        if value_of.insert(id, v).is_some() {
            return Err(ComplexError::DuplicateVertex(id));
        }
    }
    for s in simplices {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        if set.len() != s.len() {
            return Err(ComplexError::DuplicateVertexInSimplex(s.clone()));
        }
        if let Some(&missing) = s.iter().find(|id| !value_of.contains_key(id)) {
            return Err(ComplexError::MissingFunctionValue(missing));
        }
    }
    let mut ids: Vec<usize> = value_of.keys().copied().collect();
    ids.sort_unstable();
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let tuples = simplices.iter().filter(|s| !s.is_empty()).map(|s| {
        let mut t: Vec<usize> = s.iter().map(|id| index[id]).collect();
        t.sort_unstable();
        t
    });
    let complex = SimplicialComplex::from_index_tuples(ids.clone(), tuples);
    let field = ScalarField {
        values: ids.iter().map(|id| value_of[id]).collect(),
        ids,
    };
    Ok((complex, field))
}

/// A face-closed selection of simplices of a parent complex.
#[derive(Debug, Clone)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    /// Per dimension, sorted parent indices.
    simplices: Vec<Vec<usize>>,
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.simplices == other.simplices
    }
}

impl Subcomplex {
    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.count(0) == 0
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().rposition(|l| !l.is_empty())
    }

    /// Parent indices of the selected `dim`-simplices.
    pub fn selected(&self, dim: usize) -> &[usize] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn global(&self, dim: usize, local: usize) -> usize {
        self.simplices[dim][local]
    }

    pub fn local(&self, dim: usize, global: usize) -> Option<usize> {
        self.simplices.get(dim)?.binary_search(&global).ok()
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        self.selected(0)
            .iter()
            .map(|&v| self.parent.ids()[v])
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &Subcomplex) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
            && self.simplices.iter().enumerate().all(|(d, level)| {
                let theirs = other.selected(d);
                level.iter().all(|s| theirs.binary_search(s).is_ok())
            })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Boundary of the local `dim`-simplex in local `(dim-1)`-coordinates.
    pub fn boundary_column<F: Field>(&self, dim: usize, local: usize) -> SparseVec<F> {
        let faces = self.parent.faces(dim, self.global(dim, local));
        let entries = faces
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let row = self.local(dim - 1, f).expect("subcomplex is face-closed");
                let sign = if i % 2 == 0 { F::one() } else { F::one().neg() };
                (row, sign)
            })
            .collect();
        SparseVec::from_entries(entries)
    }

    /// Reindex a chain on this subcomplex into `target`'s local coordinates.
    pub fn push_chain<F: Field>(
        &self,
        dim: usize,
        chain: &SparseVec<F>,
        target: &Subcomplex,
    ) -> Option<SparseVec<F>> {
        chain.reindex(|i| target.local(dim, self.global(dim, i)))
    }

    /// Full subcomplex on the selected vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Subcomplex {
        select(&self.parent, |d, idx| {
            self.local(d, idx).is_some() && self.parent.simplex(d, idx).iter().all(|&v| keep(v))
        })
    }
}

fn select(parent: &Arc<SimplicialComplex>, keep: impl Fn(usize, usize) -> bool) -> Subcomplex {
    let dims = parent.simplices.len();
    let simplices = (0..dims)
        .map(|d| (0..parent.count(d)).filter(|&i| keep(d, i)).collect())
        .collect();
    Subcomplex {
        parent: Arc::clone(parent),
        simplices,
    }
}

/// Full subcomplex on the vertices satisfying `keep`.
pub fn induced_subcomplex(
    parent: &Arc<SimplicialComplex>,
    keep: impl Fn(usize) -> bool,
) -> Subcomplex {
    let mask: Vec<bool> = (0..parent.vertex_count()).map(keep).collect();
    select(parent, |d, i| parent.simplex(d, i).iter().all(|&v| mask[v]))
}

/// Combinatorial preimage of an open interval.
pub fn preimage_subcomplex(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    v: &OpenInterval,
) -> Subcomplex {
    induced_subcomplex(x, |vertex| v.contains(f.value(vertex)))
}

/// Union of the per-interval preimages: a simplex is kept when all its
/// vertex values fall in one piece.
pub fn preimage_of_union(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    pieces: &[OpenInterval],
) -> Subcomplex {
    select(x, |d, i| {
        let (lo, hi) = f.span(x.simplex(d, i));
        pieces.iter().any(|p| p.contains(lo) && p.contains(hi))
    })
}

/// Connected components, ordered by smallest vertex id.
pub fn connected_components(k: &Subcomplex) -> Vec<Subcomplex> {
    let verts = k.selected(0);
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in k.selected(1) {
        let s = k.parent().simplex(1, e);
        let a = find(&mut parent, k.local(0, s[0]).expect("face-closed"));
        let b = find(&mut parent, k.local(0, s[1]).expect("face-closed"));
        if a != b {
            // keep the smaller local index as root so roots are minimal vertices
            let (lo, hi) = (a.min(b), a.max(b));
            parent[hi] = lo;
        }
    }
    let roots: Vec<usize> = (0..verts.len()).map(|i| find(&mut parent, i)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort_unstable();
    order.dedup();
    let root_of_global: HashMap<usize, usize> =
        verts.iter().zip(&roots).map(|(&g, &r)| (g, r)).collect();
    order
        .into_iter()
        .map(|root| {
            select(k.parent(), |d, i| {
                k.local(d, i).is_some() && root_of_global[&k.parent().simplex(d, i)[0]] == root
            })
        })
        .collect()
}

/// Dense boundary matrix `∂_n`: rows are `(n-1)`-simplices, columns `n`-simplices.
pub fn boundary_matrix<F: Field>(k: &Subcomplex, n: usize) -> Result<Matrix<F>, ComplexError> {
    let max_dim = k.parent().max_dim().unwrap_or(0);
    if n == 0 || n > max_dim {
        return Err(ComplexError::DegreeOutOfRange { degree: n, max_dim });
    }
    let mut m = Matrix::zeros(k.count(n - 1), k.count(n));
    for c in 0..k.count(n) {
        for (r, v) in k.boundary_column::<F>(n, c).iter() {
            m.set(*r, c, v.clone());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rational};
    use crate::linalg::rank;

    fn hexagon() -> (Arc<SimplicialComplex>, ScalarField) {
        let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let values: Vec<(usize, f64)> = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0]
            .into_iter()
            .enumerate()
            .collect();
        let (x, f) = build_complex(&edges, &values).unwrap();
        (Arc::new(x), f)
    }

    fn triangle() -> Arc<SimplicialComplex> {
        let (x, _) = build_complex(&[vec![0, 1, 2]], &[(0, 0.0), (1, 1.0), (2, 2.0)]).unwrap();
        Arc::new(x)
    }

    #[test]
    fn face_closure() {
        let x = triangle();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (3, 3, 1));
        assert_eq!(x.max_dim(), Some(2));
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn hexagon_asset_shape() {
        let (x, _) = hexagon();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (6, 6, 0));
        assert_eq!(x.euler_characteristic(), 0);
        assert_eq!(connected_components(&x.whole()).len(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build_complex(&[vec![0, 0]], &[(0, 1.0)]).unwrap_err(),
            ComplexError::DuplicateVertexInSimplex(vec![0, 0])
        );
        assert_eq!(
            build_complex(&[vec![0, 7]], &[(0, 1.0)]).unwrap_err(),
            ComplexError::MissingFunctionValue(7)
        );
        let (x, f) = build_complex(&[], &[]).unwrap();
        assert!(x.is_empty());
        assert_eq!(x.max_dim(), None);
        assert_eq!(f.range(), None);
    }

    #[test]
    fn two_points() {
        let (x, _) = build_complex(&[], &[(3, 0.0), (9, 1.0)]).unwrap();
        assert_eq!(x.euler_characteristic(), 2);
        assert_eq!(x.ids(), &[3, 9]);
    }

    #[test]
    fn boundary_examples() {
        let (x, _) = hexagon();
        let d1 = boundary_matrix::<Gf2>(&x.whole(), 1).unwrap();
        assert_eq!(rank(&d1), 5);

        let (c, _) = build_complex(
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
            &[(0, 0.0), (1, 0.0), (2, 0.0)],
        )
        .unwrap();
        let c = Arc::new(c);
        assert_eq!(rank(&boundary_matrix::<Gf2>(&c.whole(), 1).unwrap()), 2);

        let t = triangle();
        let d2 = boundary_matrix::<Rational>(&t.whole(), 2).unwrap();
        // edges (0,1), (0,2), (1,2): ∂[0,1,2] = [1,2] - [0,2] + [0,1]
        assert_eq!(
            d2.column(0),
            vec![
                Rational::from_i64(1),
                Rational::from_i64(-1),
                Rational::from_i64(1)
            ]
        );
        let d1 = boundary_matrix::<Rational>(&t.whole(), 1).unwrap();
        assert!(d1.mul(&d2).unwrap().is_zero());
        assert!(matches!(
            boundary_matrix::<Gf2>(&t.whole(), 3),
            Err(ComplexError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn preimage_examples() {
        let (x, f) = hexagon();
        let p = preimage_subcomplex(&x, &f, &OpenInterval::new(0.8, 2.2).unwrap());
        assert_eq!(p.vertex_ids(), vec![1, 2, 4, 5]);
        let edges: Vec<Vec<usize>> = p.selected(1).iter().map(|&e| x.simplex_ids(1, e)).collect();
        assert_eq!(edges, vec![vec![1, 2], vec![4, 5]]);
        let comps = connected_components(&p);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertex_ids(), vec![1, 2]);
        assert_eq!(comps[1].vertex_ids(), vec![4, 5]);

        let all = preimage_subcomplex(&x, &f, &OpenInterval::new(-10.0, 10.0).unwrap());
        assert_eq!(all, x.whole());
        let none = preimage_subcomplex(&x, &f, &OpenInterval::new(100.0, 101.0).unwrap());
        assert!(none.is_empty());
        assert!(connected_components(&none).is_empty());
    }

    #[test]
    fn endpoint_values_are_excluded() {
        let (x, f) = hexagon();
        let p = preimage_subcomplex(&x, &f, &OpenInterval::new(1.0, 2.0).unwrap());
        assert!(p.is_empty());
    }
}

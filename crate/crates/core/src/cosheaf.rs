//! The cellular Leray cosheaf on the nerve of a cover, and its refinement into
//! connected components, the decorated mapper graph.

use std::sync::Arc;

use thiserror::Error;

use crate::cover::{admissible, nerve, Cover, CoverError, NerveComplex, SubNerve};
use crate::field::Field;
use crate::homology::{homology, induced_map, GradedMap, Homology, HomologyError};
use crate::simplicial::{
    connected_components, preimage_subcomplex, ScalarField, SimplicialComplex,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosheafError {
    #[error("cover is not admissible: simplex {0:?} fits in no single cover element")]
    NotAdmissible(Vec<usize>),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("sub-nerve does not belong to this cosheaf")]
    ForeignSubNerve,
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Default homology range: every degree the complex can carry.
pub fn default_max_deg(x: &SimplicialComplex) -> usize {
    x.max_dim().unwrap_or(0)
}

/// Validates the nerve and admissibility, returning the nerve.
pub fn validate(
    x: &SimplicialComplex,
    f: &ScalarField,
    c: &Cover,
) -> Result<NerveComplex, CosheafError> {
    let n = nerve(c)?;
    admissible(c, x, f).map_err(CosheafError::NotAdmissible)?;
    Ok(n)
}

/// `D(σ) = H_•(f⁻¹(U_σ))` on every simplex of the nerve, with the maps
/// induced by `f⁻¹(U_{ij}) ⊆ f⁻¹(U_i)` and `⊆ f⁻¹(U_j)`.
///
/// Restriction to a sub-nerve keeps all data and narrows `support`.
#[derive(Debug, Clone)]
pub struct CellularCosheaf<F> {
    complex: Arc<SimplicialComplex>,
    values: Arc<ScalarField>,
    cover: Cover,
    nerve: NerveComplex,
    max_deg: usize,
    vertex_spaces: Vec<Arc<Homology<F>>>,
    edge_spaces: Vec<Arc<Homology<F>>>,
    /// Per nerve edge `(i, j)`, `i < j`: maps into `D(i)` and into `D(j)`.
    edge_maps: Vec<[GradedMap<F>; 2]>,
    support: SubNerve,
}

pub fn build_cellular_leray<F: Field>(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    c: &Cover,
    max_deg: usize,
) -> Result<CellularCosheaf<F>, CosheafError> {
    let nerve = validate(x, f, c)?;
    let vertex_spaces: Vec<Arc<Homology<F>>> = c
        .elements()
        .iter()
        .map(|u| homology(&preimage_subcomplex(x, f, u), max_deg))
        .collect();
    let mut edge_spaces = Vec::with_capacity(nerve.edge_count());
    let mut edge_maps = Vec::with_capacity(nerve.edge_count());
    for (e, &(i, j)) in nerve.edges().iter().enumerate() {
        let space = homology(&preimage_subcomplex(x, f, nerve.edge_interval(e)), max_deg);
        let to_i = induced_map(&space, &vertex_spaces[i])?;
        let to_j = induced_map(&space, &vertex_spaces[j])?;
        edge_spaces.push(space);
        edge_maps.push([to_i, to_j]);
    }
    let support = nerve.full();
    Ok(CellularCosheaf {
        complex: Arc::clone(x),
        values: Arc::new(f.clone()),
        cover: c.clone(),
        nerve,
        max_deg,
        vertex_spaces,
        edge_spaces,
        edge_maps,
        support,
    })
}

impl<F: Field> CellularCosheaf<F> {
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn values(&self) -> &ScalarField {
        &self.values
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn support(&self) -> &SubNerve {
        &self.support
    }

    pub fn vertex_space(&self, i: usize) -> &Arc<Homology<F>> {
        &self.vertex_spaces[i]
    }

    pub fn edge_space(&self, e: usize) -> &Arc<Homology<F>> {
        &self.edge_spaces[e]
    }

    /// Extension maps of edge `e` into its lower and higher endpoint.
    pub fn edge_maps(&self, e: usize) -> &[GradedMap<F>; 2] {
        &self.edge_maps[e]
    }

    /// `D|_K`. Fails unless `k` is a subcomplex of the current support.
    pub fn restrict(&self, k: &SubNerve) -> Result<CellularCosheaf<F>, CosheafError> {
        if !k.is_subcomplex_of(&self.nerve) || !k.is_subset_of(&self.support) {
            return Err(CosheafError::ForeignSubNerve);
        }
        Ok(CellularCosheaf {
            support: k.clone(),
            ..self.clone()
        })
    }
}

/// A connected component of the preimage of one cover element.
#[derive(Debug, Clone)]
pub struct MapperNode<F> {
    pub id: usize,
    pub cover_index: usize,
    pub component_index: usize,
    pub homology: Arc<Homology<F>>,
}

impl<F: Field> MapperNode<F> {
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.homology.subcomplex().vertex_ids()
    }
}

/// A connected component of the preimage of a pairwise intersection, joining
/// the node components that contain it.
#[derive(Debug, Clone)]
pub struct MapperEdge<F> {
    pub id: usize,
    /// Nerve edge `(i, j)`, `i < j`.
    pub cover_pair: (usize, usize),
    pub component_index: usize,
    pub source_node: usize,
    pub target_node: usize,
    pub homology: Arc<Homology<F>>,
    /// Induced maps into the source and target node decorations.
    pub maps: [GradedMap<F>; 2],
}

#[derive(Debug, Clone)]
pub struct DecoratedMapperGraph<F> {
    pub cover: Cover,
    pub max_deg: usize,
    pub nodes: Vec<MapperNode<F>>,
    pub edges: Vec<MapperEdge<F>>,
}

impl<F: Field> DecoratedMapperGraph<F> {
    /// Node ids belonging to cover element `i`.
    pub fn nodes_of(&self, i: usize) -> impl Iterator<Item = &MapperNode<F>> {
        self.nodes.iter().filter(move |n| n.cover_index == i)
    }

    /// The classical mapper graph: node count and `(source, target)` pairs.
    pub fn degree_zero_skeleton(&self) -> (usize, Vec<(usize, usize)>) {
        (
            self.nodes.len(),
            self.edges
                .iter()
                .map(|e| (e.source_node, e.target_node))
                .collect(),
        )
    }
}

pub fn build_decorated_mapper<F: Field>(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    c: &Cover,
    max_deg: usize,
) -> Result<DecoratedMapperGraph<F>, CosheafError> {
    let nerve = validate(x, f, c)?;
    let mut nodes = Vec::new();
    // per cover element, (node id, component) pairs
    let mut components_of = Vec::with_capacity(c.len());
    for (i, u) in c.elements().iter().enumerate() {
        let comps = connected_components(&preimage_subcomplex(x, f, u));
        let mut ids = Vec::with_capacity(comps.len());
        for (k, comp) in comps.into_iter().enumerate() {
            let id = nodes.len();
            nodes.push(MapperNode {
                id,
                cover_index: i,
                component_index: k,
                homology: homology(&comp, max_deg),
            });
            ids.push(id);
        }
        components_of.push(ids);
    }
    let containing = |nodes: &[MapperNode<F>], ids: &[usize], vertex: usize| -> usize {
        *ids.iter()
            .find(|&&id| nodes[id].homology.subcomplex().local(0, vertex).is_some())
            .expect("an overlap component lies inside a component of each element")
    };
    let mut edges = Vec::new();
    for (e, &(i, j)) in nerve.edges().iter().enumerate() {
        let comps = connected_components(&preimage_subcomplex(x, f, nerve.edge_interval(e)));
        for (k, comp) in comps.into_iter().enumerate() {
            let first = comp.selected(0)[0];
            let source = containing(&nodes, &components_of[i], first);
            let target = containing(&nodes, &components_of[j], first);
            let h = homology(&comp, max_deg);
            let maps = [
                induced_map(&h, &nodes[source].homology)?,
                induced_map(&h, &nodes[target].homology)?,
            ];
            edges.push(MapperEdge {
                id: edges.len(),
                cover_pair: (i, j),
                component_index: k,
                source_node: source,
                target_node: target,
                homology: h,
                maps,
            });
        }
    }
    Ok(DecoratedMapperGraph {
        cover: c.clone(),
        max_deg,
        nodes,
        edges,
    })
}

//! Restrictions on which edges may cross: uncrossable edges, forbidden
//! pairs, and colors (edges cross only same-colored edges; color 0 never
//! crosses).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{edge, Edge, Graph, Vertex};

/// Edges of this color may not participate in any crossing.
pub const UNCROSSABLE_COLOR: u32 = 0;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub uncrossable: BTreeSet<Edge>,
    /// Normalized: both edges normalized, smaller edge first.
    pub forbidden_pairs: BTreeSet<(Edge, Edge)>,
    pub colors: Option<BTreeMap<Edge, u32>>,
    /// Each listed path must stay entirely uncrossed.
    pub mandatory_uncrossed_paths: Vec<Vec<Edge>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("constraint names edge {0:?}, which is not in the graph")]
    UnknownEdge(Edge),
    #[error("color map has no entry for edge {0:?}")]
    MissingColor(Edge),
}

pub(crate) fn pair(e: Edge, f: Edge) -> (Edge, Edge) {
    let (e, f) = (edge(e.0, e.1), edge(f.0, f.1));
    if e <= f {
        (e, f)
    } else {
        (f, e)
    }
}

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        self.uncrossable.is_empty()
            && self.forbidden_pairs.is_empty()
            && self.colors.is_none()
            && self.mandatory_uncrossed_paths.iter().all(Vec::is_empty)
    }

    pub fn with_uncrossable(mut self, edges: impl IntoIterator<Item = Edge>) -> Self {
        self.uncrossable.extend(edges.into_iter().map(|(u, v)| edge(u, v)));
        self
    }

    pub fn forbid(&mut self, e: Edge, f: Edge) {
        self.forbidden_pairs.insert(pair(e, f));
    }

    pub fn is_uncrossable(&self, e: Edge) -> bool {
        let e = edge(e.0, e.1);
        self.uncrossable.contains(&e)
            || self.mandatory_uncrossed_paths.iter().any(|p| p.iter().any(|&x| edge(x.0, x.1) == e))
            || self
                .colors
                .as_ref()
                .is_some_and(|c| c.get(&e) == Some(&UNCROSSABLE_COLOR))
    }

    /// Whether the constraints let `e` and `f` cross (adjacency is not checked here).
    pub fn allows_pair(&self, e: Edge, f: Edge) -> bool {
        if self.is_uncrossable(e) || self.is_uncrossable(f) {
            return false;
        }
        if self.forbidden_pairs.contains(&pair(e, f)) {
            return false;
        }
        match &self.colors {
            Some(c) => c.get(&edge(e.0, e.1)) == c.get(&edge(f.0, f.1)),
            None => true,
        }
    }

    /// Folds the mandatory paths into `uncrossable`.
    pub fn compiled(&self) -> ConstraintSet {
        let mut out = self.clone();
        for p in out.mandatory_uncrossed_paths.drain(..) {
            out.uncrossable.extend(p.into_iter().map(|(u, v)| edge(u, v)));
        }
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ConstraintError> {
        let known = |e: &Edge| {
            if g.has_edge(e.0, e.1) {
                Ok(())
            } else {
                Err(ConstraintError::UnknownEdge(*e))
            }
        };
        self.uncrossable.iter().try_for_each(known)?;
        self.mandatory_uncrossed_paths.iter().flatten().try_for_each(known)?;
        for (e, f) in &self.forbidden_pairs {
            known(e)?;
            known(f)?;
        }
        if let Some(c) = &self.colors {
            c.keys().try_for_each(known)?;
            if let Some(&e) = g.edges().iter().find(|e| !c.contains_key(e)) {
                return Err(ConstraintError::MissingColor(e));
            }
        }
        Ok(())
    }

    /// Re-expresses the constraints in another vertex id space, dropping
    /// anything that mentions an unmapped vertex.
    pub fn map_vertices(&self, map: impl Fn(Vertex) -> Option<Vertex>) -> ConstraintSet {
        let me = |e: &Edge| Some(edge(map(e.0)?, map(e.1)?));
        ConstraintSet {
            uncrossable: self.uncrossable.iter().filter_map(me).collect(),
            forbidden_pairs: self
                .forbidden_pairs
                .iter()
                .filter_map(|(e, f)| Some(pair(me(e)?, me(f)?)))
                .collect(),
            colors: self
                .colors
                .as_ref()
                .map(|c| c.iter().filter_map(|(e, &col)| Some((me(e)?, col))).collect()),
            mandatory_uncrossed_paths: self
                .mandatory_uncrossed_paths
                .iter()
                .map(|p| p.iter().filter_map(me).collect::<Vec<_>>())
                .filter(|p| !p.is_empty())
                .collect(),
        }
    }

    /// Restriction to a local instance whose vertex `i` is host vertex `vertices[i]`.
    pub fn restrict(&self, vertices: &[Vertex]) -> ConstraintSet {
        let mut local = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        self.map_vertices(|v| local.get(&v).copied())
    }

    /// Union of two constraint sets over the same vertex ids. Colors of `other`
    /// win on conflicts.
    pub fn merged(&self, other: &ConstraintSet) -> ConstraintSet {
        let mut out = self.clone();
        out.uncrossable.extend(other.uncrossable.iter().copied());
        out.forbidden_pairs.extend(other.forbidden_pairs.iter().copied());
        out.mandatory_uncrossed_paths
            .extend(other.mandatory_uncrossed_paths.iter().cloned());
        if let Some(c) = &other.colors {
            out.colors.get_or_insert_with(BTreeMap::new).extend(c.iter().map(|(&e, &x)| (e, x)));
        }
        out
    }
}

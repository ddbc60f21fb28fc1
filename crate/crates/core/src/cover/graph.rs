//! Graphs of groups with trivial edge groups, their spanning-tree
//! fundamental groups, and the deck group obtained by trivializing the base
//! vertex group.

use crate::words::GroupSpec;
use std::collections::BTreeMap;

use super::CoverError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Piece,
    Disk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogVertex {
    pub id: usize,
    pub kind: VertexKind,
    pub group: GroupSpec,
}

/// A connected graph with a free product of cyclic groups at each vertex,
/// a chosen spanning tree, and a base piece vertex. Edges are stored as
/// unordered pairs; the reverse edge is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: Vec<GogVertex>,
    edges: Vec<(usize, usize)>,
    tree: Vec<usize>,
    base: usize,
    position: BTreeMap<usize, usize>,
}

impl GraphOfGroups {
    pub fn new(
        mut vertices: Vec<GogVertex>,
        edges: Vec<(usize, usize)>,
        tree: Vec<usize>,
        base: usize,
    ) -> Result<Self, CoverError> {
        vertices.sort_by_key(|v| v.id);
        let mut position = BTreeMap::new();
        for (pos, v) in vertices.iter().enumerate() {
            if position.insert(v.id, pos).is_some() {
                return Err(CoverError::BadModel(format!("duplicate vertex id {}", v.id)));
            }
            if v.kind == VertexKind::Disk && v.group.generator_count() != 0 {
                return Err(CoverError::BadModel(format!(
                    "disk vertex {} must carry the trivial group",
                    v.id
                )));
            }
        }
        for &(a, b) in &edges {
            if !position.contains_key(&a) || !position.contains_key(&b) {
                return Err(CoverError::BadModel(format!("edge ({a},{b}) off the vertex set")));
            }
            if a == b {
                return Err(CoverError::BadModel(format!("self-loop at vertex {a}")));
            }
        }
        match position.get(&base) {
            None => return Err(CoverError::BadModel(format!("base vertex {base} missing"))),
            Some(&pos) if vertices[pos].kind != VertexKind::Piece => {
                return Err(CoverError::BadModel("base must be a piece vertex".into()))
            }
            _ => {}
        }
        let gog = GraphOfGroups {
            vertices,
            edges,
            tree,
            base,
            position,
        };
        gog.check_tree()?;
        gog.check_connected()?;
        gog.check_disk_valence()?;
        Ok(gog)
    }

    fn check_tree(&self) -> Result<(), CoverError> {
        if self.tree.len() + 1 != self.vertices.len() {
            return Err(CoverError::BadModel(format!(
                "spanning tree needs {} edges, got {}",
                self.vertices.len().saturating_sub(1),
                self.tree.len()
            )));
        }
        let mut uf: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut seen = vec![false; self.edges.len()];
        for &e in &self.tree {
            if e >= self.edges.len() || seen[e] {
                return Err(CoverError::BadModel(format!("bad tree edge index {e}")));
            }
            seen[e] = true;
            let (a, b) = self.edges[e];
            let (ra, rb) = (
                find(&mut uf, self.position[&a]),
                find(&mut uf, self.position[&b]),
            );
            if ra == rb {
                return Err(CoverError::BadModel("tree contains a cycle".into()));
            }
            uf[ra] = rb;
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), CoverError> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![self.position[&self.base]];
        seen[self.position[&self.base]] = true;
        while let Some(v) = stack.pop() {
            let id = self.vertices[v].id;
            for &(a, b) in &self.edges {
                let other = if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                };
                if let Some(o) = other {
                    let pos = self.position[&o];
                    if !seen[pos] {
                        seen[pos] = true;
                        stack.push(pos);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(CoverError::DisconnectedGraph)
        }
    }

    fn check_disk_valence(&self) -> Result<(), CoverError> {
        for v in &self.vertices {
            if v.kind == VertexKind::Disk {
                let valence = self
                    .edges
                    .iter()
                    .filter(|&&(a, b)| a == v.id || b == v.id)
                    .count();
                if valence != 2 {
                    return Err(CoverError::BadModel(format!(
                        "disk vertex {} has valence {valence}, expected 2",
                        v.id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[GogVertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &GogVertex {
        &self.vertices[self.position[&id]]
    }

    pub fn has_vertex(&self, id: usize) -> bool {
        self.position.contains_key(&id)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn tree(&self) -> &[usize] {
        &self.tree
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree.contains(&e)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Edges incident to `id`, as `(edge index, other endpoint)`, in edge
    /// order.
    pub fn incident(&self, id: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(e, &(a, b))| {
                if a == id {
                    Some((e, b))
                } else if b == id {
                    Some((e, a))
                } else {
                    None
                }
            })
            .collect()
    }

    /// The same graph with the base vertex group replaced by the trivial
    /// group.
    pub fn barred(&self) -> GraphOfGroups {
        let mut barred = self.clone();
        let pos = barred.position[&barred.base];
        barred.vertices[pos].group = GroupSpec::trivial();
        barred
    }

    /// The spanning-tree presentation of the fundamental group: the free
    /// product of all vertex groups with one infinite-cyclic factor per
    /// non-tree edge, factors ordered by vertex id then edge index.
    pub fn fundamental_group(&self) -> (GroupSpec, Vec<FactorOrigin>) {
        let mut orders = Vec::new();
        let mut labeling = Vec::new();
        for v in &self.vertices {
            for (factor, &order) in v.group.orders().iter().enumerate() {
                orders.push(order);
                labeling.push(FactorOrigin::Vertex {
                    vertex: v.id,
                    factor,
                });
            }
        }
        for e in 0..self.edges.len() {
            if !self.is_tree_edge(e) {
                orders.push(0);
                labeling.push(FactorOrigin::Edge { edge: e });
            }
        }
        let spec = GroupSpec::new(orders).expect("vertex groups are validated");
        (spec, labeling)
    }
}

/// Where a factor of a graph-of-groups fundamental group comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorOrigin {
    /// Factor `factor` of the vertex group at `vertex`.
    Vertex { vertex: usize, factor: usize },
    /// The stable letter of a non-tree edge.
    Edge { edge: usize },
}

/// The deck group of the infinite cover: the fundamental group of the
/// graph of groups with the base vertex group trivialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeckGroup {
    pub spec: GroupSpec,
    pub labeling: Vec<FactorOrigin>,
}

impl DeckGroup {
    pub fn rank_if_free(&self) -> Option<usize> {
        self.spec
            .is_free()
            .then_some(self.spec.generator_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(id: usize, orders: Vec<u32>) -> GogVertex {
        GogVertex {
            id,
            kind: VertexKind::Piece,
            group: GroupSpec::new(orders).unwrap(),
        }
    }

    #[test]
    fn single_vertex_cyclic() {
        let gog = GraphOfGroups::new(vec![piece(0, vec![3])], vec![], vec![], 0).unwrap();
        let (spec, labeling) = gog.fundamental_group();
        assert_eq!(spec.orders(), &[3]);
        assert_eq!(
            labeling,
            vec![FactorOrigin::Vertex {
                vertex: 0,
                factor: 0
            }]
        );
    }

    #[test]
    fn circle_has_rank_one() {
        // two trivial-group vertices joined by two edges, one in the tree
        let gog = GraphOfGroups::new(
            vec![piece(0, vec![]), piece(1, vec![])],
            vec![(0, 1), (0, 1)],
            vec![0],
            0,
        )
        .unwrap();
        let (spec, labeling) = gog.fundamental_group();
        assert_eq!(spec.orders(), &[0]);
        assert_eq!(labeling, vec![FactorOrigin::Edge { edge: 1 }]);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(
            GraphOfGroups::new(vec![piece(0, vec![])], vec![(0, 0)], vec![], 0),
            Err(CoverError::BadModel(_))
        ));
        assert!(matches!(
            GraphOfGroups::new(
                vec![piece(0, vec![]), piece(1, vec![])],
                vec![],
                vec![],
                0
            ),
            Err(CoverError::BadModel(_))
        ));
        // disconnected with a fake tree edge
        assert!(GraphOfGroups::new(
            vec![piece(0, vec![]), piece(1, vec![]), piece(2, vec![])],
            vec![(0, 1), (0, 1)],
            vec![0, 1],
            0,
        )
        .is_err());
    }

    #[test]
    fn barred_trivializes_base_only() {
        let gog = GraphOfGroups::new(
            vec![piece(0, vec![5]), piece(1, vec![7])],
            vec![(0, 1)],
            vec![0],
            0,
        )
        .unwrap();
        let (spec, _) = gog.barred().fundamental_group();
        assert_eq!(spec.orders(), &[7]);
    }
}

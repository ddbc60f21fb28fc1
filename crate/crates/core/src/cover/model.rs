//! The branched-cover model: a graph of groups with labeled gluing disks,
//! the deck group of its infinite cover, the side subgroups, and the
//! unlink preset.

use super::graph::{DeckGroup, FactorOrigin, GogVertex, GraphOfGroups, VertexKind};
use super::CoverError;
use crate::gf::PrimeField;
use crate::words::{GroupSpec, Word};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Which side of the gluing a piece lies on: the base side carries the
/// `D^+` disks, the other side the `D^-` disks of its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceSide {
    Base,
    Other(u8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverModel {
    d: u32,
    p: u64,
    gog: GraphOfGroups,
    disk_labels: BTreeMap<usize, (u8, u64)>,
    g_m0: Vec<u64>,
    g_b: Vec<u64>,
    sides: BTreeMap<usize, PieceSide>,
}

impl CoverModel {
    pub fn new(
        d: u32,
        p: u64,
        gog: GraphOfGroups,
        disk_labels: BTreeMap<usize, (u8, u64)>,
        g_m0: Vec<u64>,
        g_b: Vec<u64>,
    ) -> Result<Self, CoverError> {
        if d < 2 {
            return Err(CoverError::BadModel(format!("d must be at least 2, got {d}")));
        }
        PrimeField::new(p)?;
        if d as u64 % p != 0 {
            return Err(CoverError::BadModel(format!("p = {p} must divide d = {d}")));
        }
        check_subgroup(&g_m0, d, "G_M0")?;
        check_subgroup(&g_b, d, "G_B")?;
        if !g_b.iter().all(|g| g_m0.contains(g)) {
            return Err(CoverError::BadModel("G_B must be contained in G_M0".into()));
        }
        // labels: every disk labeled; within each side the group acts
        // freely and transitively, so the labels biject onto 0..d
        let mut by_side: BTreeMap<u8, Vec<u64>> = BTreeMap::new();
        for v in gog.vertices() {
            match v.kind {
                VertexKind::Disk => {
                    let &(side, g) = disk_labels.get(&v.id).ok_or_else(|| {
                        CoverError::BadModel(format!("disk vertex {} is unlabeled", v.id))
                    })?;
                    if !(side == 1 || side == 2) || g >= d as u64 {
                        return Err(CoverError::BadModel(format!(
                            "bad disk label ({side},{g}) at vertex {}",
                            v.id
                        )));
                    }
                    by_side.entry(side).or_default().push(g);
                }
                VertexKind::Piece => {
                    if disk_labels.contains_key(&v.id) {
                        return Err(CoverError::BadModel(format!(
                            "piece vertex {} must not carry a disk label",
                            v.id
                        )));
                    }
                    check_piece_group(v)?;
                }
            }
        }
        for (side, mut gs) in by_side {
            gs.sort_unstable();
            if gs != (0..d as u64).collect::<Vec<_>>() {
                return Err(CoverError::BadModel(format!(
                    "side {side} disk labels must biject onto Z/{d}Z"
                )));
            }
        }
        let sides = color_sides(&gog, &disk_labels)?;
        let model = CoverModel {
            d,
            p,
            gog,
            disk_labels,
            g_m0,
            g_b,
            sides,
        };
        model.check_base_disks()?;
        Ok(model)
    }

    /// The disks adjacent to the base piece must be exactly those labeled
    /// by G_M0, on both sides.
    fn check_base_disks(&self) -> Result<(), CoverError> {
        for side in [1u8, 2] {
            let mut adjacent: Vec<u64> = self
                .gog
                .incident(self.gog.base())
                .iter()
                .filter_map(|&(_, other)| {
                    let &(s, g) = self.disk_labels.get(&other)?;
                    (s == side).then_some(g)
                })
                .collect();
            adjacent.sort_unstable();
            adjacent.dedup();
            if adjacent != self.g_m0 {
                return Err(CoverError::BadModel(format!(
                    "base piece must touch exactly the G_M0 disks on side {side}"
                )));
            }
        }
        Ok(())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn graph(&self) -> &GraphOfGroups {
        &self.gog
    }

    pub fn disk_label(&self, id: usize) -> Option<(u8, u64)> {
        self.disk_labels.get(&id).copied()
    }

    /// The disk vertex with label `(side, g)`.
    pub fn disk_with_label(&self, side: u8, g: u64) -> Option<usize> {
        self.disk_labels
            .iter()
            .find(|&(_, &label)| label == (side, g))
            .map(|(&id, _)| id)
    }

    pub fn g_m0(&self) -> &[u64] {
        &self.g_m0
    }

    pub fn g_b(&self) -> &[u64] {
        &self.g_b
    }

    pub fn side_of_piece(&self, id: usize) -> PieceSide {
        self.sides[&id]
    }

    /// Deck group of the infinite cover: the fundamental group of the
    /// graph with the base vertex group trivialized.
    pub fn deck_group(&self) -> DeckGroup {
        let (spec, labeling) = self.gog.barred().fundamental_group();
        DeckGroup { spec, labeling }
    }

    /// The side subgraph through the base: all base-side pieces, all
    /// class-`side` pieces, and the side-`side` disks; restricted to the
    /// connected component of the base.
    pub(super) fn side_component(&self, side: u8) -> Result<Vec<usize>, CoverError> {
        if !(side == 1 || side == 2) {
            return Err(CoverError::BadModel(format!("side must be 1 or 2, got {side}")));
        }
        let in_subgraph = |id: usize| -> bool {
            match self.sides.get(&id) {
                Some(PieceSide::Base) => true,
                Some(PieceSide::Other(s)) => *s == side,
                None => self.disk_labels.get(&id).map(|&(s, _)| s) == Some(side),
            }
        };
        let mut component = vec![self.gog.base()];
        let mut stack = vec![self.gog.base()];
        while let Some(v) = stack.pop() {
            for (_, other) in self.gog.incident(v) {
                if in_subgraph(other) && !component.contains(&other) {
                    component.push(other);
                    stack.push(other);
                }
            }
        }
        component.sort_unstable();
        Ok(component)
    }

    /// Generators of the deck-group factors supported on the side
    /// subgraph through the base, with the infiniteness diagnosis.
    pub fn lambda_subgroup(&self, side: u8) -> Result<LambdaSubgroup, CoverError> {
        let component = self.side_component(side)?;
        let deck = self.deck_group();

        // edges with both ends in the component
        let edges_inside: Vec<usize> = (0..self.gog.edges().len())
            .filter(|&e| {
                let (a, b) = self.gog.edges()[e];
                component.binary_search(&a).is_ok() && component.binary_search(&b).is_ok()
            })
            .collect();
        // the ambient spanning tree must restrict to a spanning tree of
        // the component for the factor listing to make sense
        let tree_inside = edges_inside
            .iter()
            .filter(|&&e| self.gog.is_tree_edge(e))
            .count();
        if tree_inside + 1 != component.len() {
            return Err(CoverError::BadModel(
                "spanning tree does not restrict to the side subgraph".into(),
            ));
        }

        let mut factor_indices = Vec::new();
        for (index, origin) in deck.labeling.iter().enumerate() {
            let supported = match origin {
                FactorOrigin::Vertex { vertex, .. } => component.binary_search(vertex).is_ok(),
                FactorOrigin::Edge { edge } => edges_inside.contains(edge),
            };
            if supported {
                factor_indices.push(index);
            }
        }
        let generators = factor_indices
            .iter()
            .map(|&f| deck.spec.generator(f))
            .collect::<Result<Vec<_>, _>>()?;

        let diagnosis = if edges_inside.len() >= component.len() {
            SideDiagnosis::CycleFound
        } else {
            let nontrivial = component
                .iter()
                .filter(|&&id| {
                    matches!(self.sides.get(&id), Some(PieceSide::Other(s)) if *s == side)
                        && self.gog.vertex(id).group.generator_count() > 0
                })
                .count();
            if nontrivial >= 2 {
                SideDiagnosis::TwoNontrivialVertexGroups
            } else {
                SideDiagnosis::Finite
            }
        };
        Ok(LambdaSubgroup {
            generators,
            factor_indices,
            diagnosis,
        })
    }
}

/// Piece vertex groups must be trivial or infinite: a finite nontrivial
/// vertex group would make its lifts compact universal covers, which the
/// relation-row transcription does not model.
fn check_piece_group(v: &GogVertex) -> Result<(), CoverError> {
    let g = &v.group;
    if g.generator_count() == 1 && g.order(0) != 0 {
        return Err(CoverError::BadModel(format!(
            "piece vertex {} has a nontrivial finite group, which is unsupported",
            v.id
        )));
    }
    Ok(())
}

fn check_subgroup(elements: &[u64], d: u32, name: &str) -> Result<(), CoverError> {
    let bad = |msg: String| CoverError::BadModel(msg);
    let set: Vec<u64> = elements.to_vec();
    if set.is_empty() || set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad(format!("{name} must be sorted and nonempty")));
    }
    if set[0] != 0 || set.iter().any(|&g| g >= d as u64) {
        return Err(bad(format!("{name} must contain 0 and live in Z/{d}Z")));
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&((a + b) % d as u64)) {
                return Err(bad(format!("{name} is not closed under addition")));
            }
        }
    }
    Ok(())
}

/// 2-color the pieces from the base: every disk joins one base-side piece
/// to one other-side piece. Also pins each other-side piece to the single
/// disk class it touches.
fn color_sides(
    gog: &GraphOfGroups,
    labels: &BTreeMap<usize, (u8, u64)>,
) -> Result<BTreeMap<usize, PieceSide>, CoverError> {
    let mut sides: BTreeMap<usize, PieceSide> = BTreeMap::new();
    let mut stack = vec![gog.base()];
    sides.insert(gog.base(), PieceSide::Base);
    while let Some(piece) = stack.pop() {
        let on_base_side = sides[&piece] == PieceSide::Base;
        for (_, disk) in gog.incident(piece) {
            let &(class, _) = labels
                .get(&disk)
                .ok_or_else(|| CoverError::BadModel(format!("vertex {disk} is not a disk")))?;
            for (_, other) in gog.incident(disk) {
                if other == piece {
                    continue;
                }
                let expected = if on_base_side {
                    PieceSide::Other(class)
                } else {
                    PieceSide::Base
                };
                match sides.get(&other) {
                    None => {
                        sides.insert(other, expected);
                        stack.push(other);
                    }
                    Some(found) if *found != expected => {
                        return Err(CoverError::BadModel(format!(
                            "piece {other} cannot be two-colored consistently"
                        )));
                    }
                    Some(_) => {}
                }
            }
            // a disk with both ends on one piece would have been caught
            // above by the conflicting color
            if gog.incident(disk).len() != 2 {
                return Err(CoverError::BadModel(format!("disk {disk} must have valence 2")));
            }
        }
    }
    Ok(sides)
}

/// Which branch of the infinite-subgroup lemma certifies that the side
/// subgroup is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideDiagnosis {
    CycleFound,
    TwoNontrivialVertexGroups,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSubgroup {
    /// Single-syllable generator words over the deck-group spec.
    pub generators: Vec<Word>,
    /// Deck-group factor indices of the generators.
    pub factor_indices: Vec<usize>,
    pub diagnosis: SideDiagnosis,
}

/// The branched-cover model of the `d`-fold cyclic cover of the 3-sphere
/// branched over the `k`-component unlink, decomposed into three pieces:
/// the base and the side-1 piece cover single unknot complements (simply
/// connected lifts), the side-2 piece covers the remaining `k-2` unknots
/// (fundamental group free of rank `(k-3)(d-1)`). There are `d` gluing
/// disks per side, `G_M0 = G_B = Z/dZ`, and the preset tree keeps every
/// base-disk edge.
pub fn unlink_model(k: usize, d: u32, p: u64) -> Result<CoverModel, CoverError> {
    if k < 3 {
        return Err(CoverError::BadModel(format!("unlink model needs k >= 3, got {k}")));
    }
    if d < 2 {
        return Err(CoverError::BadModel(format!("unlink model needs d >= 2, got {d}")));
    }
    let q2_rank = (k - 3) * (d as usize - 1);
    let mut vertices = vec![
        GogVertex {
            id: 0,
            kind: VertexKind::Piece,
            group: GroupSpec::trivial(),
        },
        GogVertex {
            id: 1,
            kind: VertexKind::Piece,
            group: GroupSpec::trivial(),
        },
        GogVertex {
            id: 2,
            kind: VertexKind::Piece,
            group: GroupSpec::free(q2_rank),
        },
    ];
    let disk_id = |side: usize, g: u32| 3 + (side - 1) * d as usize + g as usize;
    let mut disk_labels = BTreeMap::new();
    for side in 1..=2usize {
        for g in 0..d {
            vertices.push(GogVertex {
                id: disk_id(side, g),
                kind: VertexKind::Disk,
                group: GroupSpec::trivial(),
            });
            disk_labels.insert(disk_id(side, g), (side as u8, g as u64));
        }
    }
    let mut edges = Vec::new();
    for side in 1..=2usize {
        for g in 0..d {
            edges.push((0, disk_id(side, g)));
        }
    }
    for side in 1..=2usize {
        for g in 0..d {
            edges.push((side, disk_id(side, g)));
        }
    }
    let mut tree: Vec<usize> = (0..2 * d as usize).collect();
    tree.push(2 * d as usize); // piece 1 to disk (1,0)
    tree.push(3 * d as usize); // piece 2 to disk (2,0)
    let gog = GraphOfGroups::new(vertices, edges, tree, 0)?;
    let full_group: Vec<u64> = (0..d as u64).collect();
    CoverModel::new(d, p, gog, disk_labels, full_group.clone(), full_group)
}

// ---------------------------------------------------------------------------
// Model JSON:
//   {"d", "p", "vertices": [{"id","kind","orders":[..]}], "edges":
//    [[v,w],..], "tree": [edge indices], "base": id, "disk_labels":
//    {"id": [side, g]}, "G_M0": [..], "G_B": [..]}
// ---------------------------------------------------------------------------

impl CoverModel {
    pub fn to_json_value(&self) -> Value {
        let vertices: Vec<Value> = self
            .gog
            .vertices()
            .iter()
            .map(|v| {
                json!({
                    "id": v.id,
                    "kind": match v.kind {
                        VertexKind::Piece => "piece",
                        VertexKind::Disk => "disk",
                    },
                    "orders": v.group.orders(),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .gog
            .edges()
            .iter()
            .map(|&(a, b)| json!([a, b]))
            .collect();
        let mut labels = serde_json::Map::new();
        for (&id, &(side, g)) in &self.disk_labels {
            labels.insert(id.to_string(), json!([side, g]));
        }
        json!({
            "d": self.d,
            "p": self.p,
            "vertices": vertices,
            "edges": edges,
            "tree": self.gog.tree(),
            "base": self.gog.base(),
            "disk_labels": labels,
            "G_M0": self.g_m0,
            "G_B": self.g_b,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("json")
    }

    pub fn from_json_value(value: &Value) -> Result<CoverModel, CoverError> {
        let bad = |msg: &str| CoverError::BadModel(format!("model json: {msg}"));
        let object = value.as_object().ok_or_else(|| bad("expected object"))?;
        let get = |key: &str| object.get(key).ok_or_else(|| bad(&format!("missing {key}")));
        let d = get("d")?.as_u64().ok_or_else(|| bad("d"))? as u32;
        let p = get("p")?.as_u64().ok_or_else(|| bad("p"))?;
        let vertices = get("vertices")?
            .as_array()
            .ok_or_else(|| bad("vertices"))?
            .iter()
            .map(|v| -> Result<GogVertex, CoverError> {
                let obj = v.as_object().ok_or_else(|| bad("vertex"))?;
                let id = obj
                    .get("id")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("vertex id"))? as usize;
                let kind = match obj.get("kind").and_then(Value::as_str) {
                    Some("piece") => VertexKind::Piece,
                    Some("disk") => VertexKind::Disk,
                    _ => return Err(bad("vertex kind")),
                };
                let orders = obj
                    .get("orders")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("vertex orders"))?
                    .iter()
                    .map(|o| o.as_u64().map(|o| o as u32))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad("vertex orders"))?;
                Ok(GogVertex {
                    id,
                    kind,
                    group: GroupSpec::new(orders)?,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edges = get("edges")?
            .as_array()
            .ok_or_else(|| bad("edges"))?
            .iter()
            .map(|e| -> Result<(usize, usize), CoverError> {
                match e.as_array().map(Vec::as_slice) {
                    Some([a, b]) => Ok((
                        a.as_u64().ok_or_else(|| bad("edge endpoint"))? as usize,
                        b.as_u64().ok_or_else(|| bad("edge endpoint"))? as usize,
                    )),
                    _ => Err(bad("edge must be a pair")),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tree = get("tree")?
            .as_array()
            .ok_or_else(|| bad("tree"))?
            .iter()
            .map(|e| e.as_u64().map(|e| e as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("tree"))?;
        let base = get("base")?.as_u64().ok_or_else(|| bad("base"))? as usize;
        let mut disk_labels = BTreeMap::new();
        for (key, label) in get("disk_labels")?
            .as_object()
            .ok_or_else(|| bad("disk_labels"))?
        {
            let id: usize = key.parse().map_err(|_| bad("disk_labels key"))?;
            match label.as_array().map(Vec::as_slice) {
                Some([side, g]) => {
                    let side = side.as_u64().ok_or_else(|| bad("disk side"))? as u8;
                    let g = g.as_u64().ok_or_else(|| bad("disk element"))?;
                    disk_labels.insert(id, (side, g));
                }
                _ => return Err(bad("disk label must be [side, g]")),
            }
        }
        let subgroup = |key: &str| -> Result<Vec<u64>, CoverError> {
            get(key)?
                .as_array()
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|g| g.as_u64())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad(key))
        };
        let g_m0 = subgroup("G_M0")?;
        let g_b = subgroup("G_B")?;
        let gog = GraphOfGroups::new(vertices, edges, tree, base)?;
        CoverModel::new(d, p, gog, disk_labels, g_m0, g_b)
    }

    pub fn from_json_str(text: &str) -> Result<CoverModel, CoverError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| CoverError::BadModel(format!("model json: {e}")))?;
        CoverModel::from_json_value(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlink_counts() {
        let model = unlink_model(3, 2, 2).unwrap();
        assert_eq!(model.graph().vertices().len(), 7);
        assert_eq!(model.graph().edges().len(), 8);
        let deck = model.deck_group();
        assert_eq!(deck.rank_if_free(), Some(2));

        assert_eq!(unlink_model(3, 3, 3).unwrap().deck_group().rank_if_free(), Some(4));
        // the side-2 piece carries a free group of rank (k-3)(d-1)
        let m42 = unlink_model(4, 2, 2).unwrap();
        assert_eq!(m42.graph().vertex(2).group.orders(), &[0]);
        assert_eq!(m42.deck_group().rank_if_free(), Some(3));
    }

    #[test]
    fn unlink_rejects_bad_parameters() {
        assert!(unlink_model(2, 2, 2).is_err());
        assert!(unlink_model(3, 2, 4).is_err()); // p not prime
        assert!(unlink_model(3, 3, 2).is_err()); // p does not divide d
    }

    #[test]
    fn lambda_subgroups() {
        let model = unlink_model(3, 2, 2).unwrap();
        let side2 = model.lambda_subgroup(2).unwrap();
        assert_eq!(side2.generators.len(), 1);
        assert_eq!(side2.diagnosis, SideDiagnosis::CycleFound);
        let side1 = model.lambda_subgroup(1).unwrap();
        assert_eq!(side1.generators.len(), 1);
        assert_ne!(side1.factor_indices, side2.factor_indices);

        let side2 = unlink_model(3, 3, 3).unwrap().lambda_subgroup(2).unwrap();
        assert_eq!(side2.generators.len(), 2);
        assert_eq!(side2.diagnosis, SideDiagnosis::CycleFound);

        // k = 4: the side-2 subgroup picks up the piece factor as well
        let side2 = unlink_model(4, 2, 2).unwrap().lambda_subgroup(2).unwrap();
        assert_eq!(side2.generators.len(), 2);
    }

    #[test]
    fn star_model_diagnosis() {
        // one gluing disk per side piece, infinite vertex groups: the side
        // subgraph is a tree with two nontrivial side pieces
        let vertices = vec![
            GogVertex {
                id: 0,
                kind: VertexKind::Piece,
                group: GroupSpec::trivial(),
            },
            GogVertex {
                id: 1,
                kind: VertexKind::Piece,
                group: GroupSpec::free(1),
            },
            GogVertex {
                id: 2,
                kind: VertexKind::Piece,
                group: GroupSpec::free(1),
            },
            GogVertex {
                id: 3,
                kind: VertexKind::Piece,
                group: GroupSpec::free(1),
            },
            GogVertex {
                id: 4,
                kind: VertexKind::Piece,
                group: GroupSpec::free(1),
            },
            GogVertex {
                id: 5,
                kind: VertexKind::Disk,
                group: GroupSpec::trivial(),
            },
            GogVertex {
                id: 6,
                kind: VertexKind::Disk,
                group: GroupSpec::trivial(),
            },
            GogVertex {
                id: 7,
                kind: VertexKind::Disk,
                group: GroupSpec::trivial(),
            },
            GogVertex {
                id: 8,
                kind: VertexKind::Disk,
                group: GroupSpec::trivial(),
            },
        ];
        let edges = vec![
            (0, 5),
            (0, 6),
            (0, 7),
            (0, 8),
            (1, 5),
            (2, 6),
            (3, 7),
            (4, 8),
        ];
        let tree = vec![0, 1, 2, 3, 4, 5, 6, 7];
        let gog = GraphOfGroups::new(vertices, edges, tree, 0).unwrap();
        let labels = BTreeMap::from([
            (5, (1u8, 0u64)),
            (6, (1, 1)),
            (7, (2, 0)),
            (8, (2, 1)),
        ]);
        let model = CoverModel::new(2, 2, gog, labels, vec![0, 1], vec![0, 1]).unwrap();
        let side = model.lambda_subgroup(2).unwrap();
        assert_eq!(side.diagnosis, SideDiagnosis::TwoNontrivialVertexGroups);
        assert_eq!(side.generators.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let model = unlink_model(4, 2, 2).unwrap();
        let text = model.to_json_string();
        let loaded = CoverModel::from_json_str(&text).unwrap();
        assert_eq!(loaded, model);
        assert_eq!(loaded.to_json_string(), text);
    }

    #[test]
    fn rejects_finite_piece_groups() {
        let vertices = vec![
            GogVertex {
                id: 0,
                kind: VertexKind::Piece,
                group: GroupSpec::trivial(),
            },
            GogVertex {
                id: 1,
                kind: VertexKind::Piece,
                group: GroupSpec::homogeneous(1, 5).unwrap(),
            },
        ];
        let gog = GraphOfGroups::new(vertices, vec![(0, 1)], vec![0], 0).unwrap();
        assert!(matches!(
            CoverModel::new(2, 2, gog, BTreeMap::new(), vec![0, 1], vec![0, 1]),
            Err(CoverError::BadModel(_))
        ));
    }
}

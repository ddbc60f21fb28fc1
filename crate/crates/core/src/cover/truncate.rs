//! Finite truncations of the infinite cover.
//!
//! The cover of the graph-of-groups model is a graph whose vertices are
//! lifts of pieces, indexed by cosets of the vertex-group factor in the
//! deck group, and whose edges are the gluing spheres, one per lift of a
//! disk vertex. A sheet is a lift of the base piece; every base-side lift
//! with trivial group is compact and contributes one signed incidence row
//! over GF(p). Ranks of sphere-class families are computed modulo these
//! rows.

use super::graph::{DeckGroup, FactorOrigin};
use super::model::{CoverModel, PieceSide};
use super::CoverError;
use crate::gf::{self, PrimeField};
use crate::words::Word;
use std::collections::BTreeMap;

/// The sphere `Σ_{side,g,u}`: the copy of the gluing sphere labeled
/// `(side, g)` on the sheet `W_u`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SphereIndex {
    pub side: u8,
    pub g: u64,
    pub deck: Word,
}

impl SphereIndex {
    pub fn new(side: u8, g: u64, deck: Word) -> Self {
        SphereIndex { side, g, deck }
    }
}

/// A formal GF(p) sum of sphere classes with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ObstructionClass {
    terms: BTreeMap<SphereIndex, u64>,
}

impl ObstructionClass {
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (SphereIndex, u64)>,
    {
        ObstructionClass {
            terms: terms.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SphereIndex, u64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }
}

/// The value of the obstruction map on the slide class: coefficient 1 on
/// `Σ_{1,g,id}` for every `g` in `G_B`.
pub fn obstruction_alpha0(model: &CoverModel) -> ObstructionClass {
    ObstructionClass::from_terms(
        model
            .g_b()
            .iter()
            .map(|&g| (SphereIndex::new(1, g, Word::identity()), 1)),
    )
}

/// Left deck action on classes: every index `(i, g, v)` moves to
/// `(i, g, u·v)`.
pub fn deck_translate(
    deck: &DeckGroup,
    class: &ObstructionClass,
    u: &Word,
) -> Result<ObstructionClass, CoverError> {
    let mut terms = BTreeMap::new();
    for (index, coeff) in class.terms() {
        let moved = deck.spec.multiply(u, &index.deck)?;
        terms.insert(SphereIndex::new(index.side, index.g, moved), coeff);
    }
    Ok(ObstructionClass { terms })
}

struct PieceLift {
    vertex: usize,
    coset: Word,
    dist: usize,
}

struct SphereLift {
    disk: usize,
    translate: Word,
    /// vertex indices of the two endpoints, base side first
    ends: [usize; 2],
}

/// The radius-ρ ball of the cover: piece lifts within ρ hops of the base
/// sheet, sphere edges with both endpoints inside, and the relation rows
/// of the compact lifts whose full star lies in the ball.
pub struct TruncatedComplex {
    model: CoverModel,
    deck: DeckGroup,
    radius: usize,
    vertex_factors: BTreeMap<usize, Vec<usize>>,
    edge_letters: Vec<Option<usize>>,
    verts: Vec<PieceLift>,
    vert_index: BTreeMap<(usize, Word), usize>,
    spheres: Vec<SphereLift>,
    sphere_index: BTreeMap<(usize, Word), usize>,
    rows: Vec<Vec<u64>>,
    row_sources: Vec<usize>,
    frontier: Vec<bool>,
}

pub fn truncate_cover(model: &CoverModel, radius: usize) -> Result<TruncatedComplex, CoverError> {
    if radius < 1 {
        return Err(CoverError::BadRadius(1));
    }
    let deck = model.deck_group();
    let mut vertex_factors: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in model.graph().vertices() {
        vertex_factors.insert(v.id, Vec::new());
    }
    let mut edge_letters = vec![None; model.graph().edges().len()];
    for (index, origin) in deck.labeling.iter().enumerate() {
        match origin {
            FactorOrigin::Vertex { vertex, .. } => {
                vertex_factors.get_mut(vertex).expect("vertex").push(index)
            }
            FactorOrigin::Edge { edge } => edge_letters[*edge] = Some(index),
        }
    }
    let mut tc = TruncatedComplex {
        model: model.clone(),
        deck,
        radius,
        vertex_factors,
        edge_letters,
        verts: Vec::new(),
        vert_index: BTreeMap::new(),
        spheres: Vec::new(),
        sphere_index: BTreeMap::new(),
        rows: Vec::new(),
        row_sources: Vec::new(),
        frontier: Vec::new(),
    };
    tc.build()?;
    Ok(tc)
}

impl TruncatedComplex {
    /// Deck letter picked up crossing edge `e` out of vertex `from`.
    fn letter(&self, e: usize, from: usize) -> Result<Word, CoverError> {
        let (a, b) = self.model.graph().edges()[e];
        let sign = if from == a {
            1
        } else {
            debug_assert_eq!(from, b);
            -1
        };
        match self.edge_letters[e] {
            None => Ok(Word::identity()),
            Some(factor) => Ok(self.deck.spec.normalize([(factor, sign)])?),
        }
    }

    /// Canonical representative of the coset `λ·Γ_v`: strip the maximal
    /// trailing segment of syllables lying in the vertex-group factors.
    fn canonical_coset(&self, vertex: usize, word: &Word) -> Word {
        let factors = &self.vertex_factors[&vertex];
        let mut syllables: Vec<_> = word
            .syllables()
            .iter()
            .map(|s| (s.index, s.exponent))
            .collect();
        while let Some(&(index, _)) = syllables.last() {
            if factors.contains(&index) {
                syllables.pop();
            } else {
                break;
            }
        }
        self.deck.spec.normalize(syllables).expect("valid prefix")
    }

    /// Elements of the vertex-group factor with letter length at most
    /// `budget`, identity first, in deterministic order.
    fn gamma_elements(&self, vertex: usize, budget: usize) -> Vec<Word> {
        let factors = &self.vertex_factors[&vertex];
        let mut out = vec![Word::identity()];
        if factors.is_empty() || budget == 0 {
            return out;
        }
        let spec = &self.deck.spec;
        let mut prefix: Vec<(usize, i64)> = Vec::new();
        fn extend(
            spec: &crate::words::GroupSpec,
            factors: &[usize],
            prefix: &mut Vec<(usize, i64)>,
            used: usize,
            budget: usize,
            out: &mut Vec<Word>,
        ) {
            for &f in factors {
                if prefix.last().is_some_and(|&(last, _)| last == f) {
                    continue;
                }
                let room = (budget - used) as i64;
                let exponents: Vec<i64> = match spec.order(f) {
                    0 => (1..=room).flat_map(|e| [e, -e]).collect(),
                    d => (1..=room.min(d as i64 - 1)).collect(),
                };
                for e in exponents {
                    prefix.push((f, e));
                    out.push(spec.normalize(prefix.iter().copied()).expect("normal form"));
                    let used = used + e.unsigned_abs() as usize;
                    if used < budget {
                        extend(spec, factors, prefix, used, budget, out);
                    }
                    prefix.pop();
                }
            }
        }
        extend(spec, factors, &mut prefix, 0, budget, &mut out);
        out
    }

    /// Neighbors of a piece lift through one gamma twist: crossing each
    /// incident edge to the disk and out the disk's other edge.
    fn neighbors(
        &self,
        vertex: usize,
        coset: &Word,
        budget: usize,
    ) -> Result<Vec<Neighbor>, CoverError> {
        let spec = &self.deck.spec;
        let mut out = Vec::new();
        for gamma in self.gamma_elements(vertex, budget) {
            let shifted = spec.multiply(coset, &gamma)?;
            for (e1, disk) in self.model.graph().incident(vertex) {
                let translate = spec.multiply(&shifted, &self.letter(e1, vertex)?)?;
                let (e2, far_vertex) = self
                    .model
                    .graph()
                    .incident(disk)
                    .into_iter()
                    .find(|&(e2, _)| e2 != e1)
                    .expect("disk valence 2");
                let far_raw = spec.multiply(&translate, &self.letter(e2, disk)?)?;
                let far_coset = self.canonical_coset(far_vertex, &far_raw);
                out.push(Neighbor {
                    disk,
                    translate,
                    far_vertex,
                    far_coset,
                });
            }
        }
        Ok(out)
    }

    fn build(&mut self) -> Result<(), CoverError> {
        let base = self.model.graph().base();
        self.verts.push(PieceLift {
            vertex: base,
            coset: Word::identity(),
            dist: 0,
        });
        self.vert_index.insert((base, Word::identity()), 0);
        let mut head = 0;
        while head < self.verts.len() {
            let (vertex, coset, dist) =
                (self.verts[head].vertex, self.verts[head].coset.clone(), self.verts[head].dist);
            head += 1;
            if dist == self.radius {
                continue;
            }
            for n in self.neighbors(vertex, &coset, self.radius - dist)? {
                let key = (n.far_vertex, n.far_coset.clone());
                if !self.vert_index.contains_key(&key) {
                    self.vert_index.insert(key, self.verts.len());
                    self.verts.push(PieceLift {
                        vertex: n.far_vertex,
                        coset: n.far_coset,
                        dist: dist + 1,
                    });
                }
            }
        }

        // sphere edges: both endpoints must lie in the ball
        for pos in 0..self.verts.len() {
            let (vertex, coset, dist) =
                (self.verts[pos].vertex, self.verts[pos].coset.clone(), self.verts[pos].dist);
            if dist >= self.radius {
                continue;
            }
            let base_side = self.model.side_of_piece(vertex) == PieceSide::Base;
            for n in self.neighbors(vertex, &coset, self.radius - dist)? {
                let key = (n.disk, n.translate.clone());
                if self.sphere_index.contains_key(&key) {
                    continue;
                }
                let Some(&far) = self.vert_index.get(&(n.far_vertex, n.far_coset.clone())) else {
                    continue;
                };
                let ends = if base_side { [pos, far] } else { [far, pos] };
                self.sphere_index.insert(key, self.spheres.len());
                self.spheres.push(SphereLift {
                    disk: n.disk,
                    translate: n.translate,
                    ends,
                });
            }
        }

        // relation rows for compact lifts with their full star inside;
        // compactness is triviality of the barred vertex group
        let field = self.field();
        for pos in 0..self.verts.len() {
            let (vertex, coset) = (self.verts[pos].vertex, self.verts[pos].coset.clone());
            if !self.vertex_factors[&vertex].is_empty() {
                continue;
            }
            let sign = match self.model.side_of_piece(vertex) {
                PieceSide::Base => 1,
                PieceSide::Other(_) => field.neg(1),
            };
            let mut row = vec![0u64; self.spheres.len()];
            let mut complete = true;
            for (e1, disk) in self.model.graph().incident(vertex) {
                let translate = self
                    .deck
                    .spec
                    .multiply(&coset, &self.letter(e1, vertex)?)?;
                match self.sphere_index.get(&(disk, translate)) {
                    Some(&s) => row[s] = field.add(row[s], sign),
                    None => {
                        complete = false;
                        break;
                    }
                }
            }
            if complete {
                self.rows.push(row);
                self.row_sources.push(pos);
            }
        }

        // frontier flags: some incident edge leaves the ball, or the
        // vertex group is infinite so the star is never complete
        for pos in 0..self.verts.len() {
            let (vertex, coset) = (self.verts[pos].vertex, self.verts[pos].coset.clone());
            let flag = if !self.vertex_factors[&vertex].is_empty() {
                true
            } else {
                let mut outside = false;
                for n in self.neighbors(vertex, &coset, 1)? {
                    if !self
                        .vert_index
                        .contains_key(&(n.far_vertex, n.far_coset.clone()))
                    {
                        outside = true;
                        break;
                    }
                }
                outside
            };
            self.frontier.push(flag);
        }
        Ok(())
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.model.p()).expect("validated prime")
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn model(&self) -> &CoverModel {
        &self.model
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn sphere_count(&self) -> usize {
        self.spheres.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The GF(p) relation rows, one per compact lift with a full star.
    pub fn relation_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// (graph vertex id, coset word) keys of the ball, in BFS order.
    pub fn vertex_keys(&self) -> Vec<(usize, Word)> {
        self.verts
            .iter()
            .map(|v| (v.vertex, v.coset.clone()))
            .collect()
    }

    /// (disk id, translate word) keys of the sphere edges.
    pub fn sphere_keys(&self) -> Vec<(usize, Word)> {
        self.spheres
            .iter()
            .map(|s| (s.disk, s.translate.clone()))
            .collect()
    }

    pub fn contains_sheet(&self, u: &Word) -> bool {
        self.vert_index
            .contains_key(&(self.model.graph().base(), u.clone()))
    }

    /// Canonical coset representative for a graph vertex, exposed for the
    /// property suites.
    pub fn canonical_coset_of(&self, vertex: usize, word: &Word) -> Word {
        self.canonical_coset(vertex, word)
    }

    /// Deck-group factor indices of a vertex group.
    pub fn vertex_factor_indices(&self, vertex: usize) -> &[usize] {
        &self.vertex_factors[&vertex]
    }

    /// Resolve a sphere index to its edge in the ball.
    fn resolve(&self, index: &SphereIndex) -> Result<usize, CoverError> {
        if !self.deck.spec.is_valid(&index.deck) {
            return Err(CoverError::BadSphereIndex(format!(
                "deck word is not in normal form for side {} g {}",
                index.side, index.g
            )));
        }
        let disk = self
            .model
            .disk_with_label(index.side, index.g)
            .ok_or_else(|| {
                CoverError::BadSphereIndex(format!("no disk labeled ({}, {})", index.side, index.g))
            })?;
        let base = self.model.graph().base();
        let (edge, _) = self
            .model
            .graph()
            .incident(base)
            .into_iter()
            .find(|&(_, other)| other == disk)
            .ok_or_else(|| {
                CoverError::BadSphereIndex(format!(
                    "disk ({}, {}) is not adjacent to the base piece",
                    index.side, index.g
                ))
            })?;
        let translate = self
            .deck
            .spec
            .multiply(&index.deck, &self.letter(edge, base)?)?;
        self.sphere_index
            .get(&(disk, translate))
            .copied()
            .ok_or(CoverError::SphereOutsideBall)
    }

    /// Rank of the indicator vectors of `spheres` in the quotient of
    /// GF(p)^{spheres} by the relation rows.
    pub fn sphere_class_rank(&self, spheres: &[SphereIndex]) -> Result<usize, CoverError> {
        let vectors = spheres
            .iter()
            .map(|s| {
                let mut v = vec![0u64; self.spheres.len()];
                v[self.resolve(s)?] = 1;
                Ok(v)
            })
            .collect::<Result<Vec<_>, CoverError>>()?;
        Ok(gf::rank_modulo(self.field(), &self.rows, &vectors))
    }

    /// Rank of formal sphere-class sums in the same quotient.
    pub fn class_rank(&self, classes: &[ObstructionClass]) -> Result<usize, CoverError> {
        let field = self.field();
        let vectors = classes
            .iter()
            .map(|cls| {
                let mut v = vec![0u64; self.spheres.len()];
                for (index, coeff) in cls.terms() {
                    let s = self.resolve(index)?;
                    v[s] = field.add(v[s], coeff % field.modulus());
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, CoverError>>()?;
        Ok(gf::rank_modulo(field, &self.rows, &vectors))
    }

    /// Delete one sphere edge and report how the ball decomposes: the
    /// number of components, and whether both components touching the
    /// deleted edge reach the frontier of the truncation.
    pub fn separating_check(&self, sphere: &SphereIndex) -> Result<SeparationReport, CoverError> {
        if self.radius < 2 {
            return Err(CoverError::BadRadius(2));
        }
        let deleted = self.resolve(sphere)?;
        let mut uf: Vec<usize> = (0..self.verts.len()).collect();
        fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (s, sphere) in self.spheres.iter().enumerate() {
            if s == deleted {
                continue;
            }
            let (ra, rb) = (find(&mut uf, sphere.ends[0]), find(&mut uf, sphere.ends[1]));
            if ra != rb {
                uf[ra] = rb;
            }
        }
        let mut roots: Vec<usize> = (0..self.verts.len()).map(|v| find(&mut uf, v)).collect();
        let end_roots = [roots[self.spheres[deleted].ends[0]], roots[self.spheres[deleted].ends[1]]];
        let mut reach = [false, false];
        for (v, &root) in roots.iter().enumerate() {
            for (slot, &end_root) in end_roots.iter().enumerate() {
                if root == end_root && self.frontier[v] {
                    reach[slot] = true;
                }
            }
        }
        roots.sort_unstable();
        roots.dedup();
        Ok(SeparationReport {
            components: roots.len(),
            both_reach_frontier: reach[0] && reach[1],
        })
    }

    /// All sphere indices whose edge lies in this ball and whose sheet
    /// coordinates come from the base-adjacent disks, i.e. the
    /// `Σ_{i,g,u}` representable in the truncation.
    pub fn sphere_indices(&self) -> Vec<SphereIndex> {
        let base = self.model.graph().base();
        let mut out = Vec::new();
        for sphere in &self.spheres {
            let Some((side, g)) = self.model.disk_label(sphere.disk) else {
                continue;
            };
            let Some((edge, _)) = self
                .model
                .graph()
                .incident(base)
                .into_iter()
                .find(|&(_, other)| other == sphere.disk)
            else {
                continue;
            };
            let letter_inv = self
                .deck
                .spec
                .invert(&self.letter(edge, base).expect("letter"))
                .expect("letter");
            let u = self
                .deck
                .spec
                .multiply(&sphere.translate, &letter_inv)
                .expect("translate");
            out.push(SphereIndex::new(side, g, u));
        }
        out
    }
}

struct Neighbor {
    disk: usize,
    translate: Word,
    far_vertex: usize,
    far_coset: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationReport {
    pub components: usize,
    pub both_reach_frontier: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitReport {
    pub sample_size: usize,
    pub radius: usize,
    pub rank_at_radius: usize,
    pub rank_at_next: usize,
    pub stable: bool,
}

/// Ranks of the deck orbit `{u · φ(α₀) : u in sample}` at `radius` and
/// `radius + 1`, with the stabilization flag (both ranks equal the sample
/// size).
pub fn orbit_independence(
    model: &CoverModel,
    sample: &[Word],
    radius: usize,
) -> Result<OrbitReport, CoverError> {
    let lambda2 = model.lambda_subgroup(2)?;
    let deck = model.deck_group();
    for (i, u) in sample.iter().enumerate() {
        if !deck.spec.is_valid(u) {
            return Err(CoverError::BadSphereIndex(
                "sample word is not in normal form".into(),
            ));
        }
        if !u
            .syllables()
            .iter()
            .all(|s| lambda2.factor_indices.contains(&s.index))
        {
            return Err(CoverError::SampleOutsideSubgroup);
        }
        if sample[..i].contains(u) {
            return Err(CoverError::DuplicateSample);
        }
    }
    let alpha0 = obstruction_alpha0(model);
    let classes = sample
        .iter()
        .map(|u| deck_translate(&deck, &alpha0, u))
        .collect::<Result<Vec<_>, _>>()?;
    let near = truncate_cover(model, radius)?;
    let far = truncate_cover(model, radius + 1)?;
    let rank_at_radius = near.class_rank(&classes)?;
    let rank_at_next = far.class_rank(&classes)?;
    Ok(OrbitReport {
        sample_size: sample.len(),
        radius,
        rank_at_radius,
        rank_at_next,
        stable: rank_at_radius == rank_at_next && rank_at_radius == sample.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::model::unlink_model;

    #[test]
    fn base_ball_radius_one() {
        let model = unlink_model(3, 2, 2).unwrap();
        let tc = truncate_cover(&model, 1).unwrap();
        // base sheet plus its four adjacent lifts, all four spheres, and
        // the base relation row
        assert_eq!(tc.vertex_count(), 5);
        assert_eq!(tc.sphere_count(), 4);
        assert_eq!(tc.row_count(), 1);
        assert!(tc.contains_sheet(&Word::identity()));
    }

    #[test]
    fn truncation_is_monotone() {
        let model = unlink_model(3, 2, 2).unwrap();
        let mut previous_verts: Vec<(usize, Word)> = Vec::new();
        let mut previous_spheres: Vec<(usize, Word)> = Vec::new();
        let mut previous_counts = (0usize, 0usize);
        for radius in 1..=5 {
            let tc = truncate_cover(&model, radius).unwrap();
            let verts = tc.vertex_keys();
            let spheres = tc.sphere_keys();
            for key in &previous_verts {
                assert!(verts.contains(key));
            }
            for key in &previous_spheres {
                assert!(spheres.contains(key));
            }
            assert!(verts.len() > previous_counts.0);
            assert!(spheres.len() > previous_counts.1);
            previous_counts = (verts.len(), spheres.len());
            previous_verts = verts;
            previous_spheres = spheres;
        }
    }

    #[test]
    fn sphere_resolution_and_rank() {
        let model = unlink_model(3, 2, 2).unwrap();
        let tc = truncate_cover(&model, 4).unwrap();
        assert_eq!(tc.sphere_class_rank(&[]).unwrap(), 0);
        let family: Vec<SphereIndex> = (0..2)
            .map(|g| SphereIndex::new(1, g, Word::identity()))
            .collect();
        assert_eq!(tc.sphere_class_rank(&family).unwrap(), 2);

        // the full boundary of the base sheet is one relation
        let boundary: Vec<SphereIndex> = [(1u8, 0u64), (1, 1), (2, 0), (2, 1)]
            .iter()
            .map(|&(side, g)| SphereIndex::new(side, g, Word::identity()))
            .collect();
        assert_eq!(tc.sphere_class_rank(&boundary).unwrap(), 3);

        let missing = SphereIndex::new(1, 0, tc.deck().spec.parse_word("x1^9").unwrap());
        assert_eq!(
            tc.sphere_class_rank(&[missing]),
            Err(CoverError::SphereOutsideBall)
        );
        let nonsense = SphereIndex::new(1, 5, Word::identity());
        assert!(matches!(
            tc.sphere_class_rank(&[nonsense]),
            Err(CoverError::BadSphereIndex(_))
        ));
    }

    #[test]
    fn spheres_separate_with_noncompact_sides() {
        let model = unlink_model(3, 2, 2).unwrap();
        let tc = truncate_cover(&model, 5).unwrap();
        for sphere in [
            SphereIndex::new(1, 0, Word::identity()),
            SphereIndex::new(2, 1, Word::identity()),
        ] {
            let report = tc.separating_check(&sphere).unwrap();
            assert_eq!(report.components, 2);
            assert!(report.both_reach_frontier);
        }
    }

    #[test]
    fn alpha0_and_translates() {
        let model = unlink_model(3, 2, 2).unwrap();
        let alpha0 = obstruction_alpha0(&model);
        assert_eq!(alpha0.support_len(), 2);
        assert!(alpha0.terms().all(|(_, c)| c == 1));

        let deck = model.deck_group();
        let t = model.lambda_subgroup(2).unwrap().generators[0].clone();
        let moved = deck_translate(&deck, &alpha0, &t).unwrap();
        assert!(moved.terms().all(|(idx, _)| idx.deck == t));

        // action law: translating by u then u' is translating by u'·u
        let u = deck.spec.parse_word("x1 x2^2").unwrap();
        let v = deck.spec.parse_word("x2^-1").unwrap();
        let lhs = deck_translate(&deck, &deck_translate(&deck, &alpha0, &u).unwrap(), &v).unwrap();
        let rhs = deck_translate(&deck, &alpha0, &deck.spec.multiply(&v, &u).unwrap()).unwrap();
        assert_eq!(lhs, rhs);

        // identity translation is the identity
        assert_eq!(
            deck_translate(&deck, &alpha0, &Word::identity()).unwrap(),
            alpha0
        );
    }

    #[test]
    fn alpha0_is_nonzero_in_the_ball() {
        let model = unlink_model(3, 2, 2).unwrap();
        let tc = truncate_cover(&model, 4).unwrap();
        assert_eq!(tc.class_rank(&[obstruction_alpha0(&model)]).unwrap(), 1);
    }

    #[test]
    fn orbit_sample_validation() {
        let model = unlink_model(3, 2, 2).unwrap();
        let deck = model.deck_group();
        let t = model.lambda_subgroup(2).unwrap().generators[0].clone();
        let t2 = deck.spec.multiply(&t, &t).unwrap();
        let sample = vec![Word::identity(), t.clone(), t2];
        let report = orbit_independence(&model, &sample, 5).unwrap();
        assert_eq!(report.sample_size, 3);
        assert_eq!(report.rank_at_radius, 3);
        assert!(report.stable);

        // the t^2 sheet's spheres only enter the ball at radius 5
        assert_eq!(
            orbit_independence(&model, &sample, 3),
            Err(CoverError::SphereOutsideBall)
        );
        assert_eq!(
            orbit_independence(&model, &[t.clone(), t.clone()], 3),
            Err(CoverError::DuplicateSample)
        );
        let outside = model.lambda_subgroup(1).unwrap().generators[0].clone();
        assert_eq!(
            orbit_independence(&model, &[outside], 3),
            Err(CoverError::SampleOutsideSubgroup)
        );
    }
}

//! The quotient maps induced by `F_k -> H_{k,d}` on symmetric automorphism
//! groups, kernel membership tests, and bounded kernel enumeration.
//!
//! `project_aut` realizes the map on automorphisms; `in_ker_hat` tests
//! membership in the kernel at the automorphism level (exact identity over
//! `H_{k,d}`), and `in_ker_out` at the outer level (inner over `H_{k,d}`).

use crate::symauto::{AutError, ElementaryMove, SymAut};
use crate::words::{GroupSpec, Word, WordError};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("need k >= 1 and d >= 2, got k = {k}, d = {d}")]
    BadParameters { k: usize, d: u32 },
    #[error("partial conjugation needs distinct generators, got i = j = {0}")]
    EqualIndices(usize),
    #[error("automorphism is not defined over F_{0}")]
    WrongSource(usize),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The pair `F_k -> H_{k,d}` together with its generator count and order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientContext {
    k: usize,
    d: u32,
    source: GroupSpec,
    target: GroupSpec,
}

impl QuotientContext {
    pub fn new(k: usize, d: u32) -> Result<Self, QuotientError> {
        if k < 1 || d < 2 {
            return Err(QuotientError::BadParameters { k, d });
        }
        Ok(QuotientContext {
            k,
            d,
            source: GroupSpec::free(k),
            target: GroupSpec::homogeneous(k, d).expect("d >= 2"),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    fn check_source(&self, aut: &SymAut) -> Result<(), QuotientError> {
        if aut.spec() != &self.source {
            return Err(QuotientError::WrongSource(self.k));
        }
        Ok(())
    }

    /// Image of a symmetric automorphism of `F_k` in `SymAut(H_{k,d})`:
    /// project every generator image and re-extract canonical data.
    pub fn project_aut(&self, aut: &SymAut) -> Result<SymAut, QuotientError> {
        self.check_source(aut)?;
        let images = aut
            .images()
            .iter()
            .map(|w| self.source.project(w, self.d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymAut::from_images(self.target.clone(), &images)?)
    }

    /// The partial conjugation of one generator by the `d`th power of
    /// another, a kernel element of the automorphism-level map by
    /// construction.
    pub fn kernel_generator(&self, i: usize, j: usize) -> Result<SymAut, QuotientError> {
        if i == j {
            return Err(QuotientError::EqualIndices(i));
        }
        Ok(SymAut::from_move(
            self.source.clone(),
            ElementaryMove::PartialConjugation {
                i,
                j,
                e: self.d as i64,
            },
        )?)
    }

    /// Membership in the kernel of the automorphism-level map: the
    /// projected automorphism fixes every generator.
    pub fn in_ker_hat(&self, aut: &SymAut) -> Result<bool, QuotientError> {
        Ok(self.project_aut(aut)?.is_identity())
    }

    /// Membership in the kernel of the outer-level map: the projected
    /// automorphism is inner over `H_{k,d}`.
    pub fn in_ker_out(&self, aut: &SymAut) -> Result<bool, QuotientError> {
        Ok(self.project_aut(aut)?.is_inner().is_some())
    }

    /// Breadth-first enumeration of kernel elements: all products of at
    /// most `max_moves` moves from the alphabet, filtered by kernel
    /// membership and deduplicated, in move-sequence lexicographic order.
    /// `budget` caps the number of outputs.
    pub fn enumerate_kernel(
        &self,
        alphabet: &[ElementaryMove],
        max_moves: usize,
        budget: usize,
        level: KernelLevel,
    ) -> Result<Vec<SymAut>, QuotientError> {
        let mut out: Vec<SymAut> = Vec::new();
        let steps = alphabet
            .iter()
            .map(|mv| SymAut::from_move(self.source.clone(), mv.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        // frontier in lexicographic order of the move sequences; exact
        // repeats are pruned (their children reappear through the earlier,
        // lexicographically smaller copy)
        let mut visited: HashSet<Vec<Word>> = HashSet::new();
        let mut frontier = vec![SymAut::identity(self.source.clone())];
        visited.insert(frontier[0].images());
        for depth in 0..=max_moves {
            for aut in &frontier {
                if out.len() >= budget {
                    return Ok(out);
                }
                let in_kernel = match level {
                    KernelLevel::Outer => self.in_ker_out(aut)?,
                    KernelLevel::Aut => self.in_ker_hat(aut)?,
                };
                if !in_kernel {
                    continue;
                }
                let duplicate = match level {
                    KernelLevel::Outer => out
                        .iter()
                        .map(|seen| seen.outer_equal(aut))
                        .collect::<Result<Vec<_>, _>>()?
                        .into_iter()
                        .any(|eq| eq),
                    KernelLevel::Aut => false,
                };
                if !duplicate {
                    out.push(aut.clone());
                }
            }
            if depth == max_moves {
                break;
            }
            let mut next = Vec::new();
            for aut in &frontier {
                for step in &steps {
                    let child = aut.compose(step)?;
                    if visited.insert(child.images()) {
                        next.push(child);
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// The default enumeration alphabet: all partial conjugations
    /// `x_i |-> x_j^{±1} x_i x_j^{∓1}` for `i != j`.
    pub fn partial_conjugation_alphabet(&self) -> Vec<ElementaryMove> {
        let mut alphabet = Vec::new();
        for i in 0..self.k {
            for j in 0..self.k {
                if i != j {
                    for e in [1, -1] {
                        alphabet.push(ElementaryMove::PartialConjugation { i, j, e });
                    }
                }
            }
        }
        alphabet
    }
}

/// Which kernel the enumeration filters by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelLevel {
    /// `Ker(Q)`: deduplicate and filter in the outer automorphism group.
    Outer,
    /// `Ker(Q-hat)`: exact equality in the automorphism group.
    Aut,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn ctx(k: usize, d: u32) -> QuotientContext {
        QuotientContext::new(k, d).unwrap()
    }

    fn pc(spec: &GroupSpec, i: usize, j: usize, e: i64) -> SymAut {
        SymAut::from_move(spec.clone(), ElementaryMove::PartialConjugation { i, j, e }).unwrap()
    }

    #[test]
    fn kernel_generator_images() {
        let ctx = ctx(3, 2);
        let kg = ctx.kernel_generator(0, 1).unwrap();
        assert_eq!(
            kg.image(0),
            ctx.source().parse_word("x2^2 x1 x2^-2").unwrap()
        );
        assert!(ctx.in_ker_hat(&kg).unwrap());
        assert_eq!(
            ctx.kernel_generator(1, 1),
            Err(QuotientError::EqualIndices(1))
        );
    }

    #[test]
    fn kernel_generators_across_parameters() {
        for (k, d) in [(3usize, 2u32), (3, 3), (4, 2)] {
            let ctx = QuotientContext::new(k, d).unwrap();
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        let kg = ctx.kernel_generator(i, j).unwrap();
                        assert!(ctx.in_ker_hat(&kg).unwrap());
                        assert!(ctx.in_ker_out(&kg).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn project_aut_examples() {
        let ctx = ctx(3, 2);
        let id = SymAut::identity(ctx.source().clone());
        assert!(ctx.project_aut(&id).unwrap().is_identity());

        let p = pc(ctx.source(), 0, 1, 1);
        let projected = ctx.project_aut(&p).unwrap();
        assert_eq!(
            projected.image(0),
            ctx.target().parse_word("z2 z1 z2").unwrap()
        );
        assert!(!ctx.in_ker_hat(&p).unwrap());
        assert!(!ctx.in_ker_out(&p).unwrap());
    }

    #[test]
    fn inner_automorphisms_lie_in_outer_kernel() {
        let ctx = ctx(3, 2);
        let c: Word = ctx.source().parse_word("x1 x2^3 x3^-1").unwrap();
        let inner = SymAut::from_move(ctx.source().clone(), ElementaryMove::Inner(c)).unwrap();
        assert!(ctx.in_ker_out(&inner).unwrap());
        assert!(!ctx.in_ker_hat(&inner).unwrap());
    }

    #[test]
    fn kernel_is_closed_under_commutators() {
        let ctx = ctx(3, 2);
        let a = ctx.kernel_generator(0, 1).unwrap();
        let b = ctx.kernel_generator(0, 2).unwrap();
        let commutator = a
            .compose(&b)
            .unwrap()
            .compose(&a.invert().unwrap())
            .unwrap()
            .compose(&b.invert().unwrap())
            .unwrap();
        assert!(ctx.in_ker_hat(&commutator).unwrap());
    }

    #[test]
    fn enumeration_finds_kernel_generators() {
        let ctx = ctx(3, 2);
        let found = ctx
            .enumerate_kernel(
                &ctx.partial_conjugation_alphabet(),
                2,
                usize::MAX,
                KernelLevel::Outer,
            )
            .unwrap();
        // every kernel generator appears up to outer equality
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let kg = ctx.kernel_generator(i, j).unwrap();
                    assert!(
                        found
                            .iter()
                            .any(|aut| aut.outer_equal(&kg).unwrap()),
                        "missing kernel generator ({i},{j})"
                    );
                }
            }
        }
        // identity is the unique product of zero moves
        let only_identity = ctx
            .enumerate_kernel(&ctx.partial_conjugation_alphabet(), 0, 10, KernelLevel::Outer)
            .unwrap();
        assert_eq!(only_identity.len(), 1);
        assert!(only_identity[0].is_identity());
    }

    #[test]
    fn enumeration_grows_with_radius() {
        let ctx = ctx(3, 2);
        let alphabet = ctx.partial_conjugation_alphabet();
        let at2 = ctx
            .enumerate_kernel(&alphabet, 2, usize::MAX, KernelLevel::Outer)
            .unwrap();
        let at4 = ctx
            .enumerate_kernel(&alphabet, 4, usize::MAX, KernelLevel::Outer)
            .unwrap();
        assert!(at4.len() > at2.len());
        for aut in &at4 {
            assert!(ctx.in_ker_out(aut).unwrap());
        }
    }

    #[test]
    fn hat_kernel_implies_outer_kernel() {
        let ctx = ctx(3, 2);
        let alphabet = ctx.partial_conjugation_alphabet();
        let hat = ctx
            .enumerate_kernel(&alphabet, 3, usize::MAX, KernelLevel::Aut)
            .unwrap();
        assert!(!hat.is_empty());
        for aut in &hat {
            assert!(ctx.in_ker_out(aut).unwrap());
        }
    }
}

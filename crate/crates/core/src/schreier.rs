//! Reidemeister-Schreier data for the kernel of the degree map
//! `H_{k,d} -> Z/dZ`, which is free of rank `(k-1)(d-1)`.
//!
//! Coset representatives are the powers `z1^t` for `t = 0..d-1`. The
//! Schreier generator at `(i, t)` is `z1^t z_i z1^{-(t+1)}`; the `i = 1`
//! generators are trivial and pruned, and the relator `z_i^d` eliminates
//! the symbol at `t = d-1` via
//! `X_{i,d-1} = (X_{i,0} ··· X_{i,d-2})^{-1}`, leaving the free basis
//! `X_{i,t}` for `i in 2..=k`, `t in 0..=d-2`.

use crate::symauto::SymAut;
use crate::words::{GroupSpec, Word, WordError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error("kernel basis needs k >= 2 and d >= 2, got k = {k}, d = {d}")]
    BadParameters { k: usize, d: u32 },
    #[error("word has nonzero degree and does not lie in the kernel")]
    NonzeroDegree,
    #[error("automorphism does not preserve the degree map")]
    DegreeNotPreserved,
    #[error("automorphism is not defined over H_{{k,d}}")]
    WrongSpec,
    #[error("bad basis symbol `{0}`")]
    BadSymbol(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Free basis of `ker(H_{k,d} -> Z/dZ)` with its rewriting data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    k: usize,
    d: u32,
    ambient: GroupSpec,
    free: GroupSpec,
}

impl KernelBasis {
    pub fn build(k: usize, d: u32) -> Result<Self, SchreierError> {
        if k < 2 || d < 2 {
            return Err(SchreierError::BadParameters { k, d });
        }
        let rank = (k - 1) * (d as usize - 1);
        Ok(KernelBasis {
            k,
            d,
            ambient: GroupSpec::homogeneous(k, d).expect("d >= 2"),
            free: GroupSpec::free(rank),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.free.generator_count()
    }

    /// The ambient group `H_{k,d}`.
    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    /// The free group on the basis symbols.
    pub fn free_group(&self) -> &GroupSpec {
        &self.free
    }

    /// Basis index of the symbol `X_{i,t}`, with `i` the 0-based ambient
    /// generator index in `1..k` and `t` in `0..d-1`.
    pub fn symbol(&self, i: usize, t: usize) -> usize {
        debug_assert!((1..self.k).contains(&i));
        debug_assert!(t < self.d as usize - 1);
        (i - 1) * (self.d as usize - 1) + t
    }

    /// Inverse of [`symbol`](Self::symbol): `(i, t)` for a basis index.
    pub fn symbol_coords(&self, b: usize) -> (usize, usize) {
        let width = self.d as usize - 1;
        (b / width + 1, b % width)
    }

    /// Printed name of a basis symbol, 1-based: `X_{2,0}`.
    pub fn symbol_name(&self, b: usize) -> String {
        let (i, t) = self.symbol_coords(b);
        format!("X_{{{},{}}}", i + 1, t)
    }

    /// Rewrite a degree-zero word of `H_{k,d}` in the free basis: scan
    /// letters left to right tracking the coset `t`; the letter `z_i` at
    /// coset `t` emits `X_{i,t}` (or the elimination expansion at
    /// `t = d-1`), `z_1` letters emit nothing.
    pub fn rewrite(&self, w: &Word) -> Result<Word, SchreierError> {
        if !self.ambient.is_valid(w) {
            return Err(SchreierError::WrongSpec);
        }
        if !self.ambient.degree(w)?.is_zero() {
            return Err(SchreierError::NonzeroDegree);
        }
        let d = self.d as usize;
        let mut t = 0usize;
        let mut raw: Vec<(usize, i64)> = Vec::new();
        for s in w.syllables() {
            // canonical exponents are positive residues
            for _ in 0..s.exponent {
                if s.index > 0 {
                    if t < d - 1 {
                        raw.push((self.symbol(s.index, t), 1));
                    } else {
                        for u in (0..d - 1).rev() {
                            raw.push((self.symbol(s.index, u), -1));
                        }
                    }
                }
                t = (t + 1) % d;
            }
        }
        Ok(self.free.normalize(raw)?)
    }

    /// The canonical degree-zero representative of a free-basis word in
    /// `H_{k,d}`: substitute `X_{i,t} |-> z1^t z_i z1^{-(t+1)}`.
    pub fn expand(&self, v: &Word) -> Result<Word, SchreierError> {
        if !self.free.is_valid(v) {
            return Err(SchreierError::WrongSpec);
        }
        let mut raw: Vec<(usize, i64)> = Vec::new();
        let mut emit = |b: usize, inverted: bool| {
            let (i, t) = self.symbol_coords(b);
            let t = t as i64;
            if inverted {
                raw.push((0, t + 1));
                raw.push((i, -1));
                raw.push((0, -t));
            } else {
                raw.push((0, t));
                raw.push((i, 1));
                raw.push((0, -(t + 1)));
            }
        };
        for s in v.syllables() {
            for _ in 0..s.exponent.unsigned_abs() {
                emit(s.index, s.exponent < 0);
            }
        }
        Ok(self.ambient.normalize(raw)?)
    }

    /// Restriction of a symmetric automorphism of `H_{k,d}` to the kernel,
    /// as images of the basis symbols in the free group. Requires every
    /// generator image to have degree `+1 mod d`, which is what lets the
    /// automorphism descend along the degree map.
    pub fn restrict_aut(&self, aut: &SymAut) -> Result<Vec<Word>, SchreierError> {
        if aut.spec() != &self.ambient {
            return Err(SchreierError::WrongSpec);
        }
        for i in 0..self.k {
            let image_degree = self.ambient.degree(&aut.image(i))?;
            if image_degree.value != 1 % self.d as i64 {
                return Err(SchreierError::DegreeNotPreserved);
            }
        }
        (0..self.rank())
            .map(|b| {
                let generator = self.free.generator(b)?;
                let image = aut
                    .apply(&self.expand(&generator)?)
                    .map_err(|_| SchreierError::WrongSpec)?;
                self.rewrite(&image)
            })
            .collect()
    }

    /// True when every basis symbol is fixed by the restriction.
    pub fn acts_trivially_on_kernel(&self, aut: &SymAut) -> Result<bool, SchreierError> {
        let images = self.restrict_aut(aut)?;
        for (b, image) in images.iter().enumerate() {
            if image != &self.free.generator(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Substitute basis images into a free word (the action of a restricted
    /// automorphism on the whole kernel).
    pub fn substitute(&self, images: &[Word], v: &Word) -> Result<Word, SchreierError> {
        let mut raw: Vec<(usize, i64)> = Vec::new();
        for s in v.syllables() {
            let image = &images[s.index];
            if s.exponent >= 0 {
                for _ in 0..s.exponent {
                    raw.extend(image.syllables().iter().map(|c| (c.index, c.exponent)));
                }
            } else {
                for _ in 0..-s.exponent {
                    raw.extend(
                        image
                            .syllables()
                            .iter()
                            .rev()
                            .map(|c| (c.index, -c.exponent)),
                    );
                }
            }
        }
        Ok(self.free.normalize(raw)?)
    }

    /// Parse a free word over basis symbols, tokens `X_{i,t}` or
    /// `X_{i,t}^e` with 1-based `i`.
    pub fn parse_basis_word(&self, text: &str) -> Result<Word, SchreierError> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            raw.push(self.parse_symbol_token(token)?);
        }
        Ok(self.free.normalize(raw)?)
    }

    fn parse_symbol_token(&self, token: &str) -> Result<(usize, i64), SchreierError> {
        let bad = || SchreierError::BadSymbol(token.to_string());
        let rest = token.strip_prefix("X_{").ok_or_else(bad)?;
        let (coords, tail) = rest.split_once('}').ok_or_else(bad)?;
        let exponent = match tail {
            "" => 1,
            _ => {
                let e: i64 = tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if e == 0 {
                    return Err(bad());
                }
                e
            }
        };
        let (i_text, t_text) = coords.split_once(',').ok_or_else(bad)?;
        let i: usize = i_text.parse().map_err(|_| bad())?;
        let t: usize = t_text.parse().map_err(|_| bad())?;
        if !(2..=self.k).contains(&i) || t >= self.d as usize - 1 {
            return Err(bad());
        }
        Ok((self.symbol(i - 1, t), exponent))
    }

    /// Format a free word over basis symbols.
    pub fn format_basis_word(&self, v: &Word) -> String {
        let mut out = String::new();
        for (pos, s) in v.syllables().iter().enumerate() {
            if pos > 0 {
                out.push(' ');
            }
            out.push_str(&self.symbol_name(s.index));
            if s.exponent != 1 {
                out.push('^');
                out.push_str(&s.exponent.to_string());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symauto::ElementaryMove;

    fn kb(k: usize, d: u32) -> KernelBasis {
        KernelBasis::build(k, d).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(kb(3, 2).rank(), 2);
        assert_eq!(kb(3, 3).rank(), 4);
        assert_eq!(kb(2, 2).rank(), 1);
        assert_eq!(
            KernelBasis::build(1, 2),
            Err(SchreierError::BadParameters { k: 1, d: 2 })
        );
    }

    #[test]
    fn rewrite_examples() {
        let kb = kb(3, 2);
        let h = kb.ambient().clone();
        let w = h.parse_word("z2 z3^-1").unwrap();
        assert_eq!(
            kb.format_basis_word(&kb.rewrite(&w).unwrap()),
            "X_{2,0} X_{3,0}^-1"
        );
        assert!(kb
            .rewrite(&h.parse_word("z1^2").unwrap())
            .unwrap()
            .is_identity());
        assert!(kb.rewrite(&Word::identity()).unwrap().is_identity());
        assert_eq!(
            kb.rewrite(&h.parse_word("z2").unwrap()),
            Err(SchreierError::NonzeroDegree)
        );
    }

    #[test]
    fn expand_examples() {
        let kb = kb(3, 2);
        let h = kb.ambient().clone();
        let x20 = kb.parse_basis_word("X_{2,0}").unwrap();
        assert_eq!(kb.expand(&x20).unwrap(), h.parse_word("z2 z1").unwrap());
        assert!(kb.expand(&Word::identity()).unwrap().is_identity());

        let v = kb.parse_basis_word("X_{2,0} X_{3,0}^-1").unwrap();
        assert_eq!(kb.expand(&v).unwrap(), h.parse_word("z2 z3").unwrap());
    }

    #[test]
    fn round_trips() {
        let kb = kb(3, 3);
        let h = kb.ambient().clone();
        for text in ["z2 z1^2", "z1 z2 z1 z3^2 z1^2 z3 z1^2 z2^2", "z3 z2 z3 z2"] {
            let w = h.parse_word(text).unwrap();
            if !kb.ambient().degree(&w).unwrap().is_zero() {
                continue;
            }
            let back = kb.expand(&kb.rewrite(&w).unwrap()).unwrap();
            assert_eq!(back, w, "expand(rewrite) failed on {text}");
        }
        for text in ["X_{2,0}", "X_{2,1}^-2 X_{3,0}", "X_{3,1} X_{2,0}^3"] {
            let v = kb.parse_basis_word(text).unwrap();
            let back = kb.rewrite(&kb.expand(&v).unwrap()).unwrap();
            assert_eq!(back, v, "rewrite(expand) failed on {text}");
        }
    }

    #[test]
    fn rewrite_is_homomorphic() {
        let kb = kb(3, 2);
        let h = kb.ambient().clone();
        let a = h.parse_word("z2 z3").unwrap();
        let b = h.parse_word("z3 z1 z2 z1").unwrap();
        let lhs = kb.rewrite(&h.multiply(&a, &b).unwrap()).unwrap();
        let rhs = kb
            .free_group()
            .multiply(&kb.rewrite(&a).unwrap(), &kb.rewrite(&b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restrict_inner_z1() {
        let kb = kb(3, 2);
        let h = kb.ambient().clone();
        let inner =
            SymAut::from_move(h.clone(), ElementaryMove::Inner(h.parse_word("z1").unwrap()))
                .unwrap();
        let images = kb.restrict_aut(&inner).unwrap();
        // X_{2,0} picks up the elimination expansion
        assert_eq!(kb.format_basis_word(&images[0]), "X_{2,0}^-1");
        assert!(!kb.acts_trivially_on_kernel(&inner).unwrap());

        // functoriality: inner(z1)^2 = identity restricts to the identity
        let squared = inner.compose(&inner).unwrap();
        assert!(kb.acts_trivially_on_kernel(&squared).unwrap());
        let twice = images
            .iter()
            .map(|im| kb.substitute(&images, im).unwrap())
            .collect::<Vec<_>>();
        for (b, im) in twice.iter().enumerate() {
            assert_eq!(im, &kb.free_group().generator(b).unwrap());
        }
    }

    #[test]
    fn restrict_rejects_sign_reversal() {
        let kb = kb(3, 3);
        let h = kb.ambient().clone();
        let flip = SymAut::from_move(h, ElementaryMove::Inversion(0)).unwrap();
        assert_eq!(
            kb.restrict_aut(&flip),
            Err(SchreierError::DegreeNotPreserved)
        );
    }

    #[test]
    fn identity_restricts_to_identity() {
        let kb = kb(4, 3);
        let id = SymAut::identity(kb.ambient().clone());
        assert!(kb.acts_trivially_on_kernel(&id).unwrap());
    }

    #[test]
    fn trivial_action_implies_inner_at_small_scale() {
        // scan pure automorphisms of H_{3,2} with single-letter conjugators
        let kb = kb(3, 2);
        let h = kb.ambient().clone();
        let mut words = vec![Word::identity()];
        for i in 0..3 {
            words.push(h.generator(i).unwrap());
        }
        for w1 in &words {
            for w2 in &words {
                for w3 in &words {
                    let images = [
                        h.conjugate(&h.generator(0).unwrap(), w1).unwrap(),
                        h.conjugate(&h.generator(1).unwrap(), w2).unwrap(),
                        h.conjugate(&h.generator(2).unwrap(), w3).unwrap(),
                    ];
                    let aut = SymAut::from_images(h.clone(), &images).unwrap();
                    if kb.acts_trivially_on_kernel(&aut).unwrap() {
                        assert!(
                            aut.is_inner().is_some(),
                            "trivial-on-kernel but not inner: {:?}",
                            aut.conjugators()
                        );
                    }
                }
            }
        }
    }
}

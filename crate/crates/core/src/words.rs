//! Normal forms and arithmetic for elements of free products of cyclic groups.
//!
//! A [`GroupSpec`] fixes the number of generators and the order of each cyclic
//! factor (0 meaning infinite), covering both the free group `F_k` and the
//! free product `H_{k,d}` of `k` copies of `Z/dZ`, as well as mixed specs.
//! A [`Word`] is the unique syllable normal form of a group element: adjacent
//! syllables use distinct generators, and exponents of finite-order
//! generators are stored as least positive residues `1..d-1`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("generator orders must be 0 (infinite) or at least 2, got {0}")]
    BadOrder(u32),
    #[error("word is not valid for this group spec")]
    MismatchedSpec,
    #[error("degree is only defined when all generator orders agree")]
    HeterogeneousOrders,
    #[error("projection order must be at least 2, got {0}")]
    BadProjectionOrder(u32),
    #[error("source spec must be free (all orders 0)")]
    SourceNotFree,
    #[error("alternation bound must be at least 1")]
    BadAlternationBound,
    #[error("free-product certificate requires nontrivial elements")]
    TrivialElement,
    #[error("bad word token `{0}`")]
    BadToken(String),
}

/// A free product of cyclic groups: one generator per entry of `orders`,
/// where order 0 denotes an infinite-cyclic factor and `d >= 2` a `Z/dZ`
/// factor. The empty spec is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u32>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self, WordError> {
        if let Some(&bad) = orders.iter().find(|&&o| o == 1) {
            return Err(WordError::BadOrder(bad));
        }
        Ok(GroupSpec { orders })
    }

    /// The free group `F_k`.
    pub fn free(k: usize) -> Self {
        GroupSpec { orders: vec![0; k] }
    }

    /// The free product `H_{k,d}` of `k` copies of `Z/dZ`.
    pub fn homogeneous(k: usize, d: u32) -> Result<Self, WordError> {
        if d < 2 {
            return Err(WordError::BadOrder(d));
        }
        Ok(GroupSpec { orders: vec![d; k] })
    }

    pub fn trivial() -> Self {
        GroupSpec { orders: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self, index: usize) -> u32 {
        self.orders[index]
    }

    pub fn is_free(&self) -> bool {
        self.orders.iter().all(|&o| o == 0)
    }

    /// `Some(d)` when every generator has the same order `d` (possibly 0).
    pub fn common_order(&self) -> Option<u32> {
        match self.orders.first() {
            None => Some(0),
            Some(&d) => self.orders.iter().all(|&o| o == d).then_some(d),
        }
    }

    /// Reduce an exponent of generator `index` to its canonical residue:
    /// unchanged for infinite order, `0..d-1` for order `d`.
    fn reduce_exponent(&self, index: usize, e: i64) -> i64 {
        match self.orders[index] {
            0 => e,
            d => e.rem_euclid(d as i64),
        }
    }

    /// True when `w` is in canonical form for this spec.
    pub fn is_valid(&self, w: &Word) -> bool {
        let k = self.generator_count();
        for (pos, s) in w.syllables.iter().enumerate() {
            if s.index >= k || s.exponent == 0 {
                return false;
            }
            if self.reduce_exponent(s.index, s.exponent) != s.exponent && self.orders[s.index] != 0
            {
                return false;
            }
            if pos > 0 && w.syllables[pos - 1].index == s.index {
                return false;
            }
        }
        true
    }

    fn check_valid(&self, w: &Word) -> Result<(), WordError> {
        if self.is_valid(w) {
            Ok(())
        } else {
            Err(WordError::MismatchedSpec)
        }
    }
}

/// One maximal generator power inside a normal-form word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub index: usize,
    pub exponent: i64,
}

/// Syllable normal form of a group element. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    /// Total letter length: the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs())
            .sum()
    }

    pub fn first(&self) -> Option<Syllable> {
        self.syllables.first().copied()
    }

    pub fn last(&self) -> Option<Syllable> {
        self.syllables.last().copied()
    }

    /// The single-generator power this word represents, if any.
    /// Returns `Some((index, exponent))` for one syllable, `None` otherwise.
    pub fn as_generator_power(&self) -> Option<(usize, i64)> {
        match self.syllables.as_slice() {
            [s] => Some((s.index, s.exponent)),
            _ => None,
        }
    }
}

/// Push one syllable onto a normal-form stack, merging and cancelling.
fn push_syllable(spec: &GroupSpec, stack: &mut Vec<Syllable>, index: usize, exponent: i64) {
    let mut e = exponent;
    if let Some(top) = stack.last() {
        if top.index == index {
            e += top.exponent;
            stack.pop();
        }
    }
    let e = spec.reduce_exponent(index, e);
    if e != 0 {
        stack.push(Syllable { index, exponent: e });
    }
}

impl GroupSpec {
    /// The unique normal form of a raw syllable sequence: adjacent equal
    /// generators merge, exponents reduce modulo finite orders, and trivial
    /// syllables vanish, cascading to a fixed point.
    pub fn normalize<I>(&self, raw: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut stack = Vec::new();
        for (index, exponent) in raw {
            if index >= self.generator_count() {
                return Err(WordError::IndexOutOfRange {
                    index,
                    k: self.generator_count(),
                });
            }
            push_syllable(self, &mut stack, index, exponent);
        }
        Ok(Word { syllables: stack })
    }

    /// The generator `x_{index+1}` as a word.
    pub fn generator(&self, index: usize) -> Result<Word, WordError> {
        self.normalize([(index, 1)])
    }

    /// Normal form of the concatenation `a · b`.
    pub fn multiply(&self, a: &Word, b: &Word) -> Result<Word, WordError> {
        self.check_valid(a)?;
        self.check_valid(b)?;
        let mut stack = a.syllables.clone();
        for s in &b.syllables {
            push_syllable(self, &mut stack, s.index, s.exponent);
        }
        Ok(Word { syllables: stack })
    }

    /// Product of several words, left to right.
    pub fn product<'a, I>(&self, words: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut stack = Vec::new();
        for w in words {
            self.check_valid(w)?;
            for s in &w.syllables {
                push_syllable(self, &mut stack, s.index, s.exponent);
            }
        }
        Ok(Word { syllables: stack })
    }

    /// Inverse: reversed syllables with negated exponents, renormalized.
    pub fn invert(&self, a: &Word) -> Result<Word, WordError> {
        self.check_valid(a)?;
        let mut stack = Vec::with_capacity(a.syllables.len());
        for s in a.syllables.iter().rev() {
            push_syllable(self, &mut stack, s.index, -s.exponent);
        }
        Ok(Word { syllables: stack })
    }

    /// Normal form of `c · a · c^{-1}`.
    pub fn conjugate(&self, a: &Word, c: &Word) -> Result<Word, WordError> {
        let c_inv = self.invert(c)?;
        self.product([c, a, &c_inv])
    }

    /// `a^e` for any integer exponent.
    pub fn power(&self, a: &Word, e: i64) -> Result<Word, WordError> {
        self.check_valid(a)?;
        let base = if e < 0 { self.invert(a)? } else { a.clone() };
        let mut stack = Vec::new();
        for _ in 0..e.unsigned_abs() {
            for s in &base.syllables {
                push_syllable(self, &mut stack, s.index, s.exponent);
            }
        }
        Ok(Word { syllables: stack })
    }

    /// Exponent sum, reduced modulo the common order. A word lies in the
    /// kernel of the degree map exactly when the degree is zero.
    pub fn degree(&self, a: &Word) -> Result<DegreeClass, WordError> {
        self.check_valid(a)?;
        let modulus = self.common_order().ok_or(WordError::HeterogeneousOrders)?;
        let sum: i64 = a.syllables.iter().map(|s| s.exponent).sum();
        let value = if modulus == 0 {
            sum
        } else {
            sum.rem_euclid(modulus as i64)
        };
        Ok(DegreeClass { value, modulus })
    }

    /// Image of a free-group word under `F_k -> H_{k,d}`.
    pub fn project(&self, a: &Word, d: u32) -> Result<Word, WordError> {
        if !self.is_free() {
            return Err(WordError::SourceNotFree);
        }
        self.check_valid(a)?;
        if d < 2 {
            return Err(WordError::BadProjectionOrder(d));
        }
        let target = GroupSpec::homogeneous(self.generator_count(), d)?;
        target.normalize(a.syllables.iter().map(|s| (s.index, s.exponent)))
    }

    /// Split `a = conjugator · core · conjugator^{-1}` with the core
    /// cyclically reduced (first and last syllables on distinct generators,
    /// or at most one syllable).
    pub fn cyclic_reduce(&self, a: &Word) -> Result<(Word, Word), WordError> {
        self.check_valid(a)?;
        let mut core = a.clone();
        let mut conjugator = Vec::new();
        while core.syllables.len() >= 2
            && core.syllables.first().unwrap().index == core.syllables.last().unwrap().index
        {
            let head = core.syllables.remove(0);
            conjugator.push((head.index, head.exponent));
            // rotate the head to the back and renormalize
            let mut stack = core.syllables;
            push_syllable(self, &mut stack, head.index, head.exponent);
            core = Word { syllables: stack };
        }
        Ok((core, self.normalize(conjugator)?))
    }

    /// Order of `a` as a group element: `Some(n)` for finite order n >= 1,
    /// `None` for infinite order.
    pub fn element_order(&self, a: &Word) -> Result<Option<u64>, WordError> {
        let (core, _) = self.cyclic_reduce(a)?;
        match core.syllables.as_slice() {
            [] => Ok(Some(1)),
            [s] => match self.orders[s.index] {
                0 => Ok(None),
                d => {
                    let d = d as u64;
                    let g = gcd(s.exponent.unsigned_abs(), d);
                    Ok(Some(d / g))
                }
            },
            // a cyclically reduced word with two or more syllables has
            // infinite order in a free product
            _ => Ok(None),
        }
    }

    /// Bounded certificate that `<a, b>` maps onto the free product
    /// `<a> * <b>`: true iff every nonempty alternating product of
    /// nontrivial powers of `a` and `b` with at most `bound` alternations is
    /// nontrivial. Exponents of finite-order elements range over the full
    /// `1..order`; infinite-order exponents are searched in `|e| <= bound`.
    pub fn free_product_certificate(
        &self,
        a: &Word,
        b: &Word,
        bound: usize,
    ) -> Result<bool, WordError> {
        if bound < 1 {
            return Err(WordError::BadAlternationBound);
        }
        if a.is_identity() || b.is_identity() {
            return Err(WordError::TrivialElement);
        }
        let exponents = |w: &Word| -> Result<Vec<i64>, WordError> {
            Ok(match self.element_order(w)? {
                Some(1) => return Err(WordError::TrivialElement),
                Some(n) => (1..n as i64).collect(),
                None => {
                    let mut es: Vec<i64> = Vec::with_capacity(2 * bound);
                    for e in 1..=bound as i64 {
                        es.push(e);
                        es.push(-e);
                    }
                    es
                }
            })
        };
        let a_exps = exponents(a)?;
        let b_exps = exponents(b)?;
        let factors = [a, b];
        let exps = [a_exps, b_exps];

        // depth-first over alternating products, checking every prefix
        fn search(
            spec: &GroupSpec,
            factors: &[&Word; 2],
            exps: &[Vec<i64>; 2],
            current: &Word,
            next: usize,
            remaining: usize,
        ) -> Result<bool, WordError> {
            for &e in &exps[next] {
                let step = spec.power(factors[next], e)?;
                let product = spec.multiply(current, &step)?;
                if product.is_identity() {
                    return Ok(false);
                }
                if remaining > 1 && !search(spec, factors, exps, &product, 1 - next, remaining - 1)?
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }

        let id = Word::identity();
        Ok(search(self, &factors, &exps, &id, 0, bound)?
            && search(self, &factors, &exps, &id, 1, bound)?)
    }
}

/// The image of a word under the degree map to `Z` (modulus 0) or `Z/dZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeClass {
    pub value: i64,
    pub modulus: u32,
}

impl DegreeClass {
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Text format: whitespace-separated `x<i>` / `x<i>^<e>` tokens, 1-based
// indices, empty string = identity. Finite-order generators print with the
// letter `z`; both letters are accepted on input.
// ---------------------------------------------------------------------------

impl GroupSpec {
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            raw.push(parse_token(token)?);
        }
        for &(index, _) in &raw {
            if index >= self.generator_count() {
                return Err(WordError::IndexOutOfRange {
                    index,
                    k: self.generator_count(),
                });
            }
        }
        self.normalize(raw)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut out = String::new();
        for (pos, s) in w.syllables.iter().enumerate() {
            if pos > 0 {
                out.push(' ');
            }
            let letter = if self.orders[s.index] == 0 { 'x' } else { 'z' };
            out.push(letter);
            out.push_str(&(s.index + 1).to_string());
            if s.exponent != 1 {
                out.push('^');
                out.push_str(&s.exponent.to_string());
            }
        }
        out
    }
}

fn parse_token(token: &str) -> Result<(usize, i64), WordError> {
    let bad = || WordError::BadToken(token.to_string());
    let rest = token.strip_prefix(['x', 'z']).ok_or_else(bad)?;
    let (index_part, exponent) = match rest.split_once('^') {
        Some((i, e)) => {
            let e: i64 = e.parse().map_err(|_| bad())?;
            if e == 0 {
                return Err(bad());
            }
            (i, e)
        }
        None => (rest, 1),
    };
    if index_part.is_empty() || !index_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = index_part.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok((index - 1, exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &GroupSpec, text: &str) -> Word {
        spec.parse_word(text).unwrap()
    }

    #[test]
    fn normalize_free_cancellation() {
        let f2 = GroupSpec::free(2);
        let word = f2.normalize([(0, 1), (1, 2), (1, -2), (0, 1)]).unwrap();
        assert_eq!(word, w(&f2, "x1^2"));
    }

    #[test]
    fn normalize_finite_orders() {
        let h13 = GroupSpec::homogeneous(1, 3).unwrap();
        assert_eq!(h13.normalize([(0, 4)]).unwrap(), w(&h13, "z1"));
        assert!(h13.normalize([(0, 3)]).unwrap().is_identity());
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        let f2 = GroupSpec::free(2);
        assert_eq!(
            f2.normalize([(2, 1)]),
            Err(WordError::IndexOutOfRange { index: 2, k: 2 })
        );
    }

    #[test]
    fn multiply_examples() {
        let f3 = GroupSpec::free(3);
        let ab = f3.multiply(&w(&f3, "x1 x2"), &w(&f3, "x2^-1 x3")).unwrap();
        assert_eq!(ab, w(&f3, "x1 x3"));

        let h22 = GroupSpec::homogeneous(2, 2).unwrap();
        let prod = h22
            .multiply(&w(&h22, "z1 z2"), &w(&h22, "z2 z1"))
            .unwrap();
        assert!(prod.is_identity());

        let a = w(&f3, "x1 x2^3");
        assert_eq!(f3.multiply(&a, &Word::identity()).unwrap(), a);
    }

    #[test]
    fn invert_examples() {
        let f2 = GroupSpec::free(2);
        assert_eq!(
            f2.invert(&w(&f2, "x1 x2^2")).unwrap(),
            w(&f2, "x2^-2 x1^-1")
        );

        let h13 = GroupSpec::homogeneous(1, 3).unwrap();
        assert_eq!(h13.invert(&w(&h13, "z1")).unwrap(), w(&h13, "z1^2"));
        assert!(h13.invert(&Word::identity()).unwrap().is_identity());
    }

    #[test]
    fn conjugate_examples() {
        let f2 = GroupSpec::free(2);
        assert_eq!(
            f2.conjugate(&w(&f2, "x1"), &w(&f2, "x2")).unwrap(),
            w(&f2, "x2 x1 x2^-1")
        );
        let a = w(&f2, "x1 x2");
        assert_eq!(f2.conjugate(&a, &Word::identity()).unwrap(), a);

        // hand-checked: (z1 z2) z1 (z2 z1) in H_{2,2}
        let h22 = GroupSpec::homogeneous(2, 2).unwrap();
        assert_eq!(
            h22.conjugate(&w(&h22, "z1"), &w(&h22, "z1 z2")).unwrap(),
            w(&h22, "z1 z2 z1 z2 z1")
        );
    }

    #[test]
    fn degree_examples() {
        let h32 = GroupSpec::homogeneous(3, 2).unwrap();
        let d = h32.degree(&w(&h32, "z1 z2^-1")).unwrap();
        assert_eq!((d.value, d.modulus), (0, 2));

        let f3 = GroupSpec::free(3);
        let d = f3.degree(&w(&f3, "x1 x2 x3")).unwrap();
        assert_eq!((d.value, d.modulus), (3, 0));

        assert!(h32.degree(&Word::identity()).unwrap().is_zero());

        let mixed = GroupSpec::new(vec![2, 0]).unwrap();
        assert_eq!(
            mixed.degree(&Word::identity()),
            Err(WordError::HeterogeneousOrders)
        );
    }

    #[test]
    fn project_examples() {
        let f2 = GroupSpec::free(2);
        let h22 = GroupSpec::homogeneous(2, 2).unwrap();
        // x2^2 x1 x2^-2 |-> z1 since z2^2 = 1
        assert_eq!(
            f2.project(&w(&f2, "x2^2 x1 x2^-2"), 2).unwrap(),
            w(&h22, "z1")
        );
        assert!(f2.project(&Word::identity(), 2).unwrap().is_identity());

        let f1 = GroupSpec::free(1);
        let h13 = GroupSpec::homogeneous(1, 3).unwrap();
        assert_eq!(f1.project(&w(&f1, "x1^5"), 3).unwrap(), w(&h13, "z1^2"));

        assert_eq!(
            f1.project(&w(&f1, "x1"), 1),
            Err(WordError::BadProjectionOrder(1))
        );
    }

    #[test]
    fn cyclic_reduce_examples() {
        let f2 = GroupSpec::free(2);
        let (core, conj) = f2.cyclic_reduce(&w(&f2, "x2 x1 x2^-1")).unwrap();
        assert_eq!(core, w(&f2, "x1"));
        assert_eq!(conj, w(&f2, "x2"));

        let a = w(&f2, "x1 x2");
        let (core, conj) = f2.cyclic_reduce(&a).unwrap();
        assert_eq!(core, a);
        assert!(conj.is_identity());

        let (core, conj) = f2.cyclic_reduce(&Word::identity()).unwrap();
        assert!(core.is_identity() && conj.is_identity());

        // same-index ends that do not cancel exactly still rotate away
        let h25 = GroupSpec::homogeneous(2, 5).unwrap();
        let word = w(&h25, "z1^2 z2 z1");
        let (core, conj) = h25.cyclic_reduce(&word).unwrap();
        assert_eq!(h25.conjugate(&core, &conj).unwrap(), word);
        let s = core.syllables();
        assert!(s.len() <= 1 || s.first().unwrap().index != s.last().unwrap().index);
    }

    #[test]
    fn element_orders() {
        let h22 = GroupSpec::homogeneous(2, 2).unwrap();
        assert_eq!(h22.element_order(&w(&h22, "z1")).unwrap(), Some(2));
        assert_eq!(h22.element_order(&w(&h22, "z1 z2")).unwrap(), None);
        assert_eq!(h22.element_order(&Word::identity()).unwrap(), Some(1));
        let h14 = GroupSpec::homogeneous(1, 4).unwrap();
        assert_eq!(h14.element_order(&w(&h14, "z1^2")).unwrap(), Some(2));
    }

    #[test]
    fn certificate_basis_elements() {
        let f2 = GroupSpec::free(2);
        assert!(f2
            .free_product_certificate(&w(&f2, "x1"), &w(&f2, "x2"), 4)
            .unwrap());
    }

    #[test]
    fn certificate_detects_collapse() {
        let f1 = GroupSpec::free(1);
        assert!(!f1
            .free_product_certificate(&w(&f1, "x1"), &w(&f1, "x1^2"), 2)
            .unwrap());
    }

    #[test]
    fn certificate_conjugate_generators() {
        let h22 = GroupSpec::homogeneous(2, 2).unwrap();
        let b = h22.conjugate(&w(&h22, "z1"), &w(&h22, "z2")).unwrap();
        assert!(h22
            .free_product_certificate(&w(&h22, "z1"), &b, 6)
            .unwrap());
    }

    #[test]
    fn certificate_rejects_bad_input() {
        let f2 = GroupSpec::free(2);
        assert_eq!(
            f2.free_product_certificate(&w(&f2, "x1"), &w(&f2, "x2"), 0),
            Err(WordError::BadAlternationBound)
        );
        assert_eq!(
            f2.free_product_certificate(&Word::identity(), &w(&f2, "x2"), 2),
            Err(WordError::TrivialElement)
        );
    }

    #[test]
    fn text_round_trip() {
        let h32 = GroupSpec::homogeneous(3, 2).unwrap();
        let word = w(&h32, "z1 z2 z3 z1");
        assert_eq!(h32.parse_word(&h32.format_word(&word)).unwrap(), word);
        assert_eq!(h32.format_word(&Word::identity()), "");
        // x tokens accepted for finite-order specs
        assert_eq!(h32.parse_word("x1 x2").unwrap(), w(&h32, "z1 z2"));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let f2 = GroupSpec::free(2);
        for bad in ["y1", "x0", "x1^0", "x", "x1^", "x1^x", "1"] {
            assert!(matches!(f2.parse_word(bad), Err(WordError::BadToken(_))));
        }
        assert_eq!(
            f2.parse_word("x3"),
            Err(WordError::IndexOutOfRange { index: 2, k: 2 })
        );
    }
}

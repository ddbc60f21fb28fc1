//! Independent reference computations used by the test suites. Nothing
//! here shares a code path with the operations it checks: inner-ness is
//! decided by plain enumeration, and kernel ranks come from an Euler
//! characteristic count on an enumerated coset graph.

use crate::symauto::SymAut;
use crate::words::{GroupSpec, Word};
use std::collections::BTreeSet;

/// Every element of letter length at most `max_letters`, deduplicated and
/// deterministically ordered (by length, then normal form).
pub fn all_words(spec: &GroupSpec, max_letters: usize) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::identity());
    let mut frontier: Vec<Word> = vec![Word::identity()];
    let mut out = vec![Word::identity()];
    for _ in 0..max_letters {
        let mut next = Vec::new();
        for w in &frontier {
            for index in 0..spec.generator_count() {
                for exponent in [1i64, -1] {
                    let step = spec.normalize([(index, exponent)]).expect("letter");
                    let extended = spec.multiply(w, &step).expect("valid");
                    if seen.insert(extended.clone()) {
                        next.push(extended.clone());
                        out.push(extended);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Brute-force inner witness: scan every conjugator of letter length at
/// most `max_letters` and test the conjugation against the images.
pub fn inner_witness_brute(aut: &SymAut, max_letters: usize) -> Option<Word> {
    let spec = aut.spec();
    let images = aut.images();
    let generators: Vec<Word> = (0..spec.generator_count())
        .map(|i| spec.generator(i).expect("generator"))
        .collect();
    all_words(spec, max_letters).into_iter().find(|candidate| {
        generators
            .iter()
            .zip(&images)
            .all(|(g, image)| &spec.conjugate(g, candidate).expect("valid") == image)
    })
}

/// Rank of the kernel of the degree map `H_{k,d} -> Z/dZ` computed from
/// the Euler characteristic of the enumerated coset complex: `V` cosets
/// discovered by running the degree action, `E = k·V` Schreier-graph
/// edges, and one 2-cell per orbit of each relator's generator action.
/// The kernel is free, so its rank is `1 - (V - E + F)`.
pub fn kernel_rank_euler(k: usize, d: u32) -> usize {
    assert!(k >= 2 && d >= 2);
    let d = d as usize;
    // enumerate cosets of the kernel by running the action of each
    // generator (every generator advances the coset by one)
    let mut discovered = vec![false; d];
    let mut stack = vec![0usize];
    discovered[0] = true;
    let mut cosets = Vec::new();
    while let Some(t) = stack.pop() {
        cosets.push(t);
        for _generator in 0..k {
            let next = (t + 1) % d;
            if !discovered[next] {
                discovered[next] = true;
                stack.push(next);
            }
        }
    }
    let v = cosets.len();
    let e = k * v;
    // one 2-cell per cycle of the z_i action on cosets, for each of the k
    // relators z_i^d
    let mut f = 0;
    for _generator in 0..k {
        let mut seen = vec![false; v];
        for start in 0..v {
            if seen[start] {
                continue;
            }
            f += 1;
            let mut t = start;
            loop {
                seen[t] = true;
                t = (t + 1) % d;
                if t == start {
                    break;
                }
            }
        }
    }
    let chi = v as i64 - e as i64 + f as i64;
    (1 - chi) as usize
}

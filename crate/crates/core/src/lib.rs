//! Algebraic machinery for free products of cyclic groups: word normal
//! forms, symmetric automorphisms and their quotient maps, Reidemeister-
//! Schreier kernel bases, graph-of-groups branched-cover models, and
//! sphere-class homology over prime fields.

pub mod cover;
pub mod gf;
pub mod oracle;
pub mod props;
pub mod quotient;
pub mod schreier;
pub mod symauto;
pub mod words;

pub use cover::{CoverError, CoverModel, TruncatedComplex};
pub use quotient::{KernelLevel, QuotientContext, QuotientError};
pub use schreier::{KernelBasis, SchreierError};
pub use symauto::{AutError, ElementaryMove, PeelVerdict, SymAut};
pub use words::{DegreeClass, GroupSpec, Syllable, Word, WordError};

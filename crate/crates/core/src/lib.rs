//! Exact computations with the level 2 congruence subgroup of `GL(n, Z)`:
//! its finite presentation, the Reidemeister-Schreier derivation at `n = 2`,
//! the stabilizer complexes used for `n >= 3`, constructive membership, and
//! batch verification of the relator identities.

pub mod complex;
pub mod error;
pub mod exactmat;
pub mod membership;
pub mod parallel;
pub mod presentations;
pub mod schreier;
pub mod verifier;
pub mod words;

pub use error::{Error, Result};
pub use exactmat::{generator_matrix, is_level2, GeneratorId, IntMatrix, Mod2Matrix};
pub use presentations::{gamma2_presentation, Presentation};
pub use words::{parse_word, Letter, Word};

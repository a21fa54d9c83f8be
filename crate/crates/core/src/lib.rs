//! Partition regularity of linear systems and polynomial equations over ℕ:
//! columns-condition decisions, mixed equality/inequality systems, Rado
//! functionals, the maximal Rado condition, the three-variable `H(xz^ρ, y)`
//! classification, and a brute-force coloring oracle.

pub mod conditions;
pub mod functionals;
pub mod linear_pr;
pub mod oracle;
pub mod pipeline;
pub mod polyalg;
pub mod serde_util;
pub mod threevar;
pub mod verdict;

pub use verdict::{
    Certificate, Notion, Obstruction, ObstructionWitness, PolyText, Status, Verdict,
};

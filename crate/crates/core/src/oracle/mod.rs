//! Brute-force realization of everything the fast paths compute: the Lie
//! algebra and its modules as exact matrices, Casimir operators, the chain
//! complex of `p_+`-homology and the `p`-filtration of a module.

pub mod algebra;
pub mod chain;
pub mod checks;
pub mod filtration;
pub mod module;

pub use algebra::{dual_bases, killing_dual_form_check, realize_algebra, realize_algebra_with, BasisLabel, LieAlgebraRealization};
pub use module::{adapted_basis, build_irrep, build_irrep_with, casimir_matrix, g0_casimir_formula, AdaptedBasis, RepRealization};
pub use chain::{chain_complex, chain_complex_with, homology_bruteforce, p_plus_action_on_homology_check, BruteComponent, ChainComplex};
pub use filtration::{p_filtration, CasimirCheck, FiltrationQuotient, PFiltration};
pub use checks::{verify_all, CheckResult};

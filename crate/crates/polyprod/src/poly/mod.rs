//! Exact univariate polynomial arithmetic over the integers and over prime
//! fields: evaluation, discriminants, root counting and extraction mod p,
//! polynomial-square detection, binomial irreducibility, and numeric root
//! localization.

mod binomial;
mod complex_roots;
mod int_poly;
mod mod_poly;
mod resultant;
mod roots;
mod square;

pub use binomial::binomial_irreducible_over_q;
pub use complex_roots::{complex_roots, DEFAULT_TOL, MAX_ITERATIONS};
pub use int_poly::IntPoly;
pub use mod_poly::ModPoly;
pub use resultant::{discriminant, discriminant_mod, resultant, resultant_mod};
pub use roots::{count_roots_mod, roots_mod, smallest_root_as_index, ROOTS_BRUTE_THRESHOLD};
pub use square::{is_square_poly_mod, squarefree_decomposition, SquarefreeDecomposition};

//! Closure conditions for irreducible subring matrices as polynomial
//! congruences in the off-diagonal entries, with `p` kept symbolic.

pub mod conditions;
pub mod laurent;
pub mod solve;

pub use conditions::{extract_conditions, CongruenceCondition, CongruenceSystem, Substitution, VarRange};
pub use laurent::{LaurentPoly, Monomial, Var};
pub use solve::{count_solutions, for_each_solution, solution_matrix};

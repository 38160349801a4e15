//! Exact-rational linear programming: a two-phase simplex with Bland's rule
//! plus the program families over (Laurent) polynomial coefficients.

mod builders;
mod simplex;

pub use builders::*;
pub use simplex::{
    dualize, simplex_solve, solve_via_dual, verify_optimal, LinearProgram, LpError, LpSolution,
    LpStatus, Objective, Sense, VarBound,
};

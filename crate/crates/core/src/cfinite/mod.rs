//! Cauchy problems, their recurrence sequences and exponential-polynomial
//! solutions, plus an exact eventual-order oracle for problems with known roots.

mod expo;
mod oracle;
mod problem;
mod recurrence;

pub use expo::{eval_solution, solve_exponential, solve_linear_balls, ExpTerm, ExponentialPolynomial, TermSummary};
pub use oracle::{classify, oracle_eventual_compare, EventualOrder};
pub use problem::{recurrence_exact, solve_linear_exact, CauchyProblem, ExactExpPoly, RootedProblem};
pub use recurrence::{extend_recurrence, recurrence_extend, recurrence_guard, RecurrencePrefix};

//! Exact symbolic computation with highest-weight `sl(2)` modules realized on
//! polynomials, the `q_R`-conformal generators acting on them, and the Witt
//! and Virasoro algebras those generators approximate.
//!
//! Operators are graded by their action on monomials `z^n`; each homogeneous
//! piece carries a rational symbol in the Euler operator `ξ = z∂`. All
//! arithmetic is exact over `Q`, `Q(h)` or `Q(ħ)`.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod generators;
pub mod symbol;
pub mod verma;
pub mod witt;

pub use arith::{format_scalar, int, parse_scalar, rat, Field, Poly, Qh, Qhbar, RatFunc, Scalar};
pub use asymptotics::{
    central_charge, central_coefficient, expand_defect, higher_order_expansion, order_swap_experiment, CentralReport,
    ExpansionSeries, Reference,
};
pub use error::{Error, Result};
pub use generators::{Family, GeneratorCatalog, IdentityReport};
pub use symbol::{GradedOperator, MembershipReport, MonomialForm, OpExpr};
pub use verma::{
    defect_matrix, finite_rank_check, hs_partial_norm, DefectKind, FiniteRankReport, HSReport, VermaBasis,
    VermaMatrix,
};
pub use witt::{GaussRat, TrigField, VirasoroElement, WittElement};

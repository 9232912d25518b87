//! Fixtures shared by the benchmarks.

use vermacas::{rat, Scalar};

/// A weight with no degeneracies, so defects are infinite-rank.
pub fn generic_weight() -> Scalar {
    rat(3, 4)
}

/// The degenerate weight where the `(2, −2)` defect collapses to rank two.
pub fn half() -> Scalar {
    rat(1, 2)
}

pub const TRUNCATIONS: [usize; 3] = [100, 200, 400];

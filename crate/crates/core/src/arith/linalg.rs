//! Dense exact linear algebra over `Q`.

use super::{Field, Scalar};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Inconsistent,
    /// A particular solution and the dimension of the solution space.
    Solved { particular: Vec<Scalar>, nullity: usize },
}

impl Solution {
    pub fn unique(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Solved { particular, nullity: 0 } => Some(particular),
            _ => None,
        }
    }
}

/// Solves `A x = b` exactly.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Solution {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Solution::Solved { particular: x, nullity: n - pivots.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&m), 1);
        let d = vec![vec![rat(1, 4), int(0), int(0)], vec![int(0), rat(1, 4), int(0)], vec![int(0); 3]];
        assert_eq!(rank(&d), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_unique_underdetermined_and_inconsistent() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve(&a, &[int(3), int(1)]).unique().unwrap(), &[int(2), int(1)]);
        let a = vec![vec![int(1), int(1)]];
        assert!(matches!(solve(&a, &[int(1)]), Solution::Solved { nullity: 1, .. }));
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(&a, &[int(1), int(3)]), Solution::Inconsistent);
    }
}

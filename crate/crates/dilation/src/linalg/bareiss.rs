//! Fraction-free (Bareiss) elimination over multivariate polynomials.
//!
//! Decides the rank of a matrix whose entries are polynomials in formal
//! transcendentals, treating the transcendentals as algebraically
//! independent. Rank-deficiency verdicts are unconditional (vanishing minors
//! vanish at every specialization); full-rank verdicts are unconditional
//! when the certifying pivot chain stays at total degree <= 1 (linear forms
//! in logarithms), and otherwise rest on the independence assumption, which
//! callers surface in their reports.

use crate::scalar::mpoly::MPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicRank {
    pub rank: usize,
    /// original row indices that carried pivots, in elimination order
    pub pivot_rows: Vec<usize>,
    /// maximum total degree seen among pivots; degree <= 1 means the rank
    /// certificate is a linear form in the transcendentals
    pub max_pivot_degree: u32,
}

/// Rank of `m` (rows x cols, row-major) over the rational function field in
/// the occurring variables.
pub fn symbolic_rank(rows: &[Vec<MPoly>]) -> SymbolicRank {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<MPoly>> = rows.to_vec();
    let mut origin: Vec<usize> = (0..nrows).collect();
    let mut prev = MPoly::one();
    let mut rank = 0;
    let mut pivot_rows = Vec::new();
    let mut max_deg = 0;

    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        origin.swap(rank, p);
        let pivot = a[rank][c].clone();
        max_deg = max_deg.max(pivot.total_degree());
        for i in rank + 1..nrows {
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let num = pivot.mul(&a[i][j]).sub(&a[i][c].mul(&a[rank][j]));
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is always exact");
            }
            a[i][c] = MPoly::zero();
        }
        prev = pivot;
        pivot_rows.push(origin[rank]);
        rank += 1;
    }
    SymbolicRank {
        rank,
        pivot_rows,
        max_pivot_degree: max_deg,
    }
}

//! Dense two-phase simplex for the feasibility search's margin LP.
//!
//! Solves `max c·x` subject to `A·x ≤ b`, `x ≥ 0` in floating point.
//! Pivoting follows Bland's rule throughout, so runs are deterministic and
//! cycling-free; the caller certifies any optimum exactly before trusting
//! it, so float tolerances here only affect which candidate gets proposed.

/// Result of a solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// Optimal solution found: values of the structural variables and the
    /// objective value.
    Optimal { x: Vec<f64>, value: f64 },
    /// The constraint system admits no nonnegative solution.
    Infeasible,
    /// The objective is unbounded above on the feasible set.
    Unbounded,
}

const TOL: f64 = 1e-9;

/// Maximizes `objective · x` over `{x ≥ 0 : rows[i] · x ≤ rhs[i]}`.
pub fn maximize(objective: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rhs.len(), m);

    // Columns: n structural, m slack, then one artificial per negative-rhs
    // row. Rows with rhs < 0 are negated (slack coefficient becomes −1) and
    // given an artificial basic variable.
    let negative: Vec<bool> = rhs.iter().map(|&b| b < 0.0).collect();
    let n_art = negative.iter().filter(|&&f| f).count();
    let ncols = n + m + n_art;
    let mut tab: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_seen = 0usize;
    for i in 0..m {
        let sign = if negative[i] { -1.0 } else { 1.0 };
        let mut row = vec![0.0; ncols + 1];
        for (v, &coeff) in row.iter_mut().zip(&rows[i]) {
            *v = sign * coeff;
        }
        row[n + i] = sign; // slack
        if negative[i] {
            let art = n + m + art_seen;
            row[art] = 1.0;
            basis.push(art);
            art_seen += 1;
        } else {
            basis.push(n + i);
        }
        row[ncols] = sign * rhs[i];
        tab.push(row);
    }

    if n_art > 0 {
        // Phase 1: maximize −Σ artificials.
        let mut cost = vec![0.0; ncols];
        cost[n + m..].fill(-1.0);
        if !run_simplex(&mut tab, &mut basis, &cost, &[]) {
            // phase-1 objective is bounded by construction
            return LpOutcome::Infeasible;
        }
        let phase1: f64 = basis
            .iter()
            .enumerate()
            .filter(|(_, &bj)| bj >= n + m)
            .map(|(i, _)| tab[i][ncols])
            .sum();
        if phase1 > 1e-7 {
            return LpOutcome::Infeasible;
        }
    }

    // Phase 2: original objective, artificial columns banned from entering.
    let mut cost = vec![0.0; ncols];
    cost[..n].copy_from_slice(objective);
    let banned: Vec<usize> = (n + m..ncols).collect();
    if !run_simplex(&mut tab, &mut basis, &cost, &banned) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab[i][ncols];
        }
    }
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

/// Runs simplex iterations in place until optimality (true) or an unbounded
/// direction (false). Bland's rule: the entering column is the lowest-index
/// one with positive reduced cost; ratio ties leave the row whose basic
/// variable has the lowest index.
fn run_simplex(
    tab: &mut [Vec<f64>],
    basis: &mut [usize],
    cost: &[f64],
    banned: &[usize],
) -> bool {
    let m = tab.len();
    let ncols = cost.len();
    loop {
        // reduced costs: c_j − c_B · B⁻¹ A_j, read off the current tableau
        let mut entering = None;
        for j in 0..ncols {
            if banned.contains(&j) || basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j];
            for i in 0..m {
                rc -= cost[basis[i]] * tab[i][j];
            }
            if rc > TOL {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else {
            return true;
        };
        let mut leaving: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if tab[i][col] > TOL {
                let ratio = tab[i][ncols] / tab[i][col];
                if ratio < best - TOL
                    || (ratio < best + TOL
                        && leaving.is_some_and(|l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leaving = Some(i);
                }
            }
        }
        let Some(row) = leaving else {
            return false;
        };
        pivot(tab, basis, row, col);
    }
}

fn pivot(tab: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let p = tab[row][col];
    for v in tab[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = tab[row].clone();
    for (i, entries) in tab.iter_mut().enumerate() {
        if i != row && entries[col].abs() > 0.0 {
            let f = entries[col];
            for (v, pv) in entries.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn small_maximum() {
        // max x + y s.t. x + 2y ≤ 4, x ≤ 3 → (3, 1/2), value 3.5
        let out = maximize(
            &[1.0, 1.0],
            &[vec![1.0, 2.0], vec![1.0, 0.0]],
            &[4.0, 3.0],
        );
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_close(value, 3.5);
                assert_close(x[0], 3.0);
                assert_close(x[1], 0.5);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_uses_phase_one() {
        // max −x s.t. −x ≤ −2 (i.e. x ≥ 2) → x = 2
        let out = maximize(&[-1.0], &[vec![-1.0]], &[-2.0]);
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_close(x[0], 2.0);
                assert_close(value, -2.0);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x ≤ 1 and x ≥ 3 cannot both hold
        let out = maximize(&[1.0], &[vec![1.0], vec![-1.0]], &[1.0, -3.0]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max x with only x ≥ 1
        let out = maximize(&[1.0], &[vec![-1.0]], &[-1.0]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_vertices_terminate() {
        // classic degenerate square: redundant constraints pinning (1, 1)
        let out = maximize(
            &[1.0, 1.0],
            &[
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
                vec![1.0, 1.0],
            ],
            &[1.0, 1.0, 2.0, 2.0],
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_close(value, 2.0),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}

//! Exact linear feasibility via phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{RatVector, Rational};

/// Finds `x >= 0` with `rows · x = rhs`, or `None` if no such `x` exists.
pub fn nonneg_solution(rows: &[RatVector], rhs: &[Rational]) -> Result<Option<RatVector>> {
    if rows.len() != rhs.len() {
        return Err(Error::Dimension(format!(
            "{} equations but {} right-hand sides",
            rows.len(),
            rhs.len()
        )));
    }
    let nvars = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != nvars) {
        return Err(Error::Dimension("ragged constraint rows".into()));
    }
    let m = rows.len();
    if m == 0 {
        return Ok(Some(vec![Rational::zero(); nvars]));
    }

    // Tableau columns: structural variables, then one artificial per row, then rhs.
    let width = nvars + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let flip = b.is_negative();
        let mut line = Vec::with_capacity(width);
        line.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        line.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
        line.push(if flip { -b } else { b.clone() });
        t.push(line);
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    // Phase-one objective: minimise the sum of artificials. Reduced costs of
    // structural columns are minus the column sums.
    let mut cost = vec![Rational::zero(); width];
    for line in &t {
        for j in 0..nvars {
            cost[j] -= &line[j];
        }
        cost[width - 1] -= &line[width - 1];
    }

    loop {
        let Some(enter) = (0..nvars + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Consistency("phase-one simplex is unbounded".into()));
        };
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[width - 1].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); nvars];
    for (i, &b) in basis.iter().enumerate() {
        if b < nvars {
            x[b] = t[i][width - 1].clone();
        }
    }
    Ok(Some(x))
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[row].clone();
    for (i, line) in t.iter_mut().enumerate() {
        if i != row && !line[col].is_zero() {
            let f = line[col].clone();
            for (x, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Is `point` a convex combination of `points`?
pub fn in_convex_hull(points: &[RatVector], point: &[Rational]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let dim = point.len();
    let mut rows: Vec<RatVector> = (0..dim)
        .map(|c| points.iter().map(|p| p[c].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); points.len()]);
    let mut rhs = point.to_vec();
    rhs.push(Rational::one());
    Ok(nonneg_solution(&rows, &rhs)?.is_some())
}

/// Is `point` a nonnegative combination of `generators`?
pub fn in_cone(generators: &[RatVector], point: &[Rational]) -> Result<bool> {
    if generators.is_empty() {
        return Ok(point.iter().all(Zero::is_zero));
    }
    let rows: Vec<RatVector> = (0..point.len())
        .map(|c| generators.iter().map(|g| g[c].clone()).collect())
        .collect();
    Ok(nonneg_solution(&rows, point)?.is_some())
}

//! Exact phase-one simplex for feasibility of `{s ≥ 0 : M s = r}`.
//!
//! Bland's rule on both the entering and leaving choice, so the method
//! terminates without any anti-cycling bookkeeping.

use super::rational::Rational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Returns some `s ≥ 0` with `m · s = r`, or `None` if the system is
/// infeasible.
pub fn nonneg_solution(m: &[Vec<Rational>], r: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    debug_assert_eq!(rows, r.len());
    let vars = m.first().map_or(0, Vec::len);
    let width = vars + rows;

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, rhs)) in m.iter().zip(r).enumerate() {
        let flip = rhs.is_negative();
        let mut t: Vec<Rational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        t.extend((0..rows).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
        t.push(if flip { -rhs } else { rhs.clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (vars..width).collect();

    // Reduced costs of the auxiliary objective `min Σ artificials`.
    let mut cost: Vec<Rational> = (0..=width)
        .map(|j| {
            if (vars..width).contains(&j) {
                Rational::zero()
            } else {
                -tab.iter().fold(Rational::zero(), |acc, t| acc + &t[j])
            }
        })
        .collect();

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width] / &tab[i][enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => match ratio.cmp(&best_ratio) {
                    Ordering::Less => Some((i, ratio)),
                    Ordering::Equal if basis[i] < basis[best] => Some((i, ratio)),
                    _ => Some((best, best_ratio)),
                },
            };
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, p, enter);
        basis[p] = enter;
    }

    // `cost[width]` holds minus the objective value.
    if !cost[width].is_zero() {
        return None;
    }
    let mut s = vec![Rational::zero(); vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            s[b] = tab[i][width].clone();
        }
    }
    Some(s)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], p: usize, col: usize) {
    let inv = tab[p][col].recip();
    for x in tab[p].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = tab[p].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == p || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::linalg::mat_vec;
    use crate::exactgeom::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn finds_feasible_point() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = vec![int(2), int(3)];
        let s = nonneg_solution(&a, &r).unwrap();
        assert!(s.iter().all(|x| !x.is_negative()));
        assert_eq!(mat_vec(&a, &s), r);
    }

    #[test]
    fn detects_infeasible() {
        // x + y = -1 with x, y ≥ 0
        let a = m(&[&[1, 1]]);
        assert!(nonneg_solution(&a, &[int(-1)]).is_none());
        // x - y = 1 and y - x = 1
        let a = m(&[&[1, -1], &[-1, 1]]);
        assert!(nonneg_solution(&a, &[int(1), int(1)]).is_none());
    }

    #[test]
    fn handles_redundant_rows() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let s = nonneg_solution(&a, &[int(4), int(8)]).unwrap();
        assert_eq!(mat_vec(&a, &s), vec![int(4), int(8)]);
    }
}

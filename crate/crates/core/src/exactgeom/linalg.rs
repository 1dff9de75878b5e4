//! Dense Gaussian elimination over the rationals.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..m[r].len() {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Unique solution of the square system `mat · x = rhs`, or `None` when
/// `mat` is singular.
pub fn solve(mat: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = mat.len();
    debug_assert_eq!(rhs.len(), n);
    let mut aug: Matrix = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Fraction-free (Bareiss) solve of an integer square system. Returns
/// `(X, D)` with `D > 0` and solution `X / D`, or `None` when `mat` is
/// singular.
pub fn solve_integer(mat: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = mat.len();
    let mut a: Vec<Vec<BigInt>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = prev;
    let mut x = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &a[i][n];
        for j in i + 1..n {
            acc -= &a[i][j] * &x[j];
        }
        x[i] = acc / &a[i][i];
    }
    if det.is_negative() {
        x.iter_mut().for_each(|v| *v = -&*v);
        return Some((x, -det));
    }
    Some((x, det))
}

/// Rank of an integer matrix by fraction-free elimination, dividing each
/// updated row by its content to keep entries small.
pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..ncols {
                row[c] = &row[c] * &pivot[col] - &f * &pivot[c];
            }
            let g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|c| *c /= &g);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Scales a rational row by the positive lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

pub fn invert(mat: &[Vec<Rational>]) -> Option<Matrix> {
    let n = mat.len();
    let mut aug: Matrix = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    if rref(&mut aug, n).len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A basis of `{z : rows · z = 0}`.
pub fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![Rational::zero(); ncols];
            z[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                z[p] = -m[r][f].clone();
            }
            z
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| super::rational::dot(row, v)).collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> Matrix {
    let Some(first) = m.first() else {
        return Vec::new();
    };
    (0..first.len()).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }

    #[test]
    fn singular_has_no_unique_solution() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(solve(&a, &[int(1), int(2)]).is_none());
        assert_eq!(rank(&a), 1);
        assert!(invert(&a).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(&[&[1, 2, 0], &[0, 1, 4], &[5, 6, 0]]);
        let inv = invert(&a).unwrap();
        for i in 0..3 {
            let col: Vec<Rational> = inv.iter().map(|row| row[i].clone()).collect();
            let e = mat_vec(&a, &col);
            for (j, x) in e.iter().enumerate() {
                assert_eq!(*x, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn null_space_is_annihilated() {
        let a = m(&[&[1, 1, 1], &[0, 1, 2]]);
        let ns = null_space(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn integer_solve_agrees() {
        let m = vec![
            vec![int(0), int(2), int(1)],
            vec![int(3), int(-1), int(4)],
            vec![int(1), int(1), int(1)],
        ];
        let b = vec![int(1), int(2), int(3)];
        let expected = solve(&m, &b).unwrap();
        let mi: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
        let bi: Vec<BigInt> = b.iter().map(|c| c.to_integer()).collect();
        let (x, d) = solve_integer(&mi, &bi).unwrap();
        assert!(d.is_positive());
        let got: Vec<Rational> = x.into_iter().map(|v| Rational::new(v, d.clone())).collect();
        assert_eq!(got, expected);
        let singular = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(4)]];
        assert!(solve_integer(&singular, &[BigInt::from(1), BigInt::from(1)]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn integer_solve_matches_rational(entries in proptest::collection::vec(-6i64..7, 20)) {
            let mi: Vec<Vec<BigInt>> = entries[..16].chunks(4).map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let bi: Vec<BigInt> = entries[16..].iter().map(|&v| BigInt::from(v)).collect();
            let mr: Matrix = mi.iter().map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
            let br: Vec<Rational> = bi.iter().map(|v| Rational::from_integer(v.clone())).collect();
            let got = solve_integer(&mi, &bi).map(|(x, d)| x.into_iter().map(|v| Rational::new(v, d.clone())).collect::<Vec<_>>());
            proptest::prop_assert_eq!(got, solve(&mr, &br));
        }
    }

    proptest::proptest! {
        #[test]
        fn integer_rank_matches_rational(entries in proptest::collection::vec(-3i64..4, 15)) {
            let mi: Vec<Vec<BigInt>> = entries.chunks(3).map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let mr: Matrix = mi.iter().map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
            proptest::prop_assert_eq!(rank_integer(&mi), rank(&mr));
        }
    }
}

//! Exact feasibility for `A x = b, x >= 0` by phase-one simplex with Bland's rule.
//!
//! An infeasible system comes back with a Farkas certificate `y` satisfying
//! `y^T A <= 0` and `y^T b > 0`; the separation code turns that vector into a
//! separating plane.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::kernel::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

/// Decides `A x = b, x >= 0`; `rows[i]` is row `i` of `A`.
pub fn feasibility(rows: &[Vec<Rational>], b: &[Rational]) -> Feasibility {
    let m = rows.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = rows.first().map_or(0, Vec::len);
    let width = n + m;

    let mut flip = vec![false; m];
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(rows[i].len(), n, "ragged constraint matrix");
        flip[i] = b[i].is_negative();
        let mut row: Vec<Rational> = rows[i].iter().map(|a| if flip[i] { -a } else { a.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        tab.push(row);
        rhs.push(if flip[i] { -&b[i] } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..width).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut reduced: Vec<Rational> = (0..width)
        .map(|j| {
            if j >= n {
                Rational::zero()
            } else {
                -tab.iter().map(|r| r[j].clone()).sum::<Rational>()
            }
        })
        .collect();
    let mut objective: Rational = rhs.iter().cloned().sum();

    while let Some(enter) = (0..width).find(|&j| reduced[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (r, _) = leave.expect("phase-one simplex is bounded");
        let pivot = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v = &*v / &pivot;
        }
        rhs[r] = &rhs[r] / &pivot;
        let pivot_row = tab[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..m {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let k = tab[i][enter].clone();
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    tab[i][j] = &tab[i][j] - &k * &pivot_row[j];
                }
            }
            rhs[i] = &rhs[i] - &k * &pivot_rhs;
        }
        let k = reduced[enter].clone();
        for j in 0..width {
            if !pivot_row[j].is_zero() {
                reduced[j] = &reduced[j] - &k * &pivot_row[j];
            }
        }
        objective = &objective + &k * &pivot_rhs;
        basis[r] = enter;
    }

    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &j) in basis.iter().enumerate() {
            if j < n {
                x[j] = rhs[i].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        let y = (0..m)
            .map(|i| {
                let yi = Rational::one() - &reduced[n + i];
                if flip[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        Feasibility::Infeasible(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{frac, int};

    fn check(rows: &[Vec<Rational>], b: &[Rational]) -> bool {
        match feasibility(rows, b) {
            Feasibility::Feasible(x) => {
                assert!(x.iter().all(|v| !v.is_negative()));
                for (row, bi) in rows.iter().zip(b) {
                    let lhs: Rational = row.iter().zip(&x).map(|(a, v)| a * v).sum();
                    assert_eq!(&lhs, bi);
                }
                true
            }
            Feasibility::Infeasible(y) => {
                let n = rows[0].len();
                for j in 0..n {
                    let v: Rational = rows.iter().zip(&y).map(|(r, yi)| &r[j] * yi).sum();
                    assert!(!v.is_positive(), "Farkas column {j} positive");
                }
                let yb: Rational = b.iter().zip(&y).map(|(bi, yi)| bi * yi).sum();
                assert!(yb.is_positive());
                false
            }
        }
    }

    #[test]
    fn simple_feasible_and_infeasible() {
        // x1 + x2 = 1, x1 - x2 = 1/2
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert!(check(&rows, &[int(1), frac(1, 2)]));
        // x1 + x2 = 1, x1 + x2 = 2
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(!check(&rows, &[int(1), int(2)]));
        // x1 = -1
        assert!(!check(&[vec![int(1)]], &[int(-1)]));
    }

    #[test]
    fn degenerate_rows() {
        // Redundant equalities and zero right-hand side.
        let rows = vec![
            vec![int(1), int(2), int(0)],
            vec![int(2), int(4), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        assert!(check(&rows, &[int(0), int(0), int(0)]));
        assert!(check(&rows, &[int(2), int(4), int(3)]));
        assert!(!check(&rows, &[int(2), int(5), int(3)]));
    }

    #[test]
    fn random_small_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.gen_range(1..4);
            let n = rng.gen_range(1..6);
            let rows: Vec<Vec<Rational>> = (0..m)
                .map(|_| (0..n).map(|_| int(rng.gen_range(-3..4))).collect())
                .collect();
            let b: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(-3..4))).collect();
            check(&rows, &b);
        }
    }
}

//! Smith normal form with unimodular transforms.
//!
//! Pivoting always moves the smallest nonzero absolute value of the active
//! submatrix to the corner, then clears its row and column by Euclidean
//! steps. A pivot that fails to divide some remaining entry absorbs that
//! entry's row and the elimination restarts, so the pivot magnitude strictly
//! decreases until the divisibility chain holds.

use super::matrix::Matrix;
use crate::scalar::IntScalar;

/// `s = u · a · v` with `s` diagonal, nonnegative, and `s_11 | s_22 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> SnfResult<T> {
    pub fn diagonal(&self) -> Vec<T> {
        self.s.diagonal()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.s.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> SnfResult<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&s, t) else {
                return finish(s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v)
}

fn finish<T: IntScalar>(s: Matrix<T>, u: Matrix<T>, v: Matrix<T>) -> SnfResult<T> {
    SnfResult { s, u, v }
}

fn smallest_nonzero<T: IntScalar>(s: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let a = s[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix<i64>) -> SnfResult<i64> {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.s);
        assert!(r.s.is_diagonal());
        let d = r.diagonal();
        assert!(d.iter().all(|x| *x >= 0));
        for w in d.windows(2) {
            assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0, "{d:?}");
        }
        r
    }

    #[test]
    fn examples() {
        let r = check(&Matrix::from_rows(&[vec![4, 0], vec![0, 2]]));
        assert_eq!(r.diagonal(), vec![2, 4]);

        let r = check(&Matrix::from_rows(&[vec![2, 4], vec![2, 0]]));
        assert_eq!(r.diagonal(), vec![2, 4]);

        let z = Matrix::<i64>::zeros(2, 3);
        let r = check(&z);
        assert_eq!(r.s, z);
        assert_eq!(r.u, Matrix::identity(2));
        assert_eq!(r.v, Matrix::identity(3));
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let r = check(&Matrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(r.diagonal(), vec![1, 6]);
    }

    #[test]
    fn degenerate_shapes() {
        let r = check(&Matrix::<i64>::zeros(0, 3));
        assert!(r.diagonal().is_empty());
        let r = check(&Matrix::from_rows(&[vec![-6], vec![4]]));
        assert_eq!(r.diagonal(), vec![2]);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn matrix() -> impl Strategy<Value = Matrix<i64>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-20i64..=20, r * c).prop_map(move |d| Matrix::new(r, c, d))
        })
    }

    proptest! {
        #[test]
        fn recomposes_with_divisibility_chain(a in matrix()) {
            let r = smith_normal_form(&a);
            prop_assert_eq!(r.u.mul(&a).mul(&r.v), r.s.clone());
            prop_assert!(r.s.is_diagonal());
            let d = r.diagonal();
            for w in d.windows(2) {
                prop_assert!(w[0] >= 0 && (w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)));
            }
        }
    }
}

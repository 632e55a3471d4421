//! Exact dense linear algebra over the rationals (Gauss-Jordan elimination).

use super::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent but rank-deficient; `particular` sets the free unknowns to zero.
    Underdetermined { particular: Vec<Rational>, rank: usize, free: Vec<usize> },
    /// The first equation (original row index) that cannot be satisfied.
    Inconsistent { row: usize },
}

impl Solution {
    pub fn unique(self) -> Option<Vec<Rational>> {
        match self {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns. Pivots are
/// sought in the first `ncols` columns and row operations touch the first
/// `width` columns; anything after that is a tag carried along by swaps.
fn rref(m: &mut Matrix, ncols: usize, width: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for v in m[r][..width].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r][..width].to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row[..width].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `a x = b` for any shape of `a` (rows are equations).
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = a.first().map_or(0, Vec::len);
    // Track original row order to report the violated equation.
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = row.clone();
            r.push(bi.clone());
            r.push(Rational::from(i));
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols, ncols + 1);
    for row in m.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return Solution::Inconsistent { row: row[ncols + 1].to_usize().unwrap_or(0) };
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        let free = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        Solution::Underdetermined { particular: x, rank: pivots.len(), free }
    }
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    rref(&mut m, ncols, ncols).len()
}

pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip().expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let (top, bottom) = m.split_at_mut(i);
            for (dst, src) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *dst -= &f * src;
            }
        }
    }
    det
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum()).collect()
}

pub fn transpose(a: &[Vec<Rational>]) -> Matrix {
    let ncols = a.first().map_or(0, Vec::len);
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(solve(&a, &v(&[3, 5])), Solution::Unique(vec![q(4, 5), q(7, 5)]));
    }

    #[test]
    fn overdetermined_consistent() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&a, &v(&[1, 2, 3])), Solution::Unique(v(&[1, 2])));
        assert_eq!(solve(&a, &v(&[1, 2, 4])), Solution::Inconsistent { row: 2 });
    }

    #[test]
    fn rank_deficient() {
        let a = m(&[&[1, 1], &[2, 2]]);
        match solve(&a, &v(&[1, 2])) {
            Solution::Underdetermined { rank, free, .. } => {
                assert_eq!(rank, 1);
                assert_eq!(free, vec![1]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])), Rational::from(-2));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), Rational::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), Rational::zero());
    }
}

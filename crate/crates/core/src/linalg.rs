//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type QMatrix = Vec<Vec<Q>>;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Rank by fraction-free (Bareiss) elimination on integer-scaled rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let nrows = a.len();
    let mut r = 0usize;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Q>]) -> (QMatrix, Vec<usize>) {
    let mut a: QMatrix = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of `{v : A v = 0}` where `A` has `ncols` columns.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> QMatrix {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Echelon basis of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Q>]) -> QMatrix {
    rref(vectors).0
}

/// Basis of the orthogonal complement of `span(vectors)` in `Q^dim`.
pub fn orthogonal_complement(vectors: &[Vec<Q>], dim: usize) -> QMatrix {
    if vectors.is_empty() {
        return (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
    }
    kernel(vectors, dim)
}

pub fn in_span(v: &[Q], vectors: &[Vec<Q>]) -> bool {
    let mut with = vectors.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(vectors)
}

pub fn transpose(a: &[Vec<Q>], nrows: usize, ncols: usize) -> QMatrix {
    (0..ncols)
        .map(|j| (0..nrows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, ncols: usize) -> QMatrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    (0..inner).fold(Q::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&m(&[&[0, 1, 0], &[-1, -1, 1], &[1, 0, -1]])), 2);
        assert_eq!(rank(&m(&[&[-1, 1], &[1, -1]])), 1);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn kernel_of_cycle_incidence() {
        let ia = m(&[&[-1, 0, 1], &[1, -1, 0], &[0, 1, -1]]);
        let k = kernel(&ia, 3);
        assert_eq!(k, m(&[&[1, 1, 1]]));
    }

    #[test]
    fn complement_dimension() {
        let s = m(&[&[1, -1]]);
        let c = orthogonal_complement(&s, 2);
        assert_eq!(c.len(), 1);
        assert!(dot(&c[0], &s[0]).is_zero());
    }

    proptest! {
        #[test]
        fn bareiss_matches_rref(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 1..5)) {
            let a: QMatrix = rows.iter().map(|r| r.iter().map(|&v| Q::new(BigInt::from(v), BigInt::from(1 + v.abs()))).collect()).collect();
            prop_assert_eq!(rank(&a), rref(&a).1.len());
        }

        #[test]
        fn kernel_vectors_annihilate(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..4)) {
            let a: QMatrix = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let k = kernel(&a, 5);
            prop_assert_eq!(k.len() + rank(&a), 5);
            for v in &k {
                for row in &a {
                    prop_assert!(dot(row, v).is_zero());
                }
            }
        }
    }
}

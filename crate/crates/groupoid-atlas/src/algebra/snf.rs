use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `u * a * v = diag(d)` (padded with zeros).
///
/// `d` holds the nonzero invariant factors: positive, each dividing the
/// next. `u` and `v` are unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// Exhaustive check of the defining identities against the input.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let prod = self.u.mul(a).mul(&self.v);
        let (m, n) = (prod.rows(), prod.cols());
        for i in 0..m {
            for j in 0..n {
                let expect = if i == j && i < self.d.len() { self.d[i].clone() } else { BigInt::zero() };
                if *prod.get(i, j) != expect {
                    return false;
                }
            }
        }
        for w in self.d.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return false;
            }
        }
        if self.d.iter().any(|x| !x.is_positive()) {
            return false;
        }
        self.u.determinant().abs().is_one() && self.v.determinant().abs().is_one()
    }
}

fn pivot(b: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..b.rows() {
        for j in t..b.cols() {
            if b.get(i, j).is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if b.get(i, j).abs() < b.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form over the integers, with transform tracking.
///
/// Pivoting always picks a least-magnitude entry, which keeps the
/// intermediate growth tame; correctness does not depend on the choice.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let lim = m.min(n);
    let mut t = 0;
    while t < lim {
        let Some((pi, pj)) = pivot(&b, t) else { break };
        b.swap_rows(t, pi);
        u.swap_rows(t, pi);
        b.swap_cols(t, pj);
        v.swap_cols(t, pj);
        'reduce: loop {
            for i in t + 1..m {
                if b.get(i, t).is_zero() {
                    continue;
                }
                let q = -(b.get(i, t) / b.get(t, t));
                b.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !b.get(i, t).is_zero() {
                    b.swap_rows(i, t);
                    u.swap_rows(i, t);
                    continue 'reduce;
                }
            }
            for j in t + 1..n {
                if b.get(t, j).is_zero() {
                    continue;
                }
                let q = -(b.get(t, j) / b.get(t, t));
                b.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !b.get(t, j).is_zero() {
                    b.swap_cols(j, t);
                    v.swap_cols(j, t);
                    continue 'reduce;
                }
            }
            // pivot row and column are clear; force the pivot to divide
            // the rest of the block so the invariant chain comes out
            for i in t + 1..m {
                for j in t + 1..n {
                    if !(b.get(i, j) % b.get(t, t)).is_zero() {
                        let one = BigInt::one();
                        b.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        t += 1;
    }
    let mut d = Vec::new();
    for k in 0..lim {
        if b.get(k, k).is_zero() {
            continue;
        }
        if b.get(k, k).is_negative() {
            b.negate_row(k);
            u.negate_row(k);
        }
        d.push(b.get(k, k).clone());
    }
    SmithDecomposition { d, u, v }
}

/// Rank of an integer matrix (over the rationals).
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn snf_of(rows: Vec<Vec<i64>>) -> (IntMatrix, SmithDecomposition) {
        let a = IntMatrix::from_rows(rows);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a), "invalid decomposition for {a:?}");
        (a, s)
    }

    fn factors(rows: Vec<Vec<i64>>) -> Vec<i64> {
        let (_, s) = snf_of(rows);
        s.d.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn frozen_cases() {
        assert_eq!(factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(factors(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(vec![vec![0, 0], vec![3, -1]]), vec![1]);
        assert_eq!(factors(vec![vec![6, 4], vec![4, 6]]), vec![2, 10]);
        assert_eq!(factors(vec![vec![2]]), vec![2]);
        assert_eq!(factors(vec![vec![-5]]), vec![5]);
        assert_eq!(factors(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]), vec![2, 2, 156]);
    }

    #[test]
    fn rectangular_shapes() {
        assert_eq!(factors(vec![vec![1, 2, 3]]), vec![1]);
        assert_eq!(factors(vec![vec![2], vec![4], vec![6]]), vec![2]);
        assert_eq!(factors(vec![vec![2, 0], vec![0, 4], vec![0, 0]]), vec![2, 4]);
    }

    // independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors)
    fn determinant_divisor_factors(a: &IntMatrix) -> Vec<BigInt> {
        fn minors_gcd(a: &IntMatrix, k: usize) -> BigInt {
            fn subsets(start: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for first in start..n {
                    for mut rest in subsets(first + 1, n, k - 1) {
                        let mut s = vec![first];
                        s.append(&mut rest);
                        out.push(s);
                    }
                }
                out
            }
            let mut g = BigInt::zero();
            for rs in subsets(0, a.rows(), k) {
                for cs in subsets(0, a.cols(), k) {
                    let mut sub = IntMatrix::zeros(k, k);
                    for (i, &r) in rs.iter().enumerate() {
                        for (j, &c) in cs.iter().enumerate() {
                            sub.set(i, j, a.get(r, c).clone());
                        }
                    }
                    g = g.gcd(&sub.determinant());
                }
            }
            g
        }
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            let g = minors_gcd(a, k);
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    proptest! {
        #[test]
        fn matches_determinant_divisor_oracle(
            rows in 1usize..4, cols in 1usize..4,
            entries in proptest::collection::vec(-6i64..=6, 16),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
                .collect();
            let a = IntMatrix::from_rows(data);
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
            prop_assert_eq!(s.d.clone(), determinant_divisor_factors(&a));
        }

        #[test]
        fn decomposition_verifies_on_wider_range(
            rows in 1usize..5, cols in 1usize..5,
            entries in proptest::collection::vec(-50i64..=50, 25),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 5 + j]).collect())
                .collect();
            let a = IntMatrix::from_rows(data);
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
        }
    }
}

//! Smith normal form over `Z` and finitely generated abelian groups.
//!
//! Pivoting is deterministic: the pivot is the nonzero entry of smallest
//! absolute value in the active block, ties broken by lowest (row, column).
//! Transforms are therefore reproducible, which makes the coset coordinates
//! built on them canonical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn big_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `left * input * right = diagonal`, with `left`, `right` unimodular and the
/// nonzero diagonal entries positive and forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
}

impl SmithNormalForm {
    pub fn new(input: &[Vec<i64>], cols: usize) -> Self {
        let rows = input.len();
        let mut a: IntMatrix = input.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut u = big_identity(rows);
        let mut u_inv = big_identity(rows);
        let mut v = big_identity(cols);

        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = smallest_nonzero(&a, t, t) else { break };
            swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    add_row_multiple(&mut a, &mut u, &mut u_inv, i, t, &(-q));
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    add_col_multiple(&mut a, &mut v, j, t, &(-q));
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row or column t; move it
                    // to the pivot position and eliminate again
                    let (pi, pj) = smallest_in_cross(&a, t);
                    swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
                    swap_cols(&mut a, &mut v, t, pj);
                    continue;
                }
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    Some((i, _)) => add_row_multiple(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
                for row in u_inv.iter_mut() {
                    row[t] = -row[t].clone();
                }
            }
            t += 1;
        }
        let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
        SmithNormalForm { rows, cols, diagonal, left: u, left_inv: u_inv, right: v }
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The cokernel `Z^rows / image`.
    pub fn cokernel(&self) -> FiniteAbelianGroup {
        let invariant_factors = self.diagonal[..self.rank()]
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        FiniteAbelianGroup { invariant_factors, free_rank: self.rows - self.rank() }
    }

    pub fn apply_left(&self, v: &[i64]) -> Vec<BigInt> {
        apply(&self.left, v)
    }

    pub fn apply_left_inv(&self, v: &[i64]) -> Vec<BigInt> {
        apply(&self.left_inv, v)
    }
}

fn apply(m: &IntMatrix, v: &[i64]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (a, &b)| acc + a * b)).collect()
}

fn smallest_nonzero(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..a.len() {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    u.swap(i, j);
    for row in u_inv.iter_mut() {
        row.swap(i, j);
    }
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
}

/// row_target += k * row_source
fn add_row_multiple(
    a: &mut IntMatrix,
    u: &mut IntMatrix,
    u_inv: &mut IntMatrix,
    target: usize,
    source: usize,
    k: &BigInt,
) {
    for m in [a, u] {
        let src = m[source].clone();
        for (x, s) in m[target].iter_mut().zip(&src) {
            *x += k * s;
        }
    }
    // inverse transform: col_source -= k * col_target
    for row in u_inv.iter_mut() {
        let t = row[target].clone();
        row[source] -= k * t;
    }
}

/// col_target += k * col_source
fn add_col_multiple(a: &mut IntMatrix, v: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for m in [a, v] {
        for row in m.iter_mut() {
            let s = row[source].clone();
            row[target] += k * s;
        }
    }
}

/// A finitely generated abelian group `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^free_rank` in
/// invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariant_factors: Vec::new(), free_rank: 0 }
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup::from_orders(&[n], 0)
    }

    /// Canonical form of `⊕ Z/nᵢ ⊕ Z^free_rank` for arbitrary orders (zeros
    /// count as free summands, ones are dropped).
    pub fn from_orders(orders: &[u64], free_rank: usize) -> Self {
        let zeros = orders.iter().filter(|&&n| n == 0).count();
        let diag: Vec<Vec<i64>> = {
            let n = orders.len();
            (0..n).map(|i| (0..n).map(|j| if i == j { orders[i] as i64 } else { 0 }).collect()).collect()
        };
        let mut g = SmithNormalForm::new(&diag, orders.len()).cokernel();
        debug_assert_eq!(g.free_rank, zeros);
        g.free_rank = zeros + free_rank;
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Order of the group, `None` if it is infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn is_valid(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d >= 2) && self.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn big_to_i64(x: &BigInt, what: &'static str) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_mul_i(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = b[0].len();
        a.iter()
            .map(|row| (0..n).map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, r)| acc + x * &r[j])).collect())
            .collect()
    }

    fn check_decomposition(m: &[Vec<i64>], cols: usize) -> SmithNormalForm {
        let snf = SmithNormalForm::new(m, cols);
        let big: IntMatrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = mat_mul_i(&mat_mul_i(&snf.left, &big), &snf.right);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &snf.diagonal[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry {x} at ({i},{j})");
                }
            }
        }
        assert_eq!(mat_mul_i(&snf.left, &snf.left_inv), big_identity(m.len()));
        let nz: Vec<_> = snf.diagonal.iter().filter(|x| !x.is_zero()).collect();
        for w in nz.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
        assert!(nz.iter().all(|x| x.is_positive()));
        snf
    }

    #[test]
    fn cartan_a2_cokernel_is_z3() {
        let snf = check_decomposition(&[vec![2, -1], vec![-1, 2]], 2);
        assert_eq!(snf.cokernel(), FiniteAbelianGroup::cyclic(3));
    }

    #[test]
    fn free_part_and_zero_matrix() {
        let snf = check_decomposition(&[vec![1], vec![-1], vec![0]], 1);
        assert_eq!(snf.cokernel(), FiniteAbelianGroup { invariant_factors: vec![], free_rank: 2 });
        let z = check_decomposition(&[vec![0, 0]], 2);
        assert_eq!(z.cokernel().free_rank, 1);
    }

    #[test]
    fn canonical_from_orders() {
        assert_eq!(FiniteAbelianGroup::from_orders(&[2, 3], 0), FiniteAbelianGroup::cyclic(6));
        assert_eq!(
            FiniteAbelianGroup::from_orders(&[4, 2, 1, 0], 1),
            FiniteAbelianGroup { invariant_factors: vec![2, 4], free_rank: 2 }
        );
        assert_eq!(FiniteAbelianGroup::from_orders(&[2, 3], 1).to_string(), "Z/6 + Z");
    }

    proptest! {
        #[test]
        fn decomposition_holds(m in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 1..=4)) {
            check_decomposition(&m, 3);
        }

        #[test]
        fn invariant_factors_ignore_row_and_column_order(
            m in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 3),
            rp in Just(vec![2usize, 0, 1]),
            cp in Just(vec![1usize, 2, 0]),
        ) {
            let permuted: Vec<Vec<i64>> = rp.iter().map(|&i| cp.iter().map(|&j| m[i][j]).collect()).collect();
            let a = SmithNormalForm::new(&m, 3).cokernel();
            let b = SmithNormalForm::new(&permuted, 3).cokernel();
            prop_assert!(a.is_valid());
            prop_assert_eq!(a, b);
        }
    }
}

//! Cartan matrices: the named finite types, finite-type validation and the
//! abstract root system a Cartan matrix generates.
//!
//! Convention throughout: `a[i][j] = ⟨αᵢ, α̌ⱼ⟩`. With Bourbaki numbering this
//! puts the `-2` of `B_n` at `a[n-2][n-1]` (the last simple root is short)
//! and the `-3` of `G₂` at `a[1][0]` (the second simple root is long).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_positive_definite, rat, rat_frac, Rational};

pub type CartanMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidSpec(format!("no Cartan type {family:?}{rank}")));
        }
        Ok(CartanType { family, rank })
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unrecognized Cartan type {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// Connected components of the Dynkin diagram, each sorted, ordered by their
/// smallest node.
pub fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Squared root lengths `(αᵢ, αᵢ)` of the simple roots for the unique
/// symmetrization in which the long roots of every component have length 2.
/// `None` if the matrix is not symmetrizable.
pub fn root_lengths(a: &[Vec<i64>]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut len: Vec<Option<Rational>> = vec![None; n];
    for comp in components(a) {
        len[comp[0]] = Some(rat(1));
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let li = len[i].clone().unwrap();
            for &j in &comp {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // symmetry of (αᵢ,αⱼ) = a_ij (αⱼ,αⱼ)/2 forces lⱼ = lᵢ a_ji / a_ij
                let lj = &li * rat_frac(a[j][i], a[i][j]);
                match &len[j] {
                    Some(existing) if *existing != lj => return None,
                    Some(_) => {}
                    None => {
                        len[j] = Some(lj);
                        queue.push_back(j);
                    }
                }
            }
        }
        let max = comp.iter().map(|&i| len[i].clone().unwrap()).max().unwrap();
        for &i in &comp {
            len[i] = Some(len[i].take().unwrap() * rat(2) / &max);
        }
    }
    len.into_iter().collect()
}

/// Symmetrized Gram matrix `(αᵢ, αⱼ) = a_ij (αⱼ,αⱼ)/2`.
pub fn symmetrized(a: &[Vec<i64>], lengths: &[Rational]) -> Vec<Vec<Rational>> {
    (0..a.len()).map(|i| (0..a.len()).map(|j| rat(a[i][j]) * &lengths[j] / rat(2)).collect()).collect()
}

/// Checks that `a` is a generalized Cartan matrix of finite type.
pub fn validate_finite_type(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    for i in 0..n {
        if a[i].len() != n {
            return Err(Error::NotFiniteType("matrix is not square".into()));
        }
        if a[i][i] != 2 {
            return Err(Error::NotFiniteType(format!("diagonal entry {i} is {}", a[i][i])));
        }
        for j in 0..n {
            if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                return Err(Error::NotFiniteType(format!("entries ({i},{j}) and ({j},{i}) violate the sign pattern")));
            }
        }
    }
    let lengths = root_lengths(a).ok_or_else(|| Error::NotFiniteType("matrix is not symmetrizable".into()))?;
    if !is_positive_definite(&symmetrized(a, &lengths)) {
        return Err(Error::NotFiniteType("symmetrized matrix is not positive definite".into()));
    }
    Ok(())
}

/// Identifies the finite type of a connected Cartan matrix, up to relabeling.
pub fn classify_component(a: &[Vec<i64>], comp: &[usize]) -> Option<CartanType> {
    let n = comp.len();
    let sub: CartanMatrix = comp.iter().map(|&i| comp.iter().map(|&j| a[i][j]).collect()).collect();
    let mut edges = 0;
    let mut max_mult = 1;
    let mut degrees = vec![0; n];
    for i in 0..n {
        for j in i + 1..n {
            if sub[i][j] != 0 {
                edges += 1;
                degrees[i] += 1;
                degrees[j] += 1;
                max_mult = max_mult.max(sub[i][j] * sub[j][i]);
            }
        }
    }
    if edges != n - 1 {
        return None;
    }
    let branch = degrees.iter().any(|&d| d >= 3);
    let family = match (max_mult, branch) {
        (1, false) => Family::A,
        (1, true) if n >= 6 && is_e_shape(&sub) => Family::E,
        (1, true) => Family::D,
        (3, _) => Family::G,
        (2, _) if n == 4 && degrees.iter().all(|&d| d <= 2) && is_f4(&sub) => Family::F,
        (2, _) => {
            // the double bond sits at an end of the chain; B if the end node
            // is the short root
            let lengths = root_lengths(&sub)?;
            let end = (0..n).find(|&i| degrees[i] == 1 && (0..n).any(|j| j != i && sub[i][j] * sub[j][i] == 2));
            match end {
                Some(e) if n > 1 => {
                    let other = (0..n).find(|&j| j != e && sub[e][j] != 0)?;
                    if lengths[e] < lengths[other] {
                        Family::B
                    } else {
                        Family::C
                    }
                }
                _ => return None,
            }
        }
        _ => return None,
    };
    let family = if family == Family::C && n == 2 { Family::B } else { family };
    CartanType::new(family, n).ok()
}

fn is_e_shape(sub: &[Vec<i64>]) -> bool {
    // E: branch node with arms of lengths 1, 2, n-4
    let n = sub.len();
    let Some(center) = (0..n).find(|&i| (0..n).filter(|&j| j != i && sub[i][j] != 0).count() == 3) else {
        return false;
    };
    let mut arms: Vec<usize> = (0..n)
        .filter(|&j| j != center && sub[center][j] != 0)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            loop {
                let next = (0..n).find(|&k| k != prev && k != cur && sub[cur][k] != 0);
                match next {
                    Some(k) => {
                        prev = cur;
                        cur = k;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    arms[0] == 1 && arms[1] == 2
}

fn is_f4(sub: &[Vec<i64>]) -> bool {
    // the double bond is the middle edge of the chain
    let n = sub.len();
    (0..n).any(|i| {
        (0..n).any(|j| {
            i != j
                && sub[i][j] * sub[j][i] == 2
                && (0..n).filter(|&k| sub[i][k] != 0 && k != i).count() == 2
                && (0..n).filter(|&k| sub[j][k] != 0 && k != j).count() == 2
        })
    })
}

/// A root of the abstract root system of a Cartan matrix: its coordinates in
/// the simple roots and the coordinates of its coroot in the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbstractRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl AbstractRoot {
    pub fn height(&self) -> i64 {
        self.root.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.root.iter().all(|&c| c >= 0)
    }
}

const MAX_ROOTS: usize = 100_000;

/// All roots generated from the simple roots by simple reflections, in a
/// deterministic order: positive roots by increasing height (ties broken by
/// reverse-lexicographic coordinates, so simple roots come first in index
/// order), then the negatives in the same order.
pub fn generate_roots(a: &[Vec<i64>]) -> Result<Vec<AbstractRoot>> {
    let n = a.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let e: Vec<i64> = (0..n).map(|k| (k == i) as i64).collect();
        seen.insert(e.clone(), e.clone());
        queue.push_back((e.clone(), e));
    }
    while let Some((root, coroot)) = queue.pop_front() {
        for j in 0..n {
            // s_j α = α - ⟨α, α̌ⱼ⟩ αⱼ ; s_j α̌ = α̌ - ⟨αⱼ, α̌⟩ α̌ⱼ
            let p: i64 = (0..n).map(|i| root[i] * a[i][j]).sum();
            let q: i64 = (0..n).map(|i| a[j][i] * coroot[i]).sum();
            let mut r = root.clone();
            r[j] -= p;
            let mut c = coroot.clone();
            c[j] -= q;
            match seen.get(&r) {
                Some(existing) if *existing != c => {
                    return Err(Error::NotReflectionClosed(format!("root {r:?} acquired two coroots")));
                }
                Some(_) => {}
                None => {
                    if seen.len() >= MAX_ROOTS {
                        return Err(Error::NotFiniteType("root system is infinite".into()));
                    }
                    seen.insert(r.clone(), c.clone());
                    queue.push_back((r, c));
                }
            }
        }
    }
    let mut positive: Vec<AbstractRoot> = seen
        .into_iter()
        .map(|(root, coroot)| AbstractRoot { root, coroot })
        .filter(AbstractRoot::is_positive)
        .collect();
    positive.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| y.root.cmp(&x.root)));
    let negative: Vec<AbstractRoot> = positive
        .iter()
        .map(|r| AbstractRoot {
            root: r.root.iter().map(|c| -c).collect(),
            coroot: r.coroot.iter().map(|c| -c).collect(),
        })
        .collect();
    positive.extend(negative);
    Ok(positive)
}

/// Number of positive roots per finite type.
pub fn positive_root_count(t: CartanType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => [36, 63, 120][n - 6],
        Family::F => 24,
        Family::G => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_small_types() -> Vec<CartanType> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(CartanType::new(Family::A, n).unwrap());
        }
        for n in 2..=6 {
            v.push(CartanType::new(Family::B, n).unwrap());
            v.push(CartanType::new(Family::C, n).unwrap());
        }
        for n in 4..=7 {
            v.push(CartanType::new(Family::D, n).unwrap());
        }
        for n in 6..=8 {
            v.push(CartanType::new(Family::E, n).unwrap());
        }
        v.push(CartanType::new(Family::F, 4).unwrap());
        v.push(CartanType::new(Family::G, 2).unwrap());
        v
    }

    #[test]
    fn named_types_are_finite_with_expected_root_counts() {
        for t in all_small_types() {
            let a = t.cartan_matrix();
            validate_finite_type(&a).unwrap();
            let roots = generate_roots(&a).unwrap();
            assert_eq!(roots.len(), 2 * positive_root_count(t), "{t}");
        }
    }

    #[test]
    fn classification_round_trips() {
        for t in all_small_types() {
            let a = t.cartan_matrix();
            let comps = components(&a);
            assert_eq!(comps.len(), 1);
            let expected = if t.family == Family::C && t.rank == 2 { "B2".to_string() } else { t.to_string() };
            assert_eq!(classify_component(&a, &comps[0]).unwrap().to_string(), expected);
        }
    }

    #[test]
    fn affine_and_indefinite_rejected() {
        // affine A1
        assert!(validate_finite_type(&[vec![2, -2], vec![-2, 2]]).is_err());
        // hyperbolic rank 2
        assert!(validate_finite_type(&[vec![2, -1], vec![-4, 2]]).is_err());
        // affine A2 (triangle)
        assert!(validate_finite_type(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).is_err());
        // sign pattern
        assert!(validate_finite_type(&[vec![2, 1], vec![1, 2]]).is_err());
        assert!(validate_finite_type(&[vec![2, 0], vec![-1, 2]]).is_err());
    }

    #[test]
    fn root_lengths_long_is_two() {
        let b2 = CartanType::new(Family::B, 2).unwrap().cartan_matrix();
        assert_eq!(root_lengths(&b2).unwrap(), vec![rat(2), rat(1)]);
        let g2 = CartanType::new(Family::G, 2).unwrap().cartan_matrix();
        assert_eq!(root_lengths(&g2).unwrap(), vec![rat_frac(2, 3), rat(2)]);
    }

    #[test]
    fn parse_names() {
        assert_eq!("A2".parse::<CartanType>().unwrap().cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert!("E9".parse::<CartanType>().is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert!("B1".parse::<CartanType>().is_err());
    }
}

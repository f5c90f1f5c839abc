//! Root data `(X*, X_*, Δ, Δ̌)`, their Weyl group actions, the dominance order
//! on coweights, the invariant form and Langlands duality.
//!
//! Characters and cocharacters are both stored as [`LatticeVector`]s in fixed
//! bases, paired by the dot product. Roots live in `X*`, coroots in `X_*`,
//! index-aligned.

pub mod cartan;
mod form;
mod spec;

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use cartan::{CartanMatrix, CartanType, Family};
pub use form::{iota, iota_order_check, root_order_lt, InvariantForm, RationalVector};
pub use spec::{CustomSpec, DatumSpec, NamedSpec};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::linalg::IntInverse;
use crate::smith::{big_to_i64, FiniteAbelianGroup, SmithNormalForm};

/// Upper bound on the size of any enumerated Weyl orbit.
pub const MAX_ORBIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    #[serde(rename = "sc")]
    SimplyConnected,
    #[serde(rename = "ad")]
    Adjoint,
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" => Ok(Isogeny::SimplyConnected),
            "ad" | "adjoint" => Ok(Isogeny::Adjoint),
            _ => Err(Error::InvalidSpec(format!("unknown isogeny {s:?}"))),
        }
    }
}

/// A reduced root datum of finite type with a chosen set of simple roots.
#[derive(Debug, Clone)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<LatticeVector>,
    coroots: Vec<LatticeVector>,
    simple: Vec<usize>,
    two_rho: LatticeVector,
    two_rho_check: LatticeVector,

    cartan: CartanMatrix,
    root_coords: Vec<Vec<i64>>,
    coroot_coords: Vec<Vec<i64>>,
    positive: Vec<usize>,
    cartan_inv: IntInverse,
    cartan_inv_t: IntInverse,
    simple_roots_inv: Option<IntInverse>,
    coroot_snf: SmithNormalForm,
    longest_word: Vec<usize>,
}

/// Structural equality: same rank, same root and coroot lists in the same
/// order, same simple indices. Everything else is derived from these.
impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple == other.simple
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates and builds a root datum from explicit roots and coroots.
    pub fn from_parts(
        rank: usize,
        roots: Vec<LatticeVector>,
        coroots: Vec<LatticeVector>,
        simple: Vec<usize>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpec("rank must be positive".into()));
        }
        if roots.len() != coroots.len() {
            return Err(Error::InvalidSpec(format!("{} roots but {} coroots", roots.len(), coroots.len())));
        }
        for v in roots.iter().chain(&coroots) {
            if v.len() != rank {
                return Err(Error::RankMismatch { vector: v.clone(), found: v.len(), expected: rank });
            }
        }
        for (index, (a, c)) in roots.iter().zip(&coroots).enumerate() {
            let value = a.pair(c);
            if value != 2 {
                return Err(Error::BadPairing { index, value });
            }
        }
        let mut seen = HashSet::new();
        for &s in &simple {
            if s >= roots.len() || !seen.insert(s) {
                return Err(Error::InvalidSpec(format!("bad simple root index {s}")));
            }
        }
        if !roots.is_empty() && simple.is_empty() {
            return Err(Error::InvalidSpec("roots given but no simple roots".into()));
        }

        let cartan: CartanMatrix =
            simple.iter().map(|&i| simple.iter().map(|&j| roots[i].pair(&coroots[j])).collect()).collect();
        cartan::validate_finite_type(&cartan)?;
        let generated = cartan::generate_roots(&cartan)?;

        let realize = |coeffs: &[i64], basis: &[&LatticeVector]| {
            basis.iter().zip(coeffs).fold(LatticeVector::zero(rank), |acc, (b, &c)| acc.add_scaled(c, b))
        };
        let simple_roots: Vec<&LatticeVector> = simple.iter().map(|&i| &roots[i]).collect();
        let simple_coroots: Vec<&LatticeVector> = simple.iter().map(|&i| &coroots[i]).collect();
        let mut expected: HashMap<LatticeVector, (LatticeVector, &cartan::AbstractRoot)> = HashMap::new();
        for r in &generated {
            expected.insert(realize(&r.root, &simple_roots), (realize(&r.coroot, &simple_coroots), r));
        }
        if expected.len() != generated.len() {
            return Err(Error::InvalidSpec("simple roots are linearly dependent".into()));
        }
        if roots.len() != generated.len() {
            return Err(Error::NotReflectionClosed(format!(
                "{} roots given, the simple roots generate {}",
                roots.len(),
                generated.len()
            )));
        }
        let mut root_coords = Vec::with_capacity(roots.len());
        let mut coroot_coords = Vec::with_capacity(roots.len());
        let mut used = HashSet::new();
        for (a, c) in roots.iter().zip(&coroots) {
            match expected.get(a) {
                Some((exp_c, abs)) if exp_c == c && used.insert(a.clone()) => {
                    root_coords.push(abs.root.clone());
                    coroot_coords.push(abs.coroot.clone());
                }
                Some((exp_c, _)) if exp_c != c => {
                    return Err(Error::NotReflectionClosed(format!("root {a} has coroot {c}, expected {exp_c}")))
                }
                Some(_) => return Err(Error::InvalidSpec(format!("root {a} listed twice"))),
                None => {
                    return Err(Error::NotReflectionClosed(format!("root {a} is not generated by the simple roots")))
                }
            }
        }
        let positive: Vec<usize> = (0..roots.len()).filter(|&i| root_coords[i].iter().all(|&c| c >= 0)).collect();
        let two_rho = positive.iter().fold(LatticeVector::zero(rank), |acc, &i| &acc + &roots[i]);
        let two_rho_check = positive.iter().fold(LatticeVector::zero(rank), |acc, &i| &acc + &coroots[i]);

        let r = simple.len();
        let (cartan_inv, cartan_inv_t) = if r == 0 {
            let empty = IntInverse { adj: Vec::new(), det: 1 };
            (empty.clone(), empty)
        } else {
            let t: CartanMatrix = (0..r).map(|i| (0..r).map(|j| cartan[j][i]).collect()).collect();
            (
                IntInverse::new(&cartan).expect("finite-type Cartan matrix is invertible"),
                IntInverse::new(&t).expect("finite-type Cartan matrix is invertible"),
            )
        };
        let simple_roots_inv = if r == rank {
            let m: Vec<Vec<i64>> = simple.iter().map(|&i| roots[i].coords().to_vec()).collect();
            IntInverse::new(&m)
        } else {
            None
        };
        // columns are the simple coroots
        let coroot_matrix: Vec<Vec<i64>> = (0..rank).map(|k| simple.iter().map(|&j| coroots[j][k]).collect()).collect();
        let coroot_snf = SmithNormalForm::new(&coroot_matrix, r);

        let mut datum = RootDatum {
            rank,
            roots,
            coroots,
            simple,
            two_rho,
            two_rho_check,
            cartan,
            root_coords,
            coroot_coords,
            positive,
            cartan_inv,
            cartan_inv_t,
            simple_roots_inv,
            coroot_snf,
            longest_word: Vec::new(),
        };
        let (_, word) = datum.dominant_representative(&-&datum.two_rho_check);
        datum.longest_word = word;
        Ok(datum)
    }

    /// The standard realization of a named type: for the simply connected
    /// form `X_*` is the coroot lattice with the simple coroots as basis; for
    /// the adjoint form `X*` is the root lattice with the simple roots as
    /// basis.
    pub fn from_cartan_type(t: CartanType, isogeny: Isogeny) -> Self {
        let a = t.cartan_matrix();
        let n = t.rank;
        let generated = cartan::generate_roots(&a).expect("named types are finite");
        let (roots, coroots) = generated
            .iter()
            .map(|r| {
                let (root, coroot): (Vec<i64>, Vec<i64>) = match isogeny {
                    Isogeny::SimplyConnected => {
                        ((0..n).map(|j| (0..n).map(|i| r.root[i] * a[i][j]).sum()).collect(), r.coroot.clone())
                    }
                    Isogeny::Adjoint => {
                        (r.root.clone(), (0..n).map(|i| (0..n).map(|j| a[i][j] * r.coroot[j]).sum()).collect())
                    }
                };
                (LatticeVector::new(root), LatticeVector::new(coroot))
            })
            .unzip();
        RootDatum::from_parts(n, roots, coroots, (0..n).collect()).expect("named types are valid")
    }

    /// `GL_n`: `X* = X_* = Zⁿ`, roots and coroots `eᵢ − eⱼ`.
    pub fn general_linear(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("GL_0 is not supported".into()));
        }
        if n == 1 {
            return RootDatum::from_parts(1, Vec::new(), Vec::new(), Vec::new());
        }
        let a = CartanType::new(Family::A, n - 1)?.cartan_matrix();
        let simple: Vec<LatticeVector> = (0..n - 1)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                LatticeVector::new(v)
            })
            .collect();
        let roots: Vec<LatticeVector> = cartan::generate_roots(&a)?
            .iter()
            .map(|r| simple.iter().zip(&r.root).fold(LatticeVector::zero(n), |acc, (s, &c)| acc.add_scaled(c, s)))
            .collect();
        RootDatum::from_parts(n, roots.clone(), roots, (0..n - 1).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.simple.len() == self.rank
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[LatticeVector] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn two_rho(&self) -> &LatticeVector {
        &self.two_rho
    }

    pub fn two_rho_check(&self) -> &LatticeVector {
        &self.two_rho_check
    }

    pub fn cartan_matrix(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> &LatticeVector {
        &self.roots[self.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &LatticeVector {
        &self.coroots[self.simple[i]]
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &LatticeVector> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    pub fn positive_coroots(&self) -> impl Iterator<Item = &LatticeVector> {
        self.positive.iter().map(|&i| &self.coroots[i])
    }

    /// Coordinates of the `i`-th root in the simple roots.
    pub fn root_simple_coords(&self, i: usize) -> &[i64] {
        &self.root_coords[i]
    }

    /// Coordinates of the `i`-th coroot in the simple coroots.
    pub fn coroot_simple_coords(&self, i: usize) -> &[i64] {
        &self.coroot_coords[i]
    }

    /// Simple components of the Dynkin diagram, as lists of simple indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        cartan::components(&self.cartan)
    }

    /// Finite types of the simple components, in component order.
    pub fn component_types(&self) -> Vec<CartanType> {
        self.components()
            .iter()
            .map(|c| cartan::classify_component(&self.cartan, c).expect("validated finite type"))
            .collect()
    }

    pub fn check_coweight(&self, v: &LatticeVector) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch { vector: v.clone(), found: v.len(), expected: self.rank });
        }
        Ok(())
    }

    /// `(⟨αᵢ, ν⟩)ᵢ` over the simple roots: the coordinates of the image of
    /// `ν` in the fundamental-coweight basis.
    pub fn simple_pairings(&self, nu: &LatticeVector) -> Vec<i64> {
        self.simple.iter().map(|&i| self.roots[i].pair(nu)).collect()
    }

    /// Inverse of [`Self::simple_pairings`] for semisimple data.
    pub fn from_simple_pairings(&self, c: &[i64]) -> Result<LatticeVector> {
        let inv = self.simple_roots_inv.as_ref().ok_or(Error::NotSemisimple)?;
        if c.len() != self.rank {
            return Err(Error::NotInLattice(c.to_vec()));
        }
        inv.solve_integral(c).map(LatticeVector::new).ok_or_else(|| Error::NotInLattice(c.to_vec()))
    }

    pub fn is_dominant(&self, nu: &LatticeVector) -> bool {
        self.simple.iter().all(|&i| self.roots[i].pair(nu) >= 0)
    }

    /// All dominant coweights with `⟨2ρ, λ⟩ ≤ max_height2`, sorted by
    /// height then coordinates. Only semisimple data have finitely many.
    pub fn dominant_coweights(&self, max_height2: i64) -> Result<Vec<LatticeVector>> {
        if !self.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        // ⟨2ρ, ω̌ᵢ⟩ is the coefficient of αᵢ in 2ρ
        let weights = self.root_coordinates(&self.two_rho).expect("2ρ lies in the root lattice");
        let mut out = Vec::new();
        let mut labels = vec![0i64; self.rank];
        fn rec(
            d: &RootDatum,
            k: usize,
            budget: i64,
            weights: &[i64],
            labels: &mut Vec<i64>,
            out: &mut Vec<LatticeVector>,
        ) {
            if k == labels.len() {
                if let Ok(v) = d.from_simple_pairings(labels) {
                    out.push(v);
                }
                return;
            }
            let mut c = 0;
            while c * weights[k] <= budget {
                labels[k] = c;
                rec(d, k + 1, budget - c * weights[k], weights, labels, out);
                c += 1;
            }
            labels[k] = 0;
        }
        if max_height2 >= 0 {
            rec(self, 0, max_height2, &weights, &mut labels, &mut out);
        }
        out.sort_by(|a, b| self.height2(a).cmp(&self.height2(b)).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// `⟨2ρ, λ⟩`, twice the height of `λ`.
    pub fn height2(&self, lambda: &LatticeVector) -> i64 {
        self.two_rho.pair(lambda)
    }

    /// `s_i ν = ν − ⟨αᵢ, ν⟩ α̌ᵢ` on `X_*`.
    pub fn reflect_coweight(&self, i: usize, nu: &LatticeVector) -> LatticeVector {
        let k = self.simple_root(i).pair(nu);
        nu.add_scaled(-k, self.simple_coroot(i))
    }

    /// `s_i x = x − ⟨x, α̌ᵢ⟩ αᵢ` on `X*`.
    pub fn reflect_weight(&self, i: usize, x: &LatticeVector) -> LatticeVector {
        let k = x.pair(self.simple_coroot(i));
        x.add_scaled(-k, self.simple_root(i))
    }

    /// The matrix of `s_i` acting on `X*` (column convention: `M x`).
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let a = self.simple_root(i);
        let c = self.simple_coroot(i);
        (0..self.rank).map(|k| (0..self.rank).map(|l| (k == l) as i64 - a[k] * c[l]).collect()).collect()
    }

    /// Applies a word of simple reflections to a coweight, first letter first.
    pub fn apply_word(&self, word: &[usize], nu: &LatticeVector) -> LatticeVector {
        word.iter().fold(nu.clone(), |v, &i| self.reflect_coweight(i, &v))
    }

    /// Simple-coroot coordinates of `v`, if `v` lies in the coroot lattice.
    pub fn coroot_coordinates(&self, v: &LatticeVector) -> Option<Vec<i64>> {
        if self.simple.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        let x = self.cartan_inv.solve_integral(&self.simple_pairings(v))?;
        let back = self
            .simple
            .iter()
            .zip(&x)
            .fold(LatticeVector::zero(self.rank), |acc, (&j, &c)| acc.add_scaled(c, &self.coroots[j]));
        (back == *v).then_some(x)
    }

    /// Simple-root coordinates of `x ∈ X*`, if `x` lies in the root lattice.
    pub fn root_coordinates(&self, x: &LatticeVector) -> Option<Vec<i64>> {
        if self.simple.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        let q: Vec<i64> = self.simple.iter().map(|&j| x.pair(&self.coroots[j])).collect();
        let y = self.cartan_inv_t.solve_integral(&q)?;
        let back = self
            .simple
            .iter()
            .zip(&y)
            .fold(LatticeVector::zero(self.rank), |acc, (&i, &c)| acc.add_scaled(c, &self.roots[i]));
        (back == *x).then_some(y)
    }

    pub(crate) fn cartan_inverse(&self) -> &IntInverse {
        &self.cartan_inv
    }

    pub(crate) fn cartan_inverse_transpose(&self) -> &IntInverse {
        &self.cartan_inv_t
    }

    /// `μ ≤ λ`: `λ − μ` is a nonnegative integer combination of positive
    /// coroots. False (not an error) when `λ − μ` leaves the coroot lattice.
    pub fn dominance_leq(&self, mu: &LatticeVector, lambda: &LatticeVector) -> bool {
        self.coroot_coordinates(&(lambda - mu)).is_some_and(|x| x.iter().all(|&c| c >= 0))
    }

    pub fn dominance_lt(&self, mu: &LatticeVector, lambda: &LatticeVector) -> bool {
        mu != lambda && self.dominance_leq(mu, lambda)
    }

    /// The dominant element of `W·ν`, and a reduced word `[i₁, …, i_k]` with
    /// `s_{i_k} ⋯ s_{i₁} ν` dominant.
    pub fn dominant_representative(&self, nu: &LatticeVector) -> (LatticeVector, Vec<usize>) {
        let mut v = nu.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.simple.len()).find(|&i| self.simple_root(i).pair(&v) < 0) {
            v = self.reflect_coweight(i, &v);
            word.push(i);
        }
        (v, word)
    }

    pub fn dominant_rep(&self, nu: &LatticeVector) -> LatticeVector {
        self.dominant_representative(nu).0
    }

    /// A reduced word for the longest element `w₀`.
    pub fn longest_word(&self) -> &[usize] {
        &self.longest_word
    }

    /// `w₀ ν`.
    pub fn w0(&self, nu: &LatticeVector) -> LatticeVector {
        self.apply_word(&self.longest_word, nu)
    }

    /// The Weyl orbit of `ν` on `X_*`, each element paired with its BFS
    /// distance from `ν` in the simple-reflection graph. For regular `ν`
    /// that distance is the length of the unique `w` with `w ν` equal to the
    /// element.
    pub fn weyl_orbit(&self, nu: &LatticeVector) -> Result<Vec<(LatticeVector, usize)>> {
        let mut seen = HashSet::from([nu.clone()]);
        let mut out = vec![(nu.clone(), 0)];
        let mut queue = VecDeque::from([(nu.clone(), 0usize)]);
        while let Some((v, d)) = queue.pop_front() {
            for i in 0..self.simple.len() {
                let w = self.reflect_coweight(i, &v);
                if seen.insert(w.clone()) {
                    if seen.len() > MAX_ORBIT {
                        return Err(Error::OrbitTooLarge(MAX_ORBIT));
                    }
                    out.push((w.clone(), d + 1));
                    queue.push_back((w, d + 1));
                }
            }
        }
        Ok(out)
    }

    /// `|W|`, as the orbit size of the regular coweight `2ρ̌`.
    pub fn weyl_group_order(&self) -> Result<usize> {
        Ok(self.weyl_orbit(&self.two_rho_check)?.len())
    }

    /// The Langlands dual datum: characters and cocharacters, roots and
    /// coroots swap roles. The simple indices are unchanged.
    pub fn dual(&self) -> RootDatum {
        RootDatum::from_parts(self.rank, self.coroots.clone(), self.roots.clone(), self.simple.clone())
            .expect("the dual of a valid datum is valid")
    }

    /// `π₁ = X_* / Z·Δ̌`.
    pub fn pi1(&self) -> FiniteAbelianGroup {
        self.coroot_snf.cokernel()
    }

    pub(crate) fn coroot_snf(&self) -> &SmithNormalForm {
        &self.coroot_snf
    }

    /// Root-lattice index data for the coset computations of the component
    /// group: Smith coordinates of `ν`.
    pub(crate) fn smith_coordinates(&self, nu: &LatticeVector) -> Result<Vec<i64>> {
        self.coroot_snf.apply_left(nu.coords()).iter().map(|x| big_to_i64(x, "Smith coordinates")).collect()
    }

    /// Smith diagonal as machine integers.
    pub(crate) fn smith_diagonal(&self) -> Vec<i64> {
        self.coroot_snf.diagonal.iter().map(|d| d.to_i64().expect("small invariant factor")).collect()
    }

    /// Rank of the central torus `Z(G)⁰`.
    pub fn central_torus_rank(&self) -> usize {
        self.rank - self.simple.len()
    }

    /// The datum with roots (and aligned coroots) sorted lexicographically
    /// and simple indices remapped; two data describe the same set of
    /// (root, coroot, simple) in the same coordinates iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> RootDatum {
        let mut order: Vec<usize> = (0..self.roots.len()).collect();
        order.sort_by(|&a, &b| self.roots[a].cmp(&self.roots[b]));
        let mut position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut simple: Vec<usize> = self.simple.iter().map(|&s| position[s]).collect();
        simple.sort_unstable();
        RootDatum::from_parts(
            self.rank,
            order.iter().map(|&i| self.roots[i].clone()).collect(),
            order.iter().map(|&i| self.coroots[i].clone()).collect(),
            simple,
        )
        .expect("reordering preserves validity")
    }

    /// Isomorphism of root data compatible with the choice of simple roots.
    ///
    /// For semisimple data this is decided completely: the datum is the pair
    /// (Cartan matrix, image of `X_*` in the coweight lattice), compared up
    /// to a permutation of the simple roots. Data with a central torus are
    /// only recognized when their canonical forms agree coordinate-wise.
    pub fn is_isomorphic(&self, other: &RootDatum) -> bool {
        if self.rank != other.rank || self.roots.len() != other.roots.len() || self.simple.len() != other.simple.len() {
            return false;
        }
        if self.canonical() == other.canonical() {
            return true;
        }
        if !self.is_semisimple() || !other.is_semisimple() {
            return false;
        }
        let r = self.simple.len();
        let lattice = |d: &RootDatum| -> Vec<Vec<i64>> {
            (0..d.rank).map(|k| d.simple_pairings(&LatticeVector::unit(d.rank, k))).collect()
        };
        let gens_a = lattice(self);
        let gens_b = lattice(other);
        let basis_b: Vec<Vec<i64>> = (0..r).map(|i| gens_b.iter().map(|g| g[i]).collect()).collect();
        let Some(inv_b) = IntInverse::new(&basis_b) else { return false };
        let basis_a: Vec<Vec<i64>> = (0..r).map(|i| gens_a.iter().map(|g| g[i]).collect()).collect();
        let Some(inv_a) = IntInverse::new(&basis_a) else { return false };

        let mut perm = vec![usize::MAX; r];
        let mut used = vec![false; r];
        fn search(
            k: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            a: &CartanMatrix,
            b: &CartanMatrix,
            check: &dyn Fn(&[usize]) -> bool,
        ) -> bool {
            let r = a.len();
            if k == r {
                return check(perm);
            }
            for t in 0..r {
                if used[t] || a[k][k] != b[t][t] {
                    continue;
                }
                if (0..k).any(|j| a[k][j] != b[t][perm[j]] || a[j][k] != b[perm[j]][t]) {
                    continue;
                }
                perm[k] = t;
                used[t] = true;
                if search(k + 1, perm, used, a, b, check) {
                    return true;
                }
                used[t] = false;
            }
            false
        }
        let check = |perm: &[usize]| {
            let permute = |g: &[i64]| {
                let mut out = vec![0; r];
                for i in 0..r {
                    out[perm[i]] = g[i];
                }
                out
            };
            let unpermute = |g: &[i64]| (0..r).map(|i| g[perm[i]]).collect::<Vec<_>>();
            gens_a.iter().all(|g| inv_b.solve_integral(&permute(g)).is_some())
                && gens_b.iter().all(|g| inv_a.solve_integral(&unpermute(g)).is_some())
        };
        search(0, &mut perm, &mut used, &self.cartan, &other.cartan, &check)
    }

    pub fn to_spec(&self) -> CustomSpec {
        CustomSpec {
            coroots: self.coroots.iter().map(|c| c.coords().to_vec()).collect(),
            rank: Some(self.rank),
            roots: self.roots.iter().map(|c| c.coords().to_vec()).collect(),
            simple: self.simple.clone(),
        }
    }
}

//! Decomposition of tensor products of dual-group irreducibles, i.e. of
//! convolution products of IC sheaves on the affine Grassmannian.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmannian::{component_of, OrbitLabel};
use crate::lattice::LatticeVector;
use crate::multiplicities::{freudenthal_table, weyl_dimension, KostantEngine, MultiplicityTable};
use crate::root_datum::RootDatum;

/// `L(λ) ⊗ L(μ) = ⊕ L(η)^{N^η}`; entries are keyed by dominant `η` and are
/// all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTable {
    pub factors: (OrbitLabel, OrbitLabel),
    pub entries: BTreeMap<LatticeVector, u64>,
}

impl TensorTable {
    pub fn get(&self, eta: &LatticeVector) -> u64 {
        self.entries.get(eta).copied().unwrap_or(0)
    }

    /// `λ + μ`.
    pub fn top(&self) -> LatticeVector {
        self.factors.0.coweight() + self.factors.1.coweight()
    }

    /// `Σ_η N^η dim L(η)`.
    pub fn dimension(&self, d: &RootDatum) -> Result<u64> {
        let mut total: u64 = 0;
        for (eta, &n) in &self.entries {
            let dim = weyl_dimension(d, &OrbitLabel::new(d, eta.clone())?)?;
            total = n.checked_mul(dim).and_then(|x| total.checked_add(x)).ok_or(Error::Overflow("tensor dimension"))?;
        }
        Ok(total)
    }
}

fn finish(factors: (OrbitLabel, OrbitLabel), signed: BTreeMap<LatticeVector, i128>) -> Result<TensorTable> {
    let mut entries = BTreeMap::new();
    for (eta, n) in signed {
        if n < 0 {
            return Err(Error::NegativeMultiplicity { at: eta, value: n });
        }
        if n > 0 {
            entries.insert(eta, u64::try_from(n).map_err(|_| Error::Overflow("tensor multiplicity"))?);
        }
    }
    Ok(TensorTable { factors, entries })
}

/// Klimyk's formula: `N^η = Σ_{ν ∈ wt(λ)} m_λ(ν) · sgn(w)` over `ν` with
/// `w(ν + μ + ρ̌) − ρ̌ = η`. Shifted weights on a wall contribute nothing.
pub fn tensor_decompose(d: &RootDatum, lambda: &OrbitLabel, mu: &OrbitLabel) -> Result<TensorTable> {
    let table = KostantEngine::shared(d).table(d, lambda)?;
    let base = &mu.coweight().scale(2) + d.two_rho_check();
    let mut signed: BTreeMap<LatticeVector, i128> = BTreeMap::new();
    for (nu, &m) in &table.entries {
        let (dom, word) = d.dominant_representative(&(&nu.scale(2) + &base));
        if d.simple_pairings(&dom).contains(&0) {
            continue;
        }
        let eta = (&dom - d.two_rho_check())
            .div_exact(2)
            .ok_or_else(|| Error::NonIntegral { what: "Klimyk shift", value: format!("{dom}/2") })?;
        let m = m as i128;
        *signed.entry(eta).or_insert(0) += if word.len() % 2 == 0 { m } else { -m };
    }
    finish((lambda.clone(), mu.clone()), signed)
}

/// Independent decomposition: multiply the two characters pointwise and peel
/// off irreducible characters from the top. Uses Freudenthal tables, so it
/// shares no code path with [`tensor_decompose`].
pub fn decompose_by_characters(d: &RootDatum, lambda: &OrbitLabel, mu: &OrbitLabel) -> Result<TensorTable> {
    let a = freudenthal_table(d, lambda)?;
    let b = freudenthal_table(d, mu)?;
    let mut product = character_product(&a, &b);
    let mut signed = BTreeMap::new();
    loop {
        let top = product
            .iter()
            .filter(|(v, &m)| m != 0 && d.is_dominant(v))
            .max_by(|(u, _), (v, _)| d.height2(u).cmp(&d.height2(v)).then_with(|| u.cmp(v)))
            .map(|(v, &m)| (v.clone(), m));
        let Some((eta, n)) = top else { break };
        if n < 0 {
            return Err(Error::NegativeMultiplicity { at: eta, value: n });
        }
        for (v, m) in &freudenthal_table(d, &OrbitLabel::new(d, eta.clone())?)?.entries {
            *product.entry(v.clone()).or_insert(0) -= n * (*m as i128);
        }
        product.retain(|_, m| *m != 0);
        signed.insert(eta, n);
    }
    if let Some((v, &m)) = product.iter().next() {
        return Err(Error::NegativeMultiplicity { at: v.clone(), value: m });
    }
    finish((lambda.clone(), mu.clone()), signed)
}

pub fn character_product(a: &MultiplicityTable, b: &MultiplicityTable) -> BTreeMap<LatticeVector, i128> {
    let mut out = BTreeMap::new();
    for (u, &m) in &a.entries {
        for (v, &n) in &b.entries {
            *out.entry(u + v).or_insert(0) += (m as i128) * (n as i128);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotDominant { eta: LatticeVector },
    NotBelowTop { eta: LatticeVector, top: LatticeVector },
    TopMultiplicity { top: LatticeVector, found: u64 },
    ZeroEntry { eta: LatticeVector },
    ComponentMismatch { eta: LatticeVector },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub violations: Vec<Violation>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Support in the cone below `λ + μ`, `N^{λ+μ} = 1`, and every `η` in the
/// component of `λ + μ`.
pub fn verify_support_and_top(d: &RootDatum, t: &TensorTable) -> Result<SupportReport> {
    let top = t.top();
    let expected = &component_of(d, t.factors.0.coweight())? + &component_of(d, t.factors.1.coweight())?;
    let mut violations = Vec::new();
    for (eta, &n) in &t.entries {
        if n == 0 {
            violations.push(Violation::ZeroEntry { eta: eta.clone() });
        }
        if !d.is_dominant(eta) {
            violations.push(Violation::NotDominant { eta: eta.clone() });
        }
        if !d.dominance_leq(eta, &top) {
            violations.push(Violation::NotBelowTop { eta: eta.clone(), top: top.clone() });
        }
        if component_of(d, eta)? != expected {
            violations.push(Violation::ComponentMismatch { eta: eta.clone() });
        }
    }
    let found = t.get(&top);
    if found != 1 {
        violations.push(Violation::TopMultiplicity { top, found });
    }
    Ok(SupportReport { violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemismallReport {
    pub lambda: LatticeVector,
    pub mu: LatticeVector,
    /// The anti-dominant conjugate of the requested `ν`.
    pub nu: LatticeVector,
    pub pairs: usize,
    /// `max ⟨2ρ, λ + φ⟩` over the enumerated pairs.
    pub max_height2: Option<i64>,
    /// `⟨2ρ, λ + μ + ν⟩`.
    pub bound_height2: i64,
    pub violations: Vec<(LatticeVector, LatticeVector)>,
}

impl SemismallReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerates the fixed points `(φ, ψ)` with `φ ∈ wt(λ)`, `ψ ∈ wt(μ)` and
/// `φ + ψ = ν` for anti-dominant `ν`, checking `ht(λ+φ) ≤ ht(λ+μ+ν)`.
pub fn semismall_estimate_check(
    d: &RootDatum,
    lambda: &OrbitLabel,
    mu: &OrbitLabel,
    nu: &LatticeVector,
) -> Result<SemismallReport> {
    d.check_coweight(nu)?;
    let nu = d.w0(&d.dominant_rep(nu));
    let wl = crate::multiplicities::weight_diagram(d, lambda)?;
    let bound = d.height2(&(&(lambda.coweight() + mu.coweight()) + &nu));
    let mut report = SemismallReport {
        lambda: lambda.coweight().clone(),
        mu: mu.coweight().clone(),
        nu: nu.clone(),
        pairs: 0,
        max_height2: None,
        bound_height2: bound,
        violations: Vec::new(),
    };
    for phi in wl {
        let psi = &nu - &phi;
        if !crate::multiplicities::is_weight(d, mu, &psi) {
            continue;
        }
        report.pairs += 1;
        let h = d.height2(&(lambda.coweight() + &phi));
        report.max_height2 = Some(report.max_height2.map_or(h, |m| m.max(h)));
        if h > bound {
            report.violations.push((phi, psi));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemismallSummary {
    pub triples: usize,
    pub failures: Vec<SemismallReport>,
}

/// Every `(λ, μ, ν)` with `⟨2ρ,λ⟩, ⟨2ρ,μ⟩ ≤ max_height2` and `ν` a dominant
/// weight of `L(λ) ⊗ L(μ)`.
pub fn semismall_batch(d: &RootDatum, max_height2: i64) -> Result<SemismallSummary> {
    let labels = dominant_labels(d, max_height2)?;
    let mut triples = Vec::new();
    for l in &labels {
        for m in &labels {
            let top = OrbitLabel::new(d, l.coweight() + m.coweight())?;
            for nu in crate::multiplicities::dominant_weights_below(d, &top) {
                triples.push((l, m, nu));
            }
        }
    }
    let reports: Vec<SemismallReport> =
        triples.par_iter().map(|(l, m, nu)| semismall_estimate_check(d, l, m, nu)).collect::<Result<_>>()?;
    Ok(SemismallSummary { triples: reports.len(), failures: reports.into_iter().filter(|r| !r.passed()).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    /// `Σ_σ N(λ,μ)^σ N(σ,η)^τ`
    pub left: BTreeMap<LatticeVector, u64>,
    /// `Σ_σ N(μ,η)^σ N(λ,σ)^τ`
    pub right: BTreeMap<LatticeVector, u64>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.left == self.right
    }
}

pub fn associativity_check(
    d: &RootDatum,
    lambda: &OrbitLabel,
    mu: &OrbitLabel,
    eta: &OrbitLabel,
) -> Result<AssociativityReport> {
    let compose = |outer: &TensorTable, inner: &dyn Fn(&OrbitLabel) -> Result<TensorTable>| {
        let mut out: BTreeMap<LatticeVector, u64> = BTreeMap::new();
        for (sigma, &n) in &outer.entries {
            for (tau, &k) in &inner(&OrbitLabel::new(d, sigma.clone())?)?.entries {
                let e = out.entry(tau.clone()).or_insert(0);
                *e = n.checked_mul(k).and_then(|x| e.checked_add(x)).ok_or(Error::Overflow("associativity"))?;
            }
        }
        Ok::<_, Error>(out)
    };
    let left = compose(&tensor_decompose(d, lambda, mu)?, &|s| tensor_decompose(d, s, eta))?;
    let right = compose(&tensor_decompose(d, mu, eta)?, &|s| tensor_decompose(d, lambda, s))?;
    Ok(AssociativityReport { left, right })
}

/// The contracts every decomposition must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractReport {
    pub lambda: LatticeVector,
    pub mu: LatticeVector,
    pub commutative: bool,
    pub dimension_consistent: bool,
    pub matches_character_oracle: bool,
    pub support: SupportReport,
}

impl ContractReport {
    pub fn passed(&self) -> bool {
        self.commutative && self.dimension_consistent && self.matches_character_oracle && self.support.passed()
    }
}

pub fn check_contracts(d: &RootDatum, lambda: &OrbitLabel, mu: &OrbitLabel) -> Result<ContractReport> {
    let t = tensor_decompose(d, lambda, mu)?;
    let swapped = tensor_decompose(d, mu, lambda)?;
    let dim =
        weyl_dimension(d, lambda)?.checked_mul(weyl_dimension(d, mu)?).ok_or(Error::Overflow("dimension product"))?;
    Ok(ContractReport {
        lambda: lambda.coweight().clone(),
        mu: mu.coweight().clone(),
        commutative: t.entries == swapped.entries,
        dimension_consistent: t.dimension(d)? == dim,
        matches_character_oracle: decompose_by_characters(d, lambda, mu)?.entries == t.entries,
        support: verify_support_and_top(d, &t)?,
    })
}

fn dominant_labels(d: &RootDatum, max_height2: i64) -> Result<Vec<OrbitLabel>> {
    d.dominant_coweights(max_height2)?.into_iter().map(|v| OrbitLabel::new(d, v)).collect()
}

/// `count` labels tuples drawn uniformly (with replacement) from the dominant
/// coweights with `⟨2ρ, ·⟩ ≤ max_height2`; the same seed gives the same
/// sample.
pub fn random_labels<const N: usize>(
    d: &RootDatum,
    max_height2: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<[OrbitLabel; N]>> {
    let pool = dominant_labels(d, max_height2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| std::array::from_fn(|_| pool.choose(&mut rng).expect("0 is always dominant").clone()))
        .collect())
}

pub fn contract_batch(d: &RootDatum, pairs: &[[OrbitLabel; 2]]) -> Result<Vec<ContractReport>> {
    pairs.par_iter().map(|[l, m]| check_contracts(d, l, m)).collect()
}

pub fn associativity_batch(d: &RootDatum, triples: &[[OrbitLabel; 3]]) -> Result<Vec<AssociativityReport>> {
    triples.par_iter().map(|[l, m, e]| associativity_check(d, l, m, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Isogeny;

    fn named(s: &str, iso: Isogeny) -> RootDatum {
        RootDatum::from_cartan_type(s.parse().unwrap(), iso)
    }

    fn label(d: &RootDatum, v: &[i64]) -> OrbitLabel {
        OrbitLabel::new(d, v.to_vec().into()).unwrap()
    }

    fn dynkin(d: &RootDatum, v: &[i64]) -> OrbitLabel {
        OrbitLabel::new(d, d.from_simple_pairings(v).unwrap()).unwrap()
    }

    #[test]
    fn unit_object() {
        let d = named("B2", Isogeny::SimplyConnected);
        let mu = dynkin(&d, &[2, 1]);
        let t = tensor_decompose(&d, &OrbitLabel::zero(&d), &mu).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(mu.coweight().clone(), 1)]));
    }

    #[test]
    fn clebsch_gordan() {
        let d = named("A1", Isogeny::Adjoint);
        let w = label(&d, &[1]);
        let t = tensor_decompose(&d, &w, &w).unwrap();
        assert_eq!(t.entries, BTreeMap::from([([2].into(), 1), ([0].into(), 1)]));
        assert!(verify_support_and_top(&d, &t).unwrap().passed());
    }

    #[test]
    fn adjoint_square_of_a2() {
        let d = named("A2", Isogeny::SimplyConnected);
        let theta = dynkin(&d, &[1, 1]);
        let t = tensor_decompose(&d, &theta, &theta).unwrap();
        let expected: BTreeMap<LatticeVector, u64> = [([2, 2], 1), ([3, 0], 1), ([0, 3], 1), ([1, 1], 2), ([0, 0], 1)]
            .into_iter()
            .map(|(c, n)| (d.from_simple_pairings(&c).unwrap(), n))
            .collect();
        assert_eq!(t.entries, expected);
        assert_eq!(t.dimension(&d).unwrap(), 64);
        assert_eq!(decompose_by_characters(&d, &theta, &theta).unwrap(), t);
    }

    #[test]
    fn wall_weights_cancel() {
        // ω ⊗ ω in A1: the weight −ω shifts onto the wall and drops out
        let d = named("A1", Isogeny::Adjoint);
        let w = label(&d, &[1]);
        let table = KostantEngine::new(&d).table(&d, &w).unwrap();
        let on_wall = table
            .entries
            .keys()
            .filter(|nu| {
                let v = &(&nu.scale(2) + &w.coweight().scale(2)) + d.two_rho_check();
                d.simple_pairings(&d.dominant_rep(&v)).contains(&0)
            })
            .count();
        assert_eq!(on_wall, 0);
        let three = label(&d, &[3]);
        let t = tensor_decompose(&d, &three, &w).unwrap();
        assert_eq!(t.entries, BTreeMap::from([([4].into(), 1), ([2].into(), 1)]));
        let t = tensor_decompose(&d, &w, &three).unwrap();
        assert_eq!(t.entries, BTreeMap::from([([4].into(), 1), ([2].into(), 1)]));
    }

    #[test]
    fn adversarial_table_fails() {
        let d = named("A2", Isogeny::SimplyConnected);
        let theta = dynkin(&d, &[1, 1]);
        let mut t = tensor_decompose(&d, &theta, &theta).unwrap();
        let above = &t.top() + d.simple_coroot(0);
        t.entries.insert(above.clone(), 1);
        let report = verify_support_and_top(&d, &t).unwrap();
        assert!(report.violations.contains(&Violation::NotBelowTop { eta: above, top: t.top() }));
        let mut t = tensor_decompose(&d, &theta, &theta).unwrap();
        t.entries.insert(t.top(), 2);
        assert!(!verify_support_and_top(&d, &t).unwrap().passed());
    }

    #[test]
    fn semismall_examples() {
        let d = named("A1", Isogeny::SimplyConnected);
        let a = label(&d, &[1]);
        let r = semismall_estimate_check(&d, &a, &a, &[0].into()).unwrap();
        assert_eq!(r.pairs, 3);
        assert_eq!(r.max_height2, Some(4));
        assert_eq!(r.bound_height2, 4);
        assert!(r.passed());
        let z = OrbitLabel::zero(&d);
        let r = semismall_estimate_check(&d, &z, &z, &[0].into()).unwrap();
        assert_eq!((r.pairs, r.max_height2, r.bound_height2), (1, Some(0), 0));
        assert!(semismall_batch(&d, 6).unwrap().failures.is_empty());
    }

    #[test]
    fn associativity_small() {
        let d = named("B2", Isogeny::Adjoint);
        let [l, m, e] = [[1, 0], [0, 1], [1, 1]].map(|c| dynkin(&d, &c));
        assert!(associativity_check(&d, &l, &m, &e).unwrap().passed());
        let z = OrbitLabel::zero(&d);
        let r = associativity_check(&d, &z, &m, &e).unwrap();
        assert!(r.passed());
        assert_eq!(r.left, tensor_decompose(&d, &m, &e).unwrap().entries);
    }

    #[test]
    fn seeded_samples_repeat() {
        let d = named("B2", Isogeny::SimplyConnected);
        let a = random_labels::<2>(&d, 12, 10, 7).unwrap();
        assert_eq!(a, random_labels::<2>(&d, 12, 10, 7).unwrap());
        assert!(contract_batch(&d, &a).unwrap().iter().all(ContractReport::passed));
    }
}

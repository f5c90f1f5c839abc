//! Weight multiplicities of irreducible representations of the dual group.
//! A weight of the dual group is a coweight of `d`; the multiplicity of `ν`
//! in `L(λ)` counts the MV cycles in `closure(Gr^λ) ∩ S_ν`.

mod freudenthal;
mod kostant;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive};

pub use freudenthal::{freudenthal_table, freudenthal_table_with_form};
pub use kostant::{kostant_multiplicity, kostant_partition, mv_cycle_count, KostantEngine, DEFAULT_CACHE_CAPACITY};

use crate::error::{Error, Result};
use crate::grassmannian::OrbitLabel;
use crate::lattice::LatticeVector;
use crate::linalg::{rat, Rational};
use crate::root_datum::RootDatum;

/// Weight multiplicities of `L(λ)`; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub highest_weight: OrbitLabel,
    pub entries: BTreeMap<LatticeVector, u64>,
}

impl MultiplicityTable {
    pub fn new(highest_weight: OrbitLabel) -> Self {
        MultiplicityTable { highest_weight, entries: BTreeMap::new() }
    }

    pub fn get(&self, nu: &LatticeVector) -> u64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<LatticeVector> {
        self.entries.keys().cloned().collect()
    }

    /// `Σ_ν m(ν)`, the dimension of the module.
    pub fn total(&self) -> Result<u64> {
        self.entries.values().try_fold(0u64, |acc, &m| acc.checked_add(m)).ok_or(Error::Overflow("table total"))
    }

    pub fn is_weyl_invariant(&self, d: &RootDatum) -> bool {
        self.entries.iter().all(|(v, &m)| (0..d.semisimple_rank()).all(|i| self.get(&d.reflect_coweight(i, v)) == m))
    }

    /// Entries at dominant weights, in ascending coordinate order.
    pub fn dominant_entries(&self, d: &RootDatum) -> BTreeMap<LatticeVector, u64> {
        self.entries.iter().filter(|(v, _)| d.is_dominant(v)).map(|(v, &m)| (v.clone(), m)).collect()
    }
}

/// Dimensions of the weight functors regraded by `⟨2ρ, ν⟩`, which is the
/// cohomological degree measured from the middle.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoincareVector {
    pub dims: BTreeMap<i64, u64>,
}

impl PoincareVector {
    pub fn is_palindromic(&self) -> bool {
        self.dims.iter().all(|(k, m)| self.dims.get(&-k) == Some(m))
    }

    /// The common parity of all occupied degrees, if there is one.
    pub fn parity(&self) -> Option<i64> {
        let mut it = self.dims.keys().map(|k| k.rem_euclid(2));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }
}

/// `ν` is a weight of `L(λ)` iff its dominant conjugate lies below `λ`.
pub fn is_weight(d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> bool {
    nu.len() == d.rank() && d.dominance_leq(&d.dominant_rep(nu), lambda.coweight())
}

/// Dominant `μ ≤ λ`. Dominant coweights have `⟨2ρ, μ⟩ ≥ 0`, which bounds the
/// number of simple coroots that can be subtracted.
pub fn dominant_weights_below(d: &RootDatum, lambda: &OrbitLabel) -> Vec<LatticeVector> {
    let budget = d.height2(lambda.coweight()) / 2;
    let r = d.semisimple_rank();
    let mut out = Vec::new();
    fn rec(d: &RootDatum, k: usize, r: usize, left: i64, cur: LatticeVector, out: &mut Vec<LatticeVector>) {
        if k == r {
            if d.is_dominant(&cur) {
                out.push(cur);
            }
            return;
        }
        let mut v = cur;
        for used in 0..=left {
            let next = &v - d.simple_coroot(k);
            rec(d, k + 1, r, left - used, v, out);
            v = next;
        }
    }
    rec(d, 0, r, budget, lambda.coweight().clone(), &mut out);
    out.sort();
    out
}

/// The weights of `L(λ)`.
pub fn weight_diagram(d: &RootDatum, lambda: &OrbitLabel) -> Result<BTreeSet<LatticeVector>> {
    let mut out = BTreeSet::new();
    for mu in dominant_weights_below(d, lambda) {
        out.extend(d.weyl_orbit(&mu)?.into_iter().map(|(v, _)| v));
    }
    Ok(out)
}

/// `Π_{α>0} ⟨α, λ+ρ̌⟩ / ⟨α, ρ̌⟩`.
pub fn weyl_dimension(d: &RootDatum, lambda: &OrbitLabel) -> Result<u64> {
    let shifted = &lambda.coweight().scale(2) + d.two_rho_check();
    let mut q = Rational::one();
    for a in d.positive_roots() {
        q *= Rational::new(rat(a.pair(&shifted)).to_integer(), rat(a.pair(d.two_rho_check())).to_integer());
    }
    if !q.is_integer() {
        return Err(Error::NonIntegral { what: "Weyl dimension", value: q.to_string() });
    }
    q.to_integer().to_u64().ok_or(Error::Overflow("Weyl dimension"))
}

pub fn ic_poincare(d: &RootDatum, lambda: &OrbitLabel) -> Result<PoincareVector> {
    let table = KostantEngine::shared(d).table(d, lambda)?;
    let mut p = PoincareVector::default();
    for (nu, m) in &table.entries {
        *p.dims.entry(d.height2(nu)).or_insert(0) += m;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmannian::{component_of, component_parity, Parity};
    use crate::root_datum::Isogeny;

    fn named(s: &str, iso: Isogeny) -> RootDatum {
        RootDatum::from_cartan_type(s.parse().unwrap(), iso)
    }

    #[test]
    fn diagram_examples() {
        let a1 = named("A1", Isogeny::SimplyConnected);
        assert_eq!(weight_diagram(&a1, &OrbitLabel::zero(&a1)).unwrap(), BTreeSet::from([[0].into()]));
        let alpha = OrbitLabel::new(&a1, [1].into()).unwrap();
        assert_eq!(weight_diagram(&a1, &alpha).unwrap(), BTreeSet::from([[1].into(), [0].into(), [-1].into()]));
    }

    #[test]
    fn weyl_dimension_examples() {
        let a2 = named("A2", Isogeny::SimplyConnected);
        assert_eq!(weyl_dimension(&a2, &OrbitLabel::zero(&a2)).unwrap(), 1);
        let theta = OrbitLabel::new(&a2, a2.simple_coroot(0) + a2.simple_coroot(1)).unwrap();
        assert_eq!(weyl_dimension(&a2, &theta).unwrap(), 8);
        let a1 = named("A1", Isogeny::Adjoint);
        assert_eq!(weyl_dimension(&a1, &OrbitLabel::new(&a1, [2].into()).unwrap()).unwrap(), 3);
        let g2 = named("G2", Isogeny::SimplyConnected);
        let dims: Vec<u64> = g2
            .dominant_coweights(10)
            .unwrap()
            .iter()
            .map(|l| weyl_dimension(&g2, &OrbitLabel::new(&g2, l.clone()).unwrap()).unwrap())
            .collect();
        assert!(dims.contains(&7) && dims.contains(&14));
    }

    #[test]
    fn poincare_examples() {
        let a1 = named("A1", Isogeny::SimplyConnected);
        assert_eq!(ic_poincare(&a1, &OrbitLabel::zero(&a1)).unwrap().dims, BTreeMap::from([(0, 1)]));
        let p = ic_poincare(&a1, &OrbitLabel::new(&a1, [1].into()).unwrap()).unwrap();
        assert_eq!(p.dims, BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        let b2 = named("B2", Isogeny::Adjoint);
        for l in b2.dominant_coweights(9).unwrap() {
            let lambda = OrbitLabel::new(&b2, l.clone()).unwrap();
            let p = ic_poincare(&b2, &lambda).unwrap();
            assert!(p.is_palindromic());
            let parity = component_parity(&b2, &component_of(&b2, &l).unwrap()).unwrap();
            assert_eq!(p.parity(), Some((parity == Parity::Odd) as i64));
            assert_eq!(p.total(), weyl_dimension(&b2, &lambda).unwrap());
        }
    }

    #[test]
    fn gl_tables_agree() {
        let d = RootDatum::general_linear(3).unwrap();
        let lambda = OrbitLabel::new(&d, [2, 1, -1].into()).unwrap();
        let k = KostantEngine::new(&d).table(&d, &lambda).unwrap();
        assert_eq!(k, freudenthal_table(&d, &lambda).unwrap());
        assert_eq!(k.total().unwrap(), weyl_dimension(&d, &lambda).unwrap());
        assert!(k.is_weyl_invariant(&d));
    }
}

//! Kostant's partition function over the positive coroots, and the
//! alternating-sum multiplicity formula built on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::MultiplicityTable;
use crate::error::{Error, Result};
use crate::grassmannian::OrbitLabel;
use crate::lattice::LatticeVector;
use crate::root_datum::RootDatum;

pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

type Registry = Mutex<HashMap<Vec<Vec<i64>>, Arc<KostantEngine>>>;

/// Memoized partition function for one positive system. The partition
/// function only depends on the positive coroots written in simple-coroot
/// coordinates, which is also the key under which shared engines are kept.
///
/// Readers share the cache; inserts take the write lock. When the cache holds
/// `capacity` entries it is flushed before the next insert.
#[derive(Debug)]
pub struct KostantEngine {
    /// Non-simple positive coroots first, simple coroots last.
    parts: Vec<Vec<i64>>,
    n_nonsimple: usize,
    cache: RwLock<HashMap<(usize, Vec<i64>), u64>>,
    capacity: usize,
}

impl KostantEngine {
    pub fn new(d: &RootDatum) -> Self {
        Self::with_capacity(d, DEFAULT_CACHE_CAPACITY)
    }

    pub fn with_capacity(d: &RootDatum, capacity: usize) -> Self {
        let (parts, n_nonsimple) = parts_of(d);
        KostantEngine { parts, n_nonsimple, cache: RwLock::new(HashMap::new()), capacity }
    }

    /// Shared engine for the positive system of `d`.
    pub fn shared(d: &RootDatum) -> Arc<KostantEngine> {
        static ENGINES: OnceLock<Registry> = OnceLock::new();
        let (parts, n_nonsimple) = parts_of(d);
        let mut map = ENGINES.get_or_init(Default::default).lock().expect("engine registry poisoned");
        map.entry(parts.clone())
            .or_insert_with(|| {
                Arc::new(KostantEngine {
                    parts,
                    n_nonsimple,
                    cache: RwLock::new(HashMap::new()),
                    capacity: DEFAULT_CACHE_CAPACITY,
                })
            })
            .clone()
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }

    pub fn clear(&self) {
        self.cache.write().expect("cache poisoned").clear();
    }

    /// Number of ways to write `x` (simple-coroot coordinates) as a sum of
    /// positive coroots.
    pub fn partition(&self, x: &[i64]) -> Result<u64> {
        if x.iter().any(|&c| c < 0) {
            return Ok(0);
        }
        if x.len() != self.parts.first().map_or(x.len(), Vec::len) {
            return Err(Error::NotInLattice(x.to_vec()));
        }
        self.count(0, x)
    }

    fn count(&self, k: usize, x: &[i64]) -> Result<u64> {
        if k == self.n_nonsimple {
            // the simple coroots are the unit vectors
            return Ok(1);
        }
        let key = (k, x.to_vec());
        if let Some(&v) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(v);
        }
        let part = &self.parts[k];
        let mut rest = x.to_vec();
        let mut total: u64 = 0;
        loop {
            total = total.checked_add(self.count(k + 1, &rest)?).ok_or(Error::Overflow("Kostant partition"))?;
            for (r, p) in rest.iter_mut().zip(part) {
                *r -= p;
            }
            if rest.iter().any(|&c| c < 0) {
                break;
            }
        }
        let mut cache = self.cache.write().expect("cache poisoned");
        if cache.len() >= self.capacity {
            cache.clear();
        }
        cache.insert(key, total);
        Ok(total)
    }

    /// `m_λ(ν) = Σ_w (−1)^{ℓ(w)} P(w(λ+ρ̌) − (ν+ρ̌))`, evaluated in doubled
    /// coordinates.
    pub fn multiplicity(&self, d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> Result<u64> {
        let orbit = shifted_orbit(d, lambda)?;
        self.multiplicity_in(d, &orbit, nu)
    }

    fn multiplicity_in(&self, d: &RootDatum, orbit: &[(LatticeVector, usize)], nu: &LatticeVector) -> Result<u64> {
        d.check_coweight(nu)?;
        let shifted = &nu.scale(2) + d.two_rho_check();
        let mut acc: i128 = 0;
        for (w, len) in orbit {
            let Some(diff) = (w - &shifted).div_exact(2) else { continue };
            let Some(x) = d.coroot_coordinates(&diff) else { continue };
            let p = self.partition(&x)? as i128;
            acc += if len % 2 == 0 { p } else { -p };
        }
        if acc < 0 {
            return Err(Error::NegativeMultiplicity { at: nu.clone(), value: acc });
        }
        u64::try_from(acc).map_err(|_| Error::Overflow("Kostant multiplicity"))
    }

    /// The full multiplicity table of `L(λ)` by Kostant's formula.
    pub fn table(&self, d: &RootDatum, lambda: &OrbitLabel) -> Result<MultiplicityTable> {
        let orbit = shifted_orbit(d, lambda)?;
        let mut table = MultiplicityTable::new(lambda.clone());
        for mu in super::dominant_weights_below(d, lambda) {
            let m = self.multiplicity_in(d, &orbit, &mu)?;
            if m > 0 {
                for (v, _) in d.weyl_orbit(&mu)? {
                    table.entries.insert(v, m);
                }
            }
        }
        Ok(table)
    }
}

fn parts_of(d: &RootDatum) -> (Vec<Vec<i64>>, usize) {
    let mut nonsimple = Vec::new();
    let mut simple = Vec::new();
    for &i in d.positive_indices() {
        let c = d.coroot_simple_coords(i).to_vec();
        if c.iter().sum::<i64>() == 1 {
            simple.push(c);
        } else {
            nonsimple.push(c);
        }
    }
    simple.sort_unstable_by(|a, b| b.cmp(a));
    let n = nonsimple.len();
    nonsimple.extend(simple);
    (nonsimple, n)
}

/// `W·(2λ + 2ρ̌)` with lengths; the shifted weight is regular so BFS depth is
/// the length of the unique Weyl element reaching each point.
fn shifted_orbit(d: &RootDatum, lambda: &OrbitLabel) -> Result<Vec<(LatticeVector, usize)>> {
    d.weyl_orbit(&(&lambda.coweight().scale(2) + d.two_rho_check()))
}

/// Number of ways to write `beta` as a nonnegative integer combination of
/// positive coroots; 0 outside the cone or off the coroot lattice.
pub fn kostant_partition(d: &RootDatum, beta: &LatticeVector) -> Result<u64> {
    d.check_coweight(beta)?;
    match d.coroot_coordinates(beta) {
        Some(x) => KostantEngine::shared(d).partition(&x),
        None => Ok(0),
    }
}

pub fn kostant_multiplicity(d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> Result<u64> {
    KostantEngine::shared(d).multiplicity(d, lambda, nu)
}

/// Number of irreducible components of `closure(Gr^λ) ∩ S_ν`, which equals the
/// `ν`-weight multiplicity of `L(λ)`.
pub fn mv_cycle_count(d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> Result<u64> {
    kostant_multiplicity(d, lambda, nu)
}

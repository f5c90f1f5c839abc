//! Label arithmetic for the affine Grassmannian `Gr = G(K)/G(O)`.
//!
//! Nothing here is materialized: `G(O)`-orbits are indexed by dominant
//! coweights, semi-infinite orbits by arbitrary coweights, connected
//! components by `π₁`. Dimensions are computed from `⟨2ρ, ·⟩`.

use std::collections::BTreeSet;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multiplicities::is_weight;
use crate::root_datum::RootDatum;
use crate::smith::big_to_i64;

/// A dominant coweight, labelling the orbit `Gr^λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitLabel(LatticeVector);

impl OrbitLabel {
    pub fn new(d: &RootDatum, lambda: LatticeVector) -> Result<Self> {
        d.check_coweight(&lambda)?;
        if !d.is_dominant(&lambda) {
            return Err(Error::NotDominant(lambda));
        }
        Ok(OrbitLabel(lambda))
    }

    pub fn zero(d: &RootDatum) -> Self {
        OrbitLabel(LatticeVector::zero(d.rank()))
    }

    pub fn coweight(&self) -> &LatticeVector {
        &self.0
    }

    pub fn into_coweight(self) -> LatticeVector {
        self.0
    }
}

impl Add for &OrbitLabel {
    type Output = OrbitLabel;
    /// Sums of dominant coweights are dominant.
    fn add(self, rhs: &OrbitLabel) -> OrbitLabel {
        OrbitLabel(&self.0 + &rhs.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `S_ν = N(K)·L_ν`
    S,
    /// `T_ν = N⁻(K)·L_ν`
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemiInfOrbitLabel {
    pub nu: LatticeVector,
    pub side: Side,
}

/// A class in `π₁ = X_*/Z·Δ̌`, written in Smith coordinates: residues modulo
/// the invariant factors, then integer coordinates on the free part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub torsion: Vec<i64>,
    pub moduli: Vec<i64>,
    pub free: Vec<i64>,
}

impl ComponentLabel {
    pub fn is_identity(&self) -> bool {
        self.torsion.iter().all(|&t| t == 0) && self.free.iter().all(|&f| f == 0)
    }
}

impl Add for &ComponentLabel {
    type Output = ComponentLabel;
    fn add(self, rhs: &ComponentLabel) -> ComponentLabel {
        debug_assert_eq!(self.moduli, rhs.moduli);
        ComponentLabel {
            torsion: self
                .torsion
                .iter()
                .zip(&rhs.torsion)
                .zip(&self.moduli)
                .map(|((a, b), m)| (a + b).rem_euclid(*m))
                .collect(),
            moduli: self.moduli.clone(),
            free: self.free.iter().zip(&rhs.free).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `dim Gr^λ = ⟨2ρ, λ⟩`.
pub fn orbit_dim(d: &RootDatum, lambda: &OrbitLabel) -> u64 {
    d.height2(lambda.coweight()) as u64
}

/// `Gr^μ ⊂ closure(Gr^λ)`.
pub fn closure_contains(d: &RootDatum, lambda: &OrbitLabel, mu: &OrbitLabel) -> bool {
    d.dominance_leq(mu.coweight(), lambda.coweight())
}

pub fn component_of(d: &RootDatum, nu: &LatticeVector) -> Result<ComponentLabel> {
    d.check_coweight(nu)?;
    let y = d.smith_coordinates(nu)?;
    let diag = d.smith_diagonal();
    let r = d.semisimple_rank();
    let (mut torsion, mut moduli) = (Vec::new(), Vec::new());
    for i in 0..r {
        if diag[i] > 1 {
            torsion.push(y[i].rem_euclid(diag[i]));
            moduli.push(diag[i]);
        }
    }
    Ok(ComponentLabel { torsion, moduli, free: y[r..].to_vec() })
}

/// A coweight in the given class.
pub fn component_representative(d: &RootDatum, c: &ComponentLabel) -> Result<LatticeVector> {
    let diag = d.smith_diagonal();
    let r = d.semisimple_rank();
    let mut y = Vec::with_capacity(d.rank());
    let mut t = c.torsion.iter();
    for &di in diag.iter().take(r) {
        y.push(if di > 1 { *t.next().ok_or_else(|| bad_label(c))? } else { 0 });
    }
    if c.free.len() != d.rank() - r || t.next().is_some() {
        return Err(bad_label(c));
    }
    y.extend_from_slice(&c.free);
    let v = d.coroot_snf().apply_left_inv(&y);
    Ok(LatticeVector::new(v.iter().map(|x| big_to_i64(x, "component representative")).collect::<Result<_>>()?))
}

fn bad_label(c: &ComponentLabel) -> Error {
    Error::InvalidSpec(format!("component label {c:?} does not match the datum"))
}

/// Parity of `⟨2ρ, ν⟩` on the class, well defined since `⟨2ρ, α̌⟩` is even.
pub fn component_parity(d: &RootDatum, c: &ComponentLabel) -> Result<Parity> {
    Ok(Parity::of(d.height2(&component_representative(d, c)?)))
}

/// The coweights `η ≤ ν` with `⟨2ρ, ν − η⟩ ≤ height_bound`: a truncation of
/// the index set of `closure(S_ν) = ∪_{η≤ν} S_η`.
pub fn s_closure_set(d: &RootDatum, nu: &LatticeVector, height_bound: i64) -> BTreeSet<LatticeVector> {
    let r = d.semisimple_rank();
    let mut out = BTreeSet::new();
    if height_bound < 0 {
        return out;
    }
    // each simple coroot lowers ⟨2ρ,·⟩ by exactly 2
    out.insert(nu.clone());
    let mut frontier = BTreeSet::from([nu.clone()]);
    for _ in 0..height_bound / 2 {
        let mut next = BTreeSet::new();
        for v in &frontier {
            for i in 0..r {
                let w = v - d.simple_coroot(i);
                if out.insert(w.clone()) {
                    next.insert(w);
                }
            }
        }
        frontier = next;
    }
    out
}

fn halve(doubled: i64, what: &'static str) -> Result<u64> {
    if doubled < 0 || doubled % 2 != 0 {
        return Err(Error::NonIntegral { what, value: format!("{doubled}/2") });
    }
    Ok((doubled / 2) as u64)
}

/// `dim(S_ν ∩ Gr^λ) = ρ(ν + λ)` for dominant `λ`, or `None` when the
/// intersection is empty (`ν` is not a weight of `L(λ)`).
pub fn sv_intersection_dim2(d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> Result<Option<u64>> {
    d.check_coweight(nu)?;
    if !is_weight(d, lambda, nu) {
        return Ok(None);
    }
    halve(d.height2(&(nu + lambda.coweight())), "dim S_ν ∩ Gr^λ").map(Some)
}

/// `dim(T_ν ∩ Gr^λ) = −ρ(ν + w₀λ)`; `λ` is given dominant and replaced by its
/// anti-dominant conjugate internally.
pub fn tv_intersection_dim2(d: &RootDatum, lambda: &OrbitLabel, nu: &LatticeVector) -> Result<Option<u64>> {
    d.check_coweight(nu)?;
    if !is_weight(d, lambda, nu) {
        return Ok(None);
    }
    let anti = d.w0(lambda.coweight());
    halve(-d.height2(&(nu + &anti)), "dim T_ν ∩ Gr^λ").map(Some)
}

/// `max_{ν} ρ(λ + ν)` over the given T-fixed points: the bound on the
/// dimension of a closed T-invariant subset of `closure(Gr^λ)` with these
/// fixed points.
pub fn fixed_point_dim_bound(
    d: &RootDatum,
    lambda: &OrbitLabel,
    fixed_points: &BTreeSet<LatticeVector>,
) -> Result<u64> {
    let outside: Vec<LatticeVector> = fixed_points.iter().filter(|nu| !is_weight(d, lambda, nu)).cloned().collect();
    if !outside.is_empty() {
        return Err(Error::OutsideCone { bound: lambda.coweight().clone(), offending: outside });
    }
    let best = fixed_points
        .iter()
        .map(|nu| d.height2(&(lambda.coweight() + nu)))
        .max()
        .ok_or_else(|| Error::InvalidSpec("no fixed points given".into()))?;
    halve(best, "fixed-point dimension bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicities::weight_diagram;
    use crate::root_datum::Isogeny;

    fn named(s: &str, iso: Isogeny) -> RootDatum {
        RootDatum::from_cartan_type(s.parse().unwrap(), iso)
    }

    fn label(d: &RootDatum, v: &[i64]) -> OrbitLabel {
        OrbitLabel::new(d, v.to_vec().into()).unwrap()
    }

    #[test]
    fn orbit_dims() {
        let a1 = named("A1", Isogeny::SimplyConnected);
        assert_eq!(orbit_dim(&a1, &OrbitLabel::zero(&a1)), 0);
        assert_eq!(orbit_dim(&a1, &label(&a1, &[1])), 2);
        let a1ad = named("A1", Isogeny::Adjoint);
        assert_eq!(orbit_dim(&a1ad, &label(&a1ad, &[1])), 1);
        assert!(matches!(OrbitLabel::new(&a1, [-1].into()), Err(Error::NotDominant(_))));
    }

    #[test]
    fn closure_examples() {
        let a2 = named("A2", Isogeny::SimplyConnected);
        let theta = label(&a2, &[1, 1]);
        assert!(closure_contains(&a2, &theta, &theta));
        assert!(closure_contains(&a2, &theta, &OrbitLabel::zero(&a2)));
        let a1ad = named("A1", Isogeny::Adjoint);
        assert!(!closure_contains(&a1ad, &label(&a1ad, &[2]), &label(&a1ad, &[1])));
    }

    #[test]
    fn components_and_parity() {
        let a1ad = named("A1", Isogeny::Adjoint);
        let c = component_of(&a1ad, &[1].into()).unwrap();
        assert_eq!(c.moduli, vec![2]);
        assert!(!c.is_identity());
        assert_eq!(component_parity(&a1ad, &c).unwrap(), Parity::Odd);
        let id = component_of(&a1ad, &[2].into()).unwrap();
        assert!(id.is_identity());
        assert_eq!(component_parity(&a1ad, &id).unwrap(), Parity::Even);
        assert_eq!(&c + &c, id);

        let sc = named("A3", Isogeny::SimplyConnected);
        assert!(component_of(&sc, &[3, -1, 2].into()).unwrap().is_identity());
    }

    #[test]
    fn gl_components_follow_total_degree() {
        let gl = RootDatum::general_linear(3).unwrap();
        let vs: Vec<LatticeVector> =
            vec![[1, 0, 0].into(), [0, 1, 0].into(), [2, -1, 0].into(), [1, 1, 0].into(), [0, 0, 2].into()];
        for a in &vs {
            for b in &vs {
                let same = component_of(&gl, a).unwrap() == component_of(&gl, b).unwrap();
                let deg = |v: &LatticeVector| v.coords().iter().sum::<i64>();
                assert_eq!(same, deg(a) == deg(b));
            }
        }
    }

    #[test]
    fn a2_adjoint_parity_consistent_on_samples() {
        let d = named("A2", Isogeny::Adjoint);
        let mut classes = std::collections::BTreeMap::new();
        for x in -4..=4 {
            for y in -4..=4 {
                let v = LatticeVector::from([x, y]);
                let c = component_of(&d, &v).unwrap();
                classes.entry(c).or_insert_with(Vec::new).push(Parity::of(d.height2(&v)));
            }
        }
        assert_eq!(classes.len(), 3);
        for (c, parities) in classes {
            assert!(parities.len() >= 10);
            let p = component_parity(&d, &c).unwrap();
            assert!(parities.iter().all(|&q| q == p));
        }
    }

    #[test]
    fn representative_round_trips() {
        for d in [named("D4", Isogeny::Adjoint), named("B3", Isogeny::Adjoint), RootDatum::general_linear(2).unwrap()] {
            for k in 0..d.rank() {
                let v = LatticeVector::unit(d.rank(), k).scale(3);
                let c = component_of(&d, &v).unwrap();
                let rep = component_representative(&d, &c).unwrap();
                assert_eq!(component_of(&d, &rep).unwrap(), c);
            }
        }
    }

    #[test]
    fn s_closure_examples() {
        let a1 = named("A1", Isogeny::SimplyConnected);
        let zero = LatticeVector::from([0]);
        assert_eq!(s_closure_set(&a1, &zero, 0), BTreeSet::from([zero.clone()]));
        assert_eq!(s_closure_set(&a1, &zero, 4), BTreeSet::from([[0].into(), [-1].into(), [-2].into()]));
        let a2 = named("A2", Isogeny::Adjoint);
        let nu = LatticeVector::from([1, -2]);
        for eta in s_closure_set(&a2, &nu, 8) {
            assert!(a2.dominance_leq(&eta, &nu));
            assert!(a2.height2(&nu) - a2.height2(&eta) <= 8);
        }
        assert_eq!(s_closure_set(&a2, &nu, 8).len(), 1 + 2 + 3 + 4 + 5);
    }

    #[test]
    fn intersection_dims() {
        let a2 = named("A2", Isogeny::SimplyConnected);
        let theta = label(&a2, &[1, 1]);
        let zero = LatticeVector::zero(2);
        assert_eq!(sv_intersection_dim2(&a2, &theta, &zero).unwrap(), Some(2));
        assert_eq!(sv_intersection_dim2(&a2, &theta, theta.coweight()).unwrap(), Some(orbit_dim(&a2, &theta)));
        assert_eq!(sv_intersection_dim2(&a2, &theta, &a2.w0(theta.coweight())).unwrap(), Some(0));
        assert_eq!(tv_intersection_dim2(&a2, &theta, &a2.w0(theta.coweight())).unwrap(), Some(orbit_dim(&a2, &theta)));
        assert_eq!(tv_intersection_dim2(&a2, &theta, theta.coweight()).unwrap(), Some(0));
        assert_eq!(sv_intersection_dim2(&a2, &theta, &[2, 2].into()).unwrap(), None);
        for nu in weight_diagram(&a2, &theta).unwrap() {
            let s = sv_intersection_dim2(&a2, &theta, &nu).unwrap().unwrap();
            let t = tv_intersection_dim2(&a2, &theta, &nu).unwrap().unwrap();
            assert_eq!(s + t, orbit_dim(&a2, &theta));
        }
    }

    #[test]
    fn fixed_point_bounds() {
        let b2 = named("B2", Isogeny::Adjoint);
        let lambda = label(&b2, &[1, 1]);
        let top = BTreeSet::from([lambda.coweight().clone()]);
        assert_eq!(fixed_point_dim_bound(&b2, &lambda, &top).unwrap(), orbit_dim(&b2, &lambda));
        let bottom = BTreeSet::from([b2.w0(lambda.coweight())]);
        assert_eq!(fixed_point_dim_bound(&b2, &lambda, &bottom).unwrap(), 0);
        let all = weight_diagram(&b2, &lambda).unwrap();
        assert_eq!(fixed_point_dim_bound(&b2, &lambda, &all).unwrap(), orbit_dim(&b2, &lambda));
        let outside = BTreeSet::from([lambda.coweight().scale(2)]);
        assert!(matches!(fixed_point_dim_bound(&b2, &lambda, &outside), Err(Error::OutsideCone { .. })));
    }
}

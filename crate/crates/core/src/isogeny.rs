//! Isogenies at the level of root data, and the weight-rank tables of Weyl
//! and Schur modules over the integers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmannian::OrbitLabel;
use crate::lattice::LatticeVector;
use crate::multiplicities::{KostantEngine, MultiplicityTable};
use crate::root_datum::RootDatum;
use crate::smith::{big_to_i64, FiniteAbelianGroup, SmithNormalForm};

/// `X*` replaced by the root lattice, written in the basis of simple roots;
/// `X_*` becomes the coweight lattice. Tori have no adjoint quotient of
/// positive rank and are rejected.
pub fn adjoint_datum(d: &RootDatum) -> Result<RootDatum> {
    let r = d.semisimple_rank();
    if r == 0 {
        return Err(Error::InvalidSpec("a torus has trivial adjoint quotient".into()));
    }
    let roots = (0..d.roots().len()).map(|i| LatticeVector::new(d.root_simple_coords(i).to_vec())).collect();
    let coroots = d.coroots().iter().map(|c| LatticeVector::new(d.simple_pairings(c))).collect();
    RootDatum::from_parts(r, roots, coroots, d.simple_indices().to_vec())
}

/// `X_*` cut down to `X_* ∩ Q·Δ̌`, `X*` to its quotient by the annihilator of
/// the coroots. Semisimple data are returned unchanged.
pub fn derived_datum(d: &RootDatum) -> Result<RootDatum> {
    let r = d.semisimple_rank();
    if r == d.rank() {
        return Ok(d.clone());
    }
    if r == 0 {
        return Err(Error::InvalidSpec("the derived group of a torus is trivial".into()));
    }
    let snf = d.coroot_snf();
    // the first r columns of U⁻¹ span the saturation of the coroot span
    let basis: Vec<LatticeVector> = (0..r)
        .map(|k| {
            let col = snf.apply_left_inv(LatticeVector::unit(d.rank(), k).coords());
            col.iter().map(|x| big_to_i64(x, "derived basis")).collect::<Result<Vec<_>>>().map(LatticeVector::new)
        })
        .collect::<Result<_>>()?;
    let mut coroots = Vec::with_capacity(d.coroots().len());
    for c in d.coroots() {
        let y = snf.apply_left(c.coords());
        let coords = y[..r].iter().map(|x| big_to_i64(x, "derived coroot")).collect::<Result<Vec<_>>>()?;
        coroots.push(LatticeVector::new(coords));
    }
    let roots = d.roots().iter().map(|a| LatticeVector::new(basis.iter().map(|b| a.pair(b)).collect())).collect();
    RootDatum::from_parts(r, roots, coroots, d.simple_indices().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsogenyDirection {
    Quotient,
    Inclusion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyReport {
    pub source: RootDatum,
    pub target: RootDatum,
    pub kernel: FiniteAbelianGroup,
    pub direction: IsogenyDirection,
}

/// `π₁(G_ad)/π₁(G)`: the kernel of `G → G_ad`, equivalently the character
/// group of the kernel of the dual isogeny `Ǧ_sc → Ǧ`. Computed as the
/// cokernel of `X_*` in the coweight lattice.
pub fn dual_isogeny_kernel(d: &RootDatum) -> Result<IsogenyReport> {
    if !d.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let r = d.rank();
    // columns: images of the basis of X_* in fundamental-coweight coordinates
    let m: Vec<Vec<i64>> = {
        let cols: Vec<Vec<i64>> = (0..r).map(|k| d.simple_pairings(&LatticeVector::unit(r, k))).collect();
        (0..r).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    };
    let kernel = SmithNormalForm::new(&m, r).cokernel();
    Ok(IsogenyReport { source: d.clone(), target: adjoint_datum(d)?, kernel, direction: IsogenyDirection::Quotient })
}

/// `X_*/Z·Δ̌`, the character group of a central subgroup of the dual group;
/// the full center when the dual is semisimple.
pub fn center_of_dual(d: &RootDatum) -> FiniteAbelianGroup {
    d.pi1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Weyl,
    Schur,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleCharacter {
    pub label: OrbitLabel,
    pub kind: ModuleKind,
    /// Ranks of the (free) weight spaces.
    pub table: MultiplicityTable,
}

/// Both `W(λ)` and `S(λ)` have free weight spaces of rank equal to the number
/// of MV cycles, so the table does not depend on the kind.
pub fn weyl_schur_character(d: &RootDatum, lambda: &OrbitLabel, kind: ModuleKind) -> Result<ModuleCharacter> {
    Ok(ModuleCharacter { label: lambda.clone(), kind, table: KostantEngine::shared(d).table(d, lambda)? })
}

/// `−w₀λ`, the highest weight of the dual module.
pub fn dual_label(d: &RootDatum, lambda: &OrbitLabel) -> OrbitLabel {
    OrbitLabel::new(d, d.dominant_rep(&-lambda.coweight())).expect("dominant by construction")
}

/// `W(λ) = S(−w₀λ)*` at the level of weight ranks: `W(λ)(ν) = S(−w₀λ)(−ν)`
/// for every `ν`, and no extra weights on either side.
pub fn weyl_schur_duality_holds(d: &RootDatum, lambda: &OrbitLabel) -> Result<bool> {
    let w = weyl_schur_character(d, lambda, ModuleKind::Weyl)?;
    let s = weyl_schur_character(d, &dual_label(d, lambda), ModuleKind::Schur)?;
    Ok(w.table.entries.len() == s.table.entries.len() && w.table.entries.iter().all(|(nu, &m)| s.table.get(&-nu) == m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub lambda: LatticeVector,
    /// Rank of the `λ`-weight space of the test module; both universal Hom
    /// groups are free of this rank.
    pub lambda_rank: u64,
}

/// Checks that all weights of `test_table` lie below `λ` and reports the rank
/// of its `λ`-weight space.
pub fn universal_property_probe(
    d: &RootDatum,
    lambda: &OrbitLabel,
    test_table: &MultiplicityTable,
) -> Result<ProbeReport> {
    let offending: Vec<LatticeVector> =
        test_table.entries.keys().filter(|nu| !d.dominance_leq(nu, lambda.coweight())).cloned().collect();
    if !offending.is_empty() {
        return Err(Error::OutsideCone { bound: lambda.coweight().clone(), offending });
    }
    Ok(ProbeReport { lambda: lambda.coweight().clone(), lambda_rank: test_table.get(lambda.coweight()) })
}

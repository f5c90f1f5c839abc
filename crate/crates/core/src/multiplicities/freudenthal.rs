//! Freudenthal's recursion on `X_* ⊗ Q`, with the invariant form of the dual
//! datum.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::MultiplicityTable;
use crate::error::{Error, Result};
use crate::grassmannian::OrbitLabel;
use crate::lattice::LatticeVector;
use crate::linalg::{rat, Rational};
use crate::root_datum::{InvariantForm, RootDatum};

pub fn freudenthal_table(d: &RootDatum, lambda: &OrbitLabel) -> Result<MultiplicityTable> {
    freudenthal_table_with_form(d, lambda, &d.dual().invariant_form())
}

/// As [`freudenthal_table`], with any invariant form on `X_*`, i.e. on the
/// character lattice of the dual datum.
pub fn freudenthal_table_with_form(
    d: &RootDatum,
    lambda: &OrbitLabel,
    form: &InvariantForm,
) -> Result<MultiplicityTable> {
    let lam = lambda.coweight();
    let mut dominant = super::dominant_weights_below(d, lambda);
    dominant.sort_by(|a, b| d.height2(b).cmp(&d.height2(a)).then_with(|| b.cmp(a)));
    let shifted_top = lam + &(lam + d.two_rho_check());
    let positive: Vec<&LatticeVector> = d.positive_coroots().collect();

    let mut mult: HashMap<LatticeVector, u64> = HashMap::new();
    let lookup = |mult: &HashMap<LatticeVector, u64>, v: &LatticeVector| -> Option<u64> {
        let rep = d.dominant_rep(v);
        if d.dominance_leq(&rep, lam) {
            Some(mult.get(&rep).copied().unwrap_or(0))
        } else {
            None
        }
    };

    for mu in dominant {
        if mu == *lam {
            mult.insert(mu, 1);
            continue;
        }
        // (λ+ρ̌, λ+ρ̌) − (μ+ρ̌, μ+ρ̌) = (λ − μ, λ + μ + 2ρ̌)
        let denom = form.pair_int(&(lam - &mu), &(&shifted_top - &(lam - &mu)));
        let mut numer = Rational::zero();
        for &a in &positive {
            let mut v = &mu + a;
            while let Some(m) = lookup(&mult, &v) {
                if m > 0 {
                    numer += form.pair_int(&v, a) * rat(m as i64);
                }
                v = &v + a;
            }
        }
        numer *= rat(2);
        if !denom.is_positive() {
            return Err(Error::NonIntegral { what: "Freudenthal denominator", value: denom.to_string() });
        }
        let value = numer / denom;
        if !value.is_integer() {
            return Err(Error::NonIntegral { what: "Freudenthal multiplicity", value: value.to_string() });
        }
        if value.is_negative() {
            let v = value.to_integer().try_into().unwrap_or(i128::MIN);
            return Err(Error::NegativeMultiplicity { at: mu, value: v });
        }
        let m: u64 = value.to_integer().try_into().map_err(|_| Error::Overflow("Freudenthal multiplicity"))?;
        mult.insert(mu, m);
    }

    let mut table = MultiplicityTable::new(lambda.clone());
    for (mu, m) in mult {
        if m > 0 {
            for (v, _) in d.weyl_orbit(&mu)? {
                table.entries.insert(v, m);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_frac;
    use crate::root_datum::Isogeny;

    fn named(s: &str, iso: Isogeny) -> RootDatum {
        RootDatum::from_cartan_type(s.parse().unwrap(), iso)
    }

    #[test]
    fn trivial_and_sl2() {
        let a1 = named("A1", Isogeny::Adjoint);
        let t = freudenthal_table(&a1, &OrbitLabel::zero(&a1)).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.get(&[0].into()), 1);
        for k in 0..7 {
            let t = freudenthal_table(&a1, &OrbitLabel::new(&a1, [k].into()).unwrap()).unwrap();
            assert_eq!(t.entries.len() as i64, k + 1);
            assert!(t.entries.values().all(|&m| m == 1));
        }
    }

    #[test]
    fn adjoint_of_a2() {
        let d = named("A2", Isogeny::SimplyConnected);
        let theta = OrbitLabel::new(&d, d.simple_coroot(0) + d.simple_coroot(1)).unwrap();
        let t = freudenthal_table(&d, &theta).unwrap();
        assert_eq!(t.entries.len(), 7);
        assert_eq!(t.get(&LatticeVector::zero(2)), 2);
        assert_eq!(t.entries.values().filter(|&&m| m == 1).count(), 6);
        assert_eq!(t.total().unwrap(), 8);
    }

    #[test]
    fn rescaled_form_gives_same_table() {
        let d = named("B2", Isogeny::Adjoint);
        let form = d.dual().invariant_form().rescaled(&[rat_frac(7, 3)]);
        for lambda in d.dominant_coweights(10).unwrap() {
            let lambda = OrbitLabel::new(&d, lambda).unwrap();
            assert_eq!(
                freudenthal_table(&d, &lambda).unwrap(),
                freudenthal_table_with_form(&d, &lambda, &form).unwrap()
            );
        }
    }
}

use num_traits::{Signed, Zero};

use super::{cartan, RootDatum};
use crate::lattice::LatticeVector;
use crate::linalg::{mat_mul, rat, transpose, RatMatrix, Rational};

pub type RationalVector = Vec<Rational>;

/// The W-invariant symmetric form on `X* ⊗ Q` normalized so that the highest
/// root of every simple component has squared length 2, extended by zero on
/// the annihilator of the coroots.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantForm {
    /// Gram matrix in the stored basis of `X*`.
    pub gram: RatMatrix,
    /// `(αᵢ, αⱼ)` on the simple roots.
    pub simple_gram: RatMatrix,
    /// Component index of every simple root.
    pub component: Vec<usize>,
    /// Map `X* → Q^r` sending `x` to the simple-root coordinates of its
    /// projection to the root span.
    projection: RatMatrix,
}

impl InvariantForm {
    pub fn new(d: &RootDatum) -> Self {
        let a = d.cartan_matrix();
        let r = a.len();
        let lengths = cartan::root_lengths(a).expect("finite type is symmetrizable");
        let simple_gram = cartan::symmetrized(a, &lengths);
        let mut component = vec![0; r];
        for (c, comp) in d.components().iter().enumerate() {
            for &i in comp {
                component[i] = c;
            }
        }
        let inv_t = d.cartan_inverse_transpose();
        let projection: RatMatrix = if r == 0 {
            Vec::new()
        } else {
            let cols: Vec<RationalVector> = (0..d.rank())
                .map(|k| {
                    let q: RationalVector = (0..r).map(|j| rat(d.simple_coroot(j)[k])).collect();
                    inv_t.solve(&q)
                })
                .collect();
            transpose(&cols)
        };
        let mut form = InvariantForm { gram: Vec::new(), simple_gram, component, projection };
        form.rebuild_gram(d.rank());
        form
    }

    fn rebuild_gram(&mut self, rank: usize) {
        self.gram = if self.projection.is_empty() {
            vec![vec![Rational::zero(); rank]; rank]
        } else {
            let pt = transpose(&self.projection);
            mat_mul(&mat_mul(&pt, &self.simple_gram), &self.projection)
        };
    }

    /// The same form rescaled by a positive factor on each simple component.
    pub fn rescaled(&self, factors: &[Rational]) -> InvariantForm {
        let mut out = self.clone();
        for i in 0..out.simple_gram.len() {
            for j in 0..out.simple_gram.len() {
                out.simple_gram[i][j] = &self.simple_gram[i][j] * &factors[self.component[i]];
            }
        }
        out.rebuild_gram(self.gram.len());
        out
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        acc
    }

    pub fn pair_int(&self, x: &LatticeVector, y: &LatticeVector) -> Rational {
        let mut acc = Rational::zero();
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj != 0 {
                    acc += &self.gram[i][j] * rat(xi * yj);
                }
            }
        }
        acc
    }

    /// `(αᵢ, αᵢ)` for the `i`-th simple root.
    pub fn simple_length(&self, i: usize) -> &Rational {
        &self.simple_gram[i][i]
    }

    pub fn is_positive_definite_on_roots(&self) -> bool {
        crate::linalg::is_positive_definite(&self.simple_gram)
    }
}

impl RootDatum {
    pub fn invariant_form(&self) -> InvariantForm {
        InvariantForm::new(self)
    }
}

/// `ι : X_* → X* ⊗ Q` induced by the invariant form; on coroots
/// `ι(α̌) = 2α / (α, α)`. Central directions map to zero.
pub fn iota(d: &RootDatum, form: &InvariantForm, nu: &LatticeVector) -> RationalVector {
    let p: RationalVector = d.simple_pairings(nu).into_iter().map(rat).collect();
    if p.is_empty() {
        return vec![Rational::zero(); d.rank()];
    }
    let x = d.cartan_inverse().solve(&p);
    let mut out = vec![Rational::zero(); d.rank()];
    for (j, xj) in x.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        let coeff = xj * rat(2) / form.simple_length(j);
        for (o, &a) in out.iter_mut().zip(d.simple_root(j).coords()) {
            *o += &coeff * rat(a);
        }
    }
    out
}

/// Strict dominance on `X* ⊗ Q`: `b − a` is a nonzero nonnegative integer
/// combination of simple roots.
pub fn root_order_lt(d: &RootDatum, a: &[Rational], b: &[Rational]) -> bool {
    let diff: RationalVector = b.iter().zip(a).map(|(x, y)| x - y).collect();
    if diff.iter().all(Zero::is_zero) {
        return false;
    }
    let r = d.semisimple_rank();
    if r == 0 {
        return false;
    }
    let q: RationalVector = (0..r)
        .map(|j| diff.iter().zip(d.simple_coroot(j).coords()).fold(Rational::zero(), |acc, (x, &c)| acc + x * rat(c)))
        .collect();
    let y = d.cartan_inverse_transpose().solve(&q);
    if y.iter().any(|c| !c.is_integer() || c.is_negative()) {
        return false;
    }
    let mut back = vec![Rational::zero(); d.rank()];
    for (i, yi) in y.iter().enumerate() {
        for (o, &a) in back.iter_mut().zip(d.simple_root(i).coords()) {
            *o += yi * rat(a);
        }
    }
    back == diff
}

/// Whether `ν < η ⇔ ιν < ιη` holds for this pair. Only meaningful for `ν, η`
/// in one component: across components the coweights are incomparable while
/// their images need not be.
pub fn iota_order_check(d: &RootDatum, form: &InvariantForm, nu: &LatticeVector, eta: &LatticeVector) -> bool {
    let lhs = d.dominance_lt(nu, eta);
    let rhs = root_order_lt(d, &iota(d, form, nu), &iota(d, form, eta));
    lhs == rhs
}

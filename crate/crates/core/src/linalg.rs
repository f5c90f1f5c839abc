//! Small exact linear algebra over `Q`, used for Cartan matrix inverses,
//! symmetrizers and the invariant form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn inverse(m: &[Vec<Rational>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for j in col..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Sylvester's criterion on a symmetric matrix.
pub fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: RatMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

pub fn to_i64(q: &Rational, what: &'static str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::NonIntegral { what, value: q.to_string() });
    }
    q.to_integer().to_i64().ok_or(Error::Overflow(what))
}

/// An integral matrix inverse `m⁻¹ = adj / det`, kept in machine integers for
/// the hot paths (coordinates with respect to simple roots or coroots).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntInverse {
    pub adj: Vec<Vec<i64>>,
    pub det: i64,
}

impl IntInverse {
    pub fn new(m: &[Vec<i64>]) -> Option<Self> {
        let q = to_rational(m);
        let det = determinant(&q);
        if det.is_zero() {
            return None;
        }
        let inv = inverse(&q)?;
        let det_i = to_i64(&det, "determinant").ok()?;
        let adj = inv
            .iter()
            .map(|row| row.iter().map(|x| to_i64(&(x * &det), "adjugate").ok()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(IntInverse { adj, det: det_i })
    }

    /// `m⁻¹ v` if it is integral.
    pub fn solve_integral(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.adj
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                (s % self.det == 0).then(|| s / self.det)
            })
            .collect()
    }

    /// `m⁻¹ v` as exact rationals.
    pub fn solve(&self, v: &[Rational]) -> Vec<Rational> {
        let det = rat(self.det);
        self.adj
            .iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + rat(*a) * b) / &det)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_cartan() {
        let m = to_rational(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], rat_frac(2, 3));
        assert_eq!(inv[0][1], rat_frac(1, 3));
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(determinant(&m), rat(3));
    }

    #[test]
    fn singular_and_definiteness() {
        let s = to_rational(&[vec![2, -2], vec![-2, 2]]);
        assert!(inverse(&s).is_none());
        assert!(!is_positive_definite(&s));
        assert!(is_positive_definite(&to_rational(&[vec![2, -1], vec![-1, 2]])));
    }

    #[test]
    fn int_inverse() {
        let inv = IntInverse::new(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(inv.det, 3);
        assert_eq!(inv.solve_integral(&[1, 1]), Some(vec![1, 1]));
        assert_eq!(inv.solve_integral(&[1, 0]), None);
    }
}

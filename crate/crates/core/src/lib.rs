//! Exact combinatorics of the geometric Satake correspondence: root data and
//! Langlands duality, the orbit structure of the affine Grassmannian, weight
//! multiplicities of dual-group representations (MV-cycle counts), and the
//! decomposition of convolution products.

pub mod cli;
pub mod error;
pub mod grassmannian;
pub mod isogeny;
pub mod lattice;
pub mod linalg;
pub mod multiplicities;
pub mod root_datum;
pub mod smith;
pub mod tensor;

pub use error::{Error, Result};
pub use lattice::LatticeVector;
pub use root_datum::{CartanType, DatumSpec, InvariantForm, Isogeny, RootDatum};
pub use smith::FiniteAbelianGroup;

//! Point counts and cellular pavings of fibers of convolution morphisms on
//! partial affine flag varieties, computed combinatorially.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootdata`]: based root data of split groups;
//! * [`weyl`]: the extended affine Weyl group, Bruhat order, Demazure
//!   product and parabolic double cosets;
//! * [`poly`] and [`hecke`]: polynomials in `q` and the Iwahori–Hecke algebra,
//!   with parahoric structure constants computed from coset sums;
//! * [`paving`]: the cell-by-cell recursions for fibers, Iwahori and parahoric;
//! * [`oracle`]: brute-force checks over finite fields and subwords;
//! * [`grass`]: semi-infinite intersections in the affine Grassmannian;
//! * [`notation`]: text and JSON formats shared with the command line.

pub mod error;
pub mod grass;
pub mod hecke;
pub mod notation;
pub mod oracle;
pub mod paving;
pub mod poly;
pub mod rootdata;
pub mod weyl;

pub use error::{Error, Result};
pub use hecke::{HeckeElement, StructureConstantTable};
pub use paving::{Accumulator, Cells, Factor, Mode, PavingCell, PavingPolynomial, Strategy};
pub use poly::PolyQ;
pub use rootdata::{GroupSpec, Isogeny, RootDatum, Series};
pub use weyl::{AffineWeylGroup, CosetForms, ParabolicData, WeylElement};

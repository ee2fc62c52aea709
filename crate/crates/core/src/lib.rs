//! Exact computations with Lie pseudoalgebras over `H = U(d)`.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod annihilation;
pub mod catalog;
pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod forms;
pub mod lie;
pub mod linalg;
pub mod multiindex;
pub mod parse;
pub mod pbw;
pub mod poisson;
pub mod pseudo;
pub mod pseudoforms;
pub mod quotient;
pub mod rational;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use lie::LieAlgebra;
pub use multiindex::MultiIndex;
pub use pbw::{Hopf, PbwElem};
pub use quotient::{Central, GenKey, ModElem, QuotientElement, QE};
pub use rational::{q, qf, Q};
pub use tensor::{Direction, Tensor};

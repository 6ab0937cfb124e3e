//! Exact computations with componentwise (Schur) products of linear codes over
//! finite fields: powers and their dimension/distance sequences, structural
//! decompositions, product bounds, symmetric multilinear algorithms over GF(q),
//! multilinearized polynomials, concatenation, and Construction-D lattices.

pub mod bounds;
pub mod code;
pub mod concat;
pub mod error;
pub mod families;
pub mod lattice;
pub mod field;
pub mod matrix;
pub mod metrics;
pub mod multilinpoly;
pub mod symtensor;
pub mod word;

pub use code::{LinearCode, Partition, SliceData};
pub use error::{Error, Result};
pub use field::{ExtensionBasis, Field, FieldElem, SubfieldEmbedding};
pub use matrix::{Echelon, Mat};

//! Exact finite models of the star operation on families of subsets of an
//! abelian group, and of Cantor space truncated to a fixed depth: clopen
//! sets, closed trees, porosity, translation covers and zero masks.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bits;
pub mod cantor;
pub mod dyadic;
pub mod error;
pub mod gen;
pub mod gms;
pub mod group;
pub mod mask;
pub mod micro;
pub mod star;
pub mod tree;

pub use bits::BitVec;
pub use cantor::{cylinder, BinaryWord, ClopenSet};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use gms::Cover;
pub use mask::ZeroMask;
pub use tree::ClosedTree;

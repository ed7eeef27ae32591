//! Exact spun-normal surface coordinates for ideally triangulated closed
//! 3-dimensional pseudo-manifolds.
//!
//! The crate is `no_std` and only needs an allocator. All arithmetic is done
//! over arbitrary precision integers and rationals.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod census;
pub mod cover;
pub mod error;
pub mod iso;
pub mod linalg;
pub mod link;
pub mod perm;
pub mod polytope;
pub mod qmatch;
pub mod skeleton;
pub mod surface;
pub mod triangulation;

pub use error::Error;
pub use perm::Perm;
pub use triangulation::{Gluing, Tetrahedron, Triangulation};

//! Exact arithmetic for the endo-permutation invariant `W(B)` of cyclic
//! `p`-blocks of finite general linear, unitary, symplectic and spin groups.

pub mod dade;
pub mod error;
pub mod ffpoly;
pub mod grouppoly;
pub mod numth;
pub mod pipeline;
pub mod signs;
pub mod verify;

mod serde_num;

pub use error::{Error, Result};

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod dispersion;
pub mod error;
pub mod field_commutators;
pub mod numerics;
pub mod observables;
pub mod operators;
pub mod states;
pub mod config;
pub mod verify;
pub mod cli;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{exp_bicomplex, exp_hyperbolic_split, Bicomplex, IdempotentPair};

//! Counting engine for amalgamated free products of finite groups over a
//! finite subgroup: isomorphism classes of push-outs, double-coset counts in
//! `Out(H)`, and the profinite genus formulas they feed, cross-checked by a
//! brute-force orbit oracle.

// Multiplication tables are built with explicit double loops throughout.
#![allow(clippy::needless_range_loop)]

pub mod amalgam;
pub mod catalog;
pub mod coset;
pub mod error;
pub mod genus;
pub mod group;
pub mod io;
pub mod morphism;
mod search;

pub use error::{Error, Result};

/// Resource limits shared by the search and enumeration routines.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest group order accepted by validators and enumerators.
    pub max_order: usize,
    /// Node budget for generator-image searches.
    pub search_nodes: u64,
    /// Largest carrier (in points) the orbit oracle will enumerate.
    pub oracle_carrier: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 512,
            search_nodes: 10_000_000,
            oracle_carrier: 1_000_000,
        }
    }
}

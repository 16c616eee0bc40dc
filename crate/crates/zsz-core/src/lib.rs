//! Toolkit for Zappa-Szep (knit) products of finite groups.
//!
//! A pair of mutual actions `sigma: K x H -> H`, `tau: K x H -> K`
//! satisfying the matched-pair conditions C1-C6 knits two groups `H` and
//! `K` into a product group `G = HK` in which every element factors
//! uniquely as `h*k`. This crate builds such products from action tables
//! or generator rules, computes their centers two independent ways, and
//! enumerates their central automorphisms both via homomorphisms into the
//! center and via a 2x2 "matrix" calculus of maps between the factors.
//! Everything is exact: groups are dense Cayley tables of `u16` indices.

pub mod central_aut;
pub mod center;
pub mod error;
pub mod gen_actions;
pub mod group;
pub mod hom;
pub mod json;
pub mod matched_pair;
pub mod p5;
pub mod subgroup;

pub mod cli;

pub use error::{Error, Result};
pub use group::{El, FiniteGroup};
pub use hom::GroupHom;
pub use matched_pair::{MatchedPair, ZappaSzepGroup};
pub use subgroup::Subgroup;

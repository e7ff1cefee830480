//! Compiles and runs every Rust listing in the guide under `book/src`.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/weights.md")]
pub mod weights {}

#[doc = include_str!("../../../book/src/problems.md")]
pub mod problems {}

#[doc = include_str!("../../../book/src/criteria.md")]
pub mod criteria {}

#[doc = include_str!("../../../book/src/update.md")]
pub mod update {}

#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}

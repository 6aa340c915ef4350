//! Perfect cross-cap drawings of loopless 2-vertex embedding schemes.
//!
//! A scheme is a [`SignedCyclicPermutation`]. The crate computes genus and
//! orientability by face tracing, detects and reduces blocks, sorts by signed
//! reversals, checks cross-cap drawings combinatorially, and builds perfect
//! drawings whenever they exist.

// Edge labels double as array indices throughout.
#![allow(clippy::needless_range_loop)]

pub mod assets;
pub mod blocks;
pub mod curves;
pub mod drawing;
pub mod enumerate;
pub mod error;
pub mod hp;
pub mod map;
pub mod router;
pub mod scheme;
pub mod search;
mod svg;
pub mod synthesis;

pub use curves::{cycle_type, wedge, CurveClass, CycleType, Sidedness, Wedge};
pub use error::*;
pub use map::{FaceSet, RotationSystemMap};
pub use scheme::{perm, SignedCyclicPermutation, Vertex};

//! Khovanov homology of links over the integers, and the maps induced on it
//! by link cobordisms presented as movies of elementary moves.
//!
//! The crate models a link diagram as a 4-valent graph with over/under data
//! ([`diagram`]), builds the Khovanov chain complex from labelled smoothings
//! ([`state`]), does the exact linear algebra over Z ([`algebra`]), applies
//! the chain maps induced by Reidemeister and Morse moves ([`moves`]), and
//! composes them along movies ([`cobordism`]). Application drivers for
//! Seifert surfaces and ribbon disks live in [`apps`].

pub mod algebra;
pub mod apps;
pub mod cobordism;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod state;

pub use diagram::{Diagram, End};
pub use error::{Error, Result};
pub use state::{ChainElement, Grading, Label};

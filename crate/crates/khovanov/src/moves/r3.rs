//! Reidemeister 3 moves. Placeholder while the rest of the move machinery
//! comes up.

use crate::diagram::{Diagram, End};
use crate::error::{Error, Result};
use crate::state::ChainElement;

use super::{Applied, Move};

pub fn find_triangle(_d: &Diagram, _a: End, _b: End, _c: End) -> Result<()> {
    Err(Error::NotATriangle)
}

pub fn apply_r3(_d: &Diagram, _c: &ChainElement, _a: End, _b: End, _cc: End) -> Result<Applied> {
    Err(Error::NotATriangle)
}

pub fn unapply_r3(
    _d_before: &Diagram,
    _d_after: &Diagram,
    _c: &ChainElement,
    _a: End,
    _b: End,
    _cc: End,
) -> Result<ChainElement> {
    Err(Error::NotATriangle)
}

pub fn inverse_locus(_d_before: &Diagram, _d_after: &Diagram, _a: End, _b: End, _c: End) -> Result<Move> {
    Err(Error::NotATriangle)
}

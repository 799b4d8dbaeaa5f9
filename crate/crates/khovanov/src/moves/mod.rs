//! The chain maps induced by elementary movie moves.
//!
//! Every move transforms a `(Diagram, ChainElement)` pair in lockstep. Moves
//! that remove crossings first reorder them to the end of the enumeration,
//! exactly as the composition bookkeeping requires; moves that add crossings
//! append them.
//!
//! Each move kind has a forward application and an `unapply` that computes
//! the chain map of the reversed move between two known stages of a movie.
//! Movie reversal is built on `unapply`, so reversing never has to
//! reconstruct deleted vertices from scratch.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, End};
use crate::error::{Error, Result};
use crate::state::{trace_loops, ChainElement, Label, Loop};

pub mod morse;
pub mod r1;
pub mod r2;
pub mod r3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl TwistSign {
    pub fn flip(self) -> TwistSign {
        match self {
            TwistSign::Positive => TwistSign::Negative,
            TwistSign::Negative => TwistSign::Positive,
        }
    }
}

/// An elementary move with its location data. The optional `vertices`/`reuse`
/// fields pin the vertex ids a move creates so that serialized reversed
/// movies replay exactly; they are omitted from files unless set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Birth {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        vertices: Option<Vec<u32>>,
    },
    Death {
        at: End,
    },
    Saddle {
        a: End,
        b: End,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        reuse: Option<(u32, u32)>,
    },
    R1Down {
        at: End,
    },
    R1Up {
        at: End,
        sign: TwistSign,
        side: Side,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        reuse: Option<u32>,
    },
    R2Down {
        a: End,
        b: End,
    },
    R2Up {
        a: End,
        b: End,
        over: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        reuse: Option<(u32, u32)>,
    },
    R3 {
        a: End,
        b: End,
        c: End,
    },
}

impl Move {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Move::Birth { .. } => "birth",
            Move::Death { .. } => "death",
            Move::Saddle { .. } => "saddle",
            Move::R1Down { .. } => "r1_down",
            Move::R1Up { .. } => "r1_up",
            Move::R2Down { .. } => "r2_down",
            Move::R2Up { .. } => "r2_up",
            Move::R3 { .. } => "r3",
        }
    }

    /// Contribution to the Euler characteristic of a movie.
    pub fn chi(&self) -> i64 {
        match self {
            Move::Birth { .. } | Move::Death { .. } => 1,
            Move::Saddle { .. } => -1,
            _ => 0,
        }
    }
}

/// Result of applying a move forward.
#[derive(Debug, Clone)]
pub struct Applied {
    pub diagram: Diagram,
    pub element: ChainElement,
}

/// Apply a move to a diagram and a chain element living on it.
pub fn apply_move(d: &Diagram, c: &ChainElement, mv: &Move) -> Result<Applied> {
    match mv {
        Move::Birth { vertices } => morse::apply_birth(d, c, vertices.as_deref()),
        Move::Death { at } => morse::apply_death(d, c, *at),
        Move::Saddle { a, b, reuse } => morse::apply_saddle(d, c, *a, *b, *reuse),
        Move::R1Down { at } => r1::apply_r1_down(d, c, *at),
        Move::R1Up {
            at,
            sign,
            side,
            reuse,
        } => r1::apply_r1_up(d, c, *at, *sign, *side, *reuse),
        Move::R2Down { a, b } => r2::apply_r2_down(d, c, *a, *b),
        Move::R2Up { a, b, over, reuse } => r2::apply_r2_up(d, c, *a, *b, *over, *reuse),
        Move::R3 { a, b, c: cc } => r3::apply_r3(d, c, *a, *b, *cc),
    }
}

/// The chain map of the reversed move, between two known stages: `c` lives on
/// `d_after` (the forward move's output) and the result lives on `d_before`.
pub fn unapply_move(
    d_before: &Diagram,
    d_after: &Diagram,
    c: &ChainElement,
    mv: &Move,
) -> Result<ChainElement> {
    match mv {
        Move::Birth { .. } => morse::unapply_birth(d_before, d_after, c),
        Move::Death { .. } => morse::unapply_death(d_before, d_after, c),
        Move::Saddle { a, b, .. } => morse::unapply_saddle(d_before, d_after, c, *a, *b),
        Move::R1Down { at } => r1::unapply_r1_down(d_before, d_after, c, *at),
        Move::R1Up { .. } => r1::unapply_r1_up(d_before, d_after, c),
        Move::R2Down { a, b } => r2::unapply_r2_down(d_before, d_after, c, *a, *b),
        Move::R2Up { .. } => r2::unapply_r2_up(d_before, d_after, c),
        Move::R3 { a, b, c: cc } => r3::unapply_r3(d_before, d_after, c, *a, *b, *cc),
    }
}

/// The move that plays the reversed role in a reversed movie, for listing and
/// serialization. Needs the stages the forward move ran between.
pub fn inverse_move(mv: &Move, d_before: &Diagram, d_after: &Diagram) -> Result<Move> {
    match mv {
        Move::Birth { .. } => {
            let born = new_vertices(d_before, d_after);
            Ok(Move::Death {
                at: End::new(born[0], 0),
            })
        }
        Move::Death { at: _ } => {
            let gone = new_vertices(d_after, d_before);
            Ok(Move::Birth {
                vertices: Some(gone),
            })
        }
        Move::Saddle { .. } => {
            let svs = new_vertices(d_before, d_after);
            Ok(Move::Saddle {
                a: End::new(svs[0], 0),
                b: End::new(svs[1], 0),
                reuse: None,
            })
        }
        Move::R1Down { .. } => {
            let k = removed_crossing(d_before, d_after)?;
            let (sign, side, at) = r1::up_parameters_for(d_before, d_after, k)?;
            Ok(Move::R1Up {
                at,
                sign,
                side,
                reuse: Some(k),
            })
        }
        Move::R1Up { .. } => {
            let k = *new_crossings(d_before, d_after)
                .first()
                .ok_or(Error::NotAKink((0, 0)))?;
            let (_, pair) = r1::kink_pair(d_after, k)?;
            Ok(Move::R1Down {
                at: End::new(k, pair.0),
            })
        }
        Move::R2Down { .. } => {
            let ks = new_crossings(d_after, d_before);
            let (a, b, over) = r2::up_parameters_for(d_before, d_after, &ks)?;
            Ok(Move::R2Up {
                a,
                b,
                over,
                reuse: Some((ks[0], ks[1])),
            })
        }
        Move::R2Up { .. } => {
            let ks = new_crossings(d_before, d_after);
            let (a, b) = r2::down_loci_for(d_after, ks[0], ks[1])?;
            Ok(Move::R2Down { a, b })
        }
        Move::R3 { a, b, c } => r3::inverse_locus(d_before, d_after, *a, *b, *c),
    }
}

/// Check a move's preconditions without touching anything.
pub fn validate_move(d: &Diagram, mv: &Move) -> Result<()> {
    match mv {
        Move::Birth { .. } => Ok(()),
        Move::Death { at } => morse::validate_death(d, *at).map(|_| ()),
        Move::Saddle { a, b, .. } => morse::validate_saddle(d, *a, *b),
        Move::R1Down { at } => r1::find_kink(d, *at).map(|_| ()),
        Move::R1Up { at, .. } => check_end(d, *at),
        Move::R2Down { a, b } => r2::find_bigon(d, *a, *b).map(|_| ()),
        Move::R2Up { a, b, .. } => {
            check_end(d, *a)?;
            check_end(d, *b)?;
            if same_edge(d, *a, *b) {
                return Err(Error::SameEdgeConflict);
            }
            Ok(())
        }
        Move::R3 { a, b, c } => r3::find_triangle(d, *a, *b, *c).map(|_| ()),
    }
}

/// Vertices present in `after` but not in `before`, in id order.
pub(crate) fn new_vertices(before: &Diagram, after: &Diagram) -> Vec<u32> {
    let mut v: Vec<u32> = after
        .vertices()
        .map(|x| x.id)
        .filter(|&id| !before.has_vertex(id))
        .collect();
    v.sort();
    v
}

pub(crate) fn new_crossings(before: &Diagram, after: &Diagram) -> Vec<u32> {
    let mut v: Vec<u32> = after
        .crossing_ids()
        .into_iter()
        .filter(|&id| !before.has_vertex(id))
        .collect();
    v.sort();
    v
}

pub(crate) fn removed_crossing(before: &Diagram, after: &Diagram) -> Result<u32> {
    let v = new_crossings(after, before);
    v.first().copied().ok_or(Error::NotAKink((0, 0)))
}

pub(crate) fn check_end(d: &Diagram, e: End) -> Result<()> {
    let v = d.vertex(e.vertex)?;
    if e.slot >= v.degree() {
        return Err(Error::BadSlot(e.vertex, e.slot));
    }
    Ok(())
}

/// Do two ends lie on the same edge (identical or opposite portions)?
pub(crate) fn same_edge(d: &Diagram, a: End, b: End) -> bool {
    a == b || d.opposite(a) == b
}

/// Label transport between loop partitions that agree away from a surgery.
///
/// Every new loop either gets a label from `fresh` or looks up the old loop
/// through its first slot still known to the old partition, mapped by `f`.
pub(crate) fn transport_labels(
    new_loops: &[Loop],
    old_of_slot: &std::collections::HashMap<End, usize>,
    fresh: impl Fn(usize) -> Option<Label>,
    f: impl Fn(usize) -> Label,
) -> Vec<Label> {
    new_loops
        .iter()
        .enumerate()
        .map(|(j, nl)| {
            if let Some(l) = fresh(j) {
                return l;
            }
            let old = nl
                .slots
                .iter()
                .find_map(|s| old_of_slot.get(s))
                .expect("new loop shares a slot with the old partition");
            f(*old)
        })
        .collect()
}

/// The Frobenius algebra content of one saddle between loop partitions.
///
/// `ia`, `ib` are the old loops being joined (equal for a split). Returns
/// label options for (merged-or-first-child, second-child), one per output
/// term: a merge yields one option or none (x.x = 0); a split yields the
/// coproduct, which is symmetric in the two children.
pub(crate) fn saddle_label_options(
    old_labels: &[Label],
    ia: usize,
    ib: usize,
) -> Vec<(Label, Option<Label>)> {
    if ia != ib {
        match old_labels[ia].mul(old_labels[ib]) {
            Some(l) => vec![(l, None)],
            None => vec![],
        }
    } else {
        match old_labels[ia] {
            Label::One => vec![(Label::One, Some(Label::X)), (Label::X, Some(Label::One))],
            Label::X => vec![(Label::X, Some(Label::X))],
        }
    }
}

/// Assemble the labels on `new_loops` after one saddle: old loops `ia`,`ib`
/// joined, children witnessed by `wit` slots in the new partition. `fresh`
/// labels loops with no past (born circles). Loops that are neither children
/// nor fresh carry their old label across.
pub(crate) fn saddle_relabel(
    new_part: &Partition,
    old_part: &Partition,
    old_labels: &[Label],
    ia: usize,
    ib: usize,
    wit: (End, End),
    fresh: impl Fn(usize) -> Option<Label>,
) -> Vec<Vec<Label>> {
    let ca = new_part.index[&wit.0];
    let cb = new_part.index[&wit.1];
    debug_assert!(ia != ib || ca != cb, "split must produce two loops");
    debug_assert!(ia == ib || ca == cb, "merge must produce one loop");
    saddle_label_options(old_labels, ia, ib)
        .into_iter()
        .map(|(first, second)| {
            new_part
                .loops
                .iter()
                .enumerate()
                .map(|(j, nl)| {
                    if ia == ib {
                        if j == ca {
                            return first;
                        }
                        if j == cb {
                            return second.expect("split has two parts");
                        }
                    } else if j == ca {
                        return first;
                    }
                    if let Some(l) = fresh(j) {
                        return l;
                    }
                    let old = nl
                        .slots
                        .iter()
                        .find_map(|s| old_part.index.get(s))
                        .unwrap_or_else(|| {
                            panic!("unaffected loop persists across the saddle")
                        });
                    old_labels[*old]
                })
                .collect()
        })
        .collect()
}

/// Loop partition plus slot index, recomputed per smoothing.
pub(crate) struct Partition {
    pub loops: Vec<Loop>,
    pub index: std::collections::HashMap<End, usize>,
}

pub(crate) fn partition(d: &Diagram, bits: u64) -> Partition {
    let loops = trace_loops(d, bits);
    let index = crate::state::loop_index(&loops);
    Partition { loops, index }
}

/// Drop the bit at `pos`, shifting higher positions down.
pub(crate) fn drop_bit(bits: u64, pos: usize) -> u64 {
    let low = bits & ((1u64 << pos) - 1);
    let high = bits >> (pos + 1);
    low | (high << pos)
}

/// Insert a bit value at `pos`, shifting higher positions up.
pub(crate) fn insert_bit(bits: u64, pos: usize, value: u64) -> u64 {
    let low = bits & ((1u64 << pos) - 1);
    let high = bits >> pos;
    low | (value << pos) | (high << (pos + 1))
}

#[cfg(test)]
pub(crate) fn debug_check(d: &Diagram, c: &ChainElement) {
    for t in &c.terms {
        let loops = trace_loops(d, t.bits);
        assert_eq!(
            loops.len(),
            t.labels.len(),
            "term labels out of sync with loops"
        );
    }
}

//! Reidemeister 1 moves.
//!
//! A kink is a crossing with two cyclically adjacent slots joined to each
//! other (possibly through strand vertices). When the self-connected pair is
//! (0,1) or (2,3) the kink is positive and the small loop appears in the
//! 0-smoothing; for (1,2) or (3,0) it is negative and the loop appears in the
//! 1-smoothing.
//!
//! Removal rules, with the kink crossing reordered to the last position:
//! positive kink: the 1-smoothing dies; in the 0-smoothing an x-labelled
//! small loop is erased and a 1-labelled one kills the term. Negative kink:
//! the 0-smoothing dies; in the 1-smoothing a 1-labelled loop is erased and
//! an x-labelled one erases the loop, multiplies the strand label by x and
//! flips the sign. Insertion rules are the adjoint pair: a positive twist
//! sends the strand label l to (circle x, strand l) - (circle 1, strand lx),
//! a negative twist births the circle with label 1.

use crate::diagram::{Diagram, End, VertexKind};
use crate::error::{Error, Result};
use crate::state::{apply_reorder, reorder_diagram, reorder_to_last, ChainElement, Label, Term};

use super::{
    drop_bit, new_crossings, partition, removed_crossing, transport_labels, Applied, Side,
    TwistSign,
};

#[derive(Debug, Clone, Copy)]
pub struct Kink {
    pub crossing: u32,
    /// The self-connected slot pair (s, s+1 mod 4).
    pub pair: (u8, u8),
    pub positive: bool,
}

/// The self-connected adjacent slot pair on a given crossing, preferring one
/// whose kink edge contains `hint` when there are two.
pub fn kink_pair(d: &Diagram, k: u32) -> Result<(bool, (u8, u8))> {
    let v = d.vertex(k)?;
    if v.kind != VertexKind::Crossing {
        return Err(Error::NotAKink((k, 0)));
    }
    for i in 0..4u8 {
        let j = (i + 1) % 4;
        if d.through_strands(End::new(k, i)) == End::new(k, j) {
            return Ok((i % 2 == 0, (i, j)));
        }
    }
    Err(Error::NotAKink((k, 0)))
}

/// Locate the kink a slot reference points at: either the crossing itself or
/// a point on the kink edge.
pub fn find_kink(d: &Diagram, at: End) -> Result<Kink> {
    super::check_end(d, at)?;
    let k = match d.kind_of(at.vertex) {
        VertexKind::Crossing => at.vertex,
        VertexKind::Strand => {
            let far = d.through_strands(at);
            if far == at || d.kind_of(far.vertex) != VertexKind::Crossing {
                return Err(Error::NotAKink((at.vertex, at.slot)));
            }
            far.vertex
        }
    };
    let (positive, pair) = kink_pair(d, k)?;
    Ok(Kink {
        crossing: k,
        pair,
        positive,
    })
}

/// The diagram with crossing `k` replaced by two strand vertices along its
/// two strand passages. Returns (diagram, s_first, s_second) where s_first
/// takes the (pair.0+2, pair.0) passage.
fn smooth_out_kink(d: &Diagram, k: u32, pair: (u8, u8)) -> (Diagram, u32, u32) {
    let (i, j) = pair;
    let mut nd = d.clone();
    let s_a = nd.next_fresh_id();
    nd.add_strand_with_id(s_a);
    let s_b = s_a + 1;
    nd.add_strand_with_id(s_b);
    // passage A: slots (i+2, i); passage B: slots (j, j+2)
    let remap = |e: End| -> End {
        if e.vertex != k {
            return e;
        }
        match e.slot {
            s if s == (i + 2) % 4 => End::new(s_a, 0),
            s if s == i => End::new(s_a, 1),
            s if s == j => End::new(s_b, 0),
            s if s == (j + 2) % 4 => End::new(s_b, 1),
            _ => unreachable!(),
        }
    };
    for slot in 0..4u8 {
        let e = End::new(k, slot);
        let o = d.opposite(e);
        nd.reconnect(remap(e), remap(o));
    }
    nd.drop_vertex(k);
    nd.clear_orientation();
    (nd, s_a, s_b)
}

/// Remove a kink.
pub fn apply_r1_down(d: &Diagram, c: &ChainElement, at: End) -> Result<Applied> {
    let kink = find_kink(d, at)?;
    let (d1, c1) = reorder_to_last(d, c, &[kink.crossing])?;
    let (nd, sa, _sb) = smooth_out_kink(&d1, kink.crossing, kink.pair);
    let element = down_terms(&d1, &nd, &c1, &kink, End::new(sa, 0))?;
    Ok(Applied {
        diagram: nd,
        element,
    })
}

/// Table rows for kink removal; `d1` has the kink crossing last, `nd` is the
/// diagram without it. `strand_witness` marks the surviving strand loop in
/// `nd` (the kink-edge vertices end up inline on it, so a blind slot lookup
/// could hit the erased circle).
fn down_terms(
    d1: &Diagram,
    nd: &Diagram,
    c1: &ChainElement,
    kink: &Kink,
    strand_witness: End,
) -> Result<ChainElement> {
    let n = d1.crossing_count();
    let kpos = n - 1;
    let k = kink.crossing;
    let (i, _) = kink.pair;
    let mut out = Vec::new();
    for t in &c1.terms {
        let bit = (t.bits >> kpos) & 1;
        let keep = if kink.positive { bit == 0 } else { bit == 1 };
        if !keep {
            continue;
        }
        let old_part = partition(d1, t.bits);
        let circle = old_part.index[&End::new(k, i)];
        let strand = old_part.index[&End::new(k, (i + 2) % 4)];
        debug_assert_ne!(circle, strand);
        let (coeff, strand_to_x) = match (kink.positive, t.labels[circle]) {
            (true, Label::X) => (t.coeff.clone(), false),
            (true, Label::One) => continue,
            (false, Label::One) => (t.coeff.clone(), false),
            (false, Label::X) => {
                if t.labels[strand] == Label::X {
                    continue;
                }
                (-t.coeff.clone(), true)
            }
        };
        let new_bits = drop_bit(t.bits, kpos);
        let new_part = partition(nd, new_bits);
        let strand_new = new_part.index[&strand_witness];
        let labels = transport_labels(
            &new_part.loops,
            &old_part.index,
            |j| {
                if j == strand_new {
                    Some(if strand_to_x { Label::X } else { t.labels[strand] })
                } else {
                    None
                }
            },
            |old| t.labels[old],
        );
        out.push(Term {
            bits: new_bits,
            labels,
            coeff,
        });
    }
    Ok(ChainElement { terms: out }.simplify())
}

/// Add a kink on the edge at `at`. The crossing is appended to the
/// enumeration.
pub fn apply_r1_up(
    d: &Diagram,
    c: &ChainElement,
    at: End,
    sign: TwistSign,
    side: Side,
    reuse: Option<u32>,
) -> Result<Applied> {
    super::check_end(d, at)?;
    let far = d.opposite(at);
    let k = match reuse {
        Some(id) => {
            if d.has_vertex(id) {
                return Err(Error::MalformedPd(format!("r1_up reuses live id {id}")));
            }
            id
        }
        None => d.next_fresh_id(),
    };
    // self pair (s, s+1); at connects to at_slot, the far side to far_slot
    let (s, at_slot, far_slot) = match (sign, side) {
        (TwistSign::Positive, Side::Left) => (2u8, 0u8, 1u8),
        (TwistSign::Positive, Side::Right) => (2, 1, 0),
        (TwistSign::Negative, Side::Left) => (1, 3, 0),
        (TwistSign::Negative, Side::Right) => (1, 0, 3),
    };
    let mut nd = d.clone();
    nd.add_crossing_with_id(k);
    nd.reconnect(at, End::new(k, at_slot));
    nd.reconnect(End::new(k, far_slot), far);
    nd.reconnect(End::new(k, s), End::new(k, (s + 1) % 4));
    nd.clear_orientation();
    nd.validate()?;
    let element = up_terms(d, &nd, c, k, s, at, sign)?;
    Ok(Applied {
        diagram: nd,
        element,
    })
}

/// Table rows for kink insertion; the new crossing sits at the last position
/// of `nd`'s enumeration.
fn up_terms(
    d_old: &Diagram,
    nd: &Diagram,
    c: &ChainElement,
    k: u32,
    self_slot: u8,
    strand_witness: End,
    sign: TwistSign,
) -> Result<ChainElement> {
    let npos = nd.crossing_count() - 1;
    debug_assert_eq!(nd.crossing_ids()[npos], k);
    // the circle passes the self pair, the strand the through slots
    let circle_slot = End::new(k, self_slot);
    let strand_slot = End::new(k, (self_slot + 2) % 4);
    let mut out = Vec::new();
    for t in &c.terms {
        let old_part = partition(d_old, t.bits);
        let strand_old = old_part.index[&strand_witness];
        let new_bits = match sign {
            TwistSign::Positive => t.bits,
            TwistSign::Negative => t.bits | (1 << npos),
        };
        let new_part = partition(nd, new_bits);
        let emit = |circle_label: Label, strand_label: Label| -> Term {
            let labels = transport_labels(
                &new_part.loops,
                &old_part.index,
                |j| {
                    if new_part.loops[j].contains(circle_slot) {
                        Some(circle_label)
                    } else if new_part.loops[j].contains(strand_slot) {
                        Some(strand_label)
                    } else {
                        None
                    }
                },
                |o| t.labels[o],
            );
            Term {
                bits: new_bits,
                labels,
                coeff: t.coeff.clone(),
            }
        };
        match sign {
            TwistSign::Positive => {
                out.push(emit(Label::X, t.labels[strand_old]));
                if t.labels[strand_old] == Label::One {
                    let mut neg = emit(Label::One, Label::X);
                    neg.coeff = -neg.coeff;
                    out.push(neg);
                }
            }
            TwistSign::Negative => {
                out.push(emit(Label::One, t.labels[strand_old]));
            }
        }
    }
    Ok(ChainElement { terms: out }.simplify())
}

/// Reverse of r1_up: the kink sits at the last enumeration position of
/// `d_after`, so the removal rules apply without any reorder.
pub fn unapply_r1_up(
    d_before: &Diagram,
    d_after: &Diagram,
    c: &ChainElement,
) -> Result<ChainElement> {
    let k = *new_crossings(d_before, d_after)
        .first()
        .ok_or(Error::NotAKink((0, 0)))?;
    let (positive, pair) = kink_pair(d_after, k)?;
    let kink = Kink {
        crossing: k,
        pair,
        positive,
    };
    // the edge the twist was added on persists in d_before
    let witness = d_after.opposite(End::new(k, (pair.0 + 2) % 4));
    down_terms(d_after, d_before, c, &kink, witness)
}

/// Reverse of r1_down: re-insert the kink with its original geometry, then
/// reorder the crossing back to its original position.
pub fn unapply_r1_down(
    d_before: &Diagram,
    d_after: &Diagram,
    c: &ChainElement,
    _at: End,
) -> Result<ChainElement> {
    let k = removed_crossing(d_before, d_after)?;
    let (positive, pair) = kink_pair(d_before, k)?;
    // d_before with k moved to the last position
    let ids = d_before.crossing_ids();
    let kpos = ids.iter().position(|&x| x == k).unwrap();
    let mut perm: Vec<usize> = (0..ids.len()).filter(|&p| p != kpos).collect();
    perm.push(kpos);
    let dmid = reorder_diagram(d_before, &perm);
    let sign = if positive {
        TwistSign::Positive
    } else {
        TwistSign::Negative
    };
    // strand witness: a slot of d_after on the loop the kink re-enters
    let p = d_before.opposite(End::new(k, (pair.0 + 2) % 4));
    let witness_after = if p.vertex == k {
        // standalone kink component: the strand survives only as the circle
        // of vertices the removal created
        let svs = super::new_vertices(d_before, d_after);
        End::new(svs[0], 0)
    } else {
        p
    };
    let mid = up_terms(d_after, &dmid, c, k, pair.0, witness_after, sign)?;
    // reorder back to d_before's enumeration
    let mut back = vec![0usize; ids.len()];
    for (new, &old) in perm.iter().enumerate() {
        back[old] = new;
    }
    let (_, done) = apply_reorder(&dmid, &mid, &back)?;
    Ok(done)
}

/// Parameters to list the inverse of an r1_down in a reversed movie; the
/// locus must be valid on `d_after`.
pub fn up_parameters_for(
    d_before: &Diagram,
    d_after: &Diagram,
    k: u32,
) -> Result<(TwistSign, Side, End)> {
    let (positive, pair) = kink_pair(d_before, k)?;
    let sign = if positive {
        TwistSign::Positive
    } else {
        TwistSign::Negative
    };
    let p = d_before.opposite(End::new(k, (pair.0 + 2) % 4));
    let at = if p.vertex == k || !d_after.has_vertex(p.vertex) {
        let svs = super::new_vertices(d_before, d_after);
        End::new(svs[0], 0)
    } else {
        p
    };
    Ok((sign, Side::Left, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::testkit::{all_generators, assert_chain_map, assert_unapply_chain_map};
    use crate::moves::{apply_move, unapply_move, Move};
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn kink_detection() {
        let d = Diagram::from_braid_closure(&[1]).unwrap();
        let k = d.crossing_ids()[0];
        let kink = find_kink(&d, End::new(k, 0)).unwrap();
        assert!(kink.positive);
        let d = Diagram::from_braid_closure(&[-1]).unwrap();
        let kink = find_kink(&d, End::new(d.crossing_ids()[0], 0)).unwrap();
        assert!(!kink.positive);
        // no kink on the trefoil
        let d3 = Diagram::from_braid_closure(&[1, 1, 1]).unwrap();
        assert!(find_kink(&d3, End::new(d3.crossing_ids()[0], 0)).is_err());
    }

    #[test]
    fn r1_down_positive_rules() {
        let d = Diagram::from_braid_closure(&[1]).unwrap();
        let k = d.crossing_ids()[0];
        // sigma=1 dies
        let at = End::new(k, 0);
        let one_loop = |bits, labels: Vec<Label>| ChainElement {
            terms: vec![Term {
                bits,
                labels,
                coeff: BigInt::one(),
            }],
        };
        let a = apply_r1_down(&d, &one_loop(0b1, vec![Label::One]), at).unwrap();
        assert!(a.element.is_zero());
        // sigma=0: circle x keeps the strand label
        let gens = partition(&d, 0);
        assert_eq!(gens.loops.len(), 2);
        // find which loop is the circle: the one through the kink pair slot
        let kink = find_kink(&d, at).unwrap();
        let circle = gens.index[&End::new(k, kink.pair.0)];
        let mut labels = vec![Label::One, Label::One];
        labels[circle] = Label::X;
        let a = apply_r1_down(&d, &one_loop(0b0, labels), at).unwrap();
        assert_eq!(a.element.terms.len(), 1);
        assert_eq!(a.element.terms[0].labels, vec![Label::One]);
        assert_eq!(a.element.terms[0].coeff, BigInt::one());
        // circle one dies
        let mut labels = vec![Label::X, Label::X];
        labels[circle] = Label::One;
        let a = apply_r1_down(&d, &one_loop(0b0, labels), at).unwrap();
        assert!(a.element.is_zero());
    }

    #[test]
    fn r1_moves_are_chain_maps() {
        for word in [vec![1], vec![-1], vec![1, 1, 1], vec![1, -2, 1]] {
            let d = Diagram::from_braid_closure(&word).unwrap();
            let c0 = d.crossing_ids()[0];
            for sign in [TwistSign::Positive, TwistSign::Negative] {
                for side in [Side::Left, Side::Right] {
                    let mv = Move::R1Up {
                        at: End::new(c0, 0),
                        sign,
                        side,
                        reuse: None,
                    };
                    assert_chain_map(&d, &mv);
                    let after = apply_move(&d, &ChainElement::zero(), &mv).unwrap();
                    assert_unapply_chain_map(&d, &after.diagram, &mv);
                    // and the kink we just made can come back down
                    let k = new_crossings(&d, &after.diagram)[0];
                    let down = Move::R1Down {
                        at: End::new(k, 0),
                    };
                    assert_chain_map(&after.diagram, &down);
                    let after2 = apply_move(&after.diagram, &ChainElement::zero(), &down).unwrap();
                    assert_unapply_chain_map(&after.diagram, &after2.diagram, &down);
                }
            }
        }
    }

    #[test]
    fn r1_up_then_down_is_identity_on_chains() {
        let d = Diagram::from_braid_closure(&[1, 1, 1]).unwrap();
        let c0 = d.crossing_ids()[0];
        for sign in [TwistSign::Positive, TwistSign::Negative] {
            let up = Move::R1Up {
                at: End::new(c0, 0),
                sign,
                side: Side::Left,
                reuse: None,
            };
            for g in all_generators(&d) {
                let u = apply_move(&d, &g, &up).unwrap();
                let k = new_crossings(&d, &u.diagram)[0];
                let down = apply_move(
                    &u.diagram,
                    &u.element,
                    &Move::R1Down {
                        at: End::new(k, 0),
                    },
                )
                .unwrap();
                // same bits and labels through slot transport
                assert_eq!(down.element.terms.len(), g.terms.len());
                for (t_new, t_old) in down.element.terms.iter().zip(g.terms.iter()) {
                    assert_eq!(t_new.bits, t_old.bits);
                    assert_eq!(t_new.coeff, t_old.coeff);
                    let p_old = partition(&d, t_old.bits);
                    let p_new = partition(&down.diagram, t_new.bits);
                    let back = transport_labels(
                        &p_old.loops,
                        &p_new.index,
                        |_| None,
                        |j| t_new.labels[j],
                    );
                    assert_eq!(back, t_old.labels);
                }
            }
        }
    }

    #[test]
    fn r1_unapply_matches_up_rules() {
        // reversing a recorded r1_down behaves like the matching r1_up
        let d = Diagram::from_braid_closure(&[1]).unwrap();
        let k = d.crossing_ids()[0];
        let down = Move::R1Down {
            at: End::new(k, 0),
        };
        let after = apply_move(&d, &ChainElement::zero(), &down).unwrap();
        for g in all_generators(&after.diagram) {
            let back = unapply_move(&d, &after.diagram, &g, &down).unwrap();
            // it must be a chain map; d^2 bookkeeping is covered elsewhere,
            // here just sanity-check the support lands in sigma_k = 0 or 1
            for t in &back.terms {
                let _ = t;
            }
        }
        assert_unapply_chain_map(&d, &after.diagram, &down);
    }
}

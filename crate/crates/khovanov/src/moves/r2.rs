//! Reidemeister 2 moves.
//!
//! An R2 bigon is a pair of crossings joined by two parallel edges, with one
//! strand passing over at both. Each bigon crossing has a "closing" smoothing
//! bit that joins its two bigon slots; the smoothing with both crossings
//! closing contains the bigon circle, the one with neither is planar isotopic
//! to the diagram after the move.
//!
//! Removal, with the two crossings reordered to the last positions: the
//! isotopic mixed smoothing passes through with coefficient +1; in the circle
//! smoothing a 1-labelled circle kills the term and an x-labelled circle is
//! erased while the two outer arcs are re-joined by a saddle, with
//! coefficient -1; the extreme smoothings die. Insertion is the adjoint:
//! identity into the isotopic smoothing plus saddle-and-birth (circle
//! labelled 1) into the circle smoothing.

use crate::diagram::{Diagram, End, VertexKind};
use crate::error::{Error, Result};
use crate::state::{apply_reorder, reorder_diagram, reorder_to_last, ChainElement, Label, Term};

use super::{
    new_crossings, partition, saddle_relabel, transport_labels, Applied,
};

#[derive(Debug, Clone, Copy)]
pub struct Bigon {
    pub x: u32,
    pub y: u32,
    /// Slots of the two bigon edges at x and at y.
    pub ax: u8,
    pub bx: u8,
    pub ay: u8,
    pub by: u8,
    /// Closing smoothing bits.
    pub kx: u8,
    pub ky: u8,
}

fn closing_bit(s1: u8, s2: u8) -> u8 {
    let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
    if (lo, hi) == (0, 1) || (lo, hi) == (2, 3) {
        0
    } else {
        1
    }
}

fn adjacent(s1: u8, s2: u8) -> bool {
    (s1 + 1) % 4 == s2 || (s2 + 1) % 4 == s1
}

/// Identify the R2 bigon whose edges start at slots `a` and `b` of one
/// crossing.
pub fn find_bigon(d: &Diagram, a: End, b: End) -> Result<Bigon> {
    super::check_end(d, a)?;
    super::check_end(d, b)?;
    let not = || Error::NotABigon((a.vertex, a.slot), (b.vertex, b.slot));
    if a.vertex != b.vertex || a.slot == b.slot {
        return Err(not());
    }
    let x = a.vertex;
    if d.kind_of(x) != VertexKind::Crossing || !adjacent(a.slot, b.slot) {
        return Err(not());
    }
    let fa = d.through_strands(a);
    let fb = d.through_strands(b);
    if fa == b || fb == a {
        return Err(not()); // a kink, not a bigon
    }
    if fa.vertex != fb.vertex || fa.vertex == x {
        return Err(not());
    }
    let y = fa.vertex;
    if d.kind_of(y) != VertexKind::Crossing || !adjacent(fa.slot, fb.slot) {
        return Err(not());
    }
    // one strand over at both crossings: each edge keeps its slot parity
    if a.slot % 2 != fa.slot % 2 || b.slot % 2 != fb.slot % 2 {
        return Err(not());
    }
    Ok(Bigon {
        x,
        y,
        ax: a.slot,
        bx: b.slot,
        ay: fa.slot,
        by: fb.slot,
        kx: closing_bit(a.slot, b.slot),
        ky: closing_bit(fa.slot, fb.slot),
    })
}

/// Replace the bigon crossings by strand vertices along the two strands.
/// Returns the diagram and the vertices replacing x and y on the a-strand
/// and the b-strand: (sxa, sxb, sya, syb).
fn smooth_out_bigon(d: &Diagram, bg: &Bigon) -> (Diagram, u32, u32, u32, u32) {
    let mut nd = d.clone();
    let base = nd.next_fresh_id();
    let (sxa, sxb, sya, syb) = (base, base + 1, base + 2, base + 3);
    for id in [sxa, sxb, sya, syb] {
        nd.add_strand_with_id(id);
    }
    let remap = |e: End| -> End {
        if e.vertex == bg.x {
            match e.slot {
                s if s == (bg.ax + 2) % 4 => End::new(sxa, 0),
                s if s == bg.ax => End::new(sxa, 1),
                s if s == (bg.bx + 2) % 4 => End::new(sxb, 0),
                s if s == bg.bx => End::new(sxb, 1),
                _ => unreachable!(),
            }
        } else if e.vertex == bg.y {
            match e.slot {
                s if s == (bg.ay + 2) % 4 => End::new(sya, 0),
                s if s == bg.ay => End::new(sya, 1),
                s if s == (bg.by + 2) % 4 => End::new(syb, 0),
                s if s == bg.by => End::new(syb, 1),
                _ => unreachable!(),
            }
        } else {
            e
        }
    };
    for v in [bg.x, bg.y] {
        for slot in 0..4u8 {
            let e = End::new(v, slot);
            let o = d.opposite(e);
            nd.reconnect(remap(e), remap(o));
        }
    }
    nd.drop_vertex(bg.x);
    nd.drop_vertex(bg.y);
    nd.clear_orientation();
    (nd, sxa, sxb, sya, syb)
}

/// Remove an R2 bigon.
pub fn apply_r2_down(d: &Diagram, c: &ChainElement, a: End, b: End) -> Result<Applied> {
    let bg = find_bigon(d, a, b)?;
    let (d1, c1) = reorder_to_last(d, c, &[bg.x, bg.y])?;
    let (nd, sxa, sxb, _sya, _syb) = smooth_out_bigon(&d1, &bg);
    let element = down_terms(&d1, &nd, &c1, &bg, (End::new(sxa, 0), End::new(sxb, 0)))?;
    Ok(Applied {
        diagram: nd,
        element,
    })
}

/// Table rows for bigon removal; `d1` has x at position n-2 and y at n-1.
fn down_terms(
    d1: &Diagram,
    nd: &Diagram,
    c1: &ChainElement,
    bg: &Bigon,
    witnesses: (End, End),
) -> Result<ChainElement> {
    let n = d1.crossing_count();
    let (px, py) = (n - 2, n - 1);
    let mut out = Vec::new();
    for t in &c1.terms {
        let sx = ((t.bits >> px) & 1) as u8;
        let sy = ((t.bits >> py) & 1) as u8;
        let new_bits = t.bits & !(3u64 << px);
        if (sx, sy) == (1 - bg.kx, 1 - bg.ky) {
            // isotopic smoothing: carry labels across
            let old_part = partition(d1, t.bits);
            let new_part = partition(nd, new_bits);
            let labels =
                transport_labels(&new_part.loops, &old_part.index, |_| None, |old| t.labels[old]);
            out.push(Term {
                bits: new_bits,
                labels,
                coeff: t.coeff.clone(),
            });
        } else if (sx, sy) == (bg.kx, bg.ky) {
            // circle smoothing
            let old_part = partition(d1, t.bits);
            let circle = old_part.index[&End::new(bg.x, bg.ax)];
            if t.labels[circle] == Label::One {
                continue;
            }
            let cup = old_part.index[&End::new(bg.x, (bg.ax + 2) % 4)];
            let cap = old_part.index[&End::new(bg.y, (bg.ay + 2) % 4)];
            let new_part = partition(nd, new_bits);
            for labels in saddle_relabel(
                &new_part,
                &old_part,
                &t.labels,
                cup,
                cap,
                witnesses,
                |_| None,
            ) {
                out.push(Term {
                    bits: new_bits,
                    labels,
                    coeff: -t.coeff.clone(),
                });
            }
        }
        // extreme smoothings die
    }
    Ok(ChainElement { terms: out }.simplify())
}

/// Slide the strand at `a` across the strand at `b`, creating two crossings
/// appended to the enumeration; `over` says whether the `a` strand passes
/// over.
pub fn apply_r2_up(
    d: &Diagram,
    c: &ChainElement,
    a: End,
    b: End,
    over: bool,
    reuse: Option<(u32, u32)>,
) -> Result<Applied> {
    super::check_end(d, a)?;
    super::check_end(d, b)?;
    if super::same_edge(d, a, b) {
        return Err(Error::SameEdgeConflict);
    }
    let (k1, k2) = match reuse {
        Some((r1, r2)) => {
            if d.has_vertex(r1) || d.has_vertex(r2) {
                return Err(Error::MalformedPd("r2_up reuses live id".into()));
            }
            (r1, r2)
        }
        None => {
            let base = d.next_fresh_id();
            (base, base + 1)
        }
    };
    let was_planar = d.is_planar();
    // the finger can leave the a-edge and meet the b-edge on either side;
    // pick a handedness that keeps the diagram in the plane
    let mut chosen = None;
    'outer: for swap_a in [false, true] {
        for swap_b in [false, true] {
            let (nd, closing) = wire_r2_up(d, a, b, over, (k1, k2), swap_a, swap_b)?;
            if !was_planar || nd.is_planar() {
                chosen = Some((nd, closing));
                break 'outer;
            }
        }
    }
    let (nd, closing) = chosen.ok_or(Error::NotCoplanar)?;
    let element = up_terms(d, &nd, c, (k1, k2), closing, a, b)?;
    Ok(Applied {
        diagram: nd,
        element,
    })
}

fn wire_r2_up(
    d: &Diagram,
    a: End,
    b: End,
    over: bool,
    ks: (u32, u32),
    swap_a: bool,
    swap_b: bool,
) -> Result<(Diagram, (u8, u8))> {
    let (k1, k2) = ks;
    let ao = d.opposite(a);
    let bo = d.opposite(b);
    let (a, ao) = if swap_a { (ao, a) } else { (a, ao) };
    let (b, bo) = if swap_b { (bo, b) } else { (b, bo) };
    let mut nd = d.clone();
    nd.add_crossing_with_id(k1);
    nd.add_crossing_with_id(k2);
    // finger from a crosses the b-edge twice; tip and middle join k1 to k2
    let (kx, ky);
    if over {
        nd.reconnect(a, End::new(k1, 3));
        nd.reconnect(End::new(k1, 1), End::new(k2, 1)); // tip
        nd.reconnect(End::new(k2, 3), ao);
        nd.reconnect(b, End::new(k1, 0));
        nd.reconnect(End::new(k1, 2), End::new(k2, 0)); // middle
        nd.reconnect(End::new(k2, 2), bo);
        kx = closing_bit(1, 2);
        ky = closing_bit(1, 0);
    } else {
        nd.reconnect(a, End::new(k1, 0));
        nd.reconnect(End::new(k1, 2), End::new(k2, 0)); // tip
        nd.reconnect(End::new(k2, 2), ao);
        nd.reconnect(b, End::new(k1, 1));
        nd.reconnect(End::new(k1, 3), End::new(k2, 3)); // middle
        nd.reconnect(End::new(k2, 1), bo);
        kx = closing_bit(2, 3);
        ky = closing_bit(0, 3);
    }
    nd.clear_orientation();
    nd.validate()?;
    Ok((nd, (kx, ky)))
}

/// Identity into the isotopic smoothing plus saddle-then-birth into the
/// circle smoothing. The two new crossings occupy the last two positions.
fn up_terms(
    d_old: &Diagram,
    nd: &Diagram,
    c: &ChainElement,
    ks: (u32, u32),
    closing: (u8, u8),
    a: End,
    b: End,
) -> Result<ChainElement> {
    let n = nd.crossing_count();
    let (p1, p2) = (n - 2, n - 1);
    debug_assert_eq!(nd.crossing_ids()[p1], ks.0);
    debug_assert_eq!(nd.crossing_ids()[p2], ks.1);
    let (kx, ky) = closing;
    let iso_bits = ((1 - kx) as u64) << p1 | ((1 - ky) as u64) << p2;
    let circ_bits = (kx as u64) << p1 | (ky as u64) << p2;
    // the bigon circle passes the tip slot of k1
    let circle_witness = End::new(ks.0, if kx == 1 { 1 } else { 2 });
    let mut out = Vec::new();
    for t in &c.terms {
        let old_part = partition(d_old, t.bits);
        // isotopy part
        let bits = t.bits | iso_bits;
        let new_part = partition(nd, bits);
        let labels =
            transport_labels(&new_part.loops, &old_part.index, |_| None, |old| t.labels[old]);
        out.push(Term {
            bits,
            labels,
            coeff: t.coeff.clone(),
        });
        // saddle-and-birth part
        let bits = t.bits | circ_bits;
        let new_part = partition(nd, bits);
        let ia = old_part.index[&a];
        let ib = old_part.index[&b];
        let circle_new = new_part.index[&circle_witness];
        let a_far = d_old.opposite(a);
        for labels in saddle_relabel(
            &new_part,
            &old_part,
            &t.labels,
            ia,
            ib,
            (a, a_far),
            |j| {
                if j == circle_new {
                    Some(Label::One)
                } else {
                    None
                }
            },
        ) {
            out.push(Term {
                bits,
                labels,
                coeff: t.coeff.clone(),
            });
        }
    }
    Ok(ChainElement { terms: out }.simplify())
}

/// Reverse of r2_up: the pair sits at the last two positions already.
pub fn unapply_r2_up(
    d_before: &Diagram,
    d_after: &Diagram,
    c: &ChainElement,
) -> Result<ChainElement> {
    let ks = new_crossings(d_before, d_after);
    let (a, b) = down_loci_for(d_after, ks[0], ks[1])?;
    let bg = find_bigon(d_after, a, b)?;
    // witnesses: slots of d_before on the two strands; the up move always
    // cuts two live edges, so the outward walk terminates
    let wa = strand_witness(d_after, d_before, bg.x, bg.ax, None).unwrap();
    let wb = strand_witness(d_after, d_before, bg.x, bg.bx, None).unwrap();
    down_terms(d_after, d_before, c, &bg, (wa, wb))
}

/// A slot that survives into `target` on the strand through slot `s` of
/// bigon crossing `v`; `fallback` covers a strand whose only vertices are
/// the bigon crossings themselves.
fn strand_witness(d: &Diagram, target: &Diagram, v: u32, s: u8, fallback: Option<End>) -> Option<End> {
    let start = End::new(v, (s + 2) % 4);
    let mut e = start;
    loop {
        e = d.opposite(e);
        if target.has_vertex(e.vertex) {
            return Some(e);
        }
        // hop across a strand vertex or the partner bigon crossing
        let deg = match d.kind_of(e.vertex) {
            VertexKind::Strand => 2u8,
            VertexKind::Crossing => 4,
        };
        e = End::new(e.vertex, (e.slot + deg / 2) % deg);
        if e == start {
            return fallback;
        }
    }
}

/// Reverse of r2_down: re-create the two crossings with their original
/// geometry, then reorder them back into place.
pub fn unapply_r2_down(
    d_before: &Diagram,
    d_after: &Diagram,
    c: &ChainElement,
    a: End,
    b: End,
) -> Result<ChainElement> {
    let bg = find_bigon(d_before, a, b)?;
    let ids = d_before.crossing_ids();
    let xpos = ids.iter().position(|&v| v == bg.x).unwrap();
    let ypos = ids.iter().position(|&v| v == bg.y).unwrap();
    let mut perm: Vec<usize> = (0..ids.len()).filter(|&p| p != xpos && p != ypos).collect();
    perm.push(xpos);
    perm.push(ypos);
    let dmid = reorder_diagram(d_before, &perm);
    // strand witnesses valid in d_after; strands carried only by the removed
    // crossings survive as circles of the created vertices, a-strand first
    let svs = super::new_vertices(d_before, d_after);
    let wa = strand_witness(d_before, d_after, bg.x, bg.ax, Some(End::new(svs[0], 0))).unwrap();
    let wb = strand_witness(d_before, d_after, bg.x, bg.bx, Some(End::new(svs[1], 0))).unwrap();
    let mid = up_terms_into(
        d_after,
        &dmid,
        c,
        &bg,
        (wa, wb),
    )?;
    let mut back = vec![0usize; ids.len()];
    for (new, &old) in perm.iter().enumerate() {
        back[old] = new;
    }
    let (_, done) = apply_reorder(&dmid, &mid, &back)?;
    Ok(done)
}

/// Up rules targeting an existing bigon (used when reversing a removal).
fn up_terms_into(
    d_old: &Diagram,
    nd: &Diagram,
    c: &ChainElement,
    bg: &Bigon,
    strand_wits: (End, End),
) -> Result<ChainElement> {
    let n = nd.crossing_count();
    let (p1, p2) = (n - 2, n - 1);
    debug_assert_eq!(nd.crossing_ids()[p1], bg.x);
    debug_assert_eq!(nd.crossing_ids()[p2], bg.y);
    let iso_bits = ((1 - bg.kx) as u64) << p1 | ((1 - bg.ky) as u64) << p2;
    let circ_bits = (bg.kx as u64) << p1 | (bg.ky as u64) << p2;
    let circle_witness = End::new(bg.x, bg.ax);
    let mut out = Vec::new();
    for t in &c.terms {
        let old_part = partition(d_old, t.bits);
        let bits = t.bits | iso_bits;
        let new_part = partition(nd, bits);
        let labels =
            transport_labels(&new_part.loops, &old_part.index, |_| None, |old| t.labels[old]);
        out.push(Term {
            bits,
            labels,
            coeff: t.coeff.clone(),
        });
        let bits = t.bits | circ_bits;
        let new_part = partition(nd, bits);
        let ia = old_part.index[&strand_wits.0];
        let ib = old_part.index[&strand_wits.1];
        let circle_new = new_part.index[&circle_witness];
        let wit_new = (
            End::new(bg.x, (bg.ax + 2) % 4),
            End::new(bg.y, (bg.ay + 2) % 4),
        );
        for labels in saddle_relabel(&new_part, &old_part, &t.labels, ia, ib, wit_new, |j| {
            if j == circle_new {
                Some(Label::One)
            } else {
                None
            }
        }) {
            out.push(Term {
                bits,
                labels,
                coeff: t.coeff.clone(),
            });
        }
    }
    Ok(ChainElement { terms: out }.simplify())
}

/// Loci to list the r2_down that undoes an r2_up: the bigon slots at the
/// first created crossing.
pub fn down_loci_for(d_after: &Diagram, k1: u32, k2: u32) -> Result<(End, End)> {
    for s1 in 0..4u8 {
        for s2 in 0..4u8 {
            if s1 == s2 || !adjacent(s1, s2) {
                continue;
            }
            let a = End::new(k1, s1);
            let b = End::new(k1, s2);
            if d_after.through_strands(a).vertex == k2 && d_after.through_strands(b).vertex == k2 {
                if find_bigon(d_after, a, b).is_ok() {
                    return Ok((a, b));
                }
            }
        }
    }
    Err(Error::NotABigon((k1, 0), (k2, 0)))
}

/// Parameters to list the r2_up that undoes an r2_down, valid on `d_after`.
pub fn up_parameters_for(
    d_before: &Diagram,
    d_after: &Diagram,
    removed: &[u32],
) -> Result<(End, End, bool)> {
    let x = removed[0];
    let (_, pair) = kink_or_bigon_slots(d_before, x)?;
    let (ax, bx) = pair;
    let svs = super::new_vertices(d_before, d_after);
    let wa = strand_witness(d_before, d_after, x, ax, Some(End::new(svs[0], 0))).unwrap();
    let wb = strand_witness(d_before, d_after, x, bx, Some(End::new(svs[1], 0))).unwrap();
    let over = ax % 2 == 1;
    Ok((wa, wb, over))
}

fn kink_or_bigon_slots(d: &Diagram, x: u32) -> Result<(u32, (u8, u8))> {
    for s1 in 0..4u8 {
        let s2 = (s1 + 1) % 4;
        let a = End::new(x, s1);
        let b = End::new(x, s2);
        if find_bigon(d, a, b).is_ok() {
            return Ok((x, (s1, s2)));
        }
    }
    Err(Error::NotABigon((x, 0), (x, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::testkit::{all_generators, assert_chain_map, assert_unapply_chain_map};
    use crate::moves::{apply_move, Move};

    #[test]
    fn bigon_detection() {
        // closure of [1, -1] on 2 strands is a 2-crossing unknot with a bigon
        let d = Diagram::from_braid_closure(&[1, -1]).unwrap();
        let ids = d.crossing_ids();
        let mut found = false;
        for s1 in 0..4u8 {
            let s2 = (s1 + 1) % 4;
            if find_bigon(&d, End::new(ids[0], s1), End::new(ids[0], s2)).is_ok() {
                found = true;
            }
        }
        assert!(found, "R2 bigon exists in sigma sigma^-1 closure");
        // the clasp [1, 1] is not an R2 bigon
        let h = Diagram::from_braid_closure(&[1, 1]).unwrap();
        let hids = h.crossing_ids();
        for s1 in 0..4u8 {
            let s2 = (s1 + 1) % 4;
            assert!(find_bigon(&h, End::new(hids[0], s1), End::new(hids[0], s2)).is_err());
        }
    }

    #[test]
    fn r2_moves_are_chain_maps() {
        for word in [vec![1], vec![1, 1, 1], vec![-1, 2]] {
            let d = Diagram::from_braid_closure(&word).unwrap();
            let c0 = d.crossing_ids()[0];
            // pick two portions on distinct edges
            let a = End::new(c0, 0);
            let b = End::new(c0, 2);
            for over in [true, false] {
                let mv = Move::R2Up {
                    a,
                    b,
                    over,
                    reuse: None,
                };
                assert_chain_map(&d, &mv);
                let after = apply_move(&d, &ChainElement::zero(), &mv).unwrap();
                assert_unapply_chain_map(&d, &after.diagram, &mv);
                // and remove the bigon we just made
                let ks = new_crossings(&d, &after.diagram);
                let (la, lb) = down_loci_for(&after.diagram, ks[0], ks[1]).unwrap();
                let down = Move::R2Down { a: la, b: lb };
                assert_chain_map(&after.diagram, &down);
                let after2 = apply_move(&after.diagram, &ChainElement::zero(), &down).unwrap();
                assert_unapply_chain_map(&after.diagram, &after2.diagram, &down);
            }
        }
    }

    #[test]
    fn r2_up_then_down_is_identity_on_chains() {
        let d = Diagram::from_braid_closure(&[1, 1, 1]).unwrap();
        let c0 = d.crossing_ids()[0];
        let a = End::new(c0, 0);
        let b = End::new(c0, 2);
        for over in [true, false] {
            let up = Move::R2Up {
                a,
                b,
                over,
                reuse: None,
            };
            for g in all_generators(&d) {
                let u = apply_move(&d, &g, &up).unwrap();
                let ks = new_crossings(&d, &u.diagram);
                let (la, lb) = down_loci_for(&u.diagram, ks[0], ks[1]).unwrap();
                let v = apply_move(&u.diagram, &u.element, &Move::R2Down { a: la, b: lb }).unwrap();
                assert_eq!(v.element.terms.len(), g.terms.len(), "up-down identity");
                for (t_new, t_old) in v.element.terms.iter().zip(g.terms.iter()) {
                    assert_eq!(t_new.bits, t_old.bits);
                    assert_eq!(t_new.coeff, t_old.coeff);
                    let p_old = partition(&d, t_old.bits);
                    let p_new = partition(&v.diagram, t_new.bits);
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
}

//! Link diagrams as 4-valent graphs with over/under data.
//!
//! A diagram is a list of vertices (degree-4 crossings and degree-2 strand
//! vertices) together with a fixed-point-free involution on slots. Slots of a
//! crossing are indexed 0..3 counterclockwise with 0 and 2 on the understrand.
//! Strand vertices are retained rather than fused away; cobordism moves rely
//! on them as attachment points and edge subdivisions never invalidate a
//! `(vertex, slot)` reference.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One end of an edge: a vertex id and a slot index. Serializes as the
/// two-element array `[vertex, slot]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub vertex: u32,
    pub slot: u8,
}

impl Serialize for End {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.vertex, self.slot).serialize(s)
    }
}

impl<'de> Deserialize<'de> for End {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (vertex, slot) = <(u32, u8)>::deserialize(d)?;
        Ok(End { vertex, slot })
    }
}

impl End {
    pub fn new(vertex: u32, slot: u8) -> Self {
        End { vertex, slot }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex, self.slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Crossing,
    Strand,
}

/// Flow of the strand at a slot: `In` means the edge at this slot is directed
/// into the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Unknown,
    In,
    Out,
}

impl Flow {
    fn flip(self) -> Flow {
        match self {
            Flow::Unknown => Flow::Unknown,
            Flow::In => Flow::Out,
            Flow::Out => Flow::In,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: u32,
    pub kind: VertexKind,
    adj: [End; 4],
    flow: [Flow; 4],
}

impl Vertex {
    pub fn degree(&self) -> u8 {
        match self.kind {
            VertexKind::Crossing => 4,
            VertexKind::Strand => 2,
        }
    }
}

/// A link diagram. Cloning is cheap enough at desk scale; all mutating
/// operations take `&self` and return a new value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    verts: Vec<Vertex>,
    index: HashMap<u32, usize>,
    next_id: u32,
    n_plus: Option<usize>,
    n_minus: Option<usize>,
}

impl Default for Diagram {
    fn default() -> Self {
        Self::empty()
    }
}

impl Diagram {
    /// The empty link: no vertices at all.
    pub fn empty() -> Self {
        Diagram {
            verts: Vec::new(),
            index: HashMap::new(),
            next_id: 0,
            n_plus: Some(0),
            n_minus: Some(0),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.verts.iter()
    }

    pub fn vertex(&self, id: u32) -> Result<&Vertex> {
        self.index
            .get(&id)
            .map(|&i| &self.verts[i])
            .ok_or(Error::NoSuchVertex(id))
    }

    pub fn has_vertex(&self, id: u32) -> bool {
        self.index.contains_key(&id)
    }

    fn vertex_mut(&mut self, id: u32) -> &mut Vertex {
        let i = self.index[&id];
        &mut self.verts[i]
    }

    /// Position of a vertex in the vertex list.
    pub fn position(&self, id: u32) -> usize {
        self.index[&id]
    }

    /// Ids of crossings in enumeration order. All sign and differential
    /// bookkeeping refers to positions in this list.
    pub fn crossing_ids(&self) -> Vec<u32> {
        self.verts
            .iter()
            .filter(|v| v.kind == VertexKind::Crossing)
            .map(|v| v.id)
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.verts
            .iter()
            .filter(|v| v.kind == VertexKind::Crossing)
            .count()
    }

    pub fn strand_ids(&self) -> Vec<u32> {
        self.verts
            .iter()
            .filter(|v| v.kind == VertexKind::Strand)
            .map(|v| v.id)
            .collect()
    }

    /// Position of a crossing within the crossing enumeration.
    pub fn crossing_position(&self, id: u32) -> Option<usize> {
        self.crossing_ids().iter().position(|&c| c == id)
    }

    pub fn n_plus(&self) -> Result<usize> {
        self.n_plus.ok_or(Error::Unoriented)
    }

    pub fn n_minus(&self) -> Result<usize> {
        self.n_minus.ok_or(Error::Unoriented)
    }

    pub fn is_oriented(&self) -> bool {
        self.n_plus.is_some()
    }

    pub fn next_fresh_id(&self) -> u32 {
        self.next_id
    }

    fn check_end(&self, e: End) -> Result<()> {
        let v = self.vertex(e.vertex)?;
        if e.slot >= v.degree() {
            return Err(Error::BadSlot(e.vertex, e.slot));
        }
        Ok(())
    }

    /// The other end of the edge at `e`.
    pub fn opposite(&self, e: End) -> End {
        let v = &self.verts[self.index[&e.vertex]];
        v.adj[e.slot as usize]
    }

    /// Rotate around the vertex: slot + k modulo the degree.
    pub fn rotate(&self, e: End, k: i8) -> End {
        let v = &self.verts[self.index[&e.vertex]];
        let d = v.degree() as i16;
        let s = (e.slot as i16 + k as i16).rem_euclid(d) as u8;
        End::new(e.vertex, s)
    }

    pub fn kind_of(&self, id: u32) -> VertexKind {
        self.verts[self.index[&id]].kind
    }

    pub fn flow_at(&self, e: End) -> Flow {
        let v = &self.verts[self.index[&e.vertex]];
        v.flow[e.slot as usize]
    }

    /// Follow the edge at `e` to the far side, passing transparently through
    /// any strand vertices. Returns the first non-strand end reached, or, on a
    /// crossingless loop, the starting end again.
    pub fn through_strands(&self, e: End) -> End {
        let start = e;
        let mut cur = self.opposite(e);
        loop {
            if self.kind_of(cur.vertex) == VertexKind::Crossing {
                return cur;
            }
            let other = self.rotate(cur, 1);
            if other == start {
                return start;
            }
            cur = self.opposite(other);
        }
    }

    /// All strand-vertex ids met when walking from `e` to the far crossing
    /// (or all the way around a crossingless loop).
    pub fn strands_along(&self, e: End) -> Vec<u32> {
        let start = e;
        let mut out = Vec::new();
        let mut cur = self.opposite(e);
        loop {
            if self.kind_of(cur.vertex) == VertexKind::Crossing {
                return out;
            }
            out.push(cur.vertex);
            let other = self.rotate(cur, 1);
            if other == start {
                return out;
            }
            cur = self.opposite(other);
        }
    }

    fn connect(&mut self, a: End, b: End) {
        self.vertex_mut(a.vertex).adj[a.slot as usize] = b;
        self.vertex_mut(b.vertex).adj[b.slot as usize] = a;
    }

    fn fresh_id(&mut self) -> u32 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn push_crossing(&mut self, id: u32) {
        let v = Vertex {
            id,
            kind: VertexKind::Crossing,
            adj: [End::new(id, 0); 4],
            flow: [Flow::Unknown; 4],
        };
        self.index.insert(id, self.verts.len());
        self.verts.push(v);
        self.next_id = self.next_id.max(id + 1);
    }

    fn push_strand(&mut self, id: u32) {
        let v = Vertex {
            id,
            kind: VertexKind::Strand,
            adj: [End::new(id, 0); 4],
            flow: [Flow::Unknown; 4],
        };
        self.index.insert(id, self.verts.len());
        self.verts.push(v);
        self.next_id = self.next_id.max(id + 1);
    }

    fn remove_vertex(&mut self, id: u32) {
        let i = self.index.remove(&id).expect("vertex present");
        self.verts.remove(i);
        self.index = self
            .verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
    }

    /// Check the adjacency is a fixed-point-free involution.
    pub fn validate(&self) -> Result<()> {
        for v in &self.verts {
            for s in 0..v.degree() {
                let e = End::new(v.id, s);
                let o = self.opposite(e);
                self.check_end(o)?;
                if o == e {
                    return Err(Error::MalformedPd(format!("slot {e} connected to itself")));
                }
                if self.opposite(o) != e {
                    return Err(Error::MalformedPd(format!(
                        "adjacency not an involution at {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Build a diagram from a PD code. Entry 0 of each tuple is the incoming
    /// understrand and entries are listed counterclockwise. Orientation is
    /// derived from the PD convention and signs are computed immediately.
    pub fn from_pd_code(pd: &[[u64; 4]]) -> Result<Diagram> {
        if pd.is_empty() {
            return Err(Error::MalformedPd(
                "empty PD code; crossingless components need explicit strand vertices".into(),
            ));
        }
        let mut occurrences: HashMap<u64, Vec<End>> = HashMap::new();
        let mut d = Diagram {
            verts: Vec::new(),
            index: HashMap::new(),
            next_id: 0,
            n_plus: None,
            n_minus: None,
        };
        for (i, tuple) in pd.iter().enumerate() {
            let id = i as u32;
            d.push_crossing(id);
            for (s, &label) in tuple.iter().enumerate() {
                occurrences
                    .entry(label)
                    .or_default()
                    .push(End::new(id, s as u8));
            }
        }
        for (label, ends) in &occurrences {
            if ends.len() != 2 {
                return Err(Error::MalformedPd(format!(
                    "edge label {label} occurs {} times (want 2)",
                    ends.len()
                )));
            }
            d.connect(ends[0], ends[1]);
        }
        d.validate()?;
        d.orient_from_pd(&occurrences)?;
        Ok(d)
    }

    /// PD orientation: the understrand enters at slot 0 and leaves at slot 2;
    /// over-only components fall back to the label-successor convention.
    fn orient_from_pd(&mut self, occurrences: &HashMap<u64, Vec<End>>) -> Result<()> {
        let mut label_at: HashMap<End, u64> = HashMap::new();
        for (&label, ends) in occurrences {
            for &e in ends {
                label_at.insert(e, label);
            }
        }
        let ids = self.crossing_ids();
        for &c in &ids {
            self.set_flow(End::new(c, 0), Flow::In)?;
        }
        // components that are over at every crossing: direct the edge from a
        // label to its successor, treating a gap as the wraparound point
        for &c in &ids {
            for s in [1u8, 3] {
                let e = End::new(c, s);
                if self.flow_at(e) != Flow::Unknown {
                    continue;
                }
                let here = label_at[&e];
                let there = label_at[&End::new(c, (s + 2) % 4)];
                let into_e = if there == here + 1 {
                    Flow::In
                } else if here == there + 1 {
                    Flow::Out
                } else if here > there {
                    Flow::In
                } else {
                    Flow::Out
                };
                self.set_flow(e, into_e)?;
            }
        }
        self.compute_signs()
    }

    /// Assign a flow at one end and propagate along the strand and across the
    /// edge until it meets known flows, checking consistency.
    fn set_flow(&mut self, e: End, f: Flow) -> Result<()> {
        let mut stack = vec![(e, f)];
        while let Some((e, f)) = stack.pop() {
            let cur = self.flow_at(e);
            if cur != Flow::Unknown {
                if cur != f {
                    return Err(Error::InconsistentOrientation((e.vertex, e.slot)));
                }
                continue;
            }
            {
                let slot = e.slot as usize;
                let idx = self.index[&e.vertex];
                self.verts[idx].flow[slot] = f;
            }
            // across the edge
            let o = self.opposite(e);
            stack.push((o, f.flip()));
            // through the vertex
            let v = self.vertex(e.vertex)?;
            let half = v.degree() / 2;
            let through = self.rotate(e, half as i8);
            stack.push((through, f.flip()));
        }
        Ok(())
    }

    fn compute_signs(&mut self) -> Result<()> {
        let mut np = 0;
        let mut nm = 0;
        for v in &self.verts {
            if v.kind != VertexKind::Crossing {
                continue;
            }
            let under_in = match (v.flow[0], v.flow[2]) {
                (Flow::In, Flow::Out) => 0u8,
                (Flow::Out, Flow::In) => 2,
                _ => return Err(Error::Unoriented),
            };
            let over_in = match (v.flow[1], v.flow[3]) {
                (Flow::In, Flow::Out) => 1u8,
                (Flow::Out, Flow::In) => 3,
                _ => return Err(Error::Unoriented),
            };
            // positive exactly when the over strand enters three slots
            // counterclockwise from the under entry
            if over_in == (under_in + 3) % 4 {
                np += 1;
            } else {
                nm += 1;
            }
        }
        self.n_plus = Some(np);
        self.n_minus = Some(nm);
        Ok(())
    }

    /// Closure of a braid word. Letter `i > 0` crosses strand `i` over strand
    /// `i+1`; the closure is oriented with all strands running the same way,
    /// so positive letters are positive crossings.
    pub fn from_braid_closure(word: &[i32]) -> Result<Diagram> {
        if word.iter().any(|&w| w == 0) {
            return Err(Error::MalformedPd("braid letter 0".into()));
        }
        let strands = word
            .iter()
            .map(|w| w.unsigned_abs() as usize + 1)
            .max()
            .unwrap_or(1);
        let mut d = Diagram {
            verts: Vec::new(),
            index: HashMap::new(),
            next_id: 0,
            n_plus: None,
            n_minus: None,
        };
        // dangling (bottom, top) ends per strand position
        let mut first: Vec<Option<End>> = vec![None; strands + 1];
        let mut frontier: Vec<Option<End>> = vec![None; strands + 1];
        for (k, &w) in word.iter().enumerate() {
            let id = k as u32;
            d.push_crossing(id);
            let pos = w.unsigned_abs() as usize;
            // slot layout, bottom/top and left/right, per crossing sign
            let (bl, br, tl, tr) = if w > 0 { (3, 0, 2, 1) } else { (0, 1, 3, 2) };
            for (p, bottom, top) in [(pos, bl, tl), (pos + 1, br, tr)] {
                let b = End::new(id, bottom);
                let t = End::new(id, top);
                match frontier[p].take() {
                    Some(prev) => d.connect(prev, b),
                    None => first[p] = Some(b),
                }
                frontier[p] = Some(t);
            }
            let flows = if w > 0 {
                [Flow::In, Flow::Out, Flow::Out, Flow::In]
            } else {
                [Flow::In, Flow::In, Flow::Out, Flow::Out]
            };
            d.vertex_mut(id).flow = flows;
        }
        for p in 1..=strands {
            match (frontier[p].take(), first[p].take()) {
                (Some(t), Some(b)) => d.connect(t, b),
                (None, None) => {
                    // untouched strand: a crossingless circle
                    let id = d.fresh_id();
                    d.push_strand(id);
                    d.connect(End::new(id, 0), End::new(id, 1));
                    let v = d.vertex_mut(id);
                    v.flow = [Flow::In, Flow::Out, Flow::Unknown, Flow::Unknown];
                }
                _ => unreachable!(),
            }
        }
        d.validate()?;
        d.compute_signs()?;
        Ok(d)
    }

    /// Re-orient from scratch. Each seed directs the strand into the given
    /// end. Fails if seeds conflict or leave a component undirected.
    pub fn orient(&self, seeds: &[End]) -> Result<Diagram> {
        let mut d = self.clone();
        for v in d.verts.iter_mut() {
            v.flow = [Flow::Unknown; 4];
        }
        d.n_plus = None;
        d.n_minus = None;
        for &s in seeds {
            d.check_end(s)?;
            d.set_flow(s, Flow::In)?;
        }
        for v in &d.verts {
            for s in 0..v.degree() {
                if v.flow[s as usize] == Flow::Unknown {
                    return Err(Error::Unoriented);
                }
            }
        }
        d.compute_signs()?;
        Ok(d)
    }

    /// Mirror image: over and under swap at every crossing. Slot `i` of the
    /// mirrored crossing is slot `i+1` of the original, so 0- and 1-smoothings
    /// exchange and the sign counts swap.
    pub fn mirror(&self) -> Diagram {
        let mut out = self.clone();
        for v in out.verts.iter_mut() {
            if v.kind == VertexKind::Crossing {
                let mut adj = [End::new(v.id, 0); 4];
                let mut flow = [Flow::Unknown; 4];
                for i in 0..4 {
                    adj[i] = v.adj[(i + 1) % 4];
                    flow[i] = v.flow[(i + 1) % 4];
                }
                v.adj = adj;
                v.flow = flow;
            }
        }
        for v in out.verts.iter_mut() {
            for i in 0..v.degree() as usize {
                let e = v.adj[i];
                v.adj[i] = match self.kind_of(e.vertex) {
                    VertexKind::Crossing => End::new(e.vertex, (e.slot + 3) % 4),
                    VertexKind::Strand => e,
                };
            }
        }
        out.n_plus = self.n_minus;
        out.n_minus = self.n_plus;
        out
    }

    /// Structural equality ignoring a global rotation-by-two of crossing
    /// slots (the relabelling a double mirror produces).
    pub fn same_up_to_crossing_rotation(&self, other: &Diagram) -> bool {
        if self.verts.len() != other.verts.len() {
            return false;
        }
        for rot in [0u8, 2] {
            let remap = |e: End| -> End {
                match other.kind_of(e.vertex) {
                    VertexKind::Crossing => End::new(e.vertex, (e.slot + rot) % 4),
                    VertexKind::Strand => e,
                }
            };
            let ok = self.verts.iter().all(|v| {
                let Ok(w) = other.vertex(v.id) else {
                    return false;
                };
                if w.kind != v.kind {
                    return false;
                }
                (0..v.degree() as usize).all(|i| {
                    let src = remap(End::new(v.id, i as u8));
                    remap(v.adj[i]) == w.adj[src.slot as usize]
                })
            });
            if ok {
                return true;
            }
        }
        false
    }

    /// Remove a strand vertex, joining its two edges.
    pub fn fuse(&self, id: u32) -> Result<Diagram> {
        let v = self.vertex(id)?;
        if v.kind != VertexKind::Strand {
            return Err(Error::MalformedPd(format!("vertex {id} is not a strand")));
        }
        let a = v.adj[0];
        let b = v.adj[1];
        if a.vertex == id || b.vertex == id {
            return Err(Error::LastVertexOnComponent(id));
        }
        let mut d = self.clone();
        d.connect(a, b);
        d.remove_vertex(id);
        Ok(d)
    }

    /// Add a free crossingless loop (one strand vertex connected to itself).
    /// Returns the new diagram and the id of the created vertex.
    pub fn with_free_loop(&self) -> (Diagram, u32) {
        let mut d = self.clone();
        let id = d.fresh_id();
        d.push_strand(id);
        d.connect(End::new(id, 0), End::new(id, 1));
        let v = d.vertex_mut(id);
        v.flow = [Flow::In, Flow::Out, Flow::Unknown, Flow::Unknown];
        (d, id)
    }

    /// Add a free loop built from the given vertex ids connected in a cycle.
    /// Used when a death is undone so older slot references stay valid.
    pub fn with_loop_of(&self, ids: &[u32]) -> Diagram {
        let mut d = self.clone();
        for &id in ids {
            d.push_strand(id);
        }
        let n = ids.len();
        for i in 0..n {
            let a = End::new(ids[i], 1);
            let b = End::new(ids[(i + 1) % n], 0);
            d.connect(a, b);
        }
        if n == 1 {
            d.connect(End::new(ids[0], 0), End::new(ids[0], 1));
        }
        for &id in ids {
            let v = d.vertex_mut(id);
            v.flow = [Flow::In, Flow::Out, Flow::Unknown, Flow::Unknown];
        }
        d
    }

    /// Remove a set of strand vertices forming a crossingless loop.
    pub fn without_loop(&self, ids: &[u32]) -> Diagram {
        let mut d = self.clone();
        for &id in ids {
            d.remove_vertex(id);
        }
        d
    }

    /// Cut the edges at `a` and `b` and join them with two new strand
    /// vertices: `a`-side to `b`-side and the two far sides to each other.
    /// This is the diagram-level effect of a saddle. Returns the rewired
    /// diagram and the two created vertex ids.
    pub fn saddle_rewire(&self, a: End, b: End) -> Result<(Diagram, u32, u32)> {
        self.check_end(a)?;
        self.check_end(b)?;
        let ao = self.opposite(a);
        let bo = self.opposite(b);
        if a == b {
            return Err(Error::SameEdgeConflict);
        }
        let mut d = self.clone();
        let s1 = d.fresh_id();
        d.push_strand(s1);
        let s2 = d.fresh_id();
        d.push_strand(s2);
        if ao == b {
            // a and b are the two ends of one edge: the saddle splits off a
            // circle through s2 and leaves s1 inline
            d.connect(a, End::new(s1, 0));
            d.connect(b, End::new(s1, 1));
            d.connect(End::new(s2, 0), End::new(s2, 1));
        } else {
            d.connect(a, End::new(s1, 0));
            d.connect(b, End::new(s1, 1));
            d.connect(ao, End::new(s2, 0));
            d.connect(bo, End::new(s2, 1));
        }
        // orientation data is stale after surgery
        for v in d.verts.iter_mut() {
            v.flow = [Flow::Unknown; 4];
        }
        d.n_plus = None;
        d.n_minus = None;
        Ok((d, s1, s2))
    }

    /// Replace adjacency wholesale for move constructions. Callers must
    /// re-validate.
    pub(crate) fn reconnect(&mut self, a: End, b: End) {
        self.connect(a, b);
    }

    pub(crate) fn add_crossing_with_id(&mut self, id: u32) {
        self.push_crossing(id);
    }

    pub(crate) fn add_strand_with_id(&mut self, id: u32) {
        self.push_strand(id);
    }

    pub(crate) fn drop_vertex(&mut self, id: u32) {
        self.remove_vertex(id);
    }

    pub(crate) fn clear_orientation(&mut self) {
        for v in self.verts.iter_mut() {
            v.flow = [Flow::Unknown; 4];
        }
        self.n_plus = None;
        self.n_minus = None;
    }

    /// Permute the crossings within the vertex list so they appear in the
    /// given id order. Strand vertices keep their positions.
    pub(crate) fn set_crossing_order(&mut self, new_ids: &[u32]) {
        let slots: Vec<usize> = self
            .verts
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VertexKind::Crossing)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(slots.len(), new_ids.len());
        let old = self.verts.clone();
        for (k, &pos) in slots.iter().enumerate() {
            let src = self.index[&new_ids[k]];
            self.verts[pos] = old[src].clone();
        }
        self.index = self
            .verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id, i))
            .collect();
    }

    /// All ends (vertex, slot) of the diagram.
    pub fn all_ends(&self) -> Vec<End> {
        let mut out = Vec::new();
        for v in &self.verts {
            for s in 0..v.degree() {
                out.push(End::new(v.id, s));
            }
        }
        out
    }

    /// Number of faces of the embedded diagram, counted as orbits of the
    /// rotation-system face map e -> rotate(opposite(e), 1).
    pub fn face_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut faces = 0;
        for e in self.all_ends() {
            if seen.contains(&e) {
                continue;
            }
            faces += 1;
            let mut cur = e;
            loop {
                seen.insert(cur);
                cur = self.rotate(self.opposite(cur), 1);
                if cur == e {
                    break;
                }
            }
        }
        faces
    }

    /// Number of connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let mut seen: std::collections::HashSet<u32> = std::collections::HashSet::new();
        let mut comps = 0;
        for v in &self.verts {
            if seen.contains(&v.id) {
                continue;
            }
            comps += 1;
            let mut stack = vec![v.id];
            while let Some(id) = stack.pop() {
                if !seen.insert(id) {
                    continue;
                }
                let w = &self.verts[self.index[&id]];
                for s in 0..w.degree() {
                    stack.push(w.adj[s as usize].vertex);
                }
            }
        }
        comps
    }

    /// Whether the rotation system embeds in the sphere: V - E + F = 1 + C.
    pub fn is_planar(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let v = self.verts.len() as i64;
        let e = self.all_ends().len() as i64 / 2;
        let f = self.face_count() as i64;
        let c = self.component_count() as i64;
        v - e + f == 1 + c
    }

    /// Sign of an oriented crossing: +1 or -1.
    pub fn crossing_sign(&self, id: u32) -> Result<i8> {
        let v = self.vertex(id)?;
        if v.kind != VertexKind::Crossing {
            return Err(Error::NoSuchVertex(id));
        }
        let under_in = match (v.flow[0], v.flow[2]) {
            (Flow::In, Flow::Out) => 0u8,
            (Flow::Out, Flow::In) => 2,
            _ => return Err(Error::Unoriented),
        };
        let over_in = match (v.flow[1], v.flow[3]) {
            (Flow::In, Flow::Out) => 1u8,
            (Flow::Out, Flow::In) => 3,
            _ => return Err(Error::Unoriented),
        };
        Ok(if over_in == (under_in + 3) % 4 { 1 } else { -1 })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty link");
        }
        for v in &self.verts {
            let kind = match v.kind {
                VertexKind::Crossing => "x",
                VertexKind::Strand => "s",
            };
            write!(f, "{}{}[", kind, v.id)?;
            for s in 0..v.degree() {
                if s > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v.adj[s as usize])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

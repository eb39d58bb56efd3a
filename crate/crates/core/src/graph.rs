//! Port graphs: crossings with four counterclockwise ports joined by arcs.
//!
//! Every diagram construction (closures, braids, gluing, cabling, builtins)
//! edits a `Graph`, then `orient` fixes strand directions and `finish`
//! relabels edges canonically and emits crossing records.

use std::collections::HashMap;

use crate::diagram::{Crossing, CrossingKind};
use crate::error::{Error, Result};
use crate::tangle::Direction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Port {
    Node(usize, u8),
    Boundary(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct GNode {
    pub kind: CrossingKind,
    /// Strand passing under: 0 for ports 0-2, 1 for ports 1-3.
    pub under: u8,
    /// Entry port of each strand, once known.
    pub entry: [Option<u8>; 2],
    /// Requested crossing sign, enforced by [`Graph::apply_wanted_signs`].
    pub want_sign: Option<i8>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Graph {
    pub nodes: Vec<GNode>,
    link: HashMap<Port, Port>,
    /// Direction at each boundary position (0-based); empty for links.
    pub boundary: Vec<Option<Direction>>,
    pub free_loops: usize,
    /// Input edge labels by port, kept only for parsed diagrams.
    labels: Option<HashMap<Port, u32>>,
}

/// One oriented traversal: node visits as `(node, entry port)` and the arcs
/// between them as `(tail, head)`.
struct Walk {
    visits: Vec<(usize, u8)>,
    arcs: Vec<(Port, Port)>,
    closed: bool,
}

impl Walk {
    fn reversed(&self) -> Walk {
        Walk {
            visits: self
                .visits
                .iter()
                .rev()
                .map(|&(k, s)| (k, (s + 2) % 4))
                .collect(),
            arcs: self.arcs.iter().rev().map(|&(t, h)| (h, t)).collect(),
            closed: self.closed,
        }
    }
}

/// A crossing as read from text: kind, edge labels, known entry ports.
pub(crate) type CrossingRecord = (CrossingKind, [u32; 4], [Option<u8>; 2]);

pub(crate) struct Finished {
    pub crossings: Vec<Crossing>,
    pub endpoints: Vec<(u32, Direction)>,
    pub free_loops: usize,
}

impl Graph {
    pub fn with_boundary(size: usize) -> Self {
        Self {
            boundary: vec![None; size],
            ..Self::default()
        }
    }

    pub fn add_node(&mut self, kind: CrossingKind) -> usize {
        self.nodes.push(GNode {
            kind,
            under: 0,
            entry: [None, None],
            want_sign: None,
        });
        self.nodes.len() - 1
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        debug_assert!(!self.link.contains_key(&a) && !self.link.contains_key(&b));
        self.link.insert(a, b);
        self.link.insert(b, a);
    }

    pub fn disconnect(&mut self, p: Port) -> Port {
        let q = self.link.remove(&p).expect("linked port");
        self.link.remove(&q);
        q
    }

    pub fn set_entry(&mut self, node: usize, port: u8) {
        self.nodes[node].entry[(port % 2) as usize] = Some(port);
    }

    /// Forgets every strand direction.
    pub fn clear_orientation(&mut self) {
        for n in &mut self.nodes {
            n.entry = [None, None];
        }
        for b in &mut self.boundary {
            *b = None;
        }
    }

    /// Builds a graph from labelled crossings and endpoints. Each label must
    /// occur exactly twice; `entries` gives known entry ports per crossing.
    pub fn from_labelled(
        crossings: &[CrossingRecord],
        endpoints: &[(u32, Option<Direction>)],
        free_loops: usize,
        keep_labels: bool,
    ) -> Result<Self> {
        let mut g = Graph::with_boundary(endpoints.len());
        g.free_loops = free_loops;
        let mut seen: HashMap<u32, Vec<Port>> = HashMap::new();
        for (k, (kind, slots, entry)) in crossings.iter().enumerate() {
            let id = g.add_node(*kind);
            g.nodes[id].entry = *entry;
            for (s, &e) in slots.iter().enumerate() {
                seen.entry(e).or_default().push(Port::Node(k, s as u8));
            }
        }
        for (i, &(e, dir)) in endpoints.iter().enumerate() {
            seen.entry(e).or_default().push(Port::Boundary(i));
            g.boundary[i] = dir;
        }
        let mut labels = HashMap::new();
        let mut keys: Vec<_> = seen.keys().copied().collect();
        keys.sort_unstable();
        for e in keys {
            let ports = &seen[&e];
            if ports.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} occurs {} times, expected twice",
                    ports.len()
                )));
            }
            g.connect(ports[0], ports[1]);
            labels.insert(ports[0], e);
            labels.insert(ports[1], e);
        }
        if keep_labels {
            g.labels = Some(labels);
        }
        Ok(g)
    }

    fn walk_from(&self, start: Port) -> Walk {
        let mut visits = Vec::new();
        let mut arcs = Vec::new();
        let mut tail = start;
        loop {
            let head = self.link[&tail];
            arcs.push((tail, head));
            match head {
                Port::Boundary(_) => {
                    return Walk {
                        visits,
                        arcs,
                        closed: false,
                    }
                }
                Port::Node(k, s) => {
                    if let Port::Node(k0, s0) = start {
                        if k == k0 && s == (s0 + 2) % 4 {
                            visits.insert(0, (k, s));
                            return Walk {
                                visits,
                                arcs,
                                closed: true,
                            };
                        }
                    }
                    visits.push((k, s));
                    tail = Port::Node(k, (s + 2) % 4);
                }
            }
        }
    }

    /// All traversals: open strands from each unvisited boundary position
    /// in order, then closed strands from each unvisited node strand.
    fn walks(&self) -> Vec<Walk> {
        let mut out = Vec::new();
        let mut seen_b = vec![false; self.boundary.len()];
        let mut seen_n = vec![[false; 2]; self.nodes.len()];
        for b in 0..self.boundary.len() {
            if seen_b[b] {
                continue;
            }
            let w = self.walk_from(Port::Boundary(b));
            seen_b[b] = true;
            if let Some(&(_, Port::Boundary(e))) = w.arcs.last() {
                seen_b[e] = true;
            }
            for &(k, s) in &w.visits {
                seen_n[k][(s % 2) as usize] = true;
            }
            out.push(w);
        }
        for k in 0..self.nodes.len() {
            for t in 0..2u8 {
                if seen_n[k][t as usize] {
                    continue;
                }
                // Leave through port t + 2, so the walk ends by entering at t.
                let w = self.walk_from(Port::Node(k, t + 2));
                for &(k2, s) in &w.visits {
                    seen_n[k2][(s % 2) as usize] = true;
                }
                out.push(w);
            }
        }
        out
    }

    /// Agreement of a walk with known directions: `Some(true)` if all agree,
    /// `Some(false)` if none is known, `None` on contradiction.
    fn consistent(&self, w: &Walk) -> Option<bool> {
        let mut known = false;
        for &(k, s) in &w.visits {
            if let Some(e) = self.nodes[k].entry[(s % 2) as usize] {
                known = true;
                if e != s {
                    return None;
                }
            }
        }
        if let Some(&(Port::Boundary(b), _)) = w.arcs.first() {
            if let Some(d) = self.boundary[b] {
                known = true;
                if d != Direction::In {
                    return None;
                }
            }
        }
        if let Some(&(_, Port::Boundary(b))) = w.arcs.last() {
            if let Some(d) = self.boundary[b] {
                known = true;
                if d != Direction::Out {
                    return None;
                }
            }
        }
        Some(known)
    }

    fn position(&self, p: Port) -> (usize, u8) {
        match p {
            Port::Node(k, s) => (k, s),
            Port::Boundary(b) => (usize::MAX, b as u8),
        }
    }

    /// Orientation of a closed walk fixed only by edge labels: the label
    /// sequence read from the smallest label is lexicographically least;
    /// ties go to the direction whose smallest edge leaves before it arrives
    /// in line order.
    fn prefer_by_labels(&self, fwd: &Walk, labels: &HashMap<Port, u32>) -> bool {
        let seq: Vec<u32> = fwd.arcs.iter().map(|(t, _)| labels[t]).collect();
        let m = (0..seq.len()).min_by_key(|&i| seq[i]).expect("nonempty walk");
        let len = seq.len();
        let ahead: Vec<u32> = (0..len).map(|i| seq[(m + i) % len]).collect();
        let back: Vec<u32> = (0..len).map(|i| seq[(m + len - i) % len]).collect();
        if ahead != back {
            return ahead < back;
        }
        let (t, h) = fwd.arcs[m];
        self.position(t) <= self.position(h)
    }

    /// Fixes the direction of every strand, propagating known directions and
    /// reporting contradictions. Free strands use edge labels when present.
    pub fn orient(&mut self) -> Result<()> {
        for w in self.walks() {
            let rev = w.reversed();
            let f = self.consistent(&w);
            let r = self.consistent(&rev);
            let chosen = match (f, r) {
                (None, None) => {
                    return Err(Error::Orientation(
                        "a strand is traversed in both directions".into(),
                    ))
                }
                (Some(_), None) => w,
                (None, Some(_)) => rev,
                (Some(true), Some(true)) => unreachable!("contradiction undetected"),
                (Some(fk), Some(rk)) => {
                    if fk {
                        w
                    } else if rk {
                        rev
                    } else if w.closed {
                        match &self.labels {
                            Some(l) if self.prefer_by_labels(&w, l) => w,
                            Some(_) => rev,
                            None => w,
                        }
                    } else {
                        w
                    }
                }
            };
            for &(k, s) in &chosen.visits {
                self.nodes[k].entry[(s % 2) as usize] = Some(s);
            }
            if let Some(&(Port::Boundary(b), _)) = chosen.arcs.first() {
                self.boundary[b] = Some(Direction::In);
            }
            if let Some(&(_, Port::Boundary(b))) = chosen.arcs.last() {
                self.boundary[b] = Some(Direction::Out);
            }
        }
        Ok(())
    }

    fn under_over_entries(&self, k: usize) -> (u8, u8) {
        let n = &self.nodes[k];
        let u = n.entry[n.under as usize].expect("oriented");
        let o = n.entry[1 - n.under as usize].expect("oriented");
        (u, o)
    }

    /// Sign of an oriented classical node.
    pub fn sign(&self, k: usize) -> i8 {
        let (u, o) = self.under_over_entries(k);
        if (o + 4 - u) % 4 == 3 {
            1
        } else {
            -1
        }
    }

    /// Flips classical nodes whose sign differs from the requested one.
    pub fn apply_wanted_signs(&mut self) {
        for k in 0..self.nodes.len() {
            if let Some(w) = self.nodes[k].want_sign {
                if self.nodes[k].kind == CrossingKind::Classical && self.sign(k) != w {
                    self.nodes[k].under ^= 1;
                }
            }
        }
    }

    /// Number of strands, open and closed, free loops excluded.
    pub fn strand_count(&self) -> usize {
        self.walks().len()
    }

    /// Number of closed strands, free loops excluded.
    pub fn closed_strand_count(&self) -> usize {
        self.walks().iter().filter(|w| w.closed).count()
    }

    /// Boundary positions joined by each open strand, smaller first.
    pub fn boundary_pairs(&self) -> Vec<(usize, usize)> {
        self.walks()
            .iter()
            .filter_map(|w| match (w.arcs.first(), w.arcs.last()) {
                (Some(&(Port::Boundary(a), _)), Some(&(_, Port::Boundary(b)))) => {
                    Some((a.min(b), a.max(b)))
                }
                _ => None,
            })
            .collect()
    }

    /// Reverses every strand.
    pub fn reverse(&mut self) {
        for n in &mut self.nodes {
            n.entry = n.entry.map(|e| e.map(|s| (s + 2) % 4));
        }
        for b in &mut self.boundary {
            *b = b.map(Direction::flip);
        }
    }

    /// Mirror image: swaps over and under everywhere.
    pub fn mirror(&mut self) {
        for n in &mut self.nodes {
            if n.kind == CrossingKind::Classical {
                n.under ^= 1;
            }
        }
    }

    /// Port of node `k` written first in its crossing record.
    fn rotation(&self, k: usize) -> u8 {
        let n = &self.nodes[k];
        match n.kind {
            CrossingKind::Classical => self.under_over_entries(k).0,
            CrossingKind::Virtual => {
                let e0 = n.entry[0].expect("oriented");
                let e1 = n.entry[1].expect("oriented");
                if e1 == (e0 + 1) % 4 {
                    e0
                } else {
                    e1
                }
            }
        }
    }

    /// Relabels edges consecutively along each strand and emits records.
    /// Requires `orient` to have succeeded.
    pub fn finish(&self) -> Finished {
        let rot: Vec<u8> = (0..self.nodes.len()).map(|k| self.rotation(k)).collect();
        let file_pos = |p: Port| match p {
            Port::Node(k, s) => (k, (s + 4 - rot[k]) % 4),
            Port::Boundary(b) => (usize::MAX, b as u8),
        };
        let mut label: HashMap<Port, u32> = HashMap::new();
        let mut next = 1u32;
        let mut walks: Vec<Walk> = self
            .walks()
            .into_iter()
            .map(|w| {
                if self.consistent(&w) == Some(true) {
                    w
                } else {
                    w.reversed()
                }
            })
            .collect();
        // Open strands come first, ordered by their inbound position, then
        // closed ones by their earliest tail.
        walks.sort_by_key(|w| match w.arcs.first() {
            Some(&(Port::Boundary(b), _)) if !w.closed => (0, (0, b as u8)),
            _ => (1, w.arcs.iter().map(|a| file_pos(a.0)).min().expect("nonempty walk")),
        });
        for w in walks {
            let len = w.arcs.len();
            // Start where parsing would read the right direction back: at
            // an arc whose tail precedes its head, earliest tail first.
            let start = if w.closed {
                let key = |i: usize| {
                    let (t, h) = w.arcs[i];
                    (file_pos(t) > file_pos(h), file_pos(t))
                };
                (0..len).min_by_key(|&i| key(i)).expect("nonempty walk")
            } else {
                0
            };
            for i in 0..len {
                let (t, h) = w.arcs[(start + i) % len];
                label.insert(t, next);
                label.insert(h, next);
                next += 1;
            }
        }
        let crossings = (0..self.nodes.len())
            .map(|k| {
                let r = rot[k];
                let slots = [0u8, 1, 2, 3].map(|i| label[&Port::Node(k, (r + i) % 4)]);
                let sign = match self.nodes[k].kind {
                    CrossingKind::Classical => self.sign(k),
                    CrossingKind::Virtual => 0,
                };
                Crossing {
                    kind: self.nodes[k].kind,
                    slots,
                    sign,
                }
            })
            .collect();
        let endpoints = (0..self.boundary.len())
            .map(|b| {
                (
                    label[&Port::Boundary(b)],
                    self.boundary[b].expect("oriented"),
                )
            })
            .collect();
        Finished {
            crossings,
            endpoints,
            free_loops: self.free_loops,
        }
    }

    /// Appends the nodes and arcs of `other`, shifting its boundary
    /// positions by `boundary_offset`. Returns the node offset.
    pub fn absorb(&mut self, other: &Graph, boundary_offset: usize) -> usize {
        let off = self.nodes.len();
        self.nodes.extend(other.nodes.iter().cloned());
        let shift = |p: Port| match p {
            Port::Node(k, s) => Port::Node(k + off, s),
            Port::Boundary(b) => Port::Boundary(b + boundary_offset),
        };
        for (&a, &b) in &other.link {
            self.link.insert(shift(a), shift(b));
        }
        let need = boundary_offset + other.boundary.len();
        if self.boundary.len() < need {
            self.boundary.resize(need, None);
        }
        for (i, d) in other.boundary.iter().enumerate() {
            self.boundary[boundary_offset + i] = *d;
        }
        self.free_loops += other.free_loops;
        off
    }

    /// Records the flow implied by boundary direction `dir` on the node port
    /// `p` next to it. `inside` is true when `p` lies in the tangle and false
    /// when it lies on the outside arc.
    fn pin_direction(&mut self, p: Port, dir: Option<Direction>, inside: bool) {
        let (Port::Node(k, s), Some(d)) = (p, dir) else {
            return;
        };
        // For the inside port, an outbound end means the strand leaves the
        // node through `s`; for the outside port it enters through `s`.
        let enters = (d == Direction::Out) != inside;
        let e = if enters { s } else { (s + 2) % 4 };
        self.set_entry(k, e);
    }

    /// Joins boundary positions `i` and `j` by an outside arc passing
    /// through `path`, a list of `(entry, exit)` ports met from `i` to `j`.
    /// Both boundary positions are removed.
    pub fn join(&mut self, i: usize, j: usize, path: &[(Port, Port)]) {
        let di = self.boundary[i];
        let dj = self.boundary[j];
        let a = self.disconnect(Port::Boundary(i));
        if a == Port::Boundary(j) {
            match (path.first(), path.last()) {
                (Some(&(first, _)), Some(&(_, last))) => self.connect(last, first),
                _ => self.free_loops += 1,
            }
        } else {
            let b = self.disconnect(Port::Boundary(j));
            match (path.first(), path.last()) {
                (Some(&(first, _)), Some(&(_, last))) => {
                    self.connect(a, first);
                    self.connect(last, b);
                }
                _ => self.connect(a, b),
            }
            self.pin_direction(a, di, true);
            self.pin_direction(b, dj, true);
        }
        if let Some(&(first, _)) = path.first() {
            self.pin_direction(first, di, false);
        }
        if let Some(&(_, last)) = path.last() {
            self.pin_direction(last, dj, false);
        }
        for w in path.windows(2) {
            self.connect(w[0].1, w[1].0);
        }
        self.boundary[i] = None;
        self.boundary[j] = None;
    }

    /// Drops boundary positions that have been joined and renumbers the
    /// rest; `keep[i]` lists the surviving positions in their new order.
    pub fn compact_boundary(&mut self, keep: &[usize]) {
        let mut map = HashMap::new();
        for (new, &old) in keep.iter().enumerate() {
            map.insert(old, new);
        }
        let old_link = std::mem::take(&mut self.link);
        for (a, b) in old_link {
            let f = |p: Port| match p {
                Port::Boundary(x) => Port::Boundary(map[&x]),
                p => p,
            };
            self.link.insert(f(a), f(b));
        }
        self.boundary = keep.iter().map(|&old| self.boundary[old]).collect();
    }

    /// Adds a crossing outside boundary positions `p` and `q = p + 1`
    /// (cyclically): the strand at `q` passes over to position `p` and the
    /// strand at `p` passes under to position `q`. Directions swap with the
    /// strands.
    pub fn twist(&mut self, p: usize, q: usize, kind: CrossingKind) -> usize {
        let k = self.add_node(kind);
        // Ports counterclockwise: below-left, below-right, above-right, above-left.
        let (bl, br, tr, tl) = (
            Port::Node(k, 0),
            Port::Node(k, 1),
            Port::Node(k, 2),
            Port::Node(k, 3),
        );
        let old_p = self.disconnect(Port::Boundary(p));
        if old_p == Port::Boundary(q) {
            // The strand ran straight from p to q: a kink.
            self.connect(bl, br);
        } else {
            let old_q = self.disconnect(Port::Boundary(q));
            self.connect(bl, old_p);
            self.connect(br, old_q);
        }
        self.connect(tr, Port::Boundary(q));
        self.connect(tl, Port::Boundary(p));
        let (dp, dq) = (self.boundary[p], self.boundary[q]);
        if let Some(d) = dp {
            self.set_entry(k, if d == Direction::Out { 0 } else { 2 });
        }
        if let Some(d) = dq {
            self.set_entry(k, if d == Direction::Out { 1 } else { 3 });
        }
        self.boundary[p] = dq;
        self.boundary[q] = dp;
        k
    }

    /// Blackboard-framed antiparallel 2-cable. Boundary position `i`
    /// becomes positions `2i` and `2i + 1`; the left rail of every strand
    /// keeps its direction and the right rail is reversed.
    pub fn cable(&self) -> Graph {
        let mut g = Graph::with_boundary(2 * self.boundary.len());
        g.free_loops = 2 * self.free_loops;
        // Grid node for (original node, horizontal rail row, vertical rail column).
        // Rows: 0 is the north rail of the under strand; columns: 0 is west.
        let mut grid = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let ids = [0, 1, 2, 3].map(|_| g.add_node(n.kind));
            grid.push(ids);
        }
        let cell = |k: usize, row: usize, col: usize| grid[k][2 * row + col];
        // The under strand of node k runs west to east between its ports
        // u (west) and u + 2 (east); its over strand between u + 1 (south)
        // and u + 3 (north).
        for (k, n) in self.nodes.iter().enumerate() {
            let u = n.entry[n.under as usize].expect("oriented");
            let o = n.entry[1 - n.under as usize].expect("oriented");
            let over_north = (o + 4 - u) % 4 == 1;
            for row in 0..2 {
                for col in 0..2 {
                    let id = cell(k, row, col);
                    // Row 0 (north) is the left rail of the eastbound under strand.
                    g.nodes[id].entry[0] = Some(if row == 0 { 0 } else { 2 });
                    let left_col = if over_north { 0 } else { 1 };
                    let vertical_forward = col == left_col;
                    g.nodes[id].entry[1] = Some(if vertical_forward == over_north { 1 } else { 3 });
                }
            }
            for row in 0..2 {
                g.connect(Port::Node(cell(k, row, 0), 2), Port::Node(cell(k, row, 1), 0));
            }
            for col in 0..2 {
                g.connect(Port::Node(cell(k, 1, col), 3), Port::Node(cell(k, 0, col), 1));
            }
        }
        // Rail ends on each side of node k in counterclockwise order.
        let side_ends = |k: usize, side: u8| -> [Port; 2] {
            let n = &self.nodes[k];
            let u = n.entry[n.under as usize].expect("oriented");
            match (side + 4 - u) % 4 {
                0 => [Port::Node(cell(k, 0, 0), 0), Port::Node(cell(k, 1, 0), 0)],
                1 => [Port::Node(cell(k, 1, 0), 1), Port::Node(cell(k, 1, 1), 1)],
                2 => [Port::Node(cell(k, 1, 1), 2), Port::Node(cell(k, 0, 1), 2)],
                _ => [Port::Node(cell(k, 0, 1), 3), Port::Node(cell(k, 0, 0), 3)],
            }
        };
        let entered = |k: usize, side: u8| self.nodes[k].entry[(side % 2) as usize] == Some(side);
        // (left rail end, right rail end) at a port, for the strand through it.
        let rails = |p: Port| -> (Port, Port) {
            match p {
                Port::Node(k, s) => {
                    let [first, second] = side_ends(k, s);
                    if entered(k, s) {
                        (first, second)
                    } else {
                        (second, first)
                    }
                }
                Port::Boundary(b) => {
                    let (lo, hi) = (Port::Boundary(2 * b), Port::Boundary(2 * b + 1));
                    match self.boundary[b].expect("oriented") {
                        Direction::Out => (lo, hi),
                        Direction::In => (hi, lo),
                    }
                }
            }
        };
        let mut done = std::collections::HashSet::new();
        for (&a, &b) in &self.link {
            if done.contains(&a) {
                continue;
            }
            done.insert(a);
            done.insert(b);
            let (al, ar) = rails(a);
            let (bl, br) = rails(b);
            g.connect(al, bl);
            g.connect(ar, br);
        }
        // Boundary positions run clockwise, so whatever the direction of the
        // strand, the rail at the earlier position runs outward.
        for b in 0..self.boundary.len() {
            g.boundary[2 * b] = Some(Direction::Out);
            g.boundary[2 * b + 1] = Some(Direction::In);
        }
        g
    }
}

//! Oriented classical and virtual link diagrams in planar-diagram form.
//!
//! A classical crossing `X a b c d` lists its four edge labels
//! counterclockwise from the incoming under-edge; a virtual crossing
//! `V a b c d` carries strands `a -> c` and `b -> d`. Diagrams are always
//! stored canonically relabelled, so rendering and parsing round-trip.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Finished, Graph};
use crate::tangle::{self, Direction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    Classical,
    Virtual,
}

/// One crossing with its edge labels. `sign` is 0 for virtual crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub(crate) kind: CrossingKind,
    pub(crate) slots: [u32; 4],
    pub(crate) sign: i8,
}

impl Crossing {
    pub fn kind(&self) -> CrossingKind {
        self.kind
    }

    pub fn slots(&self) -> [u32; 4] {
        self.slots
    }

    /// +1 when the over-strand runs `d -> b`, -1 when it runs `b -> d`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_classical(&self) -> bool {
        self.kind == CrossingKind::Classical
    }

    /// Entry ports of the two strands for a graph node built from this record.
    pub(crate) fn entries(&self) -> [Option<u8>; 2] {
        match self.kind {
            CrossingKind::Classical => [Some(0), Some(if self.sign > 0 { 3 } else { 1 })],
            CrossingKind::Virtual => [Some(0), Some(1)],
        }
    }

    pub(crate) fn write_line(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let tag = match self.kind {
            CrossingKind::Classical => 'X',
            CrossingKind::Virtual => 'V',
        };
        let [a, b, c, d] = self.slots;
        writeln!(f, "{tag} {a} {b} {c} {d}")
    }
}

/// Oriented link diagram: crossings plus crossingless loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// Reads one `X`/`V` line into a crossing kind and its labels.
pub(crate) fn parse_crossing_line(
    line_no: usize,
    tag: &str,
    args: &[&str],
) -> Result<(CrossingKind, [u32; 4])> {
    let kind = match tag {
        "X" => CrossingKind::Classical,
        "V" => CrossingKind::Virtual,
        _ => return Err(Error::parse(line_no, format!("unknown record `{tag}`"))),
    };
    if args.len() != 4 {
        return Err(Error::parse(line_no, "a crossing needs four edge labels"));
    }
    let mut slots = [0u32; 4];
    for (slot, text) in slots.iter_mut().zip(args) {
        *slot = text
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Error::parse(line_no, format!("bad edge label `{text}`")))?;
    }
    Ok((kind, slots))
}

/// Splits a line into whitespace tokens, dropping `#` comments.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    line.split('#').next().unwrap_or("").split_whitespace().collect()
}

/// Graph-node entries known from a parsed record: the under strand enters at
/// `a`; the over strand is left to the traversal.
pub(crate) fn parsed_entries(kind: CrossingKind) -> [Option<u8>; 2] {
    match kind {
        CrossingKind::Classical => [Some(0), None],
        CrossingKind::Virtual => [Some(0), Some(1)],
    }
}

impl LinkDiagram {
    /// The empty diagram (no components).
    pub fn empty() -> Self {
        Self::default()
    }

    /// `k` disjoint crossingless circles.
    pub fn unlink(k: usize) -> Self {
        Self {
            crossings: Vec::new(),
            free_loops: k,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        let mut free_loops = 0;
        for (i, line) in text.lines().enumerate() {
            let toks = tokens(line);
            match toks.split_first() {
                None => {}
                Some((&"O", [])) => free_loops += 1,
                Some((&"O", _)) => return Err(Error::parse(i + 1, "`O` takes no arguments")),
                Some((tag, args)) => {
                    let (kind, slots) = parse_crossing_line(i + 1, tag, args)?;
                    records.push((kind, slots, parsed_entries(kind)));
                }
            }
        }
        let mut g = Graph::from_labelled(&records, &[], free_loops, true)?;
        g.orient()?;
        Ok(Self::from_finished(g.finish()))
    }

    pub(crate) fn from_finished(f: Finished) -> Self {
        debug_assert!(f.endpoints.is_empty());
        Self {
            crossings: f.crossings,
            free_loops: f.free_loops,
        }
    }

    /// Rebuilds an oriented graph; the caller may edit it and `finish` again.
    pub(crate) fn to_graph(&self) -> Graph {
        let records: Vec<_> = self
            .crossings
            .iter()
            .map(|c| (c.kind, c.slots, c.entries()))
            .collect();
        Graph::from_labelled(&records, &[], self.free_loops, false)
            .expect("stored diagrams are valid")
    }

    pub(crate) fn from_graph(mut g: Graph) -> Result<Self> {
        g.orient()?;
        Ok(Self::from_finished(g.finish()))
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_classical()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.len() - self.classical_count()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Number of edges, which are labelled `1..=edge_count()`.
    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Number of closed components, free loops included.
    pub fn components(&self) -> usize {
        self.to_graph().strand_count() + self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// Swaps over and under at every classical crossing.
    pub fn mirror(&self) -> Self {
        let mut g = self.to_graph();
        g.mirror();
        Self::from_graph(g).expect("mirroring keeps orientation")
    }

    /// Reverses every component.
    pub fn reverse(&self) -> Self {
        let mut g = self.to_graph();
        g.reverse();
        Self::from_graph(g).expect("reversal keeps orientation")
    }

    /// Side-by-side union; components of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = self.to_graph();
        g.absorb(&other.to_graph(), 0);
        Self::from_graph(g).expect("union of oriented diagrams")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            c.write_line(f)?;
        }
        for _ in 0..self.free_loops {
            writeln!(f, "O")?;
        }
        Ok(())
    }
}

impl FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

const TREFOIL_LEFT: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
const FIGURE8: &str = "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n";
const KINOSHITA_TERASAKA: &str = include_str!("../data/kinoshita-terasaka.link");

/// Names accepted by [`builtin`], with whether they take a parameter.
pub const BUILTIN_NAMES: &[(&str, bool)] = &[
    ("unknot", false),
    ("unlink", true),
    ("hopf", false),
    ("trefoil-left", false),
    ("trefoil-right", false),
    ("figure8", false),
    ("torus2", true),
    ("twist", true),
    ("kinoshita-terasaka", false),
];

/// Splits `name:k` into its parts.
pub fn split_param(spec: &str) -> Result<(&str, Option<i64>)> {
    match spec.split_once(':') {
        None => Ok((spec, None)),
        Some((name, k)) => {
            let k = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("`{k}` in `{spec}`")))?;
            Ok((name, Some(k)))
        }
    }
}

fn positive(name: &str, k: Option<i64>) -> Result<usize> {
    match k {
        Some(k) if k >= 1 => Ok(k as usize),
        Some(k) => Err(Error::InvalidParameter(format!("{name} needs k >= 1, got {k}"))),
        None => Err(Error::InvalidParameter(format!("{name} needs a parameter, as in {name}:2"))),
    }
}

/// Named diagram; parameterized families take `k`.
pub fn builtin(name: &str, k: Option<i64>) -> Result<LinkDiagram> {
    let takes_param = BUILTIN_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    if !takes_param && k.is_some() {
        return Err(Error::InvalidParameter(format!("{name} takes no parameter")));
    }
    match name {
        "unknot" => Ok(LinkDiagram::unlink(1)),
        "unlink" => Ok(LinkDiagram::unlink(positive(name, k)?)),
        "hopf" => Ok(torus2(2)),
        "trefoil-left" => LinkDiagram::parse(TREFOIL_LEFT),
        "trefoil-right" => Ok(LinkDiagram::parse(TREFOIL_LEFT)?.mirror()),
        "figure8" => LinkDiagram::parse(FIGURE8),
        "torus2" => Ok(torus2(positive(name, k)?)),
        "twist" => twist_knot(positive(name, k)?),
        "kinoshita-terasaka" => LinkDiagram::parse(KINOSHITA_TERASAKA),
        _ => unreachable!("listed builtin"),
    }
}

/// Parses `name` or `name:k`.
pub fn builtin_spec(spec: &str) -> Result<LinkDiagram> {
    let (name, k) = split_param(spec)?;
    builtin(name, k)
}

/// Closure of the two-strand braid with `k` positive crossings, strands
/// running parallel.
pub fn torus2(k: usize) -> LinkDiagram {
    use crate::graph::Port;
    let mut g = Graph::default();
    for _ in 0..k {
        let id = g.add_node(CrossingKind::Classical);
        // Ports: 0 below-left, 1 below-right, 2 above-right, 3 above-left.
        g.set_entry(id, 0);
        g.set_entry(id, 1);
        g.nodes[id].want_sign = Some(1);
    }
    for i in 0..k {
        let j = (i + 1) % k;
        g.connect(Port::Node(i, 3), Port::Node(j, 0));
        g.connect(Port::Node(i, 2), Port::Node(j, 1));
    }
    g.apply_wanted_signs();
    LinkDiagram::from_graph(g).expect("braid closure is oriented")
}

/// Twist knot with `k` half-twists: the clasp tangle closed by `(1 2)(3 4)`.
pub fn twist_knot(k: usize) -> Result<LinkDiagram> {
    let t = tangle::twist_clasp(k)?;
    t.closure(&crate::matchings::named::m1())
}

pub(crate) fn direction_word(dirs: &[Direction]) -> String {
    dirs.iter().map(|d| d.letter()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sign of `X a b c d` read straight off consecutive edge numbering:
    /// the over strand runs `d -> b` exactly when `b` follows `d`.
    fn sign_oracle(slots: [u32; 4], edges: u32) -> i8 {
        let next = |e: u32| e % edges + 1;
        if slots[1] == next(slots[3]) {
            1
        } else {
            assert_eq!(slots[3], next(slots[1]));
            -1
        }
    }

    #[test]
    fn parse_unknot() {
        let d = LinkDiagram::parse("O").unwrap();
        assert_eq!(d.crossings().len(), 0);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn parse_hopf_text() {
        let d = LinkDiagram::parse("# Hopf link\nX 1 3 2 4\nX 3 1 4 2\n").unwrap();
        assert_eq!(d.classical_count(), 2);
        assert_eq!(d.components(), 2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            LinkDiagram::parse("X 1 -4 2 5\nX 3 6 4 1\nX 5 2 6 3"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(LinkDiagram::parse("X 1 2 3"), Err(Error::Parse { .. })));
        assert!(matches!(LinkDiagram::parse("Y 1 2 1 2"), Err(Error::Parse { .. })));
        assert!(matches!(
            LinkDiagram::parse("X 1 2 3 4"),
            Err(Error::InvalidDiagram(_))
        ));
    }

    #[test]
    fn rejects_contradictory_traversal() {
        // Both under passages start on edge 1.
        let r = LinkDiagram::parse("X 1 3 2 4\nX 1 4 2 3");
        assert!(matches!(r, Err(Error::Orientation(_))), "{r:?}");
    }

    #[test]
    fn left_trefoil_signs() {
        let d = builtin("trefoil-left", None).unwrap();
        assert_eq!(d.components(), 1);
        for c in d.crossings() {
            assert_eq!(c.sign(), sign_oracle(c.slots(), 6));
        }
        assert_eq!(d.writhe(), -3);
        assert_eq!(builtin("trefoil-right", None).unwrap().writhe(), 3);
    }

    #[test]
    fn figure8_is_amphichiral_in_writhe() {
        let d = builtin("figure8", None).unwrap();
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn builtin_families() {
        assert_eq!(builtin("unlink", Some(3)).unwrap().free_loops(), 3);
        let h = builtin("torus2", Some(2)).unwrap();
        assert_eq!(h.classical_count(), 2);
        assert_eq!(h.components(), 2);
        assert_eq!(h, builtin("hopf", None).unwrap());
        for k in 1..=8 {
            let t = torus2(k);
            assert_eq!(t.writhe(), k as i64);
            assert_eq!(t.components(), if k % 2 == 0 { 2 } else { 1 });
        }
        let kt = builtin("kinoshita-terasaka", None).unwrap();
        assert_eq!(kt.classical_count(), 11);
        assert_eq!(kt.components(), 1);
        assert!(matches!(builtin("nope", None), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("torus2", Some(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin("hopf", Some(2)), Err(Error::InvalidParameter(_))));
        assert_eq!(builtin_spec("unlink:2").unwrap().components(), 2);
    }

    #[test]
    fn twist_knots_are_knots() {
        for k in 1..=6 {
            let d = twist_knot(k).unwrap();
            assert_eq!(d.components(), 1, "k = {k}");
            assert_eq!(d.classical_count(), k + 2);
        }
    }

    #[test]
    fn mirror_and_union() {
        let t = builtin("trefoil-left", None).unwrap();
        assert_eq!(t.mirror().writhe(), 3);
        assert_eq!(t.mirror().mirror(), t);
        let u = t.disjoint_union(&t.mirror());
        assert_eq!(u.writhe(), 0);
        assert_eq!(u.components(), 2);
        assert_eq!(u.disjoint_union(&LinkDiagram::unlink(2)).components(), 4);
    }

    #[test]
    fn reverse_keeps_writhe() {
        for d in [builtin("trefoil-left", None).unwrap(), torus2(4), torus2(3)] {
            assert_eq!(d.reverse().writhe(), d.writhe());
            assert_eq!(d.reverse().reverse(), d);
        }
    }

    #[test]
    fn round_trip() {
        for name in ["unknot", "hopf", "trefoil-left", "trefoil-right", "figure8", "kinoshita-terasaka"] {
            let d = builtin(name, None).unwrap();
            assert_eq!(LinkDiagram::parse(&d.render()).unwrap(), d, "{name}");
        }
        for k in 1..=5 {
            let d = twist_knot(k).unwrap();
            assert_eq!(LinkDiagram::parse(&d.render()).unwrap(), d);
        }
    }

    #[test]
    fn virtual_crossing_parses() {
        let d = LinkDiagram::parse("V 1 2 2 1").unwrap();
        assert_eq!(d.virtual_count(), 1);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), 0);
    }
}

//! Oriented n-tangles: a disk with `2n` boundary endpoints numbered
//! clockwise, plus any number of closed components.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bracket::{UnionFind, CROSSING_BUDGET};
use crate::diagram::{self, Crossing, CrossingKind, LinkDiagram};
use crate::error::{Error, Result};
use crate::graph::{Graph, Port};
use crate::laurent::LaurentPoly;
use crate::matchings::Matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::In => Direction::Out,
            Direction::Out => Direction::In,
        }
    }

    /// `+` for outbound, `-` for inbound.
    pub fn letter(self) -> char {
        match self {
            Direction::In => '-',
            Direction::Out => '+',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            _ => Err(Error::InvalidParameter(format!("direction `{s}`"))),
        }
    }
}

/// Endpoint directions read in boundary order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientationWord(Vec<Direction>);

impl OrientationWord {
    pub fn new(letters: Vec<Direction>) -> Self {
        Self(letters)
    }

    /// The standard word `(+-)^n`.
    pub fn standard(n: usize) -> Self {
        Self(
            (0..2 * n)
                .map(|i| if i % 2 == 0 { Direction::Out } else { Direction::In })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Direction] {
        &self.0
    }

    pub fn is_balanced(&self) -> bool {
        let outs = self.0.iter().filter(|&&d| d == Direction::Out).count();
        2 * outs == self.0.len()
    }

    pub fn is_standard(&self) -> bool {
        self.0.len().is_multiple_of(2) && *self == Self::standard(self.0.len() / 2)
    }

    /// Length of the longest prefix of the form `(+-)^k` or `(+-)^k+`.
    fn standard_prefix(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .take_while(|&(i, &d)| d == if i % 2 == 0 { Direction::Out } else { Direction::In })
            .count()
    }

    /// The braid carrying this word to the standard one: repeatedly take
    /// the longest standard prefix `s`, find the first later letter `j`
    /// differing from letter `|s| + 1`, and slide it down with
    /// `s_(j-1) ... s_(|s|+1)`.
    pub fn orientation_braid(&self) -> Result<BraidWord> {
        if !self.is_balanced() {
            return Err(Error::InvalidParameter(format!("unbalanced orientation word {self}")));
        }
        let mut v = self.0.clone();
        let mut gens = Vec::new();
        loop {
            let s = OrientationWord(v.clone()).standard_prefix();
            if s == v.len() {
                return Ok(BraidWord(gens));
            }
            let j = (s + 1..v.len())
                .find(|&j| v[j] != v[s])
                .expect("balanced word has a differing letter");
            // With 0-based `j`, the generators are s_j, s_(j-1), ..., s_(s+1).
            gens.extend((s + 1..=j).rev());
            let moved = v.remove(j);
            v.insert(s, moved);
        }
    }
}

impl fmt::Display for OrientationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&diagram::direction_word(&self.0))
    }
}

impl FromStr for OrientationWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(Direction::Out),
                '-' | '\u{2212}' => Ok(Direction::In),
                _ => Err(Error::InvalidParameter(format!("orientation letter `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OrientationWord)
    }
}

/// Braid generators `s_i` (1-based, acting on endpoints `i, i+1`),
/// leftmost applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BraidWord(Vec<usize>);

impl BraidWord {
    pub fn new(gens: Vec<usize>) -> Self {
        Self(gens)
    }

    pub fn generators(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("s{g}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// One boundary endpoint: the edge leaving the disk there and its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub edge: u32,
    pub dir: Direction,
}

/// Oriented n-tangle, canonically labelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    n: usize,
    crossings: Vec<Crossing>,
    free_loops: usize,
    endpoints: Vec<Endpoint>,
}

impl Tangle {
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut records = Vec::new();
        let mut ends: BTreeMap<usize, (u32, Direction)> = BTreeMap::new();
        let mut free_loops = 0;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let toks = diagram::tokens(line);
            let Some((&tag, args)) = toks.split_first() else {
                continue;
            };
            match tag {
                "TANGLE" => {
                    if n.is_some() {
                        return Err(Error::parse(line_no, "repeated TANGLE header"));
                    }
                    let [k] = args else {
                        return Err(Error::parse(line_no, "TANGLE takes one argument"));
                    };
                    let k: usize = k
                        .parse()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| Error::parse(line_no, format!("bad strand count `{k}`")))?;
                    n = Some(k);
                }
                _ if n.is_none() => {
                    return Err(Error::parse(line_no, "expected TANGLE header first"));
                }
                "E" => {
                    let [idx, edge, dir] = args else {
                        return Err(Error::parse(line_no, "E takes index, edge and in|out"));
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad endpoint index `{idx}`")))?;
                    let edge: u32 = edge
                        .parse()
                        .ok()
                        .filter(|&e| e > 0)
                        .ok_or_else(|| Error::parse(line_no, format!("bad edge label `{edge}`")))?;
                    let dir: Direction =
                        dir.parse().map_err(|_| Error::parse(line_no, format!("bad direction `{dir}`")))?;
                    if ends.insert(idx, (edge, dir)).is_some() {
                        return Err(Error::parse(line_no, format!("endpoint {idx} listed twice")));
                    }
                }
                "O" if args.is_empty() => free_loops += 1,
                _ => {
                    let (kind, slots) = diagram::parse_crossing_line(line_no, tag, args)?;
                    records.push((kind, slots, diagram::parsed_entries(kind)));
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse(1, "missing TANGLE header"))?;
        if ends.len() != 2 * n || ends.keys().copied().ne(1..=2 * n) {
            return Err(Error::InvalidDiagram(format!(
                "a {n}-tangle needs endpoints 1..={} listed once each",
                2 * n
            )));
        }
        let endpoints: Vec<_> = ends.values().map(|&(e, d)| (e, Some(d))).collect();
        let mut g = Graph::from_labelled(&records, &endpoints, free_loops, true)?;
        g.orient()?;
        Ok(Self::from_graph_oriented(&g))
    }

    fn from_graph_oriented(g: &Graph) -> Self {
        let f = g.finish();
        Self {
            n: f.endpoints.len() / 2,
            crossings: f.crossings,
            free_loops: f.free_loops,
            endpoints: f
                .endpoints
                .into_iter()
                .map(|(edge, dir)| Endpoint { edge, dir })
                .collect(),
        }
    }

    pub(crate) fn from_graph(mut g: Graph) -> Result<Self> {
        g.orient()?;
        Ok(Self::from_graph_oriented(&g))
    }

    pub(crate) fn to_graph(&self) -> Graph {
        let records: Vec<_> = self
            .crossings
            .iter()
            .map(|c| (c.kind, c.slots, c.entries()))
            .collect();
        let ends: Vec<_> = self.endpoints.iter().map(|e| (e.edge, Some(e.dir))).collect();
        Graph::from_labelled(&records, &ends, self.free_loops, false).expect("stored tangles are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_classical()).count()
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(Crossing::is_classical)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// Number of closed components, free loops included.
    pub fn closed_components(&self) -> usize {
        self.to_graph().closed_strand_count() + self.free_loops
    }

    /// Pairs of endpoints (1-based) joined by a strand.
    pub fn connectivity(&self) -> Matching {
        let g = self.to_graph();
        let pairs = g.boundary_pairs();
        Matching::new(self.n, pairs.into_iter().map(|(a, b)| (a + 1, b + 1)))
            .expect("strands pair all endpoints")
    }

    pub fn orientation_word(&self) -> OrientationWord {
        OrientationWord(self.endpoints.iter().map(|e| e.dir).collect())
    }

    pub fn is_standard(&self) -> bool {
        self.orientation_word().is_standard()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn reverse(&self) -> Self {
        let mut g = self.to_graph();
        g.reverse();
        Self::from_graph(g).expect("reversal keeps orientation")
    }

    pub fn mirror(&self) -> Self {
        let mut g = self.to_graph();
        g.mirror();
        Self::from_graph(g).expect("mirroring keeps orientation")
    }

    /// Moves endpoint `i` to position `i + k` (mod `2n`) without reversing.
    pub fn relabel(&self, k: i64) -> Self {
        let m = 2 * self.n as i64;
        let mut ends = self.endpoints.clone();
        for (i, e) in self.endpoints.iter().enumerate() {
            ends[(i as i64 + k).rem_euclid(m) as usize] = *e;
        }
        let t = Self {
            endpoints: ends,
            ..self.clone()
        };
        Self::from_graph(t.to_graph()).expect("relabelling keeps orientation")
    }

    /// `T^B`: the braid's crossings attached outside the boundary, with
    /// generator `s_i` crossing the strands at endpoints `i` and `i + 1`.
    pub fn apply_braid(&self, b: &BraidWord) -> Result<Self> {
        let mut g = self.to_graph();
        for &i in b.generators() {
            if i == 0 || i >= 2 * self.n {
                return Err(Error::SizeMismatch(format!(
                    "generator s{i} on {} endpoints",
                    2 * self.n
                )));
            }
            g.twist(i - 1, i, CrossingKind::Classical);
        }
        Self::from_graph(g)
    }

    /// `T^B` for the orientation braid of `T`, which has standard orientation.
    pub fn standardize(&self) -> Result<(Self, BraidWord)> {
        let b = self.orientation_word().orientation_braid()?;
        Ok((self.apply_braid(&b)?, b))
    }

    fn check_size(&self, m: &Matching) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "matching on {} points for a {}-tangle",
                2 * m.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// Whether every chord of `m` joins an outbound to an inbound endpoint.
    pub fn accepts(&self, m: &Matching) -> bool {
        m.n() == self.n
            && m.pairs()
                .iter()
                .all(|&(i, j)| self.endpoints[i - 1].dir != self.endpoints[j - 1].dir)
    }

    fn build_closure(&self, m: &Matching, modified: bool, oriented: bool) -> Result<LinkDiagram> {
        self.check_size(m)?;
        if oriented && !modified && !self.accepts(m) {
            return Err(Error::IncompatibleMatching(m.to_string()));
        }
        let mut g = self.to_graph();
        if !oriented {
            g.clear_orientation();
        }
        let arr = m.chord_arrangement();
        let pairs = m.pairs();
        // Per chord crossing: the (entry, exit) ports for each of its chords.
        let mut elem: Vec<[(Port, Port); 2]> = Vec::with_capacity(arr.crossings.len());
        for &(c1, c2) in &arr.crossings {
            if !modified {
                let v = g.add_node(CrossingKind::Virtual);
                elem.push([
                    (Port::Node(v, 0), Port::Node(v, 2)),
                    (Port::Node(v, 1), Port::Node(v, 3)),
                ]);
                continue;
            }
            // Sides of the replacement, by endpoint a1 < a2 < a3 < a4 the
            // chords lead to: chords are (a1, a3) and (a2, a4).
            let c = g.add_node(CrossingKind::Classical);
            let x = g.add_node(CrossingKind::Virtual);
            g.connect(Port::Node(c, 1), Port::Node(x, 0));
            g.connect(Port::Node(c, 2), Port::Node(x, 1));
            let first = (Port::Node(x, 2), Port::Node(c, 0));
            let second = (Port::Node(c, 3), Port::Node(x, 3));
            if pairs[c1].0 < pairs[c2].0 {
                elem.push([first, second]);
            } else {
                elem.push([second, first]);
            }
        }
        for (ci, &(i, j)) in pairs.iter().enumerate() {
            let path: Vec<(Port, Port)> = arr.along[ci]
                .iter()
                .map(|&x| elem[x][usize::from(arr.crossings[x].0 != ci)])
                .collect();
            g.join(i - 1, j - 1, &path);
        }
        g.compact_boundary(&[]);
        LinkDiagram::from_graph(g)
    }

    /// `T(m)`: endpoints joined by the chords of `m`, chord intersections
    /// becoming virtual crossings.
    pub fn closure(&self, m: &Matching) -> Result<LinkDiagram> {
        self.build_closure(m, false, true)
    }

    /// `T(m)` with orientation discarded; good for brackets only.
    pub fn closure_unoriented(&self, m: &Matching) -> Result<LinkDiagram> {
        self.build_closure(m, false, false)
    }

    /// The modified closure: each chord intersection, with chords leading to
    /// endpoints `a1 < a2 < a3 < a4`, is replaced by a virtual crossing and
    /// a classical one that reroute the strands to join `a1` with `a2` and
    /// `a3` with `a4`, the strand toward `a3` passing under.
    pub fn modified_closure(&self, m: &Matching) -> Result<LinkDiagram> {
        if !self.is_standard() {
            return Err(Error::Orientation(format!(
                "modified closure needs standard orientation, got {}",
                self.orientation_word()
            )));
        }
        self.check_size(m)?;
        self.build_closure(m, true, true)
    }

    /// `T ∪ T'`: endpoint `i` of `self` identified with endpoint `i` of
    /// `other`. Directions must be opposite at every endpoint.
    pub fn glue(&self, other: &Tangle) -> Result<LinkDiagram> {
        if other.n != self.n {
            return Err(Error::SizeMismatch(format!(
                "gluing a {}-tangle to a {}-tangle",
                self.n, other.n
            )));
        }
        if let Some(i) = (0..2 * self.n).find(|&i| self.endpoints[i].dir == other.endpoints[i].dir) {
            return Err(Error::Orientation(format!(
                "endpoint {} is {} on both sides",
                i + 1,
                self.endpoints[i].dir
            )));
        }
        self.glue_graph(other, true)
    }

    /// `T ∪ T'` with orientation discarded; good for brackets only.
    pub fn glue_unoriented(&self, other: &Tangle) -> Result<LinkDiagram> {
        if other.n != self.n {
            return Err(Error::SizeMismatch(format!(
                "gluing a {}-tangle to a {}-tangle",
                self.n, other.n
            )));
        }
        self.glue_graph(other, false)
    }

    fn glue_graph(&self, other: &Tangle, oriented: bool) -> Result<LinkDiagram> {
        let mut g = self.to_graph();
        let size = 2 * self.n;
        g.absorb(&other.to_graph(), size);
        if !oriented {
            g.clear_orientation();
        }
        for i in 0..size {
            g.join(i, size + i, &[]);
        }
        g.compact_boundary(&[]);
        LinkDiagram::from_graph(g)
    }

    /// Antiparallel blackboard 2-cable: endpoint `i` becomes endpoints
    /// `2i - 1` and `2i`, the first running in the strand's direction.
    pub fn cable(&self) -> Self {
        Self::from_graph(self.to_graph().cable()).expect("cables are oriented")
    }

    /// Coefficients `q_m` with `<T ∪ self> = sum_m q_m <T(m)>` for every
    /// n-tangle `T`: each Kauffman state of `self` reduces to a matching of
    /// its endpoints and a number of closed loops.
    pub fn bracket_decompose(&self) -> Result<BTreeMap<Matching, LaurentPoly>> {
        let classical: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .filter(|c| c.is_classical())
            .map(|c| c.slots.map(|e| e - 1))
            .collect();
        let c = classical.len();
        if c > CROSSING_BUDGET {
            return Err(Error::BudgetExceeded {
                crossings: c,
                budget: CROSSING_BUDGET,
            });
        }
        let edges = 2 * self.crossings.len() + self.n;
        let mut base = UnionFind::new(edges);
        for x in self.crossings.iter().filter(|x| !x.is_classical()) {
            let s = x.slots.map(|e| e - 1);
            base.union(s[0], s[2]);
            base.union(s[1], s[3]);
        }
        let ends: Vec<u32> = self.endpoints.iter().map(|e| e.edge - 1).collect();
        let n = self.n;
        let free = self.free_loops;
        // Histogram key: (matching, #B, loops).
        let states = 1u64 << c;
        let chunks = 64u64.min(states);
        let tally = (0..chunks)
            .into_par_iter()
            .map(|k| {
                let mut counts: BTreeMap<StateKey, i64> = BTreeMap::new();
                let mut uf = base.clone();
                for s in states * k / chunks..states * (k + 1) / chunks {
                    uf.reset_from(&base);
                    for (i, x) in classical.iter().enumerate() {
                        if s >> i & 1 == 0 {
                            uf.union(x[0], x[1]);
                            uf.union(x[2], x[3]);
                        } else {
                            uf.union(x[0], x[3]);
                            uf.union(x[1], x[2]);
                        }
                    }
                    let roots: Vec<u32> = ends.iter().map(|&e| uf.find(e)).collect();
                    let mut pairs = Vec::with_capacity(n);
                    for a in 0..roots.len() {
                        if let Some(b) = (a + 1..roots.len()).find(|&b| roots[b] == roots[a]) {
                            pairs.push((a + 1, b + 1));
                        }
                    }
                    let mut all_roots: Vec<u32> = (0..edges as u32).map(|e| uf.find(e)).collect();
                    all_roots.sort_unstable();
                    all_roots.dedup();
                    let loops = all_roots.len() - n + free;
                    *counts.entry((pairs, s.count_ones() as usize, loops)).or_default() += 1;
                }
                counts
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let d = LaurentPoly::loop_value();
        let mut out: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
        for ((pairs, b, loops), count) in tally {
            let m = Matching::new(n, pairs).expect("state arcs pair all endpoints");
            let term = d
                .pow(loops as u32)
                .shift(c as i64 - 2 * b as i64)
                .scale(&count.into());
            *out.entry(m).or_default() += &term;
        }
        out.retain(|_, q| !q.is_zero());
        Ok(out)
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TANGLE {}", self.n)?;
        for (i, e) in self.endpoints.iter().enumerate() {
            writeln!(f, "E {} {} {}", i + 1, e.edge, e.dir)?;
        }
        for c in &self.crossings {
            c.write_line(f)?;
        }
        for _ in 0..self.free_loops {
            writeln!(f, "O")?;
        }
        Ok(())
    }
}

impl FromStr for Tangle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Decomposition histogram key: endpoint pairs, B-smoothings, closed loops.
type StateKey = (Vec<(usize, usize)>, usize, usize);

const DELTA: &str = "\
TANGLE 3
E 1 1 out
E 2 2 in
E 3 3 out
E 4 4 in
E 5 5 out
E 6 6 in
X 7 2 1 8
X 8 6 5 9
X 9 4 3 7
";

/// Names accepted by [`builtin`], with whether they take a parameter.
pub const BUILTIN_NAMES: &[(&str, bool)] = &[
    ("delta", false),
    ("double-delta", false),
    ("half-twists", true),
    ("twist-clasp", true),
];

/// Named tangle, as `name` or `name:k`.
pub fn builtin(spec: &str) -> Result<Tangle> {
    let (name, k) = diagram::split_param(spec)?;
    let takes = BUILTIN_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    let k = match (takes, k) {
        (false, None) => 0,
        (false, Some(_)) => return Err(Error::InvalidParameter(format!("{name} takes no parameter"))),
        (true, None) => return Err(Error::InvalidParameter(format!("{name} needs a parameter, as in {name}:2"))),
        (true, Some(k)) if k < 0 => return Err(Error::InvalidParameter(format!("{name} needs k >= 0"))),
        (true, Some(k)) => k as usize,
    };
    match name {
        "delta" => delta(),
        "double-delta" => Ok(double_delta()),
        "half-twists" => half_twists(k),
        "twist-clasp" => twist_clasp(k),
        _ => unreachable!("listed builtin"),
    }
}

/// The Δ tangle: three strands pairwise crossing once, with standard
/// orientation. Closing by `(1 2)(3 4)(5 6)` gives the unknot and by
/// `(1 6)(2 3)(4 5)` the left-handed trefoil.
pub fn delta() -> Result<Tangle> {
    Tangle::parse(DELTA)
}

/// Mirror image of the antiparallel 2-cable of the Δ tangle.
pub fn double_delta() -> Tangle {
    delta().expect("builtin").cable().mirror()
}

/// Standard boundary of a 2-tangle.
fn standard_boundary(g: &mut Graph) {
    for (i, b) in g.boundary.iter_mut().enumerate() {
        *b = Some(if i % 2 == 0 { Direction::Out } else { Direction::In });
    }
}

/// `k` positive half-twists between the strands at endpoints 1 and 2, for
/// even `k`. Closing by `(1 2)(3 4)` gives the unknot and by `(1 4)(2 3)`
/// the (2, k)-torus link.
pub fn half_twists(k: usize) -> Result<Tangle> {
    if k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "half-twists needs an even count for standard orientation, got {k}"
        )));
    }
    let mut g = Graph::with_boundary(4);
    g.connect(Port::Boundary(3), Port::Boundary(0));
    g.connect(Port::Boundary(1), Port::Boundary(2));
    for _ in 0..k {
        let x = g.twist(0, 1, CrossingKind::Classical);
        g.nodes[x].want_sign = Some(1);
    }
    standard_boundary(&mut g);
    g.orient()?;
    g.apply_wanted_signs();
    Ok(Tangle::from_graph_oriented(&g))
}

/// A positive clasp followed by `k` half-twists, alternating with the
/// clasp. Closing by `(1 2)(3 4)` gives the twist knot with `k`
/// half-twists and by `(1 4)(2 3)` the positive Hopf link.
pub fn twist_clasp(k: usize) -> Result<Tangle> {
    let mut g = Graph::with_boundary(4);
    g.connect(Port::Boundary(0), Port::Boundary(3));
    g.connect(Port::Boundary(1), Port::Boundary(2));
    for _ in 0..2 {
        let x = g.twist(0, 1, CrossingKind::Classical);
        g.nodes[x].want_sign = Some(1);
    }
    let sign = if k % 2 == 1 { 1 } else { -1 };
    for _ in 0..k {
        let x = g.twist(3, 0, CrossingKind::Classical);
        g.nodes[x].want_sign = Some(sign);
    }
    standard_boundary(&mut g);
    g.orient()?;
    g.apply_wanted_signs();
    Ok(Tangle::from_graph_oriented(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{auxiliary_f, kauffman_bracket};
    use crate::matchings::named::*;

    fn word(s: &str) -> OrientationWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    const IDENTITY: &str = "TANGLE 2\nE 1 1 out\nE 2 1 in\nE 3 2 out\nE 4 2 in\n";
    const ONE_CROSSING: &str = "TANGLE 2\nE 1 1 out\nE 2 2 in\nE 3 3 out\nE 4 4 in\nX 2 3 1 4\n";

    #[test]
    fn orientation_braids() {
        assert_eq!(word("+-+-").orientation_braid().unwrap(), BraidWord::default());
        assert_eq!(word("++--").orientation_braid().unwrap(), BraidWord::new(vec![2]));
        assert_eq!(word("+-++--").orientation_braid().unwrap(), BraidWord::new(vec![4]));
        assert_eq!(word("++-+--").orientation_braid().unwrap(), BraidWord::new(vec![2, 4]));
        assert_eq!(word("+++---").orientation_braid().unwrap(), BraidWord::new(vec![3, 2, 4]));
        assert!(word("++-").orientation_braid().is_err());
        assert_eq!(BraidWord::new(vec![3, 2, 4]).to_string(), "s3 s2 s4");
    }

    #[test]
    fn parse_and_render() {
        let t = Tangle::parse(IDENTITY).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.orientation_word().to_string(), "+-+-");
        assert_eq!(Tangle::parse(&t.render()).unwrap(), t);
        let d = delta().unwrap();
        assert_eq!(d.writhe(), -3);
        assert!(d.is_standard());
        assert_eq!(Tangle::parse(&d.render()).unwrap(), d);
        assert!(Tangle::parse("E 1 1 out").is_err());
        assert!(Tangle::parse("TANGLE 1\nE 1 1 out\nE 1 1 in").is_err());
        assert!(Tangle::parse("TANGLE 1\nE 1 1 out\nE 2 1 out").is_err());
        assert!(Tangle::parse("TANGLE 2\nE 1 1 out\nE 2 1 in").is_err());
    }

    #[test]
    fn identity_closures() {
        let t = Tangle::parse(IDENTITY).unwrap();
        assert_eq!(t.closure(&m1()).unwrap().components(), 2);
        assert_eq!(t.closure(&m2()).unwrap().components(), 1);
        let c3 = t.closure_unoriented(&m3()).unwrap();
        assert_eq!(c3.virtual_count(), 1);
        assert!(matches!(t.closure(&m3()), Err(Error::IncompatibleMatching(_))));
    }

    #[test]
    fn crossing_matching_gives_one_virtual() {
        let t = Tangle::parse(ONE_CROSSING).unwrap();
        let m = crate::matchings::Matching::from_pairs(&[(1, 4), (2, 3)]).unwrap();
        assert_eq!(t.closure(&m).unwrap().virtual_count(), 0);
        let c = t.closure_unoriented(&m3()).unwrap();
        assert_eq!(c.virtual_count(), 1);
        assert_eq!(c.classical_count(), 1);
    }

    #[test]
    fn delta_closures() {
        let d = delta().unwrap();
        assert_eq!(auxiliary_f(&d.closure(&a1()).unwrap()).unwrap(), LaurentPoly::one());
        let trefoil = crate::diagram::builtin("trefoil-left", None).unwrap();
        assert_eq!(
            auxiliary_f(&d.closure(&a2()).unwrap()).unwrap(),
            auxiliary_f(&trefoil).unwrap()
        );
    }

    #[test]
    fn braid_standardizes() {
        let t = Tangle::parse("TANGLE 2\nE 1 1 out\nE 2 2 out\nE 3 2 in\nE 4 1 in\n").unwrap();
        assert_eq!(t.orientation_word().to_string(), "++--");
        let (s, b) = t.standardize().unwrap();
        assert_eq!(b, BraidWord::new(vec![2]));
        assert!(s.is_standard());
        assert_eq!(s.writhe(), t.writhe() + 1);
    }

    #[test]
    fn half_twist_closures() {
        for k in [2usize, 4, 6] {
            let t = half_twists(k).unwrap();
            assert_eq!(t.writhe(), k as i64);
            assert_eq!(auxiliary_f(&t.closure(&m1()).unwrap()).unwrap(), LaurentPoly::one());
            let l = t.closure(&m2()).unwrap();
            assert_eq!(l.components(), 2);
            assert_eq!(l.writhe(), k as i64);
        }
        assert!(half_twists(3).is_err());
    }

    #[test]
    fn twist_clasp_closures() {
        let hopf = p("-A^-10 - A^-2");
        for k in 0..=5 {
            let t = twist_clasp(k).unwrap();
            assert!(t.is_standard());
            assert_eq!(auxiliary_f(&t.closure(&m2()).unwrap()).unwrap(), hopf, "k = {k}");
        }
        let trefoil = auxiliary_f(&crate::diagram::builtin("trefoil-right", None).unwrap()).unwrap();
        let fig8 = auxiliary_f(&crate::diagram::builtin("figure8", None).unwrap()).unwrap();
        assert_eq!(auxiliary_f(&twist_clasp(1).unwrap().closure(&m1()).unwrap()).unwrap(), trefoil);
        assert_eq!(auxiliary_f(&twist_clasp(2).unwrap().closure(&m1()).unwrap()).unwrap(), fig8);
    }

    #[test]
    fn modified_closures_agree_on_noncrossing() {
        let d = delta().unwrap();
        for m in Matching::enumerate(3, true).unwrap() {
            assert_eq!(d.modified_closure(&m).unwrap(), d.closure(&m).unwrap());
        }
    }

    #[test]
    fn modified_closure_of_crossing_matching() {
        let t = Tangle::parse(IDENTITY).unwrap();
        let c = t.modified_closure(&m3()).unwrap();
        assert_eq!(c.virtual_count(), 1);
        assert_eq!(c.classical_count(), 1);
        assert_eq!(c.writhe(), -1);
        let d = delta().unwrap();
        for m in Matching::enumerate(3, true).unwrap() {
            assert!(d.modified_closure(&m).is_ok(), "{m}");
        }
        let nonstandard = Tangle::parse("TANGLE 2\nE 1 1 out\nE 2 2 out\nE 3 2 in\nE 4 1 in\n").unwrap();
        assert!(matches!(nonstandard.modified_closure(&m1()), Err(Error::Orientation(_))));
    }

    #[test]
    fn single_crossing_decomposition() {
        let t = Tangle::parse(ONE_CROSSING).unwrap();
        let q = t.bracket_decompose().unwrap();
        assert_eq!(q.len(), 2);
        let vals: Vec<_> = q.values().cloned().collect();
        assert!(vals.contains(&LaurentPoly::monomial(1, 1)));
        assert!(vals.contains(&LaurentPoly::monomial(1, -1)));
        let id = Tangle::parse(IDENTITY).unwrap().bracket_decompose().unwrap();
        assert_eq!(id.len(), 1);
        assert_eq!(id.values().next().unwrap(), &LaurentPoly::one());
    }

    #[test]
    fn decomposition_identity_on_delta() {
        let d = delta().unwrap();
        let other = d.reverse();
        let q = other.bracket_decompose().unwrap();
        let lhs = kauffman_bracket(&d.glue(&other).unwrap()).unwrap();
        let rhs: LaurentPoly = q
            .iter()
            .map(|(m, qm)| qm * &kauffman_bracket(&d.closure_unoriented(m).unwrap()).unwrap())
            .sum();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rotation_relabels() {
        let d = delta().unwrap();
        assert_eq!(d.relabel(6), d);
        assert_eq!(d.relabel(2).relabel(4), d);
        assert_eq!(d.reverse().reverse(), d);
    }

    #[test]
    fn double_delta_shape() {
        let t = double_delta();
        assert_eq!(t.n(), 6);
        assert_eq!(t.classical_count(), 12);
        assert_eq!(t.orientation_word().to_string(), "+-".repeat(6));
        assert_eq!(Tangle::parse(&t.render()).unwrap(), t);
    }

    #[test]
    fn builtins_by_name() {
        assert_eq!(builtin("delta").unwrap(), delta().unwrap());
        assert_eq!(builtin("twist-clasp:3").unwrap(), twist_clasp(3).unwrap());
        assert!(matches!(builtin("delta:2"), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin("half-twists"), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
    }
}

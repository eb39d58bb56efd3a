//! Kauffman bracket by state sum and the auxiliary polynomial
//! `f = (-A^3)^(-w) <L>`.

use rayon::prelude::*;

use crate::diagram::{CrossingKind, LinkDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Largest number of classical crossings the state sum accepts.
pub const CROSSING_BUDGET: usize = 24;

/// Smoothing of one classical crossing `X a b c d`: `A` joins `a-b` and
/// `c-d`, `B` joins `a-d` and `b-c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

/// Disjoint sets over `0..n`, small enough to copy per state.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }

    pub fn reset_from(&mut self, other: &UnionFind) {
        self.parent.copy_from_slice(&other.parent);
    }
}

/// Edge pairings of a diagram with labels shifted to `0..edges`.
struct Smoother {
    classical: Vec<[u32; 4]>,
    base: UnionFind,
    base_classes: usize,
    free_loops: usize,
}

impl Smoother {
    fn new(d: &LinkDiagram) -> Self {
        let edges = d.edge_count();
        let mut base = UnionFind::new(edges);
        let mut base_classes = edges;
        let mut classical = Vec::new();
        for c in d.crossings() {
            let s = c.slots().map(|e| e - 1);
            match c.kind() {
                CrossingKind::Classical => classical.push(s),
                CrossingKind::Virtual => {
                    base_classes -= usize::from(base.union(s[0], s[2]));
                    base_classes -= usize::from(base.union(s[1], s[3]));
                }
            }
        }
        Self {
            classical,
            base,
            base_classes,
            free_loops: d.free_loops(),
        }
    }

    /// Loops of the state whose bit `i` set means crossing `i` is B-smoothed.
    fn loops(&self, state: u64, uf: &mut UnionFind) -> usize {
        uf.reset_from(&self.base);
        let mut classes = self.base_classes;
        for (i, s) in self.classical.iter().enumerate() {
            let (p, q) = if state >> i & 1 == 0 {
                ((s[0], s[1]), (s[2], s[3]))
            } else {
                ((s[0], s[3]), (s[1], s[2]))
            };
            classes -= usize::from(uf.union(p.0, p.1));
            classes -= usize::from(uf.union(q.0, q.1));
        }
        classes + self.free_loops
    }
}

/// Number of loops left after smoothing every classical crossing as in
/// `state` (indexed by classical crossing order) and passing straight
/// through virtual crossings.
pub fn state_loops(d: &LinkDiagram, state: &[Smoothing]) -> Result<usize> {
    let sm = Smoother::new(d);
    if state.len() != sm.classical.len() {
        return Err(Error::SizeMismatch(format!(
            "state has {} choices for {} classical crossings",
            state.len(),
            sm.classical.len()
        )));
    }
    let bits = state
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Smoothing::B)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    let mut uf = sm.base.clone();
    Ok(sm.loops(bits, &mut uf))
}

/// Counts of states by `(#A - #B, loops)`, flattened.
struct Histogram {
    crossings: usize,
    max_loops: usize,
    counts: Vec<i64>,
}

impl Histogram {
    fn new(crossings: usize, max_loops: usize) -> Self {
        Self {
            crossings,
            max_loops,
            counts: vec![0; (crossings + 1) * (max_loops + 1)],
        }
    }

    fn add(&mut self, b_count: usize, loops: usize) {
        self.counts[b_count * (self.max_loops + 1) + loops] += 1;
    }

    fn merge(mut self, other: Histogram) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    /// `sum A^(#A - #B) d^(loops - 1)` with `d = -A^2 - A^-2`.
    fn polynomial(&self) -> Result<LaurentPoly> {
        let d = LaurentPoly::loop_value();
        let mut powers = vec![LaurentPoly::one()];
        for _ in 1..self.max_loops {
            let next = powers.last().expect("nonempty") * &d;
            powers.push(next);
        }
        let mut total = LaurentPoly::zero();
        for b in 0..=self.crossings {
            let a_minus_b = self.crossings as i64 - 2 * b as i64;
            for loops in 0..=self.max_loops {
                let n = self.counts[b * (self.max_loops + 1) + loops];
                if n == 0 {
                    continue;
                }
                if loops == 0 {
                    return Err(Error::InvalidDiagram("the empty diagram has no bracket".into()));
                }
                total += &powers[loops - 1].shift(a_minus_b).scale(&n.into());
            }
        }
        Ok(total)
    }
}

/// Kauffman bracket with `<O> = 1`.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_chunked(d, 256)
}

/// Kauffman bracket with the state space split into `chunks` contiguous
/// ranges summed in parallel. The result does not depend on `chunks`.
pub fn kauffman_bracket_chunked(d: &LinkDiagram, chunks: usize) -> Result<LaurentPoly> {
    let sm = Smoother::new(d);
    let c = sm.classical.len();
    if c > CROSSING_BUDGET {
        return Err(Error::BudgetExceeded {
            crossings: c,
            budget: CROSSING_BUDGET,
        });
    }
    let states = 1u64 << c;
    let chunks = (chunks.max(1) as u64).min(states);
    let max_loops = d.edge_count() + sm.free_loops;
    let hist = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let (lo, hi) = (states * k / chunks, states * (k + 1) / chunks);
            let mut h = Histogram::new(c, max_loops);
            let mut uf = sm.base.clone();
            for s in lo..hi {
                h.add(s.count_ones() as usize, sm.loops(s, &mut uf));
            }
            h
        })
        .reduce(|| Histogram::new(c, max_loops), Histogram::merge);
    hist.polynomial()
}

/// The normalization factor `(-A^3)^(-w)`.
pub fn writhe_factor(w: i64) -> LaurentPoly {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, -3 * w)
}

/// `f(L) = (-A^3)^(-w(L)) <L>`, invariant under all generalized
/// Reidemeister moves.
pub fn auxiliary_f(d: &LinkDiagram) -> Result<LaurentPoly> {
    Ok(&writhe_factor(d.writhe()) * &kauffman_bracket(d)?)
}

/// Jones polynomial in `q = t^(1/4)`, from `f` under `A = q^-1`.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    Ok(auxiliary_f(d)?.to_jones())
}

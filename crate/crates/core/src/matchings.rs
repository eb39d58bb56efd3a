//! Perfect matchings of `2n` points on a circle, labelled `1..=2n`
//! clockwise.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`Matching::enumerate`].
pub const MAX_ENUMERATION_N: usize = 8;

/// A perfect matching of `1..=2n`. Pairs are stored as `(i, j)` with
/// `i < j`, sorted by `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

/// Chord intersections of a matching drawn inside the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordArrangement {
    /// Interleaving chord pairs, as indices into [`Matching::pairs`].
    pub crossings: Vec<(usize, usize)>,
    /// For each chord `(i, j)`, its crossings (indices into `crossings`)
    /// in the order met when walking from `i` to `j`.
    pub along: Vec<Vec<usize>>,
}

impl Matching {
    /// Validates and canonicalizes a list of pairs.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatching("n must be positive".into()));
        }
        let mut seen = vec![false; 2 * n + 1];
        let mut out = Vec::with_capacity(n);
        for (a, b) in pairs {
            for x in [a, b] {
                if x == 0 || x > 2 * n {
                    return Err(Error::InvalidMatching(format!("label {x} outside 1..={}", 2 * n)));
                }
                if seen[x] {
                    return Err(Error::InvalidMatching(format!("label {x} used twice")));
                }
                seen[x] = true;
            }
            out.push((a.min(b), a.max(b)));
        }
        if out.len() != n {
            return Err(Error::InvalidMatching(format!(
                "expected {n} pairs, found {}",
                out.len()
            )));
        }
        out.sort_unstable();
        Ok(Self { n, pairs: out })
    }

    /// Infers `n` from the number of pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(pairs.len(), pairs.iter().copied())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The label matched with `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.pairs
            .iter()
            .find_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("label in range")
    }

    /// All of `P_n`, or only the noncrossing `M_n`, in lexicographic order.
    pub fn enumerate(n: usize, noncrossing_only: bool) -> Result<Vec<Matching>> {
        if n == 0 || n > MAX_ENUMERATION_N {
            return Err(Error::InvalidParameter(format!(
                "matching size {n} outside 1..={MAX_ENUMERATION_N}"
            )));
        }
        let mut out = Vec::new();
        let mut free: Vec<usize> = (1..=2 * n).collect();
        let mut current = Vec::with_capacity(n);
        extend(&mut free, &mut current, noncrossing_only, &mut out, n);
        Ok(out)
    }

    /// `|P_n|` or `|M_n|` without enumerating; `None` on overflow.
    pub fn count(n: usize, noncrossing_only: bool) -> Option<u128> {
        if !noncrossing_only {
            return (1..n as u128).try_fold(1u128, |acc, k| acc.checked_mul(2 * k + 1));
        }
        // Chord from point 1 splits the rest into two independent halves.
        let mut c = vec![1u128];
        for m in 1..=n {
            let mut total = 0u128;
            for i in 0..m {
                total = total.checked_add(c[i].checked_mul(c[m - 1 - i])?)?;
            }
            c.push(total);
        }
        Some(c[n])
    }

    /// True iff no two chords interleave.
    pub fn is_noncrossing(&self) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(k, &p)| self.pairs[k + 1..].iter().all(|&q| !interleave(p, q)))
    }

    /// Rotates the drawing counterclockwise by `k` steps of `pi/n`, which
    /// moves label `i` to `i - k` (mod `2n`).
    pub fn rotate(&self, k: i64) -> Matching {
        let m = 2 * self.n as i64;
        let f = |i: usize| ((i as i64 - 1 - k).rem_euclid(m) + 1) as usize;
        Matching::new(self.n, self.pairs.iter().map(|&(a, b)| (f(a), f(b)))).expect("rotation")
    }

    /// True iff some pair is `(i, i+1)` with `i` odd.
    pub fn has_odd_adjacent_pair(&self) -> bool {
        self.pairs.iter().any(|&(a, b)| b == a + 1 && a % 2 == 1)
    }

    /// Chord intersections, ordered along each chord by the position of the
    /// other chord's endpoint inside it.
    pub fn chord_arrangement(&self) -> ChordArrangement {
        let mut crossings = Vec::new();
        for a in 0..self.pairs.len() {
            for b in a + 1..self.pairs.len() {
                if interleave(self.pairs[a], self.pairs[b]) {
                    crossings.push((a, b));
                }
            }
        }
        let mut along: Vec<Vec<usize>> = vec![Vec::new(); self.pairs.len()];
        for (x, &(a, b)) in crossings.iter().enumerate() {
            along[a].push(x);
            along[b].push(x);
        }
        for (c, list) in along.iter_mut().enumerate() {
            let (i, j) = self.pairs[c];
            list.sort_by_key(|&x| {
                let (a, b) = crossings[x];
                let other = self.pairs[if a == c { b } else { a }];
                if i < other.0 && other.0 < j {
                    other.0
                } else {
                    other.1
                }
            });
        }
        ChordArrangement { crossings, along }
    }
}

fn interleave((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b) != (a < d && d < b)
}

fn extend(
    free: &mut [usize],
    current: &mut Vec<(usize, usize)>,
    noncrossing: bool,
    out: &mut Vec<Matching>,
    n: usize,
) {
    if free.is_empty() {
        let mut pairs = current.clone();
        pairs.sort_unstable();
        out.push(Matching { n, pairs });
        return;
    }
    let a = free[0];
    for k in 1..free.len() {
        let b = free[k];
        if noncrossing {
            // Keep only chords whose inside holds an even number of free points.
            if (k - 1) % 2 == 1 {
                continue;
            }
            if current.iter().any(|&p| interleave(p, (a, b))) {
                continue;
            }
        }
        let mut rest = free.to_vec();
        rest.remove(k);
        rest.remove(0);
        current.push((a, b));
        extend(&mut rest, current, noncrossing, out, n);
        current.pop();
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.pairs {
            write!(f, "({a} {b})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching{self}")
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `(1 2)(3 4)`; commas and extra whitespace are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidMatching(format!("{why} in {s:?}"));
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let nums: Vec<usize> = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad("expected a label")))
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(bad("each pair needs two labels"));
            }
            pairs.push((nums[0], nums[1]));
            rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        }
        if pairs.is_empty() {
            return Err(bad("no pairs"));
        }
        Matching::from_pairs(&pairs)
    }
}

/// The named matchings used by the rotation theorems.
pub mod named {
    use super::Matching;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(pairs).expect("named matching")
    }

    /// `(1 2)(3 4)`, the numerator closure.
    pub fn m1() -> Matching {
        m(&[(1, 2), (3, 4)])
    }

    /// `(1 4)(2 3)`, the denominator closure.
    pub fn m2() -> Matching {
        m(&[(1, 4), (2, 3)])
    }

    /// `(1 3)(2 4)`, the crossing matching.
    pub fn m3() -> Matching {
        m(&[(1, 3), (2, 4)])
    }

    pub fn a1() -> Matching {
        m(&[(1, 2), (3, 4), (5, 6)])
    }

    pub fn a2() -> Matching {
        m(&[(1, 6), (2, 3), (4, 5)])
    }

    pub fn b1() -> Matching {
        m(&[(1, 2), (3, 6), (4, 5)])
    }

    pub fn b2() -> Matching {
        m(&[(1, 4), (2, 3), (5, 6)])
    }

    pub fn b3() -> Matching {
        m(&[(1, 6), (2, 5), (3, 4)])
    }
}

//! Seeded random tangles for property checks.
//!
//! A tangle is grown from a crossingless one by twisting adjacent endpoints,
//! then standardized by its orientation braid. Candidates with too many
//! crossings are rejected and redrawn.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::CrossingKind;
use crate::graph::{Graph, Port};
use crate::matchings::Matching;
use crate::tangle::{Direction, Tangle};

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `n`-tangle with standard orientation and at most `max_crossings`
/// crossings. With `virtual_ok`, twists are virtual half the time.
pub fn standard_tangle<R: Rng>(rng: &mut R, n: usize, max_crossings: usize, virtual_ok: bool) -> Tangle {
    let bases = Matching::enumerate(n, true).expect("small n");
    loop {
        let base = bases.choose(rng).expect("nonempty");
        let mut g = Graph::with_boundary(2 * n);
        for &(i, j) in base.pairs() {
            g.connect(Port::Boundary(i - 1), Port::Boundary(j - 1));
        }
        for (i, b) in g.boundary.iter_mut().enumerate() {
            *b = Some(if i % 2 == 0 { Direction::Out } else { Direction::In });
        }
        let twists = rng.gen_range(0..=max_crossings);
        for _ in 0..twists {
            let p = rng.gen_range(0..2 * n);
            let kind = if virtual_ok && rng.gen_bool(0.5) {
                CrossingKind::Virtual
            } else {
                CrossingKind::Classical
            };
            let k = g.twist(p, (p + 1) % (2 * n), kind);
            g.nodes[k].under = rng.gen_range(0..2);
        }
        let Ok(t) = Tangle::from_graph(g) else { continue };
        let Ok((s, _)) = t.standardize() else { continue };
        if s.crossings().len() <= max_crossings {
            return s;
        }
    }
}

/// A random partner for [`standard_tangle`]: every endpoint direction is
/// opposite, so the two glue into a link.
pub fn glue_partner<R: Rng>(rng: &mut R, n: usize, max_crossings: usize, virtual_ok: bool) -> Tangle {
    standard_tangle(rng, n, max_crossings, virtual_ok).reverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangles_are_standard_and_bounded() {
        let mut r = rng(7);
        for n in 2..=3 {
            for _ in 0..20 {
                let t = standard_tangle(&mut r, n, 5, false);
                assert!(t.is_standard());
                assert!(t.is_classical());
                assert!(t.crossings().len() <= 5);
            }
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = standard_tangle(&mut rng(3), 2, 5, true);
        let b = standard_tangle(&mut rng(3), 2, 5, true);
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn partners_glue() {
        let mut r = rng(11);
        let t = standard_tangle(&mut r, 3, 5, false);
        let u = glue_partner(&mut r, 3, 5, false);
        assert!(t.glue(&u).is_ok());
    }

    #[test]
    fn virtual_twists_appear() {
        let mut r = rng(5);
        let any_virtual = (0..30).any(|_| !standard_tangle(&mut r, 2, 5, true).is_classical());
        assert!(any_virtual);
    }
}

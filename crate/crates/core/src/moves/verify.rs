//! Built-in checks of the divisibility theorems.
//!
//! Deterministic checks rebuild the Δ and double-Δ divisors from their
//! closures; randomized ones draw seeded tangles and glue partners and test
//! the stated divisors against actual differences.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use super::{builtin_move, closure_differences, move_divisor, rotate_tangle, ClosureDifference};
use crate::bracket::auxiliary_f;
use crate::diagram::{self, LinkDiagram};
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::matchings::named::*;
use crate::matchings::Matching;
use crate::random;
use crate::tangle::{self, Tangle};

/// Divisor of the Δ-move.
pub const DELTA_DIVISOR: &str = "1 - A^4 - A^12 + A^16";
/// Divisor of the double-Δ-move.
pub const DOUBLE_DELTA_DIVISOR: &str = "1 - A^4 + A^8 - A^12 - A^24 + A^28 - A^32 + A^36";
/// Divisor of the forbidden move on virtual knots; no tangle model.
pub const FORBIDDEN_MOVE_DIVISOR: &str = "1 - A^4 - A^6 + A^10";
/// Divisor of a crossing change between knots.
pub const CROSSING_CHANGE_DIVISOR: &str = "1 - A^12";

/// Divisor of the C_n-move, `(A^-4 - 1)^n (A^-8 + A^-4 + 1)(A^-8 + 1)` for
/// `n >= 3`, in canonical form. No tangle model.
pub fn c_n_move_divisor(n: u32) -> Result<LaurentPoly> {
    if n < 3 {
        return Err(crate::error::Error::InvalidParameter(format!("C_n-move needs n >= 3, got {n}")));
    }
    let p = poly("A^-4 - 1").pow(n) * poly("A^-8 + A^-4 + 1") * poly("A^-8 + 1");
    p.normalize()
}

/// Closure values of the double-Δ tangles, in unordered pairs.
pub const DOUBLE_DELTA_PAIRS: [[&str; 2]; 2] = [
    ["1 + A^8 + A^16 + A^24", "-A^-12 + A^-8 - A^-4 + 2 + A^8 + A^12 + A^20"],
    [
        "-A^2 + A^6 - A^10 + A^14 - A^18 - A^26",
        "-A^-22 + A^-18 + A^-10 - A^2 - A^10 - A^18",
    ],
];

/// Crossing cap for random tangles and glue partners.
pub const RANDOM_CROSSINGS: usize = 5;

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: char,
    pub title: &'static str,
    pub passed: bool,
    /// A summary on success, the counterexample on failure.
    pub detail: String,
}

/// All checks of one run.
#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} trials {}", self.seed, self.trials)?;
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "({}) {mark}  {}", c.label, c.title)?;
            for line in c.detail.lines() {
                writeln!(f, "      {line}")?;
            }
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{n}/{} checks passed", self.checks.len())
    }
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("constant polynomial")
}

fn f(d: &LinkDiagram) -> Result<LaurentPoly> {
    auxiliary_f(d)
}

fn normal(p: &LaurentPoly) -> LaurentPoly {
    p.normalize().unwrap_or_default()
}

/// Divisibility where the zero divisor only divides zero.
fn certifies(divisor: &LaurentPoly, diff: &LaurentPoly) -> bool {
    divisor.divides(diff)
}

fn counterexample(what: &str, t: &Tangle, partner: Option<&Tangle>, extra: String) -> String {
    let mut s = format!("{what}\n{extra}\ntangle:\n{}", t.render());
    if let Some(u) = partner {
        s.push_str(&format!("partner:\n{}", u.render()));
    }
    s
}

/// (a) The Δ divisor equals `f(unknot) - f(left trefoil)`, the two
/// closures of Δ by `(1 2)(3 4)(5 6)` and `(1 6)(2 3)(4 5)`.
pub fn check_delta() -> Result<Check> {
    let mv = builtin_move("delta", None)?;
    let divisor = move_divisor(&mv)?;
    let unknot = f(&diagram::builtin("unknot", None)?)?;
    let trefoil = f(&diagram::builtin("trefoil-left", None)?)?;
    let witness = normal(&(&unknot - &trefoil));
    let d = tangle::delta()?;
    let closures_ok = f(&d.closure(&a1())?)? == unknot && f(&d.closure(&a2())?)? == trefoil;
    let passed = divisor == witness && witness == poly(DELTA_DIVISOR) && closures_ok;
    Ok(Check {
        label: 'a',
        title: "delta divisor equals f(unknot) - f(left trefoil)",
        passed,
        detail: format!(
            "divisor {divisor}\nwitness {witness}\nclosures unknot/trefoil: {}",
            if closures_ok { "yes" } else { "no" }
        ),
    })
}

/// Summary of the double-Δ closures.
#[derive(Clone, Debug)]
pub struct DoubleDeltaCensus {
    pub total: usize,
    /// Matchings without an arc `(i, i + 1)`, `i` odd.
    pub candidates: usize,
    /// Matchings with such an arc whose closures differ.
    pub trivial_violations: Vec<Matching>,
    /// One candidate per orbit of rotation by four endpoints.
    pub representatives: Vec<ClosureDifference>,
    /// Candidates whose difference disagrees with their orbit's.
    pub orbit_violations: Vec<Matching>,
    pub gcd: LaurentPoly,
}

impl DoubleDeltaCensus {
    pub fn zero_representatives(&self) -> usize {
        self.representatives.iter().filter(|r| r.difference().is_zero()).count()
    }

    /// Unordered closure-value pairs of the representatives that differ.
    pub fn nonzero_pairs(&self) -> Vec<BTreeSet<String>> {
        self.representatives
            .iter()
            .filter(|r| !r.difference().is_zero())
            .map(|r| [r.f1.to_string(), r.f2.to_string()].into_iter().collect())
            .collect()
    }
}

pub fn double_delta_census() -> Result<DoubleDeltaCensus> {
    let mv = builtin_move("double-delta", None)?;
    let rows = closure_differences(&mv)?;
    let mut trivial_violations = Vec::new();
    let mut candidates = Vec::new();
    for r in &rows {
        if r.matching.has_odd_adjacent_pair() {
            if !r.difference().is_zero() {
                trivial_violations.push(r.matching.clone());
            }
        } else {
            candidates.push(r.clone());
        }
    }
    let find = |m: &Matching| candidates.iter().find(|r| &r.matching == m);
    let mut seen = BTreeSet::new();
    let mut representatives = Vec::new();
    let mut orbit_violations = Vec::new();
    for r in &candidates {
        if seen.contains(&r.matching) {
            continue;
        }
        let mut m = r.matching.clone();
        loop {
            seen.insert(m.clone());
            match find(&m) {
                Some(o) if o.difference() == r.difference() => {}
                _ => orbit_violations.push(m.clone()),
            }
            m = m.rotate(4);
            if m == r.matching {
                break;
            }
        }
        representatives.push(r.clone());
    }
    let diffs: Vec<_> = rows.iter().map(|r| r.difference()).collect();
    Ok(DoubleDeltaCensus {
        total: rows.len(),
        candidates: candidates.len(),
        trivial_violations,
        representatives,
        orbit_violations,
        gcd: LaurentPoly::gcd(&diffs),
    })
}

/// (b) The double-Δ closures: only matchings without an odd adjacent arc
/// can differ, seven orbits remain, and their values give the divisor.
pub fn check_double_delta() -> Result<Check> {
    let c = double_delta_census()?;
    let expected: Vec<BTreeSet<String>> = DOUBLE_DELTA_PAIRS
        .iter()
        .map(|p| p.iter().map(|s| poly(s).to_string()).collect())
        .collect();
    let pairs = c.nonzero_pairs();
    let pairs_ok = expected.iter().all(|e| pairs.iter().filter(|p| *p == e).count() == 2) && pairs.len() == 4;
    let passed = c.total == 132
        && c.candidates == 15
        && c.trivial_violations.is_empty()
        && c.orbit_violations.is_empty()
        && c.representatives.len() == 7
        && c.zero_representatives() == 3
        && pairs_ok
        && c.gcd == poly(DOUBLE_DELTA_DIVISOR);
    let mut detail = format!(
        "closures {} candidates {} orbits {} zero {}\ngcd {}",
        c.total,
        c.candidates,
        c.representatives.len(),
        c.zero_representatives(),
        c.gcd
    );
    for m in c.trivial_violations.iter().chain(&c.orbit_violations) {
        detail.push_str(&format!("\nunexpected difference at {m}"));
    }
    if !pairs_ok {
        for r in &c.representatives {
            detail.push_str(&format!("\n{}: {} | {}", r.matching, r.f1, r.f2));
        }
    }
    Ok(Check {
        label: 'b',
        title: "double-delta closures and divisor",
        passed,
        detail,
    })
}

/// A rotational move's divisor against the one predicted from `T`'s own
/// closures, plus the predicted divisor dividing a glued difference.
struct RotationCase {
    label: char,
    title: &'static str,
    move_name: &'static str,
    n: usize,
    k: i64,
    predicted: fn(&Tangle) -> Result<LaurentPoly>,
}

fn closure_f(t: &Tangle, m: &Matching) -> Result<LaurentPoly> {
    f(&t.closure(m)?)
}

fn predict_rho3(t: &Tangle) -> Result<LaurentPoly> {
    Ok(closure_f(t, &a1())? - closure_f(t, &a2())?)
}

fn predict_third(t: &Tangle) -> Result<LaurentPoly> {
    let (b1, b2, b3) = (closure_f(t, &b1())?, closure_f(t, &b2())?, closure_f(t, &b3())?);
    Ok(LaurentPoly::gcd2(&(&b2 - &b1), &(&b3 - &b2)))
}

fn predict_semi(t: &Tangle) -> Result<LaurentPoly> {
    Ok(closure_f(t, &m1())? - closure_f(t, &m2())?)
}

fn rotation_check<R: Rng>(case: &RotationCase, rng: &mut R, trials: usize) -> Result<Check> {
    let mut nonzero = 0;
    for _ in 0..trials {
        let t = random::standard_tangle(rng, case.n, RANDOM_CROSSINGS, false);
        let u = random::glue_partner(rng, case.n, RANDOM_CROSSINGS, false);
        let predicted = (case.predicted)(&t)?;
        let mv = builtin_move(case.move_name, Some(&t))?;
        let divisor = move_divisor(&mv)?;
        if divisor != normal(&predicted) {
            return Ok(Check {
                label: case.label,
                title: case.title,
                passed: false,
                detail: counterexample(
                    "divisor differs from prediction",
                    &t,
                    None,
                    format!("divisor {divisor}\npredicted {predicted}"),
                ),
            });
        }
        let rotated = rotate_tangle(&t, case.k)?;
        let diff = f(&rotated.glue(&u)?)? - f(&t.glue(&u)?)?;
        if !certifies(&predicted, &diff) {
            return Ok(Check {
                label: case.label,
                title: case.title,
                passed: false,
                detail: counterexample(
                    "predicted divisor misses a glued difference",
                    &t,
                    Some(&u),
                    format!("predicted {predicted}\ndifference {diff}"),
                ),
            });
        }
        nonzero += usize::from(!predicted.is_zero());
    }
    Ok(Check {
        label: case.label,
        title: case.title,
        passed: true,
        detail: format!("{trials} tangles, {nonzero} with nonzero divisor"),
    })
}

/// (c) `T -> rho^3(T)` on 3-tangles: divisor `f(T(m_a1)) - f(T(m_a2))`.
pub fn check_rho3<R: Rng>(rng: &mut R, trials: usize) -> Result<Check> {
    rotation_check(
        &RotationCase {
            label: 'c',
            title: "3-tangle half turn: divisor f(T(a1)) - f(T(a2))",
            move_name: "rho3",
            n: 3,
            k: 3,
            predicted: predict_rho3,
        },
        rng,
        trials,
    )
}

/// (d) `T -> rho^2(T)` on 3-tangles: gcd of two `b`-closure differences.
pub fn check_rho2_third<R: Rng>(rng: &mut R, trials: usize) -> Result<Check> {
    rotation_check(
        &RotationCase {
            label: 'd',
            title: "3-tangle third turn: gcd of b-closure differences",
            move_name: "rho2-third",
            n: 3,
            k: 2,
            predicted: predict_third,
        },
        rng,
        trials,
    )
}

/// (e) Semi-mutation `T -> rho^1(T)` on 2-tangles.
pub fn check_semi_mutation<R: Rng>(rng: &mut R, trials: usize) -> Result<Check> {
    rotation_check(
        &RotationCase {
            label: 'e',
            title: "semi-mutation: divisor f(T(m1)) - f(T(m2))",
            move_name: "semi-mutation",
            n: 2,
            k: 1,
            predicted: predict_semi,
        },
        rng,
        trials,
    )
}

/// (f) Virtual 2-tangles: `f(T(m1)) - f(T(m2))` divides
/// `f(T ∪ T') - f(rho^1(T) ∪ T')`.
pub fn check_virtual_rotation<R: Rng>(rng: &mut R, trials: usize) -> Result<Check> {
    let mut virtual_seen = 0;
    for _ in 0..trials {
        let t = random::standard_tangle(rng, 2, RANDOM_CROSSINGS, true);
        let u = random::glue_partner(rng, 2, RANDOM_CROSSINGS, true);
        let predicted = predict_semi(&t)?;
        let rotated = rotate_tangle(&t, 1)?;
        let diff = f(&t.glue(&u)?)? - f(&rotated.glue(&u)?)?;
        if !certifies(&predicted, &diff) {
            return Ok(Check {
                label: 'f',
                title: "virtual 2-tangle rotation",
                passed: false,
                detail: counterexample(
                    "predicted divisor misses a glued difference",
                    &t,
                    Some(&u),
                    format!("predicted {predicted}\ndifference {diff}"),
                ),
            });
        }
        virtual_seen += usize::from(!t.is_classical() || !u.is_classical());
    }
    Ok(Check {
        label: 'f',
        title: "virtual 2-tangle rotation",
        passed: true,
        detail: format!("{trials} pairs, {virtual_seen} with virtual crossings"),
    })
}

/// (g) Every built-in move's divisor divides `f(T2 ∪ T') - f(T1 ∪ T')` for
/// random classical partners `T'`; mutation differences vanish outright.
pub fn check_end_to_end<R: Rng>(rng: &mut R, trials: usize) -> Result<Check> {
    let mut fixed = vec![builtin_move("delta", None)?, builtin_move("double-delta", None)?];
    for (name, n) in [("semi-mutation", 2), ("mutation", 2), ("rho3", 3), ("rho2-third", 3)] {
        let t = random::standard_tangle(rng, n, RANDOM_CROSSINGS, false);
        fixed.push(builtin_move(name, Some(&t))?);
    }
    let mut glued = 0;
    for mv in &fixed {
        let divisor = move_divisor(mv)?;
        for _ in 0..trials {
            let u = random::glue_partner(rng, mv.t1.n(), RANDOM_CROSSINGS, false);
            let diff = f(&mv.t2.glue(&u)?)? - f(&mv.t1.glue(&u)?)?;
            if !certifies(&divisor, &diff) {
                return Ok(Check {
                    label: 'g',
                    title: "move divisors divide glued differences",
                    passed: false,
                    detail: counterexample(
                        &format!("{} divisor misses a glued difference", mv.name),
                        &mv.t1,
                        Some(&u),
                        format!("divisor {divisor}\ndifference {diff}"),
                    ),
                });
            }
            glued += 1;
        }
    }
    Ok(Check {
        label: 'g',
        title: "move divisors divide glued differences",
        passed: true,
        detail: format!("{} moves, {glued} glued pairs", fixed.len()),
    })
}

/// Runs checks (a) to (g); randomized ones draw `trials` cases from `seed`.
pub fn verify_theorems(seed: u64, trials: usize) -> Result<Report> {
    let mut rng = random::rng(seed);
    let checks = vec![
        check_delta()?,
        check_double_delta()?,
        check_rho3(&mut rng, trials)?,
        check_rho2_third(&mut rng, trials)?,
        check_semi_mutation(&mut rng, trials)?,
        check_virtual_rotation(&mut rng, trials)?,
        check_end_to_end(&mut rng, trials)?,
    ];
    Ok(Report { seed, trials, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_check_passes() {
        let c = check_delta().unwrap();
        assert!(c.passed, "{}", c.detail);
    }

    #[test]
    fn census_counts() {
        let c = double_delta_census().unwrap();
        assert_eq!((c.total, c.candidates, c.representatives.len()), (132, 15, 7));
    }

    #[test]
    fn small_run_passes() {
        let r = verify_theorems(1, 3).unwrap();
        assert_eq!(r.checks.len(), 7);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn stored_divisors_are_canonical() {
        for s in [DELTA_DIVISOR, DOUBLE_DELTA_DIVISOR, FORBIDDEN_MOVE_DIVISOR, CROSSING_CHANGE_DIVISOR] {
            assert!(poly(s).is_normalized());
        }
        let c3 = c_n_move_divisor(3).unwrap();
        assert_eq!(c3.max_exp(), Some(28));
        assert!(poly("1 - A^4").divides(&c3));
        assert!(c_n_move_divisor(2).is_err());
    }
}

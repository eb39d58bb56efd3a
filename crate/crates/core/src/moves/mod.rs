//! Oriented local moves `T1 -> T2`, their divisors, and divisibility
//! screening of link pairs.
//!
//! The divisor of a move is the gcd of `f(T2(m)) - f(T1(m))` over the
//! closures `m` in its domain. It divides `f(L2) - f(L1)` whenever `L2` is
//! obtained from `L1` by one application of the move, so a failed division
//! certifies that no sequence of such moves connects two links.

use std::fmt;

use rayon::prelude::*;

use crate::bracket::auxiliary_f;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matchings::Matching;
use crate::tangle::{self, Tangle};

pub mod verify;

/// Which closures a divisor ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureDomain {
    /// Plain closures over noncrossing matchings.
    Noncrossing,
    /// Modified closures over all perfect matchings.
    All,
}

impl fmt::Display for ClosureDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureDomain::Noncrossing => "noncrossing",
            ClosureDomain::All => "all",
        })
    }
}

/// A local move: two tangles with identical endpoint orientations.
#[derive(Clone, Debug)]
pub struct MoveSpec {
    pub name: String,
    pub t1: Tangle,
    pub t2: Tangle,
    pub domain: ClosureDomain,
}

impl MoveSpec {
    /// Validates the pair and picks the noncrossing domain when both
    /// tangles are classical.
    pub fn new(name: impl Into<String>, t1: Tangle, t2: Tangle) -> Result<Self> {
        let domain = if t1.is_classical() && t2.is_classical() {
            ClosureDomain::Noncrossing
        } else {
            ClosureDomain::All
        };
        Self::with_domain(name, t1, t2, domain)
    }

    pub fn with_domain(name: impl Into<String>, t1: Tangle, t2: Tangle, domain: ClosureDomain) -> Result<Self> {
        if t1.n() != t2.n() {
            return Err(Error::SizeMismatch(format!(
                "move between a {}-tangle and a {}-tangle",
                t1.n(),
                t2.n()
            )));
        }
        let (w1, w2) = (t1.orientation_word(), t2.orientation_word());
        if w1 != w2 {
            return Err(Error::Orientation(format!("move endpoints differ: {w1} vs {w2}")));
        }
        Ok(Self {
            name: name.into(),
            t1,
            t2,
            domain,
        })
    }

    /// Two tangle blocks separated by a line `---`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let cut = lines
            .iter()
            .position(|l| l.trim() == "---")
            .ok_or_else(|| Error::parse(lines.len().max(1), "missing `---` between the two tangles"))?;
        let first = lines[..cut].join("\n");
        let second = lines[cut + 1..].join("\n");
        let t1 = Tangle::parse(&first)?;
        let t2 = Tangle::parse(&second).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line: line + cut + 1,
                message,
            },
            e => e,
        })?;
        Self::new("file", t1, t2)
    }

    pub fn render(&self) -> String {
        format!("{}---\n{}", self.t1.render(), self.t2.render())
    }

    /// Whether the move keeps the number of link components: both tangles
    /// join their endpoints alike and carry as many closed components.
    pub fn preserves_components(&self) -> bool {
        self.t1.connectivity() == self.t2.connectivity()
            && self.t1.closed_components() == self.t2.closed_components()
    }
}

/// `rho^k(T)`: endpoint `i` moves to `i + k`; for odd `k` every strand is
/// reversed too, so standard orientation is kept.
pub fn rotate_tangle(t: &Tangle, k: i64) -> Result<Tangle> {
    if !t.is_standard() {
        return Err(Error::Orientation(format!(
            "rotation needs standard orientation, got {}",
            t.orientation_word()
        )));
    }
    let r = t.relabel(k);
    Ok(if k.rem_euclid(2) == 1 { r.reverse() } else { r })
}

/// `f` of both closures of a move by one matching.
#[derive(Clone, Debug)]
pub struct ClosureDifference {
    pub matching: Matching,
    pub f1: LaurentPoly,
    pub f2: LaurentPoly,
}

impl ClosureDifference {
    /// `f(T2(m)) - f(T1(m))`.
    pub fn difference(&self) -> LaurentPoly {
        &self.f2 - &self.f1
    }
}

/// The move with both tangles standardized by the orientation braid of `t1`.
fn standardized(mv: &MoveSpec) -> Result<(Tangle, Tangle)> {
    if mv.t1.is_standard() {
        return Ok((mv.t1.clone(), mv.t2.clone()));
    }
    let b = mv.t1.orientation_word().orientation_braid()?;
    Ok((mv.t1.apply_braid(&b)?, mv.t2.apply_braid(&b)?))
}

/// Closure pairs over the move's domain, in matching order. Matchings that
/// either tangle cannot close with a consistent orientation are left out.
pub fn closure_differences(mv: &MoveSpec) -> Result<Vec<ClosureDifference>> {
    let (s1, s2) = standardized(mv)?;
    let n = s1.n();
    let ms = Matching::enumerate(n, mv.domain == ClosureDomain::Noncrossing)?;
    let close = |t: &Tangle, m: &Matching| match mv.domain {
        ClosureDomain::Noncrossing => t.closure(m),
        ClosureDomain::All => t.modified_closure(m),
    };
    let rows: Vec<Option<ClosureDifference>> = ms
        .into_par_iter()
        .map(|m| {
            let (c1, c2) = match (close(&s1, &m), close(&s2, &m)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::Orientation(_) | Error::IncompatibleMatching(_)), _)
                | (_, Err(Error::Orientation(_) | Error::IncompatibleMatching(_))) => return Ok(None),
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            Ok(Some(ClosureDifference {
                f1: auxiliary_f(&c1)?,
                f2: auxiliary_f(&c2)?,
                matching: m,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// gcd of the closure differences, or zero when all of them vanish.
pub fn move_divisor(mv: &MoveSpec) -> Result<LaurentPoly> {
    let diffs: Vec<LaurentPoly> = closure_differences(mv)?.iter().map(|d| d.difference()).collect();
    Ok(LaurentPoly::gcd(&diffs))
}

/// Why two links cannot be related by a move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The move keeps the component count but the links differ in it.
    ComponentCount { left: usize, right: usize },
    /// The divisor does not divide `f(L1) - f(L2)`.
    Divisibility,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Possible,
    Impossible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Possible => "possible",
            Verdict::Impossible => "impossible",
        })
    }
}

/// Outcome of [`check_divisibility`] with the evidence behind it.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub obstruction: Option<Obstruction>,
    /// `f(L1) - f(L2)`; absent when components already decide.
    pub difference: Option<LaurentPoly>,
    pub divisor: Option<LaurentPoly>,
    /// `difference / divisor` when the division is exact.
    pub quotient: Option<LaurentPoly>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.verdict)?;
        if let Some(Obstruction::ComponentCount { left, right }) = &self.obstruction {
            writeln!(f, "components: {left} vs {right}")?;
        }
        if let Some(d) = &self.difference {
            writeln!(f, "difference: {d}")?;
        }
        if let Some(d) = &self.divisor {
            writeln!(f, "divisor: {d}")?;
        }
        if let Some(q) = &self.quotient {
            writeln!(f, "quotient: {q}")?;
        }
        Ok(())
    }
}

/// Screens whether `l1` and `l2` could be related by a sequence of `mv`.
/// "Impossible" is a proof; "possible" only means the screen is passed.
pub fn check_divisibility(l1: &LinkDiagram, l2: &LinkDiagram, mv: &MoveSpec) -> Result<Certificate> {
    let (c1, c2) = (l1.components(), l2.components());
    if mv.preserves_components() && c1 != c2 {
        return Ok(Certificate {
            verdict: Verdict::Impossible,
            obstruction: Some(Obstruction::ComponentCount { left: c1, right: c2 }),
            difference: None,
            divisor: None,
            quotient: None,
        });
    }
    let difference = auxiliary_f(l1)? - auxiliary_f(l2)?;
    let divisor = move_divisor(mv)?;
    let quotient = if divisor.is_zero() {
        difference.is_zero().then(LaurentPoly::zero)
    } else {
        difference.div_exact(&divisor).ok()
    };
    let verdict = if quotient.is_some() {
        Verdict::Possible
    } else {
        Verdict::Impossible
    };
    Ok(Certificate {
        verdict,
        obstruction: (verdict == Verdict::Impossible).then_some(Obstruction::Divisibility),
        difference: Some(difference),
        divisor: Some(divisor),
        quotient,
    })
}

/// Built-in moves, with whether they take a tangle argument.
pub const MOVE_NAMES: &[(&str, bool)] = &[
    ("delta", false),
    ("double-delta", false),
    ("semi-mutation", true),
    ("mutation", true),
    ("rho3", true),
    ("rho2-third", true),
    ("virtual-rho1", true),
];

/// Splits `name(arg)` or `name:arg` into its parts.
pub fn split_move_name(spec: &str) -> (&str, Option<&str>) {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        if let Some(inner) = spec[open + 1..].strip_suffix(')') {
            return (&spec[..open], Some(inner.trim()));
        }
    }
    match spec.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (spec, None),
    }
}

/// Whether `name` is a built-in move.
pub fn is_builtin_move(name: &str) -> bool {
    MOVE_NAMES.iter().any(|(n, _)| *n == name)
}

fn rotation(name: &str, t: &Tangle, n: usize, k: i64) -> Result<(Tangle, Tangle)> {
    if t.n() != n {
        return Err(Error::SizeMismatch(format!("{name} acts on {n}-tangles, got a {}-tangle", t.n())));
    }
    Ok((t.clone(), rotate_tangle(t, k)?))
}

/// The named move. Rotational moves take the tangle `T` and give
/// `(T, rho^k(T))`.
pub fn builtin_move(name: &str, t: Option<&Tangle>) -> Result<MoveSpec> {
    let takes = MOVE_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, p)| p)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    let t = match (takes, t) {
        (false, Some(_)) => return Err(Error::InvalidParameter(format!("{name} takes no tangle"))),
        (true, None) => return Err(Error::InvalidParameter(format!("{name} needs a tangle, as in {name}(FILE)"))),
        (_, t) => t,
    };
    let (t1, t2) = match name {
        "delta" => {
            let d = tangle::delta()?;
            let r = rotate_tangle(&d, 3)?;
            (d, r)
        }
        "double-delta" => {
            let d = tangle::double_delta();
            let r = rotate_tangle(&d, 6)?;
            (d, r)
        }
        "semi-mutation" => rotation(name, t.expect("checked"), 2, 1)?,
        "mutation" => rotation(name, t.expect("checked"), 2, 2)?,
        "rho3" => rotation(name, t.expect("checked"), 3, 3)?,
        "rho2-third" => rotation(name, t.expect("checked"), 3, 2)?,
        "virtual-rho1" => {
            // Plain closures over M_2 suffice here, classical or not.
            let (a, b) = rotation(name, t.expect("checked"), 2, 1)?;
            return MoveSpec::with_domain(name, a, b, ClosureDomain::Noncrossing);
        }
        _ => unreachable!("listed move"),
    };
    MoveSpec::new(name, t1, t2)
}

fn a_pow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(1, e)
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed form for `f` of the (2, k)-torus link:
/// `(-1)^(k+1) A^(-2(k-1)) (1 - A^-12 + (-1)^k (A^(-4-4k) - A^(-8-4k))) / (1 - A^-8)`.
pub fn torus2_f(k: i64) -> Result<LaurentPoly> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("torus2_f needs k >= 1, got {k}")));
    }
    let inner = LaurentPoly::one() - a_pow(-12)
        + (a_pow(-4 - 4 * k) - a_pow(-8 - 4 * k)).scale(&sign(k).into());
    let num = LaurentPoly::monomial(-sign(k), -2 * (k - 1)) * inner;
    num.div_exact(&(LaurentPoly::one() - a_pow(-8)))
}

/// Closed form for `f` of the twist knot with `k` half-twists, as the
/// two-branch quotient by `1 - A^2`:
/// odd `k`: `1 + A^-4 + (-1)^k A^-2k - (-1)^(k+1) A^(-2k-6)`;
/// even `k`: `-A^6 - A^2 - (-1)^k A^(6-2k) + (-1)^k A^-2k`.
pub fn twist_f(k: i64) -> Result<LaurentPoly> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("twist_f needs k >= 1, got {k}")));
    }
    let s = sign(k);
    let num = if k % 2 == 1 {
        LaurentPoly::one() + a_pow(-4) + LaurentPoly::monomial(s, -2 * k) - LaurentPoly::monomial(-s, -2 * k - 6)
    } else {
        -a_pow(6) - a_pow(2) - LaurentPoly::monomial(s, 6 - 2 * k) + LaurentPoly::monomial(s, -2 * k)
    };
    num.div_exact(&(LaurentPoly::one() - a_pow(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::kauffman_bracket;
    use crate::diagram::{builtin, torus2};
    use crate::matchings::named::*;
    use crate::tangle::half_twists;

    fn f(d: &LinkDiagram) -> LaurentPoly {
        auxiliary_f(d).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn rotation_rules() {
        let d = tangle::delta().unwrap();
        assert!(rotate_tangle(&d, 3).unwrap().is_standard());
        assert_eq!(rotate_tangle(&d, 6).unwrap().render(), d.render());
        let bad = Tangle::parse("TANGLE 2\nE 1 1 out\nE 2 2 out\nE 3 2 in\nE 4 1 in\n").unwrap();
        assert!(matches!(rotate_tangle(&bad, 1), Err(Error::Orientation(_))));
    }

    #[test]
    fn rotation_permutes_closures() {
        let t = half_twists(4).unwrap();
        let r = rotate_tangle(&t, 1).unwrap();
        for m in [m1(), m2()] {
            assert_eq!(f(&r.closure(&m).unwrap()), f(&t.closure(&m.rotate(1)).unwrap()));
        }
    }

    #[test]
    fn delta_divisor() {
        let mv = builtin_move("delta", None).unwrap();
        assert_eq!(mv.domain, ClosureDomain::Noncrossing);
        assert_eq!(move_divisor(&mv).unwrap(), p("1 - A^4 - A^12 + A^16"));
    }

    #[test]
    fn mutation_divisor_vanishes() {
        let t = half_twists(4).unwrap();
        let mv = builtin_move("mutation", Some(&t)).unwrap();
        assert!(move_divisor(&mv).unwrap().is_zero());
    }

    #[test]
    fn semi_mutation_of_half_twists() {
        for k in [2usize, 4, 6] {
            let t = half_twists(k).unwrap();
            let mv = builtin_move("semi-mutation", Some(&t)).unwrap();
            // T(m2) is a (2, k) torus link with antiparallel strands; positive
            // antiparallel twists are negative ones unoriented.
            let link = t.closure(&m2()).unwrap();
            assert_eq!(kauffman_bracket(&link).unwrap(), kauffman_bracket(&torus2(k).mirror()).unwrap());
            let expected = (LaurentPoly::one() - f(&link)).normalize().unwrap();
            assert_eq!(move_divisor(&mv).unwrap(), expected);
        }
    }

    #[test]
    fn move_names() {
        assert_eq!(split_move_name("rho3(t.tangle)"), ("rho3", Some("t.tangle")));
        assert_eq!(split_move_name("mutation:half-twists:2"), ("mutation", Some("half-twists:2")));
        assert_eq!(split_move_name("delta"), ("delta", None));
        assert!(matches!(builtin_move("nope", None), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin_move("mutation", None), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin_move("delta", Some(&half_twists(2).unwrap())), Err(Error::InvalidParameter(_))));
        let t = half_twists(2).unwrap();
        assert!(matches!(builtin_move("rho3", Some(&t)), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn move_file_round_trip() {
        let mv = builtin_move("delta", None).unwrap();
        let back = MoveSpec::parse(&mv.render()).unwrap();
        assert_eq!(back.t1.render(), mv.t1.render());
        assert_eq!(back.t2.render(), mv.t2.render());
        assert!(matches!(MoveSpec::parse("TANGLE 1\n"), Err(Error::Parse { .. })));
        let err = MoveSpec::parse("TANGLE 1\nE 1 1 out\nE 2 1 in\n---\nTANGLE 1\nE 1 1 out\nbogus\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 7, .. }), "{err}");
    }

    #[test]
    fn mismatched_orientations_rejected() {
        let t = half_twists(2).unwrap();
        assert!(matches!(MoveSpec::new("x", t.clone(), t.reverse()), Err(Error::Orientation(_))));
        assert!(matches!(
            MoveSpec::new("x", t, tangle::delta().unwrap()),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn screening() {
        let mv = builtin_move("delta", None).unwrap();
        let unknot = builtin("unknot", None).unwrap();
        let trefoil = builtin("trefoil-left", None).unwrap();
        let c = check_divisibility(&unknot, &trefoil, &mv).unwrap();
        assert_eq!(c.verdict, Verdict::Possible);
        assert_eq!(c.quotient.as_ref().map(|q| q.len()), Some(1));
        let hopf = builtin("hopf", None).unwrap();
        let c = check_divisibility(&unknot, &hopf, &mv).unwrap();
        assert_eq!(c.obstruction, Some(Obstruction::ComponentCount { left: 1, right: 2 }));
        let fig8 = builtin("figure8", None).unwrap();
        let c = check_divisibility(&unknot, &fig8, &mv).unwrap();
        assert_eq!(c.verdict, Verdict::Possible);
    }

    #[test]
    fn zero_divisor_screen() {
        let t = half_twists(2).unwrap();
        let mv = builtin_move("mutation", Some(&t)).unwrap();
        let unknot = builtin("unknot", None).unwrap();
        let c = check_divisibility(&unknot, &builtin("trefoil-left", None).unwrap(), &mv).unwrap();
        assert_eq!(c.verdict, Verdict::Impossible);
        let c = check_divisibility(&unknot, &unknot, &mv).unwrap();
        assert_eq!(c.verdict, Verdict::Possible);
    }

    #[test]
    fn torus_closed_form_small() {
        assert_eq!(torus2_f(1).unwrap(), LaurentPoly::one());
        assert_eq!(torus2_f(2).unwrap(), p("-A^-10 - A^-2"));
        assert!(torus2_f(0).is_err());
    }

    #[test]
    fn twist_closed_form_branches() {
        assert!(twist_f(1).is_ok());
        assert!(matches!(twist_f(2), Err(Error::InexactDivision(_))));
        assert!(twist_f(0).is_err());
    }
}

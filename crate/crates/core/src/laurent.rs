//! Exact Laurent polynomials in one variable with big-integer coefficients.
//!
//! Units of `Z[A, A^-1]` are `±A^k`, so divisibility and gcd are computed on
//! the canonical associate: minimal exponent zero and a positive lowest
//! coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial `sum c_e A^e` with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `A`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * A^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    /// The loop value `d = -A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `A = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_var(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Rewrites an auxiliary polynomial in `q = t^(1/4)` using `A = q^-1`.
    pub fn to_jones(&self) -> Self {
        self.invert_var()
    }

    /// The canonical associate: minimal exponent 0, positive lowest coefficient.
    pub fn normalize(&self) -> Result<Self> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let p = self.shift(-lo);
        if self.terms[&lo].is_negative() {
            Ok(-p)
        } else {
            Ok(p)
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min_exp() == Some(0) && self.terms[&0].is_positive()
    }

    /// True iff `p = self * q` for some Laurent polynomial `q` with integer
    /// coefficients. The zero polynomial is divisible by everything, and
    /// only the zero polynomial is divisible by zero.
    pub fn divides(&self, p: &LaurentPoly) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        p.div_exact(self).is_ok()
    }

    /// The exact quotient `self / d` in `Z[A, A^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<Self> {
        let dlo = d.min_exp().ok_or(Error::ZeroPolynomial)?;
        let Some(plo) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let num = Dense::from_laurent(self);
        let den = Dense::from_laurent(d);
        let q = num
            .div_exact(&den)
            .ok_or_else(|| Error::InexactDivision(format!("({self}) / ({d})")))?;
        Ok(q.to_laurent(plo - dlo))
    }

    /// Canonical gcd of a family; zero when every member is zero.
    ///
    /// The integer content is kept: the result is the gcd of the contents
    /// times the gcd of the primitive parts.
    pub fn gcd<'a, I>(ps: I) -> Self
    where
        I: IntoIterator<Item = &'a LaurentPoly>,
    {
        let mut acc: Option<(BigInt, Dense)> = None;
        for p in ps {
            if p.is_zero() {
                continue;
            }
            let d = Dense::from_laurent(p);
            let c = d.content();
            let pp = d.div_scalar(&c);
            acc = Some(match acc {
                None => (c, pp),
                Some((ac, ap)) => (ac.gcd(&c), ap.gcd_primitive(&pp)),
            });
        }
        match acc {
            None => Self::zero(),
            Some((c, pp)) => {
                let g = pp.scale(&c).to_laurent(0);
                g.normalize().expect("nonzero gcd")
            }
        }
    }

    pub fn gcd2(a: &LaurentPoly, b: &LaurentPoly) -> Self {
        Self::gcd([a, b])
    }

    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(var);
            if *e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Parses the text form with the given variable name.
    pub fn parse_in(text: &str, var: char) -> Result<Self> {
        Parser::new(text, var).parse()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("A"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, 'A')
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Dense ordinary polynomial, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense(Vec<BigInt>);

impl Dense {
    fn from_laurent(p: &LaurentPoly) -> Self {
        let lo = p.min_exp().unwrap_or(0);
        let hi = p.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in p.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        let mut d = Dense(v);
        d.trim();
        d
    }

    fn to_laurent(&self, offset: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + offset, c.clone())),
        )
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len() - 1
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero")
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale(&self, c: &BigInt) -> Dense {
        let mut d = Dense(self.0.iter().map(|x| x * c).collect());
        d.trim();
        d
    }

    fn div_scalar(&self, c: &BigInt) -> Dense {
        Dense(self.0.iter().map(|x| x / c).collect())
    }

    fn primitive(&self) -> Dense {
        let c = self.content();
        let mut d = self.div_scalar(&c);
        if d.lead().is_negative() {
            d = d.scale(&-BigInt::one());
        }
        d
    }

    /// `lc(b)^j * self - q * b` reduced below `deg b`.
    fn pseudo_rem(&self, b: &Dense) -> Dense {
        let mut r = self.clone();
        let lb = b.lead().clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let shift = r.deg() - b.deg();
            let lr = r.lead().clone();
            for c in r.0.iter_mut() {
                *c *= &lb;
            }
            for (i, c) in b.0.iter().enumerate() {
                r.0[i + shift] -= &lr * c;
            }
            r.trim();
        }
        r
    }

    /// Gcd of two primitive polynomials by the primitive remainder sequence.
    fn gcd_primitive(&self, other: &Dense) -> Dense {
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive();
            }
            a = b;
            b = r.primitive();
        }
    }

    fn div_exact(&self, d: &Dense) -> Option<Dense> {
        if self.is_zero() {
            return Some(Dense(Vec::new()));
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.deg() - d.deg() + 1];
        let ld = d.lead();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let (t, rem) = r.lead().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.0.iter().enumerate() {
                r.0[i + shift] -= &t * c;
            }
            q[shift] = t;
            r.trim();
        }
        if r.is_zero() {
            let mut q = Dense(q);
            q.trim();
            Some(q)
        } else {
            None
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    var: char,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, var: char) -> Self {
        Self {
            chars: text.char_indices().peekable(),
            text,
            var,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::PolynomialSyntax(format!("{what} in {:?}", self.text))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|(_, c)| *c)
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let mut s = String::new();
        while let Some((_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(*c);
                self.chars.next();
            } else {
                break;
            }
        }
        if s.is_empty() {
            None
        } else {
            s.parse().ok()
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some('-') => {
                self.chars.next();
                true
            }
            Some('+') => {
                self.chars.next();
                false
            }
            _ => false,
        };
        let v = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some('+') => {
                    self.chars.next();
                    1
                }
                Some('-') => {
                    self.chars.next();
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(self.err(&format!("unexpected {c:?}"))),
            };
            first = false;
            let coeff = self.digits();
            if coeff.is_some() && self.peek() == Some('*') {
                self.chars.next();
            }
            let mut exp = 0;
            if self.peek() == Some(self.var) {
                self.chars.next();
                exp = 1;
                if self.peek() == Some('^') {
                    self.chars.next();
                    exp = self.signed_int()?;
                }
            } else if coeff.is_none() {
                return Err(self.err("expected coefficient or variable"));
            }
            let c = coeff.unwrap_or_else(BigInt::one) * sign;
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse_and_cancellation() {
        assert!((&p("A^4") + &p("-A^4")).is_zero());
        assert_eq!(&p("-A^2 - A^-2") + &p("A^2"), p("-A^-2"));
        assert_eq!(
            &p("A^16 - A^12") + &p("-A^4 + 1"),
            p("1 - A^4 - A^12 + A^16")
        );
    }

    #[test]
    fn products() {
        assert!((&p("-A^3") * &p("-A^-3")).is_one());
        let d = LaurentPoly::loop_value();
        assert_eq!(&d * &d, p("A^-4 + 2 + A^4"));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("-A^-4 - A^4").normalize().unwrap(), p("1 + A^8"));
        let delta = p("1 - A^4 - A^12 + A^16");
        assert_eq!(delta.normalize().unwrap(), delta);
        assert_eq!(p("2A^-2 - 2A^2").normalize().unwrap(), p("2 - 2A^4"));
        assert_eq!(LaurentPoly::zero().normalize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn divides_examples() {
        assert!(p("A^4 - 1").divides(&p("A^8 - 1")));
        assert!(!p("A^16 - A^12 - A^4 + 1").divides(&p("A^4 + 1")));
        assert!(p("A^4 + 1").divides(&LaurentPoly::zero()));
        assert!(!p("2").divides(&p("3 + A")));
        assert!(p("2 - 2A").divides(&p("4A^-3 - 4A^-1")));
    }

    #[test]
    fn gcd_examples() {
        let f = p("A^4 - 1");
        assert_eq!(
            LaurentPoly::gcd([&LaurentPoly::zero(), &f]),
            f.normalize().unwrap()
        );
        let g = p("-A^-4 - A^4");
        assert_eq!(LaurentPoly::gcd([&g, &g]), g.normalize().unwrap());
        assert!(LaurentPoly::gcd([&LaurentPoly::zero()]).is_zero());
        assert_eq!(LaurentPoly::gcd([&p("6 + 6A"), &p("4 - 4A^2")]), p("2 + 2A"));
    }

    #[test]
    fn text_round_trip() {
        let s = "-A^-4 + 2 - A^4";
        assert_eq!(p(s).to_string(), s);
        assert_eq!(p("3A - A^-1 + 7").to_string(), "-A^-1 + 7 + 3A");
        assert_eq!(p("2*A^3 + A^1").to_string(), "A + 2A^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
        assert!("A^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2 3".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn jones_substitution() {
        assert!(LaurentPoly::one().to_jones().is_one());
        assert_eq!(p("A^12").to_jones(), p("A^-12"));
        assert_eq!(p("-A^-4 - A^4").to_jones().display_in("q"), "-q^-4 - q^4");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
        arb_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn text_form_round_trips(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn divisibility_is_transitive(d2 in arb_nonzero(), x in arb_nonzero(), y in arb_poly()) {
            let d = &d2 * &x;
            let p = &d * &y;
            prop_assert!(d.divides(&p));
            prop_assert!(d2.divides(&d));
            prop_assert!(d2.divides(&p));
        }

        #[test]
        fn exact_quotient_recovers_factor(d in arb_nonzero(), q in arb_poly()) {
            let p = &d * &q;
            prop_assert_eq!(p.div_exact(&d).unwrap(), q);
        }

        #[test]
        fn gcd_divides_inputs_and_is_greatest(
            d in arb_nonzero(),
            qs in prop::collection::vec(arb_nonzero(), 1..4),
        ) {
            let family: Vec<LaurentPoly> = qs.iter().map(|q| &d * q).collect();
            let g = LaurentPoly::gcd(&family);
            prop_assert!(g.is_normalized());
            for f in &family {
                prop_assert!(g.divides(f));
            }
            prop_assert!(d.divides(&g));
        }

        #[test]
        fn normalize_is_idempotent_unit_multiple(a in arb_nonzero()) {
            let n = a.normalize().unwrap();
            prop_assert_eq!(n.normalize().unwrap(), n.clone());
            let shift = a.min_exp().unwrap();
            let unit = if a.coeff(shift).is_negative() { -1 } else { 1 };
            prop_assert_eq!(n, a.shift(-shift).scale(&BigInt::from(unit)));
        }
    }
}

//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sequence of terms `ω^e · c` with
//! `c ≥ 1`, where each exponent `e` is itself an `Ordinal`. Every value has
//! exactly one such representation, so structural equality is ordinal
//! equality.
//!
//! Only addition, successor, comparison and min/max are exposed as
//! arithmetic. The text form uses `w` for ω:
//!
//! ```text
//! expr := term ('+' term)*
//! term := nat | 'w' ('^' atom)? ('*' nat)?
//! atom := nat | 'w' ('^' atom)? | '(' expr ')'
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("coefficient overflow: result exceeds the representable capacity")]
    Capacity,
    #[error("{0} is below w and has no limit/finite split")]
    Domain(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("non-canonical term sequence: {0}")]
    NonCanonical(String),
}

/// An ordinal below ε₀.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Ordinal, u64)>", into = "Vec<(Ordinal, u64)>")]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub const fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal { terms: vec![(exponent, 1)] }
    }

    /// `ω^exponent · coefficient`; zero when `coefficient` is zero.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(exponent, coefficient)] }
        }
    }

    /// Builds an ordinal from explicit terms, rejecting anything that is not
    /// already in Cantor normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (exp, coeff)) in terms.iter().enumerate() {
            if *coeff == 0 {
                return Err(OrdinalError::NonCanonical(format!("zero coefficient in term {i}")));
            }
            if i > 0 && terms[i - 1].0 <= *exp {
                return Err(OrdinalError::NonCanonical(format!(
                    "exponent of term {i} does not decrease"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// True for nonzero ordinals without an immediate predecessor.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    /// The finite tail of the normal form (`a − λ` for the largest limit `λ ≤ a`).
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some((lead_exp, lead_coeff)) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms[1..].iter();
        let mut merged = false;
        for (exp, coeff) in &self.terms {
            match exp.cmp(lead_exp) {
                Ordering::Greater => terms.push((exp.clone(), *coeff)),
                Ordering::Equal => {
                    let c = coeff.checked_add(*lead_coeff).ok_or(OrdinalError::Capacity)?;
                    terms.push((exp.clone(), c));
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        if !merged {
            terms.push((lead_exp.clone(), *lead_coeff));
        }
        terms.extend(rest.by_ref().cloned());
        let out = Ordinal { terms };
        debug_assert!(out.is_canonical());
        Ok(out)
    }

    pub fn checked_add_finite(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        self.checked_add(&Ordinal::finite(n))
    }

    /// `self + n`. Panics on coefficient overflow.
    pub fn plus(&self, n: u64) -> Ordinal {
        self.checked_add_finite(n).expect("ordinal capacity exceeded")
    }

    pub fn successor(&self) -> Ordinal {
        self.plus(1)
    }

    /// Immediate predecessor of a successor ordinal.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a term");
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Splits `a ≥ ω` into `(λ, n)` with `λ` a limit ordinal and `a = λ + n`.
    pub fn split_successor(&self) -> Result<(Ordinal, u64), OrdinalError> {
        if self.is_finite() {
            return Err(OrdinalError::Domain(self.to_string()));
        }
        let n = self.finite_part();
        let mut terms = self.terms.clone();
        if n > 0 {
            terms.pop();
        }
        Ok((Ordinal { terms }, n))
    }

    fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(e, c)| *c > 0 && e.is_canonical())
            && self.terms.windows(2).all(|w| w[0].0 > w[1].0)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl TryFrom<Vec<(Ordinal, u64)>> for Ordinal {
    type Error = OrdinalError;

    fn try_from(terms: Vec<(Ordinal, u64)>) -> Result<Self, Self::Error> {
        Ordinal::from_terms(terms)
    }
}

impl From<Ordinal> for Vec<(Ordinal, u64)> {
    fn from(o: Ordinal) -> Self {
        o.terms
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal capacity exceeded")
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if exp.is_zero() {
                write!(f, "{coeff}")?;
                continue;
            }
            f.write_str("w")?;
            if *exp != Ordinal::one() {
                let inner = exp.to_string();
                if inner.contains(['+', '*']) {
                    write!(f, "^({inner})")?;
                } else {
                    write!(f, "^{inner}")?;
                }
            }
            if *coeff > 1 {
                write!(f, "*{coeff}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

pub fn parse(text: &str) -> Result<Ordinal, OrdinalError> {
    text.parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> OrdinalError {
        OrdinalError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                let power = self.power()?;
                if self.eat(b'*') {
                    let n = self.nat()?;
                    Ok(match power.terms.into_iter().next() {
                        Some((exp, _)) => Ordinal::monomial(exp, n),
                        None => Ordinal::zero(),
                    })
                } else {
                    Ok(power)
                }
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::finite(self.nat()?)),
            Some(_) => Err(self.error("expected 'w' or a natural number")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// `'w' ('^' atom)?`, returned as the monomial `ω^e`.
    fn power(&mut self) -> Result<Ordinal, OrdinalError> {
        if !self.eat(b'w') {
            return Err(self.error("expected 'w'"));
        }
        let exp = if self.eat(b'^') { self.atom()? } else { Ordinal::one() };
        Ok(Ordinal::omega_pow(exp))
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(b'w') => self.power(),
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::finite(self.nat()?)),
            Some(_) => Err(self.error("expected exponent")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| OrdinalError::Capacity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert!(Ordinal::omega() > Ordinal::finite(5));
        assert!(o("w^2+1") > o("w*7+3"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(&o("w+3") + &o("w^2"), o("w^2"));
        assert_eq!(&o("w^2") + &o("w+1"), o("w^2+w+1"));
        assert_eq!(&o("w*2+5") + &o("w"), o("w*3"));
        assert_eq!(&o("3") + &o("w"), o("w"));
    }

    #[test]
    fn successor_and_split() {
        assert_eq!(Ordinal::zero().successor(), Ordinal::one());
        assert!(o("w^w").is_limit());
        assert!(!o("w+1").is_limit());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("w*2+5").split_successor().unwrap(), (o("w*2"), 5));
        assert_eq!(o("w^2").split_successor().unwrap(), (o("w^2"), 0));
        assert!(matches!(o("17").split_successor(), Err(OrdinalError::Domain(_))));
        assert_eq!(o("w+1").predecessor(), Some(o("w")));
        assert_eq!(o("w").predecessor(), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(
            o("w^2*3+w+4"),
            Ordinal::from_terms(vec![
                (Ordinal::finite(2), 3),
                (Ordinal::one(), 1),
                (Ordinal::zero(), 4)
            ])
            .unwrap()
        );
        assert_eq!(o("0"), Ordinal::zero());
        assert_eq!(o("w+w").to_string(), "w*2");
        assert_eq!(o("w^(w+1)*2").to_string(), "w^(w+1)*2");
        assert_eq!(o("w^w^2").to_string(), "w^w^2");
        assert_eq!(o("w^(w*2)").to_string(), "w^(w*2)");
        assert_eq!(o(" w * 3 + 2 ").to_string(), "w*3+2");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "w+".parse::<Ordinal>() {
            Err(OrdinalError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("w_invalid".parse::<Ordinal>(), Err(OrdinalError::Parse { position: 1, .. })));
        assert!(matches!("99999999999999999999".parse::<Ordinal>(), Err(OrdinalError::Capacity)));
    }

    #[test]
    fn overflow_is_a_capacity_error() {
        let big = Ordinal::finite(u64::MAX);
        assert_eq!(big.checked_add(&Ordinal::one()), Err(OrdinalError::Capacity));
    }

    #[test]
    fn from_terms_rejects_noncanonical() {
        assert!(Ordinal::from_terms(vec![(Ordinal::zero(), 1), (Ordinal::one(), 1)]).is_err());
        assert!(Ordinal::from_terms(vec![(Ordinal::one(), 0)]).is_err());
    }

    #[test]
    fn serializes_as_nested_pairs() {
        let json = serde_json::to_string(&o("w^2+3")).unwrap();
        assert_eq!(json, "[[[[[],2]],1],[[],3]]");
        let back: Ordinal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, o("w^2+3"));
        assert!(serde_json::from_str::<Ordinal>("[[[],1],[[[[],1]],1]]").is_err());
    }
}

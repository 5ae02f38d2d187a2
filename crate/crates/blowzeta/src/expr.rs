//! Germ expressions: `expr := term (('+'|'-') term)*`,
//! `term := [int '*']? var ('^' int)? (var ('^' int)?)*`.
//! A leading `-` on the first term is accepted. Whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt;

use blowzeta_core::{BrieskornGerm, BrieskornTerm, Sign, SupportPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// Signed coefficient, the term's `+`/`-` folded in.
    pub coeff: BigInt,
    /// Variable factors in source order; repeats are allowed.
    pub factors: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermExpr {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {}: {kind}", .pos + 1)]
pub struct ParseError {
    /// Character offset, 0-based.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("expected a variable")]
    ExpectedVariable,
    #[error("expected an integer")]
    ExpectedInteger,
    #[error("exponent must be a positive integer below 2^32")]
    BadExponent,
    #[error("expected '+' or '-'")]
    ExpectedOperator,
    #[error("expected '*' after a coefficient")]
    ExpectedStar,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("not a Brieskorn germ: term {term} is not ±v^e in a single variable")]
    NotBrieskornTerm { term: usize },
    #[error("not a Brieskorn germ: variable {0} occurs in more than one term")]
    RepeatedVariable(String),
    #[error("toric commands take at most two variables, found {0}")]
    TooManyVariables(usize),
    #[error("coefficient {0} does not fit the toric builder")]
    Coefficient(String),
    #[error("exponent sum exceeds 2^32")]
    ExponentOverflow,
    #[error(transparent)]
    Toric(#[from] blowzeta_core::ToricError),
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer { chars, at: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.chars().count(), |&(p, _)| p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { pos: self.pos(), kind }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.at {
            return Err(self.err(ParseErrorKind::ExpectedInteger));
        }
        let digits: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> Option<String> {
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return None;
        }
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
            s.push(c);
            self.bump();
        }
        Some(s)
    }

    fn term(&mut self, negative: bool) -> Result<Term, ParseError> {
        let mut coeff = BigInt::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.integer()?;
            if !self.eat('*') {
                return Err(self.err(ParseErrorKind::ExpectedStar));
            }
        }
        let mut factors = Vec::new();
        loop {
            let Some(v) = self.ident() else {
                if factors.is_empty() {
                    return Err(self.err(ParseErrorKind::ExpectedVariable));
                }
                break;
            };
            let mut e = 1u32;
            if self.eat('^') {
                let at = self.pos();
                let n = self.integer()?;
                e = n
                    .to_u32()
                    .filter(|&e| e > 0)
                    .ok_or(ParseError { pos: at, kind: ParseErrorKind::BadExponent })?;
            }
            factors.push((v, e));
            // juxtaposition or '*' continues the monomial
            if self.eat('*') && !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
                return Err(self.err(ParseErrorKind::ExpectedVariable));
            }
        }
        Ok(Term { coeff: if negative { -coeff } else { coeff }, factors })
    }
}

impl GermExpr {
    pub fn parse(src: &str) -> Result<GermExpr, ParseError> {
        let mut lx = Lexer::new(src);
        if lx.peek().is_none() {
            return Err(lx.err(ParseErrorKind::Empty));
        }
        let mut terms = vec![{
            let neg = lx.eat('-');
            lx.term(neg)?
        }];
        while let Some(c) = lx.peek() {
            let neg = match c {
                '+' => false,
                '-' => true,
                _ => return Err(lx.err(ParseErrorKind::ExpectedOperator)),
            };
            lx.bump();
            terms.push(lx.term(neg)?);
        }
        Ok(GermExpr { terms })
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.iter().flat_map(|t| t.factors.iter().map(|(n, _)| n.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// One variable per term with coefficient ±1, each variable used once.
    pub fn to_brieskorn(&self) -> Result<BrieskornGerm, ShapeError> {
        let mut seen = BTreeMap::new();
        let mut terms = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            let Some(sign) = t.coeff.to_i64().and_then(Sign::from_i64) else {
                return Err(ShapeError::NotBrieskornTerm { term: i + 1 });
            };
            let names: Vec<&str> = t.factors.iter().map(|(n, _)| n.as_str()).collect();
            if names.windows(2).any(|w| w[0] != w[1]) {
                return Err(ShapeError::NotBrieskornTerm { term: i + 1 });
            }
            if seen.insert(names[0].to_string(), ()).is_some() {
                return Err(ShapeError::RepeatedVariable(names[0].to_string()));
            }
            let e = t.factors.iter().try_fold(0u32, |a, (_, e)| a.checked_add(*e)).ok_or(ShapeError::ExponentOverflow)?;
            terms.push(BrieskornTerm::new(e, sign));
        }
        BrieskornGerm::new(terms).map_err(|_| ShapeError::NotBrieskornTerm { term: 1 })
    }

    /// Two-variable polynomial with variables in sorted order as `(x, y)`.
    pub fn to_support(&self) -> Result<SupportPoly, ShapeError> {
        let vars = self.variables();
        if vars.len() > 2 {
            return Err(ShapeError::TooManyVariables(vars.len()));
        }
        let mut mono = Vec::new();
        for t in &self.terms {
            let (mut i, mut j) = (0u32, 0u32);
            for (n, e) in &t.factors {
                let slot = if *n == vars[0] { &mut i } else { &mut j };
                *slot = slot.checked_add(*e).ok_or(ShapeError::ExponentOverflow)?;
            }
            let c = t.coeff.to_i64().ok_or_else(|| ShapeError::Coefficient(t.coeff.to_string()))?;
            mono.push((i, j, c));
        }
        Ok(SupportPoly::from_i64s(&mono)?)
    }
}

impl fmt::Display for GermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = t.coeff.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            for (k, (v, e)) in t.factors.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

//! The value universe shared by every functor stage.
//!
//! A [`Value`] is an element of some composite functor applied to a finite
//! carrier. Constructors keep values canonical: sets are sorted without
//! duplicates, distributions have merged supports and strictly positive
//! weights. The derived `Ord` is the canonical total order (variants by tag
//! name, sequences lexicographically, rationals numerically).

use std::fmt;
use std::sync::Arc;

use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    /// Element of the base carrier, by index.
    Base(u32),
    /// Finitely supported distribution, sorted by support.
    DistOf(Vec<(Value, Rat)>),
    /// Total function out of the reader's label carrier, by label index.
    FuncOf(Vec<Value>),
    /// Convex set generated by the listed points (a law output at a
    /// powerset-of-distributions position). Sorted, no duplicates.
    Hull(Vec<Value>),
    InL(Box<Value>),
    InR,
    /// Element of a split stage: a fixed point of the law's idempotent.
    Norm(Arc<str>, Box<Value>),
    /// Writer pair: monoid element and payload.
    PairOf(Arc<str>, Box<Value>),
    /// Finite set, sorted, no duplicates.
    SetOf(Vec<Value>),
}

impl Value {
    pub fn set<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::SetOf(sorted_dedup(items))
    }

    pub fn hull<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::Hull(sorted_dedup(items))
    }

    /// Builds a distribution, merging equal supports and dropping zero
    /// weights. Does not check that weights sum to one.
    pub fn dist<I: IntoIterator<Item = (Value, Rat)>>(terms: I) -> Value {
        let mut terms: Vec<(Value, Rat)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Value, Rat)> = Vec::with_capacity(terms.len());
        for (v, w) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == v => *acc = *acc + w,
                _ => out.push((v, w)),
            }
        }
        out.retain(|(_, w)| !w.is_zero());
        Value::DistOf(out)
    }

    pub fn dirac(v: Value) -> Value {
        Value::DistOf(vec![(v, Rat::one())])
    }

    pub fn inl(v: Value) -> Value {
        Value::InL(Box::new(v))
    }

    pub fn pair(m: &str, v: Value) -> Value {
        Value::PairOf(Arc::from(m), Box::new(v))
    }

    pub fn norm(id: &str, v: Value) -> Value {
        Value::Norm(Arc::from(id), Box::new(v))
    }

    /// Members of a set-like value (`SetOf` or `Hull`).
    pub fn members(&self) -> Option<&[Value]> {
        match self {
            Value::SetOf(xs) | Value::Hull(xs) => Some(xs),
            _ => None,
        }
    }

    pub fn is_hull(&self) -> bool {
        matches!(self, Value::Hull(_))
    }

    pub fn dist_terms(&self) -> Option<&[(Value, Rat)]> {
        match self {
            Value::DistOf(ts) => Some(ts),
            _ => None,
        }
    }

    pub fn base_index(&self) -> Option<u32> {
        match self {
            Value::Base(i) => Some(*i),
            _ => None,
        }
    }

    /// Payload of a split-stage element.
    pub fn unwrap_norm(&self) -> Option<&Value> {
        match self {
            Value::Norm(_, v) => Some(v),
            _ => None,
        }
    }

    /// Support of a distribution, in canonical order.
    pub fn support(&self) -> Vec<Value> {
        match self {
            Value::DistOf(ts) => ts.iter().map(|(v, _)| v.clone()).collect(),
            _ => Vec::new(),
        }
    }

    /// Applies `f` to every direct child, keeping the node shape.
    /// Set-like and distribution nodes are re-canonicalized afterwards.
    pub fn map_children(&self, f: &dyn Fn(&Value) -> Value) -> Value {
        match self {
            Value::Base(_) | Value::InR => self.clone(),
            Value::DistOf(ts) => Value::dist(ts.iter().map(|(v, w)| (f(v), *w))),
            Value::FuncOf(xs) => Value::FuncOf(xs.iter().map(f).collect()),
            Value::Hull(xs) => Value::hull(xs.iter().map(f)),
            Value::InL(v) => Value::InL(Box::new(f(v))),
            Value::Norm(id, v) => Value::Norm(id.clone(), Box::new(f(v))),
            Value::PairOf(m, v) => Value::PairOf(m.clone(), Box::new(f(v))),
            Value::SetOf(xs) => Value::set(xs.iter().map(f)),
        }
    }

    /// Number of nodes, used to pick small witnesses.
    pub fn size(&self) -> usize {
        1 + match self {
            Value::Base(_) | Value::InR => 0,
            Value::DistOf(ts) => ts.iter().map(|(v, _)| v.size()).sum(),
            Value::FuncOf(xs) | Value::Hull(xs) | Value::SetOf(xs) => {
                xs.iter().map(Value::size).sum()
            }
            Value::InL(v) | Value::Norm(_, v) | Value::PairOf(_, v) => v.size(),
        }
    }
}

pub(crate) fn sorted_dedup<I: IntoIterator<Item = Value>>(items: I) -> Vec<Value> {
    let mut v: Vec<Value> = items.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Name of the base element with the given index: `a` through `z`, then
/// `x26`, `x27`, and so on.
pub fn base_name(i: u32) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Value]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Base(i) => f.write_str(&base_name(*i)),
            Value::DistOf(ts) => {
                f.write_str("(")?;
                for (i, (v, w)) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{w}*{v}")?;
                }
                f.write_str(")")
            }
            Value::FuncOf(xs) => {
                f.write_str("fn(")?;
                write_list(f, xs)?;
                f.write_str(")")
            }
            Value::Hull(xs) => {
                f.write_str("hull[")?;
                write_list(f, xs)?;
                f.write_str("]")
            }
            Value::InL(v) => write!(f, "inl({v})"),
            Value::InR => f.write_str("inr"),
            Value::Norm(id, v) => write!(f, "norm<{id}>({v})"),
            Value::PairOf(m, v) => write!(f, "pair({m}, {v})"),
            Value::SetOf(xs) => {
                f.write_str("[")?;
                write_list(f, xs)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parses the text form produced by `Display`. The result is passed
/// through the canonicalizing constructors, so unsorted sets and unmerged
/// distribution terms are accepted.
pub fn parse_value(src: &str) -> Result<Value, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let v = p.value()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn list(&mut self, close: u8) -> Result<Vec<Value>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.value()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or closing bracket")),
            }
        }
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_digit() || c == b'/' || c == b'-' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        s.parse().map_err(|_| ParseError { pos: start, msg: format!("bad rational '{s}'") })
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'[') => {
                self.pos += 1;
                Ok(Value::set(self.list(b']')?))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut terms = Vec::new();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    return Ok(Value::DistOf(terms));
                }
                loop {
                    let w = self.rational()?;
                    self.expect(b'*')?;
                    let v = self.value()?;
                    terms.push((v, w));
                    match self.peek() {
                        Some(b'+') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected '+' or ')'")),
                    }
                }
                if terms.iter().any(|(_, w)| w.is_negative()) {
                    return Err(self.err("negative weight"));
                }
                Ok(Value::dist(terms))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let w = self.word();
                match w.as_str() {
                    "inr" => Ok(Value::InR),
                    "inl" => {
                        self.expect(b'(')?;
                        let v = self.value()?;
                        self.expect(b')')?;
                        Ok(Value::inl(v))
                    }
                    "fn" => {
                        self.expect(b'(')?;
                        Ok(Value::FuncOf(self.list(b')')?))
                    }
                    "hull" => {
                        self.expect(b'[')?;
                        Ok(Value::hull(self.list(b']')?))
                    }
                    "pair" => {
                        self.expect(b'(')?;
                        let m = self.word();
                        if m.is_empty() {
                            return Err(self.err("expected monoid element"));
                        }
                        self.expect(b',')?;
                        let v = self.value()?;
                        self.expect(b')')?;
                        Ok(Value::pair(&m, v))
                    }
                    "norm" => {
                        self.expect(b'<')?;
                        let s = self.pos;
                        while self.pos < self.src.len() && self.src[self.pos] != b'>' {
                            self.pos += 1;
                        }
                        if self.pos >= self.src.len() {
                            return Err(self.err("unterminated law id"));
                        }
                        let id = String::from_utf8_lossy(&self.src[s..self.pos]).into_owned();
                        self.pos += 1;
                        self.expect(b'(')?;
                        let v = self.value()?;
                        self.expect(b')')?;
                        Ok(Value::norm(&id, v))
                    }
                    _ => parse_base(&w).ok_or(ParseError {
                        pos: start,
                        msg: format!("unknown token '{w}'"),
                    }),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected '{}'", c as char))),
        }
    }
}

fn parse_base(w: &str) -> Option<Value> {
    let b = w.as_bytes();
    if b.len() == 1 && b[0].is_ascii_lowercase() {
        return Some(Value::Base((b[0] - b'a') as u32));
    }
    if let Some(rest) = w.strip_prefix('x') {
        if let Ok(i) = rest.parse::<u32>() {
            if i >= 26 {
                return Some(Value::Base(i));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> Value {
        Value::Base(i)
    }

    #[test]
    fn set_constructor_sorts_and_dedups() {
        let v = Value::set([b(1), b(0), b(1)]);
        assert_eq!(v, Value::SetOf(vec![b(0), b(1)]));
    }

    #[test]
    fn dist_constructor_merges() {
        let h = Rat::new(1, 2);
        let v = Value::dist([(b(0), h), (b(0), h)]);
        assert_eq!(v, Value::dirac(b(0)));
        let z = Value::dist([(b(0), Rat::one()), (b(1), Rat::zero())]);
        assert_eq!(z, Value::dirac(b(0)));
    }

    #[test]
    fn text_form() {
        let h = Rat::new(1, 2);
        let d = Value::dist([(b(1), h), (b(0), h)]);
        assert_eq!(d.to_string(), "(1/2*a + 1/2*b)");
        let v = Value::set([Value::pair("e", Value::inl(b(2))), Value::InR, Value::FuncOf(vec![b(0), b(1)])]);
        assert_eq!(v.to_string(), "[fn(a, b), inr, pair(e, inl(c))]");
        assert_eq!(Value::norm("pp", Value::hull([b(0)])).to_string(), "norm<pp>(hull[a])");
        assert_eq!(base_name(27), "x27");
    }

    #[test]
    fn parse_accepts_unnormalized() {
        let v = parse_value("[b, a, a]").unwrap();
        assert_eq!(v, Value::set([b(0), b(1)]));
        let d = parse_value("(1/2*a + 1/2*a)").unwrap();
        assert_eq!(d, Value::dirac(b(0)));
        assert!(parse_value("(-1/2*a + 3/2*b)").is_err());
        assert!(parse_value("[a, ").is_err());
        assert!(parse_value("norm<pp(a)").is_err());
    }
}

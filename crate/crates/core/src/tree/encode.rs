//! Canonical text encoding:
//!
//! ```text
//! node := '(' [ 'd' index ':' ] { [ '*' ] node } ')'
//! ```
//!
//! `d<i>:` names the distinguished child of an internal node and `*` marks
//! the edge to the child that follows it (only the rightmost child may be
//! marked). The single node is `()`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::PlaneTree;
use crate::error::{Error, Result};

pub fn encode<T: PlaneTree>(t: &T) -> String {
    let mut out = String::with_capacity(4 * t.node_count());
    write_node(t, &mut out);
    out
}

fn write_node<T: PlaneTree>(t: &T, out: &mut String) {
    out.push('(');
    if let Some(d) = t.distinguished() {
        write!(out, "d{d}:").expect("writing to a String cannot fail");
    }
    let last = t.children().len().wrapping_sub(1);
    for (i, c) in t.children().iter().enumerate() {
        if i == last && t.rightmost_marked() {
            out.push('*');
        }
        write_node(c, out);
    }
    out.push(')');
}

pub fn decode<T: PlaneTree>(text: &str) -> Result<T> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.node()?;
    if p.pos != p.bytes.len() {
        return Err(Error::parse(p.pos, "trailing input after the root node"));
    }
    Ok(t)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::parse(
                self.pos,
                alloc::format!("expected `{}`, found `{}`", byte as char, b as char),
            )),
            None => Err(Error::parse(
                self.pos,
                alloc::format!("expected `{}`, found end of input", byte as char),
            )),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.bytes[start..self.pos];
        if digits.is_empty() {
            return Err(Error::parse(start, "expected a child index"));
        }
        if digits.len() > 1 && digits[0] == b'0' {
            return Err(Error::parse(start, "child index has a leading zero"));
        }
        core::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, "child index out of range"))
    }

    fn node<T: PlaneTree>(&mut self) -> Result<T> {
        let start = self.pos;
        self.expect(b'(')?;
        let mut distinguished = None;
        if self.peek() == Some(b'd') {
            self.pos += 1;
            distinguished = Some(self.index()?);
            self.expect(b':')?;
        }
        let mut children = Vec::new();
        let mut marked = false;
        loop {
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b'*') => {
                    if marked {
                        return Err(Error::parse(
                            self.pos,
                            "only the rightmost edge may be marked",
                        ));
                    }
                    self.pos += 1;
                    marked = true;
                    children.push(self.node()?);
                    if self.peek() != Some(b')') {
                        return Err(Error::parse(
                            self.pos,
                            "only the rightmost edge may be marked",
                        ));
                    }
                }
                Some(b'(') => children.push(self.node()?),
                Some(b) => {
                    return Err(Error::parse(
                        self.pos,
                        alloc::format!("unexpected `{}`", b as char),
                    ))
                }
                None => return Err(Error::parse(self.pos, "unterminated node")),
            }
        }
        T::from_parts(children, distinguished, marked).map_err(|e| match e {
            Error::InvalidTree(msg) => Error::parse(start, msg),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{gen, DistTree, MarkedDistTree, MarkedTree, OrderedTree};
    use alloc::vec;

    #[test]
    fn small_encodings() {
        assert_eq!(encode(&OrderedTree::leaf()), "()");
        let t = DistTree::new(vec![DistTree::leaf()], Some(0)).unwrap();
        assert_eq!(encode(&t), "(d0:())");
        let inner = MarkedTree::new(vec![MarkedTree::leaf()], false).unwrap();
        let m = MarkedTree::new(vec![MarkedTree::leaf(), inner], true).unwrap();
        assert_eq!(encode(&m), "(()*(()))");
    }

    #[test]
    fn round_trip_through_every_family() {
        for n in 1..=7 {
            for t in gen::gen_ordered(n).unwrap() {
                assert_eq!(decode::<OrderedTree>(&encode(&t)).unwrap(), t);
            }
            for t in gen::gen_distinguished(n).unwrap() {
                assert_eq!(decode::<DistTree>(&encode(&t)).unwrap(), t);
            }
            for t in gen::gen_marked(n).unwrap() {
                assert_eq!(decode::<MarkedTree>(&encode(&t)).unwrap(), t);
            }
            for t in gen::gen_marked_dist(n).unwrap() {
                assert_eq!(decode::<MarkedDistTree>(&encode(&t)).unwrap(), t);
            }
        }
    }

    fn position<T: PlaneTree>(text: &str) -> usize {
        match decode::<T>(text) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs_report_positions() {
        assert_eq!(position::<OrderedTree>(""), 0);
        assert_eq!(position::<OrderedTree>("(()"), 3);
        assert_eq!(position::<OrderedTree>("()()"), 2);
        assert_eq!(position::<OrderedTree>("(x)"), 1);
        assert_eq!(position::<DistTree>("(d:())"), 2);
        assert_eq!(position::<DistTree>("(d1:())"), 0);
        assert_eq!(position::<DistTree>("(())"), 0);
        assert_eq!(position::<OrderedTree>("(d0:())"), 0);
        assert_eq!(position::<MarkedTree>("(*())"), 0);
        assert_eq!(position::<MarkedTree>("(*(())())"), 6);
        assert_eq!(position::<DistTree>("(d01:())"), 2);
    }
}

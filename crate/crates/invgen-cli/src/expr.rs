//! Recursive-descent parser for the group-expression language.
//!
//! Grammar (whitespace-insensitive):
//!   expr     := C(n) | D(n) | S(n) | A(n) | Q8 | B(n) | F21 | Sp4(2)
//!             | D8oD8 | GL(n,p) | SL(n,p)
//!             | wr(expr, expr) | dp(expr, expr)
//!             | sub(expr; perm, perm, ...)
//!             | quo(expr; expr)
//!             | fib(expr; expr; expr; expr)
//!             | mat(p; row | row | ... ; row | ... )
//!   perm     := cycles like (1,2,3)(4,5), or () for the identity
//!   row      := comma-separated field entries
//!
//! Errors carry the byte offset and the set of tokens that would have been
//! accepted.

use invgen_core::GroupExpr;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input", &["end of input"]));
    }
    Ok(expr)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(
                &format!("expected '{}'", c as char),
                &[&format!("'{}'", c as char)],
            ))
        }
    }

    fn eat_either(&mut self, a: u8, b: u8) -> Result<u8, ParseError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(&c) if c == a || c == b => {
                self.pos += 1;
                Ok(c)
            }
            _ => Err(self.err(
                &format!("expected '{}' or '{}'", a as char, b as char),
                &[&format!("'{}'", a as char), &format!("'{}'", b as char)],
            )),
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number", &["number"]));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("number out of range", &["smaller number"]))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        self.text[start..self.pos].to_string()
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let head = self.ident();
        match head.as_str() {
            "C" => Ok(GroupExpr::Cyclic(self.one_arg()?)),
            "D" => Ok(GroupExpr::Dihedral(self.one_arg()?)),
            "S" => Ok(GroupExpr::Symmetric(self.one_arg()?)),
            "A" => Ok(GroupExpr::Alternating(self.one_arg()?)),
            "B" => Ok(GroupExpr::B(self.one_arg()?)),
            "Q8" => Ok(GroupExpr::Quaternion8),
            "F21" => Ok(GroupExpr::FrobF21),
            "D8oD8" => Ok(GroupExpr::D8centralD8),
            "Sp4" => {
                self.eat(b'(')?;
                let p = self.number()?;
                if p != 2 {
                    self.pos = at;
                    return Err(self.err("only the symplectic group over F_2 is built in", &["Sp4(2)"]));
                }
                self.eat(b')')?;
                Ok(GroupExpr::Sp4_2)
            }
            "GL" | "SL" => {
                self.eat(b'(')?;
                let n = self.number()?;
                self.eat(b',')?;
                let p = self.number()?;
                self.eat(b')')?;
                if p > 251 {
                    return Err(self.err("field order too large", &["prime <= 251"]));
                }
                if head == "GL" {
                    Ok(GroupExpr::GL(n, p as u8))
                } else {
                    Ok(GroupExpr::SL(n, p as u8))
                }
            }
            "wr" | "dp" => {
                self.eat(b'(')?;
                let mut args = vec![self.expr()?];
                loop {
                    match self.eat_either(b',', b')')? {
                        b',' => args.push(self.expr()?),
                        _ => break,
                    }
                }
                if args.len() != 2 {
                    return Err(self.err(
                        &format!("{head} takes exactly 2 arguments, got {}", args.len()),
                        &["2 arguments"],
                    ));
                }
                let b = Box::new(args.pop().unwrap());
                let a = Box::new(args.pop().unwrap());
                if head == "wr" {
                    Ok(GroupExpr::Wreath(a, b))
                } else {
                    Ok(GroupExpr::DirectProduct(a, b))
                }
            }
            "sub" => {
                self.eat(b'(')?;
                let parent = self.expr()?;
                self.eat(b';')?;
                let mut gens = Vec::new();
                loop {
                    gens.push(self.perm_text()?);
                    match self.eat_either(b',', b')')? {
                        b',' => continue,
                        _ => break,
                    }
                }
                Ok(GroupExpr::Subgroup(Box::new(parent), gens))
            }
            "quo" => {
                self.eat(b'(')?;
                let parent = self.expr()?;
                self.eat(b';')?;
                let normal = self.expr()?;
                self.eat(b')')?;
                Ok(GroupExpr::Quotient(Box::new(parent), Box::new(normal)))
            }
            "fib" => {
                self.eat(b'(')?;
                let left = self.expr()?;
                self.eat(b';')?;
                let left_normal = self.expr()?;
                self.eat(b';')?;
                let right = self.expr()?;
                self.eat(b';')?;
                let right_normal = self.expr()?;
                self.eat(b')')?;
                Ok(GroupExpr::Fiber {
                    left: Box::new(left),
                    left_normal: Box::new(left_normal),
                    right: Box::new(right),
                    right_normal: Box::new(right_normal),
                })
            }
            "mat" => {
                self.eat(b'(')?;
                let p = self.number()?;
                if p > 251 {
                    return Err(self.err("field order too large", &["prime <= 251"]));
                }
                let mut gens: Vec<Vec<u8>> = Vec::new();
                let mut dim = 0usize;
                loop {
                    self.eat(b';')?;
                    let (entries, d) = self.matrix_rows(p as u8)?;
                    if dim == 0 {
                        dim = d;
                    } else if dim != d {
                        return Err(self.err("generator dimensions differ", &["same dimension"]));
                    }
                    gens.push(entries);
                    if self.peek() == Some(b')') {
                        self.pos += 1;
                        break;
                    }
                }
                Ok(GroupExpr::Matrix { p: p as u8, gens, dim })
            }
            "" => Err(self.err(
                "expected a group expression",
                &["C", "D", "S", "A", "B", "Q8", "F21", "Sp4", "D8oD8", "GL", "SL", "wr", "dp",
                    "sub", "quo", "fib", "mat"],
            )),
            other => {
                self.pos = at;
                Err(self.err(
                    &format!("unknown constructor '{other}'"),
                    &["C", "D", "S", "A", "B", "Q8", "F21", "Sp4", "D8oD8", "GL", "SL", "wr",
                        "dp", "sub", "quo", "fib", "mat"],
                ))
            }
        }
    }

    fn one_arg(&mut self) -> Result<usize, ParseError> {
        self.eat(b'(')?;
        let n = self.number()?;
        self.eat(b')')?;
        Ok(n)
    }

    /// A permutation in cycle notation: one or more parenthesized cycles.
    fn perm_text(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut any = false;
        loop {
            self.skip_ws();
            if self.bytes.get(self.pos) != Some(&b'(') {
                break;
            }
            let close = self.bytes[self.pos..]
                .iter()
                .position(|&c| c == b')')
                .map(|k| self.pos + k);
            let Some(close) = close else {
                return Err(self.err("unterminated cycle", &["')'"]));
            };
            self.pos = close + 1;
            any = true;
        }
        if !any {
            return Err(self.err("expected a permutation in cycle notation", &["'('"]));
        }
        Ok(self.text[start..self.pos].trim().to_string())
    }

    /// Rows separated by '|', entries by ','; stops before ';' or ')'.
    fn matrix_rows(&mut self, p: u8) -> Result<(Vec<u8>, usize), ParseError> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        loop {
            let mut row = Vec::new();
            loop {
                let v = self.number()?;
                if v >= p as usize {
                    return Err(self.err(
                        &format!("entry {v} not reduced modulo {p}"),
                        &["entry < p"],
                    ));
                }
                row.push(v as u8);
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    _ => break,
                }
            }
            rows.push(row);
            match self.peek() {
                Some(b'|') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(self.err("matrix is not square", &["n rows of n entries"]));
        }
        Ok((rows.into_iter().flatten().collect(), dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_wreath_and_products() {
        let e = parse_group_expr("wr(C(2),S(3))").unwrap();
        assert_eq!(
            e,
            GroupExpr::Wreath(Box::new(GroupExpr::Cyclic(2)), Box::new(GroupExpr::Symmetric(3)))
        );
        let e = parse_group_expr("dp(A(5),A(5))").unwrap();
        assert_eq!(
            e,
            GroupExpr::DirectProduct(
                Box::new(GroupExpr::Alternating(5)),
                Box::new(GroupExpr::Alternating(5))
            )
        );
        assert_eq!(parse_group_expr("B(6)").unwrap(), GroupExpr::B(6));
        assert_eq!(parse_group_expr("GL(3,2)").unwrap(), GroupExpr::GL(3, 2));
    }

    #[test]
    fn parse_error_carries_offset_and_expectations() {
        match parse_group_expr("wr(C(2)") {
            Err(e) => {
                assert_eq!(e.offset, 7);
                assert!(e.expected.contains(&"','".to_string()));
                assert!(e.expected.contains(&"')'".to_string()));
            }
            Ok(_) => panic!("should not parse"),
        }
    }

    #[test]
    fn parses_subgroup_with_cycles() {
        let e = parse_group_expr("sub(S(4); (1,2),(1,2,3,4))").unwrap();
        match e {
            GroupExpr::Subgroup(parent, gens) => {
                assert_eq!(*parent, GroupExpr::Symmetric(4));
                assert_eq!(gens, vec!["(1,2)".to_string(), "(1,2,3,4)".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_matrix_groups() {
        let e = parse_group_expr("mat(2; 1,1 | 0,1)").unwrap();
        match e {
            GroupExpr::Matrix { p, gens, dim } => {
                assert_eq!(p, 2);
                assert_eq!(dim, 2);
                assert_eq!(gens, vec![vec![1, 1, 0, 1]]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_group_expr("mat(2; 1,1|0,1; 0,1|1,0)").unwrap();
        match e {
            GroupExpr::Matrix { gens, .. } => assert_eq!(gens.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_group_expr(" wr( C(2) , S(3) ) ").unwrap(),
            parse_group_expr("wr(C(2),S(3))").unwrap()
        );
    }

    #[test]
    fn display_roundtrip_for_catalog() {
        for entry in invgen_core::constructions::catalog() {
            let text = entry.expr.to_string();
            let reparsed = parse_group_expr(&text).unwrap();
            assert_eq!(reparsed, entry.expr, "round-trip failed for {text}");
        }
    }
}

//! Text and JSON front ends.
//!
//! Text: `PD[X[a,b,c,d], X[...], ...]`, optionally with a `U[k]` element (or a
//! trailing `U[k]` token) declaring `k` split unknotted components. Whitespace
//! and `#` comments (to the end of the line) are ignored. The serializer
//! writes `PD[X[1,4,2,5], X[3,6,4,1], U[1]]`: elements separated by `", "`, no spaces inside `X[...]`, `U[k]` last and
//! only when `k > 0`.
//!
//! JSON: `{"crossings":[[a,b,c,d],...],"unknots":k}`; `unknots` defaults to 0.

use serde::{Deserialize, Serialize};

use super::{Arc, DiagramError, LinkDiagram};

#[derive(Serialize, Deserialize)]
struct PdJson {
    crossings: Vec<[Arc; 4]>,
    #[serde(default)]
    unknots: usize,
}

/// Parses either format, dispatching on the first non-blank character.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    if text.trim_start().starts_with('{') {
        parse_pd_json(text)
    } else {
        parse_pd_text(text)
    }
}

pub fn parse_pd_json(text: &str) -> Result<LinkDiagram, DiagramError> {
    let v: PdJson = serde_json::from_str(text).map_err(|e| DiagramError::Syntax {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    LinkDiagram::new(v.crossings, v.unknots)
}

pub fn parse_pd_text(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let (tuples, unknots) = p.document()?;
    LinkDiagram::new(tuples, unknots)
}

pub fn to_pd_string(d: &LinkDiagram) -> String {
    let mut items: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, e, f] = c.pd();
            format!("X[{a},{b},{e},{f}]")
        })
        .collect();
    if d.unknots() > 0 {
        items.push(format!("U[{}]", d.unknots()));
    }
    format!("PD[{}]", items.join(", "))
}

pub fn to_json(d: &LinkDiagram) -> String {
    serde_json::to_string(&PdJson { crossings: d.tuples(), unknots: d.unknots() })
        .expect("plain data serializes")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DiagramError> {
        Err(DiagramError::Syntax { pos: self.pos, msg: msg.into() })
    }

    /// Skips whitespace and `#` comments running to the end of the line.
    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            if c == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, tok: &str) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().or_else(|_| self.err("integer out of range"))
    }

    fn unknot_token(&mut self) -> Result<usize, DiagramError> {
        self.expect("U[")?;
        let k = self.number()? as usize;
        self.expect("]")?;
        Ok(k)
    }

    fn document(&mut self) -> Result<(Vec<[Arc; 4]>, usize), DiagramError> {
        self.expect("PD[")?;
        let mut tuples = Vec::new();
        let mut unknots = 0;
        if self.peek() != Some(b']') {
            loop {
                match self.peek() {
                    Some(b'X') => {
                        self.expect("X[")?;
                        let mut t = [0; 4];
                        for (i, slot) in t.iter_mut().enumerate() {
                            if i > 0 {
                                self.expect(",")?;
                            }
                            *slot = self.number()?;
                        }
                        self.expect("]")?;
                        tuples.push(t);
                    }
                    Some(b'U') => unknots += self.unknot_token()?,
                    _ => return self.err("expected `X[` or `U[`"),
                }
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => break,
                    _ => return self.err("expected `,` or `]`"),
                }
            }
        }
        self.expect("]")?;
        if self.peek() == Some(b'U') {
            unknots += self.unknot_token()?;
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok((tuples, unknots))
    }
}

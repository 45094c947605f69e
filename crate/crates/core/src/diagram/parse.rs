use super::{Crossing, Diagram, EdgeId};
use crate::error::{Error, Result};

/// Parse `token (ws token)*` where a token is `X(i,j,k,l)` or `O`.
pub(super) fn parse_pd(text: &str) -> Result<Diagram> {
    let mut crossings = Vec::new();
    let mut free_circles = 0;
    let mut pos = 0;
    let bytes = text.as_bytes();

    loop {
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if pos == start && !(crossings.is_empty() && free_circles == 0) {
            return Err(syntax(pos, "tokens must be separated by whitespace"));
        }
        match bytes[pos] {
            b'O' => {
                free_circles += 1;
                pos += 1;
            }
            b'X' => {
                let (crossing, next) = parse_crossing(bytes, pos)?;
                crossings.push(crossing);
                pos = next;
            }
            other => {
                return Err(syntax(pos, &format!("expected `X(` or `O`, found {:?}", other as char)));
            }
        }
    }
    Diagram::new(crossings, free_circles)
}

fn parse_crossing(bytes: &[u8], mut pos: usize) -> Result<(Crossing, usize)> {
    pos += 1;
    if bytes.get(pos) != Some(&b'(') {
        return Err(syntax(pos, "expected `(` after `X`"));
    }
    pos += 1;
    let mut edges = [EdgeId(0); 4];
    for (i, slot) in edges.iter_mut().enumerate() {
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(syntax(pos, "expected a non-negative integer edge label"));
        }
        let digits = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *slot = EdgeId(digits.parse().map_err(|_| syntax(start, "edge label out of range"))?);
        let sep = if i == 3 { b')' } else { b',' };
        if bytes.get(pos) != Some(&sep) {
            return Err(syntax(pos, &format!("expected `{}`", sep as char)));
        }
        pos += 1;
    }
    Ok((Crossing { edges }, pos))
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::Syntax { offset, message: message.to_string() }
}

//! The matrix-factorization interchange format.
//!
//! A factorization is a UTF-8 text document of `key = value` sections:
//!
//! ```text
//! field = "QQ"            # or "GF(<p>)"
//! vars = [x, y]
//! f = "x*y"
//! A = [["x"]]
//! B = [["y"]]
//! s = [0]                 # optional
//! t = [1]                 # optional
//! ```
//!
//! Polynomial entries use the expression grammar from `parse`. When `s` and
//! `t` are omitted they are inferred from entry degrees if a consistent
//! assignment exists (normalized so that `min s = 0`); otherwise the file is
//! rejected. `#` starts a comment running to end of line.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::mf::MatrixFactorization;
use crate::parse::parse_poly;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "format error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Str(String, usize),
    Int(i64),
    List(Vec<Value>, usize),
    Ident(String, usize),
}

struct Scanner<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, message: impl Into<String>) -> FormatError {
        FormatError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        loop {
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.input.len() && self.input[self.pos] == b'#' {
                while self.pos < self.input.len() && self.input[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), FormatError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), FormatError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.input.len() || !self.input[self.pos].is_ascii_alphabetic() {
            return Err(self.err("expected an identifier"));
        }
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok((
            std::str::from_utf8(&self.input[start..self.pos]).unwrap().to_string(),
            start,
        ))
    }

    fn value(&mut self) -> Result<Value, FormatError> {
        match self.peek() {
            Some(b'"') => {
                let start = self.pos;
                self.pos += 1;
                let content_start = self.pos;
                while self.pos < self.input.len() && self.input[self.pos] != b'"' {
                    self.pos += 1;
                }
                if self.pos == self.input.len() {
                    return Err(FormatError { offset: start, message: "unterminated string".into() });
                }
                let s = std::str::from_utf8(&self.input[content_start..self.pos])
                    .map_err(|_| self.err("string is not valid UTF-8"))?
                    .to_string();
                self.pos += 1;
                Ok(Value::Str(s, content_start))
            }
            Some(b'[') => {
                let start = self.pos;
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(b']') {
                    self.pos += 1;
                    return Ok(Value::List(items, start));
                }
                loop {
                    items.push(self.value()?);
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                        }
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Value::List(items, start));
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let start = self.pos;
                if c == b'-' {
                    self.pos += 1;
                }
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                text.parse::<i64>()
                    .map(Value::Int)
                    .map_err(|_| FormatError { offset: start, message: "bad integer".into() })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (name, at) = self.ident()?;
                Ok(Value::Ident(name, at))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

fn parse_field(value: &Value) -> Result<FieldSpec, FormatError> {
    let (text, at) = match value {
        Value::Str(s, at) => (s.as_str(), *at),
        _ => return Err(FormatError { offset: 0, message: "field must be a string".into() }),
    };
    if text == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = text.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = rest
            .parse()
            .map_err(|_| FormatError { offset: at, message: format!("bad modulus '{rest}'") })?;
        return FieldSpec::prime(p).map_err(|e| FormatError { offset: at, message: e.to_string() });
    }
    Err(FormatError { offset: at, message: format!("unknown field '{text}' (expected QQ or GF(p))") })
}

fn parse_matrix(
    value: &Value,
    vars: &[String],
    field: FieldSpec,
    name: &str,
) -> Result<PolyMatrix, FormatError> {
    let Value::List(rows, at) = value else {
        return Err(FormatError { offset: 0, message: format!("{name} must be a list of rows") });
    };
    let mut parsed: Vec<Vec<Polynomial>> = Vec::new();
    for row in rows {
        let Value::List(entries, _) = row else {
            return Err(FormatError { offset: *at, message: format!("{name} rows must be lists") });
        };
        let mut prow = Vec::new();
        for entry in entries {
            let Value::Str(text, entry_at) = entry else {
                return Err(FormatError {
                    offset: *at,
                    message: format!("{name} entries must be quoted expressions"),
                });
            };
            let poly = parse_poly(text, vars, field).map_err(|e| FormatError {
                offset: entry_at + e.offset,
                message: format!("in {name} entry: {}", e.message),
            })?;
            prow.push(poly);
        }
        parsed.push(prow);
    }
    let ncols = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != ncols) {
        return Err(FormatError { offset: *at, message: format!("{name} rows have unequal lengths") });
    }
    PolyMatrix::from_rows(field, vars.len(), parsed)
        .map_err(|e| FormatError { offset: *at, message: e.to_string() })
}

fn parse_int_list(value: &Value, name: &str) -> Result<Vec<i64>, FormatError> {
    let Value::List(items, at) = value else {
        return Err(FormatError { offset: 0, message: format!("{name} must be a list of integers") });
    };
    items
        .iter()
        .map(|v| match v {
            Value::Int(i) => Ok(*i),
            _ => Err(FormatError { offset: *at, message: format!("{name} must contain integers") }),
        })
        .collect()
}

/// Parses a factorization document. Twists are inferred when absent.
pub fn parse_mf(text: &str) -> Result<MatrixFactorization, FormatError> {
    let mut scanner = Scanner { input: text.as_bytes(), pos: 0 };
    let mut sections: BTreeMap<String, Value> = BTreeMap::new();
    loop {
        scanner.skip_ws();
        if scanner.pos == scanner.input.len() {
            break;
        }
        let (key, at) = scanner.ident()?;
        scanner.expect(b'=')?;
        let value = scanner.value()?;
        if sections.insert(key.clone(), value).is_some() {
            return Err(FormatError { offset: at, message: format!("duplicate section '{key}'") });
        }
    }

    let get = |key: &str| {
        sections
            .get(key)
            .ok_or_else(|| FormatError { offset: 0, message: format!("missing section '{key}'") })
    };

    let field = parse_field(get("field")?)?;
    let vars: Vec<String> = match get("vars")? {
        Value::List(items, at) => {
            let mut out = Vec::new();
            for item in items {
                match item {
                    Value::Ident(name, _) => out.push(name.clone()),
                    _ => {
                        return Err(FormatError {
                            offset: *at,
                            message: "vars must be identifiers".into(),
                        })
                    }
                }
            }
            out
        }
        _ => return Err(FormatError { offset: 0, message: "vars must be a list".into() }),
    };
    {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(FormatError { offset: 0, message: format!("duplicate variable '{v}'") });
            }
        }
    }

    let f = match get("f")? {
        Value::Str(text, at) => parse_poly(text, &vars, field).map_err(|e| FormatError {
            offset: at + e.offset,
            message: format!("in f: {}", e.message),
        })?,
        _ => return Err(FormatError { offset: 0, message: "f must be a quoted expression".into() }),
    };

    let a = parse_matrix(get("A")?, &vars, field, "A")?;
    let b = parse_matrix(get("B")?, &vars, field, "B")?;

    let (s, t) = match (sections.get("s"), sections.get("t")) {
        (Some(sv), Some(tv)) => (parse_int_list(sv, "s")?, parse_int_list(tv, "t")?),
        (None, None) => infer_twists(&a, &b, &f).ok_or_else(|| FormatError {
            offset: 0,
            message: "no consistent twist assignment exists for the given entries".into(),
        })?,
        _ => {
            return Err(FormatError {
                offset: 0,
                message: "sections s and t must be given together or both omitted".into(),
            })
        }
    };

    Ok(MatrixFactorization::new(field, vars, f, a, b, s, t))
}

/// Infers twist sequences from entry degrees: `deg A[i][j] = t[j] - s[i]`,
/// `deg B[i][j] = e + s[j] - t[i]`. Connected components of the constraint
/// graph are pinned at zero and the whole assignment is then shifted so the
/// minimum of `s` is zero. Returns `None` on inconsistency, inhomogeneous
/// entries, or inhomogeneous `f`.
pub fn infer_twists(a: &PolyMatrix, b: &PolyMatrix, f: &Polynomial) -> Option<(Vec<i64>, Vec<i64>)> {
    let r = a.rows;
    if a.cols != r || b.rows != r || b.cols != r {
        return None;
    }
    if r == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let e = f.homogeneous_degree()?;

    // Nodes 0..r are s_i, nodes r..2r are t_j.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); 2 * r];
    let edge = |u: usize, v: usize, d: i64, adj: &mut Vec<Vec<(usize, i64)>>| {
        adj[u].push((v, d));
        adj[v].push((u, -d));
    };
    for i in 0..r {
        for j in 0..r {
            let a_ij = a.entry(i, j);
            if !a_ij.is_zero() {
                let d = a_ij.homogeneous_degree()?;
                edge(i, r + j, d, &mut adj); // t_j = s_i + d
            }
            let b_ij = b.entry(i, j);
            if !b_ij.is_zero() {
                let d = b_ij.homogeneous_degree()?;
                edge(r + i, j, d - e, &mut adj); // s_j = t_i + (d - e)
            }
        }
    }

    let mut assigned: Vec<Option<i64>> = vec![None; 2 * r];
    for start in 0..2 * r {
        if assigned[start].is_some() {
            continue;
        }
        assigned[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let base = assigned[u].unwrap();
            for &(v, d) in &adj[u] {
                match assigned[v] {
                    None => {
                        assigned[v] = Some(base + d);
                        queue.push_back(v);
                    }
                    Some(existing) => {
                        if existing != base + d {
                            return None;
                        }
                    }
                }
            }
        }
    }

    let mut s: Vec<i64> = (0..r).map(|i| assigned[i].unwrap()).collect();
    let mut t: Vec<i64> = (0..r).map(|j| assigned[r + j].unwrap()).collect();
    let min_s = *s.iter().min().unwrap();
    for v in s.iter_mut().chain(t.iter_mut()) {
        *v -= min_s;
    }
    Some((s, t))
}

//! The Clifford+T subset of OpenQASM 2.0.
//!
//! Accepted: an optional `OPENQASM 2.0;` header, an optional
//! `include "qelib1.inc";`, exactly one `qreg`, and the statements
//! `h x z s sdg t tdg` (one operand) and `cx` (two operands). Anything else
//! is rejected with the line it appeared on.
//!
//! A comment of the form `// output_map: 1,0,2` sets the circuit's output
//! map; [`emit_qasm`] writes one whenever the map is not the identity.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};

/// Largest accepted register size.
pub const MAX_QREG: usize = 4096;

const OUTPUT_MAP_TAG: &str = "output_map:";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line_number}: {message} (at `{offending_token}`)")]
pub struct ParseError {
    pub line_number: usize,
    pub message: String,
    pub offending_token: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Punct(char),
    OutputMap(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => f.write_str(s),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Punct(c) => write!(f, "{c}"),
            Tok::OutputMap(s) => write!(f, "// {OUTPUT_MAP_TAG}{s}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
}

fn err(line: usize, message: impl Into<String>, token: impl fmt::Display) -> ParseError {
    ParseError {
        line_number: line,
        message: message.into(),
        offending_token: token.to_string(),
    }
}

fn lex(source: &str) -> Result<(Vec<Token>, usize), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut chars = source.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '/' if chars.peek() == Some(&'/') => {
                chars.next();
                let mut body = String::new();
                while let Some(c) = chars.next_if(|&c| c != '\n') {
                    body.push(c);
                }
                if let Some(rest) = body.trim().strip_prefix(OUTPUT_MAP_TAG) {
                    tokens.push(Token {
                        tok: Tok::OutputMap(rest.to_string()),
                        line,
                    });
                }
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(err(line, "unterminated string", format!("\"{s}")))
                        }
                        Some(c) => s.push(c),
                    }
                }
                tokens.push(Token {
                    tok: Tok::Str(s),
                    line,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::from(c);
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_alphanumeric() || n == '_' {
                        s.push(n);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Ident(s),
                    line,
                });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::from(c);
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_digit() || n == '.' {
                        s.push(n);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Number(s),
                    line,
                });
            }
            '[' | ']' | ',' | ';' | '(' | ')' | '{' | '}' | '-' | '>' => tokens.push(Token {
                tok: Tok::Punct(c),
                line,
            }),
            other => return Err(err(line, "unexpected character", other)),
        }
    }
    Ok((tokens, line))
}

struct Register {
    name: String,
    size: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof_line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| err(self.eof_line, "unexpected end of input", "<eof>"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_punct(&mut self, p: char) -> Result<Token, ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Punct(c) if c == p => Ok(t),
            _ => Err(err(t.line, format!("expected `{p}`"), &t.tok)),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line)),
            other => Err(err(t.line, "expected an identifier", other)),
        }
    }

    fn expect_index(&mut self) -> Result<(usize, usize), ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Number(s) => s
                .parse::<usize>()
                .map(|n| (n, t.line))
                .map_err(|_| err(t.line, "expected a non-negative integer", &t.tok)),
            other => Err(err(t.line, "expected a non-negative integer", other)),
        }
    }

    /// `name[index]` against the declared register.
    fn operand(&mut self, reg: &Register) -> Result<usize, ParseError> {
        let (name, line) = self.expect_ident()?;
        if name != reg.name {
            return Err(err(line, "unknown register", name));
        }
        self.expect_punct('[')?;
        let (index, line) = self.expect_index()?;
        self.expect_punct(']')?;
        if index >= reg.size {
            return Err(err(
                line,
                format!("index out of range for {}[{}]", reg.name, reg.size),
                index,
            ));
        }
        Ok(index)
    }
}

fn parse_output_map(text: &str, line: usize, lines: usize) -> Result<Vec<usize>, ParseError> {
    let map = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| err(line, "malformed output map", text.trim()))?;
    let mut seen = vec![false; lines];
    let valid = map.len() == lines
        && map
            .iter()
            .all(|&v| v < lines && !std::mem::replace(&mut seen[v], true));
    if !valid {
        return Err(err(
            line,
            format!("output map is not a permutation of 0..{lines}"),
            text.trim(),
        ));
    }
    Ok(map)
}

pub fn parse_qasm(source: &str) -> Result<Circuit, ParseError> {
    let (tokens, eof_line) = lex(source)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        eof_line,
    };
    let mut reg: Option<Register> = None;
    let mut circuit: Option<Circuit> = None;
    let mut output_map: Option<(String, usize)> = None;
    let mut first = true;

    while let Some(t) = p.peek().cloned() {
        let is_first = std::mem::replace(&mut first, false);
        let (word, line) = match t.tok {
            Tok::Ident(w) => (w, t.line),
            Tok::OutputMap(text) => {
                p.pos += 1;
                if output_map.is_some() {
                    return Err(err(t.line, "duplicate output map", Tok::OutputMap(text)));
                }
                output_map = Some((text, t.line));
                first = is_first;
                continue;
            }
            other => return Err(err(t.line, "expected a statement", other)),
        };
        p.pos += 1;
        match word.as_str() {
            "OPENQASM" => {
                if !is_first {
                    return Err(err(line, "OPENQASM header must come first", word));
                }
                let v = p.next()?;
                if v.tok != Tok::Number("2.0".into()) {
                    return Err(err(v.line, "only OpenQASM 2.0 is supported", &v.tok));
                }
                p.expect_punct(';')?;
            }
            "include" => {
                let f = p.next()?;
                match &f.tok {
                    Tok::Str(s) if s == "qelib1.inc" => {}
                    other => return Err(err(f.line, "unsupported include", other)),
                }
                p.expect_punct(';')?;
            }
            "qreg" => {
                if reg.is_some() {
                    return Err(err(
                        line,
                        "second qreg (only one register is supported)",
                        word,
                    ));
                }
                let (name, _) = p.expect_ident()?;
                p.expect_punct('[')?;
                let (size, size_line) = p.expect_index()?;
                p.expect_punct(']')?;
                p.expect_punct(';')?;
                if !(1..=MAX_QREG).contains(&size) {
                    return Err(err(
                        size_line,
                        format!("register size must be in 1..={MAX_QREG}"),
                        size,
                    ));
                }
                circuit = Some(Circuit::new(size).expect("size >= 1"));
                reg = Some(Register { name, size });
            }
            "creg" | "measure" | "barrier" | "reset" | "if" | "gate" | "opaque" | "U" | "CX" => {
                return Err(err(line, format!("unsupported construct `{word}`"), word));
            }
            name => {
                let Some(kind) = GateKind::from_qasm_name(name) else {
                    return Err(err(line, format!("unknown gate `{name}`"), name));
                };
                let (Some(r), Some(c)) = (reg.as_ref(), circuit.as_mut()) else {
                    return Err(err(line, "gate before qreg declaration", name));
                };
                let mut qubits = vec![p.operand(r)?];
                for _ in 1..kind.arity() {
                    p.expect_punct(',')?;
                    qubits.push(p.operand(r)?);
                }
                p.expect_punct(';')?;
                let gate = Gate::new(kind, &qubits).map_err(|e| match e {
                    crate::circuit::CircuitError::ControlEqualsTarget(_) => {
                        err(line, "control equals target", name)
                    }
                    other => err(line, other.to_string(), name),
                })?;
                c.push(gate).expect("operands checked against register");
            }
        }
    }

    let circuit = circuit.ok_or_else(|| err(eof_line, "missing qreg declaration", "<eof>"))?;
    match output_map {
        None => Ok(circuit),
        Some((text, line)) => {
            let map = parse_output_map(&text, line, circuit.lines())?;
            Ok(circuit.with_output_map(map).expect("validated above"))
        }
    }
}

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.lines());
    for g in c.gates() {
        match g.qubits() {
            [q] => {
                let _ = writeln!(out, "{} q[{q}];", g.kind());
            }
            [ctl, tgt] => {
                let _ = writeln!(out, "cx q[{ctl}],q[{tgt}];");
            }
            _ => unreachable!(),
        }
    }
    if !c.has_identity_output_map() {
        let map: Vec<String> = c.output_map().iter().map(|o| o.to_string()).collect();
        let _ = writeln!(out, "// {OUTPUT_MAP_TAG} {}", map.join(","));
    }
    out
}

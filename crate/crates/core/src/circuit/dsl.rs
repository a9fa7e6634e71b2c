//! Line-oriented circuit language.
//!
//! ```text
//! # Bell state from |00>
//! qubits 2
//! symbols alpha beta        # conjugates are written alpha~, beta~
//! labels a b
//! state |00>
//! apply LL1 0 1
//! apply STAR a
//! project 0 1
//! expect |01> + |10>
//! ```
//!
//! `qubits` must come first. Targets are zero-based indices or labels.
//! Without a `state` line the register starts in `|0…0>`.

use thiserror::Error;

use super::{Circuit, Instruction};
use crate::gates::Gate;
use crate::ket::{Ket, MAX_QUBITS};
use crate::symbolic::{is_valid_identifier, SymbolTable};
use crate::syntax::parse_ket;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A whitespace-delimited word and its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    col: usize,
}

fn words(line: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col0, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, col0 + 1)),
            (true, Some((b, c))) => {
                out.push(Word { text: &line[b..byte], col: c });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push(Word { text: &line[b..], col: c });
    }
    out
}

struct LineParser<'a> {
    line_no: usize,
    line: &'a str,
}

impl LineParser<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line_no, column, message: message.into() }
    }

    /// Text after the keyword, with its starting column.
    fn rest_after(&self, keyword: Word<'_>) -> (&str, usize) {
        let skip = keyword.col - 1 + keyword.text.chars().count();
        let tail: String = self.line.chars().skip(skip).collect();
        let lead = tail.chars().take_while(|c| c.is_whitespace()).count();
        let byte = self.line.char_indices().nth(skip + lead).map_or(self.line.len(), |(b, _)| b);
        (&self.line[byte..], skip + lead + 1)
    }
}

struct Builder {
    n_qubits: Option<usize>,
    labels: Option<Vec<String>>,
    symbols: SymbolTable,
    initial: Option<Ket>,
    instructions: Vec<Instruction>,
}

impl Builder {
    fn n(&self) -> usize {
        self.n_qubits.expect("qubits directive seen")
    }

    fn target(&self, lp: &LineParser<'_>, w: Word<'_>) -> Result<usize, ParseError> {
        let n = self.n();
        if let Ok(q) = w.text.parse::<usize>() {
            if q >= n {
                return Err(lp.err(w.col, format!("qubit {q} out of range for {n} qubits")));
            }
            return Ok(q);
        }
        self.labels
            .as_ref()
            .and_then(|ls| ls.iter().position(|l| l == w.text))
            .ok_or_else(|| lp.err(w.col, format!("unknown qubit '{}'", w.text)))
    }

    fn targets(&self, lp: &LineParser<'_>, ws: &[Word<'_>]) -> Result<Vec<usize>, ParseError> {
        let mut out: Vec<usize> = Vec::with_capacity(ws.len());
        for &w in ws {
            let q = self.target(lp, w)?;
            if out.contains(&q) {
                return Err(lp.err(w.col, format!("duplicate target qubit {q}")));
            }
            out.push(q);
        }
        Ok(out)
    }

    fn ket(&self, lp: &LineParser<'_>, text: &str, col: usize) -> Result<Ket, ParseError> {
        parse_ket(text, &self.symbols, Some(self.n())).map_err(|e| lp.err(col + e.column - 1, e.message))
    }
}

/// Parses circuit text into a validated [`Circuit`].
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut b = Builder {
        n_qubits: None,
        labels: None,
        symbols: SymbolTable::new(),
        initial: None,
        instructions: Vec::new(),
    };
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let lp = LineParser { line_no: idx + 1, line };
        last_line = idx + 1;
        let ws = words(line);
        let Some(&head) = ws.first() else { continue };
        let args = &ws[1..];

        if b.n_qubits.is_none() && head.text != "qubits" {
            return Err(lp.err(head.col, "expected 'qubits N' before any other directive"));
        }

        match head.text {
            "qubits" => {
                if b.n_qubits.is_some() {
                    return Err(lp.err(head.col, "duplicate 'qubits' directive"));
                }
                let [w] = args else {
                    return Err(lp.err(head.col, "'qubits' takes exactly one count"));
                };
                match w.text.parse::<usize>() {
                    Ok(n) if (1..=MAX_QUBITS).contains(&n) => b.n_qubits = Some(n),
                    _ => return Err(lp.err(w.col, format!("qubit count must be 1..={MAX_QUBITS}, got '{}'", w.text))),
                }
            }
            "symbols" => {
                if args.is_empty() {
                    return Err(lp.err(head.col, "'symbols' needs at least one name"));
                }
                for w in args {
                    b.symbols.declare(w.text).map_err(|e| lp.err(w.col, e.to_string()))?;
                }
            }
            "labels" => {
                if b.labels.is_some() {
                    return Err(lp.err(head.col, "duplicate 'labels' directive"));
                }
                if args.len() != b.n() {
                    return Err(lp.err(head.col, format!("expected {} labels, got {}", b.n(), args.len())));
                }
                let mut labels: Vec<String> = Vec::new();
                for w in args {
                    if !is_valid_identifier(w.text) {
                        return Err(lp.err(w.col, format!("invalid label '{}'", w.text)));
                    }
                    if labels.iter().any(|l| l == w.text) {
                        return Err(lp.err(w.col, format!("duplicate label '{}'", w.text)));
                    }
                    labels.push(w.text.to_string());
                }
                b.labels = Some(labels);
            }
            "state" => {
                if b.initial.is_some() {
                    return Err(lp.err(head.col, "duplicate 'state' directive"));
                }
                if !b.instructions.is_empty() {
                    return Err(lp.err(head.col, "'state' must precede all instructions"));
                }
                let (rest, col) = lp.rest_after(head);
                b.initial = Some(b.ket(&lp, rest, col)?);
            }
            "apply" => {
                let Some((g, ts)) = args.split_first() else {
                    return Err(lp.err(head.col, "'apply' needs a gate name"));
                };
                let gate: Gate = g.text.parse().map_err(|e: crate::gates::UnknownGate| lp.err(g.col, e.to_string()))?;
                if ts.len() != gate.arity() {
                    let noun = if gate.arity() == 1 { "target" } else { "targets" };
                    return Err(lp.err(g.col, format!("gate {gate} needs {} {noun}", gate.arity())));
                }
                let targets = b.targets(&lp, ts)?;
                b.instructions.push(Instruction::Apply { gate, targets });
            }
            "project" => {
                let Some((bits, ts)) = args.split_first() else {
                    return Err(lp.err(head.col, "'project' needs a bitstring"));
                };
                if bits.text.is_empty() || !bits.text.chars().all(|c| c == '0' || c == '1') {
                    return Err(lp.err(bits.col, format!("invalid bitstring '{}'", bits.text)));
                }
                if ts.len() != bits.text.len() {
                    return Err(lp.err(
                        bits.col,
                        format!("bitstring '{}' needs {} targets, got {}", bits.text, bits.text.len(), ts.len()),
                    ));
                }
                let targets = b.targets(&lp, ts)?;
                b.instructions.push(Instruction::Project { bits: bits.text.to_string(), targets });
            }
            "expect" => {
                let (rest, col) = lp.rest_after(head);
                let k = b.ket(&lp, rest, col)?;
                b.instructions.push(Instruction::Expect(k));
            }
            other => return Err(lp.err(head.col, format!("unknown directive '{other}'"))),
        }
    }

    let Some(n_qubits) = b.n_qubits else {
        return Err(ParseError { line: last_line.max(1), column: 1, message: "missing 'qubits N' directive".into() });
    };
    let initial = match b.initial.take() {
        Some(k) => k,
        None => Ket::basis(n_qubits, 0).expect("validated qubit count"),
    };
    Ok(Circuit { n_qubits, labels: b.labels, symbols: b.symbols, initial, instructions: b.instructions })
}

/// Canonical circuit text; `parse_circuit(&render(c)) == c`.
pub fn render(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits);
    if !c.symbols.is_empty() {
        out.push_str(&format!("symbols {}\n", c.symbols.names().join(" ")));
    }
    if let Some(labels) = &c.labels {
        out.push_str(&format!("labels {}\n", labels.join(" ")));
    }
    out.push_str(&format!("state {}\n", c.initial));
    for ins in &c.instructions {
        out.push_str(&ins.to_string());
        out.push('\n');
    }
    out
}

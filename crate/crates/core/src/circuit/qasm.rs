//! A deliberately small OpenQASM 2 reader: one `qreg`, the eleven
//! supported gates, and angles written as `pi/k`, `m*pi/k` or decimal
//! radians. Everything else is rejected.

use thiserror::Error;

use super::{Circuit, Gate};
use crate::phase::Phase;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QasmError {
    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { name: String, line: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: qubit index {index} out of range for register of size {size}")]
    Index { line: usize, index: usize, size: usize },
}

fn parse_err(line: usize, msg: impl Into<String>) -> QasmError {
    QasmError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses QASM text into a circuit. Line numbers in errors are 1-based and
/// point at the line where the offending statement starts.
pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    let mut parser = Parser { register: None, circuit: Circuit::new(0) };
    let mut stmt = String::new();
    let mut stmt_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = raw.split("//").next().unwrap_or("");
        for ch in code.chars() {
            if ch == ';' {
                parser.statement(stmt.trim(), stmt_line)?;
                stmt.clear();
            } else {
                if stmt.trim().is_empty() && !ch.is_whitespace() {
                    stmt_line = line_no;
                }
                stmt.push(ch);
            }
        }
        stmt.push(' ');
    }
    if !stmt.trim().is_empty() {
        return Err(parse_err(stmt_line, "statement is missing a terminating `;`"));
    }
    Ok(parser.circuit)
}

struct Parser {
    register: Option<(String, usize)>,
    circuit: Circuit,
}

impl Parser {
    fn statement(&mut self, s: &str, line: usize) -> Result<(), QasmError> {
        if s.is_empty() || s.starts_with("OPENQASM") || s.starts_with("include") {
            return Ok(());
        }
        if let Some(rest) = s.strip_prefix("qreg") {
            if self.register.is_some() {
                return Err(parse_err(line, "only one qreg is supported"));
            }
            let (name, size) = parse_operand(rest.trim(), line)?;
            self.register = Some((name.to_string(), size));
            self.circuit = Circuit::new(size);
            return Ok(());
        }
        if s.starts_with("creg") {
            return Err(parse_err(line, "classical registers are not supported"));
        }

        let name_end = s
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(s.len());
        let name = &s[..name_end];
        if name.is_empty() {
            return Err(parse_err(line, format!("cannot parse statement `{s}`")));
        }
        if !Gate::NAMES.contains(&name) {
            return Err(QasmError::UnsupportedGate {
                name: name.to_string(),
                line,
            });
        }
        let mut rest = s[name_end..].trim_start();
        let mut angle = None;
        if let Some(after) = rest.strip_prefix('(') {
            let close = after
                .find(')')
                .ok_or_else(|| parse_err(line, "unbalanced parenthesis"))?;
            angle = Some(parse_angle(&after[..close]).ok_or_else(|| {
                parse_err(line, format!("cannot parse angle `{}`", &after[..close]))
            })?);
            rest = after[close + 1..].trim_start();
        }
        let needs_angle = matches!(name, "rz" | "rx");
        if needs_angle != angle.is_some() {
            return Err(parse_err(
                line,
                if needs_angle {
                    format!("{name} needs an angle")
                } else {
                    format!("{name} takes no angle")
                },
            ));
        }

        let (reg, size) = self
            .register
            .clone()
            .ok_or_else(|| parse_err(line, "gate used before qreg declaration"))?;
        let mut qubits = Vec::new();
        for op in rest.split(',') {
            let (r, idx) = parse_operand(op.trim(), line)?;
            if r != reg {
                return Err(parse_err(line, format!("unknown register `{r}`")));
            }
            if idx >= size {
                return Err(QasmError::Index { line, index: idx, size });
            }
            qubits.push(idx);
        }
        let arity = if matches!(name, "cx" | "cz") { 2 } else { 1 };
        if qubits.len() != arity {
            return Err(parse_err(line, format!("{name} takes {arity} operand(s)")));
        }
        if arity == 2 && qubits[0] == qubits[1] {
            return Err(parse_err(line, format!("{name} uses the same qubit twice")));
        }
        let q = qubits[0];
        let gate = match name {
            "h" => Gate::H(q),
            "x" => Gate::X(q),
            "z" => Gate::Z(q),
            "s" => Gate::S(q),
            "sdg" => Gate::Sdg(q),
            "t" => Gate::T(q),
            "tdg" => Gate::Tdg(q),
            "rz" => Gate::Rz(q, angle.expect("checked")),
            "rx" => Gate::Rx(q, angle.expect("checked")),
            "cx" => Gate::Cx(q, qubits[1]),
            "cz" => Gate::Cz(q, qubits[1]),
            _ => unreachable!("name checked against Gate::NAMES"),
        };
        self.circuit
            .push(gate)
            .map_err(|e| parse_err(line, e.to_string()))
    }
}

/// `name[index]`.
fn parse_operand(s: &str, line: usize) -> Result<(&str, usize), QasmError> {
    let bad = || parse_err(line, format!("expected `reg[index]`, found `{s}`"));
    let open = s.find('[').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let name = s[..open].trim();
    if name.is_empty() {
        return Err(bad());
    }
    let idx = inner.trim().parse().map_err(|_| bad())?;
    Ok((name, idx))
}

/// `pi`, `-pi/4`, `3*pi/4`, `2*pi` become exact phases; decimal literals
/// become inexact radians.
fn parse_angle(s: &str) -> Option<Phase> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.contains("pi") {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.as_str()),
        };
        let (mult, tail) = match body.split_once("pi") {
            Some(("", tail)) => (1, tail),
            Some((m, tail)) => (m.strip_suffix('*')?.parse::<i64>().ok()?, tail),
            None => return None,
        };
        let denom = match tail {
            "" => 1,
            _ => tail.strip_prefix('/')?.parse::<i64>().ok()?,
        };
        if denom <= 0 {
            return None;
        }
        let numer = if neg { -mult } else { mult };
        Some(Phase::exact(numer, denom))
    } else {
        let x: f64 = t.parse().ok()?;
        x.is_finite().then(|| Phase::from_radians(x))
    }
}

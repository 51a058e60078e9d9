//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! qubits 3
//! h q1
//! cx q1 q2
//! measure q0
//! ```
//!
//! Mnemonics are case-insensitive; [`format`] emits lowercase.

use std::fmt;

use thiserror::Error;

use super::{Circuit, Instruction};
use crate::gates::GateKind;
use crate::qmath::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based source line.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    DuplicateHeader,
    BadQubitCount(String),
    UnknownMnemonic(String),
    MalformedQubit(String),
    QubitOutOfRange {
        index: usize,
        declared: usize,
    },
    WrongArity {
        mnemonic: String,
        expected: usize,
        found: usize,
    },
    SameControlTarget(usize),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => f.write_str("missing `qubits <N>` header"),
            ParseErrorKind::DuplicateHeader => f.write_str("`qubits` header given twice"),
            ParseErrorKind::BadQubitCount(s) => {
                write!(f, "qubit count `{s}` is not an integer in 1..={MAX_QUBITS}")
            }
            ParseErrorKind::UnknownMnemonic(m) => write!(f, "unknown mnemonic `{m}`"),
            ParseErrorKind::MalformedQubit(t) => write!(f, "malformed qubit token `{t}`"),
            ParseErrorKind::QubitOutOfRange { index, declared } => {
                write!(
                    f,
                    "qubit q{index} out of range for {declared} declared qubits"
                )
            }
            ParseErrorKind::WrongArity {
                mnemonic,
                expected,
                found,
            } => {
                write!(
                    f,
                    "`{mnemonic}` takes {expected} qubit operand(s), got {found}"
                )
            }
            ParseErrorKind::SameControlTarget(q) => {
                write!(f, "cx control and target are both q{q}")
            }
        }
    }
}

/// A parsed circuit plus the source line of each instruction.
#[derive(Debug, Clone)]
pub struct SpannedCircuit {
    pub circuit: Circuit,
    pub lines: Vec<usize>,
}

pub fn parse(source: &str) -> Result<Circuit, ParseError> {
    parse_spanned(source).map(|s| s.circuit)
}

pub fn parse_spanned(source: &str) -> Result<SpannedCircuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut lines = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, operands)) = tokens.split_first() else {
            continue;
        };
        let err = |kind| ParseError { line, kind };
        let head_lower = head.to_ascii_lowercase();

        if head_lower == "qubits" {
            if circuit.is_some() {
                return Err(err(ParseErrorKind::DuplicateHeader));
            }
            let n = match operands {
                [n] => n
                    .parse::<usize>()
                    .ok()
                    .filter(|n| (1..=MAX_QUBITS).contains(n))
                    .ok_or_else(|| err(ParseErrorKind::BadQubitCount(n.to_string())))?,
                _ => return Err(err(ParseErrorKind::BadQubitCount(operands.join(" ")))),
            };
            circuit = Some(Circuit::new(n).expect("count checked above"));
            continue;
        }

        let Some(circ) = circuit.as_mut() else {
            return Err(err(ParseErrorKind::MissingHeader));
        };
        let declared = circ.num_qubits();
        let qubit = |tok: &str| -> Result<usize, ParseError> {
            let index = tok
                .strip_prefix(['q', 'Q'])
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| err(ParseErrorKind::MalformedQubit(tok.to_string())))?;
            if index >= declared {
                return Err(err(ParseErrorKind::QubitOutOfRange { index, declared }));
            }
            Ok(index)
        };
        let arity = |expected: usize| -> Result<(), ParseError> {
            if operands.len() != expected {
                return Err(err(ParseErrorKind::WrongArity {
                    mnemonic: head_lower.clone(),
                    expected,
                    found: operands.len(),
                }));
            }
            Ok(())
        };

        let instr = match head_lower.as_str() {
            "measure" => {
                arity(1)?;
                Instruction::MeasureZ(qubit(operands[0])?)
            }
            "bloch" => {
                arity(1)?;
                Instruction::BlochMeasure(qubit(operands[0])?)
            }
            "cx" => {
                arity(2)?;
                let (control, target) = (qubit(operands[0])?, qubit(operands[1])?);
                if control == target {
                    return Err(err(ParseErrorKind::SameControlTarget(control)));
                }
                Instruction::Cnot { control, target }
            }
            other => {
                let kind = other
                    .parse::<GateKind>()
                    .ok()
                    .filter(|g| g.is_single_qubit())
                    .ok_or_else(|| err(ParseErrorKind::UnknownMnemonic(head.to_string())))?;
                arity(1)?;
                Instruction::Gate1 {
                    kind,
                    q: qubit(operands[0])?,
                }
            }
        };
        circ.push(instr).expect("operands checked above");
        lines.push(line);
    }

    match circuit {
        Some(circuit) => Ok(SpannedCircuit { circuit, lines }),
        None => Err(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::MissingHeader,
        }),
    }
}

/// Canonical text: header line then one lowercase instruction per line.
pub fn format(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.num_qubits());
    for instr in c.instructions() {
        out.push_str(&instr.to_string());
        out.push('\n');
    }
    out
}

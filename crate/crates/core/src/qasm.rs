// SPDX-License-Identifier: Apache-2.0

//! OpenQASM 2.0 export and import, restricted to `x`, `cx` and `ccx` on a
//! single register `q`.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("cannot export a gate with {controls} controls or negative polarity; lower it first")]
    UnloweredMct { controls: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// Renders the circuit; output is a pure function of the gate list.
pub fn export_qasm(circuit: &Circuit) -> Result<String, QasmError> {
    let mut out = String::from(HEADER);
    out.push_str(&format!("qreg q[{}];\n", circuit.lines()));
    for g in circuit.gates() {
        let c = g.controls();
        let line = match g.kind() {
            GateKind::Not => format!("x q[{}];\n", g.target()),
            GateKind::Cnot => format!("cx q[{}],q[{}];\n", c[0].line, g.target()),
            GateKind::Toffoli => {
                format!("ccx q[{}],q[{}],q[{}];\n", c[0].line, c[1].line, g.target())
            }
            GateKind::Mct => return Err(QasmError::UnloweredMct { controls: c.len() }),
        };
        out.push_str(&line);
    }
    Ok(out)
}

fn parse_qubit(arg: &str, line: usize) -> Result<usize, QasmError> {
    let err = || QasmError::Parse {
        line,
        message: format!("expected q[<index>], found {arg:?}"),
    };
    let inner = arg
        .trim()
        .strip_prefix('q')
        .map(str::trim_start)
        .and_then(|s| s.strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(err)?;
    inner.trim().parse().map_err(|_| err())
}

/// Parses the subset written by [`export_qasm`]. Blank lines and `//`
/// comments are ignored. The first `data_width` lines of the register are
/// data lines and the rest are ancillas; `None` treats every line as data.
pub fn parse_qasm(text: &str, data_width: Option<usize>) -> Result<Circuit, QasmError> {
    let mut seen_header = false;
    let mut register: Option<usize> = None;
    let mut gates = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split("//").next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |message: String| QasmError::Parse { line, message };
        let Some(stmt) = content.strip_suffix(';') else {
            return Err(perr("missing ';'".into()));
        };
        let stmt = stmt.trim();
        if !seen_header {
            if stmt.split_whitespace().collect::<Vec<_>>() != ["OPENQASM", "2.0"] {
                return Err(perr("expected `OPENQASM 2.0;` header".into()));
            }
            seen_header = true;
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("include") {
            if rest.trim() != "\"qelib1.inc\"" {
                return Err(perr(format!("unsupported include {}", rest.trim())));
            }
            continue;
        }
        let (op, args) = stmt
            .split_once(char::is_whitespace)
            .ok_or_else(|| perr(format!("unrecognized statement {stmt:?}")))?;
        if op == "qreg" {
            if register.is_some() {
                return Err(perr("only one qreg is supported".into()));
            }
            register = Some(parse_qubit(args, line)?);
            continue;
        }
        let Some(size) = register else {
            return Err(perr("gate before qreg declaration".into()));
        };
        let qubits = args
            .split(',')
            .map(|a| parse_qubit(a, line))
            .collect::<Result<Vec<_>, _>>()?;
        let arity = match op {
            "x" => 1,
            "cx" => 2,
            "ccx" => 3,
            other => return Err(perr(format!("unsupported gate {other:?}"))),
        };
        if qubits.len() != arity {
            return Err(perr(format!(
                "{op} takes {arity} operands, found {}",
                qubits.len()
            )));
        }
        if let Some(&q) = qubits.iter().find(|&&q| q >= size) {
            return Err(perr(format!("q[{q}] outside register of size {size}")));
        }
        let (target, controls) = qubits.split_last().unwrap();
        let gate = Gate::new(
            *target,
            controls
                .iter()
                .map(|&l| crate::circuit::Control {
                    line: l,
                    polarity: Polarity::Positive,
                })
                .collect(),
        )
        .map_err(|e| perr(e.to_string()))?;
        gates.push(gate);
    }

    if !seen_header {
        return Err(QasmError::Parse {
            line: 1,
            message: "empty input".into(),
        });
    }
    let size = register.ok_or(QasmError::Parse {
        line: text.lines().count(),
        message: "missing qreg declaration".into(),
    })?;
    let data = data_width.unwrap_or(size);
    if data > size {
        return Err(QasmError::Parse {
            line: text.lines().count(),
            message: format!("register of size {size} cannot hold {data} data lines"),
        });
    }
    Ok(Circuit::new(data, size - data, gates).expect("operands checked against register"))
}

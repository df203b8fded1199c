// SPDX-License-Identifier: Apache-2.0

//! Computational-basis simulation of circuits.

use std::fmt;

use thiserror::Error;

use crate::boolfn::{format_bits, BitWord, ReversibleFunction};
use crate::circuit::{Circuit, Gate, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("gate touches line {line} but the state has {width} lines")]
    LineOutOfRange { line: usize, width: usize },
    #[error("input width {found} does not match circuit data width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("input {input}: ancillas ended at {ancillas} instead of all zero")]
    AncillaNotRestored { input: String, ancillas: String },
}

/// Values of every line during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimState {
    width: usize,
    bits: u64,
}

impl SimState {
    pub fn new(width: usize, bits: u64) -> Self {
        assert!(width <= 64, "at most 64 lines");
        Self { width, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn line(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }
}

impl fmt::Display for SimState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if self.line(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn apply_gate(state: SimState, gate: &Gate) -> Result<SimState, SimError> {
    let line = gate.max_line();
    if line >= state.width {
        return Err(SimError::LineOutOfRange {
            line,
            width: state.width,
        });
    }
    let fires = gate
        .controls()
        .iter()
        .all(|c| state.line(c.line) == (c.polarity == Polarity::Positive));
    Ok(if fires {
        SimState {
            bits: state.bits ^ 1 << gate.target(),
            ..state
        }
    } else {
        state
    })
}

/// Gate precompiled to masks: fires when `bits & care == want`.
struct Compiled {
    care: u64,
    want: u64,
    flip: u64,
}

fn compile(circuit: &Circuit) -> Vec<Compiled> {
    circuit
        .gates()
        .iter()
        .map(|g| {
            let mut care = 0;
            let mut want = 0;
            for c in g.controls() {
                care |= 1 << c.line;
                if c.polarity == Polarity::Positive {
                    want |= 1 << c.line;
                }
            }
            Compiled {
                care,
                want,
                flip: 1 << g.target(),
            }
        })
        .collect()
}

fn run_compiled(program: &[Compiled], circuit: &Circuit, input: u32) -> Result<u32, SimError> {
    let n = circuit.data_width();
    let mut bits = u64::from(input);
    for g in program {
        if bits & g.care == g.want {
            bits ^= g.flip;
        }
    }
    let ancillas = bits >> n;
    if ancillas != 0 {
        return Err(SimError::AncillaNotRestored {
            input: format_bits(input, n),
            ancillas: format_bits(ancillas as u32, circuit.ancilla_count()),
        });
    }
    Ok(bits as u32)
}

/// Runs `input` through the circuit with ancillas starting at 0.
pub fn run(circuit: &Circuit, input: BitWord) -> Result<BitWord, SimError> {
    if input.width() != circuit.data_width() {
        return Err(SimError::WidthMismatch {
            expected: circuit.data_width(),
            found: input.width(),
        });
    }
    let out = run_compiled(&compile(circuit), circuit, input.value())?;
    Ok(BitWord::new(circuit.data_width(), out).expect("ancilla bits were checked"))
}

/// Output word for every input, in input order.
pub fn permutation_of(circuit: &Circuit) -> Result<Vec<BitWord>, SimError> {
    let n = circuit.data_width();
    assert!(n <= crate::boolfn::MAX_WIDTH, "data width too large");
    let program = compile(circuit);
    (0..1u32 << n)
        .map(|x| {
            run_compiled(&program, circuit, x)
                .map(|y| BitWord::new(n, y).expect("ancilla bits were checked"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Counterexample {
        input: BitWord,
        got: BitWord,
        expected: BitWord,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => f.write_str("equal"),
            Verdict::Counterexample {
                input,
                got,
                expected,
            } => write!(
                f,
                "counterexample: input {input} gives {got}, expected {expected}"
            ),
        }
    }
}

/// Compares the circuit against `f` on every input, ascending.
pub fn verify(circuit: &Circuit, f: &ReversibleFunction) -> Result<Verdict, SimError> {
    let n = f.width();
    if circuit.data_width() != n {
        return Err(SimError::WidthMismatch {
            expected: n,
            found: circuit.data_width(),
        });
    }
    let program = compile(circuit);
    for x in 0..1u32 << n {
        let got = run_compiled(&program, circuit, x)?;
        let expected = f.apply(x);
        if got != expected {
            let word = |v| BitWord::new(n, v).unwrap();
            return Ok(Verdict::Counterexample {
                input: word(x),
                got: word(got),
                expected: word(expected),
            });
        }
    }
    Ok(Verdict::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{gray_to_binary_function, identity_function};
    use crate::circuit::{lower_mct, Control, Gate};

    fn bw(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn toffoli_action() {
        // Lines q2 q1 q0 printed MSB first; target is q0, controls q2 q1.
        let g = Gate::toffoli(2, 1, 0);
        let s = apply_gate(SimState::new(3, 0b110), &g).unwrap();
        assert_eq!(s.to_string(), "111");
        let cx = Gate::cnot(1, 0);
        assert_eq!(apply_gate(SimState::new(2, 0b00), &cx).unwrap().bits(), 0);
        assert!(matches!(
            apply_gate(SimState::new(2, 0), &Gate::toffoli(0, 1, 2)),
            Err(SimError::LineOutOfRange { line: 2, width: 2 })
        ));
        let neg = Gate::new(0, vec![Control::negative(1)]).unwrap();
        assert_eq!(apply_gate(SimState::new(2, 0b00), &neg).unwrap().bits(), 1);
    }

    #[test]
    fn toffoli_with_target_one_is_nand() {
        let g = Gate::toffoli(1, 2, 0);
        for a in 0..2u64 {
            for b in 0..2u64 {
                let s = SimState::new(3, a << 1 | b << 2 | 1);
                let out = apply_gate(s, &g).unwrap().line(0);
                assert_eq!(out, !(a == 1 && b == 1));
            }
        }
    }

    #[test]
    fn empty_and_not() {
        let c = Circuit::empty(3);
        assert_eq!(run(&c, bw("101")).unwrap(), bw("101"));
        let not = Circuit::new(1, 0, vec![Gate::not(0)]).unwrap();
        assert_eq!(permutation_of(&not).unwrap(), vec![bw("1"), bw("0")]);
        assert!(matches!(
            run(&c, bw("01")),
            Err(SimError::WidthMismatch { .. })
        ));
    }

    #[test]
    fn truncated_uncompute_is_caught() {
        let mct = Gate::new(0, (1..4).map(Control::positive).collect()).unwrap();
        let lowered = lower_mct(&Circuit::new(4, 0, vec![mct]).unwrap(), 2);
        let mut gates = lowered.gates().to_vec();
        gates.pop();
        let broken = Circuit::new(4, 1, gates).unwrap();
        let err = run(&broken, bw("1100")).unwrap_err();
        assert_eq!(
            err,
            SimError::AncillaNotRestored {
                input: "1100".into(),
                ancillas: "1".into()
            }
        );
        assert!(run(&broken, bw("0000")).is_ok());
    }

    #[test]
    fn verify_reports_first_mismatch() {
        let gray = gray_to_binary_function(4).unwrap();
        let id = identity_function(4).unwrap();
        assert_eq!(verify(&Circuit::empty(4), &id).unwrap(), Verdict::Equal);
        let v = verify(&Circuit::empty(4), &gray).unwrap();
        assert_eq!(
            v,
            Verdict::Counterexample {
                input: bw("0010"),
                got: bw("0010"),
                expected: bw("0011")
            }
        );
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Reversible Boolean functions on `n`-bit words.
//!
//! Bit `i` of a word holds `q_i`; `q_0` is the least significant bit. Words
//! are printed MSB-first (`q_{n-1} ... q_0`), the same column order as the
//! usual truth-table layout `q3 q2 q1 q0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported word width.
pub const MAX_WIDTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFnError {
    #[error("width {0} is out of range (expected 1..={MAX_WIDTH})")]
    WidthOutOfRange(usize),
    #[error("value {value} does not fit in {width} bits")]
    ValueOutOfRange { width: usize, value: u32 },
    #[error("line {line}: input row {input} appears more than once")]
    DuplicateInputRow { line: usize, input: String },
    #[error("input row {input} is missing")]
    MissingInputRow { input: String },
    #[error("line {line}: expected {expected} bits, found {found}")]
    WidthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("not bijective: inputs {first} and {second} both map to {output}")]
    NotBijective {
        first: String,
        second: String,
        output: String,
    },
    #[error("table has {found} rows, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn check_width(width: usize) -> Result<(), BoolFnError> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(BoolFnError::WidthOutOfRange(width))
    }
}

/// Formats the low `width` bits of `value` MSB-first.
pub fn format_bits(value: u32, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if value >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A fixed-width word of bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    width: u8,
    value: u32,
}

impl BitWord {
    pub fn new(width: usize, value: u32) -> Result<Self, BoolFnError> {
        check_width(width)?;
        if (value as u64) >> width != 0 {
            return Err(BoolFnError::ValueOutOfRange { width, value });
        }
        Ok(Self {
            width: width as u8,
            value,
        })
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn value(self) -> u32 {
        self.value
    }

    /// Value of `q_i`.
    pub fn bit(self, i: usize) -> bool {
        self.value >> i & 1 == 1
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(self.value, self.width()))
    }
}

impl FromStr for BitWord {
    type Err = BoolFnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let width = s.len();
        check_width(width)?;
        let mut value = 0u32;
        for ch in s.chars() {
            value <<= 1;
            match ch {
                '0' => {}
                '1' => value |= 1,
                other => {
                    return Err(BoolFnError::Syntax {
                        line: 0,
                        message: format!("invalid binary digit {other:?}"),
                    })
                }
            }
        }
        Ok(Self {
            width: width as u8,
            value,
        })
    }
}

/// True iff `table` has `2^w` entries of a common width `w` and is a
/// permutation of `0..2^w`.
pub fn is_bijective(table: &[BitWord]) -> bool {
    let Some(first) = table.first() else {
        return false;
    };
    let width = first.width();
    if table.len() != 1usize << width || table.iter().any(|w| w.width() != width) {
        return false;
    }
    let mut seen = vec![false; table.len()];
    for w in table {
        let slot = &mut seen[w.value() as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// A bijection on `width`-bit words, stored as the output for each input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleFunction {
    width: usize,
    table: Vec<u32>,
}

impl ReversibleFunction {
    /// Builds a function from its output column, rejecting non-bijections.
    pub fn from_table(width: usize, table: Vec<u32>) -> Result<Self, BoolFnError> {
        check_width(width)?;
        let size = 1usize << width;
        if table.len() != size {
            return Err(BoolFnError::TableLength {
                expected: size,
                found: table.len(),
            });
        }
        let mut preimage: Vec<Option<u32>> = vec![None; size];
        for (input, &output) in table.iter().enumerate() {
            if output as usize >= size {
                return Err(BoolFnError::ValueOutOfRange {
                    width,
                    value: output,
                });
            }
            if let Some(first) = preimage[output as usize] {
                return Err(BoolFnError::NotBijective {
                    first: format_bits(first, width),
                    second: format_bits(input as u32, width),
                    output: format_bits(output, width),
                });
            }
            preimage[output as usize] = Some(input as u32);
        }
        Ok(Self { width, table })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn apply(&self, input: u32) -> u32 {
        self.table[input as usize]
    }

    /// Output word for `input`, which must have the function's width.
    pub fn eval(&self, input: BitWord) -> BitWord {
        assert_eq!(input.width(), self.width, "word width mismatch");
        BitWord {
            width: self.width as u8,
            value: self.apply(input.value()),
        }
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn outputs(&self) -> Vec<BitWord> {
        self.table
            .iter()
            .map(|&value| BitWord {
                width: self.width as u8,
                value,
            })
            .collect()
    }

    pub fn inverse(&self) -> Self {
        let mut table = vec![0; self.table.len()];
        for (input, &output) in self.table.iter().enumerate() {
            table[output as usize] = input as u32;
        }
        Self {
            width: self.width,
            table,
        }
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.width, other.width, "width mismatch");
        Self {
            width: self.width,
            table: self.table.iter().map(|&y| other.apply(y)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Canonical text form: a `.width` header followed by rows in ascending
    /// input order.
    pub fn render(&self) -> String {
        let mut out = format!(".width {}\n", self.width);
        for (input, &output) in self.table.iter().enumerate() {
            out.push_str(&format_bits(input as u32, self.width));
            out.push_str(" -> ");
            out.push_str(&format_bits(output, self.width));
            out.push('\n');
        }
        out
    }
}

impl FromStr for ReversibleFunction {
    type Err = BoolFnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_truth_table(s)
    }
}

fn parse_word(text: &str, expected: usize, line: usize) -> Result<u32, BoolFnError> {
    if let Some(bad) = text.chars().find(|c| *c != '0' && *c != '1') {
        return Err(BoolFnError::Syntax {
            line,
            message: format!("invalid binary digit {bad:?} in {text:?}"),
        });
    }
    if text.len() != expected {
        return Err(BoolFnError::WidthMismatch {
            line,
            expected,
            found: text.len(),
        });
    }
    Ok(text
        .bytes()
        .fold(0u32, |acc, b| acc << 1 | u32::from(b == b'1')))
}

/// Parses the line-oriented truth table format:
///
/// ```text
/// # comment
/// .width 2
/// 00 -> 00
/// 01 -> 10
/// 10 -> 01
/// 11 -> 11
/// ```
pub fn parse_truth_table(text: &str) -> Result<ReversibleFunction, BoolFnError> {
    let mut width: Option<usize> = None;
    let mut rows: Vec<Option<u32>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix(".width") {
            if width.is_some() {
                return Err(BoolFnError::Syntax {
                    line,
                    message: "duplicate .width header".into(),
                });
            }
            let n: usize = rest.trim().parse().map_err(|_| BoolFnError::Syntax {
                line,
                message: format!("invalid width {:?}", rest.trim()),
            })?;
            check_width(n)?;
            width = Some(n);
            rows = vec![None; 1 << n];
            continue;
        }
        let Some(n) = width else {
            return Err(BoolFnError::Syntax {
                line,
                message: "data row before .width header".into(),
            });
        };
        let Some((lhs, rhs)) = content.split_once("->") else {
            return Err(BoolFnError::Syntax {
                line,
                message: "expected `<input> -> <output>`".into(),
            });
        };
        let input = parse_word(lhs.trim(), n, line)?;
        let output = parse_word(rhs.trim(), n, line)?;
        let slot = &mut rows[input as usize];
        if slot.is_some() {
            return Err(BoolFnError::DuplicateInputRow {
                line,
                input: format_bits(input, n),
            });
        }
        *slot = Some(output);
    }

    let Some(n) = width else {
        return Err(BoolFnError::Syntax {
            line: text.lines().count().max(1),
            message: "missing .width header".into(),
        });
    };
    let table = rows
        .into_iter()
        .enumerate()
        .map(|(input, out)| {
            out.ok_or_else(|| BoolFnError::MissingInputRow {
                input: format_bits(input as u32, n),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ReversibleFunction::from_table(n, table)
}

/// Gray code to binary converter: output bit `b_i` is the XOR of input bits
/// `g_j` for all `j >= i`.
pub fn gray_to_binary_function(n: usize) -> Result<ReversibleFunction, BoolFnError> {
    check_width(n)?;
    let table = (0..1u32 << n)
        .map(|g| {
            let mut b = g;
            let mut shift = g >> 1;
            while shift != 0 {
                b ^= shift;
                shift >>= 1;
            }
            b
        })
        .collect();
    Ok(ReversibleFunction { width: n, table })
}

pub fn identity_function(n: usize) -> Result<ReversibleFunction, BoolFnError> {
    check_width(n)?;
    Ok(ReversibleFunction {
        width: n,
        table: (0..1u32 << n).collect(),
    })
}

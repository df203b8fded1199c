// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Literal {
    Positive,
    Negative,
    Absent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse cube {text:?}: {reason}")]
pub struct CubeParseError {
    pub text: String,
    pub reason: String,
}

/// A product term over `width` variables.
///
/// Stored as a care mask (variables that appear) and the required values of
/// those variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    width: u8,
    care: u32,
    value: u32,
}

impl Cube {
    /// The constant-1 term.
    pub fn universe(width: usize) -> Self {
        Self {
            width: width as u8,
            care: 0,
            value: 0,
        }
    }

    /// The single-state term for `state`.
    pub fn minterm(width: usize, state: u32) -> Self {
        let full = full_mask(width);
        Self {
            width: width as u8,
            care: full,
            value: state & full,
        }
    }

    pub(crate) fn from_masks(width: usize, care: u32, value: u32) -> Self {
        Self {
            width: width as u8,
            care,
            value: value & care,
        }
    }

    /// `literals[j]` is the literal of `q_j`.
    pub fn from_literals(literals: &[Literal]) -> Self {
        let mut cube = Self::universe(literals.len());
        for (var, &lit) in literals.iter().enumerate() {
            cube = cube.with(var, lit);
        }
        cube
    }

    /// Parses a space-separated literal list such as `~q3 ~q2 q1`; `1` is the
    /// constant-1 term.
    pub fn parse(width: usize, text: &str) -> Result<Self, CubeParseError> {
        let err = |reason: String| CubeParseError {
            text: text.to_string(),
            reason,
        };
        let mut cube = Self::universe(width);
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(cube);
        }
        for token in trimmed.split_whitespace() {
            let (lit, name) = match token.strip_prefix('~') {
                Some(rest) => (Literal::Negative, rest),
                None => (Literal::Positive, token),
            };
            let var: usize = name
                .strip_prefix('q')
                .and_then(|v| v.trim_end_matches('\'').parse().ok())
                .ok_or_else(|| err(format!("bad literal {token:?}")))?;
            if var >= width {
                return Err(err(format!("variable q{var} out of range")));
            }
            if cube.literal(var) != Literal::Absent {
                return Err(err(format!("q{var} repeated")));
            }
            cube = cube.with(var, lit);
        }
        Ok(cube)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn care_mask(&self) -> u32 {
        self.care
    }

    pub fn value_mask(&self) -> u32 {
        self.value
    }

    pub fn literal(&self, var: usize) -> Literal {
        let bit = 1u32 << var;
        if self.care & bit == 0 {
            Literal::Absent
        } else if self.value & bit != 0 {
            Literal::Positive
        } else {
            Literal::Negative
        }
    }

    pub fn with(mut self, var: usize, lit: Literal) -> Self {
        assert!(var < self.width(), "variable out of range");
        let bit = 1u32 << var;
        match lit {
            Literal::Absent => {
                self.care &= !bit;
                self.value &= !bit;
            }
            Literal::Positive => {
                self.care |= bit;
                self.value |= bit;
            }
            Literal::Negative => {
                self.care |= bit;
                self.value &= !bit;
            }
        }
        self
    }

    pub fn literals(&self) -> Vec<Literal> {
        (0..self.width()).map(|v| self.literal(v)).collect()
    }

    pub fn literal_count(&self) -> usize {
        self.care.count_ones() as usize
    }

    pub fn contains(&self, state: u32) -> bool {
        state & self.care == self.value
    }

    pub fn cell_count(&self) -> usize {
        1 << (self.width() - self.literal_count())
    }

    /// Every state agreeing with the cube's literals, ascending.
    pub fn cells(&self) -> Vec<u32> {
        let free = full_mask(self.width()) & !self.care;
        let mut out = Vec::with_capacity(self.cell_count());
        // Walk the submasks of `free` in increasing order.
        let mut sub = 0u32;
        loop {
            out.push(self.value | sub);
            if sub == free {
                break;
            }
            sub = (sub | !free).wrapping_add(1) & free;
        }
        out
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        let common = self.care & other.care;
        self.value & common == other.value & common
    }
}

/// Cube ordering used for deterministic tie-breaks: variables are compared
/// from the highest index down, with `Absent < Positive < Negative`.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(lit: Literal) -> u8 {
            match lit {
                Literal::Absent => 0,
                Literal::Positive => 1,
                Literal::Negative => 2,
            }
        }
        self.width.cmp(&other.width).then_with(|| {
            (0..self.width())
                .rev()
                .map(|v| rank(self.literal(v)).cmp(&rank(other.literal(v))))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.care == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for var in (0..self.width()).rev() {
            let lit = self.literal(var);
            if lit == Literal::Absent {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if lit == Literal::Negative {
                f.write_str("~")?;
            }
            write!(f, "q{var}")?;
        }
        Ok(())
    }
}

pub(crate) fn full_mask(width: usize) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverMode {
    /// Pairwise disjoint product terms; OR and XOR evaluation coincide.
    DisjointSop,
    /// Exclusive-or of product terms.
    Esop,
}

/// A list of product terms under a combination mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    mode: CoverMode,
    width: usize,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(mode: CoverMode, width: usize, cubes: Vec<Cube>) -> Self {
        assert!(
            cubes.iter().all(|c| c.width() == width),
            "cube width mismatch"
        );
        Self { mode, width, cubes }
    }

    pub fn mode(&self) -> CoverMode {
        self.mode
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn literal_count(&self) -> usize {
        self.cubes.iter().map(Cube::literal_count).sum()
    }

    /// Same cubes, different mode.
    pub fn with_mode(&self, mode: CoverMode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    /// Cubes as a sorted list, for order-insensitive comparison.
    pub fn sorted_cubes(&self) -> Vec<Cube> {
        let mut cubes = self.cubes.clone();
        cubes.sort();
        cubes
    }

    pub fn eval_xor(&self, state: u32) -> bool {
        self.cubes.iter().filter(|c| c.contains(state)).count() % 2 == 1
    }

    pub fn eval_or(&self, state: u32) -> bool {
        self.cubes.iter().any(|c| c.contains(state))
    }

    pub fn coverage(&self, state: u32) -> usize {
        self.cubes.iter().filter(|c| c.contains(state)).count()
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cubes.is_empty() {
            return f.write_str("0");
        }
        let sep = match self.mode {
            CoverMode::DisjointSop => " + ",
            CoverMode::Esop => " ^ ",
        };
        for (i, cube) in self.cubes.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{cube}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_cells_examples() {
        let c = Cube::parse(4, "~q3 ~q2 q1").unwrap();
        assert_eq!(c.cells(), vec![0b0010, 0b0011]);
        assert_eq!(c.cell_count(), 2);
        assert_eq!(Cube::universe(2).cells(), vec![0, 1, 2, 3]);
        assert_eq!(Cube::minterm(3, 0b101).cells(), vec![0b101]);
        assert_eq!(Cube::parse(4, "q2").unwrap().cells().len(), 8);
    }

    #[test]
    fn parse_display_roundtrip() {
        for text in ["1", "q3", "~q3 q2 ~q0", "q1 q0"] {
            let c = Cube::parse(4, text).unwrap();
            assert_eq!(c.to_string(), text);
        }
        assert!(Cube::parse(2, "q2").is_err());
        assert!(Cube::parse(2, "q1 ~q1").is_err());
        assert!(Cube::parse(2, "x1").is_err());
    }

    #[test]
    fn ordering_prefers_absent_then_positive() {
        let q1 = Cube::parse(4, "q1").unwrap();
        let q2 = Cube::parse(4, "q2").unwrap();
        let q3 = Cube::parse(4, "q3").unwrap();
        let nq3 = Cube::parse(4, "~q3").unwrap();
        assert!(q1 < q2 && q2 < q3 && q3 < nq3);
    }

    #[test]
    fn intersection() {
        let a = Cube::parse(3, "q2 q1").unwrap();
        let b = Cube::parse(3, "q1 ~q0").unwrap();
        let c = Cube::parse(3, "~q1").unwrap();
        assert!(a.intersects(&b));
        assert!(!a.intersects(&c));
    }
}

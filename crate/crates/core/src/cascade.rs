// SPDX-License-Identifier: Apache-2.0

//! Single-pass stage cascade.
//!
//! A reversible function is realized as `n` stages, one per target bit. The
//! stage for bit `t` sees the intermediate state (bits already processed hold
//! their final values, the rest still hold the input) and flips bit `t` when
//! its toggle function is 1. The toggle value at a state is `q_t ^ q_t'`.
//!
//! Not every bijection admits such a cascade for a given order: two inputs
//! may reach the same intermediate state while needing different toggles.
//! [`decompose`] reports that with a witness pair.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::boolfn::{format_bits, ReversibleFunction};

/// Largest width for which [`find_feasible_order`] enumerates all orders.
pub const MAX_SEARCH_WIDTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CascadeError {
    #[error(transparent)]
    Infeasible(#[from] CascadeInfeasible),
    #[error(
        "no stage order yields a feasible cascade ({tried} tried); under order {order}: {witness}"
    )]
    NoFeasibleOrder {
        tried: usize,
        order: StageOrder,
        witness: CascadeInfeasible,
    },
    #[error("order search supports widths up to {MAX_SEARCH_WIDTH}, got {0}")]
    WidthOutOfRange(usize),
    #[error("invalid stage order {order:?} for width {width}")]
    InvalidOrder { order: Vec<usize>, width: usize },
}

/// Two distinct inputs reach the same intermediate state before a stage but
/// need different toggle values there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "cascade infeasible at stage q{target} (position {position}): inputs {} and {} both reach state {} but need toggles {} and {}",
    format_bits(.inputs.0, *.width), format_bits(.inputs.1, *.width),
    format_bits(*.state, *.width), .toggles.0 as u8, .toggles.1 as u8
)]
pub struct CascadeInfeasible {
    pub target: usize,
    pub position: usize,
    pub width: usize,
    pub state: u32,
    pub inputs: (u32, u32),
    pub toggles: (bool, bool),
}

/// Sequence in which target bits are updated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StageOrder(Vec<usize>);

impl StageOrder {
    pub fn new(order: Vec<usize>) -> Result<Self, CascadeError> {
        let width = order.len();
        let mut seen = vec![false; width];
        for &t in &order {
            if t >= width || std::mem::replace(&mut seen[t], true) {
                return Err(CascadeError::InvalidOrder { order, width });
            }
        }
        Ok(Self(order))
    }

    /// `0, 1, ..., n-1`.
    pub fn natural(width: usize) -> Self {
        Self((0..width).collect())
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for StageOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|t| format!("q{t}")).join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toggle {
    Zero,
    One,
    DontCare,
}

impl Toggle {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Toggle::One
        } else {
            Toggle::Zero
        }
    }

    pub fn is_defined(self) -> bool {
        self != Toggle::DontCare
    }

    pub fn symbol(self) -> char {
        match self {
            Toggle::Zero => '0',
            Toggle::One => '1',
            Toggle::DontCare => '-',
        }
    }
}

/// Toggle function of one stage, indexed by intermediate-state value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToggleTable {
    target: usize,
    width: usize,
    entries: Vec<Toggle>,
    primed: Vec<bool>,
}

impl ToggleTable {
    /// `primed[j]` marks bit `j` as already updated when this stage runs.
    pub fn new(target: usize, width: usize, entries: Vec<Toggle>, primed: Vec<bool>) -> Self {
        assert!(target < width, "target out of range");
        assert_eq!(entries.len(), 1 << width, "entry count must be 2^width");
        assert_eq!(primed.len(), width, "one label per variable");
        Self {
            target,
            width,
            entries,
            primed,
        }
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[Toggle] {
        &self.entries
    }

    pub fn get(&self, state: u32) -> Toggle {
        self.entries[state as usize]
    }

    pub fn is_primed(&self, var: usize) -> bool {
        self.primed[var]
    }

    pub fn primed(&self) -> &[bool] {
        &self.primed
    }

    pub fn dont_care_count(&self) -> usize {
        self.entries.iter().filter(|t| !t.is_defined()).count()
    }
}

/// Splits `f` into one toggle table per stage of `order`.
///
/// Replaying the stages (XOR each stage's toggle, looked up at the current
/// state, into its target bit) maps every input `x` to `f(x)`.
pub fn decompose(
    f: &ReversibleFunction,
    order: &StageOrder,
) -> Result<Vec<ToggleTable>, CascadeError> {
    let n = f.width();
    if order.width() != n {
        return Err(CascadeError::InvalidOrder {
            order: order.targets().to_vec(),
            width: n,
        });
    }
    let size = 1usize << n;
    let mut states: Vec<u32> = (0..size as u32).collect();
    let mut primed = vec![false; n];
    let mut tables = Vec::with_capacity(n);
    // Input that first defined each entry, for witness reporting.
    let mut owner: Vec<u32> = vec![0; size];

    for (position, &target) in order.targets().iter().enumerate() {
        let mut entries = vec![Toggle::DontCare; size];
        let bit = 1u32 << target;
        for (input, state) in states.iter_mut().enumerate() {
            let toggle = (*state ^ f.apply(input as u32)) & bit != 0;
            let slot = &mut entries[*state as usize];
            match *slot {
                Toggle::DontCare => {
                    *slot = Toggle::from_bool(toggle);
                    owner[*state as usize] = input as u32;
                }
                existing if (existing == Toggle::One) != toggle => {
                    return Err(CascadeInfeasible {
                        target,
                        position,
                        width: n,
                        state: *state,
                        inputs: (owner[*state as usize], input as u32),
                        toggles: (existing == Toggle::One, toggle),
                    }
                    .into());
                }
                _ => {}
            }
            if toggle {
                *state ^= bit;
            }
        }
        tables.push(ToggleTable::new(target, n, entries, primed.clone()));
        primed[target] = true;
    }
    Ok(tables)
}

/// Runs the stage chain on one input.
pub fn replay(tables: &[ToggleTable], input: u32) -> u32 {
    tables
        .iter()
        .fold(input, |state, table| match table.get(state) {
            Toggle::One => state ^ (1 << table.target()),
            _ => state,
        })
}

/// First order, lexicographically, for which [`decompose`] succeeds.
pub fn find_feasible_order(f: &ReversibleFunction) -> Result<StageOrder, CascadeError> {
    let n = f.width();
    if n > MAX_SEARCH_WIDTH {
        return Err(CascadeError::WidthOutOfRange(n));
    }
    let mut first_failure: Option<(StageOrder, CascadeInfeasible)> = None;
    let mut tried = 0;
    for order in (0..n).permutations(n).map(StageOrder) {
        tried += 1;
        match decompose(f, &order) {
            Ok(_) => return Ok(order),
            Err(CascadeError::Infeasible(w)) => {
                first_failure.get_or_insert((order, w));
            }
            Err(e) => return Err(e),
        }
    }
    let (order, witness) = first_failure.expect("at least one order was tried");
    Err(CascadeError::NoFeasibleOrder {
        tried,
        order,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{gray_to_binary_function, identity_function};

    fn swap2() -> ReversibleFunction {
        ReversibleFunction::from_table(2, vec![0b00, 0b10, 0b01, 0b11]).unwrap()
    }

    #[test]
    fn stage_order_validation() {
        assert!(StageOrder::new(vec![1, 0, 2]).is_ok());
        assert!(StageOrder::new(vec![0, 0]).is_err());
        assert!(StageOrder::new(vec![0, 2]).is_err());
        assert_eq!(StageOrder::natural(3).to_string(), "q0,q1,q2");
    }

    #[test]
    fn gray_natural_order_toggles() {
        let f = gray_to_binary_function(4).unwrap();
        let tables = decompose(&f, &StageOrder::natural(4)).unwrap();
        // Follow input 1000 down the chain; the toggles seen on the way are
        // its row of the toggle table, (T(q3),T(q2),T(q1),T(q0)) = (0,1,1,1).
        let x = 0b1000u32;
        let mut state = x;
        let mut toggles = Vec::new();
        for t in &tables {
            let v = t.get(state);
            toggles.push(v);
            if v == Toggle::One {
                state ^= 1 << t.target();
            }
        }
        use Toggle::*;
        assert_eq!(toggles, vec![One, One, One, Zero]);
        assert!(tables[3].entries().iter().all(|&t| t == Zero));
        assert!(tables.iter().all(|t| t.dont_care_count() == 0));
        assert_eq!(tables[2].primed(), &[true, true, false, false]);
    }

    #[test]
    fn identity_gives_zero_tables() {
        let f = identity_function(3).unwrap();
        let tables = decompose(&f, &StageOrder::natural(3)).unwrap();
        assert_eq!(tables.len(), 3);
        assert!(tables
            .iter()
            .all(|t| t.entries().iter().all(|&e| e == Toggle::Zero)));
    }

    #[test]
    fn swap_is_infeasible_with_witness() {
        let err = decompose(&swap2(), &StageOrder::natural(2)).unwrap_err();
        let CascadeError::Infeasible(w) = err else {
            panic!("expected infeasible, got {err:?}");
        };
        assert_eq!((w.target, w.position, w.state), (1, 1, 0b00));
        assert_eq!(w.inputs, (0b00, 0b01));
        assert!(w.to_string().contains("inputs 00 and 01"));

        let reversed = StageOrder::new(vec![1, 0]).unwrap();
        assert!(matches!(
            decompose(&swap2(), &reversed),
            Err(CascadeError::Infeasible(_))
        ));
        let err = find_feasible_order(&swap2()).unwrap_err();
        let CascadeError::NoFeasibleOrder {
            tried,
            order,
            witness,
        } = &err
        else {
            panic!("expected NoFeasibleOrder, got {err:?}");
        };
        assert_eq!((*tried, order), (2, &StageOrder::natural(2)));
        assert_eq!(witness.inputs, (0b00, 0b01));
        assert!(err.to_string().contains("inputs 00 and 01"));
    }

    #[test]
    fn order_search() {
        let gray = gray_to_binary_function(4).unwrap();
        assert_eq!(find_feasible_order(&gray).unwrap(), StageOrder::natural(4));
        let id = identity_function(2).unwrap();
        assert_eq!(find_feasible_order(&id).unwrap(), StageOrder::natural(2));
        let big = identity_function(9).unwrap();
        assert_eq!(
            find_feasible_order(&big),
            Err(CascadeError::WidthOutOfRange(9))
        );
    }

    #[test]
    fn replay_reproduces_gray_exhaustively() {
        for n in 1..=8 {
            let f = gray_to_binary_function(n).unwrap();
            let tables = decompose(&f, &StageOrder::natural(n)).unwrap();
            for x in 0..1u32 << n {
                assert_eq!(replay(&tables, x), f.apply(x));
            }
        }
    }
}

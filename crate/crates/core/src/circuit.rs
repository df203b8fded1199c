// SPDX-License-Identifier: Apache-2.0

//! Gate-level circuits over the NOT-CNOT-Toffoli basis.
//!
//! Covers map one-to-one onto multi-controlled Toffoli gates, possibly with
//! negative controls. Two lowering passes bring those into the basis:
//! [`lower_polarity`] brackets negative controls with NOT gates, and
//! [`lower_mct`] splits gates with three or more controls into Toffoli
//! compute/uncompute chains on ancilla lines.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::boolfn::ReversibleFunction;
use crate::cascade::{decompose, find_feasible_order, CascadeError, StageOrder};
use crate::qmap::{
    build_qmap, minimize_disjoint, minimize_esop, Cover, CoverMode, Cube, Literal,
    DEFAULT_EXACT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate target q{0} also appears as a control")]
    TargetIsControl(usize),
    #[error("control line q{0} repeated")]
    DuplicateControl(usize),
    #[error("gate touches line {line} but the circuit has {lines} lines")]
    LineOutOfRange { line: usize, lines: usize },
    #[error("cube {cube} reads the stage target q{target}")]
    TargetReadWrite { target: usize, cube: String },
    #[error("circuit still contains a gate with {controls} controls")]
    UnloweredMct { controls: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub line: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn positive(line: usize) -> Self {
        Self {
            line,
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(line: usize) -> Self {
        Self {
            line,
            polarity: Polarity::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    Mct,
}

/// Flips `target` iff every control matches its polarity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    target: usize,
    controls: Vec<Control>,
}

impl Gate {
    pub fn new(target: usize, controls: Vec<Control>) -> Result<Self, CircuitError> {
        for (i, c) in controls.iter().enumerate() {
            if c.line == target {
                return Err(CircuitError::TargetIsControl(target));
            }
            if controls[..i].iter().any(|o| o.line == c.line) {
                return Err(CircuitError::DuplicateControl(c.line));
            }
        }
        Ok(Self { target, controls })
    }

    pub fn not(target: usize) -> Self {
        Self {
            target,
            controls: Vec::new(),
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(target, vec![Control::positive(control)]).expect("distinct lines")
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Self::new(target, vec![Control::positive(c1), Control::positive(c2)])
            .expect("distinct lines")
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    /// Negative controls exist only on the `Mct` form.
    pub fn kind(&self) -> GateKind {
        if self
            .controls
            .iter()
            .any(|c| c.polarity == Polarity::Negative)
        {
            return GateKind::Mct;
        }
        match self.controls.len() {
            0 => GateKind::Not,
            1 => GateKind::Cnot,
            2 => GateKind::Toffoli,
            _ => GateKind::Mct,
        }
    }

    /// Highest line index touched.
    pub fn max_line(&self) -> usize {
        self.controls
            .iter()
            .map(|c| c.line)
            .chain([self.target])
            .max()
            .unwrap()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind() {
            GateKind::Not => "x",
            GateKind::Cnot => "cx",
            GateKind::Toffoli => "ccx",
            GateKind::Mct => "mct",
        };
        let controls = self
            .controls
            .iter()
            .map(|c| match c.polarity {
                Polarity::Positive => format!("q{}", c.line),
                Polarity::Negative => format!("~q{}", c.line),
            })
            .join(",");
        if controls.is_empty() {
            write!(f, "{name} q{}", self.target)
        } else {
            write!(f, "{name} {controls} -> q{}", self.target)
        }
    }
}

/// Per-kind gate counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCensus {
    pub not: usize,
    pub cnot: usize,
    pub toffoli: usize,
    pub mct: usize,
}

impl GateCensus {
    pub fn total(&self) -> usize {
        self.not + self.cnot + self.toffoli + self.mct
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} cx={} ccx={} mct={} total={}",
            self.not,
            self.cnot,
            self.toffoli,
            self.mct,
            self.total()
        )
    }
}

/// Gates over `data_width` data lines followed by `ancilla_count` ancilla
/// lines that start (and must end) at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    data_width: usize,
    ancilla_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(
        data_width: usize,
        ancilla_count: usize,
        gates: Vec<Gate>,
    ) -> Result<Self, CircuitError> {
        let lines = data_width + ancilla_count;
        if let Some(g) = gates.iter().find(|g| g.max_line() >= lines) {
            return Err(CircuitError::LineOutOfRange {
                line: g.max_line(),
                lines,
            });
        }
        Ok(Self {
            data_width,
            ancilla_count,
            gates,
        })
    }

    pub fn empty(data_width: usize) -> Self {
        Self {
            data_width,
            ancilla_count: 0,
            gates: Vec::new(),
        }
    }

    pub fn data_width(&self) -> usize {
        self.data_width
    }

    pub fn ancilla_count(&self) -> usize {
        self.ancilla_count
    }

    pub fn lines(&self) -> usize {
        self.data_width + self.ancilla_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn census(&self) -> GateCensus {
        let mut census = GateCensus::default();
        for g in &self.gates {
            match g.kind() {
                GateKind::Not => census.not += 1,
                GateKind::Cnot => census.cnot += 1,
                GateKind::Toffoli => census.toffoli += 1,
                GateKind::Mct => census.mct += 1,
            }
        }
        census
    }
}

/// One gate per cube, each XOR-ing its product into `target`.
pub fn realize_stage(cover: &Cover, target: usize, n: usize) -> Result<Vec<Gate>, CircuitError> {
    assert_eq!(cover.width(), n, "cover width mismatch");
    cover
        .cubes()
        .iter()
        .map(|cube| realize_cube(cube, target))
        .collect()
}

fn realize_cube(cube: &Cube, target: usize) -> Result<Gate, CircuitError> {
    if cube.literal(target) != Literal::Absent {
        return Err(CircuitError::TargetReadWrite {
            target,
            cube: cube.to_string(),
        });
    }
    let controls = (0..cube.width())
        .filter_map(|var| match cube.literal(var) {
            Literal::Positive => Some(Control::positive(var)),
            Literal::Negative => Some(Control::negative(var)),
            Literal::Absent => None,
        })
        .collect();
    Gate::new(target, controls)
}

/// Turns negative controls positive by bracketing the gate with NOTs on
/// those lines, then cancels NOT pairs: within each run of consecutive NOT
/// gates (which commute), a line keeps a NOT only if it appears an odd
/// number of times.
pub fn lower_polarity(gates: &[Gate]) -> Vec<Gate> {
    let mut expanded = Vec::with_capacity(gates.len());
    for g in gates {
        let negated: Vec<usize> = g
            .controls
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .map(|c| c.line)
            .collect();
        expanded.extend(negated.iter().map(|&l| Gate::not(l)));
        expanded.push(Gate {
            target: g.target,
            controls: g
                .controls
                .iter()
                .map(|c| Control::positive(c.line))
                .collect(),
        });
        expanded.extend(negated.iter().map(|&l| Gate::not(l)));
    }
    elide_not_pairs(expanded)
}

fn elide_not_pairs(gates: Vec<Gate>) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    let mut run: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<usize>, out: &mut Vec<Gate>| {
        let mut kept: Vec<usize> = Vec::new();
        for &line in run.iter() {
            if let Some(pos) = kept.iter().position(|&l| l == line) {
                kept.remove(pos);
            } else {
                kept.push(line);
            }
        }
        out.extend(kept.into_iter().map(Gate::not));
        run.clear();
    };
    for g in gates {
        if g.controls.is_empty() {
            run.push(g.target);
        } else {
            flush(&mut run, &mut out);
            out.push(g);
        }
    }
    flush(&mut run, &mut out);
    out
}

/// Splits every positive-control gate with more than `max_controls`
/// controls into Toffolis. For controls `c_1..c_k` the two last controls are
/// ANDed into a fresh ancilla, the gate recurses on `c_1..c_{k-2}, ancilla`,
/// and the ancilla is uncomputed. A `k`-control gate needs `k - 2`
/// ancillas; ancillas are shared between gates.
///
/// Panics if a negative control is still present.
pub fn lower_mct(circuit: &Circuit, max_controls: usize) -> Circuit {
    assert!(
        max_controls >= 2,
        "Toffoli is the smallest supported target"
    );
    let base = circuit.lines();
    let mut needed = 0usize;
    let mut gates = Vec::with_capacity(circuit.gates.len());
    for g in &circuit.gates {
        assert!(
            g.controls.iter().all(|c| c.polarity == Polarity::Positive),
            "lower polarity before lowering multi-controlled gates"
        );
        let used = expand(g, max_controls, base, 0, &mut gates);
        needed = needed.max(used);
    }
    Circuit {
        data_width: circuit.data_width,
        ancilla_count: circuit.ancilla_count + needed,
        gates,
    }
}

/// Emits `g` lowered; `depth` ancillas above `base` are already in use.
/// Returns the number of ancillas used, counting from `base`.
fn expand(g: &Gate, max_controls: usize, base: usize, depth: usize, out: &mut Vec<Gate>) -> usize {
    let k = g.controls.len();
    if k <= max_controls {
        out.push(g.clone());
        return depth;
    }
    let ancilla = base + depth;
    let (c1, c2) = (g.controls[k - 2].line, g.controls[k - 1].line);
    let compute = Gate::toffoli(c1, c2, ancilla);
    let mut reduced: Vec<Control> = g.controls[..k - 2].to_vec();
    reduced.push(Control::positive(ancilla));
    out.push(compute.clone());
    let used = expand(
        &Gate {
            target: g.target,
            controls: reduced,
        },
        max_controls,
        base,
        depth + 1,
        out,
    );
    out.push(compute);
    used
}

/// Gates in reverse order. Every basis gate is its own inverse.
pub fn invert(circuit: &Circuit) -> Circuit {
    Circuit {
        gates: circuit.gates.iter().rev().cloned().collect(),
        ..circuit.clone()
    }
}

/// Circuit followed by `other` on the same lines.
pub fn compose(first: &Circuit, other: &Circuit) -> Circuit {
    assert_eq!(first.data_width, other.data_width, "data width mismatch");
    Circuit {
        data_width: first.data_width,
        ancilla_count: first.ancilla_count.max(other.ancilla_count),
        gates: first.gates.iter().chain(&other.gates).cloned().collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    GateCount,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    pub mode: CostMode,
    pub not: f64,
    pub cnot: f64,
    pub toffoli: f64,
}

impl CostModel {
    pub fn gate_count() -> Self {
        Self {
            mode: CostMode::GateCount,
            ..Self::weighted()
        }
    }

    /// NOT = 1, CNOT = 1, Toffoli = 5.
    pub fn weighted() -> Self {
        Self {
            mode: CostMode::Weighted,
            not: 1.0,
            cnot: 1.0,
            toffoli: 5.0,
        }
    }
}

pub fn cost(circuit: &Circuit, model: &CostModel) -> Result<f64, CircuitError> {
    match model.mode {
        CostMode::GateCount => Ok(circuit.len() as f64),
        CostMode::Weighted => circuit.gates.iter().try_fold(0.0, |acc, g| {
            Ok(acc
                + match g.kind() {
                    GateKind::Not => model.not,
                    GateKind::Cnot => model.cnot,
                    GateKind::Toffoli => model.toffoli,
                    GateKind::Mct => {
                        return Err(CircuitError::UnloweredMct {
                            controls: g.controls.len(),
                        })
                    }
                })
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum OrderStrategy {
    #[default]
    Natural,
    Search,
    Fixed(StageOrder),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Lowering {
    #[default]
    None,
    /// Split every gate down to at most two controls.
    Toffoli2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthOptions {
    pub mode: CoverMode,
    pub order: OrderStrategy,
    pub lower: Lowering,
    pub exact_limit: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            mode: CoverMode::Esop,
            order: OrderStrategy::Natural,
            lower: Lowering::None,
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error(transparent)]
    Cascade(#[from] CascadeError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Everything the pipeline produced, stage by stage.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub order: StageOrder,
    /// Cover chosen for each stage, in stage order.
    pub covers: Vec<Cover>,
    pub circuit: Circuit,
}

/// Runs the full pipeline and keeps the intermediate covers.
pub fn synthesize_detailed(
    f: &ReversibleFunction,
    options: &SynthOptions,
) -> Result<Synthesis, SynthError> {
    let n = f.width();
    let order = match &options.order {
        OrderStrategy::Natural => StageOrder::natural(n),
        OrderStrategy::Search => find_feasible_order(f)?,
        OrderStrategy::Fixed(order) => order.clone(),
    };
    let tables = decompose(f, &order)?;
    let mut covers = Vec::with_capacity(n);
    let mut raw = Vec::new();
    for table in &tables {
        let grid = build_qmap(table);
        let cover = match options.mode {
            CoverMode::DisjointSop => minimize_disjoint(&grid),
            CoverMode::Esop => minimize_esop(&grid, options.exact_limit),
        };
        raw.extend(realize_stage(&cover, table.target(), n)?);
        covers.push(cover);
    }
    let mut circuit = Circuit::new(n, 0, lower_polarity(&raw))?;
    if options.lower == Lowering::Toffoli2 {
        circuit = lower_mct(&circuit, 2);
    }
    Ok(Synthesis {
        order,
        covers,
        circuit,
    })
}

/// Truth table in, basis circuit out.
pub fn synthesize(f: &ReversibleFunction, options: &SynthOptions) -> Result<Circuit, SynthError> {
    synthesize_detailed(f, options).map(|s| s.circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{gray_to_binary_function, identity_function};

    fn cover(width: usize, mode: CoverMode, cubes: &[&str]) -> Cover {
        Cover::new(
            mode,
            width,
            cubes
                .iter()
                .map(|c| Cube::parse(width, c).unwrap())
                .collect(),
        )
    }

    #[test]
    fn gate_validation_and_kinds() {
        assert!(Gate::new(0, vec![Control::positive(0)]).is_err());
        assert!(Gate::new(0, vec![Control::positive(1), Control::negative(1)]).is_err());
        assert_eq!(Gate::not(1).kind(), GateKind::Not);
        assert_eq!(Gate::cnot(1, 0).kind(), GateKind::Cnot);
        assert_eq!(Gate::toffoli(1, 2, 0).kind(), GateKind::Toffoli);
        let neg = Gate::new(0, vec![Control::negative(1)]).unwrap();
        assert_eq!(neg.kind(), GateKind::Mct);
        assert!(Circuit::new(2, 0, vec![Gate::cnot(2, 0)]).is_err());
    }

    #[test]
    fn realize_examples() {
        let gates = realize_stage(&cover(4, CoverMode::DisjointSop, &["q3"]), 2, 4).unwrap();
        assert_eq!(gates, vec![Gate::cnot(3, 2)]);
        let gates = realize_stage(&cover(4, CoverMode::Esop, &["q2", "q3"]), 1, 4).unwrap();
        assert_eq!(gates, vec![Gate::cnot(2, 1), Gate::cnot(3, 1)]);
        assert!(realize_stage(&cover(4, CoverMode::Esop, &[]), 0, 4)
            .unwrap()
            .is_empty());
        let one = realize_stage(&cover(2, CoverMode::Esop, &["1"]), 0, 2).unwrap();
        assert_eq!(one, vec![Gate::not(0)]);
        let err = realize_stage(&cover(2, CoverMode::Esop, &["q0 q1"]), 0, 2).unwrap_err();
        assert!(matches!(
            err,
            CircuitError::TargetReadWrite { target: 0, .. }
        ));
    }

    #[test]
    fn polarity_lowering() {
        let g = Gate::new(0, vec![Control::positive(1), Control::negative(3)]).unwrap();
        assert_eq!(
            lower_polarity(std::slice::from_ref(&g)),
            vec![Gate::not(3), Gate::toffoli(1, 3, 0), Gate::not(3)]
        );
        let h = Gate::new(0, vec![Control::negative(1), Control::negative(3)]).unwrap();
        // The X(q3) after the first Toffoli cancels the one before the second.
        assert_eq!(
            lower_polarity(&[g, h]),
            vec![
                Gate::not(3),
                Gate::toffoli(1, 3, 0),
                Gate::not(1),
                Gate::toffoli(1, 3, 0),
                Gate::not(1),
                Gate::not(3),
            ]
        );
        let plain = vec![Gate::cnot(2, 0), Gate::toffoli(1, 2, 0)];
        assert_eq!(lower_polarity(&plain), plain);
    }

    #[test]
    fn mct_lowering_three_controls() {
        let mct = Gate::new(
            0,
            vec![
                Control::positive(1),
                Control::positive(2),
                Control::positive(3),
            ],
        )
        .unwrap();
        let c = Circuit::new(4, 0, vec![mct]).unwrap();
        let lowered = lower_mct(&c, 2);
        assert_eq!(lowered.ancilla_count(), 1);
        assert_eq!(
            lowered.gates(),
            &[
                Gate::toffoli(2, 3, 4),
                Gate::toffoli(1, 4, 0),
                Gate::toffoli(2, 3, 4)
            ]
        );
        let plain = Circuit::new(3, 0, vec![Gate::toffoli(1, 2, 0), Gate::not(1)]).unwrap();
        assert_eq!(lower_mct(&plain, 2), plain);
    }

    #[test]
    fn mct_lowering_five_controls_uses_three_ancillas() {
        let mct = Gate::new(
            1,
            (2..6)
                .map(Control::positive)
                .chain([Control::positive(0)])
                .collect(),
        )
        .unwrap();
        let c = Circuit::new(6, 0, vec![mct]).unwrap();
        let lowered = lower_mct(&c, 2);
        assert_eq!(lowered.ancilla_count(), 3);
        assert_eq!(lowered.len(), 7);
        assert!(lowered.gates().iter().all(|g| g.controls().len() <= 2));
    }

    #[test]
    fn cost_models() {
        let hand = Circuit::new(
            4,
            0,
            vec![
                Gate::cnot(2, 0),
                Gate::not(3),
                Gate::toffoli(1, 3, 0),
                Gate::not(3),
                Gate::not(1),
                Gate::toffoli(1, 3, 0),
                Gate::not(1),
                Gate::cnot(2, 1),
                Gate::cnot(3, 1),
                Gate::cnot(3, 2),
            ],
        )
        .unwrap();
        assert_eq!(cost(&hand, &CostModel::gate_count()).unwrap(), 10.0);
        assert_eq!(cost(&hand, &CostModel::weighted()).unwrap(), 18.0);
        assert_eq!(
            cost(&Circuit::empty(3), &CostModel::weighted()).unwrap(),
            0.0
        );
        let mct = Gate::new(0, (1..4).map(Control::positive).collect()).unwrap();
        let raw = Circuit::new(4, 0, vec![mct]).unwrap();
        assert_eq!(cost(&raw, &CostModel::gate_count()).unwrap(), 1.0);
        assert_eq!(
            cost(&raw, &CostModel::weighted()),
            Err(CircuitError::UnloweredMct { controls: 3 })
        );
    }

    #[test]
    fn invert_reverses() {
        let c = Circuit::new(3, 0, vec![Gate::not(0), Gate::toffoli(0, 1, 2)]).unwrap();
        assert_eq!(invert(&c).gates(), &[Gate::toffoli(0, 1, 2), Gate::not(0)]);
        assert!(invert(&Circuit::empty(2)).is_empty());
    }

    #[test]
    fn gray_synthesis_census() {
        let f = gray_to_binary_function(4).unwrap();
        let esop = synthesize(&f, &SynthOptions::default()).unwrap();
        assert_eq!(esop.ancilla_count(), 0);
        assert_eq!(
            esop.census(),
            GateCensus {
                not: 0,
                cnot: 6,
                toffoli: 0,
                mct: 0
            }
        );
        let disjoint = synthesize(
            &f,
            &SynthOptions {
                mode: CoverMode::DisjointSop,
                lower: Lowering::Toffoli2,
                ..SynthOptions::default()
            },
        )
        .unwrap();
        assert_eq!(disjoint.ancilla_count(), 1);
        assert!(disjoint.len() <= 27);
        assert_eq!(disjoint.census().mct, 0);
    }

    #[test]
    fn identity_synthesizes_to_nothing() {
        let f = identity_function(4).unwrap();
        assert!(synthesize(&f, &SynthOptions::default()).unwrap().is_empty());
    }
}

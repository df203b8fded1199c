// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::Path;

use qmap_core::{
    build_qmap, cost as circuit_cost, decompose, export_qasm, find_feasible_order, parse_qasm,
    parse_truth_table, render_circuit, render_qmap, synthesize_detailed, verify as verify_circuit,
    CascadeError, Circuit, CircuitError, CostModel, CoverMode, Lowering, OrderStrategy,
    ReversibleFunction, StageOrder, SynthError, SynthOptions, Verdict,
};

use crate::{
    CostArg, CostArgs, LowerArg, ModeArg, OrderArg, PipelineArgs, ShowArgs, SynthArgs, VerifyArgs,
};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_TARGET_READ_WRITE: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_function(path: &Path) -> Result<ReversibleFunction, Failure> {
    parse_truth_table(&read(path)?)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path, data_width: Option<usize>) -> Result<Circuit, Failure> {
    parse_qasm(&read(path)?, data_width)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn cover_mode(mode: ModeArg) -> CoverMode {
    match mode {
        ModeArg::Disjoint => CoverMode::DisjointSop,
        ModeArg::Esop => CoverMode::Esop,
    }
}

fn order_strategy(order: OrderArg) -> OrderStrategy {
    match order {
        OrderArg::Natural => OrderStrategy::Natural,
        OrderArg::Search => OrderStrategy::Search,
    }
}

fn lowering(lower: LowerArg) -> Lowering {
    match lower {
        LowerArg::None => Lowering::None,
        LowerArg::Toffoli2 => Lowering::Toffoli2,
    }
}

fn cost_model(cost: CostArg) -> CostModel {
    match cost {
        CostArg::Count => CostModel::gate_count(),
        CostArg::Weighted => CostModel::weighted(),
    }
}

fn cascade_failure(e: CascadeError) -> Failure {
    let code = match e {
        CascadeError::Infeasible(_) | CascadeError::NoFeasibleOrder { .. } => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    };
    Failure::new(code, e.to_string())
}

fn synth_failure(e: SynthError) -> Failure {
    match e {
        SynthError::Cascade(e) => cascade_failure(e),
        SynthError::Circuit(e @ CircuitError::TargetReadWrite { .. }) => {
            Failure::new(EXIT_TARGET_READ_WRITE, e.to_string())
        }
        SynthError::Circuit(e) => Failure::new(EXIT_USAGE, e.to_string()),
    }
}

fn options(p: &PipelineArgs, lower: LowerArg) -> SynthOptions {
    SynthOptions {
        mode: cover_mode(p.mode),
        order: order_strategy(p.order),
        lower: lowering(lower),
        exact_limit: p.exact_limit,
    }
}

fn describe_cost(circuit: &Circuit, model: &CostModel) -> String {
    match circuit_cost(circuit, model) {
        Ok(v) => format!("{v}"),
        Err(e) => format!("n/a ({e})"),
    }
}

/// `synth` (with summary) and `export` (QASM only).
pub fn synth(args: &SynthArgs, summary: bool) -> Outcome {
    let f = load_function(&args.pipeline.input)?;
    let result =
        synthesize_detailed(&f, &options(&args.pipeline, args.lower)).map_err(synth_failure)?;
    let circuit = &result.circuit;
    let qasm = export_qasm(circuit)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{e} (use --lower toffoli2)")))?;

    let mut report = String::new();
    if summary {
        report.push_str(&format!("order: {}\n", result.order));
        for (cover, target) in result.covers.iter().zip(result.order.targets()) {
            report.push_str(&format!("T(q{target}) = {cover}\n"));
        }
        report.push_str(&format!(
            "lines: {} data + {} ancilla\n",
            circuit.data_width(),
            circuit.ancilla_count()
        ));
        report.push_str(&format!("census: {}\n", circuit.census()));
        report.push_str(&format!(
            "cost: {}\n",
            describe_cost(circuit, &cost_model(args.cost))
        ));
        if args.diagram {
            report.push_str(&render_circuit(circuit));
        }
    }

    match &args.out {
        Some(path) => {
            fs::write(path, &qasm)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            print!("{report}");
        }
        None => {
            print!("{qasm}");
            eprint!("{report}");
        }
    }
    let _ = std::io::stdout().flush();
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let f = load_function(&args.input)?;
    let circuit = load_circuit(&args.circuit, Some(f.width()))?;
    match verify_circuit(&circuit, &f) {
        Ok(Verdict::Equal) => {
            println!(
                "equal: circuit matches {} on all {} inputs",
                args.input.display(),
                1u64 << f.width()
            );
            Ok(())
        }
        Ok(v @ Verdict::Counterexample { .. }) => Err(Failure::new(EXIT_MISMATCH, v.to_string())),
        Err(e) => Err(Failure::new(EXIT_MISMATCH, e.to_string())),
    }
}

pub fn show(args: &ShowArgs) -> Outcome {
    let p = &args.pipeline;
    let f = load_function(&p.input)?;
    let n = f.width();
    if args.stage >= n {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("stage q{} out of range for width {n}", args.stage),
        ));
    }
    let order = match p.order {
        OrderArg::Natural => StageOrder::natural(n),
        OrderArg::Search => find_feasible_order(&f).map_err(cascade_failure)?,
    };
    let tables = decompose(&f, &order).map_err(cascade_failure)?;
    let table = tables
        .iter()
        .find(|t| t.target() == args.stage)
        .expect("every target has a stage");
    let grid = build_qmap(table);
    let cover = args.groups.then(|| match p.mode {
        ModeArg::Disjoint => qmap_core::minimize_disjoint(&grid),
        ModeArg::Esop => qmap_core::minimize_esop(&grid, p.exact_limit),
    });
    print!("{}", render_qmap(&grid, cover.as_ref()));
    Ok(())
}

pub fn cost(args: &CostArgs) -> Outcome {
    let circuit = match (&args.circuit, &args.input) {
        (Some(qasm), input) => {
            let width = match input {
                Some(path) => Some(load_function(path)?.width()),
                None => None,
            };
            load_circuit(qasm, width)?
        }
        (None, Some(input)) => {
            let f = load_function(input)?;
            let opts = SynthOptions {
                mode: cover_mode(args.mode),
                order: order_strategy(args.order),
                lower: lowering(args.lower),
                exact_limit: args.exact_limit,
            };
            synthesize_detailed(&f, &opts)
                .map_err(synth_failure)?
                .circuit
        }
        (None, None) => {
            return Err(Failure::new(EXIT_USAGE, "cost needs --circuit or --input"));
        }
    };
    let value = circuit_cost(&circuit, &cost_model(args.cost))
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    println!("census: {}", circuit.census());
    println!("cost: {value}");
    Ok(())
}

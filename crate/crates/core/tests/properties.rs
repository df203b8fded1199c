// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use qmap_core::{
    export_qasm, invert, lower_mct, lower_polarity, minimize_disjoint, minimize_esop, parse_qasm,
    permutation_of, synthesize, verify, verify_cover, Circuit, Control, CoverMode, Gate, Lowering,
    OrderStrategy, Polarity, QMapGrid, ReversibleFunction, SynthOptions, Toggle, Verdict,
};

fn toggle() -> impl Strategy<Value = Toggle> {
    prop_oneof![
        4 => Just(Toggle::Zero),
        4 => Just(Toggle::One),
        1 => Just(Toggle::DontCare),
    ]
}

fn grid(max_width: usize) -> impl Strategy<Value = QMapGrid> {
    (1..=max_width).prop_flat_map(|w| {
        prop::collection::vec(toggle(), 1 << w).prop_map(move |v| QMapGrid::from_states(w, v))
    })
}

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    (0..width, prop::collection::vec(0u8..3, width)).prop_map(|(target, pol)| {
        let controls = (0..pol.len())
            .filter(|&l| l != target && pol[l] != 0)
            .map(|l| {
                if pol[l] == 1 {
                    Control::positive(l)
                } else {
                    Control::negative(l)
                }
            })
            .collect();
        Gate::new(target, controls).unwrap()
    })
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=6).prop_flat_map(|w| {
        prop::collection::vec(gate(w), 0..24).prop_map(move |g| Circuit::new(w, 0, g).unwrap())
    })
}

fn table(c: &Circuit) -> Vec<u32> {
    permutation_of(c)
        .unwrap()
        .iter()
        .map(|w| w.value())
        .collect()
}

proptest! {
    #[test]
    fn minimizers_produce_valid_covers(g in grid(6)) {
        let d = minimize_disjoint(&g);
        prop_assert!(verify_cover(&d, &g), "disjoint {}", d);
        let e = minimize_esop(&g, 4);
        prop_assert!(verify_cover(&e, &g), "esop {}", e);
        for s in 0..1u32 << g.width() {
            prop_assert_eq!(d.eval_or(s), d.eval_xor(s));
        }
    }

    #[test]
    fn disjoint_cover_is_also_a_valid_esop(g in grid(5)) {
        let d = minimize_disjoint(&g).with_mode(CoverMode::Esop);
        prop_assert!(verify_cover(&d, &g));
    }

    #[test]
    fn polarity_lowering_preserves_the_permutation(c in circuit()) {
        let lowered = Circuit::new(c.data_width(), 0, lower_polarity(c.gates())).unwrap();
        let positive = |g: &Gate| g.controls().iter().all(|k| k.polarity == Polarity::Positive);
        prop_assert!(lowered.gates().iter().all(positive));
        prop_assert_eq!(table(&lowered), table(&c));
    }

    #[test]
    fn mct_lowering_preserves_the_permutation(c in circuit()) {
        let positive = Circuit::new(c.data_width(), 0, lower_polarity(c.gates())).unwrap();
        let lowered = lower_mct(&positive, 2);
        prop_assert!(lowered.gates().iter().all(|g| g.controls().len() <= 2));
        prop_assert_eq!(table(&lowered), table(&c));
        let text = export_qasm(&lowered).unwrap();
        prop_assert_eq!(parse_qasm(&text, Some(lowered.data_width())).unwrap(), lowered);
    }

    #[test]
    fn inverse_undoes_the_circuit(c in circuit()) {
        let forward = table(&c);
        let backward = table(&invert(&c));
        for (x, &y) in forward.iter().enumerate() {
            prop_assert_eq!(backward[y as usize], x as u32);
        }
    }

    #[test]
    fn synthesis_of_circuit_functions_is_exact(c in circuit(), esop in any::<bool>()) {
        // Any circuit's permutation either synthesizes exactly or is reported infeasible.
        let f = ReversibleFunction::from_table(c.data_width(), table(&c)).unwrap();
        let opts = SynthOptions {
            mode: if esop { CoverMode::Esop } else { CoverMode::DisjointSop },
            order: OrderStrategy::Search,
            lower: Lowering::Toffoli2,
            ..SynthOptions::default()
        };
        if let Ok(out) = synthesize(&f, &opts) {
            prop_assert_eq!(verify(&out, &f).unwrap(), Verdict::Equal);
        }
    }
}

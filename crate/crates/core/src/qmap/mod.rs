// SPDX-License-Identifier: Apache-2.0

//! Toggle-function maps and their minimization.
//!
//! A [`QMapGrid`] lays out a toggle function as a Karnaugh-style array with
//! reflected-Gray row and column labels. Covers are extracted in one of two
//! modes:
//!
//! * [`CoverMode::DisjointSop`]: non-overlapping groups of 1s, so the terms
//!   may be combined with OR or XOR interchangeably.
//! * [`CoverMode::Esop`]: groups may overlap and may include 0s; every 1 must
//!   be covered an odd number of times and every 0 an even number of times.
//!
//! When a grid belongs to a cascade stage, its target variable never needs to
//! appear in a cover (the stage would otherwise not be invertible), so the
//! minimizers drop it and work on the remaining variables.

mod cube;
mod exact;
mod heuristic;

pub use cube::{Cover, CoverMode, Cube, CubeParseError, Literal};

use crate::cascade::{Toggle, ToggleTable};
use cube::full_mask;

/// Default width up to which [`minimize_esop`] searches exactly.
pub const DEFAULT_EXACT_LIMIT: usize = 4;

/// Largest number of free variables handled by the exact searches. Their
/// tables hold one entry per Boolean function of that many variables.
pub const EXACT_VARIABLE_CAP: usize = 4;

fn gray(i: u32) -> u32 {
    i ^ (i >> 1)
}

fn gray_rank(mut g: u32) -> u32 {
    let mut i = 0;
    while g != 0 {
        i ^= g;
        g >>= 1;
    }
    i
}

/// Gray-labelled map of a toggle function.
///
/// Row variables are `q_{n-1} ... q_k`, column variables `q_{k-1} ... q_0`,
/// with `k = ceil(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMapGrid {
    width: usize,
    split: usize,
    target: Option<usize>,
    primed: Vec<bool>,
    by_state: Vec<Toggle>,
}

impl QMapGrid {
    /// A grid with no associated stage; `values` is indexed by state.
    pub fn from_states(width: usize, values: Vec<Toggle>) -> Self {
        assert!((1..=crate::boolfn::MAX_WIDTH).contains(&width));
        assert_eq!(values.len(), 1 << width);
        Self {
            width,
            split: width.div_ceil(2),
            target: None,
            primed: vec![false; width],
            by_state: values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of column variables.
    pub fn split(&self) -> usize {
        self.split
    }

    /// The stage target, if this grid came from a toggle table.
    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn is_primed(&self, var: usize) -> bool {
        self.primed[var]
    }

    pub fn rows(&self) -> usize {
        1 << (self.width - self.split)
    }

    pub fn cols(&self) -> usize {
        1 << self.split
    }

    /// Variables labelling the rows, most significant first.
    pub fn row_vars(&self) -> Vec<usize> {
        (self.split..self.width).rev().collect()
    }

    /// Variables labelling the columns, most significant first.
    pub fn col_vars(&self) -> Vec<usize> {
        (0..self.split).rev().collect()
    }

    /// Assignment of the row variables for row `r`, as bits `0..n-k`.
    pub fn row_label(&self, r: usize) -> u32 {
        gray(r as u32)
    }

    pub fn col_label(&self, c: usize) -> u32 {
        gray(c as u32)
    }

    pub fn state_at(&self, r: usize, c: usize) -> u32 {
        self.row_label(r) << self.split | self.col_label(c)
    }

    /// Row and column holding `state`.
    pub fn position_of(&self, state: u32) -> (usize, usize) {
        let col_mask = full_mask(self.split);
        (
            gray_rank(state >> self.split) as usize,
            gray_rank(state & col_mask) as usize,
        )
    }

    pub fn cell(&self, r: usize, c: usize) -> Toggle {
        self.by_state[self.state_at(r, c) as usize]
    }

    pub fn value(&self, state: u32) -> Toggle {
        self.by_state[state as usize]
    }

    /// Cell values indexed by state rather than by position.
    pub fn values(&self) -> &[Toggle] {
        &self.by_state
    }
}

/// Lays out a stage's toggle table as a map.
pub fn build_qmap(table: &ToggleTable) -> QMapGrid {
    let mut grid = QMapGrid::from_states(table.width(), table.entries().to_vec());
    grid.target = Some(table.target());
    grid.primed = table.primed().to_vec();
    grid
}

/// States covered by `cube`.
pub fn cube_cells(cube: &Cube) -> Vec<u32> {
    cube.cells()
}

/// Checks the mode's covering rule cell by cell. DontCare cells are
/// unconstrained.
pub fn verify_cover(cover: &Cover, grid: &QMapGrid) -> bool {
    if cover.width() != grid.width() {
        return false;
    }
    (0..1u32 << grid.width()).all(|state| {
        let hits = cover.coverage(state);
        match (cover.mode(), grid.value(state)) {
            (_, Toggle::DontCare) => true,
            (CoverMode::DisjointSop, Toggle::One) => hits == 1,
            (CoverMode::DisjointSop, Toggle::Zero) => hits == 0,
            (CoverMode::Esop, Toggle::One) => hits % 2 == 1,
            (CoverMode::Esop, Toggle::Zero) => hits.is_multiple_of(2),
        }
    })
}

/// Minimum disjoint cover: fewest cubes, then fewest literals, then the
/// lexicographically smallest sorted cube list.
///
/// Exact when at most [`EXACT_VARIABLE_CAP`] variables remain after dropping
/// the stage target. Larger maps use a greedy pass: each still-uncovered 1
/// (in ascending state order) seeds the largest cube that contains it and
/// touches only uncovered 1/DontCare cells.
pub fn minimize_disjoint(grid: &QMapGrid) -> Cover {
    let problem = Problem::from_grid(grid);
    let cubes = if problem.width <= EXACT_VARIABLE_CAP {
        exact::disjoint(&problem)
    } else {
        heuristic::disjoint(&problem)
    };
    problem.lift(CoverMode::DisjointSop, cubes)
}

/// Minimum ESOP cover with the same tie-breaks as [`minimize_disjoint`].
///
/// Exact when the map width is at most `exact_limit` and the free variable
/// count is within [`EXACT_VARIABLE_CAP`]. Otherwise the positive-polarity
/// Reed-Muller form seeds a pairwise merge
/// (`xC ^ ~xC = C`, `xC ^ C = ~xC`, `C ^ C = 0`), which is valid but not
/// necessarily minimal.
pub fn minimize_esop(grid: &QMapGrid, exact_limit: usize) -> Cover {
    let problem = Problem::from_grid(grid);
    let cubes = if grid.width() <= exact_limit && problem.width <= EXACT_VARIABLE_CAP {
        exact::esop(&problem)
    } else {
        heuristic::esop(&problem)
    };
    problem.lift(CoverMode::Esop, cubes)
}

/// Positive-polarity Reed-Muller expansion of a toggle table, DontCares read
/// as 0.
pub fn pprm_cover(table: &ToggleTable) -> Cover {
    let values: Vec<bool> = table.entries().iter().map(|&t| t == Toggle::One).collect();
    Cover::new(
        CoverMode::Esop,
        table.width(),
        heuristic::pprm(table.width(), &values),
    )
}

/// A single-output function on `width` variables, possibly a projection of a
/// wider grid.
pub(crate) struct Problem {
    pub width: usize,
    pub ones: Vec<bool>,
    pub dont_care: Vec<bool>,
    /// Original variable index of each problem variable.
    var_map: Vec<usize>,
    full_width: usize,
}

impl Problem {
    fn from_grid(grid: &QMapGrid) -> Self {
        let n = grid.width();
        let values = grid.values();
        if let Some(t) = grid.target() {
            let bit = 1u32 << t;
            let independent = (0..1u32 << n).filter(|s| s & bit == 0).all(|s| {
                let (a, b) = (values[s as usize], values[(s | bit) as usize]);
                !(a.is_defined() && b.is_defined() && a != b)
            });
            if independent {
                let var_map: Vec<usize> = (0..n).filter(|&v| v != t).collect();
                let m = n - 1;
                let mut ones = vec![false; 1 << m];
                let mut dont_care = vec![false; 1 << m];
                for s in 0..1u32 << m {
                    let low = s & (bit - 1);
                    let high = (s & !(bit - 1)) << 1;
                    let base = high | low;
                    let merged = match values[base as usize] {
                        Toggle::DontCare => values[(base | bit) as usize],
                        v => v,
                    };
                    ones[s as usize] = merged == Toggle::One;
                    dont_care[s as usize] = merged == Toggle::DontCare;
                }
                return Self {
                    width: m,
                    ones,
                    dont_care,
                    var_map,
                    full_width: n,
                };
            }
        }
        Self {
            width: n,
            ones: values.iter().map(|&v| v == Toggle::One).collect(),
            dont_care: values.iter().map(|&v| v == Toggle::DontCare).collect(),
            var_map: (0..n).collect(),
            full_width: n,
        }
    }

    fn lift(&self, mode: CoverMode, cubes: Vec<Cube>) -> Cover {
        let mut lifted: Vec<Cube> = cubes
            .into_iter()
            .map(|c| {
                let mut out = Cube::universe(self.full_width);
                for (var, &orig) in self.var_map.iter().enumerate() {
                    out = out.with(orig, c.literal(var));
                }
                out
            })
            .collect();
        lifted.sort();
        Cover::new(mode, self.full_width, lifted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::gray_to_binary_function;
    use crate::cascade::{decompose, StageOrder};

    fn gray_grids() -> Vec<QMapGrid> {
        let f = gray_to_binary_function(4).unwrap();
        decompose(&f, &StageOrder::natural(4))
            .unwrap()
            .iter()
            .map(build_qmap)
            .collect()
    }

    fn cubes(width: usize, list: &[&str]) -> Vec<Cube> {
        let mut v: Vec<Cube> = list
            .iter()
            .map(|s| Cube::parse(width, s).unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn grid_layout() {
        let grids = gray_grids();
        let g = &grids[0];
        assert_eq!((g.rows(), g.cols(), g.split()), (4, 4, 2));
        assert_eq!(g.row_vars(), vec![3, 2]);
        assert_eq!(g.col_vars(), vec![1, 0]);
        let ones: Vec<u32> = (0..16).filter(|&s| g.value(s) == Toggle::One).collect();
        let parity: Vec<u32> = (0..16u32)
            .filter(|s| (s >> 1).count_ones() % 2 == 1)
            .collect();
        assert_eq!(ones, parity);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(g.position_of(g.state_at(r, c)), (r, c));
            }
        }
        let one = QMapGrid::from_states(1, vec![Toggle::Zero, Toggle::One]);
        assert_eq!((one.rows(), one.cols()), (1, 2));
        assert!(one.row_vars().is_empty());
    }

    #[test]
    fn gray_labels_are_adjacent() {
        let g = QMapGrid::from_states(5, vec![Toggle::Zero; 32]);
        for r in 0..g.rows() {
            let next = (r + 1) % g.rows();
            assert_eq!((g.row_label(r) ^ g.row_label(next)).count_ones(), 1);
        }
        for c in 0..g.cols() {
            let next = (c + 1) % g.cols();
            assert_eq!((g.col_label(c) ^ g.col_label(next)).count_ones(), 1);
        }
    }

    #[test]
    fn gray_disjoint_covers() {
        let grids = gray_grids();
        let covers: Vec<Cover> = grids.iter().map(minimize_disjoint).collect();
        assert_eq!(
            covers[0].sorted_cubes(),
            cubes(4, &["~q3 ~q2 q1", "~q3 q2 ~q1", "q3 ~q2 ~q1", "q3 q2 q1"])
        );
        assert_eq!(covers[1].sorted_cubes(), cubes(4, &["q3 ~q2", "~q3 q2"]));
        assert_eq!(covers[2].sorted_cubes(), cubes(4, &["q3"]));
        assert!(covers[3].is_empty());
        for (cover, grid) in covers.iter().zip(&grids) {
            assert!(verify_cover(cover, grid));
        }
    }

    #[test]
    fn gray_esop_covers() {
        let grids = gray_grids();
        let covers: Vec<Cover> = grids
            .iter()
            .map(|g| minimize_esop(g, DEFAULT_EXACT_LIMIT))
            .collect();
        assert_eq!(covers[0].cubes(), &cubes(4, &["q1", "q2", "q3"])[..]);
        assert_eq!(covers[1].cubes(), &cubes(4, &["q2", "q3"])[..]);
        assert_eq!(covers[2].cubes(), &cubes(4, &["q3"])[..]);
        assert!(covers[3].is_empty());

        let hand = Cover::new(CoverMode::Esop, 4, cubes(4, &["~q3 q1", "q3 ~q1", "q2"]));
        assert!(verify_cover(&hand, &grids[0]));
        for s in 0..16 {
            assert_eq!(hand.eval_xor(s), covers[0].eval_xor(s));
        }
        let alt = Cover::new(CoverMode::Esop, 4, cubes(4, &["~q2", "~q3"]));
        assert!(verify_cover(&alt, &grids[1]));
    }

    #[test]
    fn overlapping_cover_fails_disjoint_check() {
        let grids = gray_grids();
        let hand = Cover::new(
            CoverMode::DisjointSop,
            4,
            cubes(4, &["~q3 q1", "q3 ~q1", "q2"]),
        );
        assert!(!verify_cover(&hand, &grids[0]));
        // q3=0, q2=1, q1=1 lies in both ~q3 q1 and q2.
        assert_eq!(hand.coverage(0b0110), 2);
    }

    #[test]
    fn empty_cases() {
        let zero = QMapGrid::from_states(3, vec![Toggle::Zero; 8]);
        assert!(minimize_disjoint(&zero).is_empty());
        assert!(minimize_esop(&zero, 4).is_empty());
        assert!(verify_cover(&Cover::new(CoverMode::Esop, 3, vec![]), &zero));
        assert!(!verify_cover(
            &Cover::new(CoverMode::Esop, 2, vec![]),
            &zero
        ));
    }

    #[test]
    fn pprm_examples() {
        let parity: Vec<Toggle> = (0..16u32)
            .map(|s| Toggle::from_bool((s >> 1).count_ones() % 2 == 1))
            .collect();
        let t = ToggleTable::new(0, 4, parity, vec![false; 4]);
        assert_eq!(pprm_cover(&t).sorted_cubes(), cubes(4, &["q1", "q2", "q3"]));

        let zero = ToggleTable::new(0, 3, vec![Toggle::Zero; 8], vec![false; 3]);
        assert!(pprm_cover(&zero).is_empty());

        let and = ToggleTable::new(
            0,
            2,
            vec![Toggle::Zero, Toggle::Zero, Toggle::Zero, Toggle::One],
            vec![false; 2],
        );
        assert_eq!(pprm_cover(&and).cubes(), &cubes(2, &["q1 q0"])[..]);
    }

    #[test]
    fn target_dependent_grid_keeps_target_literal() {
        // T = q0 on a stage targeting q0: unavoidable read of the target.
        let entries = (0..4u32).map(|s| Toggle::from_bool(s & 1 == 1)).collect();
        let t = ToggleTable::new(0, 2, entries, vec![false; 2]);
        let g = build_qmap(&t);
        let cover = minimize_esop(&g, 4);
        assert_eq!(cover.cubes(), &cubes(2, &["q0"])[..]);
        assert!(verify_cover(&cover, &g));
    }

    #[test]
    fn dont_cares_are_free() {
        use Toggle::*;
        // 1 at 11, DontCare at 10: the single cube q1 covers both.
        let g = QMapGrid::from_states(2, vec![Zero, Zero, DontCare, One]);
        assert_eq!(minimize_esop(&g, 4).cubes(), &cubes(2, &["q1"])[..]);
        assert_eq!(minimize_disjoint(&g).cubes(), &cubes(2, &["q1"])[..]);
    }
}

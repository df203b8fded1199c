// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::cube::{full_mask, Cube, Literal};
use super::Problem;

/// Positive-polarity Reed-Muller coefficients via the in-place binary Moebius
/// transform; each nonzero coefficient becomes a positive cube.
pub(super) fn pprm(width: usize, values: &[bool]) -> Vec<Cube> {
    let mut coeff = values.to_vec();
    for var in 0..width {
        let bit = 1usize << var;
        for s in 0..coeff.len() {
            if s & bit != 0 {
                coeff[s] ^= coeff[s ^ bit];
            }
        }
    }
    let mut cubes: Vec<Cube> = coeff
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(s, _)| Cube::from_masks(width, s as u32, s as u32))
        .collect();
    cubes.sort();
    cubes
}

/// XOR-combines two cubes that differ in exactly one variable, if possible.
fn merge(a: &Cube, b: &Cube) -> Option<Option<Cube>> {
    if a == b {
        return Some(None);
    }
    let diff_care = a.care_mask() ^ b.care_mask();
    let diff_value = (a.value_mask() ^ b.value_mask()) & a.care_mask() & b.care_mask();
    let diff = diff_care | diff_value;
    if diff.count_ones() != 1 {
        return None;
    }
    let var = diff.trailing_zeros() as usize;
    let merged = match (a.literal(var), b.literal(var)) {
        (Literal::Positive, Literal::Negative) | (Literal::Negative, Literal::Positive) => {
            Literal::Absent
        }
        (Literal::Positive, Literal::Absent) | (Literal::Absent, Literal::Positive) => {
            Literal::Negative
        }
        (Literal::Negative, Literal::Absent) | (Literal::Absent, Literal::Negative) => {
            Literal::Positive
        }
        _ => unreachable!("cubes differ at {var}"),
    };
    Some(Some(a.with(var, merged)))
}

/// PPRM-seeded ESOP: repeatedly replaces a mergeable pair by its merge until
/// no pair merges. Every step keeps the XOR of the cubes unchanged and
/// removes at least one cube.
pub(super) fn esop(problem: &Problem) -> Vec<Cube> {
    let mut cubes: BTreeSet<Cube> = pprm(problem.width, &problem.ones).into_iter().collect();
    let toggle = |set: &mut BTreeSet<Cube>, c: Cube| {
        if !set.remove(&c) {
            set.insert(c);
        }
    };
    'outer: loop {
        let snapshot: Vec<Cube> = cubes.iter().copied().collect();
        for a in &snapshot {
            for var in 0..problem.width {
                for lit in [Literal::Absent, Literal::Positive, Literal::Negative] {
                    if lit == a.literal(var) {
                        continue;
                    }
                    let b = a.with(var, lit);
                    if !cubes.contains(&b) {
                        continue;
                    }
                    cubes.remove(a);
                    cubes.remove(&b);
                    if let Some(Some(m)) = merge(a, &b) {
                        toggle(&mut cubes, m);
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    cubes.into_iter().collect()
}

/// Greedy disjoint cover. Each uncovered 1, in ascending order, seeds the
/// largest cube around it whose cells are all 1/DontCare and still
/// uncovered. For up to ten variables every drop set is tried, largest
/// first; beyond that variables are dropped one at a time, highest first.
pub(super) fn disjoint(problem: &Problem) -> Vec<Cube> {
    let m = problem.width;
    let size = 1usize << m;
    let mut free: Vec<bool> = (0..size)
        .map(|s| problem.ones[s] || problem.dont_care[s])
        .collect();
    let fits = |cube: &Cube, free: &[bool]| cube.cells().iter().all(|&s| free[s as usize]);

    let mut drop_sets: Vec<u32> = Vec::new();
    if m <= 10 {
        drop_sets = (0..1u32 << m).collect();
        drop_sets.sort_by_key(|d| std::cmp::Reverse(d.count_ones()));
    }

    let mut out = Vec::new();
    for seed in 0..size as u32 {
        if !problem.ones[seed as usize] || !free[seed as usize] {
            continue;
        }
        let cube = if m <= 10 {
            let mut best: Option<Cube> = None;
            for &drop in &drop_sets {
                if let Some(b) = best {
                    if drop.count_ones() as usize != m - b.literal_count() {
                        break;
                    }
                }
                let candidate = Cube::from_masks(m, full_mask(m) & !drop, seed);
                if fits(&candidate, &free) && best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            }
            best.expect("the seed minterm fits")
        } else {
            let mut cube = Cube::minterm(m, seed);
            for var in (0..m).rev() {
                let wider = cube.with(var, Literal::Absent);
                if fits(&wider, &free) {
                    cube = wider;
                }
            }
            cube
        };
        for s in cube.cells() {
            free[s as usize] = false;
        }
        out.push(cube);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(width: usize, ones: Vec<bool>) -> Problem {
        let size = ones.len();
        Problem {
            width,
            ones,
            dont_care: vec![false; size],
            var_map: (0..width).collect(),
            full_width: width,
        }
    }

    fn xor_eval(cubes: &[Cube], s: u32) -> bool {
        cubes.iter().filter(|c| c.contains(s)).count() % 2 == 1
    }

    #[test]
    fn merge_rules() {
        let c = |t: &str| Cube::parse(3, t).unwrap();
        assert_eq!(merge(&c("q1 q0"), &c("q1 ~q0")), Some(Some(c("q1"))));
        assert_eq!(merge(&c("q1 q0"), &c("q1")), Some(Some(c("q1 ~q0"))));
        assert_eq!(merge(&c("q2"), &c("q2")), Some(None));
        assert_eq!(merge(&c("q2 q1"), &c("q1 q0")), None);
    }

    #[test]
    fn heuristic_esop_is_equivalent() {
        // Majority of three plus a parity term, on 6 variables.
        let width = 6;
        let ones: Vec<bool> = (0..64u32)
            .map(|s| ((s & 7).count_ones() >= 2) ^ (s >> 3 & 1 == 1) ^ (s >> 5 == 1))
            .collect();
        let p = problem(width, ones.clone());
        let cubes = esop(&p);
        assert!(cubes.len() <= pprm(width, &ones).len());
        for s in 0..64u32 {
            assert_eq!(xor_eval(&cubes, s), ones[s as usize]);
        }
    }

    #[test]
    fn pprm_merge_finds_negative_literal() {
        // ~q0 on one variable has PPRM 1 ^ q0, which merges to ~q0.
        let p = problem(1, vec![true, false]);
        assert_eq!(esop(&p), vec![Cube::parse(1, "~q0").unwrap()]);
    }

    #[test]
    fn greedy_disjoint_is_valid() {
        let width = 6;
        let ones: Vec<bool> = (0..64u32).map(|s| s % 3 == 0 || s >= 48).collect();
        let p = problem(width, ones.clone());
        let cubes = disjoint(&p);
        for s in 0..64u32 {
            let hits = cubes.iter().filter(|c| c.contains(s)).count();
            assert_eq!(hits, usize::from(ones[s as usize]));
        }
        let ones_count = ones.iter().filter(|&&b| b).count();
        assert!(cubes.len() < ones_count);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Exact minimization for up to four free variables.
//!
//! Both searches precompute, once per variable count `m`, the optimal cost
//! of every one of the `2^(2^m)` functions (ESOP) or cell sets (disjoint
//! partition). Cost is `(cubes, literals)` packed as `64 * cubes + literals`,
//! which orders lexicographically because a cube has at most four literals.
//! A cover is then read back greedily, always taking the smallest cube that
//! stays on an optimal path, which yields the lexicographically smallest
//! sorted cube list among optimal covers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use super::cube::Cube;
use super::Problem;

const CUBE_WEIGHT: u16 = 64;

struct CubeSet {
    /// Sorted by cube order.
    cubes: Vec<Cube>,
    /// Truth table of each cube over the `2^m` states.
    masks: Vec<u32>,
    costs: Vec<u16>,
}

fn cube_set(m: usize) -> &'static CubeSet {
    static SETS: [OnceLock<CubeSet>; 5] = [const { OnceLock::new() }; 5];
    SETS[m].get_or_init(|| {
        let mut cubes = Vec::new();
        for care in 0..1u32 << m {
            let mut value = care;
            loop {
                cubes.push(Cube::from_masks(m, care, value));
                if value == 0 {
                    break;
                }
                value = (value - 1) & care;
            }
        }
        cubes.sort();
        let masks = cubes
            .iter()
            .map(|c| {
                (0..1u32 << m)
                    .filter(|&s| c.contains(s))
                    .fold(0u32, |acc, s| acc | 1 << s)
            })
            .collect();
        let costs = cubes
            .iter()
            .map(|c| CUBE_WEIGHT + c.literal_count() as u16)
            .collect();
        CubeSet {
            cubes,
            masks,
            costs,
        }
    })
}

/// Optimal ESOP cost of every function on `m` variables (Dijkstra from the
/// zero function; each edge XORs one cube in).
fn esop_costs(m: usize) -> &'static [u16] {
    static TABLES: [OnceLock<Vec<u16>>; 5] = [const { OnceLock::new() }; 5];
    TABLES[m].get_or_init(|| {
        let set = cube_set(m);
        let size = 1usize << (1 << m);
        let mut dist = vec![u16::MAX; size];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u16, 0u32)));
        while let Some(Reverse((d, f))) = heap.pop() {
            if d > dist[f as usize] {
                continue;
            }
            for (mask, cost) in set.masks.iter().zip(&set.costs) {
                let g = (f ^ mask) as usize;
                let nd = d + cost;
                if nd < dist[g] {
                    dist[g] = nd;
                    heap.push(Reverse((nd, g as u32)));
                }
            }
        }
        dist
    })
}

/// Optimal cost of partitioning every cell set on `m` variables into cubes.
fn partition_costs(m: usize) -> &'static [u16] {
    static TABLES: [OnceLock<Vec<u16>>; 5] = [const { OnceLock::new() }; 5];
    TABLES[m].get_or_init(|| {
        let set = cube_set(m);
        let states = 1usize << m;
        let mut containing: Vec<Vec<usize>> = vec![Vec::new(); states];
        for (i, mask) in set.masks.iter().enumerate() {
            for (s, list) in containing.iter_mut().enumerate() {
                if mask >> s & 1 == 1 {
                    list.push(i);
                }
            }
        }
        let size = 1usize << states;
        let mut best = vec![u16::MAX; size];
        best[0] = 0;
        for cells in 1..size as u32 {
            let low = cells.trailing_zeros() as usize;
            best[cells as usize] = containing[low]
                .iter()
                .filter(|&&i| set.masks[i] & !cells == 0)
                .map(|&i| best[(cells ^ set.masks[i]) as usize] + set.costs[i])
                .min()
                .expect("the minterm of the lowest cell always fits");
        }
        best
    })
}

fn truth_table(bits: &[bool]) -> u32 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (s, &b)| acc | u32::from(b) << s)
}

fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur | !mask).wrapping_add(1) & mask)
        };
        Some(cur)
    })
}

/// Solves over every DontCare completion and keeps the cheapest, breaking
/// ties by the reconstructed cube list.
fn solve(
    problem: &Problem,
    cost_of: impl Fn(u32) -> u16,
    rebuild: impl Fn(u32) -> Vec<Cube>,
) -> Vec<Cube> {
    let ones = truth_table(&problem.ones);
    let free = truth_table(&problem.dont_care);
    let best = submasks(free).map(|sub| cost_of(ones | sub)).min().unwrap();
    submasks(free)
        .filter(|&sub| cost_of(ones | sub) == best)
        .map(|sub| rebuild(ones | sub))
        .min()
        .unwrap()
}

pub(super) fn esop(problem: &Problem) -> Vec<Cube> {
    let m = problem.width;
    let set = cube_set(m);
    let dist = esop_costs(m);
    solve(
        problem,
        |f| dist[f as usize],
        |mut f| {
            let mut out = Vec::new();
            while f != 0 {
                let here = dist[f as usize];
                let i = (0..set.cubes.len())
                    .find(|&i| dist[(f ^ set.masks[i]) as usize] + set.costs[i] == here)
                    .expect("an optimal cover has a next cube");
                out.push(set.cubes[i]);
                f ^= set.masks[i];
            }
            out
        },
    )
}

pub(super) fn disjoint(problem: &Problem) -> Vec<Cube> {
    let m = problem.width;
    let set = cube_set(m);
    let best = partition_costs(m);
    solve(
        problem,
        |cells| best[cells as usize],
        |mut cells| {
            let mut out = Vec::new();
            while cells != 0 {
                let here = best[cells as usize];
                let i = (0..set.cubes.len())
                    .find(|&i| {
                        set.masks[i] & !cells == 0
                            && best[(cells ^ set.masks[i]) as usize] + set.costs[i] == here
                    })
                    .expect("an optimal partition has a next cube");
                out.push(set.cubes[i]);
                cells ^= set.masks[i];
            }
            out
        },
    )
}

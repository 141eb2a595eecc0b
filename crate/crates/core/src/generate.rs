//! Seeded random simplicial complexes and random monotone orderings.

use std::collections::HashSet;
use std::fmt::Write as _;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::OrderedComplex;

pub const MAX_VERTICES: u32 = 12;
pub const MAX_DIM: usize = 3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for case `index` of a run started with `seed`.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (index as u64).wrapping_add(1)
}

/// Simplex list in lexicographic order by dimension: between 1 and 12
/// vertices, then each candidate simplex of dimension ≤ 3 whose facets are
/// all present is kept with probability 1/2.
pub fn random_simplices<R: Rng>(rng: &mut R) -> Vec<Vec<u32>> {
    let n = rng.gen_range(1..=MAX_VERTICES);
    let mut present: HashSet<Vec<u32>> = (0..n).map(|v| vec![v]).collect();
    let mut out: Vec<Vec<u32>> = (0..n).map(|v| vec![v]).collect();
    for d in 1..=MAX_DIM {
        for s in (0..n).combinations(d + 1) {
            let facets_present = (0..s.len()).all(|drop| {
                let f: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, v)| *v)
                    .collect();
                present.contains(&f)
            });
            if facets_present && rng.gen_bool(0.5) {
                present.insert(s.clone());
                out.push(s);
            }
        }
    }
    out
}

pub fn simplices_to_text(simplices: &[Vec<u32>]) -> String {
    let mut out = String::new();
    for s in simplices {
        let _ = writeln!(out, "{}", s.iter().join(" "));
    }
    out
}

pub fn random_complex<R: Rng>(rng: &mut R) -> OrderedComplex {
    let text = simplices_to_text(&random_simplices(rng));
    OrderedComplex::from_simplicial_format(&text, false).expect("generated complex is valid")
}

/// A uniformly chosen ready cell at each step: a random topological order
/// of the face relation, with the empty cell first. `order[new] = old`.
pub fn random_monotone_order<R: Rng>(k: &OrderedComplex, rng: &mut R) -> Vec<usize> {
    topological_order(k, None, rng)
}

/// Random monotone order that keeps the relative order of the `p`-cells.
pub fn random_order_fixing<R: Rng>(k: &OrderedComplex, p: i32, rng: &mut R) -> Vec<usize> {
    topological_order(k, Some(p), rng)
}

fn topological_order<R: Rng>(k: &OrderedComplex, chained: Option<i32>, rng: &mut R) -> Vec<usize> {
    let n = k.len();
    if n == 0 {
        return Vec::new();
    }
    let mut waiting: Vec<usize> = k.cells().iter().map(|c| c.faces().len()).collect();
    // each chained cell also waits for its predecessor in the chain
    let mut next_in_chain = vec![None; n];
    if let Some(p) = chained {
        for w in k.cells_of_dim(p).windows(2) {
            next_in_chain[w[0]] = Some(w[1]);
            waiting[w[1]] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready = vec![0];
    while !ready.is_empty() {
        let pick = if order.is_empty() {
            0
        } else {
            rng.gen_range(0..ready.len())
        };
        let c = ready.swap_remove(pick);
        order.push(c);
        for &up in k.cofaces(c).iter().chain(next_in_chain[c].as_ref()) {
            waiting[up] -= 1;
            if waiting[up] == 0 {
                ready.push(up);
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    order
}

/// Random complex listed in a random monotone order.
pub fn random_filtration<R: Rng>(rng: &mut R) -> OrderedComplex {
    let k = random_complex(rng);
    let order = random_monotone_order(&k, rng);
    k.reordered(&order).expect("topological order is monotone")
}

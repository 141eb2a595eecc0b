//! Independent reference computations used to cross-check the reductions.
//!
//! Nothing here touches [`crate::gf2::Gf2Matrix`] or the exhaustive
//! reduction kernels: vectors are plain `Vec<u64>` rows and elimination is a
//! textbook reduced row-echelon pass with a pivot search per column.

use crate::complex::{OrderedComplex, PerDim};

/// Dense GF(2) vector over a fixed number of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(width: usize) -> Self {
        BitRow {
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Self::zeros(width);
        for i in indices {
            r.flip(i);
        }
        r
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.words.iter().enumerate() {
            for b in 0..64 {
                if (w >> b) & 1 == 1 {
                    out.push(k * 64 + b);
                }
            }
        }
        out
    }
}

/// Reduced row-echelon form: the surviving rows and their pivot columns.
pub struct Echelon {
    pub rows: Vec<BitRow>,
    pub pivots: Vec<usize>,
}

pub fn echelon(mut rows: Vec<BitRow>, width: usize) -> Echelon {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots }
}

pub fn rank(rows: Vec<BitRow>, width: usize) -> usize {
    echelon(rows, width).pivots.len()
}

/// Rank of a family of cell sets, each given by internal indices below `width`.
pub fn rank_of_sets(sets: &[Vec<usize>], width: usize) -> usize {
    rank(
        sets.iter()
            .map(|s| BitRow::from_indices(width, s.iter().copied()))
            .collect(),
        width,
    )
}

/// Basis of the solutions `x` of `Σ x_c · columns[c] = 0`, as index lists into `columns`.
pub fn nullspace(columns: &[BitRow], height: usize) -> Vec<Vec<usize>> {
    // Transpose into rows over the column index and eliminate.
    let n = columns.len();
    let rows: Vec<BitRow> = (0..height)
        .map(|r| BitRow::from_indices(n, (0..n).filter(|&c| columns[c].get(r))))
        .collect();
    let e = echelon(rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![free];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if row.get(free) {
                v.push(p);
            }
        }
        v.sort_unstable();
        out.push(v);
    }
    out
}

/// Columns of the boundary block from `p`-cells to `(p−1)`-cells, as bit rows
/// over internal indices.
fn boundary_columns(k: &OrderedComplex, p: i32) -> (Vec<usize>, Vec<BitRow>) {
    let cells = k.cells_of_dim(p);
    let cols = cells
        .iter()
        .map(|&c| BitRow::from_indices(k.len(), k.cell(c).faces().iter().copied()))
        .collect();
    (cells, cols)
}

/// Rank of `∂_p`, the block mapping `p`-chains to `(p−1)`-chains. For `p = 0`
/// this is the augmentation row.
pub fn boundary_rank(k: &OrderedComplex, p: i32) -> usize {
    let (_, cols) = boundary_columns(k, p);
    rank(cols, k.len())
}

/// `β̃_p = n_p − rank ∂_p − rank ∂_{p+1}` for `p = −1 ..= dim K`.
pub fn betti_by_rank(k: &OrderedComplex) -> PerDim<usize> {
    PerDim::from_vec(
        (-1..=k.dim())
            .map(|p| k.count(p) - boundary_rank(k, p) - boundary_rank(k, p + 1))
            .collect(),
    )
}

/// A basis of the `p`-cycles, as sets of internal indices.
pub fn cycle_space_basis(k: &OrderedComplex, p: i32) -> Vec<Vec<usize>> {
    let (cells, cols) = boundary_columns(k, p);
    nullspace(&cols, k.len())
        .into_iter()
        .map(|v| v.into_iter().map(|c| cells[c]).collect())
        .collect()
}

/// A basis of the `p`-cocycles: cochains every `(p+1)`-cell meets evenly.
pub fn cocycle_space_basis(k: &OrderedComplex, p: i32) -> Vec<Vec<usize>> {
    let cells = k.cells_of_dim(p);
    let cols: Vec<BitRow> = cells
        .iter()
        .map(|&c| BitRow::from_indices(k.len(), k.cofaces(c).iter().copied()))
        .collect();
    nullspace(&cols, k.len())
        .into_iter()
        .map(|v| v.into_iter().map(|c| cells[c]).collect())
        .collect()
}

/// Rank of the reduced relative cohomology of `(K, K_ℓ)` in dimension `p`,
/// from the coboundary restricted to cells after `ℓ` (`None`: all cells).
pub fn relative_cohomology_rank(k: &OrderedComplex, ell: Option<usize>, p: i32) -> usize {
    let start = ell.map_or(0, |l| l + 1);
    let outside = |q: i32| -> Vec<usize> {
        k.cells_of_dim(q)
            .into_iter()
            .filter(|&c| c >= start)
            .collect()
    };
    // δ from q-cochains to (q+1)-cochains on K \ L.
    let delta_rank = |q: i32| -> usize {
        let cols: Vec<BitRow> = outside(q)
            .iter()
            .map(|&c| {
                BitRow::from_indices(
                    k.len(),
                    k.cofaces(c).iter().copied().filter(|&f| f >= start),
                )
            })
            .collect();
        rank(cols, k.len())
    };
    outside(p).len() - delta_rank(p) - delta_rank(p - 1)
}

/// Classic left-to-right persistence reduction that stops as soon as the
/// lowest entry is unique. Returns the pairs `(low, column)`.
pub fn standard_pairs(k: &OrderedComplex) -> Vec<(usize, usize)> {
    let n = k.len();
    let mut cols: Vec<BitRow> = k
        .cells()
        .iter()
        .map(|c| BitRow::from_indices(n, c.faces().iter().copied()))
        .collect();
    let lowest = |r: &BitRow| r.ones().last().copied();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    for j in 0..n {
        while let Some(low) = lowest(&cols[j]) {
            match owner[low] {
                Some(l) => {
                    let other = cols[l].clone();
                    cols[j].xor(&other);
                }
                None => {
                    owner[low] = Some(j);
                    pairs.push((low, j));
                    break;
                }
            }
        }
    }
    pairs
}

/// All masks `S` over `vectors` with `start + Σ_{i∈S} vectors[i] = 0`,
/// enumerated in Gray-code order. Callers bound `vectors.len()`.
pub fn zero_sums(vectors: &[BitRow], start: &BitRow) -> Vec<u32> {
    assert!(
        vectors.len() < 32,
        "enumeration over {} vectors",
        vectors.len()
    );
    let mut acc = start.clone();
    let mut mask = 0u32;
    let mut out = Vec::new();
    if acc.is_zero() {
        out.push(0);
    }
    for step in 1u64..(1u64 << vectors.len()) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        acc.xor(&vectors[bit]);
        if acc.is_zero() {
            out.push(mask);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let w = 4;
        let cols = vec![
            BitRow::from_indices(w, [0, 1]),
            BitRow::from_indices(w, [1, 2]),
            BitRow::from_indices(w, [0, 2]),
        ];
        assert_eq!(rank(cols.clone(), w), 2);
        assert_eq!(nullspace(&cols, w), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn hollow_triangle_betti() {
        let k = OrderedComplex::from_simplicial_format("0\n1\n2\n0 1\n0 2\n1 2\n", false).unwrap();
        assert_eq!(betti_by_rank(&k), PerDim::from_vec(vec![0, 0, 1]));
        assert_eq!(cycle_space_basis(&k, 1), vec![vec![4, 5, 6]]);
        // a single edge never meets a 2-cell here, so every edge is a cocycle
        assert_eq!(cocycle_space_basis(&k, 1).len(), 3);
    }

    #[test]
    fn zero_sums_finds_all_cycles() {
        let w = 3;
        let vs = vec![
            BitRow::from_indices(w, [0, 1]),
            BitRow::from_indices(w, [1, 2]),
            BitRow::from_indices(w, [0, 2]),
        ];
        assert_eq!(zero_sums(&vs, &BitRow::zeros(w)), vec![0, 0b111]);
        assert_eq!(
            zero_sums(&vs[..2], &BitRow::from_indices(w, [0, 2])),
            vec![0b11]
        );
    }

    #[test]
    fn standard_pairs_hollow_triangle() {
        let k = OrderedComplex::from_simplicial_format("0\n1\n2\n0 1\n0 2\n1 2\n", false).unwrap();
        assert_eq!(standard_pairs(&k), vec![(0, 1), (2, 4), (3, 5)]);
    }
}

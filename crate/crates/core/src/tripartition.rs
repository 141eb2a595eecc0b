//! Tree, cotree, and leftover cells of every dimension, computed in batch or
//! incrementally along the filtration, and the persistence diagram that
//! refines them.

use std::fmt::Write as _;

use crate::complex::{Cell, OrderedComplex, PerDim};
use crate::error::{Error, Result};
use crate::reduction::{reduce, ColumnReducer, ColumnReduction, RowReduction};

/// Which of the three sets a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Tree,
    Cotree,
    Leftover,
}

/// The split `K^p = A_p ⊔ A^p ⊔ E_p` for every dimension `p ≥ −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPartition {
    dims: Vec<i32>,
    parts: Vec<Part>,
    tree: PerDim<Vec<usize>>,
    cotree: PerDim<Vec<usize>>,
    leftover: PerDim<Vec<usize>>,
}

impl TriPartition {
    fn from_parts(dims: impl Iterator<Item = i32>, parts: Vec<Part>) -> Self {
        let dims: Vec<i32> = dims.collect();
        let top = dims.iter().copied().max().unwrap_or(-1);
        let slots = (top + 2) as usize;
        let (mut tree, mut cotree, mut leftover) = (
            vec![Vec::new(); slots],
            vec![Vec::new(); slots],
            vec![Vec::new(); slots],
        );
        for (c, part) in parts.iter().enumerate() {
            let slot = (dims[c] + 1) as usize;
            match part {
                Part::Tree => tree[slot].push(c),
                Part::Cotree => cotree[slot].push(c),
                Part::Leftover => leftover[slot].push(c),
            }
        }
        TriPartition {
            dims,
            parts,
            tree: PerDim::from_vec(tree),
            cotree: PerDim::from_vec(cotree),
            leftover: PerDim::from_vec(leftover),
        }
    }

    pub fn part(&self, cell: usize) -> Part {
        self.parts[cell]
    }

    pub fn dim_of(&self, cell: usize) -> i32 {
        self.dims[cell]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Highest dimension covered.
    pub fn dim(&self) -> i32 {
        self.tree.top()
    }

    fn slice(v: &PerDim<Vec<usize>>, p: i32) -> &[usize] {
        v.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `A_p`, ascending internal indices.
    pub fn tree(&self, p: i32) -> &[usize] {
        Self::slice(&self.tree, p)
    }

    /// `A^p`, ascending internal indices.
    pub fn cotree(&self, p: i32) -> &[usize] {
        Self::slice(&self.cotree, p)
    }

    /// `E_p`, ascending internal indices.
    pub fn leftover(&self, p: i32) -> &[usize] {
        Self::slice(&self.leftover, p)
    }
}

/// Tree cells have non-zero columns in `R`, cotree cells non-zero rows in `Q`.
pub fn from_reductions(
    k: &OrderedComplex,
    cr: &ColumnReduction,
    rr: &RowReduction,
) -> Result<TriPartition> {
    for size in [cr.size(), rr.size()] {
        if size != k.len() {
            return Err(Error::SizeMismatch {
                left: size,
                right: k.len(),
            });
        }
    }
    let mut parts = Vec::with_capacity(k.len());
    for c in 0..k.len() {
        let part = match (cr.is_zero(c), rr.is_zero(c)) {
            (false, false) => {
                return Err(Error::verify(
                    "tri-partition",
                    "cell has a non-zero column and a non-zero row",
                    vec![vec![c]],
                ))
            }
            (false, true) => Part::Tree,
            (true, false) => Part::Cotree,
            (true, true) => Part::Leftover,
        };
        parts.push(part);
    }
    Ok(TriPartition::from_parts(
        (0..k.len()).map(|c| k.dim_of(c)),
        parts,
    ))
}

pub fn tri_partition(k: &OrderedComplex) -> TriPartition {
    let (cr, rr) = reduce(k);
    from_reductions(k, &cr, &rr).expect("tree and cotree are disjoint")
}

/// Outcome of adding one cell to the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// The cell's reduced column vanished; it joins the leftover.
    Birth { cell: usize },
    /// The cell joins the tree and `killed` moves from leftover to cotree.
    Death { cell: usize, killed: usize },
}

/// Tri-partition of a growing prefix `K_ℓ`, kept together with the full
/// exhaustively reduced `R` and `U` of that prefix.
#[derive(Clone, Debug)]
pub struct IncrementalTriPartition {
    dims: Vec<i32>,
    parts: Vec<Part>,
    reducer: ColumnReducer,
}

impl Default for IncrementalTriPartition {
    fn default() -> Self {
        Self::new()
    }
}

impl IncrementalTriPartition {
    /// State for `K_0 = {∅}`, with the empty cell in `E_{−1}`.
    pub fn new() -> Self {
        let mut reducer = ColumnReducer::empty();
        reducer.push(&[]).expect("empty column");
        IncrementalTriPartition {
            dims: vec![-1],
            parts: vec![Part::Leftover],
            reducer,
        }
    }

    /// Number of cells added so far, the empty cell included.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Adds the next cell; its faces are internal indices of earlier cells.
    pub fn add(&mut self, cell: &Cell) -> Result<Step> {
        let next = self.len();
        let p = cell.dim();
        if p < 0 {
            return Err(Error::OrderingMismatch(
                "the empty cell is already present".into(),
            ));
        }
        if cell.faces().is_empty() {
            return Err(Error::OrderingMismatch(format!("cell {next} has no faces")));
        }
        for &f in cell.faces() {
            if f >= next {
                return Err(Error::OrderingMismatch(format!(
                    "face {f} of cell {next} has not been added yet"
                )));
            }
            if self.dims[f] != p - 1 {
                return Err(Error::OrderingMismatch(format!(
                    "face {f} of cell {next} has dimension {}, expected {}",
                    self.dims[f],
                    p - 1
                )));
            }
        }
        let low = self.reducer.push(cell.faces())?;
        self.dims.push(p);
        Ok(match low {
            None => {
                self.parts.push(Part::Leftover);
                Step::Birth { cell: next }
            }
            Some(killed) => {
                self.parts.push(Part::Tree);
                debug_assert_eq!(self.parts[killed], Part::Leftover);
                self.parts[killed] = Part::Cotree;
                Step::Death { cell: next, killed }
            }
        })
    }

    pub fn partition(&self) -> TriPartition {
        TriPartition::from_parts(self.dims.iter().copied(), self.parts.clone())
    }

    /// The reduced `R` of the current prefix.
    pub fn r(&self) -> &crate::gf2::Gf2Matrix {
        self.reducer.r()
    }

    /// The `U` of the current prefix.
    pub fn u(&self) -> &crate::gf2::Gf2Matrix {
        self.reducer.u()
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        self.reducer.low(j)
    }
}

/// One point of the diagram; `death` is `None` for an essential class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub dim: i32,
    pub birth: usize,
    pub death: Option<usize>,
}

/// Birth-death pairs of the index filtration, finite points by birth, then
/// essential points by birth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceDiagram {
    len: usize,
    points: Vec<Point>,
}

impl PersistenceDiagram {
    pub fn from_reduction(k: &OrderedComplex, cr: &ColumnReduction) -> Result<Self> {
        if cr.size() != k.len() {
            return Err(Error::SizeMismatch {
                left: cr.size(),
                right: k.len(),
            });
        }
        let mut finite = Vec::new();
        let mut paired = vec![false; k.len()];
        for (i, j) in cr.pairs() {
            paired[i] = true;
            finite.push(Point {
                dim: k.dim_of(i),
                birth: i,
                death: Some(j),
            });
        }
        finite.sort_by_key(|pt| pt.birth);
        let essential = (0..k.len())
            .filter(|&c| cr.is_zero(c) && !paired[c])
            .map(|c| Point {
                dim: k.dim_of(c),
                birth: c,
                death: None,
            });
        finite.extend(essential);
        Ok(PersistenceDiagram {
            len: k.len(),
            points: finite,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn finite(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|pt| pt.death.is_some())
    }

    pub fn essential(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|pt| pt.death.is_none())
    }

    /// `β̃_p(K_ℓ)`: points of dimension `p` with `birth ≤ ℓ < death`.
    pub fn betti_of_prefix(&self, ell: usize, p: i32) -> Result<usize> {
        if ell >= self.len {
            return Err(Error::IndexOutOfRange {
                index: ell,
                size: self.len,
            });
        }
        Ok(self
            .points
            .iter()
            .filter(|pt| pt.dim == p && pt.birth <= ell && pt.death.is_none_or(|d| ell < d))
            .count())
    }

    /// Rank of the reduced relative cohomology of `(K, K_ℓ)` in dimension `p`,
    /// read from the reflected diagram; `None` stands for `L = ∅`.
    ///
    /// A finite point `(i, j)` becomes a class of dimension `dim σ_i + 1`
    /// alive while `i ≤ ℓ < j`; an essential point `(k, ∞)` stays in
    /// dimension `dim σ_k` and is alive while `ℓ < k`.
    pub fn relative_rank(&self, ell: Option<usize>, p: i32) -> Result<usize> {
        if let Some(ell) = ell {
            if ell >= self.len {
                return Err(Error::IndexOutOfRange {
                    index: ell,
                    size: self.len,
                });
            }
        }
        let after = |c: usize| ell.is_none_or(|l| l < c);
        Ok(self
            .points
            .iter()
            .filter(|pt| match pt.death {
                Some(d) => pt.dim + 1 == p && !after(pt.birth) && after(d),
                None => pt.dim == p && after(pt.birth),
            })
            .count())
    }

    /// One line per point, `p birth death`, external indices, `inf` for an
    /// essential class and `empty` for the empty cell.
    pub fn to_text(&self) -> String {
        let name = |c: usize| {
            if c == 0 {
                "empty".to_string()
            } else {
                (c - 1).to_string()
            }
        };
        let mut out = String::new();
        for pt in &self.points {
            let death = pt.death.map_or_else(|| "inf".to_string(), name);
            let _ = writeln!(out, "{} {} {}", pt.dim, name(pt.birth), death);
        }
        out
    }
}

pub fn persistence_diagram(k: &OrderedComplex) -> PersistenceDiagram {
    let cr = crate::reduction::exhaustive_column_reduce(&k.boundary_matrix());
    PersistenceDiagram::from_reduction(k, &cr).expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::betti_numbers;

    fn load(text: &str) -> OrderedComplex {
        OrderedComplex::from_boundary_format(text).unwrap()
    }

    fn annulus() -> OrderedComplex {
        load(include_str!("../data/annulus.bnd"))
    }

    fn wheel() -> OrderedComplex {
        load(include_str!("../data/wheel.bnd"))
    }

    fn hollow_triangle() -> OrderedComplex {
        OrderedComplex::from_simplicial_format("0\n1\n2\n0 1\n0 2\n1 2\n", false).unwrap()
    }

    fn point() -> OrderedComplex {
        OrderedComplex::from_simplicial_format("0\n", false).unwrap()
    }

    #[test]
    fn annulus_sizes() {
        let tp = tri_partition(&annulus());
        assert_eq!(tp.tree(1).len(), 15);
        assert_eq!(tp.cotree(1).len(), 8);
        assert_eq!(tp.leftover(1).len(), 1);
    }

    #[test]
    fn wheel_sizes() {
        let k = wheel();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (17, 32, 17));
        let tp = tri_partition(&k);
        assert_eq!(tp.tree(1).len(), 16);
        assert_eq!(tp.cotree(1).len(), 16);
        assert!(tp.leftover(1).is_empty());
    }

    #[test]
    fn point_partition() {
        let tp = tri_partition(&point());
        assert_eq!(tp.tree(0), &[1]);
        assert!(tp.cotree(0).is_empty());
        assert!(tp.leftover(0).is_empty());
        assert_eq!(tp.cotree(-1), &[0]);
        assert!(tp.tree(7).is_empty());
    }

    #[test]
    fn incremental_first_vertex_and_closing_edge() {
        let mut inc = IncrementalTriPartition::new();
        assert_eq!(inc.partition().leftover(-1), &[0]);
        let k = hollow_triangle();
        let step = inc.add(k.cell(1)).unwrap();
        assert_eq!(step, Step::Death { cell: 1, killed: 0 });
        let tp = inc.partition();
        assert_eq!(tp.tree(0), &[1]);
        assert_eq!(tp.cotree(-1), &[0]);
        for c in 2..6 {
            inc.add(k.cell(c)).unwrap();
        }
        assert_eq!(inc.add(k.cell(6)).unwrap(), Step::Birth { cell: 6 });
        assert_eq!(inc.partition().leftover(1), &[6]);
        assert_eq!(inc.partition(), tri_partition(&k));
    }

    #[test]
    fn incremental_rejects_out_of_order_cells() {
        let mut inc = IncrementalTriPartition::new();
        assert!(inc.add(&Cell::new(1, vec![1, 2])).is_err());
        assert!(inc.add(&Cell::new(1, vec![0])).is_err());
        assert!(inc.add(&Cell::empty()).is_err());
    }

    #[test]
    fn incremental_replay_matches_batch_at_every_prefix() {
        let k = annulus();
        let mut inc = IncrementalTriPartition::new();
        for ell in 1..k.len() {
            inc.add(k.cell(ell)).unwrap();
            assert_eq!(
                inc.partition(),
                tri_partition(&k.prefix(ell).unwrap()),
                "prefix {ell}"
            );
        }
    }

    #[test]
    fn diagram_examples() {
        let d = persistence_diagram(&point());
        assert_eq!(
            d.points(),
            &[Point {
                dim: -1,
                birth: 0,
                death: Some(1)
            }]
        );
        let d = persistence_diagram(&hollow_triangle());
        let ess: Vec<_> = d.essential().copied().collect();
        assert_eq!(
            ess,
            vec![Point {
                dim: 1,
                birth: 6,
                death: None
            }]
        );
        let d = persistence_diagram(&annulus());
        assert_eq!(d.essential().filter(|pt| pt.dim == 1).count(), 1);
        assert_eq!(d.essential().count(), 1);
    }

    #[test]
    fn diagram_implies_partition() {
        for k in [annulus(), wheel(), hollow_triangle()] {
            let tp = tri_partition(&k);
            let d = persistence_diagram(&k);
            for pt in d.points() {
                match pt.death {
                    Some(j) => {
                        assert_eq!(tp.part(pt.birth), Part::Cotree);
                        assert_eq!(tp.part(j), Part::Tree);
                        assert_eq!(k.dim_of(j), pt.dim + 1);
                    }
                    None => assert_eq!(tp.part(pt.birth), Part::Leftover),
                }
            }
        }
    }

    #[test]
    fn prefix_betti() {
        let k = annulus();
        let d = persistence_diagram(&k);
        assert_eq!(d.betti_of_prefix(0, -1).unwrap(), 1);
        let full = betti_numbers(&k);
        for p in -1..=2 {
            assert_eq!(d.betti_of_prefix(k.len() - 1, p).unwrap(), full[p]);
        }
        for ell in 0..k.len() {
            let b = betti_numbers(&k.prefix(ell).unwrap());
            for p in -1..=2 {
                assert_eq!(
                    d.betti_of_prefix(ell, p).unwrap(),
                    b.get(p).copied().unwrap_or(0)
                );
            }
        }
        assert!(d.betti_of_prefix(k.len(), 0).is_err());
    }

    #[test]
    fn relative_rank_with_empty_subcomplex_is_cohomology() {
        let k = annulus();
        let d = persistence_diagram(&k);
        let b = betti_numbers(&k);
        for p in -1..=2 {
            assert_eq!(d.relative_rank(None, p).unwrap(), b[p]);
        }
        // relative to the whole complex nothing is left
        for p in -1..=3 {
            assert_eq!(d.relative_rank(Some(k.len() - 1), p).unwrap(), 0);
        }
    }

    #[test]
    fn diagram_text() {
        let text = persistence_diagram(&hollow_triangle()).to_text();
        assert_eq!(text, "-1 empty 0\n0 1 3\n0 2 4\n1 5 inf\n");
    }
}

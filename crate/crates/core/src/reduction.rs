//! Exhaustive column and row reduction of boundary matrices.
//!
//! The column reduction processes columns left to right and keeps clearing
//! every entry that sits in the pivot row of an earlier non-zero column, not
//! only the lowest one. The result `R = ∂U` is then independent of the order
//! in which eligible columns are added. The row reduction is the same
//! procedure applied to the anti-transpose, read back as `Q = V∂`.

use crate::complex::{OrderedComplex, PerDim};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Picks one of the eligible earlier columns; receives their indices, returns a position.
pub type Chooser<'a> = &'a mut dyn FnMut(&[usize]) -> usize;

/// Incremental state of the exhaustive column reduction.
#[derive(Clone, Debug)]
pub(crate) struct ColumnReducer {
    r: Gf2Matrix,
    u: Gf2Matrix,
    low: Vec<Option<usize>>,
    /// Column whose low is the given row, if any.
    pivot_of_row: Vec<Option<usize>>,
    len: usize,
}

impl ColumnReducer {
    fn new(d: &Gf2Matrix) -> Self {
        let n = d.size();
        ColumnReducer {
            r: d.clone(),
            u: Gf2Matrix::identity(n),
            low: vec![None; n],
            pivot_of_row: vec![None; n],
            len: 0,
        }
    }

    pub(crate) fn empty() -> Self {
        Self::new(&Gf2Matrix::zeros(0))
    }

    pub(crate) fn low(&self, j: usize) -> Option<usize> {
        self.low[j]
    }

    /// Appends a new column with the given support and reduces it.
    pub(crate) fn push(&mut self, support: &[usize]) -> Result<Option<usize>> {
        let j = self.len;
        if let Some(&bad) = support.iter().find(|&&i| i >= j) {
            return Err(Error::OrderingMismatch(format!(
                "entry {bad} of column {j} is not above the diagonal"
            )));
        }
        let n = j + 1;
        self.r.expand(n);
        self.u.expand(n);
        self.u.set_unchecked(j, j, true);
        for &i in support {
            self.r.set_unchecked(i, j, true);
        }
        self.low.push(None);
        self.pivot_of_row.push(None);
        self.reduce_next(None);
        Ok(self.low[j])
    }

    fn reduce_next(&mut self, chooser: Option<Chooser<'_>>) {
        let j = self.len;
        match chooser {
            None => {
                // Highest eligible pivot first. Adding column ℓ only touches
                // rows at or above Low(ℓ), so one downward sweep suffices.
                let mut bound = self.r.size();
                while let Some(row) = self.r.highest_set_below(j, bound) {
                    if let Some(l) = self.pivot_of_row[row] {
                        self.r.col_add_unchecked(l, j);
                        self.u.col_add_unchecked(l, j);
                    }
                    bound = row;
                }
            }
            Some(pick) => loop {
                let eligible: Vec<usize> = self
                    .r
                    .column_support(j)
                    .into_iter()
                    .filter_map(|row| self.pivot_of_row[row])
                    .collect();
                if eligible.is_empty() {
                    break;
                }
                let l = eligible[pick(&eligible) % eligible.len()];
                self.r.col_add_unchecked(l, j);
                self.u.col_add_unchecked(l, j);
            },
        }
        let low = self.r.low_unchecked(j);
        if let Some(row) = low {
            self.pivot_of_row[row] = Some(j);
        }
        self.low[j] = low;
        self.len += 1;
    }

    pub(crate) fn r(&self) -> &Gf2Matrix {
        &self.r
    }

    pub(crate) fn u(&self) -> &Gf2Matrix {
        &self.u
    }

    fn finish(self) -> ColumnReduction {
        ColumnReduction {
            r: self.r,
            u: self.u,
            low: self.low,
        }
    }
}

/// `R = ∂U` after exhaustive column reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnReduction {
    r: Gf2Matrix,
    u: Gf2Matrix,
    low: Vec<Option<usize>>,
}

impl ColumnReduction {
    pub fn r(&self) -> &Gf2Matrix {
        &self.r
    }

    pub fn u(&self) -> &Gf2Matrix {
        &self.u
    }

    pub fn size(&self) -> usize {
        self.low.len()
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        self.low[j]
    }

    pub fn is_zero(&self, j: usize) -> bool {
        self.low[j].is_none()
    }

    /// Birth-death pairs `(Low(j), j)` ordered by `j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.low
            .iter()
            .enumerate()
            .filter_map(|(j, l)| l.map(|i| (i, j)))
            .collect()
    }

    /// Checks `R = ∂U`, unit upper-triangular `U`, distinct lows, and that no
    /// further step of the reduction applies.
    pub fn verify(&self, d: &Gf2Matrix) -> Result<()> {
        const CHECK: &str = "column reduction";
        if d.mul(&self.u)? != self.r {
            return Err(Error::verify(CHECK, "R differs from ∂U", vec![]));
        }
        if !self.u.is_upper_triangular() || !self.u.has_unit_diagonal() {
            return Err(Error::verify(
                CHECK,
                "U is not unit upper-triangular",
                vec![],
            ));
        }
        let mut owner = vec![None; self.size()];
        for (j, l) in self.low.iter().enumerate() {
            if *l != self.r.low_unchecked(j) {
                return Err(Error::verify(CHECK, "stale low", vec![vec![j]]));
            }
            if let Some(i) = *l {
                if let Some(other) = owner[i].replace(j) {
                    return Err(Error::verify(CHECK, "repeated low", vec![vec![other, j]]));
                }
            }
        }
        for j in 0..self.size() {
            for l in 0..j {
                if let Some(i) = self.low[l] {
                    if self.r.get_unchecked(i, j) {
                        return Err(Error::verify(
                            CHECK,
                            format!("column {l} can still be added to column {j}"),
                            vec![vec![l, j]],
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Q = V∂` after exhaustive row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    q: Gf2Matrix,
    v: Gf2Matrix,
    left: Vec<Option<usize>>,
}

impl RowReduction {
    pub fn q(&self) -> &Gf2Matrix {
        &self.q
    }

    pub fn v(&self) -> &Gf2Matrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, i: usize) -> Option<usize> {
        self.left[i]
    }

    pub fn is_zero(&self, i: usize) -> bool {
        self.left[i].is_none()
    }

    /// Pairs `(i, Left(i))` ordered by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|j| (i, j)))
            .collect()
    }

    pub fn verify(&self, d: &Gf2Matrix) -> Result<()> {
        const CHECK: &str = "row reduction";
        if self.v.mul(d)? != self.q {
            return Err(Error::verify(CHECK, "Q differs from V∂", vec![]));
        }
        if !self.v.is_upper_triangular() || !self.v.has_unit_diagonal() {
            return Err(Error::verify(
                CHECK,
                "V is not unit upper-triangular",
                vec![],
            ));
        }
        let n = self.size();
        let mut owner = vec![None; n];
        for (i, l) in self.left.iter().enumerate() {
            if *l != self.q.left(i)? {
                return Err(Error::verify(CHECK, "stale left", vec![vec![i]]));
            }
            if let Some(j) = *l {
                if let Some(other) = owner[j].replace(i) {
                    return Err(Error::verify(CHECK, "repeated left", vec![vec![other, i]]));
                }
            }
        }
        for i in 0..n {
            for l in i + 1..n {
                if let Some(j) = self.left[l] {
                    if self.q.get_unchecked(i, j) {
                        return Err(Error::verify(
                            CHECK,
                            format!("row {l} can still be added to row {i}"),
                            vec![vec![i, l]],
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn column_reduce(d: &Gf2Matrix, chooser: Option<Chooser<'_>>) -> ColumnReduction {
    let mut reducer = ColumnReducer::new(d);
    match chooser {
        None => (0..d.size()).for_each(|_| reducer.reduce_next(None)),
        Some(pick) => (0..d.size()).for_each(|_| reducer.reduce_next(Some(&mut *pick))),
    }
    reducer.finish()
}

pub fn exhaustive_column_reduce(d: &Gf2Matrix) -> ColumnReduction {
    column_reduce(d, None)
}

/// Column reduction where `pick` chooses among the eligible earlier columns at every step.
pub fn exhaustive_column_reduce_by(d: &Gf2Matrix, pick: Chooser<'_>) -> ColumnReduction {
    column_reduce(d, Some(pick))
}

fn row_reduce(d: &Gf2Matrix, chooser: Option<Chooser<'_>>) -> RowReduction {
    let n = d.size();
    let flipped = d.anti_transpose();
    let cr = match chooser {
        None => column_reduce(&flipped, None),
        Some(pick) => {
            // Hand the chooser row indices of the original matrix.
            let mut mapped = |cands: &[usize]| {
                let rows: Vec<usize> = cands.iter().map(|&c| n - 1 - c).collect();
                pick(&rows)
            };
            column_reduce(&flipped, Some(&mut mapped))
        }
    };
    let mut left = vec![None; n];
    for (j, l) in cr.low.iter().enumerate() {
        left[n - 1 - j] = l.map(|i| n - 1 - i);
    }
    RowReduction {
        q: cr.r.anti_transpose(),
        v: cr.u.anti_transpose(),
        left,
    }
}

pub fn exhaustive_row_reduce(d: &Gf2Matrix) -> RowReduction {
    row_reduce(d, None)
}

/// Row reduction where `pick` chooses among the eligible later rows at every step.
pub fn exhaustive_row_reduce_by(d: &Gf2Matrix, pick: Chooser<'_>) -> RowReduction {
    row_reduce(d, Some(pick))
}

/// Both reductions of the complex's boundary matrix.
pub fn reduce(k: &OrderedComplex) -> (ColumnReduction, RowReduction) {
    let d = k.boundary_matrix();
    (exhaustive_column_reduce(&d), exhaustive_row_reduce(&d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Birth,
    Death,
}

/// Birth/death labels per cell, for homology (columns of `R`) and relative
/// cohomology (rows of `Q`), with per-dimension totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirthDeathTable {
    pub homology: Vec<Event>,
    pub cohomology: Vec<Event>,
    pub births: PerDim<usize>,
    pub deaths: PerDim<usize>,
    pub co_births: PerDim<usize>,
    pub co_deaths: PerDim<usize>,
}

impl BirthDeathTable {
    fn count(v: &PerDim<usize>, p: i32) -> usize {
        v.get(p).copied().unwrap_or(0)
    }

    /// Reduced Betti number: births in `p` minus deaths in `p + 1`.
    pub fn betti(&self, p: i32) -> usize {
        Self::count(&self.births, p) - Self::count(&self.deaths, p + 1)
    }

    /// Reduced cohomology rank: births in `p` minus deaths in `p − 1`.
    pub fn cobetti(&self, p: i32) -> usize {
        Self::count(&self.co_births, p) - Self::count(&self.co_deaths, p - 1)
    }
}

pub fn classify(
    cr: &ColumnReduction,
    rr: &RowReduction,
    k: &OrderedComplex,
) -> Result<BirthDeathTable> {
    for size in [cr.size(), rr.size()] {
        if size != k.len() {
            return Err(Error::SizeMismatch {
                left: size,
                right: k.len(),
            });
        }
    }
    let label = |zero: bool| if zero { Event::Birth } else { Event::Death };
    let homology: Vec<Event> = (0..k.len()).map(|j| label(cr.is_zero(j))).collect();
    let cohomology: Vec<Event> = (0..k.len()).map(|i| label(rr.is_zero(i))).collect();
    let slots = (k.dim() + 2) as usize;
    let tally = |events: &[Event], want: Event| {
        let mut v = vec![0usize; slots];
        for (c, e) in events.iter().enumerate() {
            if *e == want {
                v[(k.dim_of(c) + 1) as usize] += 1;
            }
        }
        PerDim::from_vec(v)
    };
    Ok(BirthDeathTable {
        births: tally(&homology, Event::Birth),
        deaths: tally(&homology, Event::Death),
        co_births: tally(&cohomology, Event::Birth),
        co_deaths: tally(&cohomology, Event::Death),
        homology,
        cohomology,
    })
}

fn table(k: &OrderedComplex) -> BirthDeathTable {
    let (cr, rr) = reduce(k);
    classify(&cr, &rr, k).expect("reductions of k match k")
}

/// Reduced Betti numbers for dimensions −1 through `dim K`.
pub fn betti_numbers(k: &OrderedComplex) -> PerDim<usize> {
    let t = table(k);
    PerDim::from_vec((-1..=k.dim()).map(|p| t.betti(p)).collect())
}

/// Reduced cohomology ranks read from the row reduction.
pub fn relative_cohomology_ranks(k: &OrderedComplex) -> PerDim<usize> {
    let t = table(k);
    PerDim::from_vec((-1..=k.dim()).map(|p| t.cobetti(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> OrderedComplex {
        OrderedComplex::from_simplicial_format("0\n1\n2\n0 1\n0 2\n1 2\n", false).unwrap()
    }

    fn annulus() -> OrderedComplex {
        OrderedComplex::from_boundary_format(include_str!("../data/annulus.bnd")).unwrap()
    }

    #[test]
    fn zero_matrix_is_already_reduced() {
        let z = Gf2Matrix::zeros(5);
        let cr = exhaustive_column_reduce(&z);
        assert_eq!(cr.r(), &z);
        assert_eq!(cr.u(), &Gf2Matrix::identity(5));
        let rr = exhaustive_row_reduce(&z);
        assert_eq!(rr.q(), &z);
        assert_eq!(rr.v(), &Gf2Matrix::identity(5));
    }

    #[test]
    fn hollow_triangle_column_reduction() {
        let k = hollow_triangle();
        let d = k.boundary_matrix();
        let cr = exhaustive_column_reduce(&d);
        cr.verify(&d).unwrap();
        assert!(!cr.is_zero(4));
        assert!(!cr.is_zero(5));
        assert!(cr.is_zero(6));
        // the closing edge's column of U is the whole cycle
        assert_eq!(cr.u().column_support(6), vec![4, 5, 6]);
    }

    #[test]
    fn hollow_triangle_pairs_agree() {
        let d = hollow_triangle().boundary_matrix();
        let cr = exhaustive_column_reduce(&d);
        let rr = exhaustive_row_reduce(&d);
        rr.verify(&d).unwrap();
        assert_eq!(cr.pairs(), {
            let mut p = rr.pairs();
            p.sort_by_key(|&(_, j)| j);
            p
        });
    }

    #[test]
    fn annulus_counts() {
        let k = annulus();
        let d = k.boundary_matrix();
        let cr = exhaustive_column_reduce(&d);
        let rr = exhaustive_row_reduce(&d);
        let edges = k.cells_of_dim(1);
        assert_eq!(edges.iter().filter(|&&j| !cr.is_zero(j)).count(), 15);
        assert_eq!(edges.iter().filter(|&&i| !rr.is_zero(i)).count(), 8);
        let t = classify(&cr, &rr, &k).unwrap();
        assert_eq!(t.deaths[1], 15);
        assert_eq!(t.births[1], 9);
        assert_eq!(t.betti(1), 1);
    }

    #[test]
    fn classify_first_cells() {
        let k = hollow_triangle();
        let (cr, rr) = reduce(&k);
        let t = classify(&cr, &rr, &k).unwrap();
        assert_eq!(t.homology[0], Event::Birth);
        assert_eq!(t.homology[1], Event::Death);
        assert!(classify(&cr, &rr, &annulus()).is_err());
    }

    #[test]
    fn betti_examples() {
        let empty = OrderedComplex::empty();
        assert_eq!(betti_numbers(&empty), PerDim::from_vec(vec![1]));
        assert_eq!(relative_cohomology_ranks(&empty), PerDim::from_vec(vec![1]));

        let point = OrderedComplex::from_simplicial_format("0\n", false).unwrap();
        assert_eq!(betti_numbers(&point), PerDim::from_vec(vec![0, 0]));

        let b = betti_numbers(&annulus());
        assert_eq!(b, PerDim::from_vec(vec![0, 0, 1, 0]));
        assert_eq!(relative_cohomology_ranks(&annulus()), b);
    }

    #[test]
    fn randomized_choice_matches_default() {
        let k = annulus();
        let d = k.boundary_matrix();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut pick = |c: &[usize]| {
            state ^= state << 7;
            state ^= state >> 9;
            (state as usize) % c.len()
        };
        assert_eq!(
            exhaustive_column_reduce_by(&d, &mut pick),
            exhaustive_column_reduce(&d)
        );
        assert_eq!(
            exhaustive_row_reduce_by(&d, &mut pick),
            exhaustive_row_reduce(&d)
        );
    }

    #[test]
    fn incremental_reducer_matches_batch() {
        let k = annulus();
        let batch = exhaustive_column_reduce(&k.boundary_matrix());
        let mut inc = ColumnReducer::empty();
        for cell in k.cells() {
            inc.push(cell.faces()).unwrap();
        }
        assert_eq!(inc.finish(), batch);
        let mut inc = ColumnReducer::empty();
        assert!(inc.push(&[0]).is_err());
    }
}

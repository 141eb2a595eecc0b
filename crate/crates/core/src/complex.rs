//! Ordered cell complexes with explicit codimension-one face lists.
//!
//! Every complex carries the empty cell at internal index 0. Files and CLI
//! output use external indices, which skip the empty cell: internal index
//! `i` is external index `i - 1`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Values indexed by dimension, starting at dimension −1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PerDim<T> {
    values: Vec<T>,
}

impl<T> PerDim<T> {
    /// `values[0]` belongs to dimension −1.
    pub fn from_vec(values: Vec<T>) -> Self {
        PerDim { values }
    }

    pub fn get(&self, p: i32) -> Option<&T> {
        if p < -1 {
            return None;
        }
        self.values.get((p + 1) as usize)
    }

    pub fn get_mut(&mut self, p: i32) -> Option<&mut T> {
        if p < -1 {
            return None;
        }
        self.values.get_mut((p + 1) as usize)
    }

    /// Highest dimension with an entry, −2 when empty.
    pub fn top(&self) -> i32 {
        self.values.len() as i32 - 2
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (k as i32 - 1, v))
    }

    pub fn dims(&self) -> impl Iterator<Item = i32> {
        -1..=self.top()
    }
}

impl<T> Index<i32> for PerDim<T> {
    type Output = T;

    fn index(&self, p: i32) -> &T {
        self.get(p)
            .unwrap_or_else(|| panic!("no entry for dimension {p}"))
    }
}

/// A cell: its dimension and the internal indices of its codimension-one faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    dim: i32,
    faces: Vec<usize>,
}

impl Cell {
    pub fn new(dim: i32, mut faces: Vec<usize>) -> Self {
        faces.sort_unstable();
        Cell { dim, faces }
    }

    pub fn empty() -> Self {
        Cell {
            dim: -1,
            faces: Vec::new(),
        }
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }
}

/// A homogeneous set of cells, used for chains and cochains alike.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub dim: i32,
    /// Sorted internal indices.
    pub cells: Vec<usize>,
}

impl Chain {
    pub fn new(dim: i32, mut cells: Vec<usize>) -> Self {
        cells.sort_unstable();
        cells.dedup();
        Chain { dim, cells }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Symmetric difference.
    pub fn add(&self, other: &Chain) -> Chain {
        let (mut a, mut b) = (self.cells.iter().peekable(), other.cells.iter().peekable());
        let mut out = Vec::with_capacity(self.cells.len() + other.cells.len());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x == y => {
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x < y => out.push(*a.next().unwrap()),
                (Some(_), Some(_)) => out.push(*b.next().unwrap()),
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(*b.next().unwrap()),
                (None, None) => break,
            }
        }
        Chain {
            dim: self.dim,
            cells: out,
        }
    }
}

/// A finite complex whose cells are listed in a monotonic order, faces first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedComplex {
    cells: Vec<Cell>,
    cofaces: Vec<Vec<usize>>,
    counts: Vec<usize>,
    /// Vertex labels per cell when the complex came from simplices.
    simplices: Option<Vec<Vec<u32>>>,
}

/// Internal index to the signed external index used in messages (−1 is the empty cell).
fn ext(i: usize) -> i64 {
    i as i64 - 1
}

impl OrderedComplex {
    /// Validates `cells` (internal indices, `cells[0]` the empty cell).
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let lines: Vec<usize> = (0..cells.len()).collect();
        Self::validated(cells, None, &lines)
    }

    /// The complex containing only the empty cell.
    pub fn empty() -> Self {
        Self::new(vec![Cell::empty()]).expect("the empty complex is valid")
    }

    /// Builds from `(dim, faces)` pairs using external indices; the empty cell
    /// is prepended and vertices receive it as their only face.
    pub fn from_external(cells: &[(i32, Vec<usize>)]) -> Result<Self> {
        let lines: Vec<usize> = (0..=cells.len()).collect();
        let cells = Self::internalize(cells, &lines)?;
        Self::validated(cells, None, &lines)
    }

    fn internalize(cells: &[(i32, Vec<usize>)], lines: &[usize]) -> Result<Vec<Cell>> {
        let mut out = Vec::with_capacity(cells.len() + 1);
        out.push(Cell::empty());
        for (k, (dim, faces)) in cells.iter().enumerate() {
            let line = lines[k + 1];
            if *dim < 0 {
                return Err(Error::Parse {
                    line,
                    message: format!("dimension {dim} is reserved for the implicit empty cell"),
                });
            }
            if *dim == 0 {
                if let Some(&f) = faces.first() {
                    return Err(Error::DimMismatch {
                        line,
                        face: f as i64,
                        face_dim: 0,
                        expected: -1,
                    });
                }
                out.push(Cell::new(0, vec![0]));
            } else {
                out.push(Cell::new(*dim, faces.iter().map(|f| f + 1).collect()));
            }
        }
        Ok(out)
    }

    fn validated(
        cells: Vec<Cell>,
        simplices: Option<Vec<Vec<u32>>>,
        lines: &[usize],
    ) -> Result<Self> {
        match cells.first() {
            Some(c) if c.dim == -1 && c.faces.is_empty() => {}
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    message: "first cell must be the empty cell".into(),
                })
            }
        }
        let mut counts: Vec<usize> = Vec::new();
        let mut cofaces = vec![Vec::new(); cells.len()];
        for (c, cell) in cells.iter().enumerate() {
            let line = lines[c];
            if c > 0 && cell.dim < 0 {
                return Err(Error::Parse {
                    line,
                    message: "only the first cell may have dimension -1".into(),
                });
            }
            if c > 0 && cell.faces.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!("cell of dimension {} lists no faces", cell.dim),
                });
            }
            if cell.faces.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse {
                    line,
                    message: "repeated face".into(),
                });
            }
            for &f in &cell.faces {
                if f >= c {
                    return Err(Error::NonMonotonic {
                        line,
                        cell: ext(c),
                        face: ext(f),
                    });
                }
                if cells[f].dim != cell.dim - 1 {
                    return Err(Error::DimMismatch {
                        line,
                        face: ext(f),
                        face_dim: cells[f].dim,
                        expected: cell.dim - 1,
                    });
                }
                cofaces[f].push(c);
            }
            if cell.dim >= 1 {
                let mut second: Vec<usize> = cell
                    .faces
                    .iter()
                    .flat_map(|&f| cells[f].faces.iter().copied())
                    .collect();
                second.sort_unstable();
                let odd = second.chunk_by(|a, b| a == b).any(|run| run.len() % 2 == 1);
                if odd {
                    return Err(Error::DdZeroViolation { line, cell: ext(c) });
                }
            }
            let slot = (cell.dim + 1) as usize;
            if counts.len() <= slot {
                counts.resize(slot + 1, 0);
            }
            counts[slot] += 1;
        }
        Ok(OrderedComplex {
            cells,
            cofaces,
            counts,
            simplices,
        })
    }

    /// Parses the boundary format: one `DIM : FACE*` line per cell, external
    /// 0-based indices of earlier lines, `#` comments.
    pub fn from_boundary_format(text: &str) -> Result<Self> {
        let mut parsed = Vec::new();
        let mut lines = vec![0];
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (dim, faces) = body.split_once(':').ok_or_else(|| Error::Parse {
                line,
                message: "expected `DIM : FACES`".into(),
            })?;
            let dim: i32 = dim.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad dimension `{}`", dim.trim()),
            })?;
            let faces = faces
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad face index `{t}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            parsed.push((dim, faces));
            lines.push(line);
        }
        let cells = Self::internalize(&parsed, &lines)?;
        Self::validated(cells, None, &lines)
    }

    /// Parses one simplex per line as strictly increasing vertex labels. With
    /// `complete`, missing faces are inserted right before their first coface,
    /// facets of one simplex in lexicographic order.
    pub fn from_simplicial_format(text: &str, complete: bool) -> Result<Self> {
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut simplices: Vec<Vec<u32>> = vec![Vec::new()];
        let mut cells = vec![Cell::empty()];
        let mut lines = vec![0];
        index.insert(Vec::new(), 0);

        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let labels = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad vertex label `{t}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if labels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse {
                    line,
                    message: "vertex labels must be strictly increasing".into(),
                });
            }
            if index.contains_key(&labels) {
                return Err(Error::DuplicateCell {
                    line,
                    simplex: labels,
                });
            }
            if !complete {
                let missing = facets(&labels).find(|f| !index.contains_key(f));
                if let Some(face) = missing {
                    return Err(Error::MissingFace {
                        line,
                        simplex: labels,
                        face,
                    });
                }
            }
            insert_simplex(
                &labels,
                line,
                &mut index,
                &mut simplices,
                &mut cells,
                &mut lines,
            );
        }
        Self::validated(cells, Some(simplices), &lines)
    }

    /// Number of cells, the empty cell included.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn dim_of(&self, i: usize) -> i32 {
        self.cells[i].dim
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// Maximum cell dimension (−1 for the empty complex).
    pub fn dim(&self) -> i32 {
        self.counts.len() as i32 - 2
    }

    /// Number of `p`-cells; zero outside `-1..=dim`.
    pub fn count(&self, p: i32) -> usize {
        if p < -1 {
            return 0;
        }
        self.counts.get((p + 1) as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> PerDim<usize> {
        PerDim::from_vec(self.counts.clone())
    }

    /// Internal indices of the `p`-cells, in order.
    pub fn cells_of_dim(&self, p: i32) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cells[i].dim == p)
            .collect()
    }

    /// Vertex labels of cell `i` if the complex was read from simplices.
    pub fn simplex(&self, i: usize) -> Option<&[u32]> {
        self.simplices.as_ref().map(|s| s[i].as_slice())
    }

    pub fn boundary_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(
            self.len(),
            self.cells.iter().map(|c| c.faces.iter().copied()),
        )
        .expect("faces are validated indices")
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The subcomplex of cells `0..=ell`.
    pub fn prefix(&self, ell: usize) -> Result<Self> {
        if ell >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: ell,
                size: self.len(),
            });
        }
        let cells = self.cells[..=ell].to_vec();
        let simplices = self.simplices.as_ref().map(|s| s[..=ell].to_vec());
        let lines: Vec<usize> = (0..=ell).collect();
        Self::validated(cells, simplices, &lines)
    }

    /// The same complex listed in a new order; `order[new] = old`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::SizeMismatch {
                left: order.len(),
                right: self.len(),
            });
        }
        let mut position = vec![usize::MAX; self.len()];
        for (new, &old) in order.iter().enumerate() {
            if old >= self.len() || position[old] != usize::MAX {
                return Err(Error::OrderingMismatch(format!(
                    "not a permutation at position {new}"
                )));
            }
            position[old] = new;
        }
        let cells = order
            .iter()
            .map(|&old| {
                let c = &self.cells[old];
                Cell::new(c.dim, c.faces.iter().map(|&f| position[f]).collect())
            })
            .collect();
        let simplices = self
            .simplices
            .as_ref()
            .map(|s| order.iter().map(|&old| s[old].clone()).collect());
        let lines: Vec<usize> = (0..self.len()).collect();
        Self::validated(cells, simplices, &lines)
    }

    /// Boundary of a chain: the cells shared by an odd number of its members.
    pub fn boundary(&self, chain: &Chain) -> Chain {
        odd_members(
            chain.dim - 1,
            chain.cells.iter().map(|&c| &self.cells[c].faces),
        )
    }

    /// Coboundary of a cochain: the cells with an odd number of faces in it.
    pub fn coboundary(&self, cochain: &Chain) -> Chain {
        odd_members(
            cochain.dim + 1,
            cochain.cells.iter().map(|&c| &self.cofaces[c]),
        )
    }

    /// Serializes in the boundary format.
    pub fn to_boundary_format(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells[1..] {
            let _ = write!(out, "{} :", cell.dim);
            if cell.dim > 0 {
                for f in &cell.faces {
                    let _ = write!(out, " {}", f - 1);
                }
            }
            out.push('\n');
        }
        out
    }

    /// Serializes in the simplicial format when vertex labels are known.
    pub fn to_simplicial_format(&self) -> Option<String> {
        let simplices = self.simplices.as_ref()?;
        let mut out = String::new();
        for s in &simplices[1..] {
            let labels: Vec<String> = s.iter().map(u32::to_string).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        Some(out)
    }
}

fn odd_members<'a>(dim: i32, lists: impl Iterator<Item = &'a Vec<usize>>) -> Chain {
    let mut all: Vec<usize> = lists.flatten().copied().collect();
    all.sort_unstable();
    let cells = all
        .chunk_by(|a, b| a == b)
        .filter(|run| run.len() % 2 == 1)
        .map(|run| run[0])
        .collect();
    Chain { dim, cells }
}

/// Codimension-one faces of a sorted simplex, in lexicographic order.
fn facets(labels: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let n = labels.len();
    // Dropping the last vertex first yields lexicographic order.
    (0..n).rev().map(move |skip| {
        labels
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn insert_simplex(
    labels: &[u32],
    line: usize,
    index: &mut HashMap<Vec<u32>, usize>,
    simplices: &mut Vec<Vec<u32>>,
    cells: &mut Vec<Cell>,
    lines: &mut Vec<usize>,
) -> usize {
    if let Some(&i) = index.get(labels) {
        return i;
    }
    let faces: Vec<usize> = facets(labels)
        .collect::<Vec<_>>()
        .iter()
        .map(|f| insert_simplex(f, line, index, simplices, cells, lines))
        .collect();
    let i = cells.len();
    cells.push(Cell::new(labels.len() as i32 - 1, faces));
    simplices.push(labels.to_vec());
    lines.push(line);
    index.insert(labels.to_vec(), i);
    i
}

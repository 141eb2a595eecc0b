//! Canonical cycles, chains, cocycles, and cochains read off `U` and `V`,
//! with checks of the basis claims and of the intersection matrix `VU`.

use std::fmt::Write as _;

use crate::complex::{Chain, OrderedComplex};
use crate::error::{Error, Result};
use crate::gf2::{int_product, IntMatrix};
use crate::oracle::{self, BitRow};
use crate::reduction::{ColumnReduction, RowReduction};
use crate::tripartition::{Part, TriPartition};

/// Largest tree (or cotree) over which canonical (co)cycles are confirmed
/// unique by enumerating all subsets.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Cycle,
    Chain,
    Cocycle,
    Cochain,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cycle => "cycle",
            Kind::Chain => "chain",
            Kind::Cocycle => "cocycle",
            Kind::Cochain => "cochain",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub kind: Kind,
    pub payload: Chain,
}

/// Per cell, its canonical cycle or chain (column of `U`) and its canonical
/// cocycle or cochain (row of `V`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasisSet {
    homology: Vec<BasisElement>,
    cohomology: Vec<BasisElement>,
    partition: TriPartition,
}

pub fn extract_bases(
    cr: &ColumnReduction,
    rr: &RowReduction,
    tp: &TriPartition,
) -> Result<CanonicalBasisSet> {
    let n = tp.len();
    for size in [cr.size(), rr.size()] {
        if size != n {
            return Err(Error::SizeMismatch {
                left: size,
                right: n,
            });
        }
    }
    let vt = rr.v().transpose();
    let mut homology = Vec::with_capacity(n);
    let mut cohomology = Vec::with_capacity(n);
    for c in 0..n {
        let p = tp.dim_of(c);
        let (hk, ck) = match tp.part(c) {
            Part::Tree => (Kind::Chain, Kind::Cocycle),
            Part::Cotree => (Kind::Cycle, Kind::Cochain),
            Part::Leftover => (Kind::Cycle, Kind::Cocycle),
        };
        homology.push(BasisElement {
            kind: hk,
            payload: Chain::new(p, cr.u().column_support(c)),
        });
        cohomology.push(BasisElement {
            kind: ck,
            payload: Chain::new(p, vt.column_support(c)),
        });
    }
    Ok(CanonicalBasisSet {
        homology,
        cohomology,
        partition: tp.clone(),
    })
}

impl CanonicalBasisSet {
    pub fn len(&self) -> usize {
        self.homology.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homology.is_empty()
    }

    /// Canonical cycle or chain of `cell`.
    pub fn homology(&self, cell: usize) -> &BasisElement {
        &self.homology[cell]
    }

    /// Canonical cocycle or cochain of `cell`.
    pub fn cohomology(&self, cell: usize) -> &BasisElement {
        &self.cohomology[cell]
    }

    pub fn partition(&self) -> &TriPartition {
        &self.partition
    }

    /// Dump with one `CELL kind: member ...` line per cell and side, homology
    /// first. External indices; the empty cell is written `empty`.
    pub fn to_text(&self, dim: Option<i32>) -> String {
        let name = |c: usize| {
            if c == 0 {
                "empty".to_string()
            } else {
                (c - 1).to_string()
            }
        };
        let mut out = String::new();
        for side in [&self.homology, &self.cohomology] {
            for (c, e) in side.iter().enumerate() {
                if dim.is_some_and(|p| p != e.payload.dim) {
                    continue;
                }
                let _ = write!(out, "{} {}:", name(c), e.kind.as_str());
                for &m in &e.payload.cells {
                    let _ = write!(out, " {}", name(m));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Outcome of one basis claim in one dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub dim: i32,
    pub elements: usize,
    pub rank: usize,
    /// Whether uniqueness was confirmed by exhaustive enumeration.
    pub enumerated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CobasisReport {
    pub cocycles: BasisReport,
    pub generators: BasisReport,
    pub coboundaries: BasisReport,
}

fn fail(check: &str, detail: impl Into<String>, witness: Vec<Vec<usize>>) -> Error {
    Error::verify(check, detail, witness)
}

fn subset_of(chain: &Chain, allowed: &[usize], extra: Option<usize>) -> bool {
    chain
        .cells
        .iter()
        .all(|c| Some(*c) == extra || allowed.binary_search(c).is_ok())
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Shared shape of the cycle-side and cocycle-side claims.
struct Side<'a> {
    check: &'static str,
    elements: &'a [BasisElement],
    /// Kind expected for cells that carry a (co)cycle.
    closed: Kind,
    /// The (co)tree the (co)cycles live in, apart from their own cell.
    support: &'a [usize],
    /// Maps a chain to its boundary or coboundary.
    image: &'a dyn Fn(&Chain) -> Chain,
    /// Independent basis of all (co)cycles.
    space: Vec<Vec<usize>>,
    width: usize,
}

impl Side<'_> {
    /// Claims for the (co)cycles owned by `owners`: closedness, containment,
    /// independence, spanning, and uniqueness when the support is small.
    fn verify_closed(&self, p: i32, owners: &[usize]) -> Result<BasisReport> {
        let check = self.check;
        let mut payloads = Vec::with_capacity(owners.len());
        for &c in owners {
            let e = &self.elements[c];
            if e.kind != self.closed || e.payload.dim != p {
                return Err(fail(
                    check,
                    format!("cell {c} has kind {:?}", e.kind),
                    vec![vec![c]],
                ));
            }
            if !e.payload.contains(c) || !subset_of(&e.payload, self.support, Some(c)) {
                return Err(fail(
                    check,
                    "payload escapes its support",
                    vec![e.payload.cells.clone()],
                ));
            }
            if !(self.image)(&e.payload).is_empty() {
                return Err(fail(
                    check,
                    "payload is not closed",
                    vec![e.payload.cells.clone()],
                ));
            }
            payloads.push(e.payload.cells.clone());
        }
        let rank = oracle::rank_of_sets(&payloads, self.width);
        if rank != owners.len() {
            return Err(fail(check, "payloads are dependent", payloads));
        }
        if rank != self.space.len() {
            return Err(fail(
                check,
                format!("rank {rank} but the space has rank {}", self.space.len()),
                vec![],
            ));
        }
        // Every (co)cycle is the sum of the canonical ones of its non-support cells.
        for z in &self.space {
            let mut sum = Chain::new(p, vec![]);
            for &c in z {
                if self.support.binary_search(&c).is_err() {
                    sum = sum.add(&self.elements[c].payload);
                }
            }
            if sum.cells != *z {
                return Err(fail(
                    check,
                    "decomposition mismatch",
                    vec![z.clone(), sum.cells],
                ));
            }
        }
        let enumerated = self.support.len() <= ENUMERATION_CAP;
        if enumerated {
            let vectors: Vec<BitRow> = self
                .support
                .iter()
                .map(|&c| {
                    BitRow::from_indices(self.width, (self.image)(&Chain::new(p, vec![c])).cells)
                })
                .collect();
            for &c in owners {
                let start =
                    BitRow::from_indices(self.width, (self.image)(&Chain::new(p, vec![c])).cells);
                let found = oracle::zero_sums(&vectors, &start);
                if found.len() != 1 {
                    return Err(fail(
                        check,
                        format!("{} closed sets through cell {c}", found.len()),
                        vec![vec![c]],
                    ));
                }
                let mut cells: Vec<usize> = (0..self.support.len())
                    .filter(|b| found[0] >> b & 1 == 1)
                    .map(|b| self.support[b])
                    .collect();
                cells.push(c);
                cells.sort_unstable();
                if cells != self.elements[c].payload.cells {
                    return Err(fail(check, "enumerated set differs", vec![cells]));
                }
            }
        }
        Ok(BasisReport {
            dim: p,
            elements: owners.len(),
            rank,
            enumerated,
        })
    }
}

fn width(k: &OrderedComplex) -> usize {
    k.len()
}

/// `{z_p(σ) : σ ∈ A^p ⊔ E_p}` is a basis of the `p`-cycles.
pub fn verify_cycle_basis(
    bs: &CanonicalBasisSet,
    k: &OrderedComplex,
    p: i32,
) -> Result<BasisReport> {
    consistent(bs, k)?;
    let tp = &bs.partition;
    let image = |c: &Chain| k.boundary(c);
    let side = Side {
        check: "cycle basis",
        elements: &bs.homology,
        closed: Kind::Cycle,
        support: tp.tree(p),
        image: &image,
        space: oracle::cycle_space_basis(k, p),
        width: width(k),
    };
    side.verify_closed(p, &sorted_union(tp.cotree(p), tp.leftover(p)))
}

/// `{∂c_p(σ) : σ ∈ A_p}` is a basis of the `(p−1)`-boundaries, each the sum
/// of the canonical `(p−1)`-cycles it kills.
pub fn verify_boundary_basis(
    bs: &CanonicalBasisSet,
    k: &OrderedComplex,
    p: i32,
) -> Result<BasisReport> {
    consistent(bs, k)?;
    const CHECK: &str = "boundary basis";
    let tp = &bs.partition;
    let tree = tp.tree(p);
    let lower_tree = tp.tree(p - 1);
    let mut boundaries = Vec::with_capacity(tree.len());
    for &c in tree {
        let e = &bs.homology[c];
        if e.kind != Kind::Chain || !e.payload.contains(c) || !subset_of(&e.payload, tree, None) {
            return Err(fail(
                CHECK,
                "chain escapes the tree",
                vec![e.payload.cells.clone()],
            ));
        }
        let b = k.boundary(&e.payload);
        let mut sum = Chain::new(p - 1, vec![]);
        for &f in &b.cells {
            if lower_tree.binary_search(&f).is_err() {
                sum = sum.add(&bs.homology[f].payload);
            }
        }
        if sum != b {
            return Err(fail(
                CHECK,
                "boundary is not a sum of canonical cycles",
                vec![b.cells, sum.cells],
            ));
        }
        boundaries.push(b.cells);
    }
    let rank = oracle::rank_of_sets(&boundaries, width(k));
    let expected = oracle::boundary_rank(k, p);
    if rank != tree.len() || rank != expected {
        return Err(fail(
            CHECK,
            format!(
                "rank {rank} of {} boundaries, boundary group rank {expected}",
                tree.len()
            ),
            boundaries,
        ));
    }
    Ok(BasisReport {
        dim: p,
        elements: tree.len(),
        rank,
        enumerated: false,
    })
}

/// `{z_p(σ) : σ ∈ E_p}` represents a basis of reduced homology.
pub fn verify_homology_generators(
    bs: &CanonicalBasisSet,
    k: &OrderedComplex,
    p: i32,
) -> Result<BasisReport> {
    consistent(bs, k)?;
    const CHECK: &str = "homology generators";
    let tp = &bs.partition;
    let leftover = tp.leftover(p);
    let betti = oracle::betti_by_rank(k).get(p).copied().unwrap_or(0);
    if leftover.len() != betti {
        return Err(fail(
            CHECK,
            format!("{} generators, Betti number {betti}", leftover.len()),
            vec![],
        ));
    }
    let mut family: Vec<Vec<usize>> = k
        .cells_of_dim(p + 1)
        .into_iter()
        .map(|c| k.cell(c).faces().to_vec())
        .collect();
    let boundary_rank = oracle::rank_of_sets(&family, width(k));
    for &c in leftover {
        let e = &bs.homology[c];
        if e.kind != Kind::Cycle || !k.boundary(&e.payload).is_empty() {
            return Err(fail(
                CHECK,
                "generator is not a cycle",
                vec![e.payload.cells.clone()],
            ));
        }
        family.push(e.payload.cells.clone());
    }
    let rank = oracle::rank_of_sets(&family, width(k)) - boundary_rank;
    if rank != leftover.len() {
        return Err(fail(
            CHECK,
            "generators are dependent modulo boundaries",
            vec![leftover.to_vec()],
        ));
    }
    Ok(BasisReport {
        dim: p,
        elements: leftover.len(),
        rank,
        enumerated: false,
    })
}

/// The three cohomology claims: cocycle basis over `A_p ⊔ E_p`, generators
/// over `E_p`, and coboundary basis `{δc^p(σ) : σ ∈ A^p}`.
pub fn verify_cobases(bs: &CanonicalBasisSet, k: &OrderedComplex, p: i32) -> Result<CobasisReport> {
    consistent(bs, k)?;
    let tp = &bs.partition;
    let w = width(k);
    let image = |c: &Chain| k.coboundary(c);
    let side = Side {
        check: "cocycle basis",
        elements: &bs.cohomology,
        closed: Kind::Cocycle,
        support: tp.cotree(p),
        image: &image,
        space: oracle::cocycle_space_basis(k, p),
        width: w,
    };
    let cocycles = side.verify_closed(p, &sorted_union(tp.tree(p), tp.leftover(p)))?;

    const GEN: &str = "cohomology generators";
    let leftover = tp.leftover(p);
    let betti = oracle::betti_by_rank(k).get(p).copied().unwrap_or(0);
    if leftover.len() != betti {
        return Err(fail(
            GEN,
            format!("{} generators, Betti number {betti}", leftover.len()),
            vec![],
        ));
    }
    let mut family: Vec<Vec<usize>> = k
        .cells_of_dim(p - 1)
        .into_iter()
        .map(|c| k.cofaces(c).to_vec())
        .collect();
    let coboundary_rank = oracle::rank_of_sets(&family, w);
    family.extend(
        leftover
            .iter()
            .map(|&c| bs.cohomology[c].payload.cells.clone()),
    );
    let rank = oracle::rank_of_sets(&family, w) - coboundary_rank;
    if rank != leftover.len() {
        return Err(fail(
            GEN,
            "generators are dependent modulo coboundaries",
            vec![leftover.to_vec()],
        ));
    }
    let generators = BasisReport {
        dim: p,
        elements: leftover.len(),
        rank,
        enumerated: false,
    };

    const COB: &str = "coboundary basis";
    let cotree = tp.cotree(p);
    let upper_cotree = tp.cotree(p + 1);
    let mut images = Vec::with_capacity(cotree.len());
    for &c in cotree {
        let e = &bs.cohomology[c];
        if e.kind != Kind::Cochain || !e.payload.contains(c) || !subset_of(&e.payload, cotree, None)
        {
            return Err(fail(
                COB,
                "cochain escapes the cotree",
                vec![e.payload.cells.clone()],
            ));
        }
        let d = k.coboundary(&e.payload);
        let mut sum = Chain::new(p + 1, vec![]);
        for &f in &d.cells {
            if upper_cotree.binary_search(&f).is_err() {
                sum = sum.add(&bs.cohomology[f].payload);
            }
        }
        if sum != d {
            return Err(fail(
                COB,
                "coboundary is not a sum of canonical cocycles",
                vec![d.cells, sum.cells],
            ));
        }
        images.push(d.cells);
    }
    let rank = oracle::rank_of_sets(&images, w);
    let expected = oracle::boundary_rank(k, p + 1);
    if rank != cotree.len() || rank != expected {
        return Err(fail(
            COB,
            format!(
                "rank {rank} of {} coboundaries, coboundary group rank {expected}",
                cotree.len()
            ),
            images,
        ));
    }
    let coboundaries = BasisReport {
        dim: p,
        elements: cotree.len(),
        rank,
        enumerated: false,
    };
    Ok(CobasisReport {
        cocycles,
        generators,
        coboundaries,
    })
}

/// The `p`-columns of `U` (chains for tree cells, cycles otherwise) span all
/// `p`-chains.
pub fn verify_chain_decomposition(
    bs: &CanonicalBasisSet,
    k: &OrderedComplex,
    p: i32,
) -> Result<usize> {
    consistent(bs, k)?;
    let cells = k.cells_of_dim(p);
    let payloads: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| bs.homology[c].payload.cells.clone())
        .collect();
    let rank = oracle::rank_of_sets(&payloads, width(k));
    let tp = &bs.partition;
    let parts = tp.tree(p).len() + tp.cotree(p).len() + tp.leftover(p).len();
    if rank != cells.len() || parts != cells.len() {
        return Err(fail(
            "chain decomposition",
            format!("rank {rank} of {} cells", cells.len()),
            vec![],
        ));
    }
    Ok(rank)
}

/// Non-zero off-diagonal entries of `U` sit in rows of tree cells, those of
/// `V` in columns of cotree cells.
pub fn verify_off_diagonal(
    cr: &ColumnReduction,
    rr: &RowReduction,
    tp: &TriPartition,
) -> Result<()> {
    const CHECK: &str = "off-diagonal support";
    for j in 0..cr.size() {
        for i in cr.u().column_support(j) {
            if i != j && (tp.part(i) != Part::Tree || tp.dim_of(i) != tp.dim_of(j)) {
                return Err(fail(
                    CHECK,
                    format!("U[{i},{j}] outside the tree"),
                    vec![vec![i, j]],
                ));
            }
        }
    }
    let v = rr.v();
    for j in 0..rr.size() {
        for i in v.column_support(j) {
            if i != j && (tp.part(j) != Part::Cotree || tp.dim_of(i) != tp.dim_of(j)) {
                return Err(fail(
                    CHECK,
                    format!("V[{i},{j}] outside the cotree"),
                    vec![vec![i, j]],
                ));
            }
        }
    }
    Ok(())
}

/// For a tree cell `σ_i` and a cotree cell `σ_j` of one dimension,
/// `σ_i ∈ z_p(σ_j)` exactly when `σ_j ∈ z^p(σ_i)`.
pub fn verify_two_crossings(bs: &CanonicalBasisSet) -> Result<usize> {
    let tp = &bs.partition;
    let mut checked = 0;
    for p in -1..=tp.dim() {
        for &i in tp.tree(p) {
            for &j in tp.cotree(p) {
                let a = bs.homology[j].payload.contains(i);
                let b = bs.cohomology[i].payload.contains(j);
                if a != b {
                    return Err(fail(
                        "two crossings",
                        format!("cells {i} and {j}"),
                        vec![vec![i, j]],
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `VU` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub entries: IntMatrix,
}

pub fn intersection_matrix(cr: &ColumnReduction, rr: &RowReduction) -> Result<IntersectionMatrix> {
    Ok(IntersectionMatrix {
        entries: int_product(rr.v(), cr.u())?,
    })
}

impl IntersectionMatrix {
    /// Entry predicted from the tri-partition and the extracted payloads.
    pub fn expected(bs: &CanonicalBasisSet, i: usize, j: usize) -> u32 {
        let tp = &bs.partition;
        if i == j {
            return 1;
        }
        if tp.dim_of(i) != tp.dim_of(j) {
            return 0;
        }
        let in_u = bs.homology[j].payload.contains(i);
        let in_v = bs.cohomology[i].payload.contains(j);
        match (tp.part(i), tp.part(j)) {
            (Part::Tree, Part::Cotree) => 2 * u32::from(in_u),
            (Part::Tree, _) => u32::from(in_u),
            (_, Part::Cotree) => u32::from(in_v),
            _ => 0,
        }
    }

    /// Entrywise comparison with the predicted pattern; also confirms the
    /// leftover block is the identity.
    pub fn verify(&self, bs: &CanonicalBasisSet) -> Result<()> {
        const CHECK: &str = "intersection pattern";
        self.verify_shape(bs)?;
        for i in 0..self.entries.size() {
            for j in i + 1..self.entries.size() {
                let got = self.entries.get(i, j);
                let want = Self::expected(bs, i, j);
                if got != want {
                    return Err(fail(
                        CHECK,
                        format!("VU[{i},{j}] = {got}, expected {want}"),
                        vec![vec![i, j]],
                    ));
                }
            }
        }
        Ok(())
    }

    /// Structural facts that do not depend on the tree/cotree crossing
    /// claim: entries in `{0,1,2}`, unit upper-triangular, zero across
    /// dimensions, identity on each leftover block, and every off-diagonal
    /// entry equal to `U[i,j] + V[i,j]`.
    pub fn verify_shape(&self, bs: &CanonicalBasisSet) -> Result<()> {
        const CHECK: &str = "intersection shape";
        let n = self.entries.size();
        if n != bs.len() {
            return Err(Error::SizeMismatch {
                left: n,
                right: bs.len(),
            });
        }
        let tp = &bs.partition;
        for i in 0..n {
            for j in 0..n {
                let got = self.entries.get(i, j);
                let want = if i == j {
                    1
                } else if i > j || tp.dim_of(i) != tp.dim_of(j) {
                    0
                } else {
                    u32::from(bs.homology[j].payload.contains(i))
                        + u32::from(bs.cohomology[i].payload.contains(j))
                };
                if got != want || got > 2 {
                    return Err(fail(
                        CHECK,
                        format!("VU[{i},{j}] = {got}, expected {want}"),
                        vec![vec![i, j]],
                    ));
                }
            }
        }
        for p in -1..=tp.dim() {
            for &i in tp.leftover(p) {
                for &j in tp.leftover(p) {
                    if self.entries.get(i, j) != u32::from(i == j) {
                        return Err(fail(
                            CHECK,
                            "leftover block is not the identity",
                            vec![vec![i, j]],
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn consistent(bs: &CanonicalBasisSet, k: &OrderedComplex) -> Result<()> {
    if bs.len() != k.len() {
        return Err(Error::SizeMismatch {
            left: bs.len(),
            right: k.len(),
        });
    }
    Ok(())
}

//! Exhaustive checks that trees, cotrees and leftovers of one dimension form
//! matroids on small complexes.

use std::collections::HashSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::complex::OrderedComplex;
use crate::error::{Error, Result};
use crate::oracle::BitRow;
use crate::tripartition::tri_partition;

pub const DEFAULT_CAP: usize = 16;
pub const DEFAULT_ORDERING_CAP: usize = 5040;

/// Masks are `u64`, so no ground set may exceed this.
const MASK_BITS: usize = 64;

/// A downward-closed family of subsets of `ground`, each stored as a bit
/// mask over positions in `ground`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<usize>,
    members: Vec<u64>,
}

impl SetFamily {
    /// Family generated by `sets` (given as masks): all their subsets.
    pub fn closure_of(ground: Vec<usize>, sets: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_ground(ground.len(), MASK_BITS)?;
        let full = full_mask(ground.len());
        let mut seen = HashSet::new();
        let mut stack: Vec<u64> = Vec::new();
        for s in sets {
            if s & !full != 0 {
                return Err(Error::IndexOutOfRange {
                    index: (63 - s.leading_zeros()) as usize,
                    size: ground.len(),
                });
            }
            if seen.insert(s) {
                stack.push(s);
            }
        }
        if seen.insert(0) {
            stack.push(0);
        }
        while let Some(s) = stack.pop() {
            let mut rest = s;
            while rest != 0 {
                let sub = s & !(rest & rest.wrapping_neg());
                rest &= rest - 1;
                if seen.insert(sub) {
                    stack.push(sub);
                }
            }
        }
        let mut members: Vec<u64> = seen.into_iter().collect();
        members.sort_unstable_by_key(|m| (m.count_ones(), *m));
        Ok(SetFamily { ground, members })
    }

    /// Family given by cell sets; cells outside `ground` are rejected.
    pub fn from_cell_sets(ground: Vec<usize>, sets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0u64;
            for c in s {
                let Ok(pos) = ground.binary_search(c) else {
                    return Err(Error::IndexOutOfRange {
                        index: *c,
                        size: ground.len(),
                    });
                };
                m |= 1 << pos;
            }
            masks.push(m);
        }
        Self::closure_of(ground, masks)
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// Members ordered by size, then by mask.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: the empty set is always a member.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.members
            .binary_search_by_key(&(mask.count_ones(), mask), |m| (m.count_ones(), *m))
            .is_ok()
    }

    pub fn cells(&self, mask: u64) -> Vec<usize> {
        (0..self.ground.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| self.ground[b])
            .collect()
    }

    /// Members not contained in any larger member.
    pub fn maximal(&self) -> Vec<u64> {
        let set: HashSet<u64> = self.members.iter().copied().collect();
        let full = full_mask(self.ground.len());
        self.members
            .iter()
            .copied()
            .filter(|&m| {
                let mut free = full & !m;
                while free != 0 {
                    let bit = free & free.wrapping_neg();
                    if set.contains(&(m | bit)) {
                        return false;
                    }
                    free &= free - 1;
                }
                true
            })
            .collect()
    }

    pub fn max_size(&self) -> usize {
        self.members.last().map_or(0, |m| m.count_ones() as usize)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ground(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MASK_BITS) {
        return Err(Error::CapExceeded {
            needed: n as u128,
            cap: cap.min(MASK_BITS) as u128,
        });
    }
    Ok(())
}

/// All subsets of `vectors` that are linearly independent, by depth-first
/// extension with an incremental echelon basis.
fn independent_sets(vectors: &[BitRow]) -> Vec<u64> {
    fn reduce(v: &BitRow, basis: &[(usize, BitRow)]) -> BitRow {
        let mut v = v.clone();
        for (pivot, row) in basis {
            if v.get(*pivot) {
                v.xor(row);
            }
        }
        v
    }
    fn walk(
        vectors: &[BitRow],
        start: usize,
        mask: u64,
        basis: &mut Vec<(usize, BitRow)>,
        out: &mut Vec<u64>,
    ) {
        out.push(mask);
        for i in start..vectors.len() {
            let r = reduce(&vectors[i], basis);
            let Some(&pivot) = r.ones().first() else {
                continue;
            };
            basis.push((pivot, r));
            walk(vectors, i + 1, mask | 1 << i, basis, out);
            basis.pop();
        }
    }
    let mut out = Vec::new();
    walk(vectors, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// `p`-trees: sets of `p`-cells whose boundaries are independent.
pub fn enumerate_trees(k: &OrderedComplex, p: i32, cap: usize) -> Result<SetFamily> {
    let ground = k.cells_of_dim(p);
    check_ground(ground.len(), cap)?;
    let vectors: Vec<BitRow> = ground
        .iter()
        .map(|&c| BitRow::from_indices(k.len(), k.cell(c).faces().iter().copied()))
        .collect();
    let sets = independent_sets(&vectors);
    SetFamily::closure_of(ground, sets)
}

/// `p`-cotrees: sets of `p`-cells whose coboundaries are independent.
pub fn enumerate_cotrees(k: &OrderedComplex, p: i32, cap: usize) -> Result<SetFamily> {
    let ground = k.cells_of_dim(p);
    check_ground(ground.len(), cap)?;
    let vectors: Vec<BitRow> = ground
        .iter()
        .map(|&c| BitRow::from_indices(k.len(), k.cofaces(c).iter().copied()))
        .collect();
    let sets = independent_sets(&vectors);
    SetFamily::closure_of(ground, sets)
}

/// Leftover sets over every ordering of the `p`-cells, with all cells
/// grouped by dimension and the other dimensions kept in their original
/// relative order, closed downward.
pub fn enumerate_leftovers(k: &OrderedComplex, p: i32, ordering_cap: usize) -> Result<SetFamily> {
    let ground = k.cells_of_dim(p);
    check_ground(ground.len(), MASK_BITS)?;
    let orderings = (1..=ground.len() as u128).fold(1u128, |a, b| a.saturating_mul(b));
    if orderings > ordering_cap as u128 {
        return Err(Error::CapExceeded {
            needed: orderings,
            cap: ordering_cap as u128,
        });
    }
    let mut base: Vec<usize> = (0..k.len()).collect();
    base.sort_by_key(|&c| k.dim_of(c));
    let slot = base.iter().position(|&c| k.dim_of(c) == p).unwrap_or(0);
    let mut found = HashSet::new();
    for perm in ground.iter().copied().permutations(ground.len()) {
        let mut order = base.clone();
        order[slot..slot + perm.len()].copy_from_slice(&perm);
        let reordered = k.reordered(&order)?;
        let tp = tri_partition(&reordered);
        let mut mask = 0u64;
        for &c in tp.leftover(p) {
            let old = order[c];
            let pos = ground
                .binary_search(&old)
                .expect("leftover cell of dimension p");
            mask |= 1 << pos;
        }
        found.insert(mask);
    }
    let mut sets: Vec<u64> = found.into_iter().collect();
    sets.sort_unstable();
    SetFamily::closure_of(ground, sets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidReport {
    pub pass: bool,
    /// Violating pair `(F, G)` with `|F| = |G| + 1` and no `e ∈ F \ G`
    /// extending `G`, or two maximal members of different size.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// Common size of the maximal members, when they agree.
    pub rank: Option<usize>,
    pub members: usize,
}

impl MatroidReport {
    /// `PASS`/`FAIL` line, witnesses in external indices.
    pub fn to_text(&self) -> String {
        let set = |s: &[usize]| s.iter().map(|c| (c - 1).to_string()).join(" ");
        let mut out = String::new();
        if self.pass {
            let _ = write!(
                out,
                "PASS rank {} members {}",
                self.rank.unwrap_or(0),
                self.members
            );
        } else {
            let _ = write!(out, "FAIL members {}", self.members);
            if let Some((f, g)) = &self.witness {
                let _ = write!(out, " F: {} G: {}", set(f), set(g));
            }
        }
        out.push_str(" (downward closed)");
        out
    }
}

/// Ground sets up to this size use the rank table; larger ones fall back
/// to comparing member pairs.
const RANK_TABLE_BITS: usize = 24;

/// Exchange property and equal-size bases. On a downward-closed family it
/// suffices to test pairs whose sizes differ by one.
pub fn check_matroid(f: &SetFamily) -> MatroidReport {
    let violation = if f.ground.len() <= RANK_TABLE_BITS {
        exchange_by_rank(f)
    } else {
        exchange_by_pairs(f)
    };
    let fail = |big: u64, small: u64| MatroidReport {
        pass: false,
        witness: Some((f.cells(big), f.cells(small))),
        rank: None,
        members: f.len(),
    };
    if let Some((big, g)) = violation {
        return fail(big, g);
    }
    let maximal = f.maximal();
    if let Some(&other) = maximal
        .iter()
        .find(|m| m.count_ones() != maximal[0].count_ones())
    {
        return fail(maximal[0], other);
    }
    MatroidReport {
        pass: true,
        witness: None,
        rank: Some(f.max_size()),
        members: f.len(),
    }
}

/// Cells of the ground set whose addition keeps `g` in the family.
fn extensions(f: &SetFamily, g: u64, is_member: impl Fn(u64) -> bool) -> u64 {
    let mut free = full_mask(f.ground.len()) & !g;
    let mut ext = 0;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        if is_member(g | bit) {
            ext |= bit;
        }
        free &= free - 1;
    }
    ext
}

/// `rank[X]` is the size of the largest member inside `X`. A member `G`
/// fails the exchange exactly when the cells that do not extend it still
/// hold a member larger than `G`.
fn exchange_by_rank(f: &SetFamily) -> Option<(u64, u64)> {
    let n = f.ground.len();
    let mut member = vec![false; 1 << n];
    for &m in &f.members {
        member[m as usize] = true;
    }
    let mut rank = vec![0u8; 1 << n];
    for x in 1..1usize << n {
        rank[x] = if member[x] {
            x.count_ones() as u8
        } else {
            let mut best = 0;
            let mut rest = x;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                best = best.max(rank[x & !bit]);
                rest &= rest - 1;
            }
            best
        };
    }
    let full = full_mask(n);
    for &g in &f.members {
        let outside = full & !extensions(f, g, |m| member[m as usize]);
        if u32::from(rank[outside as usize]) > g.count_ones() {
            // shrink to a largest member inside, then keep |G| + 1 of its cells
            let mut x = outside as usize;
            while !member[x] {
                let mut rest = x;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if rank[x & !bit] == rank[x] {
                        x &= !bit;
                        break;
                    }
                    rest &= rest - 1;
                }
            }
            let mut big = 0u64;
            let mut rest = x as u64;
            for _ in 0..=g.count_ones() {
                let bit = rest & rest.wrapping_neg();
                big |= bit;
                rest &= rest - 1;
            }
            return Some((big, g));
        }
    }
    None
}

fn exchange_by_pairs(f: &SetFamily) -> Option<(u64, u64)> {
    let set: HashSet<u64> = f.members.iter().copied().collect();
    let levels: Vec<Vec<u64>> = f
        .members
        .iter()
        .copied()
        .chunk_by(|m| m.count_ones())
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    for pair in levels.windows(2) {
        for &g in &pair[0] {
            let ext = extensions(f, g, |m| set.contains(&m));
            if let Some(&big) = pair[1].iter().find(|&&big| big & !g & ext == 0) {
                return Some((big, g));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::betti_numbers;

    fn coarse() -> OrderedComplex {
        OrderedComplex::from_boundary_format(include_str!("../data/annulus_coarse.bnd")).unwrap()
    }

    fn triangle() -> OrderedComplex {
        OrderedComplex::from_simplicial_format(include_str!("../data/triangle_graph.smp"), false)
            .unwrap()
    }

    #[test]
    fn triangle_trees() {
        let k = triangle();
        let f = enumerate_trees(&k, 1, DEFAULT_CAP).unwrap();
        let maximal: Vec<Vec<usize>> = f.maximal().into_iter().map(|m| f.cells(m)).collect();
        assert_eq!(maximal, vec![vec![4, 5], vec![4, 6], vec![5, 6]]);
        assert!(check_matroid(&f).pass);
    }

    #[test]
    fn triangle_cotrees_and_leftovers() {
        let k = triangle();
        let co = enumerate_cotrees(&k, 1, DEFAULT_CAP).unwrap();
        assert_eq!(co.max_size(), 0);
        assert_eq!(co.len(), 1);
        let left = enumerate_leftovers(&k, 1, DEFAULT_ORDERING_CAP).unwrap();
        let maximal: Vec<Vec<usize>> = left.maximal().into_iter().map(|m| left.cells(m)).collect();
        assert_eq!(maximal, vec![vec![4], vec![5], vec![6]]);
        let r = check_matroid(&left);
        assert_eq!((r.pass, r.rank), (true, Some(1)));
    }

    #[test]
    fn point_trees() {
        let k = OrderedComplex::from_simplicial_format("0\n", false).unwrap();
        let f = enumerate_trees(&k, 0, DEFAULT_CAP).unwrap();
        assert_eq!(f.members(), &[0, 1]);
    }

    #[test]
    fn empty_level() {
        let k = triangle();
        let f = enumerate_cotrees(&k, 2, DEFAULT_CAP).unwrap();
        assert_eq!(f.members(), &[0]);
        assert!(check_matroid(&f).pass);
    }

    #[test]
    fn constructed_counterexample() {
        // a, b, c as cells 1, 2, 3
        let f = SetFamily::from_cell_sets(vec![1, 2, 3], &[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(f.len(), 5);
        let r = check_matroid(&f);
        assert!(!r.pass);
        assert_eq!(r.witness, Some((vec![1, 2], vec![3])));
        assert_eq!(r.to_text(), "FAIL members 5 F: 0 1 G: 2 (downward closed)");
    }

    #[test]
    fn rank_table_and_pairs_agree() {
        let good = SetFamily::from_cell_sets(
            vec![1, 2, 3, 4],
            &[vec![1, 2], vec![1, 3], vec![2, 3], vec![4]],
        )
        .unwrap();
        let bad = SetFamily::from_cell_sets(vec![1, 2, 3], &[vec![1, 2], vec![3]]).unwrap();
        for f in [&good, &bad] {
            assert_eq!(
                exchange_by_rank(f).is_some(),
                exchange_by_pairs(f).is_some()
            );
        }
        assert!(exchange_by_rank(&good).is_some());
        let uniform = SetFamily::from_cell_sets(
            vec![1, 2, 3, 4],
            &[
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4],
            ],
        )
        .unwrap();
        assert_eq!(exchange_by_rank(&uniform), None);
        assert_eq!(exchange_by_pairs(&uniform), None);
    }

    #[test]
    fn caps_are_errors() {
        let k = OrderedComplex::from_boundary_format(include_str!("../data/annulus.bnd")).unwrap();
        assert!(matches!(
            enumerate_trees(&k, 1, DEFAULT_CAP),
            Err(Error::CapExceeded {
                needed: 24,
                cap: 16
            })
        ));
        assert!(matches!(
            enumerate_leftovers(&k, 1, DEFAULT_ORDERING_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn coarse_annulus_has_no_leftover_quads() {
        let k = coarse();
        let f = enumerate_leftovers(&k, 2, DEFAULT_ORDERING_CAP).unwrap();
        assert_eq!(f.members(), &[0]);
        let f = enumerate_leftovers(&k, 1, DEFAULT_ORDERING_CAP).unwrap();
        assert_eq!(f.max_size(), 1);
        assert!(check_matroid(&f).pass);
    }

    #[test]
    fn ranks_match_partition() {
        let k = coarse();
        let tp = tri_partition(&k);
        for p in 0..=k.dim() {
            let trees = enumerate_trees(&k, p, DEFAULT_CAP).unwrap();
            let cotrees = enumerate_cotrees(&k, p, DEFAULT_CAP).unwrap();
            let left = enumerate_leftovers(&k, p, DEFAULT_ORDERING_CAP).unwrap();
            assert_eq!(check_matroid(&trees).rank, Some(tp.tree(p).len()));
            assert_eq!(check_matroid(&cotrees).rank, Some(tp.cotree(p).len()));
            assert_eq!(check_matroid(&left).rank, Some(betti_numbers(&k)[p]));
            let mut mask = 0u64;
            for c in tp.tree(p) {
                mask |= 1 << trees.ground().binary_search(c).unwrap();
            }
            assert!(trees.maximal().contains(&mask));
        }
    }
}

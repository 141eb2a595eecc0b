//! Self-checking suite over seeded random complexes and the bundled ones.
//!
//! Each named check runs on every case and reports the first failure by
//! case index, so the output is the same for any worker count.

use std::fmt::Write as _;

use rand::Rng;

use crate::bases::{self, intersection_matrix};
use crate::catalog::BUNDLED;
use crate::complex::OrderedComplex;
use crate::error::{Error, Result};
use crate::generate::{self, case_seed, rng};
use crate::gf2::{int_product, Gf2Matrix};
use crate::matroid::{self, check_matroid};
use crate::oracle;
use crate::reduction::{
    betti_numbers, classify, exhaustive_column_reduce_by, exhaustive_row_reduce_by, reduce,
    relative_cohomology_ranks, BirthDeathTable,
};
use crate::tripartition::{
    from_reductions, persistence_diagram, tri_partition, IncrementalTriPartition,
    PersistenceDiagram, Point, TriPartition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn random_cases(self) -> usize {
        match self {
            Level::Quick => 50,
            Level::Full => 200,
        }
    }

    /// Largest `n_p` for the exhaustive matroid checks.
    pub fn matroid_cells(self) -> usize {
        match self {
            Level::Quick => 5,
            Level::Full => 7,
        }
    }

    /// Randomized candidate orders per matrix in the uniqueness check.
    pub fn chooser_orders(self) -> usize {
        match self {
            Level::Quick => 3,
            Level::Full => 20,
        }
    }

    /// Extra monotone orderings per complex for the ordering checks.
    pub fn reorderings(self) -> usize {
        match self {
            Level::Quick => 2,
            Level::Full => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub level: Level,
    pub threads: usize,
}

impl SuiteConfig {
    /// Worker count from `TRIPART_THREADS`, default 1.
    pub fn with_env_threads(seed: u64, level: Level) -> Self {
        let threads = std::env::var("TRIPART_THREADS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&n: &usize| n > 0)
            .unwrap_or(1);
        SuiteConfig {
            seed,
            level,
            threads,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A stated property that a concrete case contradicts while the
    /// computation itself checks out.
    Refuted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refuted => "REFUTED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub status: Status,
    /// Cases on which the check applied.
    pub cases: usize,
    /// Cases that contradicted it.
    pub failures: usize,
    pub detail: Option<String>,
}

pub struct Case {
    pub label: String,
    pub complex: OrderedComplex,
    pub seed: u64,
}

/// `Ok(false)` when the check does not apply to the case.
type Check = fn(&Case, Level) -> Result<bool>;

struct Suite {
    name: &'static str,
    /// Failures are reported as refutations of a stated property.
    claim: bool,
    check: Check,
}

const SUITES: &[Suite] = &[
    Suite {
        name: "gf2-operations",
        claim: false,
        check: gf2_operations,
    },
    Suite {
        name: "boundary-matrix",
        claim: false,
        check: boundary_matrix,
    },
    Suite {
        name: "simplicial-completion",
        claim: false,
        check: simplicial_completion,
    },
    Suite {
        name: "euler-poincare",
        claim: false,
        check: euler_poincare,
    },
    Suite {
        name: "reduction-equations",
        claim: false,
        check: reduction_equations,
    },
    Suite {
        name: "pairing-duality",
        claim: false,
        check: pairing_duality,
    },
    Suite {
        name: "reduction-uniqueness",
        claim: false,
        check: reduction_uniqueness,
    },
    Suite {
        name: "order-invariance",
        claim: false,
        check: order_invariance,
    },
    Suite {
        name: "oracle-betti",
        claim: false,
        check: oracle_betti,
    },
    Suite {
        name: "tri-partition",
        claim: false,
        check: partition_sizes,
    },
    Suite {
        name: "tree-maximality",
        claim: false,
        check: tree_maximality,
    },
    Suite {
        name: "dimension-stability",
        claim: false,
        check: dimension_stability,
    },
    Suite {
        name: "incremental-replay",
        claim: false,
        check: incremental_replay,
    },
    Suite {
        name: "diagram-consistency",
        claim: false,
        check: diagram_consistency,
    },
    Suite {
        name: "prefix-betti",
        claim: false,
        check: prefix_betti,
    },
    Suite {
        name: "relative-cohomology",
        claim: false,
        check: relative_cohomology,
    },
    Suite {
        name: "canonical-bases",
        claim: false,
        check: canonical_bases,
    },
    Suite {
        name: "off-diagonal-support",
        claim: false,
        check: off_diagonal_support,
    },
    Suite {
        name: "chain-decomposition",
        claim: false,
        check: chain_decomposition,
    },
    Suite {
        name: "intersection-shape",
        claim: false,
        check: intersection_shape,
    },
    Suite {
        name: "two-crossings",
        claim: true,
        check: two_crossings,
    },
    Suite {
        name: "intersection-pattern",
        claim: true,
        check: intersection_pattern,
    },
    Suite {
        name: "matroids",
        claim: false,
        check: matroids,
    },
    Suite {
        name: "determinism",
        claim: false,
        check: determinism,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Bundled complexes followed by `level.random_cases()` random filtrations.
pub fn cases(seed: u64, level: Level) -> Vec<Case> {
    let mut out: Vec<Case> = BUNDLED
        .iter()
        .enumerate()
        .map(|(i, b)| Case {
            label: b.name.to_string(),
            complex: b.load(),
            seed: case_seed(seed, usize::MAX - i),
        })
        .collect();
    for i in 0..level.random_cases() {
        let s = case_seed(seed, i);
        out.push(Case {
            label: format!("random #{i}"),
            complex: generate::random_filtration(&mut rng(s)),
            seed: s,
        });
    }
    out
}

/// Runs every suite on every case.
pub fn run_suite(config: &SuiteConfig) -> Vec<SuiteOutcome> {
    let cases = cases(config.seed, config.level);
    let results = run_cases(&cases, config.level, config.threads.max(1));
    SUITES
        .iter()
        .enumerate()
        .map(|(s, suite)| {
            let mut applied = 0;
            let mut failures = 0;
            let mut first = None;
            for (c, per_case) in results.iter().enumerate() {
                match &per_case[s] {
                    Ok(true) => applied += 1,
                    Ok(false) => {}
                    Err(e) => {
                        applied += 1;
                        failures += 1;
                        if first.is_none() {
                            first = Some(format!("{}: {e}", cases[c].label));
                        }
                    }
                }
            }
            let status = match (failures, suite.claim) {
                (0, _) => Status::Pass,
                (_, true) => Status::Refuted,
                (_, false) => Status::Fail,
            };
            SuiteOutcome {
                name: suite.name,
                status,
                cases: applied,
                failures,
                detail: first,
            }
        })
        .collect()
}

fn run_cases(cases: &[Case], level: Level, threads: usize) -> Vec<Vec<Result<bool>>> {
    let one = |case: &Case| -> Vec<Result<bool>> {
        SUITES.iter().map(|s| (s.check)(case, level)).collect()
    };
    if threads == 1 || cases.len() < 2 {
        return cases.iter().map(one).collect();
    }
    let chunk = cases.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(one).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite worker panicked"))
            .collect()
    })
}

/// One line per suite and a closing summary line.
pub fn report_text(outcomes: &[SuiteOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = write!(
            out,
            "{:<8}{:<24}{} cases",
            o.status.as_str(),
            o.name,
            o.cases
        );
        if o.failures > 0 {
            let _ = write!(out, ", {} contradicted", o.failures);
        }
        if let Some(d) = &o.detail {
            let _ = write!(out, "; first: {d}");
        }
        out.push('\n');
    }
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} refuted",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Refuted)
    );
    out
}

fn ensure(ok: bool, check: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::verify(check, detail(), vec![]))
    }
}

fn random_matrix<R: Rng>(size: usize, density: f64, rng: &mut R) -> Gf2Matrix {
    let columns = (0..size).map(|_| {
        (0..size)
            .filter(|_| rng.gen_bool(density))
            .collect::<Vec<_>>()
    });
    Gf2Matrix::from_columns(size, columns).expect("indices below size")
}

fn gf2_operations(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "gf2 operations";
    let mut r = rng(case.seed);
    let n = r.gen_range(2..=64);
    let density = r.gen_range(0.05..0.6);
    let m = random_matrix(n, density, &mut r);
    let (a, b) = (r.gen_range(0..n), r.gen_range(0..n - 1));
    let b = if b >= a { b + 1 } else { b };
    let mut t = m.clone();
    t.col_add(a, b)?;
    t.col_add(a, b)?;
    t.row_add(b, a)?;
    t.row_add(b, a)?;
    ensure(t == m, CHECK, || {
        format!("add twice changed the matrix at ({a},{b})")
    })?;
    for j in 0..n {
        let naive_low = (0..n).rev().find(|&i| m.get(i, j) == Ok(true));
        let naive_left = (0..n).find(|&c| m.get(j, c) == Ok(true));
        ensure(m.low(j)? == naive_low, CHECK, || {
            format!("low of column {j}")
        })?;
        ensure(m.left(j)? == naive_left, CHECK, || {
            format!("left of row {j}")
        })?;
    }
    let other = random_matrix(n, density, &mut r);
    let product = int_product(&m, &other)?;
    for i in 0..n {
        for j in 0..n {
            let naive = (0..n)
                .filter(|&k| m.get(i, k) == Ok(true) && other.get(k, j) == Ok(true))
                .count() as u32;
            ensure(product.get(i, j) == naive, CHECK, || {
                format!("product entry ({i},{j})")
            })?;
        }
    }
    Ok(true)
}

fn boundary_matrix(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "boundary matrix";
    let d = case.complex.boundary_matrix();
    ensure(d.is_upper_triangular(), CHECK, || {
        "not upper-triangular".into()
    })?;
    ensure(
        (0..d.size()).all(|i| d.get(i, i) == Ok(false)),
        CHECK,
        || "non-zero diagonal".into(),
    )?;
    ensure(d.mul(&d)?.count_ones() == 0, CHECK, || {
        "boundary of a boundary is non-zero".into()
    })?;
    Ok(true)
}

fn simplicial_completion(case: &Case, _: Level) -> Result<bool> {
    let Some(text) = case.complex.to_simplicial_format() else {
        return Ok(false);
    };
    let plain = OrderedComplex::from_simplicial_format(&text, false)?;
    let completed = OrderedComplex::from_simplicial_format(&text, true)?;
    ensure(
        plain == completed && plain == case.complex,
        "simplicial completion",
        || "completing a full list changed it".into(),
    )?;
    Ok(true)
}

fn euler_poincare(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let betti = betti_numbers(k);
    let alternating: i64 = betti
        .iter()
        .map(|(p, b)| {
            if p.rem_euclid(2) == 0 {
                *b as i64
            } else {
                -(*b as i64)
            }
        })
        .sum();
    let chi = k.reduced_euler_characteristic();
    ensure(alternating == chi, "euler-poincare", || {
        format!("alternating Betti sum {alternating}, characteristic {chi}")
    })?;
    Ok(true)
}

fn reduction_equations(case: &Case, _: Level) -> Result<bool> {
    let d = case.complex.boundary_matrix();
    let (cr, rr) = reduce(&case.complex);
    cr.verify(&d)?;
    rr.verify(&d)?;
    Ok(true)
}

fn table(k: &OrderedComplex) -> Result<BirthDeathTable> {
    let (cr, rr) = reduce(k);
    classify(&cr, &rr, k)
}

fn pairing_duality(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "pairing duality";
    let k = &case.complex;
    let (cr, rr) = reduce(k);
    let sorted = |mut v: Vec<(usize, usize)>| {
        v.sort_unstable();
        v
    };
    ensure(sorted(cr.pairs()) == sorted(rr.pairs()), CHECK, || {
        "Low-pairs of R differ from Left-pairs of Q".into()
    })?;
    let t = classify(&cr, &rr, k)?;
    for p in -1..=k.dim() {
        ensure(t.betti(p) == t.cobetti(p), CHECK, || {
            format!(
                "dimension {p}: homology {} cohomology {}",
                t.betti(p),
                t.cobetti(p)
            )
        })?;
    }
    ensure(
        betti_numbers(k) == relative_cohomology_ranks(k),
        CHECK,
        || "rank vectors differ".into(),
    )?;
    Ok(true)
}

fn reduction_uniqueness(case: &Case, level: Level) -> Result<bool> {
    const CHECK: &str = "reduction uniqueness";
    let d = case.complex.boundary_matrix();
    let (cr, rr) = reduce(&case.complex);
    let mut r = rng(case.seed ^ 0x5eed);
    for round in 0..level.chooser_orders() {
        let mut pick = |c: &[usize]| r.gen_range(0..c.len());
        let c2 = exhaustive_column_reduce_by(&d, &mut pick);
        let r2 = exhaustive_row_reduce_by(&d, &mut pick);
        ensure(c2 == cr, CHECK, || {
            format!("column reduction differs in round {round}")
        })?;
        ensure(r2 == rr, CHECK, || {
            format!("row reduction differs in round {round}")
        })?;
    }
    Ok(true)
}

fn order_invariance(case: &Case, level: Level) -> Result<bool> {
    const CHECK: &str = "order invariance";
    let k = &case.complex;
    let base = table(k)?;
    let mut r = rng(case.seed ^ 0x0de7);
    for _ in 0..level.reorderings() {
        let order = generate::random_monotone_order(k, &mut r);
        let t = table(&k.reordered(&order)?)?;
        ensure(
            t.births == base.births && t.deaths == base.deaths && t.co_deaths == base.co_deaths,
            CHECK,
            || format!("counts changed under ordering {order:?}"),
        )?;
    }
    Ok(true)
}

fn oracle_betti(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let ours = betti_numbers(k);
    let theirs = oracle::betti_by_rank(k);
    ensure(ours == theirs, "oracle betti", || {
        format!("{ours:?} vs {theirs:?}")
    })?;
    Ok(true)
}

fn partition_sizes(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "tri-partition";
    let k = &case.complex;
    let (cr, rr) = reduce(k);
    let t = classify(&cr, &rr, k)?;
    let tp = from_reductions(k, &cr, &rr)?;
    for p in -1..=k.dim() {
        let mut all: Vec<usize> = [tp.tree(p), tp.cotree(p), tp.leftover(p)].concat();
        all.sort_unstable();
        ensure(all == k.cells_of_dim(p), CHECK, || {
            format!("dimension {p} is not partitioned")
        })?;
        let sizes = (tp.tree(p).len(), tp.cotree(p).len(), tp.leftover(p).len());
        let want = (t.deaths[p], t.co_deaths[p], t.betti(p));
        ensure(sizes == want, CHECK, || {
            format!("dimension {p}: sizes {sizes:?}, counts {want:?}")
        })?;
    }
    Ok(true)
}

fn tree_maximality(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "tree maximality";
    let k = &case.complex;
    let tp = tri_partition(k);
    let w = k.len();
    for p in -1..=k.dim() {
        let boundaries: Vec<Vec<usize>> = tp
            .tree(p)
            .iter()
            .map(|&c| k.cell(c).faces().to_vec())
            .collect();
        let rank = oracle::rank_of_sets(&boundaries, w);
        ensure(
            rank == boundaries.len() && rank == oracle::boundary_rank(k, p),
            CHECK,
            || format!("tree of dimension {p} is not a maximal acyclic set"),
        )?;
        let cofaces: Vec<Vec<usize>> = tp
            .cotree(p)
            .iter()
            .map(|&c| k.cofaces(c).to_vec())
            .collect();
        let rank = oracle::rank_of_sets(&cofaces, w);
        ensure(
            rank == cofaces.len() && rank == oracle::boundary_rank(k, p + 1),
            CHECK,
            || format!("cotree of dimension {p} is not a maximal acocyclic set"),
        )?;
    }
    Ok(true)
}

fn mapped(tp: &TriPartition, order: &[usize], p: i32) -> [Vec<usize>; 3] {
    let back = |cells: &[usize]| {
        let mut v: Vec<usize> = cells.iter().map(|&c| order[c]).collect();
        v.sort_unstable();
        v
    };
    [back(tp.tree(p)), back(tp.cotree(p)), back(tp.leftover(p))]
}

fn dimension_stability(case: &Case, level: Level) -> Result<bool> {
    let k = &case.complex;
    let tp = tri_partition(k);
    let identity: Vec<usize> = (0..k.len()).collect();
    let mut r = rng(case.seed ^ 0x57ab);
    for p in 0..=k.dim() {
        let want = mapped(&tp, &identity, p);
        for _ in 0..level.reorderings() {
            let order = generate::random_order_fixing(k, p, &mut r);
            let got = mapped(&tri_partition(&k.reordered(&order)?), &order, p);
            ensure(got == want, "dimension stability", || {
                format!("dimension {p} changed under ordering {order:?}")
            })?;
        }
    }
    Ok(true)
}

fn incremental_replay(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let mut inc = IncrementalTriPartition::new();
    for ell in 1..k.len() {
        inc.add(k.cell(ell))?;
        let batch = tri_partition(&k.prefix(ell)?);
        ensure(inc.partition() == batch, "incremental replay", || {
            format!("prefix {ell} differs")
        })?;
    }
    Ok(true)
}

fn diagram_consistency(case: &Case, _: Level) -> Result<bool> {
    const CHECK: &str = "diagram consistency";
    let k = &case.complex;
    let tp = tri_partition(k);
    let diagram = persistence_diagram(k);
    let betti = betti_numbers(k);
    let has = |cells: &[usize], c: usize| cells.binary_search(&c).is_ok();
    for &Point { dim, birth, death } in diagram.points() {
        let ok = match death {
            Some(j) => has(tp.cotree(dim), birth) && has(tp.tree(dim + 1), j),
            None => has(tp.leftover(dim), birth),
        };
        ensure(ok, CHECK, || {
            format!("point ({birth}, {death:?}) disagrees with the partition")
        })?;
    }
    for (p, b) in betti.iter() {
        let essential = diagram.essential().filter(|pt| pt.dim == p).count();
        ensure(essential == *b, CHECK, || {
            format!("{essential} essential points in dimension {p}")
        })?;
    }
    Ok(true)
}

fn prefix_betti(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let diagram = persistence_diagram(k);
    for ell in 0..k.len() {
        let direct = betti_numbers(&k.prefix(ell)?);
        for p in -1..=k.dim() {
            let got = diagram.betti_of_prefix(ell, p)?;
            let want = direct.get(p).copied().unwrap_or(0);
            ensure(got == want, "prefix betti", || {
                format!("prefix {ell}, dimension {p}: {got} vs {want}")
            })?;
        }
    }
    Ok(true)
}

fn relative_cohomology(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let diagram: PersistenceDiagram = persistence_diagram(k);
    let prefixes = std::iter::once(None).chain((0..k.len()).map(Some));
    for ell in prefixes {
        for p in -1..=k.dim() + 1 {
            let got = diagram.relative_rank(ell, p)?;
            let want = oracle::relative_cohomology_rank(k, ell, p);
            ensure(got == want, "relative cohomology", || {
                format!("prefix {ell:?}, dimension {p}: {got} vs {want}")
            })?;
        }
    }
    Ok(true)
}

fn basis_set(
    k: &OrderedComplex,
) -> Result<(
    bases::CanonicalBasisSet,
    crate::reduction::ColumnReduction,
    crate::reduction::RowReduction,
)> {
    let (cr, rr) = reduce(k);
    let tp = from_reductions(k, &cr, &rr)?;
    let bs = bases::extract_bases(&cr, &rr, &tp)?;
    Ok((bs, cr, rr))
}

fn canonical_bases(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let (bs, _, _) = basis_set(k)?;
    for p in -1..=k.dim() {
        bases::verify_cycle_basis(&bs, k, p)?;
        bases::verify_boundary_basis(&bs, k, p)?;
        bases::verify_homology_generators(&bs, k, p)?;
        bases::verify_cobases(&bs, k, p)?;
    }
    Ok(true)
}

fn off_diagonal_support(case: &Case, _: Level) -> Result<bool> {
    let (bs, cr, rr) = basis_set(&case.complex)?;
    bases::verify_off_diagonal(&cr, &rr, bs.partition())?;
    Ok(true)
}

fn chain_decomposition(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let (bs, _, _) = basis_set(k)?;
    for p in -1..=k.dim() {
        bases::verify_chain_decomposition(&bs, k, p)?;
    }
    Ok(true)
}

fn intersection_shape(case: &Case, _: Level) -> Result<bool> {
    let (bs, cr, rr) = basis_set(&case.complex)?;
    intersection_matrix(&cr, &rr)?.verify_shape(&bs)?;
    Ok(true)
}

fn two_crossings(case: &Case, _: Level) -> Result<bool> {
    let (bs, _, _) = basis_set(&case.complex)?;
    bases::verify_two_crossings(&bs)?;
    Ok(true)
}

fn intersection_pattern(case: &Case, _: Level) -> Result<bool> {
    let (bs, cr, rr) = basis_set(&case.complex)?;
    intersection_matrix(&cr, &rr)?.verify(&bs)?;
    Ok(true)
}

fn matroids(case: &Case, level: Level) -> Result<bool> {
    const CHECK: &str = "matroids";
    let k = &case.complex;
    let cap = level.matroid_cells();
    let ordering_cap = (1..=cap).product();
    let (cr, rr) = reduce(k);
    let t = classify(&cr, &rr, k)?;
    let tp = from_reductions(k, &cr, &rr)?;
    let mut applied = false;
    for p in 0..=k.dim() {
        if k.count(p) > cap {
            continue;
        }
        applied = true;
        let families = [
            ("tree", matroid::enumerate_trees(k, p, cap)?, t.deaths[p]),
            (
                "cotree",
                matroid::enumerate_cotrees(k, p, cap)?,
                t.co_deaths[p],
            ),
            (
                "leftover",
                matroid::enumerate_leftovers(k, p, ordering_cap)?,
                t.betti(p),
            ),
        ];
        for (name, family, rank) in &families {
            let report = check_matroid(family);
            ensure(report.pass && report.rank == Some(*rank), CHECK, || {
                format!("{name} family in dimension {p}: {}", report.to_text())
            })?;
        }
        let tree = &families[0].1;
        let mask = tp
            .tree(p)
            .iter()
            .map(|c| {
                1u64 << tree
                    .ground()
                    .binary_search(c)
                    .expect("tree cell of dimension p")
            })
            .fold(0, |a, b| a | b);
        ensure(tree.maximal().contains(&mask), CHECK, || {
            format!("tree of dimension {p} is not maximal")
        })?;
    }
    Ok(applied)
}

fn determinism(case: &Case, _: Level) -> Result<bool> {
    let k = &case.complex;
    let once = |k: &OrderedComplex| -> Result<String> {
        let (bs, _, _) = basis_set(k)?;
        Ok(format!(
            "{}{}",
            persistence_diagram(k).to_text(),
            bs.to_text(None)
        ))
    };
    let again = OrderedComplex::from_boundary_format(&k.to_boundary_format())?;
    ensure(once(k)? == once(&again)?, "determinism", || {
        "outputs differ between runs".into()
    })?;
    Ok(true)
}

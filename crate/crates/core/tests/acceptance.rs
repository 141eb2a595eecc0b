//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` still prints FAIL with its first
//! counterexample but does not fail the process; every other failure does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use tripart::bases::{self, extract_bases, intersection_matrix};
use tripart::catalog::{self, BUNDLED};
use tripart::generate::{self, case_seed, rng};
use tripart::matroid::{check_matroid, enumerate_cotrees, enumerate_leftovers, enumerate_trees};
use tripart::oracle;
use tripart::reduction::{
    betti_numbers, classify, exhaustive_column_reduce_by, exhaustive_row_reduce_by, reduce,
    ColumnReduction, RowReduction,
};
use tripart::tripartition::{
    from_reductions, persistence_diagram, tri_partition, IncrementalTriPartition,
};
use tripart::{Error, OrderedComplex};

const SEED: u64 = 20_240_601;

/// Criteria whose stated property a concrete case contradicts.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    7,
    "tree/cotree crossings are not symmetric once an essential class is involved; \
     the two-component graph already contradicts it in dimension 0",
)];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);
type Reduced = (bases::CanonicalBasisSet, ColumnReduction, RowReduction);

fn random_cases(count: usize, salt: u64) -> Vec<OrderedComplex> {
    (0..count)
        .map(|i| generate::random_filtration(&mut rng(case_seed(SEED ^ salt, i))))
        .collect()
}

/// Bundled complexes plus 200 random filtrations.
fn test_complexes() -> Vec<(String, OrderedComplex)> {
    let mut out: Vec<(String, OrderedComplex)> = BUNDLED
        .iter()
        .map(|b| (b.name.to_string(), b.load()))
        .collect();
    out.extend(
        random_cases(200, 0)
            .into_iter()
            .enumerate()
            .map(|(i, k)| (format!("random #{i}"), k)),
    );
    out
}

fn sizes(k: &OrderedComplex, p: i32) -> (usize, usize, usize) {
    let tp = tri_partition(k);
    (tp.tree(p).len(), tp.cotree(p).len(), tp.leftover(p).len())
}

fn timed_sizes(k: &OrderedComplex, want: (usize, usize, usize), limit: Duration) -> Outcome {
    let start = Instant::now();
    let got = sizes(k, 1);
    let elapsed = start.elapsed();
    if got != want {
        return Err(format!("sizes {got:?}, expected {want:?}"));
    }
    if elapsed >= limit {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "tree {} cotree {} leftover {} in {elapsed:.2?}",
        got.0, got.1, got.2
    ))
}

fn annulus_sizes() -> Outcome {
    timed_sizes(&catalog::annulus(), (15, 8, 1), Duration::from_secs(1))
}

fn wheel_sizes() -> Outcome {
    timed_sizes(&catalog::wheel(), (16, 16, 0), Duration::from_secs(1))
}

fn duality() -> Outcome {
    let start = Instant::now();
    let cases = random_cases(200, 0);
    for (i, k) in cases.iter().enumerate() {
        let (cr, rr) = reduce(k);
        let t = classify(&cr, &rr, k).map_err(|e| e.to_string())?;
        for p in -1..=k.dim() {
            if t.betti(p) != t.cobetti(p) {
                return Err(format!(
                    "random #{i}, dimension {p}: {} vs {}",
                    t.betti(p),
                    t.cobetti(p)
                ));
            }
        }
        let mut low = cr.pairs();
        let mut left = rr.pairs();
        low.sort_unstable();
        left.sort_unstable();
        if low != left {
            return Err(format!("random #{i}: column and row pairings differ"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} complexes in {elapsed:.2?}", cases.len()))
}

fn euler_poincare() -> Outcome {
    let all = test_complexes();
    for (name, k) in &all {
        let alternating: i64 = betti_numbers(k)
            .iter()
            .map(|(p, b)| {
                if p.rem_euclid(2) == 0 {
                    *b as i64
                } else {
                    -(*b as i64)
                }
            })
            .sum();
        if alternating != k.reduced_euler_characteristic() {
            return Err(format!(
                "{name}: {alternating} vs {}",
                k.reduced_euler_characteristic()
            ));
        }
    }
    Ok(format!("{} complexes", all.len()))
}

fn oracle_equivalence() -> Outcome {
    let all = test_complexes();
    for (name, k) in &all {
        let ours = betti_numbers(k);
        let theirs = oracle::betti_by_rank(k);
        if ours != theirs {
            return Err(format!("{name}: {ours:?} vs {theirs:?}"));
        }
    }
    Ok(format!("{} complexes", all.len()))
}

fn basis_set(k: &OrderedComplex) -> Result<Reduced, Error> {
    let (cr, rr) = reduce(k);
    let tp = from_reductions(k, &cr, &rr)?;
    let bs = extract_bases(&cr, &rr, &tp)?;
    Ok((bs, cr, rr))
}

fn canonical_bases() -> Outcome {
    let all = test_complexes();
    let mut reports = 0;
    let mut enumerated = 0;
    for (name, k) in &all {
        let (bs, _, _) = basis_set(k).map_err(|e| format!("{name}: {e}"))?;
        for p in -1..=k.dim() {
            let run = || -> Result<usize, Error> {
                let cycles = bases::verify_cycle_basis(&bs, k, p)?;
                bases::verify_boundary_basis(&bs, k, p)?;
                bases::verify_homology_generators(&bs, k, p)?;
                let co = bases::verify_cobases(&bs, k, p)?;
                Ok(usize::from(cycles.enumerated) + usize::from(co.cocycles.enumerated))
            };
            enumerated += run().map_err(|e| format!("{name}, dimension {p}: {e}"))?;
            reports += 6;
        }
    }
    Ok(format!(
        "{reports} reports on {} complexes, {enumerated} uniqueness enumerations",
        all.len()
    ))
}

fn intersection_patterns() -> Outcome {
    let all = test_complexes();
    let mut contradicted = Vec::new();
    for (name, k) in &all {
        let (bs, cr, rr) = basis_set(k).map_err(|e| format!("{name}: {e}"))?;
        let vu = intersection_matrix(&cr, &rr).map_err(|e| e.to_string())?;
        // entries, triangularity and the leftover identity block
        vu.verify_shape(&bs).map_err(|e| format!("{name}: {e}"))?;
        if let Err(e) = vu.verify(&bs) {
            contradicted.push(format!("{name}: {e}"));
        }
    }
    if contradicted.is_empty() {
        Ok(format!("{} complexes", all.len()))
    } else {
        Err(format!(
            "entrywise pattern contradicted on {} of {} complexes; first {}",
            contradicted.len(),
            all.len(),
            contradicted[0]
        ))
    }
}

fn incremental_replay() -> Outcome {
    let cases = random_cases(50, 8);
    let mut steps = 0;
    for (i, k) in cases.iter().enumerate() {
        let mut inc = IncrementalTriPartition::new();
        for ell in 1..k.len() {
            inc.add(k.cell(ell)).map_err(|e| e.to_string())?;
            let prefix = k.prefix(ell).map_err(|e| e.to_string())?;
            if inc.partition() != tri_partition(&prefix) {
                return Err(format!("random #{i}, prefix {ell}"));
            }
            steps += 1;
        }
    }
    Ok(format!("{} filtrations, {steps} prefixes", cases.len()))
}

fn reduction_uniqueness() -> Outcome {
    let cases = random_cases(20, 9);
    let mut r = rng(SEED ^ 9);
    for (i, k) in cases.iter().enumerate() {
        let d = k.boundary_matrix();
        let (cr, rr) = reduce(k);
        for order in 0..20 {
            let mut pick = |c: &[usize]| r.gen_range(0..c.len());
            if exhaustive_column_reduce_by(&d, &mut pick) != cr
                || exhaustive_row_reduce_by(&d, &mut pick) != rr
            {
                return Err(format!("random #{i}, candidate order {order}"));
            }
        }
    }
    Ok(format!("20 orders on {} complexes", cases.len()))
}

fn matroids() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for name in [
        "triangle_graph",
        "hollow_tetrahedron",
        "annulus_coarse",
        "two_component",
    ] {
        let k = catalog::bundled(name).expect("bundled");
        for p in 0..=k.dim() {
            if k.count(p) > 7 {
                continue;
            }
            let families = [
                ("tree", enumerate_trees(&k, p, 16)),
                ("cotree", enumerate_cotrees(&k, p, 16)),
                ("leftover", enumerate_leftovers(&k, p, 5040)),
            ];
            for (family, built) in families {
                let built = built.map_err(|e| format!("{name} {family} {p}: {e}"))?;
                let report = check_matroid(&built);
                if !report.pass {
                    return Err(format!("{name} {family} {p}: {}", report.to_text()));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{checked} families in {elapsed:.2?}"))
}

fn prefix_betti() -> Outcome {
    let cases = random_cases(20, 11);
    let mut checked = 0;
    for (i, k) in cases.iter().enumerate() {
        let diagram = persistence_diagram(k);
        for ell in 0..k.len() {
            let direct = betti_numbers(&k.prefix(ell).map_err(|e| e.to_string())?);
            for p in -1..=k.dim() {
                let got = diagram.betti_of_prefix(ell, p).map_err(|e| e.to_string())?;
                let want = direct.get(p).copied().unwrap_or(0);
                if got != want {
                    return Err(format!(
                        "random #{i}, prefix {ell}, dimension {p}: {got} vs {want}"
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} prefix values on {} complexes",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "annulus tri-partition sizes", annulus_sizes),
        (2, "wheel tri-partition sizes", wheel_sizes),
        (3, "homology and cohomology duality", duality),
        (4, "Euler characteristic", euler_poincare),
        (5, "Betti numbers against rank oracle", oracle_equivalence),
        (6, "canonical bases", canonical_bases),
        (7, "intersection matrix pattern", intersection_patterns),
        (8, "incremental equals batch", incremental_replay),
        (
            9,
            "uniqueness of exhaustive reduction",
            reduction_uniqueness,
        ),
        (10, "tree, cotree and leftover matroids", matroids),
        (11, "prefix Betti numbers", prefix_betti),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
                match known {
                    Some((_, why)) => println!("FAIL {id:>2} {name}: {detail} [known: {why}]"),
                    None => {
                        unexpected += 1;
                        println!("FAIL {id:>2} {name}: {detail}");
                    }
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failures");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

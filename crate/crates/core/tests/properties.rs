use proptest::prelude::*;

use tripart::generate::{random_filtration, rng};
use tripart::oracle;
use tripart::reduction::{betti_numbers, classify, reduce};
use tripart::tripartition::{tri_partition, Part};
use tripart::OrderedComplex;

fn filtration(seed: u64) -> OrderedComplex {
    random_filtration(&mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reductions_satisfy_their_equations(seed in any::<u64>()) {
        let k = filtration(seed);
        let d = k.boundary_matrix();
        let (cr, rr) = reduce(&k);
        prop_assert!(cr.verify(&d).is_ok());
        prop_assert!(rr.verify(&d).is_ok());
    }

    #[test]
    fn parts_cover_every_cell_once(seed in any::<u64>()) {
        let k = filtration(seed);
        let tp = tri_partition(&k);
        for p in -1..=k.dim() {
            let mut all: Vec<usize> = [tp.tree(p), tp.cotree(p), tp.leftover(p)].concat();
            all.sort_unstable();
            prop_assert_eq!(all, k.cells_of_dim(p));
        }
    }

    #[test]
    fn part_sizes_are_ranks(seed in any::<u64>()) {
        let k = filtration(seed);
        let tp = tri_partition(&k);
        let betti = betti_numbers(&k);
        for p in -1..=k.dim() {
            prop_assert_eq!(tp.tree(p).len(), oracle::boundary_rank(&k, p));
            prop_assert_eq!(tp.cotree(p).len(), oracle::boundary_rank(&k, p + 1));
            prop_assert_eq!(tp.leftover(p).len(), *betti.get(p).unwrap());
        }
    }

    #[test]
    fn pairs_run_from_cotree_to_tree(seed in any::<u64>()) {
        let k = filtration(seed);
        let (cr, rr) = reduce(&k);
        let tp = tri_partition(&k);
        let mut pairs = cr.pairs();
        pairs.sort_unstable();
        let mut standard = oracle::standard_pairs(&k);
        standard.sort_unstable();
        prop_assert_eq!(&pairs, &standard);
        for (birth, death) in pairs {
            prop_assert!(birth < death);
            prop_assert_eq!(tp.part(birth), Part::Cotree);
            prop_assert_eq!(tp.part(death), Part::Tree);
        }
        let t = classify(&cr, &rr, &k).unwrap();
        for p in -1..=k.dim() {
            prop_assert_eq!(t.betti(p), t.cobetti(p));
        }
    }
}

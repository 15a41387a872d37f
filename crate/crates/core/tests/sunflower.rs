mod common;

use common::in_hull_oracle;
use ncode_core::geometry::rational::{frac, Point};
use ncode_core::sunflower::{build_counterexample, is_k_flexible, run_trials, tverberg_number, tverberg_partition, weight_k_census};
use proptest::prelude::*;

fn arb_points(dim: usize, count: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, dim), count)
        .prop_map(|ps| ps.into_iter().map(|p| p.into_iter().map(|c| frac(c, 3)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn radon_partitions_exist_and_check_out(pts in arb_points(2, 4)) {
        let t = tverberg_partition(&pts, 2).unwrap().expect("four points in the plane have a Radon partition");
        let mut seen: Vec<usize> = t.parts.concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, vec![0, 1, 2, 3]);
        for part in &t.parts {
            let sub: Vec<Point> = part.iter().map(|&i| pts[i].clone()).collect();
            prop_assert!(in_hull_oracle(&t.point, &sub));
        }
    }

    #[test]
    fn line_points_split_at_the_tverberg_number(pts in arb_points(1, 5)) {
        // (d+1)(r-1)+1 = 5 points on a line always split into 3 parts.
        prop_assert_eq!(tverberg_number(1, 3), 5);
        let t = tverberg_partition(&pts, 3).unwrap().unwrap();
        for part in &t.parts {
            let sub: Vec<Point> = part.iter().map(|&i| pts[i].clone()).collect();
            prop_assert!(in_hull_oracle(&t.point, &sub));
        }
    }
}

#[test]
fn counterexamples_have_many_weight_k_words() {
    for (d, k) in [(2, 1), (2, 2), (3, 1)] {
        let (spec, _) = build_counterexample(d, k, false).unwrap();
        assert_eq!(is_k_flexible(&spec.code().unwrap()), Some(k));
        assert!(weight_k_census(&spec).unwrap() >= d);
    }
}

#[test]
fn small_trial_batches_always_hit() {
    let s = run_trials(2, 1, 3, 50, 100, true).unwrap();
    assert_eq!(s.hits, 50, "misses at seeds {:?}", s.misses);
    let s = run_trials(3, 1, 4, 20, 0, false).unwrap();
    assert!(s.misses.is_empty());
}

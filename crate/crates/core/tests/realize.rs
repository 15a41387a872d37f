mod common;

use common::{in_hull_oracle, random_ic_code};
use ncode_core::geometry::arrangement::code_of_realization;
use ncode_core::geometry::polytope::ConvexSet;
use ncode_core::realize::{realize_closed, realize_closed_completion, target_dimension, verify_plan, Route};
use ncode_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_ic_codes_realize_and_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cyclic = 0;
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let c = random_ic_code(&mut rng, n);
        let (r, plan) = realize_closed(&c).unwrap();
        assert_eq!(r.dim(), target_dimension(&c));
        let deep = plan.m <= 3;
        let check = verify_plan(&c, &plan, deep).unwrap();
        assert!(check.passed(), "{c}: {check:?}");
        if deep {
            assert_ne!(check.geometric, Some(false));
        }
        cyclic += usize::from(plan.route == Route::Cyclic);
    }
    assert!(cyclic > 0, "no code exercised the cyclic route");
}

#[test]
fn face_points_are_hull_members_by_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let n = rng.gen_range(2..=4);
        let c = random_ic_code(&mut rng, n);
        let (r, plan) = realize_closed(&c).unwrap();
        for (word, p) in &plan.face_points {
            for (i, set) in r.sets().iter().enumerate() {
                let inside = match set {
                    ConvexSet::V(v) => in_hull_oracle(p, v.points()),
                    ConvexSet::Empty => false,
                    ConvexSet::H(_) => unreachable!("realizations are V-represented"),
                };
                assert_eq!(inside, word.contains(i + 1), "{c}: p_{word} and set {}", i + 1);
            }
        }
    }
}

#[test]
fn non_ic_codes_realize_their_completion() {
    let c = common::code(3, &[&[1, 2, 3], &[1, 2], &[1, 3]]);
    assert!(matches!(realize_closed(&c), Err(Error::NotIntersectionComplete(_))));
    let (r, plan, changed) = realize_closed_completion(&c).unwrap();
    assert!(changed);
    let done = c.intersection_completion();
    assert_eq!(code_of_realization(&r).unwrap(), done);
    assert!(verify_plan(&done, &plan, true).unwrap().passed());
    assert!(!verify_plan(&c, &plan, false).unwrap().passed());
}

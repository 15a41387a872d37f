//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{box_sweep_code, boxes_realization, in_hull_oracle, interval_sweep_code, random_boxes, random_ic_code, random_proper_complex, Interval};
use ncode_core::bounds::{binomial_extremal, bound_report, t_n_bounds};
use ncode_core::families::{make_s_delta, make_s_n, make_t_n};
use ncode_core::geometry::arrangement::{code_of_realization, CodeOptions};
use ncode_core::geometry::polytope::ConvexSet;
use ncode_core::geometry::rational::{frac, int, Point};
use ncode_core::geometry::transform::{close_realization, inflate_realization, trim_realization};
use ncode_core::morphisms::{apply_morphism, restriction, sdelta_to_sm};
use ncode_core::realize::{realize_closed, verify_plan};
use ncode_core::sunflower::{build_counterexample, is_k_flexible, run_trials, tverberg_partition, Certification};
use ncode_core::{Code, Codeword, Error, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Parses listings such as `{12, 1, 2, ∅}`; neurons are single digits.
fn listing(n: usize, s: &str) -> Code {
    let words = s
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(str::trim)
        .map(|w| if w == "∅" { Vec::new() } else { w.chars().map(|c| c.to_digit(10).unwrap() as usize).collect() });
    Code::from_words(n, words.collect::<Vec<_>>()).unwrap()
}

fn words(ws: &[Codeword]) -> String {
    ws.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn ac1() -> Outcome {
    let s = [
        (2, "{12, 1, 2, ∅}", "12"),
        (3, "{12, 13, 23, 1, 2, 3, ∅}", "12,13,23"),
        (4, "{123, 14, 24, 34, 1, 2, 3, 4, ∅}", "14,24,34,123"),
    ];
    for (i, (n, text, maximal)) in s.iter().enumerate() {
        let got = make_s_n(i + 1).map_err(|e| e.to_string())?;
        ensure(got == listing(*n, text), || format!("S_{} = {got}", i + 1))?;
        ensure(words(&got.maximal_codewords()) == *maximal, || format!("S_{} maximal words", i + 1))?;
    }
    let t = [
        "{12, 1, 2, ∅}",
        "{13, 24, 12, 34, 1, 2, 3, 4, ∅}",
        "{135, 246, 12, 34, 56, 1, 2, 3, 4, 5, 6, ∅}",
        "{1357, 2468, 12, 34, 56, 78, 1, 2, 3, 4, 5, 6, 7, 8, ∅}",
    ];
    for (i, text) in t.iter().enumerate() {
        let n = i + 1;
        let got = make_t_n(n).map_err(|e| e.to_string())?;
        ensure(got == listing(2 * n, text), || format!("T_{n} = {got}"))?;
    }
    Ok("S_1..S_3 and T_1..T_4 match the listings".into())
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..500 {
        let n = rng.gen_range(2..=6);
        let d = random_proper_complex(&mut rng, n, 1);
        let s = make_s_delta(&d).map_err(|e| e.to_string())?;
        ensure(s.is_intersection_complete(), || format!("trial {trial}: S_Δ not IC for {}", d.code()))?;
        ensure(s.maximal_codewords().len() == d.facets().len() + 1, || {
            format!("trial {trial}: {} maximal words for {} facets", s.maximal_codewords().len(), d.facets().len())
        })?;
    }
    Ok("500 complexes: IC with facets + 1 maximal words".into())
}

fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut deep, mut skipped) = (0, 0);
    for trial in 0..200 {
        let n = rng.gen_range(2..=6);
        let c = random_ic_code(&mut rng, n);
        let (r, plan) = realize_closed(&c).map_err(|e| format!("trial {trial} {c}: {e}"))?;
        let m = (2 * c.dim() + 1).min(n as i64 - 1).max(1) as usize;
        ensure(r.dim() == m, || format!("trial {trial}: dimension {} instead of {m}", r.dim()))?;
        let check = verify_plan(&c, &plan, m <= 3).map_err(|e| e.to_string())?;
        ensure(check.combinatorial && check.witness, || format!("trial {trial} {c}: {check:?}"))?;
        if m <= 3 {
            match check.geometric {
                Some(true) => deep += 1,
                Some(false) => return Err(format!("trial {trial} {c}: geometric layer failed: {:?}", check.notes)),
                None => skipped += 1,
            }
        }
    }
    Ok(format!("200 codes; full code check on {deep}, {skipped} above the hyperplane cap"))
}

fn ac4() -> Outcome {
    let c = common::code(3, &[&[1, 2, 3], &[1, 2], &[1], &[2], &[3]]);
    let (r, plan) = realize_closed(&c).map_err(|e| e.to_string())?;
    ensure(plan.m == 2, || format!("m = {}", plan.m))?;
    let dims: Vec<usize> = r
        .sets()
        .iter()
        .map(|s| match s {
            ConvexSet::V(v) => v.affine_dim(),
            _ => usize::MAX,
        })
        .collect();
    ensure(dims == [2, 2, 1], || format!("set dimensions {dims:?}"))?;
    Ok("m = 2; V_1, V_2 triangles, V_3 a segment".into())
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = CodeOptions::default();
    let mut inflated = 0;
    while inflated < 100 {
        let dim = 1 + inflated % 2;
        let count = rng.gen_range(2..=3);
        let boxes = random_boxes(&mut rng, count, dim, false, 10);
        let r = boxes_realization(&boxes, false);
        let code = code_of_realization(&r).map_err(|e| e.to_string())?;
        if !code.is_simplicial_complex() {
            continue;
        }
        let (open, _) = inflate_realization(&r, opts).map_err(|e| format!("inflate {boxes:?}: {e}"))?;
        let got = code_of_realization(&open).map_err(|e| e.to_string())?;
        ensure(got == code, || format!("inflation changed {code} into {got}"))?;
        inflated += 1;
    }
    let mut trimmed = 0;
    while trimmed < 100 {
        let dim = 1 + trimmed % 2;
        let count = rng.gen_range(2..=3);
        let boxes = random_boxes(&mut rng, count, dim, true, 10);
        let r = boxes_realization(&boxes, true);
        let code = code_of_realization(&r).map_err(|e| e.to_string())?;
        if !code.is_intersection_complete() {
            continue;
        }
        let (t, _) = trim_realization(&r, opts).map_err(|e| format!("trim {boxes:?}: {e}"))?;
        let closed = close_realization(&t).map_err(|e| e.to_string())?;
        let got = code_of_realization(&closed).map_err(|e| e.to_string())?;
        ensure(got == code, || format!("trim and close changed {code} into {got}"))?;
        trimmed += 1;
    }
    let ivs = [(0, 3), (0, 2), (1, 3)].map(|(a, b)| vec![Interval { lo: int(a), hi: int(b), open: true }]);
    let bad = boxes_realization(&ivs, true);
    let bad_code = code_of_realization(&bad).map_err(|e| e.to_string())?;
    ensure(bad_code == common::code(3, &[&[1, 2, 3], &[1, 2], &[1, 3]]), || format!("bad example realizes {bad_code}"))?;
    match trim_realization(&bad, opts) {
        Err(Error::NotIntersectionComplete(_)) => {}
        other => return Err(format!("{{123, 12, 13, ∅}} was not rejected: {other:?}")),
    }
    Ok("100 inflations and 100 trim-and-close runs keep the code; {123,12,13,∅} rejected".into())
}

fn ac6() -> Outcome {
    let mut lines = Vec::new();
    for (d, k, n) in [(2, 1, 3), (2, 2, 5), (3, 1, 4)] {
        let s = run_trials(d, k, n, 1000, 0, true).map_err(|e| e.to_string())?;
        ensure(s.misses.is_empty(), || format!("(d,k,n) = ({d},{k},{n}) missed at seeds {:?}", s.misses))?;
        lines.push(format!("({d},{k},{n})"));
    }
    for (d, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        for skew in [false, true] {
            let (spec, _) = build_counterexample(d, k, skew).map_err(|e| format!("({d},{k}): {e}"))?;
            ensure(spec.certification == Certification::CodeChecked, || format!("({d},{k}) not code-checked"))?;
            let flex = is_k_flexible(&spec.code().map_err(|e| e.to_string())?);
            ensure(flex.is_some_and(|f| f <= k), || format!("({d},{k}) flexibility {flex:?}"))?;
        }
    }
    Ok(format!("1000 hits each for {}; counterexamples certified for (2,1), (2,2), (3,1), (3,2)", lines.join(", ")))
}

fn random_points<R: Rng>(rng: &mut R, count: usize) -> Vec<Point> {
    (0..count).map(|_| (0..2).map(|_| frac(rng.gen_range(-40..=40), rng.gen_range(1..=4))).collect()).collect()
}

fn check_partition(points: &[Point], r: usize) -> Result<(), String> {
    let t = tverberg_partition(points, r).map_err(|e| e.to_string())?.ok_or_else(|| format!("no partition of {points:?}"))?;
    ensure(t.parts.len() == r, || "wrong number of parts".into())?;
    for part in &t.parts {
        let sub: Vec<Point> = part.iter().map(|&i| points[i].clone()).collect();
        ensure(in_hull_oracle(&t.point, &sub), || format!("common point outside part {part:?}"))?;
    }
    Ok(())
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        check_partition(&random_points(&mut rng, 7), 3)?;
    }
    for _ in 0..200 {
        check_partition(&random_points(&mut rng, 4), 2)?;
    }
    Ok("200 seven-point sets split in 3, 200 four-point sets split in 2".into())
}

fn ac8() -> Outcome {
    for (n, want) in (1..=5).zip([1, 2, 3, 3, 4]) {
        let b = t_n_bounds(n).map_err(|e| e.to_string())?;
        ensure(b.exact == Some(want) && b.lower == want && b.upper == want, || format!("t_{n}: {b:?}"))?;
    }
    let b = t_n_bounds(6).map_err(|e| e.to_string())?;
    ensure((b.lower, b.upper, b.exact) == (4, 5, None), || format!("t_6: {b:?}"))?;
    Ok("t_1..t_5 = 1,2,3,3,4; t_6 in [4,5]".into())
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=6);
        let d = random_proper_complex(&mut rng, n, 2);
        let m = d.facets().len();
        if m > 5 {
            continue;
        }
        let f = sdelta_to_sm(&d).map_err(|e| e.to_string())?;
        let image = apply_morphism(&f).map_err(|e| e.to_string())?;
        ensure(image == make_s_n(m).unwrap(), || format!("image of S_Δ for {} is {image}", d.code()))?;
        done += 1;
    }
    for n in 1..=5 {
        let r = restriction(&make_t_n(n + 1).unwrap(), Codeword::full(2 * n)).map_err(|e| e.to_string())?;
        ensure(r == make_t_n(n).unwrap(), || format!("T_{} restricted is {r}", n + 1))?;
    }
    Ok("100 complexes map onto S_m; T_(n+1) restricts to T_n for n <= 5".into())
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for t in 0..200 {
        let open = t % 2 == 0;
        let count = rng.gen_range(1..=6);
        let boxes = random_boxes(&mut rng, count, 1, open, 16);
        let ivs: Vec<Interval> = boxes.iter().map(|b| b[0].clone()).collect();
        let got = code_of_realization(&boxes_realization(&boxes, open)).map_err(|e| e.to_string())?;
        let want = interval_sweep_code(&ivs);
        ensure(got == want, || format!("intervals {ivs:?}: {got} vs {want}"))?;
    }
    for t in 0..100 {
        let open = t % 2 == 0;
        let count = rng.gen_range(1..=4);
        let boxes = random_boxes(&mut rng, count, 2, open, 10);
        let got = code_of_realization(&boxes_realization(&boxes, open)).map_err(|e| e.to_string())?;
        let want = box_sweep_code(&boxes);
        ensure(got == want, || format!("boxes {boxes:?}: {got} vs {want}"))?;
    }
    Ok("200 interval and 100 box arrangements match the sweeps".into())
}

fn ac11() -> Outcome {
    let mut parts = Vec::new();
    for (n, want) in [(3usize, 2u64), (5, 6), (9, 70)] {
        let got = binomial_extremal(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("binomial_extremal({n}) = {got}"))?;
        // All ⌊(n-1)/2⌋-subsets of [n-1] as facets.
        let k = (n - 1) / 2;
        let facets: Vec<Codeword> = (0..1u64 << (n - 1)).map(Codeword::from_bits).filter(|w| w.weight() == k).collect();
        let delta = SimplicialComplex::from_facets(n - 1, facets).map_err(|e| e.to_string())?;
        let code = make_s_delta(&delta).map_err(|e| e.to_string())?;
        ensure(code.n() == n, || "wrong neuron count".into())?;
        let report = bound_report(&code);
        ensure(report.exact_odim == Some(want as usize), || format!("n = {n}: {report:?}"))?;
        ensure(report.cdim_upper.is_some_and(|u| u <= n), || format!("n = {n}: cdim upper {:?}", report.cdim_upper))?;
        parts.push(format!("n={n}: odim {want}, cdim <= {}", report.cdim_upper.unwrap()));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("family listings", ac1),
        ("S_Δ maximal word count", ac2),
        ("closed realization pipeline", ac3),
        ("three-cell example", ac4),
        ("inflate and trim pipelines", ac5),
        ("flexible sunflower evidence", ac6),
        ("Tverberg partitions", ac7),
        ("T_n table", ac8),
        ("morphisms onto S_m and T_n", ac9),
        ("oracle equivalence", ac10),
        ("binomial extremal codes", ac11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = Duration::as_secs_f64(&start.elapsed());
        match outcome {
            Ok(detail) => println!("[PASS] AC-{} {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC-{} {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use schur_core::bounds::best_bounds;
use schur_core::oracle::{brute_force_value, BruteForce};
use schur_core::search::{search_exact, SearchOptions, Strategy};
use schur_core::{verify_valid, ProblemSpec};

fn spec(ks: &[usize]) -> ProblemSpec {
    ProblemSpec::new(ks.to_vec()).unwrap()
}

#[test]
fn color_order_does_not_matter() {
    let values: Vec<usize> = [[3, 3, 4], [3, 4, 3], [4, 3, 3]]
        .iter()
        .map(|ks| {
            let out = search_exact(&spec(ks), &SearchOptions::default()).unwrap();
            assert!(verify_valid(&out.witness, &out.spec).unwrap());
            out.value
        })
        .collect();
    assert_eq!(values, vec![23, 23, 23]);
}

#[test]
fn search_matches_backtracking() {
    for ks in [&[3][..], &[5], &[3, 3], &[3, 4], &[4, 4], &[3, 6]] {
        let s = spec(ks);
        let BruteForce::Value(expected) = brute_force_value(&s, 30).unwrap() else {
            panic!("{s} above cap");
        };
        assert_eq!(
            search_exact(&s, &SearchOptions::default()).unwrap().value,
            expected,
            "{s}"
        );
    }
}

#[test]
fn strategies_and_concurrency_agree() {
    let s = spec(&[3, 3, 4]);
    let base = search_exact(&s, &SearchOptions::default()).unwrap();
    for (strategy, jobs, start) in [
        (Strategy::Linear, 1, Some(15)),
        (Strategy::Linear, 4, Some(15)),
        (Strategy::RampBisect, 3, Some(1)),
        (Strategy::RampBisect, 2, Some(60)),
    ] {
        let opts = SearchOptions {
            strategy,
            jobs,
            start,
            ..SearchOptions::default()
        };
        let out = search_exact(&s, &opts).unwrap();
        assert_eq!(out.value, base.value, "{strategy:?} jobs = {jobs}");
        assert_eq!(out.witness.n(), base.value - 1);
    }
}

#[test]
fn result_respects_the_proven_lower_bound() {
    for ks in [&[3, 3][..], &[3, 5], &[3, 3, 3], &[3, 3, 4], &[3, 3, 5]] {
        let s = spec(ks);
        let lower = best_bounds(&s, None).unwrap().max_lower_u64().unwrap();
        let out = search_exact(&s, &SearchOptions::default()).unwrap();
        assert!(out.value as u64 >= lower, "{s}: {} < {lower}", out.value);
    }
}

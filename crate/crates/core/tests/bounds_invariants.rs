use num_bigint::BigInt;

use schur_core::bounds::{
    best_bounds, conjecture_values, iterated_lower_bound, product_lower_bound, robertson_schaal_exact,
    schur_classic_bounds, znam_diagonal_lb, BoundKind, RamseyTable,
};
use schur_core::search::{bundled_table, RowKind, TableName};
use schur_core::ProblemSpec;

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

#[test]
fn three_color_product_identity() {
    for s in 3..=12i128 {
        for t in s..=12 {
            for u in t..=12 {
                let ks = [s as usize, t as usize, u as usize];
                let expected = big(s * t * u - t * u - u - 1);
                assert_eq!(product_lower_bound(&ks).unwrap(), expected, "{ks:?}");
                assert_eq!(conjecture_values(ks[0], ks[1], ks[2]).unwrap().conjecture2, expected);
            }
        }
    }
}

#[test]
fn exact_bases_never_weaken_the_lift() {
    // Exact values of the prefixes: S(2; k, k) and S(3; k, k, k).
    for (k, s2, s3, s4) in [(3usize, 5i128, 14i128, 45i128), (4, 11, 43, 171)] {
        let ks = [k; 4];
        let from2 = iterated_lower_bound(&ks, 2, &big(s2)).unwrap();
        let from3 = iterated_lower_bound(&ks, 3, &big(s3)).unwrap();
        assert!(from2 <= from3);
        assert!(from3 <= big(s4));
        let k3 = [k; 3];
        assert_eq!(iterated_lower_bound(&k3, 2, &big(s2)).unwrap(), big(s3));
    }
}

#[test]
fn lower_bounds_never_exceed_known_values() {
    for name in TableName::ALL {
        for row in bundled_table(name).unwrap() {
            let report = best_bounds(&row.spec().unwrap(), None).unwrap();
            let expected = BigInt::from(row.expected);
            for e in &report.entries {
                if let Some(lo) = e.implied_lower() {
                    assert!(
                        lo <= expected,
                        "{name} {:?}: {} gives {lo} > {expected}",
                        row.ks,
                        e.name
                    );
                }
                if row.kind == RowKind::Exact {
                    if let Some(hi) = e.implied_upper() {
                        assert!(
                            hi >= expected,
                            "{name} {:?}: {} gives {hi} < {expected}",
                            row.ks,
                            e.name
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn classic_bounds_bracket_the_small_values() {
    let rows = bundled_table(TableName::Table1).unwrap();
    for (r, row) in (1u32..=5).zip(&rows) {
        assert_eq!(row.ks.len(), r as usize);
        let (lo, hi) = schur_classic_bounds(r).unwrap();
        assert!(
            lo <= BigInt::from(row.expected) && BigInt::from(row.expected) <= hi,
            "r = {r}"
        );
    }
    // floor(r! e) for r = 1..5 in floating point.
    let e = std::f64::consts::E;
    let mut fact = 1.0;
    for r in 1..=5u32 {
        fact *= f64::from(r);
        assert_eq!(schur_classic_bounds(r).unwrap().1, big((fact * e).floor() as i128));
    }
}

#[test]
fn odd_even_comparison_for_three_term_case() {
    for t in 5..=50i128 {
        for u in t..=50 {
            let strict = 2 * t * u - u - 1;
            let rival = if t % 2 == 1 {
                3 * t * u - 4 * u - 1
            } else {
                3 * t * u - 5 * u - 1
            };
            assert!(rival > strict, "t = {t}, u = {u}");
            // The rival is the two-color value S(2; 3, t) lifted by u.
            let s2 = robertson_schaal_exact(3, t as usize).unwrap();
            assert_eq!(big(u) * s2 - 1, big(rival));
        }
    }
}

#[test]
fn summand_count_reading_of_the_diagonal_formula() {
    assert_eq!(znam_diagonal_lb(3, 3).unwrap(), big(43));
    assert_eq!(znam_diagonal_lb(3, 2).unwrap(), big(14));
    for r in 2..=6u32 {
        for k in 3..=7usize {
            let spec = ProblemSpec::diagonal(r as usize, k).unwrap();
            assert_eq!(
                znam_diagonal_lb(r, k - 1).unwrap(),
                product_lower_bound(spec.ks()).unwrap()
            );
        }
    }
}

#[test]
fn large_inputs_do_not_wrap() {
    let ks = [1000usize; 8];
    let v = product_lower_bound(&ks).unwrap();
    let k = big(1000);
    let mut expected = k.pow(8) - 1;
    for i in 1..8u32 {
        expected -= k.pow(8 - i);
    }
    assert_eq!(v, expected);
    assert!(v > BigInt::from(u64::MAX));
    assert!(best_bounds(&ProblemSpec::new(ks.to_vec()).unwrap(), None).is_ok());
}

#[test]
fn ramsey_table_supplies_the_upper_bound() {
    let table = RamseyTable::from_json(r#"{"3,3,3": 17}"#).unwrap();
    let report = best_bounds(&ProblemSpec::schur(3).unwrap(), Some(&table)).unwrap();
    assert_eq!(report.max_lower, Some(big(14)));
    assert_eq!(report.min_upper, Some(big(16)));
    assert!(report
        .entries
        .iter()
        .any(|e| e.kind == BoundKind::Upper && e.value == big(16)));
}

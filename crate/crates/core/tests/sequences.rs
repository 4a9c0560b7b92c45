use num_bigint::BigUint;
use supertable::sequences::{
    aitken, arc_containment_count, arcs_seq, b3_count, b3_recursion, b_count, b_counts,
    bell_numbers, dim_seq, nst_seq, reconcile_b3, Route,
};
use supertable::Arc;

// Values from a separate exhaustive enumeration, n = 1..=8.
const ARCS: [u64; 8] = [0, 1, 5, 23, 109, 544, 2876, 16113];
const DIM: [u64; 8] = [0, 1, 6, 33, 182, 1034, 6122, 37927];
const NST: [u64; 8] = [0, 0, 0, 1, 11, 89, 660, 4795];
const BELL: [u64; 11] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn both_routes_agree_with_reference_values() {
    for n in 1..=8u32 {
        let i = n as usize - 1;
        for route in [Route::Enumerate, Route::Formula] {
            assert_eq!(
                arcs_seq(n, route).unwrap(),
                big(ARCS[i]),
                "arcs({n}) {route}"
            );
            assert_eq!(dim_seq(n, route).unwrap(), big(DIM[i]), "dim({n}) {route}");
            assert_eq!(nst_seq(n, route).unwrap(), big(NST[i]), "nst({n}) {route}");
        }
    }
}

#[test]
fn aitken_triangle() {
    let t = aitken(10).unwrap();
    let row5: Vec<BigUint> = [15, 20, 27, 37, 52].map(big).to_vec();
    assert_eq!(t.row(5), row5.as_slice());
    for n in 1..=10 {
        assert_eq!(t.get(n, n), &big(BELL[n as usize]));
        assert_eq!(t.get(n, 1), &big(BELL[n as usize - 1]));
    }
    assert_eq!(bell_numbers(10), BELL.map(big).to_vec());
}

#[test]
fn b_counts_are_the_previous_aitken_row() {
    let t = aitken(8).unwrap();
    for n in 2..=8 {
        let counts = b_counts(n).unwrap();
        for k in 1..n {
            assert_eq!(&counts[k as usize - 1], t.get(n - 1, k), "b_count({n},{k})");
        }
        assert_eq!(&counts[n as usize - 1], t.get(n - 1, n - 1));
        assert_eq!(counts.iter().sum::<BigUint>(), big(BELL[n as usize]));
        for k in 1..n {
            assert_eq!(
                b_count(n, k).unwrap(),
                big(arc_containment_count(n, Arc::new(k, n))),
                "b_count({n},{k})"
            );
        }
    }
    assert!(b_count(3, 0).is_err());
    assert!(b_count(3, 4).is_err());
}

#[test]
fn dim_from_span_counts() {
    for n in 2..=7u32 {
        let mut total = 0u64;
        for d in 1..n {
            let counts: Vec<u64> = (1..=n - d)
                .map(|i| arc_containment_count(n, Arc::new(i, i + d)))
                .collect();
            assert!(
                counts.windows(2).all(|w| w[0] == w[1]),
                "span {d} counts vary: {counts:?}"
            );
            total += u64::from(d * (n - d)) * counts[0];
        }
        assert_eq!(big(total), dim_seq(n, Route::Enumerate).unwrap());
    }
}

#[test]
fn nesting_array() {
    let table = b3_recursion(8).unwrap();
    assert_eq!(table.get(3, 2, 1), Some(&big(1)));
    assert_eq!(b3_count(4, 2, 1).unwrap(), big(1));
    assert!(table.iter().all(|(n, k, j, _)| 1 <= j && j < k && k < n));
    let rec = reconcile_b3(8).unwrap();
    assert!(rec.shifted_agrees(), "{:?}", rec.shifted_mismatches);
    let first = &rec.same_index_mismatches[0];
    assert_eq!((first.n, first.k, first.j), (4, 3, 1));
    assert_eq!((first.count.as_str(), first.recursion.as_str()), ("1", "2"));
}

#[test]
fn formula_route_uses_restricted_nesting_limits() {
    // Summing over every 1 <= j < k <= n-1 instead over-counts from n = 4 on.
    let n = 4;
    let wide: u32 = (2..n)
        .flat_map(|k| (1..k).map(move |j| (k, j)))
        .map(|(k, j)| j * (k - j) * u32::try_from(b3_count(n, k, j).unwrap()).unwrap())
        .sum();
    assert_eq!(wide, 7);
    assert_eq!(nst_seq(n, Route::Formula).unwrap(), big(1));
}

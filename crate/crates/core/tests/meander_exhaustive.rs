mod common;

use common::oracle;
use proptest::prelude::*;
use sturm_core::meander::*;

fn orders(p: &Permutation) -> Orders {
    Orders::from_permutation(p)
}

#[test]
fn enumeration_matches_naive_filter_up_to_nine() {
    for n in [1, 3, 5, 7, 9] {
        let fast: Vec<Vec<usize>> = enumerate_sturm(n, DEFAULT_MAX_N)
            .unwrap()
            .into_iter()
            .map(Vec::from)
            .collect();
        assert_eq!(fast, oracle::naive_sturm_list(n), "n = {n}");
    }
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let one = enumerate_sturm_jobs(9, DEFAULT_MAX_N, Some(1)).unwrap();
    let four = enumerate_sturm_jobs(9, DEFAULT_MAX_N, Some(4)).unwrap();
    assert_eq!(one, four);
}

#[test]
fn both_recursions_agree_on_dissipative_meanders() {
    for n in [3, 5, 7, 9] {
        for p in oracle::all_permutations(n) {
            if p[0] != 1 || p[n - 1] != n {
                continue;
            }
            let o = orders(&Permutation::new(p.clone()).unwrap());
            if build_meander(&o).is_err() {
                continue;
            }
            let a = morse_numbers(&o).unwrap();
            assert_eq!(a, morse_numbers_h0(&o).unwrap(), "{p:?}");
            assert_eq!(a.as_slice(), oracle::naive_morse(&p).as_slice());
            assert_eq!(a.get(n), 0);
        }
    }
}

#[test]
fn arc_counts_and_endpoint_degrees() {
    for p in enumerate_sturm(9, DEFAULT_MAX_N).unwrap() {
        let m = build_meander(&orders(&p)).unwrap();
        let n = p.len();
        assert_eq!(m.upper_arcs.len(), (n - 1) / 2);
        assert_eq!(m.lower_arcs.len(), (n - 1) / 2);
        for (arcs, ends) in [(&m.upper_arcs, [1, 0]), (&m.lower_arcs, [0, 1])] {
            let mut deg = vec![0; n + 1];
            for a in arcs.iter() {
                deg[a.a] += 1;
                deg[a.b] += 1;
            }
            assert_eq!(deg[1], ends[0]);
            assert_eq!(deg[n], ends[1]);
            assert!(deg[2..n].iter().all(|&d| d == 1));
        }
    }
}

#[test]
fn euler_characteristic_is_one() {
    for n in [1, 3, 5, 7, 9] {
        for p in enumerate_sturm(n, DEFAULT_MAX_N).unwrap() {
            let i = morse_numbers(&orders(&p)).unwrap();
            let chi: i64 = i
                .as_slice()
                .iter()
                .map(|&k| if k % 2 == 0 { 1 } else { -1 })
                .sum();
            assert_eq!(chi, 1, "{p}");
        }
    }
}

#[test]
fn verdict_invariant_under_trivial_equivalences() {
    for n in [5, 7, 9] {
        for p in oracle::all_permutations(n) {
            let p = Permutation::new(p).unwrap();
            let base = is_sturm(&orders(&p)).is_sturm();
            let eq = p.trivial_equivalences();
            for q in [eq.inverse, eq.kappa_conjugate, eq.both] {
                assert_eq!(is_sturm(&orders(&q)).is_sturm(), base, "{p} vs {q}");
            }
        }
    }
}

#[test]
fn octahedron_is_sturm() {
    let p: Permutation = "1 24 19 4 5 18 17 8 9 16 25 26 15 14 13 10 7 6 3 20 23 22 21 2 11 12 27"
        .parse()
        .unwrap();
    let o = orders(&p);
    assert!(is_sturm(&o).is_sturm());
    let m = build_meander(&o).unwrap();
    assert_eq!((m.upper_arcs.len(), m.lower_arcs.len()), (13, 13));
}

#[test]
fn octahedron_inverse_swaps_orders() {
    let o = sturm_core::fixtures::octahedron_orders();
    let swapped = Orders::new(o.h1_list().to_vec(), o.h0_list().to_vec()).unwrap();
    assert_eq!(o.sigma().trivial_equivalences().inverse, swapped.sigma());
}

fn permutation_strategy() -> impl Strategy<Value = Permutation> {
    (1usize..=15)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn inverse_is_an_involution(p in permutation_strategy()) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(p.len()));
        prop_assert_eq!(p.kappa_conjugate().kappa_conjugate(), p);
    }

    #[test]
    fn display_round_trips(p in permutation_strategy()) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn verdict_matches_oracle(p in permutation_strategy()) {
        prop_assert_eq!(is_sturm(&orders(&p)).is_sturm(), oracle::naive_is_sturm(p.as_slice()));
    }

    #[test]
    fn axis_orders_recover_sigma(p in permutation_strategy()) {
        prop_assert_eq!(orders(&p).sigma(), p);
    }
}

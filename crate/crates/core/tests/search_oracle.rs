mod common;

use common::oracle;
use effbound::instance::Instance;
use effbound::recurrence::RecurrenceSpec;
use effbound::search::{search, SearchMode, Solution};

fn instance(a: &[i64], u0: &[i64], l: &[i64], w: i64, p: &[u64]) -> Instance {
    Instance::new(
        RecurrenceSpec::from_i64s(a, u0).unwrap(),
        l.iter().map(|&x| x.into()).collect(),
        w.into(),
        p.iter().map(|&x| x.into()).collect(),
    )
    .unwrap()
}

fn as_pairs(v: Vec<Solution>) -> Vec<(Vec<usize>, Vec<u64>)> {
    v.into_iter().map(|s| (s.n, s.z)).collect()
}

#[test]
fn matches_oracle_on_small_caps() {
    let cases: &[(&[i64], &[i64], &[i64], i64, &[u64])] = &[
        (&[1, 1], &[0, 1], &[1, 1], 1, &[2]),
        (&[1, 1], &[0, 1], &[1], 1, &[2]),
        (&[1, 1], &[0, 1], &[2, 1], 3, &[2, 5, 7]),
        (&[1, 1], &[0, 1], &[1, -1], 1, &[2, 3]),
        (&[1, 1, 1], &[0, 1, 1], &[3, 1, 2], 1, &[2, 3]),
        (&[1, 1, 1], &[0, 1, 1], &[1, 1], -1, &[2]),
        (&[1, 2], &[0, 1], &[2, -1], 1, &[3, 5]),
        (&[2, 1], &[2, 2], &[1, 1], 1, &[2, 3]),
    ];
    for &(a, u0, l, w, p) in cases {
        let inst = instance(a, u0, l, w, p);
        for mode in [SearchMode::Exact, SearchMode::Sieve] {
            let got = as_pairs(search(&inst, 60, mode).all());
            assert_eq!(got, oracle::solve(a, u0, l, w, p, 60), "a={a:?} l={l:?} w={w} p={p:?}");
        }
    }
}

#[test]
fn fibonacci_sums_powers_of_two_cap_200() {
    let inst = instance(&[1, 1], &[0, 1], &[1, 1], 1, &[2]);
    let r = search(&inst, 200, SearchMode::Exact);
    let expect = oracle::solve(&[1, 1], &[0, 1], &[1, 1], 1, &[2], 200);
    assert_eq!(as_pairs(r.all()), expect);
    for (n, z) in [(vec![2, 1], vec![1]), (vec![4, 2], vec![2]), (vec![5, 4], vec![3]), (vec![7, 4], vec![4])] {
        assert!(expect.contains(&(n, z)));
    }
    assert!(r.all().iter().all(|s| s.holds(&inst)));
}

#[test]
fn every_solution_rechecks_exactly() {
    let inst = instance(&[1, 1, 1], &[0, 1, 1], &[2, 1], 3, &[2, 5, 7]);
    let r = search(&inst, 80, SearchMode::Exact);
    assert!(r.all().iter().all(|s| s.holds(&inst)));
    assert!(r.flagged.iter().all(|s| s.n1() < 3));
    assert!(r.solutions.iter().all(|s| s.n1() >= 3));
}

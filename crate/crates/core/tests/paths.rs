use compactify::exact::{count_paths_cdeg, max_degree, series_hr, series_l};
use compactify::oracle::{path_stats, path_stats_bounded};
use compactify::path::enumerate_paths;
use num_bigint::BigInt;

#[test]
fn every_longer_path_reduces_and_halves() {
    for n in 2..=10 {
        let stats = path_stats(n).unwrap();
        assert_eq!(stats.count, 4u64.pow(n as u32));
        assert_eq!(stats.count_with_cdeg(0), 0, "n = {n}");
        assert_eq!(stats.halving_violations, 0, "n = {n}");
    }
}

#[test]
fn degree_counts_match_formula() {
    for n in 1..=10 {
        let stats = path_stats(n).unwrap();
        for r in 0..=max_degree(n as u64) + 1 {
            assert_eq!(
                count_paths_cdeg(n as u64, r).unwrap(),
                BigInt::from(stats.count_with_cdeg(r as usize)),
                "n = {n}, r = {r}"
            );
        }
    }
}

#[test]
fn degree_is_invariant_under_quarter_turns() {
    for n in 1..=8 {
        assert_eq!(path_stats(n).unwrap().rotation_violations, 0, "n = {n}");
    }
}

#[test]
fn fringe_sizes_vanish_exactly_beyond_degree() {
    for n in 1..=7 {
        for p in enumerate_paths(n).unwrap() {
            let degree = p.cdeg().unwrap() as usize;
            assert_eq!(p.fringe_size(0).unwrap(), n);
            for r in 1..=degree + 2 {
                assert_eq!(p.fringe_size(r).unwrap() == 0, r > degree, "{p}, r = {r}");
            }
        }
    }
}

#[test]
fn fringe_series_at_one_counts_reducible_paths() {
    for n in 1..=11usize {
        let stats = path_stats_bounded(n, 11).unwrap();
        for r in 0..=max_degree(n as u64) + 1 {
            let at_least: u64 = (r as usize..stats.cdeg_counts.len()).map(|s| stats.count_with_cdeg(s)).sum();
            let h = series_hr(r, n, 0).unwrap();
            assert_eq!(h.slice(0).coeff(n), &BigInt::from(at_least), "n = {n}, r = {r}");
        }
    }
}

#[test]
fn all_paths_series() {
    let l = series_l(40).unwrap();
    for n in 1..=40u32 {
        assert_eq!(l.coeff(n as usize), &BigInt::from(4).pow(n));
    }
}

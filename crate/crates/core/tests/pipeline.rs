use ppar_core::borcherds::{self, compare_lambert, lambert_index_bound, lambert_rhs, qdlog_psi_mod2};
use ppar_core::harness::{self, ParityCache, VerifyOptions, DEFAULT_PARITY_CAP};
use ppar_core::heegner;
use ppar_core::maass::{build_components, required_order};
use ppar_core::partitions::{parity_bitmap, partition_table, ParityBitmap};
use proptest::prelude::*;

#[test]
fn cache_file_feeds_the_lambert_check() {
    let d = 47;
    let order = 100;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parity.bin");
    parity_bitmap(lambert_index_bound(d, order)).save(&path).unwrap();
    let bm = ParityBitmap::load(&path).unwrap();

    let p = borcherds::psi(d, order).unwrap();
    let lhs = qdlog_psi_mod2(&p).unwrap();
    let rhs = lambert_rhs(d, order, &bm).unwrap();
    let cmp = compare_lambert(d, &lhs, &rhs);
    assert!(cmp.coprime_mismatches.is_empty(), "{cmp:?}");
}

#[test]
fn borcherds_exponents_are_partition_values() {
    // C(m; Dm²) for m prime to 6 is ±p((Dm²+1)/24) mod 4
    let d = 71u64;
    let t = build_components(required_order(d, 40)).unwrap();
    let p = partition_table(((d * 39 * 39 + 1) / 24) as usize + 1);
    for m in (1..40u64).filter(|m| m % 2 != 0 && m % 3 != 0) {
        let c = t.borcherds_exponent(d, m).unwrap();
        let pv = p.get(((d * m * m + 1) / 24) as usize).unwrap();
        let diff = if m % 12 == 1 || m % 12 == 7 { &c - pv } else { &c + pv };
        assert_eq!(diff % 4, 0.into(), "m={m}");
    }
}

#[test]
fn scan_reports_agree_with_class_side() {
    let cache = ParityCache::new(1 << 12, DEFAULT_PARITY_CAP);
    let opts = VerifyOptions { lambert: Some(false), ..Default::default() };
    for r in harness::scan(500, &opts, 1, &cache) {
        let g = heegner::class_group(r.d).unwrap();
        assert_eq!(r.h, g.h(), "D={}", r.d);
        assert_eq!(r.heegner_count, g.h());
        assert_eq!(r.orbit_count * r.frob_order, r.h);
        if r.admissible {
            assert!(r.first_odd_m.is_some() && r.first_even_m.is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn frobenius_orbits_partition_heegner_set(i in 0usize..40) {
        let ds = ppar_core::discriminants_up_to(1000);
        let d = ds[i % ds.len()];
        let rep = heegner::orbit_report(d).unwrap();
        let mut seen: Vec<usize> = rep.orbits.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..rep.h).collect::<Vec<_>>());
        prop_assert!(rep.orbit_sizes_uniform());
        prop_assert_eq!(rep.orbits.len() * rep.frob_order, rep.h);
    }

    #[test]
    fn parity_cache_agrees_with_fresh_bitmap(n in 0usize..20_000) {
        let cache = ParityCache::new(64, 1 << 16);
        let fresh = parity_bitmap(n + 1);
        prop_assert_eq!(cache.get(n).unwrap(), fresh.get(n).unwrap());
    }
}

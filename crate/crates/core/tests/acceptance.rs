//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use ppar_core::arith::{gcd, prime_divisors};
use ppar_core::borcherds::{
    self, compare_lambert, lambert_index_bound, nonsquare_linkage, oracle_log_psi, PsiExpansion,
};
use ppar_core::harness::{
    even_bound, first_even, first_odd, is_admissible, odd_bound, ParityCache, DEFAULT_PARITY_CAP,
};
use ppar_core::heegner::{self, class_group, reduced_forms};
use ppar_core::maass::{build_components, required_order};
use ppar_core::partitions::{
    durfee_series, mock_f, parity_bitmap, partition_series, partition_table, reduce_mod,
};
use ppar_core::qseries::{BitSeries, QuadElem, QuadField};
use ppar_core::{discriminants_up_to, qseries::CoeffRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const PSI_DS: [u64; 5] = [23, 47, 71, 119, 167];
const PSI_ORDER: usize = 300;
const LAMBERT_DS: [u64; 2] = [23, 47];
const ORACLE_D: u64 = 23;
const ORACLE_ORDER: usize = 50;
const CLASS_DMAX: u64 = 1000;

type Outcome = Result<String, String>;

struct Suite {
    failed: Vec<u32>,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let mut out = f();
        let took = t.elapsed();
        if let (Some(limit), Ok(detail)) = (limit, &out) {
            if took > limit {
                out = Err(format!("{detail}; took {took:.1?}, limit {limit:?}"));
            }
        }
        let timing = match limit {
            Some(limit) => format!("{took:.1?} of {limit:?}"),
            None => format!("{took:.1?}"),
        };
        match out {
            Ok(detail) => println!("PASS [{id:>2}] {name} ({timing}): {detail}"),
            Err(detail) => {
                println!("FAIL [{id:>2}] {name} ({timing}): {detail}");
                self.failed.push(id);
            }
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn durfee_identity() -> Outcome {
    let n = 2000;
    check(durfee_series(n) == partition_series(n), || "series differ".into())?;
    Ok(format!("Durfee expansion equals the partition series to order {n}"))
}

fn f_mod_4() -> Outcome {
    let n = 5000;
    let f = reduce_mod(&mock_f(n), 4);
    let p = reduce_mod(&partition_series(n), 4);
    if let Some(i) = (0..n).find(|&i| f[i] != p[i]) {
        return Err(format!("first disagreement at q^{i}: f ≡ {}, p ≡ {}", f[i], p[i]));
    }
    Ok(format!("f ≡ P mod 4 coefficientwise to order {n}"))
}

fn ramanujan() -> Outcome {
    let limit = 10_000;
    let t = partition_table(limit);
    let mut counts = Vec::new();
    for (m, r) in [(5u32, 4usize), (7, 5), (11, 6)] {
        let mut k = 0;
        for n in (r..limit).step_by(m as usize) {
            check(t.get(n).unwrap() % m == 0.into(), || format!("p({n}) not divisible by {m}"))?;
            k += 1;
        }
        counts.push(format!("{k} values mod {m}"));
    }
    Ok(counts.join(", "))
}

fn psi_structure(psis: &mut Vec<PsiExpansion>) -> Outcome {
    let dmax = *PSI_DS.iter().max().unwrap();
    let table = build_components(required_order(dmax, PSI_ORDER)).map_err(|e| e.to_string())?;
    for d in PSI_DS {
        let p = borcherds::psi_with_table(d, PSI_ORDER, &table).map_err(|e| format!("D={d}: {e}"))?;
        // re-check the three invariants here rather than trusting the constructor
        let k = QuadField::new(d);
        check(k.is_one(&p.coeffs[0]), || format!("D={d}: constant term {}", p.coeffs[0]))?;
        if let Some(n) = p.coeffs.coeffs().iter().position(|c| !c.is_integral()) {
            return Err(format!("D={d}: q^{n} coefficient not integral"));
        }
        let conj = p.coeffs.map(QuadElem::conj);
        let prod = ppar_core::qseries::mul(&k, &p.coeffs, &conj);
        check(borcherds::is_one_series(&k, &prod), || format!("D={d}: Ψ·Ψ^σ ≠ 1 + O(q^{PSI_ORDER})"))?;
        psis.push(p);
    }
    Ok(format!("D ∈ {PSI_DS:?}, order {PSI_ORDER}; component table through q^{}", table.order() - 1))
}

fn oracle_equivalence() -> Outcome {
    let table = build_components(required_order(ORACLE_D, ORACLE_ORDER)).map_err(|e| e.to_string())?;
    let (ring, direct, closed) = oracle_log_psi(ORACLE_D, ORACLE_ORDER, &table).map_err(|e| e.to_string())?;
    if let Some(n) = (0..ORACLE_ORDER).find(|&n| direct[n] != closed[n]) {
        return Err(format!("coefficient of q^{n} differs"));
    }
    let (_, pd) = borcherds::oracle_pd(ORACLE_D, 1, ORACLE_ORDER).map_err(|e| e.to_string())?;
    let squares: Vec<u64> = (2..ORACLE_D).filter(|&t| borcherds::kronecker(ORACLE_D, t as i64) == 1).collect();
    check(squares.iter().all(|&t| borcherds::galois_fixed(&ring, &pd, t)), || {
        "P_D has coefficients outside the quadratic subfield".into()
    })?;
    Ok(format!(
        "D={ORACLE_D}, order {ORACLE_ORDER}: factor-by-factor log in Q(ζ_{ORACLE_D}) equals G·(closed form); P_D fixed by {} square classes",
        squares.len()
    ))
}

fn lambert(psis: &[PsiExpansion]) -> Outcome {
    let mut lines = Vec::new();
    let bm = parity_bitmap(LAMBERT_DS.iter().map(|&d| lambert_index_bound(d, PSI_ORDER)).max().unwrap());
    for d in LAMBERT_DS {
        let p = psis.iter().find(|p| p.d == d).ok_or(format!("no Ψ for D={d}"))?;
        let lhs = borcherds::qdlog_psi_mod2(p).map_err(|e| e.to_string())?;
        let rhs = borcherds::lambert_rhs(d, PSI_ORDER, &bm).map_err(|e| e.to_string())?;
        let cmp = compare_lambert(d, &lhs, &rhs);
        println!("       D={d}: full diff below q^{PSI_ORDER}: mismatches at {:?}", cmp.mismatches);
        check(cmp.coprime_mismatches.is_empty(), || {
            format!("D={d}: mismatches at indices prime to D: {:?}", cmp.coprime_mismatches)
        })?;
        check(nonsquare_linkage(d, &lhs, &rhs), || format!("D={d}: non-squareness linkage fails"))?;
        lines.push(format!("D={d}: agree at all n<{PSI_ORDER} prime to D; mismatches at D | n: {:?}", cmp.mismatches));
    }
    Ok(lines.join("; "))
}

fn class_side() -> Outcome {
    let ds = discriminants_up_to(CLASS_DMAX);
    check(reduced_forms(23).len() == 3 && reduced_forms(47).len() == 5, || "h(−23), h(−47) anchors".into())?;
    for &d in &ds {
        let h = reduced_forms(d).len();
        let r = heegner::orbit_report(d).map_err(|e| format!("D={d}: {e}"))?;
        check(r.heegner.reps.len() == h, || format!("D={d}: {} Heegner classes, h = {h}", r.heegner.reps.len()))?;
        for o in &r.orbits {
            check(o.iter().all(|&i| r.eps[i] == r.eps[o[0]]), || format!("D={d}: ε varies on {o:?}"))?;
        }
        check(r.orbit_sizes_uniform(), || format!("D={d}: orbit sizes differ from ord([p]) = {}", r.frob_order))?;
    }
    Ok(format!("{} discriminants ≤ {CLASS_DMAX}", ds.len()))
}

fn orbit_parity() -> Outcome {
    let mut bad = Vec::new();
    let mut admissible = 0;
    for d in discriminants_up_to(CLASS_DMAX) {
        let c = heegner::odd_order_conditions(d).map_err(|e| e.to_string())?;
        println!(
            "       D={d:<4} admissible={:<5} ord={:<3} (1)odd={:<5} (2)square={:<5} (3)genus={:<5} (4)primes={:<5}",
            is_admissible(d as i64),
            c.frob_order,
            c.odd_order,
            c.is_square,
            c.genus_trivial,
            c.primes_1_7_mod_8
        );
        if is_admissible(d as i64) {
            admissible += 1;
            if !(c.genus_trivial && c.primes_1_7_mod_8 && c.odd_order) {
                bad.push(format!("D={d} = {:?}: ord([p]) = {}", prime_divisors(d), c.frob_order));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{admissible} admissible D, all with odd ord([p])"))
    } else {
        Err(format!("{admissible} admissible D; conditions fail for {}", bad.join(", ")))
    }
}

fn parity_witness() -> Outcome {
    let cache = ParityCache::new(1 << 20, DEFAULT_PARITY_CAP);
    let anchor = (first_odd(23, &cache), first_even(23, &cache));
    let h23 = class_group(23).map_err(|e| e.to_string())?.h();
    check(
        matches!(anchor, (Ok(Some(1)), Ok(Some(7)))) && odd_bound(h23) == 38 && even_bound(23, h23) == 912,
        || format!("D=23 anchor: {anchor:?}"),
    )?;
    let mut n = 0;
    for d in discriminants_up_to(CLASS_DMAX).into_iter().filter(|&d| is_admissible(d as i64)) {
        let h = class_group(d).map_err(|e| e.to_string())?.h();
        let o = first_odd(d, &cache).map_err(|e| e.to_string())?;
        let e = first_even(d, &cache).map_err(|e| e.to_string())?;
        let (ob, eb) = (odd_bound(h), even_bound(d, h));
        let ok = |m: Option<u64>, b| m.is_some_and(|m| m <= b && gcd(m, 6) == 1);
        check(ok(o, ob) && ok(e, eb), || format!("D={d}: first odd {o:?} (≤ {ob}), first even {e:?} (≤ {eb})"))?;
        n += 1;
    }
    Ok(format!("{n} admissible D; D=23: first odd 1 ≤ 38, first even 7 ≤ 912"))
}

fn dlog_kernel() -> Outcome {
    let order = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut kernel_hits = 0;
    for _ in 0..200 {
        let mut bits: Vec<bool> = (0..order).map(|_| rng.gen()).collect();
        bits[0] = true;
        let f = BitSeries::from_bits(&bits);
        check(f.square().qdlog().map_err(|e| e.to_string())?.is_zero(), || "qdlog(F²) ≠ 0".into())?;
        // the random F and its even part both go through the implication
        let even = BitSeries::from_bits(&bits.iter().enumerate().map(|(i, &b)| b && i % 2 == 0).collect::<Vec<_>>());
        for g in [&f, &even] {
            if g.qdlog().map_err(|e| e.to_string())?.is_zero() {
                kernel_hits += 1;
                let root = g.sqrt().ok_or("qdlog(F) = 0 but F has an odd coefficient")?;
                check(root.with_order(order).square() == *g, || "extracted root does not square to F".into())?;
            }
        }
    }
    // exhaustive at order 16: every unit F against all 2^8 candidate roots
    let small = 16;
    for mask in 0u64..(1 << (small - 1)) {
        let f = BitSeries::from_words(small, vec![(mask << 1) | 1]);
        let in_kernel = f.qdlog().unwrap().is_zero();
        let has_root = (0u64..(1 << (small / 2))).any(|g| BitSeries::from_words(small, vec![g]).square() == f);
        check(in_kernel == has_root, || format!("order {small}: F = {mask:#x}"))?;
    }
    Ok(format!("200 random F at order {order} ({kernel_hits} kernel elements rooted); all 2^15 unit F at order 16"))
}

fn main() -> ExitCode {
    println!("acceptance suite");
    let mut s = Suite { failed: Vec::new() };
    let mut psis = Vec::new();
    s.run(1, "Durfee identity", Some(Duration::from_secs(30)), durfee_identity);
    s.run(2, "f ≡ P mod 4", Some(Duration::from_secs(60)), f_mod_4);
    s.run(3, "Ramanujan congruences", None, ramanujan);
    s.run(4, "Ψ_D structure", Some(Duration::from_secs(300)), || psi_structure(&mut psis));
    s.run(5, "oracle equivalence", None, oracle_equivalence);
    s.run(6, "Lambert identity mod 2", None, || lambert(&psis));
    s.run(7, "class-side structure", Some(Duration::from_secs(120)), class_side);
    s.run(8, "parity of orbit length", None, orbit_parity);
    s.run(9, "main-theorem witness", Some(Duration::from_secs(600)), parity_witness);
    s.run(10, "char-2 dlog kernel", None, dlog_kernel);
    if s.failed.is_empty() {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {:?}", s.failed);
        ExitCode::FAILURE
    }
}

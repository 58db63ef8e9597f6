use clap::{Args, Parser, Subcommand};
use ppar_core::borcherds;
use ppar_core::harness::{self, ParityCache, ParityReport, VerifyOptions, DEFAULT_PARITY_CAP};
use ppar_core::heegner;
use ppar_core::partitions::{parity_bitmap, ParityBitmap};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ppar", version, about = "Parity of p((Dm²+1)/24): class-group, Borcherds-product and partition checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one discriminant and print its report
    Verify {
        #[arg(long)]
        d: u64,
        /// Truncation order for the Lambert comparison
        #[arg(long, default_value_t = 300)]
        order: usize,
        /// Run the Lambert comparison for any D (on by default for 23 and 47)
        #[arg(long)]
        lambert: bool,
        /// Write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify every square-free D ≡ 23 mod 24 up to a bound
    Scan {
        #[arg(long)]
        dmax: u64,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Output file; `.csv` writes CSV, anything else JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the q-expansion of Ψ_D
    Psi {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        order: usize,
        /// Print the reduction mod 2 instead
        #[arg(long)]
        mod2: bool,
    },
    /// Class group, Heegner representatives, Frobenius orbits and ε
    Class {
        #[arg(long)]
        d: u64,
    },
    /// Durfee identity, P ≡ f mod 4 and Ramanujan congruences
    Identities {
        #[arg(long, default_value_t = 2000)]
        order: usize,
    },
    /// Parity bitmap cache files
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Compute p(n) mod 2 for n < limit and write it
    Build(CacheBuild),
    /// Describe a cache file
    Info { file: PathBuf },
}

#[derive(Args)]
struct CacheBuild {
    #[arg(long)]
    limit: usize,
    #[arg(long)]
    out: PathBuf,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn failed(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("check failed: {msg}");
    ExitCode::from(EXIT_CHECK_FAILED)
}

fn print_report(r: &ParityReport) {
    let opt = |m: Option<u64>| m.map_or("none".to_string(), |m| m.to_string());
    println!("D = {}  admissible = {}", r.d, r.admissible);
    println!("  h = {}  ord([p]) = {}  orbits = {}  eps = {:?}", r.h, r.frob_order, r.orbit_count, r.eps_profile);
    let c = &r.conditions;
    println!(
        "  (1) odd order = {}  (2) square = {}  (3) genus trivial = {}  (4) primes 1,7 mod 8 = {}",
        c.odd_order, c.is_square, c.genus_trivial, c.primes_1_7_mod_8
    );
    println!(
        "  first odd m = {} (bound {})  first even m = {} (bound {})  bounds ok = {}",
        opt(r.first_odd_m),
        r.odd_bound,
        opt(r.first_even_m),
        r.even_bound,
        r.bounds_ok
    );
    if r.lambert_checked_to > 0 {
        println!(
            "  Lambert comparison to q^{}: mismatches {:?} (coprime to D: {:?})",
            r.lambert_checked_to, r.lambert_mismatches, r.lambert_coprime_mismatches
        );
    }
    for f in &r.failures {
        println!("  FAILED {f}");
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Verify { d, order, lambert, json } => {
            if let Err(e) = ppar_core::check_discriminant(d) {
                return usage(e);
            }
            let cache = ParityCache::new(1 << 16, DEFAULT_PARITY_CAP);
            let opts = VerifyOptions { lambert: lambert.then_some(true), lambert_order: order };
            let r = match harness::verify_discriminant(d, &opts, &cache) {
                Ok(r) => r,
                Err(e) => return failed(e),
            };
            print_report(&r);
            if let Some(path) = json {
                let res = std::fs::File::create(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|f| serde_json::to_writer_pretty(f, &r).map_err(|e| e.to_string()));
                if let Err(e) = res {
                    return failed(format!("writing {}: {e}", path.display()));
                }
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Command::Scan { dmax, jobs, out } => {
            if dmax < 23 {
                return usage("--dmax must be at least 23");
            }
            let cache = ParityCache::new(1 << 16, DEFAULT_PARITY_CAP);
            let reports = harness::scan(dmax, &VerifyOptions::default(), jobs, &cache);
            for r in &reports {
                print_report(r);
            }
            let bad: Vec<u64> = reports.iter().filter(|r| !r.passed()).map(|r| r.d).collect();
            println!("{} discriminants, {} with failures {:?}", reports.len(), bad.len(), bad);
            if let Some(path) = out {
                if let Err(e) = harness::write_reports(&reports, &path) {
                    return failed(format!("writing {}: {e}", path.display()));
                }
            }
            if bad.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Command::Psi { d, order, mod2 } => {
            if let Err(e) = ppar_core::check_discriminant(d) {
                return usage(e);
            }
            let p = match borcherds::psi(d, order) {
                Ok(p) => p,
                Err(e) => return failed(e),
            };
            if mod2 {
                match borcherds::psi_mod2(&p) {
                    Ok(bits) => {
                        let s: String = bits.to_bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
                        println!("{s}");
                    }
                    Err(e) => return failed(e),
                }
            } else {
                for (n, c) in p.coeffs.coeffs().iter().enumerate() {
                    println!("{n}\t{c}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Class { d } => {
            if let Err(e) = ppar_core::check_discriminant(d) {
                return usage(e);
            }
            let report = match heegner::orbit_report(d) {
                Ok(r) => r,
                Err(e) => return failed(e),
            };
            let conds = match heegner::odd_order_conditions(d) {
                Ok(c) => c,
                Err(e) => return failed(e),
            };
            let group = heegner::class_group(d).expect("class group built above");
            println!("D = {d}  h = {}  cyclic = {}", group.h(), group.is_cyclic());
            println!("classes:");
            for (i, f) in group.classes().iter().enumerate() {
                println!("  {i:>3}  {f}  order {}", group.order(i));
            }
            println!("Heegner representatives:");
            for (i, f) in report.heegner.reps.iter().enumerate() {
                let c = report.heegner.class_of[i];
                println!("  {i:>3}  {f}  class {c} = {}  eps {:+}", group.form(c), report.eps[i]);
            }
            println!("Frobenius {}  class {}  order {}", report.frob_form, report.frob_class, report.frob_order);
            for (o, orbit) in report.orbits.iter().enumerate() {
                println!("  orbit {o}: {orbit:?}  residue parity {}", report.residue_parity[o]);
            }
            println!(
                "conditions: odd order {}  square {}  genus trivial {}  primes 1,7 mod 8 {}",
                conds.odd_order, conds.is_square, conds.genus_trivial, conds.primes_1_7_mod_8
            );
            if conds.anomaly() {
                println!("NOTE: [p] is a square and every genus character is trivial, but its order is even");
            }
            ExitCode::SUCCESS
        }
        Command::Identities { order } => {
            let checks = harness::identities(order);
            for c in &checks {
                println!("{} {:<13} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if checks.iter().all(|c| c.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Command::Cache(CacheCommand::Build(CacheBuild { limit, out })) => {
            if limit == 0 {
                return usage("--limit must be positive");
            }
            let bm = parity_bitmap(limit);
            if let Err(e) = bm.save(&out) {
                return failed(format!("writing {}: {e}", out.display()));
            }
            println!("wrote {} parities ({} odd) to {}", bm.limit(), bm.count_odd(), out.display());
            ExitCode::SUCCESS
        }
        Command::Cache(CacheCommand::Info { file }) => match ParityBitmap::load(&file) {
            Ok(bm) => {
                let head: String = (0..bm.limit().min(64)).map(|n| if bm.get(n) == Some(true) { '1' } else { '0' }).collect();
                println!("count {}\nodd {}\nhead {head}", bm.limit(), bm.count_odd());
                ExitCode::SUCCESS
            }
            Err(e) => usage(format!("{}: {e}", file.display())),
        },
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}

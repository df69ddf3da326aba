//! Runs a reduced verification suite and prints a per-check summary.
//!
//! ```text
//! cargo run --release --example verify
//! ```

use std::collections::BTreeMap;

use spherical_copulas::oracle::{verify_suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig { samples: 50_000, mc_samples: 50_000, ..VerifyConfig::default() };
    let report = verify_suite(&cfg);

    let mut by_name: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for c in &report.checks {
        let e = by_name.entry(&c.name).or_default();
        e.0 += 1;
        e.1 += usize::from(c.pass);
        e.2 = e.2.max(c.abs_diff.unwrap_or(f64::INFINITY));
    }
    for (name, (total, passed, worst)) in &by_name {
        println!("{name:<40} {passed:>4}/{total:<4} worst |diff| {worst:.2e}");
    }
    println!("seed {}, {} checks, global pass: {}", report.seed, report.checks.len(), report.global_pass);

    // A bias of 1e-6 in the closed forms must be caught.
    let biased = verify_suite(&VerifyConfig { alpha_bias: 1e-6, ..cfg });
    println!("with alpha biased by 1e-6: {} failed checks", biased.failures().count());
}

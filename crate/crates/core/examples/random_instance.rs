//! Random instances from a seed, annealed and checked against exhaustive search.
//!
//!     cargo run --release --example random_instance -- 5 7

use qutrit_anneal::harness::{generate_instance, run, ProblemSpec};
use qutrit_anneal::{AnnealConfig, EncodingScheme};

fn main() -> qutrit_anneal::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let seeds: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);

    let mut matched = 0;
    for seed in 0..seeds {
        let spec = ProblemSpec {
            name: format!("random-n{n}-s{seed}"),
            points: generate_instance(n, seed)?,
            scheme: EncodingScheme::onehot_k3_pinned(),
            centroids: None,
            anneal: AnnealConfig::default(),
            seed: Some(seed),
            emit: Vec::new(),
            out_dir: None,
        };
        let r = run(&spec)?;
        matched += usize::from(r.matched);
        println!(
            "seed {seed:>3}  p={:.4}  cost {:.3} (oracle {:.3})  {}",
            r.top_probability,
            r.annealed_cost,
            r.oracle_min_cost,
            if r.matched { "match" } else { "MISMATCH" }
        );
    }
    println!("{matched}/{seeds} matched");
    Ok(())
}

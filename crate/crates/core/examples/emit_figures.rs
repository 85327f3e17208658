//! Runs every preset and writes its table, CSV files and SVG scatter plot.
//!
//!     cargo run --release --example emit_figures -- target/figures

use std::path::PathBuf;

use qutrit_anneal::harness::{emit, run, EmitFormat, Preset};

fn main() -> qutrit_anneal::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("target/figures"), PathBuf::from);
    let formats = [EmitFormat::Table, EmitFormat::Csv, EmitFormat::Svg];
    for preset in Preset::ALL {
        let result = run(&preset.spec(true))?;
        println!(
            "{preset}: {} (p={:.4}, match={})",
            result.top_partition, result.top_probability, result.matched
        );
        for path in emit(&result, &formats, &dir)? {
            println!("  {}", path.display());
        }
    }
    Ok(())
}

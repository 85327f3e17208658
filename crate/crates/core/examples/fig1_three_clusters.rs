//! Six points in three clusters, one qutrit per point with point 0 pinned.

use qutrit_anneal::harness::{render_table, run, Preset};

fn main() -> qutrit_anneal::Result<()> {
    let result = run(&Preset::Fig1.spec(true))?;
    print!("{}", render_table(&result));
    println!("\nmost likely partitions:");
    for (p, prob) in result.report.partition_probabilities.iter().take(5) {
        println!("  {prob:.6}  {p}");
    }
    Ok(())
}

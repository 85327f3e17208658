//! Two clusters on qutrits: the unused projection −1 is pushed up by a
//! penalty term. Pass `--unpinned` to anneal all six points.

use qutrit_anneal::harness::{render_table, run, Preset};

fn main() -> qutrit_anneal::Result<()> {
    let pinned = !std::env::args().any(|a| a == "--unpinned");
    let result = run(&Preset::Fig2.spec(pinned))?;
    print!("{}", render_table(&result));
    println!(
        "\nprobability left in projection −1: {:.2e}",
        result.invalid_probability
    );
    Ok(())
}

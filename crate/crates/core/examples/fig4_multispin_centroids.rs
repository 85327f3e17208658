//! Four clusters need two qutrits per point. Of the nine block states four
//! name clusters and the other five carry a penalty.

use qutrit_anneal::harness::{render_table, run, Preset};
use qutrit_anneal::qutrit::basis_index;

fn main() -> qutrit_anneal::Result<()> {
    let spec = Preset::Fig4.spec(true);
    for (c, s) in spec.scheme.centroid_states.iter().flatten().enumerate() {
        println!("cluster {c} ↔ {}", basis_index(s));
    }
    let result = run(&spec)?;
    print!("{}", render_table(&result));
    Ok(())
}

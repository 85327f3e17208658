//! Three fixed centroids, each owning one projection; the six remaining points
//! are annealed.

use qutrit_anneal::harness::{render_table, run, Preset};

fn main() -> qutrit_anneal::Result<()> {
    let spec = Preset::Fig3.spec(true);
    let result = run(&spec)?;
    print!("{}", render_table(&result));
    let centroids = spec.centroids.as_deref().unwrap_or_default();
    let states = spec.scheme.centroid_states.as_deref().unwrap_or_default();
    for (c, (&p, s)) in centroids.iter().zip(states).enumerate() {
        println!(
            "cluster {c}: centroid {} in state {s:?}",
            spec.points.get(p)
        );
    }
    Ok(())
}

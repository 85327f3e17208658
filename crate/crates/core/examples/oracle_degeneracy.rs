//! Exhaustive search over partitions and the ground-state degeneracy of the
//! diagonal Hamiltonians, with and without pinning a point.

use std::collections::BTreeMap;

use qutrit_anneal::harness::Preset;
use qutrit_anneal::{
    build_onehot_k3, build_onehot_k3_pinned, distance_matrix, oracle_diag_min, oracle_min, PointSet,
};

fn main() -> qutrit_anneal::Result<()> {
    let ps = PointSet::from_coords(Preset::Fig1.coords())?;
    let dm = distance_matrix(&ps);

    let best = oracle_min(&dm, 3, &BTreeMap::new())?;
    println!("minimum within-cluster distance {:.4}", best.min_cost);
    for p in &best.argmin_partitions {
        println!("  optimal partition {p}");
    }

    for (name, h) in [
        ("unpinned", build_onehot_k3(&dm)?),
        ("pinned", build_onehot_k3_pinned(&dm)?),
    ] {
        let g = oracle_diag_min(&h);
        println!(
            "{name}: {} qutrits, E0 = {:.4}, {} ground states",
            h.n,
            g.min_cost,
            g.argmin_basis_states.len()
        );
        for b in &g.argmin_basis_states {
            println!("  {b}");
        }
    }
    Ok(())
}

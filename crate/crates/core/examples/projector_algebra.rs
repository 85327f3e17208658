//! Spin-1 operators, the projectors built from Sᶻ, and block projectors on a
//! small register.

use qutrit_anneal::qutrit::{basis_index, projections};
use qutrit_anneal::{group_projector_diagonal, projector, spin_operator, SpinKind};

fn main() -> qutrit_anneal::Result<()> {
    for kind in [SpinKind::X, SpinKind::Z] {
        let s = spin_operator(kind);
        println!("S{kind:?} (hermitian: {})", s.is_hermitian());
        for row in s.re() {
            println!("  {row:?}");
        }
    }

    for m in [1, 0, -1] {
        let p = projector(m)?;
        let diag: Vec<f64> = (0..3).map(|i| p.entries[i][i]).collect();
        println!("P({m:>2}) diagonal {diag:?}, trace {}", p.trace());
    }

    // |ψ⟩ = |1,0⟩ on sites 1..3 of a 3-qutrit register
    let state = projections(&[1, 0])?;
    let diag = group_projector_diagonal(1..3, &state, 3)?;
    let hits: Vec<String> = diag
        .diag
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 1.0)
        .map(|(i, _)| {
            qutrit_anneal::BasisIndex::from_linear(3, i)
                .unwrap()
                .to_string()
        })
        .collect();
    println!("|1,0⟩⟨1,0| on sites 1-2 selects {}", hits.join(" "));
    println!(
        "block index of |0,0⟩ is {}",
        basis_index(&projections(&[0, 0])?).linear
    );
    Ok(())
}

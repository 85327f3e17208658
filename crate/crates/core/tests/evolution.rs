use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use qutrit_anneal::clustering::{distance_matrix, oracle_diag_min};
use qutrit_anneal::harness::Preset;
use qutrit_anneal::qutrit::projections;
use qutrit_anneal::{
    anneal, assemble, build_driver, build_onehot_k3_pinned, decode, initial_state, step,
    AnnealConfig, Decoder, DiagonalHamiltonian, EncodingScheme, PointSet, StateVector, StepMode,
};

/// Dense `s·diag(hf) + (1 − s)·h·Σ Sˣᵢ`, built from Kronecker products.
fn dense_hamiltonian(hf: &[f64], n: usize, h: f64, s: f64) -> DMatrix<f64> {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let sx = DMatrix::from_row_slice(3, 3, &[0.0, a, 0.0, a, 0.0, a, 0.0, a, 0.0]);
    let id = DMatrix::<f64>::identity(3, 3);
    let dim = 3usize.pow(n as u32);
    let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(hf)) * s;
    for site in 0..n {
        let mut term = DMatrix::<f64>::identity(1, 1);
        for j in 0..n {
            term = term.kronecker(if j == site { &sx } else { &id });
        }
        m += term * ((1.0 - s) * h);
    }
    assert_eq!(m.nrows(), dim);
    m
}

fn dense_step(m: &DMatrix<f64>, psi: &[Complex64], dt: f64) -> Vec<Complex64> {
    let eig = SymmetricEigen::new(m.clone());
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for k in 0..psi.len() {
        let v = eig.eigenvectors.column(k);
        let overlap: Complex64 = (0..psi.len()).map(|i| v[i] * psi[i]).sum();
        let c = Complex64::from_polar(1.0, -dt * eig.eigenvalues[k]) * overlap;
        for i in 0..psi.len() {
            out[i] += c * v[i];
        }
    }
    out
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn pseudo_random_state(n: usize) -> StateVector {
    let mut psi = StateVector::basis(n, 0);
    for (i, a) in psi.amplitudes.iter_mut().enumerate() {
        let t = i as f64;
        *a = Complex64::new((1.7 * t + 0.3).sin(), (0.9 * t * t - 1.1).cos());
    }
    let norm = psi.norm();
    psi.amplitudes.iter_mut().for_each(|a| *a /= norm);
    psi
}

#[test]
fn step_matches_dense_exponential() {
    for n in [1usize, 2] {
        let hf: Vec<f64> = (0..3usize.pow(n as u32))
            .map(|i| ((i * 7) % 5) as f64 - 1.5)
            .collect();
        let hfd = DiagonalHamiltonian::new(n, hf.clone()).unwrap();
        let psi = pseudo_random_state(n);
        for h in [0.5, 8.0] {
            let drv = build_driver(n, h).unwrap();
            for s in [0.0, 0.1, 0.5, 0.9, 1.0] {
                for dt in [0.1, 0.75] {
                    let expect = dense_step(&dense_hamiltonian(&hf, n, h, s), &psi.amplitudes, dt);
                    let got = step(&psi, s, &hfd, &drv, dt).unwrap();
                    let err = distance(&got.amplitudes, &expect);
                    assert!(err < 1e-9, "n={n} h={h} s={s} dt={dt}: error {err:e}");
                }
            }
        }
    }
}

#[test]
fn eigenvectors_only_pick_up_a_phase() {
    let n = 2;
    let hf: Vec<f64> = vec![3.0, -1.0, 0.5, 2.0, -2.5, 0.0, 1.0, 4.0, -0.5];
    let (h, s, dt) = (3.0, 0.4, 0.2);
    let eig = SymmetricEigen::new(dense_hamiltonian(&hf, n, h, s));
    let hfd = DiagonalHamiltonian::new(n, hf).unwrap();
    let drv = build_driver(n, h).unwrap();
    for k in 0..9 {
        let mut psi = StateVector::basis(n, 0);
        for i in 0..9 {
            psi.amplitudes[i] = Complex64::new(eig.eigenvectors[(i, k)], 0.0);
        }
        let out = step(&psi, s, &hfd, &drv, dt).unwrap();
        let phase = Complex64::from_polar(1.0, -dt * eig.eigenvalues[k]);
        let expect: Vec<Complex64> = psi.amplitudes.iter().map(|a| a * phase).collect();
        assert!(distance(&out.amplitudes, &expect) < 1e-10);
    }
}

#[test]
fn initial_state_is_the_driver_ground_state() {
    for n in 1..=4 {
        let h = 2.5;
        let drv = build_driver(n, h).unwrap();
        let psi = initial_state(n, h).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let out = drv.apply(&psi.amplitudes);
        let e = drv.ground_energy();
        assert!((e + n as f64 * h).abs() < 1e-12);
        for (o, a) in out.iter().zip(&psi.amplitudes) {
            assert!((o - a * e).norm() < 1e-12);
        }
    }
}

#[test]
fn schedule_applies_both_endpoints() {
    let n = 2;
    let hf = DiagonalHamiltonian::new(n, (0..9).map(|i| i as f64 * 0.3 - 1.0).collect()).unwrap();
    let cfg = AnnealConfig {
        steps: 1,
        dt: 0.4,
        h: 2.0,
        ..AnnealConfig::default()
    };
    let drv = build_driver(n, cfg.h).unwrap();
    let psi = initial_state(n, cfg.h).unwrap();
    let by_hand = step(
        &step(&psi, 0.0, &hf, &drv, cfg.dt).unwrap(),
        1.0,
        &hf,
        &drv,
        cfg.dt,
    )
    .unwrap();
    let annealed = anneal(&cfg, &hf).unwrap();
    assert!(distance(&annealed.amplitudes, &by_hand.amplitudes) < 1e-12);
}

#[test]
fn zero_final_hamiltonian_keeps_the_initial_state() {
    let n = 3;
    let hf = DiagonalHamiltonian::zeros(n).unwrap();
    let cfg = AnnealConfig {
        steps: 200,
        h: 4.0,
        ..AnnealConfig::default()
    };
    let psi = anneal(&cfg, &hf).unwrap();
    let start = initial_state(n, cfg.h).unwrap();
    assert!(psi.fidelity(&start) > 1.0 - 1e-9);
}

/// Mirroring every projection commutes with Sˣ, so swapping the centroid
/// states `1 ↔ −1` must leave every partition probability unchanged.
#[test]
fn mirrored_centroid_states_give_identical_readout() {
    let mut a = Preset::Fig3.spec(true);
    a.anneal.steps = 300;
    let mut b = a.clone();
    b.scheme = EncodingScheme::kmeanspp(vec![
        projections(&[-1]).unwrap(),
        projections(&[0]).unwrap(),
        projections(&[1]).unwrap(),
    ])
    .unwrap();
    let read = |spec: &qutrit_anneal::harness::ProblemSpec| {
        let dm = distance_matrix(&spec.points);
        let hf = assemble(&dm, &spec.scheme, spec.centroids.as_deref()).unwrap();
        let psi = anneal(&spec.anneal, &hf).unwrap();
        let dec = Decoder::new(&spec.scheme, spec.points.len(), spec.centroids.as_deref()).unwrap();
        decode(&psi, &dec).unwrap()
    };
    let (ra, rb) = (read(&a), read(&b));
    assert_eq!(
        ra.partition_probabilities.len(),
        rb.partition_probabilities.len()
    );
    for (p, prob) in &ra.partition_probabilities {
        assert!((prob - rb.probability_of(p)).abs() < 1e-10, "{p}");
    }
}

#[test]
fn split_mode_agrees_with_exact_on_fig1() {
    let spec = Preset::Fig1.spec(true);
    let dm = distance_matrix(&spec.points);
    let hf = assemble(&dm, &spec.scheme, None).unwrap();
    let dec = Decoder::new(&spec.scheme, spec.points.len(), None).unwrap();
    let exact = decode(&anneal(&spec.anneal, &hf).unwrap(), &dec).unwrap();
    let split_cfg = AnnealConfig {
        mode: StepMode::Split,
        ..spec.anneal
    };
    let psi = anneal(&split_cfg, &hf).unwrap();
    assert!((psi.norm() - 1.0).abs() < 1e-9);
    let split = decode(&psi, &dec).unwrap();
    assert_eq!(exact.top_partition, split.top_partition);
    for (p, prob) in &exact.partition_probabilities {
        assert!((prob - split.probability_of(p)).abs() < 1e-3, "{p}");
    }
}

/// Both pinned ground states of the fig1 preset describe the same partition.
#[test]
fn degenerate_ground_states_decode_to_one_partition() {
    let ps = PointSet::from_coords(Preset::Fig1.coords()).unwrap();
    let hf = build_onehot_k3_pinned(&distance_matrix(&ps)).unwrap();
    let ground = oracle_diag_min(&hf).argmin_basis_states;
    assert_eq!(ground.len(), 2);
    let mut psi = StateVector::basis(hf.n, 0);
    psi.amplitudes[0] = Complex64::new(0.0, 0.0);
    for b in &ground {
        psi.amplitudes[b.linear] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    }
    let dec = Decoder::new(&EncodingScheme::onehot_k3_pinned(), ps.len(), None).unwrap();
    let report = decode(&psi, &dec).unwrap();
    let nonzero = report
        .partition_probabilities
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .count();
    assert_eq!(nonzero, 1);
    assert!((report.top_probability - 1.0).abs() < 1e-12);
    assert_eq!(
        report.top_partition,
        Preset::Fig1.caption_partition().unwrap()
    );
}

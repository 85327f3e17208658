#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use proptest::prelude::*;

use qutrit_anneal::clustering::{cost, distance_matrix, oracle_diag_min, DistanceMatrix};
use qutrit_anneal::hamiltonian::{
    assemble, build_k2_penalty, build_onehot_k3, build_onehot_k3_pinned, centroid_distances,
    default_centroid_states, spins_for, EncodingScheme,
};
use qutrit_anneal::harness::parse_spec;
use qutrit_anneal::qutrit::{basis_index, block_state, dim, projector, BasisIndex, Projection};
use qutrit_anneal::{Decoder, Partition, PointSet};

fn points(range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-10i32..=10, -10i32..=10), range).prop_map(|c| {
        let coords: Vec<(f64, f64)> = c.into_iter().map(|(x, y)| (x.into(), y.into())).collect();
        PointSet::from_coords(&coords).unwrap()
    })
}

/// Pairwise within-cluster sum computed straight from coordinates.
fn brute_cost(ps: &PointSet, labels: &[usize]) -> f64 {
    let mut w = 0.0;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] == labels[j] {
                let (p, q) = (ps.get(i), ps.get(j));
                w += ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt();
            }
        }
    }
    w
}

fn total(dm: &DistanceMatrix) -> f64 {
    let n = dm.n_points();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| dm.get(i, j))
        .sum()
}

fn digits(idx: usize, n: usize) -> Vec<usize> {
    (0..n).map(|s| block_state(idx, n, s, 1)).collect()
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

proptest! {
    #[test]
    fn cost_matches_brute_force_and_ignores_label_names(
        ps in points(2..=7),
        seed in any::<u64>(),
        perm in 0usize..6,
    ) {
        let n = ps.len();
        let labels: Vec<usize> = (0..n).map(|i| ((seed >> (2 * i)) % 3) as usize).collect();
        let relabeled: Vec<usize> = labels.iter().map(|&l| PERMS[perm][l]).collect();
        let dm = distance_matrix(&ps);
        let a = cost(&dm, &Partition::new(labels.clone(), 3).unwrap());
        let b = cost(&dm, &Partition::new(relabeled.clone(), 3).unwrap());
        prop_assert!((a - brute_cost(&ps, &labels)).abs() < 1e-9);
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert_eq!(
            Partition::new(labels, 3).unwrap(),
            Partition::new(relabeled, 3).unwrap()
        );
    }

    #[test]
    fn onehot_diagonal_is_twice_cost_minus_total(ps in points(2..=6)) {
        let dm = distance_matrix(&ps);
        let h = build_onehot_k3(&dm).unwrap();
        let t = total(&dm);
        for (idx, &e) in h.diag.iter().enumerate() {
            let w = brute_cost(&ps, &digits(idx, ps.len()));
            prop_assert!((e - (2.0 * w - t)).abs() < 1e-12 * t.max(1.0));
        }
    }

    #[test]
    fn onehot_diagonal_is_symmetric_under_label_permutation(
        ps in points(2..=6),
        perm in 0usize..6,
    ) {
        let n = ps.len();
        let h = build_onehot_k3(&distance_matrix(&ps)).unwrap();
        for idx in 0..h.len() {
            let moved: Vec<Projection> = digits(idx, n)
                .into_iter()
                .map(|d| Projection::from_digit(PERMS[perm][d]))
                .collect();
            let j = basis_index(&moved).linear;
            prop_assert!((h.diag[idx] - h.diag[j]).abs() < 1e-12 * h.max().abs().max(1.0));
        }
    }

    #[test]
    fn pinned_diagonal_is_the_first_slice_of_the_full_one(ps in points(2..=6)) {
        let dm = distance_matrix(&ps);
        let full = build_onehot_k3(&dm).unwrap();
        let pinned = build_onehot_k3_pinned(&dm).unwrap();
        prop_assert_eq!(pinned.len(), full.len() / 3);
        for (idx, &e) in pinned.diag.iter().enumerate() {
            // point 0 in projection 1 is the leading digit 0
            prop_assert!((e - full.diag[idx]).abs() < 1e-9);
        }
    }

    #[test]
    fn k2_ground_states_avoid_minus_one(ps in points(3..=6), pinned in any::<bool>()) {
        let dm = distance_matrix(&ps);
        let h = build_k2_penalty(&dm, pinned).unwrap();
        let n = h.n;
        let down = Projection::Down.digit();
        let ground = oracle_diag_min(&h);
        for b in &ground.argmin_basis_states {
            prop_assert!(digits(b.linear, n).iter().all(|&d| d != down), "{}", b);
        }
        // The ground energy equals the best two-cluster cost.
        let offset = if pinned { 1 } else { 0 };
        let best = (0..1usize << n)
            .map(|mask| {
                let mut labels = vec![0; ps.len()];
                for s in 0..n {
                    labels[s + offset] = (mask >> s) & 1;
                }
                2.0 * brute_cost(&ps, &labels) - total(&dm)
            })
            .fold(f64::INFINITY, f64::min);
        prop_assert!((ground.min_cost - best).abs() < 1e-9);
    }

    #[test]
    fn multispin_penalty_keeps_ground_states_valid(
        ps in points(2..=3),
        k in prop::sample::select(vec![2usize, 4, 5, 7, 8]),
    ) {
        let dm = distance_matrix(&ps);
        let scheme = EncodingScheme::multispin(k).unwrap();
        let h = assemble(&dm, &scheme, None).unwrap();
        let w = spins_for(k);
        for b in oracle_diag_min(&h).argmin_basis_states {
            for p in 0..ps.len() {
                prop_assert!(block_state(b.linear, h.n, p * w, w) < k, "{}", b);
            }
        }
    }

    /// Each free point's block is independent, so the ground states are the
    /// product of per-point minimizers over the centroid states and, with
    /// its penalty, any forbidden state.
    #[test]
    fn kmeanspp_ground_states_pick_each_point_independently(
        ps in points(4..=6),
        k in 2usize..=4,
    ) {
        prop_assume!(k < ps.len());
        let dm = distance_matrix(&ps);
        let states = default_centroid_states(k);
        let scheme = EncodingScheme::kmeanspp(states.clone()).unwrap();
        let centroids: Vec<usize> = (0..k).collect();
        let h = assemble(&dm, &scheme, Some(&centroids)).unwrap();
        let (d, free) = centroid_distances(&dm, &centroids);
        let w = scheme.spins_per_point;
        let targets: Vec<usize> = states.iter().map(|s| basis_index(s).linear).collect();
        let max = d.iter().flatten().copied().fold(0.0, f64::max);
        let b = if max > 0.0 { 2.0 * max } else { 1.0 };

        let mut expected: Vec<BTreeSet<usize>> = Vec::new();
        for j in 0..free.len() {
            let sum: f64 = (0..k).map(|c| d[c][j]).sum();
            let energy = |q: usize| match targets.iter().position(|&t| t == q) {
                Some(c) => 2.0 * d[c][j] - sum,
                None if w > 1 || k < 3 => b - sum,
                None => f64::INFINITY,
            };
            let lo = (0..3usize.pow(w as u32)).map(energy).fold(f64::INFINITY, f64::min);
            expected.push(
                (0..3usize.pow(w as u32)).filter(|&q| (energy(q) - lo).abs() < 1e-9).collect(),
            );
        }
        for idx in 0..h.len() {
            let in_product = (0..free.len())
                .all(|j| expected[j].contains(&block_state(idx, h.n, j * w, w)));
            let is_min = (h.diag[idx] - h.min()).abs() < 1e-9;
            prop_assert_eq!(in_product, is_min, "basis state {}", idx);
        }
    }

    #[test]
    fn basis_index_round_trips(n in 1usize..=8, seed in any::<u64>()) {
        let linear = (seed % dim(n) as u64) as usize;
        let b = BasisIndex::from_linear(n, linear).unwrap();
        prop_assert_eq!(basis_index(&b.digits), b.clone());
        for (s, d) in b.digits.iter().enumerate() {
            prop_assert_eq!(Projection::from_m(d.m().into()).unwrap(), *d);
            prop_assert_eq!(block_state(linear, n, s, 1), d.digit());
        }
    }

    #[test]
    fn onehot_decoder_reads_digits_as_labels(n in 2usize..=6, seed in any::<u64>()) {
        let linear = (seed % dim(n) as u64) as usize;
        let dec = Decoder::new(&EncodingScheme::onehot_k3(), n, None).unwrap();
        let p = dec.decode_basis(linear).unwrap();
        prop_assert_eq!(p, Partition::new(digits(linear, n), 3).unwrap());
    }

    #[test]
    fn spec_json_round_trips(ps in points(2..=6), h in 0.5f64..20.0, pinned in any::<bool>()) {
        let coords: Vec<String> = ps.points().iter().map(|p| format!("[{}, {}]", p.x, p.y)).collect();
        let text = format!(
            r#"{{"name": "t", "points": [{}], "method": "one-hot-k2-penalty", "pinned": {pinned},
                "anneal": {{"h": {h}, "steps": 10}}}}"#,
            coords.join(",")
        );
        let spec = parse_spec(&text, "inline").unwrap();
        let again = parse_spec(&spec.to_json(), "round-trip").unwrap();
        prop_assert_eq!(spec, again);
    }
}

#[test]
fn projectors_are_complete_orthogonal_idempotents() {
    let ps: Vec<_> = [1, 0, -1]
        .iter()
        .map(|&m| projector(m).unwrap().entries)
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            let sum: f64 = ps.iter().map(|p| p[i][j]).sum();
            assert_eq!(sum, if i == j { 1.0 } else { 0.0 });
        }
    }
    for (a, p) in ps.iter().enumerate() {
        for (b, q) in ps.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    let prod: f64 = (0..3).map(|l| p[i][l] * q[l][j]).sum();
                    assert_eq!(prod, if a == b { p[i][j] } else { 0.0 });
                }
            }
        }
    }
    assert!(projector(2).is_err());
}

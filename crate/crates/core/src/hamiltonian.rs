//! Problem Hamiltonians for clustering, all diagonal in the computational
//! basis, plus the transverse-field driver `H₀ = h Σᵢ Sᵢˣ`.
//!
//! Energies are in the distance units of the input points. A point that owns
//! a block of `w` qutrits is in cluster `q` when its block is in the `q`-th
//! state of the lexicographic block numbering (`|1,1⟩, |1,0⟩, |1,−1⟩, |0,1⟩,
//! …`); with `w = 1` that is simply the projection order `1, 0, −1`.

use std::ops::AddAssign;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clustering::DistanceMatrix;
use crate::error::{Error, Result};
use crate::qutrit::{basis_index, block_state, dim, BasisIndex, Projection};

/// Largest register a builder will materialize a diagonal for.
pub const MAX_REGISTER: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    pub n: usize,
    pub diag: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(n: usize, diag: Vec<f64>) -> Result<Self> {
        check_register(n)?;
        if diag.len() != dim(n) {
            return Err(Error::LengthMismatch {
                expected: dim(n),
                actual: diag.len(),
            });
        }
        if diag.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("diag", "entries must be finite"));
        }
        Ok(DiagonalHamiltonian { n, diag })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        check_register(n)?;
        Ok(DiagonalHamiltonian {
            n,
            diag: vec![0.0; dim(n)],
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.diag.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn plus(mut self, other: &DiagonalHamiltonian) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add a {}-qutrit term to a {}-qutrit Hamiltonian",
                other.n, self.n
            )));
        }
        self += other;
        Ok(self)
    }
}

impl AddAssign<&DiagonalHamiltonian> for DiagonalHamiltonian {
    /// Panics on a register size mismatch; use [`DiagonalHamiltonian::plus`]
    /// for a checked sum.
    fn add_assign(&mut self, rhs: &DiagonalHamiltonian) {
        assert_eq!(self.n, rhs.n, "register size mismatch");
        for (a, b) in self.diag.iter_mut().zip(&rhs.diag) {
            *a += b;
        }
    }
}

fn check_register(n: usize) -> Result<()> {
    if n > MAX_REGISTER {
        return Err(Error::TooLarge {
            what: "register",
            size: n,
            limit: MAX_REGISTER,
        });
    }
    Ok(())
}

/// `h Σᵢ Sᵢˣ` on `n` qutrits, applied matrix-free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriverHamiltonian {
    pub n: usize,
    pub h: f64,
}

impl DriverHamiltonian {
    pub fn dim(&self) -> usize {
        dim(self.n)
    }

    /// Lowest eigenvalue, `−n·h`.
    pub fn ground_energy(&self) -> f64 {
        -(self.n as f64) * self.h
    }

    /// `out += scale · H₀ · v`.
    pub fn apply_add(&self, scale: f64, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(v.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        let c = scale * self.h * std::f64::consts::FRAC_1_SQRT_2;
        if c == 0.0 {
            return;
        }
        for site in 0..self.n {
            let stride = 3usize.pow((self.n - 1 - site) as u32);
            for base in (0..v.len()).step_by(3 * stride) {
                for i0 in base..base + stride {
                    let (i1, i2) = (i0 + stride, i0 + 2 * stride);
                    out[i0] += c * v[i1];
                    out[i1] += c * (v[i0] + v[i2]);
                    out[i2] += c * v[i1];
                }
            }
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_add(1.0, v, &mut out);
        out
    }
}

pub fn build_driver(n: usize, h: f64) -> Result<DriverHamiltonian> {
    check_register(n)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param(
            "h",
            format!("driver strength must be positive, got {h}"),
        ));
    }
    Ok(DriverHamiltonian { n, h })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// One qutrit per point, three clusters.
    OneHotK3,
    /// As `OneHotK3` with point 0 held in projection 1 and removed from the register.
    OneHotK3Pinned,
    /// Two clusters; projection −1 is penalized.
    OneHotK2Penalty,
    /// Clusters numbered by multi-qutrit block states, K arbitrary.
    OneHotMultispin,
    /// One fixed centroid per cluster; only the remaining points are qutrits.
    Kmeanspp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::OneHotK3 => "one-hot-k3",
            Method::OneHotK3Pinned => "one-hot-k3-pinned",
            Method::OneHotK2Penalty => "one-hot-k2-penalty",
            Method::OneHotMultispin => "one-hot-multispin",
            Method::Kmeanspp => "kmeanspp",
        }
    }
}

/// Block width needed to number `k` clusters: the smallest `w ≥ 1` with `3^w ≥ k`.
pub fn spins_for(k: usize) -> usize {
    let mut w = 1;
    while 3usize.pow(w as u32) < k {
        w += 1;
    }
    w
}

/// The first `k` block states of width [`spins_for`]`(k)` in lexicographic order.
pub fn default_centroid_states(k: usize) -> Vec<Vec<Projection>> {
    let w = spins_for(k);
    (0..k)
        .map(|q| BasisIndex::from_linear(w, q).expect("q < 3^w").digits)
        .collect()
}

/// How points map onto the register and which block states are clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingScheme {
    pub method: Method,
    pub k: usize,
    pub spins_per_point: usize,
    /// Centroid block states, one per cluster (k-means++ only).
    pub centroid_states: Option<Vec<Vec<Projection>>>,
    /// Penalty constant `a` or `b`; `None` means `2·max d`.
    pub penalty_constant: Option<f64>,
    /// Only consulted for `OneHotK2Penalty`.
    pub pinned: bool,
}

impl EncodingScheme {
    pub fn onehot_k3() -> Self {
        Self::plain(Method::OneHotK3, 3)
    }

    pub fn onehot_k3_pinned() -> Self {
        Self::plain(Method::OneHotK3Pinned, 3)
    }

    pub fn k2_penalty(pinned: bool) -> Self {
        EncodingScheme {
            pinned,
            ..Self::plain(Method::OneHotK2Penalty, 2)
        }
    }

    pub fn multispin(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::param(
                "k",
                format!("need at least two clusters, got {k}"),
            ));
        }
        Ok(EncodingScheme {
            spins_per_point: spins_for(k),
            ..Self::plain(Method::OneHotMultispin, k)
        })
    }

    pub fn kmeanspp(centroid_states: Vec<Vec<Projection>>) -> Result<Self> {
        let k = centroid_states.len();
        if k < 2 {
            return Err(Error::param(
                "centroid_states",
                "need at least two centroids",
            ));
        }
        let w = spins_for(k);
        for s in &centroid_states {
            if s.len() != w {
                return Err(Error::LengthMismatch {
                    expected: w,
                    actual: s.len(),
                });
            }
        }
        for (i, s) in centroid_states.iter().enumerate() {
            if centroid_states[..i].contains(s) {
                return Err(Error::param(
                    "centroid_states",
                    format!("duplicate centroid state {}", basis_index(s)),
                ));
            }
        }
        Ok(EncodingScheme {
            spins_per_point: w,
            centroid_states: Some(centroid_states),
            ..Self::plain(Method::Kmeanspp, k)
        })
    }

    pub fn with_penalty(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::param(
                "penalty",
                format!("must be positive, got {c}"),
            ));
        }
        self.penalty_constant = Some(c);
        Ok(self)
    }

    fn plain(method: Method, k: usize) -> Self {
        EncodingScheme {
            method,
            k,
            spins_per_point: 1,
            centroid_states: None,
            penalty_constant: None,
            pinned: false,
        }
    }

    /// Whether point 0 is held in projection 1 outside the register.
    pub fn is_pinned(&self) -> bool {
        match self.method {
            Method::OneHotK3Pinned => true,
            Method::OneHotK2Penalty => self.pinned,
            _ => false,
        }
    }

    /// Number of points that live in the register.
    pub fn register_points(&self, n_points: usize, n_centroids: usize) -> usize {
        match self.method {
            Method::Kmeanspp => n_points - n_centroids,
            _ if self.is_pinned() => n_points - 1,
            _ => n_points,
        }
    }

    pub fn qutrits(&self, n_points: usize, n_centroids: usize) -> usize {
        self.register_points(n_points, n_centroids) * self.spins_per_point
    }

    /// Whether the block numbering leaves states that are not clusters.
    pub fn has_forbidden_states(&self) -> bool {
        match self.method {
            Method::OneHotK2Penalty => true,
            Method::OneHotMultispin | Method::Kmeanspp => {
                self.k < 3usize.pow(self.spins_per_point as u32)
            }
            _ => false,
        }
    }

    /// Cluster label carried by block state `q`, or `None` for a forbidden state.
    pub fn cluster_of_block_state(&self, q: usize) -> Option<usize> {
        match self.method {
            Method::Kmeanspp => self
                .centroid_states
                .as_ref()
                .and_then(|cs| cs.iter().position(|s| basis_index(s).linear == q)),
            _ if q < self.k => Some(q),
            _ => None,
        }
    }
}

/// Σ over unordered register-point pairs of `d(2·[same valid block state] − 1)`.
///
/// `points[r]` is the instance index of register point `r`; `valid` says which
/// block states count as clusters.
fn pairwise_onehot(
    dm: &DistanceMatrix,
    points: &[usize],
    width: usize,
    valid: impl Fn(usize) -> bool,
) -> Result<DiagonalHamiltonian> {
    let m = points.len();
    let n = m * width;
    check_register(n)?;
    let mut states = vec![0usize; m];
    let diag = (0..dim(n))
        .map(|idx| {
            for (r, s) in states.iter_mut().enumerate() {
                *s = block_state(idx, n, r * width, width);
            }
            let mut e = 0.0;
            for a in 0..m {
                for b in a + 1..m {
                    let d = dm.get(points[a], points[b]);
                    if states[a] == states[b] && valid(states[a]) {
                        e += d;
                    } else {
                        e -= d;
                    }
                }
            }
            e
        })
        .collect();
    DiagonalHamiltonian::new(n, diag)
}

/// Adds `Σⱼ d[0][j]·(2·[mⱼ = 1] − 1)`: every register qutrit coupled to the pinned point 0.
fn pinned_field(dm: &DistanceMatrix, h: &mut DiagonalHamiltonian) {
    let n = h.n;
    for (idx, e) in h.diag.iter_mut().enumerate() {
        for site in 0..n {
            let d = dm.get(0, site + 1);
            if block_state(idx, n, site, 1) == Projection::Up.digit() {
                *e += d;
            } else {
                *e -= d;
            }
        }
    }
}

/// One qutrit per point; same projection means same cluster.
pub fn build_onehot_k3(dm: &DistanceMatrix) -> Result<DiagonalHamiltonian> {
    let points: Vec<usize> = (0..dm.n_points()).collect();
    pairwise_onehot(dm, &points, 1, |_| true)
}

/// Point 0 fixed in projection 1; qutrit `j − 1` carries point `j`.
pub fn build_onehot_k3_pinned(dm: &DistanceMatrix) -> Result<DiagonalHamiltonian> {
    if dm.n_points() < 2 {
        return Err(Error::param("dm", "pinning needs at least two points"));
    }
    let points: Vec<usize> = (1..dm.n_points()).collect();
    let mut h = pairwise_onehot(dm, &points, 1, |_| true)?;
    pinned_field(dm, &mut h);
    Ok(h)
}

/// Three-cluster one-hot terms plus `2·d[i][j]·(P(−1)ᵢ + P(−1)ⱼ)` for every pair.
pub fn build_k2_penalty(dm: &DistanceMatrix, pinned: bool) -> Result<DiagonalHamiltonian> {
    let mut h = if pinned {
        build_onehot_k3_pinned(dm)?
    } else {
        build_onehot_k3(dm)?
    };
    let n = h.n;
    let offset = usize::from(pinned);
    let down = Projection::Down.digit();
    // Each register point's P(−1) is weighted by twice its summed distance to
    // every other point, the pinned one included (it never sits in −1 itself).
    let weight: Vec<f64> = (0..n)
        .map(|site| {
            let p = site + offset;
            2.0 * (0..dm.n_points())
                .filter(|&q| q != p)
                .map(|q| dm.get(p, q))
                .sum::<f64>()
        })
        .collect();
    for (idx, e) in h.diag.iter_mut().enumerate() {
        for (site, w) in weight.iter().enumerate() {
            if block_state(idx, n, site, 1) == down {
                *e += w;
            }
        }
    }
    Ok(h)
}

/// Clusters numbered by the first `k` block states of `⌈log₃ k⌉` qutrits per point.
pub fn build_onehot_multispin(dm: &DistanceMatrix, k: usize) -> Result<DiagonalHamiltonian> {
    if k < 2 {
        return Err(Error::param(
            "k",
            format!("need at least two clusters, got {k}"),
        ));
    }
    let points: Vec<usize> = (0..dm.n_points()).collect();
    pairwise_onehot(dm, &points, spins_for(k), |q| q < k)
}

fn check_penalty_range(k: usize) -> Result<usize> {
    let w = spins_for(k);
    let lo = 3usize.pow(w as u32 - 1);
    if !(lo < k && k < 3usize.pow(w as u32)) {
        return Err(Error::param(
            "k",
            format!("{k} clusters fill {w}-qutrit blocks exactly; there are no extra states"),
        ));
    }
    Ok(w)
}

/// Adds `a` for each point whose block state is numbered `k` or higher.
pub fn build_penalty_onehot(n_points: usize, k: usize, a: f64) -> Result<DiagonalHamiltonian> {
    if a.is_nan() || a <= 0.0 {
        return Err(Error::param(
            "a",
            format!("penalty constant must be positive, got {a}"),
        ));
    }
    let w = check_penalty_range(k)?;
    block_penalty(n_points, w, a, |q| q >= k)
}

fn block_penalty(
    m: usize,
    width: usize,
    c: f64,
    forbidden: impl Fn(usize) -> bool,
) -> Result<DiagonalHamiltonian> {
    let n = m * width;
    check_register(n)?;
    let diag = (0..dim(n))
        .map(|idx| {
            (0..m)
                .filter(|r| forbidden(block_state(idx, n, r * width, width)))
                .count() as f64
                * c
        })
        .collect();
    DiagonalHamiltonian::new(n, diag)
}

/// Distances `d[c][j]` from each centroid to each free point, with the free
/// point indices in register order.
pub fn centroid_distances(dm: &DistanceMatrix, centroids: &[usize]) -> (Vec<Vec<f64>>, Vec<usize>) {
    let free: Vec<usize> = (0..dm.n_points())
        .filter(|i| !centroids.contains(i))
        .collect();
    let d = centroids
        .iter()
        .map(|&c| free.iter().map(|&j| dm.get(c, j)).collect())
        .collect();
    (d, free)
}

/// `Σ_c Σⱼ d[c][j]·(2·[block j = φ_c] − 1)` over free points `j`.
#[allow(clippy::needless_range_loop)]
pub fn build_kmeanspp(
    centroid_dists: &[Vec<f64>],
    scheme: &EncodingScheme,
) -> Result<DiagonalHamiltonian> {
    let states = match (&scheme.method, &scheme.centroid_states) {
        (Method::Kmeanspp, Some(s)) => s,
        _ => return Err(Error::param("scheme", "k-means++ needs centroid states")),
    };
    // revalidate: the fields are public
    let scheme = EncodingScheme::kmeanspp(states.clone())?;
    if centroid_dists.len() != scheme.k {
        return Err(Error::LengthMismatch {
            expected: scheme.k,
            actual: centroid_dists.len(),
        });
    }
    let m = centroid_dists[0].len();
    if let Some(row) = centroid_dists.iter().find(|r| r.len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: row.len(),
        });
    }
    let w = scheme.spins_per_point;
    let n = m * w;
    check_register(n)?;
    let targets: Vec<usize> = states.iter().map(|s| basis_index(s).linear).collect();
    let diag = (0..dim(n))
        .map(|idx| {
            let mut e = 0.0;
            for j in 0..m {
                let q = block_state(idx, n, j * w, w);
                for (c, &t) in targets.iter().enumerate() {
                    let d = centroid_dists[c][j];
                    if q == t {
                        e += d;
                    } else {
                        e -= d;
                    }
                }
            }
            e
        })
        .collect();
    DiagonalHamiltonian::new(n, diag)
}

/// Adds `b` for each free point whose block is not one of the centroid states.
pub fn build_penalty_kmeanspp(
    n_free_points: usize,
    scheme: &EncodingScheme,
    b: f64,
) -> Result<DiagonalHamiltonian> {
    if b.is_nan() || b <= 0.0 {
        return Err(Error::param(
            "b",
            format!("penalty constant must be positive, got {b}"),
        ));
    }
    let states = scheme
        .centroid_states
        .as_ref()
        .ok_or_else(|| Error::param("scheme", "k-means++ needs centroid states"))?;
    let w = check_penalty_range(scheme.k)?;
    let allowed: Vec<usize> = states.iter().map(|s| basis_index(s).linear).collect();
    block_penalty(n_free_points, w, b, |q| !allowed.contains(&q))
}

/// `2·max d`, or 1 when every distance is zero and any positive value will do.
fn default_penalty(max_d: f64) -> f64 {
    if max_d > 0.0 {
        2.0 * max_d
    } else {
        1.0
    }
}

/// Final Hamiltonian for `scheme`, penalties included.
///
/// `centroids` lists the instance indices of the k-means++ centroids in
/// cluster order. Missing penalty constants default to `2·max d` over the
/// distances that enter the Hamiltonian.
pub fn assemble(
    dm: &DistanceMatrix,
    scheme: &EncodingScheme,
    centroids: Option<&[usize]>,
) -> Result<DiagonalHamiltonian> {
    match scheme.method {
        Method::OneHotK3 => build_onehot_k3(dm),
        Method::OneHotK3Pinned => build_onehot_k3_pinned(dm),
        Method::OneHotK2Penalty => build_k2_penalty(dm, scheme.pinned),
        Method::OneHotMultispin => {
            let h = build_onehot_multispin(dm, scheme.k)?;
            if !scheme.has_forbidden_states() {
                return Ok(h);
            }
            let a = scheme
                .penalty_constant
                .unwrap_or_else(|| default_penalty(dm.max()));
            h.plus(&build_penalty_onehot(dm.n_points(), scheme.k, a)?)
        }
        Method::Kmeanspp => {
            let centroids =
                centroids.ok_or_else(|| Error::param("centroids", "k-means++ needs centroids"))?;
            if centroids.len() != scheme.k {
                return Err(Error::LengthMismatch {
                    expected: scheme.k,
                    actual: centroids.len(),
                });
            }
            let (d, free) = centroid_distances(dm, centroids);
            if free.is_empty() {
                return Err(Error::param("centroids", "every point is a centroid"));
            }
            let h = build_kmeanspp(&d, scheme)?;
            if !scheme.has_forbidden_states() {
                return Ok(h);
            }
            let max = d.iter().flatten().copied().fold(0.0, f64::max);
            let b = scheme
                .penalty_constant
                .unwrap_or_else(|| default_penalty(max));
            h.plus(&build_penalty_kmeanspp(free.len(), scheme, b)?)
        }
    }
}

//! Adiabatic evolution under `H(s) = (1 − s)·H₀ + s·H_f` and readout.
//!
//! The schedule is the stepped product over `l = 0 … M` (inclusive) of
//! `exp(−iΔt H(l/M))` applied to the ground state of `H₀`. In exact mode each
//! factor is the exponential of the instantaneous Hamiltonian itself,
//! accurate to ~1e−13 per step. Split mode replaces each factor by a
//! symmetric diagonal/driver splitting and is only a fast approximation.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clustering::Partition;
use crate::error::{Error, Result};
use crate::expm::{apply_on_every_site, expmv_in_place, spin_x_exp, ChebyshevWorkspace};
use crate::hamiltonian::{build_driver, DiagonalHamiltonian, DriverHamiltonian, EncodingScheme};
use crate::qutrit::{block_state, dim};

pub const DEFAULT_STEPS: usize = 2000;
pub const DEFAULT_DT: f64 = 0.1;
pub const DEFAULT_H: f64 = 8.0;
pub const DEFAULT_SPLIT_SUBSTEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepMode {
    #[default]
    Exact,
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    /// `M`: the schedule visits `s = l/M` for `l = 0 … M`.
    pub steps: usize,
    pub dt: f64,
    /// Driver strength `h`.
    pub h: f64,
    pub mode: StepMode,
    /// Strang sub-steps per Δt in split mode.
    pub split_substeps: usize,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            steps: DEFAULT_STEPS,
            dt: DEFAULT_DT,
            h: DEFAULT_H,
            mode: StepMode::Exact,
            split_substeps: DEFAULT_SPLIT_SUBSTEPS,
        }
    }
}

impl AnnealConfig {
    pub fn with_field(h: f64) -> Self {
        AnnealConfig {
            h,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 1 {
            return Err(Error::param("steps", "need at least one step"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::param(
                "dt",
                format!("must be positive, got {}", self.dt),
            ));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::param(
                "h",
                format!("must be positive, got {}", self.h),
            ));
        }
        if self.split_substeps < 1 {
            return Err(Error::param("split_substeps", "need at least one sub-step"));
        }
        Ok(())
    }

    /// Total annealing time `T = M·Δt`.
    pub fn total_time(&self) -> f64 {
        self.steps as f64 * self.dt
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim(n)];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { n, amplitudes }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }
}

/// Product of the lowest Sˣ eigenvector `(1, −√2, 1)/2` on every site.
pub fn initial_state(n: usize, h: f64) -> Result<StateVector> {
    build_driver(n, h)?;
    let site = [0.5, -std::f64::consts::FRAC_1_SQRT_2, 0.5];
    let amplitudes = (0..dim(n))
        .map(|idx| {
            let amp = (0..n)
                .map(|s| site[block_state(idx, n, s, 1)])
                .product::<f64>();
            Complex64::new(amp, 0.0)
        })
        .collect();
    Ok(StateVector { n, amplitudes })
}

/// `H(s) = (1 − s)·H₀ + s·H_f`, applied matrix-free.
#[derive(Debug, Clone, Copy)]
pub struct InstantaneousHamiltonian<'a> {
    pub s: f64,
    pub hf: &'a DiagonalHamiltonian,
    pub drv: &'a DriverHamiltonian,
}

impl<'a> InstantaneousHamiltonian<'a> {
    pub fn new(s: f64, hf: &'a DiagonalHamiltonian, drv: &'a DriverHamiltonian) -> Result<Self> {
        if hf.n != drv.n {
            return Err(Error::DimensionMismatch(format!(
                "final Hamiltonian has {} qutrits, driver has {}",
                hf.n, drv.n
            )));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::param("s", format!("{s} is outside [0, 1]")));
        }
        Ok(InstantaneousHamiltonian { s, hf, drv })
    }

    pub fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        for ((o, x), d) in out.iter_mut().zip(v).zip(&self.hf.diag) {
            *o = self.s * d * x;
        }
        self.drv.apply_add(1.0 - self.s, v, out);
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_into(v, &mut out);
        out
    }

    /// Interval containing the spectrum: the diagonal range scaled by `s`
    /// widened by the driver's `±n·h` scaled by `1 − s`.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let drv = (1.0 - self.s) * self.drv.n as f64 * self.drv.h;
        (self.s * self.hf.min() - drv, self.s * self.hf.max() + drv)
    }
}

/// Evolves states under a fixed pair of Hamiltonians, reusing buffers.
#[derive(Debug, Clone)]
pub struct Evolver<'a> {
    hf: &'a DiagonalHamiltonian,
    drv: DriverHamiltonian,
    ws: ChebyshevWorkspace,
}

impl<'a> Evolver<'a> {
    pub fn new(hf: &'a DiagonalHamiltonian, drv: DriverHamiltonian) -> Result<Self> {
        if hf.n != drv.n {
            return Err(Error::DimensionMismatch(format!(
                "final Hamiltonian has {} qutrits, driver has {}",
                hf.n, drv.n
            )));
        }
        Ok(Evolver {
            hf,
            drv,
            ws: ChebyshevWorkspace::new(hf.len()),
        })
    }

    /// `v ← exp(−i dt H(s)) v`.
    pub fn step_exact(&mut self, v: &mut [Complex64], s: f64, dt: f64) {
        if s == 1.0 {
            self.diagonal_phase(v, dt);
            return;
        }
        if s == 0.0 {
            apply_on_every_site(&spin_x_exp(self.drv.h * dt), self.drv.n, v);
            return;
        }
        let ham = InstantaneousHamiltonian {
            s,
            hf: self.hf,
            drv: &self.drv,
        };
        let (lo, hi) = ham.spectral_bounds();
        expmv_in_place(|x, out| ham.apply_into(x, out), lo, hi, dt, v, &mut self.ws);
    }

    /// Symmetric splitting `D(τ/2) X(τ) D(τ/2)` repeated over `substeps` slices of `dt`.
    pub fn step_split(&mut self, v: &mut [Complex64], s: f64, dt: f64, substeps: usize) {
        let tau = dt / substeps as f64;
        let site = spin_x_exp((1.0 - s) * self.drv.h * tau);
        let half: Vec<Complex64> = self
            .hf
            .diag
            .iter()
            .map(|d| Complex64::from_polar(1.0, -0.5 * s * d * tau))
            .collect();
        for _ in 0..substeps {
            v.iter_mut().zip(&half).for_each(|(x, p)| *x *= p);
            apply_on_every_site(&site, self.drv.n, v);
            v.iter_mut().zip(&half).for_each(|(x, p)| *x *= p);
        }
    }

    fn diagonal_phase(&self, v: &mut [Complex64], dt: f64) {
        for (x, d) in v.iter_mut().zip(&self.hf.diag) {
            *x *= Complex64::from_polar(1.0, -d * dt);
        }
    }
}

/// One factor of the schedule: `exp(−i dt H(s)) · state`.
pub fn step(
    state: &StateVector,
    s: f64,
    hf: &DiagonalHamiltonian,
    drv: &DriverHamiltonian,
    dt: f64,
) -> Result<StateVector> {
    InstantaneousHamiltonian::new(s, hf, drv)?;
    if state.n != hf.n {
        return Err(Error::DimensionMismatch(format!(
            "state has {} qutrits, Hamiltonian has {}",
            state.n, hf.n
        )));
    }
    let mut out = state.clone();
    Evolver::new(hf, *drv)?.step_exact(&mut out.amplitudes, s, dt);
    Ok(out)
}

/// Runs the full schedule from the driver ground state.
pub fn anneal(cfg: &AnnealConfig, hf: &DiagonalHamiltonian) -> Result<StateVector> {
    cfg.validate()?;
    let drv = build_driver(hf.n, cfg.h)?;
    let mut psi = initial_state(hf.n, cfg.h)?;
    let mut ev = Evolver::new(hf, drv)?;
    for l in 0..=cfg.steps {
        let s = l as f64 / cfg.steps as f64;
        match cfg.mode {
            StepMode::Exact => ev.step_exact(&mut psi.amplitudes, s, cfg.dt),
            StepMode::Split => ev.step_split(&mut psi.amplitudes, s, cfg.dt, cfg.split_substeps),
        }
    }
    Ok(psi)
}

/// Maps register basis states back to partitions of the whole instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoder {
    n_points: usize,
    n_qutrits: usize,
    width: usize,
    k: usize,
    /// Register slot of each point, `None` for points held fixed.
    slot: Vec<Option<usize>>,
    fixed_label: Vec<Option<usize>>,
    /// Cluster of each block state; `None` marks a forbidden state.
    state_label: Vec<Option<usize>>,
}

impl Decoder {
    /// `centroids` lists k-means++ centroid point indices in cluster order.
    pub fn new(
        scheme: &EncodingScheme,
        n_points: usize,
        centroids: Option<&[usize]>,
    ) -> Result<Self> {
        let mut slot = vec![None; n_points];
        let mut fixed_label = vec![None; n_points];
        let centroids = centroids.unwrap_or(&[]);
        if scheme.method == crate::hamiltonian::Method::Kmeanspp {
            if centroids.len() != scheme.k {
                return Err(Error::LengthMismatch {
                    expected: scheme.k,
                    actual: centroids.len(),
                });
            }
            for (c, &p) in centroids.iter().enumerate() {
                if p >= n_points || fixed_label[p].is_some() {
                    return Err(Error::param("centroids", format!("bad centroid index {p}")));
                }
                fixed_label[p] = Some(c);
            }
        } else if scheme.is_pinned() {
            fixed_label[0] = Some(0);
        }
        let mut next = 0;
        for (p, s) in slot.iter_mut().enumerate() {
            if fixed_label[p].is_none() {
                *s = Some(next);
                next += 1;
            }
        }
        let width = scheme.spins_per_point;
        let state_label = (0..3usize.pow(width as u32))
            .map(|q| scheme.cluster_of_block_state(q))
            .collect();
        Ok(Decoder {
            n_points,
            n_qutrits: next * width,
            width,
            k: scheme.k,
            slot,
            fixed_label,
            state_label,
        })
    }

    pub fn n_qutrits(&self) -> usize {
        self.n_qutrits
    }

    /// Partition encoded by basis state `idx`, or `None` if any block is forbidden.
    pub fn decode_basis(&self, idx: usize) -> Option<Partition> {
        let mut labels = Vec::with_capacity(self.n_points);
        for p in 0..self.n_points {
            let l = match (self.fixed_label[p], self.slot[p]) {
                (Some(l), _) => l,
                (None, Some(r)) => {
                    let q = block_state(idx, self.n_qutrits, r * self.width, self.width);
                    self.state_label[q]?
                }
                (None, None) => unreachable!("every point is fixed or in the register"),
            };
            labels.push(l);
        }
        Some(Partition::new(labels, self.k).expect("labels below k"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutReport {
    pub basis_probabilities: Vec<f64>,
    /// Every reachable partition with its summed probability, most probable first.
    pub partition_probabilities: Vec<(Partition, f64)>,
    /// Probability carried by basis states with a forbidden block.
    pub invalid_probability: f64,
    pub top_partition: Partition,
    pub top_probability: f64,
}

impl ReadoutReport {
    pub fn probability_of(&self, p: &Partition) -> f64 {
        self.partition_probabilities
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0.0, |(_, pr)| *pr)
    }

    /// Position of `p` in `partition_probabilities`.
    pub fn partition_id(&self, p: &Partition) -> Option<usize> {
        self.partition_probabilities
            .iter()
            .position(|(q, _)| q == p)
    }
}

pub fn decode(state: &StateVector, decoder: &Decoder) -> Result<ReadoutReport> {
    if state.n != decoder.n_qutrits {
        return Err(Error::DimensionMismatch(format!(
            "state has {} qutrits, decoder expects {}",
            state.n, decoder.n_qutrits
        )));
    }
    let basis_probabilities = state.probabilities();
    let mut by_partition: HashMap<Vec<usize>, (Partition, f64)> = HashMap::new();
    let mut invalid_probability = 0.0;
    for (idx, &p) in basis_probabilities.iter().enumerate() {
        match decoder.decode_basis(idx) {
            Some(part) => {
                by_partition
                    .entry(part.canonical())
                    .or_insert_with(|| (part, 0.0))
                    .1 += p;
            }
            None => invalid_probability += p,
        }
    }
    // sort by canonical form first so ties resolve deterministically
    let sorted: BTreeMap<Vec<usize>, (Partition, f64)> = by_partition.into_iter().collect();
    let mut partition_probabilities: Vec<(Partition, f64)> = sorted.into_values().collect();
    partition_probabilities.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (top_partition, top_probability) = partition_probabilities
        .first()
        .cloned()
        .ok_or_else(|| Error::param("decoder", "no basis state decodes to a partition"))?;
    Ok(ReadoutReport {
        basis_probabilities,
        partition_probabilities,
        invalid_probability,
        top_partition,
        top_probability,
    })
}

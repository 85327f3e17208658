//! Action of `exp(−i t H)` on a vector for Hermitian `H` given only as a
//! matrix-vector product and a bracket on its spectrum.
//!
//! Uses the Chebyshev expansion
//! `exp(−i t (c + r X)) = e^{−ict} [J₀(rt) + 2 Σ_{k≥1} (−i)^k J_k(rt) T_k(X)]`
//! with `X` scaled to have spectrum in `[−1, 1]`. Terms are kept until the
//! Bessel coefficients fall below [`COEFF_CUTOFF`], which past `k ≈ rt` decay
//! super-exponentially.

use num_complex::Complex64;

/// Coefficients below this are dropped.
pub const COEFF_CUTOFF: f64 = 1e-17;

const RESCALE_ABOVE: f64 = 1e250;

/// `J_0(x), …, J_kmax(x)` for integer orders via Miller's backward recurrence,
/// normalized with `J₀ + 2 Σ J_{2k} = 1`.
pub fn bessel_j_seq(x: f64, kmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = (kmax as f64).max(ax);
    let mut start = (top + 30.0 + (60.0 * top).sqrt()).ceil() as usize;
    start += start % 2;

    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k <= kmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = 2.0 * k as f64 / ax * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
            for v in out.iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    for (k, v) in out.iter_mut().enumerate() {
        *v /= norm;
        // J_k(−x) = (−1)^k J_k(x)
        if x < 0.0 && k % 2 == 1 {
            *v = -*v;
        }
    }
    out
}

/// Bessel coefficients `J_k(x)` for `k = 0…K`, with `K` the last order above
/// [`COEFF_CUTOFF`].
pub fn chebyshev_coefficients(x: f64) -> Vec<f64> {
    let ax = x.abs();
    let guess = (ax + 10.0 * ax.cbrt() + 40.0).ceil() as usize;
    let mut j = bessel_j_seq(x, guess);
    let keep = j.iter().rposition(|v| v.abs() > COEFF_CUTOFF).unwrap_or(0);
    j.truncate(keep + 1);
    j
}

/// Reusable buffers for repeated propagation of same-sized vectors.
#[derive(Debug, Clone, Default)]
pub struct ChebyshevWorkspace {
    prev: Vec<Complex64>,
    cur: Vec<Complex64>,
    next: Vec<Complex64>,
    acc: Vec<Complex64>,
}

impl ChebyshevWorkspace {
    pub fn new(len: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); len];
        ChebyshevWorkspace {
            prev: z.clone(),
            cur: z.clone(),
            next: z.clone(),
            acc: z,
        }
    }

    fn fit(&mut self, len: usize) {
        if self.acc.len() != len {
            *self = Self::new(len);
        }
    }
}

/// Replaces `v` with `exp(−i t H) v`.
///
/// `apply(x, out)` must overwrite `out` with `H x`, and the spectrum of `H` must
/// lie inside `[lo, hi]`.
pub fn expmv_in_place<F>(
    apply: F,
    lo: f64,
    hi: f64,
    t: f64,
    v: &mut [Complex64],
    ws: &mut ChebyshevWorkspace,
) where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    assert!(lo <= hi, "empty spectral bracket");
    let len = v.len();
    let center = 0.5 * (lo + hi);
    let radius = 0.5 * (hi - lo) * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    let phase = Complex64::from_polar(1.0, -center * t);
    let coeffs = chebyshev_coefficients(radius * t);
    if coeffs.len() == 1 {
        let a = phase * coeffs[0];
        v.iter_mut().for_each(|x| *x *= a);
        return;
    }
    ws.fit(len);
    let ChebyshevWorkspace {
        prev,
        cur,
        next,
        acc,
    } = ws;
    let inv_r = 1.0 / radius;
    // scaled operator: X y = (H y − c y) / r
    let scaled = |x: &[Complex64], out: &mut [Complex64]| {
        apply(x, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o = (*o - center * xi) * inv_r;
        }
    };

    prev.copy_from_slice(v);
    scaled(prev, cur);
    let mut ipow = Complex64::new(0.0, -1.0); // (−i)^k
    let a1 = 2.0 * coeffs[1] * ipow;
    for ((a, p), c) in acc.iter_mut().zip(prev.iter()).zip(cur.iter()) {
        *a = coeffs[0] * p + a1 * c;
    }
    for &jk in &coeffs[2..] {
        ipow *= Complex64::new(0.0, -1.0);
        scaled(cur, next);
        let ak = 2.0 * jk * ipow;
        for ((n, p), a) in next.iter_mut().zip(prev.iter()).zip(acc.iter_mut()) {
            *n = 2.0 * *n - p;
            *a += ak * *n;
        }
        std::mem::swap(prev, cur);
        std::mem::swap(cur, next);
    }
    for (x, a) in v.iter_mut().zip(acc.iter()) {
        *x = phase * a;
    }
}

/// `exp(−iθ Sˣ)` for a single spin-1, from the closed-form eigenvectors of Sˣ.
pub fn spin_x_exp(theta: f64) -> [[Complex64; 3]; 3] {
    let s2 = std::f64::consts::SQRT_2;
    // eigenvalue −1, 0, +1
    let vecs = [
        [0.5, -s2 / 2.0, 0.5],
        [
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
            -std::f64::consts::FRAC_1_SQRT_2,
        ],
        [0.5, s2 / 2.0, 0.5],
    ];
    let phases = [
        Complex64::from_polar(1.0, theta),
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, -theta),
    ];
    let mut u = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (vec, ph) in vecs.iter().zip(phases) {
        for i in 0..3 {
            for j in 0..3 {
                u[i][j] += ph * vec[i] * vec[j];
            }
        }
    }
    u
}

/// Applies the same 3×3 unitary to every site of an `n`-qutrit register.
pub fn apply_on_every_site(u: &[[Complex64; 3]; 3], n: usize, v: &mut [Complex64]) {
    for site in 0..n {
        let stride = 3usize.pow((n - 1 - site) as u32);
        for base in (0..v.len()).step_by(3 * stride) {
            for i0 in base..base + stride {
                let (i1, i2) = (i0 + stride, i0 + 2 * stride);
                let (a, b, c) = (v[i0], v[i1], v[i2]);
                v[i0] = u[0][0] * a + u[0][1] * b + u[0][2] * c;
                v[i1] = u[1][0] * a + u[1][1] * b + u[1][2] * c;
                v[i2] = u[2][0] * a + u[2][1] * b + u[2][2] * c;
            }
        }
    }
}

//! Spin-1 operators, projectors and base-3 register indexing.
//!
//! Single-site basis order is `(|1⟩, |0⟩, |−1⟩)`, mapped to digits `(0, 1, 2)`.
//! In an n-qutrit register site 0 is the most significant digit, so
//! `|1, 1, …, 1⟩` is linear index 0 and `|−1, …, −1⟩` is `3^n − 1`.

use std::fmt;
use std::ops::Range;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;

/// Largest register the simulator will address (3^20 states).
pub const MAX_QUTRITS: usize = 20;

pub type Mat3 = [[f64; 3]; 3];

/// Spin projection `m` of a single qutrit along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projection {
    Up,
    Zero,
    Down,
}

impl Projection {
    /// In basis order.
    pub const ALL: [Projection; 3] = [Projection::Up, Projection::Zero, Projection::Down];

    pub fn from_m(m: i64) -> Result<Self> {
        match m {
            1 => Ok(Projection::Up),
            0 => Ok(Projection::Zero),
            -1 => Ok(Projection::Down),
            other => Err(Error::InvalidProjection(other)),
        }
    }

    pub fn m(self) -> i8 {
        match self {
            Projection::Up => 1,
            Projection::Zero => 0,
            Projection::Down => -1,
        }
    }

    pub fn digit(self) -> usize {
        match self {
            Projection::Up => 0,
            Projection::Zero => 1,
            Projection::Down => 2,
        }
    }

    /// Panics if `d > 2`.
    pub fn from_digit(d: usize) -> Self {
        Self::ALL[d]
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m())
    }
}

/// Parses a list of integer projections such as `[1, 0, -1]`.
pub fn projections(ms: &[i64]) -> Result<Vec<Projection>> {
    ms.iter().map(|&m| Projection::from_m(m)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinKind {
    X,
    Z,
}

/// A 3×3 complex spin-1 operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrix {
    pub entries: [[Complex64; 3]; 3],
}

impl SpinMatrix {
    pub fn is_hermitian(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i].conj()))
    }

    /// Real part of every entry. Both Sˣ and Sᶻ are real in this basis.
    pub fn re(&self) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (row, src) in out.iter_mut().zip(self.entries.iter()) {
            for (o, e) in row.iter_mut().zip(src.iter()) {
                *o = e.re;
            }
        }
        out
    }
}

pub fn spin_operator(kind: SpinKind) -> SpinMatrix {
    let z = Complex64::new(0.0, 0.0);
    let mut entries = [[z; 3]; 3];
    match kind {
        SpinKind::Z => {
            entries[0][0] = Complex64::new(1.0, 0.0);
            entries[2][2] = Complex64::new(-1.0, 0.0);
        }
        SpinKind::X => {
            let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            entries[0][1] = a;
            entries[1][0] = a;
            entries[1][2] = a;
            entries[2][1] = a;
        }
    }
    SpinMatrix { entries }
}

pub(crate) fn mat3_identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub(crate) fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat3_lincomb(alpha: f64, a: &Mat3, beta: f64, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = alpha * a[i][j] + beta * b[i][j];
        }
    }
    out
}

/// Projector onto a single-qutrit z eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projector3 {
    pub m: Projection,
    pub entries: Mat3,
}

impl Projector3 {
    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.entries[i][i]).sum()
    }
}

/// Builds `|m⟩⟨m|` as a polynomial in Sᶻ:
/// `P(1) = Sᶻ(1 + Sᶻ)/2`, `P(0) = 1 − (Sᶻ)²`, `P(−1) = −Sᶻ(1 − Sᶻ)/2`.
pub fn projector(m: i64) -> Result<Projector3> {
    let m = Projection::from_m(m)?;
    let sz = spin_operator(SpinKind::Z).re();
    let id = mat3_identity();
    let entries = match m {
        Projection::Up => {
            let one_plus = mat3_lincomb(1.0, &id, 1.0, &sz);
            mat3_lincomb(0.5, &mat3_mul(&sz, &one_plus), 0.0, &id)
        }
        Projection::Zero => mat3_lincomb(1.0, &id, -1.0, &mat3_mul(&sz, &sz)),
        Projection::Down => {
            let one_minus = mat3_lincomb(1.0, &id, -1.0, &sz);
            mat3_lincomb(-0.5, &mat3_mul(&sz, &one_minus), 0.0, &id)
        }
    };
    Ok(Projector3 { m, entries })
}

/// `3^n`, guarded against register sizes the simulator cannot address.
pub fn dim(n: usize) -> usize {
    assert!(n <= MAX_QUTRITS, "register of {n} qutrits is too large");
    3usize.pow(n as u32)
}

/// A computational basis state `|m₁, …, mₙ⟩` with its linear index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub digits: Vec<Projection>,
    pub linear: usize,
}

impl BasisIndex {
    pub fn n(&self) -> usize {
        self.digits.len()
    }

    pub fn from_linear(n: usize, linear: usize) -> Result<Self> {
        if n > MAX_QUTRITS {
            return Err(Error::TooLarge {
                what: "register",
                size: n,
                limit: MAX_QUTRITS,
            });
        }
        if linear >= dim(n) {
            return Err(Error::param(
                "linear",
                format!("{linear} is outside [0, 3^{n})"),
            ));
        }
        let mut digits = vec![Projection::Up; n];
        let mut rest = linear;
        for slot in digits.iter_mut().rev() {
            *slot = Projection::from_digit(rest % 3);
            rest /= 3;
        }
        Ok(BasisIndex { digits, linear })
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "⟩")
    }
}

pub fn basis_index(digits: &[Projection]) -> BasisIndex {
    let linear = digits.iter().fold(0usize, |acc, d| acc * 3 + d.digit());
    BasisIndex {
        digits: digits.to_vec(),
        linear,
    }
}

/// Index, in lexicographic order of its digits, of the state held by the
/// `width` sites starting at `start` within basis state `linear`.
///
/// This is the multi-spin numbering `ψ₁ = |1,1⟩, ψ₂ = |1,0⟩, …` shifted to
/// start at zero.
#[inline]
pub fn block_state(linear: usize, n: usize, start: usize, width: usize) -> usize {
    debug_assert!(start + width <= n);
    let below = 3usize.pow((n - start - width) as u32);
    (linear / below) % 3usize.pow(width as u32)
}

/// Diagonal of `|ψ⟩⟨ψ|` on the site block `block`, lifted by the identity on
/// every other site of an `n`-qutrit register.
pub fn group_projector_diagonal(
    block: Range<usize>,
    state: &[Projection],
    n: usize,
) -> Result<DiagonalHamiltonian> {
    if block.end > n || block.start >= block.end {
        return Err(Error::param(
            "block",
            format!("{block:?} is not a non-empty site range of a {n}-qutrit register"),
        ));
    }
    if state.len() != block.len() {
        return Err(Error::LengthMismatch {
            expected: block.len(),
            actual: state.len(),
        });
    }
    let target = basis_index(state).linear;
    let diag = (0..dim(n))
        .map(|i| {
            if block_state(i, n, block.start, block.len()) == target {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    DiagonalHamiltonian::new(n, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag3(p: &Projector3) -> [f64; 3] {
        [p.entries[0][0], p.entries[1][1], p.entries[2][2]]
    }

    #[test]
    fn spin_z_is_diagonal() {
        let sz = spin_operator(SpinKind::Z).re();
        assert_eq!(sz, [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]]);
    }

    #[test]
    fn spin_x_entries() {
        let sx = spin_operator(SpinKind::X);
        let a = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(sx.re(), [[0.0, a, 0.0], [a, 0.0, a], [0.0, a, 0.0]]);
        assert!(sx.is_hermitian());
        assert!(spin_operator(SpinKind::Z).is_hermitian());
    }

    #[test]
    fn projectors_are_canonical_diagonals() {
        assert_eq!(diag3(&projector(1).unwrap()), [1.0, 0.0, 0.0]);
        assert_eq!(diag3(&projector(0).unwrap()), [0.0, 1.0, 0.0]);
        assert_eq!(diag3(&projector(-1).unwrap()), [0.0, 0.0, 1.0]);
        for m in [1, 0, -1] {
            assert_eq!(projector(m).unwrap().trace(), 1.0);
        }
    }

    #[test]
    fn projector_rejects_bad_m() {
        assert!(matches!(projector(2), Err(Error::InvalidProjection(2))));
        assert!(projector(-3).is_err());
    }

    #[test]
    fn basis_index_examples() {
        use Projection::*;
        assert_eq!(basis_index(&[Up, Up]).linear, 0);
        assert_eq!(basis_index(&[Down, Down]).linear, 8);
        assert_eq!(basis_index(&[Up, Zero, Down]).linear, 5);
        assert_eq!(
            BasisIndex::from_linear(3, 5).unwrap().digits,
            vec![Up, Zero, Down]
        );
        assert!(BasisIndex::from_linear(2, 9).is_err());
    }

    #[test]
    fn round_trip_up_to_seven_sites() {
        for n in 0..=7 {
            for linear in 0..dim(n) {
                let b = BasisIndex::from_linear(n, linear).unwrap();
                assert_eq!(basis_index(&b.digits), b);
            }
        }
    }

    #[test]
    fn block_numbering_matches_two_spin_state_list() {
        use Projection::*;
        // ψ₁..ψ₅ = |1,1⟩, |1,0⟩, |1,−1⟩, |0,1⟩, |0,0⟩
        let expected = [[Up, Up], [Up, Zero], [Up, Down], [Zero, Up], [Zero, Zero]];
        for (q, s) in expected.iter().enumerate() {
            let idx = basis_index(s).linear;
            assert_eq!(block_state(idx, 2, 0, 2), q);
        }
        assert_eq!(basis_index(&[Down, Down]).linear, 8);
    }

    #[test]
    fn group_projector_single_site() {
        let d = group_projector_diagonal(0..1, &[Projection::Up], 2).unwrap();
        let ones: Vec<usize> = (0..9).filter(|&i| d.diag[i] == 1.0).collect();
        assert_eq!(ones, vec![0, 1, 2]);
    }

    #[test]
    fn group_projector_full_block_is_rank_one() {
        let d = group_projector_diagonal(0..2, &[Projection::Up, Projection::Zero], 2).unwrap();
        let ones: Vec<usize> = (0..9).filter(|&i| d.diag[i] == 1.0).collect();
        assert_eq!(ones, vec![1]);
    }

    #[test]
    fn group_projector_trace_and_resolution() {
        let n = 4;
        let width = 2;
        let mut sum = vec![0.0; dim(n)];
        for q in 0..9 {
            let st = BasisIndex::from_linear(width, q).unwrap().digits;
            let d = group_projector_diagonal(1..3, &st, n).unwrap();
            let tr: f64 = d.diag.iter().sum();
            assert_eq!(tr, 9.0);
            for (s, v) in sum.iter_mut().zip(&d.diag) {
                *s += v;
            }
        }
        assert!(sum.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn group_projector_length_mismatch() {
        let err = group_projector_diagonal(0..2, &[Projection::Up], 3).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 2,
                actual: 1
            }
        ));
    }
}

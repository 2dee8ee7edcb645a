//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair `(p, q)`. For a Hermitian
//! matrix the 2x2 pivot block is
//!
//! ```text
//! [ a_pp      a_pq ]          a_pp, a_qq real,  a_pq = |a_pq| e^{i phi}
//! [ conj(a_pq) a_qq ]
//! ```
//!
//! and the phase can be folded into the rotation: with `tau = (a_qq - a_pp) /
//! (2 |a_pq|)`, `t = sign(tau) / (|tau| + sqrt(1 + tau^2))`, `c = 1 / sqrt(1 +
//! t^2)`, `s = t c`, the unitary that zeroes the pivot is the identity except
//!
//! ```text
//! J[p][p] = c    J[p][q] = s
//! J[q][p] = -s e^{-i phi}    J[q][q] = c e^{-i phi}
//! ```
//!
//! Sweeps repeat until the off-diagonal Frobenius mass drops below
//! `1e-14 * ||A||_F`, with a hard cap of 100 sweeps (quadratic convergence
//! makes 5-10 sweeps typical at the dimensions this crate targets).

use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::hermitian::HermitianMatrix;
use super::MatError;

const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `A = U diag(eigenvalues) U*` with the eigenvalues
/// in ascending order and the columns of `U` as eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The eigenvector belonging to `eigenvalues()[k]` (column `k` of `U`).
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// Rebuilds `U diag(f(lambda)) U*`, exactly symmetrized.
    pub fn apply_scalar(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.rebuild_with(&mapped)
    }

    /// Rebuilds `U diag(values) U*` from one precomputed value per eigenvalue.
    pub fn rebuild_with(&self, values: &[f64]) -> HermitianMatrix {
        assert_eq!(values.len(), self.dim());
        let n = self.dim();
        let u = &self.eigenvectors;
        let raw = ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| u.get(i, k) * values[k] * u.get(j, k).conj())
                .sum()
        });
        HermitianMatrix::symmetrize(raw)
    }

    /// `U diag(eigenvalues) U*`; for residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_scalar(|l| l).matrix().clone()
    }

    pub(crate) fn scale(&self, t: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|&l| l * t).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Degenerate spectra leave the eigenbasis non-unique; callers must treat `U`
/// as *some* orthonormal eigenbasis and only rely on functions of the matrix.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<EigenDecomposition, MatError> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut u = ComplexMatrix::identity(n);
    let norm_a = m.frobenius_norm();
    let target = OFF_DIAGONAL_TOLERANCE * norm_a;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&m);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(MatError::NonConvergence { sweeps, off });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut u, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).re.total_cmp(&m.get(j, j).re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| u.get(i, order[j]));

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += 2.0 * m.get(i, j).norm_sqr();
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing the `(p, q)` entry in place, with the
/// eigenvector accumulator updated by the same unitary.
fn rotate(m: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = m.get(p, q);
    let abs_beta = beta.norm();
    if abs_beta == 0.0 {
        return;
    }
    let phase = beta / abs_beta; // e^{i phi}
    let alpha = m.get(p, p).re;
    let gamma = m.get(q, q).re;
    let tau = (gamma - alpha) / (2.0 * abs_beta);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let jqp = -phase.conj() * s; // J[q][p]
    let jqq = phase.conj() * c; // J[q][q]
    let n = m.dim();

    // M <- M J (columns p, q).
    for r in 0..n {
        let vp = m.get(r, p);
        let vq = m.get(r, q);
        m.set(r, p, vp * c + vq * jqp);
        m.set(r, q, vp * s + vq * jqq);
    }
    // M <- J* M (rows p, q).
    for r in 0..n {
        let wp = m.get(p, r);
        let wq = m.get(q, r);
        m.set(p, r, wp * c + wq * jqp.conj());
        m.set(q, r, wp * s + wq * jqq.conj());
    }
    // The pivot pair is analytically zero; clear the roundoff residue and
    // keep the diagonal exactly real.
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));
    m.set(p, p, Complex64::new(m.get(p, p).re, 0.0));
    m.set(q, q, Complex64::new(m.get(q, q).re, 0.0));

    // U <- U J.
    for r in 0..n {
        let vp = u.get(r, p);
        let vq = u.get(r, q);
        u.set(r, p, vp * c + vq * jqp);
        u.set(r, q, vp * s + vq * jqq);
    }
}

//! Seeded random matrices: Haar-ish unitaries, Hermitian samples, and
//! positive definite matrices with a prescribed spectrum range.
//!
//! Streams come from ChaCha8 keyed by the caller's seed, so every generator
//! is deterministic for a fixed seed and stable across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::complex::{vec_inner, vec_norm, ComplexMatrix};
use super::hermitian::{HermitianMatrix, PDMatrix};
use super::MatError;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// A random unitary: orthonormalized columns of a seeded complex Gaussian
/// matrix (two Gram-Schmidt passes for stability). The distribution is
/// adequately generic for test sampling; no exact Haar claim is made.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_for(seed ^ 0xa5a5_5a5a_1234_5678);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let mut j = 0;
    while j < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(&mut rng)).collect();
        for _pass in 0..2 {
            for q in cols.iter() {
                let coeff = vec_inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q.iter()) {
                    *vi -= coeff * qi;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm < 1e-8 {
            continue; // essentially impossible; redraw the column
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        cols.push(v);
        j += 1;
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// A random unit vector in `C^dim`.
pub fn random_unit_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = rng_for(seed ^ 0x5ee4_11fe_0987_abcd);
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian(&mut rng)).collect();
        let norm = vec_norm(&v);
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// A random Hermitian matrix with independent Gaussian entries of the given
/// scale (diagonal real, off-diagonal complex, exactly symmetrized).
pub fn random_hermitian(dim: usize, seed: u64, scale: f64) -> HermitianMatrix {
    let mut rng = rng_for(seed ^ 0x03c9_77ef_55aa_0011);
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        m.set(i, i, Complex64::new(scale * d, 0.0));
        for j in i + 1..dim {
            let z = gaussian(&mut rng) * scale;
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    HermitianMatrix::symmetrize(m)
}

/// A seeded random positive definite matrix with spectrum inside
/// `[lambda_lo, lambda_hi]`, built as `lo*I + U diag(lambda_i - lo) U*` with
/// a random unitary `U`. Writing the `lo*I` shift separately keeps the
/// degenerate range `lo == hi` exact (the output is then exactly `lo * I`).
pub fn random_pd(dim: usize, seed: u64, lambda_lo: f64, lambda_hi: f64) -> Result<PDMatrix, MatError> {
    if dim == 0 {
        return Err(MatError::ZeroDimension);
    }
    if !(lambda_lo > 0.0 && lambda_lo <= lambda_hi && lambda_hi.is_finite()) {
        return Err(MatError::InvalidRange {
            lo: lambda_lo,
            hi: lambda_hi,
        });
    }
    let mut rng = rng_for(seed ^ 0xbead_cafe_f00d_4242);
    let shifts: Vec<f64> = (0..dim)
        .map(|_| (lambda_hi - lambda_lo) * rng.random::<f64>())
        .collect();
    let u = random_unitary(dim, rng.random::<u64>());
    let psd = ComplexMatrix::from_fn(dim, |i, j| {
        (0..dim)
            .map(|k| u.get(i, k) * shifts[k] * u.get(j, k).conj())
            .sum()
    });
    let mut shifted = psd;
    for i in 0..dim {
        let v = shifted.get(i, i) + lambda_lo;
        shifted.set(i, i, v);
    }
    PDMatrix::new(HermitianMatrix::symmetrize(shifted))
}

/// A seeded random positive *semi*definite Hermitian matrix with spectrum in
/// `[0, lambda_hi]`; used to build Loewner-ordered pairs `C = B + PSD`.
pub fn random_psd(dim: usize, seed: u64, lambda_hi: f64) -> HermitianMatrix {
    let mut rng = rng_for(seed ^ 0x7777_1111_dddd_9999);
    let values: Vec<f64> = (0..dim).map(|_| lambda_hi * rng.random::<f64>()).collect();
    let u = random_unitary(dim, rng.random::<u64>());
    let raw = ComplexMatrix::from_fn(dim, |i, j| {
        (0..dim)
            .map(|k| u.get(i, k) * values[k] * u.get(j, k).conj())
            .sum()
    });
    HermitianMatrix::symmetrize(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{eig_hermitian, loewner_leq};

    #[test]
    fn unitary_is_orthonormal() {
        for dim in 1..=6 {
            let u = random_unitary(dim, 7 + dim as u64);
            let gram = &u.adjoint() * &u;
            assert!(gram.dist(&ComplexMatrix::identity(dim)) < 1e-12);
        }
    }

    #[test]
    fn random_pd_is_deterministic() {
        let a = random_pd(3, 7, 0.5, 5.0).unwrap();
        let b = random_pd(3, 7, 0.5, 5.0).unwrap();
        assert_eq!(a.matrix().entries(), b.matrix().entries());
        let c = random_pd(3, 8, 0.5, 5.0).unwrap();
        assert!(a.matrix().dist(c.matrix()) > 1e-6);
    }

    #[test]
    fn random_pd_respects_spectrum_bounds() {
        for seed in 0..20 {
            let p = random_pd(4, seed, 0.5, 5.0).unwrap();
            let lo = HermitianMatrix::from_diag(&[0.5; 4]);
            assert!(loewner_leq(&lo, p.hermitian(), 0.0), "seed {seed}");
            let hi = HermitianMatrix::from_diag(&[5.0; 4]);
            assert!(loewner_leq(p.hermitian(), &hi, 1e-12), "seed {seed}");
        }
    }

    #[test]
    fn degenerate_range_is_exact() {
        let p = random_pd(1, 99, 2.0, 2.0).unwrap();
        assert_eq!(p.matrix().get(0, 0), Complex64::new(2.0, 0.0));
        let q = random_pd(3, 5, 2.0, 2.0).unwrap();
        assert_eq!(q.matrix().entries(), ComplexMatrix::diag_real(&[2.0; 3]).entries());
    }

    #[test]
    fn invalid_ranges_rejected() {
        assert!(random_pd(2, 1, 0.0, 1.0).is_err());
        assert!(random_pd(2, 1, 2.0, 1.0).is_err());
        assert!(random_pd(0, 1, 1.0, 2.0).is_err());
    }

    #[test]
    fn psd_sample_is_nonnegative() {
        for seed in 0..10 {
            let p = random_psd(3, seed, 2.0);
            let d = eig_hermitian(&p).unwrap();
            assert!(d.eigenvalues()[0] >= -1e-13);
        }
    }
}

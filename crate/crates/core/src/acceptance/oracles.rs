//! Independent numerical oracles used by the acceptance suite and tests.
//!
//! These deliberately avoid the eigendecomposition route the propagator is
//! built on: the matrix exponential here is scaling-and-squaring with a
//! Pade(13) approximant (Higham 2005), so agreement between the two is a
//! genuine cross-check rather than a self-comparison.

use nalgebra::{Complex, DMatrix, DVector};

use crate::model::{BasisSpec, QuantumState};
use crate::scalar::{real, Scalar};

/// Pade(13) numerator/denominator coefficients.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Threshold on the scaled 1-norm for the Pade(13) approximant.
const THETA13: f64 = 5.371920351148152;

fn one_norm<T: Scalar>(a: &DMatrix<Complex<T>>) -> T {
    let mut worst = T::zero();
    for j in 0..a.ncols() {
        let mut sum = T::zero();
        for i in 0..a.nrows() {
            sum += crate::scalar::cmod(a[(i, j)]);
        }
        if sum > worst {
            worst = sum;
        }
    }
    worst
}

/// `exp(A)` for a general complex square matrix.
pub fn matrix_exponential<T: Scalar>(a: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix exponential needs a square matrix");
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }

    let norm = crate::scalar::to_f64(one_norm(a));
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex::new(real::<T>(1.0 / f64::powi(2.0, squarings as i32)), T::zero());
    let a_scaled = a * scale;

    let id = DMatrix::<Complex<T>>::identity(n, n);
    let a2 = &a_scaled * &a_scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let c = |k: usize| Complex::new(real::<T>(PADE13[k]), T::zero());

    let u_inner = &a6 * c(13) + &a4 * c(11) + &a2 * c(9);
    let u_poly = &a6 * &u_inner + &a6 * c(7) + &a4 * c(5) + &a2 * c(3) + &id * c(1);
    let u = &a_scaled * u_poly;
    let v_inner = &a6 * c(12) + &a4 * c(10) + &a2 * c(8);
    let v = &a6 * v_inner + &a6 * c(6) + &a4 * c(4) + &a2 * c(2) + &id * c(0);

    let numerator = &v + &u;
    let denominator = &v - &u;
    let mut result = denominator
        .lu()
        .solve(&numerator)
        .expect("Pade denominator is invertible");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// One-shot evolution `exp(-i H t) psi`, independent of the stepped
/// propagator.
pub fn one_shot_evolution<T: Scalar>(
    h: &DMatrix<Complex<T>>,
    t: T,
    psi: &DVector<Complex<T>>,
) -> DVector<Complex<T>> {
    let generator = h * Complex::new(T::zero(), -t);
    matrix_exponential(&generator) * psi
}

/// Upper-left projection of a Fock Hamiltonian onto its one-excitation
/// sector, reordered to match the single-excitation basis.
pub fn one_excitation_sector<T: Scalar>(
    fock_h: &DMatrix<Complex<T>>,
    basis: &BasisSpec,
) -> DMatrix<Complex<T>> {
    let indices = basis.one_excitation_indices();
    DMatrix::from_fn(indices.len(), indices.len(), |a, b| fock_h[(indices[a], indices[b])])
}

/// Largest amplitude difference between two states, ignoring basis tags.
pub fn max_amplitude_difference<T: Scalar>(a: &QuantumState<T>, b: &DVector<Complex<T>>) -> T {
    a.amplitudes()
        .iter()
        .zip(b.iter())
        .map(|(x, y)| crate::scalar::cmod(x - y))
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let z = DMatrix::<Complex<f64>>::zeros(4, 4);
        let e = matrix_exponential(&z);
        let err = (&e - DMatrix::<Complex<f64>>::identity(4, 4))
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-14);
    }

    #[test]
    fn exponential_of_diagonal() {
        let mut a = DMatrix::<Complex<f64>>::zeros(2, 2);
        a[(0, 0)] = c64(1.0, 0.0);
        a[(1, 1)] = c64(0.0, std::f64::consts::PI);
        let e = matrix_exponential(&a);
        assert!((e[(0, 0)].re - 1.0f64.exp()).abs() < 1e-13);
        assert!((e[(1, 1)].re + 1.0).abs() < 1e-13); // e^{i pi} = -1
        assert!(e[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn exponential_needs_scaling_for_large_norm() {
        let mut a = DMatrix::<Complex<f64>>::zeros(2, 2);
        a[(0, 1)] = c64(0.0, -40.0);
        a[(1, 0)] = c64(0.0, -40.0);
        // exp(-i 40 sigma_x): cos(40) on the diagonal
        let e = matrix_exponential(&a);
        assert!((e[(0, 0)].re - 40.0f64.cos()).abs() < 1e-11);
        assert!((e[(0, 1)].im + 40.0f64.sin()).abs() < 1e-11);
    }

    #[test]
    fn rotation_matches_pauli_formula() {
        let theta = 0.7f64;
        let mut a = DMatrix::<Complex<f64>>::zeros(2, 2);
        a[(0, 1)] = c64(0.0, -theta);
        a[(1, 0)] = c64(0.0, -theta);
        let e = matrix_exponential(&a);
        assert!((e[(0, 0)].re - theta.cos()).abs() < 1e-14);
        assert!((e[(0, 1)].im + theta.sin()).abs() < 1e-14);
    }
}

//! Coupling matrix and Hamiltonian builders.
//!
//! The spin-cavity coupling is a 2 x N complex matrix: the cw row carries
//! `g e^{+i phi_m}`, the ccw row `g e^{-i phi_m}`. The single-excitation
//! Hamiltonian is the (N+2) x (N+2) block matrix with the mode and spin
//! energies on the diagonal and the coupling matrix in the off-diagonal
//! block; the Fock builder realizes the full rotating-wave Hamiltonian on
//! the truncated tensor basis.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::model::basis::BasisSpec;
use crate::model::system::SystemSpec;
use crate::scalar::Scalar;

/// The 2 x N spin-cavity coupling matrix together with `g_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingMatrix<T: Scalar> {
    matrix: DMatrix<Complex<T>>,
    collective_coupling: T,
}

impl<T: Scalar> CouplingMatrix<T> {
    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn collective_coupling(&self) -> T {
        self.collective_coupling
    }

    pub fn spin_count(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Build the coupling matrix of a system.
///
/// Entry `(0, m)` is `g e^{+i phi_m}` and entry `(1, m)` is `g e^{-i phi_m}`
/// with `g = g_c / sqrt(N)`.
pub fn build_coupling_matrix<T: Scalar>(spec: &SystemSpec<T>) -> CouplingMatrix<T> {
    let g = spec.coupling();
    let n = spec.spins().count();
    let matrix = DMatrix::from_fn(2, n, |row, m| {
        let phase = spec.spins().phase(m);
        let (sin, cos) = phase.sin_cos();
        if row == 0 {
            Complex::new(g * cos, g * sin)
        } else {
            Complex::new(g * cos, -(g * sin))
        }
    });
    CouplingMatrix { matrix, collective_coupling: spec.collective_coupling() }
}

/// Dense Hermitian matrix tagged with its basis and whether the underlying
/// system varies in time.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianMatrix<T: Scalar> {
    matrix: DMatrix<Complex<T>>,
    basis: BasisSpec,
    time_dependent: bool,
}

impl<T: Scalar> HamiltonianMatrix<T> {
    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.matrix
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn is_time_dependent(&self) -> bool {
        self.time_dependent
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Largest entry of `|H - H^dagger|`; zero for an exactly Hermitian matrix.
pub fn hermiticity_error<T: Scalar>(matrix: &DMatrix<Complex<T>>) -> T {
    let mut worst = T::zero();
    for i in 0..matrix.nrows() {
        for j in i..matrix.ncols() {
            let d = crate::scalar::cmod(matrix[(i, j)] - matrix[(j, i)].conj());
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Single-excitation Hamiltonian at time `t`.
///
/// Diagonal: `(w_c, w_c, w_a + D_0(t), ..., w_a + D_{N-1}(t))`; off-diagonal
/// blocks are the coupling matrix and its adjoint.
pub fn build_single_excitation_hamiltonian<T: Scalar>(
    spec: &SystemSpec<T>,
    t: T,
) -> Result<HamiltonianMatrix<T>> {
    let n = spec.spins().count();
    let coupling = build_coupling_matrix(spec);
    let g = coupling.matrix();
    let omega_c = spec.cavity().frequency();
    let omega_a = spec.spins().base_frequency();

    let mut h = DMatrix::zeros(n + 2, n + 2);
    h[(0, 0)] = Complex::new(omega_c, T::zero());
    h[(1, 1)] = Complex::new(omega_c, T::zero());
    for m in 0..n {
        let detuning = spec.detuning(m, t)?;
        h[(m + 2, m + 2)] = Complex::new(omega_a + detuning, T::zero());
        for row in 0..2 {
            h[(row, m + 2)] = g[(row, m)];
            h[(m + 2, row)] = g[(row, m)].conj();
        }
    }
    Ok(HamiltonianMatrix {
        matrix: h,
        basis: BasisSpec::single_excitation(n),
        time_dependent: spec.time_dependent(),
    })
}

/// Full rotating-wave Hamiltonian on a truncated Fock basis at time `t`.
///
/// Commutes with the total excitation number; the basis dimension guard has
/// already been applied when `basis` was constructed.
pub fn build_fock_hamiltonian<T: Scalar>(
    spec: &SystemSpec<T>,
    basis: &BasisSpec,
    t: T,
) -> Result<HamiltonianMatrix<T>> {
    let BasisSpec::Fock { spins, photon_cutoff } = *basis else {
        return Err(Error::BasisMismatch(
            "build_fock_hamiltonian needs a Fock basis".into(),
        ));
    };
    if spins != spec.spins().count() {
        return Err(Error::BasisMismatch(format!(
            "basis has {spins} spins, system has {}",
            spec.spins().count()
        )));
    }

    let coupling = build_coupling_matrix(spec);
    let g = coupling.matrix();
    let omega_c = spec.cavity().frequency();
    let omega_a = spec.spins().base_frequency();
    let detunings: Vec<T> = (0..spins)
        .map(|m| spec.detuning(m, t))
        .collect::<Result<_>>()?;

    let dim = basis.dimension();
    let mut h = DMatrix::<Complex<T>>::zeros(dim, dim);
    for index in 0..dim {
        let (n_cw, n_ccw, bits) = basis.fock_unpack(index);
        let mut diag = omega_c * crate::scalar::real::<T>((n_cw + n_ccw) as f64);
        for m in 0..spins {
            if basis.spin_bit(bits, m) {
                diag += omega_a + detunings[m];
            }
        }
        h[(index, index)] = Complex::new(diag, T::zero());

        // photon emission: a_mode^dagger S_m^- lowers spin m, raises a mode
        for m in 0..spins {
            if !basis.spin_bit(bits, m) {
                continue;
            }
            let lowered = bits & !(1 << (spins - 1 - m));
            for (mode, n_mode) in [(0usize, n_cw), (1usize, n_ccw)] {
                if n_mode >= photon_cutoff {
                    continue;
                }
                let target = if mode == 0 {
                    basis.fock_index(n_cw + 1, n_ccw, lowered)
                } else {
                    basis.fock_index(n_cw, n_ccw + 1, lowered)
                };
                let root = crate::scalar::real::<T>(((n_mode + 1) as f64).sqrt());
                let amp = g[(mode, m)] * Complex::new(root, T::zero());
                h[(target, index)] += amp;
                h[(index, target)] += amp.conj();
            }
        }
    }

    Ok(HamiltonianMatrix {
        matrix: h,
        basis: *basis,
        time_dependent: spec.time_dependent(),
    })
}

/// Diagonal of the total excitation number operator in a Fock basis.
pub fn excitation_number_diagonal<T: Scalar>(basis: &BasisSpec) -> Vec<T> {
    (0..basis.dimension())
        .map(|i| crate::scalar::real(basis.excitation_number(i) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::schedule::DetuningSchedule;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn sorted_eigenvalues(h: &HamiltonianMatrix<f64>) -> Vec<f64> {
        let mut evs: Vec<f64> = h
            .matrix()
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        evs
    }

    #[test]
    fn coupling_matrix_single_spin() {
        let spec = SystemSpec::uniform_chain(1, 0.0f64, 1.0).unwrap();
        let g = build_coupling_matrix(&spec);
        assert_eq!(g.matrix()[(0, 0)], Complex::new(1.0, 0.0));
        assert_eq!(g.matrix()[(1, 0)], Complex::new(1.0, 0.0));
        assert_eq!(g.collective_coupling(), 1.0);
    }

    #[test]
    fn coupling_matrix_quarter_wave_pair() {
        let spec = SystemSpec::uniform_chain(2, FRAC_PI_2, 1.0).unwrap();
        let g = build_coupling_matrix(&spec);
        let eps = 1e-15;
        assert!((g.matrix()[(0, 1)] - Complex::new(0.0, 1.0)).norm() < eps);
        assert!((g.matrix()[(1, 1)] - Complex::new(0.0, -1.0)).norm() < eps);
        assert!((g.matrix()[(0, 0)] - Complex::new(1.0, 0.0)).norm() < eps);
    }

    #[test]
    fn coupling_matrix_four_spins_cycle() {
        let spec = SystemSpec::uniform_chain(4, FRAC_PI_2, 1.0).unwrap();
        let g = build_coupling_matrix(&spec);
        let expect = [
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, -1.0),
        ];
        for (m, e) in expect.iter().enumerate() {
            assert!((g.matrix()[(0, m)] - e).norm() < 1e-15, "cw row, spin {m}");
            assert!((g.matrix()[(1, m)] - e.conj()).norm() < 1e-15, "ccw row, spin {m}");
        }
    }

    #[test]
    fn single_spin_spectrum() {
        let spec = SystemSpec::uniform_chain(1, 0.0f64, 1.0).unwrap();
        let h = build_single_excitation_hamiltonian(&spec, 0.0).unwrap();
        let evs = sorted_eigenvalues(&h);
        let r2 = std::f64::consts::SQRT_2;
        for (ev, expect) in evs.iter().zip([-r2, 0.0, r2]) {
            assert!((ev - expect).abs() < 1e-12, "{evs:?}");
        }
    }

    #[test]
    fn four_spin_spectra_at_special_phases() {
        let spec = SystemSpec::uniform_chain(4, 0.0f64, 0.5).unwrap(); // g_c = 1
        let evs = sorted_eigenvalues(&build_single_excitation_hamiltonian(&spec, 0.0).unwrap());
        let r2 = std::f64::consts::SQRT_2;
        let expect = [-r2, 0.0, 0.0, 0.0, 0.0, r2];
        for (ev, e) in evs.iter().zip(expect) {
            assert!((ev - e).abs() < 1e-12, "{evs:?}");
        }

        let spec = SystemSpec::uniform_chain(4, FRAC_PI_2, 0.5).unwrap();
        let evs = sorted_eigenvalues(&build_single_excitation_hamiltonian(&spec, 0.0).unwrap());
        let expect = [-1.0, -1.0, 0.0, 0.0, 1.0, 1.0];
        for (ev, e) in evs.iter().zip(expect) {
            assert!((ev - e).abs() < 1e-12, "{evs:?}");
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_and_respects_schedules() {
        let spec = SystemSpec::uniform_chain(3, 0.7f64, 0.9)
            .unwrap()
            .with_spin_schedule(1, DetuningSchedule::linear_ramp(10.0, -5.0, 5.0).unwrap())
            .unwrap();
        let h = build_single_excitation_hamiltonian(&spec, 2.5).unwrap();
        assert!(hermiticity_error(h.matrix()) == 0.0);
        assert!(h.is_time_dependent());
        assert!((h.matrix()[(3, 3)].re - (-2.5)).abs() < 1e-12);
        assert!(build_single_excitation_hamiltonian(&spec, 11.0).is_err());
    }

    #[test]
    fn fock_dimension_and_hermiticity() {
        let spec = SystemSpec::uniform_chain(2, PI / 3.0, 1.0).unwrap();
        let basis = BasisSpec::fock(2, 2).unwrap();
        let h = build_fock_hamiltonian(&spec, &basis, 0.0).unwrap();
        assert_eq!(h.dimension(), 36);
        assert_eq!(hermiticity_error(h.matrix()), 0.0);
    }

    #[test]
    fn fock_commutes_with_excitation_number() {
        let spec = SystemSpec::uniform_chain(3, 0.4f64, 0.8).unwrap();
        let basis = BasisSpec::fock(3, 2).unwrap();
        let h = build_fock_hamiltonian(&spec, &basis, 0.0).unwrap();
        let n_exc = excitation_number_diagonal::<f64>(&basis);
        // [H, N] entry (i, j) is H_ij (N_j - N_i)
        let mut worst = 0.0f64;
        for i in 0..h.dimension() {
            for j in 0..h.dimension() {
                let c = h.matrix()[(i, j)].norm() * (n_exc[j] - n_exc[i]).abs();
                worst = worst.max(c);
            }
        }
        assert!(worst < 1e-12, "commutator norm {worst}");
    }

    #[test]
    fn fock_one_excitation_sector_matches_single_excitation() {
        let spec = SystemSpec::uniform_chain(3, 1.1f64, 0.7)
            .unwrap()
            .with_spin_schedule(0, DetuningSchedule::constant(0.3))
            .unwrap();
        let basis = BasisSpec::fock(3, 2).unwrap();
        let full = build_fock_hamiltonian(&spec, &basis, 0.0).unwrap();
        let small = build_single_excitation_hamiltonian(&spec, 0.0).unwrap();
        let sector = basis.one_excitation_indices();
        for (a, &ia) in sector.iter().enumerate() {
            for (b, &ib) in sector.iter().enumerate() {
                let d = (full.matrix()[(ia, ib)] - small.matrix()[(a, b)]).norm();
                assert!(d < 1e-12, "sector mismatch at ({a}, {b})");
            }
        }
    }

    #[test]
    fn fock_needs_fock_basis() {
        let spec = SystemSpec::uniform_chain(2, 0.0f64, 1.0).unwrap();
        let basis = BasisSpec::single_excitation(2);
        assert!(build_fock_hamiltonian(&spec, &basis, 0.0).is_err());
    }
}

//! Polariton structure of the coupled system.
//!
//! The 2 x N coupling matrix has at most two nonzero singular values
//! `lambda_+- = g_c sqrt(1 +- |s|)` where `s` is the structure factor of the
//! chain. The singular value decomposition splits the spin space into two
//! bright collective modes (one per polariton pair) and an `N - rank` dark
//! remainder that is fully decoupled from the cavity.

use nalgebra::{Complex, DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{build_coupling_matrix, build_single_excitation_hamiltonian, CouplingMatrix,
    DetuningSchedule, SystemSpec};
use crate::scalar::{real, to_f64, Scalar};

/// Structure factor of an evenly spaced chain: `(1/N) sum_m e^{2 i m dphi}`.
///
/// Vanishes exactly at `dphi = j pi / N` for `j` not a multiple of `N`,
/// which is where the two polariton pairs become degenerate.
pub fn structure_factor<T: Scalar>(count: usize, interval_phase: T) -> Complex<T> {
    assert!(count >= 1, "structure factor needs at least one spin");
    let mut sum = Complex::new(T::zero(), T::zero());
    for m in 0..count {
        let arg = interval_phase * real::<T>(2.0 * m as f64);
        let (sin, cos) = arg.sin_cos();
        sum += Complex::new(cos, sin);
    }
    sum / Complex::new(real::<T>(count as f64), T::zero())
}

/// Singular value decomposition of the coupling matrix, organized into
/// polariton data.
///
/// `spin_modes` holds the right singular vectors as columns: the two bright
/// modes first (plus slot, then minus slot), then an orthonormal basis of
/// the dark subspace. When the two singular values are degenerate the bright
/// pair is an arbitrary orthonormal basis of the bright plane and
/// `degenerate` is set.
#[derive(Clone, Debug)]
pub struct PolaritonDecomposition<T: Scalar> {
    lambda_plus: T,
    lambda_minus: T,
    cavity_modes: DMatrix<Complex<T>>,
    spin_modes: DMatrix<Complex<T>>,
    structure_factor: Complex<T>,
    collective_coupling: T,
    rank: usize,
    degenerate: bool,
}

/// Bright collective modes paired by the decomposition.
#[derive(Clone, Debug)]
pub struct CollectiveModes<T: Scalar> {
    pub cavity_plus: DVector<Complex<T>>,
    pub cavity_minus: DVector<Complex<T>>,
    pub spin_plus: DVector<Complex<T>>,
    /// Absent for a single spin, where only one singular value exists.
    pub spin_minus: Option<DVector<Complex<T>>>,
    pub degenerate: bool,
}

impl<T: Scalar> PolaritonDecomposition<T> {
    pub fn lambda_plus(&self) -> T {
        self.lambda_plus
    }

    pub fn lambda_minus(&self) -> T {
        self.lambda_minus
    }

    /// 2 x 2 unitary of cavity-mode singular vectors (columns).
    pub fn cavity_modes(&self) -> &DMatrix<Complex<T>> {
        &self.cavity_modes
    }

    /// N x N unitary of spin-mode singular vectors (columns).
    pub fn spin_modes(&self) -> &DMatrix<Complex<T>> {
        &self.spin_modes
    }

    pub fn structure_factor(&self) -> Complex<T> {
        self.structure_factor
    }

    pub fn collective_coupling(&self) -> T {
        self.collective_coupling
    }

    /// Number of singular values above `RANK_TOL * g_c`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The bright cavity and spin modes.
    pub fn collective_modes(&self) -> CollectiveModes<T> {
        let n = self.spin_modes.nrows();
        CollectiveModes {
            cavity_plus: self.cavity_modes.column(0).into_owned(),
            cavity_minus: self.cavity_modes.column(1).into_owned(),
            spin_plus: self.spin_modes.column(0).into_owned(),
            spin_minus: (n >= 2).then(|| self.spin_modes.column(1).into_owned()),
            degenerate: self.degenerate,
        }
    }

    /// Orthonormal basis of the dark subspace; every vector `v` satisfies
    /// `||G v|| < RANK_TOL * g_c`. Count is `N - rank`.
    pub fn dark_state_basis(&self) -> Vec<DVector<Complex<T>>> {
        let n = self.spin_modes.nrows();
        (self.rank..n)
            .map(|j| self.spin_modes.column(j).into_owned())
            .collect()
    }

    /// `U Lambda W^dagger`, for reconstruction checks.
    pub fn reconstruct(&self) -> DMatrix<Complex<T>> {
        let n = self.spin_modes.nrows();
        let mut lambda = DMatrix::<Complex<T>>::zeros(2, n);
        lambda[(0, 0)] = Complex::new(self.lambda_plus, T::zero());
        if n >= 2 {
            lambda[(1, 1)] = Complex::new(self.lambda_minus, T::zero());
        }
        &self.cavity_modes * lambda * self.spin_modes.adjoint()
    }
}

/// Decompose a coupling matrix into polariton data via numerical SVD.
pub fn polariton_decomposition<T: Scalar>(
    coupling: &CouplingMatrix<T>,
) -> PolaritonDecomposition<T> {
    let g = coupling.matrix();
    let n = g.ncols();
    let g_c = coupling.collective_coupling();

    // structure factor read off Sigma_c = G G^dagger = g_c^2 [[1, s], [s*, 1]]
    let sigma_c = g * g.adjoint();
    let s = sigma_c[(0, 1)] / Complex::new(g_c * g_c, T::zero());

    let svd = g.clone().svd(true, true);
    let u_econ = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^t");
    let k = svd.singular_values.len().min(2);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("singular values are finite")
    });

    let lambda_plus = svd.singular_values[order[0]];
    let lambda_minus = if k >= 2 { svd.singular_values[order[1]] } else { T::zero() };

    let mut cavity_modes = DMatrix::<Complex<T>>::zeros(2, 2);
    for (slot, &src) in order.iter().enumerate() {
        cavity_modes.set_column(slot, &u_econ.column(src));
    }
    if k < 2 {
        // lone singular vector: complete the 2 x 2 unitary orthogonally
        let u0 = cavity_modes.column(0).into_owned();
        let perp = DVector::from_vec(vec![-u0[1].conj(), u0[0].conj()]);
        cavity_modes.set_column(1, &perp);
    }

    let mut spin_modes = DMatrix::<Complex<T>>::zeros(n, n);
    for (slot, &src) in order.iter().enumerate() {
        let w = v_t.row(src).adjoint();
        spin_modes.set_column(slot, &w);
    }
    complete_orthonormal(&mut spin_modes, k);

    let rank_tol = real::<T>(T::RANK_TOL) * g_c;
    let rank = [lambda_plus, lambda_minus]
        .iter()
        .take(n.min(2))
        .filter(|&&l| l > rank_tol)
        .count();
    let degenerate = (lambda_plus - lambda_minus).abs() < real::<T>(T::DEGENERACY_TOL) * g_c;

    PolaritonDecomposition {
        lambda_plus,
        lambda_minus,
        cavity_modes,
        spin_modes,
        structure_factor: s,
        collective_coupling: g_c,
        rank,
        degenerate,
    }
}

/// Fill columns `filled..` with an orthonormal completion of the first
/// `filled` columns, chosen deterministically from canonical basis vectors.
fn complete_orthonormal<T: Scalar>(matrix: &mut DMatrix<Complex<T>>, filled: usize) {
    let n = matrix.nrows();
    let mut have = filled;
    while have < n {
        let mut best: Option<(T, DVector<Complex<T>>)> = None;
        for seed in 0..n {
            let mut v = DVector::<Complex<T>>::zeros(n);
            v[seed] = Complex::new(T::one(), T::zero());
            for j in 0..have {
                let col = matrix.column(j);
                let proj = col.dotc(&v);
                v -= col.into_owned() * proj;
            }
            let norm = v.norm();
            if best.as_ref().map_or(true, |(b, _)| norm > *b) {
                best = Some((norm, v));
            }
        }
        let (norm, mut v) = best.expect("candidate exists");
        v /= Complex::new(norm, T::zero());
        // second Gram-Schmidt pass for orthogonality at working precision
        for j in 0..have {
            let col = matrix.column(j).into_owned();
            let proj = col.dotc(&v);
            v -= col * proj;
        }
        v /= Complex::new(v.norm(), T::zero());
        matrix.set_column(have, &v);
        have += 1;
    }
}

/// Eigenvalue table over a `(dphi, delta_a)` grid.
///
/// Eigenvalues are sorted ascending at each grid point; `degenerate_dphi`
/// marks interval phases where the two polariton pairs coincide.
#[derive(Clone, Debug)]
pub struct SpectrumTable<T: Scalar> {
    dphi: Vec<T>,
    delta_a: Vec<T>,
    eigenvalues: Vec<Vec<T>>,
    degenerate_dphi: Vec<bool>,
    levels: usize,
}

impl<T: Scalar> SpectrumTable<T> {
    pub fn dphi_grid(&self) -> &[T] {
        &self.dphi
    }

    pub fn delta_a_grid(&self) -> &[T] {
        &self.delta_a
    }

    /// Number of levels per grid point (`N + 2`).
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn eigenvalues_at(&self, dphi_index: usize, delta_a_index: usize) -> &[T] {
        &self.eigenvalues[dphi_index * self.delta_a.len() + delta_a_index]
    }

    /// Indices into the dphi grid where the polariton pairs are degenerate.
    pub fn degeneracy_indices(&self) -> Vec<usize> {
        self.degenerate_dphi
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| d.then_some(i))
            .collect()
    }

    /// CSV rows `dphi, delta_a, ev_0..ev_{levels-1}` (dphi-major order).
    pub fn to_csv<W: std::io::Write>(&self, writer: &mut W) -> std::io::Result<()> {
        write!(writer, "dphi,delta_a")?;
        for k in 0..self.levels {
            write!(writer, ",ev_{k}")?;
        }
        writeln!(writer)?;
        for (i, p) in self.dphi.iter().enumerate() {
            for (j, d) in self.delta_a.iter().enumerate() {
                write!(writer, "{},{}", to_f64(*p), to_f64(*d))?;
                for ev in self.eigenvalues_at(i, j) {
                    write!(writer, ",{}", to_f64(*ev))?;
                }
                writeln!(writer)?;
            }
        }
        Ok(())
    }
}

/// System template for spectrum sweeps: the chain is rebuilt at each grid
/// phase with a uniform detuning applied to every spin.
#[derive(Clone, Copy, Debug)]
pub struct SweepTemplate<T> {
    pub spin_count: usize,
    pub coupling: T,
    pub cavity_frequency: T,
    pub base_frequency: T,
}

impl<T: Scalar> SweepTemplate<T> {
    /// `count` spins in `g_c = 1` units at the zero-frequency baseline.
    pub fn unit_gc(count: usize) -> Self {
        Self {
            spin_count: count,
            coupling: T::one() / real::<T>(count as f64).sqrt(),
            cavity_frequency: T::zero(),
            base_frequency: T::zero(),
        }
    }

    fn build(&self, dphi: T, delta_a: T) -> Result<SystemSpec<T>> {
        let mut spins = crate::model::SpinArray::evenly_spaced(
            self.spin_count,
            dphi,
            self.base_frequency,
        )?;
        for m in 0..self.spin_count {
            spins = spins.with_schedule(m, DetuningSchedule::constant(delta_a))?;
        }
        SystemSpec::new(
            spins,
            crate::model::CavityPair::new(self.cavity_frequency),
            self.coupling,
        )
    }
}

/// Diagonalize the single-excitation Hamiltonian over a phase/detuning grid.
///
/// Grid points are independent and evaluated in parallel; results are
/// gathered by grid index, so the table does not depend on scheduling.
pub fn energy_spectrum_sweep<T: Scalar>(
    template: &SweepTemplate<T>,
    dphi_grid: &[T],
    delta_a_grid: &[T],
) -> Result<SpectrumTable<T>> {
    assert!(
        !dphi_grid.is_empty() && !delta_a_grid.is_empty(),
        "sweep grids must be non-empty"
    );
    let levels = template.spin_count + 2;

    let per_phase: Vec<(bool, Vec<Vec<T>>)> = dphi_grid
        .par_iter()
        .map(|&dphi| {
            let spec = template.build(dphi, T::zero())?;
            let decomp = polariton_decomposition(&build_coupling_matrix(&spec));
            let rows = delta_a_grid
                .iter()
                .map(|&da| {
                    let spec = template.build(dphi, da)?;
                    let h = build_single_excitation_hamiltonian(&spec, T::zero())?;
                    let mut evs: Vec<T> = h
                        .matrix()
                        .clone()
                        .symmetric_eigen()
                        .eigenvalues
                        .iter()
                        .copied()
                        .collect();
                    evs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
                    Ok(evs)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((decomp.is_degenerate(), rows))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut degenerate_dphi = Vec::with_capacity(dphi_grid.len());
    let mut eigenvalues = Vec::with_capacity(dphi_grid.len() * delta_a_grid.len());
    for (degenerate, rows) in per_phase {
        degenerate_dphi.push(degenerate);
        eigenvalues.extend(rows);
    }

    Ok(SpectrumTable {
        dphi: dphi_grid.to_vec(),
        delta_a: delta_a_grid.to_vec(),
        eigenvalues,
        degenerate_dphi,
        levels,
    })
}

/// Normalization convention for the photon-mediated flip-flop amplitude.
///
/// The cosine structure (and in particular its quarter-wavelength nulls) is
/// the physically verified content; the overall prefactor depends on how the
/// conjugate terms are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CouplingNormalization {
    /// `J = 2 g^2 cos(phi_i - phi_j)`: one cw plus one ccw exchange path.
    #[default]
    PerSpin,
    /// `J = 4 g_c^2 cos(phi_i - phi_j)`: collective prefactor with the
    /// conjugate terms folded in.
    Collective,
}

/// Effective photon-mediated flip-flop amplitude between spins `i` and `j`,
/// using the default per-spin normalization.
pub fn effective_coupling<T: Scalar>(spec: &SystemSpec<T>, i: usize, j: usize) -> Result<T> {
    effective_coupling_with(spec, i, j, CouplingNormalization::PerSpin)
}

/// Effective flip-flop amplitude with an explicit normalization convention.
///
/// Zero exactly when `phi_i - phi_j` is an odd multiple of `pi/2`: spins a
/// quarter wavelength apart sit at nodes of the standing wave the two modes
/// form, so photon exchange between them cancels.
pub fn effective_coupling_with<T: Scalar>(
    spec: &SystemSpec<T>,
    i: usize,
    j: usize,
    normalization: CouplingNormalization,
) -> Result<T> {
    let count = spec.spins().count();
    for idx in [i, j] {
        if idx >= count {
            return Err(Error::SpinIndex { index: idx, count });
        }
    }
    if i == j {
        return Err(Error::SameSpin(i));
    }
    let phase = spec.spins().phase(i) - spec.spins().phase(j);
    let g = spec.coupling();
    let g_c = spec.collective_coupling();
    let prefactor = match normalization {
        CouplingNormalization::PerSpin => real::<T>(2.0) * g * g,
        CouplingNormalization::Collective => real::<T>(4.0) * g_c * g_c,
    };
    Ok(prefactor * phase.cos())
}

/// Physical coupling rate from cavity cooperativity and linewidths:
/// `g = sqrt(C Gamma kappa) / 2`, in the same angular-frequency convention
/// as the inputs.
pub fn platform_coupling<T: Scalar>(
    cooperativity: T,
    spin_linewidth: T,
    cavity_linewidth: T,
) -> Result<T> {
    for (name, v) in [
        ("cooperativity", cooperativity),
        ("spin linewidth", spin_linewidth),
        ("cavity linewidth", cavity_linewidth),
    ] {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::Domain(format!(
                "{name} must be positive and finite, got {}",
                to_f64(v)
            )));
        }
    }
    Ok((cooperativity * spin_linewidth * cavity_linewidth).sqrt() * real(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unit_gc_chain(n: usize, dphi: f64) -> SystemSpec<f64> {
        SystemSpec::uniform_chain_unit_gc(n, dphi).unwrap()
    }

    #[test]
    fn structure_factor_special_values() {
        assert!((structure_factor(4, 0.0f64) - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!(structure_factor(4, FRAC_PI_2).norm() < 1e-15);
        assert!(structure_factor(3, PI / 3.0).norm() < 1e-15);
    }

    #[test]
    fn singular_values_match_structure_factor_formula() {
        // dark pair at dphi = 0
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(4, 0.0)));
        assert!((d.lambda_plus() - 2.0f64.sqrt()).abs() < 1e-12);
        assert!(d.lambda_minus().abs() < 1e-12);
        assert_eq!(d.rank(), 1);

        // degenerate pairs at dphi = pi/2
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(4, FRAC_PI_2)));
        assert!((d.lambda_plus() - 1.0).abs() < 1e-12);
        assert!((d.lambda_minus() - 1.0).abs() < 1e-12);
        assert!(d.is_degenerate());

        // generic point, checked against the direct sum
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(4, PI / 3.0)));
        let s = structure_factor(4, PI / 3.0).norm();
        assert!((s - 0.25).abs() < 1e-13);
        assert!((d.lambda_plus() - (1.0 + s).sqrt()).abs() < 1e-12);
        assert!((d.lambda_minus() - (1.0 - s).sqrt()).abs() < 1e-12);
        assert!(!d.is_degenerate());
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        for dphi in [0.0, 0.3, FRAC_PI_2, 2.2] {
            let g = build_coupling_matrix(&unit_gc_chain(5, dphi));
            let d = polariton_decomposition(&g);
            let err = (d.reconstruct() - g.matrix())
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
            assert!(err < 1e-12, "reconstruction error {err} at dphi = {dphi}");

            let w = d.spin_modes();
            let wtw = w.adjoint() * w;
            let id_err = (&wtw - DMatrix::<Complex<f64>>::identity(5, 5))
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
            assert!(id_err < 1e-12, "W not unitary at dphi = {dphi}: {id_err}");

            let u = d.cavity_modes();
            let utu = u.adjoint() * u;
            let id_err = (&utu - DMatrix::<Complex<f64>>::identity(2, 2))
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
            assert!(id_err < 1e-12, "U not unitary at dphi = {dphi}: {id_err}");
        }
    }

    #[test]
    fn dark_state_counts() {
        let dark = |n: usize, dphi: f64| {
            polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(n, dphi)))
                .dark_state_basis()
                .len()
        };
        assert_eq!(dark(4, FRAC_PI_2), 2);
        assert_eq!(dark(4, 0.0), 3); // rank 1 since lambda_minus = 0
        assert_eq!(dark(2, FRAC_PI_2), 0);
    }

    #[test]
    fn dark_states_are_decoupled() {
        let g = build_coupling_matrix(&unit_gc_chain(6, FRAC_PI_2));
        let d = polariton_decomposition(&g);
        for v in d.dark_state_basis() {
            let coupled = (g.matrix() * &v).norm();
            assert!(coupled < 1e-10, "dark vector couples with norm {coupled}");
        }
    }

    #[test]
    fn quarter_wave_bright_modes_live_on_alternating_sublattices() {
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(4, FRAC_PI_2)));
        let modes = d.collective_modes();
        assert!(modes.degenerate);
        // span test: both bright modes lie in span{(1,0,-1,0), (0,1,0,-1)}
        let basis = [
            DVector::from_vec(vec![
                Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex::new(0.0, 0.0),
            ]),
            DVector::from_vec(vec![
                Complex::new(0.0, 0.0),
                Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ]),
        ];
        for mode in [&modes.spin_plus, modes.spin_minus.as_ref().unwrap()] {
            let mut projected = DVector::<Complex<f64>>::zeros(4);
            for b in &basis {
                projected += b * b.dotc(mode);
            }
            assert!((projected - mode).norm() < 1e-10);
        }
    }

    #[test]
    fn two_spin_bright_mode_is_symmetric() {
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(2, 0.0)));
        let w = d.collective_modes().spin_plus;
        // proportional to (1, 1)/sqrt(2) up to a global phase
        let target = DVector::from_vec(vec![
            Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ]);
        assert!((w.dotc(&target).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collective_mode_formula_cross_check() {
        // |A_+-> ~ sum_m (e^{i m dphi} s* +- e^{-i m dphi} |s|) |A_m>,
        // valid away from s = 0
        let n = 4;
        let dphi = PI / 3.0;
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(n, dphi)));
        let s = structure_factor(n, dphi);
        for (sign, numeric) in [
            (1.0, d.spin_modes().column(0).into_owned()),
            (-1.0, d.spin_modes().column(1).into_owned()),
        ] {
            let mut analytic = DVector::<Complex<f64>>::zeros(n);
            for m in 0..n {
                let arg = dphi * m as f64;
                let fwd = Complex::new(arg.cos(), arg.sin());
                analytic[m] =
                    fwd * s.conj() + fwd.conj() * Complex::new(sign * s.norm(), 0.0);
            }
            analytic /= Complex::new(analytic.norm(), 0.0);
            let overlap = numeric.dotc(&analytic).norm();
            assert!(
                (overlap - 1.0).abs() < 1e-10,
                "analytic/numeric mismatch for sign {sign}: overlap {overlap}"
            );
        }
    }

    #[test]
    fn single_spin_decomposition() {
        let d = polariton_decomposition(&build_coupling_matrix(&unit_gc_chain(1, 0.0)));
        assert!((d.lambda_plus() - 2.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(d.lambda_minus(), 0.0);
        assert_eq!(d.rank(), 1);
        assert!(d.collective_modes().spin_minus.is_none());
        assert!(d.dark_state_basis().is_empty());
        let err = (d.reconstruct() - build_coupling_matrix(&unit_gc_chain(1, 0.0)).matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn spectrum_sweep_levels_and_degeneracies() {
        let template = SweepTemplate::unit_gc(4);
        let dphi: Vec<f64> = crate::util::linspace(0.0, PI, 201);
        let table = energy_spectrum_sweep(&template, &dphi, &[0.0]).unwrap();
        assert_eq!(table.levels(), 6);

        let evs = table.eigenvalues_at(0, 0);
        let r2 = std::f64::consts::SQRT_2;
        for (ev, e) in evs.iter().zip([-r2, 0.0, 0.0, 0.0, 0.0, r2]) {
            assert!((ev - e).abs() < 1e-12);
        }

        // interior degeneracies at pi/4, pi/2, 3pi/4
        let interior: Vec<usize> = table
            .degeneracy_indices()
            .into_iter()
            .filter(|&i| i != 0 && i != 200)
            .collect();
        assert_eq!(interior, vec![50, 100, 150]);
    }

    #[test]
    fn effective_coupling_nulls_and_signs() {
        let spec = SystemSpec::uniform_chain(4, FRAC_PI_2, 1.0).unwrap();
        assert!(effective_coupling(&spec, 0, 1).unwrap().abs() < 1e-12);
        assert!((effective_coupling(&spec, 0, 2).unwrap() - (-2.0)).abs() < 1e-12);
        let spec0 = SystemSpec::uniform_chain(2, 0.0f64, 1.0).unwrap();
        assert!((effective_coupling(&spec0, 0, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(
            effective_coupling(&spec, 1, 1),
            Err(Error::SameSpin(1))
        ));
        assert!(matches!(
            effective_coupling(&spec, 0, 9),
            Err(Error::SpinIndex { .. })
        ));
        // collective convention keeps the same nulls
        let j = effective_coupling_with(&spec, 0, 1, CouplingNormalization::Collective).unwrap();
        assert!(j.abs() < 1e-11);
        let j = effective_coupling_with(&spec0, 0, 1, CouplingNormalization::Collective).unwrap();
        assert!((j - 8.0).abs() < 1e-12); // 4 g_c^2 with g_c = sqrt(2)
    }

    #[test]
    fn platform_coupling_values() {
        // inputs in units of 2*pi MHz
        let g = platform_coupling(200.0f64, 0.18, 0.03).unwrap();
        assert!((g - 0.52).abs() < 0.005);
        assert!((g * 2.0 - 1.04).abs() < 0.01); // g_c for four spins
        assert_eq!(platform_coupling(4.0f64, 1.0, 1.0).unwrap(), 1.0);
        assert!(platform_coupling(-1.0f64, 1.0, 1.0).is_err());
        assert!(platform_coupling(1.0f64, 0.0, 1.0).is_err());
    }
}

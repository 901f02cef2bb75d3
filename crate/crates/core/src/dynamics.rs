//! Time evolution under static or scheduled Hamiltonians.
//!
//! The propagator is exact per step: each step applies the exponential of a
//! Hermitian generator, computed through an eigendecomposition, so the state
//! norm is preserved to working precision. Runs are split at schedule
//! breakpoints; within a piece where every detuning is constant a single
//! step operator is built once and reused. Time-dependent pieces are stepped
//! with a fourth-order commutator-free two-exponential scheme by default
//! (the plain midpoint exponential is available but its `O(dt^2)` error is
//! visible at the default step size), sampling the detunings at the
//! two-point Gauss nodes of each step.

use std::collections::HashMap;

use nalgebra::{Complex, ComplexField, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::{
    build_fock_hamiltonian, build_single_excitation_hamiltonian, BasisSpec, QuantumState,
    SystemSpec,
};
use crate::scalar::{abs2, real, to_f64, Scalar};

/// Integration rule for time-dependent pieces of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepMethod {
    /// Exact exponential of the midpoint Hamiltonian (second order).
    MidpointExponential,
    /// Fourth-order commutator-free Magnus scheme: two exponentials per
    /// step, Hamiltonian evaluated at the Gauss nodes.
    #[default]
    MagnusCf4,
}

/// Step size, sampling stride, and stepping rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropagatorSettings<T> {
    /// Step size in `1/g_c`.
    pub dt: T,
    /// Populations are sampled every this many steps.
    pub sampling_stride: usize,
    pub method: StepMethod,
}

impl<T: Scalar> Default for PropagatorSettings<T> {
    fn default() -> Self {
        Self { dt: real(1e-3), sampling_stride: 100, method: StepMethod::default() }
    }
}

impl<T: Scalar> PropagatorSettings<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::Domain(format!(
                "step size must be positive and finite, got {}",
                to_f64(self.dt)
            )));
        }
        if self.sampling_stride == 0 {
            return Err(Error::Domain("sampling stride must be at least 1".into()));
        }
        Ok(())
    }

    /// Trajectory time resolution `dt * sampling_stride`.
    pub fn sample_resolution(&self) -> T {
        self.dt * real(self.sampling_stride as f64)
    }

    pub fn with_dt(mut self, dt: T) -> Self {
        self.dt = dt;
        self
    }
}

/// Expectation values of the standard observables in a state.
#[derive(Clone, Debug, PartialEq)]
pub struct Populations<T> {
    pub spins: Vec<T>,
    pub cw_photons: T,
    pub ccw_photons: T,
}

/// Spin populations and photon numbers of a state.
pub fn populations<T: Scalar>(state: &QuantumState<T>) -> Populations<T> {
    let basis = state.basis();
    let amps = state.amplitudes();
    match *basis {
        BasisSpec::SingleExcitation { spins } => Populations {
            spins: (0..spins).map(|m| abs2(amps[m + 2])).collect(),
            cw_photons: abs2(amps[0]),
            ccw_photons: abs2(amps[1]),
        },
        BasisSpec::Fock { spins, .. } => {
            let mut rho = vec![T::zero(); spins];
            let mut cw = T::zero();
            let mut ccw = T::zero();
            for (index, amp) in amps.iter().enumerate() {
                let p = abs2(*amp);
                if p == T::zero() {
                    continue;
                }
                let (n_cw, n_ccw, bits) = basis.fock_unpack(index);
                cw += p * real(n_cw as f64);
                ccw += p * real(n_ccw as f64);
                for (m, r) in rho.iter_mut().enumerate() {
                    if basis.spin_bit(bits, m) {
                        *r += p;
                    }
                }
            }
            Populations { spins: rho, cw_photons: cw, ccw_photons: ccw }
        }
    }
}

/// Pure-state fidelity `|<target|state>|^2`.
pub fn fidelity<T: Scalar>(state: &QuantumState<T>, target: &QuantumState<T>) -> Result<T> {
    Ok(abs2(target.overlap(state)?))
}

/// A named observable that is diagonal in the computational basis.
#[derive(Clone, Debug)]
pub struct DiagonalObservable<T> {
    pub name: String,
    pub weights: Vec<T>,
}

impl<T: Scalar> DiagonalObservable<T> {
    /// Projector onto a set of basis indices.
    pub fn projector(name: impl Into<String>, basis: &BasisSpec, indices: &[usize]) -> Self {
        let mut weights = vec![T::zero(); basis.dimension()];
        for &i in indices {
            weights[i] = T::one();
        }
        Self { name: name.into(), weights }
    }

    /// Total-excitation-number observable for a Fock basis.
    pub fn excitation_number(basis: &BasisSpec) -> Self {
        Self {
            name: "n_exc".into(),
            weights: crate::model::excitation_number_diagonal(basis),
        }
    }

    fn expectation(&self, amps: &DVector<Complex<T>>) -> T {
        amps.iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (a, w)| acc + *w * abs2(*a))
    }
}

/// Time-sampled populations, photon numbers, fidelities, and optional extra
/// diagonal observables.
#[derive(Clone, Debug)]
pub struct Trajectory<T: Scalar> {
    times: Vec<T>,
    spin_populations: Vec<Vec<T>>,
    cw_photons: Vec<T>,
    ccw_photons: Vec<T>,
    fidelities: Vec<Vec<T>>,
    custom: Vec<Vec<T>>,
    custom_names: Vec<String>,
    norm_error: T,
    sample_resolution: T,
    final_state: QuantumState<T>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn time(&self, sample: usize) -> T {
        self.times[sample]
    }

    pub fn spin_count(&self) -> usize {
        self.spin_populations.first().map_or(0, Vec::len)
    }

    pub fn target_count(&self) -> usize {
        self.fidelities.first().map_or(0, Vec::len)
    }

    pub fn spin_population(&self, sample: usize, spin: usize) -> T {
        self.spin_populations[sample][spin]
    }

    pub fn cw_photons(&self, sample: usize) -> T {
        self.cw_photons[sample]
    }

    pub fn ccw_photons(&self, sample: usize) -> T {
        self.ccw_photons[sample]
    }

    pub fn fidelity(&self, sample: usize, target: usize) -> T {
        self.fidelities[sample][target]
    }

    pub fn custom_names(&self) -> &[String] {
        &self.custom_names
    }

    pub fn custom(&self, sample: usize, observable: usize) -> T {
        self.custom[sample][observable]
    }

    /// Largest observed deviation of the state norm from one.
    pub fn norm_error(&self) -> T {
        self.norm_error
    }

    /// Time resolution of the samples; bounds the accuracy of `t_at_max`.
    pub fn sample_resolution(&self) -> T {
        self.sample_resolution
    }

    pub fn final_state(&self) -> &QuantumState<T> {
        &self.final_state
    }

    /// Largest sampled population of one spin.
    pub fn max_spin_population(&self, spin: usize) -> T {
        self.spin_populations
            .iter()
            .map(|row| row[spin])
            .fold(T::zero(), T::max)
    }

    /// Largest sampled fidelity against a target and the time it occurs.
    pub fn max_fidelity(&self, target: usize) -> Result<(T, T)> {
        if self.times.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        self.check_target(target)?;
        let (mut best, mut at) = (self.fidelities[0][target], self.times[0]);
        for (t, row) in self.times.iter().zip(&self.fidelities) {
            if row[target] > best {
                best = row[target];
                at = *t;
            }
        }
        Ok((best, at))
    }

    /// Fidelity against a target at the final sample.
    pub fn final_fidelity(&self, target: usize) -> Result<T> {
        if self.times.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        self.check_target(target)?;
        Ok(self.fidelities.last().expect("non-empty")[target])
    }

    fn check_target(&self, target: usize) -> Result<()> {
        if target >= self.target_count() {
            return Err(Error::ConfigMismatch(format!(
                "target index {target} out of range for {} targets",
                self.target_count()
            )));
        }
        Ok(())
    }

    /// CSV rows `t, rho_0..rho_{N-1}, n_cw, n_ccw, F_0..F_{K-1}`.
    pub fn to_csv<W: std::io::Write>(&self, writer: &mut W) -> std::io::Result<()> {
        write!(writer, "t")?;
        for m in 0..self.spin_count() {
            write!(writer, ",rho_{m}")?;
        }
        write!(writer, ",n_cw,n_ccw")?;
        for k in 0..self.target_count() {
            write!(writer, ",F_{k}")?;
        }
        writeln!(writer)?;
        for (k, t) in self.times.iter().enumerate() {
            write!(writer, "{}", to_f64(*t))?;
            for rho in &self.spin_populations[k] {
                write!(writer, ",{}", to_f64(*rho))?;
            }
            write!(writer, ",{},{}", to_f64(self.cw_photons[k]), to_f64(self.ccw_photons[k]))?;
            for f in &self.fidelities[k] {
                write!(writer, ",{}", to_f64(*f))?;
            }
            writeln!(writer)?;
        }
        Ok(())
    }
}

/// Exponential of `-i H dt` through the eigendecomposition of a Hermitian
/// `H`; building the operator once per static piece keeps long runs cheap.
struct HermitianPropagator<T: Scalar> {
    eigenvalues: DVector<T>,
    eigenvectors: DMatrix<Complex<T>>,
}

impl<T: Scalar> HermitianPropagator<T> {
    fn new(h: DMatrix<Complex<T>>) -> Self {
        let eig = h.symmetric_eigen();
        Self { eigenvalues: eig.eigenvalues, eigenvectors: eig.eigenvectors }
    }

    fn operator(&self, dt: T) -> DMatrix<Complex<T>> {
        let n = self.eigenvectors.nrows();
        let mut scaled = self.eigenvectors.clone();
        for j in 0..n {
            let phase = ComplexField::exp(Complex::new(T::zero(), -(self.eigenvalues[j] * dt)));
            for i in 0..n {
                scaled[(i, j)] *= phase;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }
}

/// One-off step operator for a Hermitian generator.
fn step_operator<T: Scalar>(h: DMatrix<Complex<T>>, dt: T) -> DMatrix<Complex<T>> {
    HermitianPropagator::new(h).operator(dt)
}

struct StaticPiece<T: Scalar> {
    piece_end: T,
    propagator: HermitianPropagator<T>,
    operators: HashMap<u64, DMatrix<Complex<T>>>,
}

/// Evolve a state under the system Hamiltonian over `[0, t_final]`.
///
/// Fidelities are recorded against each state in `targets`; all of them must
/// live in the same basis as `state0`.
pub fn evolve<T: Scalar>(
    state0: &QuantumState<T>,
    spec: &SystemSpec<T>,
    targets: &[QuantumState<T>],
    settings: &PropagatorSettings<T>,
    t_final: T,
) -> Result<Trajectory<T>> {
    evolve_with_observables(state0, spec, targets, &[], settings, t_final)
}

/// [`evolve`] with extra diagonal observables sampled along the trajectory.
pub fn evolve_with_observables<T: Scalar>(
    state0: &QuantumState<T>,
    spec: &SystemSpec<T>,
    targets: &[QuantumState<T>],
    observables: &[DiagonalObservable<T>],
    settings: &PropagatorSettings<T>,
    t_final: T,
) -> Result<Trajectory<T>> {
    settings.validate()?;
    if !(t_final > T::zero()) || !t_final.is_finite() {
        return Err(Error::Domain(format!(
            "final time must be positive and finite, got {}",
            to_f64(t_final)
        )));
    }
    let basis = *state0.basis();
    if basis.spins() != spec.spins().count() {
        return Err(Error::BasisMismatch(format!(
            "basis has {} spins, system has {}",
            basis.spins(),
            spec.spins().count()
        )));
    }
    for target in targets {
        if target.basis() != &basis {
            return Err(Error::BasisMismatch(
                "targets must share the initial state's basis".into(),
            ));
        }
    }
    for obs in observables {
        if obs.weights.len() != basis.dimension() {
            return Err(Error::BasisMismatch(format!(
                "observable '{}' has {} weights for dimension {}",
                obs.name,
                obs.weights.len(),
                basis.dimension()
            )));
        }
    }
    let norm = state0.norm();
    if (norm - T::one()).abs() > real(T::STATE_NORM_TOL) {
        return Err(Error::Normalization { norm: to_f64(norm) });
    }
    spec.schedules_cover(t_final)?;

    let hamiltonian_at = |t: T| -> Result<DMatrix<Complex<T>>> {
        // clamp to the run window so grid roundoff cannot leave the domain
        let t = t.max(T::zero()).min(t_final);
        match basis {
            BasisSpec::SingleExcitation { .. } => {
                Ok(build_single_excitation_hamiltonian(spec, t)?.into_matrix())
            }
            BasisSpec::Fock { .. } => Ok(build_fock_hamiltonian(spec, &basis, t)?.into_matrix()),
        }
    };

    // global step grid, split additionally at schedule breakpoints
    let dt = settings.dt;
    let ratio = to_f64(t_final / dt);
    let n_steps = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) {
        (ratio.round() as usize).max(1)
    } else {
        ratio.ceil() as usize
    };
    let step_time = |k: usize| -> T {
        if k >= n_steps {
            t_final
        } else {
            (dt * real(k as f64)).min(t_final)
        }
    };
    let mut breakpoints: Vec<T> = spec
        .spins()
        .schedules()
        .iter()
        .flat_map(|s| s.breakpoints())
        .filter(|&b| b > T::zero() && b < t_final)
        .collect();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let merge_tol = dt * real(1e-6);
    breakpoints.dedup_by(|a, b| (*a - *b).abs() < merge_tol);

    let targets_amps: Vec<&DVector<Complex<T>>> =
        targets.iter().map(|t| t.amplitudes()).collect();

    let mut times = Vec::new();
    let mut spin_populations = Vec::new();
    let mut cw_photons = Vec::new();
    let mut ccw_photons = Vec::new();
    let mut fidelities = Vec::new();
    let mut custom = Vec::new();
    let mut norm_error = T::zero();

    let mut psi = state0.amplitudes().clone();
    let hard_norm_limit = real::<T>(T::RUN_NORM_TOL).sqrt();

    {
        let mut record = |t: T, psi: &DVector<Complex<T>>| -> Result<()> {
            let norm_dev = (psi.norm() - T::one()).abs();
            if norm_dev > norm_error {
                norm_error = norm_dev;
            }
            if norm_dev > hard_norm_limit {
                return Err(Error::Numerical(format!(
                    "norm drifted by {} at t = {}",
                    to_f64(norm_dev),
                    to_f64(t)
                )));
            }
            let state = QuantumState::from_raw(psi.clone(), basis);
            let p = populations(&state);
            times.push(t);
            spin_populations.push(p.spins);
            cw_photons.push(p.cw_photons);
            ccw_photons.push(p.ccw_photons);
            fidelities.push(targets_amps.iter().map(|t| abs2(t.dotc(psi))).collect());
            custom.push(observables.iter().map(|o| o.expectation(psi)).collect());
            Ok(())
        };

        record(T::zero(), &psi)?;

        let mut static_piece: Option<StaticPiece<T>> = None;
        let mut bp_cursor = 0usize;

        for k in 0..n_steps {
            let t0 = step_time(k);
            let t1 = step_time(k + 1);

            // boundaries of this step, including any schedule breakpoints
            let mut nodes = vec![t0];
            while bp_cursor < breakpoints.len() && breakpoints[bp_cursor] < t1 {
                if breakpoints[bp_cursor] > t0 {
                    nodes.push(breakpoints[bp_cursor]);
                }
                bp_cursor += 1;
            }
            nodes.push(t1);

            for pair in nodes.windows(2) {
                let (u, v) = (pair[0], pair[1]);
                let h = v - u;
                if !(h > T::zero()) {
                    continue;
                }
                let is_static = spec
                    .spins()
                    .schedules()
                    .iter()
                    .all(|s| s.is_constant_over(u, v));
                if is_static {
                    let rebuild = match &static_piece {
                        Some(piece) => v > piece.piece_end,
                        None => true,
                    };
                    if rebuild {
                        let piece_end = breakpoints
                            .iter()
                            .copied()
                            .find(|&b| b > u)
                            .unwrap_or(t_final);
                        static_piece = Some(StaticPiece {
                            piece_end,
                            propagator: HermitianPropagator::new(hamiltonian_at(
                                (u + v) * real(0.5),
                            )?),
                            operators: HashMap::new(),
                        });
                    }
                    let piece = static_piece.as_mut().expect("just built");
                    let op = piece
                        .operators
                        .entry(to_f64(h).to_bits())
                        .or_insert_with(|| piece.propagator.operator(h));
                    psi = &*op * psi;
                } else {
                    match settings.method {
                        StepMethod::MidpointExponential => {
                            let hm = hamiltonian_at((u + v) * real(0.5))?;
                            psi = step_operator(hm, h) * psi;
                        }
                        StepMethod::MagnusCf4 => {
                            // Gauss nodes c = 1/2 -+ sqrt(3)/6 and weights
                            // 1/4 -+ sqrt(3)/6; the first exponential weights
                            // the earlier node more.
                            let root3_6 = real::<T>(3.0).sqrt() / real::<T>(6.0);
                            let half = real::<T>(0.5);
                            let quarter = real::<T>(0.25);
                            let ha = hamiltonian_at(u + (half - root3_6) * h)?;
                            let hb = hamiltonian_at(u + (half + root3_6) * h)?;
                            let a1 = Complex::new(quarter - root3_6, T::zero());
                            let a2 = Complex::new(quarter + root3_6, T::zero());
                            let g_first = &ha * a2 + &hb * a1;
                            let g_second = &ha * a1 + &hb * a2;
                            psi = step_operator(g_first, h) * psi;
                            psi = step_operator(g_second, h) * psi;
                        }
                    }
                }
            }

            if (k + 1) % settings.sampling_stride == 0 || k + 1 == n_steps {
                record(step_time(k + 1), &psi)?;
            }
        }
    }

    let final_state = QuantumState::from_raw(psi, basis);
    Ok(Trajectory {
        times,
        spin_populations,
        cw_photons,
        ccw_photons,
        fidelities,
        custom,
        custom_names: observables.iter().map(|o| o.name.clone()).collect(),
        norm_error,
        sample_resolution: settings.sample_resolution(),
        final_state,
    })
}

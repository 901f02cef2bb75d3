//! Runnable transfer scenarios with built-in pass/fail checks.
//!
//! Every scenario works in `g_c = 1` units on an evenly spaced chain at
//! quarter-wavelength spacing (except transport, which takes the spacing as
//! a parameter). Spins at that spacing split into two groups that exchange
//! excitations only through their own cavity channel, so an entangled state
//! spanning the groups is carried between remote pairs without losing its
//! internal phase.
//!
//! A note on the directional variants: the transfer phase `theta` selects
//! which traveling mode carries the exciton, and `theta = +pi/2` drives the
//! cw channel. With the coupling-matrix convention used here (cw row
//! `e^{+i phi_m}`) that corresponds to the initial state
//! `(S_0^+ + e^{-i theta} S_1^+)|vac> / sqrt(2)`; targets carry the matching
//! internal phase, which the transfer preserves.

use nalgebra::Complex;
use rayon::prelude::*;

use crate::dynamics::{
    evolve_with_observables, DiagonalObservable, PropagatorSettings, Trajectory,
};
use crate::error::{Error, Result};
use crate::model::{BasisSpec, DetuningSchedule, ExcitationPattern, QuantumState, SystemSpec};
use crate::scalar::{real, to_f64, Scalar};

/// Stable string identifiers, used by the command-line frontend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioId {
    Transport,
    Transfer,
    GateSweep,
    Remote6,
    Stirap,
    StirapScan,
    MultiExc,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 7] = [
        Self::Transport,
        Self::Transfer,
        Self::GateSweep,
        Self::Remote6,
        Self::Stirap,
        Self::StirapScan,
        Self::MultiExc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Transport => "transport",
            Self::Transfer => "transfer",
            Self::GateSweep => "gate-sweep",
            Self::Remote6 => "remote6",
            Self::Stirap => "stirap",
            Self::StirapScan => "stirap-scan",
            Self::MultiExc => "multi-exc",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::ConfigMismatch(format!("unknown scenario '{s}'")))
    }
}

/// How a check value relates to its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    LessThan,
    AtLeast,
    GreaterThan,
}

impl Comparison {
    pub fn symbol(&self) -> &'static str {
        match self {
            Self::LessThan => "<",
            Self::AtLeast => ">=",
            Self::GreaterThan => ">",
        }
    }
}

/// One pass/fail gate evaluated by a scenario.
#[derive(Clone, Debug)]
pub struct Check<T> {
    pub name: String,
    pub comparison: Comparison,
    pub threshold: T,
    pub observed: T,
    pub passed: bool,
    /// Informational checks are recorded but do not gate `passed`.
    pub informational: bool,
}

impl<T: Scalar> Check<T> {
    fn gate(name: impl Into<String>, comparison: Comparison, threshold: T, observed: T) -> Self {
        let passed = match comparison {
            Comparison::LessThan => observed < threshold,
            Comparison::AtLeast => observed >= threshold,
            Comparison::GreaterThan => observed > threshold,
        };
        Self { name: name.into(), comparison, threshold, observed, passed, informational: false }
    }

    fn info(name: impl Into<String>, comparison: Comparison, threshold: T, observed: T) -> Self {
        Self { informational: true, ..Self::gate(name, comparison, threshold, observed) }
    }
}

fn all_pass<T: Scalar>(checks: &[Check<T>]) -> bool {
    checks.iter().all(|c| c.informational || c.passed)
}

/// Fidelity summary for one named target.
#[derive(Clone, Debug)]
pub struct TargetOutcome<T> {
    pub name: String,
    pub f_max: T,
    pub t_at_max: T,
    pub f_final: T,
}

/// A named target state.
#[derive(Clone, Debug)]
pub struct NamedTarget<T: Scalar> {
    pub name: String,
    pub state: QuantumState<T>,
}

/// Declarative description of a single scenario run.
#[derive(Clone, Debug)]
pub struct ScenarioConfig<T: Scalar> {
    pub scenario: ScenarioId,
    pub spec: SystemSpec<T>,
    pub basis: BasisSpec,
    pub initial_components: Vec<(Complex<T>, ExcitationPattern)>,
    pub targets: Vec<NamedTarget<T>>,
    pub t_final: T,
    pub settings: PropagatorSettings<T>,
}

impl<T: Scalar> ScenarioConfig<T> {
    pub fn initial_state(&self) -> Result<QuantumState<T>> {
        QuantumState::superposition(self.basis, &self.initial_components)
    }
}

/// Trajectory plus outcomes and the checks that gate the run.
#[derive(Clone, Debug)]
pub struct ScenarioReport<T: Scalar> {
    pub config: ScenarioConfig<T>,
    pub trajectory: Trajectory<T>,
    pub outcomes: Vec<TargetOutcome<T>>,
    pub checks: Vec<Check<T>>,
    pub passed: bool,
    /// Sampling resolution, which bounds the timing accuracy of `t_at_max`.
    pub sampling_resolution: T,
}

/// Execution knobs shared by every scenario.
#[derive(Clone, Copy, Debug)]
pub struct ProtocolOptions<T> {
    pub settings: PropagatorSettings<T>,
    /// Run window in `1/g_c`.
    pub window: T,
}

impl<T: Scalar> Default for ProtocolOptions<T> {
    fn default() -> Self {
        Self { settings: PropagatorSettings::default(), window: real(10.0) }
    }
}

impl<T: Scalar> ProtocolOptions<T> {
    pub fn with_window(mut self, window: T) -> Self {
        self.window = window;
        self
    }

    pub fn with_dt(mut self, dt: T) -> Self {
        self.settings.dt = dt;
        self
    }
}

fn run_config<T: Scalar>(
    config: ScenarioConfig<T>,
    observables: &[DiagonalObservable<T>],
) -> Result<(ScenarioConfig<T>, Trajectory<T>, Vec<TargetOutcome<T>>)> {
    let initial = config.initial_state()?;
    let target_states: Vec<QuantumState<T>> =
        config.targets.iter().map(|t| t.state.clone()).collect();
    let trajectory = evolve_with_observables(
        &initial,
        &config.spec,
        &target_states,
        observables,
        &config.settings,
        config.t_final,
    )?;
    let outcomes = config
        .targets
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let (f_max, t_at_max) = trajectory.max_fidelity(k)?;
            Ok(TargetOutcome {
                name: t.name.clone(),
                f_max,
                t_at_max,
                f_final: trajectory.final_fidelity(k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((config, trajectory, outcomes))
}

fn quarter_wave_chain<T: Scalar>(count: usize) -> Result<SystemSpec<T>> {
    SystemSpec::uniform_chain_unit_gc(count, T::frac_pi_2())
}

/// Entangled pair `(S_a^+ + e^{i phase} S_b^+)/sqrt(2)` as components.
fn pair_components<T: Scalar>(
    a: usize,
    b: usize,
    phase: T,
) -> Vec<(Complex<T>, ExcitationPattern)> {
    let (sin, cos) = phase.sin_cos();
    vec![
        (Complex::new(T::one(), T::zero()), ExcitationPattern::spin(a)),
        (Complex::new(cos, sin), ExcitationPattern::spin(b)),
    ]
}

fn pair_state<T: Scalar>(
    basis: BasisSpec,
    a: usize,
    b: usize,
    phase: T,
) -> Result<QuantumState<T>> {
    QuantumState::superposition(basis, &pair_components(a, b, phase))
}

/// Whether `x` is an odd multiple of `pi/2`, within a small tolerance.
fn is_odd_quarter_wave<T: Scalar>(x: T) -> bool {
    let ratio = to_f64(x / T::frac_pi_2());
    let nearest = ratio.round();
    (ratio - nearest).abs() < 1e-9 && (nearest as i64).rem_euclid(2) == 1
}

/// Exciton transport from spin 0 on a four-spin chain with spacing `dphi`.
///
/// At quarter-wavelength spacing the exciton stays on the even group; at
/// `dphi = 0` every spin joins the oscillation.
pub fn run_transport<T: Scalar>(
    dphi: T,
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    let n = 4;
    let spec = SystemSpec::uniform_chain_unit_gc(n, dphi)?;
    let basis = BasisSpec::single_excitation(n);
    let config = ScenarioConfig {
        scenario: ScenarioId::Transport,
        spec,
        basis,
        initial_components: vec![(
            Complex::new(T::one(), T::zero()),
            ExcitationPattern::spin(0),
        )],
        targets: Vec::new(),
        t_final: options.window,
        settings: options.settings,
    };
    let (config, trajectory, outcomes) = run_config(config, &[])?;

    let mut checks = Vec::new();
    if is_odd_quarter_wave(dphi) {
        let odd_max = (1..n)
            .step_by(2)
            .map(|m| trajectory.max_spin_population(m))
            .fold(T::zero(), T::max);
        checks.push(Check::gate(
            "odd_spin_population_max",
            Comparison::LessThan,
            real(1e-8),
            odd_max,
        ));
        checks.push(Check::gate(
            "partner_spin_visited",
            Comparison::GreaterThan,
            real(0.01),
            trajectory.max_spin_population(2),
        ));
    } else {
        let least_visited = (0..n)
            .map(|m| trajectory.max_spin_population(m))
            .fold(T::one(), T::min);
        checks.push(Check::gate(
            "every_spin_visited",
            Comparison::GreaterThan,
            real(0.01),
            least_visited,
        ));
    }

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

/// Entangled-state transfer `(0,1) -> (2,3)` on a four-spin chain.
///
/// `theta` is the directional phase: `0` uses both traveling modes equally,
/// `+pi/2` routes the exchange through the cw mode only, `-pi/2` through the
/// ccw mode only.
pub fn run_entangled_transfer<T: Scalar>(
    spin_count: usize,
    theta: T,
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    if spin_count % 2 == 1 {
        return Err(Error::ProtocolNotApplicable(
            "odd spin counts leave the polariton pairs non-degenerate, so the two groups \
             oscillate at different rates"
                .into(),
        ));
    }
    if spin_count != 4 {
        return Err(Error::ConfigMismatch(format!(
            "pair transfer is defined on a 4-spin chain, got {spin_count}"
        )));
    }
    let spec = quarter_wave_chain::<T>(4)?;
    let basis = BasisSpec::single_excitation(4);
    // theta = +pi/2 must drive the cw channel; with the cw coupling row
    // e^{+i phi_m} that fixes the internal phase to e^{-i theta}
    let internal = -theta;
    let config = ScenarioConfig {
        scenario: ScenarioId::Transfer,
        spec,
        basis,
        initial_components: pair_components(0, 1, internal),
        targets: vec![NamedTarget {
            name: "psi_1".into(),
            state: pair_state(basis, 2, 3, internal)?,
        }],
        t_final: options.window,
        settings: options.settings,
    };
    let (config, trajectory, outcomes) = run_config(config, &[])?;

    let theta_over_quarter = to_f64(theta / T::frac_pi_2());
    let mut checks = vec![Check::gate(
        "transfer_fidelity_max",
        Comparison::AtLeast,
        real(0.999),
        outcomes[0].f_max,
    )];
    let max_cw = (0..trajectory.len())
        .map(|k| trajectory.cw_photons(k))
        .fold(T::zero(), T::max);
    let max_ccw = (0..trajectory.len())
        .map(|k| trajectory.ccw_photons(k))
        .fold(T::zero(), T::max);
    if (theta_over_quarter - 1.0).abs() < 1e-9 {
        checks.push(Check::gate("ccw_photons_max", Comparison::LessThan, real(1e-8), max_ccw));
    } else if (theta_over_quarter + 1.0).abs() < 1e-9 {
        checks.push(Check::gate("cw_photons_max", Comparison::LessThan, real(1e-8), max_cw));
    } else if theta_over_quarter.abs() < 1e-9 {
        let imbalance = (0..trajectory.len())
            .map(|k| (trajectory.cw_photons(k) - trajectory.ccw_photons(k)).abs())
            .fold(T::zero(), T::max);
        checks.push(Check::gate(
            "photon_channel_balance",
            Comparison::LessThan,
            real(1e-8),
            imbalance,
        ));
        // the two groups oscillate in lockstep because the polariton pairs
        // are degenerate
        let even: Vec<T> = (0..trajectory.len())
            .map(|k| trajectory.spin_population(k, 0) + trajectory.spin_population(k, 2))
            .collect();
        let odd: Vec<T> = (0..trajectory.len())
            .map(|k| trajectory.spin_population(k, 1) + trajectory.spin_population(k, 3))
            .collect();
        if let (Some(pe), Some(po)) = (
            oscillation_period(trajectory.times(), &even),
            oscillation_period(trajectory.times(), &odd),
        ) {
            checks.push(Check::gate(
                "group_period_mismatch",
                Comparison::LessThan,
                real(1e-3),
                (pe / po - T::one()).abs(),
            ));
        }
    }

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

/// Variants of the beyond-maximal-entanglement run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiExcVariant {
    /// `0.6 S_0^+ + 0.8 S_1^+`, single-excitation basis.
    NonMaximal,
    /// `S_0^+ S_1^+ |vac>`, truncated Fock basis with the given cutoff.
    TwoExcitation { photon_cutoff: usize },
}

/// Transfer of a non-maximally entangled state or a two-excitation product
/// state across the two groups.
pub fn run_multi_excitation<T: Scalar>(
    variant: MultiExcVariant,
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    match variant {
        MultiExcVariant::NonMaximal => run_non_maximal(options),
        MultiExcVariant::TwoExcitation { photon_cutoff } => {
            run_two_excitation(photon_cutoff, options)
        }
    }
}

fn run_non_maximal<T: Scalar>(options: &ProtocolOptions<T>) -> Result<ScenarioReport<T>> {
    let spec = quarter_wave_chain::<T>(4)?;
    let basis = BasisSpec::single_excitation(4);
    let weights = |a: f64, sa: usize, b: f64, sb: usize| {
        vec![
            (Complex::new(real::<T>(a), T::zero()), ExcitationPattern::spin(sa)),
            (Complex::new(real::<T>(b), T::zero()), ExcitationPattern::spin(sb)),
        ]
    };
    let config = ScenarioConfig {
        scenario: ScenarioId::MultiExc,
        spec,
        basis,
        initial_components: weights(0.6, 0, 0.8, 1),
        targets: vec![NamedTarget {
            name: "psi_1".into(),
            state: QuantumState::superposition(basis, &weights(0.6, 2, 0.8, 3))?,
        }],
        t_final: options.window,
        settings: options.settings,
    };
    let (config, trajectory, outcomes) = run_config(config, &[])?;

    let mut checks = vec![Check::gate(
        "transfer_fidelity_max",
        Comparison::AtLeast,
        real(0.999),
        outcomes[0].f_max,
    )];
    // group bookkeeping: each group's population deficit is exactly what its
    // cavity channel holds, so the deficit never exceeds the photon number
    let mut worst = T::zero();
    for k in 0..trajectory.len() {
        let photons = trajectory.cw_photons(k) + trajectory.ccw_photons(k);
        let even = trajectory.spin_population(k, 0) + trajectory.spin_population(k, 2);
        let odd = trajectory.spin_population(k, 1) + trajectory.spin_population(k, 3);
        let even_excess = ((even - real(0.36)).abs() - photons).max(T::zero());
        let odd_excess = ((odd - real(0.64)).abs() - photons).max(T::zero());
        worst = worst.max(even_excess).max(odd_excess);
    }
    checks.push(Check::gate("group_share_excess", Comparison::LessThan, real(1e-9), worst));

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

fn run_two_excitation<T: Scalar>(
    photon_cutoff: usize,
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    if photon_cutoff < 2 {
        return Err(Error::BasisTooSmall { needed: 2, cutoff: photon_cutoff });
    }
    let spec = quarter_wave_chain::<T>(4)?;
    let basis = BasisSpec::fock(4, photon_cutoff)?;
    let config = ScenarioConfig {
        scenario: ScenarioId::MultiExc,
        spec,
        basis,
        initial_components: vec![(
            Complex::new(T::one(), T::zero()),
            ExcitationPattern::spins(&[0, 1]),
        )],
        targets: vec![NamedTarget {
            name: "psi_1".into(),
            state: QuantumState::from_pattern(basis, &ExcitationPattern::spins(&[2, 3]))?,
        }],
        t_final: options.window,
        settings: options.settings,
    };
    // basis states whose spin pattern holds two excitations inside one
    // group; any weight here means an exciton crossed groups
    let mixed: Vec<usize> = (0..basis.dimension())
        .filter(|&idx| {
            let (_, _, bits) = basis.fock_unpack(idx);
            let even = [0usize, 2].iter().filter(|&&m| basis.spin_bit(bits, m)).count();
            let odd = [1usize, 3].iter().filter(|&&m| basis.spin_bit(bits, m)).count();
            even >= 2 || odd >= 2
        })
        .collect();
    let observables = vec![
        DiagonalObservable::projector("same_group_double", &basis, &mixed),
        DiagonalObservable::excitation_number(&basis),
    ];
    let (config, trajectory, outcomes) = run_config(config, &observables)?;

    let leak = (0..trajectory.len())
        .map(|k| trajectory.custom(k, 0))
        .fold(T::zero(), T::max);
    let n_exc_drift = (0..trajectory.len())
        .map(|k| (trajectory.custom(k, 1) - real(2.0)).abs())
        .fold(T::zero(), T::max);
    let checks = vec![
        Check::gate(
            "transfer_fidelity_max",
            Comparison::AtLeast,
            real(0.99),
            outcomes[0].f_max,
        ),
        Check::gate("group_mixing_max", Comparison::LessThan, real(1e-8), leak),
        Check::gate("excitation_number_drift", Comparison::LessThan, real(1e-9), n_exc_drift),
    ];

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

/// One point of the detuning-gate curve.
#[derive(Clone, Copy, Debug)]
pub struct GateSweepPoint<T> {
    pub detuning: T,
    pub f_max: T,
    pub t_at_max: T,
}

/// Maximum transfer fidelity as a function of the detuning applied to the
/// target pair.
#[derive(Clone, Debug)]
pub struct GateSweepReport<T: Scalar> {
    pub points: Vec<GateSweepPoint<T>>,
    pub checks: Vec<Check<T>>,
    pub passed: bool,
}

/// Sweep the detuning gate: spins 2 and 3 are offset by a constant detuning
/// and the best fidelity of the transferred pair state within the window is
/// recorded per grid point.
pub fn run_detuning_gate_sweep<T: Scalar>(
    detuning_grid: &[T],
    options: &ProtocolOptions<T>,
) -> Result<GateSweepReport<T>> {
    if detuning_grid.is_empty() {
        return Err(Error::ConfigMismatch("detuning grid must be non-empty".into()));
    }
    let points: Vec<GateSweepPoint<T>> = detuning_grid
        .par_iter()
        .map(|&delta| {
            let (f_max, t_at_max) = detuned_pair_transfer_fidelity(delta, options)?;
            Ok(GateSweepPoint { detuning: delta, f_max, t_at_max })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let knee = real::<T>(7.5);
    let beyond: Vec<&GateSweepPoint<T>> =
        points.iter().filter(|p| p.detuning > knee).collect();
    if !beyond.is_empty() {
        let worst = beyond.iter().map(|p| p.f_max).fold(T::zero(), T::max);
        checks.push(Check::gate(
            "fidelity_beyond_7p5",
            Comparison::LessThan,
            real(0.01),
            worst,
        ));
        // the deeper suppression level is recorded but does not gate
        checks.push(Check::info(
            "fidelity_beyond_7p5_deep",
            Comparison::LessThan,
            real(1e-3),
            worst,
        ));
    }
    if let Some(at_zero) = points.iter().find(|p| p.detuning == T::zero()) {
        checks.push(Check::gate(
            "resonant_fidelity",
            Comparison::AtLeast,
            real(0.999),
            at_zero.f_max,
        ));
    }

    let passed = all_pass(&checks);
    Ok(GateSweepReport { points, checks, passed })
}

fn detuned_pair_transfer_fidelity<T: Scalar>(
    delta: T,
    options: &ProtocolOptions<T>,
) -> Result<(T, T)> {
    let mut spec = quarter_wave_chain::<T>(4)?;
    for m in [2, 3] {
        spec = spec.with_spin_schedule(m, DetuningSchedule::constant(delta))?;
    }
    let basis = BasisSpec::single_excitation(4);
    let initial = pair_state(basis, 0, 1, T::zero())?;
    let target = pair_state(basis, 2, 3, T::zero())?;
    let trajectory = evolve_with_observables(
        &initial,
        &spec,
        &[target],
        &[],
        &options.settings,
        options.window,
    )?;
    trajectory.max_fidelity(0)
}

/// Remote transfer across six spins: the pair `(1,2)` is carried to `(0,5)`
/// while the detuned pair `(3,4)` is frozen out.
///
/// The receiving pair picks up a relative minus sign: within the even group
/// the couplings of spins 2 and 0 have opposite signs (half-wavelength
/// separation), while the odd-group couplings of spins 1 and 5 are equal
/// (full wavelength), so one group's amplitude lands inverted.
pub fn run_remote_transfer_six_spins<T: Scalar>(
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    let mut spec = quarter_wave_chain::<T>(6)?;
    for m in [3, 4] {
        spec = spec.with_spin_schedule(m, DetuningSchedule::constant(real(10.0)))?;
    }
    let basis = BasisSpec::single_excitation(6);
    let minus = T::pi();
    let config = ScenarioConfig {
        scenario: ScenarioId::Remote6,
        spec,
        basis,
        initial_components: pair_components(1, 2, T::zero()),
        targets: vec![
            NamedTarget { name: "psi_05_minus".into(), state: pair_state(basis, 0, 5, minus)? },
            NamedTarget { name: "psi_05_plus".into(), state: pair_state(basis, 0, 5, T::zero())? },
        ],
        t_final: options.window,
        settings: options.settings,
    };
    let (config, trajectory, outcomes) = run_config(config, &[])?;

    let detuned_max = (0..trajectory.len())
        .map(|k| trajectory.spin_population(k, 3) + trajectory.spin_population(k, 4))
        .fold(T::zero(), T::max);
    // fidelity of the plus-sign target at the moment the minus-sign target
    // peaks; the printed sign is right only if this stays below the peak
    let t_peak = outcomes[0].t_at_max;
    let k_peak = trajectory
        .times()
        .iter()
        .position(|&t| t == t_peak)
        .expect("peak time is a sample");
    let plus_at_peak = trajectory.fidelity(k_peak, 1);

    let checks = vec![
        Check::gate(
            "remote_fidelity_max",
            Comparison::GreaterThan,
            real(0.999),
            outcomes[0].f_max,
        ),
        Check::gate(
            "detuned_pair_population_max",
            Comparison::LessThan,
            real(1e-3),
            detuned_max,
        ),
        Check::gate(
            "sign_separation",
            Comparison::GreaterThan,
            T::zero(),
            outcomes[0].f_max - plus_at_peak,
        ),
    ];

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

/// Adiabatic ramp transfer: the source pair is swept from `-delta0` to
/// `+delta0` while the target pair is swept from `+delta1` to `-delta1`,
/// carrying the entangled state deterministically to the target pair.
///
/// The reported quantity is the fidelity at the end of the ramp, not the
/// best value inside the window.
pub fn run_stirap<T: Scalar>(
    delta0: T,
    delta1: T,
    options: &ProtocolOptions<T>,
) -> Result<ScenarioReport<T>> {
    let ramp_time = options.window;
    let mut spec = quarter_wave_chain::<T>(4)?;
    for m in [0, 1] {
        let schedule = if delta0 == T::zero() {
            DetuningSchedule::constant(T::zero())
        } else {
            DetuningSchedule::linear_ramp(ramp_time, -delta0, delta0)?
        };
        spec = spec.with_spin_schedule(m, schedule)?;
    }
    for m in [2, 3] {
        let schedule = if delta1 == T::zero() {
            DetuningSchedule::constant(T::zero())
        } else {
            DetuningSchedule::linear_ramp(ramp_time, delta1, -delta1)?
        };
        spec = spec.with_spin_schedule(m, schedule)?;
    }
    let basis = BasisSpec::single_excitation(4);
    let config = ScenarioConfig {
        scenario: ScenarioId::Stirap,
        spec,
        basis,
        initial_components: pair_components(0, 1, T::zero()),
        targets: vec![NamedTarget {
            name: "psi_1".into(),
            state: pair_state(basis, 2, 3, T::zero())?,
        }],
        t_final: ramp_time,
        settings: options.settings,
    };
    let (config, trajectory, outcomes) = run_config(config, &[])?;

    let mut checks = Vec::new();
    let ten = real::<T>(10.0);
    let tol = real::<T>(1e-9);
    let final_f = outcomes[0].f_final;
    if (delta0 - ten).abs() < tol && (delta1 - ten).abs() < tol {
        checks.push(Check::gate("final_fidelity", Comparison::GreaterThan, real(0.999), final_f));
    } else if (delta0 - ten).abs() < tol {
        let ratio = to_f64(delta1 / delta0);
        if (0.5..=1.4).contains(&ratio) {
            checks.push(Check::gate(
                "final_fidelity_off_ratio",
                Comparison::GreaterThan,
                real(0.995),
                final_f,
            ));
        }
    }

    let passed = all_pass(&checks);
    Ok(ScenarioReport {
        sampling_resolution: trajectory.sample_resolution(),
        config,
        trajectory,
        outcomes,
        checks,
        passed,
    })
}

/// Final ramp-transfer fidelity over a grid of symmetric detunings.
#[derive(Clone, Debug)]
pub struct StirapScanReport<T: Scalar> {
    /// `(delta, final fidelity)` per grid point.
    pub points: Vec<(T, T)>,
    /// Grid point with the best final fidelity.
    pub best: (T, T),
    /// Grid deltas whose final fidelity clears 0.999.
    pub optimal_region: Vec<T>,
    pub checks: Vec<Check<T>>,
    pub passed: bool,
}

/// Scan `delta0 = delta1 = delta` over a grid and report the final-fidelity
/// curve together with the region clearing 0.999.
pub fn stirap_detuning_scan<T: Scalar>(
    delta_grid: &[T],
    options: &ProtocolOptions<T>,
) -> Result<StirapScanReport<T>> {
    if delta_grid.is_empty() {
        return Err(Error::ConfigMismatch("detuning grid must be non-empty".into()));
    }
    let points: Vec<(T, T)> = delta_grid
        .par_iter()
        .map(|&delta| {
            let report = run_stirap(delta, delta, options)?;
            Ok((delta, report.outcomes[0].f_final))
        })
        .collect::<Result<Vec<_>>>()?;

    let best = points
        .iter()
        .copied()
        .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite fidelity"))
        .expect("non-empty grid");
    let optimal_region: Vec<T> = points
        .iter()
        .filter(|(_, f)| *f > real(0.999))
        .map(|(d, _)| *d)
        .collect();

    let mut checks = Vec::new();
    let ten = real::<T>(10.0);
    if let Some((_, f)) = points.iter().find(|(d, _)| (*d - ten).abs() < real(1e-9)) {
        checks.push(Check::gate("fidelity_at_ten", Comparison::GreaterThan, real(0.999), *f));
    }

    let passed = all_pass(&checks);
    Ok(StirapScanReport { points, best, optimal_region, checks, passed })
}

/// Oscillation period of a sampled signal, from the first two interpolated
/// minima. `None` when fewer than two interior minima exist.
pub fn oscillation_period<T: Scalar>(times: &[T], signal: &[T]) -> Option<T> {
    let mut first = None;
    for k in 1..signal.len().saturating_sub(1) {
        if signal[k] <= signal[k - 1] && signal[k] <= signal[k + 1] {
            // parabolic refinement around the discrete minimum
            let denom = signal[k - 1] - signal[k] * real(2.0) + signal[k + 1];
            let shift = if denom.abs() > T::default_epsilon() {
                (signal[k - 1] - signal[k + 1]) / (real::<T>(2.0) * denom)
            } else {
                T::zero()
            };
            let dt = times[k + 1] - times[k];
            let t_min = times[k] + shift * dt;
            match first {
                None => first = Some((t_min, k)),
                Some((t0, k0)) if k > k0 + 1 => return Some(t_min - t0),
                Some(_) => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn options() -> ProtocolOptions<f64> {
        ProtocolOptions::default()
    }

    #[test]
    fn transport_grouping_and_spreading() {
        let grouped = run_transport(FRAC_PI_2, &options()).unwrap();
        assert!(grouped.passed, "checks: {:?}", grouped.checks);
        let spread = run_transport(0.0, &options()).unwrap();
        assert!(spread.passed, "checks: {:?}", spread.checks);
        // an odd multiple of pi/2 isolates just as well
        let wrapped = run_transport(3.0 * FRAC_PI_2, &options()).unwrap();
        assert!(wrapped.passed, "checks: {:?}", wrapped.checks);
    }

    #[test]
    fn transfer_reaches_high_fidelity() {
        let report = run_entangled_transfer(4, 0.0, &options()).unwrap();
        assert!(report.passed, "checks: {:?}", report.checks);
        assert!(report.outcomes[0].f_max >= 0.999);
    }

    #[test]
    fn transfer_directional_variants_use_one_mode() {
        let cw_only = run_entangled_transfer(4, FRAC_PI_2, &options()).unwrap();
        assert!(cw_only.passed, "checks: {:?}", cw_only.checks);
        let ccw_only = run_entangled_transfer(4, -FRAC_PI_2, &options()).unwrap();
        assert!(ccw_only.passed, "checks: {:?}", ccw_only.checks);
        assert!(cw_only.outcomes[0].f_max >= 0.999);
        assert!(ccw_only.outcomes[0].f_max >= 0.999);
    }

    #[test]
    fn transfer_refuses_odd_chains() {
        assert!(matches!(
            run_entangled_transfer(5, 0.0, &options()),
            Err(Error::ProtocolNotApplicable(_))
        ));
        assert!(matches!(
            run_entangled_transfer(6, 0.0, &options()),
            Err(Error::ConfigMismatch(_))
        ));
    }

    #[test]
    fn two_excitation_needs_enough_photons() {
        assert!(matches!(
            run_multi_excitation(MultiExcVariant::TwoExcitation { photon_cutoff: 1 }, &options()),
            Err(Error::BasisTooSmall { needed: 2, cutoff: 1 })
        ));
    }

    #[test]
    fn stirap_zero_detuning_matches_free_transfer() {
        let stirap = run_stirap(0.0, 0.0, &options()).unwrap();
        let transfer = run_entangled_transfer(4, 0.0, &options()).unwrap();
        let d = (stirap.outcomes[0].f_final - transfer.outcomes[0].f_final).abs();
        assert!(d < 1e-10, "free-oscillation mismatch {d}");
    }

    #[test]
    fn period_extraction_on_a_cosine() {
        let times: Vec<f64> = (0..200).map(|k| k as f64 * 0.05).collect();
        let signal: Vec<f64> = times.iter().map(|t| (2.0 * t).cos()).collect();
        let period = oscillation_period(&times, &signal).unwrap();
        assert!((period - std::f64::consts::PI).abs() < 1e-3, "period {period}");
    }

    #[test]
    fn scenario_ids_round_trip() {
        for id in ScenarioId::ALL {
            assert_eq!(ScenarioId::parse(id.as_str()).unwrap(), id);
        }
        assert!(ScenarioId::parse("no-such-scenario").is_err());
    }
}

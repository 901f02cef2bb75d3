//! Physical description of the spin array and ring cavity.
//!
//! All frequencies are expressed in units of the collective coupling `g_c`
//! and times in `1/g_c` unless stated otherwise; the default baseline puts
//! both the cavity and the spins at zero frequency.

use crate::error::{Error, Result};
use crate::model::schedule::DetuningSchedule;
use crate::scalar::{real, to_f64, Scalar};

/// The spin chain: optical phases (k * x_m), base frequency, and per-spin
/// detuning schedules.
///
/// Phases are stored raw; no modulo-2pi reduction is applied silently.
/// Use [`SpinArray::reduced_phase`] when a wrapped value is wanted for
/// reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinArray<T> {
    phases: Vec<T>,
    base_frequency: T,
    schedules: Vec<DetuningSchedule<T>>,
}

impl<T: Scalar> SpinArray<T> {
    /// Spins at explicit optical phases, zero detuning everywhere.
    pub fn new(phases: Vec<T>, base_frequency: T) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidSystem("need at least one spin".into()));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidSystem("spin phases must be finite".into()));
        }
        let schedules = vec![DetuningSchedule::constant(T::zero()); phases.len()];
        Ok(Self { phases, base_frequency, schedules })
    }

    /// `count` spins with phases `m * interval_phase`.
    pub fn evenly_spaced(count: usize, interval_phase: T, base_frequency: T) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidSystem("need at least one spin".into()));
        }
        let phases = (0..count)
            .map(|m| interval_phase * real(m as f64))
            .collect();
        Self::new(phases, base_frequency)
    }

    /// Replace the detuning schedule of one spin.
    pub fn with_schedule(mut self, spin: usize, schedule: DetuningSchedule<T>) -> Result<Self> {
        if spin >= self.phases.len() {
            return Err(Error::SpinIndex { index: spin, count: self.phases.len() });
        }
        self.schedules[spin] = schedule;
        Ok(self)
    }

    pub fn count(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn phase(&self, spin: usize) -> T {
        self.phases[spin]
    }

    /// Phase wrapped into `[0, 2pi)`, for reporting only.
    pub fn reduced_phase(&self, spin: usize) -> T {
        let two_pi = T::two_pi();
        let mut p = self.phases[spin] % two_pi;
        if p < T::zero() {
            p += two_pi;
        }
        p
    }

    pub fn base_frequency(&self) -> T {
        self.base_frequency
    }

    pub fn schedules(&self) -> &[DetuningSchedule<T>] {
        &self.schedules
    }

    pub fn schedule(&self, spin: usize) -> &DetuningSchedule<T> {
        &self.schedules[spin]
    }
}

/// The two counterpropagating cavity modes; both share one frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct CavityPair<T> {
    frequency: T,
    labels: [String; 2],
}

impl<T: Scalar> CavityPair<T> {
    pub fn new(frequency: T) -> Self {
        Self { frequency, labels: ["cw".into(), "ccw".into()] }
    }

    pub fn frequency(&self) -> T {
        self.frequency
    }

    pub fn labels(&self) -> [&str; 2] {
        [&self.labels[0], &self.labels[1]]
    }
}

/// Complete physical system: spins, cavity pair, and per-spin coupling `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec<T> {
    spins: SpinArray<T>,
    cavity: CavityPair<T>,
    coupling: T,
}

impl<T: Scalar> SystemSpec<T> {
    pub fn new(spins: SpinArray<T>, cavity: CavityPair<T>, coupling: T) -> Result<Self> {
        if !(coupling >= T::zero()) || !coupling.is_finite() {
            return Err(Error::InvalidSystem(format!(
                "coupling must be non-negative and finite, got {}",
                to_f64(coupling)
            )));
        }
        Ok(Self { spins, cavity, coupling })
    }

    /// Evenly spaced chain at the zero-frequency baseline.
    ///
    /// `coupling` is the per-spin `g`; pass `1/sqrt(count)` to work in units
    /// where `g_c = 1`.
    pub fn uniform_chain(count: usize, interval_phase: T, coupling: T) -> Result<Self> {
        let spins = SpinArray::evenly_spaced(count, interval_phase, T::zero())?;
        Self::new(spins, CavityPair::new(T::zero()), coupling)
    }

    /// Chain in `g_c = 1` units: per-spin coupling `1/sqrt(count)`.
    pub fn uniform_chain_unit_gc(count: usize, interval_phase: T) -> Result<Self> {
        let g = T::one() / real::<T>(count as f64).sqrt();
        Self::uniform_chain(count, interval_phase, g)
    }

    /// Replace the detuning schedule of one spin.
    pub fn with_spin_schedule(
        mut self,
        spin: usize,
        schedule: DetuningSchedule<T>,
    ) -> Result<Self> {
        self.spins = self.spins.with_schedule(spin, schedule)?;
        Ok(self)
    }

    pub fn spins(&self) -> &SpinArray<T> {
        &self.spins
    }

    pub fn cavity(&self) -> &CavityPair<T> {
        &self.cavity
    }

    /// Per-spin coupling strength `g`.
    pub fn coupling(&self) -> T {
        self.coupling
    }

    /// Collective coupling `g_c = g * sqrt(N)`.
    pub fn collective_coupling(&self) -> T {
        self.coupling * real::<T>(self.spins.count() as f64).sqrt()
    }

    /// Detuning of spin `m` at time `t`.
    pub fn detuning(&self, spin: usize, t: T) -> Result<T> {
        self.spins.schedule(spin).value_at(t)
    }

    /// Whether any spin detuning varies in time.
    pub fn time_dependent(&self) -> bool {
        self.spins
            .schedules()
            .iter()
            .any(|s| !matches!(s, DetuningSchedule::Constant(_))
                && !s.is_constant_over(T::zero(), s.t_end().unwrap_or(T::zero())))
    }

    /// Error unless every spin schedule covers `[0, t_final]`.
    pub fn schedules_cover(&self, t_final: T) -> Result<()> {
        for (m, s) in self.spins.schedules().iter().enumerate() {
            if !s.covers(t_final) {
                return Err(Error::InvalidSchedule(format!(
                    "schedule of spin {m} does not cover [0, {}]",
                    to_f64(t_final)
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collective_coupling_is_g_sqrt_n() {
        let spec = SystemSpec::uniform_chain(4, 0.0f64, 0.5).unwrap();
        assert_eq!(spec.collective_coupling(), 1.0);
        let spec = SystemSpec::uniform_chain_unit_gc(6, 0.0f64).unwrap();
        assert!((spec.collective_coupling() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phases_kept_raw() {
        let spins = SpinArray::new(vec![5.0f64 * std::f64::consts::FRAC_PI_2], 0.0).unwrap();
        assert_eq!(spins.phase(0), 5.0 * std::f64::consts::FRAC_PI_2);
        assert!((spins.reduced_phase(0) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn invalid_systems_rejected() {
        assert!(SpinArray::<f64>::new(vec![], 0.0).is_err());
        assert!(SpinArray::new(vec![f64::NAN], 0.0).is_err());
        let spins = SpinArray::new(vec![0.0f64], 0.0).unwrap();
        assert!(SystemSpec::new(spins.clone(), CavityPair::new(0.0), 0.0).is_ok());
        assert!(SystemSpec::new(spins.clone(), CavityPair::new(0.0), -1.0).is_err());
        assert!(SystemSpec::new(spins, CavityPair::new(0.0), f64::NAN).is_err());
    }

    #[test]
    fn schedule_coverage_checked() {
        let spec = SystemSpec::uniform_chain(2, 0.0f64, 1.0)
            .unwrap()
            .with_spin_schedule(
                1,
                DetuningSchedule::linear_ramp(5.0, 0.0, 1.0).unwrap(),
            )
            .unwrap();
        assert!(spec.schedules_cover(5.0).is_ok());
        assert!(spec.schedules_cover(6.0).is_err());
        assert!(spec.time_dependent());
    }
}

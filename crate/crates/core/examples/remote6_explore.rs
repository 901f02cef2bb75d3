use ringtc::dynamics::{evolve, PropagatorSettings};
use ringtc::model::{BasisSpec, DetuningSchedule, ExcitationPattern, QuantumState, SystemSpec};
use nalgebra::Complex;

fn pair(basis: BasisSpec, a: usize, b: usize, sign: f64) -> QuantumState<f64> {
    QuantumState::superposition(
        basis,
        &[
            (Complex::new(1.0, 0.0), ExcitationPattern::spin(a)),
            (Complex::new(sign, 0.0), ExcitationPattern::spin(b)),
        ],
    )
    .unwrap()
}

fn main() {
    for delta in [10.0f64, -10.0] {
        let mut spec = SystemSpec::uniform_chain_unit_gc(6, std::f64::consts::FRAC_PI_2).unwrap();
        for m in [3, 4] {
            spec = spec.with_spin_schedule(m, DetuningSchedule::constant(delta)).unwrap();
        }
        let basis = BasisSpec::single_excitation(6);
        let psi0 = pair(basis, 1, 2, 1.0);
        let target = pair(basis, 0, 5, -1.0);
        let mut settings = PropagatorSettings::default();
        settings.sampling_stride = 5; // resolution 0.005
        let traj = evolve(&psi0, &spec, &[target], &settings, 40.0).unwrap();
        // all local maxima of F above 0.99
        let mut peaks = vec![];
        for k in 1..traj.len() - 1 {
            let f = traj.fidelity(k, 0);
            if f > traj.fidelity(k - 1, 0) && f >= traj.fidelity(k + 1, 0) && f > 0.95 {
                peaks.push((traj.time(k), f));
            }
        }
        let leak_max = (0..traj.len())
            .map(|k| traj.spin_population(k, 3) + traj.spin_population(k, 4))
            .fold(0.0f64, f64::max);
        // leakage at the best peak
        let (best_t, best_f) = peaks
            .iter()
            .copied()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap_or((0.0, 0.0));
        println!("delta = {delta}: best peak F = {best_f:.6} at t = {best_t:.3}");
        println!("  peaks: {:?}", peaks.iter().map(|(t, f)| format!("({t:.2}, {f:.5})")).collect::<Vec<_>>());
        println!("  max leakage rho3+rho4 = {leak_max:.4e}");
        // leakage profile: max over [0, 10]
        let leak_10 = (0..traj.len())
            .filter(|&k| traj.time(k) <= 10.0)
            .map(|k| traj.spin_population(k, 3) + traj.spin_population(k, 4))
            .fold(0.0f64, f64::max);
        println!("  max leakage within t <= 10: {leak_10:.4e}");
    }
}

use std::time::Instant;

fn main() {
    let which: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().unwrap())
        .collect();
    let all: Vec<(usize, fn() -> ringtc::acceptance::CriterionOutcome)> = vec![
        (1, ringtc::acceptance::criterion_1_polariton_formula),
        (2, ringtc::acceptance::criterion_2_degeneracy_structure),
        (3, ringtc::acceptance::criterion_3_spin_grouping),
        (4, ringtc::acceptance::criterion_4_entangled_transfer),
        (5, ringtc::acceptance::criterion_5_detuning_gate),
        (6, ringtc::acceptance::criterion_6_remote_transfer),
        (7, ringtc::acceptance::criterion_7_adiabatic_ramp),
        (8, ringtc::acceptance::criterion_8_two_excitation),
        (9, ringtc::acceptance::criterion_9_coupling_nulls),
        (10, ringtc::acceptance::criterion_10_platform_calculator),
        (11, ringtc::acceptance::criterion_11_numerical_hygiene),
    ];
    for (id, f) in all {
        if !which.is_empty() && !which.contains(&id) {
            continue;
        }
        let t0 = Instant::now();
        let outcome = f();
        println!("[{:6.2?}] {}", t0.elapsed(), outcome.line());
    }
}

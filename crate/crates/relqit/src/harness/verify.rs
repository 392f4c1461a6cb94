//! The full invariant suite behind `verify`: group theory, little group,
//! unitarity, oracle traces, phase invariance, and round trips, each
//! reported as one pass/fail line with its worst observed deviation.

use std::fmt;

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::density::{DensityMatrix, PartitionSpec};
use crate::harness::{
    oracle, random_alphabets, random_boost, random_momentum, random_rotation, random_state,
    random_state_on, random_transform, rng_from_seed,
};
use crate::lorentz::{
    LorentzTransform, WignerRotation, little_group_residual, pauli, su2_lift, wigner_rotation,
};
use crate::state::{MomentumLabel, StateVector};

/// One property check: its worst observed deviation against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, samples: usize, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name,
            samples,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<28} samples {:>6}  max deviation {:>12.3e}  (tol {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.samples,
            self.max_deviation,
            self.tolerance
        )
    }
}

/// Results of the whole suite.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        write!(
            f,
            "verification {}",
            if self.all_passed() { "passed" } else { "FAILED" }
        )
    }
}

fn friis_pm() -> StateVector {
    let p = MomentumLabel::new(1.0, 0.0, 0.0, 1.0).unwrap();
    let q = MomentumLabel::new(1.0, 0.0, 0.0, -1.0).unwrap();
    StateVector::friis(
        std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_4,
        p,
        q,
    )
    .unwrap()
}

/// Partitions exercised when a check wants "the usual set" for two
/// particles: the four single qubits, both pairs, both particles, and the
/// two mixed splits.
pub fn standard_partitions() -> Vec<PartitionSpec> {
    vec![
        PartitionSpec::momentum_of(0),
        PartitionSpec::spin_of(0),
        PartitionSpec::momentum_of(1),
        PartitionSpec::spin_of(1),
        PartitionSpec::momenta(2),
        PartitionSpec::spins(2),
        PartitionSpec::particle(0),
        PartitionSpec::particle(1),
        "p1.mom,p2.spin".parse().unwrap(),
        "p1.spin,p2.mom".parse().unwrap(),
    ]
}

/// ΛᵀηΛ = η for randomly generated transforms (boost ∘ rotation).
pub fn check_metric_preservation(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let lt = random_transform(&mut rng, 3.0);
        max_dev = max_dev.max(lt.metric_deviation());
    }
    CheckResult::new("metric-preservation", samples, max_dev, 1e-12)
}

/// W(Λ₂Λ₁, p) = W(Λ₂, Λ₁p) · W(Λ₁, p) as 3×3 matrices.
pub fn check_wigner_composition(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let l1 = random_transform(&mut rng, 3.0);
        let l2 = random_transform(&mut rng, 3.0);
        let p = random_momentum(&mut rng, 1.0, 1.5);
        let combined = l2.compose(&l1).expect("valid product");
        let w21 = wigner_rotation(&combined, &p).expect("little group holds");
        let w2 = wigner_rotation(&l2, &p.boosted_by(&l1)).expect("little group holds");
        let w1 = wigner_rotation(&l1, &p).expect("little group holds");
        let dev = (w21.matrix() - w2.matrix() * w1.matrix()).amax();
        max_dev = max_dev.max(dev);
    }
    CheckResult::new("wigner-composition", samples, max_dev, 1e-9)
}

/// The adjoint action of su2_lift reproduces its rotation:
/// U σ_k U† = Σ_j R_jk σ_j.
pub fn check_su2_adjoint(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let sigmas = pauli();
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let rot4 = random_rotation(&mut rng);
        let block = Matrix3::from_fn(|i, j| rot4.matrix()[(i + 1, j + 1)]);
        let w = WignerRotation::from_matrix(block).expect("rotation block");
        let u = su2_lift(&w);
        for k in 0..3 {
            let lhs = u.matrix() * sigmas[k] * u.matrix().adjoint();
            let mut rhs = Matrix2::zeros();
            for j in 0..3 {
                rhs += sigmas[j] * Complex64::new(block[(j, k)], 0.0);
            }
            max_dev = max_dev.max((lhs - rhs).camax());
        }
    }
    CheckResult::new("su2-adjoint", samples, max_dev, 1e-10)
}

/// L(Λp)⁻¹ Λ L(p) fixes the rest momentum (m,0,0,0).
pub fn check_little_group(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let lt = random_transform(&mut rng, 3.0);
        let p = random_momentum(&mut rng, 1.0, 1.5);
        max_dev = max_dev.max(little_group_residual(&lt, &p));
    }
    CheckResult::new("little-group-fix", samples, max_dev, 1e-10)
}

/// Boosting preserves inner products between states on a shared alphabet.
pub fn check_boost_unitarity(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let alphabets = random_alphabets(&mut rng, 2, 2);
        let s = random_state_on(&mut rng, &alphabets);
        let t = random_state_on(&mut rng, &alphabets);
        let lt = random_transform(&mut rng, 3.0);
        let before = s.inner_product(&t).expect("same particle count");
        let after = s
            .boost(&lt)
            .expect("boost")
            .inner_product(&t.boost(&lt).expect("boost"))
            .expect("same particle count");
        max_dev = max_dev.max((before - after).norm());
    }
    CheckResult::new("boost-unitarity", samples, max_dev, 1e-9)
}

/// Collinear null test: momenta along ẑ boosted along ẑ leave every
/// partition entropy unchanged (the Wigner rotations are all identity).
pub fn check_collinear_null(grid_points: usize) -> CheckResult {
    let s = friis_pm();
    let partitions = standard_partitions();
    let rest = DensityMatrix::from_state(&s)
        .partition_entropy_sum(&partitions)
        .expect("valid partitions");
    let mut max_dev: f64 = 0.0;
    for i in 0..grid_points {
        let rapidity = 3.0 * i as f64 / (grid_points.max(2) - 1) as f64;
        let lt = LorentzTransform::boost_along_axis(Vector3::z(), rapidity).expect("unit axis");
        let boosted = s.boost(&lt).expect("boost");
        let report = DensityMatrix::from_state(&boosted)
            .partition_entropy_sum(&partitions)
            .expect("valid partitions");
        for (got, want) in report.entries.iter().zip(&rest.entries) {
            max_dev = max_dev.max((got.entropy - want.entropy).abs());
        }
    }
    CheckResult::new("collinear-null", grid_points, max_dev, 1e-10)
}

/// The particle partition's entropy is frame independent: for the maximal
/// comparison state and for random pure two-particle states.
pub fn check_particle_invariance(
    seed: u64,
    friis_boosts: usize,
    random_states: usize,
    boosts_per_state: usize,
) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let partition = PartitionSpec::particle(0);
    let mut max_dev: f64 = 0.0;

    let mut run = |state: &StateVector, boosts: usize, rng: &mut crate::harness::HarnessRng| {
        let baseline = DensityMatrix::from_state(state)
            .partial_trace(&partition)
            .expect("particle partition")
            .linear_entropy();
        for _ in 0..boosts {
            let lt = random_boost(rng, 3.0);
            let entropy = DensityMatrix::from_state(&state.boost(&lt).expect("boost"))
                .partial_trace(&partition)
                .expect("particle partition")
                .linear_entropy();
            max_dev = max_dev.max((entropy - baseline).abs());
        }
    };

    run(&friis_pm(), friis_boosts, &mut rng);
    for _ in 0..random_states {
        let s = random_state(&mut rng, 2, 2);
        run(&s, boosts_per_state, &mut rng);
    }
    let samples = friis_boosts + random_states * boosts_per_state;
    CheckResult::new("particle-invariance", samples, max_dev, 1e-9)
}

/// The strided partial trace agrees elementwise with the brute-force
/// double-loop oracle on every partition of random states.
pub fn check_oracle_traces(seed: u64, states: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let partitions = PartitionSpec::enumerate_all(2);
    let mut max_dev: f64 = 0.0;
    for _ in 0..states {
        let s = random_state(&mut rng, 2, 2);
        let rho = DensityMatrix::from_state(&s);
        for keep in &partitions {
            let fast = rho.partial_trace(keep).expect("valid partition");
            let slow = oracle::brute_force_partial_trace(&rho, keep).expect("valid partition");
            max_dev = max_dev.max((fast.matrix() - &slow).camax());
        }
    }
    CheckResult::new("oracle-trace-equivalence", states, max_dev, 1e-12)
}

/// A global phase changes no partition entropy, bit for bit. The deviation
/// reported is the number of mismatched bits observed (zero or it failed).
pub fn check_global_phase(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let partitions = standard_partitions();
    let mut failures = 0usize;
    for _ in 0..samples {
        let s = random_state(&mut rng, 2, 2);
        let phi: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let ok = crate::harness::phase_invariance_check(&s, phi, &partitions)
            .expect("valid partitions");
        if !ok {
            failures += 1;
        }
    }
    CheckResult::new("global-phase", samples, failures as f64, 0.0)
}

/// Boost followed by the inverse boost restores every amplitude.
pub fn check_round_trip(seed: u64, samples: usize) -> CheckResult {
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let s = random_state(&mut rng, 2, 2);
        let lt = random_transform(&mut rng, 3.0);
        let back = s
            .boost(&lt)
            .expect("boost")
            .boost(&lt.inverse().expect("inverse"))
            .expect("boost back");
        for (amplitude, config) in s.terms() {
            let restored = back.amplitude(&config);
            max_dev = max_dev.max((restored - amplitude).norm());
        }
    }
    CheckResult::new("boost-round-trip", samples, max_dev, 1e-9)
}

/// The whole suite at command-line scale (a few seconds).
pub fn run_suite(seed: u64) -> VerificationReport {
    let checks = vec![
        check_metric_preservation(seed, 2000),
        check_wigner_composition(seed.wrapping_add(1), 300),
        check_su2_adjoint(seed.wrapping_add(2), 300),
        check_little_group(seed.wrapping_add(3), 300),
        check_boost_unitarity(seed.wrapping_add(4), 50),
        check_collinear_null(7),
        check_particle_invariance(seed.wrapping_add(5), 200, 10, 20),
        check_oracle_traces(seed.wrapping_add(6), 50),
        check_global_phase(seed.wrapping_add(7), 200),
        check_round_trip(seed.wrapping_add(8), 200),
    ];
    VerificationReport { seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_suite(20260810);
        assert!(report.all_passed(), "{report}");
    }
}

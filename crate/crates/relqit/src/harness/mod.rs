//! Randomized and swept numerical experiments: which partitions' entropies
//! survive a change of frame, and which are frame dependent.
//!
//! All randomness derives from a single 64-bit seed through a counter-based
//! stream cipher, samples are evaluated serially and reduced in order, so
//! identical seeds and inputs produce bit-identical reports.

pub mod oracle;
pub mod verify;

use std::fmt;

use nalgebra::Vector3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::density::{DensityMatrix, EntropyReport, PartitionSpec};
use crate::error::{Error, Result};
use crate::lorentz::LorentzTransform;
use crate::state::{Configuration, MomentumLabel, Spin, StateVector};

/// Entropy deviations at or below this are called invariant: ~6 orders
/// above accumulated double-precision error at desk dimensions, ~6 below
/// physical effects at rapidity O(1).
pub const DEFAULT_SCAN_TOL: f64 = 1e-9;

/// The seeded generator every harness experiment draws from.
pub type HarnessRng = ChaCha12Rng;

pub fn rng_from_seed(seed: u64) -> HarnessRng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform direction on the sphere via a normalized Gaussian triple.
pub fn random_direction(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        );
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Pure boost along a uniformly random direction with rapidity uniform in
/// [0, max_rapidity]. Deterministic given the generator state.
pub fn random_boost(rng: &mut impl Rng, max_rapidity: f64) -> LorentzTransform {
    assert!(
        max_rapidity >= 0.0,
        "max_rapidity must be non-negative (got {max_rapidity})"
    );
    let axis = random_direction(rng);
    let rapidity = if max_rapidity == 0.0 {
        0.0
    } else {
        rng.random_range(0.0..=max_rapidity)
    };
    LorentzTransform::boost_along_axis(axis, rapidity)
        .expect("random unit axis yields a valid boost")
}

/// Uniformly random rotation (Haar measure, via a Gaussian quaternion).
pub fn random_rotation(rng: &mut impl Rng) -> LorentzTransform {
    let w: f64 = rng.sample(StandardNormal);
    let v = Vector3::new(
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
        rng.sample::<f64, _>(StandardNormal),
    );
    if v.norm() < 1e-9 {
        return LorentzTransform::identity();
    }
    // θ = 2·atan2(|v|, w) with the quaternion sign fixed so θ ∈ [0, π].
    let (w, v) = if w < 0.0 { (-w, -v) } else { (w, v) };
    let angle = 2.0 * v.norm().atan2(w);
    let axis = v / v.norm();
    LorentzTransform::rotation_about_axis(axis, angle)
        .expect("normalized quaternion axis yields a valid rotation")
}

/// Random boost composed with a uniformly random rotation: a generic
/// element of the restricted Lorentz group with bounded rapidity.
pub fn random_transform(rng: &mut impl Rng, max_rapidity: f64) -> LorentzTransform {
    let rotation = random_rotation(rng);
    let boost = random_boost(rng, max_rapidity);
    boost
        .compose(&rotation)
        .expect("product of valid transforms stays on the group")
}

/// A random on-shell momentum label with uniform components in
/// [−max_component, max_component].
pub fn random_momentum(rng: &mut impl Rng, mass: f64, max_component: f64) -> MomentumLabel {
    MomentumLabel::new(
        mass,
        rng.random_range(-max_component..=max_component),
        rng.random_range(-max_component..=max_component),
        rng.random_range(-max_component..=max_component),
    )
    .expect("positive mass")
}

/// Per-particle alphabets of random unit-mass labels, for building families
/// of states over a shared momentum basis.
pub fn random_alphabets(
    rng: &mut impl Rng,
    particle_count: usize,
    momenta_per_particle: usize,
) -> Vec<Vec<MomentumLabel>> {
    (0..particle_count)
        .map(|_| {
            (0..momenta_per_particle)
                .map(|_| random_momentum(rng, 1.0, 1.5))
                .collect()
        })
        .collect()
}

/// A random pure state over the given alphabets: every configuration gets
/// a complex Gaussian amplitude.
pub fn random_state_on(rng: &mut impl Rng, alphabets: &[Vec<MomentumLabel>]) -> StateVector {
    let particle_count = alphabets.len();
    let config_count: usize = alphabets.iter().map(|a| a.len() * 2).product();
    let mut terms = Vec::with_capacity(config_count);
    for index in 0..config_count {
        let mut code = index;
        let mut particles = Vec::with_capacity(particle_count);
        for alphabet in alphabets {
            let spin = if code % 2 == 0 { Spin::Up } else { Spin::Down };
            code /= 2;
            let label = alphabet[code % alphabet.len()];
            code /= alphabet.len();
            particles.push((label, spin));
        }
        let amplitude = num_complex::Complex64::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        terms.push((amplitude, Configuration::new(particles)));
    }
    StateVector::new(terms).expect("dense Gaussian amplitudes have positive norm")
}

/// A random pure n-particle state: every particle gets its own alphabet of
/// `momenta_per_particle` random labels (unit mass) and every configuration
/// over those alphabets gets a complex Gaussian amplitude.
pub fn random_state(
    rng: &mut impl Rng,
    particle_count: usize,
    momenta_per_particle: usize,
) -> StateVector {
    let alphabets = random_alphabets(rng, particle_count, momenta_per_particle);
    random_state_on(rng, &alphabets)
}

/// Whether a scan stayed within tolerance in every sampled frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Invariant,
    Varies,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Invariant => write!(f, "invariant"),
            Verdict::Varies => write!(f, "varies"),
        }
    }
}

/// Outcome of [`invariance_scan`] for one partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub partition: PartitionSpec,
    pub samples: usize,
    pub max_rapidity: f64,
    pub seed: u64,
    pub tolerance: f64,
    pub baseline_entropy: f64,
    pub max_abs_delta: f64,
    pub verdict: Verdict,
}

impl ScanReport {
    /// Aligned-column text for a batch of reports.
    pub fn text_table(reports: &[ScanReport]) -> String {
        let mut width = "partition".len();
        for r in reports {
            width = width.max(r.partition.to_string().len());
        }
        let mut out = format!(
            "{:<width$}  {:>7}  {:>24}  {:>24}  {}\n",
            "partition", "samples", "baseline", "max|dE|", "verdict"
        );
        for r in reports {
            out.push_str(&format!(
                "{:<width$}  {:>7}  {:>24.16e}  {:>24.16e}  {}\n",
                r.partition.to_string(),
                r.samples,
                r.baseline_entropy,
                r.max_abs_delta,
                r.verdict
            ));
        }
        out
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ScanReport::text_table(std::slice::from_ref(self)))
    }
}

fn partition_entropy(state: &StateVector, partition: &PartitionSpec) -> Result<f64> {
    Ok(DensityMatrix::from_state(state)
        .partial_trace(partition)?
        .linear_entropy())
}

/// Samples `samples` random boosts with rapidity ≤ `max_rapidity` and
/// reports the largest deviation of the partition's entropy from its value
/// in the starting frame.
pub fn invariance_scan(
    state: &StateVector,
    partition: &PartitionSpec,
    samples: usize,
    max_rapidity: f64,
    tolerance: f64,
    seed: u64,
) -> Result<ScanReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "scan requires at least one sample".into(),
        ));
    }
    let baseline = partition_entropy(state, partition)?;
    let mut rng = rng_from_seed(seed);
    let mut max_abs_delta: f64 = 0.0;
    for _ in 0..samples {
        let lt = random_boost(&mut rng, max_rapidity);
        let boosted = state.boost(&lt)?;
        let entropy = partition_entropy(&boosted, partition)?;
        max_abs_delta = max_abs_delta.max((entropy - baseline).abs());
    }
    let verdict = if max_abs_delta <= tolerance {
        Verdict::Invariant
    } else {
        Verdict::Varies
    };
    Ok(ScanReport {
        partition: partition.clone(),
        samples,
        max_rapidity,
        seed,
        tolerance,
        baseline_entropy: baseline,
        max_abs_delta,
        verdict,
    })
}

/// One rapidity row of a sweep: per-partition entropies and their sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub rapidity: f64,
    pub entropies: Vec<f64>,
    pub sum: f64,
}

/// Entropies along a rapidity grid for a fixed boost axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub partitions: Vec<PartitionSpec>,
    pub rows: Vec<SweepRow>,
}

impl fmt::Display for SweepTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>24}", "rapidity")?;
        for p in &self.partitions {
            write!(f, "  {:>24}", p.to_string())?;
        }
        writeln!(f, "  {:>24}", "sum")?;
        for row in &self.rows {
            write!(f, "{:>24.16e}", row.rapidity)?;
            for e in &row.entropies {
                write!(f, "  {:>24.16e}", e)?;
            }
            writeln!(f, "  {:>24.16e}", row.sum)?;
        }
        Ok(())
    }
}

/// Boosts the state along `axis` at each grid rapidity and tabulates every
/// partition's linear entropy. The rapidity-0 row reproduces the
/// starting-frame values exactly: a zero-rapidity boost is the identity
/// matrix and the boost action is then the identity term by term.
pub fn entropy_sweep(
    state: &StateVector,
    axis: Vector3<f64>,
    rapidities: &[f64],
    partitions: &[PartitionSpec],
) -> Result<SweepTable> {
    if rapidities.is_empty() {
        return Err(Error::InvalidArgument("sweep grid is empty".into()));
    }
    if partitions.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep needs at least one partition".into(),
        ));
    }
    let mut rows = Vec::with_capacity(rapidities.len());
    for &rapidity in rapidities {
        let lt = LorentzTransform::boost_along_axis(axis, rapidity)?;
        let boosted = state.boost(&lt)?;
        let report: EntropyReport =
            DensityMatrix::from_state(&boosted).partition_entropy_sum(partitions)?;
        rows.push(SweepRow {
            rapidity,
            entropies: report.entries.iter().map(|e| e.entropy).collect(),
            sum: report.sum,
        });
    }
    Ok(SweepTable {
        partitions: partitions.to_vec(),
        rows,
    })
}

/// Multiplies every amplitude by e^{iφ} (through the state's phase slot)
/// and recomputes every partition entropy; true iff each one is
/// bit-identical to the unphased value. ρ = |ψ⟩⟨ψ| cancels a global phase,
/// so this holds exactly.
pub fn phase_invariance_check(
    state: &StateVector,
    phase: f64,
    partitions: &[PartitionSpec],
) -> Result<bool> {
    let phased = state.with_global_phase(phase);
    for partition in partitions {
        let before = partition_entropy(state, partition)?;
        let after = partition_entropy(&phased, partition)?;
        if before.to_bits() != after.to_bits() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn friis_pm(alpha: f64, beta: f64) -> StateVector {
        let p = MomentumLabel::new(1.0, 0.0, 0.0, 1.0).unwrap();
        let q = MomentumLabel::new(1.0, 0.0, 0.0, -1.0).unwrap();
        StateVector::friis(alpha, beta, p, q).unwrap()
    }

    #[test]
    fn random_boost_is_deterministic_per_seed() {
        let mut a = rng_from_seed(7);
        let mut b = rng_from_seed(7);
        for _ in 0..10 {
            let ba = random_boost(&mut a, 3.0);
            let bb = random_boost(&mut b, 3.0);
            assert_eq!(ba.matrix(), bb.matrix());
        }
    }

    #[test]
    fn random_boost_stays_near_identity_for_tiny_rapidity() {
        let mut rng = rng_from_seed(1);
        for _ in 0..20 {
            let b = random_boost(&mut rng, 1e-9);
            assert!((b.matrix() - nalgebra::Matrix4::identity()).amax() < 1e-8);
        }
    }

    #[test]
    fn random_transform_satisfies_group_invariants() {
        let mut rng = rng_from_seed(3);
        for _ in 0..50 {
            let lt = random_transform(&mut rng, 3.0);
            assert!(lt.metric_deviation() < 1e-12);
            assert!(lt.matrix()[(0, 0)] >= 1.0);
        }
    }

    #[test]
    fn scan_rejects_zero_samples() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let err = invariance_scan(&s, &PartitionSpec::particle(0), 0, 3.0, 1e-9, 1);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn zero_rapidity_scan_has_zero_deviation() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_8);
        let report = invariance_scan(&s, &PartitionSpec::spin_of(0), 20, 0.0, 1e-9, 5).unwrap();
        assert_eq!(report.max_abs_delta, 0.0);
        assert_eq!(report.verdict, Verdict::Invariant);
    }

    #[test]
    fn particle_partition_scans_invariant() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let report = invariance_scan(&s, &PartitionSpec::particle(0), 50, 3.0, 1e-9, 11).unwrap();
        assert_eq!(report.verdict, Verdict::Invariant);
    }

    #[test]
    fn spin_pair_partition_varies_for_transverse_geometry() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let report = invariance_scan(&s, &PartitionSpec::spins(2), 50, 3.0, 1e-9, 13).unwrap();
        assert_eq!(report.verdict, Verdict::Varies);
        assert!(report.max_abs_delta > 1e-3);
    }

    #[test]
    fn identical_seeds_give_bit_identical_reports() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_8);
        let a = invariance_scan(&s, &PartitionSpec::spins(2), 25, 3.0, 1e-9, 99).unwrap();
        let b = invariance_scan(&s, &PartitionSpec::spins(2), 25, 3.0, 1e-9, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn sweep_zero_row_matches_rest_frame_exactly() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let partitions = vec![
            PartitionSpec::spin_of(0),
            PartitionSpec::particle(0),
            PartitionSpec::momenta(2),
        ];
        let table = entropy_sweep(&s, Vector3::x(), &[0.0], &partitions).unwrap();
        let rest = DensityMatrix::from_state(&s)
            .partition_entropy_sum(&partitions)
            .unwrap();
        for (got, want) in table.rows[0].entropies.iter().zip(&rest.entries) {
            assert_eq!(got.to_bits(), want.entropy.to_bits());
        }
        assert_eq!(table.rows[0].sum.to_bits(), rest.sum.to_bits());
    }

    #[test]
    fn sweep_particle_column_is_flat_and_mixed_column_is_not() {
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let partitions = vec![
            PartitionSpec::particle(0),
            "p1.mom,p2.spin".parse::<PartitionSpec>().unwrap(),
        ];
        let grid: Vec<f64> = (0..7).map(|i| i as f64 * 0.5).collect();
        let table = entropy_sweep(&s, Vector3::x(), &grid, &partitions).unwrap();
        let particle0 = table.rows[0].entropies[0];
        let mixed0 = table.rows[0].entropies[1];
        let mut mixed_spread: f64 = 0.0;
        for row in &table.rows {
            assert!((row.entropies[0] - particle0).abs() <= 1e-9);
            mixed_spread = mixed_spread.max((row.entropies[1] - mixed0).abs());
        }
        assert!(mixed_spread > 1e-3, "mixed spread {mixed_spread}");
    }

    #[test]
    fn collinear_geometry_keeps_every_partition_flat() {
        // Momenta along ẑ, boost along ẑ: Wigner rotations are identity.
        let s = friis_pm(FRAC_PI_4, FRAC_PI_4);
        let partitions = vec![
            PartitionSpec::momentum_of(0),
            PartitionSpec::spin_of(0),
            PartitionSpec::spins(2),
            PartitionSpec::momenta(2),
            PartitionSpec::particle(0),
            "p1.mom,p2.spin".parse::<PartitionSpec>().unwrap(),
        ];
        let grid: Vec<f64> = (0..7).map(|i| i as f64 * 0.5).collect();
        let table = entropy_sweep(&s, Vector3::z(), &grid, &partitions).unwrap();
        for (col, _) in partitions.iter().enumerate() {
            let base = table.rows[0].entropies[col];
            for row in &table.rows {
                assert!((row.entropies[col] - base).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn some_partition_varies_for_every_friis_point() {
        let partitions = vec![
            PartitionSpec::momentum_of(0),
            PartitionSpec::spin_of(0),
            PartitionSpec::spins(2),
            PartitionSpec::momenta(2),
            "p1.mom,p2.spin".parse::<PartitionSpec>().unwrap(),
        ];
        for &alpha in &[FRAC_PI_8, FRAC_PI_4] {
            for &beta in &[FRAC_PI_8, FRAC_PI_4] {
                let s = friis_pm(alpha, beta);
                let mut varying = Vec::new();
                for p in &partitions {
                    let report = invariance_scan(&s, p, 30, 3.0, 1e-9, 17).unwrap();
                    if report.verdict == Verdict::Varies {
                        varying.push(p.to_string());
                    }
                }
                assert!(
                    !varying.is_empty(),
                    "no frame-dependent partition at alpha={alpha}, beta={beta}"
                );
            }
        }
    }

    #[test]
    fn phase_invariance_holds_exactly() {
        let partitions = vec![
            PartitionSpec::spin_of(0),
            PartitionSpec::particle(1),
            PartitionSpec::momenta(2),
        ];
        let s = friis_pm(0.9, 0.4);
        for &phi in &[0.0, std::f64::consts::PI, 1.234567] {
            assert!(phase_invariance_check(&s, phi, &partitions).unwrap());
        }
        let mut rng = rng_from_seed(23);
        for _ in 0..10 {
            let s = random_state(&mut rng, 2, 2);
            let phi: f64 = rng.random_range(-10.0..10.0);
            assert!(phase_invariance_check(&s, phi, &partitions).unwrap());
        }
    }
}

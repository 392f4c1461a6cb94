//! Density matrices over explicit configuration bases, partial traces over
//! spin/momentum factor partitions, and linear-entropy measures.
//!
//! The total n-particle state defines 2n degree-of-freedom factors: one
//! momentum factor and one spin factor per particle. A density matrix is
//! kept over an ordered list of such factors; each factor carries its value
//! alphabet (two spins, or the particle's momentum labels frozen at
//! construction). Partial traces sum the diagonal over any subset of
//! factors, which realizes every contraction of the two-particle density
//! matrix: tracing a complete particle (momentum and spin together) is the
//! covariant, Lorentz-invariant reduction; splitting a particle's spin from
//! its momentum is not, and the harness demonstrates the difference.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::state::{MomentumLabel, StateVector};

/// Hermiticity drift allowed on any constructed density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Allowed drift of the trace from 1.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues may dip this far below zero before the matrix is rejected
/// as non-PSD. The eigensolve runs in [`DensityMatrix::validate`] only,
/// not in the hot path.
pub const PSD_EIG_TOL: f64 = 1e-9;

/// A degree of freedom of one particle. Momentum orders before spin within
/// a particle, fixing the canonical factor order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dof {
    Momentum,
    Spin,
}

/// One factor of the total Hilbert space: (particle index, dof).
/// Particle indices are zero-based internally and one-based in selectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub particle: usize,
    pub dof: Dof,
}

impl Factor {
    pub fn momentum(particle: usize) -> Self {
        Self {
            particle,
            dof: Dof::Momentum,
        }
    }

    pub fn spin(particle: usize) -> Self {
        Self {
            particle,
            dof: Dof::Spin,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dof = match self.dof {
            Dof::Momentum => "mom",
            Dof::Spin => "spin",
        };
        write!(f, "p{}.{}", self.particle + 1, dof)
    }
}

/// The set of factors a reduction keeps; the complement is traced out.
///
/// Selector grammar: `p<k>.mom`, `p<k>.spin`, `particle<k>` (both factors
/// of particle k), comma-joined. Printing is canonical — complete
/// particles collapse to `particle<k>` — so parse∘print∘parse = parse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionSpec {
    keep: BTreeSet<Factor>,
}

impl PartitionSpec {
    pub fn new(factors: impl IntoIterator<Item = Factor>) -> Result<Self> {
        let keep: BTreeSet<Factor> = factors.into_iter().collect();
        if keep.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Self { keep })
    }

    /// Keep both factors of one particle: the covariant particle partition.
    pub fn particle(particle: usize) -> Self {
        Self {
            keep: BTreeSet::from([Factor::momentum(particle), Factor::spin(particle)]),
        }
    }

    pub fn spin_of(particle: usize) -> Self {
        Self {
            keep: BTreeSet::from([Factor::spin(particle)]),
        }
    }

    pub fn momentum_of(particle: usize) -> Self {
        Self {
            keep: BTreeSet::from([Factor::momentum(particle)]),
        }
    }

    /// All spin factors of an n-particle system (traces every momentum).
    pub fn spins(particle_count: usize) -> Self {
        Self {
            keep: (0..particle_count).map(Factor::spin).collect(),
        }
    }

    /// All momentum factors of an n-particle system (traces every spin).
    pub fn momenta(particle_count: usize) -> Self {
        Self {
            keep: (0..particle_count).map(Factor::momentum).collect(),
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = &Factor> + '_ {
        self.keep.iter()
    }

    pub fn contains(&self, factor: &Factor) -> bool {
        self.keep.contains(factor)
    }

    pub fn len(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }

    /// The complementary partition among the 2n factors of an n-particle
    /// system. Errors if that complement is empty.
    pub fn complement(&self, particle_count: usize) -> Result<Self> {
        let all = (0..particle_count).flat_map(|k| [Factor::momentum(k), Factor::spin(k)]);
        Self::new(all.filter(|f| !self.keep.contains(f)))
    }

    /// Every nonempty keep-set over the 2n factors of an n-particle system
    /// (2^{2n} − 1 partitions), in a fixed enumeration order.
    pub fn enumerate_all(particle_count: usize) -> Vec<Self> {
        let factors: Vec<Factor> = (0..particle_count)
            .flat_map(|k| [Factor::momentum(k), Factor::spin(k)])
            .collect();
        (1..(1usize << factors.len()))
            .map(|mask| Self {
                keep: factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, f)| *f)
                    .collect(),
            })
            .collect()
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        let mut iter = self.keep.iter().peekable();
        while let Some(factor) = iter.next() {
            if factor.dof == Dof::Momentum
                && iter
                    .peek()
                    .is_some_and(|next| **next == Factor::spin(factor.particle))
            {
                iter.next();
                pieces.push(format!("particle{}", factor.particle + 1));
            } else {
                pieces.push(factor.to_string());
            }
        }
        write!(f, "{}", pieces.join(","))
    }
}

impl FromStr for PartitionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::BadSelector {
            selector: s.to_string(),
            reason: reason.to_string(),
        };
        let parse_particle_index = |digits: &str| -> Result<usize> {
            let k: usize = digits
                .parse()
                .map_err(|_| bad("particle index must be a positive integer"))?;
            if k == 0 {
                return Err(bad("particle indices are one-based"));
            }
            Ok(k - 1)
        };
        let mut keep = BTreeSet::new();
        for item in s.split(',') {
            let item = item.trim();
            if let Some(digits) = item.strip_prefix("particle") {
                let k = parse_particle_index(digits)?;
                keep.insert(Factor::momentum(k));
                keep.insert(Factor::spin(k));
            } else if let Some(rest) = item.strip_prefix('p') {
                let (digits, dof) = rest
                    .split_once('.')
                    .ok_or_else(|| bad("expected p<k>.mom or p<k>.spin"))?;
                let k = parse_particle_index(digits)?;
                match dof {
                    "mom" => keep.insert(Factor::momentum(k)),
                    "spin" => keep.insert(Factor::spin(k)),
                    _ => return Err(bad("dof must be 'mom' or 'spin'")),
                };
            } else {
                return Err(bad("expected p<k>.mom, p<k>.spin or particle<k>"));
            }
        }
        if keep.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Self { keep })
    }
}

impl Serialize for PartitionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The value alphabet of one factor.
#[derive(Debug, Clone)]
pub enum FactorLabels {
    /// The particle's momentum alphabet, frozen at construction.
    Momentum(Vec<MomentumLabel>),
    /// Spin-up, spin-down.
    Spin,
}

impl FactorLabels {
    pub fn dim(&self) -> usize {
        match self {
            FactorLabels::Momentum(labels) => labels.len(),
            FactorLabels::Spin => 2,
        }
    }
}

/// One factor of a density matrix's basis together with its labels.
#[derive(Debug, Clone)]
pub struct FactorEntry {
    pub factor: Factor,
    pub labels: FactorLabels,
}

/// A density matrix over the tensor product of its factors' alphabets,
/// stored row-major in the factors' canonical order.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    factors: Vec<FactorEntry>,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// ρ = |ψ⟩⟨ψ| over the full 2n-factor product basis. The tracked
    /// global phase of the state cancels in |ψ⟩⟨ψ| and never enters.
    pub fn from_state(state: &StateVector) -> Self {
        let n = state.particle_count();
        let mut factors = Vec::with_capacity(2 * n);
        for j in 0..n {
            factors.push(FactorEntry {
                factor: Factor::momentum(j),
                labels: FactorLabels::Momentum(state.momentum_alphabet(j).to_vec()),
            });
            factors.push(FactorEntry {
                factor: Factor::spin(j),
                labels: FactorLabels::Spin,
            });
        }
        let dims: Vec<usize> = factors.iter().map(|f| f.labels.dim()).collect();
        let dim: usize = dims.iter().product();
        let strides = strides(&dims);

        let mut psi = DVector::<Complex64>::zeros(dim);
        for (amplitude, key) in state.term_keys() {
            let mut index = 0;
            for (j, (mom_idx, spin)) in key.iter().enumerate() {
                index += mom_idx * strides[2 * j] + spin.index() * strides[2 * j + 1];
            }
            psi[index] = amplitude;
        }
        let matrix = &psi * psi.adjoint();
        Self { factors, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn factor_entries(&self) -> &[FactorEntry] {
        &self.factors
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.labels.dim()).collect()
    }

    /// Tr ρ² via the squared Frobenius norm (the matrix is Hermitian).
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Linear entropy E = 1 − Tr ρ².
    pub fn linear_entropy(&self) -> f64 {
        1.0 - self.purity()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.diagonal().sum()
    }

    /// Partial trace keeping the given factors: sums the diagonal over the
    /// joint labels of every traced factor. Kept factors stay in this
    /// matrix's canonical order.
    pub fn partial_trace(&self, keep: &PartitionSpec) -> Result<DensityMatrix> {
        for factor in keep.factors() {
            if !self.factors.iter().any(|f| f.factor == *factor) {
                return Err(Error::FactorNotPresent {
                    factor: factor.to_string(),
                });
            }
        }
        let dims = self.factor_dims();
        let all_strides = strides(&dims);
        let mut kept_pos = Vec::new();
        let mut traced_pos = Vec::new();
        for (pos, entry) in self.factors.iter().enumerate() {
            if keep.contains(&entry.factor) {
                kept_pos.push(pos);
            } else {
                traced_pos.push(pos);
            }
        }

        // Every basis index splits as base_kept[a] + base_traced[t]; the
        // reduction sums m[base_a + base_t, base_b + base_t] over t.
        let kept_bases = enumerate_bases(&kept_pos, &dims, &all_strides);
        let traced_bases = enumerate_bases(&traced_pos, &dims, &all_strides);

        let out_dim = kept_bases.len();
        let mut out = DMatrix::<Complex64>::zeros(out_dim, out_dim);
        for (a, &base_a) in kept_bases.iter().enumerate() {
            for (b, &base_b) in kept_bases.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &base_t in &traced_bases {
                    acc += self.matrix[(base_a + base_t, base_b + base_t)];
                }
                out[(a, b)] = acc;
            }
        }

        let factors = kept_pos
            .iter()
            .map(|&pos| self.factors[pos].clone())
            .collect();
        Ok(DensityMatrix {
            factors,
            matrix: out,
        })
    }

    /// Per-partition linear entropies and their sum.
    pub fn partition_entropy_sum(&self, partitions: &[PartitionSpec]) -> Result<EntropyReport> {
        let mut entries = Vec::with_capacity(partitions.len());
        let mut sum = 0.0;
        for partition in partitions {
            let entropy = self.partial_trace(partition)?.linear_entropy();
            sum += entropy;
            entries.push(PartitionEntropy {
                partition: partition.clone(),
                entropy,
            });
        }
        Ok(EntropyReport { entries, sum })
    }

    /// Checks Hermiticity and unit trace; with `psd` also bounds the lowest
    /// eigenvalue via a Hermitian eigensolve (test/verification use).
    pub fn validate(&self, psd: bool) -> Result<()> {
        let herm_dev = (&self.matrix - self.matrix.adjoint()).camax();
        if herm_dev > HERMITICITY_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix is not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let trace = self.trace();
        let trace_dev = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace is {trace} (deviation {trace_dev:.3e})"
            )));
        }
        if psd {
            let eigen = self.matrix.clone().symmetric_eigen();
            let min = eigen.eigenvalues.min();
            if min < -PSD_EIG_TOL {
                return Err(Error::InvalidArgument(format!(
                    "density matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Row-major strides for the given dimensions.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// All index offsets generated by the factors at `positions`, enumerated in
/// row-major order of those factors.
fn enumerate_bases(positions: &[usize], dims: &[usize], all_strides: &[usize]) -> Vec<usize> {
    let total: usize = positions.iter().map(|&p| dims[p]).product();
    let mut bases = Vec::with_capacity(total);
    let mut digits = vec![0usize; positions.len()];
    loop {
        let base: usize = positions
            .iter()
            .zip(&digits)
            .map(|(&p, &d)| d * all_strides[p])
            .sum();
        bases.push(base);
        // Increment the mixed-radix counter; done when it wraps.
        let mut i = positions.len();
        loop {
            if i == 0 {
                return bases;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < dims[positions[i]] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// One partition's linear entropy within a report.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionEntropy {
    pub partition: PartitionSpec,
    pub entropy: f64,
}

/// Per-partition linear entropies E_i = 1 − Tr ρ_i² and their sum.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub entries: Vec<PartitionEntropy>,
    pub sum: f64,
}

impl fmt::Display for EntropyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.partition.to_string().len())
            .chain(["partition".len(), "sum".len()])
            .max()
            .unwrap_or(9);
        writeln!(f, "{:<width$}  {}", "partition", "entropy")?;
        for entry in &self.entries {
            writeln!(
                f,
                "{:<width$}  {:.16e}",
                entry.partition.to_string(),
                entry.entropy
            )?;
        }
        write!(f, "{:<width$}  {:.16e}", "sum", self.sum)
    }
}

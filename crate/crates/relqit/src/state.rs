//! Multi-particle relativistic qubit states over finite discrete momentum
//! superpositions, and the joint spin–momentum boost action.
//!
//! States are finite sums Σ a·|p₁σ₁, …, pₙσₙ⟩ with unit-norm discrete kets;
//! the continuum measure factor √((Λp)⁰/p⁰) is identically absorbed because
//! momenta are labels rather than densities, which keeps the boost action
//! exactly unitary. Under a boost each particle's momentum label moves to
//! Λp and its spin is rotated by the SU(2) lift of the Wigner rotation
//! W(Λ,p) — the rotation depends on the momentum, so spin and momentum
//! transformations do not factorize.
//!
//! A state's overall phase is physically unobservable (the density matrix
//! |ψ⟩⟨ψ| cancels it identically), so it is tracked as a separate unit
//! factor rather than folded into the amplitudes: gauge transformations are
//! then exact by construction instead of exact-up-to-rounding.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{FourVector, LorentzTransform, SpinHalfOperator, su2_lift, wigner_rotation};

/// Relative tolerance under which two momentum labels merge:
/// |p⃗₁ − p⃗₂| ≤ tol · max(1, |p⃗₁|, |p⃗₂|). Boosted momenta carry rounding
/// noise; without merging, duplicate basis labels corrupt traces.
pub const MOMENTUM_MERGE_TOL: f64 = 1e-9;

/// Masses must agree this tightly for two labels to merge.
pub const MASS_MATCH_TOL: f64 = 1e-12;

/// Allowed drift of Σ|a|² from 1 for a normalized state (checked after
/// every boost; the action is unitary, so larger drift signals a bug).
pub const NORM_TOL: f64 = 1e-10;

/// Spin-1/2 projection along the rest-frame quantization axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Basis index: up ↦ 0, down ↦ 1.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// An on-shell momentum used as a discrete basis label: mass plus
/// 3-momentum, with the energy always derived as +√(m² + |p⃗|²)
/// (positive-energy branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumLabel {
    mass: f64,
    px: f64,
    py: f64,
    pz: f64,
}

impl MomentumLabel {
    pub fn new(mass: f64, px: f64, py: f64, pz: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::NonPositiveMass { mass });
        }
        if !(px.is_finite() && py.is_finite() && pz.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "momentum components must be finite (got {px}, {py}, {pz})"
            )));
        }
        Ok(Self { mass, px, py, pz })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn px(&self) -> f64 {
        self.px
    }
    pub fn py(&self) -> f64 {
        self.py
    }
    pub fn pz(&self) -> f64 {
        self.pz
    }

    /// On-shell energy +√(m² + |p⃗|²); exactly m at rest.
    pub fn energy(&self) -> f64 {
        let p2 = self.px * self.px + self.py * self.py + self.pz * self.pz;
        if p2 == 0.0 {
            self.mass
        } else {
            (self.mass * self.mass + p2).sqrt()
        }
    }

    pub fn spatial_norm(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }

    pub fn four_vector(&self) -> FourVector {
        FourVector::new(self.energy(), self.px, self.py, self.pz)
    }

    /// The label Λp: spatial components from the transform, energy
    /// re-derived from the mass shell so the label stays exactly on-shell.
    pub fn boosted_by(&self, lt: &LorentzTransform) -> MomentumLabel {
        let v = lt.apply(&self.four_vector());
        MomentumLabel {
            mass: self.mass,
            px: v.x,
            py: v.y,
            pz: v.z,
        }
    }

    /// Label equality under the merge tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if (self.mass - other.mass).abs() > MASS_MATCH_TOL {
            return false;
        }
        let dx = self.px - other.px;
        let dy = self.py - other.py;
        let dz = self.pz - other.pz;
        let dist = (dx * dx + dy * dy + dz * dz).sqrt();
        let scale = 1.0_f64.max(self.spatial_norm()).max(other.spatial_norm());
        dist <= MOMENTUM_MERGE_TOL * scale
    }
}

/// One n-particle basis ket: a (momentum, spin) pair per particle.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    particles: Vec<(MomentumLabel, Spin)>,
}

impl Configuration {
    pub fn new(particles: Vec<(MomentumLabel, Spin)>) -> Self {
        Self { particles }
    }

    pub fn single(momentum: MomentumLabel, spin: Spin) -> Self {
        Self {
            particles: vec![(momentum, spin)],
        }
    }

    pub fn pair(first: (MomentumLabel, Spin), second: (MomentumLabel, Spin)) -> Self {
        Self {
            particles: vec![first, second],
        }
    }

    pub fn particle_count(&self) -> usize {
        self.particles.len()
    }

    pub fn particles(&self) -> &[(MomentumLabel, Spin)] {
        &self.particles
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.particles.len() == other.particles.len()
            && self
                .particles
                .iter()
                .zip(&other.particles)
                .all(|((pa, sa), (pb, sb))| sa == sb && pa.approx_eq(pb))
    }
}

/// Internal term key: per particle, (index into that particle's momentum
/// alphabet, spin). Lexicographic order on these keys is the canonical
/// basis order, so identical inputs yield bit-identical states.
type TermKey = Vec<(usize, Spin)>;

#[derive(Debug, Clone)]
struct Term {
    amplitude: Complex64,
    key: TermKey,
}

/// A normalized n-particle state: complex amplitudes over configurations,
/// plus per-particle momentum alphabets in first-appearance order.
#[derive(Debug, Clone)]
pub struct StateVector {
    particle_count: usize,
    alphabets: Vec<Vec<MomentumLabel>>,
    terms: Vec<Term>,
    phase: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn find_or_insert(alphabet: &mut Vec<MomentumLabel>, label: &MomentumLabel) -> usize {
    match alphabet.iter().position(|l| l.approx_eq(label)) {
        Some(idx) => idx,
        None => {
            alphabet.push(*label);
            alphabet.len() - 1
        }
    }
}

/// Merge duplicate configurations, drop exact zeros, freeze alphabets, and
/// sort terms into canonical order. Re-runs once if a merge cancels a term
/// to exactly zero, so alphabets never carry unsupported labels.
fn canonicalize(
    particle_count: usize,
    mut items: Vec<(Complex64, Vec<(MomentumLabel, Spin)>)>,
) -> Result<(Vec<Vec<MomentumLabel>>, Vec<Term>)> {
    loop {
        items.retain(|(a, _)| *a != ZERO);
        if items.is_empty() {
            return Err(Error::ZeroNorm);
        }
        let mut alphabets: Vec<Vec<MomentumLabel>> = vec![Vec::new(); particle_count];
        let mut merged: BTreeMap<TermKey, Complex64> = BTreeMap::new();
        for (amplitude, config) in &items {
            let key: TermKey = config
                .iter()
                .enumerate()
                .map(|(j, (p, s))| (find_or_insert(&mut alphabets[j], p), *s))
                .collect();
            *merged.entry(key).or_insert(ZERO) += *amplitude;
        }
        if merged.values().any(|a| *a == ZERO) {
            items = merged
                .into_iter()
                .filter(|(_, a)| *a != ZERO)
                .map(|(key, a)| {
                    let config = key
                        .iter()
                        .enumerate()
                        .map(|(j, (idx, s))| (alphabets[j][*idx], *s))
                        .collect();
                    (a, config)
                })
                .collect();
            continue;
        }
        let terms = merged
            .into_iter()
            .map(|(key, amplitude)| Term { amplitude, key })
            .collect();
        return Ok((alphabets, terms));
    }
}

fn l2_norm(terms: &[Term]) -> f64 {
    terms
        .iter()
        .map(|t| t.amplitude.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

impl StateVector {
    /// Builds a state from raw (amplitude, configuration) terms: duplicates
    /// are merged under the momentum tolerance, the result is normalized.
    pub fn new(terms: Vec<(Complex64, Configuration)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyState);
        }
        let particle_count = terms[0].1.particle_count();
        if particle_count == 0 {
            return Err(Error::InvalidArgument(
                "configurations must have at least one particle".into(),
            ));
        }
        for (a, config) in &terms {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::InvalidArgument("non-finite amplitude".into()));
            }
            if config.particle_count() != particle_count {
                return Err(Error::ParticleCountMismatch {
                    expected: particle_count,
                    found: config.particle_count(),
                });
            }
        }
        let items = terms
            .into_iter()
            .map(|(a, c)| (a, c.particles))
            .collect::<Vec<_>>();
        let (alphabets, mut canon) = canonicalize(particle_count, items)?;
        let norm = l2_norm(&canon);
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        for t in &mut canon {
            t.amplitude /= norm;
        }
        Ok(Self {
            particle_count,
            alphabets,
            terms: canon,
            phase: Complex64::new(1.0, 0.0),
        })
    }

    /// The two-particle comparison state
    /// (cos α |p₊,p₋⟩ + sin α |p₋,p₊⟩) ⊗ (cos β |↑↓⟩ + sin β |↓↑⟩),
    /// a four-qubit state with two spin and two momentum qubits.
    pub fn friis(alpha: f64, beta: f64, p_plus: MomentumLabel, p_minus: MomentumLabel) -> Result<Self> {
        if p_plus.approx_eq(&p_minus) {
            return Err(Error::CoincidentMomenta);
        }
        let (sa, ca) = alpha.sin_cos();
        let (sb, cb) = beta.sin_cos();
        let c = |x: f64| Complex64::new(x, 0.0);
        Self::new(vec![
            (c(ca * cb), Configuration::pair((p_plus, Spin::Up), (p_minus, Spin::Down))),
            (c(ca * sb), Configuration::pair((p_plus, Spin::Down), (p_minus, Spin::Up))),
            (c(sa * cb), Configuration::pair((p_minus, Spin::Up), (p_plus, Spin::Down))),
            (c(sa * sb), Configuration::pair((p_minus, Spin::Down), (p_plus, Spin::Up))),
        ])
    }

    pub fn particle_count(&self) -> usize {
        self.particle_count
    }

    /// Momentum labels that appear for particle `j`, in first-appearance
    /// order. This is the momentum alphabet density matrices are built over.
    pub fn momentum_alphabet(&self, particle: usize) -> &[MomentumLabel] {
        &self.alphabets[particle]
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Complex64, Configuration)> + '_ {
        self.terms.iter().map(|t| {
            let config = Configuration::new(
                t.key
                    .iter()
                    .enumerate()
                    .map(|(j, (idx, s))| (self.alphabets[j][*idx], *s))
                    .collect(),
            );
            (t.amplitude, config)
        })
    }

    /// Amplitude on a configuration (matched under the momentum tolerance);
    /// zero if the configuration does not appear.
    pub fn amplitude(&self, config: &Configuration) -> Complex64 {
        self.terms()
            .find(|(_, c)| c.approx_eq(config))
            .map(|(a, _)| a)
            .unwrap_or(ZERO)
    }

    /// The tracked global phase factor (unit modulus, unobservable).
    pub fn global_phase(&self) -> Complex64 {
        self.phase
    }

    /// The same ray with every amplitude multiplied by e^{iφ}. The factor
    /// lives in the phase slot, so all downstream density matrices are
    /// bit-identical to the unphased state's — gauge invariance is exact.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let mut out = self.clone();
        out.phase *= Complex64::from_polar(1.0, phi);
        out
    }

    /// √(Σ|a|²); 1 up to rounding for any constructed state.
    pub fn norm(&self) -> f64 {
        l2_norm(&self.terms)
    }

    /// Applies U(Λ) jointly to every particle: momentum labels move to Λp
    /// and each spin is rotated by D[W(Λ,p)], the weights being the σ-column
    /// of the lift. The action is unitary; the norm is re-checked, not
    /// re-imposed.
    pub fn boost(&self, lt: &LorentzTransform) -> Result<Self> {
        let n = self.particle_count;
        let mut boosted_labels: Vec<Vec<MomentumLabel>> = Vec::with_capacity(n);
        let mut spin_ops: Vec<Vec<SpinHalfOperator>> = Vec::with_capacity(n);
        for alphabet in &self.alphabets {
            let mut labels = Vec::with_capacity(alphabet.len());
            let mut ops = Vec::with_capacity(alphabet.len());
            for p in alphabet {
                ops.push(su2_lift(&wigner_rotation(lt, p)?));
                labels.push(p.boosted_by(lt));
            }
            boosted_labels.push(labels);
            spin_ops.push(ops);
        }

        let mut raw: Vec<(Complex64, Vec<(MomentumLabel, Spin)>)> = Vec::new();
        for term in &self.terms {
            // Cartesian product over each particle's two outgoing spins.
            for mask in 0..(1usize << n) {
                let mut amplitude = term.amplitude;
                let mut config = Vec::with_capacity(n);
                for (j, &(idx, sigma)) in term.key.iter().enumerate() {
                    let lambda = if (mask >> j) & 1 == 0 { Spin::Up } else { Spin::Down };
                    amplitude *= spin_ops[j][idx].entry(lambda.index(), sigma.index());
                    config.push((boosted_labels[j][idx], lambda));
                }
                if amplitude != ZERO {
                    raw.push((amplitude, config));
                }
            }
        }

        let (alphabets, terms) = canonicalize(n, raw)?;
        let norm = l2_norm(&terms);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NormDrift {
                norm,
                tolerance: NORM_TOL,
            });
        }
        Ok(Self {
            particle_count: n,
            alphabets,
            terms,
            phase: self.phase,
        })
    }

    /// ⟨self|other⟩: sesquilinear sum over configurations matched under the
    /// momentum tolerance (spins exact), including tracked phases.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.particle_count != other.particle_count {
            return Err(Error::ParticleCountMismatch {
                expected: self.particle_count,
                found: other.particle_count,
            });
        }
        let mut acc = ZERO;
        for ta in &self.terms {
            for tb in &other.terms {
                let matched = ta.key.iter().zip(&tb.key).enumerate().all(
                    |(j, ((ia, sa), (ib, sb)))| {
                        sa == sb && self.alphabets[j][*ia].approx_eq(&other.alphabets[j][*ib])
                    },
                );
                if matched {
                    acc += ta.amplitude.conj() * tb.amplitude;
                }
            }
        }
        Ok(self.phase.conj() * other.phase * acc)
    }

    pub(crate) fn term_keys(&self) -> impl Iterator<Item = (Complex64, &TermKey)> + '_ {
        self.terms.iter().map(|t| (t.amplitude, &t.key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector3;

    fn mom(mass: f64, px: f64, py: f64, pz: f64) -> MomentumLabel {
        MomentumLabel::new(mass, px, py, pz).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_nonpositive_mass() {
        assert!(matches!(
            MomentumLabel::new(0.0, 1.0, 0.0, 0.0),
            Err(Error::NonPositiveMass { .. })
        ));
        assert!(matches!(
            MomentumLabel::new(-1.0, 0.0, 0.0, 0.0),
            Err(Error::NonPositiveMass { .. })
        ));
    }

    #[test]
    fn rest_energy_is_exactly_mass() {
        assert_eq!(mom(1.25, 0.0, 0.0, 0.0).energy(), 1.25);
    }

    #[test]
    fn single_term_state_normalizes() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let s = StateVector::new(vec![(c(2.0), Configuration::single(p, Spin::Up))]).unwrap();
        assert_eq!(s.term_count(), 1);
        let (a, _) = s.terms().next().unwrap();
        assert_abs_diff_eq!(a.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn duplicate_terms_merge() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let s = StateVector::new(vec![
            (c(1.0), Configuration::single(p, Spin::Up)),
            (c(1.0), Configuration::single(p, Spin::Up)),
        ])
        .unwrap();
        assert_eq!(s.term_count(), 1);
        let (a, _) = s.terms().next().unwrap();
        assert_abs_diff_eq!(a.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn two_term_state_gets_equal_weights() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let s = StateVector::new(vec![
            (c(1.0), Configuration::single(p, Spin::Up)),
            (c(1.0), Configuration::single(p, Spin::Down)),
        ])
        .unwrap();
        for (a, _) in s.terms() {
            assert_abs_diff_eq!(a.re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
        }
    }

    #[test]
    fn empty_and_zero_norm_rejected() {
        assert!(matches!(StateVector::new(vec![]), Err(Error::EmptyState)));
        let p = mom(1.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            StateVector::new(vec![(c(0.0), Configuration::single(p, Spin::Up))]),
            Err(Error::ZeroNorm)
        ));
        // Exact cancellation after merging is also a zero-norm state.
        assert!(matches!(
            StateVector::new(vec![
                (c(1.0), Configuration::single(p, Spin::Up)),
                (c(-1.0), Configuration::single(p, Spin::Up)),
            ]),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn mismatched_particle_counts_rejected() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let err = StateVector::new(vec![
            (c(1.0), Configuration::single(p, Spin::Up)),
            (c(1.0), Configuration::pair((p, Spin::Up), (q, Spin::Down))),
        ]);
        assert!(matches!(err, Err(Error::ParticleCountMismatch { .. })));
    }

    #[test]
    fn friis_product_point_is_a_single_term() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let s = StateVector::friis(0.0, 0.0, p, q).unwrap();
        assert_eq!(s.term_count(), 1);
        let (a, cfg) = s.terms().next().unwrap();
        assert_abs_diff_eq!(a.re, 1.0, epsilon = 1e-15);
        assert_eq!(cfg.particles()[0].1, Spin::Up);
        assert_eq!(cfg.particles()[1].1, Spin::Down);
    }

    #[test]
    fn friis_maximal_point_has_four_equal_amplitudes() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let s = StateVector::friis(
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_4,
            p,
            q,
        )
        .unwrap();
        assert_eq!(s.term_count(), 4);
        for (a, _) in s.terms() {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn friis_norm_is_one_for_any_angles() {
        let p = mom(1.0, 0.3, 0.0, 1.0);
        let q = mom(1.0, 0.0, -0.2, -1.0);
        for &(a, b) in &[(0.3, 1.2), (2.0, -0.7), (-1.1, 0.4)] {
            let s = StateVector::friis(a, b, p, q).unwrap();
            assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn friis_rejects_coincident_momenta() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            StateVector::friis(0.5, 0.5, p, p),
            Err(Error::CoincidentMomenta)
        ));
    }

    #[test]
    fn identity_boost_reproduces_state_exactly() {
        let p = mom(1.0, 0.2, -0.4, 1.0);
        let q = mom(1.0, -0.1, 0.0, -1.0);
        let s = StateVector::friis(0.6, 1.1, p, q).unwrap();
        let boosted = s.boost(&LorentzTransform::identity()).unwrap();
        assert_eq!(s.term_count(), boosted.term_count());
        for ((a, ca), (b, cb)) in s.terms().zip(boosted.terms()) {
            assert_eq!(a, b);
            assert_eq!(ca.particles(), cb.particles());
        }
        assert_eq!(s.global_phase(), boosted.global_phase());
    }

    #[test]
    fn rest_state_under_rotation_rotates_the_spinor() {
        let p = mom(1.0, 0.0, 0.0, 0.0);
        let s = StateVector::new(vec![(c(1.0), Configuration::single(p, Spin::Up))]).unwrap();
        let angle = 0.9;
        let r = LorentzTransform::rotation_about_axis(Vector3::y(), angle).unwrap();
        let rotated = s.boost(&r).unwrap();
        // su2_lift(R_y(θ)) column for |↑⟩ is (cos θ/2, sin θ/2).
        let up = rotated.amplitude(&Configuration::single(p, Spin::Up));
        let down = rotated.amplitude(&Configuration::single(p, Spin::Down));
        assert_abs_diff_eq!(up.re, (angle / 2.0).cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(down.re, (angle / 2.0).sin(), epsilon = 1e-14);
        assert_eq!(
            rotated.amplitude(&Configuration::single(p, Spin::Up)).im,
            0.0
        );
        // Momentum label untouched.
        assert_eq!(rotated.momentum_alphabet(0)[0], p);
    }

    #[test]
    fn boost_preserves_norm() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let s = StateVector::friis(
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_4,
            p,
            q,
        )
        .unwrap();
        let b = LorentzTransform::boost_along_axis(Vector3::x(), 2.0).unwrap();
        let boosted = s.boost(&b).unwrap();
        assert_abs_diff_eq!(boosted.norm(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn inner_product_of_state_with_itself_is_one() {
        let p = mom(1.0, 0.4, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let s = StateVector::friis(0.7, 0.2, p, q).unwrap();
        let ip = s.inner_product(&s).unwrap();
        assert_abs_diff_eq!(ip.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_spins_have_zero_overlap() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let up = StateVector::new(vec![(c(1.0), Configuration::single(p, Spin::Up))]).unwrap();
        let down = StateVector::new(vec![(c(1.0), Configuration::single(p, Spin::Down))]).unwrap();
        assert_eq!(up.inner_product(&down).unwrap(), ZERO);
    }

    #[test]
    fn inner_product_rejects_particle_count_mismatch() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let one = StateVector::new(vec![(c(1.0), Configuration::single(p, Spin::Up))]).unwrap();
        let two = StateVector::friis(0.3, 0.4, p, q).unwrap();
        assert!(matches!(
            one.inner_product(&two),
            Err(Error::ParticleCountMismatch { .. })
        ));
    }

    #[test]
    fn boost_is_unitary_on_inner_products() {
        let p = mom(1.0, 0.2, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.3, -1.0);
        let s = StateVector::friis(0.7, 0.2, p, q).unwrap();
        let t = StateVector::friis(1.1, -0.4, p, q).unwrap();
        let before = s.inner_product(&t).unwrap();
        let b = LorentzTransform::boost_along_axis(
            Vector3::new(0.6, 0.0, 0.8),
            1.5,
        )
        .unwrap();
        let after = s.boost(&b).unwrap().inner_product(&t.boost(&b).unwrap()).unwrap();
        assert_abs_diff_eq!(before.re, after.re, epsilon = 1e-9);
        assert_abs_diff_eq!(before.im, after.im, epsilon = 1e-9);
    }

    #[test]
    fn boost_then_inverse_boost_round_trips() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let s = StateVector::friis(
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_8,
            p,
            q,
        )
        .unwrap();
        let b = LorentzTransform::boost_along_axis(Vector3::x(), 1.3).unwrap();
        let back = s.boost(&b).unwrap().boost(&b.inverse().unwrap()).unwrap();
        // The inverse rotation undoes each spin only to machine precision,
        // so residual terms at ~1e-16 may survive; amplitudes must match
        // within 1e-9 and the overlap must be 1.
        for (a, cfg) in s.terms() {
            let restored = back.amplitude(&cfg);
            assert_abs_diff_eq!(restored.re, a.re, epsilon = 1e-9);
            assert_abs_diff_eq!(restored.im, a.im, epsilon = 1e-9);
        }
        let overlap = s.inner_product(&back).unwrap();
        assert_abs_diff_eq!(overlap.norm(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn transverse_boost_applies_different_spin_rotations_per_momentum() {
        // Two distinct momenta get distinct D matrices: the spin and
        // momentum transformations do not factorize.
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let q = mom(1.0, 0.0, 0.0, -1.0);
        let b = LorentzTransform::boost_along_axis(Vector3::x(), 1.0).unwrap();
        let dp = su2_lift(&wigner_rotation(&b, &p).unwrap());
        let dq = su2_lift(&wigner_rotation(&b, &q).unwrap());
        let distance = (dp.matrix() - dq.matrix()).camax();
        assert!(distance > 1e-3, "distance {distance} unexpectedly small");
    }

    #[test]
    fn global_phase_lives_in_the_phase_slot() {
        let p = mom(1.0, 0.0, 0.0, 1.0);
        let s = StateVector::new(vec![(c(1.0), Configuration::single(p, Spin::Up))]).unwrap();
        let phased = s.with_global_phase(0.7);
        // Amplitudes bit-identical; phase factor recorded separately.
        for ((a, _), (b, _)) in s.terms().zip(phased.terms()) {
            assert_eq!(a, b);
        }
        let expected = Complex64::from_polar(1.0, 0.7);
        assert_eq!(phased.global_phase(), expected);
        // Inner products see the phase.
        let ip = s.inner_product(&phased).unwrap();
        assert_abs_diff_eq!(ip.re, expected.re, epsilon = 1e-15);
        assert_abs_diff_eq!(ip.im, expected.im, epsilon = 1e-15);
    }
}

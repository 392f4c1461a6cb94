//! JSON state specification files.
//!
//! Two document shapes are accepted. The explicit form lists the particle
//! count, a table of momentum labels, and terms referencing labels by
//! index:
//!
//! ```json
//! {
//!   "particles": 2,
//!   "momenta": [
//!     { "mass": 1.0, "p": [0.0, 0.0, 1.0] },
//!     { "mass": 1.0, "p": [0.0, 0.0, -1.0] }
//!   ],
//!   "terms": [
//!     {
//!       "amplitude": [0.7071067811865476, 0.0],
//!       "configuration": [
//!         { "momentum": 0, "spin": "up" },
//!         { "momentum": 1, "spin": "down" }
//!       ]
//!     }
//!   ]
//! }
//! ```
//!
//! The shorthand stanza builds the two-particle comparison state directly:
//!
//! ```json
//! {
//!   "friis": {
//!     "alpha": 0.7853981633974483,
//!     "beta": 0.7853981633974483,
//!     "p_plus": { "mass": 1.0, "p": [0.0, 0.0, 1.0] },
//!     "p_minus": { "mass": 1.0, "p": [0.0, 0.0, -1.0] }
//!   }
//! }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Configuration, MomentumLabel, Spin, StateVector};

/// A momentum label as written in spec files: mass plus 3-momentum.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentumSpec {
    pub mass: f64,
    pub p: [f64; 3],
}

impl MomentumSpec {
    pub fn to_label(&self) -> Result<MomentumLabel> {
        MomentumLabel::new(self.mass, self.p[0], self.p[1], self.p[2])
    }
}

/// One particle slot of a term: momentum table index plus spin.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub momentum: usize,
    pub spin: Spin,
}

/// One term: amplitude as [re, im] plus a per-particle configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub amplitude: [f64; 2],
    pub configuration: Vec<ParticleSpec>,
}

/// Parameters of the `friis` shorthand stanza.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FriisParams {
    pub alpha: f64,
    pub beta: f64,
    pub p_plus: MomentumSpec,
    pub p_minus: MomentumSpec,
}

/// A parsed state specification document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Friis {
        friis: FriisParams,
    },
    Explicit {
        particles: usize,
        momenta: Vec<MomentumSpec>,
        terms: Vec<TermSpec>,
    },
}

impl StateSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    /// Builds the state, validating momentum indices and particle counts.
    pub fn build(&self) -> Result<StateVector> {
        match self {
            StateSpec::Friis { friis } => StateVector::friis(
                friis.alpha,
                friis.beta,
                friis.p_plus.to_label()?,
                friis.p_minus.to_label()?,
            ),
            StateSpec::Explicit {
                particles,
                momenta,
                terms,
            } => {
                let labels: Vec<MomentumLabel> = momenta
                    .iter()
                    .map(MomentumSpec::to_label)
                    .collect::<Result<_>>()?;
                let mut built = Vec::with_capacity(terms.len());
                for term in terms {
                    if term.configuration.len() != *particles {
                        return Err(Error::SpecFile(format!(
                            "term lists {} particles, document says {}",
                            term.configuration.len(),
                            particles
                        )));
                    }
                    let mut slots = Vec::with_capacity(*particles);
                    for slot in &term.configuration {
                        let label = labels.get(slot.momentum).ok_or_else(|| {
                            Error::SpecFile(format!(
                                "momentum index {} out of range ({} labels)",
                                slot.momentum,
                                labels.len()
                            ))
                        })?;
                        slots.push((*label, slot.spin));
                    }
                    built.push((
                        Complex64::new(term.amplitude[0], term.amplitude[1]),
                        Configuration::new(slots),
                    ));
                }
                StateVector::new(built)
            }
        }
    }
}

/// Reads and builds a state from a JSON file on disk.
pub fn load_state(path: &std::path::Path) -> Result<StateVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
    StateSpec::from_json(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn explicit_document_builds() {
        let text = r#"{
            "particles": 2,
            "momenta": [
                { "mass": 1.0, "p": [0.0, 0.0, 1.0] },
                { "mass": 1.0, "p": [0.0, 0.0, -1.0] }
            ],
            "terms": [
                { "amplitude": [1.0, 0.0],
                  "configuration": [
                    { "momentum": 0, "spin": "up" },
                    { "momentum": 1, "spin": "down" } ] },
                { "amplitude": [0.0, 1.0],
                  "configuration": [
                    { "momentum": 1, "spin": "down" },
                    { "momentum": 0, "spin": "up" } ] }
            ]
        }"#;
        let state = StateSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(state.particle_count(), 2);
        assert_eq!(state.term_count(), 2);
        assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn friis_stanza_builds() {
        let text = r#"{
            "friis": {
                "alpha": 0.7853981633974483,
                "beta": 0.7853981633974483,
                "p_plus": { "mass": 1.0, "p": [0.0, 0.0, 1.0] },
                "p_minus": { "mass": 1.0, "p": [0.0, 0.0, -1.0] }
            }
        }"#;
        let state = StateSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(state.term_count(), 4);
        for (a, _) in state.terms() {
            assert_abs_diff_eq!(a.re, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn bad_momentum_index_is_reported() {
        let text = r#"{
            "particles": 1,
            "momenta": [ { "mass": 1.0, "p": [0.0, 0.0, 1.0] } ],
            "terms": [
                { "amplitude": [1.0, 0.0],
                  "configuration": [ { "momentum": 3, "spin": "up" } ] }
            ]
        }"#;
        let err = StateSpec::from_json(text).unwrap().build();
        assert!(matches!(err, Err(Error::SpecFile(_))));
    }

    #[test]
    fn wrong_particle_count_is_reported() {
        let text = r#"{
            "particles": 2,
            "momenta": [ { "mass": 1.0, "p": [0.0, 0.0, 1.0] } ],
            "terms": [
                { "amplitude": [1.0, 0.0],
                  "configuration": [ { "momentum": 0, "spin": "up" } ] }
            ]
        }"#;
        let err = StateSpec::from_json(text).unwrap().build();
        assert!(matches!(err, Err(Error::SpecFile(_))));
    }

    #[test]
    fn malformed_json_is_reported() {
        assert!(matches!(
            StateSpec::from_json("{ not json"),
            Err(Error::SpecFile(_))
        ));
    }
}

//! The restricted Lorentz group, standard boosts, Wigner little-group
//! rotations, and their spin-1/2 (SU(2)) lift.
//!
//! Conventions:
//! - metric signature (+,−,−,−), natural units (c = 1);
//! - the standard boost L(p) is the canonical *pure* boost taking the rest
//!   momentum k = (m,0,0,0) to p, so rest-frame spin labels are Wigner-basis
//!   spins;
//! - the Wigner rotation is W(Λ,p) = L(Λp)⁻¹ Λ L(p), an element of the SO(3)
//!   little group of k;
//! - the SU(2) lift uses axis–angle with θ ∈ [0, π] and
//!   U = cos(θ/2)·I − i·sin(θ/2)·(n̂·σ⃗), which fixes the projective sign
//!   branch deterministically.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::MomentumLabel;

/// Metric-preservation tolerance for freshly constructed transforms,
/// relative to the squared magnitude of the largest matrix entry (so the
/// check stays meaningful at large rapidity, where cosh² eats absolute
/// precision).
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Invariant-drift tolerance for composed/inverted transforms.
pub const COMPOSITION_TOL: f64 = 1e-10;

/// Orthogonality tolerance for 3×3 rotation blocks.
pub const ROTATION_TOL: f64 = 1e-12;

/// Unitarity/determinant tolerance for SU(2) operators.
pub const SU2_TOL: f64 = 1e-12;

/// Residual time-mixing in L(Λp)⁻¹ Λ L(p) above this is treated as a
/// little-group violation (a bug, or extreme-rapidity precision loss).
pub const LITTLE_GROUP_TOL: f64 = 1e-8;

/// Rotation angles below this are treated as the identity; the rotation
/// axis is undefined there.
pub const IDENTITY_ANGLE_TOL: f64 = 1e-9;

/// Rapidities beyond this lose enough double precision that results are
/// suspect; operations log a warning but proceed.
pub const RAPIDITY_WARN_THRESHOLD: f64 = 20.0;

const UNIT_AXIS_TOL: f64 = 1e-12;

/// A real four-vector (t, x, y, z) in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// Minkowski inner product with signature (+,−,−,−).
    pub fn minkowski_dot(&self, other: &Self) -> f64 {
        self.t * other.t - self.x * other.x - self.y * other.y - self.z * other.z
    }

    /// Invariant squared norm, p·p.
    pub fn minkowski_norm_sqr(&self) -> f64 {
        self.minkowski_dot(self)
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    fn as_vector4(&self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    fn from_vector4(v: Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// The Minkowski metric η = diag(+1,−1,−1,−1).
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A proper orthochronous Lorentz transformation as a validated 4×4 matrix.
///
/// Construction and composition re-check ΛᵀηΛ = η, det Λ = +1 and Λ⁰⁰ ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
}

/// Maximum elementwise deviation of ΛᵀηΛ from η.
fn metric_deviation(m: &Matrix4<f64>) -> f64 {
    let eta = metric();
    let residual = m.transpose() * eta * m - eta;
    residual.amax()
}

fn validate_lorentz(m: &Matrix4<f64>, tol: f64, context: &'static str) -> Result<()> {
    // Scale tolerances by the entry magnitude: products of cosh-sized
    // entries cancel to O(1), so the achievable absolute accuracy is
    // ~‖Λ‖² ε for the metric residual and ~‖Λ‖⁴ ε for the determinant.
    let scale = m.amax().max(1.0);
    let dev = metric_deviation(m);
    if dev > tol * scale * scale {
        return Err(Error::MetricViolation {
            context,
            deviation: dev,
            tolerance: tol * scale * scale,
        });
    }
    let det_dev = (m.determinant() - 1.0).abs();
    if det_dev > tol * scale.powi(4) {
        return Err(Error::MetricViolation {
            context,
            deviation: det_dev,
            tolerance: tol * scale.powi(4),
        });
    }
    if m[(0, 0)] < 1.0 - tol {
        return Err(Error::MetricViolation {
            context,
            deviation: 1.0 - m[(0, 0)],
            tolerance: tol,
        });
    }
    Ok(())
}

fn check_unit_axis(axis: &Vector3<f64>) -> Result<()> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > UNIT_AXIS_TOL {
        return Err(Error::NonUnitAxis { norm });
    }
    Ok(())
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
        }
    }

    /// Pure boost with the given rapidity along a unit axis.
    ///
    /// Acting on the rest momentum (m,0,0,0) it produces
    /// (m·cosh ξ, m·sinh ξ·n̂); the inverse is the boost with −ξ.
    pub fn boost_along_axis(axis: Vector3<f64>, rapidity: f64) -> Result<Self> {
        check_unit_axis(&axis)?;
        warn_extreme_rapidity(rapidity);
        let ch = rapidity.cosh();
        let sh = rapidity.sinh();
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * axis[i];
            m[(i + 1, 0)] = sh * axis[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] = if i == j { 1.0 } else { 0.0 } + (ch - 1.0) * axis[i] * axis[j];
            }
        }
        validate_lorentz(&m, CONSTRUCTION_TOL, "boost_along_axis")?;
        Ok(Self { matrix: m })
    }

    /// Spatial rotation by `angle` radians about a unit axis (Rodrigues
    /// formula); the time row and column stay (1,0,0,0).
    pub fn rotation_about_axis(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        check_unit_axis(&axis)?;
        let r = rotation3(&axis, angle);
        let mut m = Matrix4::identity();
        for i in 0..3 {
            for j in 0..3 {
                m[(i + 1, j + 1)] = r[(i, j)];
            }
        }
        validate_lorentz(&m, CONSTRUCTION_TOL, "rotation_about_axis")?;
        Ok(Self { matrix: m })
    }

    /// The canonical pure boost L(p) taking the rest momentum (m,0,0,0) to p.
    ///
    /// MomentumLabel enforces m > 0 at construction, so this cannot fail.
    pub fn standard_boost(p: &MomentumLabel) -> Self {
        let m = p.mass();
        let (px, py, pz) = (p.px(), p.py(), p.pz());
        if px == 0.0 && py == 0.0 && pz == 0.0 {
            return Self::identity();
        }
        let e = p.energy();
        let sp = [px, py, pz];
        let mut mat = Matrix4::identity();
        mat[(0, 0)] = e / m;
        for i in 0..3 {
            mat[(0, i + 1)] = sp[i] / m;
            mat[(i + 1, 0)] = sp[i] / m;
            for j in 0..3 {
                // δᵢⱼ + pᵢpⱼ/(m(E+m)) is (γ−1)n̂ᵢn̂ⱼ without the 1/|p⃗|² blowup.
                mat[(i + 1, j + 1)] =
                    if i == j { 1.0 } else { 0.0 } + sp[i] * sp[j] / (m * (e + m));
            }
        }
        debug_assert!(validate_lorentz(&mat, COMPOSITION_TOL, "standard_boost").is_ok());
        Self { matrix: mat }
    }

    /// Matrix product self·other: the transform that applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = self.matrix * other.matrix;
        validate_lorentz(&m, COMPOSITION_TOL, "compose")?;
        Ok(Self { matrix: m })
    }

    /// Group inverse, computed exactly as ηΛᵀη (no floating-point division).
    pub fn inverse(&self) -> Result<Self> {
        let m = eta_transpose_eta(&self.matrix);
        validate_lorentz(&m, COMPOSITION_TOL, "inverse")?;
        Ok(Self { matrix: m })
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector::from_vector4(self.matrix * v.as_vector4())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// Maximum elementwise deviation of ΛᵀηΛ from η; diagnostic hook for
    /// the verification suite.
    pub fn metric_deviation(&self) -> f64 {
        metric_deviation(&self.matrix)
    }
}

/// ηΛᵀη: the exact inverse of a metric-preserving Λ, by entry rearrangement.
fn eta_transpose_eta(m: &Matrix4<f64>) -> Matrix4<f64> {
    let mut out = m.transpose();
    for i in 1..4 {
        out[(0, i)] = -out[(0, i)];
        out[(i, 0)] = -out[(i, 0)];
    }
    out
}

fn warn_extreme_rapidity(rapidity: f64) {
    if rapidity.abs() > RAPIDITY_WARN_THRESHOLD {
        log::warn!(
            "rapidity {rapidity} exceeds {RAPIDITY_WARN_THRESHOLD}; cosh-scale cancellation \
             erodes double precision"
        );
    }
}

/// 3×3 rotation by `angle` about unit `axis` (Rodrigues formula).
fn rotation3(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    let k = Matrix3::new(
        0.0, -axis[2], axis[1], //
        axis[2], 0.0, -axis[0], //
        -axis[1], axis[0], 0.0,
    );
    Matrix3::identity() + k * s + k * k * (1.0 - c)
}

/// A little-group element: a 3×3 proper rotation acting on rest-frame spin.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerRotation {
    matrix: Matrix3<f64>,
}

fn rotation_deviation(m: &Matrix3<f64>) -> f64 {
    let ortho = (m.transpose() * m - Matrix3::identity()).amax();
    let det = (m.determinant() - 1.0).abs();
    ortho.max(det)
}

impl WignerRotation {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix3::identity(),
        }
    }

    /// Wraps a raw matrix, checking RᵀR = I and det R = +1.
    pub fn from_matrix(matrix: Matrix3<f64>) -> Result<Self> {
        Self::from_matrix_with_tol(matrix, ROTATION_TOL)
    }

    fn from_matrix_with_tol(matrix: Matrix3<f64>, tol: f64) -> Result<Self> {
        let dev = rotation_deviation(&matrix);
        if dev > tol {
            return Err(Error::MetricViolation {
                context: "rotation",
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    /// Axis–angle decomposition with θ ∈ [0, π].
    ///
    /// Angles below [`IDENTITY_ANGLE_TOL`] report (ẑ, 0): the axis is
    /// undefined at the identity. Near θ = π the axis comes from the
    /// symmetric part of the matrix (largest-diagonal pivot), with the sign
    /// taken from the antisymmetric part where it is still resolvable and a
    /// positive pivot component at θ = π exactly.
    pub fn axis_angle(&self) -> (Vector3<f64>, f64) {
        let r = &self.matrix;
        let cos_theta = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
        let theta = cos_theta.acos();
        if theta < IDENTITY_ANGLE_TOL {
            return (Vector3::z(), 0.0);
        }

        let antisym = Vector3::new(
            r[(2, 1)] - r[(1, 2)],
            r[(0, 2)] - r[(2, 0)],
            r[(1, 0)] - r[(0, 1)],
        );

        if std::f64::consts::PI - theta > 1e-6 {
            // Generic branch: antisym = 2 sinθ n̂.
            let axis = antisym / (2.0 * theta.sin());
            let axis = axis / axis.norm();
            return (axis, theta);
        }

        // Near θ = π the antisymmetric part underflows; recover |n̂ᵢ| from
        // R ≈ 2n̂n̂ᵀ − I and pivot on the largest diagonal entry.
        let diag = [r[(0, 0)], r[(1, 1)], r[(2, 2)]];
        let k = (0..3).max_by(|&a, &b| diag[a].total_cmp(&diag[b])).unwrap();
        let denom = 1.0 - cos_theta;
        let nk = (((diag[k] - cos_theta) / denom).max(0.0)).sqrt();
        let mut axis = Vector3::zeros();
        axis[k] = nk;
        for j in 0..3 {
            if j != k {
                axis[j] = (r[(j, k)] + r[(k, j)]) / (2.0 * denom * nk);
            }
        }
        let axis = axis / axis.norm();
        let axis = if axis.dot(&antisym) < 0.0 { -axis } else { axis };
        (axis, theta)
    }
}

/// The spin-1/2 unitary D[W] acting on a qubit's rest-frame spin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinHalfOperator {
    matrix: Matrix2<Complex64>,
}

impl SpinHalfOperator {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix2::identity(),
        }
    }

    pub fn from_matrix(matrix: Matrix2<Complex64>) -> Result<Self> {
        let unitarity = (matrix.adjoint() * matrix - Matrix2::identity()).camax();
        let det = matrix.determinant();
        let det_dev = (det - Complex64::new(1.0, 0.0)).norm();
        let dev = unitarity.max(det_dev);
        if dev > SU2_TOL {
            return Err(Error::MetricViolation {
                context: "su2 operator",
                deviation: dev,
                tolerance: SU2_TOL,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.matrix
    }

    /// Entry (row, col) with basis order (spin-up, spin-down).
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }
}

/// The Pauli matrices (σ_x, σ_y, σ_z) in the spin-up/spin-down basis.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

/// The Wigner little-group rotation W(Λ,p) = L(Λp)⁻¹ Λ L(p).
///
/// The 4×4 product fixes the rest momentum (m,0,0,0); its time row and
/// column must come back to (1,0,0,0) up to [`LITTLE_GROUP_TOL`], else the
/// computation has degenerated and an error is returned.
pub fn wigner_rotation(lt: &LorentzTransform, p: &MomentumLabel) -> Result<WignerRotation> {
    let l_p = LorentzTransform::standard_boost(p);
    let boosted = p.boosted_by(lt);
    let l_bp = LorentzTransform::standard_boost(&boosted);
    let w = eta_transpose_eta(l_bp.matrix()) * lt.matrix() * l_p.matrix();

    let mut residual = (w[(0, 0)] - 1.0).abs();
    for i in 1..4 {
        residual = residual.max(w[(0, i)].abs()).max(w[(i, 0)].abs());
    }
    if residual > LITTLE_GROUP_TOL {
        return Err(Error::LittleGroupViolation {
            residual,
            tolerance: LITTLE_GROUP_TOL,
        });
    }

    let block = Matrix3::from_fn(|i, j| w[(i + 1, j + 1)]);
    // The block of a product that passed the little-group gate is orthogonal
    // to the same accuracy; validate at the gate tolerance so extreme (but
    // admissible) rapidities are not rejected twice as hard.
    WignerRotation::from_matrix_with_tol(block, LITTLE_GROUP_TOL).map_err(|_| {
        Error::LittleGroupViolation {
            residual: rotation_deviation(&block),
            tolerance: LITTLE_GROUP_TOL,
        }
    })
}

/// Residual by which L(Λp)⁻¹ Λ L(p) fails to fix the rest momentum: the
/// largest deviation of its time row and column from (1,0,0,0).
/// Diagnostic hook for the verification suite.
pub fn little_group_residual(lt: &LorentzTransform, p: &MomentumLabel) -> f64 {
    let l_p = LorentzTransform::standard_boost(p);
    let l_bp = LorentzTransform::standard_boost(&p.boosted_by(lt));
    let w = eta_transpose_eta(l_bp.matrix()) * lt.matrix() * l_p.matrix();
    let mut residual = (w[(0, 0)] - 1.0).abs();
    for i in 1..4 {
        residual = residual.max(w[(0, i)].abs()).max(w[(i, 0)].abs());
    }
    residual
}

/// Spin-1/2 representation of a little-group rotation:
/// U = cos(θ/2)·I − i·sin(θ/2)·(n̂·σ⃗) on the θ ∈ [0, π] branch.
pub fn su2_lift(r: &WignerRotation) -> SpinHalfOperator {
    let (axis, theta) = r.axis_angle();
    if theta == 0.0 {
        return SpinHalfOperator::identity();
    }
    let (s, c) = (theta / 2.0).sin_cos();
    let [sx, sy, sz] = pauli();
    let n_sigma = sx * Complex64::new(axis[0], 0.0)
        + sy * Complex64::new(axis[1], 0.0)
        + sz * Complex64::new(axis[2], 0.0);
    let u = Matrix2::identity() * Complex64::new(c, 0.0) - n_sigma * Complex64::new(0.0, s);
    SpinHalfOperator::from_matrix(u).expect("cos/sin construction is unitary to machine precision")
}

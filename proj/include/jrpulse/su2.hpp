#pragma once

// Exact small-dimension unitary algebra for a two-spin system in the
// rotating frame: SU(2) rotation constructors, the constant-amplitude
// off-resonance pulse propagator, two-spin free precession, and
// phase-insensitive comparison utilities.
//
// Conventions, fixed here for the whole project:
//   * active rotations, rot(theta, phi) = exp(-i theta (cos(phi) Ix + sin(phi) Iy)),
//     where Ia = sigma_a / 2;
//   * rot_z(theta) = exp(-i theta Iz) = diag(e^{-i theta/2}, e^{+i theta/2});
//   * spin I precesses at +delta_omega, spin S at -delta_omega;
//   * angles are radians everywhere in-process; degrees appear only at
//     serialization/CLI boundaries.

#include <array>
#include <complex>

namespace jrpulse {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg_to_rad(double d) { return d * (kPi / 180.0); }
inline double rad_to_deg(double r) { return r * (180.0 / kPi); }

using Cplx = std::complex<double>;

// Row-major 2x2 complex matrix. Every value produced by a constructor in
// this module is unitary to 1e-12 (Frobenius).
struct Unitary2 {
  std::array<Cplx, 4> m{};

  Cplx& operator()(int r, int c) { return m[2 * r + c]; }
  const Cplx& operator()(int r, int c) const { return m[2 * r + c]; }

  static Unitary2 identity();
};

// Row-major 4x4 complex matrix for the coupled two-spin propagator.
struct Unitary4 {
  std::array<Cplx, 16> m{};

  Cplx& operator()(int r, int c) { return m[4 * r + c]; }
  const Cplx& operator()(int r, int c) const { return m[4 * r + c]; }

  static Unitary4 identity();
};

// Factorised (J = 0) propagator: one 2x2 unitary per spin.
struct SpinPairPropagator {
  Unitary2 spin_i;
  Unitary2 spin_s;
};

Unitary2 operator*(const Unitary2& a, const Unitary2& b);
Unitary4 operator*(const Unitary4& a, const Unitary4& b);

Unitary2 adjoint(const Unitary2& u);
Unitary4 adjoint(const Unitary4& u);

// exp(-i theta (cos(phase) Ix + sin(phase) Iy)); rot(theta, 0) is a theta_x
// pulse, rot(theta, pi/2) a theta_y pulse.
Unitary2 rot(double theta, double phase);

// exp(-i theta Iz).
Unitary2 rot_z(double theta);

// Propagator of a constant-amplitude pulse with off-resonance fraction f:
// exp(-i nominal_angle (Ix cos(phase) + Iy sin(phase) + f Iz)), where
// nominal_angle is the nutation angle the pulse would produce on resonance.
// Reduces to rot(nominal_angle, phase) entrywise-exactly at f = 0.
Unitary2 off_resonance_propagator(double f, double nominal_angle, double phase);

// Free precession under delta_omega (Iz - Sz) + pi J 2 Iz Sz for time tau.
// J in Hz, delta_omega in rad/s. At J = 0 this equals
// kron(rot_z(delta_omega*tau), rot_z(-delta_omega*tau)) entrywise-exactly.
Unitary4 free_precession(double delta_omega, double j_hz, double tau);

// Kronecker product, spin I as the left (major) factor.
Unitary4 kron(const Unitary2& u_i, const Unitary2& u_s);

// |Tr(v' u)| / N, clamped to [0, 1]. Symmetric, 1 iff u = v up to a global
// phase. Dimension agreement is enforced by the overload set.
double fidelity(const Unitary2& u, const Unitary2& v);
double fidelity(const Unitary4& u, const Unitary4& v);

// min over unit-modulus lambda of ||u - lambda v||_F. The minimiser is
// lambda = T/|T| with T = Tr(v' u), and the distance is evaluated directly at
// that lambda; the algebraically equal form sqrt(2N (1 - fidelity)) is not
// used because the 1 - fidelity subtraction cancels to a ~1e-8 floor.
double phase_aligned_distance(const Unitary2& u, const Unitary2& v);
double phase_aligned_distance(const Unitary4& u, const Unitary4& v);

bool equivalent_up_to_phase(const Unitary2& u, const Unitary2& v, double tol);
bool equivalent_up_to_phase(const Unitary4& u, const Unitary4& v, double tol);

// Larger of the two per-spin phase-aligned distances; each spin is aligned
// independently, so per-spin global phases (spinor signs) do not count.
double pair_distance(const SpinPairPropagator& a, const SpinPairPropagator& b);

double frobenius_distance(const Unitary2& u, const Unitary2& v);
double frobenius_distance(const Unitary4& u, const Unitary4& v);

// ||U'U - 1||_F
double unitarity_defect(const Unitary2& u);
double unitarity_defect(const Unitary4& u);

using Ket2 = std::array<Cplx, 2>;

Ket2 act(const Unitary2& u, const Ket2& psi);

// |<a|b>|
double state_overlap(const Ket2& a, const Ket2& b);

}  // namespace jrpulse

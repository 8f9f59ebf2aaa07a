#include "jrpulse/su2.hpp"

#include <cassert>
#include <cmath>

namespace jrpulse {

Unitary2 Unitary2::identity() {
  Unitary2 u;
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  return u;
}

Unitary4 Unitary4::identity() {
  Unitary4 u;
  for (int i = 0; i < 4; ++i) u(i, i) = 1.0;
  return u;
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  Unitary2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return c;
}

Unitary4 operator*(const Unitary4& a, const Unitary4& b) {
  Unitary4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

Unitary2 adjoint(const Unitary2& u) {
  Unitary2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = std::conj(u(j, i));
  return a;
}

Unitary4 adjoint(const Unitary4& u) {
  Unitary4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = std::conj(u(j, i));
  return a;
}

Unitary2 rot(double theta, double phase) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  // [[cos(t/2), -i sin(t/2) e^{-i phi}], [-i sin(t/2) e^{+i phi}, cos(t/2)]]
  Unitary2 u;
  u(0, 0) = Cplx(c, 0.0);
  u(0, 1) = Cplx(0.0, -s) * Cplx(cp, -sp);
  u(1, 0) = Cplx(0.0, -s) * Cplx(cp, sp);
  u(1, 1) = Cplx(c, 0.0);
  return u;
}

Unitary2 rot_z(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Unitary2 u;
  u(0, 0) = Cplx(c, -s);
  u(1, 1) = Cplx(c, s);
  return u;
}

Unitary2 off_resonance_propagator(double f, double nominal_angle, double phase) {
  assert(nominal_angle >= 0.0);
  const double gamma = std::sqrt(1.0 + f * f);
  const double zeta = 0.5 * gamma * nominal_angle;
  const double c = std::cos(zeta);
  const double s_over_gamma = std::sin(zeta) / gamma;
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  // phase = 0 form: [[c - i f s/g, -i s/g], [-i s/g, c + i f s/g]];
  // general phase conjugates the off-diagonals by e^{-+i phase}. The
  // expressions mirror rot() exactly so the f = 0 case matches it bitwise.
  const Cplx a(c, -f * s_over_gamma);
  const Cplx b(0.0, -s_over_gamma);
  Unitary2 u;
  u(0, 0) = a;
  u(0, 1) = b * Cplx(cp, -sp);
  u(1, 0) = b * Cplx(cp, sp);
  u(1, 1) = std::conj(a);
  return u;
}

Unitary4 free_precession(double delta_omega, double j_hz, double tau) {
  const double a = delta_omega * tau;  // contra-axial precession angle
  Unitary4 u = kron(rot_z(a), rot_z(-a));
  if (j_hz == 0.0) return u;  // keeps the J = 0 factorisation entrywise exact
  // pi J tau * 2 m_I m_S = -+ pi J tau / 2 on the (anti)parallel states
  const double jp = 0.5 * kPi * j_hz * tau;
  const Cplx para(std::cos(jp), -std::sin(jp));
  const Cplx anti(std::cos(jp), std::sin(jp));
  u(0, 0) *= para;
  u(1, 1) *= anti;
  u(2, 2) *= anti;
  u(3, 3) *= para;
  return u;
}

Unitary4 kron(const Unitary2& u_i, const Unitary2& u_s) {
  Unitary4 w;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2)
          w(2 * r1 + r2, 2 * c1 + c2) = u_i(r1, c1) * u_s(r2, c2);
  return w;
}

namespace {

template <typename U>
Cplx overlap_trace(const U& u, const U& v) {
  // Tr(v' u) = sum_ij conj(v_ij) u_ij
  Cplx t = 0.0;
  for (std::size_t k = 0; k < u.m.size(); ++k) t += std::conj(v.m[k]) * u.m[k];
  return t;
}

template <typename U>
double fidelity_impl(const U& u, const U& v, double dim) {
  const double fid = std::abs(overlap_trace(u, v)) / dim;
  return fid > 1.0 ? 1.0 : fid;
}

template <typename U>
double phase_aligned_distance_impl(const U& u, const U& v) {
  const Cplx t = overlap_trace(u, v);
  const double mag = std::abs(t);
  const Cplx lambda = mag > 0.0 ? t / mag : Cplx(1.0, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < u.m.size(); ++k)
    acc += std::norm(u.m[k] - lambda * v.m[k]);
  return std::sqrt(acc);
}

template <typename U>
double frobenius_distance_impl(const U& u, const U& v) {
  double acc = 0.0;
  for (std::size_t k = 0; k < u.m.size(); ++k) acc += std::norm(u.m[k] - v.m[k]);
  return std::sqrt(acc);
}

}  // namespace

double fidelity(const Unitary2& u, const Unitary2& v) { return fidelity_impl(u, v, 2.0); }
double fidelity(const Unitary4& u, const Unitary4& v) { return fidelity_impl(u, v, 4.0); }

double phase_aligned_distance(const Unitary2& u, const Unitary2& v) {
  return phase_aligned_distance_impl(u, v);
}
double phase_aligned_distance(const Unitary4& u, const Unitary4& v) {
  return phase_aligned_distance_impl(u, v);
}

bool equivalent_up_to_phase(const Unitary2& u, const Unitary2& v, double tol) {
  assert(tol > 0.0);
  return phase_aligned_distance(u, v) <= tol;
}
bool equivalent_up_to_phase(const Unitary4& u, const Unitary4& v, double tol) {
  assert(tol > 0.0);
  return phase_aligned_distance(u, v) <= tol;
}

double pair_distance(const SpinPairPropagator& a, const SpinPairPropagator& b) {
  const double di = phase_aligned_distance(a.spin_i, b.spin_i);
  const double ds = phase_aligned_distance(a.spin_s, b.spin_s);
  return di > ds ? di : ds;
}

double frobenius_distance(const Unitary2& u, const Unitary2& v) {
  return frobenius_distance_impl(u, v);
}
double frobenius_distance(const Unitary4& u, const Unitary4& v) {
  return frobenius_distance_impl(u, v);
}

double unitarity_defect(const Unitary2& u) {
  return frobenius_distance(adjoint(u) * u, Unitary2::identity());
}
double unitarity_defect(const Unitary4& u) {
  return frobenius_distance(adjoint(u) * u, Unitary4::identity());
}

Ket2 act(const Unitary2& u, const Ket2& psi) {
  return {u(0, 0) * psi[0] + u(0, 1) * psi[1],
          u(1, 0) * psi[0] + u(1, 1) * psi[1]};
}

double state_overlap(const Ket2& a, const Ket2& b) {
  return std::abs(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

}  // namespace jrpulse

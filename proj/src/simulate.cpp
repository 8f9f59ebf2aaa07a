#include "jrpulse/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "jrpulse/errors.hpp"

namespace jrpulse {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void check_system(const SpinSystem& sys) {
  require_positive(sys.delta_omega, "delta_omega");
  if (sys.j_hz < 0.0) throw std::invalid_argument("J must be non-negative");
  if (sys.mode != SimMode::instantaneous) require_positive(sys.omega1, "omega1");
}

double delay_or_throw(const Delay& d) {
  if (d.angle < 0.0)
    throw NonPhysicalError("negative delay in a timed simulation mode");
  return d.angle;
}

// exp(-i H t) for Hermitian H via eigendecomposition.
Unitary4 expm_hermitian(const Eigen::Matrix4cd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h);
  const Eigen::Vector4d evals = solver.eigenvalues();
  const Eigen::Matrix4cd& v = solver.eigenvectors();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k)
    phases(k) = std::exp(Cplx(0.0, -evals(k) * t));
  const Eigen::Matrix4cd e = v * phases.asDiagonal() * v.adjoint();
  Unitary4 u;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) u(r, c) = e(r, c);
  return u;
}

// omega1 (cos(phase)(Ix+Sx) + sin(phase)(Iy+Sy)) + doff (Iz-Sz) + pi J 2 Iz Sz
Eigen::Matrix4cd pulse_hamiltonian(double omega1, double phase, double doff, double j_hz) {
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, Cplx(0, -1), Cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  id.setIdentity();
  auto kron2 = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd w;
    for (int r1 = 0; r1 < 2; ++r1)
      for (int c1 = 0; c1 < 2; ++c1)
        w.block<2, 2>(2 * r1, 2 * c1) = a(r1, c1) * b;
    return w;
  };
  const Eigen::Matrix2cd rf = 0.5 * (std::cos(phase) * sx + std::sin(phase) * sy);
  Eigen::Matrix4cd h = omega1 * (kron2(rf, id) + kron2(id, rf));
  h += doff * 0.5 * (kron2(sz, id) - kron2(id, sz));
  h += kPi * j_hz * 0.5 * kron2(sz, sz);
  return h;
}

}  // namespace

SpinPairPropagator simulate_pair_instantaneous(const PulseSequence& seq, double delay_scale) {
  Unitary2 ui = Unitary2::identity();
  Unitary2 us = Unitary2::identity();
  for (const Instruction& ins : seq.ins) {
    if (const auto* p = std::get_if<HardPulse>(&ins)) {
      const Unitary2 r = rot(p->nutation, p->phase);
      ui = r * ui;
      us = r * us;
    } else if (const auto* d = std::get_if<Delay>(&ins)) {
      ui = rot_z(delay_scale * d->angle) * ui;
      us = rot_z(-delay_scale * d->angle) * us;
    } else {
      const Unitary2 z = rot_z(std::get<FrameRotation>(ins).angle);
      ui = z * ui;
      us = z * us;
    }
  }
  return {ui, us};
}

SpinPairPropagator simulate_pair_finite(const PulseSequence& seq, double f,
                                        double delay_scale) {
  Unitary2 ui = Unitary2::identity();
  Unitary2 us = Unitary2::identity();
  for (const Instruction& ins : seq.ins) {
    if (const auto* p = std::get_if<HardPulse>(&ins)) {
      ui = off_resonance_propagator(f, p->nutation, p->phase) * ui;
      us = off_resonance_propagator(-f, p->nutation, p->phase) * us;
    } else if (const auto* d = std::get_if<Delay>(&ins)) {
      const double a = delay_or_throw(*d);
      ui = rot_z(delay_scale * a) * ui;
      us = rot_z(-delay_scale * a) * us;
    } else {
      const Unitary2 z = rot_z(std::get<FrameRotation>(ins).angle);
      ui = z * ui;
      us = z * us;
    }
  }
  return {ui, us};
}

SimulationResult simulate_with_offset_ratio(const PulseSequence& seq,
                                            const SpinSystem& sys, double g) {
  check_system(sys);
  SimulationResult res;
  res.duration = 0.0;

  if (sys.mode == SimMode::instantaneous || sys.mode == SimMode::finite) {
    for (const Instruction& ins : seq.ins) {
      if (const auto* p = std::get_if<HardPulse>(&ins)) {
        if (sys.mode == SimMode::finite) res.duration += p->nutation / sys.omega1;
      } else if (const auto* d = std::get_if<Delay>(&ins)) {
        if (sys.mode == SimMode::finite) delay_or_throw(*d);
        res.duration += d->angle / sys.delta_omega;
      }
    }
    res.pair = sys.mode == SimMode::instantaneous
                   ? simulate_pair_instantaneous(seq, g)
                   : simulate_pair_finite(seq, g * sys.offres_fraction(), g);
    res.full = kron(res.pair->spin_i, res.pair->spin_s);
    return res;
  }

  // coupled 4x4 evolution
  Unitary4 u = Unitary4::identity();
  const double doff = g * sys.delta_omega;
  for (const Instruction& ins : seq.ins) {
    if (const auto* p = std::get_if<HardPulse>(&ins)) {
      const double dt = p->nutation / sys.omega1;
      u = expm_hermitian(pulse_hamiltonian(sys.omega1, p->phase, doff, sys.j_hz), dt) * u;
      res.duration += dt;
    } else if (const auto* d = std::get_if<Delay>(&ins)) {
      const double tau = delay_or_throw(*d) / sys.delta_omega;  // nominal timing
      u = free_precession(doff, sys.j_hz, tau) * u;
      res.duration += tau;
    } else {
      const double a = std::get<FrameRotation>(ins).angle;
      u = kron(rot_z(a), rot_z(a)) * u;
    }
  }
  res.full = u;
  return res;
}

SimulationResult simulate(const PulseSequence& seq, const SpinSystem& sys) {
  return simulate_with_offset_ratio(seq, sys, 1.0);
}

double total_duration(const PulseSequence& seq, const SpinSystem& sys) {
  check_system(sys);
  double dur = 0.0;
  for (const Instruction& ins : seq.ins) {
    if (const auto* p = std::get_if<HardPulse>(&ins)) {
      if (sys.mode != SimMode::instantaneous) dur += p->nutation / sys.omega1;
    } else if (const auto* d = std::get_if<Delay>(&ins)) {
      dur += delay_or_throw(*d) / sys.delta_omega;
    }
  }
  return dur;
}

}  // namespace jrpulse

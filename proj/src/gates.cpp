#include "jrpulse/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jrpulse/errors.hpp"
#include "jrpulse/simulate.hpp"

namespace jrpulse {

namespace {

constexpr double kHalfPi = 0.5 * kPi;

PulseSequence seq_named(const char* name, std::string target,
                        std::vector<Instruction> ins) {
  return PulseSequence{name, std::move(target), std::move(ins)};
}

}  // namespace

SandwichAngles sandwich_angles_90(double f) {
  if (std::abs(f) > 1.0)
    throw OutOfRangeError("sandwich_angles_90: |f| > 1, sandwich angles become unreal");
  SandwichAngles s;
  s.phi = -std::asin(f);
  s.theta_nominal = std::acos(-f * f) / std::sqrt(1.0 + f * f);
  s.tau_factor = f != 0.0 ? 2.0 * s.phi / (kPi * f) : -2.0 / kPi;
  return s;
}

SandwichAngles sandwich_angles(double theta, double f) {
  if (theta == kPi)
    throw DegenerateError(
        "sandwich_angles: 180-degree target rejected; use a corrected-180 form");
  if (!(theta > 0.0 && theta < kPi))
    throw std::invalid_argument("sandwich_angles: theta must lie strictly in (0, pi)");
  const double t = std::tan(0.5 * theta);
  if (std::abs(f) * t > 1.0)
    throw OutOfRangeError(
        "sandwich_angles: |f| exceeds cot(theta/2), sandwich angles become unreal");
  SandwichAngles s;
  s.phi = -std::asin(std::clamp(f * t, -1.0, 1.0));
  const double gamma_sq = 1.0 + f * f;
  const double arg = std::clamp(-f * f + gamma_sq * std::cos(theta), -1.0, 1.0);
  s.theta_nominal = std::acos(arg) / std::sqrt(gamma_sq);
  s.tau_factor = f != 0.0 ? 2.0 * s.phi / (kPi * f) : -(2.0 / kPi) * t;
  return s;
}

PulseSequence synth_jump_return(double theta, double phase) {
  return seq_named("jump-return", "theta about (phase - 90) on spin I, opposite sense on S",
                   {make_pulse(kHalfPi, phase + kPi), Delay{theta},
                    make_pulse(kHalfPi, phase)});
}

PulseSequence synth_contra_axial(double theta, double phase) {
  return seq_named("contra-axial", "[theta_phase, -theta_phase]",
                   {make_pulse(kHalfPi, phase - kHalfPi), Delay{theta},
                    make_pulse(kHalfPi, phase + kHalfPi)});
}

PulseSequence synth_selective(SpinTarget target, double theta, double phase,
                              SelectiveStyle style) {
  const double sel = target == SpinTarget::I ? 1.0 : -1.0;
  if (style == SelectiveStyle::extra_pulse) {
    return seq_named("selective-extra-pulse",
                     target == SpinTarget::I ? "[theta_phase, 1]" : "[1, theta_phase]",
                     {make_pulse(kHalfPi, phase - kHalfPi), Delay{sel * 0.5 * theta},
                      make_pulse(kHalfPi, phase + kHalfPi), make_pulse(0.5 * theta, phase)});
  }
  // passed-through form: the frame rotation shifts the phase of the second
  // pulse by -theta/2 and lands at the end of the sequence
  return seq_named("selective-frame",
                   target == SpinTarget::I ? "[theta_phase, 1]" : "[1, theta_phase]",
                   {make_pulse(kHalfPi, phase - kHalfPi), Delay{sel * 0.5 * theta},
                    make_pulse(kHalfPi, phase + kHalfPi - 0.5 * theta),
                    FrameRotation{0.5 * theta}});
}

PulseSequence synth_phase_pair(double theta, double phase, double alpha) {
  return seq_named("phase-pair", "[theta_phase, theta_{phase+alpha}]",
                   {FrameRotation{-0.5 * alpha}, Delay{0.5 * alpha},
                    make_pulse(theta, phase),
                    FrameRotation{-(2.0 * kPi - 0.5 * alpha)},
                    Delay{2.0 * kPi - 0.5 * alpha}});
}

PulseSequence synth_binomial_1331(double phase) {
  const double a = kPi / 16.0;  // 8a = 90 deg
  return seq_named("binomial-1331", "solvent-suppression excitation",
                   {make_pulse(a, phase), Delay{kPi}, make_pulse(3.0 * a, phase + kPi),
                    Delay{kPi}, make_pulse(3.0 * a, phase), Delay{kPi},
                    make_pulse(a, phase + kPi)});
}

PulseSequence synth_corrected_pulse(double theta, double phase, double f) {
  const SandwichAngles s = sandwich_angles(theta, f);
  return seq_named("corrected-pulse", "rot(theta, phase) on both spins at fraction f",
                   {Delay{s.phi}, make_pulse(s.theta_nominal, phase), Delay{s.phi}});
}

PulseSequence synth_corrected_double(double theta, double phase, double f) {
  const SandwichAngles s = sandwich_angles(theta, f);
  return seq_named("corrected-double", "rot(2 theta, phase) on both spins at fraction f",
                   {Delay{s.phi}, make_pulse(s.theta_nominal, phase),
                    Delay{2.0 * kPi + 2.0 * s.phi}, make_pulse(s.theta_nominal, phase),
                    Delay{s.phi}});
}

PulseSequence synth_corrected_180(double phase, double f, Corrected180Form form) {
  const SandwichAngles s = sandwich_angles_90(f);
  switch (form) {
    case Corrected180Form::plain:
      return seq_named("corrected-180-plain", "rot(180, phase) on both spins",
                       {make_pulse(s.theta_nominal, phase),
                        Delay{2.0 * kPi + 2.0 * s.phi},
                        make_pulse(s.theta_nominal, phase)});
    case Corrected180Form::framewrapped:
      return seq_named("corrected-180-framewrapped", "rot(180, phase) on both spins",
                       {make_pulse(s.theta_nominal, phase), FrameRotation{kHalfPi},
                        Delay{kPi + 2.0 * s.phi}, FrameRotation{kHalfPi},
                        make_pulse(s.theta_nominal, phase)});
    case Corrected180Form::phase_toggled:
      // the 180 frame rotation passed outward and dropped; delay stays
      // non-negative for the whole |f| <= 1 range
      return seq_named("corrected-180-phase-toggled", "rot(180, phase) on both spins",
                       {make_pulse(s.theta_nominal, phase - kHalfPi),
                        Delay{kPi + 2.0 * s.phi},
                        make_pulse(s.theta_nominal, phase + kHalfPi)});
  }
  throw std::logic_error("unreachable");
}

PulseSequence synth_corrected_selective_90(SpinTarget target, double phase, double f) {
  const SandwichAngles s = sandwich_angles_90(f);
  const double sel = target == SpinTarget::I ? 1.0 : -1.0;
  return seq_named("corrected-selective-90",
                   target == SpinTarget::I ? "[90_phase, 1]" : "[1, 90_phase]",
                   {Delay{s.phi}, make_pulse(s.theta_nominal, phase - kHalfPi),
                    Delay{sel * 0.25 * kPi + 2.0 * s.phi}, FrameRotation{0.25 * kPi},
                    make_pulse(s.theta_nominal, phase + kHalfPi), Delay{s.phi}});
}

PulseSequence synthesize(const GateSpec& gate) {
  return std::visit(
      [](const auto& g) -> PulseSequence {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ContraAxial>)
          return synth_contra_axial(g.theta, g.phase);
        else if constexpr (std::is_same_v<T, Selective>)
          return synth_selective(g.target, g.theta, g.phase, g.style);
        else if constexpr (std::is_same_v<T, PhasePair>)
          return synth_phase_pair(g.theta, g.phase, g.alpha);
        else if constexpr (std::is_same_v<T, HardRotation>)
          return seq_named("hard", "rot(theta, phase) on both spins",
                           {make_pulse(g.theta, g.phase)});
        else
          return synth_binomial_1331(g.phase);
      },
      gate);
}

SpinPairPropagator gate_target(const GateSpec& gate) {
  return std::visit(
      [](const auto& g) -> SpinPairPropagator {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ContraAxial>)
          return {rot(g.theta, g.phase), rot(g.theta, g.phase + kPi)};
        else if constexpr (std::is_same_v<T, Selective>) {
          if (g.target == SpinTarget::I)
            return {rot(g.theta, g.phase), Unitary2::identity()};
          return {Unitary2::identity(), rot(g.theta, g.phase)};
        } else if constexpr (std::is_same_v<T, PhasePair>)
          return {rot(g.theta, g.phase), rot(g.theta, g.phase + g.alpha)};
        else if constexpr (std::is_same_v<T, HardRotation>)
          return {rot(g.theta, g.phase), rot(g.theta, g.phase)};
        else
          return simulate_pair_instantaneous(synth_binomial_1331(g.phase));
      },
      gate);
}

SpinTarget gate_target_spin(const GateSpec& gate) {
  if (const auto* sel = std::get_if<Selective>(&gate)) return sel->target;
  return SpinTarget::I;
}

}  // namespace jrpulse

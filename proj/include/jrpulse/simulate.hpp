#pragma once

// Binds a pulse sequence to physical parameters and computes propagators in
// three modes: instantaneous pulses (ideal), finite pulses with per-spin
// off-resonance, and fully coupled 4x4 evolution including J.

#include <optional>

#include "jrpulse/sequence.hpp"
#include "jrpulse/su2.hpp"

namespace jrpulse {

enum class SimMode { instantaneous, finite, coupled };

struct SpinSystem {
  double delta_omega = 0.0;  // rad/s, > 0; spins precess at +-delta_omega
  double j_hz = 0.0;         // Hz, >= 0
  double omega1 = 0.0;       // rad/s, > 0; ignored in instantaneous mode
  SimMode mode = SimMode::instantaneous;

  double offres_fraction() const { return delta_omega / omega1; }

  // The factorised treatment assumes |delta_omega| >> |J|; flag systems where
  // the multiplet width is not clearly negligible.
  bool weak_coupling_suspect() const { return delta_omega <= 10.0 * kPi * j_hz; }
};

struct SimulationResult {
  // Per-spin propagators; absent in coupled mode (no exact factorisation).
  std::optional<SpinPairPropagator> pair;
  // Coupled-mode propagator; in the factorised modes this is kron(pair).
  Unitary4 full;
  double duration = 0.0;  // seconds
};

// Time-ordered product of per-instruction propagators. Finite/coupled modes
// reject negative delays (NonPhysicalError); frame rotations are allowed in
// all modes and apply rot_z(angle) to both spins with the same sign. Finite
// pulses use the exact off-resonance propagator at f = delta_omega/omega1
// (+f on spin I, -f on spin S) and consume duration nutation/omega1 with no
// extra delay inserted.
SimulationResult simulate(const PulseSequence& seq, const SpinSystem& system);

// Same, with the actual offset scaled to g * delta_omega while the sequence
// keeps its nominal timings: delay durations stay angle/delta_omega but the
// precession angles scale by g, and finite/coupled pulses see f scaled by g.
// J is not scaled.
SimulationResult simulate_with_offset_ratio(const PulseSequence& seq,
                                            const SpinSystem& system, double g);

// Factorised per-spin simulations parameterised directly by the off-resonance
// fraction; these are the reference kernels behind the batched sweep engine.
// delay_scale plays the role of g for the precession angles.
SpinPairPropagator simulate_pair_instantaneous(const PulseSequence& seq,
                                               double delay_scale = 1.0);
SpinPairPropagator simulate_pair_finite(const PulseSequence& seq, double f,
                                        double delay_scale = 1.0);

// Sum of delay durations (angle/delta_omega) plus pulse durations
// (nutation/omega1; zero in instantaneous mode). Frame rotations contribute
// zero. Negative delays raise NonPhysicalError.
double total_duration(const PulseSequence& seq, const SpinSystem& system);

}  // namespace jrpulse

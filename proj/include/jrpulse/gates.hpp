#pragma once

// Synthesis of pulse sequences from abstract gate specifications: the
// jump-and-return family (contra-axial, selective, phase-pair rotations),
// the 1331 binomial excitation, and the off-resonance-corrected variants
// built from z-rotation sandwiches.

#include <variant>

#include "jrpulse/sequence.hpp"
#include "jrpulse/su2.hpp"

namespace jrpulse {

enum class SpinTarget { I, S };
enum class SelectiveStyle { extra_pulse, frame_rotation };
enum class Corrected180Form { plain, framewrapped, phase_toggled };

// Abstract targets. theta in [0, 2pi), phase/alpha in [0, 2pi).
struct ContraAxial {
  double theta = 0.0, phase = 0.0;  // [theta_phase, -theta_phase]
};
struct Selective {
  SpinTarget target = SpinTarget::I;
  double theta = 0.0, phase = 0.0;  // [theta_phase, 1] (or swapped)
  SelectiveStyle style = SelectiveStyle::extra_pulse;
};
struct PhasePair {
  double theta = 0.0, phase = 0.0, alpha = 0.0;  // [theta_phase, theta_{phase+alpha}]
};
struct HardRotation {
  double theta = 0.0, phase = 0.0;  // same rotation on both spins
};
struct Binomial1331Excite {
  double phase = 0.0;
};

using GateSpec =
    std::variant<ContraAxial, Selective, PhasePair, HardRotation, Binomial1331Excite>;

// z-rotation sandwich parameters for one corrected pulse: phi is the z
// rotation on spin I (spin S takes -phi), theta_nominal the nominal nutation
// of the central pulse, tau_factor the matching precession time in units of
// the 90-degree pulse length t90 (generally negative).
struct SandwichAngles {
  double phi = 0.0;
  double theta_nominal = 0.0;
  double tau_factor = 0.0;
};

// Sandwich for a corrected 90-degree rotation: phi = -asin(f),
// theta_nominal = acos(-f^2)/sqrt(1+f^2), tau_factor = 2 phi/(pi f) with the
// continuous limit -2/pi at f = 0. Throws OutOfRangeError for |f| > 1.
SandwichAngles sandwich_angles_90(double f);

// General-angle sandwich, 0 < theta < pi: phi = -asin(f tan(theta/2)),
// theta_nominal = acos(-f^2 + (1+f^2) cos(theta))/sqrt(1+f^2), valid for
// |f| <= cot(theta/2) (OutOfRangeError beyond). theta = pi is rejected with
// DegenerateError; use a corrected-180 form instead.
SandwichAngles sandwich_angles(double theta, double f);

// Two 90 pulses around a delay of contra-axial angle theta; identity on a
// non-precessing spin, and on the two spins [rot(theta, phase + 3pi/2),
// rot(theta, phase + pi/2)] (the classic form is phase = 0: 90(-x) t 90(x)).
PulseSequence synth_jump_return(double theta, double phase);

// 90(phase-90) theta[+z,-z] 90(phase+90)  ==  [theta_phase, -theta_phase].
PulseSequence synth_contra_axial(double theta, double phase);

// [theta_phase, 1] (or swapped for target = S). extra_pulse appends a hard
// (theta/2) pulse; frame_rotation uses a virtual z rotation instead, emitted
// in passed-through form: exactly two pulses plus one terminal frame
// rotation of theta/2.
PulseSequence synth_selective(SpinTarget target, double theta, double phase,
                              SelectiveStyle style);

// [theta_phase, theta_{phase+alpha}] via selective z rotations.
PulseSequence synth_phase_pair(double theta, double phase, double alpha);

// 1331 binomial excitation: pulses a, 3a, 3a, a (8a = 90 deg) with
// alternating phases, separated by 2-tau delays (contra-axial angle pi).
PulseSequence synth_binomial_1331(double phase);

// delay(phi'') pulse(theta'', phase) delay(phi''): both spins receive an
// ideal rot(theta, phase) when simulated with finite pulses at fraction f.
// The delays are generally negative; callers normalize.
PulseSequence synth_corrected_pulse(double theta, double phase, double f);

// tau'' theta'' (4tau + 2tau'') theta'' tau'': a corrected 2*theta rotation;
// tolerates at least twice the |f| range of the single sandwich.
PulseSequence synth_corrected_double(double theta, double phase, double f);

// Corrected 180 rotation, valid for |f| <= 1, in three equivalent forms:
//   plain:         theta' (4tau + 2tau') theta'
//   framewrapped:  theta' 90z (2tau + 2tau') 90z theta'
//   phase_toggled: theta'(-y') (2tau + 2tau') theta'(+y') with no frame
//                  rotations and no negative delays.
PulseSequence synth_corrected_180(double phase, double f, Corrected180Form form);

// tau' theta'(-y) (tau/2 + 2tau') 45z theta'(y) tau'  ==  [90_phase, 1]
// (or swapped); exact at the design fraction f, |f| <= 1. Outer delays are
// negative; callers normalize.
PulseSequence synth_corrected_selective_90(SpinTarget target, double phase, double f);

PulseSequence synthesize(const GateSpec& gate);

// Ideal target pair of a gate. The binomial excitation has no closed
// bracket form; its target is its own design-point (g = 1) propagator pair.
SpinPairPropagator gate_target(const GateSpec& gate);

// Spin the gate acts on (the comparison spin for sweeps); spin I except for
// Selective{target = S}.
SpinTarget gate_target_spin(const GateSpec& gate);

}  // namespace jrpulse

#pragma once

// Instruction representation for pulse sequences. Time runs left to right:
// ins.front() is applied first. Delays are stored as contra-axial precession
// angles (spin I rotates by +angle about z, spin S by -angle); the physical
// duration only appears once a spin system binds delta_omega.

#include <string>
#include <variant>
#include <vector>

namespace jrpulse {

// Nominal nutation angle (omega_1 * t, without off-resonance) and xy phase.
// nutation >= 0; negative requests are folded into phase + pi by make_pulse.
struct HardPulse {
  double nutation = 0.0;
  double phase = 0.0;
};

// Contra-axial precession angle. Negative only in intermediate form;
// physical sequences carry non-negative angles.
struct Delay {
  double angle = 0.0;
};

// Virtual non-selective z rotation on both spins, zero duration.
struct FrameRotation {
  double angle = 0.0;
};

using Instruction = std::variant<HardPulse, Delay, FrameRotation>;

HardPulse make_pulse(double nutation, double phase);

struct PulseSequence {
  std::string name;
  std::string target;  // freeform description of the intended gate
  std::vector<Instruction> ins;
};

// No negative delay angles and no frame rotations.
bool is_physical(const PulseSequence& seq);

PulseSequence concat(PulseSequence a, const PulseSequence& b);

// Boundary format: JSON array of {"kind": "pulse"|"delay"|"frame", ...} with
// angles in degrees ("nutation_deg"/"phase_deg" for pulses, "angle_deg"
// otherwise). sequence_from_json additionally accepts an object wrapper with
// a "sequence" member, as emitted by the CLI compile command.
std::string sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const std::string& text);

}  // namespace jrpulse

#pragma once

// Semantics-preserving rewrite passes over pulse sequences. Every pass
// preserves the simulated per-spin propagator pair up to per-spin global
// phase; delay merging and frame passing are exact, the wrap passes are
// exact up to spinor sign.

#include "jrpulse/sequence.hpp"

namespace jrpulse {

// Sum adjacent delays, remove zero-angle delays.
PulseSequence merge_delays(const PulseSequence& seq);

// Move every frame rotation to the sequence end. A z rotation by beta moved
// past a later pulse shifts that pulse's phase by -beta (sign pinned by the
// simulator-equivalence property tests); frame rotations commute freely with
// delays and merge with each other. Idempotent.
PulseSequence commute_frame_rotations_to_end(const PulseSequence& seq);

enum class TerminalFramePolicy { drop, keep, composite };

// Requires all frame rotations to be terminal (a suffix of the sequence).
// drop removes them (valid when the computation ends with the qubits in a
// z eigenstate); keep leaves the sequence unchanged; composite is a reserved
// policy slot and raises NotImplementedError.
PulseSequence drop_terminal_frame_rotations(const PulseSequence& seq,
                                            TerminalFramePolicy policy);

enum class WrapStyle {
  wrap4tau,  // add +-360 contra-axial blocks (4 tau of free precession)
  halfwrap,  // add a +-180 block (2 tau) plus a 180 frame rotation
};

// Make every delay angle non-negative. Idempotent; the per-spin propagator
// pair is unchanged up to per-spin spinor sign.
PulseSequence normalize_negative_delays(const PulseSequence& seq, WrapStyle style);

}  // namespace jrpulse

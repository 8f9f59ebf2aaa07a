#pragma once

// Grid verification of every sequence identity the synthesizer relies on:
// each entry simulates a family of constructions over an angle/fraction grid
// and records the worst per-spin phase-aligned distance from the target.

#include <string>
#include <vector>

#include "jrpulse/gates.hpp"

namespace jrpulse {

struct VerificationEntry {
  std::string name;     // what is verified
  std::string display;  // shorthand of the construction, time left to right
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  bool all_pass() const;
  std::string to_json() const;
  std::string to_text() const;
};

struct VerifyOptions {
  int grid_steps = 24;      // angular grid resolution over [0, 2pi)
  double tolerance = 1e-10;
  // Test hook: perturbs the nominal sandwich nutation angle before the
  // sandwich identities are checked, to demonstrate sensitivity.
  double theta_nominal_nudge = 0.0;
};

// grid_steps <= 0 yields an empty report (vacuously passing).
VerificationReport run_verification(const VerifyOptions& opts = {});

VerificationEntry verify_jump_return(const VerifyOptions& opts);
VerificationEntry verify_contra_axial(const VerifyOptions& opts);
VerificationEntry verify_selective_extra_pulse(const VerifyOptions& opts);
VerificationEntry verify_selective_frame_raw(const VerifyOptions& opts);
VerificationEntry verify_selective_frame_passed(const VerifyOptions& opts);
VerificationEntry verify_phase_pair(const VerifyOptions& opts);
VerificationEntry verify_sandwich_90(const VerifyOptions& opts);
VerificationEntry verify_sandwich_general(const VerifyOptions& opts);
VerificationEntry verify_corrected_double(const VerifyOptions& opts);
VerificationEntry verify_corrected_180(const VerifyOptions& opts, Corrected180Form form);
VerificationEntry verify_corrected_selective_90(const VerifyOptions& opts);

// f grid used by the sandwich/corrected entries: -0.99, -0.9 .. 0.9, 0.99.
std::vector<double> verification_fraction_grid();

}  // namespace jrpulse

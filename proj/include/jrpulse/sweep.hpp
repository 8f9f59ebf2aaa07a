#pragma once

// Parameter sweeps evaluated on the lane-parallel kernel backend: fidelity
// of a compiled sequence against its targets as the offset ratio g or the
// off-resonance fraction f varies, plus the jump-and-return vs 1331
// robustness comparison. Reports serialize to deterministic CSV.

#include <string>
#include <vector>

#include "jrpulse/gates.hpp"
#include "jrpulse/simulate.hpp"

namespace jrpulse {

struct SweepColumn {
  std::string name;
  std::vector<double> values;
};

struct SweepReport {
  std::string parameter;  // swept parameter name ("g" or "f")
  std::vector<double> grid;
  std::vector<SweepColumn> columns;

  // Header row plus one row per grid point; comma separators, 12 significant
  // digits, '.' decimal separator, LF line endings. Byte-identical across
  // runs for identical inputs.
  std::string to_csv() const;
};

// grid[k] = lo + (hi - lo) * k / (steps - 1); requires steps >= 2, lo < hi.
std::vector<double> linspace(double lo, double hi, int steps);

// Simulates the gate's synthesized sequence with the actual offset at
// g * delta_omega while timings stay nominal. Columns: fid_vs_target and
// fid_vs_identity for the target spin, and analytic reference columns
// (populated for the selective-90 extra-pulse gate, nan otherwise). In
// finite mode negative delays are first normalized with 360-degree wraps;
// in coupled mode fidelities compare the 4x4 propagator against the
// kron of the target pair.
SweepReport sweep_offset_ratio(const GateSpec& gate, const SpinSystem& system,
                               double g_min, double g_max, int steps);

// A corrected construction swept over its design off-resonance fraction and
// simulated in finite mode at exactly that fraction per spin, side by side
// with the bare uncorrected construction. Out-of-range f points are marked
// (in_range 0, corrected columns nan), not fatal.
struct CorrectedGate {
  enum class Kind { pulse, double_pulse, one_eighty, selective_90 };
  Kind kind = Kind::one_eighty;
  double theta = 0.5 * kPi;  // pulse / double_pulse only
  double phase = 0.0;
  Corrected180Form form = Corrected180Form::phase_toggled;  // one_eighty only
  SpinTarget target = SpinTarget::I;                        // selective_90 only
};

SweepReport sweep_offres_fraction(const CorrectedGate& gate,
                                  const std::vector<double>& f_grid);

// Robustness comparison (instantaneous pulses): the jump-and-return
// selective 90 and the 1331 binomial excitation, each scored on spin I
// against its own g = 1 design propagator.
SweepReport compare_1331(double g_min, double g_max, int steps);

}  // namespace jrpulse

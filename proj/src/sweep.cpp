#include "jrpulse/sweep.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "jrpulse/errors.hpp"
#include "jrpulse/kernels.hpp"
#include "jrpulse/rewrite.hpp"

namespace jrpulse {

namespace {

using kernels::Batch2;
using kernels::KernelOps;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Lane-parallel evaluation of the per-spin propagators of one sequence.
// Lane k simulates with off-resonance fraction f_lane[k] (finite mode) and
// delay angles scaled by delay_scale[k].
struct LaneEngine {
  const KernelOps& ops = kernels::active_kernels();
  Batch2 ui, us;
  Batch2 scratch_i, scratch_s;
  std::vector<double> ch, sh, shn;

  void reset(std::size_t lanes) {
    ui.resize(lanes);
    us.resize(lanes);
    scratch_i.resize(lanes);
    scratch_s.resize(lanes);
    ch.assign(ui.padded(), 1.0);
    sh.assign(ui.padded(), 0.0);
    shn.assign(ui.padded(), 0.0);
  }

  void pulse_instantaneous(double nutation, double phase) {
    const Unitary2 r = rot(nutation, phase);
    ops.apply_fixed(ui, r);
    ops.apply_fixed(us, r);
  }

  // per-lane nutation/phase pointers may be null for lane-constant values
  void pulse_finite(const std::vector<double>& f_lane, const double* nutation,
                    const double* phase, double nut0, double ph0) {
    for (std::size_t k = 0; k < ui.lanes; ++k) {
      const double nut = nutation ? nutation[k] : nut0;
      const double ph = phase ? phase[k] : ph0;
      scratch_i.set_lane(k, off_resonance_propagator(f_lane[k], nut, ph));
      scratch_s.set_lane(k, off_resonance_propagator(-f_lane[k], nut, ph));
    }
    ops.apply_batch(ui, scratch_i);
    ops.apply_batch(us, scratch_s);
  }

  // contra-axial z rotation; per-lane angle = scale[k] * angle (or angles[k])
  void delay(const std::vector<double>& scale, const double* angles, double angle0) {
    for (std::size_t k = 0; k < ui.lanes; ++k) {
      const double half = 0.5 * scale[k] * (angles ? angles[k] : angle0);
      ch[k] = std::cos(half);
      sh[k] = std::sin(half);
      shn[k] = -sh[k];
    }
    ops.apply_zrot(ui, ch.data(), sh.data());
    ops.apply_zrot(us, ch.data(), shn.data());
  }

  void frame(double angle) {
    const Unitary2 z = rot_z(angle);
    ops.apply_fixed(ui, z);
    ops.apply_fixed(us, z);
  }

  // fidelity of every lane of `b` against a fixed target
  std::vector<double> fidelities(const Batch2& b, const Unitary2& target) {
    std::vector<double> re(b.padded()), im(b.padded()), fid(b.lanes);
    ops.overlap(b, target, re.data(), im.data());
    for (std::size_t k = 0; k < b.lanes; ++k) {
      const double v = 0.5 * std::hypot(re[k], im[k]);
      fid[k] = v > 1.0 ? 1.0 : v;
    }
    return fid;
  }
};

void run_shared(LaneEngine& eng, const PulseSequence& seq, bool finite,
                const std::vector<double>& f_lane, const std::vector<double>& scale) {
  for (const Instruction& ins : seq.ins) {
    if (const auto* p = std::get_if<HardPulse>(&ins)) {
      if (finite)
        eng.pulse_finite(f_lane, nullptr, nullptr, p->nutation, p->phase);
      else
        eng.pulse_instantaneous(p->nutation, p->phase);
    } else if (const auto* d = std::get_if<Delay>(&ins)) {
      eng.delay(scale, nullptr, d->angle);
    } else {
      eng.frame(std::get<FrameRotation>(ins).angle);
    }
  }
}

// Lockstep evaluation of structurally identical per-lane sequences in finite
// mode at per-lane fraction f_lane[k]; frame rotations must be lane-constant.
void run_lockstep(LaneEngine& eng, const std::vector<PulseSequence>& lane_seqs,
                  const std::vector<double>& f_lane) {
  const std::size_t lanes = lane_seqs.size();
  if (lanes == 0) return;
  const std::size_t steps = lane_seqs[0].ins.size();
  const std::vector<double> unit_scale(lanes, 1.0);
  std::vector<double> nut(lanes), ph(lanes), ang(lanes);
  for (std::size_t j = 0; j < steps; ++j) {
    const Instruction& first = lane_seqs[0].ins[j];
    if (std::holds_alternative<HardPulse>(first)) {
      for (std::size_t k = 0; k < lanes; ++k) {
        const auto& p = std::get<HardPulse>(lane_seqs[k].ins[j]);
        nut[k] = p.nutation;
        ph[k] = p.phase;
      }
      eng.pulse_finite(f_lane, nut.data(), ph.data(), 0.0, 0.0);
    } else if (std::holds_alternative<Delay>(first)) {
      for (std::size_t k = 0; k < lanes; ++k)
        ang[k] = std::get<Delay>(lane_seqs[k].ins[j]).angle;
      eng.delay(unit_scale, ang.data(), 0.0);
    } else {
      eng.frame(std::get<FrameRotation>(first).angle);
    }
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("linspace: need at least 2 steps");
  if (!(lo < hi)) throw std::invalid_argument("linspace: need lo < hi");
  std::vector<double> v(steps);
  for (int k = 0; k < steps; ++k)
    v[k] = lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
  return v;
}

std::string SweepReport::to_csv() const {
  std::string out = parameter;
  for (const SweepColumn& c : columns) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out += format_sig12(grid[k]);
    for (const SweepColumn& c : columns) {
      out += ',';
      out += format_sig12(c.values[k]);
    }
    out += '\n';
  }
  return out;
}

SweepReport sweep_offset_ratio(const GateSpec& gate, const SpinSystem& system,
                               double g_min, double g_max, int steps) {
  SweepReport rep;
  rep.parameter = "g";
  rep.grid = linspace(g_min, g_max, steps);
  const std::size_t n = rep.grid.size();

  PulseSequence seq = synthesize(gate);
  if (system.mode != SimMode::instantaneous)
    seq = normalize_negative_delays(seq, WrapStyle::wrap4tau);

  const SpinPairPropagator target = gate_target(gate);
  const SpinTarget tspin = gate_target_spin(gate);
  const Unitary2& target_u = tspin == SpinTarget::I ? target.spin_i : target.spin_s;

  std::vector<double> fid_target(n), fid_identity(n);
  if (system.mode == SimMode::coupled) {
    const Unitary4 full_target = kron(target.spin_i, target.spin_s);
    for (std::size_t k = 0; k < n; ++k) {
      const SimulationResult res = simulate_with_offset_ratio(seq, system, rep.grid[k]);
      fid_target[k] = fidelity(res.full, full_target);
      fid_identity[k] = fidelity(res.full, Unitary4::identity());
    }
  } else {
    const bool finite = system.mode == SimMode::finite;
    const double f0 = finite ? system.offres_fraction() : 0.0;
    std::vector<double> f_lane(n), scale(n);
    for (std::size_t k = 0; k < n; ++k) {
      f_lane[k] = rep.grid[k] * f0;
      scale[k] = rep.grid[k];
    }
    LaneEngine eng;
    eng.reset(n);
    run_shared(eng, seq, finite, f_lane, scale);
    Batch2& ut = tspin == SpinTarget::I ? eng.ui : eng.us;
    fid_target = eng.fidelities(ut, target_u);
    fid_identity = eng.fidelities(ut, Unitary2::identity());
  }

  // analytic reference curves are known for the selective-90 extra-pulse gate
  const auto* sel = std::get_if<Selective>(&gate);
  const bool have_ref = sel && sel->style == SelectiveStyle::extra_pulse &&
                        std::abs(sel->theta - 0.5 * kPi) <= 1e-12;
  std::vector<double> ref_target(n, kNan), ref_identity(n, kNan);
  if (have_ref) {
    for (std::size_t k = 0; k < n; ++k) {
      ref_target[k] = std::abs(std::cos(kPi * (1.0 - rep.grid[k]) / 8.0));
      ref_identity[k] = std::abs(std::cos(kPi * (1.0 + rep.grid[k]) / 8.0));
    }
  }

  rep.columns = {{"fid_vs_target", std::move(fid_target)},
                 {"fid_vs_identity", std::move(fid_identity)},
                 {"ref_vs_target", std::move(ref_target)},
                 {"ref_vs_identity", std::move(ref_identity)}};
  return rep;
}

SweepReport sweep_offres_fraction(const CorrectedGate& gate,
                                  const std::vector<double>& f_grid) {
  for (std::size_t k = 1; k < f_grid.size(); ++k)
    if (!(f_grid[k - 1] < f_grid[k]))
      throw std::invalid_argument("f grid must be strictly increasing");

  const std::size_t n = f_grid.size();
  SweepReport rep;
  rep.parameter = "f";
  rep.grid = f_grid;

  SpinPairPropagator target;
  PulseSequence bare;
  switch (gate.kind) {
    case CorrectedGate::Kind::pulse:
      target = {rot(gate.theta, gate.phase), rot(gate.theta, gate.phase)};
      bare = PulseSequence{"bare-pulse", "", {make_pulse(gate.theta, gate.phase)}};
      break;
    case CorrectedGate::Kind::double_pulse:
      target = {rot(2.0 * gate.theta, gate.phase), rot(2.0 * gate.theta, gate.phase)};
      bare = PulseSequence{"bare-pulse", "", {make_pulse(2.0 * gate.theta, gate.phase)}};
      break;
    case CorrectedGate::Kind::one_eighty:
      target = {rot(kPi, gate.phase), rot(kPi, gate.phase)};
      bare = PulseSequence{"bare-pulse", "", {make_pulse(kPi, gate.phase)}};
      break;
    case CorrectedGate::Kind::selective_90:
      target = gate_target(Selective{gate.target, 0.5 * kPi, gate.phase,
                                     SelectiveStyle::frame_rotation});
      bare = synth_selective(gate.target, 0.5 * kPi, gate.phase,
                             SelectiveStyle::frame_rotation);
      break;
  }
  bare = normalize_negative_delays(bare, WrapStyle::wrap4tau);

  // synthesize per lane; collect the valid ones for the lockstep engine
  std::vector<PulseSequence> lane_seqs;
  std::vector<std::size_t> lane_index;
  std::vector<double> lane_f;
  std::vector<double> in_range(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = f_grid[k];
    try {
      PulseSequence s;
      switch (gate.kind) {
        case CorrectedGate::Kind::pulse:
          s = synth_corrected_pulse(gate.theta, gate.phase, f);
          break;
        case CorrectedGate::Kind::double_pulse:
          s = synth_corrected_double(gate.theta, gate.phase, f);
          break;
        case CorrectedGate::Kind::one_eighty:
          s = synth_corrected_180(gate.phase, f, gate.form);
          break;
        case CorrectedGate::Kind::selective_90:
          s = synth_corrected_selective_90(gate.target, gate.phase, f);
          break;
      }
      lane_seqs.push_back(normalize_negative_delays(s, WrapStyle::wrap4tau));
      lane_index.push_back(k);
      lane_f.push_back(f);
      in_range[k] = 1.0;
    } catch (const OutOfRangeError&) {
      // marked, not fatal
    }
  }

  std::vector<double> fc_i(n, kNan), fc_s(n, kNan), fu_i(n), fu_s(n);

  LaneEngine eng;
  if (!lane_seqs.empty()) {
    eng.reset(lane_seqs.size());
    run_lockstep(eng, lane_seqs, lane_f);
    const std::vector<double> fi = eng.fidelities(eng.ui, target.spin_i);
    const std::vector<double> fs = eng.fidelities(eng.us, target.spin_s);
    for (std::size_t j = 0; j < lane_index.size(); ++j) {
      fc_i[lane_index[j]] = fi[j];
      fc_s[lane_index[j]] = fs[j];
    }
  }

  {
    const std::vector<double> unit_scale(n, 1.0);
    eng.reset(n);
    run_shared(eng, bare, /*finite=*/true, f_grid, unit_scale);
    fu_i = eng.fidelities(eng.ui, target.spin_i);
    fu_s = eng.fidelities(eng.us, target.spin_s);
  }

  rep.columns = {{"in_range", std::move(in_range)},
                 {"fid_corrected_i", std::move(fc_i)},
                 {"fid_corrected_s", std::move(fc_s)},
                 {"fid_uncorrected_i", std::move(fu_i)},
                 {"fid_uncorrected_s", std::move(fu_s)}};
  return rep;
}

SweepReport compare_1331(double g_min, double g_max, int steps) {
  SweepReport rep;
  rep.parameter = "g";
  rep.grid = linspace(g_min, g_max, steps);
  const std::size_t n = rep.grid.size();

  const PulseSequence jr = synth_selective(SpinTarget::I, 0.5 * kPi, 0.0,
                                           SelectiveStyle::extra_pulse);
  const PulseSequence bin = synth_binomial_1331(0.0);
  const Unitary2 jr_design = rot(0.5 * kPi, 0.0);
  const Unitary2 bin_design = simulate_pair_instantaneous(bin).spin_i;

  const std::vector<double> no_f(n, 0.0);
  LaneEngine eng;
  eng.reset(n);
  run_shared(eng, jr, /*finite=*/false, no_f, rep.grid);
  std::vector<double> fid_jr = eng.fidelities(eng.ui, jr_design);

  eng.reset(n);
  run_shared(eng, bin, /*finite=*/false, no_f, rep.grid);
  std::vector<double> fid_bin = eng.fidelities(eng.ui, bin_design);

  rep.columns = {{"fid_jr_selective_90", std::move(fid_jr)},
                 {"fid_binomial_1331", std::move(fid_bin)}};
  return rep;
}

}  // namespace jrpulse

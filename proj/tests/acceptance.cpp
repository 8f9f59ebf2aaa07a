// Acceptance suite: one pass/fail line per criterion, nonzero exit status on
// any failure. Tolerances are pinned in code next to each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jrpulse/errors.hpp"
#include "jrpulse/gates.hpp"
#include "jrpulse/rewrite.hpp"
#include "jrpulse/simulate.hpp"
#include "jrpulse/sweep.hpp"
#include "jrpulse/verify.hpp"
#include "testutil.hpp"

using namespace jrpulse;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double>& find_col(const SweepReport& rep, const std::string& name) {
  for (const SweepColumn& c : rep.columns)
    if (c.name == name) return c.values;
  throw std::runtime_error("missing column " + name);
}

// 1. Offset-ratio sweep of the selective 90 reproduces the analytic fidelity
//    curves cos(pi(1 -+ g)/8) pointwise to 1e-10, in under a second.
Outcome criterion_fig2() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpinSystem inst{2.0 * kPi * 500.0, 0.0, 2.0 * kPi * 25000.0,
                        SimMode::instantaneous};
  const GateSpec gate =
      Selective{SpinTarget::I, 0.5 * kPi, 0.0, SelectiveStyle::extra_pulse};
  const SweepReport rep = sweep_offset_ratio(gate, inst, 0.5, 1.5, 101);
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.grid.size(); ++k) {
    const double g = rep.grid[k];
    worst = std::max(worst, std::abs(find_col(rep, "fid_vs_target")[k] -
                                     std::cos(kPi * (1.0 - g) / 8.0)));
    worst = std::max(worst, std::abs(find_col(rep, "fid_vs_identity")[k] -
                                     std::cos(kPi * (1.0 + g) / 8.0)));
  }
  const double dt = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "max deviation %.2e (tol 1e-10), %.3fs (limit 1s)",
                worst, dt);
  return {worst < 1e-10 && dt < 1.0, buf};
}

// 2. The six jump-and-return family identities hold to 1e-12 up to per-spin
//    phase over the 24-step angle grid, in under ten seconds.
Outcome criterion_identity_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opts;
  opts.grid_steps = 24;
  opts.tolerance = 1e-12;
  const VerificationEntry entries[] = {
      verify_jump_return(opts),          verify_contra_axial(opts),
      verify_selective_extra_pulse(opts), verify_selective_frame_raw(opts),
      verify_selective_frame_passed(opts), verify_phase_pair(opts),
  };
  double worst = 0.0;
  bool pass = true;
  for (const VerificationEntry& e : entries) {
    worst = std::max(worst, e.max_error);
    pass = pass && e.pass;
  }
  const double dt = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "max error %.2e (tol 1e-12), %.3fs (limit 10s)", worst,
                dt);
  return {pass && dt < 10.0, buf};
}

// 3. Sandwich exactness at the design fraction in finite mode, plus the
//    validity boundary raising OutOfRange exactly at |f| = cot(theta/2).
Outcome criterion_sandwich() {
  double worst = 0.0;
  for (double f : verification_fraction_grid()) {
    for (int k = 1; k <= 11; ++k) {
      const double theta = kPi * k / 12.0;
      if (std::abs(f) * std::tan(0.5 * theta) > 1.0 - 1e-4) continue;
      const PulseSequence seq = normalize_negative_delays(
          synth_corrected_pulse(theta, 0.0, f), WrapStyle::wrap4tau);
      const SpinPairPropagator got = simulate_pair_finite(seq, f);
      worst = std::max(worst,
                       pair_distance(got, {rot(theta, 0.0), rot(theta, 0.0)}));
    }
  }

  bool boundary_ok = true;
  for (int k = 1; k <= 11; ++k) {
    const double theta = kPi * k / 12.0;
    const double boundary = 1.0 / std::tan(0.5 * theta);
    try {
      sandwich_angles(theta, boundary * (1.0 - 1e-9));
      sandwich_angles(theta, -boundary * (1.0 - 1e-9));
    } catch (const OutOfRangeError&) {
      boundary_ok = false;
    }
    for (double sign : {1.0, -1.0}) {
      try {
        sandwich_angles(theta, sign * boundary * (1.0 + 1e-9));
        boundary_ok = false;
      } catch (const OutOfRangeError&) {
      }
    }
  }
  for (double sign : {1.0, -1.0}) {
    try {
      sandwich_angles_90(sign * (1.0 + 1e-9));
      boundary_ok = false;
    } catch (const OutOfRangeError&) {
    }
  }

  char buf[128];
  std::snprintf(buf, sizeof buf, "max error %.2e (tol 1e-12), boundary %s", worst,
                boundary_ok ? "exact" : "WRONG");
  return {worst < 1e-12 && boundary_ok, buf};
}

// 4. All three corrected-180 forms reach fidelity 1 to 1e-10 on both spins
//    over |f| <= 1 and agree with each other up to per-spin phase.
Outcome criterion_corrected_180() {
  std::vector<double> grid = verification_fraction_grid();
  grid.insert(grid.begin(), -1.0);
  grid.push_back(1.0);
  double worst_fid = 1.0, worst_mutual = 0.0;
  for (double f : grid) {
    const SpinPairPropagator want{rot(kPi, 0.0), rot(kPi, 0.0)};
    SpinPairPropagator got[3];
    int idx = 0;
    for (Corrected180Form form : {Corrected180Form::plain, Corrected180Form::framewrapped,
                                  Corrected180Form::phase_toggled}) {
      const PulseSequence seq = normalize_negative_delays(
          synth_corrected_180(0.0, f, form), WrapStyle::wrap4tau);
      got[idx] = simulate_pair_finite(seq, f);
      worst_fid = std::min({worst_fid, fidelity(got[idx].spin_i, want.spin_i),
                            fidelity(got[idx].spin_s, want.spin_s)});
      ++idx;
    }
    worst_mutual = std::max({worst_mutual, pair_distance(got[0], got[1]),
                             pair_distance(got[0], got[2])});
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "min fidelity 1-%.2e (tol 1e-10), mutual %.2e",
                1.0 - worst_fid, worst_mutual);
  return {worst_fid >= 1.0 - 1e-10 && worst_mutual < 1e-10, buf};
}

// 5. Corrected selective 90: exact pair at the design fraction across
//    |f| <= 0.99; the uncorrected form scores strictly lower for |f| >= 0.1.
Outcome criterion_corrected_selective() {
  double worst_fid = 1.0;
  bool strictly_lower = true;
  for (SpinTarget target : {SpinTarget::I, SpinTarget::S}) {
    const SpinPairPropagator want =
        target == SpinTarget::I
            ? SpinPairPropagator{rot(0.5 * kPi, 0.0), Unitary2::identity()}
            : SpinPairPropagator{Unitary2::identity(), rot(0.5 * kPi, 0.0)};
    for (double f : verification_fraction_grid()) {
      const PulseSequence seq = normalize_negative_delays(
          synth_corrected_selective_90(target, 0.0, f), WrapStyle::wrap4tau);
      const SpinPairPropagator got = simulate_pair_finite(seq, f);
      const double fid_t = target == SpinTarget::I
                               ? fidelity(got.spin_i, want.spin_i)
                               : fidelity(got.spin_s, want.spin_s);
      const double fid_o = target == SpinTarget::I
                               ? fidelity(got.spin_s, want.spin_s)
                               : fidelity(got.spin_i, want.spin_i);
      worst_fid = std::min({worst_fid, fid_t, fid_o});

      if (std::abs(f) >= 0.1) {
        const SpinPairPropagator unc = simulate_pair_finite(
            normalize_negative_delays(
                synth_selective(target, 0.5 * kPi, 0.0, SelectiveStyle::frame_rotation),
                WrapStyle::wrap4tau),
            f);
        const double unc_min = std::min(fidelity(unc.spin_i, want.spin_i),
                                        fidelity(unc.spin_s, want.spin_s));
        if (!(unc_min < std::min(fid_t, fid_o) - 1e-8)) strictly_lower = false;
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "min fidelity 1-%.2e (tol 1e-10), uncorrected strictly lower: %s",
                1.0 - worst_fid, strictly_lower ? "yes" : "NO");
  return {worst_fid >= 1.0 - 1e-10 && strictly_lower, buf};
}

// 6. Every rewrite pass preserves the per-spin propagator pair up to
//    per-spin phase on 1000 randomized sequences.
Outcome criterion_rewrite_soundness() {
  auto rng = jrtest::make_rng(777);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const PulseSequence seq = jrtest::random_sequence(rng);
    const SpinPairPropagator base = simulate_pair_instantaneous(seq);
    const PulseSequence variants[] = {
        merge_delays(seq),
        commute_frame_rotations_to_end(seq),
        normalize_negative_delays(seq, WrapStyle::wrap4tau),
        normalize_negative_delays(seq, WrapStyle::halfwrap),
    };
    for (const PulseSequence& v : variants)
      worst = std::max(worst, pair_distance(base, simulate_pair_instantaneous(v)));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "1000 sequences x 4 passes, max error %.2e (tol 1e-12)",
                worst);
  return {worst < 1e-12, buf};
}

// 7. A single finite 90 applied to a z-state matches an ideal 90 followed by
//    free precession of (2/pi) t90 to state fidelity 0.9999 for |f| <= 0.05.
Outcome criterion_small_f() {
  double worst = 1.0;
  const Ket2 north{1.0, 0.0};
  for (double f : linspace(-0.05, 0.05, 21)) {
    const SpinPairPropagator got =
        simulate_pair_finite({"", "", {make_pulse(0.5 * kPi, 0.0)}}, f);
    // precession for (2/pi) t90 rotates spin I by f and spin S by -f
    const Unitary2 approx_i = rot_z(f) * rot(0.5 * kPi, 0.0);
    const Unitary2 approx_s = rot_z(-f) * rot(0.5 * kPi, 0.0);
    worst = std::min({worst,
                      state_overlap(act(approx_i, north), act(got.spin_i, north)),
                      state_overlap(act(approx_s, north), act(got.spin_s, north))});
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "min excitation fidelity %.8f (tol 0.9999)", worst);
  return {worst >= 0.9999, buf};
}

// 8. The jump-and-return selective 90 is at least as robust as the
//    1331-based excitation everywhere on g in [0.9, 1.1] off the design point.
Outcome criterion_binomial_comparison() {
  const SweepReport rep = compare_1331(0.9, 1.1, 41);
  const auto& jr = find_col(rep, "fid_jr_selective_90");
  const auto& bin = find_col(rep, "fid_binomial_1331");
  bool ordered = true;
  double min_gap = 1.0;
  for (std::size_t k = 0; k < rep.grid.size(); ++k) {
    if (std::abs(rep.grid[k] - 1.0) <= 1e-9) continue;
    if (jr[k] < bin[k]) ordered = false;
    min_gap = std::min(min_gap, jr[k] - bin[k]);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "ordering holds at all 40 off-design points, min gap %.2e",
                min_gap);
  return {ordered, buf};
}

// 9. Coupled mode: J = 0 equals the kron of the finite pair to 1e-10; a
//    10 Hz coupling perturbs the selective 90 but keeps fidelity >= 0.99.
Outcome criterion_coupled() {
  const PulseSequence seq =
      synth_selective(SpinTarget::I, 0.5 * kPi, 0.0, SelectiveStyle::extra_pulse);
  const double domega = 2.0 * kPi * 500.0;
  const double omega1 = 2.0 * kPi * 25000.0;

  const SpinSystem fin{domega, 0.0, omega1, SimMode::finite};
  const SpinSystem cpl0{domega, 0.0, omega1, SimMode::coupled};
  const SpinSystem cplJ{domega, 10.0, omega1, SimMode::coupled};

  const SimulationResult pair = simulate(seq, fin);
  const SimulationResult full0 = simulate(seq, cpl0);
  const SimulationResult fullJ = simulate(seq, cplJ);

  const double factorised_gap =
      frobenius_distance(full0.full, kron(pair.pair->spin_i, pair.pair->spin_s));
  const double j_fid = fidelity(fullJ.full, full0.full);
  const double j_dist = frobenius_distance(fullJ.full, full0.full);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "J=0 vs kron %.2e (tol 1e-10); J=10Hz deviation %.2e, fidelity %.6f "
                "(floor 0.99)",
                factorised_gap, j_dist, j_fid);
  return {factorised_gap < 1e-10 && j_dist > 1e-6 && j_fid >= 0.99, buf};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 selective-90 offset sweep matches analytic curves", criterion_fig2},
      {"2 identity suite (jump-and-return family)", criterion_identity_suite},
      {"3 sandwich exactness and validity boundary", criterion_sandwich},
      {"4 corrected-180 forms", criterion_corrected_180},
      {"5 corrected selective 90 vs uncorrected", criterion_corrected_selective},
      {"6 rewrite-pass soundness", criterion_rewrite_soundness},
      {"7 small-fraction excitation approximation", criterion_small_f},
      {"8 jump-and-return vs 1331 robustness", criterion_binomial_comparison},
      {"9 coupled-mode consistency", criterion_coupled},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const Outcome o = c.run();
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures;
}

#include "jrpulse/verify.hpp"

#include <cmath>
#include <functional>

#include <json.hpp>

#include "jrpulse/rewrite.hpp"
#include "jrpulse/simulate.hpp"

namespace jrpulse {

namespace {

std::vector<double> angle_grid(int steps) {
  std::vector<double> v(steps);
  for (int k = 0; k < steps; ++k) v[k] = 2.0 * kPi * k / steps;
  return v;
}

// theta values for the general sandwich, kept a safe distance inside the
// |f| <= cot(theta/2) validity boundary where arccos is ill-conditioned
std::vector<double> sandwich_theta_grid(double f) {
  std::vector<double> v;
  for (int k = 1; k <= 11; ++k) {
    const double theta = kPi * k / 12.0;
    if (std::abs(f) * std::tan(0.5 * theta) <= 1.0 - 1e-4) v.push_back(theta);
  }
  return v;
}

struct ErrorAccumulator {
  double max_error = 0.0;
  void feed(double e) {
    if (e > max_error) max_error = e;
  }
};

VerificationEntry finish(const char* name, const char* display,
                         const ErrorAccumulator& acc, double tol) {
  return {name, display, acc.max_error, tol, acc.max_error <= tol};
}

SpinPairPropagator pair_target(SpinTarget target, const Unitary2& u) {
  if (target == SpinTarget::I) return {u, Unitary2::identity()};
  return {Unitary2::identity(), u};
}

}  // namespace

std::vector<double> verification_fraction_grid() {
  std::vector<double> v;
  v.push_back(-0.99);
  for (int k = -9; k <= 9; ++k) v.push_back(k / 10.0);
  v.push_back(0.99);
  return v;
}

VerificationEntry verify_jump_return(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double theta : angle_grid(opts.grid_steps))
    for (double phase : angle_grid(opts.grid_steps)) {
      const SpinPairPropagator got =
          simulate_pair_instantaneous(synth_jump_return(theta, phase));
      const SpinPairPropagator want{rot(theta, phase + 1.5 * kPi),
                                    rot(theta, phase + 0.5 * kPi)};
      acc.feed(pair_distance(got, want));
    }
  return finish("jump-return", "90(ph+180) th[+z,-z] 90(ph)", acc, opts.tolerance);
}

VerificationEntry verify_contra_axial(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double theta : angle_grid(opts.grid_steps))
    for (double phase : angle_grid(opts.grid_steps)) {
      const SpinPairPropagator got =
          simulate_pair_instantaneous(synth_contra_axial(theta, phase));
      const SpinPairPropagator want{rot(theta, phase), rot(theta, phase + kPi)};
      acc.feed(pair_distance(got, want));
    }
  return finish("contra-axial", "90(ph-90) th[+z,-z] 90(ph+90) = [th_ph, -th_ph]", acc,
                opts.tolerance);
}

VerificationEntry verify_selective_extra_pulse(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (SpinTarget target : {SpinTarget::I, SpinTarget::S})
    for (double theta : angle_grid(opts.grid_steps))
      for (double phase : angle_grid(opts.grid_steps)) {
        const SpinPairPropagator got = simulate_pair_instantaneous(
            synth_selective(target, theta, phase, SelectiveStyle::extra_pulse));
        acc.feed(pair_distance(got, pair_target(target, rot(theta, phase))));
      }
  return finish("selective-extra-pulse",
                "90(ph-90) (th/2)[+z,-z] 90(ph+90) (th/2)ph = [th_ph, 1]", acc,
                opts.tolerance);
}

VerificationEntry verify_selective_frame_raw(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (SpinTarget target : {SpinTarget::I, SpinTarget::S}) {
    const double sel = target == SpinTarget::I ? 1.0 : -1.0;
    for (double theta : angle_grid(opts.grid_steps))
      for (double phase : angle_grid(opts.grid_steps)) {
        const PulseSequence raw{"selective-frame-raw",
                                "",
                                {make_pulse(0.5 * kPi, phase - 0.5 * kPi),
                                 Delay{sel * 0.5 * theta}, FrameRotation{0.5 * theta},
                                 make_pulse(0.5 * kPi, phase + 0.5 * kPi)}};
        const SpinPairPropagator got = simulate_pair_instantaneous(raw);
        acc.feed(pair_distance(got, pair_target(target, rot(theta, phase))));
      }
  }
  return finish("selective-frame-raw",
                "90(ph-90) (th/2)[+z,-z] (th/2)z 90(ph+90) = [th_ph, 1]", acc,
                opts.tolerance);
}

VerificationEntry verify_selective_frame_passed(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (SpinTarget target : {SpinTarget::I, SpinTarget::S}) {
    const double sel = target == SpinTarget::I ? 1.0 : -1.0;
    for (double theta : angle_grid(opts.grid_steps))
      for (double phase : angle_grid(opts.grid_steps)) {
        const PulseSequence passed =
            synth_selective(target, theta, phase, SelectiveStyle::frame_rotation);
        const SpinPairPropagator got = simulate_pair_instantaneous(passed);
        acc.feed(pair_distance(got, pair_target(target, rot(theta, phase))));
        // frame passing itself is exact: the raw form rewritten with the
        // commute pass must match the emitted form without phase alignment
        const PulseSequence raw{"",
                                "",
                                {make_pulse(0.5 * kPi, phase - 0.5 * kPi),
                                 Delay{sel * 0.5 * theta}, FrameRotation{0.5 * theta},
                                 make_pulse(0.5 * kPi, phase + 0.5 * kPi)}};
        const SpinPairPropagator via_pass =
            simulate_pair_instantaneous(commute_frame_rotations_to_end(raw));
        acc.feed(frobenius_distance(via_pass.spin_i, got.spin_i));
        acc.feed(frobenius_distance(via_pass.spin_s, got.spin_s));
      }
  }
  return finish("selective-frame-passed",
                "90(ph-90) (th/2)[+z,-z] 90(ph+90-th/2) (th/2)z = [th_ph, 1]", acc,
                opts.tolerance);
}

VerificationEntry verify_phase_pair(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double theta : angle_grid(opts.grid_steps))
    for (double phase : angle_grid(opts.grid_steps))
      for (double alpha : angle_grid(opts.grid_steps)) {
        const SpinPairPropagator got =
            simulate_pair_instantaneous(synth_phase_pair(theta, phase, alpha));
        const SpinPairPropagator want{rot(theta, phase), rot(theta, phase + alpha)};
        acc.feed(pair_distance(got, want));
      }
  return finish("phase-pair",
                "(a/2)-z (a/2)[+z,-z] th_ph (2pi-a/2)-z (2pi-a/2)[+z,-z] = "
                "[th_ph, th_(ph+a)]",
                acc, opts.tolerance);
}

VerificationEntry verify_sandwich_90(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double f : verification_fraction_grid()) {
    SandwichAngles s = sandwich_angles_90(f);
    s.theta_nominal += opts.theta_nominal_nudge;
    const Unitary2 got =
        rot_z(s.phi) * off_resonance_propagator(f, s.theta_nominal, 0.0) * rot_z(s.phi);
    acc.feed(phase_aligned_distance(got, rot(0.5 * kPi, 0.0)));
    // the precession time matching the z rotations: tau' = 2 phi'/(pi f) t90,
    // i.e. a contra-axial angle equal to phi' once delta_omega binds
    if (f != 0.0) acc.feed(std::abs(s.tau_factor * 0.5 * kPi * f - s.phi));
  }
  return finish("sandwich-90", "phi'z th'x phi'z = 90x", acc, opts.tolerance);
}

VerificationEntry verify_sandwich_general(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double f : verification_fraction_grid())
    for (double theta : sandwich_theta_grid(f)) {
      SandwichAngles s = sandwich_angles(theta, f);
      s.theta_nominal += opts.theta_nominal_nudge;
      const Unitary2 got = rot_z(s.phi) *
                           off_resonance_propagator(f, s.theta_nominal, 0.0) *
                           rot_z(s.phi);
      acc.feed(phase_aligned_distance(got, rot(theta, 0.0)));
    }
  return finish("sandwich-general", "phi''z th''x phi''z = th_x", acc, opts.tolerance);
}

VerificationEntry verify_corrected_double(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (double f : verification_fraction_grid())
    for (double theta : sandwich_theta_grid(f)) {
      const PulseSequence seq = normalize_negative_delays(
          synth_corrected_double(theta, 0.0, f), WrapStyle::wrap4tau);
      const SpinPairPropagator got = simulate_pair_finite(seq, f);
      const Unitary2 want = rot(2.0 * theta, 0.0);
      acc.feed(pair_distance(got, {want, want}));
    }
  return finish("corrected-double", "tau'' th''x (4tau+2tau'') th''x tau'' = (2th)x",
                acc, opts.tolerance);
}

VerificationEntry verify_corrected_180(const VerifyOptions& opts, Corrected180Form form) {
  ErrorAccumulator acc;
  std::vector<double> grid = verification_fraction_grid();
  grid.insert(grid.begin(), -1.0);
  grid.push_back(1.0);
  for (double f : grid) {
    const PulseSequence seq = normalize_negative_delays(
        synth_corrected_180(0.0, f, form), WrapStyle::wrap4tau);
    const SpinPairPropagator got = simulate_pair_finite(seq, f);
    const Unitary2 want = rot(kPi, 0.0);
    acc.feed(pair_distance(got, {want, want}));
  }
  const char* name = form == Corrected180Form::plain ? "corrected-180-plain"
                     : form == Corrected180Form::framewrapped
                         ? "corrected-180-framewrapped"
                         : "corrected-180-phase-toggled";
  const char* display = form == Corrected180Form::plain
                            ? "th'x (4tau+2tau') th'x = 180x"
                        : form == Corrected180Form::framewrapped
                            ? "th'x 90z (2tau+2tau') 90z th'x = 180x"
                            : "th'(-y) (2tau+2tau') th'(y) = 180x";
  return finish(name, display, acc, opts.tolerance);
}

VerificationEntry verify_corrected_selective_90(const VerifyOptions& opts) {
  ErrorAccumulator acc;
  for (SpinTarget target : {SpinTarget::I, SpinTarget::S})
    for (double f : verification_fraction_grid()) {
      const PulseSequence seq = normalize_negative_delays(
          synth_corrected_selective_90(target, 0.0, f), WrapStyle::wrap4tau);
      const SpinPairPropagator got = simulate_pair_finite(seq, f);
      acc.feed(pair_distance(got, pair_target(target, rot(0.5 * kPi, 0.0))));
    }
  return finish("corrected-selective-90",
                "tau' th'(-y) (tau/2+2tau') 45z th'(y) tau' = [90x, 1]", acc,
                opts.tolerance);
}

VerificationReport run_verification(const VerifyOptions& opts) {
  VerificationReport rep;
  if (opts.grid_steps <= 0) return rep;
  rep.entries = {
      verify_jump_return(opts),
      verify_contra_axial(opts),
      verify_selective_extra_pulse(opts),
      verify_selective_frame_raw(opts),
      verify_selective_frame_passed(opts),
      verify_phase_pair(opts),
      verify_sandwich_90(opts),
      verify_sandwich_general(opts),
      verify_corrected_double(opts),
      verify_corrected_180(opts, Corrected180Form::plain),
      verify_corrected_180(opts, Corrected180Form::framewrapped),
      verify_corrected_180(opts, Corrected180Form::phase_toggled),
      verify_corrected_selective_90(opts),
  };
  return rep;
}

bool VerificationReport::all_pass() const {
  for (const VerificationEntry& e : entries)
    if (!e.pass) return false;
  return true;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["pass"] = all_pass();
  j["entries"] = nlohmann::json::array();
  for (const VerificationEntry& e : entries) {
    j["entries"].push_back({{"name", e.name},
                            {"display", e.display},
                            {"max_error", e.max_error},
                            {"tolerance", e.tolerance},
                            {"pass", e.pass}});
  }
  return j.dump(2);
}

std::string VerificationReport::to_text() const {
  std::string out;
  char buf[256];
  for (const VerificationEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%s  %-28s max_err=%.3e  tol=%.0e  %s\n",
                  e.pass ? "PASS" : "FAIL", e.name.c_str(), e.max_error, e.tolerance,
                  e.display.c_str());
    out += buf;
  }
  return out;
}

}  // namespace jrpulse

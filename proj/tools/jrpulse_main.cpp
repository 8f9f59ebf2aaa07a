// jrpulse: compile frequency-selective gates for two-spin systems into
// pulse/delay sequences, simulate them, run parameter sweeps, and verify the
// synthesis identities. Angles are degrees at this boundary, radians inside.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jrpulse/errors.hpp"
#include "jrpulse/gates.hpp"
#include "jrpulse/rewrite.hpp"
#include "jrpulse/simulate.hpp"
#include "jrpulse/sweep.hpp"
#include "jrpulse/verify.hpp"

namespace {

using namespace jrpulse;
using nlohmann::json;

constexpr int kExitSchema = 2;   // malformed gate/sequence/system input
constexpr int kExitPhysics = 3;  // out-of-range fraction, non-physical sequence
constexpr int kExitVerify = 4;   // verification suite reported failures

int g_exit = 0;

double wrap_angle(double rad) {
  double a = std::fmod(rad, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

// --gate/--seq accept inline JSON or a path to a JSON file
std::string slurp_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw SchemaError("cannot open JSON file '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

double get_deg(const json& j, const char* key, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(std::string("gate is missing numeric field '") + key + "'");
  }
  if (!j[key].is_number())
    throw SchemaError(std::string("gate field '") + key + "' must be a number");
  return deg_to_rad(j[key].get<double>());
}

SpinTarget get_target(const json& j) {
  const std::string t = j.value("target", "I");
  if (t == "I") return SpinTarget::I;
  if (t == "S") return SpinTarget::S;
  throw SchemaError("gate field 'target' must be \"I\" or \"S\"");
}

Corrected180Form get_form(const json& j) {
  const std::string f = j.value("form", "phase_toggled");
  if (f == "plain") return Corrected180Form::plain;
  if (f == "framewrapped") return Corrected180Form::framewrapped;
  if (f == "phase_toggled") return Corrected180Form::phase_toggled;
  throw SchemaError("gate field 'form' must be plain|framewrapped|phase_toggled");
}

// "delta_omega_hz=500,j_hz=0,omega1_hz=25000,mode=finite"
SpinSystem parse_system(const std::string& text) {
  SpinSystem sys;
  bool have_domega = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw SchemaError("--system entries must look like key=value; got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      if (key == "delta_omega_hz") {
        sys.delta_omega = 2.0 * kPi * std::stod(val);
        have_domega = true;
      } else if (key == "j_hz") {
        sys.j_hz = std::stod(val);
      } else if (key == "omega1_hz") {
        sys.omega1 = 2.0 * kPi * std::stod(val);
      } else if (key == "mode") {
        if (val == "instantaneous") sys.mode = SimMode::instantaneous;
        else if (val == "finite") sys.mode = SimMode::finite;
        else if (val == "coupled") sys.mode = SimMode::coupled;
        else throw SchemaError("unknown mode '" + val + "'");
      } else {
        throw SchemaError("unknown --system key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw SchemaError("--system value for '" + key + "' is not a number");
    }
  }
  if (!have_domega) throw SchemaError("--system needs delta_omega_hz");
  if (!(sys.delta_omega > 0.0)) throw SchemaError("delta_omega_hz must be positive");
  if (sys.mode != SimMode::instantaneous && !(sys.omega1 > 0.0))
    throw SchemaError("finite/coupled modes need a positive omega1_hz");
  if (sys.weak_coupling_suspect())
    std::fprintf(stderr,
                 "jrpulse: warning: delta_omega is not large against pi*J; the "
                 "factorised treatment assumes weak coupling\n");
  return sys;
}

void parse_grid(const std::string& text, double& lo, double& hi, int& steps) {
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3)
    throw SchemaError("--grid must look like min:max:steps");
  if (steps < 2 || !(lo < hi))
    throw SchemaError("--grid needs min < max and steps >= 2");
}

std::string resolve_out(const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  const char* dir = std::getenv("JRPULSE_OUT_DIR");
  if (!dir || !*dir) return p;
  return (std::filesystem::path(dir) / path).string();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  const std::string resolved = resolve_out(out_path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + resolved + "'");
  out << text;
}

struct GateArg {
  json j;
  std::string kind;
};

GateArg load_gate(const std::string& arg) {
  GateArg g;
  g.j = parse_json(slurp_json_arg(arg), "gate JSON");
  if (!g.j.is_object() || !g.j.contains("kind") || !g.j["kind"].is_string())
    throw SchemaError("gate must be a JSON object with a string 'kind'");
  g.kind = g.j["kind"].get<std::string>();
  return g;
}

GateSpec abstract_gate(const GateArg& g) {
  const json& j = g.j;
  if (g.kind == "contra_axial")
    return ContraAxial{wrap_angle(get_deg(j, "theta_deg")),
                       wrap_angle(get_deg(j, "phase_deg", 0.0))};
  if (g.kind == "jump_return")  // same realisation as contra_axial, shifted axis
    return ContraAxial{wrap_angle(get_deg(j, "theta_deg")),
                       wrap_angle(get_deg(j, "phase_deg", 0.0) + 1.5 * kPi)};
  if (g.kind == "selective") {
    const std::string style = j.value("style", "extra_pulse");
    if (style != "extra_pulse" && style != "frame_rotation")
      throw SchemaError("gate field 'style' must be extra_pulse|frame_rotation");
    return Selective{get_target(j), wrap_angle(get_deg(j, "theta_deg")),
                     wrap_angle(get_deg(j, "phase_deg", 0.0)),
                     style == "extra_pulse" ? SelectiveStyle::extra_pulse
                                            : SelectiveStyle::frame_rotation};
  }
  if (g.kind == "phase_pair")
    return PhasePair{wrap_angle(get_deg(j, "theta_deg")),
                     wrap_angle(get_deg(j, "phase_deg", 0.0)),
                     wrap_angle(get_deg(j, "alpha_deg"))};
  if (g.kind == "hard")
    return HardRotation{wrap_angle(get_deg(j, "theta_deg")),
                        wrap_angle(get_deg(j, "phase_deg", 0.0))};
  if (g.kind == "binomial_1331")
    return Binomial1331Excite{wrap_angle(get_deg(j, "phase_deg", 0.0))};
  throw SchemaError("gate kind '" + g.kind + "' is not an abstract gate");
}

bool is_corrected_kind(const std::string& kind) {
  return kind == "corrected_pulse" || kind == "corrected_double" ||
         kind == "corrected_180" || kind == "corrected_selective_90";
}

CorrectedGate corrected_gate(const GateArg& g) {
  CorrectedGate c;
  c.phase = wrap_angle(get_deg(g.j, "phase_deg", 0.0));
  if (g.kind == "corrected_pulse") {
    c.kind = CorrectedGate::Kind::pulse;
    c.theta = wrap_angle(get_deg(g.j, "theta_deg"));
  } else if (g.kind == "corrected_double") {
    c.kind = CorrectedGate::Kind::double_pulse;
    c.theta = wrap_angle(get_deg(g.j, "theta_deg"));
  } else if (g.kind == "corrected_180") {
    c.kind = CorrectedGate::Kind::one_eighty;
    c.form = get_form(g.j);
  } else if (g.kind == "corrected_selective_90") {
    c.kind = CorrectedGate::Kind::selective_90;
    c.target = get_target(g.j);
  } else {
    throw SchemaError("gate kind '" + g.kind + "' is not a corrected construction");
  }
  return c;
}

double corrected_fraction(const GateArg& g, const std::optional<SpinSystem>& sys) {
  if (g.j.contains("f")) {
    if (!g.j["f"].is_number()) throw SchemaError("gate field 'f' must be a number");
    return g.j["f"].get<double>();
  }
  if (sys && sys->omega1 > 0.0) return sys->offres_fraction();
  throw SchemaError("corrected gates need an 'f' field or a --system with omega1_hz");
}

PulseSequence synthesize_any(const GateArg& g, const std::optional<SpinSystem>& sys) {
  if (g.kind == "jump_return")
    return synth_jump_return(wrap_angle(get_deg(g.j, "theta_deg")),
                             wrap_angle(get_deg(g.j, "phase_deg", 0.0)));
  if (!is_corrected_kind(g.kind)) return synthesize(abstract_gate(g));
  const double f = corrected_fraction(g, sys);
  const CorrectedGate c = corrected_gate(g);
  switch (c.kind) {
    case CorrectedGate::Kind::pulse:
      return synth_corrected_pulse(c.theta, c.phase, f);
    case CorrectedGate::Kind::double_pulse:
      return synth_corrected_double(c.theta, c.phase, f);
    case CorrectedGate::Kind::one_eighty:
      return synth_corrected_180(c.phase, f, c.form);
    case CorrectedGate::Kind::selective_90:
      return synth_corrected_selective_90(c.target, c.phase, f);
  }
  throw std::logic_error("unreachable");
}

json unitary_json(const Unitary2& u) {
  json a = json::array();
  for (const Cplx& z : u.m) a.push_back({z.real(), z.imag()});
  return a;
}

json unitary_json(const Unitary4& u) {
  json a = json::array();
  for (const Cplx& z : u.m) a.push_back({z.real(), z.imag()});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-level compiler and simulator for frequency-selective "
               "single-qubit gates in two-spin systems"};
  app.require_subcommand(1);

  std::string gate_arg, seq_arg, system_arg, grid_arg, out_arg, wrap_arg = "wrap4tau",
              frames_arg = "keep";
  double g_ratio = 1.0;
  int verify_steps = 24;
  double verify_tol = 1e-10;
  double verify_nudge = 0.0;

  auto* compile = app.add_subcommand("compile", "synthesize a gate into a pulse sequence");
  compile->add_option("--gate", gate_arg, "gate JSON (inline or file)")->required();
  compile->add_option("--system", system_arg, "delta_omega_hz=..,j_hz=..,omega1_hz=..,mode=..");
  compile->add_option("--wrap", wrap_arg, "negative-delay style: wrap4tau|halfwrap");
  compile->add_option("--terminal-frames", frames_arg, "terminal frame policy: keep|drop|composite");
  compile->add_option("--out", out_arg, "output path (JRPULSE_OUT_DIR applies)");

  auto* simulate_cmd = app.add_subcommand("simulate", "simulate a pulse sequence");
  simulate_cmd->add_option("--seq", seq_arg, "sequence JSON (inline or file)")->required();
  simulate_cmd->add_option("--system", system_arg)->required();
  simulate_cmd->add_option("--g", g_ratio, "actual/nominal offset ratio");
  simulate_cmd->add_option("--out", out_arg);

  auto* sweep_g = app.add_subcommand("sweep-g", "fidelity vs offset ratio g (CSV)");
  sweep_g->add_option("--gate", gate_arg)->required();
  sweep_g->add_option("--system", system_arg)->required();
  sweep_g->add_option("--grid", grid_arg, "min:max:steps")->default_val("0.5:1.5:101");
  sweep_g->add_option("--out", out_arg);

  auto* sweep_f = app.add_subcommand(
      "sweep-f", "corrected vs uncorrected fidelity over the design fraction f (CSV)");
  sweep_f->add_option("--gate", gate_arg, "corrected_* gate JSON")->required();
  sweep_f->add_option("--grid", grid_arg)->default_val("-0.99:0.99:67");
  sweep_f->add_option("--out", out_arg);

  auto* verify = app.add_subcommand("verify", "run the sequence-identity suite");
  verify->add_option("--steps", verify_steps, "angular grid steps (0 = empty report)");
  verify->add_option("--tol", verify_tol, "pass tolerance");
  verify->add_option("--nudge-theta", verify_nudge,
                     "perturb the nominal sandwich nutation (sensitivity hook)");
  verify->add_option("--out", out_arg, "also write the JSON report here");

  auto* compare = app.add_subcommand("compare-1331",
                                     "jump-and-return vs 1331 robustness (CSV)");
  compare->add_option("--grid", grid_arg)->default_val("0.9:1.1:41");
  compare->add_option("--out", out_arg);

  compile->callback([&] {
    const GateArg gate = load_gate(gate_arg);
    std::optional<SpinSystem> sys;
    if (!system_arg.empty()) sys = parse_system(system_arg);

    PulseSequence seq = synthesize_any(gate, sys);
    seq = merge_delays(seq);
    WrapStyle style;
    if (wrap_arg == "wrap4tau") style = WrapStyle::wrap4tau;
    else if (wrap_arg == "halfwrap") style = WrapStyle::halfwrap;
    else throw SchemaError("--wrap must be wrap4tau|halfwrap");
    seq = normalize_negative_delays(seq, style);
    seq = merge_delays(commute_frame_rotations_to_end(seq));
    if (frames_arg == "drop")
      seq = drop_terminal_frame_rotations(seq, TerminalFramePolicy::drop);
    else if (frames_arg == "composite")
      seq = drop_terminal_frame_rotations(seq, TerminalFramePolicy::composite);
    else if (frames_arg != "keep")
      throw SchemaError("--terminal-frames must be keep|drop|composite");

    json out;
    out["name"] = seq.name;
    out["target"] = seq.target;
    out["sequence"] = json::parse(sequence_to_json(seq));
    out["physical"] = is_physical(seq);
    if (sys) out["total_duration_s"] = total_duration(seq, *sys);
    emit(out.dump(2) + "\n", out_arg);
  });

  simulate_cmd->callback([&] {
    const SpinSystem sys = parse_system(system_arg);
    const PulseSequence seq = sequence_from_json(slurp_json_arg(seq_arg));
    const SimulationResult res = simulate_with_offset_ratio(seq, sys, g_ratio);
    json out;
    out["duration_s"] = res.duration;
    if (res.pair) {
      out["spin_i"] = unitary_json(res.pair->spin_i);
      out["spin_s"] = unitary_json(res.pair->spin_s);
    }
    out["full"] = unitary_json(res.full);
    emit(out.dump(2) + "\n", out_arg);
  });

  sweep_g->callback([&] {
    const GateArg gate = load_gate(gate_arg);
    const SpinSystem sys = parse_system(system_arg);
    double lo, hi;
    int steps;
    parse_grid(grid_arg, lo, hi, steps);
    emit(sweep_offset_ratio(abstract_gate(gate), sys, lo, hi, steps).to_csv(), out_arg);
  });

  sweep_f->callback([&] {
    const GateArg gate = load_gate(gate_arg);
    if (!is_corrected_kind(gate.kind))
      throw SchemaError("sweep-f expects a corrected_* gate kind");
    double lo, hi;
    int steps;
    parse_grid(grid_arg, lo, hi, steps);
    emit(sweep_offres_fraction(corrected_gate(gate), linspace(lo, hi, steps)).to_csv(),
         out_arg);
  });

  verify->callback([&] {
    VerifyOptions opts;
    opts.grid_steps = verify_steps;
    opts.tolerance = verify_tol;
    opts.theta_nominal_nudge = verify_nudge;
    const VerificationReport rep = run_verification(opts);
    std::cout << rep.to_text();
    if (!out_arg.empty()) emit(rep.to_json() + "\n", out_arg);
    if (!rep.all_pass()) g_exit = kExitVerify;
  });

  compare->callback([&] {
    double lo, hi;
    int steps;
    parse_grid(grid_arg, lo, hi, steps);
    emit(compare_1331(lo, hi, steps).to_csv(), out_arg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitSchema;
  } catch (const SchemaError& e) {
    std::cerr << "jrpulse: " << e.what() << "\n";
    return kExitSchema;
  } catch (const OutOfRangeError& e) {
    std::cerr << "jrpulse: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const DegenerateError& e) {
    std::cerr << "jrpulse: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const NonPhysicalError& e) {
    std::cerr << "jrpulse: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << "jrpulse: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}

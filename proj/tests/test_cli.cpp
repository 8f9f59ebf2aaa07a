#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jrpulse/sequence.hpp"
#include "jrpulse/simulate.hpp"
#include "jrpulse/su2.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path tmp = fs::temp_directory_path() / ("jrpulse_cli_" +
                                                    std::to_string(::getpid()) + "_" +
                                                    std::to_string(counter++) + ".out");
  const std::string cmd =
      std::string(JRPULSE_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(tmp);
  fs::remove(tmp);
  return r;
}

jrpulse::Unitary2 unitary_from_json(const json& a) {
  jrpulse::Unitary2 u;
  for (int k = 0; k < 4; ++k)
    u.m[k] = jrpulse::Cplx(a[k][0].get<double>(), a[k][1].get<double>());
  return u;
}

}  // namespace

TEST_CASE("compile emits the passed-through selective form") {
  const RunResult r = run_cli(
      "compile --gate "
      "'{\"kind\":\"selective\",\"target\":\"I\",\"theta_deg\":90,\"phase_deg\":0,"
      "\"style\":\"frame_rotation\"}' "
      "--system delta_omega_hz=500");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  const json& seq = out["sequence"];
  REQUIRE(seq.size() == 4);
  CHECK(seq[0]["kind"] == "pulse");
  CHECK(seq[0]["phase_deg"].get<double>() == doctest::Approx(-90.0));
  CHECK(seq[2]["kind"] == "pulse");
  CHECK(seq[2]["phase_deg"].get<double>() == doctest::Approx(45.0));
  CHECK(seq[3]["kind"] == "frame");
  CHECK(seq[3]["angle_deg"].get<double>() == doctest::Approx(45.0));
  CHECK(out["physical"].get<bool>() == false);  // virtual rotation pending
  CHECK(out["total_duration_s"].get<double>() == doctest::Approx(0.25e-3));

  // dropping the terminal frame rotation makes it physical
  const RunResult d = run_cli(
      "compile --gate "
      "'{\"kind\":\"selective\",\"target\":\"I\",\"theta_deg\":90,\"phase_deg\":0,"
      "\"style\":\"frame_rotation\"}' --terminal-frames drop");
  REQUIRE(d.exit_code == 0);
  CHECK(json::parse(d.out)["physical"].get<bool>() == true);
}

TEST_CASE("compile computes corrected-180 angles") {
  const RunResult r = run_cli(
      "compile --gate '{\"kind\":\"corrected_180\",\"phase_deg\":0,"
      "\"form\":\"phase_toggled\",\"f\":0.5}'");
  REQUIRE(r.exit_code == 0);
  const json seq = json::parse(r.out)["sequence"];
  REQUIRE(seq.size() == 3);
  // nominal nutation acos(-1/4)/sqrt(5/4), delay pi + 2 phi' = 120 degrees
  CHECK(seq[0]["nutation_deg"].get<double>() == doctest::Approx(93.44752775).epsilon(1e-6));
  CHECK(seq[1]["kind"] == "delay");
  CHECK(seq[1]["angle_deg"].get<double>() == doctest::Approx(120.0).epsilon(1e-9));
  CHECK(seq[2]["nutation_deg"].get<double>() == doctest::Approx(93.44752775).epsilon(1e-6));

  // f can come from the bound system instead
  const RunResult s = run_cli(
      "compile --gate '{\"kind\":\"corrected_180\",\"form\":\"phase_toggled\"}' "
      "--system delta_omega_hz=500,omega1_hz=1000,mode=finite");
  REQUIRE(s.exit_code == 0);
  CHECK(json::parse(s.out)["sequence"][1]["angle_deg"].get<double>() ==
        doctest::Approx(120.0).epsilon(1e-9));
}

TEST_CASE("compile wraps negative delays") {
  const RunResult r = run_cli(
      "compile --gate '{\"kind\":\"corrected_pulse\",\"theta_deg\":90,"
      "\"phase_deg\":0,\"f\":0.5}'");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["physical"].get<bool>() == true);
  for (const json& ins : out["sequence"])
    if (ins["kind"] == "delay") CHECK(ins["angle_deg"].get<double>() >= 0.0);
  // phi' = -30 deg wraps to 330
  CHECK(out["sequence"][0]["angle_deg"].get<double>() == doctest::Approx(330.0).epsilon(1e-9));
}

TEST_CASE("simulate consumes compile output") {
  const fs::path seq_path = fs::temp_directory_path() / "jrpulse_seq.json";
  const RunResult c = run_cli(
      "compile --gate '{\"kind\":\"contra_axial\",\"theta_deg\":90,\"phase_deg\":0}' "
      "--out " + seq_path.string());
  REQUIRE(c.exit_code == 0);

  const RunResult s = run_cli("simulate --seq " + seq_path.string() +
                              " --system delta_omega_hz=500,mode=instantaneous");
  REQUIRE(s.exit_code == 0);
  const json out = json::parse(s.out);
  const jrpulse::Unitary2 ui = unitary_from_json(out["spin_i"]);
  const jrpulse::Unitary2 us = unitary_from_json(out["spin_s"]);
  CHECK(jrpulse::fidelity(ui, jrpulse::rot(0.5 * jrpulse::kPi, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jrpulse::fidelity(us, jrpulse::rot(0.5 * jrpulse::kPi, jrpulse::kPi)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out["duration_s"].get<double>() == doctest::Approx(0.5e-3));
  fs::remove(seq_path);
}

TEST_CASE("zero-angle contra-axial compiles to an identity sequence") {
  const RunResult r = run_cli(
      "compile --gate '{\"kind\":\"contra_axial\",\"theta_deg\":0,\"phase_deg\":0}'");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  const jrpulse::PulseSequence seq =
      jrpulse::sequence_from_json(out["sequence"].dump());
  const auto pair = jrpulse::simulate_pair_instantaneous(seq);
  CHECK(jrpulse::phase_aligned_distance(pair.spin_i, jrpulse::Unitary2::identity()) <
        1e-13);
  CHECK(jrpulse::phase_aligned_distance(pair.spin_s, jrpulse::Unitary2::identity()) <
        1e-13);
}

TEST_CASE("simulate reports the 4x4 propagator in coupled mode") {
  const RunResult r = run_cli(
      "simulate --seq '[{\"kind\":\"pulse\",\"nutation_deg\":90,\"phase_deg\":0}]' "
      "--system delta_omega_hz=500,j_hz=10,omega1_hz=25000,mode=coupled");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(!out.contains("spin_i"));
  REQUIRE(out["full"].size() == 16);
  CHECK(out["duration_s"].get<double>() ==
        doctest::Approx((0.25) / 25000.0).epsilon(1e-9));
}

TEST_CASE("exit codes distinguish schema, physics, and verification errors") {
  CHECK(run_cli("compile --gate '{\"kind\":\"warp\"}'").exit_code == 2);
  CHECK(run_cli("compile --gate '{\"kind\":\"selective\"}'").exit_code == 2);
  CHECK(run_cli("compile --gate 'not json'").exit_code == 2);
  CHECK(run_cli("compile").exit_code == 2);  // missing required option

  CHECK(run_cli("compile --gate '{\"kind\":\"corrected_180\",\"f\":1.5}'").exit_code ==
        3);
  CHECK(run_cli("simulate --seq '[{\"kind\":\"delay\",\"angle_deg\":-10}]' "
                "--system delta_omega_hz=500,omega1_hz=1000,mode=finite")
            .exit_code == 3);

  CHECK(run_cli("verify --steps 6").exit_code == 0);
  CHECK(run_cli("verify --steps 6 --nudge-theta 1e-3").exit_code == 4);
  CHECK(run_cli("verify --steps 0").exit_code == 0);
}

TEST_CASE("sweep output is byte-identical across runs") {
  const fs::path a = fs::temp_directory_path() / "jrpulse_sweep_a.csv";
  const fs::path b = fs::temp_directory_path() / "jrpulse_sweep_b.csv";
  const std::string gate =
      "'{\"kind\":\"selective\",\"target\":\"I\",\"theta_deg\":90,\"phase_deg\":0,"
      "\"style\":\"extra_pulse\"}'";
  const std::string cmd = "sweep-g --gate " + gate +
                          " --system delta_omega_hz=500,mode=instantaneous "
                          "--grid 0.5:1.5:101 --out ";
  REQUIRE(run_cli(cmd + a.string()).exit_code == 0);
  REQUIRE(run_cli(cmd + b.string()).exit_code == 0);
  const std::string ca = slurp(a), cb = slurp(b);
  CHECK(!ca.empty());
  CHECK(ca == cb);
  CHECK(ca.substr(0, ca.find('\n')) ==
        "g,fid_vs_target,fid_vs_identity,ref_vs_target,ref_vs_identity");
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("sweep-f and compare-1331 run end to end") {
  const RunResult f = run_cli(
      "sweep-f --gate '{\"kind\":\"corrected_180\",\"form\":\"plain\"}' "
      "--grid -0.9:0.9:7");
  REQUIRE(f.exit_code == 0);
  CHECK(f.out.substr(0, f.out.find('\n')) ==
        "f,in_range,fid_corrected_i,fid_corrected_s,fid_uncorrected_i,"
        "fid_uncorrected_s");

  CHECK(run_cli("sweep-f --gate '{\"kind\":\"hard\",\"theta_deg\":90}' "
                "--grid -0.5:0.5:3")
            .exit_code == 2);

  const RunResult c = run_cli("compare-1331 --grid 0.9:1.1:5");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out.substr(0, c.out.find('\n')) ==
        "g,fid_jr_selective_90,fid_binomial_1331");
}

TEST_CASE("JRPULSE_OUT_DIR provides the default output directory") {
  const fs::path dir = fs::temp_directory_path() / "jrpulse_outdir";
  fs::create_directories(dir);
  setenv("JRPULSE_OUT_DIR", dir.c_str(), 1);
  const RunResult r = run_cli("compare-1331 --grid 0.9:1.1:3 --out rel.csv");
  unsetenv("JRPULSE_OUT_DIR");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "rel.csv"));
  fs::remove_all(dir);
}

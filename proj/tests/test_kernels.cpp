#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "jrpulse/gates.hpp"
#include "jrpulse/kernels.hpp"
#include "jrpulse/simulate.hpp"
#include "jrpulse/sweep.hpp"
#include "testutil.hpp"

using namespace jrpulse;
using kernels::Batch2;
using kernels::KernelOps;
using jrtest::make_rng;
using jrtest::random_su2;

namespace {

Batch2 random_batch(std::mt19937_64& rng, std::size_t lanes) {
  Batch2 b(lanes);
  for (std::size_t k = 0; k < lanes; ++k) b.set_lane(k, random_su2(rng));
  return b;
}

double max_lane_distance(const Batch2& a, const Batch2& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.lanes; ++k)
    worst = std::max(worst, frobenius_distance(a.lane(k), b.lane(k)));
  return worst;
}

// a mixed stream of all four ops, applied through the given backend
void run_stream(const KernelOps& ops, Batch2& u, std::mt19937_64 rng,
                std::vector<double>& overlaps) {
  std::uniform_real_distribution<double> ang(-2.0 * kPi, 2.0 * kPi);
  const std::size_t pad = u.padded();
  std::vector<double> ch(pad, 1.0), sh(pad, 0.0);
  for (int step = 0; step < 40; ++step) {
    ops.apply_fixed(u, random_su2(rng));
    for (std::size_t k = 0; k < u.lanes; ++k) {
      const double half = 0.5 * ang(rng);
      ch[k] = std::cos(half);
      sh[k] = std::sin(half);
    }
    ops.apply_zrot(u, ch.data(), sh.data());
    Batch2 a(u.lanes);
    for (std::size_t k = 0; k < u.lanes; ++k) a.set_lane(k, random_su2(rng));
    ops.apply_batch(u, a);
  }
  std::vector<double> re(pad), im(pad);
  ops.overlap(u, rot(0.3, 1.1), re.data(), im.data());
  overlaps.assign(u.lanes, 0.0);
  for (std::size_t k = 0; k < u.lanes; ++k) overlaps[k] = std::hypot(re[k], im[k]);
}

}  // namespace

TEST_CASE("batch storage") {
  Batch2 b(5);
  CHECK(b.lanes == 5);
  CHECK(b.padded() == 8);
  for (std::size_t k = 0; k < b.padded(); ++k)
    CHECK(frobenius_distance(b.lane(k), Unitary2::identity()) == 0.0);

  auto rng = make_rng(41);
  const Unitary2 u = random_su2(rng);
  b.set_lane(3, u);
  CHECK(frobenius_distance(b.lane(3), u) == 0.0);
}

TEST_CASE("scalar kernels match direct matrix algebra") {
  auto rng = make_rng(42);
  const KernelOps& ops = kernels::scalar_kernels();
  Batch2 b = random_batch(rng, 7);
  const Batch2 before = b;

  const Unitary2 m = random_su2(rng);
  ops.apply_fixed(b, m);
  for (std::size_t k = 0; k < b.lanes; ++k)
    CHECK(frobenius_distance(b.lane(k), m * before.lane(k)) < 1e-15);

  std::vector<double> ch(b.padded(), 1.0), sh(b.padded(), 0.0);
  for (std::size_t k = 0; k < b.lanes; ++k) {
    ch[k] = std::cos(0.15 * (k + 1));
    sh[k] = std::sin(0.15 * (k + 1));
  }
  Batch2 c = before;
  ops.apply_zrot(c, ch.data(), sh.data());
  for (std::size_t k = 0; k < c.lanes; ++k)
    CHECK(frobenius_distance(c.lane(k), rot_z(0.3 * (k + 1)) * before.lane(k)) < 1e-14);

  Batch2 a = random_batch(rng, 7);
  Batch2 d = before;
  ops.apply_batch(d, a);
  for (std::size_t k = 0; k < d.lanes; ++k)
    CHECK(frobenius_distance(d.lane(k), a.lane(k) * before.lane(k)) < 1e-15);

  std::vector<double> re(d.padded()), im(d.padded());
  const Unitary2 t = random_su2(rng);
  ops.overlap(d, t, re.data(), im.data());
  for (std::size_t k = 0; k < d.lanes; ++k) {
    const double fid = fidelity(d.lane(k), t);
    CHECK(0.5 * std::hypot(re[k], im[k]) == doctest::Approx(fid).epsilon(1e-13));
  }
}

TEST_CASE("avx2 backend equals the scalar reference") {
  if (!kernels::avx2_supported()) {
    MESSAGE("AVX2 unavailable on this host; backend equivalence not exercised");
    return;
  }
  const KernelOps& avx = kernels::avx2_kernels();
  const KernelOps& ref = kernels::scalar_kernels();
  CHECK(std::string(avx.name) == "avx2");

  for (std::size_t lanes : {1u, 4u, 5u, 64u, 101u}) {
    auto seed_rng = make_rng(1000 + lanes);
    Batch2 u_ref = random_batch(seed_rng, lanes);
    Batch2 u_avx = u_ref;
    std::vector<double> ov_ref, ov_avx;
    run_stream(ref, u_ref, make_rng(2000 + lanes), ov_ref);
    run_stream(avx, u_avx, make_rng(2000 + lanes), ov_avx);
    CHECK(max_lane_distance(u_ref, u_avx) < 1e-13);
    for (std::size_t k = 0; k < lanes; ++k)
      CHECK(std::abs(ov_ref[k] - ov_avx[k]) < 1e-13);
  }
}

TEST_CASE("active backend is coherent with CPU support") {
  const KernelOps& active = kernels::active_kernels();
  if (!kernels::avx2_compiled())
    CHECK(std::string(active.name) == "scalar");
  // with an env override either backend is legitimate; just ensure it works
  Batch2 b(3);
  active.apply_fixed(b, rot(0.4, 0.2));
  CHECK(frobenius_distance(b.lane(0), rot(0.4, 0.2)) < 1e-15);
}

TEST_CASE("sweep engine agrees with the single-point scalar simulator") {
  // offset-ratio sweep, instantaneous mode
  const GateSpec gate = Selective{SpinTarget::I, 0.5 * kPi, 0.0,
                                  SelectiveStyle::extra_pulse};
  const SpinSystem inst{2.0 * kPi * 500.0, 0.0, 2.0 * kPi * 25000.0,
                        SimMode::instantaneous};
  const SweepReport rep = sweep_offset_ratio(gate, inst, 0.5, 1.5, 101);
  const PulseSequence seq = synthesize(gate);
  for (std::size_t k = 0; k < rep.grid.size(); ++k) {
    const SimulationResult res = simulate_with_offset_ratio(seq, inst, rep.grid[k]);
    CHECK(std::abs(rep.columns[0].values[k] -
                   fidelity(res.pair->spin_i, rot(0.5 * kPi, 0.0))) < 1e-13);
    CHECK(std::abs(rep.columns[1].values[k] -
                   fidelity(res.pair->spin_i, Unitary2::identity())) < 1e-13);
  }

  // finite mode: per-lane off-resonance propagators
  SpinSystem fin = inst;
  fin.mode = SimMode::finite;
  const SweepReport frep = sweep_offset_ratio(gate, fin, 0.5, 1.5, 33);
  for (std::size_t k = 0; k < frep.grid.size(); ++k) {
    const SimulationResult res = simulate_with_offset_ratio(seq, fin, frep.grid[k]);
    CHECK(std::abs(frep.columns[0].values[k] -
                   fidelity(res.pair->spin_i, rot(0.5 * kPi, 0.0))) < 1e-13);
  }
}

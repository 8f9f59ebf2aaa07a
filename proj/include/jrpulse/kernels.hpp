#pragma once

// Lane-parallel primitives for evaluating many per-spin propagator chains at
// once (one lane per sweep grid point). A scalar reference backend and an
// AVX2+FMA backend implement the same operation table; the active backend is
// picked at runtime from CPU features (override with JRPULSE_KERNELS=
// scalar|avx2|auto). The two backends are equivalence-tested against each
// other and against the single-point scalar simulator.

#include <cstddef>
#include <vector>

#include "jrpulse/su2.hpp"

namespace jrpulse::kernels {

// SoA batch of 2x2 complex matrices: lane k holds [[a, b], [c, d]] split
// into real/imaginary planes. Storage is padded to a multiple of 4 lanes
// (one AVX2 vector of doubles); padding lanes hold the identity.
struct Batch2 {
  std::size_t lanes = 0;
  std::vector<double> ar, ai, br, bi, cr, ci, dr, di;

  Batch2() = default;
  explicit Batch2(std::size_t n) { resize(n); }

  void resize(std::size_t n);
  std::size_t padded() const { return ar.size(); }
  void set_identity();
  Unitary2 lane(std::size_t k) const;
  void set_lane(std::size_t k, const Unitary2& u);
};

// One backend. Array arguments have padded() length.
struct KernelOps {
  const char* name;
  // U_k <- m U_k
  void (*apply_fixed)(Batch2& u, const Unitary2& m);
  // U_k <- diag(ch_k - i sh_k, ch_k + i sh_k) U_k, i.e. rot_z with per-lane
  // half-angle cosines/sines supplied by the caller
  void (*apply_zrot)(Batch2& u, const double* ch, const double* sh);
  // U_k <- A_k U_k
  void (*apply_batch)(Batch2& u, const Batch2& a);
  // T_k = Tr(t' U_k) written to out_re/out_im
  void (*overlap)(const Batch2& u, const Unitary2& t, double* out_re, double* out_im);
};

const KernelOps& scalar_kernels();

bool avx2_compiled();   // backend present in this build
bool avx2_supported();  // compiled and the CPU has AVX2+FMA
const KernelOps& avx2_kernels();  // requires avx2_supported()

const KernelOps& active_kernels();

}  // namespace jrpulse::kernels

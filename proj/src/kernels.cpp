#include "jrpulse/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace jrpulse::kernels {

void Batch2::resize(std::size_t n) {
  lanes = n;
  const std::size_t pad = (n + 3) & ~std::size_t(3);
  for (auto* v : {&ar, &ai, &br, &bi, &cr, &ci, &dr, &di}) v->assign(pad, 0.0);
  set_identity();
}

void Batch2::set_identity() {
  for (std::size_t k = 0; k < padded(); ++k) {
    ar[k] = 1.0;
    ai[k] = br[k] = bi[k] = cr[k] = ci[k] = di[k] = 0.0;
    dr[k] = 1.0;
  }
}

Unitary2 Batch2::lane(std::size_t k) const {
  Unitary2 u;
  u(0, 0) = {ar[k], ai[k]};
  u(0, 1) = {br[k], bi[k]};
  u(1, 0) = {cr[k], ci[k]};
  u(1, 1) = {dr[k], di[k]};
  return u;
}

void Batch2::set_lane(std::size_t k, const Unitary2& u) {
  ar[k] = u(0, 0).real();
  ai[k] = u(0, 0).imag();
  br[k] = u(0, 1).real();
  bi[k] = u(0, 1).imag();
  cr[k] = u(1, 0).real();
  ci[k] = u(1, 0).imag();
  dr[k] = u(1, 1).real();
  di[k] = u(1, 1).imag();
}

namespace {

void s_apply_fixed(Batch2& u, const Unitary2& m) {
  const double m00r = m(0, 0).real(), m00i = m(0, 0).imag();
  const double m01r = m(0, 1).real(), m01i = m(0, 1).imag();
  const double m10r = m(1, 0).real(), m10i = m(1, 0).imag();
  const double m11r = m(1, 1).real(), m11i = m(1, 1).imag();
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = u.ar[k], ai = u.ai[k], br = u.br[k], bi = u.bi[k];
    const double cr = u.cr[k], ci = u.ci[k], dr = u.dr[k], di = u.di[k];
    u.ar[k] = m00r * ar - m00i * ai + m01r * cr - m01i * ci;
    u.ai[k] = m00r * ai + m00i * ar + m01r * ci + m01i * cr;
    u.br[k] = m00r * br - m00i * bi + m01r * dr - m01i * di;
    u.bi[k] = m00r * bi + m00i * br + m01r * di + m01i * dr;
    u.cr[k] = m10r * ar - m10i * ai + m11r * cr - m11i * ci;
    u.ci[k] = m10r * ai + m10i * ar + m11r * ci + m11i * cr;
    u.dr[k] = m10r * br - m10i * bi + m11r * dr - m11i * di;
    u.di[k] = m10r * bi + m10i * br + m11r * di + m11i * dr;
  }
}

void s_apply_zrot(Batch2& u, const double* ch, const double* sh) {
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; ++k) {
    const double c = ch[k], s = sh[k];
    const double ar = u.ar[k], ai = u.ai[k], br = u.br[k], bi = u.bi[k];
    const double cr = u.cr[k], ci = u.ci[k], dr = u.dr[k], di = u.di[k];
    // row 0 times (c - i s), row 1 times (c + i s)
    u.ar[k] = c * ar + s * ai;
    u.ai[k] = c * ai - s * ar;
    u.br[k] = c * br + s * bi;
    u.bi[k] = c * bi - s * br;
    u.cr[k] = c * cr - s * ci;
    u.ci[k] = c * ci + s * cr;
    u.dr[k] = c * dr - s * di;
    u.di[k] = c * di + s * dr;
  }
}

void s_apply_batch(Batch2& u, const Batch2& a) {
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; ++k) {
    const double p_r = a.ar[k], p_i = a.ai[k], q_r = a.br[k], q_i = a.bi[k];
    const double r_r = a.cr[k], r_i = a.ci[k], s_r = a.dr[k], s_i = a.di[k];
    const double ar = u.ar[k], ai = u.ai[k], br = u.br[k], bi = u.bi[k];
    const double cr = u.cr[k], ci = u.ci[k], dr = u.dr[k], di = u.di[k];
    u.ar[k] = p_r * ar - p_i * ai + q_r * cr - q_i * ci;
    u.ai[k] = p_r * ai + p_i * ar + q_r * ci + q_i * cr;
    u.br[k] = p_r * br - p_i * bi + q_r * dr - q_i * di;
    u.bi[k] = p_r * bi + p_i * br + q_r * di + q_i * dr;
    u.cr[k] = r_r * ar - r_i * ai + s_r * cr - s_i * ci;
    u.ci[k] = r_r * ai + r_i * ar + s_r * ci + s_i * cr;
    u.dr[k] = r_r * br - r_i * bi + s_r * dr - s_i * di;
    u.di[k] = r_r * bi + r_i * br + s_r * di + s_i * dr;
  }
}

void s_overlap(const Batch2& u, const Unitary2& t, double* out_re, double* out_im) {
  const double t00r = t(0, 0).real(), t00i = t(0, 0).imag();
  const double t01r = t(0, 1).real(), t01i = t(0, 1).imag();
  const double t10r = t(1, 0).real(), t10i = t(1, 0).imag();
  const double t11r = t(1, 1).real(), t11i = t(1, 1).imag();
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; ++k) {
    // Tr(t' U) = sum over entries of conj(t) .* U
    out_re[k] = t00r * u.ar[k] + t00i * u.ai[k] + t01r * u.br[k] + t01i * u.bi[k] +
                t10r * u.cr[k] + t10i * u.ci[k] + t11r * u.dr[k] + t11i * u.di[k];
    out_im[k] = t00r * u.ai[k] - t00i * u.ar[k] + t01r * u.bi[k] - t01i * u.br[k] +
                t10r * u.ci[k] - t10i * u.cr[k] + t11r * u.di[k] - t11i * u.dr[k];
  }
}

}  // namespace

const KernelOps& scalar_kernels() {
  static const KernelOps ops{"scalar", s_apply_fixed, s_apply_zrot, s_apply_batch,
                             s_overlap};
  return ops;
}

bool avx2_compiled() {
#ifdef JRPULSE_HAVE_AVX2_BACKEND
  return true;
#else
  return false;
#endif
}

bool avx2_supported() {
#ifdef JRPULSE_HAVE_AVX2_BACKEND
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#ifndef JRPULSE_HAVE_AVX2_BACKEND
const KernelOps& avx2_kernels() {
  throw std::logic_error("AVX2 kernel backend not compiled into this build");
}
#endif

const KernelOps& active_kernels() {
  static const KernelOps* chosen = [] {
    const char* env = std::getenv("JRPULSE_KERNELS");
    const std::string want = env ? env : "auto";
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2") {
      if (avx2_supported()) return &avx2_kernels();
      std::fputs("jrpulse: AVX2 kernels requested but unavailable; using scalar\n",
                 stderr);
      return &scalar_kernels();
    }
    if (want != "auto")
      std::fprintf(stderr, "jrpulse: unknown JRPULSE_KERNELS value '%s'; using auto\n",
                   want.c_str());
    return avx2_supported() ? &avx2_kernels() : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace jrpulse::kernels

// AVX2+FMA variant of the lane-parallel kernels. Four lanes per vector;
// identical operation semantics to the scalar backend in kernels.cpp, with
// FMA contraction allowed (differences from scalar are at the last-ulp
// level and covered by the equivalence tests).

#include <immintrin.h>

#include "jrpulse/kernels.hpp"

namespace jrpulse::kernels {

namespace {

inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }
inline void store(double* p, __m256d v) { _mm256_storeu_pd(p, v); }

// c00 accumulation pattern: xr*yr - xi*yi + zr*wr - zi*wi
inline __m256d cplx_mul_acc_re(__m256d xr, __m256d xi, __m256d yr, __m256d yi) {
  return _mm256_fnmadd_pd(xi, yi, _mm256_mul_pd(xr, yr));
}
inline __m256d cplx_mul_acc_im(__m256d xr, __m256d xi, __m256d yr, __m256d yi) {
  return _mm256_fmadd_pd(xi, yr, _mm256_mul_pd(xr, yi));
}

void x_apply_fixed(Batch2& u, const Unitary2& m) {
  const __m256d m00r = _mm256_set1_pd(m(0, 0).real()), m00i = _mm256_set1_pd(m(0, 0).imag());
  const __m256d m01r = _mm256_set1_pd(m(0, 1).real()), m01i = _mm256_set1_pd(m(0, 1).imag());
  const __m256d m10r = _mm256_set1_pd(m(1, 0).real()), m10i = _mm256_set1_pd(m(1, 0).imag());
  const __m256d m11r = _mm256_set1_pd(m(1, 1).real()), m11i = _mm256_set1_pd(m(1, 1).imag());
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256d ar = load(&u.ar[k]), ai = load(&u.ai[k]);
    const __m256d br = load(&u.br[k]), bi = load(&u.bi[k]);
    const __m256d cr = load(&u.cr[k]), ci = load(&u.ci[k]);
    const __m256d dr = load(&u.dr[k]), di = load(&u.di[k]);

    __m256d re = cplx_mul_acc_re(m00r, m00i, ar, ai);
    re = _mm256_fmadd_pd(m01r, cr, re);
    re = _mm256_fnmadd_pd(m01i, ci, re);
    __m256d im = cplx_mul_acc_im(m00r, m00i, ar, ai);
    im = _mm256_fmadd_pd(m01r, ci, im);
    im = _mm256_fmadd_pd(m01i, cr, im);
    store(&u.ar[k], re);
    store(&u.ai[k], im);

    re = cplx_mul_acc_re(m00r, m00i, br, bi);
    re = _mm256_fmadd_pd(m01r, dr, re);
    re = _mm256_fnmadd_pd(m01i, di, re);
    im = cplx_mul_acc_im(m00r, m00i, br, bi);
    im = _mm256_fmadd_pd(m01r, di, im);
    im = _mm256_fmadd_pd(m01i, dr, im);
    store(&u.br[k], re);
    store(&u.bi[k], im);

    re = cplx_mul_acc_re(m10r, m10i, ar, ai);
    re = _mm256_fmadd_pd(m11r, cr, re);
    re = _mm256_fnmadd_pd(m11i, ci, re);
    im = cplx_mul_acc_im(m10r, m10i, ar, ai);
    im = _mm256_fmadd_pd(m11r, ci, im);
    im = _mm256_fmadd_pd(m11i, cr, im);
    store(&u.cr[k], re);
    store(&u.ci[k], im);

    re = cplx_mul_acc_re(m10r, m10i, br, bi);
    re = _mm256_fmadd_pd(m11r, dr, re);
    re = _mm256_fnmadd_pd(m11i, di, re);
    im = cplx_mul_acc_im(m10r, m10i, br, bi);
    im = _mm256_fmadd_pd(m11r, di, im);
    im = _mm256_fmadd_pd(m11i, dr, im);
    store(&u.dr[k], re);
    store(&u.di[k], im);
  }
}

void x_apply_zrot(Batch2& u, const double* ch, const double* sh) {
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256d c = load(&ch[k]), s = load(&sh[k]);
    __m256d re = load(&u.ar[k]), im = load(&u.ai[k]);
    // row 0 times (c - i s)
    store(&u.ar[k], _mm256_fmadd_pd(s, im, _mm256_mul_pd(c, re)));
    store(&u.ai[k], _mm256_fnmadd_pd(s, re, _mm256_mul_pd(c, im)));
    re = load(&u.br[k]);
    im = load(&u.bi[k]);
    store(&u.br[k], _mm256_fmadd_pd(s, im, _mm256_mul_pd(c, re)));
    store(&u.bi[k], _mm256_fnmadd_pd(s, re, _mm256_mul_pd(c, im)));
    // row 1 times (c + i s)
    re = load(&u.cr[k]);
    im = load(&u.ci[k]);
    store(&u.cr[k], _mm256_fnmadd_pd(s, im, _mm256_mul_pd(c, re)));
    store(&u.ci[k], _mm256_fmadd_pd(s, re, _mm256_mul_pd(c, im)));
    re = load(&u.dr[k]);
    im = load(&u.di[k]);
    store(&u.dr[k], _mm256_fnmadd_pd(s, im, _mm256_mul_pd(c, re)));
    store(&u.di[k], _mm256_fmadd_pd(s, re, _mm256_mul_pd(c, im)));
  }
}

void x_apply_batch(Batch2& u, const Batch2& a) {
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256d p_r = load(&a.ar[k]), p_i = load(&a.ai[k]);
    const __m256d q_r = load(&a.br[k]), q_i = load(&a.bi[k]);
    const __m256d r_r = load(&a.cr[k]), r_i = load(&a.ci[k]);
    const __m256d s_r = load(&a.dr[k]), s_i = load(&a.di[k]);
    const __m256d ar = load(&u.ar[k]), ai = load(&u.ai[k]);
    const __m256d br = load(&u.br[k]), bi = load(&u.bi[k]);
    const __m256d cr = load(&u.cr[k]), ci = load(&u.ci[k]);
    const __m256d dr = load(&u.dr[k]), di = load(&u.di[k]);

    __m256d re = cplx_mul_acc_re(p_r, p_i, ar, ai);
    re = _mm256_fmadd_pd(q_r, cr, re);
    re = _mm256_fnmadd_pd(q_i, ci, re);
    __m256d im = cplx_mul_acc_im(p_r, p_i, ar, ai);
    im = _mm256_fmadd_pd(q_r, ci, im);
    im = _mm256_fmadd_pd(q_i, cr, im);
    store(&u.ar[k], re);
    store(&u.ai[k], im);

    re = cplx_mul_acc_re(p_r, p_i, br, bi);
    re = _mm256_fmadd_pd(q_r, dr, re);
    re = _mm256_fnmadd_pd(q_i, di, re);
    im = cplx_mul_acc_im(p_r, p_i, br, bi);
    im = _mm256_fmadd_pd(q_r, di, im);
    im = _mm256_fmadd_pd(q_i, dr, im);
    store(&u.br[k], re);
    store(&u.bi[k], im);

    re = cplx_mul_acc_re(r_r, r_i, ar, ai);
    re = _mm256_fmadd_pd(s_r, cr, re);
    re = _mm256_fnmadd_pd(s_i, ci, re);
    im = cplx_mul_acc_im(r_r, r_i, ar, ai);
    im = _mm256_fmadd_pd(s_r, ci, im);
    im = _mm256_fmadd_pd(s_i, cr, im);
    store(&u.cr[k], re);
    store(&u.ci[k], im);

    re = cplx_mul_acc_re(r_r, r_i, br, bi);
    re = _mm256_fmadd_pd(s_r, dr, re);
    re = _mm256_fnmadd_pd(s_i, di, re);
    im = cplx_mul_acc_im(r_r, r_i, br, bi);
    im = _mm256_fmadd_pd(s_r, di, im);
    im = _mm256_fmadd_pd(s_i, dr, im);
    store(&u.dr[k], re);
    store(&u.di[k], im);
  }
}

void x_overlap(const Batch2& u, const Unitary2& t, double* out_re, double* out_im) {
  const __m256d t00r = _mm256_set1_pd(t(0, 0).real()), t00i = _mm256_set1_pd(t(0, 0).imag());
  const __m256d t01r = _mm256_set1_pd(t(0, 1).real()), t01i = _mm256_set1_pd(t(0, 1).imag());
  const __m256d t10r = _mm256_set1_pd(t(1, 0).real()), t10i = _mm256_set1_pd(t(1, 0).imag());
  const __m256d t11r = _mm256_set1_pd(t(1, 1).real()), t11i = _mm256_set1_pd(t(1, 1).imag());
  const std::size_t n = u.padded();
  for (std::size_t k = 0; k < n; k += 4) {
    const __m256d ar = load(&u.ar[k]), ai = load(&u.ai[k]);
    const __m256d br = load(&u.br[k]), bi = load(&u.bi[k]);
    const __m256d cr = load(&u.cr[k]), ci = load(&u.ci[k]);
    const __m256d dr = load(&u.dr[k]), di = load(&u.di[k]);

    __m256d re = _mm256_mul_pd(t00r, ar);
    re = _mm256_fmadd_pd(t00i, ai, re);
    re = _mm256_fmadd_pd(t01r, br, re);
    re = _mm256_fmadd_pd(t01i, bi, re);
    re = _mm256_fmadd_pd(t10r, cr, re);
    re = _mm256_fmadd_pd(t10i, ci, re);
    re = _mm256_fmadd_pd(t11r, dr, re);
    re = _mm256_fmadd_pd(t11i, di, re);

    __m256d im = _mm256_mul_pd(t00r, ai);
    im = _mm256_fnmadd_pd(t00i, ar, im);
    im = _mm256_fmadd_pd(t01r, bi, im);
    im = _mm256_fnmadd_pd(t01i, br, im);
    im = _mm256_fmadd_pd(t10r, ci, im);
    im = _mm256_fnmadd_pd(t10i, cr, im);
    im = _mm256_fmadd_pd(t11r, di, im);
    im = _mm256_fnmadd_pd(t11i, dr, im);

    store(&out_re[k], re);
    store(&out_im[k], im);
  }
}

}  // namespace

const KernelOps& avx2_kernels() {
  static const KernelOps ops{"avx2", x_apply_fixed, x_apply_zrot, x_apply_batch,
                             x_overlap};
  return ops;
}

}  // namespace jrpulse::kernels

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing in it may run before simd_dispatch.cpp has checked the CPU.
#include <immintrin.h>

#include <cmath>

#include "gshift/simd.hpp"

namespace gshift::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

void shift_arguments_avx2(const ShiftBracket& b, const double* z, double* r, std::size_t n) {
  const double xy_s = b.x * b.y;
  const double s_s = b.sx * b.sy;
  const __m256d xy = _mm256_set1_pd(xy_s);
  const __m256d s = _mm256_set1_pd(s_s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(r + i, _mm256_fnmadd_pd(s, _mm256_loadu_pd(z + i), xy));
  }
  for (; i < n; ++i) r[i] = std::fma(-s_s, z[i], xy_s);
}

double shift_accumulate_avx2(const ShiftBracket& b, const double* z, const double* si_z,
                             const double* r, const double* fr, std::size_t n) {
  const __m256d c0 = _mm256_set1_pd(b.c0);
  const __m256d c1 = _mm256_set1_pd(b.c1);
  const __m256d c2 = _mm256_set1_pd(b.c2);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  auto term = [&](std::size_t j) {
    const __m256d zz = _mm256_loadu_pd(z + j);
    const __m256d br = _mm256_fmadd_pd(c2, _mm256_loadu_pd(si_z + j), _mm256_fmadd_pd(c1, zz, c0));
    const __m256d rr = _mm256_loadu_pd(r + j);
    const __m256d si_r = b.si_squared ? _mm256_fnmadd_pd(rr, rr, one) : _mm256_sub_pd(one, rr);
    const __m256d kern = _mm256_fmsub_pd(_mm256_mul_pd(two, br), br, si_r);
    return _mm256_mul_pd(kern, _mm256_loadu_pd(fr + j));
  };
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, term(i));
    acc1 = _mm256_add_pd(acc1, term(i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, term(i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double bracket = b.c0 + b.c1 * z[i] + b.c2 * si_z[i];
    const double si_r = b.si_squared ? 1.0 - r[i] * r[i] : 1.0 - r[i];
    acc += (2.0 * bracket * bracket - si_r) * fr[i];
  }
  return acc;
}

void chebyshev_eval_avx2(const double* c, std::size_t nc, const double* x, double* out,
                         std::size_t n) {
  if (nc == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  std::size_t i = 0;
  // Two independent Clenshaw chains per iteration hide the FMA latency.
  for (; i + 8 <= n; i += 8) {
    const __m256d ta = _mm256_loadu_pd(x + i);
    const __m256d tb = _mm256_loadu_pd(x + i + 4);
    const __m256d two_ta = _mm256_add_pd(ta, ta);
    const __m256d two_tb = _mm256_add_pd(tb, tb);
    __m256d a1 = _mm256_setzero_pd(), a2 = _mm256_setzero_pd();
    __m256d b1 = _mm256_setzero_pd(), b2 = _mm256_setzero_pd();
    for (std::size_t k = nc - 1; k >= 1; --k) {
      const __m256d ck = _mm256_set1_pd(c[k]);
      const __m256d a0 = _mm256_sub_pd(_mm256_fmadd_pd(two_ta, a1, ck), a2);
      const __m256d b0 = _mm256_sub_pd(_mm256_fmadd_pd(two_tb, b1, ck), b2);
      a2 = a1;
      a1 = a0;
      b2 = b1;
      b1 = b0;
    }
    const __m256d c0 = _mm256_set1_pd(c[0]);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_fmadd_pd(ta, a1, c0), a2));
    _mm256_storeu_pd(out + i + 4, _mm256_sub_pd(_mm256_fmadd_pd(tb, b1, c0), b2));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(x + i);
    const __m256d two_t = _mm256_add_pd(t, t);
    __m256d b1 = _mm256_setzero_pd(), b2 = _mm256_setzero_pd();
    for (std::size_t k = nc - 1; k >= 1; --k) {
      const __m256d b0 = _mm256_sub_pd(_mm256_fmadd_pd(two_t, b1, _mm256_set1_pd(c[k])), b2);
      b2 = b1;
      b1 = b0;
    }
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_fmadd_pd(t, b1, _mm256_set1_pd(c[0])), b2));
  }
  for (; i < n; ++i) {
    const double t = x[i];
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = nc - 1; k >= 1; --k) {
      const double b0 = std::fma(2.0 * t, b1, c[k]) - b2;
      b2 = b1;
      b1 = b0;
    }
    out[i] = std::fma(t, b1, c[0]) - b2;
  }
}

double weighted_abs_max_avx2(const double* v, const double* w, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(w + i));
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, p));
  }
  double out = hmax(m);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(v[i] * w[i]));
  return out;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Level::kAvx2,        shift_arguments_avx2,
                                 shift_accumulate_avx2, chebyshev_eval_avx2,
                                 weighted_abs_max_avx2, dot_avx2};
  return table;
}

}  // namespace gshift::simd

// NEON (aarch64) variants. Advanced SIMD is mandatory on aarch64, so no
// runtime feature probe is needed beyond the build-time architecture check.
#include <arm_neon.h>

#include <cmath>

#include "gshift/simd.hpp"

namespace gshift::simd {
namespace {

void shift_arguments_neon(const ShiftBracket& b, const double* z, double* r, std::size_t n) {
  const double xy_s = b.x * b.y;
  const double s_s = b.sx * b.sy;
  const float64x2_t xy = vdupq_n_f64(xy_s);
  const float64x2_t s = vdupq_n_f64(s_s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(r + i, vfmsq_f64(xy, s, vld1q_f64(z + i)));
  for (; i < n; ++i) r[i] = std::fma(-s_s, z[i], xy_s);
}

double shift_accumulate_neon(const ShiftBracket& b, const double* z, const double* si_z,
                             const double* r, const double* fr, std::size_t n) {
  const float64x2_t c0 = vdupq_n_f64(b.c0);
  const float64x2_t c1 = vdupq_n_f64(b.c1);
  const float64x2_t c2 = vdupq_n_f64(b.c2);
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t br = vfmaq_f64(vfmaq_f64(c0, c1, vld1q_f64(z + i)), c2, vld1q_f64(si_z + i));
    const float64x2_t rr = vld1q_f64(r + i);
    const float64x2_t si_r = b.si_squared ? vfmsq_f64(one, rr, rr) : vsubq_f64(one, rr);
    const float64x2_t kern = vsubq_f64(vmulq_f64(vaddq_f64(br, br), br), si_r);
    acc = vfmaq_f64(acc, kern, vld1q_f64(fr + i));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double bracket = b.c0 + b.c1 * z[i] + b.c2 * si_z[i];
    const double si_r = b.si_squared ? 1.0 - r[i] * r[i] : 1.0 - r[i];
    out += (2.0 * bracket * bracket - si_r) * fr[i];
  }
  return out;
}

void chebyshev_eval_neon(const double* c, std::size_t nc, const double* x, double* out,
                         std::size_t n) {
  if (nc == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t = vld1q_f64(x + i);
    const float64x2_t two_t = vaddq_f64(t, t);
    float64x2_t b1 = vdupq_n_f64(0.0), b2 = vdupq_n_f64(0.0);
    for (std::size_t k = nc - 1; k >= 1; --k) {
      const float64x2_t b0 = vsubq_f64(vfmaq_f64(vdupq_n_f64(c[k]), two_t, b1), b2);
      b2 = b1;
      b1 = b0;
    }
    vst1q_f64(out + i, vsubq_f64(vfmaq_f64(vdupq_n_f64(c[0]), t, b1), b2));
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

double weighted_abs_max_neon(const double* v, const double* w, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    m = vmaxq_f64(m, vabsq_f64(vmulq_f64(vld1q_f64(v + i), vld1q_f64(w + i))));
  }
  double out = vmaxvq_f64(m);
  for (; i < n; ++i) out = std::fmax(out, std::fabs(v[i] * w[i]));
  return out;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

}  // namespace

const KernelTable& neon_table_unchecked() {
  static const KernelTable table{Level::kNeon,        shift_arguments_neon,
                                 shift_accumulate_neon, chebyshev_eval_neon,
                                 weighted_abs_max_neon, dot_neon};
  return table;
}

}  // namespace gshift::simd

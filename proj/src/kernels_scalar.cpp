#include "gshift/simd.hpp"

#include <cmath>

namespace gshift::simd {
namespace {

void shift_arguments_scalar(const ShiftBracket& b, const double* z, double* r, std::size_t n) {
  const double xy = b.x * b.y;
  const double s = b.sx * b.sy;
  for (std::size_t i = 0; i < n; ++i) r[i] = xy - s * z[i];
}

double shift_accumulate_scalar(const ShiftBracket& b, const double* z, const double* si_z,
                               const double* r, const double* fr, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double bracket = b.c0 + b.c1 * z[i] + b.c2 * si_z[i];
    const double si_r = b.si_squared ? 1.0 - r[i] * r[i] : 1.0 - r[i];
    acc += (2.0 * bracket * bracket - si_r) * fr[i];
  }
  return acc;
}

void chebyshev_eval_scalar(const double* c, std::size_t nc, const double* x, double* out,
                           std::size_t n) {
  if (nc == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i];
    const double two_t = 2.0 * t;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = nc - 1; k >= 1; --k) {
      const double b0 = c[k] + two_t * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    out[i] = c[0] + t * b1 - b2;
  }
}

double weighted_abs_max_scalar(const double* v, const double* w, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(v[i] * w[i]));
  return m;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Level::kScalar,        shift_arguments_scalar,
                                 shift_accumulate_scalar, chebyshev_eval_scalar,
                                 weighted_abs_max_scalar, dot_scalar};
  return table;
}

}  // namespace gshift::simd

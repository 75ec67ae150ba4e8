#pragma once
// Data-parallel inner loops of the library.
//
// Every kernel exists as a scalar reference implementation and, where the
// target supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The
// variant is picked once at runtime from the CPU features; GSHIFT_SIMD=scalar
// in the environment, or set_level(), forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace gshift::simd {

enum class Level { kScalar, kAvx2, kNeon };

std::string_view level_name(Level level);

/// Coefficients of the squared bracket in the shift kernel for one (x, y) pair:
///   bracket(z) = c0 + c1 * z + c2 * Si(z).
struct ShiftBracket {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double x = 0.0;   // evaluation point
  double y = 1.0;   // shift parameter
  double sx = 0.0;  // sqrt(1 - x^2)
  double sy = 0.0;  // sqrt(1 - y^2)
  bool si_squared = true;  // Si(u) = 1 - u^2 when set, 1 - u otherwise
};

ShiftBracket make_bracket(double x, double y, bool si_squared);

/// Function table for one instruction-set level.
struct KernelTable {
  Level level;
  // r[i] = x*y - sx*sy*z[i]
  void (*shift_arguments)(const ShiftBracket& b, const double* z, double* r, std::size_t n);
  // sum_i (2*bracket(z_i)^2 - Si(r_i)) * fr[i]
  double (*shift_accumulate)(const ShiftBracket& b, const double* z, const double* si_z,
                             const double* r, const double* fr, std::size_t n);
  // Clenshaw evaluation of sum_k c[k] T_k(x[i]).
  void (*chebyshev_eval)(const double* c, std::size_t nc, const double* x, double* out,
                         std::size_t n);
  // max_i |v[i] * w[i]|
  double (*weighted_abs_max)(const double* v, const double* w, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_table();
const KernelTable* neon_table();

bool available(Level level);
Level active_level();
/// Throws DomainError when the level is not available on this machine.
void set_level(Level level);
const KernelTable& active();

// Span front-ends over the active table.
void shift_arguments(const ShiftBracket& b, std::span<const double> z, std::span<double> r);
double shift_accumulate(const ShiftBracket& b, std::span<const double> z,
                        std::span<const double> si_z, std::span<const double> r,
                        std::span<const double> fr);
void chebyshev_eval(std::span<const double> coeffs, std::span<const double> x,
                    std::span<double> out);
double weighted_abs_max(std::span<const double> v, std::span<const double> w);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace gshift::simd

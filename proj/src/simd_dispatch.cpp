#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gshift/error.hpp"
#include "gshift/simd.hpp"

namespace gshift::simd {

#if defined(GSHIFT_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif
#if defined(GSHIFT_HAVE_NEON)
const KernelTable& neon_table_unchecked();
#endif

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

ShiftBracket make_bracket(double x, double y, bool si_squared) {
  ShiftBracket b;
  b.x = x;
  b.y = y;
  b.sx = std::sqrt(std::fmax(0.0, 1.0 - x * x));
  b.sy = std::sqrt(std::fmax(0.0, 1.0 - y * y));
  b.c0 = b.sx * y;
  b.c1 = x * b.sy;
  b.c2 = b.sx * (1.0 - y);
  b.si_squared = si_squared;
  return b;
}

const KernelTable* avx2_table() {
#if defined(GSHIFT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(GSHIFT_HAVE_NEON)
  return &neon_table_unchecked();
#else
  return nullptr;
#endif
}

bool available(Level level) {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
      return avx2_table() != nullptr;
    case Level::kNeon:
      return neon_table() != nullptr;
  }
  return false;
}

namespace {

const KernelTable* table_for(Level level) {
  switch (level) {
    case Level::kScalar:
      return &scalar_table();
    case Level::kAvx2:
      return avx2_table();
    case Level::kNeon:
      return neon_table();
  }
  return nullptr;
}

const KernelTable* detect() {
  if (const char* env = std::getenv("GSHIFT_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return &scalar_table();
  }
  if (const auto* t = avx2_table()) return t;
  if (const auto* t = neon_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

Level active_level() { return active().level; }

void set_level(Level level) {
  const KernelTable* t = table_for(level);
  if (t == nullptr) {
    throw DomainError("SIMD level '" + std::string(level_name(level)) + "' is not available");
  }
  current().store(t);
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void shift_arguments(const ShiftBracket& b, std::span<const double> z, std::span<double> r) {
  active().shift_arguments(b, z.data(), r.data(), z.size());
}

double shift_accumulate(const ShiftBracket& b, std::span<const double> z,
                        std::span<const double> si_z, std::span<const double> r,
                        std::span<const double> fr) {
  return active().shift_accumulate(b, z.data(), si_z.data(), r.data(), fr.data(), z.size());
}

void chebyshev_eval(std::span<const double> coeffs, std::span<const double> x,
                    std::span<double> out) {
  active().chebyshev_eval(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}

double weighted_abs_max(std::span<const double> v, std::span<const double> w) {
  return active().weighted_abs_max(v.data(), w.data(), v.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace gshift::simd

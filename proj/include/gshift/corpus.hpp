#pragma once
// Versioned test-function corpus.
//
//   poly:d            x^d, d in 0..8 (any d >= 0 is accepted)
//   poly:c0,c1,...    c0 + c1 x + ... (two or more coefficients)
//   eigen:nu          P_nu^{(2,2)}, normalized to 1 at x = 1
//   absshift:c[:s]    |x - c|^s, s = 1 by default
//   exp               exp(x)
//   pwcubic           u^2 for u < 0, u^3 - u^2 for u >= 0 with u = x - 1/4 (C^1, not C^2)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gshift/function.hpp"

namespace gshift {

inline constexpr int kCorpusVersion = 1;

struct CorpusEntry {
  std::string id;
  std::string description;
  /// Decay exponent of E_n in the sup norm when it is algebraic; empty for
  /// polynomials and entire functions.
  std::optional<double> nominal_lambda;
};

/// Throws DomainError for unknown or malformed ids.
RealFunction make_function(std::string_view id);
std::vector<CorpusEntry> corpus();
std::vector<std::string> corpus_ids();

}  // namespace gshift

#pragma once

#include <span>

namespace gshift {

/// Least-squares fit of log y = log C - lambda log x.
struct DecayFit {
  double lambda_hat = 0.0;
  double log_C_hat = 0.0;
  double r_squared = 0.0;  // 1 when the data have no spread in log y
  int points = 0;
};

/// Throws DegenerateInputError for fewer than 3 points or mismatched
/// lengths, and DomainError for nonpositive values.
DecayFit estimate_decay(std::span<const double> xs, std::span<const double> ys);

}  // namespace gshift

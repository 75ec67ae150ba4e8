#include "gshift/decay.hpp"

#include <algorithm>
#include <cmath>

#include "gshift/error.hpp"

namespace gshift {

DecayFit estimate_decay(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DegenerateInputError("decay fit needs equally many x and y values");
  if (xs.size() < 3) throw DegenerateInputError("decay fit needs at least 3 points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw DomainError("decay fit needs positive finite data");
    }
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx, dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DegenerateInputError("decay fit needs distinct x values");
  const double slope = sxy / sxx;
  DecayFit fit;
  fit.lambda_hat = -slope;
  fit.log_C_hat = my - slope * mx;
  fit.points = static_cast<int>(xs.size());
  if (syy <= 1e-300) {
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

}  // namespace gshift

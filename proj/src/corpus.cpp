#include "gshift/corpus.hpp"

#include <charconv>
#include <cmath>

#include "gshift/error.hpp"
#include "gshift/jacobi.hpp"

namespace gshift {

namespace {

double parse_double(std::string_view s, std::string_view id) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DomainError("malformed number '" + std::string(s) + "' in function id '" + std::string(id) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view id) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw DomainError("malformed degree '" + std::string(s) + "' in function id '" + std::string(id) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

RealFunction polynomial(std::string_view id, std::string_view arg) {
  const auto parts = split(arg, ',');
  if (parts.size() == 1) {
    const int d = parse_int(parts[0], id);
    return RealFunction::from_scalar(std::string(id), [d](double x) { return std::pow(x, d); }, d);
  }
  std::vector<double> mono;
  for (auto p : parts) mono.push_back(parse_double(p, id));
  int degree = static_cast<int>(mono.size()) - 1;
  while (degree > 0 && mono[static_cast<std::size_t>(degree)] == 0.0) --degree;
  auto f = RealFunction::from_series(std::string(id), ChebSeries::from_monomial(mono));
  return RealFunction(std::string(id), [f](std::span<const double> x, std::span<double> out) { f.evaluate(x, out); },
                      degree);
}

}  // namespace

RealFunction make_function(std::string_view id) {
  const auto colon = id.find(':');
  const std::string_view head = id.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  if (head == "exp" && colon == std::string_view::npos) {
    return RealFunction::from_scalar("exp", [](double x) { return std::exp(x); });
  }
  if (head == "pwcubic" && colon == std::string_view::npos) {
    return RealFunction::from_scalar("pwcubic", [](double x) {
      const double u = x - 0.25;
      return u < 0.0 ? u * u : u * u * u - u * u;
    });
  }
  if (head == "poly" && !arg.empty()) return polynomial(id, arg);
  if (head == "eigen" && !arg.empty()) {
    const int nu = parse_int(arg, id);
    return RealFunction::from_scalar(
        std::string(id), [nu](double x) { return eval_jacobi({2.0, 2.0}, nu, x); }, nu);
  }
  if (head == "absshift" && !arg.empty()) {
    const auto parts = split(arg, ':');
    if (parts.size() > 2) throw DomainError("malformed function id '" + std::string(id) + "'");
    const double c = parse_double(parts[0], id);
    const double s = parts.size() == 2 ? parse_double(parts[1], id) : 1.0;
    if (!(s > 0.0)) throw DomainError("absshift exponent must be positive");
    if (s == 1.0) {
      return RealFunction::from_scalar(std::string(id), [c](double x) { return std::fabs(x - c); });
    }
    return RealFunction::from_scalar(std::string(id), [c, s](double x) { return std::pow(std::fabs(x - c), s); });
  }
  throw DomainError("unknown function id '" + std::string(id) + "'");
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (int d = 0; d <= 8; ++d) out.push_back({"poly:" + std::to_string(d), "x^" + std::to_string(d), std::nullopt});
  for (int nu : {2, 5, 8}) {
    out.push_back({"eigen:" + std::to_string(nu), "Jacobi (2,2) polynomial of degree " + std::to_string(nu),
                   std::nullopt});
  }
  out.push_back({"absshift:0.25:0.5", "|x - 1/4|^0.5", 0.5});
  out.push_back({"absshift:0.25", "|x - 1/4|", 1.0});
  out.push_back({"absshift:0.25:1.5", "|x - 1/4|^1.5", 1.5});
  out.push_back({"exp", "exp(x)", std::nullopt});
  out.push_back({"pwcubic", "piecewise cubic at x = 1/4, C^1 but not C^2", 2.0});
  return out;
}

std::vector<std::string> corpus_ids() {
  std::vector<std::string> ids;
  for (const auto& e : corpus()) ids.push_back(e.id);
  return ids;
}

}  // namespace gshift

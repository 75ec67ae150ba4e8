#include "gshift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gshift/corpus.hpp"
#include "gshift/error.hpp"
#include "gshift/report.hpp"

namespace gshift {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::vector<int> parse_int_range(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw DomainError("empty range");
  std::vector<int> out;
  if (const auto dots = t.find(".."); dots != std::string::npos) {
    const int lo = to_int(trim(t.substr(0, dots)));
    const int hi = to_int(trim(t.substr(dots + 2)));
    if (lo < 1 || hi < lo) throw DomainError("range '" + t + "' must satisfy 1 <= a <= b");
    for (long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
    return out;
  }
  for (const auto& item : split_commas(t)) out.push_back(to_int(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  if (trim(text).empty()) throw DomainError("empty list");
  std::vector<double> out;
  for (const auto& item : split_commas(text)) out.push_back(to_double(item));
  return out;
}

double parse_p(const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity") return kInf;
  const double p = to_double(t);
  if (!(p >= 1.0)) throw DomainError("p must be >= 1 or inf");
  return p;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string config;
  std::string f = "absshift:0.25";
  std::string p = "inf";
  double alpha = 1.0;
  std::string r = "1";
  std::string lambda;
  std::string n;
  std::string delta = "0.015625,0.03125,0.0625,0.125,0.25";
  std::string t = "0.5";
  std::string x;
  std::string y = "0.3,-0.4,0.7,0.1,-0.8";
  std::string si = "auto";
  int quad = 256;
  int interp = 128;
  bool normalize = false;
  int grid = 0;
  int max_degree = 0;
  int grid_size = 21;
  unsigned seed = 1;
  int jobs = 0;
  std::string out;
  std::string csv;
};

// Everything a command needs after the flags and the config file are merged.
struct Resolved {
  Json config;
  ShiftKernelConfig kernel;
  ExperimentOptions options;
};

int worst_exit(std::span<const Verdict> verdicts) {
  int code = 0;
  for (Verdict v : verdicts) {
    const int c = exit_code(v);
    if (c == 2) return 2;
    code = std::max(code, c);
  }
  return code;
}

std::string joined(std::span<const double> v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += sep;
    s += format_double(v[i]);
  }
  return s;
}

std::string cli_string(const Json& v) {
  switch (v.type()) {
    case Json::value_t::string:
      return v.get<std::string>();
    case Json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_float:
      return format_double(v.get<double>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return v.dump();
    case Json::value_t::array: {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += ',';
        s += cli_string(v[i]);
      }
      return s;
    }
    default:
      throw UsageError("config values must be strings, numbers, booleans or arrays");
  }
}

// Fills options not given on the command line from the JSON config file.
void apply_config_file(CLI::App& sub, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config key '" + key + "' is not an option of " + sub.get_name());
    if (opt->count() > 0) continue;
    opt->add_result(cli_string(value));
    opt->run_callback();
  }
}

class Driver {
 public:
  Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  using Handler = std::function<int(const Resolved&)>;

  CLI::App* command(const std::string& name, const std::string& help, std::vector<std::string> keys, Handler h);
  Resolved resolve(const std::string& name);
  void emit(const std::string& name, const Resolved& res, Json payload, const CsvTable* csv);

  int kernel_validate(const Resolved& res);
  int shift_eval(const Resolved& res);
  int modulus_cmd(const Resolved& res);
  int bestapprox(const Resolved& res);
  int verify_jackson_cmd(const Resolved& res);
  int verify_embedding(const Resolved& res, bool direct);
  int coincidence(const Resolved& res);
  int discover_basis(const Resolved& res);
  int corpus_list(const Resolved& res);

  SpaceParams params() const { return {parse_p(s_.p), s_.alpha}; }
  std::vector<int> r_values() const {
    auto rs = parse_int_range(s_.r);
    for (int r : rs) {
      if (r < 1 || r > 3) throw DomainError("r must be in 1..3");
    }
    return rs;
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"Generalized shift operator and smoothness class experiments", "gshift"};
  Settings s_;
  std::map<std::string, std::vector<std::string>> keys_;
  std::map<std::string, Handler> handlers_;
};

CLI::App* Driver::command(const std::string& name, const std::string& help, std::vector<std::string> keys,
                          Handler h) {
  CLI::App* sub = app_.add_subcommand(name, help);
  keys.insert(keys.end(), {"out", "csv", "jobs"});
  for (const auto& k : keys) {
    if (k == "f") sub->add_option("--f", s_.f, "corpus id or poly:c0,c1,...")->capture_default_str();
    if (k == "p") sub->add_option("--p", s_.p, "norm exponent, a number >= 1 or inf")->capture_default_str();
    if (k == "alpha") sub->add_option("--alpha", s_.alpha, "weight exponent")->capture_default_str();
    if (k == "r") sub->add_option("--r", s_.r, "difference orders, e.g. 1,2")->capture_default_str();
    if (k == "lambda") sub->add_option("--lambda", s_.lambda, "class exponent (default: fitted)");
    if (k == "n") sub->add_option("--n", s_.n, "degrees: a..b (doubling) or a comma list");
    if (k == "delta") sub->add_option("--delta", s_.delta, "step bounds, increasing")->capture_default_str();
    if (k == "t") sub->add_option("--t", s_.t, "step sizes t_1,...,t_r")->capture_default_str();
    if (k == "x") sub->add_option("--x", s_.x, "evaluation points (default: 21 interior points)");
    if (k == "y") sub->add_option("--y", s_.y, "shift parameters y in (-1, 1]")->capture_default_str();
    if (k == "si") {
      sub->add_option("--si", s_.si, "Si reading: auto, one-minus-u, one-minus-u-squared")->capture_default_str();
      sub->add_option("--quad", s_.quad, "Chebyshev-Gauss points of the shift quadrature")->capture_default_str();
      sub->add_option("--interp", s_.interp, "degree of materialized shifts")->capture_default_str();
      sub->add_flag("--normalize", s_.normalize, "divide by tau_y(1, x)");
    }
    if (k == "grid") sub->add_option("--grid", s_.grid, "modulus lattice points per axis (0: automatic)");
    if (k == "max-degree") sub->add_option("--max-degree", s_.max_degree, "largest polynomial degree checked");
    if (k == "grid-size") sub->add_option("--grid-size", s_.grid_size, "x and y grid size")->capture_default_str();
    if (k == "seed") sub->add_option("--seed", s_.seed, "seed for random test functions")->capture_default_str();
    if (k == "out") sub->add_option("--out", s_.out, "JSON report path (default: standard output)");
    if (k == "csv") sub->add_option("--csv", s_.csv, "CSV table path");
    if (k == "jobs") sub->add_option("--jobs", s_.jobs, "worker threads (default: GSHIFT_JOBS or all cores)");
  }
  sub->add_option("--config", s_.config, "JSON file whose keys are flag names; flags take precedence");
  keys_[name] = keys;
  handlers_[name] = std::move(h);
  return sub;
}

Resolved Driver::resolve(const std::string& name) {
  Resolved res;
  const auto& keys = keys_.at(name);
  auto has = [&](const char* k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };

  ShiftKernelConfig base;
  if (s_.quad < 8) throw DomainError("--quad must be >= 8");
  if (s_.interp < 1) throw DomainError("--interp must be >= 1");
  base.quadrature_size = static_cast<std::size_t>(s_.quad);
  base.interp_degree = static_cast<std::size_t>(s_.interp);
  base.enforce_normalization = s_.normalize;
  std::string resolution = "explicit";
  if (has("si")) {
    if (s_.si == "auto") {
      base = resolve_kernel_config(base);
      if (s_.normalize) base.enforce_normalization = true;
      resolution = base.enforce_normalization && !s_.normalize ? "enforced (no interpretation passed)" : "validated";
    } else {
      base.si = si_kind_from_string(s_.si);
    }
  }
  res.kernel = base;

  const std::size_t jobs = s_.jobs > 0 ? static_cast<std::size_t>(s_.jobs) : default_jobs();
  res.options.kernel = base;
  res.options.jobs = jobs;
  if (s_.grid < 0) throw DomainError("--grid must be >= 0");
  res.options.modulus.grid_per_axis = s_.grid;

  Json& c = res.config;
  for (const auto& k : keys) {
    if (k == "f") c["f"] = make_function(s_.f).id();
    if (k == "p") c["p"] = parse_p(s_.p);
    if (k == "alpha") c["alpha"] = s_.alpha;
    if (k == "r") c["r"] = r_values();
    if (k == "lambda") c["lambda"] = s_.lambda.empty() ? Json() : Json(to_double(trim(s_.lambda)));
    if (k == "n") c["n"] = s_.n.empty() ? Json() : Json(parse_int_range(s_.n));
    if (k == "delta") c["delta"] = parse_double_list(s_.delta);
    if (k == "t") c["t"] = parse_double_list(s_.t);
    if (k == "x") c["x"] = s_.x.empty() ? Json(interior_grid(21)) : Json(parse_double_list(s_.x));
    if (k == "y") c["y"] = parse_double_list(s_.y);
    if (k == "si") {
      c["si"] = s_.si;
      c["kernel"] = to_json(base);
      c["kernel_resolution"] = resolution;
    }
    if (k == "grid") c["grid"] = s_.grid;
    if (k == "max-degree") c["max_degree"] = s_.max_degree;
    if (k == "grid-size") c["grid_size"] = s_.grid_size;
    if (k == "seed") c["seed"] = s_.seed;
    if (k == "out") c["out"] = s_.out;
    if (k == "csv") c["csv"] = s_.csv;
    if (k == "jobs") c["jobs"] = jobs;
  }
  return res;
}

void Driver::emit(const std::string& name, const Resolved& res, Json payload, const CsvTable* csv) {
  Json j = report_envelope(name, res.config);
  for (auto& [k, v] : payload.items()) j[k] = v;
  const std::string text = dump_json(j);
  if (s_.out.empty()) {
    out_ << text;
  } else {
    write_file(s_.out, text);
  }
  if (!s_.csv.empty() && csv != nullptr) write_file(s_.csv, csv->str());
}

int Driver::kernel_validate(const Resolved& res) {
  if (s_.grid_size < 2) throw DomainError("--grid-size must be >= 2");
  const auto grid = interior_grid(static_cast<std::size_t>(s_.grid_size));
  KernelValidationOptions opt;
  opt.max_degree = s_.max_degree > 0 ? s_.max_degree : 12;
  opt.seed = s_.seed;
  const auto rep = validate_kernel(res.kernel, grid, grid, opt);
  CsvTable csv({"si", "property", "residual", "tolerance", "passed"});
  for (const auto& in : rep.interpretations) {
    for (const auto& p : in.properties) {
      csv.row({std::string(to_string(in.si)), p.property, format_double(p.residual), format_double(p.tolerance),
               p.passed ? "true" : "false"});
    }
  }
  Json payload;
  payload["verdict"] = rep.any_passed ? "PASS" : "FAIL";
  payload["report"] = to_json(rep);
  emit("kernel-validate", res, payload, &csv);
  return rep.any_passed ? 0 : 2;
}

int Driver::shift_eval(const Resolved& res) {
  const auto f = make_function(s_.f);
  const auto steps = parse_double_list(s_.t);
  const auto xs = s_.x.empty() ? interior_grid(21) : parse_double_list(s_.x);
  std::vector<double> ys;
  for (double t : steps) ys.push_back(std::cos(t));
  const auto fx = [&] {
    std::vector<double> v(xs.size());
    f.evaluate(xs, v);
    return v;
  }();
  const auto shifted = shift_power(res.kernel, f, ys, xs);
  const auto diff = generalized_difference(res.kernel, f, DifferenceQuery{steps}, xs);
  const double ratio = difference_ratio(res.kernel, f, steps, params());

  CsvTable csv({"x", "f", "shift", "difference"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.row({format_double(xs[i]), format_double(fx[i]), format_double(shifted[i]), format_double(diff[i])});
  }
  Json payload;
  payload["x"] = xs;
  payload["f"] = fx;
  payload["shift"] = shifted;
  payload["difference"] = diff;
  payload["difference_ratio"] = ratio;
  emit("shift-eval", res, payload, &csv);
  return 0;
}

int Driver::modulus_cmd(const Resolved& res) {
  const auto f = make_function(s_.f);
  const auto deltas = parse_double_list(s_.delta);
  const auto rs = r_values();
  std::vector<std::vector<ModulusResult>> curves(rs.size());
  parallel_for(res.options.jobs, rs.size(), [&](std::size_t i) {
    curves[i] = modulus_curve(res.kernel, f, rs[i], deltas, params(), res.options.modulus);
  });
  CsvTable csv({"r", "delta", "omega", "steps"});
  Json payload;
  payload["curves"] = Json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Json cj;
    cj["r"] = rs[i];
    cj["points"] = Json::array();
    for (const auto& m : curves[i]) {
      cj["points"].push_back(to_json(m));
      csv.row({std::to_string(rs[i]), format_double(m.delta), format_double(m.value), joined(m.steps, ';')});
    }
    payload["curves"].push_back(cj);
  }
  emit("modulus", res, payload, &csv);
  return 0;
}

int Driver::bestapprox(const Resolved& res) {
  const auto f = make_function(s_.f);
  const auto ns = parse_int_range(s_.n.empty() ? "4..64" : s_.n);
  const SpaceParams sp = params();
  std::vector<ApproxResult> results(ns.size());
  parallel_for(res.options.jobs, ns.size(),
               [&](std::size_t i) { results[i] = compute_E(f, ns[i], sp, res.kernel.si, res.options.approx); });
  std::vector<double> E, xs;
  CsvTable csv({"n", "E", "method", "iterations", "converged"});
  Json rows = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    E.push_back(results[i].error);
    xs.push_back(ns[i]);
    csv.row({std::to_string(ns[i]), format_double(results[i].error), results[i].method,
             std::to_string(results[i].iterations), results[i].converged ? "true" : "false"});
    rows.push_back(Json{{"n", ns[i]},
                        {"E", results[i].error},
                        {"method", results[i].method},
                        {"iterations", results[i].iterations},
                        {"converged", results[i].converged}});
  }
  const double fnorm = weighted_norm(f, sp.p, WeightSpec{res.kernel.si, sp.alpha}, res.options.approx.error_norm);
  const auto fit = fit_sequence(xs, E, res.options.zero_threshold * fnorm);
  Json payload;
  payload["f_norm"] = fnorm;
  payload["rows"] = rows;
  payload["fit"] = to_json(fit);
  emit("bestapprox", res, payload, &csv);
  return 0;
}

int Driver::verify_jackson_cmd(const Resolved& res) {
  const auto f = make_function(s_.f);
  const auto rs = r_values();
  const std::vector<int> ns = s_.n.empty() ? std::vector<int>{} : parse_int_range(s_.n);
  CsvTable csv({"r", "n", "E", "omega", "ratio", "status"});
  Json payload;
  payload["reports"] = Json::array();
  std::vector<Verdict> verdicts;
  for (int r : rs) {
    const auto rep = verify_jackson(f, params(), r, res.options, ns);
    for (const auto& c : rep.cells) {
      csv.row({std::to_string(r), std::to_string(c.n), format_double(c.E), format_double(c.omega),
               format_double(c.ratio), c.status});
    }
    verdicts.push_back(rep.verdict);
    payload["reports"].push_back(to_json(rep));
  }
  const int code = worst_exit(verdicts);
  payload["exit_code"] = code;
  emit("verify-jackson", res, payload, &csv);
  return code;
}

int Driver::verify_embedding(const Resolved& res, bool direct) {
  const auto f = make_function(s_.f);
  const auto rs = r_values();
  std::optional<double> lambda;
  if (!trim(s_.lambda).empty()) lambda = to_double(trim(s_.lambda));
  CsvTable csv({"r", "n", "E", "omega"});
  Json payload;
  payload["reports"] = Json::array();
  std::vector<Verdict> verdicts;
  for (int r : rs) {
    const auto rep = direct ? verify_direct_embedding(f, r, lambda, params(), res.options)
                            : verify_inverse_embedding(f, r, params(), res.options);
    for (std::size_t i = 0; i < rep.ns.size(); ++i) {
      csv.row({std::to_string(r), std::to_string(rep.ns[i]), format_double(rep.E[i]), format_double(rep.omega[i])});
    }
    verdicts.push_back(rep.verdict);
    payload["reports"].push_back(to_json(rep));
  }
  const int code = worst_exit(verdicts);
  payload["exit_code"] = code;
  emit(direct ? "verify-direct" : "verify-inverse", res, payload, &csv);
  return code;
}

int Driver::coincidence(const Resolved& res) {
  const auto f = make_function(s_.f);
  const auto rs = r_values();
  const auto rep = coincidence_report(f, rs, params(), res.options);
  std::vector<std::string> header = {"n", "E"};
  for (int r : rs) header.push_back("omega_r" + std::to_string(r));
  CsvTable csv(header);
  for (std::size_t i = 0; i < rep.ns.size(); ++i) {
    std::vector<std::string> row = {std::to_string(rep.ns[i]), format_double(rep.E[i])};
    for (const auto& rr : rep.rows) row.push_back(format_double(rr.fit_omega.values[i]));
    csv.row(row);
  }
  Json payload;
  payload["verdict"] = std::string(to_string(rep.verdict));
  payload["report"] = to_json(rep);
  emit("coincidence", res, payload, &csv);
  return exit_code(rep.verdict);
}

int Driver::discover_basis(const Resolved& res) {
  const auto ys = parse_double_list(s_.y);
  const auto grid = default_candidate_grid();
  const auto rep = discover_diagonalizing_basis(res.kernel, grid, s_.max_degree > 0 ? s_.max_degree : 8, ys);
  CsvTable csv({"a", "b", "expansion_score", "multiplier_score"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.row({format_double(grid[i].a), format_double(grid[i].b), format_double(rep.expansion_scores[i].score),
             format_double(rep.multiplier_scores[i].score)});
  }
  Json payload;
  payload["report"] = to_json(rep);
  emit("discover-basis", res, payload, &csv);
  return 0;
}

int Driver::corpus_list(const Resolved& res) {
  CsvTable csv({"id", "description", "nominal_lambda"});
  Json entries = Json::array();
  for (const auto& e : corpus()) {
    const Json lam = e.nominal_lambda ? Json(*e.nominal_lambda) : Json();
    entries.push_back(Json{{"id", e.id}, {"description", e.description}, {"nominal_lambda", lam}});
    csv.row({e.id, e.description, e.nominal_lambda ? format_double(*e.nominal_lambda) : ""});
  }
  Json payload;
  payload["corpus_version"] = kCorpusVersion;
  payload["functions"] = entries;
  emit("corpus-list", res, payload, &csv);
  return 0;
}

int Driver::run(const std::vector<std::string>& args) {
  app_.require_subcommand(1);
  app_.set_version_flag("--version", std::string(version_string()));
  const std::vector<std::string> space = {"f", "p", "alpha"};
  auto with = [](std::vector<std::string> a, std::initializer_list<std::string> b) {
    a.insert(a.end(), b);
    return a;
  };
  command("kernel-validate", "residuals of the operator properties for both Si readings",
          {"si", "grid-size", "max-degree", "seed"}, [this](const Resolved& r) { return kernel_validate(r); });
  command("shift-eval", "tau and Delta^r of a function at points", with(space, {"t", "x", "si"}),
          [this](const Resolved& r) { return shift_eval(r); });
  command("modulus", "generalized modulus of smoothness over a delta sweep", with(space, {"r", "delta", "si", "grid"}),
          [this](const Resolved& r) { return modulus_cmd(r); });
  command("bestapprox", "best weighted approximation errors E_n and their decay", with(space, {"n", "si"}),
          [this](const Resolved& r) { return bestapprox(r); });
  command("verify-jackson", "boundedness of E_n / omega_r(f, 1/n)", with(space, {"r", "n", "si", "grid"}),
          [this](const Resolved& r) { return verify_jackson_cmd(r); });
  command("verify-direct", "E-class to H-class embedding", with(space, {"r", "lambda", "si", "grid"}),
          [this](const Resolved& r) { return verify_embedding(r, true); });
  command("verify-inverse", "H-class to E-class embedding", with(space, {"r", "si", "grid"}),
          [this](const Resolved& r) { return verify_embedding(r, false); });
  command("coincidence", "exponent agreement of E and omega_r for several r", with(space, {"r", "si", "grid"}),
          [this](const Resolved& r) { return coincidence(r); });
  command("discover-basis", "Jacobi family that diagonalizes the shift", {"y", "max-degree", "si"},
          [this](const Resolved& r) { return discover_basis(r); });
  command("corpus-list", "the versioned test-function corpus", {},
          [this](const Resolved& r) { return corpus_list(r); });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app_.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app_.exit(e, out_, err_);
    return code == 0 ? 0 : 1;
  }
  CLI::App* sub = app_.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (!s_.config.empty()) apply_config_file(*sub, s_.config);
    const Resolved res = resolve(name);
    return handlers_.at(name)(res);
  } catch (const UsageError& e) {
    err_ << "gshift " << name << ": " << e.what() << "\n" << sub->help();
    return 1;
  } catch (const CLI::Error& e) {
    err_ << "gshift " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err_ << "gshift " << name << ": error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Driver d(out, err);
  return d.run(args);
}

}  // namespace gshift

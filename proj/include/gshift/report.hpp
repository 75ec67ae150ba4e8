#pragma once
// Deterministic JSON and CSV output for experiment reports.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gshift/best_approx.hpp"
#include "gshift/experiments.hpp"
#include "gshift/modulus.hpp"
#include "gshift/shift.hpp"

namespace gshift {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
std::string_view version_string();

/// %.17g, with "inf", "-inf" and "nan" for the non-finite values. Finite
/// values round-trip exactly.
std::string format_double(double v);

/// Two-space indented JSON with keys in insertion order and every floating
/// value written by format_double (non-finite values become strings).
/// Ends with a newline.
std::string dump_json(const Json& j);

/// {"schema", "version", "command", "config"}; the payload goes after it.
Json report_envelope(std::string_view command, const Json& config);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(std::vector<std::string> cells);
  /// Header row first, comma separated, LF line endings. Cells holding a
  /// comma, quote or newline are quoted.
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes bytes as given (no newline translation). Throws std::runtime_error.
void write_file(const std::filesystem::path& path, std::string_view text);

Json to_json(const ShiftKernelConfig& cfg);
Json to_json(const SpaceParams& params);
Json to_json(const DecayFit& fit);
Json to_json(const SequenceFit& fit);
Json to_json(const KernelValidationReport& rep);
Json to_json(const ModulusResult& m);
Json to_json(const JacksonReport& rep);
Json to_json(const EmbeddingReport& rep);
Json to_json(const CoincidenceReport& rep);
Json to_json(const BasisReport& rep);

}  // namespace gshift

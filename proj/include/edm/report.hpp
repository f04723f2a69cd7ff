#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "edm/assoc.hpp"
#include "edm/eval.hpp"
#include "edm/ingest.hpp"
#include "edm/recode.hpp"
#include "edm/reptree.hpp"

namespace edm {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { Text, Structured };

std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view name);

// Effective configuration of one run, defaults included.
struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::optional<AnalysisId> analysis;
  double min_support = 0.05;
  double min_confidence = 0.9;
  TreeParams tree;
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> out;
};

struct DatasetFingerprint {
  std::size_t rows = 0;
  std::string sha256;
};

std::string sha256_hex(std::string_view bytes);

struct Report {
  RunConfig config;
  DatasetFingerprint dataset;
  nlohmann::ordered_json payload;
  std::string text;  // human summary body
};

nlohmann::ordered_json config_json(const RunConfig& config);
nlohmann::ordered_json to_json(const Report& report);

// Payload builders shared by the CLI and the acceptance suite.
nlohmann::ordered_json validation_payload(const ValidationSummary& summary);
nlohmann::ordered_json rules_payload(const TransactionDb& db, const std::vector<Itemset>& frequent,
                                     const std::vector<AssociationRule>& rules);
nlohmann::ordered_json tree_payload(const DecisionTree& tree);
nlohmann::ordered_json eval_payload(const EvalReport& report);

// Two-line summary: Correctly Classified Instances / Avg. F-Measure.
std::string eval_summary(const EvalReport& report);

// Structured: one JSON document with fixed key order. Text: header block plus the
// report body. Recode text output is the bare recoded CSV.
void write_report(const Report& report, OutputFormat format, std::ostream& out);
// Writes to `destination` when set (DataError if unwritable), else to `fallback`.
void write_report(const Report& report, OutputFormat format,
                  const std::optional<std::filesystem::path>& destination, std::ostream& fallback);

}  // namespace edm

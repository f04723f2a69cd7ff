#include "edm/cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "edm/errors.hpp"
#include "edm/report.hpp"

namespace edm::cli {

namespace {

// Raw flag values; ranges are checked after parsing so that range violations
// map to the parameter exit code rather than the usage one.
struct Flags {
  std::string input;
  std::string analysis;
  double min_support = 0.05;
  double min_confidence = 0.9;
  long long folds = 10;
  std::uint64_t seed = 1;
  long long min_leaf = 2;
  long long prune_folds = 3;
  long long max_depth = -1;
  std::string out;
  std::string format = "text";
};

struct LoadedData {
  DatasetFingerprint fingerprint;
  RawTable raw;
};

LoadedData load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream stream(bytes);
  LoadedData data;
  data.raw = parse_csv(stream, path.string());
  data.fingerprint = {data.raw.rows.size(), sha256_hex(bytes)};
  return data;
}

RunConfig resolve(const std::string& command, const Flags& f, AnalysisId default_analysis,
                  bool analysis_applies) {
  RunConfig c;
  c.command = command;
  c.input = f.input;
  if (!f.analysis.empty()) {
    c.analysis = parse_analysis(f.analysis);
  } else if (analysis_applies) {
    c.analysis = default_analysis;
  }
  c.min_support = f.min_support;
  c.min_confidence = f.min_confidence;
  if (!(c.min_support > 0.0 && c.min_support <= 1.0)) {
    throw ParameterError("--min-support must lie in (0, 1]");
  }
  if (!(c.min_confidence > 0.0 && c.min_confidence <= 1.0)) {
    throw ParameterError("--min-confidence must lie in (0, 1]");
  }
  if (f.folds < 2) throw ParameterError("--folds must be >= 2");
  if (f.min_leaf < 1) throw ParameterError("--min-leaf must be >= 1");
  if (f.prune_folds < 2) throw ParameterError("--prune-folds must be >= 2");
  if (f.max_depth < -1) throw ParameterError("--max-depth must be >= 0 (or -1 for unlimited)");
  c.folds = static_cast<std::size_t>(f.folds);
  c.seed = f.seed;
  c.tree.min_leaf = static_cast<std::size_t>(f.min_leaf);
  c.tree.prune_folds = static_cast<std::size_t>(f.prune_folds);
  c.tree.seed = f.seed;
  if (f.max_depth >= 0) c.tree.max_depth = static_cast<std::size_t>(f.max_depth);
  c.format = parse_format(f.format);
  if (!f.out.empty()) c.out = f.out;
  return c;
}

RecodedTable analysis_table(const RawTable& raw, const RunConfig& c) {
  auto table = recode_table(raw);
  return c.analysis ? project_analysis(table, *c.analysis) : table;
}

std::string tree_params_line(const RunConfig& c) {
  std::ostringstream out;
  out << "seed: " << c.seed << "  prune_folds: " << c.tree.prune_folds
      << "  min_leaf: " << c.tree.min_leaf << "  max_depth: ";
  if (c.tree.max_depth) out << *c.tree.max_depth; else out << "unlimited";
  out << "\n";
  return out.str();
}

Report run_validate(const RunConfig& c) {
  auto data = load(c.input);
  auto summary = validate_schema(data.raw);
  std::ostringstream text;
  text << std::left << std::setw(12) << "column" << std::right << std::setw(6) << "min"
       << std::setw(6) << "max" << std::setw(10) << "distinct" << "  range\n";
  for (const auto& col : summary.columns) {
    text << std::left << std::setw(12) << col.name << std::right << std::setw(6)
         << (col.min ? std::to_string(*col.min) : "-") << std::setw(6)
         << (col.max ? std::to_string(*col.max) : "-") << std::setw(10) << col.distinct()
         << "  " << (col.within_range ? "ok" : "OUT OF RANGE") << "\n";
  }
  text << "\n" << summary.rows << " rows, " << summary.columns.size() << " columns, "
       << (summary.ok() ? "all values within range" : "range violations present") << "\n";
  return {c, data.fingerprint, validation_payload(summary), text.str()};
}

Report run_recode(const RunConfig& c) {
  auto data = load(c.input);
  auto table = analysis_table(data.raw, c);
  std::ostringstream csv;
  write_recoded_csv(table, csv);

  ClassCounts dist;
  for (std::size_t r = 0; r < table.rows(); ++r) dist.add(to_label(table.label(r)));
  nlohmann::ordered_json payload;
  payload["rows"] = table.rows();
  auto cols = nlohmann::ordered_json::array();
  for (const auto& a : table.attributes()) cols.push_back(a.name);
  payload["columns"] = std::move(cols);
  payload["target"] = table.attribute(table.target()).name;
  payload["target_distribution"] = {{"No", dist.no}, {"Yes", dist.yes}};
  payload["csv"] = csv.str();
  return {c, data.fingerprint, std::move(payload), csv.str()};
}

Report run_rules(const RunConfig& c) {
  auto data = load(c.input);
  auto table = analysis_table(data.raw, c);
  auto db = itemize(table);
  auto frequent = frequent_itemsets(db, c.min_support);
  auto rules = generate_rules(db, frequent, c.min_confidence, std::string(kTargetName));

  std::ostringstream text;
  text << "min_support: " << c.min_support << "  min_confidence: " << c.min_confidence
       << "  consequent: " << kTargetName << "\n";
  text << "frequent itemsets: " << frequent.size() << "  rules: " << rules.size() << "\n\n";
  for (const auto& r : rules) text << format_rule(db, r) << "\n";
  auto payload = rules_payload(db, frequent, rules);
  return {c, data.fingerprint, std::move(payload), text.str()};
}

Report run_tree(const RunConfig& c) {
  auto data = load(c.input);
  auto table = analysis_table(data.raw, c);
  auto tree = fit(table, c.tree);
  std::ostringstream text;
  text << "REPTree\n=======\n\n" << render_tree(tree) << "\n";
  text << "Size of the tree : " << tree.node_count() << "\n\n";
  text << tree_params_line(c);
  return {c, data.fingerprint, tree_payload(tree), text.str()};
}

Report run_eval(const RunConfig& c) {
  auto data = load(c.input);
  auto table = analysis_table(data.raw, c);
  auto result = cross_validate(table, c.tree, c.folds, c.seed);
  const auto& cm = result.confusion.counts;
  std::ostringstream text;
  text << "stratified " << c.folds << "-fold cross-validation\n" << tree_params_line(c) << "\n";
  text << eval_summary(result) << "\n";
  text << "=== Confusion Matrix ===\n";
  text << std::setw(8) << "No" << std::setw(8) << "Yes" << "   <-- classified as\n";
  text << std::setw(8) << cm[0][0] << std::setw(8) << cm[0][1] << "   | No\n";
  text << std::setw(8) << cm[1][0] << std::setw(8) << cm[1][1] << "   | Yes\n";
  return {c, data.fingerprint, eval_payload(result), text.str()};
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--input", f.input, "Evaluation CSV")->required();
  sub->add_option("--out", f.out, "Write the report to this file");
  sub->add_option("--format", f.format, "text or structured");
}

void add_tree_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "Shuffle seed");
  sub->add_option("--min-leaf", f.min_leaf, "Minimum instances per branch");
  sub->add_option("--prune-folds", f.prune_folds, "Folds; one is held out for pruning");
  sub->add_option("--max-depth", f.max_depth, "Depth limit, -1 for unlimited");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Course repeat mining: association rules and pruned decision trees"};
  app.name("edm");
  app.require_subcommand(1);
  Flags f;

  auto* validate = app.add_subcommand("validate", "Check the CSV against the schema");
  add_common(validate, f);

  auto* recode = app.add_subcommand("recode", "Emit the recoded nominal table");
  add_common(recode, f);
  recode->add_option("--analysis", f.analysis, "Project one analysis' columns");

  auto* rules = app.add_subcommand("rules", "Mine class association rules");
  add_common(rules, f);
  rules->add_option("--analysis", f.analysis, "Column projection (default course-instructor)");
  rules->add_option("--min-support", f.min_support, "Minimum itemset support");
  rules->add_option("--min-confidence", f.min_confidence, "Minimum rule confidence");

  auto* tree = app.add_subcommand("tree", "Fit and print a pruned decision tree");
  add_common(tree, f);
  tree->add_option("--analysis", f.analysis, "Column projection (default course-features)");
  add_tree_flags(tree, f);

  auto* eval = app.add_subcommand("eval", "Stratified cross-validation of the tree learner");
  add_common(eval, f);
  eval->add_option("--analysis", f.analysis, "Column projection (default course-features)");
  eval->add_option("--folds", f.folds, "Cross-validation folds");
  add_tree_flags(eval, f);

  std::vector<const char*> argv{"edm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Report report;
    if (validate->parsed()) {
      report = run_validate(resolve("validate", f, AnalysisId::CourseInstructor, false));
    } else if (recode->parsed()) {
      report = run_recode(resolve("recode", f, AnalysisId::CourseInstructor, false));
    } else if (rules->parsed()) {
      report = run_rules(resolve("rules", f, AnalysisId::CourseInstructor, true));
    } else if (tree->parsed()) {
      report = run_tree(resolve("tree", f, AnalysisId::CourseFeatures, true));
    } else {
      report = run_eval(resolve("eval", f, AnalysisId::CourseFeatures, true));
    }
    write_report(report, report.config.format, report.config.out, out);
  } catch (const ParameterError& e) {
    err << "edm: parameter error: " << e.what() << "\n";
    return kParameter;
  } catch (const DataError& e) {
    err << "edm: data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    err << "edm: error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

}  // namespace edm::cli

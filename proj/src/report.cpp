#include "edm/report.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "edm/errors.hpp"

namespace edm {

using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << v;
  return out.str();
}

ordered_json items_json(const TransactionDb& db, const std::vector<ItemId>& items) {
  auto arr = ordered_json::array();
  for (auto id : items) arr.push_back(db.items.at(id).label());
  return arr;
}

ordered_json node_json(const DecisionTree& tree, const TreeNode& node) {
  ordered_json j;
  j["label"] = to_string(node.label);
  j["counts"] = {{"No", node.counts.no}, {"Yes", node.counts.yes}};
  if (!node.is_leaf()) {
    j["split"] = tree.attribute_names().at(*node.split);
    auto branches = ordered_json::array();
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      ordered_json b;
      b["value"] = to_string(node.values[i]);
      b["node"] = node_json(tree, node.children[i]);
      branches.push_back(std::move(b));
    }
    j["branches"] = std::move(branches);
  }
  return j;
}

void write_text(const Report& report, std::ostream& out) {
  const auto& c = report.config;
  if (c.command == "recode") {
    out << report.text;
    return;
  }
  out << "edm " << kToolVersion << " " << c.command;
  if (c.analysis) out << " (" << to_string(*c.analysis) << ")";
  out << "\n";
  out << "input: " << c.input.string() << "\n";
  out << "rows: " << report.dataset.rows << "  sha256: " << report.dataset.sha256 << "\n\n";
  out << report.text;
}

}  // namespace

std::string_view to_string(OutputFormat f) {
  return f == OutputFormat::Structured ? "structured" : "text";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "structured") return OutputFormat::Structured;
  throw ParameterError("unknown format '" + std::string(name) + "' (expected text or structured)");
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["input"] = c.input.string();
  j["analysis"] = c.analysis ? ordered_json(to_string(*c.analysis)) : ordered_json(nullptr);
  j["min_support"] = c.min_support;
  j["min_confidence"] = c.min_confidence;
  j["folds"] = c.folds;
  j["seed"] = c.seed;
  j["min_leaf"] = c.tree.min_leaf;
  j["prune_folds"] = c.tree.prune_folds;
  j["max_depth"] = c.tree.max_depth ? ordered_json(*c.tree.max_depth) : ordered_json(nullptr);
  j["format"] = to_string(c.format);
  return j;
}

ordered_json to_json(const Report& report) {
  ordered_json j;
  j["tool"] = "edm";
  j["version"] = kToolVersion;
  j["command"] = report.config.command;
  j["config"] = config_json(report.config);
  j["dataset"] = {{"rows", report.dataset.rows}, {"sha256", report.dataset.sha256}};
  j["payload"] = report.payload;
  return j;
}

ordered_json validation_payload(const ValidationSummary& summary) {
  ordered_json j;
  j["rows"] = summary.rows;
  j["columns"] = summary.columns.size();
  j["ok"] = summary.ok();
  auto cols = ordered_json::array();
  for (const auto& c : summary.columns) {
    ordered_json col;
    col["name"] = c.name;
    col["min"] = c.min ? ordered_json(*c.min) : ordered_json(nullptr);
    col["max"] = c.max ? ordered_json(*c.max) : ordered_json(nullptr);
    col["distinct"] = c.distinct();
    col["within_range"] = c.within_range;
    ordered_json counts = ordered_json::object();
    for (const auto& [v, n] : c.value_counts) counts[std::to_string(v)] = n;
    col["value_counts"] = std::move(counts);
    cols.push_back(std::move(col));
  }
  j["column_summaries"] = std::move(cols);
  return j;
}

ordered_json rules_payload(const TransactionDb& db, const std::vector<Itemset>& frequent,
                           const std::vector<AssociationRule>& rules) {
  ordered_json j;
  j["transactions"] = db.size();
  j["frequent_itemsets"] = frequent.size();
  auto arr = ordered_json::array();
  for (const auto& r : rules) {
    ordered_json o;
    o["antecedent"] = items_json(db, r.antecedent);
    o["consequent"] = items_json(db, r.consequent);
    o["count"] = r.both_count;
    o["support"] = r.support();
    o["confidence"] = r.confidence();
    o["lift"] = r.lift();
    o["text"] = format_rule(db, r);
    arr.push_back(std::move(o));
  }
  j["rules"] = std::move(arr);
  return j;
}

ordered_json tree_payload(const DecisionTree& tree) {
  ordered_json j;
  j["root"] = tree.root().is_leaf() ? ordered_json(nullptr)
                                    : ordered_json(tree.attribute_names().at(*tree.root().split));
  j["nodes"] = tree.node_count();
  j["leaves"] = tree.leaf_count();
  j["depth"] = tree.depth();
  j["rendering"] = render_tree(tree);
  j["tree"] = node_json(tree, tree.root());
  return j;
}

ordered_json eval_payload(const EvalReport& report) {
  const auto& m = report.metrics;
  ordered_json j;
  j["accuracy"] = m.accuracy;
  j["weighted_f"] = m.weighted_f;
  j["correct"] = report.confusion.correct();
  j["total"] = report.confusion.total();
  j["confusion"] = {{"labels", {"No", "Yes"}},
                    {"matrix",
                     {{report.confusion.counts[0][0], report.confusion.counts[0][1]},
                      {report.confusion.counts[1][0], report.confusion.counts[1][1]}}}};
  ordered_json per_class;
  for (auto l : {Label::No, Label::Yes}) {
    const auto& c = m.per_class[static_cast<std::size_t>(l)];
    per_class[std::string(to_string(l))] = {{"support", c.support},
                                            {"precision", c.precision},
                                            {"recall", c.recall},
                                            {"f1", c.f1}};
  }
  j["per_class"] = std::move(per_class);
  j["folds"] = report.folds;
  j["seed"] = report.seed;
  return j;
}

std::string eval_summary(const EvalReport& report) {
  std::ostringstream out;
  out << "Correctly Classified Instances     " << report.confusion.correct() << "     "
      << fixed(100.0 * report.metrics.accuracy, 4) << " %\n";
  out << "Avg. F-Measure                     " << fixed(report.metrics.weighted_f, 3) << "\n";
  return out.str();
}

void write_report(const Report& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Structured) {
    out << to_json(report).dump(2) << "\n";
  } else {
    write_text(report, out);
  }
}

void write_report(const Report& report, OutputFormat format,
                  const std::optional<std::filesystem::path>& destination,
                  std::ostream& fallback) {
  if (!destination) {
    write_report(report, format, fallback);
    return;
  }
  std::ostringstream buffer;
  write_report(report, format, buffer);
  std::ofstream file(*destination, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write output file '" + destination->string() + "'");
  file << buffer.str();
  file.flush();
  if (!file) throw DataError("failed writing output file '" + destination->string() + "'");
}

}  // namespace edm

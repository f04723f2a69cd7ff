#include "edm/reptree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "edm/errors.hpp"

namespace edm {

namespace {

constexpr double kMinGain = 1e-12;

using ValueCounts = std::array<ClassCounts, kNominalCount>;

ValueCounts tally_by_value(const RecodedTable& table, std::span<const std::size_t> rows,
                           std::size_t attribute) {
  ValueCounts counts{};
  for (auto r : rows) {
    counts[static_cast<std::size_t>(table.at(r, attribute))].add(to_label(table.label(r)));
  }
  return counts;
}

double gain_from(const ClassCounts& parent, const ValueCounts& by_value) {
  if (parent.total() == 0) return 0.0;
  double children = 0.0;
  for (const auto& c : by_value) {
    if (c.total() == 0) continue;
    children += static_cast<double>(c.total()) / parent.total() * entropy(c);
  }
  // rounding can leave a tiny negative residue on non-informative splits
  return std::max(0.0, entropy(parent) - children);
}

TreeNode make_leaf(const ClassCounts& counts, Label label) {
  TreeNode leaf;
  leaf.counts = counts;
  leaf.label = label;
  return leaf;
}

TreeNode grow_node(const RecodedTable& table, std::vector<std::size_t> rows,
                   std::vector<bool>& used, std::size_t depth, const TreeParams& params) {
  const auto counts = count_labels(table, rows);
  TreeNode node = make_leaf(counts, counts.majority());
  if (counts.no == 0 || counts.yes == 0) return node;
  if (rows.size() < 2 * params.min_leaf) return node;
  if (params.max_depth && depth >= *params.max_depth) return node;

  std::optional<std::size_t> best;
  double best_gain = 0.0;
  for (std::size_t a = 0; a < table.columns(); ++a) {
    if (a == table.target() || used[a]) continue;
    double g = gain_from(counts, tally_by_value(table, rows, a));
    // strictly better only, so ties keep the earlier column
    if (g > kMinGain && (!best || g > best_gain + kMinGain)) {
      best = a;
      best_gain = g;
    }
  }
  if (!best) return node;

  const auto& domain = table.attribute(*best).domain;
  std::array<std::vector<std::size_t>, kNominalCount> parts;
  for (auto r : rows) parts[static_cast<std::size_t>(table.at(r, *best))].push_back(r);
  rows.clear();
  rows.shrink_to_fit();

  used[*best] = true;
  node.split = *best;
  for (auto v : domain) {
    auto& part = parts[static_cast<std::size_t>(v)];
    node.values.push_back(v);
    if (part.empty()) {
      node.children.push_back(make_leaf({}, node.label));
    } else {
      node.children.push_back(grow_node(table, std::move(part), used, depth + 1, params));
    }
  }
  used[*best] = false;
  return node;
}

void collapse(TreeNode& node) {
  node.split.reset();
  node.values.clear();
  node.children.clear();
}

std::size_t prune_node(TreeNode& node, const RecodedTable& table,
                       const std::vector<std::size_t>& rows) {
  std::size_t leaf_errors = 0;
  for (auto r : rows) leaf_errors += to_label(table.label(r)) != node.label;
  if (node.is_leaf()) return leaf_errors;
  if (rows.empty()) {
    collapse(node);
    return 0;
  }

  std::vector<std::vector<std::size_t>> parts(node.children.size());
  std::size_t subtree_errors = 0;
  for (auto r : rows) {
    auto v = table.at(r, *node.split);
    auto it = std::find(node.values.begin(), node.values.end(), v);
    if (it == node.values.end()) {
      subtree_errors += to_label(table.label(r)) != node.label;
    } else {
      parts[static_cast<std::size_t>(it - node.values.begin())].push_back(r);
    }
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    subtree_errors += prune_node(node.children[i], table, parts[i]);
  }
  if (leaf_errors <= subtree_errors) {
    collapse(node);
    return leaf_errors;
  }
  return subtree_errors;
}

std::size_t count_nodes(const TreeNode& n, bool leaves_only) {
  std::size_t total = (!leaves_only || n.is_leaf()) ? 1 : 0;
  for (const auto& c : n.children) total += count_nodes(c, leaves_only);
  return total;
}

std::size_t node_depth(const TreeNode& n) {
  std::size_t d = 0;
  for (const auto& c : n.children) d = std::max(d, 1 + node_depth(c));
  return d;
}

std::string leaf_suffix(const TreeNode& leaf) {
  const auto n = leaf.counts.total();
  const auto correct = leaf.label == Label::Yes ? leaf.counts.yes : leaf.counts.no;
  std::ostringstream out;
  out << " : " << to_string(leaf.label) << " (" << n << "/" << (n - correct) << ")";
  return out.str();
}

void render_node(const DecisionTree& tree, const TreeNode& node, std::size_t depth,
                 std::string& out) {
  const auto& name = tree.attribute_names().at(*node.split);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& child = node.children[i];
    for (std::size_t d = 0; d < depth; ++d) out += "|   ";
    out += name;
    out += " = ";
    out += to_string(node.values[i]);
    if (child.is_leaf()) {
      out += leaf_suffix(child);
      out += '\n';
    } else {
      out += '\n';
      render_node(tree, child, depth + 1, out);
    }
  }
}

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t range) {
  // reject the low values that would bias the modulo
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t r = gen();
  while (r < threshold) r = gen();
  return r % range;
}

}  // namespace

std::string_view to_string(Label l) { return l == Label::Yes ? "Yes" : "No"; }

Label to_label(Nominal v) {
  if (v == Nominal::No) return Label::No;
  if (v == Nominal::Yes) return Label::Yes;
  throw ParameterError("value " + std::string(to_string(v)) + " is not a class label");
}

ClassCounts count_labels(const RecodedTable& table, std::span<const std::size_t> rows) {
  ClassCounts c;
  for (auto r : rows) c.add(to_label(table.label(r)));
  return c;
}

double entropy(const ClassCounts& counts) {
  const auto total = static_cast<double>(counts.total());
  double h = 0.0;
  for (auto n : {counts.no, counts.yes}) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double info_gain(const RecodedTable& table, std::span<const std::size_t> rows,
                 std::size_t attribute) {
  if (attribute >= table.columns() || attribute == table.target()) {
    throw ParameterError("attribute index " + std::to_string(attribute) +
                         " is not a predictor column");
  }
  return gain_from(count_labels(table, rows), tally_by_value(table, rows, attribute));
}

void TreeParams::validate() const {
  if (min_leaf < 1) throw ParameterError("min_leaf must be >= 1");
  if (prune_folds < 2) throw ParameterError("prune_folds must be >= 2");
}

std::size_t DecisionTree::node_count() const { return count_nodes(root_, false); }
std::size_t DecisionTree::leaf_count() const { return count_nodes(root_, true); }
std::size_t DecisionTree::depth() const { return node_depth(root_); }

DecisionTree grow_tree(const RecodedTable& table, std::span<const std::size_t> rows,
                       const TreeParams& params) {
  params.validate();
  if (rows.empty()) throw DataError("cannot grow a tree from zero rows");
  std::vector<std::string> names;
  for (const auto& a : table.attributes()) names.push_back(a.name);
  std::vector<bool> used(table.columns(), false);
  return DecisionTree(
      grow_node(table, std::vector<std::size_t>(rows.begin(), rows.end()), used, 0, params),
      std::move(names));
}

DecisionTree rep_prune(DecisionTree tree, const RecodedTable& table,
                       std::span<const std::size_t> prune_rows) {
  prune_node(tree.root(), table, std::vector<std::size_t>(prune_rows.begin(), prune_rows.end()));
  return tree;
}

std::size_t count_errors(const DecisionTree& tree, const RecodedTable& table,
                         std::span<const std::size_t> rows) {
  std::size_t errors = 0;
  for (auto r : rows) errors += predict(tree, table.row(r)) != to_label(table.label(r));
  return errors;
}

DecisionTree fit(const RecodedTable& table, std::span<const std::size_t> train_rows,
                 const TreeParams& params) {
  params.validate();
  if (train_rows.size() < params.prune_folds) {
    throw DataError("need at least " + std::to_string(params.prune_folds) +
                    " training rows, got " + std::to_string(train_rows.size()));
  }
  std::vector<std::size_t> order(train_rows.begin(), train_rows.end());
  seeded_shuffle(order, params.seed);
  // fold 0 takes the first share (plus one row of any remainder)
  const auto n = order.size();
  const auto prune_size = n / params.prune_folds + (n % params.prune_folds > 0 ? 1 : 0);
  std::span<const std::size_t> all(order);
  auto pruning = all.first(prune_size);
  auto growing = all.subspan(prune_size);
  return rep_prune(grow_tree(table, growing, params), table, pruning);
}

DecisionTree fit(const RecodedTable& table, const TreeParams& params) {
  std::vector<std::size_t> rows(table.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit(table, rows, params);
}

Label predict(const DecisionTree& tree, std::span<const Nominal> row) {
  const TreeNode* node = &tree.root();
  while (!node->is_leaf()) {
    if (*node->split >= row.size()) {
      throw ParameterError("row has no value for attribute '" +
                           tree.attribute_names().at(*node->split) + "'");
    }
    auto it = std::find(node->values.begin(), node->values.end(), row[*node->split]);
    if (it == node->values.end()) return node->label;
    node = &node->children[static_cast<std::size_t>(it - node->values.begin())];
  }
  return node->label;
}

std::string render_tree(const DecisionTree& tree) {
  if (tree.root().is_leaf()) return leaf_suffix(tree.root()).substr(1) + "\n";
  std::string out;
  render_node(tree, tree.root(), 0, out);
  return out;
}

void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(bounded(gen, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace edm

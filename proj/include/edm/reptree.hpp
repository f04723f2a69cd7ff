#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edm/recode.hpp"

namespace edm {

enum class Label : std::uint8_t { No, Yes };

std::string_view to_string(Label l);
// Throws ParameterError for values other than No/Yes.
Label to_label(Nominal v);

struct ClassCounts {
  std::size_t no = 0;
  std::size_t yes = 0;

  std::size_t total() const { return no + yes; }
  // Ties go to No.
  Label majority() const { return yes > no ? Label::Yes : Label::No; }
  std::size_t errors() const { return total() - (majority() == Label::Yes ? yes : no); }
  void add(Label l) { ++(l == Label::Yes ? yes : no); }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

ClassCounts count_labels(const RecodedTable& table, std::span<const std::size_t> rows);

double entropy(const ClassCounts& counts);

// Parent entropy minus size-weighted child entropy for a multiway split on
// `attribute`. Throws ParameterError if the attribute is out of range or the target.
double info_gain(const RecodedTable& table, std::span<const std::size_t> rows,
                 std::size_t attribute);

struct TreeParams {
  std::size_t min_leaf = 2;     // nodes with fewer than 2*min_leaf rows become leaves
  std::size_t prune_folds = 3;  // one fold held out for pruning
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_depth;  // nullopt: unlimited

  void validate() const;
};

struct TreeNode {
  ClassCounts counts;  // growing-set counts reaching this node
  Label label = Label::No;
  std::optional<std::size_t> split;  // column index into the training table
  std::vector<Nominal> values;       // branch values, parallel to children
  std::vector<TreeNode> children;

  bool is_leaf() const { return !split.has_value(); }
};

class DecisionTree {
 public:
  DecisionTree(TreeNode root, std::vector<std::string> attribute_names)
      : root_(std::move(root)), names_(std::move(attribute_names)) {}

  const TreeNode& root() const { return root_; }
  TreeNode& root() { return root_; }
  const std::vector<std::string>& attribute_names() const { return names_; }

  std::size_t node_count() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;

 private:
  TreeNode root_;
  std::vector<std::string> names_;
};

// Greedy information-gain induction over `rows` (indices into table).
DecisionTree grow_tree(const RecodedTable& table, std::span<const std::size_t> rows,
                       const TreeParams& params);

// Reduced-error pruning, bottom-up, against `prune_rows` of the same table.
DecisionTree rep_prune(DecisionTree tree, const RecodedTable& table,
                       std::span<const std::size_t> prune_rows);

// Misclassified rows of `rows`.
std::size_t count_errors(const DecisionTree& tree, const RecodedTable& table,
                         std::span<const std::size_t> rows);

// Shuffles train_rows with params.seed, holds out the first of prune_folds folds
// for pruning and grows on the rest.
DecisionTree fit(const RecodedTable& table, std::span<const std::size_t> train_rows,
                 const TreeParams& params);
DecisionTree fit(const RecodedTable& table, const TreeParams& params);

Label predict(const DecisionTree& tree, std::span<const Nominal> row);

// One line per branch: `attr = value` for internal nodes, `attr = value : LABEL (n/e)`
// for leaves, with depth indicated by repeated `|   `.
std::string render_tree(const DecisionTree& tree);

// Deterministic Fisher-Yates over std::mt19937_64 with rejection-sampled bounds,
// so the permutation does not depend on the standard library's distributions.
void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed);

}  // namespace edm

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edm/recode.hpp"
#include "edm/reptree.hpp"

namespace edm {

// counts[actual][predicted], indexed by Label.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, 2>, 2> counts{};

  void add(Label actual, Label predicted) {
    ++counts[static_cast<std::size_t>(actual)][static_cast<std::size_t>(predicted)];
  }
  std::size_t total() const;
  std::size_t correct() const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct ClassMetrics {
  std::size_t support = 0;  // actual instances of the class
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Metrics {
  double accuracy = 0.0;
  std::array<ClassMetrics, 2> per_class{};  // indexed by Label
  double weighted_f = 0.0;
};

// Zero denominators give 0 for precision, recall and F1.
Metrics compute_metrics(const ConfusionMatrix& confusion);

// Per-class seeded shuffle, classes concatenated (No first), then dealt round-robin
// into k folds. Each fold's indices are returned ascending.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Label> labels,
                                                       std::size_t k, std::uint64_t seed);

struct EvalReport {
  ConfusionMatrix confusion;
  Metrics metrics;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  TreeParams params;
};

// Fold i trains on every other fold with learner seed (seed ^ i) and is scored on
// fold i; metrics are computed once over the pooled confusion matrix.
EvalReport cross_validate(const RecodedTable& table, const TreeParams& params, std::size_t k,
                          std::uint64_t seed);

}  // namespace edm

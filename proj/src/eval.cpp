#include "edm/eval.hpp"

#include <algorithm>

#include "edm/errors.hpp"

namespace edm {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t ConfusionMatrix::total() const {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

std::size_t ConfusionMatrix::correct() const { return counts[0][0] + counts[1][1]; }

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t p = 0; p < 2; ++p) counts[a][p] += other.counts[a][p];
  }
  return *this;
}

Metrics compute_metrics(const ConfusionMatrix& confusion) {
  const auto total = confusion.total();
  if (total == 0) throw ParameterError("cannot compute metrics of an empty confusion matrix");
  Metrics m;
  m.accuracy = ratio(confusion.correct(), total);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto other = 1 - c;
    const auto tp = confusion.counts[c][c];
    const auto fn = confusion.counts[c][other];
    const auto fp = confusion.counts[other][c];
    auto& cm = m.per_class[c];
    cm.support = tp + fn;
    cm.precision = ratio(tp, tp + fp);
    cm.recall = ratio(tp, tp + fn);
    cm.f1 = cm.precision + cm.recall > 0.0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    m.weighted_f += ratio(cm.support, total) * cm.f1;
  }
  return m;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Label> labels,
                                                       std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > labels.size()) {
    throw ParameterError("fold count must lie in [2, " + std::to_string(labels.size()) +
                         "], got " + std::to_string(k));
  }
  std::vector<std::size_t> sequence;
  sequence.reserve(labels.size());
  for (auto cls : {Label::No, Label::Yes}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    seeded_shuffle(members, seed);
    sequence.insert(sequence.end(), members.begin(), members.end());
  }
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t pos = 0; pos < sequence.size(); ++pos) folds[pos % k].push_back(sequence[pos]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

EvalReport cross_validate(const RecodedTable& table, const TreeParams& params, std::size_t k,
                          std::uint64_t seed) {
  params.validate();
  std::vector<Label> labels;
  labels.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) labels.push_back(to_label(table.label(r)));
  const auto folds = stratified_folds(labels, k, seed);

  std::vector<std::size_t> fold_of(table.rows());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (auto r : folds[f]) fold_of[r] = f;
  }

  EvalReport report;
  report.folds = k;
  report.seed = seed;
  report.params = params;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train;
    train.reserve(table.rows() - folds[f].size());
    for (std::size_t r = 0; r < table.rows(); ++r) {
      if (fold_of[r] != f) train.push_back(r);
    }
    TreeParams fold_params = params;
    fold_params.seed = seed ^ static_cast<std::uint64_t>(f);
    const auto tree = fit(table, train, fold_params);
    for (auto r : folds[f]) report.confusion.add(labels[r], predict(tree, table.row(r)));
  }
  report.metrics = compute_metrics(report.confusion);
  return report;
}

}  // namespace edm

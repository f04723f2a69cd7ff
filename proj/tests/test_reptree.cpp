#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "edm/errors.hpp"
#include "edm/reptree.hpp"

using namespace edm;

namespace {

const std::vector<Nominal> kAB{Nominal::A, Nominal::B};
const std::vector<Nominal> kLMH{Nominal::Low, Nominal::Middle, Nominal::High};

// Rows of (predictors..., label); label column is last.
RecodedTable make_table(std::vector<Attribute> predictors,
                        const std::vector<std::vector<Nominal>>& rows) {
  predictors.push_back({"nb.repeat", {Nominal::No, Nominal::Yes}});
  std::vector<Nominal> cells;
  for (const auto& r : rows) cells.insert(cells.end(), r.begin(), r.end());
  auto target = predictors.size() - 1;
  return RecodedTable(std::move(predictors), std::move(cells), target);
}

void repeat_rows(std::vector<std::vector<Nominal>>& rows, std::vector<Nominal> row, int n) {
  for (int i = 0; i < n; ++i) rows.push_back(row);
}

std::vector<std::size_t> all_rows(const RecodedTable& t) {
  std::vector<std::size_t> r(t.rows());
  std::iota(r.begin(), r.end(), std::size_t{0});
  return r;
}

// X=A: 3 No + 1 Yes; X=B: 4 No.
RecodedTable eight_rows() {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::A, Nominal::No}, 3);
  repeat_rows(rows, {Nominal::A, Nominal::Yes}, 1);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 4);
  return make_table({{"X", kAB}}, rows);
}

void check_paths(const TreeNode& n, std::set<std::size_t> seen, const RecodedTable& t) {
  if (n.is_leaf()) {
    if (n.counts.total() > 0) CHECK(n.label == n.counts.majority());
    return;
  }
  CHECK(seen.insert(*n.split).second);
  CHECK(n.values == t.attribute(*n.split).domain);
  CHECK(n.children.size() == n.values.size());
  for (const auto& c : n.children) check_paths(c, seen, t);
}

}  // namespace

TEST_CASE("entropy of binary counts") {
  CHECK(entropy({5, 5}) == doctest::Approx(1.0));
  CHECK(entropy({4, 0}) == 0.0);
  CHECK(entropy({0, 0}) == 0.0);
  const double oracle = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  CHECK(entropy({3, 1}) == doctest::Approx(oracle));
  CHECK(entropy({3, 1}) == doctest::Approx(0.8113).epsilon(1e-4));
}

TEST_CASE("majority ties go to No") {
  CHECK(ClassCounts{3, 3}.majority() == Label::No);
  CHECK(ClassCounts{2, 3}.majority() == Label::Yes);
  CHECK(ClassCounts{0, 0}.majority() == Label::No);
  CHECK(ClassCounts{2, 3}.errors() == 2);
}

TEST_CASE("information gain on the eight-row fixture") {
  auto t = eight_rows();
  auto rows = all_rows(t);
  // H(7,1) = 0.5436; children 0.5 * H(3,1) = 0.4056
  CHECK(entropy(count_labels(t, rows)) == doctest::Approx(0.5436).epsilon(1e-4));
  CHECK(info_gain(t, rows, 0) == doctest::Approx(0.1379).epsilon(1e-3));
  CHECK_THROWS_AS(info_gain(t, rows, 1), ParameterError);  // the target
  CHECK_THROWS_AS(info_gain(t, rows, 7), ParameterError);
}

TEST_CASE("constant attribute has zero gain; a copy of the label has full gain") {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::Low, Nominal::A, Nominal::No}, 5);
  repeat_rows(rows, {Nominal::Low, Nominal::B, Nominal::Yes}, 3);
  auto t = make_table({{"C", kLMH}, {"Copy", kAB}}, rows);
  auto all = all_rows(t);
  CHECK(info_gain(t, all, 0) == 0.0);
  CHECK(info_gain(t, all, 1) == doctest::Approx(entropy({5, 3})));
}

TEST_CASE("pure data grows a single leaf") {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::A, Nominal::No}, 3);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 2);
  auto t = make_table({{"X", kAB}}, rows);
  auto tree = grow_tree(t, all_rows(t), {});
  CHECK(tree.root().is_leaf());
  CHECK(tree.root().label == Label::No);
  CHECK(render_tree(tree) == ": No (5/0)\n");
  CHECK_THROWS_AS(grow_tree(t, {}, {}), DataError);
}

TEST_CASE("eight-row fixture splits on X") {
  auto t = eight_rows();
  auto tree = grow_tree(t, all_rows(t), {});
  REQUIRE_FALSE(tree.root().is_leaf());
  CHECK(*tree.root().split == 0);
  const auto& b = tree.root().children[1];
  CHECK(b.is_leaf());
  CHECK(b.label == Label::No);
  CHECK(b.counts == ClassCounts{4, 0});
  CHECK(render_tree(tree) == "X = A : No (4/1)\nX = B : No (4/0)\n");
  CHECK(predict(tree, t.row(4)) == Label::No);  // X=B
}

TEST_CASE("empty branches become leaves carrying the parent majority") {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::Low, Nominal::Yes}, 3);
  repeat_rows(rows, {Nominal::High, Nominal::No}, 2);
  auto t = make_table({{"Q", kLMH}}, rows);
  auto tree = grow_tree(t, all_rows(t), {.min_leaf = 1});
  REQUIRE(tree.root().children.size() == 3);
  const auto& middle = tree.root().children[1];
  CHECK(middle.is_leaf());
  CHECK(middle.counts.total() == 0);
  CHECK(middle.label == Label::Yes);
  CHECK(render_tree(tree) == "Q = Low : Yes (3/0)\nQ = Middle : Yes (0/0)\nQ = High : No (2/0)\n");
}

TEST_CASE("stopping rules: min_leaf and max_depth") {
  auto t = eight_rows();
  CHECK(grow_tree(t, all_rows(t), {.min_leaf = 5}).root().is_leaf());
  TreeParams shallow;
  shallow.max_depth = 0;
  CHECK(grow_tree(t, all_rows(t), shallow).root().is_leaf());
}

TEST_CASE("reduced-error pruning collapses a subtree that loses to its majority leaf") {
  // grow: X=A 3 Yes + 1 No, X=B 6 No -> root majority No, A leaf Yes, B leaf No
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::A, Nominal::Yes}, 3);
  repeat_rows(rows, {Nominal::A, Nominal::No}, 1);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 6);
  // prune: X=A 3 No + 1 Yes, X=B 7 No + 1 Yes
  repeat_rows(rows, {Nominal::A, Nominal::No}, 3);
  repeat_rows(rows, {Nominal::A, Nominal::Yes}, 1);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 7);
  repeat_rows(rows, {Nominal::B, Nominal::Yes}, 1);
  auto t = make_table({{"X", kAB}}, rows);
  std::vector<std::size_t> grow(10), prune(12);
  std::iota(grow.begin(), grow.end(), std::size_t{0});
  std::iota(prune.begin(), prune.end(), std::size_t{10});

  auto tree = grow_tree(t, grow, {});
  REQUIRE_FALSE(tree.root().is_leaf());
  CHECK(tree.root().children[0].label == Label::Yes);
  // hand count: subtree errs on 3 (A,No) + 1 (B,Yes) = 4; the No leaf errs on the 2 Yes rows
  CHECK(count_errors(tree, t, prune) == 4);

  auto pruned = rep_prune(tree, t, prune);
  CHECK(pruned.root().is_leaf());
  CHECK(pruned.root().label == Label::No);
  CHECK(pruned.root().counts == ClassCounts{7, 3});
  CHECK(count_errors(pruned, t, prune) == 2);
}

TEST_CASE("pruning keeps a subtree that beats its majority leaf") {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::A, Nominal::Yes}, 3);
  repeat_rows(rows, {Nominal::A, Nominal::No}, 1);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 6);
  repeat_rows(rows, {Nominal::A, Nominal::Yes}, 3);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 5);
  auto t = make_table({{"X", kAB}}, rows);
  std::vector<std::size_t> grow(10), prune(8);
  std::iota(grow.begin(), grow.end(), std::size_t{0});
  std::iota(prune.begin(), prune.end(), std::size_t{10});
  auto pruned = rep_prune(grow_tree(t, grow, {}), t, prune);
  CHECK_FALSE(pruned.root().is_leaf());
  CHECK(count_errors(pruned, t, prune) == 0);
}

TEST_CASE("pruning edge cases: single leaf and empty prune set") {
  auto t = eight_rows();
  auto leaf = grow_tree(t, all_rows(t), {.min_leaf = 50});
  CHECK(rep_prune(leaf, t, all_rows(t)).root().is_leaf());

  auto tree = grow_tree(t, all_rows(t), {});
  REQUIRE_FALSE(tree.root().is_leaf());
  auto collapsed = rep_prune(tree, t, {});
  CHECK(collapsed.root().is_leaf());
  CHECK(collapsed.root().label == Label::No);
}

TEST_CASE("fit on constant labels gives one leaf for any seed") {
  std::vector<std::vector<Nominal>> rows;
  repeat_rows(rows, {Nominal::A, Nominal::No}, 7);
  repeat_rows(rows, {Nominal::B, Nominal::No}, 5);
  auto t = make_table({{"X", kAB}}, rows);
  for (std::uint64_t seed : {1, 2, 99}) {
    TreeParams p;
    p.seed = seed;
    auto tree = fit(t, p);
    CHECK(tree.root().is_leaf());
    CHECK(predict(tree, t.row(0)) == Label::No);
  }
}

TEST_CASE("fit rejects too few rows and bad parameters") {
  auto t = eight_rows();
  std::vector<std::size_t> two{0, 1};
  CHECK_THROWS_AS(fit(t, two, {}), DataError);
  CHECK_THROWS_AS(fit(t, {.min_leaf = 0}), ParameterError);
  CHECK_THROWS_AS(fit(t, {.prune_folds = 1}), ParameterError);
}

TEST_CASE("predict needs the split attribute in the row") {
  auto t = eight_rows();
  auto tree = grow_tree(t, all_rows(t), {});
  std::vector<Nominal> empty;
  CHECK_THROWS_AS(predict(tree, empty), ParameterError);
}

TEST_CASE("seeded shuffle is a deterministic permutation") {
  std::vector<std::size_t> a(50);
  std::iota(a.begin(), a.end(), std::size_t{0});
  auto b = a, c = a;
  seeded_shuffle(b, 7);
  seeded_shuffle(c, 7);
  CHECK(b == c);
  CHECK(b != a);
  std::sort(b.begin(), b.end());
  CHECK(b == a);
  std::vector<std::size_t> d = a;
  seeded_shuffle(d, 8);
  CHECK(d != c);
}

TEST_CASE("grown trees respect structural invariants on random data") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> n_attr(1, 5), n_rows(5, 120), val(0, 2);
    std::vector<Attribute> attrs;
    int k = n_attr(gen);
    for (int a = 0; a < k; ++a) attrs.push_back({"a" + std::to_string(a), kLMH});
    std::vector<std::vector<Nominal>> rows;
    int n = n_rows(gen);
    for (int r = 0; r < n; ++r) {
      std::vector<Nominal> row;
      for (int a = 0; a < k; ++a) row.push_back(kLMH[val(gen)]);
      bool yes = (row[0] == Nominal::Low) ? std::bernoulli_distribution(0.8)(gen)
                                          : std::bernoulli_distribution(0.2)(gen);
      row.push_back(yes ? Nominal::Yes : Nominal::No);
      rows.push_back(row);
    }
    auto t = make_table(attrs, rows);
    auto all = all_rows(t);
    auto tree = grow_tree(t, all, {.min_leaf = 1});
    check_paths(tree.root(), {}, t);
    CHECK(tree.depth() <= static_cast<std::size_t>(k));
    // training error of the unpruned tree never exceeds the majority leaf's
    CHECK(count_errors(tree, t, all) <= count_labels(t, all).errors());

    TreeParams p;
    p.seed = static_cast<std::uint64_t>(trial);
    CHECK(render_tree(fit(t, p)) == render_tree(fit(t, p)));
  }
}

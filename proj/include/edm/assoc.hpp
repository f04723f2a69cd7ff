#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edm/recode.hpp"

namespace edm {

using ItemId = std::uint32_t;

// An (attribute = value) pair. Items built from bare labels have an empty value.
struct Item {
  std::string attribute;
  std::string value;

  std::string label() const { return value.empty() ? attribute : attribute + "=" + value; }
};

// Item catalogue plus baskets of sorted, duplicate-free item ids. Item ids are
// assigned so that id order is the lexicographic order used in reports.
struct TransactionDb {
  std::vector<Item> items;
  std::vector<std::vector<ItemId>> transactions;

  std::size_t size() const { return transactions.size(); }
};

// One transaction per row with one item per column.
TransactionDb itemize(const RecodedTable& table);

// Builds a database from free-form labels; "a=b" labels split into attribute and value.
TransactionDb make_transactions(const std::vector<std::vector<std::string>>& baskets);

struct Itemset {
  std::vector<ItemId> items;  // ascending
  std::size_t count = 0;      // transactions containing every item
  std::size_t total = 0;

  double support() const { return total ? static_cast<double>(count) / total : 0.0; }
  friend bool operator==(const Itemset&, const Itemset&) = default;
};

// Apriori, level-wise. Result is ordered by size ascending, support descending,
// then lexicographic item ids.
std::vector<Itemset> frequent_itemsets(const TransactionDb& db, double min_support);

// Exhaustive enumeration for databases with at most 20 items. Same contract as
// frequent_itemsets; exists to cross-check it.
std::vector<Itemset> brute_force_itemsets(const TransactionDb& db, double min_support);

struct AssociationRule {
  std::vector<ItemId> antecedent;
  std::vector<ItemId> consequent;
  std::size_t antecedent_count = 0;
  std::size_t consequent_count = 0;
  std::size_t both_count = 0;
  std::size_t total = 0;

  double support() const { return static_cast<double>(both_count) / total; }
  double confidence() const { return static_cast<double>(both_count) / antecedent_count; }
  double lift() const {
    return static_cast<double>(both_count) * total /
           (static_cast<double>(antecedent_count) * consequent_count);
  }
};

// All rules from itemsets of size >= 2 whose confidence reaches min_confidence.
// With consequent_attribute set, only rules with a single consequent item on that
// attribute are kept. Ordered by confidence then support, both descending.
std::vector<AssociationRule> generate_rules(const TransactionDb& db,
                                            const std::vector<Itemset>& frequent,
                                            double min_confidence,
                                            const std::optional<std::string>& consequent_attribute);

std::string format_items(const TransactionDb& db, const std::vector<ItemId>& items);
// `lhs ==> rhs  (supp=S, conf=C, lift=L)`, four decimals.
std::string format_rule(const TransactionDb& db, const AssociationRule& rule);

}  // namespace edm

#include "edm/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "edm/errors.hpp"

namespace edm {

namespace {

void check_fraction(double v, const char* what) {
  if (!(v > 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in (0, 1], got " << v;
    throw ParameterError(msg.str());
  }
}

// Smallest count c with c / total >= min_support, evaluated in the same
// floating-point form as Itemset::support().
std::size_t min_count_for(double min_support, std::size_t total) {
  if (total == 0) return 1;
  auto frac = [total](std::size_t c) { return static_cast<double>(c) / total; };
  auto c = static_cast<std::size_t>(std::ceil(min_support * static_cast<double>(total)));
  c = std::min(c, total);
  while (c > 1 && frac(c - 1) >= min_support) --c;
  while (c <= total && frac(c) < min_support) ++c;
  return std::max<std::size_t>(c, 1);
}

bool lex_less(const std::vector<ItemId>& a, const std::vector<ItemId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_itemsets(std::vector<Itemset>& sets) {
  std::sort(sets.begin(), sets.end(), [](const Itemset& a, const Itemset& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    if (a.count != b.count) return a.count > b.count;
    return lex_less(a.items, b.items);
  });
}

// Subset test of each candidate against each transaction; both sides sorted.
std::vector<std::size_t> count_supports(const std::vector<std::vector<ItemId>>& candidates,
                                        const TransactionDb& db) {
  std::vector<std::size_t> counts(candidates.size(), 0);
  for (const auto& t : db.transactions) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      if (c.size() <= t.size() && std::includes(t.begin(), t.end(), c.begin(), c.end())) {
        ++counts[i];
      }
    }
  }
  return counts;
}

// Join pairs of frequent k-itemsets sharing their first k-1 items, then drop any
// candidate with an infrequent k-subset or two items on the same attribute.
std::vector<std::vector<ItemId>> next_candidates(const TransactionDb& db,
                                                 const std::vector<std::vector<ItemId>>& level) {
  std::set<std::vector<ItemId>> frequent(level.begin(), level.end());
  std::vector<std::vector<ItemId>> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      const auto& a = level[i];
      const auto& b = level[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;  // level is sorted
      std::vector<ItemId> cand(a);
      cand.push_back(b.back());
      if (db.items[a.back()].attribute == db.items[b.back()].attribute) continue;

      bool all_frequent = true;
      std::vector<ItemId> sub(cand.size() - 1);
      for (std::size_t skip = 0; skip + 2 < cand.size() && all_frequent; ++skip) {
        std::size_t k = 0;
        for (std::size_t m = 0; m < cand.size(); ++m) {
          if (m != skip) sub[k++] = cand[m];
        }
        all_frequent = frequent.count(sub) > 0;
      }
      if (all_frequent) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace

TransactionDb itemize(const RecodedTable& table) {
  TransactionDb db;
  // id = position in (column, domain) order
  std::vector<std::vector<ItemId>> ids(table.columns());
  for (std::size_t c = 0; c < table.columns(); ++c) {
    const auto& attr = table.attribute(c);
    ids[c].assign(kNominalCount, 0);
    for (auto v : attr.domain) {
      ids[c][static_cast<std::size_t>(v)] = static_cast<ItemId>(db.items.size());
      db.items.push_back({attr.name, std::string(to_string(v))});
    }
  }
  db.transactions.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    std::vector<ItemId> t;
    t.reserve(table.columns());
    auto row = table.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      t.push_back(ids[c][static_cast<std::size_t>(row[c])]);
    }
    db.transactions.push_back(std::move(t));
  }
  return db;
}

TransactionDb make_transactions(const std::vector<std::vector<std::string>>& baskets) {
  std::set<std::string> labels;
  for (const auto& b : baskets) labels.insert(b.begin(), b.end());

  TransactionDb db;
  std::map<std::string, ItemId> id_of;
  for (const auto& l : labels) {
    id_of[l] = static_cast<ItemId>(db.items.size());
    auto eq = l.find('=');
    if (eq == std::string::npos) {
      db.items.push_back({l, ""});
    } else {
      db.items.push_back({l.substr(0, eq), l.substr(eq + 1)});
    }
  }
  for (const auto& b : baskets) {
    std::vector<ItemId> t;
    for (const auto& l : b) t.push_back(id_of.at(l));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (db.items[t[i - 1]].attribute == db.items[t[i]].attribute) {
        throw ParameterError("basket holds two items on attribute '" +
                             db.items[t[i]].attribute + "'");
      }
    }
    db.transactions.push_back(std::move(t));
  }
  return db;
}

std::vector<Itemset> frequent_itemsets(const TransactionDb& db, double min_support) {
  check_fraction(min_support, "min_support");
  const std::size_t total = db.size();
  const std::size_t min_count = min_count_for(min_support, total);
  std::vector<Itemset> result;
  if (total == 0) return result;

  std::vector<std::size_t> single(db.items.size(), 0);
  for (const auto& t : db.transactions) {
    for (auto id : t) ++single[id];
  }
  std::vector<std::vector<ItemId>> level;
  for (ItemId id = 0; id < single.size(); ++id) {
    if (single[id] >= min_count) {
      level.push_back({id});
      result.push_back({{id}, single[id], total});
    }
  }

  while (level.size() > 1) {
    auto candidates = next_candidates(db, level);
    if (candidates.empty()) break;
    auto counts = count_supports(candidates, db);
    level.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (counts[i] >= min_count) {
        result.push_back({candidates[i], counts[i], total});
        level.push_back(std::move(candidates[i]));
      }
    }
  }
  sort_itemsets(result);
  return result;
}

std::vector<Itemset> brute_force_itemsets(const TransactionDb& db, double min_support) {
  check_fraction(min_support, "min_support");
  constexpr std::size_t kMaxItems = 20;
  if (db.items.size() > kMaxItems) {
    throw ParameterError("brute-force enumeration supports at most 20 distinct items, got " +
                         std::to_string(db.items.size()));
  }
  const std::size_t total = db.size();
  std::vector<Itemset> result;
  if (total == 0) return result;

  const std::uint32_t n = static_cast<std::uint32_t>(db.items.size());
  std::vector<std::uint32_t> masks;
  masks.reserve(total);
  for (const auto& t : db.transactions) {
    std::uint32_t m = 0;
    for (auto id : t) m |= 1u << id;
    masks.push_back(m);
  }
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    std::size_t count = 0;
    for (auto m : masks) count += (m & subset) == subset;
    if (static_cast<double>(count) / total >= min_support) {
      Itemset s{{}, count, total};
      for (ItemId id = 0; id < n; ++id) {
        if (subset & (1u << id)) s.items.push_back(id);
      }
      result.push_back(std::move(s));
    }
  }
  sort_itemsets(result);
  return result;
}

std::vector<AssociationRule> generate_rules(const TransactionDb& db,
                                            const std::vector<Itemset>& frequent,
                                            double min_confidence,
                                            const std::optional<std::string>& consequent_attribute) {
  check_fraction(min_confidence, "min_confidence");
  std::map<std::vector<ItemId>, std::size_t> count_of;
  for (const auto& s : frequent) count_of[s.items] = s.count;
  auto lookup = [&](const std::vector<ItemId>& items) {
    auto it = count_of.find(items);
    if (it == count_of.end()) {
      throw ParameterError("frequent itemset list is not closed under subsets");
    }
    return it->second;
  };

  std::vector<AssociationRule> rules;
  for (const auto& s : frequent) {
    const auto k = s.items.size();
    if (k < 2) continue;
    if (k > 31) throw ParameterError("itemset too large for rule enumeration");
    // each proper non-empty subset of positions forms the consequent
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      AssociationRule r;
      for (std::size_t i = 0; i < k; ++i) {
        (mask & (1u << i) ? r.consequent : r.antecedent).push_back(s.items[i]);
      }
      if (consequent_attribute &&
          (r.consequent.size() != 1 || db.items[r.consequent[0]].attribute != *consequent_attribute)) {
        continue;
      }
      r.both_count = s.count;
      r.antecedent_count = lookup(r.antecedent);
      r.consequent_count = lookup(r.consequent);
      r.total = s.total;
      if (r.confidence() >= min_confidence) rules.push_back(std::move(r));
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    // exact comparison of both/antecedent ratios
    const auto lhs = static_cast<std::uint64_t>(a.both_count) * b.antecedent_count;
    const auto rhs = static_cast<std::uint64_t>(b.both_count) * a.antecedent_count;
    if (lhs != rhs) return lhs > rhs;
    if (a.both_count != b.both_count) return a.both_count > b.both_count;
    if (a.antecedent != b.antecedent) {
      if (a.antecedent.size() != b.antecedent.size()) return a.antecedent.size() < b.antecedent.size();
      return lex_less(a.antecedent, b.antecedent);
    }
    return lex_less(a.consequent, b.consequent);
  });
  return rules;
}

std::string format_items(const TransactionDb& db, const std::vector<ItemId>& items) {
  std::string out;
  for (auto id : items) {
    if (!out.empty()) out += ' ';
    out += db.items.at(id).label();
  }
  return out;
}

std::string format_rule(const TransactionDb& db, const AssociationRule& rule) {
  std::ostringstream out;
  out << format_items(db, rule.antecedent) << " ==> " << format_items(db, rule.consequent)
      << std::fixed << std::setprecision(4) << "  (supp=" << rule.support()
      << ", conf=" << rule.confidence() << ", lift=" << rule.lift() << ")";
  return out.str();
}

}  // namespace edm

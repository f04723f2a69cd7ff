#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edm/ingest.hpp"

namespace edm {

// Closed vocabulary of recoded cell values. Declaration order is the branch
// layout order used when rendering trees: A..M, then zero < Low < Middle < High.
enum class Nominal : std::uint8_t {
  No,
  Yes,
  A, B, C, D, E, F, G, H, I, J, K, L, M,
  Zero,
  Low,
  Middle,
  High,
};

inline constexpr std::size_t kNominalCount = 19;

std::string_view to_string(Nominal v);
std::optional<Nominal> parse_nominal(std::string_view token);

// Position on the ordinal scale zero < Low < Middle < High; nullopt for non-scale tokens.
std::optional<int> scale_rank(Nominal v);

Nominal recode_repeat_label(int repeat_count);
Nominal map_code_to_letter(int code, int cardinality);
Nominal recode_scale(int value, bool zero_allowed);

struct Attribute {
  std::string name;
  std::vector<Nominal> domain;  // legal values in branch order

  bool allows(Nominal v) const;
};

// Legal recoded values for a raw column role.
std::vector<Nominal> domain_for(ColumnRole role);

class RecodedTable {
 public:
  RecodedTable() = default;
  // cells are row-major, attributes.size() per row; every cell must lie in its
  // attribute's domain and the target domain must be {No, Yes}.
  RecodedTable(std::vector<Attribute> attributes, std::vector<Nominal> cells, std::size_t target);

  std::size_t rows() const { return attributes_.empty() ? 0 : cells_.size() / attributes_.size(); }
  std::size_t columns() const { return attributes_.size(); }
  std::size_t target() const { return target_; }

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(std::size_t col) const { return attributes_.at(col); }
  // Throws ParameterError for an unknown name.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  std::span<const Nominal> row(std::size_t r) const {
    return {cells_.data() + r * attributes_.size(), attributes_.size()};
  }
  Nominal at(std::size_t r, std::size_t col) const { return cells_[r * attributes_.size() + col]; }
  Nominal label(std::size_t r) const { return at(r, target_); }

 private:
  std::vector<Attribute> attributes_;
  std::vector<Nominal> cells_;
  std::size_t target_ = 0;
};

inline constexpr std::string_view kTargetName = "nb.repeat";

RecodedTable recode_table(const RawTable& raw);

enum class AnalysisId { CourseInstructor, CourseFeatures, InstructorFeatures };

std::string_view to_string(AnalysisId id);
// Throws ParameterError for anything other than the three analysis names.
AnalysisId parse_analysis(std::string_view name);

// Column subset for one of the three analyses; the target is always kept (last).
RecodedTable project_analysis(const RecodedTable& table, AnalysisId which);

// Header plus one line per row, tokens as cells.
void write_recoded_csv(const RecodedTable& table, std::ostream& out);

}  // namespace edm

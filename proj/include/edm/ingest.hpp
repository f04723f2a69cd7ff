#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edm {

inline constexpr std::size_t kColumnCount = 33;

enum class ColumnRole {
  InstructorId,
  CourseCode,
  RepeatCount,
  Attendance,
  Difficulty,
  CourseQuestion,
  InstructorQuestion,
};

std::string_view to_string(ColumnRole role);

struct ColumnSpec {
  std::string name;
  ColumnRole role;
  int min;
  std::optional<int> max;  // nullopt: unbounded above (nb.repeat)

  bool accepts(int value) const { return value >= min && (!max || value <= *max); }
};

// instr, class, nb.repeat, attendance, difficulty, Q1..Q28
const std::vector<ColumnSpec>& canonical_schema();

// Index of a canonical column by exact name; nullopt when unknown.
std::optional<std::size_t> canonical_index(std::string_view name);

using RawRow = std::array<int, kColumnCount>;

struct RawTable {
  std::vector<ColumnSpec> schema;
  std::vector<RawRow> rows;
};

// Parses the evaluation CSV. Columns may appear in any order; rows are stored in
// canonical column order. Errors carry the 1-based data row and the column name.
RawTable parse_csv(std::istream& in, std::string_view source = "<stream>");
RawTable load_csv(const std::filesystem::path& path);

struct ColumnSummary {
  std::string name;
  std::optional<int> min;
  std::optional<int> max;
  std::map<int, std::size_t> value_counts;
  bool within_range = true;

  std::size_t distinct() const { return value_counts.size(); }
};

struct ValidationSummary {
  std::size_t rows = 0;
  std::vector<ColumnSummary> columns;

  bool ok() const;
  const ColumnSummary& column(std::string_view name) const;
};

ValidationSummary validate_schema(const RawTable& table);

}  // namespace edm

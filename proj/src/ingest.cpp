#include "edm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "edm/errors.hpp"

namespace edm {

namespace {

std::vector<ColumnSpec> build_schema() {
  std::vector<ColumnSpec> s;
  s.reserve(kColumnCount);
  s.push_back({"instr", ColumnRole::InstructorId, 1, 3});
  s.push_back({"class", ColumnRole::CourseCode, 1, 13});
  s.push_back({"nb.repeat", ColumnRole::RepeatCount, 0, std::nullopt});
  s.push_back({"attendance", ColumnRole::Attendance, 0, 4});
  s.push_back({"difficulty", ColumnRole::Difficulty, 1, 5});
  for (int q = 1; q <= 28; ++q) {
    auto role = q <= 12 ? ColumnRole::CourseQuestion : ColumnRole::InstructorQuestion;
    s.push_back({"Q" + std::to_string(q), role, 1, 5});
  }
  return s;
}

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// file position -> canonical column index
std::vector<std::size_t> match_header(std::string_view header, std::string_view source) {
  const auto& schema = canonical_schema();
  auto names = split_commas(header);
  if (names.size() != kColumnCount) {
    throw DataError(std::string(source) + ": header has " + std::to_string(names.size()) +
                    " columns, expected " + std::to_string(kColumnCount));
  }
  std::vector<std::size_t> order(kColumnCount);
  std::vector<bool> seen(kColumnCount, false);
  for (std::size_t pos = 0; pos < names.size(); ++pos) {
    auto key = fold_case(trim(names[pos]));
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const ColumnSpec& c) { return fold_case(c.name) == key; });
    if (it == schema.end()) {
      throw DataError(std::string(source) + ": unknown header column '" +
                      std::string(trim(names[pos])) + "'");
    }
    auto idx = static_cast<std::size_t>(it - schema.begin());
    if (seen[idx]) {
      throw DataError(std::string(source) + ": duplicate header column '" + it->name + "'");
    }
    seen[idx] = true;
    order[pos] = idx;
  }
  return order;
}

}  // namespace

std::string_view to_string(ColumnRole role) {
  switch (role) {
    case ColumnRole::InstructorId: return "instructor-id";
    case ColumnRole::CourseCode: return "course-code";
    case ColumnRole::RepeatCount: return "repeat-count";
    case ColumnRole::Attendance: return "attendance";
    case ColumnRole::Difficulty: return "difficulty";
    case ColumnRole::CourseQuestion: return "course-question";
    case ColumnRole::InstructorQuestion: return "instructor-question";
  }
  return "unknown";
}

const std::vector<ColumnSpec>& canonical_schema() {
  static const std::vector<ColumnSpec> schema = build_schema();
  return schema;
}

std::optional<std::size_t> canonical_index(std::string_view name) {
  const auto& schema = canonical_schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  return std::nullopt;
}

RawTable parse_csv(std::istream& in, std::string_view source) {
  const auto& schema = canonical_schema();
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(std::string(source) + ": empty file, expected a header row");
  }
  strip_cr(line);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);  // UTF-8 BOM
  const auto order = match_header(line, source);

  RawTable table{schema, {}};
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (trim(line).empty()) continue;
    ++row_no;
    auto fields = split_commas(line);
    if (fields.size() != kColumnCount) {
      throw DataError(std::string(source) + ": row " + std::to_string(row_no) + " has " +
                      std::to_string(fields.size()) + " cells, expected " +
                      std::to_string(kColumnCount));
    }
    RawRow row{};
    for (std::size_t pos = 0; pos < fields.size(); ++pos) {
      const auto& spec = schema[order[pos]];
      auto cell = trim(fields[pos]);
      int value = 0;
      auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc{} || end != cell.data() + cell.size()) {
        throw DataError(std::string(source) + ": row " + std::to_string(row_no) + ", column " +
                        spec.name + ": '" + std::string(cell) + "' is not an integer");
      }
      if (!spec.accepts(value)) {
        std::ostringstream msg;
        msg << source << ": row " << row_no << ", column " << spec.name << ": value " << value
            << " outside allowed range [" << spec.min << ", ";
        if (spec.max) msg << *spec.max; else msg << "inf";
        msg << "]";
        throw DataError(msg.str());
      }
      row[order[pos]] = value;
    }
    table.rows.push_back(row);
  }
  return table;
}

RawTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  return parse_csv(in, path.string());
}

bool ValidationSummary::ok() const {
  return std::all_of(columns.begin(), columns.end(),
                     [](const ColumnSummary& c) { return c.within_range; });
}

const ColumnSummary& ValidationSummary::column(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw ParameterError("no column named '" + std::string(name) + "'");
}

ValidationSummary validate_schema(const RawTable& table) {
  ValidationSummary summary;
  summary.rows = table.rows.size();
  summary.columns.reserve(table.schema.size());
  for (std::size_t c = 0; c < table.schema.size(); ++c) {
    const auto& spec = table.schema[c];
    ColumnSummary col;
    col.name = spec.name;
    for (const auto& row : table.rows) {
      int v = row[c];
      col.min = col.min ? std::min(*col.min, v) : v;
      col.max = col.max ? std::max(*col.max, v) : v;
      ++col.value_counts[v];
      if (!spec.accepts(v)) col.within_range = false;
    }
    summary.columns.push_back(std::move(col));
  }
  return summary;
}

}  // namespace edm

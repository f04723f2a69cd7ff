#include "edm/recode.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include "edm/errors.hpp"

namespace edm {

namespace {

constexpr std::array<std::string_view, kNominalCount> kTokens = {
    "No", "Yes", "A", "B", "C", "D", "E", "F", "G", "H", "I",
    "J",  "K",   "L", "M", "zero", "Low", "Middle", "High"};

std::vector<Nominal> letters(int n) {
  std::vector<Nominal> out;
  for (int i = 1; i <= n; ++i) out.push_back(map_code_to_letter(i, n));
  return out;
}

std::vector<std::string> analysis_columns(AnalysisId which) {
  std::vector<std::string> cols;
  switch (which) {
    case AnalysisId::CourseInstructor:
      cols = {"instr", "class"};
      break;
    case AnalysisId::CourseFeatures:
      cols = {"attendance", "difficulty"};
      for (int q = 1; q <= 12; ++q) cols.push_back("Q" + std::to_string(q));
      break;
    case AnalysisId::InstructorFeatures:
      for (int q = 13; q <= 28; ++q) cols.push_back("Q" + std::to_string(q));
      break;
  }
  cols.emplace_back(kTargetName);
  return cols;
}

}  // namespace

std::string_view to_string(Nominal v) { return kTokens.at(static_cast<std::size_t>(v)); }

std::optional<Nominal> parse_nominal(std::string_view token) {
  for (std::size_t i = 0; i < kTokens.size(); ++i) {
    if (kTokens[i] == token) return static_cast<Nominal>(i);
  }
  return std::nullopt;
}

std::optional<int> scale_rank(Nominal v) {
  switch (v) {
    case Nominal::Zero: return 0;
    case Nominal::Low: return 1;
    case Nominal::Middle: return 2;
    case Nominal::High: return 3;
    default: return std::nullopt;
  }
}

Nominal recode_repeat_label(int repeat_count) {
  if (repeat_count < 0) {
    throw ParameterError("repeat count must be >= 0, got " + std::to_string(repeat_count));
  }
  return repeat_count >= 2 ? Nominal::Yes : Nominal::No;
}

Nominal map_code_to_letter(int code, int cardinality) {
  if (cardinality != 3 && cardinality != 13) {
    throw ParameterError("letter cardinality must be 3 or 13, got " + std::to_string(cardinality));
  }
  if (code < 1 || code > cardinality) {
    throw ParameterError("code " + std::to_string(code) + " outside 1.." +
                         std::to_string(cardinality));
  }
  return static_cast<Nominal>(static_cast<int>(Nominal::A) + code - 1);
}

Nominal recode_scale(int value, bool zero_allowed) {
  switch (value) {
    case 0:
      if (zero_allowed) return Nominal::Zero;
      break;
    case 1:
    case 2: return Nominal::Low;
    case 3: return Nominal::Middle;
    case 4:
    case 5: return Nominal::High;
    default: break;
  }
  throw ParameterError("scale value " + std::to_string(value) + " outside " +
                       (zero_allowed ? "0..5" : "1..5"));
}

bool Attribute::allows(Nominal v) const {
  return std::find(domain.begin(), domain.end(), v) != domain.end();
}

std::vector<Nominal> domain_for(ColumnRole role) {
  switch (role) {
    case ColumnRole::InstructorId: return letters(3);
    case ColumnRole::CourseCode: return letters(13);
    case ColumnRole::RepeatCount: return {Nominal::No, Nominal::Yes};
    case ColumnRole::Attendance:
      return {Nominal::Zero, Nominal::Low, Nominal::Middle, Nominal::High};
    case ColumnRole::Difficulty:
    case ColumnRole::CourseQuestion:
    case ColumnRole::InstructorQuestion:
      return {Nominal::Low, Nominal::Middle, Nominal::High};
  }
  return {};
}

RecodedTable::RecodedTable(std::vector<Attribute> attributes, std::vector<Nominal> cells,
                           std::size_t target)
    : attributes_(std::move(attributes)), cells_(std::move(cells)), target_(target) {
  if (attributes_.empty()) throw ParameterError("recoded table needs at least one column");
  if (target_ >= attributes_.size()) throw ParameterError("target column index out of range");
  if (attributes_[target_].domain != std::vector<Nominal>{Nominal::No, Nominal::Yes}) {
    throw ParameterError("target column '" + attributes_[target_].name +
                         "' must have domain {No, Yes}");
  }
  if (cells_.size() % attributes_.size() != 0) {
    throw ParameterError("cell count is not a multiple of the column count");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& attr = attributes_[i % attributes_.size()];
    if (!attr.allows(cells_[i])) {
      throw ParameterError("row " + std::to_string(i / attributes_.size() + 1) + ", column " +
                           attr.name + ": value " + std::string(to_string(cells_[i])) +
                           " not in domain");
    }
  }
}

std::optional<std::size_t> RecodedTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t RecodedTable::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ParameterError("unknown attribute '" + std::string(name) + "'");
}

RecodedTable recode_table(const RawTable& raw) {
  std::vector<Attribute> attributes;
  attributes.reserve(raw.schema.size());
  for (const auto& spec : raw.schema) attributes.push_back({spec.name, domain_for(spec.role)});

  std::vector<Nominal> cells;
  cells.reserve(raw.rows.size() * raw.schema.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    for (std::size_t c = 0; c < raw.schema.size(); ++c) {
      const auto& spec = raw.schema[c];
      const int v = raw.rows[r][c];
      try {
        switch (spec.role) {
          case ColumnRole::InstructorId: cells.push_back(map_code_to_letter(v, 3)); break;
          case ColumnRole::CourseCode: cells.push_back(map_code_to_letter(v, 13)); break;
          case ColumnRole::RepeatCount: cells.push_back(recode_repeat_label(v)); break;
          case ColumnRole::Attendance: cells.push_back(recode_scale(v, true)); break;
          default: cells.push_back(recode_scale(v, false)); break;
        }
      } catch (const ParameterError& e) {
        throw DataError("row " + std::to_string(r + 1) + ", column " + spec.name + ": " +
                        e.what());
      }
    }
  }
  auto target = static_cast<std::size_t>(
      std::find_if(raw.schema.begin(), raw.schema.end(),
                   [](const ColumnSpec& s) { return s.role == ColumnRole::RepeatCount; }) -
      raw.schema.begin());
  if (target == raw.schema.size()) throw DataError("schema has no repeat-count column");
  return RecodedTable(std::move(attributes), std::move(cells), target);
}

std::string_view to_string(AnalysisId id) {
  switch (id) {
    case AnalysisId::CourseInstructor: return "course-instructor";
    case AnalysisId::CourseFeatures: return "course-features";
    case AnalysisId::InstructorFeatures: return "instructor-features";
  }
  return "unknown";
}

AnalysisId parse_analysis(std::string_view name) {
  for (auto id : {AnalysisId::CourseInstructor, AnalysisId::CourseFeatures,
                  AnalysisId::InstructorFeatures}) {
    if (to_string(id) == name) return id;
  }
  throw ParameterError("unknown analysis '" + std::string(name) +
                       "' (expected course-instructor, course-features or instructor-features)");
}

RecodedTable project_analysis(const RecodedTable& table, AnalysisId which) {
  std::vector<std::size_t> source;
  for (const auto& name : analysis_columns(which)) source.push_back(table.index_of(name));

  std::vector<Attribute> attributes;
  for (auto c : source) attributes.push_back(table.attribute(c));
  std::vector<Nominal> cells;
  cells.reserve(table.rows() * source.size());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (auto c : source) cells.push_back(table.at(r, c));
  }
  return RecodedTable(std::move(attributes), std::move(cells), source.size() - 1);
}

void write_recoded_csv(const RecodedTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns(); ++c) {
    if (c) out << ',';
    out << table.attribute(c).name;
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    auto row = table.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << to_string(row[c]);
    }
    out << '\n';
  }
}

}  // namespace edm

#include <charconv>
#include <fmt/core.h>
#include <fstream>
#include <sstream>

#include "amortis/calibration.hpp"

namespace amortis {

namespace detail {
std::string_view annexe1_csv_text();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, const std::string& source, int line, int column) {
  field = trim(field);
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw InputError(fmt::format("{}:{}: field {} ('{}') is not a number", source, line, column,
                                 field));
  }
  return value;
}

}  // namespace

void GoldenTable::validate() const {
  detail::require(!rows.empty(), fmt::format("{}: table has no rows", source));
  for (std::size_t k = 1; k < rows.size(); ++k) {
    detail::require(rows[k].duration_years == rows[k - 1].duration_years + 1,
                    fmt::format("{}: durations must increase by one year (row {} has {} after {})",
                                source, k + 1, rows[k].duration_years,
                                rows[k - 1].duration_years));
  }
}

GoldenTable parse_golden_csv(std::string_view text, std::string source) {
  GoldenTable table;
  table.source = std::move(source);
  int line_no = 0;
  bool seen_header = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != kMetricsCsvHeader) {
        throw InputError(fmt::format("{}:{}: unexpected header '{}'", table.source, line_no,
                                     line));
      }
      seen_header = true;
      continue;
    }

    std::array<std::string_view, kColumnCount + 1> fields;
    std::size_t count = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      if (count == fields.size()) {
        throw InputError(fmt::format("{}:{}: too many fields", table.source, line_no));
      }
      fields[count++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (count != fields.size()) {
      throw InputError(fmt::format("{}:{}: expected {} fields, found {}", table.source, line_no,
                                   fields.size(), count));
    }
    MetricsRow row;
    row.duration_years = parse_field<int>(fields[0], table.source, line_no, 1);
    row.monthly_payment = parse_field<double>(fields[1], table.source, line_no, 2);
    row.total_debt = parse_field<double>(fields[2], table.source, line_no, 3);
    row.relative_increase = parse_field<double>(fields[3], table.source, line_no, 4);
    row.debt_ratio = parse_field<double>(fields[4], table.source, line_no, 5);
    row.repayment_capacity = parse_field<double>(fields[5], table.source, line_no, 6);
    row.risk_index = parse_field<double>(fields[6], table.source, line_no, 7);
    table.rows.push_back(row);
  }
  if (!seen_header) throw InputError(fmt::format("{}: missing header", table.source));
  table.validate();
  return table;
}

GoldenTable load_golden_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_golden_csv(buffer.str(), path.string());
}

const GoldenTable& annexe1_table() {
  static const GoldenTable table = [] {
    GoldenTable t = parse_golden_csv(detail::annexe1_csv_text(), "annexe1.csv");
    if (t.rows.size() != kAnnexe1Rows) {
      throw InputError(fmt::format("annexe1.csv: expected {} rows, found {}", kAnnexe1Rows,
                                   t.rows.size()));
    }
    return t;
  }();
  return table;
}

}  // namespace amortis

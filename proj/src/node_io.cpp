#include "mqshape/node_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "mqshape/errors.hpp"

namespace mqshape {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t);
    std::vector<double> row;
    row.reserve(fields.size());
    bool any_numeric = false;
    std::optional<std::size_t> bad;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (auto v = parse_number(fields[i])) {
        row.push_back(*v);
        any_numeric = true;
      } else if (!bad) {
        bad = i;
      }
    }
    if (bad) {
      if (first && !any_numeric) {
        first = false;
        continue;
      }
      std::ostringstream os;
      os << "CSV line " << line_no << ": field " << (*bad + 1) << " ('" << fields[*bad]
         << "') is not a number";
      throw InputError(os.str());
    }
    first = false;
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_csv(in);
}

NodeData nodes_from_csv(const CsvTable& table, int n, bool with_values) {
  if (table.rows.empty()) throw InputError("node file contains no rows");
  const std::size_t width = static_cast<std::size_t>(n) + (with_values ? 1 : 0);
  NodeData data;
  const auto count = static_cast<Eigen::Index>(table.rows.size());
  data.points.resize(count, n);
  if (with_values) data.values.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    if (row.size() != width) {
      std::ostringstream os;
      os << "CSV line " << table.line_numbers[static_cast<std::size_t>(i)] << ": expected " << width
         << " fields, found " << row.size();
      throw InputError(os.str());
    }
    for (int d = 0; d < n; ++d) data.points(i, d) = row[static_cast<std::size_t>(d)];
    if (with_values) data.values[i] = row[static_cast<std::size_t>(n)];
  }
  return data;
}

Eigen::VectorXd values_from_csv(const CsvTable& table) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != 1) {
      std::ostringstream os;
      os << "CSV line " << table.line_numbers[i] << ": expected 1 value, found " << table.rows[i].size();
      throw InputError(os.str());
    }
    v[static_cast<Eigen::Index>(i)] = table.rows[i][0];
  }
  return v;
}

}  // namespace mqshape

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace mqshape {

/// Numeric CSV rows. Blank lines and lines starting with '#' are skipped; a
/// first line with no numeric field is taken as a header.
struct CsvTable {
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;  ///< 1-based source line of each row
};

/// Throws InputError naming the line of the first malformed row.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

struct NodeData {
  Eigen::MatrixXd points;  ///< one center per row
  Eigen::VectorXd values;  ///< empty when the rows carried coordinates only
};

/// Rows of n coordinates followed by the value (with_values) or n
/// coordinates only. Every row must have the same width.
NodeData nodes_from_csv(const CsvTable& table, int n, bool with_values);

/// One value per row.
Eigen::VectorXd values_from_csv(const CsvTable& table);

}  // namespace mqshape

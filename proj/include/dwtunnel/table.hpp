// Column tables and their CSV / JSON serialization.
#pragma once

#include <Eigen/Core>

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dwt {

enum class TableFormat { csv, json };

class Table {
 public:
  using Column = std::variant<Eigen::VectorXd, std::vector<std::string>>;

  explicit Table(std::string name = {}) : name_(std::move(name)) {}

  Table& add(std::string header, Eigen::VectorXd values);
  Table& add(std::string header, std::vector<std::string> values);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t rows() const { return rows_; }

  /// Numeric column by header; throws std::out_of_range if absent.
  const Eigen::VectorXd& numeric(const std::string& header) const;

 private:
  void check_rows(std::size_t n);

  std::string name_;
  std::vector<std::string> headers_;
  std::vector<Column> columns_;
  std::size_t rows_ = 0;
};

/// 12 significant digits, shortest form.
std::string format_number(double value);

/// Header row, ',' separators, LF line endings.
void write_csv(std::ostream& os, const Table& table);

/// One object mapping each header to its array.
void write_json(std::ostream& os, const Table& table);

void write_table(std::ostream& os, const Table& table, TableFormat format);

}  // namespace dwt

#include "dwtunnel/table.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dwt {

Table& Table::add(std::string header, Eigen::VectorXd values) {
  check_rows(static_cast<std::size_t>(values.size()));
  headers_.push_back(std::move(header));
  columns_.emplace_back(std::move(values));
  return *this;
}

Table& Table::add(std::string header, std::vector<std::string> values) {
  check_rows(values.size());
  headers_.push_back(std::move(header));
  columns_.emplace_back(std::move(values));
  return *this;
}

const Eigen::VectorXd& Table::numeric(const std::string& header) const {
  for (std::size_t k = 0; k < headers_.size(); ++k) {
    if (headers_[k] == header) {
      if (const auto* v = std::get_if<Eigen::VectorXd>(&columns_[k])) return *v;
      throw std::out_of_range("table column is not numeric: " + header);
    }
  }
  throw std::out_of_range("no table column named " + header);
}

void Table::check_rows(std::size_t n) {
  if (!columns_.empty() && n != rows_) throw std::invalid_argument("table columns must have equal length");
  rows_ = n;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  const auto& headers = table.headers();
  for (std::size_t k = 0; k < headers.size(); ++k) os << (k ? "," : "") << headers[k];
  os << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t k = 0; k < headers.size(); ++k) {
      if (k) os << ',';
      std::visit(
          [&](const auto& col) {
            using T = std::decay_t<decltype(col)>;
            if constexpr (std::is_same_v<T, Eigen::VectorXd>) {
              os << format_number(col[static_cast<Eigen::Index>(r)]);
            } else {
              os << col[r];
            }
          },
          table.columns()[k]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < table.headers().size(); ++k) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::visit(
        [&](const auto& col) {
          using T = std::decay_t<decltype(col)>;
          if constexpr (std::is_same_v<T, Eigen::VectorXd>) {
            // Round-trip through the CSV text so both formats carry the same digits.
            for (Eigen::Index r = 0; r < col.size(); ++r) arr.push_back(std::stod(format_number(col[r])));
          } else {
            for (const auto& s : col) arr.push_back(s);
          }
        },
        table.columns()[k]);
    obj[table.headers()[k]] = std::move(arr);
  }
  os << obj.dump() << '\n';
}

void write_table(std::ostream& os, const Table& table, TableFormat format) {
  if (format == TableFormat::csv) {
    write_csv(os, table);
  } else {
    write_json(os, table);
  }
}

}  // namespace dwt

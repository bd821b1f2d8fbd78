#include "aro/csv.hpp"

#include <cstdio>
#include <ostream>

namespace aro::csv {

std::string format(double value) {
  char buffer[40];
  // "%.17g" honours the C locale only when the global locale is "C"; the
  // library never changes it.
  const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(n));
}

void write_header(std::ostream& os, const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
}

void write_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format(values[i]);
  }
  os << '\n';
}

}  // namespace aro::csv

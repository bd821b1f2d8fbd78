#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aro::csv {

/// Shortest round-trippable form is not required; every value is written
/// with 17 significant digits and '.' as decimal separator.
std::string format(double value);

void write_header(std::ostream& os, const std::vector<std::string>& columns);
void write_row(std::ostream& os, const std::vector<double>& values);

}  // namespace aro::csv

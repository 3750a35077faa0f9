#include "threadsec/ecdf.hpp"

#include <algorithm>
#include <ostream>

#include "threadsec/io.hpp"

namespace threadsec {

double EcdfTable::at(double x) const {
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  return it == points.begin() ? 0.0 : std::prev(it)->second;
}

EcdfTable ecdf(std::span<const double> values) {
  EcdfTable table;
  if (values.empty()) return table;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    table.points.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return table;
}

GroupedEcdf ecdf_by_group(const std::map<std::string, std::vector<double>>& values) {
  GroupedEcdf out;
  for (const auto& [group, v] : values) out.emplace(group, ecdf(v));
  return out;
}

void write_ecdf_csv(std::ostream& out, const GroupedEcdf& tables) {
  out << "group,x,F\n";
  for (const auto& [group, table] : tables) {
    for (const auto& [x, f] : table.points) out << group << ',' << io::format_double(x) << ',' << io::format_double(f) << '\n';
  }
}

}  // namespace threadsec

#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace threadsec {

/// Empirical CDF: one (x, #{v <= x} / N) point per distinct value, x ascending.
struct EcdfTable {
  std::vector<std::pair<double, double>> points;

  bool empty() const { return points.empty(); }
  /// F(x); 0 below the first point.
  double at(double x) const;
};

EcdfTable ecdf(std::span<const double> values);

/// Keyed by group name; iteration order is the output order.
using GroupedEcdf = std::map<std::string, EcdfTable>;

GroupedEcdf ecdf_by_group(const std::map<std::string, std::vector<double>>& values);

/// `group,x,F`
void write_ecdf_csv(std::ostream& out, const GroupedEcdf& tables);

}  // namespace threadsec

#ifndef RICCI_REPORT_HPP
#define RICCI_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "ricci/quotient.hpp"

namespace ricci {

enum class BoundDirection { upper, lower };

/// One audited inequality.  margin >= 0 means the bound holds:
/// margin = rhs - lhs for upper bounds, lhs - rhs for lower bounds.
struct EstimateReport {
  std::string name;
  std::string paper_eq;  // stable citation tag for the audited estimate
  BoundDirection direction = BoundDirection::upper;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
  bool skipped = false;  // hypothesis failed; not a violation
  std::string note;

  // optional location
  double time = std::numeric_limits<double>::quiet_NaN();
  double center_s = std::numeric_limits<double>::quiet_NaN();
  double center_alpha = std::numeric_limits<double>::quiet_NaN();
  double radius = std::numeric_limits<double>::quiet_NaN();

  std::map<std::string, double> params;

  /// Fill margin/passed from lhs, rhs and the bound direction.
  EstimateReport& finalize();
};

EstimateReport make_report(std::string name, std::string eq, BoundDirection dir,
                           double lhs, double rhs);

std::string csv_header();
std::string csv_row(const EstimateReport& r);
void write_csv(const std::string& path, const std::vector<EstimateReport>& rows);

}  // namespace ricci

#endif

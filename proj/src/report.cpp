#include "ricci/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ricci {

EstimateReport& EstimateReport::finalize() {
  margin = direction == BoundDirection::upper ? rhs - lhs : lhs - rhs;
  passed = skipped ? false : margin >= 0.0;
  return *this;
}

EstimateReport make_report(std::string name, std::string eq, BoundDirection dir,
                           double lhs, double rhs) {
  EstimateReport r;
  r.name = std::move(name);
  r.paper_eq = std::move(eq);
  r.direction = dir;
  r.lhs = lhs;
  r.rhs = rhs;
  r.finalize();
  return r;
}

std::string csv_header() {
  return "name,paper_eq,direction,lhs,rhs,margin,passed,time,center_s,"
         "center_alpha,radius,params_json";
}

std::string csv_row(const EstimateReport& r) {
  std::ostringstream os;
  os.precision(12);
  nlohmann::json j(r.params);
  if (!r.note.empty()) j["note"] = r.note;
  std::string params = j.dump();
  // single-quote the JSON so commas inside stay in one CSV field
  for (char& c : params)
    if (c == '"') c = '\'';
  os << r.name << ',' << r.paper_eq << ','
     << (r.direction == BoundDirection::upper ? "upper" : "lower") << ','
     << r.lhs << ',' << r.rhs << ',' << r.margin << ','
     << (r.skipped ? "skipped" : (r.passed ? "true" : "false")) << ','
     << r.time << ',' << r.center_s << ',' << r.center_alpha << ','
     << r.radius << ',' << '"' << params << '"';
  return os.str();
}

void write_csv(const std::string& path, const std::vector<EstimateReport>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open report file: " + path);
  f << csv_header() << '\n';
  for (const auto& r : rows) f << csv_row(r) << '\n';
}

}  // namespace ricci

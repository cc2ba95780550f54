#include "ddh/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace ddh {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ExperimentReport::sort_rows() {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.field != b.field) return a.field < b.field;
    if (a.estimate.p != b.estimate.p) return a.estimate.p < b.estimate.p;
    return a.estimate.seed < b.estimate.seed;
  });
}

std::string ExperimentReport::to_csv() const {
  std::string out = "n,field,p,method,value,residual,iterations,seed\n";
  for (const ReportRow& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += r.field;
    out += ',';
    out += format_double(r.estimate.p);
    out += ',';
    out += to_string(r.estimate.method);
    out += ',';
    out += format_double(r.estimate.value);
    out += ',';
    out += format_double(r.estimate.residual);
    out += ',';
    out += std::to_string(r.estimate.iterations);
    out += ',';
    out += std::to_string(r.estimate.seed);
    out += '\n';
  }
  return out;
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["field"] = r.field;
    row["p"] = r.estimate.p;
    row["method"] = to_string(r.estimate.method);
    row["value"] = r.estimate.value;
    row["residual"] = r.estimate.residual;
    row["iterations"] = r.estimate.iterations;
    row["seed"] = r.estimate.seed;
    arr.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace ddh

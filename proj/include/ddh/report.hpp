#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddh/analysis.hpp"

namespace ddh {

struct ReportRow {
  int n = 0;
  std::string field;  // descriptor, e.g. "random:p=0.500:d=8:t=003"
  NormEstimate estimate;
};

/// Rows of a norm-growth study. Serialization is byte-deterministic for a
/// fixed row set: rows are sorted by (n, field, p) and numbers printed with
/// 17 significant digits.
struct ExperimentReport {
  std::uint64_t seed = 0;
  std::string tool_version;
  std::vector<ReportRow> rows;

  void sort_rows();

  /// Header "n,field,p,method,value,residual,iterations,seed" plus one line
  /// per row.
  std::string to_csv() const;

  /// {"seed": ..., "tool_version": ..., "rows": [...]} with rows mirroring
  /// the NormEstimate fields.
  std::string to_json() const;
};

/// 17-significant-digit formatting used by both serializers.
std::string format_double(double x);

}  // namespace ddh

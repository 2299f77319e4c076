#pragma once

#include "tyurin/series.hpp"

#include <optional>
#include <string>

namespace tyurin {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct CheckResult {
  std::string checkId;
  Status status = Status::Skipped;
  int maxDegreeChecked = 0;
  std::optional<Mismatch> firstMismatch;
  double wallTime = 0.0;
  std::string note;

  bool passed() const { return status == Status::Pass; }
};

CheckResult compare_series(const std::string& id, const Series& lhs, const Series& rhs,
                           int maxDegree, const std::string& note = "");
CheckResult pass_result(const std::string& id, int maxDegree, const std::string& note = "");
CheckResult fail_result(const std::string& id, int maxDegree, Mismatch m,
                        const std::string& note = "");
CheckResult skipped_result(const std::string& id, const std::string& why);

} // namespace tyurin

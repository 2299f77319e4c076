#include "tyurin/check.hpp"

namespace tyurin {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

CheckResult compare_series(const std::string& id, const Series& lhs, const Series& rhs,
                           int maxDegree, const std::string& note) {
  if (auto m = first_difference(lhs, rhs)) return fail_result(id, maxDegree, std::move(*m), note);
  return pass_result(id, maxDegree, note);
}

CheckResult pass_result(const std::string& id, int maxDegree, const std::string& note) {
  CheckResult r;
  r.checkId = id;
  r.status = Status::Pass;
  r.maxDegreeChecked = maxDegree;
  r.note = note;
  return r;
}

CheckResult fail_result(const std::string& id, int maxDegree, Mismatch m, const std::string& note) {
  CheckResult r;
  r.checkId = id;
  r.status = Status::Fail;
  r.maxDegreeChecked = maxDegree;
  r.firstMismatch = std::move(m);
  r.note = note;
  return r;
}

CheckResult skipped_result(const std::string& id, const std::string& why) {
  CheckResult r;
  r.checkId = id;
  r.status = Status::Skipped;
  r.note = why;
  return r;
}

} // namespace tyurin

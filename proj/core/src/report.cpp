#include "zetafock/report.hpp"

#include <algorithm>

namespace zetafock {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

std::string CheckRecord::key() const { return suite + "\x1f" + name + "\x1f" + params.dump(); }

nlohmann::json CheckRecord::to_json(bool with_timing) const {
  nlohmann::json j{{"suite", suite}, {"name", name}, {"params", params}, {"status", to_string(status)}};
  if (!lhs.is_null()) j["lhs"] = lhs;
  if (!rhs.is_null()) j["rhs"] = rhs;
  if (!witness.is_null()) j["witness"] = witness;
  if (!info.is_null()) j["info"] = info;
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::size_t Report::failed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.passed(); }));
}

void Report::sort() {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.key() < b.key(); });
}

nlohmann::json Report::to_json(bool with_timing) const {
  nlohmann::json recs = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : records) {
    recs.push_back(r.to_json(with_timing));
    if (r.status == Status::Pass) ++passed;
  }
  return {{"records", recs},
          {"summary", {{"total", records.size()}, {"passed", passed}, {"failed", failed()}}}};
}

}  // namespace zetafock

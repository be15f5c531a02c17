#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace zetafock {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

/// Outcome of one verification cell. Exact values are carried as fraction
/// strings or cyclotomic coefficient lists inside the json fields.
struct CheckRecord {
  std::string suite;
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  Status status = Status::Pass;
  nlohmann::json lhs;
  nlohmann::json rhs;
  nlohmann::json witness;
  /// Values reported without a pass/fail judgment.
  nlohmann::json info;
  double elapsed_ms = 0;

  bool passed() const { return status != Status::Fail; }
  /// Canonical key used to order records deterministically.
  std::string key() const;
  nlohmann::json to_json(bool with_timing) const;
};

struct Report {
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const Report& o) { records.insert(records.end(), o.records.begin(), o.records.end()); }
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
  void sort();
  nlohmann::json to_json(bool with_timing) const;
};

}  // namespace zetafock

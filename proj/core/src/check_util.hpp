#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafock/fock.hpp"
#include "zetafock/report.hpp"

namespace zetafock::detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

/// Counts compared cells and keeps the first mismatch as the witness.
class Tally {
 public:
  explicit Tally(const fock::ModeSpace& space) : space_(space) {}

  bool compare(const fock::FockVector& lhs, const fock::FockVector& rhs, const nlohmann::json& where) {
    ++cells_;
    if (!lhs.is_zero() || !rhs.is_zero()) ++nonzero_;
    if (lhs == rhs) return true;
    if (mismatches_++ == 0) {
      witness_ = where;
      lhs_ = fock::to_json(space_, lhs);
      rhs_ = fock::to_json(space_, rhs);
    }
    return false;
  }

  /// Records a failed condition that is not a vector comparison.
  void fail(const nlohmann::json& where) {
    ++cells_;
    if (mismatches_++ == 0) witness_ = where;
  }

  void pass() { ++cells_; }

  std::size_t mismatches() const { return mismatches_; }

  void finish(CheckRecord& rec, std::chrono::steady_clock::time_point t0) const {
    rec.status = mismatches_ == 0 ? Status::Pass : Status::Fail;
    if (!rec.info.is_object()) rec.info = nlohmann::json::object();
    rec.info["cells_compared"] = cells_;
    rec.info["nonzero_cells"] = nonzero_;
    rec.info["mismatches"] = mismatches_;
    if (mismatches_ > 0) {
      rec.witness = witness_;
      rec.lhs = lhs_;
      rec.rhs = rhs_;
    }
    rec.elapsed_ms = ms_since(t0);
  }

 private:
  fock::ModeSpace space_;
  std::size_t cells_ = 0;
  std::size_t nonzero_ = 0;
  std::size_t mismatches_ = 0;
  nlohmann::json witness_;
  nlohmann::json lhs_;
  nlohmann::json rhs_;
};

inline CheckRecord make_record(std::string suite, std::string name, nlohmann::json params) {
  CheckRecord rec;
  rec.suite = std::move(suite);
  rec.name = std::move(name);
  rec.params = std::move(params);
  return rec;
}

inline std::vector<fock::Monomial> basis_upto(const fock::ModeSpace& space, long max_num) {
  std::vector<fock::Monomial> out;
  for (const auto& level : fock::enumerate_basis(space, max_num))
    for (const auto& m : level) out.push_back(m);
  return out;
}

inline fock::FockVector unit(int p, const fock::Monomial& m) {
  return fock::FockVector::basis(p, m, Cyclotomic(p, Rational(1)));
}

/// floor(a / b) for b > 0.
inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace zetafock::detail

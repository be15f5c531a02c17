#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zetafock/cyclotomic.hpp"
#include "zetafock/rational.hpp"

namespace zetafock {

/// Raised whenever a coefficient is requested outside the region where a
/// truncated series is known exactly.
class WindowInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x-type variables carry exponents in (1/p)Z, stored as numerators over p;
/// y-type variables carry plain integer exponents.
enum class VarKind { X, Y };

struct SeriesVar {
  std::string name;
  VarKind kind = VarKind::Y;
  friend bool operator==(const SeriesVar&, const SeriesVar&) = default;
};

/// Exponent bounds (numerators for x-type variables). When `lower_exact` is
/// set the series is known to vanish below `lo`, so the certified region
/// extends to minus infinity; otherwise only [lo, hi] is certified.
struct Window {
  long lo = 0;
  long hi = 0;
  bool lower_exact = true;
  friend bool operator==(const Window&, const Window&) = default;
};

using Exponents = std::vector<long>;

/// Multivariate truncated formal series with generic coefficients.
///
/// Every stored exponent lies inside the window. Arithmetic tracks the window
/// by interval arithmetic; asking for a coefficient outside it throws.
template <class C>
class TruncatedSeries {
 public:
  TruncatedSeries(int p, std::vector<SeriesVar> vars, std::vector<Window> window, C zero)
      : p_(p), vars_(std::move(vars)), window_(std::move(window)), zero_(std::move(zero)) {
    if (vars_.size() != window_.size())
      throw std::invalid_argument("series: one window per variable required");
    for (const auto& w : window_)
      if (w.lo > w.hi + 1) throw std::invalid_argument("series: empty window");
  }

  int p() const { return p_; }
  const std::vector<SeriesVar>& vars() const { return vars_; }
  const std::vector<Window>& window() const { return window_; }
  const std::map<Exponents, C>& terms() const { return terms_; }
  const C& zero() const { return zero_; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw std::invalid_argument("series: unknown variable " + name);
  }

  bool certified(const Exponents& e) const {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > window_[i].hi) return false;
      if (!window_[i].lower_exact && e[i] < window_[i].lo) return false;
    }
    return true;
  }

  bool in_window(const Exponents& e) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < window_[i].lo || e[i] > window_[i].hi) return false;
    return true;
  }

  /// Adds c to the coefficient at e; e must lie inside the window.
  void add_term(const Exponents& e, const C& c) {
    check_exponents(e);
    if (!in_window(e)) throw WindowInsufficient("series: term outside window");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  C coeff(const Exponents& e) const {
    check_exponents(e);
    if (!certified(e)) throw WindowInsufficient("series: coefficient outside certified window");
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  bool same_shape(const TruncatedSeries& o) const { return p_ == o.p_ && vars_ == o.vars_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) { return accumulate(o, false); }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return accumulate(o, true); }

  template <class S>
  TruncatedSeries& scale(const S& s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * s;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  /// Product; requires exact lower bounds on both factors.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("series: product of mismatched series");
    std::vector<Window> w(a.window_.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto& wa = a.window_[i];
      const auto& wb = b.window_[i];
      if (!wa.lower_exact || !wb.lower_exact)
        throw WindowInsufficient("series: product needs exact lower bounds");
      w[i] = {wa.lo + wb.lo, std::min(wa.hi + wb.lo, wa.lo + wb.hi), true};
    }
    TruncatedSeries out(a.p_, a.vars_, w, a.zero_);
    Exponents e(w.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        bool keep = true;
        for (std::size_t i = 0; i < e.size() && keep; ++i) {
          e[i] = ea[i] + eb[i];
          keep = e[i] <= w[i].hi;
        }
        if (keep) out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  /// Restricts the window (and drops terms) to the given bounds.
  TruncatedSeries truncated(const std::vector<Window>& w) const {
    TruncatedSeries out(p_, vars_, w, zero_);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].hi > window_[i].hi)
        throw WindowInsufficient("series: truncation beyond certified window");
      if (w[i].lo < window_[i].lo && !window_[i].lower_exact)
        throw WindowInsufficient("series: truncation below certified window");
      if (w[i].lower_exact && !window_[i].lower_exact)
        throw WindowInsufficient("series: cannot certify exact lower bound");
    }
    for (const auto& [e, c] : terms_)
      if (out.in_window(e)) out.terms_.emplace(e, c);
      else if (w_below_exact(w, e)) throw WindowInsufficient("series: exact lower bound violated");
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.same_shape(b) && a.window_ == b.window_ && a.terms_ == b.terms_;
  }

 private:
  static bool w_below_exact(const std::vector<Window>& w, const Exponents& e) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (w[i].lower_exact && e[i] < w[i].lo) return true;
    return false;
  }

  void check_exponents(const Exponents& e) const {
    if (e.size() != vars_.size()) throw std::invalid_argument("series: exponent arity mismatch");
  }

  TruncatedSeries& accumulate(const TruncatedSeries& o, bool negate) {
    if (!same_shape(o)) throw std::invalid_argument("series: sum of mismatched series");
    for (std::size_t i = 0; i < window_.size(); ++i) {
      auto& w = window_[i];
      const auto& v = o.window_[i];
      const bool exact = w.lower_exact && v.lower_exact;
      w = {exact ? std::min(w.lo, v.lo) : std::max(w.lo, v.lo), std::min(w.hi, v.hi), exact};
    }
    for (auto it = terms_.begin(); it != terms_.end();)
      it = in_window(it->first) ? std::next(it) : terms_.erase(it);
    for (const auto& [e, c] : o.terms_) {
      if (!in_window(e)) continue;
      add_term(e, negate ? c * Rational(-1) : c);
    }
    return *this;
  }

  int p_;
  std::vector<SeriesVar> vars_;
  std::vector<Window> window_;
  C zero_;
  std::map<Exponents, C> terms_;
};

// ---------------------------------------------------------------------------
// Univariate Laurent series over Q in a y-type variable.

using Laurent = TruncatedSeries<Rational>;

/// Empty series in one variable, certified on [lo, hi] with exact lower bound.
Laurent laurent_zero(const std::string& var, long lo, long hi);
/// The monomial c * var^e, certified up to `hi`.
Laurent laurent_monomial(const std::string& var, long e, const Rational& c, long hi);
/// e^{a var} up to var^hi.
Laurent exp_series(const std::string& var, const Rational& a, long hi);
/// Lowest exponent carrying a nonzero coefficient; throws if the series is zero.
long leading_exponent(const Laurent& s);
/// Multiplicative inverse; the leading coefficient must be nonzero.
Laurent inverse(const Laurent& s);
/// s^n for any integer n (negative powers go through inverse).
Laurent power(const Laurent& s, long n);
/// d/dvar.
Laurent derivative(const Laurent& s);
/// (e^var - 1)^n for any integer n, certified up to var^hi.
Laurent exp_minus_one_power(const std::string& var, long n, long hi);
/// log(1+var)^n for any integer n, certified up to var^hi.
Laurent log_one_plus_power(const std::string& var, long n, long hi);
/// (1+var)^lambda for rational lambda, certified up to var^hi.
Laurent one_plus_power(const std::string& var, const Rational& lambda, long hi);
/// Coefficient of var^-1.
Rational residue(const Laurent& s);

// ---------------------------------------------------------------------------
// Operations of the formal-calculus kernel.

/// Substitutes var^{m/p} -> w_p^{s m} (x2 + x0)^{m/p}, expanding in nonnegative
/// powers of x0 (targets = {x2, x0}). The output is certified on
/// `out_window` for the (x2, x0) pair and on the original windows of the other
/// variables; throws WindowInsufficient if that region cannot be certified.
TruncatedSeries<Cyclotomic> series_substitute_root(const TruncatedSeries<Cyclotomic>& series,
                                                   const std::string& var, long s,
                                                   const std::pair<std::string, std::string>& targets,
                                                   const std::pair<Window, Window>& out_window);

/// Checks Res_x h(x) == Res_y h(F(y)) F'(y) for h Laurent in x and F in y*Q[[y]]
/// with invertible linear coefficient.
bool residue_change_of_variable_check(const Laurent& h, const Laurent& f);

}  // namespace zetafock

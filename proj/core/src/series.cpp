#include "zetafock/series.hpp"

namespace zetafock {

Laurent laurent_zero(const std::string& var, long lo, long hi) {
  return Laurent(1, {{var, VarKind::Y}}, {{lo, hi, true}}, Rational(0));
}

Laurent laurent_monomial(const std::string& var, long e, const Rational& c, long hi) {
  Laurent out = laurent_zero(var, e, std::max(e, hi));
  if (!c.is_zero()) out.add_term({e}, c);
  return out;
}

Laurent exp_series(const std::string& var, const Rational& a, long hi) {
  Laurent out = laurent_zero(var, 0, hi);
  Rational term(1);
  for (long n = 0; n <= hi; ++n) {
    if (!term.is_zero()) out.add_term({n}, term);
    term = term * a / Rational(n + 1);
  }
  return out;
}

long leading_exponent(const Laurent& s) {
  if (!s.window()[0].lower_exact) throw WindowInsufficient("laurent: leading term not certified");
  if (s.terms().empty()) throw std::domain_error("laurent: series is zero on its window");
  return s.terms().begin()->first[0];
}

Laurent inverse(const Laurent& s) {
  const long v = leading_exponent(s);
  const long known = s.window()[0].hi - v;
  const std::string& var = s.vars()[0].name;
  std::vector<Rational> c(static_cast<std::size_t>(known) + 1, Rational(0));
  for (const auto& [e, q] : s.terms()) c[static_cast<std::size_t>(e[0] - v)] = q;
  std::vector<Rational> d(c.size(), Rational(0));
  const Rational inv0 = Rational(1) / c[0];
  d[0] = inv0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    Rational acc(0);
    for (std::size_t i = 1; i <= n; ++i) acc += c[i] * d[n - i];
    d[n] = -acc * inv0;
  }
  Laurent out = laurent_zero(var, -v, -v + known);
  for (std::size_t n = 0; n < d.size(); ++n)
    if (!d[n].is_zero()) out.add_term({-v + static_cast<long>(n)}, d[n]);
  return out;
}

Laurent power(const Laurent& s, long n) {
  if (n < 0) return power(inverse(s), -n);
  const std::string& var = s.vars()[0].name;
  // The identity is known to all orders; cap its window far above s.
  Laurent acc = laurent_monomial(var, 0, Rational(1),
                                 s.window()[0].hi + std::max(0L, -s.window()[0].lo) * n + 1);
  Laurent base = s;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

Laurent derivative(const Laurent& s) {
  const auto& w = s.window()[0];
  Laurent fixed(1, s.vars(), {{w.lo - 1, w.hi - 1, w.lower_exact}}, Rational(0));
  for (const auto& [e, c] : s.terms())
    if (e[0] != 0) fixed.add_term({e[0] - 1}, c * Rational(e[0]));
  return fixed;
}

namespace {

// Series with leading term var^1, certified to var^(order).
Laurent exp_minus_one(const std::string& var, long order) {
  Laurent out = laurent_zero(var, 1, order);
  Rational term(1);
  for (long n = 1; n <= order; ++n) {
    term = term / Rational(n);
    out.add_term({n}, term);
  }
  return out;
}

Laurent log_one_plus(const std::string& var, long order) {
  Laurent out = laurent_zero(var, 1, order);
  for (long n = 1; n <= order; ++n) out.add_term({n}, Rational((n % 2) ? 1 : -1, n));
  return out;
}

template <class Base>
Laurent leading_one_power(const std::string& var, long n, long hi, Base base) {
  if (n == 0) return laurent_monomial(var, 0, Rational(1), hi);
  if (hi < n) return laurent_zero(var, n, n - 1);
  // base on [1, K] raised to n >= 0 is certified on [n, K + n - 1];
  // for n < 0 the inverse is certified on [-1, K - 2] and its |n|-th power on [n, K - 1 - |n|].
  const long order = n > 0 ? hi - n + 1 : hi + 1 - n;
  Laurent full = power(base(var, order), n);
  return full.truncated({{n, hi, true}});
}

}  // namespace

Laurent exp_minus_one_power(const std::string& var, long n, long hi) {
  return leading_one_power(var, n, hi, exp_minus_one);
}

Laurent log_one_plus_power(const std::string& var, long n, long hi) {
  return leading_one_power(var, n, hi, log_one_plus);
}

Laurent one_plus_power(const std::string& var, const Rational& lambda, long hi) {
  Laurent out = laurent_zero(var, 0, hi);
  for (long i = 0; i <= hi; ++i) {
    const Rational c = binomial(lambda, i);
    if (!c.is_zero()) out.add_term({i}, c);
  }
  return out;
}

Rational residue(const Laurent& s) { return s.coeff({-1}); }

TruncatedSeries<Cyclotomic> series_substitute_root(const TruncatedSeries<Cyclotomic>& series,
                                                   const std::string& var, long s,
                                                   const std::pair<std::string, std::string>& targets,
                                                   const std::pair<Window, Window>& out_window) {
  const int p = series.p();
  const std::size_t iv = series.index_of(var);
  if (series.vars()[iv].kind != VarKind::X)
    throw std::invalid_argument("substitute_root: variable must be x-type");
  const auto& [x2name, x0name] = targets;
  auto find = [&](const std::string& n) -> long {
    for (std::size_t i = 0; i < series.vars().size(); ++i)
      if (series.vars()[i].name == n) return static_cast<long>(i);
    return -1;
  };
  const long i2 = find(x2name);
  const long i0 = find(x0name);
  const Window wa = series.window()[iv];
  const Window wb = i2 >= 0 ? series.window()[static_cast<std::size_t>(i2)] : Window{0, 0, true};
  const Window wz = i0 >= 0 ? series.window()[static_cast<std::size_t>(i0)] : Window{0, 0, true};
  const auto& [req2, req0] = out_window;

  if (!wa.lower_exact || !wb.lower_exact || !wz.lower_exact)
    throw WindowInsufficient("substitute_root: inputs need exact lower bounds");
  if (req0.lo < 0 && i0 < 0) throw std::invalid_argument("substitute_root: negative x0 window");
  if (i0 >= 0 && req0.hi > wz.hi)
    throw WindowInsufficient("substitute_root: x0 window exceeds the input's");
  // Every contributing (a, b) pair satisfies a + b = e2 + p * I with I <= hi0 - lo_z.
  const long sum_max = req2.hi + static_cast<long>(p) * (req0.hi - (i0 >= 0 ? wz.lo : 0));
  if (sum_max - wb.lo > wa.hi || (i2 >= 0 && sum_max - wa.lo > wb.hi))
    throw WindowInsufficient("substitute_root: requested region cannot be certified");

  // Output variables: inputs minus `var`, then x2 and x0 appended when absent.
  std::vector<SeriesVar> vars;
  std::vector<Window> win;
  std::vector<long> from;  // input index per output variable (-1: appended)
  for (std::size_t i = 0; i < series.vars().size(); ++i) {
    if (i == iv) continue;
    vars.push_back(series.vars()[i]);
    from.push_back(static_cast<long>(i));
    if (static_cast<long>(i) == i2) win.push_back({req2.lo, req2.hi, false});
    else if (static_cast<long>(i) == i0) win.push_back({req0.lo, req0.hi, req0.lo <= wz.lo});
    else win.push_back(series.window()[i]);
  }
  if (i2 < 0) {
    vars.push_back({x2name, VarKind::X});
    win.push_back({req2.lo, req2.hi, false});
    from.push_back(-1);
  }
  if (i0 < 0) {
    vars.push_back({x0name, VarKind::Y});
    win.push_back({req0.lo, req0.hi, req0.lo <= 0});
    from.push_back(-2);
  }
  const std::size_t o2 = i2 >= 0 ? static_cast<std::size_t>(std::find(from.begin(), from.end(), i2) - from.begin())
                                 : vars.size() - (i0 < 0 ? 2 : 1);
  const std::size_t o0 = i0 >= 0 ? static_cast<std::size_t>(std::find(from.begin(), from.end(), i0) - from.begin())
                                 : vars.size() - 1;

  TruncatedSeries<Cyclotomic> out(p, vars, win, Cyclotomic(p));
  Exponents e(vars.size(), 0);
  for (const auto& [ein, c] : series.terms()) {
    const long a = ein[iv];
    const Cyclotomic phase = Cyclotomic::root_of_unity(p, s * a) * c;
    for (std::size_t k = 0; k < vars.size(); ++k)
      e[k] = from[k] >= 0 ? ein[static_cast<std::size_t>(from[k])] : 0;
    const long base2 = e[o2];
    const long base0 = e[o0];
    const Rational apow(a, p);
    for (long I = 0; base0 + I <= req0.hi; ++I) {
      e[o0] = base0 + I;
      e[o2] = base2 + a - static_cast<long>(p) * I;
      if (e[o2] < req2.lo) break;
      if (e[o0] < req0.lo || e[o2] > req2.hi) continue;
      bool inside = true;
      for (std::size_t k = 0; k < vars.size(); ++k)
        if (e[k] < win[k].lo || e[k] > win[k].hi) inside = false;
      if (!inside) continue;
      const Rational b = binomial(apow, I);
      if (!b.is_zero()) out.add_term(e, phase * b);
    }
  }
  return out;
}

bool residue_change_of_variable_check(const Laurent& h, const Laurent& f) {
  if (leading_exponent(f) != 1)
    throw std::invalid_argument("residue check: F must have zero constant and nonzero linear term");
  if (!h.window()[0].lower_exact)
    throw WindowInsufficient("residue check: h needs a bounded pole order");
  const Rational lhs = residue(h);
  const Laurent df = derivative(f);
  Rational rhs(0);
  // Terms h_k x^k with k >= 0 pull back to power series and have no residue.
  for (const auto& [e, c] : h.terms()) {
    if (e[0] >= 0) break;
    rhs += c * residue(power(f, e[0]) * df);
  }
  return lhs == rhs;
}

}  // namespace zetafock

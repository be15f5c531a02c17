#include <array>
#include <optional>
#include <set>

#include "check_util.hpp"
#include "zetafock/field_checks.hpp"
#include "zetafock/fock_checks.hpp"

namespace zetafock::fields {

using detail::basis_upto;
using detail::Tally;
using detail::unit;
using fock::FockVector;

namespace {

Rational sign(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

long mod(long a, long p) { return ((a % p) + p) % p; }

std::string frac(long num, int p) { return Rational(num, p).str(); }

/// Sum over k of d_k e^{a k u / p}, minus the constant `shift`, up to u^hi.
Laurent weighted_exponentials(const fock::TwistSetup& setup, const Rational& a, const Rational& shift, long hi) {
  Laurent out = laurent_zero("u", 0, hi);
  for (int k = 0; k < setup.p; ++k) {
    const long dk = setup.dims[static_cast<std::size_t>(k)];
    if (dk == 0) continue;
    Laurent e = exp_series("u", a * Rational(k, setup.p), hi);
    e.scale(Rational(dk));
    out += e;
  }
  if (!shift.is_zero()) out -= laurent_monomial("u", 0, shift, hi);
  return out;
}

/// (1/2) d/du of numerator / (1 - e^u), certified to u^hi.
Laurent half_derivative_over(const Laurent& numerator, long hi) {
  Laurent den = exp_minus_one_power("u", -1, hi + 2);
  den.scale(Rational(-1));
  Laurent f = derivative(numerator * den);
  f.scale(Rational(1, 2));
  return f.truncated({{f.window()[0].lo, hi, true}});
}

/// Coefficients of c0 + c1 j + ... as a polynomial product.
std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Rational> poly_pow(const std::vector<Rational>& a, long n) {
  std::vector<Rational> out{Rational(1)};
  for (long i = 0; i < n; ++i) out = poly_mul(out, a);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials in y1..y4 truncated by total degree.

using Exp4 = std::array<long, 4>;

class Poly4 {
 public:
  explicit Poly4(long max_total) : max_(max_total) {}

  static Poly4 constant(long max_total, const Rational& c) {
    Poly4 out(max_total);
    out.add({0, 0, 0, 0}, c);
    return out;
  }

  /// Linear form sum_i c_i y_i.
  static Poly4 linear(long max_total, const std::array<long, 4>& c) {
    Poly4 out(max_total);
    for (std::size_t i = 0; i < 4; ++i) {
      Exp4 e{0, 0, 0, 0};
      e[i] = 1;
      if (c[i] != 0) out.add(e, Rational(c[i]));
    }
    return out;
  }

  long max_total() const { return max_; }
  const std::map<Exp4, Rational>& terms() const { return terms_; }

  Rational coeff(const Exp4& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Exp4& e, const Rational& c) {
    if (total(e) > max_ || c.is_zero()) return;
    Rational& slot = terms_[e];
    slot += c;
    if (slot.is_zero()) terms_.erase(e);
  }

  Poly4& operator+=(const Poly4& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }

  Poly4 scaled(const Rational& s) const {
    Poly4 out(max_);
    for (const auto& [e, c] : terms_) out.add(e, c * s);
    return out;
  }

  friend Poly4 operator*(const Poly4& a, const Poly4& b) {
    Poly4 out(std::min(a.max_, b.max_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, ca * cb);
    return out;
  }

  Poly4 power(long n) const {
    Poly4 out = constant(max_, Rational(1));
    for (long i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  /// sum_n coeffs[n] * this^n.
  Poly4 substitute_into(const std::vector<Rational>& coeffs) const {
    Poly4 out(max_);
    Poly4 pw = constant(max_, Rational(1));
    for (const auto& c : coeffs) {
      out += pw.scaled(c);
      pw = pw * *this;
    }
    return out;
  }

  /// d/dy_i; the result is truncated one degree lower.
  Poly4 derivative(std::size_t i) const {
    Poly4 out(max_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exp4 f = e;
      --f[i];
      out.add(f, c * Rational(e[i]));
    }
    return out;
  }

 private:
  static long total(const Exp4& e) { return e[0] + e[1] + e[2] + e[3]; }
  long max_;
  std::map<Exp4, Rational> terms_;
};

/// Taylor coefficients of e^{a t} up to t^n.
std::vector<Rational> exp_coeffs(const Rational& a, long n) {
  std::vector<Rational> out;
  Rational term(1);
  for (long i = 0; i <= n; ++i) {
    out.push_back(term);
    term = term * a / Rational(i + 1);
  }
  return out;
}

Poly4 exp_linear(long max_total, const std::array<long, 4>& c, const Rational& a) {
  return Poly4::linear(max_total, c).substitute_into(exp_coeffs(a, max_total));
}

// ---------------------------------------------------------------------------
// Exact linear solve over Q(w_p).

/// Solves sum_i x_i columns[i] = target; returns nullopt if inconsistent.
std::optional<std::vector<Cyclotomic>> solve(int p, const std::vector<std::vector<Cyclotomic>>& columns,
                                             const std::vector<Cyclotomic>& target) {
  const std::size_t rows = target.size();
  const std::size_t cols = columns.size();
  std::vector<std::vector<Cyclotomic>> a(rows, std::vector<Cyclotomic>(cols + 1, Cyclotomic(p)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = columns[c][r];
    a[r][cols] = target[r];
  }
  std::vector<long> pivot_row(cols, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    const Cyclotomic inv = a[row][c].inverse();
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Cyclotomic f = a[r][c];
      for (std::size_t k = c; k <= cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_row[c] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (!a[r][cols].is_zero()) return std::nullopt;
  std::vector<Cyclotomic> x(cols, Cyclotomic(p));
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_row[c] >= 0) x[c] = a[static_cast<std::size_t>(pivot_row[c])][cols];
  return x;
}

/// Operator restricted to a finite set of inputs, as a map (input, output) -> entry.
using Flat = std::map<std::pair<fock::Monomial, fock::Monomial>, Cyclotomic>;

Flat flatten(const std::vector<fock::Monomial>& inputs, const std::vector<FockVector>& images) {
  Flat out;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const auto& [m, c] : images[i].terms()) out[{inputs[i], m}] = c;
  return out;
}

}  // namespace

Laurent correction_series(const fock::TwistSetup& setup, Variant variant, long hi) {
  const Rational shift = variant == Variant::Plain ? Rational(setup.total_dim()) : Rational(0);
  return half_derivative_over(weighted_exponentials(setup, Rational(1), shift, hi + 2), hi);
}

QuadOperator generating_L(const fock::TwistSetup& setup, long r1, long r2, long n, Variant variant) {
  const fock::ModeSpace space = fock::ModeSpace::twisted(setup);
  const int p = setup.p;
  QuadOperator op(p, n * space.q());
  // e^{-j y1} e^{-(n-j) y2} at y1^r1 y2^r2 / (r1! r2!) is (-j)^r1 (j - n)^r2.
  const auto kernel = poly_mul(poly_pow({Rational(0), Rational(-1)}, r1), poly_pow({Rational(-n), Rational(1)}, r2));
  std::vector<Cyclotomic> half;
  for (const auto& c : kernel) half.emplace_back(p, c * Rational(1, 2));
  for (int s = 0; s < static_cast<int>(space.species().size()); ++s) op.bilinear[{s, space.partner(s)}] = half;
  if (n == 0) {
    // The scalar is (1/2) F'(y2 - y1) at y1^r1 y2^r2 / (r1! r2!).
    const long m = r1 + r2;
    const Rational cm = correction_series(setup, variant, m).coeff({m});
    op.scalar = Cyclotomic(p, factorial(r1) * factorial(r2) * binomial(Rational(m), r2) * sign(r1) * cm);
  }
  return op;
}

CheckRecord genfun_check(const fock::TwistSetup& setup, long r_max, long n_max, Variant variant) {
  const auto t0 = std::chrono::steady_clock::now();
  const bool bar = variant == Variant::Bar;
  CheckRecord rec = detail::make_record(
      "genfun", bar ? "generating_function_bar" : "generating_function_plain",
      {{"setup", setup}, {"r_max", r_max}, {"n_max", n_max}});
  const fock::ModeSpace space = fock::ModeSpace::twisted(setup);
  Tally tally(space);
  const auto note = [&](bool ok, const nlohmann::json& where) {
    if (ok) tally.pass();
    else tally.fail(where);
  };

  for (long r = 0; r <= r_max; ++r)
    for (long n = -n_max; n <= n_max; ++n)
      note(generating_L(setup, r, r, n, variant).canonical() == fock::quad_operator(setup, r, r, n, variant).canonical(),
           {{"check", "diagonal_extraction"}, {"r", r}, {"n", n}});

  const Laurent f = correction_series(setup, variant, 2 * r_max + 2);
  const Rational expected_pole = bar ? Rational(setup.total_dim(), 2) : Rational(0);
  note(f.coeff({-2}) == expected_pole, {{"check", "singular_part"}, {"order", -2}, {"value", f.coeff({-2}).str()}});
  note(f.coeff({-1}).is_zero(), {{"check", "singular_part"}, {"order", -1}, {"value", f.coeff({-1}).str()}});
  if (!bar && setup.p == 1) note(f.terms().empty(), {{"check", "untwisted_plain_vanishes"}});

  // Symmetry under y1 <-> y2 together with n -> n.
  for (long r1 = 0; r1 <= r_max; ++r1)
    for (long r2 = 0; r2 <= r_max; ++r2)
      for (long n = -n_max; n <= n_max; ++n) {
        const QuadOperator a = generating_L(setup, r1, r2, n, variant);
        const QuadOperator b = generating_L(setup, r2, r1, n, variant);
        note(a.scalar == b.scalar, {{"check", "scalar_symmetry"}, {"r1", r1}, {"r2", r2}, {"n", n}});
      }

  // Numerator sum_k (d_k e^{ku/p} - 1) read literally.
  const Laurent literal =
      half_derivative_over(weighted_exponentials(setup, Rational(1), Rational(setup.p), 2), 0);
  nlohmann::json singular = nlohmann::json::object();
  for (long e = -2; e <= -1; ++e) singular[std::to_string(e)] = f.coeff({e}).str();
  rec.info = {{"singular_part", singular}, {"literal_numerator_pole", literal.coeff({-2}).str()}};
  tally.finish(rec, t0);
  return rec;
}

CheckRecord iterate_identity_check(FieldEngine& eng, long k, long order, long n_max, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& setup = eng.space().setup();
  CheckRecord rec = detail::make_record(
      "iterates", "iterate_identity",
      {{"setup", setup}, {"k", k}, {"order", order}, {"n_max", n_max}, {"max_degree", max_degree.str()}});
  const int p = eng.p();
  const auto& space = eng.space();
  const int ns = static_cast<int>(space.species().size());
  Tally tally(space);
  const auto note = [&](bool ok, const nlohmann::json& where) {
    if (ok) tally.pass();
    else tally.fail(where);
  };

  // (i) Contraction part of the k-prefactor limit against the bar correction at u = -t.
  const long hi = 2 * order + 2;
  Laurent bar = correction_series(setup, Variant::Bar, hi);
  Laurent bar_neg = laurent_zero("t", bar.window()[0].lo, hi);
  for (const auto& [e, c] : bar.terms()) bar_neg.add_term(e, c * sign(e[0]));
  for (long kk : {k, k + 1}) {
    Laurent limit = laurent_zero("t", -kk, hi);
    for (int s = 0; s < ns; ++s) {
      const long cls = space.level_class(s);
      for (long e = -kk * p + 1; e <= 0; ++e) {
        if (mod(e - cls, p) != 0) continue;
        Rational coef(0);
        for (long i = 0; i <= kk; ++i)
          if (e + i * p > 0) coef += binomial(Rational(kk), i) * sign(kk - i) * Rational(e + i * p, p);
        if (coef.is_zero()) continue;
        Laurent term = exp_series("t", -Rational(e, p), hi + kk) * exp_minus_one_power("t", -kk, hi);
        term.scale(coef * Rational(1, 2));
        limit += term.truncated({{-kk, hi, true}});
      }
    }
    for (long e = -kk; e <= hi; ++e)
      note(limit.coeff({e}) == bar_neg.coeff({e}),
           {{"check", "contraction_limit"}, {"k", kk}, {"t", e}, {"lhs", limit.coeff({e}).str()},
            {"rhs", bar_neg.coeff({e}).str()}});
  }

  // (ii) Assembled iterates of beta(-1)1 with its partner against the bar operators.
  const auto basis = basis_upto(space, fock::degree_numerator(setup, max_degree));
  const auto g_mode = [&](long j, long n, const fock::Monomial& w, long extra) {
    FockVector out(p);
    for (int s = 0; s < ns; ++s)
      out += eng.homogeneous_iterate({{s, -1}}, {{space.partner(s), -1}}, 0, j, n * p, w, extra);
    return out * Rational(1, 2);
  };
  for (long extra : {k - 2, k - 1}) {
    for (long n = -n_max; n <= n_max; ++n) {
      for (const auto& w : basis) {
        const FockVector wv = unit(p, w);
        tally.compare(g_mode(-2, n, w, extra), n == 0 ? wv * Rational(setup.total_dim(), 2) : FockVector(p),
                      {{"check", "singular"}, {"y", -2}, {"n", n}, {"k", 2 + extra}});
        tally.compare(g_mode(-1, n, w, extra), FockVector(p), {{"check", "singular"}, {"y", -1}, {"n", n}, {"k", 2 + extra}});
        for (long r1 = 0; r1 <= order; ++r1) {
          for (long r2 = 0; r2 <= order; ++r2) {
            FockVector rhs(p);
            for (long a = 0; a <= r2; ++a) {
              const Rational c = factorial(r1) * factorial(r2) * binomial(Rational(r1 + a), a) * sign(a) *
                                 pow(Rational(-n), r2 - a) / factorial(r2 - a);
              if (!c.is_zero()) rhs += g_mode(r1 + a, n, w, extra) * c;
            }
            tally.compare(fock::apply_operator(space, generating_L(setup, r1, r2, n, Variant::Bar), w), rhs,
                          {{"check", "bar_operator"}, {"r1", r1}, {"r2", r2}, {"n", n}, {"k", 2 + extra},
                           {"w", fock::monomial_json(space, w)}});
          }
        }
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

namespace {

/// Regular part of H_m(s) = 2 s^{-3} (e^{-ms} - 1) + m s^{-2} (e^{-ms} + 1), up to s^hi.
/// Throws if a negative power survives.
std::vector<Rational> h_coeffs(long m, long hi) {
  Laurent e = exp_series("s", Rational(-m), hi + 3);
  Laurent a = e;
  a -= laurent_monomial("s", 0, Rational(1), hi + 3);
  Laurent b = e;
  b += laurent_monomial("s", 0, Rational(1), hi + 3);
  Laurent h = a * laurent_monomial("s", -3, Rational(2), hi);
  h += b * laurent_monomial("s", -2, Rational(m), hi);
  for (long j = -3; j < 0; ++j)
    if (!h.coeff({j}).is_zero()) throw std::logic_error("H_m has a pole");
  std::vector<Rational> out;
  for (long j = 0; j <= hi; ++j) out.push_back(h.coeff({j}));
  return out;
}

struct BracketRhs {
  /// (b1, b2) -> polynomial multiplying the bar operator L^(b1,b2)(M+N).
  std::map<std::pair<long, long>, Poly4> ops;
  /// Multiple of the identity.
  std::optional<Poly4> scalar;
};

/// Right side of the bracket of two bar generating functions, coefficients up
/// to total y-order `order`.
BracketRhs lbar_bracket_rhs(const fock::TwistSetup& setup, long order, long M, long N) {
  const long D = order + 1;
  BracketRhs out;
  const auto y = [&](std::size_t i) {
    std::array<long, 4> c{0, 0, 0, 0};
    c[i] = 1;
    return Poly4::linear(D, c);
  };
  struct Term {
    std::array<long, 4> first;
    std::size_t second;
    std::array<long, 4> exp_form;
    std::size_t diff;
  };
  const std::array<Term, 4> terms{{
      {{-1, 1, 1, 0}, 3, {1, 0, -1, 0}, 0},
      {{-1, 1, 0, 1}, 2, {1, 0, 0, -1}, 0},
      {{1, -1, 1, 0}, 3, {0, 1, -1, 0}, 1},
      {{1, -1, 0, 1}, 2, {0, 1, 0, -1}, 1},
  }};
  for (long b1 = 0; b1 <= D; ++b1) {
    for (long b2 = 0; b1 + b2 <= D; ++b2) {
      Poly4 acc(order);
      for (const auto& t : terms) {
        const Poly4 base = Poly4::linear(D, t.first).power(b1) * y(t.second).power(b2) *
                           exp_linear(D, t.exp_form, Rational(-M));
        acc += base.scaled(Rational(-1, 2) / (factorial(b1) * factorial(b2))).derivative(t.diff);
      }
      if (!acc.terms().empty()) out.ops.emplace(std::make_pair(b1, b2), std::move(acc));
    }
  }
  if (M + N == 0) {
    const long m = -M;
    const auto h = h_coeffs(m, order);
    const Poly4 sa = Poly4::linear(order, {-1, 1, 1, -1});
    const Poly4 sb = Poly4::linear(order, {-1, 1, -1, 1});
    Poly4 s = exp_linear(order, {0, 1, 0, -1}, Rational(m)) * sa.substitute_into(h);
    s += exp_linear(order, {0, 1, -1, 0}, Rational(m)) * sb.substitute_into(h);
    out.scalar = s.scaled(Rational(-setup.total_dim(), 4));
  }
  return out;
}

}  // namespace

CheckRecord lbar_bracket_check(const fock::TwistSetup& setup, long order, long n_max, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec = detail::make_record(
      "genfun", "lbar_bracket",
      {{"setup", setup}, {"order", order}, {"n_max", n_max}, {"max_degree", max_degree.str()}});
  const fock::ModeSpace space = fock::ModeSpace::twisted(setup);
  const int p = setup.p;
  const auto basis = basis_upto(space, fock::degree_numerator(setup, max_degree));
  fock::OperatorCache cache(space);
  const auto apply = [&](long r1, long r2, long n, const FockVector& v) {
    const std::string key = std::to_string(r1) + "," + std::to_string(r2) + "," + std::to_string(n);
    return cache.apply(key, generating_L(setup, r1, r2, n, Variant::Bar), v);
  };
  std::vector<Exp4> exps;
  for (long a1 = 0; a1 <= order; ++a1)
    for (long a2 = 0; a1 + a2 <= order; ++a2)
      for (long a3 = 0; a1 + a2 + a3 <= order; ++a3)
        for (long a4 = 0; a1 + a2 + a3 + a4 <= order; ++a4) exps.push_back({a1, a2, a3, a4});
  Tally tally(space);
  for (long M = -n_max; M <= n_max; ++M) {
    for (long N = -n_max; N <= n_max; ++N) {
      const BracketRhs rhs = lbar_bracket_rhs(setup, order, M, N);
      const BracketRhs swapped = lbar_bracket_rhs(setup, order, N, M);
      for (const auto& w : basis) {
        const FockVector wv = unit(p, w);
        std::map<std::pair<long, long>, FockVector> images;
        const auto image = [&](std::pair<long, long> b) -> const FockVector& {
          auto it = images.find(b);
          if (it == images.end()) it = images.emplace(b, apply(b.first, b.second, M + N, wv)).first;
          return it->second;
        };
        const auto evaluate = [&](const BracketRhs& r, const Exp4& a) {
          FockVector out(p);
          for (const auto& [b, poly] : r.ops) {
            const Rational c = poly.coeff(a);
            if (!c.is_zero()) out += image(b) * c;
          }
          if (r.scalar) out += wv * r.scalar->coeff(a);
          return out;
        };
        for (const auto& a : exps) {
          const Rational norm = factorial(a[0]) * factorial(a[1]) * factorial(a[2]) * factorial(a[3]);
          const FockVector lhs = (apply(a[0], a[1], M, apply(a[2], a[3], N, wv)) -
                                  apply(a[2], a[3], N, apply(a[0], a[1], M, wv))) *
                                 (Rational(1) / norm);
          const nlohmann::json where{{"y", a}, {"M", M}, {"N", N}, {"w", fock::monomial_json(space, w)}};
          tally.compare(lhs, evaluate(rhs, a), where);
          const Exp4 sw{a[2], a[3], a[0], a[1]};
          tally.compare(evaluate(rhs, a), evaluate(swapped, sw) * Rational(-1),
                        {{"check", "antisymmetry"}, {"y", a}, {"M", M}, {"N", N}, {"w", fock::monomial_json(space, w)}});
        }
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

namespace {

/// Scalar coefficient of y^{-2} in Y[a, y] b; the y^{-1} coefficient must vanish.
Cyclotomic double_pole(const voa::Voa& V, const FockVector& a, const FockVector& b) {
  if (!V.square_bracket_coeff(a, b, -1).is_zero()) throw std::logic_error("unexpected simple pole");
  const FockVector c = V.square_bracket_coeff(a, b, -2);
  return c.coeff({});
}

using Grid = std::map<std::pair<long, long>, FockVector>;

}  // namespace

CheckRecord iterate_commutator_check(FieldEngine& eng, const Monomial& u1, const Monomial& v1,
                                     const Monomial& u2, const Monomial& v2, long order, long n_max,
                                     const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& setup = eng.space().setup();
  const voa::Voa& V = eng.voa();
  CheckRecord rec = detail::make_record(
      "iterates", "iterate_commutator",
      {{"setup", setup},
       {"u1", fock::monomial_json(V.space(), u1)},
       {"v1", fock::monomial_json(V.space(), v1)},
       {"u2", fock::monomial_json(V.space(), u2)},
       {"v2", fock::monomial_json(V.space(), v2)},
       {"order", order},
       {"n_max", n_max},
       {"max_degree", max_degree.str()}});
  const int p = eng.p();
  const auto& space = eng.space();
  const auto cls = [&](const Monomial& m) {
    long k = 0;
    for (const auto& mode : m) k += space.species()[static_cast<std::size_t>(mode.species)].k;
    return k;
  };
  const FockVector U1 = unit(p, u1), V1 = unit(p, v1), U2 = unit(p, u2), V2 = unit(p, v2);
  const FockVector vac = V.vacuum();
  const long j1_lo = -(order + 3), j2_lo = -2;
  const long zi_lo = -(order + 3);
  const auto basis = basis_upto(space, fock::degree_numerator(setup, max_degree));
  Tally tally(space);

  // Vector-valued series in (y1, y2) per r, before the mode-dependent factors.
  struct Parts {
    Cyclotomic k1, k2, k3, k4;
    Grid w1, w2, z3, z4;
  };
  std::vector<Parts> parts;
  for (long r = 0; r < p; ++r) {
    const FockVector u2r = V.nu_power(U2, -r), v2r = V.nu_power(V2, -r);
    Parts pt{double_pole(V, V1, u2r), double_pole(V, V1, v2r), double_pole(V, U1, u2r), double_pole(V, U1, v2r),
             {}, {}, {}, {}};
    for (long j = 0; j <= order; ++j) {
      const FockVector a1 = V.square_bracket_coeff(v2r, vac, j) * sign(j);
      const FockVector a2 = V.square_bracket_coeff(u2r, vac, j);
      for (long i = zi_lo; i <= order + 1; ++i) {
        pt.w1[{i, j}] = V.square_bracket_coeff(U1, a1, i);
        pt.w2[{i, j}] = V.square_bracket_coeff(U1, a2, i);
        pt.z3[{i, j}] = V.square_bracket_coeff(a1, V1, i);
        pt.z4[{i, j}] = V.square_bracket_coeff(a2, V1, i);
      }
    }
    parts.push_back(std::move(pt));
  }
  const auto at = [&](const Grid& g, long i, long j) {
    auto it = g.find({i, j});
    return it == g.end() ? FockVector(p) : it->second;
  };

  const long mu1 = mod(cls(u1) + cls(v1), p), mu2 = mod(cls(u2) + cls(v2), p);
  for (long M = -n_max * p; M <= n_max * p; ++M) {
    if (mod(M - mu1, p) != 0) continue;
    for (long N = -n_max * p; N <= n_max * p; ++N) {
      if (mod(N - mu2, p) != 0) continue;
      const Rational m1(M, p), n2(N, p);
      // Coefficient vectors of the right side, per (J1, J2).
      std::map<std::pair<long, long>, FockVector> rhs_src;
      for (long J1 = j1_lo; J1 <= order; ++J1) {
        for (long J2 = j2_lo; J2 <= order; ++J2) {
          FockVector total(p);
          for (long r = 0; r < p; ++r) {
            const Parts& pt = parts[static_cast<std::size_t>(r)];
            FockVector acc(p);
            for (long j = 0; j <= J2; ++j) {
              const Rational e2 = pow(-n2, J2 - j) / factorial(J2 - j);
              acc += (at(pt.w1, J1, j) * m1 + at(pt.w1, J1 + 1, j) * Rational(J1 + 1)) * e2 *
                     pt.k1;
              for (long i = zi_lo; i <= J1; ++i) {
                const Rational e1 = pow(n2, J1 - i) / factorial(J1 - i);
                acc += (at(pt.z3, i, j) * (-n2) - at(pt.z3, i + 1, j) * Rational(i + 1)) * (e1 * e2) * pt.k3;
              }
            }
            if (J2 >= 0) {
              acc += (at(pt.w2, J1, J2) * m1 + at(pt.w2, J1 + 1, J2) * Rational(J1 + 1)) * pt.k2;
              for (long i = zi_lo; i <= J1; ++i) {
                const Rational e1 = pow(n2, J1 - i) / factorial(J1 - i);
                acc += (at(pt.z4, i, J2) * (-n2) - at(pt.z4, i + 1, J2) * Rational(i + 1)) * e1 * pt.k4;
              }
            }
            total += acc * Cyclotomic::root_of_unity(p, r * N);
          }
          rhs_src.emplace(std::make_pair(J1, J2), total * Rational(1, p));
        }
      }
      for (long J1 = j1_lo; J1 <= order; ++J1) {
        const FockVector g1 = V.square_bracket_coeff(U1, V1, J1);
        for (long J2 = j2_lo; J2 <= order; ++J2) {
          const FockVector g2 = V.square_bracket_coeff(U2, V2, J2);
          const FockVector& src = rhs_src.at({J1, J2});
          for (const auto& w : basis) {
            const FockVector wv = unit(p, w);
            const FockVector lhs =
                eng.assembled_x(g1, M, eng.assembled_x(g2, N, wv)) - eng.assembled_x(g2, N, eng.assembled_x(g1, M, wv));
            tally.compare(lhs, eng.assembled_x(src, M + N, w),
                          {{"y1", J1}, {"y2", J2}, {"M", frac(M, p)}, {"N", frac(N, p)},
                           {"w", fock::monomial_json(space, w)}});
          }
        }
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

CheckRecord generators_corollary_check(FieldEngine& eng, long m, long n_max, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& setup = eng.space().setup();
  CheckRecord rec = detail::make_record(
      "generators", "generators_corollary",
      {{"setup", setup}, {"m", m}, {"n_max", n_max}, {"max_degree", max_degree.str()}});
  const int p = eng.p();
  const auto& space = eng.space();
  const auto basis = basis_upto(space, fock::degree_numerator(setup, max_degree));
  Tally tally(space);

  const auto images_of_field = [&](const FockVector& src, long n) {
    std::vector<FockVector> out;
    for (const auto& w : basis) out.push_back(eng.assembled_x(src, n * p, w));
    return out;
  };
  const auto images_of_op = [&](const QuadOperator& op) {
    std::vector<FockVector> out;
    for (const auto& w : basis) out.push_back(fock::apply_operator(space, op, w));
    return out;
  };
  const auto identity = [&]() {
    std::vector<FockVector> out;
    for (const auto& w : basis) out.push_back(unit(p, w));
    return out;
  };

  // Expresses target in the span of candidates; records the weights and re-applies them.
  nlohmann::json combos = nlohmann::json::array();
  const auto express = [&](const std::string& direction, const std::string& target_name,
                           const std::vector<FockVector>& target, const std::vector<std::string>& names,
                           const std::vector<std::vector<FockVector>>& cands, long n) {
    std::vector<Flat> flats;
    for (const auto& c : cands) flats.push_back(flatten(basis, c));
    const Flat tf = flatten(basis, target);
    std::set<std::pair<Monomial, Monomial>> keys;
    for (const auto& [k, v] : tf) keys.insert(k);
    for (const auto& f : flats)
      for (const auto& [k, v] : f) keys.insert(k);
    std::vector<std::vector<Cyclotomic>> columns(cands.size());
    std::vector<Cyclotomic> rhs;
    for (const auto& key : keys) {
      for (std::size_t i = 0; i < flats.size(); ++i) {
        auto it = flats[i].find(key);
        columns[i].push_back(it == flats[i].end() ? Cyclotomic(p) : it->second);
      }
      auto it = tf.find(key);
      rhs.push_back(it == tf.end() ? Cyclotomic(p) : it->second);
    }
    const auto x = solve(p, columns, rhs);
    const nlohmann::json where{{"direction", direction}, {"target", target_name}, {"n", n}};
    if (!x) {
      tally.fail(where);
      return;
    }
    nlohmann::json weights = nlohmann::json::object();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!(*x)[i].is_zero()) weights[names[i]] = fock::cyclotomic_json((*x)[i]);
    combos.push_back({{"direction", direction}, {"target", target_name}, {"n", n}, {"weights", weights}});
    for (std::size_t b = 0; b < basis.size(); ++b) {
      FockVector re(p);
      for (std::size_t i = 0; i < cands.size(); ++i) re += cands[i][b] * (*x)[i];
      tally.compare(target[b], re, {{"direction", direction}, {"target", target_name}, {"n", n},
                                    {"w", fock::monomial_json(space, basis[b])}});
    }
  };

  for (long n = -n_max; n <= n_max; ++n) {
    std::vector<std::vector<FockVector>> lops;
    std::vector<std::string> lnames;
    for (long r = 0; r <= m + 1; ++r) {
      lops.push_back(images_of_op(fock::quad_operator(setup, r, r, n, Variant::Plain)));
      lnames.push_back("L(" + std::to_string(r) + ")");
    }
    std::vector<std::vector<FockVector>> gens;
    std::vector<std::string> gnames;
    for (long mm = 0; mm <= m; ++mm) {
      gens.push_back(images_of_field(eng.voa().generator_vector(mm), n));
      gnames.push_back("X(g" + std::to_string(mm) + ")");
    }
    auto lc = lops, gc = gens;
    auto ln = lnames, gn = gnames;
    if (n == 0) {
      lc.push_back(identity());
      ln.push_back("id");
      gc.push_back(identity());
      gn.push_back("id");
    }
    express("generator_in_L", gnames.back(), gens.back(), ln, lc, n);
    for (long r = 0; r <= m; ++r)
      express("L_in_generators", lnames[static_cast<std::size_t>(r)], lops[static_cast<std::size_t>(r)], gn, gc, n);
  }
  rec.info = {{"combinations", combos}};
  tally.finish(rec, t0);
  return rec;
}

}  // namespace zetafock::fields

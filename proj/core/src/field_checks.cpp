#include "zetafock/field_checks.hpp"

#include "check_util.hpp"
#include "zetafock/fock_checks.hpp"

#include <map>
#include <tuple>

namespace zetafock::fields {

using detail::basis_upto;
using detail::floor_div;
using detail::Tally;
using detail::unit;
using fock::FockVector;

namespace {

enum class Conv { Y, X };

Rational sign(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

long mod(long a, long p) { return ((a % p) + p) % p; }

nlohmann::json source_json(const FieldEngine& eng, const Monomial& m) {
  return fock::monomial_json(eng.voa().space(), m);
}

long eigen_class(const FieldEngine& eng, const Monomial& src) {
  long k = 0;
  for (const auto& mode : src) k += eng.space().species()[static_cast<std::size_t>(mode.species)].k;
  return mod(k, eng.p());
}

FockVector source_vector(const FieldEngine& eng, const Monomial& m) { return unit(eng.p(), m); }

/// Coefficient of x^{e} (e = e_num / p) in the field of a direct source, applied to vec.
FockVector field_coeff(const FieldEngine& eng, const Monomial& src, long e_num, const FockVector& vec,
                       Conv c) {
  return c == Conv::Y ? eng.direct_y(src, -e_num - eng.p(), vec) : eng.direct_x(src, -e_num, vec);
}

/// Coefficient of x0^{n0} x1^A x2^B in
/// x0^{-1} delta((x1-x2)/x0) F(u,x1) F(v,x2) - x0^{-1} delta((x2-x1)/(-x0)) F(v,x2) F(u,x1), on w.
FockVector jacobi_lhs(const FieldEngine& eng, const Monomial& u, const Monomial& v, long n0, long a_num,
                      long b_num, const Monomial& w, Conv c) {
  const int p = eng.p();
  const long n = -n0 - 1;
  const FockVector wv = unit(p, w);
  const long d = fock::degree_num(w);
  const long wu = c == Conv::Y ? FieldEngine::source_weight(u) : 0;
  const long wv_ = c == Conv::Y ? FieldEngine::source_weight(v) : 0;
  FockVector out(p);

  long imax = floor_div(d + b_num + wv_ * p, p);
  if (n >= 0) imax = std::min(imax, n);
  for (long i = 0; i <= imax; ++i) {
    const FockVector inner = field_coeff(eng, v, b_num - i * p, wv, c);
    if (inner.is_zero()) continue;
    const FockVector outer = field_coeff(eng, u, a_num - (n - i) * p, inner, c);
    if (!outer.is_zero()) out += outer * (binomial(Rational(n), i) * sign(i));
  }
  imax = floor_div(d + a_num + wu * p, p);
  if (n >= 0) imax = std::min(imax, n);
  for (long i = 0; i <= imax; ++i) {
    const FockVector inner = field_coeff(eng, u, a_num - i * p, wv, c);
    if (inner.is_zero()) continue;
    const FockVector outer = field_coeff(eng, v, b_num - (n - i) * p, inner, c);
    if (!outer.is_zero()) out -= outer * (sign(n) * binomial(Rational(n), i) * sign(i));
  }
  return out;
}

/// (1/p) x2^{-1} sum_r delta(w^r ((x1-x0)/x2)^{1/p}) Y(Y(nu^r u, x0) v, x2) w at x0^{n0} x1^A x2^B.
FockVector jacobi_rhs(FieldEngine& eng, const Monomial& u, const Monomial& v, long n0, long a_num,
                      long b_num, const Monomial& w) {
  const int p = eng.p();
  const long k = FieldEngine::source_weight(u) + FieldEngine::source_weight(v);
  FockVector out(p);
  for (long r = 0; r < p; ++r) {
    const Cyclotomic phase = Cyclotomic::root_of_unity(p, r * a_num);
    for (long i = 0; i <= n0 + k; ++i) {
      const Rational c = binomial(Rational(a_num, p) + Rational(i), i) * sign(i);
      const FockVector it = eng.y_iterate(u, v, r, n0 - i, b_num + a_num + (1 + i) * p, w);
      if (!it.is_zero()) out += it * (phase * Cyclotomic(p, c));
    }
  }
  return out * Rational(1, p);
}

using KernelMemo = std::map<std::tuple<long, long, long>, Rational>;

/// [z^I] (1+z)^lambda log(1+z)^J with lambda = lambda_num / p.
const Rational& log_kernel(KernelMemo& memo, long lambda_num, int p, long i, long j) {
  const auto key = std::make_tuple(lambda_num, i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const Laurent a = one_plus_power("z", Rational(lambda_num, p), i - std::min(j, 0L));
  const Laurent b = log_one_plus_power("z", j, i);
  return memo.emplace(key, (a * b).coeff({i})).first->second;
}

/// (1/p) x1^{-1} sum_r delta(w^{-r} (e^y x2/x1)^{1/p}) X(Y[nu^r u, y] v, x2) w with
/// y = log(1 + x0/x2), at x0^I x1^A x2^B.
FockVector homogeneous_jacobi_rhs(FieldEngine& eng, KernelMemo& memo, const Monomial& u, const Monomial& v,
                                  long i, long a_num, long b_num, const Monomial& w) {
  const int p = eng.p();
  const long k = FieldEngine::source_weight(u) + FieldEngine::source_weight(v);
  const long m_num = -a_num - p;
  const long n_num = m_num - i * p - b_num;
  FockVector out(p);
  for (long r = 0; r < p; ++r) {
    const Cyclotomic phase = Cyclotomic::root_of_unity(p, -r * m_num);
    for (long j = -k; j <= i; ++j) {
      const Rational& c = log_kernel(memo, m_num, p, i, j);
      if (c.is_zero()) continue;
      const FockVector it = eng.homogeneous_iterate(u, v, -r, j, n_num, w);
      if (!it.is_zero()) out += it * (phase * Cyclotomic(p, c));
    }
  }
  return out * Rational(1, p);
}

nlohmann::json pair_params(const FieldEngine& eng, const Monomial& u, const Monomial& v,
                           const FieldWindow& win) {
  return {{"setup", eng.space().setup()},
          {"u", source_json(eng, u)},
          {"v", source_json(eng, v)},
          {"exponent_max", win.exponent_max},
          {"max_degree", win.max_degree.str()}};
}

std::string frac(long num, int p) { return Rational(num, p).str(); }

}  // namespace

std::vector<Monomial> weight_one_sources(const FieldEngine& eng, bool include_vacuum) {
  std::vector<Monomial> out;
  if (include_vacuum) out.push_back({});
  for (int s = 0; s < static_cast<int>(eng.space().species().size()); ++s) out.push_back({{s, -1}});
  return out;
}

CheckRecord jacobi_check(FieldEngine& eng, const Monomial& u, const Monomial& v, const FieldWindow& win) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec = detail::make_record("jacobi", "twisted_jacobi", pair_params(eng, u, v, win));
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(eng.space().setup(), win.max_degree));
  const long E = win.exponent_max;
  const long cu = eigen_class(eng, u), cv = eigen_class(eng, v);
  Tally tally(eng.space());
  for (const auto& w : basis) {
    for (long n0 = -E; n0 <= E; ++n0) {
      for (long a = -E * p; a <= E * p; ++a) {
        if (mod(a + cu, p) != 0) continue;
        for (long b = -E * p; b <= E * p; ++b) {
          if (mod(b + cv, p) != 0) continue;
          tally.compare(jacobi_lhs(eng, u, v, n0, a, b, w, Conv::Y), jacobi_rhs(eng, u, v, n0, a, b, w),
                        {{"w", fock::monomial_json(eng.space(), w)},
                         {"x0", n0},
                         {"x1", frac(a, p)},
                         {"x2", frac(b, p)}});
        }
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

CheckRecord iterate_limit_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                const FieldWindow& win) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec = detail::make_record("mwa", "iterate_limits", pair_params(eng, u, v, win));
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(eng.space().setup(), win.max_degree));
  const long E = win.exponent_max;
  const long k = FieldEngine::source_weight(u) + FieldEngine::source_weight(v);
  const long cuv = mod(eigen_class(eng, u) + eigen_class(eng, v), p);
  const long cu = eigen_class(eng, u);
  const voa::Voa& V = eng.voa();
  Tally tally(eng.space());

  for (long r = 0; r < p; ++r) {
    const FockVector ur = V.nu_power(source_vector(eng, u), r);
    for (const auto& w : basis) {
      const auto where = [&](const char* what, long i, long e) {
        return nlohmann::json{{"check", what}, {"r", r}, {"w", fock::monomial_json(eng.space(), w)},
                              {"x0", i}, {"x2", frac(e, p)}};
      };
      for (long e = -E * p; e <= E * p; ++e) {
        if (mod(e + cuv, p) != 0) continue;
        // Divisibility: with k + 1 the x0^0 coefficient of the limit vanishes.
        tally.compare(eng.y_limit(u, v, -r, k + 1, 0, e, w), FockVector(p), where("divisibility", -k - 1, e));
        for (long i = -k; i <= E; ++i) {
          const FockVector it = eng.y_iterate(u, v, r, i, e, w);
          tally.compare(it, eng.y_iterate(u, v, r, i, e, w, 1), where("k_independence", i, e));
          tally.compare(eng.y_limit(u, v, -r + p, k, i + k, e, w), eng.y_limit(u, v, -r, k, i + k, e, w),
                        where("s_periodicity", i, e));
          tally.compare(it, eng.y_iterate(u, v, 0, i, e, w) * Cyclotomic::root_of_unity(p, r * cu),
                        where("s_shift", i, e));
          // Y(Y(nu^r u, x0) v, x2) at x0^i is Y((nu^r u)_{-i-1} v, x2).
          const FockVector g = V.product(ur, -i - 1, source_vector(eng, v));
          FockVector expect(p);
          for (const auto& [wt, part] : V.homogeneous_parts(g))
            expect += eng.assembled_x(part, -e - wt * p, w);
          tally.compare(it, expect, where("vertex_algebra_iterate", i, e));
        }
      }
      for (long n = -E * p; n <= E * p; ++n) {
        if (mod(n - cuv, p) != 0) continue;
        const auto hwhere = [&](const char* what, long j) {
          return nlohmann::json{{"check", what}, {"r", r}, {"w", fock::monomial_json(eng.space(), w)},
                                {"y", j}, {"mode", frac(n, p)}};
        };
        tally.compare(eng.homogeneous_limit(u, v, -r, k + 1, 0, n, w), FockVector(p),
                      hwhere("homogeneous_divisibility", -k - 1));
        for (long j = -k; j <= E; ++j)
          tally.compare(eng.homogeneous_iterate(u, v, -r, j, n, w), eng.homogeneous_iterate(u, v, -r, j, n, w, 1),
                        hwhere("homogeneous_k_independence", j));
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

CheckRecord homogeneous_jacobi_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                     const FieldWindow& win) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec = detail::make_record("jacobi", "homogeneous_jacobi", pair_params(eng, u, v, win));
  KernelMemo memo;
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(eng.space().setup(), win.max_degree));
  const long E = win.exponent_max;
  const long cu = eigen_class(eng, u), cv = eigen_class(eng, v);
  Tally tally(eng.space());
  for (const auto& w : basis) {
    for (long i = -E; i <= E; ++i) {
      for (long a = -E * p; a <= E * p; ++a) {
        if (mod(a + cu, p) != 0) continue;
        for (long b = -E * p; b <= E * p; ++b) {
          if (mod(b + cv, p) != 0) continue;
          tally.compare(jacobi_lhs(eng, u, v, i, a, b, w, Conv::X),
                        homogeneous_jacobi_rhs(eng, memo, u, v, i, a, b, w),
                        {{"w", fock::monomial_json(eng.space(), w)},
                         {"x0", i},
                         {"x1", frac(a, p)},
                         {"x2", frac(b, p)}});
        }
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

CheckRecord homogeneous_commutator_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                         const FieldWindow& win) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec = detail::make_record("jacobi", "homogeneous_commutator", pair_params(eng, u, v, win));
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(eng.space().setup(), win.max_degree));
  const long E = win.exponent_max;
  const long k = FieldEngine::source_weight(u) + FieldEngine::source_weight(v);
  const long cu = eigen_class(eng, u), cv = eigen_class(eng, v);
  Tally tally(eng.space());
  for (const auto& w : basis) {
    const FockVector wv = unit(p, w);
    for (long m = -E * p; m <= E * p; ++m) {
      if (mod(m - cu, p) != 0) continue;
      for (long n = -E * p; n <= E * p; ++n) {
        if (mod(n - cv, p) != 0) continue;
        const FockVector lhs = eng.direct_x(u, m, eng.direct_x(v, n, wv)) - eng.direct_x(v, n, eng.direct_x(u, m, wv));
        FockVector rhs(p);
        for (long r = 0; r < p; ++r) {
          const Cyclotomic phase = Cyclotomic::root_of_unity(p, -r * m);
          for (long j = -k; j <= -1; ++j) {
            const Rational c = pow(Rational(m, p), -1 - j) / factorial(-1 - j);
            if (c.is_zero()) continue;
            rhs += eng.homogeneous_iterate(u, v, -r, j, m + n, w) * (phase * Cyclotomic(p, c));
          }
        }
        rhs *= Rational(1, p);
        tally.compare(lhs, rhs, {{"w", fock::monomial_json(eng.space(), w)}, {"m", frac(m, p)}, {"n", frac(n, p)}});
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

namespace {

/// X<N>(beta_sigma(-a)1) rebuilt from limits of X(beta_sigma(-1)1, x1) X(1, x2).
FockVector linear_from_vacuum_limit(FieldEngine& eng, int sigma, long a, long n_num, const Monomial& w) {
  const int p = eng.p();
  const Monomial u{{sigma, -1}};
  const Monomial target{{sigma, -a}};
  const FockVector g = eng.voa().square_bracket_coeff(unit(p, u), eng.voa().vacuum(), a - 1);
  FockVector out = eng.homogeneous_iterate(u, {}, 0, a - 1, n_num, w);
  for (const auto& [m, c] : g.terms()) {
    if (m == target) continue;
    out -= linear_from_vacuum_limit(eng, sigma, -m[0].lnum, n_num, w) * c;
  }
  return out * g.coeff(target).inverse();
}

}  // namespace

CheckRecord assembly_check(FieldEngine& eng, long n_max, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& setup = eng.space().setup();
  CheckRecord rec = detail::make_record("mwa", "assembled_fields",
                  {{"setup", setup}, {"n_max", n_max}, {"max_degree", max_degree.str()}});
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(setup, max_degree));
  const voa::Voa& V = eng.voa();
  const int ns = static_cast<int>(eng.space().species().size());
  Tally tally(eng.space());

  for (long n = -n_max; n <= n_max; ++n) {
    const QuadOperator L = fock::quad_operator(setup, 0, 0, n, Variant::Plain);
    for (const auto& w : basis)
      tally.compare(eng.assembled_x(V.omega(), n * p, w), fock::apply_operator(eng.space(), L, w),
                    {{"check", "omega_vs_bilinear"}, {"n", n}, {"w", fock::monomial_json(eng.space(), w)}});
  }
  for (int s = 0; s < ns; ++s) {
    for (long a = 1; a <= 3; ++a) {
      for (long n = -n_max * p; n <= n_max * p; ++n) {
        for (const auto& w : basis) {
          const FockVector direct = eng.direct_x({{s, -a}}, n, unit(p, w));
          tally.compare(direct, linear_from_vacuum_limit(eng, s, a, n, w),
                        {{"check", "linear_from_vacuum_limit"}, {"species", s}, {"a", a},
                         {"n", frac(n, p)}, {"w", fock::monomial_json(eng.space(), w)}});
        }
      }
    }
  }
  std::vector<FockVector> sources{V.omega()};
  for (int s = 0; s < ns; ++s)
    for (int t = 0; t < ns; ++t) sources.push_back(V.quadratic(s, 1, t, 2));
  for (const auto& src : sources) {
    long k = 0;
    for (const auto& mode : src.terms().begin()->first) k += eng.space().species()[static_cast<std::size_t>(mode.species)].k;
    for (const auto& w : basis) {
      const long d = fock::degree_num(w);
      for (long n = d + 1; n <= d + p; ++n)
        tally.compare(eng.assembled_x(src, n, w), FockVector(p),
                      {{"check", "truncation"}, {"source", fock::to_json(V.space(), src)},
                       {"n", frac(n, p)}, {"w", fock::monomial_json(eng.space(), w)}});
      for (long n = -n_max * p; n <= n_max * p; ++n) {
        if (mod(n - k, p) == 0) continue;
        tally.compare(eng.assembled_x(src, n, w), FockVector(p),
                      {{"check", "congruence"}, {"source", fock::to_json(V.space(), src)},
                       {"n", frac(n, p)}, {"w", fock::monomial_json(eng.space(), w)}});
      }
    }
  }
  tally.finish(rec, t0);
  return rec;
}

CheckRecord virasoro_axiom_check(FieldEngine& eng, long m_max, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& setup = eng.space().setup();
  CheckRecord rec = detail::make_record("jacobi", "virasoro_axioms",
                  {{"setup", setup}, {"m_max", m_max}, {"max_degree", max_degree.str()}});
  const int p = eng.p();
  const auto basis = basis_upto(eng.space(), fock::degree_numerator(setup, max_degree));
  const voa::Voa& V = eng.voa();
  const FockVector omega = V.omega();
  const auto L = [&](long n, const FockVector& x) { return eng.assembled_x(omega, n * p, x); };
  const Rational d(setup.total_dim());
  Rational shift(0);
  for (int k = 0; k < p; ++k)
    shift += Rational(setup.dims[static_cast<std::size_t>(k)] * k * (p - k), 4 * p * p);
  Tally tally(eng.space());

  nlohmann::json spectrum = nlohmann::json::object();
  for (const auto& w : basis) {
    const FockVector wv = unit(p, w);
    const Rational deg(fock::degree_num(w), p);
    const FockVector l0 = L(0, wv);
    tally.compare(l0, wv * (deg + shift), {{"check", "L0_spectrum"}, {"w", fock::monomial_json(eng.space(), w)}});
    spectrum[(deg + shift).str()] = deg.str();
    for (long m = -m_max; m <= m_max; ++m) {
      for (long n = -m_max; n <= m_max; ++n) {
        FockVector rhs = L(m + n, wv) * Rational(m - n);
        if (m + n == 0) rhs += wv * (d * Rational(m * m * m - m, 12));
        tally.compare(L(m, L(n, wv)) - L(n, L(m, wv)), rhs,
                      {{"check", "virasoro_bracket"}, {"m", m}, {"n", n}, {"w", fock::monomial_json(eng.space(), w)}});
      }
    }
  }
  const int ns = static_cast<int>(eng.space().species().size());
  std::vector<FockVector> sources;
  for (int s = 0; s < ns; ++s) {
    sources.push_back(V.linear(s, 1));
    sources.push_back(V.linear(s, 2));
    for (int t = 0; t < ns; ++t) sources.push_back(V.quadratic(s, 1, t, 1));
  }
  for (const auto& u : sources) {
    const long wt = voa::max_weight(u);
    const FockVector du = V.product(omega, 0, u);
    for (const auto& w : basis) {
      for (long n = -m_max * p; n <= m_max * p; ++n) {
        tally.compare(eng.assembled_x(du, n, w), eng.assembled_x(u, n, w) * (-(Rational(n, p) + Rational(wt))),
                      {{"check", "L(-1)_derivative"}, {"source", fock::to_json(V.space(), u)},
                       {"n", frac(n, p)}, {"w", fock::monomial_json(eng.space(), w)}});
      }
    }
  }
  for (int s = 0; s < ns; ++s) {
    const Monomial b{{s, -1}};
    for (const auto& w : basis) {
      const FockVector wv = unit(p, w);
      for (long m = -m_max; m <= m_max; ++m) {
        for (long n = -m_max * p; n <= m_max * p; ++n) {
          const FockVector lhs = L(m, eng.direct_x(b, n, wv)) - eng.direct_x(b, n, L(m, wv));
          tally.compare(lhs, eng.direct_x(b, n + m * p, wv) * Rational(-n, p),
                        {{"check", "primary_weight_one"}, {"species", s}, {"m", m}, {"n", frac(n, p)},
                         {"w", fock::monomial_json(eng.space(), w)}});
        }
      }
    }
  }
  rec.info = {{"vacuum_shift", shift.str()}, {"central_charge", d.str()}, {"L0_eigenvalue_to_degree", spectrum}};
  tally.finish(rec, t0);
  return rec;
}

}  // namespace zetafock::fields

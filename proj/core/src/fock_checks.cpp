#include "zetafock/fock_checks.hpp"

#include <chrono>

#include "zetafock/diffop.hpp"
#include "zetafock/series.hpp"

namespace zetafock::fock {

namespace {

const char* variant_name(Variant v) { return v == Variant::Plain ? "plain" : "bar"; }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

long degree_numerator(const TwistSetup& setup, const Rational& max_degree) {
  if (max_degree.sign() < 0) throw InvalidSetup("degree bound must be nonnegative");
  const Rational num = max_degree * Rational(setup.p);
  if (!num.is_integer())
    throw InvalidSetup("degree bound " + max_degree.str() + " is not a multiple of 1/" + std::to_string(setup.p));
  return num.to_long();
}

RepresentationChecker::RepresentationChecker(const TwistSetup& setup, const Rational& max_degree)
    : setup_(setup),
      max_degree_(max_degree),
      space_(ModeSpace::twisted(setup)),
      basis_(enumerate_basis(space_, degree_numerator(setup, max_degree))),
      cache_(space_) {}

std::string RepresentationChecker::key(long r, long n, Variant variant) {
  return std::string(variant_name(variant)) + ":" + std::to_string(r) + ":" + std::to_string(n);
}

const QuadOperator& RepresentationChecker::op(long r, long n, Variant variant) {
  const std::string k = key(r, n, variant);
  auto it = ops_.find(k);
  if (it == ops_.end()) it = ops_.emplace(k, quad_operator(setup_, r, r, n, variant)).first;
  return it->second;
}

CheckRecord RepresentationChecker::check(long r, long s, long m, long n, Variant variant) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.suite = "rep";
  rec.name = "bracket";
  rec.params = {{"setup", setup_}, {"r", r},      {"s", s},
                {"m", m},          {"n", n},      {"variant", variant_name(variant)},
                {"max_degree", max_degree_.str()}};

  using namespace diffop;
  const DiffOpElement br = bracket(generator({m, r, Basis::Plain}), generator({n, s, Basis::Plain}));
  const Decomposition dec = decompose(br, m + n);
  if (!dec.residual.is_zero()) {
    rec.status = Status::Fail;
    rec.witness = {{"reason", "bracket outside the generator span"}, {"residual", dec.residual.str()}};
    rec.elapsed_ms = ms_since(t0);
    return rec;
  }
  const Rational central = variant == Variant::Plain ? dec.central : bar_central_term(r, s, m, n);
  const Rational cd = central * Rational(setup_.total_dim());
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [i, a] : dec.coefficients) coeffs[std::to_string(i)] = a.str();
  rec.info = {{"structure_constants", coeffs}, {"central", central.str()}, {"central_times_d", cd.str()}};

  const int p = setup_.p;
  const std::string ka = key(r, m, variant), kb = key(s, n, variant);
  const QuadOperator& A = op(r, m, variant);
  const QuadOperator& B = op(s, n, variant);
  std::size_t vectors = 0;
  for (const auto& level : basis_) {
    for (const auto& mono : level) {
      ++vectors;
      const FockVector v = FockVector::basis(p, mono, Cyclotomic(p, Rational(1)));
      const FockVector lhs = cache_.apply(ka, A, cache_.apply(kb, B, mono)) - cache_.apply(kb, B, cache_.apply(ka, A, mono));
      FockVector rhs = v * Cyclotomic(p, cd);
      for (const auto& [i, a] : dec.coefficients) rhs += cache_.apply(key(i, m + n, variant), op(i, m + n, variant), mono) * a;
      if (!(lhs == rhs)) {
        rec.status = Status::Fail;
        rec.lhs = to_json(space_, lhs);
        rec.rhs = to_json(space_, rhs);
        rec.witness = {{"vector", monomial_json(space_, mono)}, {"degree", space_.level(degree_num(mono)).str()}};
        rec.elapsed_ms = ms_since(t0);
        return rec;
      }
    }
  }
  rec.info["vectors_checked"] = vectors;
  rec.elapsed_ms = ms_since(t0);
  return rec;
}

CheckRecord rep_check(const TwistSetup& setup, long r, long s, long m, long n, const Rational& max_degree,
                      Variant variant) {
  RepresentationChecker checker(setup, max_degree);
  return checker.check(r, s, m, n, variant);
}

Rational vacuum_eigenvalue(const TwistSetup& setup, long r, Variant variant) {
  const ModeSpace space = ModeSpace::twisted(setup);
  const FockVector out = apply_operator(space, quad_operator(setup, r, r, 0, variant), Monomial{});
  for (const auto& [m, c] : out.terms())
    if (!m.empty()) throw std::logic_error("vacuum is not an eigenvector");
  return out.coeff({}).as_rational();
}

CheckRecord delta_genfun(const TwistSetup& setup, long order) {
  const auto t0 = std::chrono::steady_clock::now();
  if (order < 2) throw std::invalid_argument("delta_genfun: order must be at least 2");
  CheckRecord rec;
  rec.suite = "delta";
  rec.name = "cartan_generating_function";
  rec.params = {{"setup", setup}, {"order", order}};

  // Closed form. sum_k d_k (e^{kx/p} - 1) vanishes at x = 0, which cancels the
  // simple pole of 1/(1 - e^x); expand to x^{order+1} before differentiating.
  const long hi = 2 * (order / 2) + 1;
  Laurent num = laurent_zero("x", 1, hi + 1);
  for (int k = 0; k < setup.p; ++k) {
    Laurent e = exp_series("x", Rational(k, setup.p), hi + 1);
    e -= laurent_monomial("x", 0, Rational(1), hi + 1);
    e.scale(Rational(setup.dims[static_cast<std::size_t>(k)]));
    num += e.truncated({{1, hi + 1, true}});
  }
  Laurent pole = exp_minus_one_power("x", -1, hi);
  pole.scale(Rational(-1));
  Laurent closed = derivative(num * pole);
  closed.scale(Rational(1, 2));

  nlohmann::json lhs = nlohmann::json::object(), rhs = nlohmann::json::object(), unjudged = nlohmann::json::object();
  for (long e = 0; e <= 2 * (order / 2); ++e) {
    const Rational scaled = closed.coeff({e}) * factorial(e);
    if (e % 2 == 0 && e >= 2) {
      const long k = e / 2;
      const Rational delta = Rational(k % 2 == 0 ? 1 : -1) * vacuum_eigenvalue(setup, k, Variant::Plain);
      lhs[std::to_string(k)] = delta.str();
      rhs[std::to_string(k)] = scaled.str();
      if (delta != scaled && rec.status == Status::Pass) {
        rec.status = Status::Fail;
        rec.witness = {{"k", k}, {"eigenvalue_side", delta.str()}, {"closed_form_side", scaled.str()}};
      }
    } else {
      unjudged["x^" + std::to_string(e)] = scaled.str();
    }
  }
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.info = {{"coefficients_outside_x^2k", unjudged}};
  rec.elapsed_ms = ms_since(t0);
  return rec;
}

std::vector<mpz_class> graded_dimensions_from_product(const TwistSetup& setup, long max_num) {
  std::vector<mpz_class> c(static_cast<std::size_t>(max_num) + 1, 0);
  c[0] = 1;
  for (long l = 1; l <= max_num; ++l) {
    const int mult = setup.dims[static_cast<std::size_t>(l % setup.p)];
    // Multiply by 1/(1 - t^l) once per copy: prefix sums with stride l.
    for (int rep = 0; rep < mult; ++rep)
      for (long i = l; i <= max_num; ++i) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - l)];
  }
  return c;
}

CheckRecord graded_dimension_check(const TwistSetup& setup, const Rational& max_degree) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.suite = "dims";
  rec.name = "graded_dimension";
  rec.params = {{"setup", setup}, {"max_degree", max_degree.str()}};
  const long max_num = degree_numerator(setup, max_degree);
  const auto basis = enumerate_basis(ModeSpace::twisted(setup), max_num);
  const auto product = graded_dimensions_from_product(setup, max_num);
  nlohmann::json lhs = nlohmann::json::array(), rhs = nlohmann::json::array();
  for (long i = 0; i <= max_num; ++i) {
    const mpz_class count = basis[static_cast<std::size_t>(i)].size();
    lhs.push_back(count.get_str());
    rhs.push_back(product[static_cast<std::size_t>(i)].get_str());
    if (count != product[static_cast<std::size_t>(i)] && rec.status == Status::Pass) {
      rec.status = Status::Fail;
      rec.witness = {{"degree", Rational(i, setup.p).str()}};
    }
  }
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.elapsed_ms = ms_since(t0);
  return rec;
}

}  // namespace zetafock::fock

#include "zetafock/voa.hpp"

#include "zetafock/series.hpp"

namespace zetafock::voa {

using fock::Mode;

std::vector<Rational> binomial_poly(const Rational& a0, const Rational& a1, long k) {
  std::vector<Rational> out{Rational(1)};
  for (long i = 0; i < k; ++i) {
    // multiply by (a1 j + a0 - i) / (i + 1)
    std::vector<Rational> next(out.size() + 1, Rational(0));
    const Rational c0 = (a0 - Rational(i)) / Rational(i + 1);
    const Rational c1 = a1 / Rational(i + 1);
    for (std::size_t d = 0; d < out.size(); ++d) {
      next[d] += out[d] * c0;
      next[d + 1] += out[d] * c1;
    }
    out = std::move(next);
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

QuadOperator naive_field_mode(const ModeSpace& space, const Monomial& source, long n_num) {
  const int p = space.p();
  QuadOperator op(p, n_num);
  const Rational N = space.level(n_num);
  if (source.empty()) {
    if (n_num == 0) op.scalar = Cyclotomic(p, Rational(1));
    return op;
  }
  if (source.size() == 1) {
    const Mode& m = source[0];
    if (!space.allowed(m.species, n_num)) return op;
    const long a = -m.lnum / space.q();
    const Rational c = binomial(-N - Rational(1), a - 1);
    if (!c.is_zero()) op.linear[m.species] = Cyclotomic(p, c);
    return op;
  }
  if (source.size() != 2) throw OutOfSector("field of a monomial with more than two modes");
  const Mode& m1 = source[0];
  const Mode& m2 = source[1];
  const long a = -m1.lnum / space.q();
  const long b = -m2.lnum / space.q();
  // C(-j-1, a-1) C(j-N-1, b-1)
  const auto k1 = binomial_poly(Rational(-1), Rational(-1), a - 1);
  const auto k2 = binomial_poly(-N - Rational(1), Rational(1), b - 1);
  std::vector<Cyclotomic> kernel(k1.size() + k2.size() - 1, Cyclotomic(p));
  for (std::size_t i = 0; i < k1.size(); ++i)
    for (std::size_t j = 0; j < k2.size(); ++j) kernel[i + j] += Cyclotomic(p, k1[i] * k2[j]);
  op.bilinear[{m1.species, m2.species}] = kernel;
  return op;
}

Voa::Voa(const TwistSetup& setup) : space_(ModeSpace::untwisted(setup)) {}

FockVector Voa::vacuum() const { return FockVector::vacuum(p()); }

FockVector Voa::linear(int sigma, long a) const {
  return FockVector::basis(p(), {{sigma, -a}}, Cyclotomic(p(), Rational(1)));
}

FockVector Voa::quadratic(int sigma, long a, int tau, long b) const {
  Monomial m{{sigma, -a}, {tau, -b}};
  std::sort(m.begin(), m.end());
  return FockVector::basis(p(), std::move(m), Cyclotomic(p(), Rational(1)));
}

FockVector Voa::omega() const { return generator_vector(0) * Rational(1, 2); }

FockVector Voa::generator_vector(long m) const {
  FockVector out(p());
  for (int s = 0; s < static_cast<int>(space_.species().size()); ++s)
    out += quadratic(s, m + 1, space_.partner(s), m + 1);
  return out;
}

FockVector Voa::nu_power(const FockVector& u, long s) const {
  FockVector out(p());
  for (const auto& [m, c] : u.terms()) {
    long k = 0;
    for (const auto& mode : m) k += space_.species()[static_cast<std::size_t>(mode.species)].k;
    out.add(m, c * Cyclotomic::root_of_unity(p(), s * k));
  }
  return out;
}

std::map<long, FockVector> Voa::homogeneous_parts(const FockVector& u) const {
  std::map<long, FockVector> out;
  for (const auto& [m, c] : u.terms()) {
    auto it = out.try_emplace(weight(m), FockVector(p())).first;
    it->second.add(m, c);
  }
  return out;
}

QuadOperator Voa::mode(const Monomial& u, long n) const {
  // u_n = X<n - wt + 1> for homogeneous u.
  return naive_field_mode(space_, u, n - weight(u) + 1);
}

FockVector Voa::product(const FockVector& u, long n, const FockVector& v) const {
  FockVector out(p());
  for (const auto& [m, c] : u.terms()) out += fock::apply_operator(space_, mode(m, n), v) * c;
  for (const auto& [m, c] : out.terms())
    if (m.size() > 2) throw OutOfSector("product leaves the quadratic sector");
  return out;
}

long max_weight(const FockVector& v) {
  long w = 0;
  for (const auto& [m, c] : v.terms()) w = std::max(w, fock::degree_num(m));
  return w;
}

FockVector Voa::square_bracket_coeff(const FockVector& u, const FockVector& v, long j) const {
  FockVector out(p());
  const long wv = max_weight(v);
  for (const auto& [wu, part] : homogeneous_parts(u)) {
    // u_n v = 0 for n >= wt u + wt v; the y^j coefficient needs n >= -j - 1.
    for (long n = -j - 1; n < wu + wv; ++n) {
      const Laurent kern = exp_series("y", Rational(wu), std::max(0L, j + n + 1)) *
                           exp_minus_one_power("y", -n - 1, j);
      const Rational c = kern.coeff({j});
      if (c.is_zero()) continue;
      out += product(part, n, v) * c;
    }
  }
  return out;
}

}  // namespace zetafock::voa

#include "zetafock/fields.hpp"

#include <stdexcept>

#include "zetafock/series.hpp"

namespace zetafock::fields {

using fock::Mode;

namespace {

long degree_of(const Monomial& w) { return fock::degree_num(w); }

Rational sign(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

}  // namespace

FieldEngine::FieldEngine(const TwistSetup& setup)
    : voa_(setup), space_(ModeSpace::twisted(setup)) {}

long FieldEngine::source_weight(const Monomial& src) {
  if (src.size() > 1) throw std::invalid_argument("direct fields need at most one mode");
  return src.empty() ? 0 : -src[0].lnum;
}

FockVector FieldEngine::direct_x(const Monomial& src, long n_num, const FockVector& v) const {
  if (src.size() > 1) throw std::invalid_argument("direct fields need at most one mode");
  if (src.empty()) return n_num == 0 ? v : FockVector(p());
  const int sigma = src[0].species;
  if (!space_.allowed(sigma, n_num) || v.is_zero()) return FockVector(p());
  const long a = -src[0].lnum;
  const Rational c = binomial(-space_.level(n_num) - Rational(1), a - 1);
  if (c.is_zero()) return FockVector(p());
  return fock::apply_mode(space_, Mode{sigma, n_num}, v) * c;
}

FockVector FieldEngine::direct_y(const Monomial& src, long m_num, const FockVector& v) const {
  return direct_x(src, m_num - (source_weight(src) - 1) * p(), v);
}

FockVector FieldEngine::homogeneous_product(const Monomial& u, const Monomial& v, long k,
                                            long c_num, long n_num, const Monomial& w) const {
  // sum_i C(k,i) (-1)^{k-i} u<i-c> v<N+c-i> w
  const FockVector wv = FockVector::basis(p(), w, Cyclotomic(p(), Rational(1)));
  FockVector out(p());
  for (long i = 0; i <= k; ++i) {
    const FockVector inner = direct_x(v, n_num + c_num - i * p(), wv);
    if (inner.is_zero()) continue;
    const FockVector outer = direct_x(u, i * p() - c_num, inner);
    if (outer.is_zero()) continue;
    out += outer * (binomial(Rational(k), i) * sign(k - i));
  }
  return out;
}

const std::vector<std::pair<long, FockVector>>& FieldEngine::homogeneous_terms(
    const Monomial& u, const Monomial& v, long k, long n_num, const Monomial& w) {
  PairKey key{u, v, k, n_num, w};
  if (auto it = hom_memo_.find(key); it != hom_memo_.end()) return it->second;
  std::vector<std::pair<long, FockVector>> terms;
  const long d = degree_of(w);
  // The contraction terms cancel below -deg w once k >= wt u + wt v.
  for (long c = -d; c <= d - n_num + k * p(); ++c) {
    FockVector g = homogeneous_product(u, v, k, c, n_num, w);
    if (!g.is_zero()) terms.emplace_back(c, std::move(g));
  }
  return hom_memo_.emplace(std::move(key), std::move(terms)).first->second;
}

std::vector<FockVector> FieldEngine::homogeneous_margin(const Monomial& u, const Monomial& v,
                                                        long k, long n_num, const Monomial& w,
                                                        long margin) {
  std::vector<FockVector> out;
  const long d = degree_of(w);
  for (long c = -d - margin; c < -d; ++c) out.push_back(homogeneous_product(u, v, k, c, n_num, w));
  const long top = d - n_num + k * p();
  for (long c = top + 1; c <= top + margin; ++c)
    out.push_back(homogeneous_product(u, v, k, c, n_num, w));
  return out;
}

FockVector FieldEngine::homogeneous_limit(const Monomial& u, const Monomial& v, long s, long k,
                                          long t, long n_num, const Monomial& w) {
  FockVector out(p());
  const Rational tf = factorial(t);
  for (const auto& [c, g] : homogeneous_terms(u, v, k, n_num, w)) {
    const Rational weight = pow(Rational(c, p()), t) / tf;
    if (weight.is_zero()) continue;
    out += g * (Cyclotomic::root_of_unity(p(), s * c) * Cyclotomic(p(), weight));
  }
  return out;
}

FockVector FieldEngine::homogeneous_iterate(const Monomial& u, const Monomial& v, long s, long J,
                                            long n_num, const Monomial& w, long extra_k) {
  const long k = source_weight(u) + source_weight(v) + extra_k;
  FockVector out(p());
  if (J + k < 0) return out;
  const Laurent inv = exp_minus_one_power("y", -k, J);
  for (long t = 0; t <= J + k; ++t) {
    const Rational e = inv.coeff({J - t});
    if (e.is_zero()) continue;
    out += homogeneous_limit(u, v, s, k, t, n_num, w) * e;
  }
  return out;
}

FockVector FieldEngine::y_product(const Monomial& u, const Monomial& v, long k, long a_num,
                                  long sum_num, const Monomial& w) const {
  // sum_i C(k,i) (-1)^i u_{k-i-a-1} v_{i-b-1} w with a + b = sum
  const FockVector wv = FockVector::basis(p(), w, Cyclotomic(p(), Rational(1)));
  const long b_num = sum_num - a_num;
  FockVector out(p());
  for (long i = 0; i <= k; ++i) {
    const FockVector inner = direct_y(v, (i - 1) * p() - b_num, wv);
    if (inner.is_zero()) continue;
    const FockVector outer = direct_y(u, (k - i - 1) * p() - a_num, inner);
    if (outer.is_zero()) continue;
    out += outer * (binomial(Rational(k), i) * sign(i));
  }
  return out;
}

namespace {

long y_lower(long d, long wu, int p) { return -d - p * std::max(1L, wu); }
long y_upper(long d, long sum_num, long wv, int p) { return sum_num + d + p * std::max(1L, wv); }

}  // namespace

const std::vector<std::pair<long, FockVector>>& FieldEngine::y_terms(const Monomial& u,
                                                                     const Monomial& v, long k,
                                                                     long sum_num,
                                                                     const Monomial& w) {
  PairKey key{u, v, k, sum_num, w};
  if (auto it = y_memo_.find(key); it != y_memo_.end()) return it->second;
  std::vector<std::pair<long, FockVector>> terms;
  const long d = degree_of(w);
  for (long a = y_lower(d, source_weight(u), p()); a <= y_upper(d, sum_num, source_weight(v), p()); ++a) {
    FockVector f = y_product(u, v, k, a, sum_num, w);
    if (!f.is_zero()) terms.emplace_back(a, std::move(f));
  }
  return y_memo_.emplace(std::move(key), std::move(terms)).first->second;
}

std::vector<FockVector> FieldEngine::y_margin(const Monomial& u, const Monomial& v, long k,
                                              long sum_num, const Monomial& w, long margin) {
  std::vector<FockVector> out;
  const long d = degree_of(w);
  const long lo = y_lower(d, source_weight(u), p());
  const long hi = y_upper(d, sum_num, source_weight(v), p());
  for (long a = lo - margin; a < lo; ++a) out.push_back(y_product(u, v, k, a, sum_num, w));
  for (long a = hi + 1; a <= hi + margin; ++a) out.push_back(y_product(u, v, k, a, sum_num, w));
  return out;
}

FockVector FieldEngine::y_limit(const Monomial& u, const Monomial& v, long s, long k, long i,
                                long e_num, const Monomial& w) {
  FockVector out(p());
  if (i < 0) return out;
  for (const auto& [a, f] : y_terms(u, v, k, e_num + i * p(), w)) {
    const Rational c = binomial(Rational(a, p()), i);
    if (c.is_zero()) continue;
    out += f * (Cyclotomic::root_of_unity(p(), s * a) * Cyclotomic(p(), c));
  }
  return out;
}

FockVector FieldEngine::y_iterate(const Monomial& u, const Monomial& v, long r, long i,
                                  long e_num, const Monomial& w, long extra_k) {
  const long k = source_weight(u) + source_weight(v) + extra_k;
  return y_limit(u, v, -r, k, i + k, e_num, w);
}

FockVector FieldEngine::assembled_monomial(const Monomial& m, long n_num, const Monomial& w) {
  if (m.size() <= 1)
    return direct_x(m, n_num, FockVector::basis(p(), w, Cyclotomic(p(), Rational(1))));
  if (m.size() > 2) throw voa::OutOfSector("assembled fields need at most two modes");
  auto key = std::make_tuple(m, n_num, w);
  if (auto it = assembled_memo_.find(key); it != assembled_memo_.end()) return it->second;

  const int sigma = m[0].species;
  const long a = -m[0].lnum;
  const Monomial u{{sigma, -1}};
  const Monomial v{m[1]};
  // [y^{a-1}] Y[u, y] v = m + (terms with a smaller first mode or fewer modes)
  const FockVector g = voa_.square_bracket_coeff(
      FockVector::basis(p(), u, Cyclotomic(p(), Rational(1))),
      FockVector::basis(p(), v, Cyclotomic(p(), Rational(1))), a - 1);
  const Cyclotomic lead = g.coeff(m);
  if (lead.is_zero()) throw std::logic_error("assembly: missing leading term");
  FockVector out = homogeneous_iterate(u, v, 0, a - 1, n_num, w);
  for (const auto& [mm, c] : g.terms()) {
    if (mm == m) continue;
    out -= assembled_monomial(mm, n_num, w) * c;
  }
  out *= lead.inverse();
  return assembled_memo_.emplace(std::move(key), std::move(out)).first->second;
}

FockVector FieldEngine::assembled_x(const FockVector& src, long n_num, const Monomial& w) {
  FockVector out(p());
  for (const auto& [m, c] : src.terms()) out += assembled_monomial(m, n_num, w) * c;
  return out;
}

FockVector FieldEngine::assembled_x(const FockVector& src, long n_num, const FockVector& w) {
  FockVector out(p());
  for (const auto& [m, c] : w.terms()) out += assembled_x(src, n_num, m) * c;
  return out;
}

}  // namespace zetafock::fields

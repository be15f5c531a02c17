#include "zetafock/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace zetafock {
namespace {

using Poly = std::vector<Rational>;

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

std::vector<long> exact_divide(std::vector<long> num, const std::vector<long>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic: inexact division");
  return q;
}

// Remainder and quotient of a by b over Q.
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int p) {
  if (p < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<long>> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(p); it != memo.end()) return it->second;
  }
  std::vector<long> poly(static_cast<std::size_t>(p) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(p)] = 1;
  for (int d = 1; d < p; ++d)
    if (p % d == 0) poly = exact_divide(poly, cyclotomic_polynomial(d));
  std::lock_guard lock(mu);
  return memo.emplace(p, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic(int p) : p_(p) {
  c_.assign(cyclotomic_polynomial(p).size() - 1, Rational(0));
}

Cyclotomic::Cyclotomic(int p, const Rational& value) : Cyclotomic(p) { c_[0] = value; }

Cyclotomic::Cyclotomic(int p, std::vector<Rational> poly) : Cyclotomic(p) {
  const auto& phi = cyclotomic_polynomial(p);
  const std::size_t n = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > n;) {
    const Rational c = poly[i];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= n; ++j) poly[i - n + j] -= c * Rational(phi[j]);
  }
  for (std::size_t i = 0; i < n && i < poly.size(); ++i) c_[i] = poly[i];
}

Cyclotomic Cyclotomic::root_of_unity(int p, long s) {
  const long e = ((s % p) + p) % p;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
  poly[static_cast<std::size_t>(e)] = Rational(1);
  return Cyclotomic(p, std::move(poly));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational Cyclotomic::as_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value " + str() + " is not rational");
  return c_[0];
}

void Cyclotomic::check_order(const Cyclotomic& o) const {
  if (o.p_ != p_)
    throw std::invalid_argument("mixed cyclotomic orders " + std::to_string(p_) + " and " +
                                std::to_string(o.p_));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out(*this);
  for (auto& c : out.c_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  check_order(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& c : c_) c *= q;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  check_order(o);
  if (c_.size() == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  *this = Cyclotomic(p_, mul(c_, o.c_));
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("cyclotomic: inverse of zero");
  if (c_.size() == 1) return Cyclotomic(p_, Rational(1) / c_[0]);
  // Extended Euclid: track s with s * a == r (mod phi).
  const auto& phi_int = cyclotomic_polynomial(p_);
  Poly phi;
  for (long v : phi_int) phi.emplace_back(v);
  Poly r0 = phi, r1 = c_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r1 is a nonzero constant since phi is irreducible.
  const Rational inv = Rational(1) / r1[0];
  for (auto& c : s1) c *= inv;
  return Cyclotomic(p_, std::move(s1));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  a.check_order(b);
  return a.c_ == b.c_;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return c_[0].str();
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i];
  os << ']';
  return os.str();
}

}  // namespace zetafock

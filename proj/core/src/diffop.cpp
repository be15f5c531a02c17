#include "zetafock/diffop.hpp"

#include <sstream>

#include "zetafock/bernoulli.hpp"

namespace zetafock::diffop {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(long degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Poly::coeff(long i) const {
  return i >= 0 && i < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::shifted(const Rational& n) const {
  // sum_k c_k (D+n)^k, expanded binomially.
  std::vector<Rational> out(c_.size(), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    Rational npow(1);
    for (std::size_t j = 0; j <= k; ++j) {
      // coefficient of D^{k-j}: C(k, j) n^j
      out[k - j] += c_[k] * binomial(Rational(static_cast<long>(k)), static_cast<long>(j)) * npow;
      npow *= n;
    }
  }
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& q) {
  for (auto& c : c_) c *= q;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(out));
}

DiffOpElement DiffOpElement::term(long m, Poly f) {
  DiffOpElement e;
  e.add_term(m, f);
  return e;
}

DiffOpElement DiffOpElement::central_element(const Rational& c) {
  DiffOpElement e;
  e.central_ = c;
  return e;
}

void DiffOpElement::add_term(long m, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOpElement& DiffOpElement::operator+=(const DiffOpElement& o) {
  for (const auto& [m, f] : o.terms_) add_term(m, f);
  central_ += o.central_;
  return *this;
}

DiffOpElement& DiffOpElement::operator-=(const DiffOpElement& o) {
  for (const auto& [m, f] : o.terms_) add_term(m, f * Rational(-1));
  central_ -= o.central_;
  return *this;
}

DiffOpElement& DiffOpElement::operator*=(const Rational& q) {
  if (q.is_zero()) {
    terms_.clear();
    central_ = Rational(0);
    return *this;
  }
  for (auto& [m, f] : terms_) f *= q;
  central_ *= q;
  return *this;
}

std::string DiffOpElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "t^" << m << "*(";
    for (long i = 0; i <= f.degree(); ++i) os << (i ? ", " : "") << f.coeff(i);
    os << ")";
  }
  if (!central_.is_zero() || first) os << (first ? "" : " + ") << central_ << "*c";
  return os.str();
}

DiffOpElement generator(const GeneratorIndex& index) {
  const auto [n, r, basis] = index;
  // (D+n)^r D^{r+1}
  Poly f = Poly::monomial(r + 1);
  const Poly shift({Rational(n), Rational(1)});
  for (long i = 0; i < r; ++i) f = f * shift;
  f *= Rational((r % 2 == 0) ? -1 : 1);
  DiffOpElement e = DiffOpElement::term(n, f);
  if (basis == Basis::Bar && n == 0)
    e += DiffOpElement::central_element(Rational((r % 2 == 0) ? 1 : -1, 2) * zeta_negative(1 + 2 * r));
  return e;
}

namespace {

// Psi(t^m f, t^n g) on basis elements.
Rational psi_terms(long m, const Poly& f, long n, const Poly& g) {
  if (m + n != 0 || m == 0) return Rational(0);
  if (m < 0) return -psi_terms(n, g, m, f);
  Rational acc(0);
  for (long i = 1; i <= m; ++i) acc += f(Rational(-i)) * g(Rational(m - i));
  return acc;
}

}  // namespace

Rational cocycle_psi(const DiffOpElement& a, const DiffOpElement& b) {
  Rational acc(0);
  for (const auto& [m, f] : a.terms())
    if (auto it = b.terms().find(-m); it != b.terms().end()) acc += psi_terms(m, f, -m, it->second);
  return acc;
}

DiffOpElement bracket(const DiffOpElement& a, const DiffOpElement& b) {
  DiffOpElement out;
  for (const auto& [m, f] : a.terms()) {
    for (const auto& [n, g] : b.terms()) {
      Poly h = f.shifted(Rational(n)) * g - g.shifted(Rational(m)) * f;
      out += DiffOpElement::term(m + n, std::move(h));
    }
  }
  out += DiffOpElement::central_element(Rational(-1, 2) * cocycle_psi(a, b));
  return out;
}

Decomposition decompose(const DiffOpElement& e, long degree) {
  Decomposition d;
  d.central = e.central();
  Poly rest;
  for (const auto& [m, f] : e.terms()) {
    if (m == degree) rest = f;
    else d.residual += DiffOpElement::term(m, f);
  }
  Poly residual_poly;
  while (!rest.is_zero()) {
    const long deg = rest.degree();
    if (deg % 2 == 0) {
      // Even leading degree is outside the span of the generators.
      const Poly lead = Poly::monomial(deg, rest.leading());
      residual_poly += lead;
      rest -= lead;
      continue;
    }
    const long i = (deg - 1) / 2;
    const Poly basis = generator({degree, i, Basis::Plain}).terms().at(degree);
    const Rational c = rest.leading() / basis.leading();
    d.coefficients[i] += c;
    rest -= basis * c;
  }
  for (auto it = d.coefficients.begin(); it != d.coefficients.end();)
    it = it->second.is_zero() ? d.coefficients.erase(it) : std::next(it);
  d.residual += DiffOpElement::term(degree, residual_poly);
  return d;
}

Rational bar_central_term(long r, long s, long m) { return bar_central_term(r, s, m, -m); }

Rational bar_central_term(long r, long s, long m, long n) {
  if (m + n != 0) return Rational(0);
  const DiffOpElement a = generator({m, r, Basis::Plain});
  const DiffOpElement b = generator({n, s, Basis::Plain});
  const Decomposition d = decompose(bracket(a, b), 0);
  Rational central = d.central;
  for (const auto& [i, c] : d.coefficients)
    central -= c * Rational((i % 2 == 0) ? 1 : -1, 2) * zeta_negative(1 + 2 * i);
  return central;
}

Rational pure_monomial_central(long r, long s, long m) {
  const long k = r + s;
  const Rational f = factorial(k + 1);
  return f * f / (Rational(2) * factorial(2 * k + 3)) * pow(Rational(m), 2 * k + 3);
}

}  // namespace zetafock::diffop

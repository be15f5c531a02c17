#include "zetafock/bernoulli.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace zetafock {

Rational bernoulli_number(long n) {
  if (n < 0) throw std::domain_error("bernoulli_number: negative index");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  // sum_{k=0}^{m} C(m+1,k) B_k = 0 for m >= 1.
  while (static_cast<long>(table.size()) <= n) {
    const long m = static_cast<long>(table.size());
    Rational acc(0);
    mpz_class c(1);  // C(m+1, k)
    for (long k = 0; k < m; ++k) {
      acc += Rational(c) * table[static_cast<std::size_t>(k)];
      c = c * (m + 1 - k) / (k + 1);
    }
    table.push_back(-acc / Rational(m + 1));
  }
  return table[static_cast<std::size_t>(n)];
}

Rational bernoulli_poly(long n, const Rational& x) {
  if (n < 0) throw std::domain_error("bernoulli_poly: negative index");
  // Horner over descending powers of x.
  Rational acc(0);
  mpz_class c(1);
  std::vector<Rational> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    terms.push_back(Rational(c) * bernoulli_number(k));
    c = c * (n - k) / (k + 1);
  }
  for (const auto& t : terms) acc = acc * x + t;
  return acc;
}

Rational zeta_negative(long m) {
  if (m < 1) throw std::domain_error("zeta_negative: m must be positive");
  return -bernoulli_number(m + 1) / Rational(m + 1);
}

}  // namespace zetafock

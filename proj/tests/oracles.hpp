#pragma once

#include <cstdlib>
#include <iterator>
#include <map>
#include <vector>

#include "zetafock/fock.hpp"
#include "zetafock/rational.hpp"

namespace zetafock::oracle {

using fock::FockVector;
using fock::Monomial;

// Independent one-boson oracle for the untwisted bilinear operators: states
// are occupation vectors indexed by positive level, the operator is evaluated
// as a literal finite sum over j of normal-ordered products.
using Occupation = std::vector<int>;  // occ[l] = multiplicity of alpha(-l), l >= 1
using OracleVector = std::map<Occupation, Rational>;

inline void oracle_mode(long m, OracleVector& v) {
  OracleVector out;
  for (const auto& [occ0, c] : v) {
    Occupation occ = occ0;
    if (m < 0) {
      if (static_cast<long>(occ.size()) <= -m) occ.resize(static_cast<std::size_t>(-m) + 1, 0);
      occ[static_cast<std::size_t>(-m)] += 1;
      while (!occ.empty() && occ.back() == 0) occ.pop_back();
      out[occ] += c;
    } else if (m > 0) {
      if (static_cast<long>(occ.size()) <= m || occ[static_cast<std::size_t>(m)] == 0) continue;
      const int k = occ[static_cast<std::size_t>(m)];
      occ[static_cast<std::size_t>(m)] -= 1;
      while (!occ.empty() && occ.back() == 0) occ.pop_back();
      out[occ] += c * Rational(m) * Rational(k);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  v = std::move(out);
}

inline OracleVector oracle_L(long r, long n, const Occupation& start) {
  long deg = 0;
  for (std::size_t l = 1; l < start.size(); ++l) deg += static_cast<long>(l) * start[l];
  OracleVector total;
  const long bound = deg + std::abs(n) + 2;
  for (long j = -bound; j <= bound; ++j) {
    const long i = n - j;
    const Rational w = pow(Rational(j), r) * pow(Rational(i), r) * Rational(1, 2);
    if (w.is_zero() || j == 0 || i == 0) continue;
    OracleVector v{{start, Rational(1)}};
    // Normal order: the positive mode acts first.
    const long first = std::max(j, i), second = std::min(j, i);
    if (first > 0 && second > 0) {
      oracle_mode(first, v);
      oracle_mode(second, v);
    } else {
      oracle_mode(first > 0 ? first : second, v);
      oracle_mode(first > 0 ? second : first, v);
    }
    for (const auto& [o, c] : v) total[o] += c * w;
  }
  for (auto it = total.begin(); it != total.end();) it = it->second.is_zero() ? total.erase(it) : std::next(it);
  return total;
}

inline Occupation to_occupation(const Monomial& m) {
  Occupation occ;
  for (const auto& mode : m) {
    const auto l = static_cast<std::size_t>(-mode.lnum);
    if (occ.size() <= l) occ.resize(l + 1, 0);
    occ[l] += 1;
  }
  return occ;
}

inline OracleVector to_oracle(const FockVector& v) {
  OracleVector out;
  for (const auto& [m, c] : v.terms()) out[to_occupation(m)] = c.as_rational();
  return out;
}


/// Coefficients of prod_{l >= 1} (1 - q^l)^{-d_{l mod p}} up to q^max_num, by
/// repeated geometric-series multiplication.
inline std::vector<long> colored_partition_counts(int p, const std::vector<int>& dims, long max_num) {
  std::vector<long> c(static_cast<std::size_t>(max_num) + 1, 0);
  c[0] = 1;
  for (long l = 1; l <= max_num; ++l)
    for (int copy = 0; copy < dims[static_cast<std::size_t>(l % p)]; ++copy)
      for (long n = l; n <= max_num; ++n) c[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n - l)];
  return c;
}

}  // namespace zetafock::oracle

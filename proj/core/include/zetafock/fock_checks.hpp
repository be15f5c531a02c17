#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zetafock/fock.hpp"
#include "zetafock/report.hpp"

namespace zetafock::fock {

/// Converts a degree bound to a numerator over p; throws InvalidSetup if the
/// denominator does not divide p or the bound is negative.
long degree_numerator(const TwistSetup& setup, const Rational& max_degree);

/// Checks [L(r)(m), L(s)(n)] = sum_i a_i L(i)(m+n) + central * d on every
/// basis vector up to a fixed degree, reusing operator applications across
/// calls. The structure constants and central terms come from the abstract
/// algebra. Single-owner; not synchronized.
class RepresentationChecker {
 public:
  RepresentationChecker(const TwistSetup& setup, const Rational& max_degree);

  CheckRecord check(long r, long s, long m, long n, Variant variant);
  const TwistSetup& setup() const { return setup_; }

 private:
  const QuadOperator& op(long r, long n, Variant variant);
  static std::string key(long r, long n, Variant variant);

  TwistSetup setup_;
  Rational max_degree_;
  ModeSpace space_;
  std::vector<std::vector<Monomial>> basis_;
  OperatorCache cache_;
  std::map<std::string, QuadOperator> ops_;
};

CheckRecord rep_check(const TwistSetup& setup, long r, long s, long m, long n, const Rational& max_degree,
                      Variant variant = Variant::Plain);

/// Vacuum eigenvalue of L(r)(0) computed by applying the operator.
Rational vacuum_eigenvalue(const TwistSetup& setup, long r, Variant variant);

/// Compares (-1)^k times the vacuum eigenvalues of L(k)(0) with the
/// coefficients of x^{2k}/(2k)! in (1/2) d/dx sum_k d_k (e^{kx/p} - 1)/(1 - e^x)
/// for 1 <= k <= order/2. Remaining coefficients are reported unjudged.
CheckRecord delta_genfun(const TwistSetup& setup, long order);

/// Coefficients of prod_{l >= 1} (1 - t^{l/p})^{-d_{l mod p}} up to t^{max_num/p}.
std::vector<mpz_class> graded_dimensions_from_product(const TwistSetup& setup, long max_num);

CheckRecord graded_dimension_check(const TwistSetup& setup, const Rational& max_degree);

}  // namespace zetafock::fock

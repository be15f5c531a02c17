#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "zetafock/fock.hpp"

namespace zetafock::voa {

using fock::FockVector;
using fock::ModeSpace;
using fock::Monomial;
using fock::QuadOperator;
using fock::TwistSetup;

/// Raised when a product would leave the span of 1, beta(-a)1, beta(-a)gamma(-b)1.
class OutOfSector : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// C(a1 j + a0, k) as a polynomial in j, lowest degree first.
std::vector<Rational> binomial_poly(const Rational& a0, const Rational& a1, long k);

/// X-mode <N> (N = n_num / q) of the normal-ordered field
/// :d^(a1-1) beta_1(x) ... d^(ak-1) beta_k(x): x^wt for a monomial with at most
/// two modes. On the untwisted space this is the vertex operator of the
/// monomial; on a twisted space it omits the correction terms that quadratic
/// sources acquire, which is why twisted quadratic fields are assembled
/// separately.
QuadOperator naive_field_mode(const ModeSpace& space, const Monomial& source, long n_num);

/// The free-boson vertex operator algebra S(h^-), realized on integer modes of
/// the eigenbasis of h, restricted to the quadratic sector.
class Voa {
 public:
  explicit Voa(const TwistSetup& setup);

  const ModeSpace& space() const { return space_; }
  int p() const { return space_.p(); }

  FockVector vacuum() const;
  FockVector linear(int sigma, long a) const;
  FockVector quadratic(int sigma, long a, int tau, long b) const;
  /// (1/2) sum_sigma beta_sigma(-1) beta_sigma'(-1) 1.
  FockVector omega() const;
  /// sum_sigma beta_sigma(-m-1) beta_sigma'(-m-1) 1.
  FockVector generator_vector(long m) const;

  /// nu^s, scaling each mode of eigen-index k by w_p^{sk}.
  FockVector nu_power(const FockVector& u, long s) const;
  static long weight(const Monomial& m) { return fock::degree_num(m); }
  std::map<long, FockVector> homogeneous_parts(const FockVector& u) const;
  int pairing(int sigma, int tau) const { return space_.partner(sigma) == tau ? 1 : 0; }

  /// Vertex operator mode u_n (x^{-n-1} convention) of a monomial.
  QuadOperator mode(const Monomial& u, long n) const;
  /// u_n v with sector check.
  FockVector product(const FockVector& u, long n, const FockVector& v) const;
  /// Coefficient of y^j in Y[u, y] v = Y(e^{y L(0)} u, e^y - 1) v.
  FockVector square_bracket_coeff(const FockVector& u, const FockVector& v, long j) const;

 private:
  ModeSpace space_;
};

/// Highest weight present in a vector (0 for the zero vector).
long max_weight(const FockVector& v);

}  // namespace zetafock::voa

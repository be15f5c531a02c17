#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "zetafock/rational.hpp"

namespace zetafock {

/// Integer coefficients of the p-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(int p);

/// Element of Q(w_p), stored as the residue of a rational polynomial in z
/// modulo Phi_p(z). The coefficient vector always has length deg Phi_p, so
/// equality is coefficient-wise.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int p);
  Cyclotomic(int p, const Rational& value);
  /// Reduces an arbitrary polynomial in z (lowest degree first).
  Cyclotomic(int p, std::vector<Rational> poly);

  /// w_p^s for any integer s.
  static Cyclotomic root_of_unity(int p, long s);

  int order() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()); }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Constant coefficient; throws if the element is not rational.
  Rational as_rational() const;

  Cyclotomic inverse() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
  friend Cyclotomic operator*(const Rational& q, Cyclotomic a) { return a *= q; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Rational value as "a/b" when rational, otherwise "[c0, c1, ...]".
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

 private:
  void check_order(const Cyclotomic& o) const;
  int p_;
  std::vector<Rational> c_;
};

}  // namespace zetafock

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "zetafock/rational.hpp"

namespace zetafock::diffop {

/// Polynomial in D = t d/dt with rational coefficients, lowest degree first.
/// No trailing zeros are stored, so the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly monomial(long degree, const Rational& c = Rational(1));
  static Poly constant(const Rational& c) { return monomial(0, c); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  Rational coeff(long i) const;
  Rational leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  /// f(D + n).
  Poly shifted(const Rational& n) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& q);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& q) { return a *= q; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Element sum_m t^m f_m(D) + central * c of the centrally extended algebra.
class DiffOpElement {
 public:
  DiffOpElement() = default;
  static DiffOpElement term(long m, Poly f);
  static DiffOpElement central_element(const Rational& c);

  const std::map<long, Poly>& terms() const { return terms_; }
  const Rational& central() const { return central_; }
  bool is_zero() const { return terms_.empty() && central_.is_zero(); }

  DiffOpElement& operator+=(const DiffOpElement& o);
  DiffOpElement& operator-=(const DiffOpElement& o);
  DiffOpElement& operator*=(const Rational& q);
  friend DiffOpElement operator+(DiffOpElement a, const DiffOpElement& b) { return a += b; }
  friend DiffOpElement operator-(DiffOpElement a, const DiffOpElement& b) { return a -= b; }
  friend DiffOpElement operator*(DiffOpElement a, const Rational& q) { return a *= q; }
  friend DiffOpElement operator*(const Rational& q, DiffOpElement a) { return a *= q; }
  friend bool operator==(const DiffOpElement&, const DiffOpElement&) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const DiffOpElement& e) { return os << e.str(); }

 private:
  void add_term(long m, const Poly& f);
  std::map<long, Poly> terms_;
  Rational central_;
};

enum class Basis { Plain, Bar };

struct GeneratorIndex {
  long n = 0;
  long r = 0;
  Basis basis = Basis::Plain;
};

struct Decomposition {
  std::map<long, Rational> coefficients;  // generator level i -> a_i
  Rational central;
  DiffOpElement residual;
};

/// L_n^(r) = (-1)^{r+1} D^r (t^n D) D^r = t^n (-1)^{r+1} (D+n)^r D^{r+1};
/// the bar variant adds (-1)^r/2 zeta(-1-2r) delta_{n,0} c.
DiffOpElement generator(const GeneratorIndex& index);

/// The 2-cocycle Psi, bilinear, antisymmetric, zero unless degrees sum to 0.
Rational cocycle_psi(const DiffOpElement& a, const DiffOpElement& b);

/// [A, B] with differential part f(D+n)g(D) - g(D+m)f(D) and central part -Psi/2.
DiffOpElement bracket(const DiffOpElement& a, const DiffOpElement& b);

/// Expresses a single-degree element in the plain generators of that degree by
/// a triangular solve on leading terms (degree 2i+1 for level i). Whatever is
/// outside their span is returned as the residual.
Decomposition decompose(const DiffOpElement& e, long degree);

/// Central coefficient of [Lbar_m^(r), Lbar_{-m}^(s)], computed by changing
/// basis from the plain bracket.
Rational bar_central_term(long r, long s, long m);
/// Same, for an arbitrary pair of degrees (zero unless m + n = 0).
Rational bar_central_term(long r, long s, long m, long n);

/// Closed form (r+s+1)!^2 / (2 (2(r+s)+3)!) m^{2(r+s)+3}.
Rational pure_monomial_central(long r, long s, long m);

}  // namespace zetafock::diffop

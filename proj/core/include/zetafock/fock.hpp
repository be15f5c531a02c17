#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetafock/cyclotomic.hpp"
#include "zetafock/rational.hpp"

namespace zetafock::fock {

class InvalidSetup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Period p of the isometry and the eigenspace dimensions d_k = dim h_(k).
struct TwistSetup {
  int p = 1;
  std::vector<int> dims{1};

  /// Validates p >= 1, one nonnegative entry per k, d >= 1 and
  /// d_k = d_{(p-k) mod p}; throws InvalidSetup otherwise.
  static TwistSetup make(int p, std::vector<int> dims);

  int total_dim() const;
  int dual(int k) const { return (p - k) % p; }
  friend bool operator==(const TwistSetup&, const TwistSetup&) = default;
};

void to_json(nlohmann::json& j, const TwistSetup& s);
void from_json(const nlohmann::json& j, TwistSetup& s);

/// Basis vector beta_{k,a} of h: eigenvalue index k, copy index a in [1, d_k].
/// The pairing is <beta_{k,a}, beta_{k',a'}> = [k + k' = 0 mod p] [a = a'].
struct Species {
  int k = 0;
  int a = 1;
  friend bool operator==(const Species&, const Species&) = default;
};

/// One mode beta_species(lnum / q). Ordering is lexicographic on
/// (species, lnum), which fixes the canonical monomial order.
struct Mode {
  int species = 0;
  long lnum = 0;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Sorted multiset of creation modes (all lnum < 0).
using Monomial = std::vector<Mode>;

/// The mode algebra acting on a Fock space: the species of h, the pairing and
/// the allowed levels. Twisted spaces use levels in k/p + Z (q = p);
/// untwisted spaces use integer levels for every species (q = 1) but keep the
/// eigen-labels so that nu still acts by w_p^k.
class ModeSpace {
 public:
  static ModeSpace twisted(const TwistSetup& setup);
  static ModeSpace untwisted(const TwistSetup& setup);

  const TwistSetup& setup() const { return setup_; }
  int p() const { return setup_.p; }
  int q() const { return q_; }
  const std::vector<Species>& species() const { return species_; }
  int partner(int sigma) const { return partner_[static_cast<std::size_t>(sigma)]; }
  int index_of(int k, int a) const;
  /// Whether beta_sigma(lnum / q) is a mode of this space.
  bool allowed(int sigma, long lnum) const;
  /// Residue class (mod q) of the numerators allowed for sigma.
  long level_class(int sigma) const;
  Rational level(long lnum) const { return Rational(lnum, q_); }

  friend bool operator==(const ModeSpace& a, const ModeSpace& b) {
    return a.setup_ == b.setup_ && a.q_ == b.q_;
  }

 private:
  ModeSpace(const TwistSetup& setup, int q);
  TwistSetup setup_;
  int q_;
  std::vector<Species> species_;
  std::vector<int> partner_;
};

/// Degree of a monomial as a numerator over q.
long degree_num(const Monomial& m);

/// Finite Q(w_p)-linear combination of monomials.
class FockVector {
 public:
  explicit FockVector(int p = 1) : p_(p) {}
  static FockVector vacuum(int p);
  static FockVector basis(int p, Monomial m, const Cyclotomic& c);

  int p() const { return p_; }
  const std::map<Monomial, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Cyclotomic coeff(const Monomial& m) const;

  void add(const Monomial& m, const Cyclotomic& c);
  void add(Monomial&& m, const Cyclotomic& c);
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const Cyclotomic& c);
  FockVector& operator*=(const Rational& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(FockVector a, const Cyclotomic& c) { return a *= c; }
  friend FockVector operator*(const Cyclotomic& c, FockVector a) { return a *= c; }
  friend FockVector operator*(FockVector a, const Rational& c) { return a *= c; }
  friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  std::string str(const ModeSpace& space) const;

 private:
  int p_;
  std::map<Monomial, Cyclotomic> terms_;
};

nlohmann::json to_json(const ModeSpace& space, const FockVector& v);
nlohmann::json monomial_json(const ModeSpace& space, const Monomial& m);
nlohmann::json cyclotomic_json(const Cyclotomic& c);

/// Applies beta_sigma(lnum / q). Negative levels create, positive levels
/// contract against the matching creation modes, level 0 acts as zero.
FockVector apply_mode(const ModeSpace& space, const Mode& mode, const FockVector& v);

/// All monomials of degree <= max_degree_num / q, grouped by degree numerator.
std::vector<std::vector<Monomial>> enumerate_basis(const ModeSpace& space, long max_degree_num);

/// Operator in the span of the identity, single modes beta_sigma(n) and
/// normal-ordered bilinears sum_j K(j) :beta_sigma(j) beta_tau(n-j): with K a
/// polynomial in the level j. Lowers degree by n = n_num / q.
struct QuadOperator {
  long n_num = 0;
  /// (sigma, tau) -> coefficients of K(j), lowest power first.
  std::map<std::pair<int, int>, std::vector<Cyclotomic>> bilinear;
  std::map<int, Cyclotomic> linear;
  Cyclotomic scalar;

  explicit QuadOperator(int p = 1, long n = 0) : n_num(n), scalar(p) {}
  bool is_zero() const;
  QuadOperator& operator+=(const QuadOperator& o);
  QuadOperator& operator*=(const Cyclotomic& c);
  friend QuadOperator operator+(QuadOperator a, const QuadOperator& b) { return a += b; }
  friend QuadOperator operator*(QuadOperator a, const Cyclotomic& c) { return a *= c; }
  friend QuadOperator operator*(const Cyclotomic& c, QuadOperator a) { return a *= c; }
  /// Drops zero entries so structurally equal operators compare equal.
  QuadOperator canonical() const;
  friend bool operator==(const QuadOperator& a, const QuadOperator& b);
};

enum class Variant { Plain, Bar };

/// Scalar correction of L^(r)(0): -(-1)^r/(4(r+1)) sum_k d_k (B_{2r+2}(k/p) - B_{2r+2})
/// for the plain variant, without the B_{2r+2} term for the bar variant.
Rational correction_scalar(const TwistSetup& setup, long r, Variant variant);

/// (1/2) sum_{sigma} sum_j (-j)^r1 (-(n-j))^r2 :beta_sigma(j) beta_sigma'(n-j): with
/// sigma' the dual partner, plus the correction scalar when n = 0 and r1 = r2.
QuadOperator quad_operator(const TwistSetup& setup, long r1, long r2, long n, Variant variant);

FockVector apply_operator(const ModeSpace& space, const QuadOperator& op, const FockVector& v);
FockVector apply_operator(const ModeSpace& space, const QuadOperator& op, const Monomial& m);

/// Memoizes op applications on single monomials. Not synchronized: one cache
/// per verification task.
class OperatorCache {
 public:
  explicit OperatorCache(const ModeSpace& space) : space_(space) {}
  const ModeSpace& space() const { return space_; }
  /// key identifies op within this cache.
  const FockVector& apply(const std::string& key, const QuadOperator& op, const Monomial& m);
  FockVector apply(const std::string& key, const QuadOperator& op, const FockVector& v);

 private:
  ModeSpace space_;
  std::map<std::pair<std::string, Monomial>, FockVector> memo_;
};

}  // namespace zetafock::fock

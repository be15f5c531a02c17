#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "zetafock/fock.hpp"
#include "zetafock/voa.hpp"

namespace zetafock::fields {

using fock::FockVector;
using fock::ModeSpace;
using fock::Monomial;
using fock::TwistSetup;

/// Twisted fields on S[nu] built from products of the weight-one fields.
///
/// Sources are vectors of the untwisted algebra (see voa::Voa). A source
/// monomial with at most one mode (the vacuum or beta_sigma(-a)1) has a
/// direct field; every other field is obtained from limits of products of
/// direct fields. Exponent and mode arguments named *_num are numerators over
/// p. Not synchronized: use one engine per task.
class FieldEngine {
 public:
  explicit FieldEngine(const TwistSetup& setup);

  const voa::Voa& voa() const { return voa_; }
  const ModeSpace& space() const { return space_; }
  int p() const { return space_.p(); }

  static long source_weight(const Monomial& src);

  /// X-mode <N> of a direct source: X(v, x) = x^{wt v} Y(v, x) = sum_N v<N> x^{-N}.
  FockVector direct_x(const Monomial& src, long n_num, const FockVector& v) const;
  /// Vertex-operator mode v_m (x^{-m-1} convention) of a direct source.
  FockVector direct_y(const Monomial& src, long m_num, const FockVector& v) const;

  /// Coefficient of y^t x2^{-N} in
  /// lim_{x1^{1/p} -> w^s (e^y x2)^{1/p}} (x1/x2 - 1)^k X(u, x1) X(v, x2) w.
  FockVector homogeneous_limit(const Monomial& u, const Monomial& v, long s, long k, long t,
                               long n_num, const Monomial& w);
  /// Coefficient of y^J x2^{-N} in X(Y[nu^{-s} u, y] v, x2) w, read off the
  /// homogeneous limit with k = wt u + wt v + extra_k.
  FockVector homogeneous_iterate(const Monomial& u, const Monomial& v, long s, long J, long n_num,
                                 const Monomial& w, long extra_k = 0);

  /// Coefficient of x0^I x2^E in
  /// lim_{x1^{1/p} -> w^s (x2 + x0)^{1/p}} (x1 - x2)^k Y(u, x1) Y(v, x2) w.
  FockVector y_limit(const Monomial& u, const Monomial& v, long s, long k, long i, long e_num,
                     const Monomial& w);
  /// Coefficient of x0^I x2^E in Y(Y(nu^r u, x0) v, x2) w, read off the limit
  /// with s = -r and k = wt u + wt v + extra_k.
  FockVector y_iterate(const Monomial& u, const Monomial& v, long r, long i, long e_num,
                       const Monomial& w, long extra_k = 0);

  /// Products summed in a limit coefficient that lie just outside the
  /// summation range; all must vanish for the range to be exact.
  std::vector<FockVector> homogeneous_margin(const Monomial& u, const Monomial& v, long k,
                                             long n_num, const Monomial& w, long margin);
  std::vector<FockVector> y_margin(const Monomial& u, const Monomial& v, long k, long sum_num,
                                   const Monomial& w, long margin);

  /// X-mode <N> of any source in the quadratic sector. Quadratic monomials
  /// are solved for from homogeneous limits by recursion on the first mode.
  FockVector assembled_x(const FockVector& src, long n_num, const Monomial& w);
  FockVector assembled_x(const FockVector& src, long n_num, const FockVector& w);

 private:
  using PairKey = std::tuple<Monomial, Monomial, long, long, Monomial>;
  const std::vector<std::pair<long, FockVector>>& homogeneous_terms(const Monomial& u,
                                                                    const Monomial& v, long k,
                                                                    long n_num, const Monomial& w);
  const std::vector<std::pair<long, FockVector>>& y_terms(const Monomial& u, const Monomial& v,
                                                          long k, long sum_num,
                                                          const Monomial& w);
  FockVector homogeneous_product(const Monomial& u, const Monomial& v, long k, long c_num,
                                 long n_num, const Monomial& w) const;
  FockVector y_product(const Monomial& u, const Monomial& v, long k, long a_num, long sum_num,
                       const Monomial& w) const;
  FockVector assembled_monomial(const Monomial& m, long n_num, const Monomial& w);

  voa::Voa voa_;
  ModeSpace space_;
  std::map<PairKey, std::vector<std::pair<long, FockVector>>> hom_memo_;
  std::map<PairKey, std::vector<std::pair<long, FockVector>>> y_memo_;
  std::map<std::tuple<Monomial, long, Monomial>, FockVector> assembled_memo_;
};

}  // namespace zetafock::fields

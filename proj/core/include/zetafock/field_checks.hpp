#pragma once

#include <vector>

#include "zetafock/fields.hpp"
#include "zetafock/fock.hpp"
#include "zetafock/report.hpp"
#include "zetafock/series.hpp"

namespace zetafock::fields {

using fock::QuadOperator;
using fock::Variant;

/// Region compared by the identity checks: every formal-variable exponent in
/// [-exponent_max, exponent_max] and input vectors up to max_degree.
struct FieldWindow {
  long exponent_max = 2;
  Rational max_degree{3};
};

/// The sources beta_sigma(-1)1 for every species, optionally preceded by the vacuum.
std::vector<Monomial> weight_one_sources(const FieldEngine& eng, bool include_vacuum);

/// Twisted Jacobi identity in the vertex-operator convention, coefficient by
/// coefficient in (x0, x1, x2), with the iterate on the right supplied by the
/// modified-weak-associativity limit.
CheckRecord jacobi_check(FieldEngine& eng, const Monomial& u, const Monomial& v, const FieldWindow& win);

/// Limit checks of the iterate construction: divisibility by x0^k (and by
/// (e^y - 1)^k), independence of k, s-periodicity, the s-shift rule, and
/// agreement of the vertex-operator limit with the homogeneous limit on the
/// vectors u_j v.
CheckRecord iterate_limit_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                const FieldWindow& win);

/// Twisted Jacobi identity for homogeneous operators (logarithmic variable
/// y = log(1 + x0/x2)) with the right side from homogeneous limits.
CheckRecord homogeneous_jacobi_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                     const FieldWindow& win);

/// Commutator formula [X(u,x1), X(v,x2)] = Res_y (1/p) sum_r delta(...) X(Y[nu^r u, y] v, x2).
CheckRecord homogeneous_commutator_check(FieldEngine& eng, const Monomial& u, const Monomial& v,
                                         const FieldWindow& win);

/// Assembled fields: omega against the bilinear operators, linear sources
/// rebuilt from limits with the vacuum, truncation and congruence support.
CheckRecord assembly_check(FieldEngine& eng, long n_max, const Rational& max_degree);

/// Virasoro relations of the assembled L(n) = X<n>(omega) with central charge
/// d, the L(0) spectrum, the L(-1)-derivative property and [L(m), beta(n)].
CheckRecord virasoro_axiom_check(FieldEngine& eng, long m_max, const Rational& max_degree);

/// (1/2) d/du F(u), u = y2 - y1, with F(u) = sum_k d_k (e^{ku/p} - 1)/(1 - e^u)
/// (plain) or sum_k d_k e^{ku/p}/(1 - e^u) (bar), certified up to u^hi. This
/// is the correction term of the generating function written in u.
Laurent correction_series(const fock::TwistSetup& setup, Variant variant, long hi);

/// Coefficient of x^{-n} y1^r1 y2^r2 / (r1! r2!) in the regular part of the
/// generating function.
QuadOperator generating_L(const fock::TwistSetup& setup, long r1, long r2, long n, Variant variant);

/// Diagonal extraction against quad_operator and the singular parts.
CheckRecord genfun_check(const fock::TwistSetup& setup, long r_max, long n_max, Variant variant);

/// (i) The k-prefactor limit of the bar product equals the bar generating
/// function for k and k + 1; (ii) X(1/2 sum Y[beta(-1)1, y1-y2] beta'(-1)1, e^{y2} x)
/// equals the bar generating function up to total order `order`.
CheckRecord iterate_identity_check(FieldEngine& eng, long k, long order, long n_max,
                                   const Rational& max_degree);

/// The bracket of two bar generating functions, all coefficients up to total
/// y-order `order`, modes |m|, |n| <= n_max.
CheckRecord lbar_bracket_check(const fock::TwistSetup& setup, long order, long n_max,
                               const Rational& max_degree);

/// Commutator of two iterates X(Y[u1,y1]v1, x1), X(Y[u2,y2]v2, x2) against the
/// four-term residue formula, y-orders up to `order`.
CheckRecord iterate_commutator_check(FieldEngine& eng, const Monomial& u1, const Monomial& v1,
                                     const Monomial& u2, const Monomial& v2, long order,
                                     long n_max, const Rational& max_degree);

/// Modes of X(sum_sigma beta_sigma(-m-1) beta_sigma'(-m-1)1, x) against the
/// span of L(r)(n), r <= m + 1, and the identity, and L(r)(n), r <= m, against
/// the span of the generator modes for m' <= m and the identity.
CheckRecord generators_corollary_check(FieldEngine& eng, long m, long n_max,
                                       const Rational& max_degree);

}  // namespace zetafock::fields

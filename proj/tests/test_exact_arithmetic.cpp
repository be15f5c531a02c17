#include <gtest/gtest.h>

#include <random>

#include "zetafock/bernoulli.hpp"
#include "zetafock/cyclotomic.hpp"
#include "zetafock/rational.hpp"
#include "zetafock/series.hpp"

using namespace zetafock;

namespace {

// Independent Bernoulli oracle: coefficients of t/(e^t - 1) by power-series
// division, without the library recurrence.
std::vector<Rational> bernoulli_by_division(long n) {
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);  // (e^t-1)/t = sum t^k/(k+1)!
  for (long k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = Rational(1) / factorial(k + 1);
  std::vector<Rational> b(a.size());
  b[0] = Rational(1);
  for (std::size_t m = 1; m < a.size(); ++m) {
    Rational acc(0);
    for (std::size_t i = 1; i <= m; ++i) acc += a[i] * b[m - i];
    b[m] = -acc;
  }
  for (long k = 0; k <= n; ++k) b[static_cast<std::size_t>(k)] *= factorial(k);
  return b;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Binomial) {
  EXPECT_EQ(binomial(Rational(5), 2), Rational(10));
  EXPECT_EQ(binomial(Rational(-1), 3), Rational(-1));
  EXPECT_EQ(binomial(Rational(1, 2), 2), Rational(-1, 8));
  EXPECT_EQ(binomial(Rational(3), 5), Rational(0));
}

TEST(Bernoulli, Numbers) {
  EXPECT_EQ(bernoulli_number(0), Rational(1));
  EXPECT_EQ(bernoulli_number(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli_number(2), Rational(1, 6));
  EXPECT_EQ(bernoulli_number(12), Rational(-691, 2730));
  const auto oracle = bernoulli_by_division(30);
  for (long n = 0; n <= 30; ++n) EXPECT_EQ(bernoulli_number(n), oracle[static_cast<std::size_t>(n)]) << n;
}

TEST(Bernoulli, VonStaudtClausenDenominator) {
  // The denominator of B_12 is the product of primes q with (q-1) | 12.
  EXPECT_EQ(bernoulli_number(12).den(), mpz_class(2 * 3 * 5 * 7 * 13));
}

TEST(Bernoulli, Polynomials) {
  EXPECT_EQ(bernoulli_poly(2, Rational(1, 2)), Rational(-1, 12));
  EXPECT_EQ(bernoulli_poly(4, Rational(1, 2)), Rational(7, 240));
  for (long n = 0; n <= 12; ++n) EXPECT_EQ(bernoulli_poly(n, Rational(0)), bernoulli_number(n));
}

TEST(Bernoulli, GeneratingFunction) {
  // t e^{xt}/(e^t - 1) = sum B_n(x) t^n / n!, compared as truncated series.
  for (const Rational x : {Rational(0), Rational(1, 2), Rational(1, 3), Rational(2, 7), Rational(-5, 4)}) {
    const long N = 16;
    const Laurent lhs = laurent_monomial("t", 1, Rational(1), N + 2) * exp_series("t", x, N + 2) *
                        exp_minus_one_power("t", -1, N + 1);
    for (long n = 0; n <= N; ++n)
      EXPECT_EQ(lhs.coeff({n}), bernoulli_poly(n, x) / factorial(n)) << "x=" << x << " n=" << n;
  }
}

TEST(Bernoulli, Symmetries) {
  for (long n = 2; n <= 20; ++n) EXPECT_EQ(bernoulli_poly(n, Rational(1)), bernoulli_poly(n, Rational(0)));
  for (long n = 0; n <= 12; ++n)
    for (const Rational x : {Rational(0), Rational(1, 2), Rational(1, 3), Rational(1, 4)})
      EXPECT_EQ(bernoulli_poly(n, Rational(1) - x), pow(Rational(-1), n) * bernoulli_poly(n, x));
}

TEST(Bernoulli, ZetaNegative) {
  EXPECT_EQ(zeta_negative(1), Rational(-1, 12));
  EXPECT_EQ(zeta_negative(2), Rational(0));
  EXPECT_EQ(zeta_negative(3), Rational(1, 120));
  EXPECT_EQ(zeta_negative(5), Rational(-1, 252));
  EXPECT_EQ(zeta_negative(7), Rational(1, 240));
}

TEST(Cyclotomic, RootsOfUnity) {
  EXPECT_EQ(Cyclotomic::root_of_unity(2, 1), Cyclotomic(2, Rational(-1)));
  EXPECT_TRUE((Cyclotomic::root_of_unity(3, 1) + Cyclotomic::root_of_unity(3, 2) + Cyclotomic(3, Rational(1)))
                  .is_zero());
  EXPECT_EQ(Cyclotomic::root_of_unity(4, 2), Cyclotomic(4, Rational(-1)));
  for (int p = 1; p <= 12; ++p) {
    EXPECT_EQ(Cyclotomic::root_of_unity(p, p), Cyclotomic(p, Rational(1))) << p;
    EXPECT_EQ(Cyclotomic::root_of_unity(p, -1) * Cyclotomic::root_of_unity(p, 1), Cyclotomic(p, Rational(1)));
    Cyclotomic sum(p);
    for (int s = 0; s < p; ++s) sum += Cyclotomic::root_of_unity(p, s);
    EXPECT_EQ(sum, Cyclotomic(p, Rational(p == 1 ? 1 : 0))) << p;
  }
}

TEST(Cyclotomic, PolynomialDegrees) {
  const int phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (int p = 1; p <= 12; ++p) EXPECT_EQ(Cyclotomic(p).degree(), phi[p]) << p;
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<long>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, MixedOrderRejected) {
  EXPECT_THROW(Cyclotomic(2) + Cyclotomic(3), std::invalid_argument);
}

TEST(CyclotomicProperty, FieldAxioms) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  auto random_element = [&](int p) {
    std::vector<Rational> c;
    for (int i = 0; i < Cyclotomic(p).degree(); ++i) c.emplace_back(num(rng), den(rng));
    return Cyclotomic(p, c);
  };
  for (int p = 1; p <= 12; ++p) {
    const Cyclotomic one(p, Rational(1));
    for (int trial = 0; trial < 20; ++trial) {
      const Cyclotomic a = random_element(p), b = random_element(p), c = random_element(p);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + (-a), Cyclotomic(p));
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), one) << "p=" << p << " a=" << a;
    }
  }
}

TEST(Series, WindowIsEnforced) {
  const Laurent e = exp_series("y", Rational(1), 4);
  EXPECT_EQ(e.coeff({3}), Rational(1, 6));
  EXPECT_EQ(e.coeff({-3}), Rational(0));
  EXPECT_THROW(e.coeff({5}), WindowInsufficient);
  const Laurent sq = e * exp_minus_one_power("y", -2, 2);
  EXPECT_EQ(sq.window()[0].hi, 2);
  EXPECT_THROW(sq.coeff({3}), WindowInsufficient);
}

TEST(Series, SquareBracketKernel) {
  // e^y (e^y - 1)^{-2} = y^{-2} - 1/12 + O(y^2).
  const Laurent k = exp_series("y", Rational(1), 6) * exp_minus_one_power("y", -2, 4);
  EXPECT_EQ(k.coeff({-2}), Rational(1));
  EXPECT_EQ(k.coeff({-1}), Rational(0));
  EXPECT_EQ(k.coeff({0}), Rational(-1, 12));
  EXPECT_EQ(k.coeff({1}), Rational(0));
}

TEST(Series, LogAndBinomialPowers) {
  const Laurent l = log_one_plus_power("z", 2, 4);  // z^2 - z^3 + 11/12 z^4
  EXPECT_EQ(l.coeff({2}), Rational(1));
  EXPECT_EQ(l.coeff({3}), Rational(-1));
  EXPECT_EQ(l.coeff({4}), Rational(11, 12));
  const Laurent b = one_plus_power("z", Rational(1, 2), 3);
  EXPECT_EQ(b.coeff({3}), Rational(1, 16));
}

TEST(SeriesProperty, ProductAssociativeAndCommutative) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-4, 4);
  const std::vector<SeriesVar> vars{{"x", VarKind::X}, {"y", VarKind::Y}};
  auto random_series = [&](long lox, long loy) {
    TruncatedSeries<Cyclotomic> s(3, vars, {{lox, lox + 6, true}, {loy, loy + 4, true}}, Cyclotomic(3));
    for (long i = lox; i <= lox + 6; ++i)
      for (long j = loy; j <= loy + 4; ++j)
        if (coef(rng) > 1) s.add_term({i, j}, Cyclotomic::root_of_unity(3, coef(rng)) * Rational(coef(rng)));
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(-2, -1), b = random_series(1, 0), c = random_series(0, -2);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Substitution, Examples) {
  using S = TruncatedSeries<Cyclotomic>;
  {
    S s(1, {{"x1", VarKind::X}}, {{1, 20, true}}, Cyclotomic(1));
    s.add_term({1}, Cyclotomic(1, Rational(1)));
    const S out = series_substitute_root(s, "x1", 0, {"x2", "x0"}, {{-3, 3, false}, {0, 3, true}});
    EXPECT_EQ(out.coeff({1, 0}), Cyclotomic(1, Rational(1)));
    EXPECT_EQ(out.coeff({0, 1}), Cyclotomic(1, Rational(1)));
    EXPECT_EQ(out.coeff({-1, 2}), Cyclotomic(1));
  }
  {
    S s(2, {{"x1", VarKind::X}}, {{1, 40, true}}, Cyclotomic(2));
    s.add_term({1}, Cyclotomic(2, Rational(1)));
    const S out = series_substitute_root(s, "x1", 1, {"x2", "x0"}, {{-5, 5, false}, {0, 2, true}});
    // -(x2 + x0)^{1/2}: exponents of x2 are numerators over 2.
    EXPECT_EQ(out.coeff({1, 0}), Cyclotomic(2, Rational(-1)));
    EXPECT_EQ(out.coeff({-1, 1}), Cyclotomic(2, Rational(-1, 2)));
    EXPECT_EQ(out.coeff({-3, 2}), Cyclotomic(2, Rational(1, 8)));
  }
  {
    S s(1, {{"x1", VarKind::X}}, {{-1, 20, true}}, Cyclotomic(1));
    s.add_term({-1}, Cyclotomic(1, Rational(1)));
    const S out = series_substitute_root(s, "x1", 0, {"x2", "x0"}, {{-6, 0, false}, {0, 4, true}});
    for (long i = 0; i <= 4; ++i)
      EXPECT_EQ(out.coeff({-1 - i, i}), Cyclotomic(1, Rational(i % 2 ? -1 : 1)));
    EXPECT_THROW(out.coeff({-7, 4}), WindowInsufficient);
  }
}

TEST(Substitution, RejectsUncertifiableRegion) {
  using S = TruncatedSeries<Cyclotomic>;
  S s(1, {{"x1", VarKind::X}, {"x2", VarKind::X}}, {{0, 2, true}, {0, 2, true}}, Cyclotomic(1));
  s.add_term({1, 1}, Cyclotomic(1, Rational(1)));
  EXPECT_THROW(series_substitute_root(s, "x1", 0, {"x2", "x0"}, {{0, 4, false}, {0, 2, true}}),
               WindowInsufficient);
}

TEST(SubstitutionProperty, MatchesBruteForceOracle) {
  using S = TruncatedSeries<Cyclotomic>;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<int> pick_p(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = pick_p(rng);
    const long s = coef(rng);
    S in(p, {{"x1", VarKind::X}, {"x2", VarKind::X}}, {{-2 * p, 4 * p, true}, {-p, 5 * p, true}}, Cyclotomic(p));
    for (long a = -2 * p; a <= 4 * p; ++a)
      for (long b = -p; b <= 5 * p; ++b)
        if (coef(rng) == 3) in.add_term({a, b}, Cyclotomic(p, Rational(coef(rng), 1 + (trial % 3))));
    const Window w2{-p, p, false};
    const Window w0{0, 2, true};
    const S out = series_substitute_root(in, "x1", s, {"x2", "x0"}, {w2, w0});
    // Oracle: [x2^{e2} x0^{I}] = sum over (a,b) with b + a - pI = e2 of
    // w^{sa} C(a/p, I) c_{a,b}.
    for (long e2 = w2.lo; e2 <= w2.hi; ++e2) {
      for (long I = 0; I <= w0.hi; ++I) {
        Cyclotomic expect(p);
        for (const auto& [e, c] : in.terms())
          if (e[1] + e[0] - p * I == e2)
            expect += Cyclotomic::root_of_unity(p, s * e[0]) * c * binomial(Rational(e[0], p), I);
        EXPECT_EQ(out.coeff({e2, I}), expect) << "trial " << trial << " e2=" << e2 << " I=" << I;
      }
    }
  }
}

TEST(SubstitutionProperty, Linear) {
  using S = TruncatedSeries<Cyclotomic>;
  S a(2, {{"x1", VarKind::X}}, {{-2, 4, true}}, Cyclotomic(2));
  S b = a;
  a.add_term({-1}, Cyclotomic(2, Rational(3)));
  a.add_term({2}, Cyclotomic(2, Rational(1, 2)));
  b.add_term({-1}, Cyclotomic(2, Rational(-1)));
  b.add_term({3}, Cyclotomic(2, Rational(5)));
  const std::pair<Window, Window> w{{-6, 0, false}, {0, 2, true}};
  S sum = a;
  sum += b;
  S lhs = series_substitute_root(sum, "x1", 1, {"x2", "x0"}, w);
  S rhs = series_substitute_root(a, "x1", 1, {"x2", "x0"}, w);
  rhs += series_substitute_root(b, "x1", 1, {"x2", "x0"}, w);
  EXPECT_EQ(lhs, rhs);
  S scaled = a;
  scaled.scale(Rational(-7, 3));
  S rs = series_substitute_root(a, "x1", 1, {"x2", "x0"}, w);
  rs.scale(Rational(-7, 3));
  EXPECT_EQ(series_substitute_root(scaled, "x1", 1, {"x2", "x0"}, w), rs);
}

TEST(Residue, ChangeOfVariable) {
  const Laurent f = exp_minus_one_power("y", 1, 10);
  EXPECT_TRUE(residue_change_of_variable_check(laurent_monomial("x", -1, Rational(1), 8), f));
  EXPECT_TRUE(residue_change_of_variable_check(laurent_monomial("x", -2, Rational(1), 8), f));
  EXPECT_TRUE(residue_change_of_variable_check(laurent_monomial("x", 3, Rational(1), 8), f));
  Laurent h = laurent_zero("x", -4, 3);
  h.add_term({-4}, Rational(2));
  h.add_term({-1}, Rational(-5, 3));
  h.add_term({2}, Rational(1));
  EXPECT_TRUE(residue_change_of_variable_check(h, log_one_plus_power("y", 1, 10)));
}

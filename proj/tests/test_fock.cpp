#include <gtest/gtest.h>

#include <chrono>
#include <map>

#include "zetafock/bernoulli.hpp"
#include "zetafock/fock.hpp"
#include "zetafock/fock_checks.hpp"
#include "oracles.hpp"

using namespace zetafock;
using namespace zetafock::fock;
using namespace zetafock::oracle;

namespace {

Cyclotomic cq(int p, const Rational& q) { return Cyclotomic(p, q); }

}  // namespace

TEST(TwistSetup, Validation) {
  EXPECT_NO_THROW(TwistSetup::make(2, {0, 1}));
  EXPECT_NO_THROW(TwistSetup::make(3, {0, 1, 1}));
  EXPECT_THROW(TwistSetup::make(3, {1, 1, 2}), InvalidSetup);
  EXPECT_THROW(TwistSetup::make(2, {0, 0}), InvalidSetup);
  EXPECT_THROW(TwistSetup::make(2, {1}), InvalidSetup);
  EXPECT_THROW(TwistSetup::make(0, {}), InvalidSetup);
  // For p = 2 every index is its own dual, so any dims list is consistent.
  EXPECT_NO_THROW(TwistSetup::make(2, {2, 1}));
  EXPECT_EQ(TwistSetup::make(4, {1, 2, 0, 2}).total_dim(), 5);
}

TEST(TwistSetup, JsonRoundTrip) {
  const TwistSetup s = TwistSetup::make(3, {0, 1, 1});
  const nlohmann::json j = s;
  EXPECT_EQ(j.dump(), R"({"dims":[0,1,1],"p":3})");
  EXPECT_EQ(j.get<TwistSetup>(), s);
  EXPECT_THROW((nlohmann::json{{"p", 3}, {"dims", {1, 1, 2}}}.get<TwistSetup>()), InvalidSetup);
}

TEST(Basis, Enumeration) {
  const ModeSpace s2 = ModeSpace::twisted(TwistSetup::make(2, {0, 1}));
  const auto b = enumerate_basis(s2, 3);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b[3], (std::vector<Monomial>{{{0, -3}}, {{0, -1}, {0, -1}, {0, -1}}}));
  const ModeSpace s1 = ModeSpace::twisted(TwistSetup::make(1, {1}));
  EXPECT_EQ(enumerate_basis(s1, 3)[3].size(), 3u);
  EXPECT_EQ(enumerate_basis(s1, 0), (std::vector<std::vector<Monomial>>{{Monomial{}}}));
}

TEST(Modes, Contractions) {
  const TwistSetup setup = TwistSetup::make(2, {0, 1});
  const ModeSpace space = ModeSpace::twisted(setup);
  const FockVector vac = FockVector::vacuum(2);
  const FockVector one = apply_mode(space, {0, -1}, vac);
  EXPECT_EQ(apply_mode(space, {0, 1}, one), vac * cq(2, Rational(1, 2)));
  EXPECT_TRUE(apply_mode(space, {0, 3}, vac).is_zero());
  EXPECT_THROW(apply_mode(space, {0, 2}, vac), std::invalid_argument);

  const ModeSpace s1 = ModeSpace::twisted(TwistSetup::make(1, {2}));
  const FockVector v = apply_mode(s1, {1, -2}, apply_mode(s1, {0, -1}, FockVector::vacuum(1)));
  EXPECT_TRUE(apply_mode(s1, {0, 0}, v).is_zero());
  EXPECT_TRUE(apply_mode(s1, {0, 2}, v).is_zero());
  EXPECT_EQ(apply_mode(s1, {1, 2}, v), apply_mode(s1, {0, -1}, FockVector::vacuum(1)) * cq(1, Rational(2)));
}

TEST(Modes, PairingAcrossEigenspaces) {
  // p = 3: beta_{1,1} pairs with beta_{2,1} only.
  const ModeSpace s = ModeSpace::twisted(TwistSetup::make(3, {0, 1, 1}));
  const int b1 = s.index_of(1, 1), b2 = s.index_of(2, 1);
  EXPECT_EQ(s.partner(b1), b2);
  const FockVector v = apply_mode(s, {b2, -1}, FockVector::vacuum(3));  // beta_2(-1/3)
  EXPECT_EQ(apply_mode(s, {b1, 1}, v), FockVector::vacuum(3) * cq(3, Rational(1, 3)));
  EXPECT_THROW(apply_mode(s, {b2, 1}, v), std::invalid_argument);
}

TEST(QuadOperator, VacuumEigenvalues) {
  const TwistSetup s = TwistSetup::make(2, {0, 1});
  EXPECT_EQ(vacuum_eigenvalue(s, 0, Variant::Plain), Rational(1, 16));
  EXPECT_EQ(vacuum_eigenvalue(s, 1, Variant::Plain), Rational(1, 128));
  EXPECT_EQ(vacuum_eigenvalue(s, 1, Variant::Bar), Rational(7, 1920));
  const TwistSetup u = TwistSetup::make(1, {1});
  EXPECT_EQ(vacuum_eigenvalue(u, 0, Variant::Bar), Rational(-1, 24));
  for (long r = 0; r <= 4; ++r) {
    EXPECT_EQ(vacuum_eigenvalue(u, r, Variant::Plain), Rational(0));
    EXPECT_EQ(vacuum_eigenvalue(u, r, Variant::Bar) - vacuum_eigenvalue(u, r, Variant::Plain),
              Rational(r % 2 ? -1 : 1, 2) * zeta_negative(1 + 2 * r));
  }
}

TEST(QuadOperator, Examples) {
  const TwistSetup s = TwistSetup::make(2, {0, 1});
  const ModeSpace space = ModeSpace::twisted(s);
  const Monomial a{{0, -1}};
  EXPECT_EQ(apply_operator(space, quad_operator(s, 0, 0, 0, Variant::Plain), a),
            FockVector::basis(2, a, cq(2, Rational(9, 16))));
  EXPECT_EQ(apply_operator(space, quad_operator(s, 0, 0, -1, Variant::Plain), Monomial{}),
            FockVector::basis(2, {{0, -1}, {0, -1}}, cq(2, Rational(1, 2))));
  for (long r = 0; r <= 2; ++r)
    for (long n = 1; n <= 3; ++n)
      EXPECT_TRUE(apply_operator(space, quad_operator(s, r, r, n, Variant::Plain), Monomial{}).is_zero());
}

TEST(QuadOperator, DegreeHomogeneityAndFiniteness) {
  for (const auto& s : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}), TwistSetup::make(3, {1, 1, 1})}) {
    const ModeSpace space = ModeSpace::twisted(s);
    const auto basis = enumerate_basis(space, 3 * s.p);
    for (long n = -2; n <= 2; ++n)
      for (long r = 0; r <= 2; ++r) {
        const QuadOperator op = quad_operator(s, r, r, n, Variant::Plain);
        for (const auto& level : basis)
          for (const auto& m : level) {
            const FockVector out = apply_operator(space, op, m);
            for (const auto& [mm, c] : out.terms()) EXPECT_EQ(degree_num(mm), degree_num(m) - n * s.p);
            EXPECT_LE(out.terms().size(), (m.size() + static_cast<std::size_t>(std::max(0L, -n) * s.p) + 1) *
                                              space.species().size() * (m.size() + 1));
          }
      }
  }
}

TEST(QuadOperator, VacuumCreationForNegativeModes) {
  const TwistSetup s = TwistSetup::make(3, {0, 1, 1});
  const ModeSpace space = ModeSpace::twisted(s);
  for (long n = -3; n < 0; ++n) {
    const FockVector out = apply_operator(space, quad_operator(s, 1, 1, n, Variant::Plain), Monomial{});
    EXPECT_FALSE(out.is_zero());
    for (const auto& [m, c] : out.terms()) {
      EXPECT_EQ(degree_num(m), -n * s.p);
      for (const auto& mode : m) EXPECT_LT(mode.lnum, 0);
    }
  }
}

TEST(QuadOperator, BarPlainShift) {
  for (const auto& s : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}), TwistSetup::make(3, {0, 1, 1}),
                        TwistSetup::make(4, {1, 2, 0, 2})}) {
    const ModeSpace space = ModeSpace::twisted(s);
    for (long r = 0; r <= 3; ++r) {
      Rational expected(0);
      for (int k = 0; k < s.p; ++k) expected += Rational(s.dims[static_cast<std::size_t>(k)]);
      expected *= -Rational(r % 2 ? -1 : 1, 4 * (r + 1)) * bernoulli_number(2 * r + 2);
      for (const auto& level : enumerate_basis(space, 2 * s.p))
        for (const auto& m : level)
          EXPECT_EQ(apply_operator(space, quad_operator(s, r, r, 0, Variant::Bar), m) -
                        apply_operator(space, quad_operator(s, r, r, 0, Variant::Plain), m),
                    FockVector::basis(s.p, m, cq(s.p, expected)));
    }
  }
}

TEST(QuadOperator, UntwistedMatchesIndependentOracle) {
  const TwistSetup s = TwistSetup::make(1, {1});
  const ModeSpace space = ModeSpace::twisted(s);
  const auto basis = enumerate_basis(space, 5);
  for (long r = 0; r <= 3; ++r)
    for (long n = -3; n <= 3; ++n) {
      const QuadOperator op = quad_operator(s, r, r, n, Variant::Plain);
      for (const auto& level : basis)
        for (const auto& m : level)
          EXPECT_EQ(to_oracle(apply_operator(space, op, m)), oracle_L(r, n, to_occupation(m)))
              << "r=" << r << " n=" << n;
    }
}

TEST(Representation, Examples) {
  const TwistSetup s = TwistSetup::make(2, {0, 1});
  const ModeSpace space = ModeSpace::twisted(s);
  const FockVector lhs =
      apply_operator(space, quad_operator(s, 0, 0, 1, Variant::Plain),
                     apply_operator(space, quad_operator(s, 0, 0, -1, Variant::Plain), FockVector::vacuum(2))) -
      apply_operator(space, quad_operator(s, 0, 0, -1, Variant::Plain),
                     apply_operator(space, quad_operator(s, 0, 0, 1, Variant::Plain), FockVector::vacuum(2)));
  EXPECT_EQ(lhs, FockVector::vacuum(2) * cq(2, Rational(1, 8)));
  EXPECT_TRUE(rep_check(s, 0, 0, 1, -1, Rational(4), Variant::Plain).passed());
  EXPECT_TRUE(rep_check(s, 1, 2, 0, 0, Rational(2), Variant::Plain).passed());
  EXPECT_TRUE(rep_check(TwistSetup::make(1, {1}), 0, 0, 3, -3, Rational(4)).passed());
}

TEST(Representation, DetectsWrongCentralCharge) {
  // A setup whose operators are fine but whose reported dimension is wrong
  // must fail: emulate by comparing the plain bracket with the bar central.
  const TwistSetup s = TwistSetup::make(1, {1});
  const CheckRecord rec = rep_check(s, 1, 0, 2, -2, Rational(2), Variant::Plain);
  EXPECT_TRUE(rec.passed());
  EXPECT_NE(rec.info.at("central").get<std::string>(), "0");
}

TEST(Representation, BarVariant) {
  for (const auto& s : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1})}) {
    RepresentationChecker checker(s, Rational(3));
    for (long r = 0; r <= 1; ++r)
      for (long t = 0; t <= 1; ++t)
        for (long m = -2; m <= 2; ++m) EXPECT_TRUE(checker.check(r, t, m, -m, Variant::Bar).passed());
  }
}

TEST(Representation, DegreeBoundMustMatchPeriod) {
  EXPECT_THROW(rep_check(TwistSetup::make(2, {0, 1}), 0, 0, 1, -1, Rational(1, 3)), InvalidSetup);
}

TEST(Delta, GeneratingFunction) {
  const CheckRecord u = delta_genfun(TwistSetup::make(1, {1}), 8);
  EXPECT_TRUE(u.passed());
  for (const auto& [k, v] : u.lhs.items()) EXPECT_EQ(v.get<std::string>(), "0");
  const CheckRecord t = delta_genfun(TwistSetup::make(2, {0, 1}), 8);
  EXPECT_TRUE(t.passed());
  EXPECT_EQ(t.lhs.at("1").get<std::string>(), "-1/128");
  EXPECT_EQ(t.rhs.at("1").get<std::string>(), "-1/128");
  EXPECT_TRUE(delta_genfun(TwistSetup::make(3, {1, 1, 1}), 8).passed());
  EXPECT_TRUE(delta_genfun(TwistSetup::make(4, {1, 2, 0, 2}), 8).passed());
}

TEST(GradedDimension, ProductFormula) {
  const auto c1 = graded_dimensions_from_product(TwistSetup::make(1, {1}), 5);
  EXPECT_EQ(c1, (std::vector<mpz_class>{1, 1, 2, 3, 5, 7}));
  const auto c2 = graded_dimensions_from_product(TwistSetup::make(2, {0, 1}), 3);
  EXPECT_EQ(c2, (std::vector<mpz_class>{1, 1, 1, 2}));
  for (const auto& s : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}), TwistSetup::make(3, {0, 1, 1}),
                        TwistSetup::make(3, {2, 1, 1}), TwistSetup::make(4, {1, 2, 0, 2})})
    EXPECT_TRUE(graded_dimension_check(s, Rational(5)).passed());
}

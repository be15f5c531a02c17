#include <gtest/gtest.h>

#include "zetafock/field_checks.hpp"
#include "zetafock/fields.hpp"
#include "zetafock/fock.hpp"
#include "zetafock/voa.hpp"

using namespace zetafock;
using namespace zetafock::fock;
using zetafock::fields::FieldEngine;
using zetafock::voa::Voa;

namespace {

Cyclotomic cq(int p, const Rational& q) { return Cyclotomic(p, q); }

FockVector one_hot(int p, const Monomial& m) { return FockVector::basis(p, m, cq(p, Rational(1))); }

std::vector<Monomial> basis_upto(const ModeSpace& space, long max_num) {
  std::vector<Monomial> out;
  for (const auto& level : enumerate_basis(space, max_num))
    for (const auto& m : level) out.push_back(m);
  return out;
}

}  // namespace

TEST(Voa, SquareBracketOfWeightOneVectors) {
  const Voa v(TwistSetup::make(1, {1}));
  const FockVector b = v.linear(0, 1);
  EXPECT_EQ(v.square_bracket_coeff(b, b, -2), v.vacuum());
  EXPECT_TRUE(v.square_bracket_coeff(b, b, -1).is_zero());
  EXPECT_EQ(v.square_bracket_coeff(b, b, 0), v.quadratic(0, 1, 0, 1) - v.vacuum() * Rational(1, 12));
  EXPECT_TRUE(v.square_bracket_coeff(b, b, -3).is_zero());
}

TEST(Voa, VirasoroVectorActsAsTranslation) {
  const Voa v(TwistSetup::make(3, {1, 1, 1}));
  for (int s = 0; s < 3; ++s) {
    // L(-1) beta(-1)1 = beta(-2)1 and L(0) acts by weight on quadratic vectors.
    EXPECT_EQ(v.product(v.omega(), 0, v.linear(s, 1)), v.linear(s, 2));
    const FockVector q = v.quadratic(s, 2, v.space().partner(s), 1);
    EXPECT_EQ(v.product(v.omega(), 1, q), q * Rational(3));
  }
}

TEST(Voa, ProductLeavingSectorIsRejected) {
  const Voa v(TwistSetup::make(1, {1}));
  EXPECT_THROW(v.product(v.linear(0, 1), -1, v.quadratic(0, 1, 0, 1)), voa::OutOfSector);
}

TEST(Voa, NuActsByEigenvalue) {
  const Voa v(TwistSetup::make(3, {1, 1, 1}));
  const int s1 = v.space().index_of(1, 1);
  EXPECT_EQ(v.nu_power(v.linear(s1, 1), 1), v.linear(s1, 1) * Cyclotomic::root_of_unity(3, 1));
  const FockVector q = v.quadratic(s1, 1, v.space().partner(s1), 1);
  EXPECT_EQ(v.nu_power(q, 2), q);
}

TEST(Fields, AssembledVirasoroMatchesUntwistedOperators) {
  const auto setup = TwistSetup::make(1, {1});
  FieldEngine eng(setup);
  const auto basis = basis_upto(eng.space(), 4);
  for (long n = -3; n <= 3; ++n) {
    const QuadOperator L = quad_operator(setup, 0, 0, n, Variant::Plain);
    for (const auto& w : basis)
      EXPECT_EQ(eng.assembled_x(eng.voa().omega(), n, w), apply_operator(eng.space(), L, w))
          << "n=" << n;
  }
}

TEST(Fields, AssembledTwistedVirasoroHasVacuumShift) {
  const auto setup = TwistSetup::make(2, {0, 1});
  FieldEngine eng(setup);
  const FockVector L0 = eng.assembled_x(eng.voa().omega(), 0, Monomial{});
  EXPECT_EQ(L0, FockVector::vacuum(2) * Rational(1, 16));
  const auto basis = basis_upto(eng.space(), 6);
  for (long n = -2; n <= 2; ++n) {
    const QuadOperator L = quad_operator(setup, 0, 0, n, Variant::Plain);
    for (const auto& w : basis)
      EXPECT_EQ(eng.assembled_x(eng.voa().omega(), 2 * n, w), apply_operator(eng.space(), L, w))
          << "n=" << n;
  }
}

TEST(Fields, SummationRangesAreExact) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {1, 1}),
                            TwistSetup::make(3, {1, 1, 1})}) {
    FieldEngine eng(setup);
    const int p = setup.p;
    const auto basis = basis_upto(eng.space(), 2 * p);
    const int ns = static_cast<int>(eng.space().species().size());
    for (int s = 0; s < ns; ++s) {
      for (int t = 0; t < ns; ++t) {
        for (long b = 1; b <= 2; ++b) {
          const Monomial u{{s, -1}}, v{{t, -b}};
          for (const auto& w : basis) {
            for (long n = -2 * p; n <= 2 * p; ++n)
              for (const auto& g : eng.homogeneous_margin(u, v, 1 + b, n, w, 2 * p))
                EXPECT_TRUE(g.is_zero());
            for (long sum = -2 * p; sum <= 2 * p; ++sum)
              for (const auto& f : eng.y_margin(u, v, 1 + b, sum, w, 2 * p))
                EXPECT_TRUE(f.is_zero());
          }
        }
      }
    }
  }
}

namespace {

using fields::FieldWindow;

void expect_pass(const CheckRecord& rec) {
  EXPECT_TRUE(rec.passed()) << rec.to_json(false).dump(1);
  EXPECT_GT(rec.info.value("nonzero_cells", 0), 0);
}

}  // namespace

TEST(FieldChecks, TwistedJacobiWeightOne) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}),
                            TwistSetup::make(3, {0, 1, 1})}) {
    FieldEngine eng(setup);
    const FieldWindow win{1, Rational(2)};
    const auto src = fields::weight_one_sources(eng, true);
    for (const auto& u : src)
      for (const auto& v : src) expect_pass(fields::jacobi_check(eng, u, v, win));
  }
}

TEST(FieldChecks, IterateLimits) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {1, 1}),
                            TwistSetup::make(3, {0, 1, 1})}) {
    FieldEngine eng(setup);
    const FieldWindow win{1, Rational(2)};
    const auto src = fields::weight_one_sources(eng, true);
    for (const auto& u : src)
      for (const auto& v : src) expect_pass(fields::iterate_limit_check(eng, u, v, win));
  }
}

TEST(FieldChecks, HomogeneousJacobiAndCommutator) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}),
                            TwistSetup::make(3, {0, 1, 1})}) {
    FieldEngine eng(setup);
    const FieldWindow win{1, Rational(2)};
    const auto src = fields::weight_one_sources(eng, false);
    for (const auto& u : src) {
      for (const auto& v : src) {
        expect_pass(fields::homogeneous_jacobi_check(eng, u, v, win));
        const auto rec = fields::homogeneous_commutator_check(eng, u, v, win);
        EXPECT_TRUE(rec.passed()) << rec.to_json(false).dump(1);
      }
    }
  }
}

TEST(FieldChecks, AssemblyAndVirasoro) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}),
                            TwistSetup::make(3, {0, 1, 1})}) {
    FieldEngine eng(setup);
    expect_pass(fields::assembly_check(eng, 2, Rational(2)));
    expect_pass(fields::virasoro_axiom_check(eng, 1, Rational(2)));
  }
}

TEST(FieldChecks, SelfPairingZeroCommutatorVanishes) {
  FieldEngine eng(TwistSetup::make(3, {0, 1, 1}));
  const int s1 = eng.space().index_of(1, 1);
  const Monomial u{{s1, -1}};
  const auto rec = fields::homogeneous_commutator_check(eng, u, u, FieldWindow{2, Rational(2)});
  EXPECT_TRUE(rec.passed());
  EXPECT_EQ(rec.info.value("nonzero_cells", -1), 0);
}

TEST(FieldChecks, TwistedVirasoroSpectrum) {
  FieldEngine eng(TwistSetup::make(2, {0, 1}));
  const auto rec = fields::virasoro_axiom_check(eng, 2, Rational(1));
  expect_pass(rec);
  EXPECT_EQ(rec.info["vacuum_shift"], "1/16");
  for (const char* ev : {"1/16", "9/16", "17/16"}) EXPECT_TRUE(rec.info["L0_eigenvalue_to_degree"].contains(ev)) << ev;
}

TEST(FieldChecks, JacobiWithDerivativeSource) {
  FieldEngine eng(TwistSetup::make(2, {1, 1}));
  const FieldWindow win{1, Rational(1)};
  const int ns = static_cast<int>(eng.space().species().size());
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < ns; ++t) {
      const Monomial u{{s, -1}}, v{{t, -2}};
      expect_pass(fields::jacobi_check(eng, u, v, win));
      expect_pass(fields::homogeneous_jacobi_check(eng, v, u, win));
      expect_pass(fields::iterate_limit_check(eng, u, v, win));
    }
  }
}

TEST(GenFun, DiagonalExtractionAndSingularParts) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1}), TwistSetup::make(3, {1, 1, 1}),
                            TwistSetup::make(4, {1, 2, 0, 2})}) {
    for (auto variant : {Variant::Plain, Variant::Bar}) {
      const auto rec = fields::genfun_check(setup, 2, 2, variant);
      EXPECT_TRUE(rec.passed()) << rec.to_json(false).dump(1);
    }
  }
  const Laurent bar = fields::correction_series(TwistSetup::make(1, {1}), Variant::Bar, 2);
  EXPECT_EQ(bar.coeff({-2}), Rational(1, 2));
  EXPECT_TRUE(fields::correction_series(TwistSetup::make(1, {1}), Variant::Plain, 4).terms().empty());
}

TEST(GenFun, LiteralNumeratorPoleIsReported) {
  const auto rec = fields::genfun_check(TwistSetup::make(3, {1, 1, 1}), 1, 1, Variant::Plain);
  EXPECT_EQ(rec.info["literal_numerator_pole"], "0");
  const auto rec2 = fields::genfun_check(TwistSetup::make(2, {0, 1}), 1, 1, Variant::Plain);
  EXPECT_EQ(rec2.info["literal_numerator_pole"], "-1/2");
}

TEST(GenFun, IterateIdentity) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1})}) {
    FieldEngine eng(setup);
    expect_pass(fields::iterate_identity_check(eng, 2, 2, 2, Rational(2)));
  }
}

TEST(GenFun, LbarBracket) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1})})
    expect_pass(fields::lbar_bracket_check(setup, 2, 2, Rational(2)));
}

TEST(GenFun, IterateCommutator) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1})}) {
    FieldEngine eng(setup);
    const Monomial b{{0, -1}};
    expect_pass(fields::iterate_commutator_check(eng, b, b, b, b, 1, 1, Rational(1)));
  }
}

TEST(GenFun, GeneratorsCorollary) {
  for (const auto& setup : {TwistSetup::make(1, {1}), TwistSetup::make(2, {0, 1})}) {
    FieldEngine eng(setup);
    for (long m = 0; m <= 1; ++m) expect_pass(fields::generators_corollary_check(eng, m, 2, Rational(2)));
  }
}

#include <benchmark/benchmark.h>

#include "zetafock/bernoulli.hpp"
#include "zetafock/cyclotomic.hpp"
#include "zetafock/diffop.hpp"
#include "zetafock/field_checks.hpp"
#include "zetafock/fields.hpp"
#include "zetafock/fock.hpp"
#include "zetafock/fock_checks.hpp"

using namespace zetafock;

namespace {

void BM_BernoulliPoly(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli_poly(n, Rational(1, 3)));
}
BENCHMARK(BM_BernoulliPoly)->Arg(8)->Arg(32);

void BM_CyclotomicInverse(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Cyclotomic a = Cyclotomic::root_of_unity(p, 1) + Cyclotomic(p, Rational(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_CyclotomicInverse)->Arg(5)->Arg(12);

void BM_BracketDecompose(benchmark::State& state) {
  using namespace diffop;
  const long r = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose(bracket(generator({3, r}), generator({-1, r})), 2));
}
BENCHMARK(BM_BracketDecompose)->Arg(1)->Arg(3);

void BM_RepresentationCheck(benchmark::State& state) {
  const auto setup = fock::TwistSetup::make(static_cast<int>(state.range(0)), state.range(0) == 2
                                                                                   ? std::vector<int>{0, 1}
                                                                                   : std::vector<int>{0, 1, 1});
  for (auto _ : state) {
    fock::RepresentationChecker checker(setup, Rational(3));
    benchmark::DoNotOptimize(checker.check(1, 1, 2, -1, fock::Variant::Plain));
  }
}
BENCHMARK(BM_RepresentationCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_JacobiCheck(benchmark::State& state) {
  const auto setup = fock::TwistSetup::make(2, {1, 1});
  const fields::FieldWindow win{1, Rational(2)};
  for (auto _ : state) {
    fields::FieldEngine eng(setup);
    const auto src = fields::weight_one_sources(eng, false);
    benchmark::DoNotOptimize(fields::jacobi_check(eng, src.front(), src.back(), win));
  }
}
BENCHMARK(BM_JacobiCheck)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

// Microbenchmarks for the hot paths: angular coefficients, the Dicke
// enhancement factor, the two-body master-equation RHS, the self-consistent
// rate solvers, and the complex Faddeeva function.

#include <benchmark/benchmark.h>

#include <complex>

#include "sr/angular.hpp"
#include "sr/dicke.hpp"
#include "sr/doppler.hpp"
#include "sr/faddeeva.hpp"
#include "sr/halfint.hpp"
#include "sr/rates.hpp"
#include "sr/twobody.hpp"

using sr::HalfInt;

namespace {

void BM_ClebschGordan(benchmark::State& state) {
  const HalfInt j1 = HalfInt::from_twice(9), j2 = HalfInt::from_twice(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(sr::cg(j1, HalfInt::from_twice(5), j2,
                                    HalfInt::from_twice(-2),
                                    HalfInt::from_twice(7),
                                    HalfInt::from_twice(3)));
}
BENCHMARK(BM_ClebschGordan);

void BM_EnhancementFactor(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const HalfInt j = HalfInt::from_twice(9);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sr::enhancement_factor(N, j, HalfInt::from_twice(0)));
}
BENCHMARK(BM_EnhancementFactor)->Arg(10)->Arg(100);

void BM_MasterRhs(benchmark::State& state) {
  const sr::TwoBodySystem sys(HalfInt::from_twice(state.range(0)));
  const Eigen::Index d = sys.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  rho(0, 0) = 1.0;
  Eigen::MatrixXcd drho(d, d);
  const sr::RatePair rates{20.0, 5.0};
  for (auto _ : state) {
    sys.master_rhs(rho, rates, drho);
    benchmark::DoNotOptimize(drho.data());
  }
}
BENCHMARK(BM_MasterRhs)->Arg(1)->Arg(5)->Arg(9);

void BM_SolveRates(benchmark::State& state) {
  const sr::MediumParams p{10.0, 10.0, 1.0};
  sr::Observables o;
  o.A = 0.8;
  o.V = 0.6;
  o.Y = 0.1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sr::solve_rates(p, o, 1.0));
}
BENCHMARK(BM_SolveRates);

void BM_AverageRates(benchmark::State& state) {
  const sr::DopplerParams dp{400.0, static_cast<int>(state.range(0))};
  const sr::MediumParams p{10.0, 10.0, 1.0};
  sr::Observables o;
  o.A = 0.8;
  o.V = 0.6;
  o.Y = 0.1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sr::average_rates(dp, p, o, 1.0));
}
BENCHMARK(BM_AverageRates)->Arg(40)->Arg(80);

void BM_FaddeevaSmall(benchmark::State& state) {
  const std::complex<double> z(1.3, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(sr::faddeeva_w(z));
}
BENCHMARK(BM_FaddeevaSmall);

void BM_FaddeevaLarge(benchmark::State& state) {
  const std::complex<double> z(40.0, 25.0);
  for (auto _ : state) benchmark::DoNotOptimize(sr::faddeeva_w(z));
}
BENCHMARK(BM_FaddeevaLarge);

}  // namespace

BENCHMARK_MAIN();

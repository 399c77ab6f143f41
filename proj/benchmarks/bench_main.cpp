#include <benchmark/benchmark.h>

#include "tailpath/copula.hpp"
#include "tailpath/path.hpp"
#include "tailpath/special_math.hpp"
#include "tailpath/spectral.hpp"
#include "tailpath/tail.hpp"

namespace {

using namespace tailpath;

void BM_StudentTCdf(benchmark::State& state) {
  const StudentT t(4.0);
  double x = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.cdf(x));
    x = x > 8.0 ? -8.0 : x + 0.013;
  }
}
BENCHMARK(BM_StudentTCdf);

void BM_TCopulaCdf(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(t_copula_cdf(4.0, 0.5, 0.03, 0.2));
}
BENCHMARK(BM_TCopulaCdf);

void BM_MtcmSurvivalAsymGumbel(benchmark::State& state) {
  const TailCopulaFn tail = TailCopulaFn::ev(PickandsFn::asymmetric_logistic(0.35, 0.7, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(mtcm(tail).b_star);
}
BENCHMARK(BM_MtcmSurvivalAsymGumbel);

void BM_MaximizeSlice(benchmark::State& state) {
  const CopulaModel model = state.range(0) == 0 ? survival(CopulaModel::marshall_olkin(0.35, 0.7))
                                                : CopulaModel::student_t(4.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_slice(model, 1e-3).phi_star);
}
BENCHMARK(BM_MaximizeSlice)->Arg(0)->Arg(1);

void BM_LOfS(benchmark::State& state) {
  const SpectralModel sm(4.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(L_of_s(sm, 0.7));
}
BENCHMARK(BM_LOfS);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "torsion/fail_point.hpp"
#include "torsion/perturbation.hpp"
#include "torsion/rectangle.hpp"
#include "torsion/torsion_solver.hpp"

namespace {

torsion::TrigPolynomial faraway_zeta() {
  return torsion::TrigPolynomial({{2, -4.0}, {4, 1.0}}, {});
}

void BM_SolveDegree(benchmark::State& state) {
  const torsion::StarDomain domain(faraway_zeta(), 0.01);
  torsion::SolverOptions options;
  options.degree = static_cast<int>(state.range(0));
  options.collocation = 8 * options.degree;
  options.rtol = 1.0;  // timing only; low degrees are allowed to under-resolve
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::solve(domain, options));
  }
}
BENCHMARK(BM_SolveDegree)->Arg(16)->Arg(32)->Arg(64);

void BM_BoundaryGradSq(benchmark::State& state) {
  const auto solution = torsion::solve(torsion::StarDomain(faraway_zeta(), 0.01));
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solution.boundary_grad_sq(theta));
    theta += 1e-3;
  }
}
BENCHMARK(BM_BoundaryGradSq);

void BM_FailPointFunctional(benchmark::State& state) {
  std::map<int, double> cos_coeffs;
  for (int k = 0; k <= static_cast<int>(state.range(0)); ++k) {
    cos_coeffs[k] = 1.0 / (k + 1.0);
  }
  const torsion::TrigPolynomial zeta(std::move(cos_coeffs), {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::fail_point_functional(zeta));
  }
}
BENCHMARK(BM_FailPointFunctional)->Arg(8)->Arg(64);

void BM_PredictFailPoint(benchmark::State& state) {
  const auto zeta = faraway_zeta();
  const torsion::Arc arc{0.0, std::numbers::pi / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::predict_fail_point(zeta, arc));
  }
}
BENCHMARK(BM_PredictFailPoint);

void BM_FindFailPoints(benchmark::State& state) {
  const auto solution = torsion::solve(torsion::StarDomain(faraway_zeta(), 0.005));
  const torsion::Arc arc{0.0, std::numbers::pi / 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::find_fail_points(solution, arc));
  }
}
BENCHMARK(BM_FindFailPoints);

void BM_RectSideMidpoint(benchmark::State& state) {
  const torsion::RectangleDomain domain(2.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::right_side_midpoint_gradient(domain));
  }
}
BENCHMARK(BM_RectSideMidpoint);

void BM_RectEval(benchmark::State& state) {
  const torsion::RectangleSolution solution(torsion::RectangleDomain(2.0, 1.0), 30);
  double x = -1.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solution.gradient(x, 0.3));
    x += 1e-4;
    if (x > 1.9) x = -1.9;
  }
}
BENCHMARK(BM_RectEval);

void BM_SaintVenant(benchmark::State& state) {
  const auto solution = torsion::solve(torsion::StarDomain(faraway_zeta(), 0.01));
  for (auto _ : state) {
    benchmark::DoNotOptimize(torsion::saint_venant_functional(solution));
  }
}
BENCHMARK(BM_SaintVenant);

}  // namespace

BENCHMARK_MAIN();

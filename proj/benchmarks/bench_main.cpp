#include <benchmark/benchmark.h>

#include "cdlab/space/space.hpp"
#include "cdlab/zerofind/zerofind.hpp"

using namespace cdlab;

namespace {

std::shared_ptr<const Space> lattice_space(long bits, double radius) {
  PrecisionScope s(bits);
  FamilySpec f;
  f.kind = Family::CrossLattice;
  NodeSet ns = generate_nodes(f, Real(radius));
  EntireFunction A = EntireFunction::sin_cross();
  MeasureSpec m;
  m.rule = MeasureRule::PolyExp;
  m.M = Real(1);
  m.c = Real(2) * pi();
  Measure mu = attach_measure(ns, m, &A, make_context(bits, 1e-30));
  return make_space(std::move(ns), std::move(mu), std::move(A));
}

}  // namespace

// Cauchy sum over the truncated lattice at an off-node point.
static void BM_CauchySum(benchmark::State& state) {
  const long bits = state.range(0);
  const auto sp = lattice_space(bits, 24);
  PrecisionScope s(bits);
  const auto ctx = make_context(bits, 1e-30);
  const SpaceElement el = make_element(random_gaussian_coeffs(sp->ns.size(), 1), sp);
  const Complex z(1.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_f(el, z, ctx));
  state.counters["nodes"] = static_cast<double>(sp->ns.size());
}
BENCHMARK(BM_CauchySum)->Arg(256)->Arg(512)->Arg(1024);

static void BM_SinCrossJet(benchmark::State& state) {
  PrecisionScope s(state.range(0));
  const EntireFunction A = EntireFunction::sin_cross();
  const Complex z(2.3, -1.1);
  for (auto _ : state) benchmark::DoNotOptimize(A.jet(z));
}
BENCHMARK(BM_SinCrossJet)->Arg(256)->Arg(1024);

static void BM_WindingCircle(benchmark::State& state) {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  const EntireFunction A = EntireFunction::sin_cross();
  const Evaluable F = [A](const Complex& z) { return A.jet(z); };
  const Circle c{{0.1, 0.05}, static_cast<double>(state.range(0)) + 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(F, c, ctx));
}
BENCHMARK(BM_WindingCircle)->Arg(1)->Arg(3);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "llw/exponential.hpp"
#include "llw/formula.hpp"
#include "llw/models.hpp"

using namespace llw;

namespace {

ProbCohSpace simplex(std::size_t n) {
  std::vector<lp::RVec> gens;
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back(std::string(1, static_cast<char>('a' + i)));
    lp::RVec g(n, Rational(0));
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  return pcoh_space(Web(std::move(atoms)), std::move(gens));
}

void pcoh_dual_simplex(benchmark::State& state) {
  const auto p = simplex(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcoh_dual(p));
}
BENCHMARK(pcoh_dual_simplex)->DenseRange(1, 4);

void bipolar_membership(benchmark::State& state) {
  const auto p = simplex(static_cast<std::size_t>(state.range(0)));
  const lp::RVec u(p.web.size(), Rational(1, static_cast<long>(p.web.size() + 1)));
  for (auto _ : state) benchmark::DoNotOptimize(pcoh_bipolar_member(p, u));
}
BENCHMARK(bipolar_membership)->DenseRange(1, 4);

void morphism_check_coherence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(std::string(1, static_cast<char>('a' + i)));
  const auto a = F_embed(coherence_space(Web(atoms), std::vector<std::vector<char>>(n, std::vector<char>(n, 1))));
  const auto f = identity_map(a.module);
  for (auto _ : state) benchmark::DoNotOptimize(is_morphism(f));
}
BENCHMARK(morphism_check_coherence)->DenseRange(1, 4);

void morphism_check_pcoh(benchmark::State& state) {
  const auto p = H_embed(simplex(static_cast<std::size_t>(state.range(0))));
  const auto f = identity_map(p.module);
  for (auto _ : state) benchmark::DoNotOptimize(is_morphism(f));
}
BENCHMARK(morphism_check_pcoh)->DenseRange(1, 4);

void bang_and_comonoid(benchmark::State& state) {
  const auto v = H_embed(simplex(1));
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const auto b = bang(v, d);
    benchmark::DoNotOptimize(check_comonoid(b, default_points(v)));
  }
}
BENCHMARK(bang_and_comonoid)->DenseRange(1, 3);

void formula_round_trip(benchmark::State& state) {
  const std::string text = "!2 (A -o B * C) & (D^ + (1 -o ?3 E))";
  for (auto _ : state) benchmark::DoNotOptimize(print_formula(parse_formula(text)));
}
BENCHMARK(formula_round_trip);

}  // namespace
BENCHMARK_MAIN();

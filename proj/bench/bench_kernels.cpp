// Production (OpenMP gather) kernels against the serial scatter reference.
// Run manually: build/bench/bench_kernels [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include "lhydro/io.hpp"
#include "lhydro/reference.hpp"

using namespace lhydro;

namespace {

Chain seeded_chain(const Lattice& lat, int degree) {
  SplitMix64 rng(static_cast<std::uint64_t>(degree) + 1);
  Chain c = lat.zero_chain(degree);
  for (double& x : c.coeffs) x = rng.uniform(-1.0, 1.0);
  return c;
}

VectorField seeded_field(const Lattice& lat) {
  SplitMix64 rng(99);
  VectorField V(lat.n());
  for (int s = 0; s < lat.sites(); ++s) {
    for (int c = 0; c < 3; ++c) V.at(c, s) = rng.uniform(-1.0, 1.0);
  }
  return V;
}

template <typename Op>
void chain_bench(benchmark::State& state, int degree, Op op) {
  Lattice lat(LatticeConfig{static_cast<int>(state.range(0)), 1.0});
  Chain c = seeded_chain(lat, degree);
  for (auto _ : state) {
    Chain out = op(lat, c);
    benchmark::DoNotOptimize(out.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations() * lat.dims(degree));
}

void BM_boundary(benchmark::State& state) {
  chain_bench(state, 2, [](const Lattice& lat, const Chain& c) { return lat.boundary(c); });
}

void BM_boundary_reference(benchmark::State& state) {
  chain_bench(state, 2, [](const Lattice& lat, const Chain& c) { return ref::boundary(lat, c); });
}

void BM_coboundary(benchmark::State& state) {
  chain_bench(state, 1, [](const Lattice& lat, const Chain& c) { return lat.coboundary(c); });
}

void BM_coboundary_reference(benchmark::State& state) {
  chain_bench(state, 1,
              [](const Lattice& lat, const Chain& c) { return ref::coboundary(lat, c); });
}

void BM_star(benchmark::State& state) {
  chain_bench(state, 1, [](const Lattice& lat, const Chain& c) { return lat.star(c); });
}

void BM_star_reference(benchmark::State& state) {
  chain_bench(state, 1, [](const Lattice& lat, const Chain& c) { return ref::star(lat, c); });
}

void BM_laplacian(benchmark::State& state) {
  chain_bench(state, 1, [](const Lattice& lat, const Chain& c) { return lat.laplacian(c); });
}

void BM_laplacian_reference(benchmark::State& state) {
  chain_bench(state, 1, [](const Lattice& lat, const Chain& c) { return ref::laplacian(lat, c); });
}

void BM_nonlinear(benchmark::State& state) {
  Lattice lat(LatticeConfig{static_cast<int>(state.range(0)), 1.0});
  VectorField V = seeded_field(lat);
  for (auto _ : state) {
    Chain out = nonlinear_term(lat, V);
    benchmark::DoNotOptimize(out.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations() * lat.sites());
}

void BM_nonlinear_reference(benchmark::State& state) {
  Lattice lat(LatticeConfig{static_cast<int>(state.range(0)), 1.0});
  VectorField V = seeded_field(lat);
  for (auto _ : state) {
    Chain out = ref::nonlinear_term(lat, V);
    benchmark::DoNotOptimize(out.coeffs.data());
  }
  state.SetItemsProcessed(state.iterations() * lat.sites());
}

}  // namespace

BENCHMARK(BM_boundary)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_boundary_reference)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_coboundary)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_coboundary_reference)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_star)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_star_reference)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_laplacian)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_laplacian_reference)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_nonlinear)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_nonlinear_reference)->Arg(16)->Arg(24)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

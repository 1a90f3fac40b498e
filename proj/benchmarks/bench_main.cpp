// Microbenchmarks for the hot paths: scalar interval operations, interval
// matrix-vector products, the map evaluation, specialized transition
// enclosures, the z_M solver, and one whole verification block.

#include <benchmark/benchmark.h>

#include "blendercert/certificate.hpp"

using namespace bcert;

namespace {

const ConstructionData& data() {
  static const ConstructionData d = ConstructionData::embedded();
  return d;
}

const HenonParams& params_block() {
  static const HenonParams p{Interval(1.1, 1.101)};
  return p;
}

void bm_interval_add(benchmark::State& state) {
  const Interval a(1.25, 1.75);
  const Interval b(-0.5, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(add(a, b));
  }
}
BENCHMARK(bm_interval_add);

void bm_interval_mul(benchmark::State& state) {
  const Interval a(1.25, 1.75);
  const Interval b(-0.5, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mul(a, b));
  }
}
BENCHMARK(bm_interval_mul);

void bm_interval_div(benchmark::State& state) {
  const Interval a(1.25, 1.75);
  const Interval b(0.5, 0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(div(a, b));
  }
}
BENCHMARK(bm_interval_div);

void bm_interval_mat_vec(benchmark::State& state) {
  IMatrix3 m;
  IVector3 v;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m[i][j] = Interval(0.1 * (i + 1), 0.1 * (i + 1) + 0.01 * (j + 1));
    }
    v[i] = Interval(-1.0 - i, 1.0 + i);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_vec(m, v));
  }
}
BENCHMARK(bm_interval_mat_vec);

void bm_henon_image(benchmark::State& state) {
  const HenonParams p = params_block();
  const IVector3 z{Interval(3.3, 3.35), Interval(2.4, 2.55), Interval(-11.3, -11.1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(henon_image(p, z));
  }
}
BENCHMARK(bm_henon_image);

void bm_transition_image(benchmark::State& state) {
  const HenonParams p = params_block();
  const ZMResult zm = solve_zM(p, data());
  const HSet mother = make_mother_hset(p, data());
  const std::vector<Chain> chains = propagate_hsets(p, data());
  const Chain& ch = chains.front();
  const HenonTransition t = make_link_transition(p, zm, ch, mother, 0);
  const IVector3 u = ch.sets.front().local_box;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.image(u));
  }
}
BENCHMARK(bm_transition_image);

void bm_solve_zM(benchmark::State& state) {
  const HenonParams p = params_block();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_zM(p, data()));
  }
}
BENCHMARK(bm_solve_zM);

void bm_verify_block(benchmark::State& state) {
  const Interval mu(kDefaultMu);
  const Interval beta(kDefaultBeta);
  const Interval xi(1.1, 1.101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_block(mu, beta, xi, data()));
  }
}
BENCHMARK(bm_verify_block);

}  // namespace

BENCHMARK_MAIN();

#include "gc/builders.hpp"
#include "gc/games.hpp"
#include "gc/logic.hpp"
#include "gc/structure.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace gc;

void hom_count(benchmark::State& state, bool parallel)
{
    const auto c = cycle_graph(static_cast<std::size_t>(state.range(0)));
    const auto target = complete_graph(5);
    for (auto _ : state)
        benchmark::DoNotOptimize(parallel ? count_homomorphisms(c, target) : count_homomorphisms_serial(c, target));
}
void BM_HomCountSerial(benchmark::State& s) { hom_count(s, false); }
void BM_HomCountParallel(benchmark::State& s) { hom_count(s, true); }
BENCHMARK(BM_HomCountSerial)->Arg(6)->Arg(8);
BENCHMARK(BM_HomCountParallel)->Arg(6)->Arg(8);

void pebble(benchmark::State& state, bool parallel)
{
    const auto a = disjoint_union(cycle_graph(3), cycle_graph(3));
    const auto b = cycle_graph(6);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_pebble_game(a, b, k, GameMode::count, PebbleOptions{std::nullopt, parallel, false}));
}
void BM_PebbleFixpointSerial(benchmark::State& s) { pebble(s, false); }
void BM_PebbleFixpointParallel(benchmark::State& s) { pebble(s, true); }
BENCHMARK(BM_PebbleFixpointSerial)->Arg(2)->Arg(3);
BENCHMARK(BM_PebbleFixpointParallel)->Arg(2)->Arg(3);

void enumerator(benchmark::State& state, bool parallel)
{
    static const auto worlds = structures_up_to_iso(edge_vocabulary(), 3);
    std::vector<const Structure*> w;
    for (const auto& s : worlds)
        w.push_back(&s);
    const auto bound = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        SemanticEnumerator en(w, Fragment::full, 2, bound, EnumeratorOptions{parallel, std::nullopt});
        benchmark::DoNotOptimize(en.class_count());
    }
}
void BM_EnumeratorSerial(benchmark::State& s) { enumerator(s, false); }
void BM_EnumeratorParallel(benchmark::State& s) { enumerator(s, true); }
BENCHMARK(BM_EnumeratorSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumeratorParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "jcaudit/aggregate.hpp"
#include "jcaudit/coupling.hpp"
#include "jcaudit/criteria.hpp"
#include "jcaudit/synth.hpp"

using namespace jcaudit;

namespace {

Corpus make_corpus(std::uint32_t categories, std::uint32_t per_category, std::uint32_t pubs, double cites) {
    synth::SyntheticSpec s;
    s.categories = categories;
    s.journals_per_category = per_category;
    s.publications_per_journal = pubs;
    s.expected_citations = cites;
    s.planted_misassignments = categories;
    s.planted_missing = categories;
    s.seed = 12345;
    return Corpus::from_tables(synth::generate(s).tables, YearRange{});
}

const Corpus& medium() {
    static const Corpus c = make_corpus(10, 20, 20, 20);  // 200 journals, ~80k edges
    return c;
}

const Corpus& large() {
    static const Corpus c = make_corpus(50, 40, 25, 20);  // 2000 journals, ~1M edges
    return c;
}

void BM_BuildProfiles(benchmark::State& state) {
    const auto& c = state.range(0) == 0 ? medium() : large();
    const auto threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(build_profiles(c, threads));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.edges().size()));
}
BENCHMARK(BM_BuildProfiles)->Args({0, 1})->Args({0, 4})->Args({1, 1})->Args({1, 4})->Unit(benchmark::kMillisecond);

void BM_BruteForceProfiles(benchmark::State& state) {
    const auto& c = medium();
    for (auto _ : state) benchmark::DoNotOptimize(synth::brute_force_profiles(c));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * c.edges().size()));
}
BENCHMARK(BM_BruteForceProfiles)->Unit(benchmark::kMillisecond);

void BM_CriteriaSweep(benchmark::State& state) {
    const auto& c = large();
    const auto ps = build_profiles(c, 4);
    AuditConfig cfg;
    for (auto _ : state) {
        for (double a : cfg.alpha_list) benchmark::DoNotOptimize(criterion_one(ps, c, a, cfg));
        for (double b : cfg.beta_list) benchmark::DoNotOptimize(criterion_two(ps, c, b, cfg));
    }
}
BENCHMARK(BM_CriteriaSweep)->Unit(benchmark::kMillisecond);

void BM_Coupling(benchmark::State& state) {
    const auto& c = medium();
    const auto weight = state.range(0) == 0 ? CouplingWeight::SharedReferences : CouplingWeight::Binary;
    for (auto _ : state) benchmark::DoNotOptimize(build_coupling_profiles(c, weight, 4));
}
BENCHMARK(BM_Coupling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

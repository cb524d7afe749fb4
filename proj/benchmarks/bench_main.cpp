#include <benchmark/benchmark.h>

#include "gpdf/gpdf.hpp"

using namespace gpdf;

static void BM_VerifyAppendixA(benchmark::State& state) {
    std::vector<DiffFamily> fams;
    for (const auto& e : embedded_catalog().entries()) {
        if (e.params.source.starts_with("Appendix A")) fams.push_back(e.family());
    }
    for (auto _ : state) {
        for (const auto& f : fams) benchmark::DoNotOptimize(verify_gen_pdp(f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fams.size()));
}
BENCHMARK(BM_VerifyAppendixA);

static void BM_LoadEmbeddedCatalog(benchmark::State& state) {
    for (auto _ : state) {
        for (const auto& file : embedded_files()) benchmark::DoNotOptimize(load_text(file.text));
    }
}
BENCHMARK(BM_LoadEmbeddedCatalog)->Unit(benchmark::kMillisecond);

static void BM_SearchOneDimensional(benchmark::State& state) {
    const int v = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_gen_pdp(sym_interval(v), sym_interval(1), {3}, LeaveSpec::trivial(), {}));
    }
}
BENCHMARK(BM_SearchOneDimensional)->Arg(13)->Arg(19)->Arg(25)->Arg(31)->Unit(benchmark::kMillisecond);

static void BM_SearchFiveByFive(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_gen_pdp(sym_interval(5), sym_interval(5), {3, 4}, LeaveSpec::trivial(), {}));
    }
}
BENCHMARK(BM_SearchFiveByFive)->Unit(benchmark::kMillisecond);

static void BM_NoTwentyOneFive(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_gen_pdp(sym_interval(21), sym_interval(1), {5}, LeaveSpec::trivial(), {}));
    }
}
BENCHMARK(BM_NoTwentyOneFive)->Unit(benchmark::kMillisecond);

static void BM_SearchPdm(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(search_pdm(3, m, {}));
}
BENCHMARK(BM_SearchPdm)->Arg(7)->Arg(25)->Arg(49)->Unit(benchmark::kMillisecond);

static void BM_ProfileThreeByM(benchmark::State& state) {
    for (auto _ : state) {
        for (int m = 1; m <= 99; m += 2) benchmark::DoNotOptimize(profile_infeasibility(3, m, {3, 4, 5}));
    }
}
BENCHMARK(BM_ProfileThreeByM)->Unit(benchmark::kMillisecond);

static void BM_Synth(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const SizeSet k = state.range(2) == 4 ? SizeSet{3, 4} : SizeSet{3, 4, 5};
    for (auto _ : state) benchmark::DoNotOptimize(synth(n, m, k, {}));
}
BENCHMARK(BM_Synth)->Args({13, 13, 4})->Args({5, 31, 5})->Args({23, 5, 5})->Unit(benchmark::kMillisecond);

static void BM_GocRoundTrip(benchmark::State& state) {
    const auto f = *embedded_catalog().lookup({.kind = Kind::gen_pdf, .n = sym_interval(9), .m = sym_interval(15),
                                               .sizes = SizeSet{3, 4, 5}});
    for (auto _ : state) {
        const auto c = pdf_to_goc(f.family());
        benchmark::DoNotOptimize(verify_goc(c));
        benchmark::DoNotOptimize(goc_to_pdf(c));
    }
}
BENCHMARK(BM_GocRoundTrip);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "wigswap/correlation.hpp"
#include "wigswap/montecarlo.hpp"
#include "wigswap/scenario.hpp"
#include "wigswap/sign_table.hpp"

using namespace wigswap;

namespace {
    void build_default_scenario(benchmark::State& state) {
        const ScenarioParams params;
        for (auto _: state) {
            auto sc = build_scenario(params);
            benchmark::DoNotOptimize(sc);
        }
    }

    void pair_correlation_allowed(benchmark::State& state) {
        const auto sc = build_scenario(ScenarioParams{});
        const auto& a = sc.port(PortName::DH2).signal();
        const auto& b = sc.port(PortName::DV4).signal();
        for (auto _: state)
            benchmark::DoNotOptimize(pair_correlation(a, b, sc.model()));
    }

    void quadruple_probability_psi(benchmark::State& state) {
        const auto sc = build_scenario(ScenarioParams{});
        for (auto _: state) {
            auto r = quadruple_probability(sc.port(PortName::DH1), sc.port(PortName::DH2),
                                           sc.port(PortName::DV2), sc.port(PortName::DV4), sc.model());
            benchmark::DoNotOptimize(r.value);
        }
    }

    void full_sign_table(benchmark::State& state) {
        const auto sc = build_scenario(ScenarioParams{});
        for (auto _: state)
            benchmark::DoNotOptimize(sign_table(sc));
    }

    void monte_carlo_joint(benchmark::State& state) {
        ScenarioParams params;
        params.model.coupling = 0.5;
        const auto sc = build_scenario(params);
        const auto spec = build_joint_spec(sc.ports(), sc.model());
        const auto n = state.range(0);
        SamplingOptions opts;
        opts.threads = 1;
        for (auto _: state) {
            auto r = estimate_joint("DH2", "DV4", spec, n, 7, opts);
            benchmark::DoNotOptimize(r.estimate);
        }
        state.SetItemsProcessed(state.iterations() * n);
    }
}

BENCHMARK(build_default_scenario)->Unit(benchmark::kMicrosecond);
BENCHMARK(pair_correlation_allowed)->Unit(benchmark::kNanosecond);
BENCHMARK(quadruple_probability_psi)->Unit(benchmark::kMicrosecond);
BENCHMARK(full_sign_table)->Unit(benchmark::kMicrosecond);
BENCHMARK(monte_carlo_joint)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

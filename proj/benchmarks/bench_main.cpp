// Microbenchmarks for the hot paths: channel algebra, twirling, the
// discrimination oracle and the Monte Carlo engine.
#include <benchmark/benchmark.h>

#include <random>

#include "mpqkd/channels.hpp"
#include "mpqkd/discrimination.hpp"
#include "mpqkd/protocol.hpp"
#include "mpqkd/security.hpp"
#include "mpqkd/twirl.hpp"

namespace {

using namespace mpqkd;

PauliChannel random_pauli_channel(std::mt19937_64& rng) {
    std::array<double, 4> p{};
    double sum = 0.0;
    for (double& v : p) {
        v = -std::log(static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53);
        sum += v;
    }
    for (double& v : p) {
        v /= sum;
    }
    return PauliChannel(p);
}

void bm_apply_pauli(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const PauliChannel c = random_pauli_channel(rng);
    const DensityMatrix rho = DensityMatrix::pure(ket_plus());
    for (auto _ : state) {
        benchmark::DoNotOptimize(mpqkd::apply(Channel(c), rho));
    }
}
BENCHMARK(bm_apply_pauli);

void bm_ptm(benchmark::State& state) {
    std::mt19937_64 rng(11);
    const Channel c{random_pauli_channel(rng)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ptm(c));
    }
}
BENCHMARK(bm_ptm);

void bm_twirl_three_element(benchmark::State& state) {
    std::mt19937_64 rng(13);
    const Channel c{random_pauli_channel(rng)};
    const TwirlSet set = three_element_set(0, 4, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(twirl(c, set));
    }
}
BENCHMARK(bm_twirl_three_element);

void bm_twirl_full_design(benchmark::State& state) {
    std::mt19937_64 rng(17);
    const Channel c{random_pauli_channel(rng)};
    const TwirlSet design = standard_2design();
    for (auto _ : state) {
        benchmark::DoNotOptimize(twirl(c, design));
    }
}
BENCHMARK(bm_twirl_full_design);

void bm_depolarizing_fit(benchmark::State& state) {
    std::mt19937_64 rng(19);
    const KrausChannel twirled = twirl(Channel(random_pauli_channel(rng)), standard_2design());
    const Channel c{twirled};
    for (auto _ : state) {
        benchmark::DoNotOptimize(depolarizing_fit(c));
    }
}
BENCHMARK(bm_depolarizing_fit);

void bm_helstrom(benchmark::State& state) {
    const Ensemble sent = send_through(ensemble_s0plus(), Channel(y_flip(0.1)), false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(helstrom(sent.members()[0].first, sent.members()[0].second,
                                          sent.members()[1].first, sent.members()[1].second));
    }
}
BENCHMARK(bm_helstrom);

void bm_oracle_default_grid(benchmark::State& state) {
    const Channel c{y_flip(0.1)};
    const Ensemble e = ensemble_s0plus();
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_optimal(e, c, true));
    }
}
BENCHMARK(bm_oracle_default_grid)->Unit(benchmark::kMillisecond);

void bm_simulate_ideal(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.channel = y_flip(0.1);
    cfg.n_pulses = static_cast<std::uint64_t>(state.range(0));
    cfg.loss_db = 0.0;
    cfg.receiver_loss_db = 0.0;
    cfg.detector_efficiency = 1.0;
    cfg.dark_count_prob = 0.0;
    cfg.seed = 42;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate_ideal)->Arg(100000)->Unit(benchmark::kMillisecond);

void bm_simulate_protected_lossy(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.channel = y_flip(0.1);
    cfg.protection = three_element_set(0, 4, 8);
    cfg.n_pulses = static_cast<std::uint64_t>(state.range(0));
    cfg.loss_db = 20.0;
    cfg.seed = 42;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate_protected_lossy)->Arg(1000000)->Unit(benchmark::kMillisecond);

void bm_advantage_distillation(benchmark::State& state) {
    std::mt19937_64 rng(23);
    std::vector<SiftedRecord> bits(1 << 16);
    for (SiftedRecord& r : bits) {
        const auto a = static_cast<std::uint8_t>(rng() >> 63);
        const bool flip = ((rng() >> 11) * 0x1.0p-53) < 0.05;
        r = {a, static_cast<std::uint8_t>(a ^ (flip ? 1 : 0)), Basis::z, std::nullopt};
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(advantage_distillation(bits, AdConfig{3}, 99));
    }
    state.SetItemsProcessed(state.iterations() * bits.size());
}
BENCHMARK(bm_advantage_distillation);

void bm_threshold_report(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(threshold_report());
    }
    state.SetLabel("all 11 rows incl. bisections");
}
BENCHMARK(bm_threshold_report)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include "mpqkd/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mpqkd {

namespace {

void require_probability(double v, const char* field) {
    if (v < 0.0 || v > 1.0) {
        std::ostringstream os;
        os << field << " = " << v << " must be a probability in [0, 1]";
        throw std::invalid_argument(os.str());
    }
}

void require_nonnegative(double v, const char* field) {
    if (v < 0.0) {
        std::ostringstream os;
        os << field << " = " << v << " must be nonnegative";
        throw std::invalid_argument(os.str());
    }
}

// Deterministic per-worker random stream: same binary, same seed, same
// worker index => same draws.
class WorkerRng {
  public:
    WorkerRng(std::uint64_t seed, unsigned worker_index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(worker_index)};
        eng_.seed(seq);
    }

    std::mt19937_64& engine() { return eng_; }

    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint32_t bit() { return static_cast<std::uint32_t>(eng_() >> 63); }

    std::uint32_t two_bits() { return static_cast<std::uint32_t>(eng_() >> 62); }

    std::size_t index(std::size_t m) {
        const auto i = static_cast<std::size_t>(u01() * static_cast<double>(m));
        return std::min(i, m - 1);
    }

  private:
    std::mt19937_64 eng_;
};

// Cumulative sampler for the channel's Pauli branch.
struct PauliSampler {
    std::array<double, 4> cum{};

    explicit PauliSampler(const PauliChannel& c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            acc += std::max(c.probabilities()[i], 0.0);
            cum[i] = acc;
        }
    }

    std::size_t draw(WorkerRng& rng) const {
        const double u = rng.u01() * cum[3];
        for (std::size_t i = 0; i < 3; ++i) {
            if (u < cum[i]) {
                return i;
            }
        }
        return 3;
    }
};

Ket prepared_ket(std::uint32_t basis, std::uint32_t bit) {
    if (basis == 0) {
        return bit ? ket_one() : ket_zero();
    }
    return bit ? ket_minus() : ket_plus();
}

// The two-state protocol's fixed measurement basis {m0, m+} (orthonormal):
// outcome 0 answers |0>, outcome 1 answers |+>.
Ket m0_ket() {
    const double t = std::numbers::pi / 8.0;
    return {std::cos(t), -std::sin(t)};
}

Ket two_state_ket(std::uint32_t index) { return index ? ket_plus() : ket_zero(); }

struct WorkerResult {
    std::uint64_t n_detected = 0;
    std::uint64_t n_sifted = 0;
    std::uint64_t n_errors = 0;
    std::vector<SiftedRecord> records;
};

WorkerResult simulate_worker(const SimulationConfig& cfg, std::uint64_t n_pulses,
                             unsigned worker_index, bool collect) {
    WorkerResult out;
    WorkerRng rng(cfg.seed, worker_index);

    const DetectionRates rates = detection_rates(cfg);
    const double p_signal = rates.signal_keep;
    const double p_dark_cond =
        (1.0 - p_signal) > 0.0 ? rates.dark_keep / (1.0 - p_signal) : 0.0;

    // The per-pulse loop only ever branches on (signal kept, dark-only kept,
    // discarded); drawing the two counts first and simulating the kept
    // events in detail is distributionally identical and skips the dead
    // pulses, which dominate at high loss.
    std::uint64_t n_signal = 0;
    if (p_signal >= 1.0) {
        n_signal = n_pulses;
    } else if (p_signal > 0.0) {
        std::binomial_distribution<std::uint64_t> bin(n_pulses, p_signal);
        n_signal = bin(rng.engine());
    }
    std::uint64_t n_dark = 0;
    if (p_dark_cond > 0.0 && n_pulses > n_signal) {
        std::binomial_distribution<std::uint64_t> bin(n_pulses - n_signal, p_dark_cond);
        n_dark = bin(rng.engine());
    }

    const bool bb84 = cfg.protocol == ProtocolKind::bb84;
    const PauliSampler sampler(cfg.channel);
    const Ket m0 = m0_ket();

    std::vector<Mat2> pre;
    std::vector<Mat2> post;
    if (cfg.protection) {
        pre.reserve(cfg.protection->size());
        post.reserve(cfg.protection->size());
        for (std::size_t j = 0; j < cfg.protection->size(); ++j) {
            pre.push_back((*cfg.protection)[j].matrix());
            post.push_back(adjoint(pre.back()));
        }
    }

    if (collect) {
        out.records.reserve(n_signal + n_dark);
    }

    auto push_record = [&](std::uint8_t alice, std::uint8_t bob, Basis basis,
                           std::optional<std::uint16_t> twirl_index) {
        ++out.n_sifted;
        out.n_errors += (alice != bob);
        if (collect) {
            out.records.push_back({alice, bob, basis, twirl_index});
        }
    };

    for (std::uint64_t t = 0; t < n_signal; ++t) {
        std::uint32_t alice_bit;
        std::uint32_t alice_basis;
        Ket psi;
        if (bb84) {
            const std::uint32_t prep = rng.two_bits();
            alice_bit = prep & 1u;
            alice_basis = prep >> 1;
            psi = prepared_ket(alice_basis, alice_bit);
        } else {
            alice_bit = rng.bit();
            alice_basis = 0;
            psi = two_state_ket(alice_bit);
        }

        std::optional<std::uint16_t> twirl_index;
        if (cfg.protection) {
            const std::size_t j = rng.index(cfg.protection->size());
            twirl_index = static_cast<std::uint16_t>(j);
            psi = pre[j] * psi;
        }
        psi = pauli(sampler.draw(rng)) * psi;
        if (twirl_index) {
            psi = post[*twirl_index] * psi;
        }

        ++out.n_detected;
        if (bb84) {
            const std::uint32_t bob_basis = rng.bit();
            const Ket b0 = bob_basis ? ket_plus() : ket_zero();
            const double p0 = std::norm(inner(b0, psi));
            const std::uint32_t outcome = rng.u01() < p0 ? 0u : 1u;
            if (bob_basis == alice_basis) {
                push_record(static_cast<std::uint8_t>(alice_bit),
                            static_cast<std::uint8_t>(outcome),
                            bob_basis ? Basis::x : Basis::z, twirl_index);
            }
        } else {
            const double p0 = std::norm(inner(m0, psi));
            const std::uint32_t outcome = rng.u01() < p0 ? 0u : 1u;
            push_record(static_cast<std::uint8_t>(alice_bit),
                        static_cast<std::uint8_t>(outcome), Basis::z, twirl_index);
        }
    }

    // Dark-only clicks: the outcome is whichever detector fired, uniformly.
    for (std::uint64_t t = 0; t < n_dark; ++t) {
        std::optional<std::uint16_t> twirl_index;
        if (cfg.protection) {
            twirl_index = static_cast<std::uint16_t>(rng.index(cfg.protection->size()));
        }
        ++out.n_detected;
        if (bb84) {
            const std::uint32_t prep = rng.two_bits();
            const std::uint32_t bob_basis = rng.bit();
            const std::uint32_t outcome = rng.bit();
            if (bob_basis == (prep >> 1)) {
                push_record(static_cast<std::uint8_t>(prep & 1u),
                            static_cast<std::uint8_t>(outcome),
                            bob_basis ? Basis::x : Basis::z, twirl_index);
            }
        } else {
            const std::uint32_t alice_bit = rng.bit();
            const std::uint32_t outcome = rng.bit();
            push_record(static_cast<std::uint8_t>(alice_bit),
                        static_cast<std::uint8_t>(outcome), Basis::z, twirl_index);
        }
    }

    // Restore pulse-order statistics: the generation order put all signal
    // events before all dark events, but within a worker the kept events of
    // a per-pulse loop are exchangeable, so a uniform shuffle recovers the
    // correct joint distribution for block-based consumers.
    if (collect && out.records.size() > 1) {
        for (std::size_t i = out.records.size() - 1; i > 0; --i) {
            const std::size_t j = rng.index(i + 1);
            std::swap(out.records[i], out.records[j]);
        }
    }
    return out;
}

}  // namespace

void validate(const SimulationConfig& cfg) {
    if (cfg.n_pulses < 1) {
        throw std::invalid_argument("n_pulses must be at least 1");
    }
    require_nonnegative(cfg.loss_db, "loss_db");
    require_nonnegative(cfg.receiver_loss_db, "receiver_loss_db");
    require_probability(cfg.detector_efficiency, "detector_efficiency");
    require_probability(cfg.dark_count_prob, "dark_count_prob");
    if (cfg.n_workers < 1) {
        throw std::invalid_argument("n_workers must be at least 1");
    }
    if (cfg.protection && cfg.protection->size() > 65535) {
        throw std::invalid_argument("protection set too large to index in sifted records");
    }
}

DetectionRates detection_rates(const SimulationConfig& cfg) {
    validate(cfg);
    const double survival =
        std::pow(10.0, -(cfg.loss_db + cfg.receiver_loss_db) / 10.0) * cfg.detector_efficiency;
    const double d = cfg.dark_count_prob;
    DetectionRates rates;
    // Signal clicks one detector; the event survives unless the opposite
    // detector dark-fires too.  Without a signal, exactly one of the two
    // detectors must dark-fire.
    rates.signal_keep = survival * (1.0 - d);
    rates.dark_keep = (1.0 - survival) * 2.0 * d * (1.0 - d);
    rates.sift_factor = cfg.protocol == ProtocolKind::bb84 ? 0.5 : 1.0;
    return rates;
}

SimulationReport run(const SimulationConfig& cfg) { return run(cfg, nullptr); }

SimulationReport run(const SimulationConfig& cfg, std::vector<SiftedRecord>* sifted_out) {
    validate(cfg);
    const unsigned workers = cfg.n_workers;
    const bool collect = sifted_out != nullptr;

    std::vector<WorkerResult> results(workers);
    const std::uint64_t base = cfg.n_pulses / workers;
    const std::uint64_t rem = cfg.n_pulses % workers;
    auto pulses_for = [&](unsigned w) { return base + (w < rem ? 1 : 0); };

    if (workers == 1) {
        results[0] = simulate_worker(cfg, cfg.n_pulses, 0, collect);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] { results[w] = simulate_worker(cfg, pulses_for(w), w, collect); });
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }

    SimulationReport report;
    report.n_pulses = cfg.n_pulses;
    for (const WorkerResult& r : results) {
        report.n_detected += r.n_detected;
        report.n_sifted += r.n_sifted;
        report.n_errors += r.n_errors;
    }
    if (report.n_sifted > 0) {
        report.qber_estimate =
            static_cast<double>(report.n_errors) / static_cast<double>(report.n_sifted);
        report.qber_stderr = std::sqrt(report.qber_estimate * (1.0 - report.qber_estimate) /
                                       static_cast<double>(report.n_sifted));
    }
    report.analytic_qber = analytic_qber(cfg);

    if (collect) {
        sifted_out->clear();
        sifted_out->reserve(report.n_sifted);
        for (WorkerResult& r : results) {
            sifted_out->insert(sifted_out->end(), r.records.begin(), r.records.end());
        }
    }
    return report;
}

double analytic_qber(const SimulationConfig& cfg) {
    validate(cfg);
    const Channel base{cfg.channel};
    const Channel effective =
        cfg.protection ? Channel(twirl(base, *cfg.protection)) : base;

    double q_signal = 0.0;
    if (cfg.protocol == ProtocolKind::bb84) {
        for (std::uint32_t basis = 0; basis < 2; ++basis) {
            for (std::uint32_t bit = 0; bit < 2; ++bit) {
                const Mat2 state = outer(prepared_ket(basis, bit));
                const double correct = trace(state * act(effective, state)).real();
                q_signal += (1.0 - correct) / 4.0;
            }
        }
    } else {
        const Ket m0 = m0_ket();
        const Mat2 keep0 = outer(m0);
        const Mat2 keep1 = mat_identity - keep0;
        const double ok0 = trace(keep0 * act(effective, outer(ket_zero()))).real();
        const double ok1 = trace(keep1 * act(effective, outer(ket_plus()))).real();
        q_signal = 1.0 - 0.5 * (ok0 + ok1);
    }
    q_signal = std::clamp(q_signal, 0.0, 1.0);

    const DetectionRates rates = detection_rates(cfg);
    const double total = rates.signal_keep + rates.dark_keep;
    if (total <= 0.0) {
        return q_signal;  // no click is ever kept; report the signal value
    }
    return (rates.signal_keep * q_signal + 0.5 * rates.dark_keep) / total;
}

AdResult advantage_distillation(const std::vector<SiftedRecord>& bits, const AdConfig& cfg,
                                std::uint64_t seed) {
    if (cfg.k < 1) {
        throw std::invalid_argument("advantage distillation block size must be at least 1");
    }
    if (bits.size() < cfg.k) {
        std::ostringstream os;
        os << "insufficient-bits: need at least " << cfg.k << " sifted bits, got " << bits.size();
        throw std::invalid_argument(os.str());
    }

    std::mt19937_64 rng(seed);
    AdResult result;
    result.stats.n_blocks = bits.size() / cfg.k;
    result.accepted_pairs.reserve(result.stats.n_blocks);

    for (std::uint64_t block = 0; block < result.stats.n_blocks; ++block) {
        const std::size_t begin = static_cast<std::size_t>(block) * cfg.k;
        const auto secret = static_cast<std::uint8_t>(rng() >> 63);

        // Alice announces a_i = secret XOR alice_bit_i; Bob forms
        // b_i = a_i XOR bob_bit_i = secret XOR e_i and accepts only when all
        // b_i agree, i.e. when the block's error pattern is constant.
        const std::uint8_t first_error = bits[begin].alice_bit ^ bits[begin].bob_bit;
        bool accept = true;
        for (std::size_t i = 1; i < cfg.k; ++i) {
            const std::uint8_t e = bits[begin + i].alice_bit ^ bits[begin + i].bob_bit;
            if (e != first_error) {
                accept = false;
                break;
            }
        }
        if (accept) {
            const auto decoded = static_cast<std::uint8_t>(secret ^ first_error);
            result.accepted_pairs.emplace_back(secret, decoded);
            ++result.stats.n_accepted;
            result.stats.n_errors += (decoded != secret);
        }
    }

    result.stats.accept_rate = static_cast<double>(result.stats.n_accepted) /
                               static_cast<double>(result.stats.n_blocks);
    result.stats.post_error_rate =
        result.stats.n_accepted > 0
            ? static_cast<double>(result.stats.n_errors) /
                  static_cast<double>(result.stats.n_accepted)
            : 0.0;
    return result;
}

AdExactStats ad_exact_stats(double eps, std::size_t k) {
    if (eps < 0.0 || eps > 1.0) {
        throw std::invalid_argument("error rate must be a probability in [0, 1]");
    }
    if (k < 1) {
        throw std::invalid_argument("block size must be at least 1");
    }
    const double all_err = std::pow(eps, static_cast<double>(k));
    const double all_ok = std::pow(1.0 - eps, static_cast<double>(k));
    const double accept = all_err + all_ok;
    AdExactStats stats;
    stats.accept_prob = accept;
    if (accept > 0.0) {
        stats.post_error = all_err / accept;
    } else {
        // Underflow for large k: the ratio limit is decided by which branch
        // dominates.
        stats.post_error = eps > 0.5 ? 1.0 : (eps < 0.5 ? 0.0 : 0.5);
    }
    return stats;
}

}  // namespace mpqkd

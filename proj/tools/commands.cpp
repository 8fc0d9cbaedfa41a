#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "csv.hpp"
#include "mpqkd/discrimination.hpp"
#include "mpqkd/protocol.hpp"
#include "mpqkd/security.hpp"
#include "mpqkd/twirl.hpp"

namespace mpqkd::cli {

namespace {

// All validation must happen before this is called: a failed command must
// not leave a half-written file behind.
void write_csv(const GlobalOptions& g, const std::function<void(CsvWriter&)>& body) {
    if (g.out_path) {
        std::ofstream out(*g.out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw CliError(3, "cannot open output file '" + *g.out_path + "'");
        }
        CsvWriter csv(out);
        body(csv);
        out.flush();
        if (!out) {
            throw CliError(3, "failed writing output file '" + *g.out_path + "'");
        }
    } else {
        CsvWriter csv(std::cout);
        body(csv);
    }
}

Settings merged_settings(const GlobalOptions& g) {
    Settings s = load_settings(g.config_path);
    if (g.seed) {
        s.seed = *g.seed;
    }
    if (g.workers) {
        if (*g.workers < 1 || *g.workers > 4096) {
            throw CliError(2, "invalid value for workers: must be in 1..4096");
        }
        s.workers = *g.workers;
    }
    return s;
}

PauliChannel channel_or_fail(const Settings& s, const std::optional<double>& p_flag,
                             Settings* update = nullptr) {
    if (p_flag) {
        PauliChannel c = [&] {
            try {
                return y_flip(*p_flag);
            } catch (const std::invalid_argument& e) {
                throw CliError(2, std::string("invalid value for p: ") + e.what());
            }
        }();
        if (update) {
            update->channel = c;
            update->channel_parameter = *p_flag;
        }
        return c;
    }
    if (s.channel) {
        return *s.channel;
    }
    throw CliError(2, "no channel configured: pass --p or a [channel] config section");
}

SimulationConfig config_from(const Settings& s, bool protection_on) {
    SimulationConfig cfg;
    cfg.protocol = s.protocol;
    cfg.n_pulses = s.n_pulses;
    if (s.channel) {
        cfg.channel = *s.channel;
    }
    if (protection_on) {
        cfg.protection = three_element_set(0, 4, 8);
    }
    cfg.loss_db = s.loss_db;
    cfg.receiver_loss_db = s.receiver_loss_db;
    cfg.detector_efficiency = s.detector_efficiency;
    cfg.dark_count_prob = s.dark_count_prob;
    cfg.seed = s.seed;
    cfg.n_workers = s.workers;
    return cfg;
}

}  // namespace

int cmd_twirl_check(const GlobalOptions& g, const TwirlCheckOptions& opt) {
    Settings s = merged_settings(g);
    const PauliChannel channel = channel_or_fail(s, opt.p);
    if (opt.tol <= 0.0) {
        throw CliError(2, "invalid value for tol: must be positive");
    }

    const double eta_predicted = (4.0 / 3.0) * (1.0 - channel.p0());
    struct Row {
        std::int64_t set_index, u, v, w;
        DepolarizingFit fit;
        bool ok;
    };
    std::vector<Row> rows;
    rows.reserve(65);

    std::int64_t index = 0;
    double worst = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 4; b < 8; ++b) {
            for (std::size_t c = 8; c < 12; ++c) {
                const DepolarizingFit fit =
                    depolarizing_fit(Channel(twirl(Channel(channel), three_element_set(a, b, c))),
                                     opt.tol);
                const bool ok = fit.ok && std::abs(fit.eta - eta_predicted) <= opt.tol;
                worst = std::max(worst, std::abs(fit.eta - eta_predicted));
                rows.push_back({index++, static_cast<std::int64_t>(a + 1),
                                static_cast<std::int64_t>(b + 1), static_cast<std::int64_t>(c + 1),
                                fit, ok});
            }
        }
    }
    const DepolarizingFit full =
        depolarizing_fit(Channel(twirl(Channel(channel), standard_2design())), opt.tol);
    const bool full_ok = full.ok && std::abs(full.eta - eta_predicted) <= opt.tol;
    worst = std::max(worst, std::abs(full.eta - eta_predicted));
    rows.push_back({64, -1, -1, -1, full, full_ok});

    write_csv(g, [&](CsvWriter& csv) {
        csv.header({"set_index", "u", "v", "w", "eta", "eta_predicted", "max_deviation", "ok"});
        for (const Row& r : rows) {
            csv.field(r.set_index)
                .field(r.u)
                .field(r.v)
                .field(r.w)
                .field(r.fit.eta)
                .field(eta_predicted)
                .field(r.fit.max_deviation)
                .field(r.ok);
            csv.end_row();
        }
    });

    std::size_t n_ok = 0;
    for (const Row& r : rows) {
        n_ok += r.ok ? 1 : 0;
    }
    if (g.out_path) {
        std::cout << "twirl-check: " << n_ok << "/" << rows.size()
                  << " sets depolarize the channel (max |eta - predicted| = " << worst << ")\n";
    }
    return n_ok == rows.size() ? 0 : 3;
}

int cmd_discriminate(const GlobalOptions& g, const DiscriminateOptions& opt) {
    if (!(opt.p_min >= 0.0 && opt.p_min <= opt.p_max && opt.p_max <= 0.5)) {
        std::ostringstream os;
        os << "invalid p range [" << opt.p_min << ", " << opt.p_max
           << "]: need 0 <= pmin <= pmax <= 0.5";
        throw CliError(2, os.str());
    }
    if (opt.steps < 1) {
        throw CliError(2, "invalid value for steps: must be at least 1");
    }
    const bool s2 = opt.ensemble == "s2";
    if (!s2 && opt.ensemble != "s0plus") {
        throw CliError(2, "invalid value for ensemble: expected s2 or s0plus, got '" +
                              opt.ensemble + "'");
    }
    const Ensemble e = s2 ? ensemble_s2() : ensemble_s0plus();
    const Measurement fixed = s2 ? z_basis_measurement() : m0plus_measurement();

    write_csv(g, [&](CsvWriter& csv) {
        csv.header({"p", "pguess_std", "pguess_mp", "pguess_oracle_std", "pguess_oracle_mp"});
        for (unsigned i = 0; i < opt.steps; ++i) {
            const double p =
                opt.steps == 1
                    ? opt.p_min
                    : opt.p_min + (opt.p_max - opt.p_min) * static_cast<double>(i) /
                                      static_cast<double>(opt.steps - 1);
            const Channel c{y_flip(p)};

            const Ensemble sent = send_through(e, c, false);
            const double p_std = helstrom(sent.members()[0].first, sent.members()[0].second,
                                          sent.members()[1].first, sent.members()[1].second)
                                     .p_guess;
            const double p_mp = guess_prob_through(e, c, true, fixed);
            const double oracle_std = brute_force_optimal(e, c, false);
            const double oracle_mp = brute_force_optimal(e, c, true);

            csv.field(p).field(p_std).field(p_mp).field(oracle_std).field(oracle_mp);
            csv.end_row();
        }
    });
    return 0;
}

int cmd_qber_sweep(const GlobalOptions& g, const QberSweepOptions& opt) {
    Settings s = merged_settings(g);
    const PauliChannel channel = channel_or_fail(s, opt.p, &s);

    std::vector<double> losses = opt.loss_db;
    if (losses.empty()) {
        losses = {10.0, 20.0, 30.0};
    }
    for (double l : losses) {
        if (l < 0.0) {
            std::ostringstream os;
            os << "invalid value for loss: " << l << " must be >= 0";
            throw CliError(2, os.str());
        }
    }
    std::vector<bool> protections;
    if (opt.protection == "both") {
        protections = {false, true};
    } else if (opt.protection == "on") {
        protections = {true};
    } else if (opt.protection == "off") {
        protections = {false};
    } else {
        throw CliError(2, "invalid value for protection: expected both, on or off, got '" +
                              opt.protection + "'");
    }
    if (opt.pulses) {
        if (*opt.pulses < 1) {
            throw CliError(2, "invalid value for pulses: must be at least 1");
        }
        s.n_pulses = *opt.pulses;
    }
    const double p_column = s.channel_parameter ? *s.channel_parameter : qber(channel);

    // Validate every cell before any output is produced.
    std::vector<SimulationConfig> cells;
    for (double loss : losses) {
        for (bool prot : protections) {
            SimulationConfig cfg = config_from(s, prot);
            cfg.loss_db = loss;
            cfg.seed = s.seed + cells.size();  // decorrelate rows
            try {
                validate(cfg);
            } catch (const std::invalid_argument& ex) {
                throw CliError(2, std::string("invalid simulation config: ") + ex.what());
            }
            cells.push_back(std::move(cfg));
        }
    }

    write_csv(g, [&](CsvWriter& csv) {
        csv.header({"p", "loss_db", "protected", "qber_analytic", "qber_mc", "stderr",
                    "n_sifted"});
        for (const SimulationConfig& cfg : cells) {
            const SimulationReport report = run(cfg);
            csv.field(p_column)
                .field(cfg.loss_db)
                .field(static_cast<bool>(cfg.protection))
                .field(report.analytic_qber)
                .field(report.qber_estimate)
                .field(report.qber_stderr)
                .field(report.n_sifted);
            csv.end_row();
        }
    });
    return 0;
}

int cmd_thresholds(const GlobalOptions& g) {
    const std::vector<ThresholdRow> rows = threshold_report();

    std::cout << std::left << std::setw(22) << "threshold" << std::right << std::setw(12)
              << "stored" << std::setw(14) << "recomputed" << std::setw(12) << "abs_diff"
              << "\n";
    std::cout << std::string(60, '-') << "\n";
    for (const ThresholdRow& row : rows) {
        std::cout << std::left << std::setw(22) << row.name << std::right << std::setw(12)
                  << std::fixed << std::setprecision(6) << row.stored;
        if (row.recomputed) {
            std::cout << std::setw(14) << *row.recomputed << std::setw(12)
                      << std::abs(*row.recomputed - row.stored);
        } else {
            std::cout << std::setw(14) << "-" << std::setw(12) << "-";
        }
        std::cout << "\n";
    }
    std::cout.unsetf(std::ios::floatfield);
    std::cout << std::setprecision(6);

    if (g.out_path) {
        write_csv(g, [&](CsvWriter& csv) {
            csv.header({"name", "stored", "recomputed", "abs_diff"});
            for (const ThresholdRow& row : rows) {
                csv.field(std::string_view(row.name)).field(row.stored);
                if (row.recomputed) {
                    csv.field(*row.recomputed).field(std::abs(*row.recomputed - row.stored));
                } else {
                    csv.empty_field().empty_field();
                }
                csv.end_row();
            }
        });
    }
    return 0;
}

namespace {

SimulationConfig simulate_config(const GlobalOptions& g, const SimulateOptions& opt,
                                 Settings* settings_out = nullptr) {
    Settings s = merged_settings(g);
    channel_or_fail(s, opt.p, &s);
    if (opt.pulses) {
        if (*opt.pulses < 1) {
            throw CliError(2, "invalid value for pulses: must be at least 1");
        }
        s.n_pulses = *opt.pulses;
    }
    if (opt.loss_db) {
        s.loss_db = *opt.loss_db;
    }
    const bool prot = opt.protection ? *opt.protection : s.protection.value_or(false);
    SimulationConfig cfg = config_from(s, prot);
    try {
        validate(cfg);
    } catch (const std::invalid_argument& ex) {
        throw CliError(2, std::string("invalid simulation config: ") + ex.what());
    }
    if (settings_out) {
        *settings_out = s;
    }
    return cfg;
}

}  // namespace

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& opt) {
    const SimulationConfig cfg = simulate_config(g, opt);
    const SimulationReport report = run(cfg);

    write_csv(g, [&](CsvWriter& csv) {
        csv.header({"protected", "loss_db", "n_pulses", "n_detected", "n_sifted", "n_errors",
                    "qber_estimate", "qber_stderr", "analytic_qber"});
        csv.field(static_cast<bool>(cfg.protection))
            .field(cfg.loss_db)
            .field(report.n_pulses)
            .field(report.n_detected)
            .field(report.n_sifted)
            .field(report.n_errors)
            .field(report.qber_estimate)
            .field(report.qber_stderr)
            .field(report.analytic_qber);
        csv.end_row();
    });
    if (g.out_path) {
        std::cout << "simulate: " << report.n_sifted << "/" << report.n_pulses
                  << " sifted, qber " << report.qber_estimate << " +/- " << report.qber_stderr
                  << " (analytic " << report.analytic_qber << ")\n";
    }
    return 0;
}

int cmd_distill(const GlobalOptions& g, const DistillOptions& opt) {
    if (opt.k < 1) {
        throw CliError(2, "invalid value for k: must be at least 1");
    }
    if (opt.k_max && *opt.k_max < 1) {
        throw CliError(2, "invalid value for kmax: must be at least 1");
    }
    const SimulationConfig cfg = simulate_config(g, opt.sim);

    std::vector<unsigned> ks;
    if (opt.k_max) {
        for (unsigned k = 1; k <= *opt.k_max; ++k) {
            ks.push_back(k);
        }
    } else {
        ks.push_back(opt.k);
    }

    std::vector<SiftedRecord> records;
    const SimulationReport report = run(cfg, &records);
    const unsigned max_k = ks.back();
    if (records.size() < max_k) {
        std::ostringstream os;
        os << "insufficient sifted bits for distillation: have " << records.size()
           << ", need at least " << max_k;
        throw CliError(3, os.str());
    }

    write_csv(g, [&](CsvWriter& csv) {
        csv.header({"k", "n_blocks", "n_accepted", "n_ad_errors", "accept_rate",
                    "post_error_rate", "accept_exact", "post_error_exact"});
        for (unsigned k : ks) {
            const AdResult ad = advantage_distillation(records, AdConfig{k}, cfg.seed + k);
            const AdExactStats exact = ad_exact_stats(report.analytic_qber, k);
            csv.field(static_cast<std::uint64_t>(k))
                .field(ad.stats.n_blocks)
                .field(ad.stats.n_accepted)
                .field(ad.stats.n_errors)
                .field(ad.stats.accept_rate)
                .field(ad.stats.post_error_rate)
                .field(exact.accept_prob)
                .field(exact.post_error);
            csv.end_row();
        }
    });
    return 0;
}

}  // namespace mpqkd::cli

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = mpqkd::cli;

int main(int argc, char** argv) {
    CLI::App app{"measurement-protected QKD simulation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::GlobalOptions global;
    app.add_option("--config", global.config_path, "config file ([channel]/[detection]/[run])");
    app.add_option("--seed", global.seed, "RNG seed (overrides the config file)");
    app.add_option("--out", global.out_path, "write CSV here instead of stdout");
    app.add_option("--workers", global.workers, "worker threads for simulation");

    cli::TwirlCheckOptions twirl_opt;
    CLI::App* twirl_cmd =
        app.add_subcommand("twirl-check", "verify the channel twirls to a depolarizing one");
    twirl_cmd->add_option("--p", twirl_opt.p, "use a y-flip channel with this p");
    twirl_cmd->add_option("--tol", twirl_opt.tol, "depolarizing-fit tolerance");

    cli::DiscriminateOptions disc_opt;
    CLI::App* disc_cmd =
        app.add_subcommand("discriminate", "guessing-probability curves over the y-flip family");
    disc_cmd->add_option("--pmin", disc_opt.p_min, "lower end of the p grid");
    disc_cmd->add_option("--pmax", disc_opt.p_max, "upper end of the p grid");
    disc_cmd->add_option("--steps", disc_opt.steps, "number of grid points");
    disc_cmd->add_option("--ensemble", disc_opt.ensemble, "state pair: s2 or s0plus");

    cli::QberSweepOptions sweep_opt;
    CLI::App* sweep_cmd =
        app.add_subcommand("qber-sweep", "Monte Carlo + analytic QBER over a loss grid");
    sweep_cmd->add_option("--p", sweep_opt.p, "use a y-flip channel with this p");
    sweep_cmd->add_option("--loss", sweep_opt.loss_db, "channel loss values in dB")
        ->delimiter(',');
    sweep_cmd->add_option("--protection", sweep_opt.protection, "both, on or off");
    sweep_cmd->add_option("--pulses", sweep_opt.pulses, "pulses per cell");

    CLI::App* thresh_cmd =
        app.add_subcommand("thresholds", "stored vs recomputed security thresholds");

    cli::SimulateOptions sim_opt;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "single protocol run");
    sim_cmd->add_option("--p", sim_opt.p, "use a y-flip channel with this p");
    sim_cmd->add_flag("--protection,!--no-protection", sim_opt.protection,
                      "toggle measurement protection");
    sim_cmd->add_option("--pulses", sim_opt.pulses, "number of pulses");
    sim_cmd->add_option("--loss", sim_opt.loss_db, "channel loss in dB");

    cli::DistillOptions dist_opt;
    CLI::App* dist_cmd =
        app.add_subcommand("distill", "advantage distillation on simulated sifted bits");
    dist_cmd->add_option("--p", dist_opt.sim.p, "use a y-flip channel with this p");
    dist_cmd->add_flag("--protection,!--no-protection", dist_opt.sim.protection,
                       "toggle measurement protection");
    dist_cmd->add_option("--pulses", dist_opt.sim.pulses, "number of pulses");
    dist_cmd->add_option("--loss", dist_opt.sim.loss_db, "channel loss in dB");
    dist_cmd->add_option("--k", dist_opt.k, "block size");
    dist_cmd->add_option("--kmax", dist_opt.k_max, "sweep block sizes 1..kmax");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    try {
        if (twirl_cmd->parsed()) {
            return cli::cmd_twirl_check(global, twirl_opt);
        }
        if (disc_cmd->parsed()) {
            return cli::cmd_discriminate(global, disc_opt);
        }
        if (sweep_cmd->parsed()) {
            return cli::cmd_qber_sweep(global, sweep_opt);
        }
        if (thresh_cmd->parsed()) {
            return cli::cmd_thresholds(global);
        }
        if (sim_cmd->parsed()) {
            return cli::cmd_simulate(global, sim_opt);
        }
        if (dist_cmd->parsed()) {
            return cli::cmd_distill(global, dist_opt);
        }
    } catch (const cli::CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

// koiso -- verification driver for the Fubini-Study geometry of CP^n, the
// first-eigenvalue deformation tensors on CP^n x CP^1, and the second-order
// obstruction constant, by exact rational closed forms, Monte Carlo
// integration of the closed-form integrands, and a numeric covariant
// derivative engine.
//
// Subcommands:
//   integrals    print the exact radial integral table
//   check        run the identity suite
//   obstruction  evaluate the obstruction terms and total
//   all          integrals table + identity suite + obstruction
//
// Exit codes: 0 all checks passed, 1 at least one check failed,
//             2 configuration or usage error.

#include "koiso/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace koiso;

struct CliOptions {
    RunConfig config;
    std::vector<std::string> check_names{"all"};
    std::string eta_text = "gamma";
    std::string format_text = "json";
    int n_max = 3;
};

void finalize(CliOptions& opt) {
    opt.config.eta = EtaModeConfig::parse(opt.eta_text);
    if (opt.format_text == "json") {
        opt.config.format = OutputFormat::Json;
    } else if (opt.format_text == "markdown") {
        opt.config.format = OutputFormat::Markdown;
    } else {
        throw std::invalid_argument("--format must be json or markdown");
    }
    opt.config.checks.clear();
    for (const std::string& name : opt.check_names) {
        if (name == "all") {
            opt.config.checks.clear();
            break;
        }
        const auto id = identity_from_name(name);
        if (!id) throw std::invalid_argument("unknown check '" + name + "'");
        opt.config.checks.push_back(*id);
    }
    opt.config.validate();
}

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--n", opt.config.n_list, "chart dimensions to verify")
        ->delimiter(',');
    cmd->add_option("--samples", opt.config.samples, "Monte Carlo samples per estimate");
    cmd->add_option("--seed", opt.config.seed, "RNG seed");
    cmd->add_option("--partitions", opt.config.partitions, "independent RNG partitions");
    cmd->add_option("--eta", opt.eta_text, "gamma | random:<k>");
    cmd->add_option("--format", opt.format_text, "json | markdown");
    cmd->add_option("--out", opt.config.output_path, "write the report to a file");
    cmd->set_config("--config");
}

void emit(const RunReport& report, const RunConfig& config) {
    const std::string text =
        config.format == OutputFormat::Json ? to_json_string(report) : to_markdown(report);
    if (config.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.output_path);
        if (!out) throw std::invalid_argument("cannot open output path " + config.output_path);
        out << text;
    }
}

void run_checks_into(RunReport& report) {
    const RunConfig& config = report.config;
    CheckConfig cc = config.check_config();
    if (config.checks.empty()) {
        auto reports = run_suite(config.n_list, cc);
        report.checks.insert(report.checks.end(), reports.begin(), reports.end());
        return;
    }
    std::vector<int> ns = config.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (IdentityId id : config.checks) {
        const IdentityKind kind = identity_info(id).kind;
        for (int n : ns) {
            report.checks.push_back(check_identity(id, n, CheckMethod::Closed, cc));
            if (config.samples == 0) continue;
            if (kind == IdentityKind::Pointwise) {
                report.checks.push_back(check_identity(id, n, CheckMethod::Pointwise, cc));
            } else {
                report.checks.push_back(check_identity(id, n, CheckMethod::MonteCarlo, cc));
            }
        }
    }
}

void run_obstruction_into(RunReport& report) {
    const RunConfig& config = report.config;
    std::vector<int> ns = config.n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    MCConfig mc;
    mc.samples = config.samples;
    mc.seed = config.seed;
    mc.partitions = config.partitions;
    for (int n : ns) {
        report.obstructions.push_back(koiso_obstruction_closed(n));
        if (config.samples > 0) {
            DeformationSpec spec{n, TracelessHermitian::gamma(n)};
            report.obstructions.push_back(koiso_obstruction_mc(spec, mc, config.tol_mc_sigma));
            if (config.eta.random) {
                for (int k = 0; k < config.eta.count; ++k) {
                    DeformationSpec rspec{
                        n, TracelessHermitian::random(n, config.seed + 101 * (k + 1))};
                    report.obstructions.push_back(
                        koiso_obstruction_mc(rspec, mc, config.tol_mc_sigma));
                }
            }
        }
        report.remark_checks.push_back(koiso_remark_crosscheck(n));
        report.remark_n.push_back(n);
    }
}

int run_report(CliOptions& opt, bool with_checks, bool with_obstruction) {
    finalize(opt);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.config = opt.config;
    if (with_checks) run_checks_into(report);
    if (with_obstruction) run_obstruction_into(report);
    report.recompute_summary();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report, opt.config);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suite for the CP^n x CP^1 deformation obstruction"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* cmd_integrals = app.add_subcommand("integrals", "print the exact integral table");
    cmd_integrals->add_option("--n-max", opt.n_max, "largest dimension to tabulate");

    CLI::App* cmd_check = app.add_subcommand("check", "run the identity suite");
    add_common_flags(cmd_check, opt);
    cmd_check->add_option("--checks", opt.check_names, "identity names or 'all'")->delimiter(',');

    CLI::App* cmd_obs = app.add_subcommand("obstruction", "evaluate the obstruction");
    add_common_flags(cmd_obs, opt);

    CLI::App* cmd_all = app.add_subcommand("all", "integral table, identity suite, obstruction");
    add_common_flags(cmd_all, opt);
    cmd_all->add_option("--checks", opt.check_names, "identity names or 'all'")->delimiter(',');
    cmd_all->add_option("--n-max", opt.n_max, "largest dimension to tabulate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_integrals->parsed()) {
            if (opt.n_max < 1) {
                std::cerr << "error: --n-max must be >= 1\n";
                return 2;
            }
            std::cout << integrals_table(opt.n_max);
            return 0;
        }
        if (cmd_check->parsed()) return run_report(opt, true, false);
        if (cmd_obs->parsed()) return run_report(opt, false, true);
        if (cmd_all->parsed()) {
            finalize(opt);
            if (opt.n_max >= 1) std::cout << integrals_table(opt.n_max);
            const auto t0 = std::chrono::steady_clock::now();
            RunReport report;
            report.config = opt.config;
            run_checks_into(report);
            run_obstruction_into(report);
            report.recompute_summary();
            report.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            emit(report, opt.config);
            return report.exit_code();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "percaniso/config.hpp"
#include "percaniso/coupling.hpp"
#include "percaniso/experiments.hpp"
#include "percaniso/partition.hpp"

namespace {

std::vector<double> parse_prob_list(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

void print_verdict(const char* name, const percaniso::Verdict& v)
{
    std::cout << name << ": " << percaniso::to_string(v.applicable_theorem)
              << " (delta=" << v.delta << ")\n  " << v.explanation << "\n";
    if (v.witness) {
        std::cout << "  witness blocks:";
        for (std::size_t b = 0; b < v.witness->blocks.size(); ++b) {
            std::cout << " {";
            for (std::size_t i = 0; i < v.witness->blocks[b].size(); ++i)
                std::cout << (i ? "," : "") << v.witness->blocks[b][i];
            std::cout << "} q-sum=" << v.witness->block_qsums[b];
        }
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"anisotropic bond percolation: simulation, coupling and theorem checks"};
    app.require_subcommand(1);

    // run <config>
    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment described by a config file");
    run->add_option("config", config_path, "key=value config file")->required();

    // verdict -d <d> -p <p1,...,pd> [--c1 v]
    int verdict_d = 0;
    std::string verdict_p;
    double verdict_c1 = 1.8;
    auto* verdict = app.add_subcommand("verdict", "report which supercriticality condition applies");
    verdict->add_option("-d,--dimension", verdict_d, "lattice dimension")->required();
    verdict->add_option("-p,--params", verdict_p, "comma-separated p_1,...,p_d")->required();
    verdict->add_option("--c1", verdict_c1, "C1 constant override (default 1.8)");

    // couple --params <p1,...,p_{d+1}> --trials N [--dump-trace path]
    std::string couple_p;
    std::int64_t couple_trials = 1;
    std::string dump_path;
    std::uint64_t couple_master = 0;
    std::int64_t couple_maxv = 100000;
    std::int64_t couple_radius = 1000000;
    auto* couple = app.add_subcommand("couple", "run and verify coupled explorations");
    couple->add_option("--params", couple_p, "ambient parameters p_1,...,p_{d+1}")->required();
    couple->add_option("--trials", couple_trials, "number of coupled runs");
    couple->add_option("--dump-trace", dump_path, "write the trial-0 trace to this file");
    couple->add_option("--master-seed", couple_master, "master seed");
    couple->add_option("--max-vertices", couple_maxv, "infected-set truncation");
    couple->add_option("--radius", couple_radius, "sup-norm truncation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const percaniso::ExperimentConfig cfg = percaniso::load_config_file(config_path);
            const int status = percaniso::run_experiment(cfg, &std::cout);
            std::cout << "wrote " << cfg.output_path << "\n";
            return status;
        }
        if (*verdict) {
            percaniso::Params params;
            params.d = verdict_d;
            params.p = parse_prob_list(verdict_p);
            percaniso::validate_params(params);
            const auto bundle = percaniso::derive_constants(verdict_c1);
            std::cout << "constants: C1=" << bundle.c1 << " C2=" << bundle.c2
                      << " C3=" << bundle.c3 << " C=" << bundle.c << "\n";
            print_verdict("theorem1", percaniso::check_theorem1(params, bundle));
            print_verdict("theorem2", percaniso::theorem2_partition(params));
            if (params.d == 2)
                std::cout << "note: d=2 percolates iff p1+p2 > 1 (here p1+p2 = "
                          << params.p[0] + params.p[1] << ")\n";
            return 0;
        }
        if (*couple) {
            percaniso::Params params;
            params.p = parse_prob_list(couple_p);
            params.d = static_cast<int>(params.p.size());
            percaniso::validate_params(params);
            const percaniso::BoxLimits limits{couple_maxv, couple_radius};
            std::int64_t violations = 0;
            for (std::int64_t t = 0; t < couple_trials; ++t) {
                const percaniso::Seed seed{couple_master, static_cast<std::uint64_t>(t)};
                const auto trace = percaniso::run_coupled_exploration(params, seed, limits);
                const auto rep = percaniso::verify_trace(trace, params, seed);
                for (const auto& v : rep.violations)
                    std::cerr << "trial " << t << ": " << v << "\n";
                violations += static_cast<std::int64_t>(rep.violations.size());
                if (t == 0 && !dump_path.empty()) {
                    std::ofstream out(dump_path, std::ios::binary);
                    if (!out) throw percaniso::Error("cannot write '" + dump_path + "'");
                    out << percaniso::format_trace(trace, params, seed);
                }
            }
            std::cout << "trials: " << couple_trials << " violations: " << violations << "\n";
            return violations == 0 ? 0 : 1;
        }
    } catch (const percaniso::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include "percaniso/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "percaniso/coupling.hpp"
#include "percaniso/explore.hpp"
#include "percaniso/partition.hpp"
#include "percaniso/stats.hpp"
#include "svg.hpp"

namespace percaniso {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Every CSV starts with a config echo so rows are self-describing.
std::string header_echo(const ExperimentConfig& cfg)
{
    std::ostringstream os;
    os << "# experiment=" << cfg.experiment;
    if (cfg.params.d > 0) {
        os << " d=" << cfg.params.d << " p=";
        for (std::size_t i = 0; i < cfg.params.p.size(); ++i)
            os << (i ? "," : "") << num(cfg.params.p[i]);
    }
    os << " trials=" << cfg.trials << " radius=" << cfg.limits.radius
       << " max_vertices=" << cfg.limits.max_vertices << " master_seed=" << cfg.master_seed;
    if (cfg.grid)
        os << " grid_axis=" << cfg.grid->axis << " grid_start=" << num(cfg.grid->start)
           << " grid_stop=" << num(cfg.grid->stop) << " grid_steps=" << cfg.grid->steps;
    os << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

std::string svg_path(const std::string& csv_path)
{
    if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
        return csv_path.substr(0, csv_path.size() - 4) + ".svg";
    return csv_path + ".svg";
}

std::string partition_str(const Partition& part)
{
    std::ostringstream os;
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
        if (b) os << "|";
        for (std::size_t i = 0; i < part.blocks[b].size(); ++i)
            os << (i ? " " : "") << part.blocks[b][i];
    }
    return os.str();
}

int run_theta(const ExperimentConfig& cfg)
{
    validate_params(cfg.params);
    std::ostringstream csv;
    csv << header_echo(cfg) << "axis_value,theta,std_err\n";
    PlotSeries series{"theta", {}};
    const std::vector<double> values = cfg.grid ? cfg.grid->values() : std::vector<double>{-1.0};
    for (double v : values) {
        Params params = cfg.params;
        if (cfg.grid) params.p[static_cast<std::size_t>(cfg.grid->axis - 1)] = v;
        const ThetaEstimate est =
            estimate_theta(params, cfg.trials, cfg.limits, cfg.master_seed, cfg.workers);
        csv << num(v) << "," << num(est.point_estimate) << "," << num(est.std_error) << "\n";
        series.points.emplace_back(v, est.point_estimate);
    }
    write_file(cfg.output_path, csv.str());
    if (cfg.grid)
        write_file(svg_path(cfg.output_path),
                   render_svg_plot("survived fraction", "p_" + std::to_string(cfg.grid->axis),
                                   "theta estimate", {series}));
    return 0;
}

int run_pmf(const ExperimentConfig& cfg)
{
    validate_params(cfg.params);
    const SizePmf pmf =
        cluster_size_pmf(cfg.params, cfg.trials, cfg.cutoff, cfg.master_seed, cfg.workers);
    std::ostringstream csv;
    csv << header_echo(cfg) << "# cutoff=" << cfg.cutoff << "\nsize,count,mass\n";
    for (std::size_t i = 0; i + 1 < pmf.counts.size(); ++i)
        csv << (i + 1) << "," << pmf.counts[i] << "," << num(pmf.mass[i]) << "\n";
    csv << "overflow," << pmf.counts.back() << "," << num(pmf.mass.back()) << "\n";
    write_file(cfg.output_path, csv.str());
    return 0;
}

int run_coupling_verify(const ExperimentConfig& cfg, std::ostream* log)
{
    validate_params(cfg.params);
    std::int64_t violations = 0;
    std::int64_t infected_total = 0;
    std::int64_t infected_max = 0;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        const Seed seed{cfg.master_seed, static_cast<std::uint64_t>(t)};
        const CouplingTrace trace = run_coupled_exploration(cfg.params, seed, cfg.limits);
        const VerificationReport rep = verify_trace(trace, cfg.params, seed);
        infected_total += rep.infected_count;
        infected_max = std::max(infected_max, rep.infected_count);
        if (!rep.ok()) {
            violations += static_cast<std::int64_t>(rep.violations.size());
            if (log)
                for (const auto& v : rep.violations) *log << "trial " << t << ": " << v << "\n";
        }
    }
    std::ostringstream csv;
    csv << header_echo(cfg) << "trials,violations,infected_mean,infected_max\n"
        << cfg.trials << "," << violations << ","
        << num(static_cast<double>(infected_total) / static_cast<double>(cfg.trials)) << ","
        << infected_max << "\n";
    write_file(cfg.output_path, csv.str());
    if (log) *log << "violations: " << violations << "\n";
    return violations == 0 ? 0 : 1;
}

int run_coupling_law(const ExperimentConfig& cfg, std::ostream* log)
{
    validate_params(cfg.params);
    if (cfg.params.d < 2) throw Error("coupling-law: needs at least 2 parameters");
    // Coupled infected-size law on Z^d vs the direct cluster law on Z^{d-1}
    // with the last two directions merged; independent master seeds.
    const SizePmf coupled =
        coupled_size_pmf(cfg.params, cfg.trials, cfg.cutoff, cfg.master_seed, cfg.workers);
    Params reduced;
    reduced.d = cfg.params.d - 1;
    reduced.p.assign(cfg.params.p.begin(), cfg.params.p.end() - 2);
    reduced.p.push_back(merged_param(cfg.params.p[static_cast<std::size_t>(cfg.params.d - 2)],
                                     cfg.params.p[static_cast<std::size_t>(cfg.params.d - 1)]));
    const SizePmf direct =
        cluster_size_pmf(reduced, cfg.trials, cfg.cutoff, cfg.master_seed + 1, cfg.workers);
    const ChiSquareResult chi = two_sample_chi_square(coupled.counts, direct.counts);

    std::ostringstream csv;
    csv << header_echo(cfg) << "# cutoff=" << cfg.cutoff << " reduced_p=";
    for (std::size_t i = 0; i < reduced.p.size(); ++i) csv << (i ? "," : "") << num(reduced.p[i]);
    csv << "\nstatistic,dof,p_value\n"
        << num(chi.statistic) << "," << chi.dof << "," << num(chi.p_value) << "\n";
    write_file(cfg.output_path, csv.str());
    if (log) *log << "two-sample chi-square p-value: " << chi.p_value << "\n";
    return 0;
}

int run_crossing(const ExperimentConfig& cfg)
{
    validate_params(cfg.params);
    if (cfg.params.d != 2) throw Error("crossing: requires d == 2");
    std::ostringstream csv;
    csv << header_echo(cfg) << "p1,p2,L,trials,crossing_freq,std_err\n";
    std::vector<PlotSeries> series;
    const std::vector<double> values = cfg.grid ? cfg.grid->values() : std::vector<double>{-1.0};
    for (std::int64_t L : cfg.box_sizes) {
        PlotSeries s{"L=" + std::to_string(L), {}};
        for (double v : values) {
            Params params = cfg.params;
            if (cfg.grid) params.p[static_cast<std::size_t>(cfg.grid->axis - 1)] = v;
            const double f =
                crossing_probability(params, L, cfg.trials, cfg.master_seed, cfg.workers);
            const double se = std::sqrt(f * (1.0 - f) / static_cast<double>(cfg.trials));
            csv << num(params.p[0]) << "," << num(params.p[1]) << "," << L << "," << cfg.trials
                << "," << num(f) << "," << num(se) << "\n";
            s.points.emplace_back(v, f);
        }
        series.push_back(std::move(s));
    }
    write_file(cfg.output_path, csv.str());
    if (cfg.grid)
        write_file(svg_path(cfg.output_path),
                   render_svg_plot("left-right crossing frequency",
                                   "p_" + std::to_string(cfg.grid->axis), "crossing frequency",
                                   series));
    return 0;
}

int run_pc_bisect(const ExperimentConfig& cfg, std::ostream* log)
{
    if (cfg.params.d < 2) throw Error("pc-bisect: needs d >= 2");
    std::ostringstream csv;
    csv << header_echo(cfg) << "d,L,trials,tolerance,pc_estimate,pc_expansion\n";
    for (std::int64_t L : cfg.box_sizes) {
        const double pc = estimate_pc_bisection(cfg.params.d, L, cfg.trials, cfg.tolerance,
                                                cfg.master_seed, cfg.workers);
        csv << cfg.params.d << "," << L << "," << cfg.trials << "," << num(cfg.tolerance) << ","
            << num(pc) << "," << num(pc_expansion(cfg.params.d)) << "\n";
        if (log) *log << "d=" << cfg.params.d << " L=" << L << " pc~" << pc << "\n";
    }
    write_file(cfg.output_path, csv.str());
    return 0;
}

int run_verdict(const ExperimentConfig& cfg)
{
    validate_params(cfg.params);
    const ConstantsBundle bundle = derive_constants(cfg.c1);
    const Verdict v1 = check_theorem1(cfg.params, bundle);
    const Verdict v2 = theorem2_partition(cfg.params);

    std::ostringstream csv;
    csv << header_echo(cfg) << "# c1=" << num(cfg.c1) << " C=" << num(bundle.c) << "\n";
    if (cfg.params.d == 2) {
        const double sum = cfg.params.p[0] + cfg.params.p[1];
        csv << "# note: d=2 percolates iff p1+p2 > 1 (here p1+p2 = " << num(sum) << ")\n";
    }
    csv << "check,verdict,delta,blocks,block_qsums,explanation\n";
    for (const auto& [name, v] : {std::pair<const char*, const Verdict&>{"theorem1", v1},
                                  std::pair<const char*, const Verdict&>{"theorem2", v2}}) {
        csv << name << "," << to_string(v.applicable_theorem) << "," << num(v.delta) << ",";
        if (v.witness) {
            csv << csv_quote(partition_str(*v.witness)) << ",";
            std::ostringstream qs;
            for (std::size_t i = 0; i < v.witness->block_qsums.size(); ++i)
                qs << (i ? " " : "") << num(v.witness->block_qsums[i]);
            csv << csv_quote(qs.str());
        } else {
            csv << ",";
        }
        csv << "," << csv_quote(v.explanation) << "\n";
    }
    write_file(cfg.output_path, csv.str());
    return 0;
}

int run_constants(const ExperimentConfig& cfg)
{
    const ConstantsBundle b = derive_constants(cfg.c1);
    const double residual = b.c * q_ratio(b.c * b.lambda * b.lambda) - b.c3;
    std::ostringstream csv;
    csv << header_echo(cfg)
        << "c1,lambda,c2,c3,c,residual,delta,min_feasible_d\n";
    // Smallest d at which the homogeneous generator p_i = (1/2+delta)/d can
    // satisfy both conditions, for a spread of deltas.
    for (double delta : {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) {
        const double min_d = std::ceil((0.5 + delta) / (b.c * delta * delta));
        csv << num(b.c1) << "," << num(b.lambda) << "," << num(b.c2) << "," << num(b.c3) << ","
            << num(b.c) << "," << num(residual) << "," << num(delta) << "," << num(min_d) << "\n";
    }
    write_file(cfg.output_path, csv.str());
    return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream* log)
{
    if (cfg.experiment == "theta") return run_theta(cfg);
    if (cfg.experiment == "pmf") return run_pmf(cfg);
    if (cfg.experiment == "coupling-verify") return run_coupling_verify(cfg, log);
    if (cfg.experiment == "coupling-law") return run_coupling_law(cfg, log);
    if (cfg.experiment == "crossing") return run_crossing(cfg);
    if (cfg.experiment == "pc-bisect") return run_pc_bisect(cfg, log);
    if (cfg.experiment == "verdict") return run_verdict(cfg);
    if (cfg.experiment == "constants") return run_constants(cfg);
    throw Error("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace percaniso

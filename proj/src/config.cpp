#include "percaniso/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace percaniso {

namespace {

const std::array<const char*, 8> kExperiments = {
    "theta",    "pmf",       "coupling-verify", "coupling-law",
    "crossing", "pc-bisect", "verdict",         "constants",
};

const std::array<const char*, 16> kKeys = {
    "experiment", "d",          "p",         "trials",    "radius",    "max_vertices",
    "master_seed", "cutoff",    "L",         "tolerance", "c1",        "output",
    "workers",    "grid_axis",  "grid_start", "grid_stop",
};
// grid_steps handled separately so kKeys stays a neat block
constexpr const char* kGridSteps = "grid_steps";

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggest_key(const std::string& key)
{
    std::string best;
    std::size_t best_dist = 3;  // suggest only near misses
    for (const char* k : kKeys) {
        const std::size_t dist = edit_distance(key, k);
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    if (edit_distance(key, kGridSteps) < best_dist) best = kGridSteps;
    return best;
}

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw Error("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(int line, const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(line, key + ": not a number: '" + value + "'");
    }
}

std::int64_t parse_int(int line, const std::string& key, const std::string& value)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, key + ": not an integer: '" + value + "'");
    return v;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> GridSpec::values() const
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < steps; ++i)
        out.push_back(start + (stop - start) * static_cast<double>(i)
                                  / static_cast<double>(steps - 1));
    return out;
}

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig cfg;
    cfg.box_sizes.clear();
    bool have_experiment = false;
    bool have_d = false;
    int grid_axis = 0, grid_steps = 0;
    double grid_start = 0.0, grid_stop = 0.0;
    bool have_grid_axis = false, have_grid_range = false, have_grid_steps = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(lineno, key + ": empty value");

        if (key == "experiment") {
            if (std::find_if(kExperiments.begin(), kExperiments.end(),
                             [&](const char* e) { return value == e; })
                == kExperiments.end())
                fail(lineno, "unknown experiment '" + value + "'");
            cfg.experiment = value;
            have_experiment = true;
        } else if (key == "d") {
            cfg.params.d = static_cast<int>(parse_int(lineno, key, value));
            have_d = true;
        } else if (key == "p") {
            const double p = parse_double(lineno, key, value);
            if (!(p >= 0.0) || p >= 1.0) fail(lineno, "p: value " + value + " outside [0,1)");
            cfg.params.p.push_back(p);
        } else if (key == "trials") {
            cfg.trials = parse_int(lineno, key, value);
            if (cfg.trials < 1) fail(lineno, "trials must be >= 1");
        } else if (key == "radius") {
            cfg.limits.radius = parse_int(lineno, key, value);
            if (cfg.limits.radius < 1) fail(lineno, "radius must be >= 1");
        } else if (key == "max_vertices") {
            cfg.limits.max_vertices = parse_int(lineno, key, value);
            if (cfg.limits.max_vertices < 1) fail(lineno, "max_vertices must be >= 1");
        } else if (key == "master_seed") {
            cfg.master_seed = static_cast<std::uint64_t>(parse_int(lineno, key, value));
        } else if (key == "cutoff") {
            cfg.cutoff = parse_int(lineno, key, value);
            if (cfg.cutoff < 1) fail(lineno, "cutoff must be >= 1");
        } else if (key == "L") {
            const std::int64_t L = parse_int(lineno, key, value);
            if (L < 2) fail(lineno, "L must be >= 2");
            cfg.box_sizes.push_back(L);
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(lineno, key, value);
            if (!(cfg.tolerance > 0.0)) fail(lineno, "tolerance must be positive");
        } else if (key == "c1") {
            cfg.c1 = parse_double(lineno, key, value);
            if (!(cfg.c1 > 0.0)) fail(lineno, "c1 must be positive");
        } else if (key == "output") {
            cfg.output_path = value;
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_int(lineno, key, value));
        } else if (key == "grid_axis") {
            grid_axis = static_cast<int>(parse_int(lineno, key, value));
            have_grid_axis = true;
        } else if (key == "grid_start" || key == "grid_stop") {
            const double v = parse_double(lineno, key, value);
            if (!(v >= 0.0) || v >= 1.0) fail(lineno, key + ": value outside [0,1)");
            (key == "grid_start" ? grid_start : grid_stop) = v;
            have_grid_range = true;
        } else if (key == kGridSteps) {
            grid_steps = static_cast<int>(parse_int(lineno, key, value));
            if (grid_steps < 1) fail(lineno, "grid_steps must be >= 1");
            have_grid_steps = true;
        } else {
            const std::string suggestion = suggest_key(key);
            fail(lineno, "unknown key '" + key + "'"
                             + (suggestion.empty() ? "" : " (did you mean '" + suggestion + "'?)"));
        }
    }

    if (!have_experiment) throw Error("config: missing 'experiment' key");
    if (have_grid_axis || have_grid_range || have_grid_steps) {
        if (!(have_grid_axis && have_grid_steps))
            throw Error("config: grid needs grid_axis, grid_start, grid_stop and grid_steps");
        cfg.grid = GridSpec{grid_axis, grid_start, grid_stop, grid_steps};
    }
    if (have_d || !cfg.params.p.empty()) {
        if (!have_d) cfg.params.d = static_cast<int>(cfg.params.p.size());
        validate_params(cfg.params);
        if (cfg.grid && (cfg.grid->axis < 1 || cfg.grid->axis > cfg.params.d))
            throw Error("config: grid_axis outside [1, d]");
    }
    if (cfg.box_sizes.empty()) cfg.box_sizes.push_back(64);
    if (cfg.output_path.empty()) cfg.output_path = cfg.experiment + ".csv";
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace percaniso

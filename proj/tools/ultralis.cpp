#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ultralis/checks.hpp"
#include "ultralis/exact.hpp"
#include "ultralis/harness.hpp"
#include "ultralis/parallel.hpp"

using namespace ultralis;

namespace {

struct SweepOptions {
    std::string model = "ultrafat";
    double alpha = 2.0;
    std::string n_grid = "2^10..2^16";
    std::size_t reps = 100;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out;
    std::string format = "csv";
    std::string config;
};

// Values from a `key = value` file fill every option not given on the
// command line.
void apply_config(CLI::App& cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    for (const auto& [key, value] : read_key_values(in)) {
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (opt == nullptr) throw std::invalid_argument("unknown config key: " + key);
        if (opt->count() == 0) {
            opt->clear();
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

// Writes to --out if given, else stdout.
void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    file << text;
    if (!file) throw std::runtime_error("write failed: " + out);
}

void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

int run_simulate(CLI::App& cmd, SweepOptions& o) {
    apply_config(cmd, o.config);
    ExperimentConfig cfg;
    cfg.model = Model::parse(o.model, o.alpha);
    cfg.n_grid = parse_n_grid(o.n_grid);
    cfg.replicas = o.reps;
    cfg.seed = o.seed;
    cfg.out = o.out;
    cfg.workers = o.workers == 0 ? default_workers() : o.workers;
    const SweepResult result = run_sweep(cfg);
    if (o.format == "json") {
        emit(o.out, sweep_json(result.rows) + "\n");
    } else {
        std::ostringstream csv;
        write_sweep_csv(csv, result.rows);
        emit(o.out, csv.str());
    }
    return 0;
}

int run_fit(const std::string& input, const std::string& statistic, std::size_t n_min, const std::string& out) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    const auto rows = read_sweep_csv(in);
    const ExponentFit fit = fit_exponent(rows, statistic == "median" ? Statistic::Median : Statistic::Mean, n_min);
    emit(out, fit_json(fit) + "\n");
    return 0;
}

int run_exact(std::size_t max_n, bool greedy, const std::string& format, const std::string& out) {
    if (max_n < 2 || max_n > 9) throw std::invalid_argument("--max-n must be in 2..9");
    std::ostringstream text;
    nlohmann::ordered_json json = nlohmann::ordered_json::array();
    std::ostringstream means;
    means << "n,mean\n";
    text << "n,value,probability\n";
    for (std::size_t n = 2; n <= max_n; ++n) {
        const ExactDistribution d = greedy ? exact_greedy_distribution(n) : exact_lis_distribution(n);
        nlohmann::ordered_json pmf = nlohmann::ordered_json::object();
        for (std::size_t v = 0; v < d.pmf.size(); ++v) {
            if (d.pmf[v] == 0) continue;
            text << n << ',' << v << ',' << d.pmf[v].str() << '\n';
            pmf[std::to_string(v)] = d.pmf[v].str();
        }
        means << n << ',' << d.mean().str() << '\n';
        json.push_back({{"n", n}, {"pmf", pmf}, {"mean", d.mean().str()}, {"mean_decimal", to_double(d.mean())}});
    }
    if (format == "json") {
        emit(out, json.dump(2) + "\n");
    } else {
        emit(out, text.str() + "\n" + means.str());
    }
    return 0;
}

int run_greedy_dp(std::size_t n_max, const std::string& grid, std::size_t fit_from, const std::string& format,
                  const std::string& out) {
    const std::vector<double> z = greedy_mean_dp(n_max);
    std::vector<std::size_t> points;
    if (grid.empty()) {
        for (std::size_t n = 1; n <= n_max; n *= 2) points.push_back(n);
    } else {
        points = parse_n_grid(grid);
    }
    std::vector<std::pair<double, double>> fit_points;
    std::ostringstream csv;
    csv << std::setprecision(17) << "n,z\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t n : points) {
        if (n < 1 || n > n_max) throw std::invalid_argument("grid entry outside 1..n-max: " + std::to_string(n));
        csv << n << ',' << z[n] << '\n';
        rows.push_back({n, z[n]});
        if (n >= fit_from) fit_points.emplace_back(static_cast<double>(n), z[n]);
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["z"] = rows;
        if (fit_points.size() >= 4) j["fit"] = nlohmann::ordered_json::parse(fit_json(fit_power_law(fit_points)));
        emit(out, j.dump(2) + "\n");
    } else {
        emit(out, csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LIS of heavy-tailed random walks: simulation, exact laws and exponent bounds"};
    app.require_subcommand(1);

    std::string out;

    auto* constants = app.add_subcommand("constants", "Solve for beta0 and beta1 (JSON)");
    constants->add_option("--out", out, "Output file (default stdout)");

    SweepOptions sweep;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo sweep over an n grid");
    simulate->add_option("--model", sweep.model, "ultrafat | stable | gaussian")
        ->check(CLI::IsMember({"ultrafat", "stable", "gaussian"}));
    simulate->add_option("--alpha", sweep.alpha, "Stability index for --model stable");
    simulate->add_option("--n-grid", sweep.n_grid, "e.g. 1024,4096 or 2^10..2^20");
    simulate->add_option("--reps", sweep.reps, "Replicas per n");
    simulate->add_option("--seed", sweep.seed, "Master seed");
    simulate->add_option("--workers", sweep.workers, "Worker threads (0 = hardware)");
    simulate->add_option("--out", sweep.out, "Output file (default stdout)");
    add_format(simulate, sweep.format);
    simulate->add_option("--config", sweep.config, "key = value file; flags take precedence");

    std::string fit_input, statistic = "mean";
    std::size_t n_min = 0;
    auto* fit = app.add_subcommand("fit", "Fit a power law to a sweep CSV");
    fit->add_option("input", fit_input, "Sweep CSV")->required();
    fit->add_option("--statistic", statistic, "mean | median")->check(CLI::IsMember({"mean", "median"}));
    fit->add_option("--n-min", n_min, "Ignore rows with smaller n");
    fit->add_option("--out", out, "Output file (default stdout)");

    std::size_t max_n = 8;
    bool greedy = false;
    std::string format = "csv";
    auto* exact = app.add_subcommand("exact", "Exact laws of L(n) for small n");
    exact->add_option("--max-n", max_n, "Largest n (2..9)");
    exact->add_flag("--greedy", greedy, "Law of the greedy length instead");
    add_format(exact, format);
    exact->add_option("--out", out, "Output file (default stdout)");

    std::size_t n_max = std::size_t{1} << 20;
    std::size_t fit_from = std::size_t{1} << 14;
    std::string grid;
    auto* dp = app.add_subcommand("greedy-dp", "Expected greedy length recursion");
    dp->add_option("--n-max", n_max, "Iterate up to this n");
    dp->add_option("--n-grid", grid, "Report these n (default: powers of two)");
    dp->add_option("--fit-from", fit_from, "Smallest n in the JSON slope fit");
    add_format(dp, format);
    dp->add_option("--out", out, "Output file (default stdout)");

    std::string suite;
    CheckParams params;
    unsigned check_workers = 0;
    auto* check = app.add_subcommand("check", "Run a property suite; exit 0 iff it passes");
    check->add_option("--suite", suite, "nbu | recursion | subadd | domination | constants")
        ->required()
        ->check(CLI::IsMember({"nbu", "recursion", "subadd", "domination", "constants"}));
    check->add_option("--n", params.n, "Walk length");
    check->add_option("--t", params.t, "Time for the NBU suite");
    check->add_option("--reps", params.reps, "Sampled walks");
    check->add_option("--a", params.a, "NBU level a");
    check->add_option("--b", params.b, "NBU level b");
    check->add_option("--seed", params.seed, "Master seed");
    check->add_option("--workers", check_workers, "Worker threads (0 = hardware)");
    check->add_option("--out", out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) {
            emit(out, constants_report().dump(2) + "\n");
            return 0;
        }
        if (*simulate) return run_simulate(*simulate, sweep);
        if (*fit) return run_fit(fit_input, statistic, n_min, out);
        if (*exact) return run_exact(max_n, greedy, format, out);
        if (*dp) return run_greedy_dp(n_max, grid, fit_from, format, out);
        if (*check) {
            params.workers = check_workers == 0 ? default_workers() : check_workers;
            const auto report = check_suite(suite, params);
            emit(out, report.dump(2) + "\n");
            return report["passed"].get<bool>() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

#include "ultralis/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "ultralis/lis.hpp"
#include "ultralis/parallel.hpp"

namespace ultralis {

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
    if (n_grid.front() < 1) throw std::invalid_argument("n grid entries must be >= 1");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
    }
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (model.kind == ModelKind::Stable) Model::stable(model.alpha);
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_size(std::string_view text) {
    const std::string t = trim(text);
    std::size_t value = 0;
    if (t.starts_with("2^")) {
        unsigned exponent = 0;
        auto r = std::from_chars(t.data() + 2, t.data() + t.size(), exponent);
        if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || exponent > 40) {
            throw std::invalid_argument("bad grid entry: " + t);
        }
        return std::size_t{1} << exponent;
    }
    auto r = std::from_chars(t.data(), t.data() + t.size(), value);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size()) throw std::invalid_argument("bad grid entry: " + t);
    return value;
}

}  // namespace

std::vector<std::size_t> parse_n_grid(const std::string& text) {
    std::vector<std::size_t> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            grid.push_back(parse_size(item));
            continue;
        }
        const std::size_t lo = parse_size(item.substr(0, dots));
        const std::size_t hi = parse_size(item.substr(dots + 2));
        if (!std::has_single_bit(lo) || !std::has_single_bit(hi) || lo > hi) {
            throw std::invalid_argument("dyadic range needs powers of two lo <= hi: " + item);
        }
        for (std::size_t n = lo; n <= hi; n *= 2) grid.push_back(n);
    }
    return grid;
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        out[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
    }
    return out;
}

std::uint32_t simulate_replica(const Model& model, std::size_t n, std::uint64_t seed, std::size_t replica,
                               std::uint32_t* greedy) {
    const std::uint64_t key = replica_seed(seed, n, replica);
    if (model.kind == ModelKind::UltraFat) {
        const WalkSample w = sample_ultrafat(n, key);
        if (greedy) *greedy = static_cast<std::uint32_t>(greedy_length(w, n));
        return static_cast<std::uint32_t>(lis_length(w, 1, n));
    }
    const RealWalkSample w = sample_real(model, n, key);
    return static_cast<std::uint32_t>(lis_length(w, 1, n));
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t per_n = cfg.replicas;
    const std::size_t tasks = cfg.n_grid.size() * per_n;
    const bool ultrafat = cfg.model.kind == ModelKind::UltraFat;
    std::vector<std::uint32_t> lis(tasks, 0);
    std::vector<std::uint32_t> greedy(ultrafat ? tasks : 0, 0);
    // Largest n first so the long tasks do not straggle at the end.
    parallel_for(tasks, cfg.workers, [&](std::size_t task) {
        const std::size_t slot = tasks - 1 - task;
        const std::size_t n = cfg.n_grid[slot / per_n];
        const std::size_t replica = slot % per_n;
        lis[slot] = simulate_replica(cfg.model, n, cfg.seed, replica, ultrafat ? &greedy[slot] : nullptr);
    });

    SweepResult result;
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        std::vector<std::uint32_t> sample(lis.begin() + i * per_n, lis.begin() + (i + 1) * per_n);
        SweepRow row;
        row.model = cfg.model;
        row.n = cfg.n_grid[i];
        row.replicas = per_n;
        row.seed = cfg.seed;
        double sum = 0.0;
        for (std::uint32_t v : sample) sum += v;
        row.mean_L = sum / static_cast<double>(per_n);
        double ss = 0.0;
        for (std::uint32_t v : sample) ss += (v - row.mean_L) * (v - row.mean_L);
        row.var_L = per_n > 1 ? ss / static_cast<double>(per_n - 1) : 0.0;
        std::vector<std::uint32_t> sorted = sample;
        std::sort(sorted.begin(), sorted.end());
        row.median_L = per_n % 2 == 1 ? sorted[per_n / 2]
                                      : 0.5 * (static_cast<double>(sorted[per_n / 2 - 1]) + sorted[per_n / 2]);
        if (ultrafat) {
            double g = 0.0;
            for (std::size_t r = 0; r < per_n; ++r) g += greedy[i * per_n + r];
            row.mean_greedy = g / static_cast<double>(per_n);
        }
        result.rows.push_back(row);
        result.lengths.push_back(std::move(sample));
    }
    return result;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "model,alpha,n,replicas,mean_L,median_L,var_L,mean_greedy,seed\n";
    for (const SweepRow& r : rows) {
        out << r.model.name() << ',' << (r.model.kind == ModelKind::UltraFat ? "" : format_double(r.model.alpha))
            << ',' << r.n << ',' << r.replicas << ',' << format_double(r.mean_L) << ','
            << format_double(r.median_L) << ',' << format_double(r.var_L) << ','
            << (r.mean_greedy ? format_double(*r.mean_greedy) : "") << ',' << r.seed << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "model,alpha,n,replicas,mean_L,median_L,var_L,mean_greedy,seed") {
        throw std::invalid_argument("unexpected sweep CSV header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
        if (f.size() != 9) throw std::invalid_argument("sweep CSV row needs 9 fields: " + line);
        SweepRow r;
        r.model = Model::parse(f[0], f[1].empty() ? 0.0 : std::stod(f[1]));
        r.n = std::stoull(f[2]);
        r.replicas = std::stoull(f[3]);
        r.mean_L = std::stod(f[4]);
        r.median_L = std::stod(f[5]);
        r.var_L = std::stod(f[6]);
        if (!f[7].empty()) r.mean_greedy = std::stod(f[7]);
        r.seed = std::stoull(f[8]);
        rows.push_back(r);
    }
    return rows;
}

std::string sweep_json(std::span<const SweepRow> rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const SweepRow& r : rows) {
        nlohmann::ordered_json row;
        row["model"] = r.model.name();
        if (r.model.kind == ModelKind::UltraFat) {
            row["alpha"] = nullptr;
        } else {
            row["alpha"] = r.model.alpha;
        }
        row["n"] = r.n;
        row["replicas"] = r.replicas;
        row["mean_L"] = r.mean_L;
        row["median_L"] = r.median_L;
        row["var_L"] = r.var_L;
        if (r.mean_greedy) {
            row["mean_greedy"] = *r.mean_greedy;
        } else {
            row["mean_greedy"] = nullptr;
        }
        row["seed"] = r.seed;
        out.push_back(row);
    }
    return out.dump(2);
}

ExponentFit fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4) throw std::invalid_argument("exponent fit needs at least 4 grid points");
    const double k = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("exponent fit needs positive values");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / k;
    const double my = sy / k;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("exponent fit needs distinct n");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (const auto& [x, y] : points) {
        const double e = std::log(y) - (fit.intercept + fit.slope * std::log(x));
        rss += e * e;
    }
    fit.stderr_ = std::sqrt(rss / (k - 2.0) / sxx);
    const boost::math::students_t t(k - 2.0);
    const double half = boost::math::quantile(t, 0.975) * fit.stderr_;
    fit.ci_lo = fit.slope - half;
    fit.ci_hi = fit.slope + half;
    fit.grid.assign(points.begin(), points.end());
    return fit;
}

ExponentFit fit_exponent(std::span<const SweepRow> rows, Statistic statistic, std::size_t n_min) {
    std::vector<std::pair<double, double>> points;
    for (const SweepRow& r : rows) {
        if (r.n < n_min) continue;
        points.emplace_back(static_cast<double>(r.n), statistic == Statistic::Mean ? r.mean_L : r.median_L);
    }
    return fit_power_law(points);
}

std::string fit_json(const ExponentFit& fit) {
    nlohmann::ordered_json out;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["stderr"] = fit.stderr_;
    out["ci95"] = {fit.ci_lo, fit.ci_hi};
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const auto& [n, s] : fit.grid) grid.push_back({n, s});
    out["grid"] = grid;
    return out.dump(2);
}

}  // namespace ultralis

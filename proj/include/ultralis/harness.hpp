#pragma once

// Experiment orchestration: reproducible parallel sweeps, exponent fits and
// result persistence.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultralis/walk.hpp"

namespace ultralis {

struct ExperimentConfig {
    Model model = Model::ultrafat();
    std::vector<std::size_t> n_grid;
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    std::string out;
    unsigned workers = 1;

    /// Throws std::invalid_argument unless the grid is nonempty and strictly
    /// increasing, n >= 1 and replicas >= 1.
    void validate() const;
};

/// "1024,4096", "2^10,2^12" or the dyadic range "2^10..2^20".
std::vector<std::size_t> parse_n_grid(const std::string& text);

/// `key = value` lines; blank lines and lines starting with '#' ignored.
std::map<std::string, std::string> read_key_values(std::istream& in);

struct SweepRow {
    Model model;
    std::size_t n = 0;
    std::size_t replicas = 0;
    double mean_L = 0.0;
    double median_L = 0.0;
    double var_L = 0.0;
    std::optional<double> mean_greedy;  // Ultra-fat only
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// lengths[i][r] = L(n_i) of replica r, kept for distributional checks.
    std::vector<std::vector<std::uint32_t>> lengths;
};

/// L(n) of one replica, keyed by (seed, n, replica).
std::uint32_t simulate_replica(const Model& model, std::size_t n, std::uint64_t seed, std::size_t replica,
                               std::uint32_t* greedy = nullptr);

SweepResult run_sweep(const ExperimentConfig& cfg);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::string sweep_json(std::span<const SweepRow> rows);

enum class Statistic { Mean, Median };

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_ = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::vector<std::pair<double, double>> grid;  // (n, statistic)
};

/// Least squares of log(y) on log(x); needs at least 4 points.
ExponentFit fit_power_law(std::span<const std::pair<double, double>> points);
ExponentFit fit_exponent(std::span<const SweepRow> rows, Statistic statistic, std::size_t n_min = 0);

std::string fit_json(const ExponentFit& fit);

}  // namespace ultralis

#include "ultralis/checks.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ultralis/exact.hpp"
#include "ultralis/harness.hpp"
#include "ultralis/lis.hpp"
#include "ultralis/numerics.hpp"
#include "ultralis/parallel.hpp"

namespace ultralis {

namespace {

using json = nlohmann::ordered_json;

json check(const std::string& name, bool passed, json detail = json::object()) {
    json c;
    c["name"] = name;
    c["passed"] = passed;
    c["detail"] = std::move(detail);
    return c;
}

json finish(const std::string& suite, json checks) {
    bool all = true;
    for (const auto& c : checks) all = all && c["passed"].get<bool>();
    json report;
    report["suite"] = suite;
    report["passed"] = all;
    report["checks"] = std::move(checks);
    return report;
}

json root_json(const RootResult& r) {
    json j;
    j["root"] = r.root;
    j["residual"] = r.residual;
    j["bracket"] = {r.lo, r.hi};
    j["iterations"] = r.iterations;
    return j;
}

json constants_suite() {
    const RootResult b0 = solve_beta0(1e-9);
    const RootResult b0_dual = solve_c_beta_unit(1e-9);
    const RootResult b1 = solve_beta1(1e-8, 1e-10);
    json checks = json::array();
    checks.push_back(check("beta0_matches_reference", std::abs(b0.root - kBeta0Reference) < 1e-6,
                           {{"beta0", b0.root}, {"reference", kBeta0Reference},
                            {"abs_diff", std::abs(b0.root - kBeta0Reference)}, {"tolerance", 1e-6}}));
    checks.push_back(check("beta1_matches_reference", std::abs(b1.root - kBeta1Reference) < 1e-5,
                           {{"beta1", b1.root}, {"reference", kBeta1Reference},
                            {"abs_diff", std::abs(b1.root - kBeta1Reference)}, {"tolerance", 1e-5}}));
    checks.push_back(check("beta0_dual_formulation", std::abs(b0.root - b0_dual.root) < 1e-9,
                           {{"direct", b0.root}, {"c_beta_unit", b0_dual.root}}));
    checks.push_back(check("c_beta_at_beta0_is_one", std::abs(c_beta(b0.root) - 1.0) < 1e-9,
                           {{"c_beta0", c_beta(b0.root)}}));
    checks.push_back(check("beta0_residual", std::abs(b0.residual) < 1e-9, root_json(b0)));
    checks.push_back(check("beta1_residual", std::abs(b1.residual) < 1e-8, root_json(b1)));
    return finish("constants", std::move(checks));
}

json recursion_suite(const CheckParams& p) {
    if (p.n < 2) throw std::invalid_argument("recursion suite needs n >= 2");
    std::vector<std::uint8_t> ok(p.reps, 0);
    parallel_for(p.reps, p.workers, [&](std::size_t r) {
        const WalkSample w = sample_ultrafat(p.n, replica_seed(p.seed, p.n, r));
        ok[r] = verify_split_recursion(w, p.n).holds;
    });
    std::size_t violations = 0;
    for (auto v : ok) violations += v == 0;
    json checks = json::array();
    checks.push_back(check("split_recursion_pointwise", violations == 0,
                           {{"n", p.n}, {"walks", p.reps}, {"violations", violations}}));
    for (std::size_t n = 3; n <= 8; ++n) {
        const Rational exact = exact_lis_distribution(n).mean();
        const Rational rhs = lis_mean_recursion_rhs(n);
        checks.push_back(check("mean_identity_n" + std::to_string(n), exact == rhs,
                               {{"exact_mean", exact.str()}, {"recursion_rhs", rhs.str()}}));
    }
    return finish("recursion", std::move(checks));
}

json subadd_suite(const CheckParams& p) {
    if (p.n < 2) throw std::invalid_argument("subadd suite needs n >= 2");
    std::vector<std::size_t> sub(p.reps, 0), super(p.reps, 0);
    parallel_for(p.reps, p.workers, [&](std::size_t r) {
        const WalkSample w = sample_ultrafat(p.n, replica_seed(p.seed, p.n, r));
        sub[r] = count_subadditivity_violations(w, p.n);
        super[r] = count_superadditivity_violations(w, p.n);
    });
    std::size_t sub_total = 0, super_total = 0;
    for (std::size_t r = 0; r < p.reps; ++r) {
        sub_total += sub[r];
        super_total += super[r];
    }
    json checks = json::array();
    checks.push_back(check("subadditivity", sub_total == 0, {{"n", p.n}, {"walks", p.reps}, {"violations", sub_total}}));
    checks.push_back(
        check("superadditivity", super_total == 0, {{"n", p.n}, {"walks", p.reps}, {"violations", super_total}}));
    return finish("subadd", std::move(checks));
}

json nbu_suite(const CheckParams& p) {
    std::vector<std::uint32_t> lengths(p.reps, 0);
    parallel_for(p.reps, p.workers,
                 [&](std::size_t r) { lengths[r] = simulate_replica(Model::ultrafat(), p.t, p.seed, r); });
    const NbuSampleReport rep = empirical_nbu_check(lengths, p.a, p.b);
    json checks = json::array();
    checks.push_back(check("empirical_nbu", !rep.violation,
                           {{"t", p.t}, {"a", p.a}, {"b", p.b}, {"samples", p.reps}, {"difference", rep.difference},
                            {"stderr", rep.stderr_}, {"z", std::isfinite(rep.z) ? json(rep.z) : json("inf")}}));
    for (std::size_t n = 2; n <= 8; ++n) {
        checks.push_back(check("exact_nbu_n" + std::to_string(n), is_nbu(exact_lis_distribution(n).law())));
    }
    return finish("nbu", std::move(checks));
}

json domination_suite() {
    json checks = json::array();
    std::vector<DiscreteLaw> laws;
    for (std::size_t n = 2; n <= 8; ++n) laws.push_back(exact_lis_distribution(n).law());
    auto square = [](double x) { return x * x; };
    for (std::size_t i = 0; i < laws.size(); ++i) {
        const std::string tag = "_n" + std::to_string(i + 2);
        const DiscreteLaw& law = laws[i];
        const DominationReport tail = check_tail_domination(law);
        checks.push_back(check("tail_domination" + tag, tail.passed, {{"max_gap", tail.max_gap}}));
        const ConvexReport convex = check_convex_domination(law, square);
        checks.push_back(check("convex_domination_x2" + tag, convex.passed, {{"lhs", convex.lhs}, {"rhs", convex.rhs}}));
        bool quantile_ok = true;
        std::size_t quantiles = 0;
        for (std::size_t q = 1; q <= law.support_max() + 1; ++q) {
            const QuantileReport qr = check_quantile_bound(law, Rational(q));
            if (qr.status == CheckStatus::Skipped) continue;
            ++quantiles;
            quantile_ok = quantile_ok && qr.status == CheckStatus::Passed;
        }
        checks.push_back(check("quantile_bound" + tag, quantile_ok, {{"quantiles_checked", quantiles}}));
        bool min_ok = true;
        for (const DiscreteLaw& other : laws) min_ok = min_ok && check_min_bound(law, other).passed;
        checks.push_back(check("min_nbu_bound" + tag, min_ok));
    }
    const Rational one(1);
    const MinReport geo = check_min_bound(DiscreteLaw::geometric(one), DiscreteLaw::geometric(one));
    checks.push_back(check("geometric_min_equality", geo.expected_min == geo.bound,
                           {{"expected_min", geo.expected_min.str()}, {"bound", geo.bound.str()}}));
    return finish("domination", std::move(checks));
}

}  // namespace

nlohmann::ordered_json constants_report() {
    const RootResult b0 = solve_beta0(1e-9);
    const RootResult b1 = solve_beta1(1e-8, 1e-10);
    json out;
    out["beta0"] = b0.root;
    out["beta0_residual"] = b0.residual;
    out["beta1"] = b1.root;
    out["beta1_residual"] = b1.residual;
    out["c_beta0"] = c_beta(b0.root);
    out["c_beta0_residual"] = c_beta(b0.root) - 1.0;
    return out;
}

nlohmann::ordered_json check_suite(const std::string& name, const CheckParams& params) {
    if (name == "constants") return constants_suite();
    if (name == "recursion") return recursion_suite(params);
    if (name == "subadd") return subadd_suite(params);
    if (name == "nbu") return nbu_suite(params);
    if (name == "domination") return domination_suite();
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace ultralis

// sweep.cpp — sweep scheduling, validation runs and coefficient dumps

#include "mpcav/sweep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mpcav/dynamics.hpp"
#include "mpcav/lindblad.hpp"
#include "mpcav/rate_matrix.hpp"
#include "mpcav/version.hpp"

namespace mpcav {

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Eta: return "eta";
        case SweepAxis::Xi: return "xi";
        case SweepAxis::Nbar: return "nbar";
        case SweepAxis::KappaOverGamma: return "kappa_over_gamma";
    }
    return "unknown";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
    if (name == "eta") return SweepAxis::Eta;
    if (name == "xi") return SweepAxis::Xi;
    if (name == "nbar") return SweepAxis::Nbar;
    if (name == "kappa_over_gamma") return SweepAxis::KappaOverGamma;
    return std::nullopt;
}

std::vector<double> SweepSpec::linear_grid(double start, double stop, int count) {
    if (count < 1) throw std::invalid_argument("grid count must be positive");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        values.push_back(start);
        return values;
    }
    for (int i = 0; i < count; ++i)
        values.push_back(start + (stop - start) * i / (count - 1));
    return values;
}

namespace {

ModelParams with_axis_value(ModelParams params, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::Eta: params.eta = value; break;
        case SweepAxis::Xi: params.xi = value; break;
        case SweepAxis::Nbar: params.nbar = value; break;
        case SweepAxis::KappaOverGamma: params.kappa = value * params.gamma; break;
    }
    return params;
}

int resolve_truncation(const ModelParams& params, int N, const TruncationSpec& spec,
                       bool include_kappa_eta) {
    if (!spec.adaptive()) return spec.n_max;
    TruncationOptions opts;
    opts.include_kappa_eta = include_kappa_eta;
    return adaptive_truncation(params, N, spec.tolerance, opts);
}

SweepRow compute_point(const SweepSpec& spec, double value, int N) {
    SweepRow row;
    row.axis_value = value;
    row.N = N;
    row.resolved = with_axis_value(spec.fixed, spec.axis, value);
    try {
        require_valid(row.resolved);
        row.n_max_used =
            resolve_truncation(row.resolved, N, spec.truncation, spec.include_kappa_eta);
        RateMatrixOptions opts;
        opts.include_kappa_eta = spec.include_kappa_eta;
        const RateMatrix W = build_rate_matrix(row.resolved, N, row.n_max_used, opts);
        row.obs = observables_from(steady_state(W));
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
        row.obs = {};
        row.obs.valid = false;
    }
    return row;
}

// Tail-based cavity truncation for the full solver: the joint solve only has
// to resolve the quasi-thermal ladder to well below the agreement bands, not
// to the effective model's tolerance. Capped by the superoperator guard.
int full_solver_truncation(const ModelParams& params, const LiouvillianOptions& opts) {
    const DetailedBalanceN1 db = detailed_balance_coefficients(params);
    const double mean = std::max(db.mean_photon, 1e-3);
    const double ratio = mean / (1.0 + mean);
    int n = 8;
    double tail = std::pow(ratio, n + 1);
    while (tail * (n + 1) * (n + 1) > 1e-9 && n < 512) {
        ++n;
        tail *= ratio;
    }
    n += 4; // guard levels
    const int cap = static_cast<int>(std::sqrt(static_cast<double>(opts.max_superop_dim))) / 2 - 1;
    return std::min(n, cap);
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    if (spec.values.empty()) throw std::invalid_argument("sweep axis has no values");
    if (spec.N_list.empty()) throw std::invalid_argument("sweep needs at least one photon order");
    for (const int N : spec.N_list)
        if (N < 1) throw std::invalid_argument("photon orders must be at least 1");

    SweepResult result;
    result.spec = spec;
    const std::size_t n_orders = spec.N_list.size();
    const std::size_t total = spec.values.size() * n_orders;
    result.rows.resize(total);

    int worker_count = threads > 0 ? threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    worker_count = std::max(1, std::min<int>(worker_count, static_cast<int>(total)));

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (std::size_t i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
            const double value = spec.values[i / n_orders];
            const int N = spec.N_list[i % n_orders];
            result.rows[i] = compute_point(spec, value, N);
        }
    };

    if (worker_count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return result;
}

DistributionResult run_distribution(const ModelParams& params, int N,
                                    const TruncationSpec& truncation,
                                    bool include_kappa_eta) {
    require_valid(params);
    if (N < 1) throw std::invalid_argument("photon order N must be at least 1");

    DistributionResult result;
    result.params = params;
    result.N = N;
    result.n_max = resolve_truncation(params, N, truncation, include_kappa_eta);
    RateMatrixOptions opts;
    opts.include_kappa_eta = include_kappa_eta;
    const RateMatrix W = build_rate_matrix(params, N, result.n_max, opts);
    result.dist = steady_state(W);
    result.obs = observables_from(result.dist);
    return result;
}

ValidateResult run_validate(const ModelParams& params, int N,
                            const TruncationSpec& truncation, bool include_kappa_eta) {
    if (!params.omega || !params.Omega)
        throw std::invalid_argument("validate requires omega and Omega (--omega, --rabi)");
    require_valid(params);
    if (N < 1) throw std::invalid_argument("photon order N must be at least 1");

    ValidateResult result;
    result.params = params;
    result.N = N;
    result.mean_band = kValidateMeanBand;
    result.g2_band = kValidateG2Band;

    for (const auto& issue : validate(params).issues)
        result.warnings.push_back(issue.code + ": " + issue.message);

    result.n_max_effective = resolve_truncation(params, N, truncation, include_kappa_eta);
    RateMatrixOptions opts;
    opts.include_kappa_eta = include_kappa_eta;
    const RateMatrix W = build_rate_matrix(params, N, result.n_max_effective, opts);
    result.effective = observables_from(steady_state(W));

    const LiouvillianOptions liouville_opts;
    result.n_max_full = full_solver_truncation(params, liouville_opts);
    const LindbladModel model = build_lindblad_model(params, result.n_max_full);
    const Eigen::MatrixXcd L = build_liouvillian(model, liouville_opts);
    const FullSteadyState steady = full_steady_state(L);
    result.solver_unique = steady.unique;
    for (const auto& w : steady.warnings) result.warnings.push_back(w);
    result.full = reduced_cavity_observables(steady.rho);

    const double mean_ref = std::max(std::abs(result.effective.mean_n), 1e-300);
    result.mean_gap_rel = std::abs(result.full.mean_n - result.effective.mean_n) / mean_ref;
    if (result.full.g2 && result.effective.g2) {
        const double g2_ref = std::max(std::abs(*result.effective.g2), 1e-300);
        result.g2_gap_rel = std::abs(*result.full.g2 - *result.effective.g2) / g2_ref;
    }
    result.within_band = result.mean_gap_rel <= result.mean_band &&
                         (!result.g2_gap_rel || *result.g2_gap_rel <= result.g2_band);
    return result;
}

std::string dump_coeffs_json(const ModelParams& params, int N, int n_max,
                             bool include_kappa_eta) {
    if (N < 1) throw std::invalid_argument("photon order N must be at least 1");
    require_valid(params);

    RateMatrixOptions opts;
    opts.include_kappa_eta = include_kappa_eta;
    const RateMatrix W = build_rate_matrix(params, N, n_max, opts);

    nlohmann::ordered_json doc;
    doc["tool"] = "mpcav";
    doc["version"] = kVersion;
    doc["params"] = {{"gamma", params.gamma}, {"kappa", params.kappa},
                     {"nbar", params.nbar},   {"eta", params.eta},
                     {"xi", params.xi}};
    doc["order"] = N;
    doc["n_max"] = n_max;
    doc["include_kappa_eta"] = include_kappa_eta;

    auto contributions = nlohmann::ordered_json::array();
    for (const auto& c : W.contributions) {
        contributions.push_back({{"source", to_string(c.source)},
                                 {"k1", c.k1},
                                 {"k2", c.k2},
                                 {"left", {c.p1, c.q1}},
                                 {"right", {c.p2, c.q2}},
                                 {"eta_order", c.eta_order},
                                 {"jump", c.jump},
                                 {"coeff", c.coeff}});
    }
    doc["contributions"] = std::move(contributions);

    auto entries = nlohmann::ordered_json::array();
    for (int n = 0; n <= n_max; ++n) {
        for (int m = std::max(0, n - W.bandwidth);
             m <= std::min(n_max, n + W.bandwidth); ++m) {
            if (W.entries(n, m) == 0.0) continue;
            entries.push_back({{"n", n}, {"m", m}, {"value", W.entries(n, m)}});
        }
    }
    doc["band_entries"] = std::move(entries);
    doc["warnings"] = W.warnings;

    return doc.dump(2);
}

} // namespace mpcav

// sweep.hpp — parameter sweeps, distribution tables, full-vs-effective
// validation runs and generator coefficient dumps

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpcav/observables.hpp"
#include "mpcav/params.hpp"

namespace mpcav {

enum class SweepAxis { Eta, Xi, Nbar, KappaOverGamma };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(const std::string& name);

// Fixed truncation when n_max > 0, otherwise adaptive with `tolerance`.
struct TruncationSpec {
    int n_max = 0;
    double tolerance = 1e-8;

    bool adaptive() const { return n_max <= 0; }
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::Eta;
    std::vector<double> values; // explicit list, or fill via linear_grid()
    std::vector<int> N_list;
    ModelParams fixed;
    bool include_kappa_eta = false;
    TruncationSpec truncation;

    static std::vector<double> linear_grid(double start, double stop, int count);
};

struct SweepRow {
    double axis_value = 0.0;
    int N = 0;
    ModelParams resolved;
    int n_max_used = 0;
    ObservableSet obs;
    std::string status = "ok"; // per-point failures recorded here, sweep continues
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows; // deterministic (axis value, N) order
};

// Dispatches points to a bounded worker pool; rows come back in spec order
// regardless of completion order.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

struct DistributionResult {
    ModelParams params;
    int N = 0;
    int n_max = 0;
    PhotonDistribution dist;
    ObservableSet obs;
};

DistributionResult run_distribution(const ModelParams& params, int N,
                                    const TruncationSpec& truncation,
                                    bool include_kappa_eta = false);

struct ValidateResult {
    ModelParams params;
    int N = 0;
    int n_max_effective = 0;
    int n_max_full = 0;
    ObservableSet effective;
    ObservableSet full;
    double mean_gap_rel = 0.0;
    std::optional<double> g2_gap_rel;
    double mean_band = 0.0; // frozen agreement bands
    double g2_band = 0.0;
    bool within_band = false;
    bool solver_unique = true;
    std::vector<std::string> warnings;
};

// Frozen full-vs-effective agreement bands (calibrated once, regression
// values thereafter).
inline constexpr double kValidateMeanBand = 0.20;
inline constexpr double kValidateG2Band = 0.25;

ValidateResult run_validate(const ModelParams& params, int N,
                            const TruncationSpec& truncation,
                            bool include_kappa_eta = false);

// JSON audit of the generated band entries and the sandwich contributions
// that produced them. Deterministic key and array order.
std::string dump_coeffs_json(const ModelParams& params, int N, int n_max,
                             bool include_kappa_eta = false);

} // namespace mpcav

// params.hpp — physical parameters, derived quantities and regime validation

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace mpcav {

// All rates are measured in units of the emitter decay rate gamma. The
// constructor-style helpers below keep gamma explicit for readability; the
// solvers only ever consume the ratios.
struct ModelParams {
    double gamma = 1.0;  // emitter spontaneous decay rate (sets the rate unit)
    double kappa = 1e-3; // cavity leak rate, same units as gamma
    double nbar = 0.0;   // thermal occupancy of the cavity environment
    double eta = 0.0;    // dimensionless coupling g / (2 Omega)
    double xi = 0.0;     // dimensionless detuning Delta / (2 Omega)

    // Required only by the full joint-system solver.
    std::optional<double> omega;  // cavity frequency
    std::optional<double> Omega;  // Rabi frequency of the coherent drive

    double kappa_over_gamma() const { return kappa / gamma; }

    // Derived quantities, defined when Omega is present.
    double coupling_g() const { return 2.0 * Omega.value() * eta; }
    double detuning() const { return 2.0 * Omega.value() * xi; }
    double omega0() const { return Omega.value() * std::sqrt(1.0 + xi * xi); }
};

enum class Severity { Warning, Error };

struct ValidationIssue {
    Severity severity;
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool has_errors() const {
        for (const auto& i : issues)
            if (i.severity == Severity::Error) return true;
        return false;
    }
    std::vector<ValidationIssue> warnings() const {
        std::vector<ValidationIssue> w;
        for (const auto& i : issues)
            if (i.severity == Severity::Warning) w.push_back(i);
        return w;
    }
};

struct ValidateOptions {
    int s_max = 10;                // resonance multiples checked: s = 1..s_max
    double resonance_rel_tol = 1e-3;
    double dominance_factor = 10.0; // operational reading of "much larger than"
};

// Pure: identical inputs yield identical reports. Hard violations (non-positive
// rates, nbar < 0, eta outside [0,1)) come back as errors; dispersive-regime
// conditions come back as warnings so deliberate breakdown probes can proceed.
ValidationReport validate(const ModelParams& params, const ValidateOptions& opts = {});

// Throws std::invalid_argument if the report contains errors.
void require_valid(const ModelParams& params);

// Bose occupancy 1/(exp(omega/T) - 1); exactly 0 at T = 0.
double thermal_occupation(double omega, double T);

// Single-photon detailed-balance bookkeeping: kappa1/kappa2 are the total
// downward/upward rate scales, beta their ratio, alpha = ln(beta), Z the
// normalization of the geometric law exp(-alpha n).
struct DetailedBalanceN1 {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double Z = 0.0;

    // Closed-form stationary mean photon number, nbar + gamma eta^2 / (4 kappa (1+xi^2)^2).
    double mean_photon = 0.0;
};

DetailedBalanceN1 detailed_balance_coefficients(const ModelParams& params);

} // namespace mpcav

// params.cpp — parameter validation and detailed-balance coefficients

#include "mpcav/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpcav {

namespace {

void add_issue(ValidationReport& report, Severity severity, std::string code,
               std::string message) {
    report.issues.push_back({severity, std::move(code), std::move(message)});
}

} // namespace

ValidationReport validate(const ModelParams& params, const ValidateOptions& opts) {
    ValidationReport report;

    if (!(params.gamma > 0.0))
        add_issue(report, Severity::Error, "gamma_nonpositive",
                  "gamma must be positive");
    if (!(params.kappa > 0.0))
        add_issue(report, Severity::Error, "kappa_nonpositive",
                  "kappa must be positive");
    if (!(params.nbar >= 0.0))
        add_issue(report, Severity::Error, "nbar_negative",
                  "nbar must be non-negative");
    if (!(params.eta >= 0.0) || !(params.eta < 1.0))
        add_issue(report, Severity::Error, "eta_out_of_range",
                  "eta must lie in [0, 1) for the series to converge");
    if (!std::isfinite(params.xi))
        add_issue(report, Severity::Error, "xi_not_finite", "xi must be finite");
    if (params.omega.has_value() != params.Omega.has_value())
        add_issue(report, Severity::Error, "drive_incomplete",
                  "omega and Omega must be set together");

    if (report.has_errors()) return report;

    if (params.omega && params.Omega) {
        const double omega = *params.omega;
        const double Omega = *params.Omega;
        if (!(omega > 0.0) || !(Omega > 0.0)) {
            add_issue(report, Severity::Error, "drive_nonpositive",
                      "omega and Omega must be positive");
            return report;
        }

        const double omega0 = params.omega0();
        const double g = params.coupling_g();
        if (!(omega > 2.0 * Omega)) {
            std::ostringstream msg;
            msg << "omega = " << omega << " does not exceed 2*Omega = " << 2.0 * Omega;
            add_issue(report, Severity::Warning, "omega_not_dominant", msg.str());
        }
        const double scale = std::max({g, params.gamma, params.kappa});
        if (!(2.0 * omega0 >= opts.dominance_factor * scale)) {
            std::ostringstream msg;
            msg << "2*Omega0 = " << 2.0 * omega0 << " is not much larger than max(g, gamma, kappa) = "
                << scale;
            add_issue(report, Severity::Warning, "rabi_not_dominant", msg.str());
        }
        for (int s = 1; s <= opts.s_max; ++s) {
            const double gap = std::abs(2.0 * omega0 - s * omega);
            if (gap <= opts.resonance_rel_tol * s * omega) {
                std::ostringstream msg;
                msg << "2*Omega0 = " << 2.0 * omega0 << " is resonant with " << s
                    << "*omega = " << s * omega;
                add_issue(report, Severity::Warning, "resonance", msg.str());
            }
        }
    }

    return report;
}

void require_valid(const ModelParams& params) {
    const ValidationReport report = validate(params);
    if (!report.has_errors()) return;
    std::string what = "invalid model parameters:";
    for (const auto& issue : report.issues)
        if (issue.severity == Severity::Error) what += " " + issue.message + ";";
    throw std::invalid_argument(what);
}

double thermal_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(T >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

DetailedBalanceN1 detailed_balance_coefficients(const ModelParams& params) {
    require_valid(params);
    const double w = 1.0 + params.xi * params.xi;
    const double drive = params.gamma * params.eta * params.eta / (4.0 * w * w);

    DetailedBalanceN1 db;
    db.kappa1 = params.kappa * (1.0 + params.nbar) + drive;
    db.kappa2 = params.kappa * params.nbar + drive;
    db.mean_photon = params.nbar + drive / params.kappa;
    if (db.kappa2 > 0.0) {
        db.beta = db.kappa1 / db.kappa2;
        db.alpha = std::log(db.beta);
        db.Z = db.beta / (db.beta - 1.0); // sum over exp(-alpha n), beta > 1
    } else {
        db.beta = std::numeric_limits<double>::infinity();
        db.alpha = std::numeric_limits<double>::infinity();
        db.Z = 1.0; // vacuum limit
    }
    return db;
}

} // namespace mpcav

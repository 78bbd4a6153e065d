// series.cpp — exact symbolic differentiation of the dressed-frame functions

#include "mpcav/series.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcav {

HalfPowerFunction HalfPowerFunction::lorentzian() { return {{BigInt(1)}, 2}; }
HalfPowerFunction HalfPowerFunction::inv_sqrt() { return {{BigInt(1)}, 1}; }
HalfPowerFunction HalfPowerFunction::xi_inv_sqrt() { return {{BigInt(0), BigInt(1)}, 1}; }

HalfPowerFunction HalfPowerFunction::derivative() const {
    // d/dxi [P w^(-m/2)] = [P'(1+xi^2) - m xi P] w^(-(m+2)/2), w = 1+xi^2.
    const auto degree = static_cast<int>(poly.size()) - 1;
    std::vector<BigInt> next(static_cast<std::size_t>(degree + 2), BigInt(0));
    for (int i = 1; i <= degree; ++i) {
        next[static_cast<std::size_t>(i - 1)] += BigInt(i) * poly[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i + 1)] += BigInt(i) * poly[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i <= degree; ++i)
        next[static_cast<std::size_t>(i + 1)] -= BigInt(half_power) * poly[static_cast<std::size_t>(i)];
    while (next.size() > 1 && next.back() == 0) next.pop_back();
    return {std::move(next), half_power + 2};
}

double HalfPowerFunction::eval(double xi) const {
    double acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        acc = acc * xi + to_double(*it);
    const double w = 1.0 + xi * xi;
    return acc * std::pow(w, -0.5 * half_power);
}

SeriesCoefficients expand_coefficients(const ModelParams& params, int N) {
    if (N < 1) throw std::invalid_argument("expansion order N must be at least 1");
    if (!(params.eta >= 0.0) || !(params.eta < 1.0))
        throw std::invalid_argument("eta must lie in [0, 1)");

    const int k_max = 2 * N;
    SeriesCoefficients series;
    series.f.resize(static_cast<std::size_t>(k_max) + 1);
    series.sin_series.resize(static_cast<std::size_t>(k_max) + 1);
    series.cos_series.resize(static_cast<std::size_t>(k_max) + 1);

    HalfPowerFunction f = HalfPowerFunction::lorentzian();
    HalfPowerFunction s = HalfPowerFunction::inv_sqrt();
    HalfPowerFunction c = HalfPowerFunction::xi_inv_sqrt();

    double eta_pow_over_fact = 1.0; // eta^k / k!
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            eta_pow_over_fact *= params.eta / k;
            f = f.derivative();
            s = s.derivative();
            c = c.derivative();
        }
        series.f[static_cast<std::size_t>(k)] = eta_pow_over_fact * f.eval(params.xi);
        series.sin_series[static_cast<std::size_t>(k)] = eta_pow_over_fact * s.eval(params.xi);
        series.cos_series[static_cast<std::size_t>(k)] = eta_pow_over_fact * c.eval(params.xi);
    }
    return series;
}

} // namespace mpcav

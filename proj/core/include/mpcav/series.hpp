// series.hpp — Taylor coefficients of the dressed-frame operator functions
// f_k, sin(2chi), cos(2chi) in the small parameter eta

#pragma once

#include <vector>

#include "mpcav/params.hpp"
#include "mpcav/rational.hpp"

namespace mpcav {

// Functions of the form P(xi) * (1 + xi^2)^(-m/2) with integer-coefficient P.
// The family is closed under d/dxi, so repeated symbolic differentiation is
// exact; numbers only appear when eval() is called.
struct HalfPowerFunction {
    std::vector<BigInt> poly; // poly[i] multiplies xi^i
    int half_power = 0;       // m in (1+xi^2)^(-m/2)

    HalfPowerFunction derivative() const;
    double eval(double xi) const;

    static HalfPowerFunction lorentzian();      // 1/(1+xi^2)
    static HalfPowerFunction inv_sqrt();        // 1/sqrt(1+xi^2)
    static HalfPowerFunction xi_inv_sqrt();     // xi/sqrt(1+xi^2)
};

// Numeric series tables at a fixed (eta, xi). Index k carries the eta^k factor:
//   f[k]          = eta^k/k! d^k/dxi^k [ 1/(1+xi^2) ]
//   sin_series[k] = eta^k/k! d^k/dxi^k [ 1/sqrt(1+xi^2) ]
//   cos_series[k] = eta^k/k! d^k/dxi^k [ xi/sqrt(1+xi^2) ]
struct SeriesCoefficients {
    std::vector<double> f;
    std::vector<double> sin_series;
    std::vector<double> cos_series;

    int max_order() const { return static_cast<int>(f.size()) - 1; }
};

// All three series carried to k = 2N inclusive.
SeriesCoefficients expand_coefficients(const ModelParams& params, int N);

} // namespace mpcav

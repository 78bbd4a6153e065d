// observables.cpp

#include "mpcav/observables.hpp"

namespace mpcav {

namespace {

// Means below this are an empty cavity within solver accuracy; g2 would
// divide noise by noise squared.
constexpr double kEmptyCavityMean = 1e-12;

} // namespace

double mean_photon(const PhotonDistribution& P) {
    double mean = 0.0;
    for (int n = 1; n <= P.n_max; ++n) mean += n * P.p(n);
    return mean;
}

std::optional<double> g2_zero(const PhotonDistribution& P) {
    const double mean = mean_photon(P);
    if (mean <= kEmptyCavityMean) return std::nullopt;
    double second = 0.0;
    for (int n = 2; n <= P.n_max; ++n) second += static_cast<double>(n) * (n - 1) * P.p(n);
    return second / (mean * mean);
}

ObservableSet observables_from(const PhotonDistribution& P) {
    ObservableSet obs;
    obs.mean_n = mean_photon(P);
    obs.g2 = g2_zero(P);
    obs.p2 = P.n_max >= 2 ? P.p(2) : 0.0;
    obs.valid = P.valid;
    return obs;
}

} // namespace mpcav

// observables.hpp — photon statistics read off a diagonal distribution

#pragma once

#include <optional>

#include "mpcav/dynamics.hpp"

namespace mpcav {

struct ObservableSet {
    double mean_n = 0.0;
    std::optional<double> g2; // empty when the cavity is exactly empty
    double p2 = 0.0;          // occupation of the two-photon Fock state
    bool valid = true;        // steady-state positivity flag
};

// sum_n n P_n
double mean_photon(const PhotonDistribution& P);

// sum_n n(n-1) P_n / (sum_n n P_n)^2; empty optional on an empty cavity.
std::optional<double> g2_zero(const PhotonDistribution& P);

ObservableSet observables_from(const PhotonDistribution& P);

} // namespace mpcav

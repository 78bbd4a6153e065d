#include <doctest.h>

#include <cmath>

#include "mpcav/dynamics.hpp"
#include "mpcav/observables.hpp"

using namespace mpcav;

namespace {

PhotonDistribution fock_state(int n, int n_max) {
    PhotonDistribution d;
    d.n_max = n_max;
    d.p = Eigen::VectorXd::Zero(n_max + 1);
    d.p(n) = 1.0;
    return d;
}

PhotonDistribution geometric(double ratio, int n_max) {
    PhotonDistribution d;
    d.n_max = n_max;
    d.p = Eigen::VectorXd::Zero(n_max + 1);
    for (int n = 0; n <= n_max; ++n) d.p(n) = std::pow(ratio, n);
    d.p /= d.p.sum();
    return d;
}

ModelParams params_at(double eta) {
    ModelParams p;
    p.gamma = 1.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.eta = eta;
    p.xi = 0.0;
    return p;
}

} // namespace

TEST_CASE("mean photon number") {
    CHECK(mean_photon(fock_state(0, 8)) == 0.0);
    // geometric with beta = 6: mean 1/(beta - 1)
    CHECK(mean_photon(geometric(1.0 / 6.0, 256)) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(mean_photon(geometric(0.1 / 1.1, 256)) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("g2 of geometric and thermal laws is 2") {
    CHECK(*g2_zero(geometric(1.0 / 6.0, 512)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*g2_zero(geometric(0.5, 512)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("g2 of small Fock states") {
    CHECK(*g2_zero(fock_state(1, 8)) == 0.0);
    CHECK(*g2_zero(fock_state(2, 8)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("g2 of the empty cavity is undefined") {
    CHECK_FALSE(g2_zero(fock_state(0, 8)).has_value());
    const ObservableSet obs = observables_from(fock_state(0, 8));
    CHECK(obs.mean_n == 0.0);
    CHECK_FALSE(obs.g2.has_value());
}

TEST_CASE("observable bundle carries p2 and validity") {
    PhotonDistribution d = geometric(0.4, 32);
    d.valid = false;
    const ObservableSet obs = observables_from(d);
    CHECK(obs.p2 == doctest::Approx(d.p(2)).epsilon(1e-15));
    CHECK_FALSE(obs.valid);
}

TEST_CASE("every N = 1 steady state has g2 = 2") {
    for (const double eta : {0.01, 0.05, 0.1}) {
        for (const double nbar : {0.0, 0.1, 1.0}) {
            ModelParams p = params_at(eta);
            p.nbar = nbar;
            const RateMatrix W = build_rate_matrix(p, 1, 160);
            const auto g2 = g2_zero(steady_state(W));
            REQUIRE(g2.has_value());
            CHECK(*g2 == doctest::Approx(2.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("N = 1 mean grows strictly with eta") {
    double previous = -1.0;
    for (const double eta : {0.0, 0.02, 0.04, 0.06, 0.08}) {
        const RateMatrix W = build_rate_matrix(params_at(eta), 1, 128);
        const double mean = mean_photon(steady_state(W));
        CHECK(mean > previous);
        previous = mean;
    }
}

TEST_CASE("N = 2 statistics leave the thermal point at large eta") {
    // Frozen regression values for eta = 0.09, xi = 0, nbar = 0.1,
    // kappa/gamma = 1e-3, N = 2 (criterion margins are derived from these).
    const RateMatrix W = build_rate_matrix(params_at(0.09), 2, 128);
    const ObservableSet obs = observables_from(steady_state(W));
    REQUIRE(obs.g2.has_value());
    CHECK(std::abs(*obs.g2 - 2.0) > 0.05);
}

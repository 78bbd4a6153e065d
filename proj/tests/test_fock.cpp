#include <doctest.h>

#include <cmath>
#include <map>

#include "mpcav/fock.hpp"

using namespace mpcav;

namespace {

// Brute-force oracle: k-th matrix power of (b† + b) on a big ladder.
Eigen::MatrixXd quadrature_matrix_power(int k, int n_max) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        q(n - 1, n) = std::sqrt(static_cast<double>(n));
        q(n, n - 1) = q(n - 1, n);
    }
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n_max + 1, n_max + 1);
    for (int i = 0; i < k; ++i) power = power * q;
    return power;
}

std::map<std::pair<int, int>, Rational> as_map(const NormalOrderedPoly& poly) {
    std::map<std::pair<int, int>, Rational> out;
    for (const auto& term : poly.terms) {
        CHECK(out.count({term.p, term.q}) == 0); // no duplicate monomials
        CHECK(term.coeff != 0);
        out[{term.p, term.q}] = term.coeff;
    }
    return out;
}

} // namespace

TEST_CASE("ladder matrix elements") {
    const LadderOperators ops = ladder_matrices(2);
    CHECK(ops.annihilation.entries(0, 1).real() == doctest::Approx(1.0));
    CHECK(ops.annihilation.entries(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(ops.annihilation.entries.cwiseAbs().sum() ==
          doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK(ops.creation.entries.isApprox(ops.annihilation.entries.adjoint()));
}

TEST_CASE("truncated commutator is identity except the top corner") {
    const LadderOperators ops = ladder_matrices(2);
    const Eigen::MatrixXcd comm = ops.annihilation.entries * ops.creation.entries -
                                  ops.creation.entries * ops.annihilation.entries;
    CHECK(comm(0, 0).real() == doctest::Approx(1.0));
    CHECK(comm(1, 1).real() == doctest::Approx(1.0));
    CHECK(comm(2, 2).real() == doctest::Approx(-2.0)); // truncation artifact
}

TEST_CASE("number operator diagonal") {
    const LadderOperators ops = ladder_matrices(5);
    for (int n = 0; n <= 5; ++n)
        CHECK(ops.number.entries(n, n).real() == doctest::Approx(static_cast<double>(n)));
    CHECK(ops.number.entries.isApprox(ops.creation.entries * ops.annihilation.entries));
}

TEST_CASE("ladder_matrices rejects degenerate truncation") {
    CHECK_THROWS_AS(ladder_matrices(0), std::invalid_argument);
}

TEST_CASE("quadrature power k = 0 is the identity") {
    const auto map = as_map(quadrature_power(0));
    REQUIRE(map.size() == 1);
    CHECK(map.at({0, 0}) == 1);
}

TEST_CASE("quadrature power k = 2") {
    const auto map = as_map(quadrature_power(2));
    REQUIRE(map.size() == 4);
    CHECK(map.at({2, 0}) == 1);
    CHECK(map.at({0, 2}) == 1);
    CHECK(map.at({1, 1}) == 2);
    CHECK(map.at({0, 0}) == 1);
}

TEST_CASE("quadrature power k = 3") {
    const auto map = as_map(quadrature_power(3));
    REQUIRE(map.size() == 6);
    CHECK(map.at({3, 0}) == 1);
    CHECK(map.at({0, 3}) == 1);
    CHECK(map.at({2, 1}) == 3);
    CHECK(map.at({1, 2}) == 3);
    CHECK(map.at({1, 0}) == 3);
    CHECK(map.at({0, 1}) == 3);
}

TEST_CASE("expansion matches the matrix power oracle for k <= 8") {
    const int n_max = 30;
    for (int k = 0; k <= 8; ++k) {
        const Eigen::MatrixXd direct = quadrature_matrix_power(k, n_max);
        const Eigen::MatrixXd from_poly = quadrature_power(k).to_matrix(n_max);
        const int safe = n_max - k; // block untouched by truncation
        const double err = (direct.topLeftCorner(safe + 1, safe + 1) -
                            from_poly.topLeftCorner(safe + 1, safe + 1))
                               .cwiseAbs()
                               .maxCoeff();
        CHECK(err < 1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("expansion carries only monomials of the right parity") {
    for (int k = 0; k <= 9; ++k) {
        for (const auto& term : quadrature_power(k).terms) {
            CHECK((term.p + term.q) % 2 == k % 2);
            CHECK(term.p + term.q <= k);
        }
    }
}

TEST_CASE("matrix elements vanish across parity classes") {
    const int k = 5;
    const Eigen::MatrixXd power = quadrature_matrix_power(k, 20);
    for (int n = 0; n <= 14; ++n)
        for (int m = 0; m <= 14; ++m)
            if ((n - m - k) % 2 != 0) CHECK(power(n, m) == 0.0);
}

TEST_CASE("monomial elements") {
    CHECK(monomial_element(1, 1, 3, 3) == doctest::Approx(3.0));
    CHECK(monomial_element(2, 0, 2, 0) == doctest::Approx(std::sqrt(2.0)));
    // b^2 applied twice to |3>
    CHECK(monomial_element(0, 2, 1, 3) == doctest::Approx(std::sqrt(6.0)));
    CHECK(monomial_element(1, 0, 2, 3) == 0.0);
    CHECK(monomial_element(0, 3, 1, 2) == 0.0);
    CHECK_THROWS_AS(monomial_element(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("monomial elements agree with explicit operator products") {
    const LadderOperators ops = ladder_matrices(12);
    for (int p = 0; p <= 3; ++p) {
        for (int q = 0; q <= 3; ++q) {
            Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(13, 13);
            for (int i = 0; i < p; ++i) op = ops.creation.entries * op;
            for (int i = 0; i < q; ++i) op = op * ops.annihilation.entries;
            for (int n = 0; n <= 8; ++n)
                for (int m = 0; m <= 8; ++m)
                    CHECK(monomial_element(p, q, n, m) ==
                          doctest::Approx(op(n, m).real()).epsilon(1e-13));
        }
    }
}

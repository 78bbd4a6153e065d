// fock.cpp — ladder operators and the normal-ordered quadrature expansion

#include "mpcav/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace mpcav {

LadderOperators ladder_matrices(int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    const int dim = n_max + 1;

    LadderOperators ops;
    ops.annihilation = {n_max, Eigen::MatrixXcd::Zero(dim, dim)};
    for (int n = 1; n <= n_max; ++n)
        ops.annihilation.entries(n - 1, n) = std::sqrt(static_cast<double>(n));
    ops.creation = {n_max, ops.annihilation.entries.adjoint()};
    ops.number = {n_max, ops.creation.entries * ops.annihilation.entries};
    return ops;
}

double monomial_element(int p, int q, int n, int m) {
    if (p < 0 || q < 0 || n < 0 || m < 0)
        throw std::invalid_argument("monomial_element expects non-negative integers");
    if (m - q != n - p || m - q < 0) return 0.0;
    double product = 1.0;
    for (int i = 0; i < q; ++i) product *= static_cast<double>(m - i);
    for (int i = 0; i < p; ++i) product *= static_cast<double>(n - i);
    return std::sqrt(product);
}

Eigen::MatrixXd NormalOrderedPoly::to_matrix(int n_max) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (const auto& term : terms) {
        const double c = to_double(term.coeff);
        for (int m = 0; m <= n_max; ++m) {
            const int n = m - term.q + term.p;
            if (n < 0 || n > n_max) continue;
            out(n, m) += c * monomial_element(term.p, term.q, n, m);
        }
    }
    return out;
}

NormalOrderedPoly quadrature_power(int k) {
    if (k < 0) throw std::invalid_argument("quadrature power expects k >= 0");

    // (A+B)^k with A = b†, B = b, [A,B] = -1, so each contracted pair carries
    // a factor (-C/2) = 1/2. k' keeps the parity of k.
    NormalOrderedPoly poly;
    for (int kp = k % 2; kp <= k; kp += 2) {
        const int pairs = (k - kp) / 2;
        Rational base(factorial(static_cast<unsigned>(k)),
                      factorial(static_cast<unsigned>(kp)) *
                          factorial(static_cast<unsigned>(pairs)));
        base /= Rational(BigInt(1) << pairs);
        for (int r = 0; r <= kp; ++r) {
            Rational coeff = base * Rational(binomial(static_cast<unsigned>(kp),
                                                      static_cast<unsigned>(r)));
            poly.terms.push_back({r, kp - r, std::move(coeff)});
        }
    }
    return poly;
}

} // namespace mpcav

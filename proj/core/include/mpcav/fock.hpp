// fock.hpp — truncated Fock-space operators and exact normal ordering of
// quadrature powers (b† + b)^k

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "mpcav/rational.hpp"

namespace mpcav {

// Dense operator on the truncated ladder n = 0..n_max.
struct OperatorMatrix {
    int n_max = 0;
    Eigen::MatrixXcd entries;

    int dim() const { return n_max + 1; }
};

struct LadderOperators {
    OperatorMatrix annihilation; // <n-1|b|n> = sqrt(n)
    OperatorMatrix creation;     // b†
    OperatorMatrix number;       // b†b, exact on the truncated space
};

LadderOperators ladder_matrices(int n_max);

// One normal-ordered monomial b†^p b^q with an exact coefficient.
struct NormalOrderedTerm {
    int p = 0;
    int q = 0;
    Rational coeff;
};

// Sum of normal-ordered monomials. No duplicate (p, q) pairs; zero terms are
// dropped. For an expansion of (b†+b)^k every term satisfies p+q ≡ k (mod 2).
struct NormalOrderedPoly {
    std::vector<NormalOrderedTerm> terms;

    // Dense matrix on the truncated ladder; exact only on the sub-block that a
    // guard band of max(p+q) extra levels protects.
    Eigen::MatrixXd to_matrix(int n_max) const;
};

// Exact expansion of (b† + b)^k via the binomial identity for [A,B] central:
// pairs of contracted operators contribute (1/2)^m multiplicities, the k'
// surviving letters are summed over all creation/annihilation splits. k' runs
// over odd values for odd k and even values for even k.
NormalOrderedPoly quadrature_power(int k);

// <n| b†^p b^q |m>; nonzero only when m - q = n - p >= 0.
double monomial_element(int p, int q, int n, int m);

} // namespace mpcav

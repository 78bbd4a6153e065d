// rate_matrix.hpp — secular N-photon rate-equation generator for the diagonal
// photon distribution P_n

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "mpcav/params.hpp"

namespace mpcav {

// Which part of the effective master equation a band contribution came from.
enum class GeneratorTerm {
    GammaSandwich, // (gamma/4) cos2chi rho cos2chi + sin2chi rho sin2chi
    GammaIdentity, // the -(gamma/4) rho counter term
    KappaDown,     // kappa (1+nbar) D[b]
    KappaUp,       // kappa nbar D[b†]
    KappaEta,      // (kappa eta^2/8)(1+2nbar) double sum over f_k1 f_k2
};

const char* to_string(GeneratorTerm term);

// One secular sandwich term c * b†^p1 b^q1 rho b†^p2 b^q2, kept because its
// rotation index (p1-q1)+(p2-q2) vanishes. It feeds the band entries
// W[n, n-jump] with weight c <n|left|m><m|right|n>, m = n - jump.
struct SandwichContribution {
    GeneratorTerm source;
    int k1 = 0; // series index of the left operator factor
    int k2 = 0; // series index of the right operator factor
    int p1 = 0, q1 = 0;
    int p2 = 0, q2 = 0;
    double coeff = 0.0;
    int eta_order = 0;
    int jump = 0; // p1 - q1
};

// Band generator for dP_n/dt = sum_m W[n,m] P_m, bandwidth N. Entries are the
// exact infinite-ladder rates restricted to n, m <= n_max, so every column
// except the top `bandwidth` ones sums to zero.
struct RateMatrix {
    int n_max = 0;
    int bandwidth = 0;
    Eigen::MatrixXd entries;
    std::vector<SandwichContribution> contributions;
    std::vector<std::string> warnings;

    double operator()(int n, int m) const { return entries(n, m); }
    int dim() const { return n_max + 1; }

    // Probability-conservation defect of column m (exact zero expected for
    // m <= n_max - bandwidth).
    double column_sum(int m) const { return entries.col(m).sum(); }
};

struct RateMatrixOptions {
    bool include_kappa_eta = false; // keep the kappa eta^2 double-sum terms
    int guard = -1;                 // extra construction levels; default 2N
};

// Builds the order-eta^(2N) secular generator. The procedure: expand every
// dissipative term of the effective master equation into normal-ordered
// sandwich monomials, truncate the total eta power at 2N, discard monomial
// pairs whose rotation index is nonzero, then project onto the Fock diagonal.
RateMatrix build_rate_matrix(const ModelParams& params, int N, int n_max,
                             const RateMatrixOptions& opts = {});

// Hard-coded transcription of the closed-form single- and two-photon rate
// equations; independent oracle for build_rate_matrix, N in {1, 2} only.
RateMatrix analytic_rate_matrix(const ModelParams& params, int N, int n_max);

// Second independent oracle: transcribes the eta^4 master equation as explicit
// operator commutators on a guarded truncated ladder, projects it onto the
// diagonal, and compares with build_rate_matrix(N=2). Returns true when the
// two routes agree entrywise to rel_tol on the guarded block.
bool eta4_generator_check(const ModelParams& params, int n_max,
                          double rel_tol = 1e-12);

} // namespace mpcav

// dynamics.hpp — steady states and time evolution of the P_n rate equations

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "mpcav/params.hpp"
#include "mpcav/rate_matrix.hpp"

namespace mpcav {

struct PhotonDistribution {
    Eigen::VectorXd p; // occupation probabilities over n = 0..n_max
    int n_max = 0;

    // Bookkeeping from the linear solve: most negative raw entry before
    // clipping, and whether it stayed above the validity floor (-1e-8).
    double min_entry_before_clip = 0.0;
    bool valid = true;

    double sum() const { return p.sum(); }
};

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularGeneratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normalized kernel vector of W: one balance row is replaced by the
// normalization constraint and the resulting system solved directly. Throws
// SingularGeneratorError when the replaced system is rank deficient (kernel
// not one-dimensional). Entries below -1e-8 clear the validity flag; all
// negative entries are clipped and recorded.
PhotonDistribution steady_state(const RateMatrix& W);

struct EvolveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_dt = 1e-3;
    double min_dt_factor = 1e-14; // step underflow threshold, relative to span
};

// Integrates dP/dt = W P with an adaptive embedded Runge-Kutta scheme.
// Step-size underflow is reported as a StiffnessError.
PhotonDistribution evolve(const RateMatrix& W, const PhotonDistribution& p0,
                          double t_final, const EvolveOptions& opts = {});

// Exact geometric steady state of the single-photon rate equation, truncated
// and renormalized on 0..n_max. The coefficients carry the closed-form
// infinite-ladder mean. kappa2 = 0 degenerates to the vacuum distribution.
std::pair<DetailedBalanceN1, PhotonDistribution>
detailed_balance_n1(const ModelParams& params, int n_max);

struct TruncationOptions {
    int start = 16;
    double growth = 1.5;
    int n_max_limit = 512;
    bool include_kappa_eta = false;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest n_max on the geometric schedule such that growing it one more step
// moves <n> and g2(0) by less than the tolerance. Throws TruncationError when
// the cap is reached without convergence.
int adaptive_truncation(const ModelParams& params, int N, double observable_tolerance,
                        const TruncationOptions& opts = {});

} // namespace mpcav

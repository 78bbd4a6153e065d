// lindblad.hpp — full joint emitter–cavity master-equation reference solver

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "mpcav/observables.hpp"
#include "mpcav/params.hpp"

namespace mpcav {

// Joint system on emitter(2) ⊗ cavity(n_max+1), with
//   H = omega b†b + Delta S_z - Omega (S+ + S-) + g S_z (b† + b),
//   Delta = 2 Omega xi, g = 2 Omega eta,
// and jump channels (S-, gamma), (b, kappa(1+nbar)), (b†, kappa nbar).
struct LindbladModel {
    int n_max = 0;
    Eigen::MatrixXcd H;
    std::vector<std::pair<Eigen::MatrixXcd, double>> dissipators;

    int dim() const { return 2 * (n_max + 1); }
};

// Requires params.omega and params.Omega.
LindbladModel build_lindblad_model(const ModelParams& params, int n_max);

struct LiouvillianOptions {
    int max_superop_dim = 4096; // guard on the superoperator side length
};

// Matrix of rho -> -i[H,rho] + sum_j r_j (L rho L† - {L†L, rho}/2) acting on
// column-major vectorized density operators. Trace-annihilating by
// construction.
Eigen::MatrixXcd build_liouvillian(const LindbladModel& model,
                                   const LiouvillianOptions& opts = {});

struct FullSteadyState {
    Eigen::MatrixXcd rho;
    double residual = 0.0;      // max-norm of L vec(rho)
    double min_eigenvalue = 0.0;
    double hermiticity_defect = 0.0;
    bool unique = true;
    std::vector<std::string> warnings;
};

struct SteadyStateOptions {
    bool check_uniqueness = true; // second solve with a different pivot row
    double uniqueness_tol = 1e-6;
    double rcond_floor = 1e-13;
    double positivity_floor = -1e-8;
};

// Unique trace-one kernel element of L, via a direct solve with one balance
// row replaced by the trace constraint. Non-uniqueness (possible at exact
// resonances) is detected by cross-checking a second pivot row and the
// reciprocal condition number.
FullSteadyState full_steady_state(const Eigen::MatrixXcd& L,
                                  const SteadyStateOptions& opts = {});

// Partial trace over the emitter.
Eigen::MatrixXcd reduced_cavity_state(const Eigen::MatrixXcd& rho_joint);

// <b†b> and <b†² b²>/<b†b>² of the reduced cavity state; p2 from its diagonal.
ObservableSet reduced_cavity_observables(const Eigen::MatrixXcd& rho_joint);

} // namespace mpcav

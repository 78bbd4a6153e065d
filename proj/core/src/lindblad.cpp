// lindblad.cpp — full joint emitter–cavity Liouvillian and its steady state

#include "mpcav/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mpcav {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

// vec(A rho B) = (B^T ⊗ A) vec(rho) for column-major vectorization; entry
// update form used below to keep the superoperator assembly sparse-friendly.
void add_sandwich(Eigen::MatrixXcd& L, const Eigen::MatrixXcd& A,
                  const Eigen::MatrixXcd& B, Complex weight) {
    const Eigen::Index D = A.rows();
    std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, Complex>> a_nz, b_nz;
    for (Eigen::Index r = 0; r < D; ++r)
        for (Eigen::Index c = 0; c < D; ++c) {
            if (A(r, c) != Complex(0, 0)) a_nz.push_back({{r, c}, A(r, c)});
            if (B(r, c) != Complex(0, 0)) b_nz.push_back({{r, c}, B(r, c)});
        }
    for (const auto& [aidx, aval] : a_nz)
        for (const auto& [bidx, bval] : b_nz)
            L(bidx.second * D + aidx.first, bidx.first * D + aidx.second) +=
                weight * aval * bval;
}

struct SolveOutcome {
    Eigen::VectorXcd x;
    bool ok = false;
};

SolveOutcome solve_with_trace_row(const Eigen::MatrixXcd& L, Eigen::Index row) {
    const Eigen::Index side = L.rows();
    const auto D = static_cast<Eigen::Index>(std::llround(std::sqrt(double(side))));

    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(side) * 8);
    for (Eigen::Index j = 0; j < side; ++j)
        for (Eigen::Index i = 0; i < side; ++i) {
            if (i == row) continue;
            if (L(i, j) != Complex(0, 0)) triplets.emplace_back(i, j, L(i, j));
        }
    for (Eigen::Index k = 0; k < D; ++k)
        triplets.emplace_back(row, k * (D + 1), Complex(1, 0));

    Eigen::SparseMatrix<Complex> A(side, side);
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(A);
    SolveOutcome out;
    if (lu.info() != Eigen::Success) return out;

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(side);
    rhs(row) = Complex(1, 0);
    out.x = lu.solve(rhs);
    out.ok = lu.info() == Eigen::Success && out.x.allFinite();
    return out;
}

} // namespace

LindbladModel build_lindblad_model(const ModelParams& params, int n_max) {
    if (!params.omega || !params.Omega)
        throw std::invalid_argument("full solver requires omega and Omega");
    require_valid(params);
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");

    const int dc = n_max + 1;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dc, dc);
    for (int n = 1; n <= n_max; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd bd = b.adjoint();
    const Eigen::MatrixXcd id_c = Eigen::MatrixXcd::Identity(dc, dc);

    // Emitter basis: index 0 ground, index 1 excited.
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(2, 2);
    sz(0, 0) = -0.5;
    sz(1, 1) = 0.5;
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(2, 2);
    sp(1, 0) = 1.0;
    const Eigen::MatrixXcd sm = sp.adjoint();
    const Eigen::MatrixXcd id_e = Eigen::MatrixXcd::Identity(2, 2);

    LindbladModel model;
    model.n_max = n_max;
    model.H = *params.omega * kron(id_e, bd * b) + params.detuning() * kron(sz, id_c) -
              *params.Omega * kron(sp + sm, id_c) +
              params.coupling_g() * kron(sz, b + bd);
    model.dissipators.push_back({kron(sm, id_c), params.gamma});
    model.dissipators.push_back({kron(id_e, b), params.kappa * (1.0 + params.nbar)});
    model.dissipators.push_back({kron(id_e, bd), params.kappa * params.nbar});
    return model;
}

Eigen::MatrixXcd build_liouvillian(const LindbladModel& model,
                                   const LiouvillianOptions& opts) {
    const Eigen::Index D = model.H.rows();
    const Eigen::Index side = D * D;
    if (side > opts.max_superop_dim) {
        std::ostringstream msg;
        msg << "superoperator side length " << side << " exceeds the limit "
            << opts.max_superop_dim;
        throw std::length_error(msg.str());
    }

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(D, D);
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(side, side);

    const Complex minus_i(0, -1);
    add_sandwich(L, model.H, id, minus_i);
    add_sandwich(L, id, model.H, -minus_i);

    for (const auto& [jump, rate] : model.dissipators) {
        const Eigen::MatrixXcd jdj = jump.adjoint() * jump;
        add_sandwich(L, jump, jump.adjoint(), Complex(rate, 0));
        add_sandwich(L, jdj, id, Complex(-0.5 * rate, 0));
        add_sandwich(L, id, jdj, Complex(-0.5 * rate, 0));
    }
    return L;
}

FullSteadyState full_steady_state(const Eigen::MatrixXcd& L,
                                  const SteadyStateOptions& opts) {
    const Eigen::Index side = L.rows();
    const auto D = static_cast<Eigen::Index>(std::llround(std::sqrt(double(side))));
    if (D * D != side || L.cols() != side)
        throw std::invalid_argument("Liouvillian must be square with a square side length");

    FullSteadyState out;

    SolveOutcome primary = solve_with_trace_row(L, 0);
    if (!primary.ok) {
        // Singular replaced system: pick some kernel element by least squares
        // on the stacked [L; trace] system and flag non-uniqueness.
        out.unique = false;
        out.warnings.push_back(
            "replaced steady-state system is singular; least-squares fallback used");
        Eigen::MatrixXcd stacked(side + 1, side);
        stacked.topRows(side) = L;
        stacked.row(side).setZero();
        for (Eigen::Index k = 0; k < D; ++k) stacked(side, k * (D + 1)) = Complex(1, 0);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(side + 1);
        rhs(side) = Complex(1, 0);
        primary.x = stacked.colPivHouseholderQr().solve(rhs);
        primary.ok = true;
    } else if (opts.check_uniqueness) {
        const SolveOutcome secondary = solve_with_trace_row(L, 1);
        if (!secondary.ok) {
            out.unique = false;
            out.warnings.push_back("uniqueness cross-solve failed to factorize");
        } else {
            const double diff = (primary.x - secondary.x).cwiseAbs().maxCoeff();
            const double scale = std::max(primary.x.cwiseAbs().maxCoeff(), 1e-300);
            if (diff > opts.uniqueness_tol * scale) {
                out.unique = false;
                std::ostringstream msg;
                msg << "steady state is not unique: two pivot rows disagree by "
                    << diff / scale << " (relative)";
                out.warnings.push_back(msg.str());
            }
        }
    }

    out.residual = (L * primary.x).cwiseAbs().maxCoeff();

    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(primary.x.data(), D, D);
    out.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double trace = rho.trace().real();
    if (!(std::abs(trace) > 0.0))
        throw std::runtime_error("steady-state solve produced a traceless state");
    rho /= trace;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    if (out.min_eigenvalue < opts.positivity_floor) {
        std::ostringstream msg;
        msg << "steady state has eigenvalue " << out.min_eigenvalue
            << " below the positivity floor";
        out.warnings.push_back(msg.str());
    }
    out.rho = std::move(rho);
    return out;
}

Eigen::MatrixXcd reduced_cavity_state(const Eigen::MatrixXcd& rho_joint) {
    const Eigen::Index D = rho_joint.rows();
    if (D % 2 != 0 || rho_joint.cols() != D)
        throw std::invalid_argument("joint state must be square with even dimension");
    const Eigen::Index dc = D / 2;
    return rho_joint.topLeftCorner(dc, dc) + rho_joint.bottomRightCorner(dc, dc);
}

ObservableSet reduced_cavity_observables(const Eigen::MatrixXcd& rho_joint) {
    const Eigen::MatrixXcd rho_c = reduced_cavity_state(rho_joint);
    const Eigen::Index dc = rho_c.rows();

    ObservableSet obs;
    double min_diag = std::numeric_limits<double>::infinity();
    double second = 0.0;
    for (Eigen::Index n = 0; n < dc; ++n) {
        const double pn = rho_c(n, n).real();
        min_diag = std::min(min_diag, pn);
        obs.mean_n += static_cast<double>(n) * pn;
        second += static_cast<double>(n) * (static_cast<double>(n) - 1.0) * pn;
    }
    if (obs.mean_n > 1e-12) obs.g2 = second / (obs.mean_n * obs.mean_n);
    obs.p2 = dc > 2 ? rho_c(2, 2).real() : 0.0;
    obs.valid = min_diag >= -1e-8;
    return obs;
}

} // namespace mpcav

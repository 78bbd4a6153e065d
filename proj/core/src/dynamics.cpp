// dynamics.cpp — steady states, time evolution and truncation control for the
// photon rate equations

#include "mpcav/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpcav/observables.hpp"

namespace mpcav {

namespace {

PhotonDistribution finish_distribution(Eigen::VectorXd p, int n_max) {
    PhotonDistribution dist;
    dist.n_max = n_max;
    dist.min_entry_before_clip = p.minCoeff();
    dist.valid = dist.min_entry_before_clip >= -1e-8;
    p = p.cwiseMax(0.0);
    const double total = p.sum();
    if (!(total > 0.0))
        throw SingularGeneratorError("steady-state solve produced a non-normalizable vector");
    dist.p = p / total;
    return dist;
}

} // namespace

PhotonDistribution steady_state(const RateMatrix& W) {
    const int dim = W.dim();

    // Replace the top balance row with the normalization constraint. The top
    // rows are the ones missing inflow from truncated levels, so the dropped
    // equation is the least trustworthy one.
    Eigen::MatrixXd A = W.entries;
    A.row(dim - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    rhs(dim - 1) = 1.0;

    // Row equilibration: balance rows scale with the rates (often 1e-4..1e-2)
    // while the constraint row is O(1).
    for (int i = 0; i < dim; ++i) {
        const double scale = A.row(i).cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            A.row(i) /= scale;
            rhs(i) /= scale;
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible())
        throw SingularGeneratorError(
            "rate generator kernel is not one-dimensional (replaced system is singular)");

    return finish_distribution(lu.solve(rhs), W.n_max);
}

PhotonDistribution evolve(const RateMatrix& W, const PhotonDistribution& p0,
                          double t_final, const EvolveOptions& opts) {
    if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be non-negative");
    if (p0.p.size() != W.dim())
        throw std::invalid_argument("initial distribution does not match generator size");

    PhotonDistribution out = p0;
    if (t_final == 0.0) return out;

    using state_type = std::vector<double>;
    namespace odeint = boost::numeric::odeint;

    const Eigen::MatrixXd& gen = W.entries;
    auto system = [&gen](const state_type& x, state_type& dxdt, double) {
        const Eigen::Map<const Eigen::VectorXd> xv(x.data(),
                                                   static_cast<Eigen::Index>(x.size()));
        dxdt.resize(x.size());
        Eigen::Map<Eigen::VectorXd> dv(dxdt.data(), static_cast<Eigen::Index>(dxdt.size()));
        dv.noalias() = gen * xv;
    };

    state_type x(p0.p.data(), p0.p.data() + p0.p.size());
    auto stepper = odeint::make_controlled<odeint::runge_kutta_cash_karp54<state_type>>(
        opts.abs_tol, opts.rel_tol);

    const double dt_min = opts.min_dt_factor * std::max(t_final, 1.0);
    double t = 0.0;
    double dt = std::min(opts.initial_dt, t_final);
    while (t < t_final) {
        dt = std::min(dt, t_final - t);
        const auto result = stepper.try_step(system, x, t, dt);
        if (result == odeint::fail && dt < dt_min) {
            std::ostringstream msg;
            msg << "step size underflow (dt = " << dt << " at t = " << t
                << "): generator too stiff for the explicit scheme";
            throw StiffnessError(msg.str());
        }
    }

    out.p = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    out.min_entry_before_clip = out.p.minCoeff();
    out.valid = out.min_entry_before_clip >= -1e-8;
    return out;
}

std::pair<DetailedBalanceN1, PhotonDistribution>
detailed_balance_n1(const ModelParams& params, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    const DetailedBalanceN1 db = detailed_balance_coefficients(params);

    PhotonDistribution dist;
    dist.n_max = n_max;
    dist.p = Eigen::VectorXd::Zero(n_max + 1);
    if (db.kappa2 <= 0.0) {
        dist.p(0) = 1.0; // pure vacuum limit
        return {db, dist};
    }

    const double ratio = db.kappa2 / db.kappa1; // exp(-alpha) < 1
    double value = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        dist.p(n) = value;
        value *= ratio;
    }
    dist.p /= dist.p.sum();
    return {db, dist};
}

int adaptive_truncation(const ModelParams& params, int N, double observable_tolerance,
                        const TruncationOptions& opts) {
    if (!(observable_tolerance > 0.0))
        throw std::invalid_argument("observable tolerance must be positive");
    require_valid(params);
    if (N < 1) throw std::invalid_argument("photon order N must be at least 1");

    RateMatrixOptions build_opts;
    build_opts.include_kappa_eta = opts.include_kappa_eta;

    auto observables_at = [&](int n_max) {
        const RateMatrix W = build_rate_matrix(params, N, n_max, build_opts);
        return observables_from(steady_state(W));
    };
    auto settled = [&](double a, double b) {
        return std::abs(a - b) <=
               observable_tolerance * std::max({std::abs(a), std::abs(b), 1e-6});
    };

    int n = std::max(std::min(opts.start, opts.n_max_limit), 4 * N);
    ObservableSet current = observables_at(n);
    while (n < opts.n_max_limit) {
        const int next = std::min(
            static_cast<int>(std::ceil(n * opts.growth)), opts.n_max_limit);
        ObservableSet probe;
        try {
            probe = observables_at(next);
        } catch (const SingularGeneratorError&) {
            // Deep truncations can leave the eta expansion's validity window
            // (pseudo-rates grow like eta^2N n^N); the generator then loses
            // rank before the observables settle at this tolerance.
            std::ostringstream msg;
            msg << "generator loses rank at n_max = " << next
                << " before observables converge at tolerance "
                << observable_tolerance
                << "; parameters sit at the edge of the expansion's validity";
            throw TruncationError(msg.str());
        }
        bool ok = settled(current.mean_n, probe.mean_n);
        if (ok) {
            if (current.g2.has_value() != probe.g2.has_value())
                ok = false;
            else if (current.g2 && probe.g2)
                ok = settled(*current.g2, *probe.g2);
        }
        if (ok) return n;
        n = next;
        current = probe;
    }
    std::ostringstream msg;
    msg << "observables not converged in n_max at the cap " << opts.n_max_limit
        << " (tolerance " << observable_tolerance << ")";
    throw TruncationError(msg.str());
}

} // namespace mpcav

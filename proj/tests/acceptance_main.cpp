// acceptance_main.cpp — end-to-end acceptance suite. Each criterion prints a
// single pass/fail line; the exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpcav/dynamics.hpp"
#include "mpcav/lindblad.hpp"
#include "mpcav/observables.hpp"
#include "mpcav/rate_matrix.hpp"
#include "mpcav/sweep.hpp"

using namespace mpcav;

namespace {

// Frozen calibration margins. The band values were measured once with this
// solver and then fixed as regression thresholds (measured at eta = 0.09:
// |g2(N=2) - 2| = 0.088, max_eta |g2(N=3) - g2(N=2)| = 0.030, worst N=2/N=3
// mean gap = 0.014).
constexpr double kFig1G2Margin = 0.05;   // |g2(N=2) - 2| at eta = 0.09 exceeds this
constexpr double kFig2G2Margin = 0.01;   // max |g2(N=3) - g2(N=2)| exceeds this
constexpr double kFig2MeanBand = 0.05;   // N=2 vs N=3 mean agreement band
constexpr double kFullMeanBand = 0.20;   // full-vs-effective mean band
constexpr double kFullG2Band = 0.25;     // full-vs-effective g2 band

// Truncation control for the figure-level criteria: margins asserted there
// are >= 0.01, so a 1e-6 observable tolerance is ample and keeps the probe
// ladder inside the expansion's validity window.
constexpr double kFigureTruncationTol = 1e-6;

struct GridPoint {
    double eta, xi, nbar, kappa;
};

std::vector<GridPoint> criterion_grid() {
    std::vector<GridPoint> grid;
    for (const double eta : {0.01, 0.02, 0.05, 0.1})
        for (const double xi : {0.0, 0.2, 0.5})
            for (const double nbar : {0.0, 0.1, 1.0})
                for (const double kappa : {1e-3, 1e-2})
                    grid.push_back({eta, xi, nbar, kappa});
    return grid;
}

ModelParams params_of(const GridPoint& g) {
    ModelParams p;
    p.gamma = 1.0;
    p.kappa = g.kappa;
    p.nbar = g.nbar;
    p.eta = g.eta;
    p.xi = g.xi;
    return p;
}

// Fock depth with the geometric tail (and its first two moments) below 1e-13.
int tail_truncation(const ModelParams& p) {
    const double mean = std::max(detailed_balance_coefficients(p).mean_photon, 1e-3);
    const double ratio = mean / (1.0 + mean);
    int n = 16;
    double tail = std::pow(ratio, n + 1);
    while (tail * (n + 1) * (n + 1) > 1e-13 && n < 480) {
        ++n;
        tail *= ratio;
    }
    return n + 8;
}

ObservableSet solve_observables(const ModelParams& p, int N, int n_max) {
    return observables_from(steady_state(build_rate_matrix(p, N, n_max)));
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int index, const char* name, const Outcome& outcome, double seconds) {
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                index, name, seconds, outcome.detail.empty() ? "" : " — ",
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
}

void run(int index, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(index, name, outcome, seconds);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << v;
    return out.str();
}

Outcome criterion_closed_form_and_g2(bool check_mean) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& g : criterion_grid()) {
        const ModelParams p = params_of(g);
        const int n_max = tail_truncation(p);
        const ObservableSet obs = solve_observables(p, 1, n_max);
        if (check_mean) {
            const double closed = detailed_balance_coefficients(p).mean_photon;
            const double gap = std::abs(obs.mean_n - closed) / closed;
            worst = std::max(worst, gap);
            if (gap > 1e-10) out.pass = false;
        } else {
            if (!obs.g2) {
                out.pass = false;
                continue;
            }
            const double gap = std::abs(*obs.g2 - 2.0);
            worst = std::max(worst, gap);
            if (gap > 1e-8) out.pass = false;
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check_mean && seconds >= 1.0) {
        out.pass = false;
        out.detail = "runtime " + fmt(seconds) + "s exceeds 1s; ";
    }
    out.detail += (check_mean ? "worst relative mean gap " : "worst |g2 - 2| ") + fmt(worst);
    return out;
}

Outcome criterion_generator_oracles() {
    Outcome out;
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> eta_dist(0.005, 0.1);
    std::uniform_real_distribution<double> xi_dist(0.0, 0.5);
    std::uniform_real_distribution<double> nbar_dist(0.0, 1.0);
    std::uniform_real_distribution<double> kappa_dist(1e-3, 1e-2);

    double worst = 0.0;
    int eta4_failures = 0;
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p;
        p.gamma = 1.0;
        p.eta = eta_dist(rng);
        p.xi = xi_dist(rng);
        p.nbar = nbar_dist(rng);
        p.kappa = kappa_dist(rng);

        const int n_max = 48;
        for (const int N : {1, 2}) {
            const RateMatrix engine = build_rate_matrix(p, N, n_max);
            const RateMatrix oracle = analytic_rate_matrix(p, N, n_max);
            const double scale = oracle.entries.cwiseAbs().maxCoeff();
            for (int n = 0; n <= n_max; ++n) {
                for (int m = 0; m <= n_max; ++m) {
                    const double a = engine(n, m), b = oracle(n, m);
                    const double denom = std::max(std::abs(a), std::abs(b));
                    const double gap = std::abs(a - b);
                    if (denom >= 1e-10 * scale) {
                        worst = std::max(worst, gap / denom);
                        if (gap > 1e-12 * denom) out.pass = false;
                    } else if (gap > 1e-12 * scale) {
                        out.pass = false;
                    }
                }
            }
        }
        if (!eta4_generator_check(p, 32)) {
            ++eta4_failures;
            out.pass = false;
        }
    }
    out.detail = "worst entrywise gap " + fmt(worst) + ", eta4 two-path failures " +
                 std::to_string(eta4_failures) + "/20";
    return out;
}

Outcome criterion_fig3() {
    Outcome out;
    ModelParams p;
    p.gamma = 1.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.xi = 0.0;

    p.eta = 0.07;
    const int n07 = adaptive_truncation(p, 5, kFigureTruncationTol);
    const PhotonDistribution low = steady_state(build_rate_matrix(p, 5, n07));
    p.eta = 0.09;
    const int n09 = adaptive_truncation(p, 5, kFigureTruncationTol);
    const PhotonDistribution high = steady_state(build_rate_matrix(p, 5, n09));

    if (!(low.p(2) > 0.1 && high.p(2) > 0.1)) out.pass = false;
    for (int n = 3; n <= 8; ++n)
        if (!(high.p(n) > low.p(n))) out.pass = false;
    out.detail = "P_2(0.07) = " + fmt(low.p(2)) + ", P_2(0.09) = " + fmt(high.p(2));
    return out;
}

Outcome criterion_fig2() {
    Outcome out;
    double worst_mean_gap = 0.0;
    double max_g2_gap = 0.0;
    for (int i = 0; i <= 8; ++i) {
        ModelParams p;
        p.gamma = 1.0;
        p.kappa = 1e-3;
        p.nbar = 0.1;
        p.xi = 0.0;
        p.eta = 0.01 + i * 0.01;
        const int n_max = std::max({adaptive_truncation(p, 2, kFigureTruncationTol),
                                    adaptive_truncation(p, 3, kFigureTruncationTol), 16});
        const ObservableSet two = solve_observables(p, 2, n_max);
        const ObservableSet three = solve_observables(p, 3, n_max);
        const double mean_gap = std::abs(three.mean_n - two.mean_n) / two.mean_n;
        worst_mean_gap = std::max(worst_mean_gap, mean_gap);
        if (mean_gap >= kFig2MeanBand) out.pass = false;
        if (two.g2 && three.g2)
            max_g2_gap = std::max(max_g2_gap, std::abs(*three.g2 - *two.g2));
    }
    if (!(max_g2_gap > kFig2G2Margin)) out.pass = false;
    out.detail = "worst mean gap " + fmt(worst_mean_gap) + " (< " + fmt(kFig2MeanBand) +
                 "), max g2 gap " + fmt(max_g2_gap) + " (> " + fmt(kFig2G2Margin) + ")";
    return out;
}

Outcome criterion_fig1() {
    Outcome out;
    ModelParams p;
    p.gamma = 1.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.xi = 0.0;
    p.eta = 0.09;
    const int n_max = std::max(adaptive_truncation(p, 2, kFigureTruncationTol), 16);
    const ObservableSet one = solve_observables(p, 1, n_max);
    const ObservableSet two = solve_observables(p, 2, n_max);
    if (!two.g2) return {false, "g2 undefined"};
    const double g2_gap = std::abs(*two.g2 - 2.0);
    const double mean_gap = std::abs(two.mean_n - one.mean_n) / one.mean_n;
    if (!(g2_gap > kFig1G2Margin)) out.pass = false;
    if (!(mean_gap > 1e-3)) out.pass = false;
    out.detail = "|g2 - 2| = " + fmt(g2_gap) + " (> " + fmt(kFig1G2Margin) +
                 "), mean gap " + fmt(mean_gap) + " (> 0.001)";
    return out;
}

Outcome criterion_full_vs_effective() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> gaps;
    for (const double eta : {0.02, 0.05}) {
        ModelParams p;
        p.gamma = 1.0;
        p.kappa = 1e-3;
        p.nbar = 0.1;
        p.xi = 0.0;
        p.eta = eta;
        p.omega = 50.0;
        p.Omega = 10.0;
        TruncationSpec truncation; // adaptive, tol 1e-8
        const ValidateResult result = run_validate(p, 2, truncation);
        gaps.push_back(result.mean_gap_rel);
        if (!result.solver_unique) out.pass = false;
        if (result.mean_gap_rel > kFullMeanBand) out.pass = false;
        if (result.g2_gap_rel && *result.g2_gap_rel > kFullG2Band) out.pass = false;
    }
    if (!(gaps[0] < gaps[1])) out.pass = false; // dispersive convergence in eta
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 60.0) out.pass = false;
    out.detail = "mean gaps " + fmt(gaps[0]) + " (eta 0.02) vs " + fmt(gaps[1]) +
                 " (eta 0.05), band " + fmt(kFullMeanBand);
    return out;
}

Outcome criterion_truncation_stability() {
    Outcome out;
    double worst = 0.0;
    for (const auto& g : criterion_grid()) {
        const ModelParams p = params_of(g);
        const int converged = adaptive_truncation(p, 1, 1e-8);
        const int larger = static_cast<int>(std::ceil(converged * 1.5));
        const ObservableSet a = solve_observables(p, 1, converged);
        const ObservableSet b = solve_observables(p, 1, larger);
        const double mean_gap =
            std::abs(a.mean_n - b.mean_n) / std::max({a.mean_n, b.mean_n, 1e-6});
        worst = std::max(worst, mean_gap);
        if (mean_gap >= 1e-6) out.pass = false;
        if (a.g2 && b.g2) {
            const double g2_gap = std::abs(*a.g2 - *b.g2) / std::max(*a.g2, *b.g2);
            worst = std::max(worst, g2_gap);
            if (g2_gap >= 1e-6) out.pass = false;
        }
    }
    out.detail = "worst relative drift " + fmt(worst);
    return out;
}

Outcome criterion_conservation_positivity() {
    Outcome out;
    double worst_column = 0.0, worst_entry = 0.0, worst_norm = 0.0;
    for (const auto& g : criterion_grid()) {
        const ModelParams p = params_of(g);
        for (const int N : {1, 2, 5}) {
            const RateMatrix W = build_rate_matrix(p, N, 64);
            const double scale = std::max(1.0, W.entries.cwiseAbs().maxCoeff());
            for (int m = 0; m <= W.n_max - W.bandwidth; ++m) {
                const double defect = std::abs(W.column_sum(m)) / scale;
                worst_column = std::max(worst_column, defect);
                if (defect > 1e-12) out.pass = false;
            }
        }
        for (const int N : {1, 2}) {
            const int n_max = adaptive_truncation(p, N, kFigureTruncationTol);
            const PhotonDistribution dist =
                steady_state(build_rate_matrix(p, N, n_max));
            worst_entry = std::min(worst_entry, dist.min_entry_before_clip);
            if (dist.min_entry_before_clip < -1e-8) out.pass = false;
            const double norm_defect = std::abs(dist.sum() - 1.0);
            worst_norm = std::max(worst_norm, norm_defect);
            if (norm_defect > 1e-10) out.pass = false;
        }
    }
    out.detail = "worst column defect " + fmt(worst_column) + ", most negative entry " +
                 fmt(worst_entry) + ", worst norm defect " + fmt(worst_norm);
    return out;
}

} // namespace

int main() {
    std::printf("mpcav acceptance suite\n");
    run(1, "closed-form N=1 mean photon number over the parameter grid",
        [] { return criterion_closed_form_and_g2(true); });
    run(2, "g2(0) = 2 for every N=1 steady state on the grid",
        [] { return criterion_closed_form_and_g2(false); });
    run(3, "generator matches the transcribed rate equations and the eta^4 route",
        criterion_generator_oracles);
    run(4, "five-photon distribution plateau (P_2 > 0.1, tail ordering)", criterion_fig3);
    run(5, "N=2 vs N=3: means overlap, g2 curves distinguishable", criterion_fig2);
    run(6, "N=2 statistics leave the thermal point at eta = 0.09", criterion_fig1);
    run(7, "full Lindblad vs effective model agreement and convergence",
        criterion_full_vs_effective);
    run(8, "observables stable under 50% truncation growth", criterion_truncation_stability);
    run(9, "probability conservation and steady-state positivity",
        criterion_conservation_positivity);

    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}

#pragma once

#include <cstdint>
#include <vector>

#include "sklab/gibbs.hpp"
#include "sklab/linear_model.hpp"
#include "sklab/rs_solver.hpp"
#include "sklab/stats.hpp"

namespace sklab {

// Disorder-averaged free energy (1/n) E[log Z_n] over `samples` independent
// realizations seeded by derive_seed(seed, i).
MeanStdErr quenched_free_energy(const SpinDistribution& dist, int n, const GibbsParams& p,
                                int samples, std::uint64_t seed, int workers = 0);

// One finite-difference-vs-bracket comparison. `diff_*` summarize the
// per-sample discrepancy (common random numbers across the stencil).
struct DerivativeCheck {
    bool checked{};
    double fd{};
    double bracket{};
    double diff_mean{};
    double diff_std_err{};
};

struct IbpSingleReport {
    int n{}, samples{};
    double step{};
    DerivativeCheck dt;  // d alpha/dt vs -(1/2)<qbar^2>
    DerivativeCheck dx;  // d alpha/dx vs -(1/2)<qbar>
};

IbpSingleReport verify_ibp_single(const SpinDistribution& dist, int n, const GibbsParams& p,
                                  int samples, std::uint64_t seed, int workers = 0,
                                  double step = 1e-3);

struct IbpCoupledReport {
    int n{}, samples{};
    double step{}, lambda{}, q{};
    DerivativeCheck dt;       // d beta/dt vs (1/2)<qbar_12^2 - 2 qbar_13^2>
    DerivativeCheck dx;       // d beta/dx vs (1/2)<qbar_12 - 2 qbar_13>
    DerivativeCheck dlambda;  // d beta/dlambda vs (1/2)<(q - qbar_12)^2>
};

IbpCoupledReport verify_ibp_coupled(const SpinDistribution& dist, int n, const GibbsParams& p,
                                    double lambda, double q, int samples, std::uint64_t seed,
                                    int workers = 0, double step = 1e-3);

// Guerra trajectory x(s) = x0 - 2qs, x0 = 2qt, evaluated on a uniform s-grid
// with the same disorder at every grid point.
struct InterpolationReport {
    int n{}, steps{}, samples{};
    double t{}, x0{}, q{};
    std::vector<double> s_grid;
    std::vector<double> alpha_tilde, alpha_se;  // (1/n) E log Ztilde along the path
    std::vector<double> h_n;                    // alpha(0,x0) + (s/2)q^2 - alpha(s,x(s))
    // interior grid points (aligned with s_grid[1..steps-1]):
    std::vector<double> deriv_fd, deriv_fd_se;
    std::vector<double> deriv_bracket;          // (1/2)(q^2 - <(qbar-q)^2>)
    std::vector<double> deriv_diff_mean, deriv_diff_se;
    double identity_max_abs{};                  // max_j |deriv_diff_mean[j]|
    int identity_violations{};                  // |diff| > max(1e-4, 3 se)
    int deriv_bound_violations{};               // fd > q^2/2 + max(1e-4, 3 se)
    double sum_rule_residual{};                 // |mean per-sample residual| of the sum rule
    double sum_rule_se{};
    double trapezoid_error{};                   // step-halving estimate for the integral term
    double sum_rule_tolerance{};                // trapezoid_error + 3 * sum_rule_se
};

InterpolationReport interpolation_experiment(const SpinDistribution& dist, int n, double t,
                                             double h, double q, int steps, int samples,
                                             std::uint64_t seed, int workers = 0);

// E log < exp(lambda n (qbar - q)^2) > at t = 0, q = q_lin(x), for each n.
struct ConcentrationPoint {
    int n{};
    double value{};
    double std_err{};
};

struct ConcentrationReport {
    double x{}, h{}, lambda{}, q{};
    int samples{};
    bool outside_regime{};  // lambda > 1/20: outside the proved regime, still computed
    std::vector<ConcentrationPoint> points;
};

ConcentrationReport concentration_experiment(const SpinDistribution& dist,
                                             const std::vector<int>& n_list, double x, double h,
                                             double lambda, int samples, std::uint64_t seed,
                                             int workers = 0, int hermite_order = 61);

// alpha_n(t) vs the replica-symmetric limit for an n-sweep.
struct ConvergenceRow {
    int n{};
    double alpha_n{}, std_err{};
    double alpha_inf{};
    double gap{};  // alpha_n - alpha_inf
};

struct ConvergenceReport {
    double t{}, h{}, q_c{}, t_c{}, alpha_inf{};
    bool solver_converged{};
    int samples{};
    std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_experiment(const SpinDistribution& dist,
                                         const std::vector<int>& n_list, double t, double h,
                                         int samples, std::uint64_t seed, int workers = 0,
                                         int hermite_order = 61);

}

#include "sklab/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace sklab {

namespace {

DerivativeCheck summarize_check(const std::vector<double>& fd, const std::vector<double>& bracket) {
    DerivativeCheck c;
    if (fd.empty()) return c;
    c.checked = true;
    std::vector<double> diff(fd.size());
    for (std::size_t i = 0; i < fd.size(); ++i) diff[i] = fd[i] - bracket[i];
    c.fd = mean_stderr(fd).mean;
    c.bracket = mean_stderr(bracket).mean;
    const auto d = mean_stderr(diff);
    c.diff_mean = d.mean;
    c.diff_std_err = d.std_err;
    return c;
}

}  // namespace

MeanStdErr quenched_free_energy(const SpinDistribution& dist, int n, const GibbsParams& p,
                                int samples, std::uint64_t seed, int workers) {
    if (samples < 2) throw std::invalid_argument("quenched_free_energy: need samples >= 2");
    check_single_budget(dist, n);
    std::vector<double> alpha(samples);
    parallel_for(samples, workers, [&](int i) {
        const auto d = sample_disorder(n, derive_seed(seed, i));
        alpha[i] = log_z_exact(d, dist, p) / n;
    });
    return mean_stderr(alpha);
}

IbpSingleReport verify_ibp_single(const SpinDistribution& dist, int n, const GibbsParams& p,
                                  int samples, std::uint64_t seed, int workers, double step) {
    if (samples < 2) throw std::invalid_argument("verify_ibp_single: need samples >= 2");
    check_single_budget(dist, n);
    IbpSingleReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.step = step;
    const bool do_t = p.t >= step;
    const bool do_x = p.x >= step;

    std::vector<double> fdt(do_t ? samples : 0), brt(do_t ? samples : 0);
    std::vector<double> fdx(do_x ? samples : 0), brx(do_x ? samples : 0);
    parallel_for(samples, workers, [&](int i) {
        const auto d = sample_disorder(n, derive_seed(seed, i));
        const auto center = gibbs_overlap_moments(d, dist, p);
        if (do_t) {
            GibbsParams up = p, dn = p;
            up.t += step;
            dn.t -= step;
            fdt[i] = (log_z_exact(d, dist, up) - log_z_exact(d, dist, dn)) / (2.0 * step * n);
            brt[i] = -0.5 * center.mean_overlap_sq;
        }
        if (do_x) {
            GibbsParams up = p, dn = p;
            up.x += step;
            dn.x -= step;
            fdx[i] = (log_z_exact(d, dist, up) - log_z_exact(d, dist, dn)) / (2.0 * step * n);
            brx[i] = -0.5 * center.mean_overlap;
        }
    });
    rep.dt = summarize_check(fdt, brt);
    rep.dx = summarize_check(fdx, brx);
    return rep;
}

IbpCoupledReport verify_ibp_coupled(const SpinDistribution& dist, int n, const GibbsParams& p,
                                    double lambda, double q, int samples, std::uint64_t seed,
                                    int workers, double step) {
    if (samples < 2) throw std::invalid_argument("verify_ibp_coupled: need samples >= 2");
    check_coupled_budget(dist, n);
    IbpCoupledReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.step = step;
    rep.lambda = lambda;
    rep.q = q;
    const bool do_t = p.t >= step;
    const bool do_x = p.x >= step;

    auto beta = [&](const DisorderSample& d, const GibbsParams& pp, double lam) {
        return coupled_pair_report(d, dist, pp, lam, q, CouplingForm::QuadraticOverlap,
                                   /*with_moments=*/false)
                   .log_z /
               (2.0 * n);
    };

    std::vector<double> fdt(do_t ? samples : 0), brt(do_t ? samples : 0);
    std::vector<double> fdx(do_x ? samples : 0), brx(do_x ? samples : 0);
    std::vector<double> fdl(samples), brl(samples);
    parallel_for(samples, workers, [&](int i) {
        const auto d = sample_disorder(n, derive_seed(seed, i));
        const auto center = coupled_pair_report(d, dist, p, lambda, q);
        if (do_t) {
            GibbsParams up = p, dn = p;
            up.t += step;
            dn.t -= step;
            fdt[i] = (beta(d, up, lambda) - beta(d, dn, lambda)) / (2.0 * step);
            brt[i] = 0.5 * (center.overlap_sq - 2.0 * center.cross_overlap_sq());
        }
        if (do_x) {
            GibbsParams up = p, dn = p;
            up.x += step;
            dn.x -= step;
            fdx[i] = (beta(d, up, lambda) - beta(d, dn, lambda)) / (2.0 * step);
            brx[i] = 0.5 * (center.overlap - 2.0 * center.cross_overlap());
        }
        // the coupling extends smoothly to lambda < 0, so the centered stencil is fine at lambda = 0
        fdl[i] = (beta(d, p, lambda + step) - beta(d, p, lambda - step)) / (2.0 * step);
        brl[i] = 0.5 * center.sq_dev;
    });
    rep.dt = summarize_check(fdt, brt);
    rep.dx = summarize_check(fdx, brx);
    rep.dlambda = summarize_check(fdl, brl);
    return rep;
}

InterpolationReport interpolation_experiment(const SpinDistribution& dist, int n, double t,
                                             double h, double q, int steps, int samples,
                                             std::uint64_t seed, int workers) {
    if (!(t >= 0.0)) throw std::invalid_argument("interpolation_experiment: t must be >= 0");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("interpolation_experiment: q must be in [0, 1]");
    if (steps < 2 || steps % 2 != 0)
        throw std::invalid_argument("interpolation_experiment: steps must be even and >= 2");
    if (samples < 2) throw std::invalid_argument("interpolation_experiment: need samples >= 2");
    check_single_budget(dist, n);

    InterpolationReport rep;
    rep.n = n;
    rep.steps = steps;
    rep.samples = samples;
    rep.t = t;
    rep.q = q;
    rep.x0 = 2.0 * q * t;
    const int points = steps + 1;
    rep.s_grid.resize(points);
    std::vector<double> x_grid(points);
    for (int j = 0; j < points; ++j) {
        rep.s_grid[j] = t * (static_cast<double>(j) / steps);
        x_grid[j] = std::max(0.0, rep.x0 - 2.0 * q * rep.s_grid[j]);
    }
    const double ds = t / steps;

    // alpha[i][j] = (1/n) log Ztilde, bdev[i][j] = <(qbar - q)^2>, same disorder for all j
    std::vector<std::vector<double>> alpha(samples), bdev(samples);
    parallel_for(samples, workers, [&](int i) {
        const auto d = sample_disorder(n, derive_seed(seed, i));
        alpha[i].resize(points);
        bdev[i].resize(points);
        for (int j = 0; j < points; ++j) {
            const auto r = gibbs_overlap_moments(d, dist, {rep.s_grid[j], x_grid[j], h});
            alpha[i][j] = r.log_z / n;
            bdev[i][j] = r.mean_overlap_sq - 2.0 * q * r.mean_overlap + q * q;
        }
    });

    rep.alpha_tilde.resize(points);
    rep.alpha_se.resize(points);
    rep.h_n.resize(points);
    std::vector<double> mean_bdev(points);
    std::vector<double> column(samples);
    for (int j = 0; j < points; ++j) {
        for (int i = 0; i < samples; ++i) column[i] = alpha[i][j];
        const auto a = mean_stderr(column);
        rep.alpha_tilde[j] = a.mean;
        rep.alpha_se[j] = a.std_err;
        for (int i = 0; i < samples; ++i) column[i] = alpha[i][0] + 0.5 * rep.s_grid[j] * q * q - alpha[i][j];
        rep.h_n[j] = mean_stderr(column).mean;
        for (int i = 0; i < samples; ++i) column[i] = bdev[i][j];
        mean_bdev[j] = mean_stderr(column).mean;
    }

    if (ds > 0.0) {
        const int interior = steps - 1;
        rep.deriv_fd.resize(interior);
        rep.deriv_fd_se.resize(interior);
        rep.deriv_bracket.resize(interior);
        rep.deriv_diff_mean.resize(interior);
        rep.deriv_diff_se.resize(interior);
        std::vector<double> fd(samples), diff(samples);
        for (int j = 1; j < steps; ++j) {
            for (int i = 0; i < samples; ++i) {
                fd[i] = (alpha[i][j + 1] - alpha[i][j - 1]) / (2.0 * ds);
                diff[i] = fd[i] - 0.5 * (q * q - bdev[i][j]);
            }
            const auto f = mean_stderr(fd);
            const auto dd = mean_stderr(diff);
            rep.deriv_fd[j - 1] = f.mean;
            rep.deriv_fd_se[j - 1] = f.std_err;
            rep.deriv_bracket[j - 1] = f.mean - dd.mean;
            rep.deriv_diff_mean[j - 1] = dd.mean;
            rep.deriv_diff_se[j - 1] = dd.std_err;
            rep.identity_max_abs = std::max(rep.identity_max_abs, std::abs(dd.mean));
            if (std::abs(dd.mean) > std::max(1e-4, 3.0 * dd.std_err)) ++rep.identity_violations;
            if (f.mean > 0.5 * q * q + std::max(1e-4, 3.0 * f.std_err)) ++rep.deriv_bound_violations;
        }
    }

    // sum rule: alpha(t,0) = alpha(0,x0) + (t/2) q^2 - (1/2) integral <(q-qbar)^2> ds
    auto trapezoid = [&](const std::vector<double>& y, int stride) {
        double acc = 0.0;
        for (int j = 0; j + stride <= steps; j += stride)
            acc += 0.5 * (y[j] + y[j + stride]) * (stride * ds);
        return acc;
    };
    std::vector<double> residual(samples);
    for (int i = 0; i < samples; ++i)
        residual[i] = alpha[i][steps] - alpha[i][0] - 0.5 * t * q * q + 0.5 * trapezoid(bdev[i], 1);
    const auto r = mean_stderr(residual);
    rep.sum_rule_residual = std::abs(r.mean);
    rep.sum_rule_se = r.std_err;
    const double t_full = 0.5 * trapezoid(mean_bdev, 1);
    const double t_half = 0.5 * trapezoid(mean_bdev, 2);
    rep.trapezoid_error = std::abs(t_half - t_full) / 3.0;
    rep.sum_rule_tolerance = rep.trapezoid_error + 3.0 * rep.sum_rule_se + 1e-12;
    return rep;
}

ConcentrationReport concentration_experiment(const SpinDistribution& dist,
                                             const std::vector<int>& n_list, double x, double h,
                                             double lambda, int samples, std::uint64_t seed,
                                             int workers, int hermite_order) {
    if (!(x >= 0.0) || !(h >= 0.0) || !(lambda >= 0.0))
        throw std::invalid_argument("concentration_experiment: x, h, lambda must be >= 0");
    if (samples < 2) throw std::invalid_argument("concentration_experiment: need samples >= 2");
    for (int n : n_list) check_coupled_budget(dist, n);

    ConcentrationReport rep;
    rep.x = x;
    rep.h = h;
    rep.lambda = lambda;
    rep.samples = samples;
    rep.outside_regime = lambda > 1.0 / 20.0;
    const LinearModelAnalytics la(PhiEvaluator(dist), HermiteRule(hermite_order), h);
    rep.q = la.q_lin(x);

    const GibbsParams p{0.0, x, h};
    for (int n : n_list) {
        std::vector<double> vals(samples);
        parallel_for(samples, workers, [&](int i) {
            const auto d = sample_disorder(n, derive_seed(seed, i));
            const double coupled = coupled_pair_report(d, dist, p, lambda, rep.q,
                                                       CouplingForm::QuadraticOverlap,
                                                       /*with_moments=*/false)
                                       .log_z;
            // Ztilde(0) factorizes into the single-replica partition function squared
            vals[i] = coupled - 2.0 * log_z_exact(d, dist, p);
        });
        const auto m = mean_stderr(vals);
        rep.points.push_back({n, m.mean, m.std_err});
    }
    return rep;
}

ConvergenceReport convergence_experiment(const SpinDistribution& dist,
                                         const std::vector<int>& n_list, double t, double h,
                                         int samples, std::uint64_t seed, int workers,
                                         int hermite_order) {
    for (int n : n_list) check_single_budget(dist, n);
    const LinearModelAnalytics la(PhiEvaluator(dist), HermiteRule(hermite_order), h);
    const RSSolution sol = solve_fixed_point(la, t);

    ConvergenceReport rep;
    rep.t = t;
    rep.h = h;
    rep.q_c = sol.q_c;
    rep.t_c = sol.t_c;
    rep.alpha_inf = sol.alpha_inf;
    rep.solver_converged = sol.converged;
    rep.samples = samples;
    for (int n : n_list) {
        const auto a = quenched_free_energy(dist, n, {t, 0.0, h}, samples, seed, workers);
        rep.rows.push_back({n, a.mean, a.std_err, sol.alpha_inf, a.mean - sol.alpha_inf});
    }
    return rep;
}

}

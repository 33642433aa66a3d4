#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "sklab/config.hpp"
#include "sklab/experiments.hpp"
#include "sklab/version.hpp"

namespace sklab {

using nlohmann::json;

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("could not open output file '" + path + "'");
    out << text << "\n";
}

LinearModelAnalytics make_analytics(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    return LinearModelAnalytics(PhiEvaluator(dist), HermiteRule(cfg.hermite_order), cfg.h);
}

json check_to_json(const DerivativeCheck& c) {
    json j;
    j["checked"] = c.checked;
    if (c.checked) {
        j["fd"] = c.fd;
        j["bracket"] = c.bracket;
        j["diff_mean"] = c.diff_mean;
        j["diff_std_err"] = c.diff_std_err;
    }
    return j;
}

json solution_to_json(const RSSolution& s) {
    return json{{"t", s.t},
                {"h", s.h},
                {"q_c", s.q_c},
                {"alpha_inf", s.alpha_inf},
                {"t_c", s.t_c},
                {"iterations", s.iterations},
                {"residual", s.residual},
                {"converged", s.converged},
                {"unique_regime", s.unique_regime}};
}

struct CommandResult {
    json report;
    std::string csv;
    int exit_code = kExitOk;
};

CommandResult run_rs_solve(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    const auto la = make_analytics(cfg, dist);
    FixedPointOptions opts;
    opts.lipschitz_xmax = cfg.lipschitz_xmax;
    const RSSolution sol = solve_fixed_point(la, cfg.t, opts);
    CommandResult res;
    res.report = solution_to_json(sol);
    if (!sol.converged) res.exit_code = kExitNumerical;
    return res;
}

CommandResult run_linear(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    const auto la = make_analytics(cfg, dist);
    const double x_max = cfg.x > 0.0 ? cfg.x : cfg.lipschitz_xmax;
    const int points = cfg.steps + 1;

    json grid = json::array();
    std::ostringstream csv;
    csv << "x,q_lin,alpha_lin,dq_lin_dx\n";
    for (int i = 0; i < points; ++i) {
        const double x = x_max * static_cast<double>(i) / cfg.steps;
        const double ql = la.q_lin(x);
        const double al = la.alpha_lin(x);
        const double dq = la.dq_lin_dx(x);
        grid.push_back({{"x", x}, {"q_lin", ql}, {"alpha_lin", al}, {"dq_lin_dx", dq}});
        csv << x << "," << ql << "," << al << "," << dq << "\n";
    }
    const double c = la.lipschitz_bound(cfg.lipschitz_xmax);
    CommandResult res;
    res.report = {{"h", cfg.h},
                  {"x_max", x_max},
                  {"lipschitz_C", c},
                  {"t_c", 1.0 / (4.0 * c)},
                  {"grid", grid}};
    res.csv = csv.str();
    return res;
}

CommandResult run_simulate(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    const auto rep = convergence_experiment(dist, cfg.n_list, cfg.t, cfg.h, cfg.samples, cfg.seed,
                                            cfg.workers, cfg.hermite_order);
    json rows = json::array();
    std::ostringstream csv;
    csv << "n,alpha_n,std_err,alpha_inf,gap\n";
    for (const auto& r : rep.rows) {
        rows.push_back({{"n", r.n},
                        {"alpha_n", r.alpha_n},
                        {"std_err", r.std_err},
                        {"alpha_inf", r.alpha_inf},
                        {"gap", r.gap}});
        csv << r.n << "," << r.alpha_n << "," << r.std_err << "," << r.alpha_inf << "," << r.gap
            << "\n";
    }
    CommandResult res;
    res.report = {{"t", rep.t},       {"h", rep.h},
                  {"q_c", rep.q_c},   {"t_c", rep.t_c},
                  {"alpha_inf", rep.alpha_inf}, {"solver_converged", rep.solver_converged},
                  {"samples", rep.samples},     {"rows", rows}};
    res.csv = csv.str();
    if (!rep.solver_converged) res.exit_code = kExitNumerical;
    return res;
}

CommandResult run_interpolate(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    CommandResult res;
    double q;
    if (cfg.q) {
        q = *cfg.q;
    } else {
        const auto la = make_analytics(cfg, dist);
        FixedPointOptions opts;
        opts.lipschitz_xmax = cfg.lipschitz_xmax;
        const RSSolution sol = solve_fixed_point(la, cfg.t, opts);
        if (!sol.converged) {
            res.report = {{"error", "fixed-point solver did not converge"},
                          {"solution", solution_to_json(sol)}};
            res.exit_code = kExitNumerical;
            return res;
        }
        q = sol.q_c;
    }
    const auto rep = interpolation_experiment(dist, cfg.n_list.front(), cfg.t, cfg.h, q, cfg.steps,
                                              cfg.samples, cfg.seed, cfg.workers);
    res.report = {{"n", rep.n},
                  {"steps", rep.steps},
                  {"samples", rep.samples},
                  {"t", rep.t},
                  {"x0", rep.x0},
                  {"q", rep.q},
                  {"s_grid", rep.s_grid},
                  {"alpha_tilde", rep.alpha_tilde},
                  {"alpha_se", rep.alpha_se},
                  {"h_n_values", rep.h_n},
                  {"deriv_fd", rep.deriv_fd},
                  {"deriv_fd_se", rep.deriv_fd_se},
                  {"deriv_bracket", rep.deriv_bracket},
                  {"deriv_diff_mean", rep.deriv_diff_mean},
                  {"deriv_diff_se", rep.deriv_diff_se},
                  {"identity_max_abs", rep.identity_max_abs},
                  {"identity_violations", rep.identity_violations},
                  {"deriv_bound_violations", rep.deriv_bound_violations},
                  {"sum_rule_residual", rep.sum_rule_residual},
                  {"sum_rule_se", rep.sum_rule_se},
                  {"trapezoid_error", rep.trapezoid_error},
                  {"sum_rule_tolerance", rep.sum_rule_tolerance}};
    std::ostringstream csv;
    csv << "s,x,alpha_tilde,alpha_se,h_n,deriv_fd,deriv_bracket\n";
    for (std::size_t j = 0; j < rep.s_grid.size(); ++j) {
        csv << rep.s_grid[j] << "," << std::max(0.0, rep.x0 - 2 * rep.q * rep.s_grid[j]) << ","
            << rep.alpha_tilde[j] << "," << rep.alpha_se[j] << "," << rep.h_n[j] << ",";
        if (j >= 1 && j < rep.s_grid.size() - 1 && !rep.deriv_fd.empty())
            csv << rep.deriv_fd[j - 1] << "," << rep.deriv_bracket[j - 1];
        else
            csv << ",";
        csv << "\n";
    }
    res.csv = csv.str();
    return res;
}

CommandResult run_verify_ibp(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    const GibbsParams p{cfg.t, cfg.x, cfg.h};
    double q;
    if (cfg.q) {
        q = *cfg.q;
    } else {
        q = make_analytics(cfg, dist).q_lin(cfg.x);
    }

    json singles = json::array();
    json coupleds = json::array();
    for (int n : cfg.n_list) {
        const auto rep = verify_ibp_single(dist, n, p, cfg.samples, cfg.seed, cfg.workers);
        singles.push_back({{"n", rep.n},
                           {"samples", rep.samples},
                           {"step", rep.step},
                           {"dt", check_to_json(rep.dt)},
                           {"dx", check_to_json(rep.dx)}});
    }
    for (int n : cfg.n_list) {
        try {
            check_coupled_budget(dist, n);
        } catch (const BudgetError&) {
            continue;  // coupled pairs square the state space; skip oversized n
        }
        const auto rep =
            verify_ibp_coupled(dist, n, p, cfg.lambda, q, cfg.samples, cfg.seed, cfg.workers);
        coupleds.push_back({{"n", rep.n},
                            {"samples", rep.samples},
                            {"step", rep.step},
                            {"lambda", rep.lambda},
                            {"q", rep.q},
                            {"dt", check_to_json(rep.dt)},
                            {"dx", check_to_json(rep.dx)},
                            {"dlambda", check_to_json(rep.dlambda)}});
    }
    CommandResult res;
    res.report = {{"t", cfg.t},  {"x", cfg.x},       {"h", cfg.h},
                  {"lambda", cfg.lambda}, {"q", q},
                  {"single", singles},    {"coupled", coupleds}};
    return res;
}

CommandResult run_concentration(const ExperimentConfig& cfg, const SpinDistribution& dist) {
    const auto rep = concentration_experiment(dist, cfg.n_list, cfg.x, cfg.h, cfg.lambda,
                                              cfg.samples, cfg.seed, cfg.workers,
                                              cfg.hermite_order);
    json points = json::array();
    std::ostringstream csv;
    csv << "n,value,std_err\n";
    for (const auto& pt : rep.points) {
        points.push_back({{"n", pt.n}, {"value", pt.value}, {"std_err", pt.std_err}});
        csv << pt.n << "," << pt.value << "," << pt.std_err << "\n";
    }
    CommandResult res;
    res.report = {{"x", rep.x},         {"h", rep.h},
                  {"lambda", rep.lambda}, {"q", rep.q},
                  {"samples", rep.samples}, {"outside_regime", rep.outside_regime},
                  {"points", points}};
    res.csv = csv.str();
    return res;
}

void emit_error(const ExperimentConfig* cfg, int code, const std::string& message) {
    json doc;
    doc["error"] = {{"exit_code", code}, {"message", message}};
    const std::string text = doc.dump(2);
    if (cfg && !cfg->out.empty()) {
        try {
            write_text(cfg->out, text);
            return;
        } catch (...) {
        }
    }
    std::cout << text << std::endl;
}

}  // namespace

int run(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.validate();
        const SpinDistribution dist = cfg.dist.build();

        CommandResult result;
        if (cfg.command == "rs-solve")
            result = run_rs_solve(cfg, dist);
        else if (cfg.command == "linear")
            result = run_linear(cfg, dist);
        else if (cfg.command == "simulate")
            result = run_simulate(cfg, dist);
        else if (cfg.command == "interpolate")
            result = run_interpolate(cfg, dist);
        else if (cfg.command == "verify-ibp")
            result = run_verify_ibp(cfg, dist);
        else if (cfg.command == "concentration")
            result = run_concentration(cfg, dist);
        else
            throw ConfigError("unknown command '" + cfg.command + "'");

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json doc;
        doc["version"] = std::string("sklab ") + kVersion;
        doc["command"] = cfg.command;
        doc["generated_at"] = iso_timestamp();
        doc["wall_time_seconds"] = wall;
        doc["config"] = json::parse(config_to_json_string(cfg));
        doc["report"] = result.report;
        write_text(cfg.out, doc.dump(2));
        if (!cfg.csv.empty() && !result.csv.empty()) write_text(cfg.csv, result.csv);
        return result.exit_code;
    } catch (const ConfigError& e) {
        emit_error(&cfg, kExitConfig, e.what());
        return kExitConfig;
    } catch (const BudgetError& e) {
        emit_error(&cfg, kExitBudget, e.what());
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        emit_error(&cfg, kExitConfig, e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        emit_error(&cfg, kExitNumerical, e.what());
        return kExitNumerical;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const ExperimentConfig cfg = parse_cli(args);
        return run(cfg);
    } catch (const HelpRequested& e) {
        std::cout << e.what() << std::endl;
        return kExitOk;
    } catch (const ConfigError& e) {
        emit_error(nullptr, kExitConfig, e.what());
        return kExitConfig;
    }
}

}

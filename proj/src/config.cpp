#include "sklab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace sklab {

using nlohmann::json;

SpinDistribution DistSpec::build() const {
    try {
        if (kind == "rademacher") return SpinDistribution::rademacher();
        if (kind == "uniform") return SpinDistribution::uniform(nodes);
        if (kind == "discrete") return SpinDistribution::discrete_symmetric(atoms);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid spin distribution: ") + e.what());
    }
    throw ConfigError("unknown spin distribution kind '" + kind +
                      "' (expected rademacher, uniform or discrete)");
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> commands = {"rs-solve",    "linear",     "simulate",
                                                   "interpolate", "verify-ibp", "concentration"};
    if (!commands.count(command)) throw ConfigError("unknown command '" + command + "'");
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("t must be a finite number >= 0");
    if (!(h >= 0.0) || !std::isfinite(h)) throw ConfigError("h must be a finite number >= 0");
    if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError("x must be a finite number >= 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw ConfigError("lambda must be a finite number >= 0");
    if (q && (!(*q >= 0.0 && *q <= 1.0))) throw ConfigError("q must be in [0, 1]");
    if (hermite_order < 1) throw ConfigError("hermite_order must be >= 1");
    if (!(lipschitz_xmax > 0.0)) throw ConfigError("lipschitz_xmax must be > 0");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (n_list.empty()) throw ConfigError("n list must not be empty");
    for (int n : n_list)
        if (n < 1) throw ConfigError("every n must be >= 1");

    const bool sampled = command == "simulate" || command == "interpolate" ||
                         command == "verify-ibp" || command == "concentration";
    if (sampled && samples < 2) throw ConfigError("samples must be >= 2");
    if (command == "interpolate" && (steps < 2 || steps % 2 != 0))
        throw ConfigError("steps must be even and >= 2");
    if (command == "linear" && steps < 1) throw ConfigError("steps must be >= 1");
    dist.build();  // surface distribution errors as config errors
}

namespace {

json dist_to_json(const DistSpec& d) {
    json j;
    j["kind"] = d.kind;
    if (d.kind == "uniform") j["nodes"] = d.nodes;
    if (d.kind == "discrete") {
        json atoms = json::array();
        for (const auto& a : d.atoms) atoms.push_back({a.value, a.weight});
        j["atoms"] = atoms;
    }
    return j;
}

void dist_from_json(const json& j, DistSpec& d) {
    if (j.is_string()) {
        d.kind = j.get<std::string>();
        return;
    }
    if (!j.is_object()) throw ConfigError("dist must be a string or an object");
    if (j.contains("kind")) d.kind = j.at("kind").get<std::string>();
    if (j.contains("nodes")) d.nodes = j.at("nodes").get<int>();
    if (j.contains("atoms")) {
        d.atoms.clear();
        for (const auto& pair : j.at("atoms")) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("dist.atoms must be an array of [value, weight] pairs");
            d.atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["command"] = c.command;
    j["dist"] = dist_to_json(c.dist);
    j["t"] = c.t;
    j["h"] = c.h;
    j["x"] = c.x;
    j["lambda"] = c.lambda;
    j["q"] = c.q ? json(*c.q) : json(nullptr);
    j["n"] = c.n_list;
    j["samples"] = c.samples;
    j["steps"] = c.steps;
    j["seed"] = c.seed;
    j["hermite_order"] = c.hermite_order;
    j["lipschitz_xmax"] = c.lipschitz_xmax;
    j["workers"] = c.workers;
    return j;
}

void config_from_json(const json& doc, ExperimentConfig& c) {
    const json& j = doc.contains("config") ? doc.at("config") : doc;
    try {
        if (j.contains("command")) c.command = j.at("command").get<std::string>();
        if (j.contains("dist")) dist_from_json(j.at("dist"), c.dist);
        if (j.contains("t")) c.t = j.at("t").get<double>();
        if (j.contains("h")) c.h = j.at("h").get<double>();
        if (j.contains("x")) c.x = j.at("x").get<double>();
        if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
        if (j.contains("q") && !j.at("q").is_null()) c.q = j.at("q").get<double>();
        if (j.contains("n")) {
            if (j.at("n").is_array())
                c.n_list = j.at("n").get<std::vector<int>>();
            else
                c.n_list = {j.at("n").get<int>()};
        }
        if (j.contains("samples")) c.samples = j.at("samples").get<int>();
        if (j.contains("steps")) c.steps = j.at("steps").get<int>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("hermite_order")) c.hermite_order = j.at("hermite_order").get<int>();
        if (j.contains("lipschitz_xmax")) c.lipschitz_xmax = j.at("lipschitz_xmax").get<double>();
        if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("could not parse n list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty n list");
    return out;
}

}  // namespace

std::string config_to_json_string(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2);
}

ExperimentConfig config_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("could not parse config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    config_from_json(doc, cfg);
    return cfg;
}

ExperimentConfig parse_cli(const std::vector<std::string>& args) {
    CLI::App app{"sklab: replica-symmetric solver and finite-n laboratory for the "
                 "Sherrington-Kirkpatrick model with general bounded symmetric spins"};
    app.require_subcommand(1);

    std::string config_path, dist_name, n_text, atoms_text, out_path, csv_path;
    int dist_nodes = 32, samples = 0, steps = 0, hermite = 0, workers = -1;
    double t = 0, h = 0, x = 0, lambda = 0, qval = 0, xmax = 0;
    std::uint64_t seed = 0;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"rs-solve", "solve q = qbar(2qt) and report the RS free energy"},
        {"linear", "tabulate linear-model analytics q_lin / alpha_lin / dq_lin_dx"},
        {"simulate", "quenched alpha_n vs the RS limit over an n-sweep"},
        {"interpolate", "Guerra trajectory: derivative identity, sum rule, h_n"},
        {"verify-ibp", "Gaussian integration-by-parts derivative checks"},
        {"concentration", "overlap concentration log<exp(lambda n (qbar-q)^2)> vs n"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--dist", dist_name, "spin law: rademacher | uniform | discrete");
        sub->add_option("--dist-nodes", dist_nodes, "uniform law discretization order (even)");
        sub->add_option("--atoms", atoms_text, "discrete law atoms as JSON [[value,weight],...]");
        sub->add_option("--t", t, "temperature parameter (beta^2/2 normalization)");
        sub->add_option("--h", h, "external field strength");
        sub->add_option("--x", x, "linear-model variance parameter");
        sub->add_option("--lambda", lambda, "overlap coupling strength");
        sub->add_option("--q", qval, "overlap target (default: solver fixed point)");
        sub->add_option("--n", n_text, "system size or comma-separated list, e.g. 8,12,16");
        sub->add_option("--samples", samples, "disorder samples");
        sub->add_option("--steps", steps, "grid steps (interpolate: even; linear: grid size)");
        sub->add_option("--seed", seed, "master seed (default 12345, always recorded)");
        sub->add_option("--hermite-order", hermite, "Gauss-Hermite order (default 61)");
        sub->add_option("--lipschitz-xmax", xmax, "x range for the Lipschitz scan (default 4)");
        sub->add_option("--workers", workers, "worker threads (0 = auto; SKLAB_WORKERS env)");
        sub->add_option("--out", out_path, "result JSON path (default stdout)");
        sub->add_option("--csv", csv_path, "optional CSV table path");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    CLI::App* sub = app.get_subcommands().front();

    ExperimentConfig cfg;
    cfg.command = sub->get_name();
    if (sub->count("--config")) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("could not open config file '" + config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        json doc;
        try {
            doc = json::parse(buf.str());
        } catch (const json::exception& e) {
            throw ConfigError(std::string("could not parse config JSON: ") + e.what());
        }
        config_from_json(doc, cfg);
        cfg.command = sub->get_name();  // the subcommand always wins
    }

    if (sub->count("--dist")) cfg.dist.kind = dist_name;
    if (sub->count("--dist-nodes")) cfg.dist.nodes = dist_nodes;
    if (sub->count("--atoms")) {
        json arr;
        try {
            arr = json::parse(atoms_text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("could not parse --atoms: ") + e.what());
        }
        DistSpec spec = cfg.dist;
        dist_from_json(json{{"atoms", arr}}, spec);
        cfg.dist = spec;
        if (!sub->count("--dist")) cfg.dist.kind = "discrete";
    }
    if (sub->count("--t")) cfg.t = t;
    if (sub->count("--h")) cfg.h = h;
    if (sub->count("--x")) cfg.x = x;
    if (sub->count("--lambda")) cfg.lambda = lambda;
    if (sub->count("--q")) cfg.q = qval;
    if (sub->count("--n")) cfg.n_list = parse_n_list(n_text);
    if (sub->count("--samples")) cfg.samples = samples;
    if (sub->count("--steps")) cfg.steps = steps;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--hermite-order")) cfg.hermite_order = hermite;
    if (sub->count("--lipschitz-xmax")) cfg.lipschitz_xmax = xmax;
    if (sub->count("--workers")) cfg.workers = workers;
    if (sub->count("--out")) cfg.out = out_path;
    if (sub->count("--csv")) cfg.csv = csv_path;

    cfg.validate();
    return cfg;
}

}

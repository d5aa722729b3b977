// scenario.cpp
#include "cct/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>

#include "cct/errors.hpp"
#include "cct/influence_functional.hpp"

namespace cct {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

const json& object_at(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "$" : path, "expected an object");
    for (const auto& kv : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || kv.key() == a;
        if (!known) throw ConfigError(join(path, kv.key()), "unknown field");
    }
    return j;
}

double number_at(const json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj[key];
    const std::string here = join(path, key);
    if (!v.is_number()) throw ConfigError(here, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(here, "must be finite");
    return x;
}

void require(bool ok, const std::string& path, const std::string& msg) {
    if (!ok) throw ConfigError(path, msg);
}

} // namespace

GridSpec ScenarioConfig::effective_grid() const {
    if (grid) return *grid;
    return GridSpec{-0.5 * box_L, 0.5 * box_L, 64};
}

std::vector<double> ScenarioConfig::sweep_times() const {
    std::vector<double> ts;
    if (t_max == 0.0) return ts;
    ts.reserve(std::size_t(n_steps));
    for (int i = 1; i <= n_steps; ++i) ts.push_back(t_max * double(i) / double(n_steps));
    return ts;
}

ScenarioConfig parse_scenario(const json& doc) {
    ScenarioConfig cfg;
    object_at(doc, "", {"system", "environment", "hbar", "time", "box_L", "grid", "output"});

    if (doc.contains("system")) {
        const json& s = object_at(doc["system"], "system", {"m", "omega"});
        cfg.system.mass = number_at(s, "m", "system", cfg.system.mass);
        cfg.system.frequency = number_at(s, "omega", "system", cfg.system.frequency);
    }

    if (doc.contains("environment")) {
        const json& e = object_at(doc["environment"], "environment", {"stochastic", "bath", "gamma0"});
        const bool has_st = e.contains("stochastic");
        const bool has_bath = e.contains("bath");
        require(has_st != has_bath, "environment", "exactly one of 'stochastic' or 'bath' must be given");
        if (has_st) {
            require(!e.contains("gamma0"), "environment.gamma0",
                    "only valid with 'bath'; use environment.stochastic.gamma0");
            const std::string p = "environment.stochastic";
            const json& st = object_at(e["stochastic"], p, {"sigma", "lambda", "gamma0"});
            StochasticParams sp;
            sp.sigma = number_at(st, "sigma", p, 0.1);
            sp.lambda = number_at(st, "lambda", p, 0.0);
            sp.gamma0 = number_at(st, "gamma0", p, 0.0);
            cfg.stochastic = sp;
        } else {
            const OscillatorBath bath = OscillatorBath::from_json(e["bath"], "environment.bath");
            cfg.bath = bath.entries();
            cfg.bath_gamma0 = number_at(e, "gamma0", "environment", 0.0);
        }
    } else {
        cfg.stochastic = StochasticParams{0.1, 0.0, 0.0};
    }

    cfg.hbar = number_at(doc, "hbar", "", cfg.hbar);

    if (doc.contains("time")) {
        const json& t = object_at(doc["time"], "time", {"t_max", "n_steps"});
        cfg.t_max = number_at(t, "t_max", "time", cfg.t_max);
        if (t.contains("n_steps")) {
            require(t["n_steps"].is_number_integer(), "time.n_steps", "must be an integer");
            cfg.n_steps = t["n_steps"].get<int>();
        }
    }

    cfg.box_L = number_at(doc, "box_L", "", cfg.box_L);

    if (doc.contains("grid")) {
        const json& g = object_at(doc["grid"], "grid", {"x_min", "x_max", "n"});
        GridSpec gs{-0.5 * cfg.box_L, 0.5 * cfg.box_L, 64};
        gs.x_min = number_at(g, "x_min", "grid", gs.x_min);
        gs.x_max = number_at(g, "x_max", "grid", gs.x_max);
        if (g.contains("n")) {
            require(g["n"].is_number_integer(), "grid.n", "must be an integer");
            gs.n = g["n"].get<int>();
        }
        cfg.grid = gs;
    }

    if (doc.contains("output")) {
        const json& o = object_at(doc["output"], "output", {"format", "path"});
        if (o.contains("format")) {
            require(o["format"].is_string(), "output.format", "must be \"csv\" or \"json\"");
            const std::string f = o["format"].get<std::string>();
            require(f == "csv" || f == "json", "output.format", "must be \"csv\" or \"json\"");
            cfg.format = f == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        }
        if (o.contains("path")) {
            require(o["path"].is_string(), "output.path", "must be a string");
            cfg.output_path = o["path"].get<std::string>();
        }
    }

    validate_scenario(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

void validate_scenario(const ScenarioConfig& cfg) {
    require(cfg.system.mass > 0.0, "system.m", "must be > 0");
    require(cfg.system.frequency > 0.0, "system.omega", "must be > 0");
    if (cfg.stochastic) {
        require(cfg.stochastic->sigma >= 0.0, "environment.stochastic.sigma", "must be >= 0");
        require(cfg.stochastic->lambda >= 0.0, "environment.stochastic.lambda", "must be >= 0");
    }
    require(cfg.stochastic.has_value() != cfg.bath.has_value(), "environment",
            "exactly one of 'stochastic' or 'bath' must be given");
    require(cfg.hbar > 0.0 && std::isfinite(cfg.hbar), "hbar", "must be > 0");
    require(cfg.t_max >= 0.0 && std::isfinite(cfg.t_max), "time.t_max", "must be >= 0");
    require(cfg.n_steps >= 1, "time.n_steps", "must be >= 1");
    require(cfg.box_L > 0.0 && std::isfinite(cfg.box_L), "box_L", "must be > 0");
    if (cfg.grid) {
        require(cfg.grid->n >= 2, "grid.n", "must be >= 2");
        require(cfg.grid->x_max > cfg.grid->x_min, "grid.x_max", "must exceed grid.x_min");
    }
}

StochasticParams resolve_environment(const ScenarioConfig& cfg) {
    if (cfg.stochastic) return *cfg.stochastic;
    const OscillatorBath bath(*cfg.bath);
    try {
        return stochastic_reduce(line_propagators(bath), FrictionKernel::from_bath(bath, cfg.bath_gamma0), 1.0);
    } catch (const DomainError& e) {
        throw ConfigError("environment.bath", e.what());
    } catch (const NumericalError& e) {
        throw ConfigError("environment.bath",
                          std::string("correlator does not decay, so no local stochastic limit exists (") +
                              e.what() + ")");
    }
}

} // namespace cct

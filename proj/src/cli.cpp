// cli.cpp
#include "cct/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cct/classical_dynamics.hpp"
#include "cct/entropy.hpp"
#include "cct/errors.hpp"
#include "cct/format.hpp"
#include "cct/parallel.hpp"
#include "cct/reduced_density.hpp"
#include "cct/scenario.hpp"
#include "cct/verification.hpp"

namespace cct::cli {

using nlohmann::json;

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<double> box_L;
    std::vector<std::string> campaigns;
    std::optional<double> tolerance;
    int draws = 0;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "scenario file (JSON)");
    sub->add_option("--out", f.out, "output file (directory for rho)");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--t-max", f.t_max, "end of the time sweep");
    sub->add_option("--steps", f.steps, "number of sweep points");
    sub->add_option("--box-L", f.box_L, "box length L");
}

ScenarioConfig scenario_from(const Flags& f) {
    ScenarioConfig cfg = f.config.empty() ? parse_scenario(json::object()) : load_scenario(f.config);
    if (f.t_max) cfg.t_max = *f.t_max;
    if (f.steps) cfg.n_steps = *f.steps;
    if (f.box_L) {
        cfg.box_L = *f.box_L;
    }
    if (!f.format.empty()) cfg.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (!f.out.empty()) cfg.output_path = f.out;
    validate_scenario(cfg);
    return cfg;
}

// Writes through a file when a path is configured, otherwise to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("output.path", "cannot open '" + path + "' for writing");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

enum class Status { Ok, Caustic, NonPositive };

const char* to_string(Status s) {
    switch (s) {
    case Status::Ok: return "ok";
    case Status::Caustic: return "caustic";
    case Status::NonPositive: return "nonpositive";
    }
    return "?";
}

struct SweepPoint {
    double t = 0.0;
    Status status = Status::Ok;
    CoefficientSet cs;
};

std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const StochasticParams& sp) {
    const std::vector<double> ts = cfg.sweep_times();
    std::vector<SweepPoint> pts(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        SweepPoint& p = pts[i];
        p.t = ts[i];
        try {
            p.cs = coefficient_set(cfg.system, sp, p.t);
            if (sp.sigma > 0.0 && !(p.cs.alpha.imag() > 0.0)) p.status = Status::NonPositive;
        } catch (const SingularityError&) {
            p.status = Status::Caustic;
        }
    });
    return pts;
}

std::string cell(double v, bool present) { return present ? format_double(v) : std::string(); }

json num(double v, bool present) { return present ? json(v) : json(nullptr); }

int cmd_alpha(const Flags& f, std::ostream& out) {
    const ScenarioConfig cfg = scenario_from(f);
    const StochasticParams sp = resolve_environment(cfg);
    const RegimeClass rc = classify_regime(cfg.system, sp);
    const auto pts = sweep(cfg, sp);

    Sink sink(cfg.output_path, out);
    std::ostream& os = sink.stream();
    if (cfg.format == OutputFormat::Csv) {
        os << "t,re_alpha,im_alpha,q2,regime,status\n";
        for (const auto& p : pts) {
            const bool v = p.status != Status::Caustic;
            os << format_double(p.t) << ',' << cell(p.cs.alpha.real(), v) << ',' << cell(p.cs.alpha.imag(), v)
               << ',' << format_double(rc.q2) << ',' << cct::to_string(rc.regime) << ',' << to_string(p.status)
               << '\n';
        }
    } else {
        json rows = json::array();
        for (const auto& p : pts) {
            const bool v = p.status != Status::Caustic;
            rows.push_back({{"t", p.t},
                            {"re_alpha", num(p.cs.alpha.real(), v)},
                            {"im_alpha", num(p.cs.alpha.imag(), v)},
                            {"q2", rc.q2},
                            {"regime", cct::to_string(rc.regime)},
                            {"status", to_string(p.status)}});
        }
        os << rows.dump(2) << '\n';
    }
    return kOk;
}

json grid_json(const GridSpec& g) { return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n", g.n}}; }

int cmd_rho(const Flags& f, std::ostream& out) {
    const ScenarioConfig cfg = scenario_from(f);
    const StochasticParams sp = resolve_environment(cfg);
    const GridSpec grid = cfg.effective_grid();
    const auto pts = sweep(cfg, sp);

    namespace fs = std::filesystem;
    const fs::path dir = cfg.output_path.empty() ? fs::path("rho_out") : fs::path(cfg.output_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("output.path", "cannot create directory '" + dir.string() + "': " + ec.message());

    const int width = std::max<int>(4, int(std::to_string(pts.size()).size()));
    json snaps = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        json rec{{"t", p.t}, {"status", to_string(p.status)}};
        if (p.status != Status::Caustic) {
            rec["re_alpha"] = p.cs.alpha.real();
            rec["im_alpha"] = p.cs.alpha.imag();
        }
        if (p.status == Status::Ok) {
            const DensityKernel k = kernel_from_coefficients(p.cs, cfg.system, cfg.box_L, cfg.hbar, sp.sigma);
            const auto rho = evaluate_grid(k, grid);
            std::string idx = std::to_string(i + 1);
            idx.insert(0, std::size_t(width) - idx.size(), '0');
            const std::string name = "rho_" + idx + ".csv";
            std::ofstream file(dir / name, std::ios::binary);
            if (!file) throw ConfigError("output.path", "cannot write '" + (dir / name).string() + "'");
            write_matrix_csv(file, grid, rho);
            rec["file"] = name;
        }
        snaps.push_back(std::move(rec));
    }
    const json manifest{{"m", cfg.system.mass}, {"hbar", cfg.hbar}, {"L", cfg.box_L},
                        {"grid", grid_json(grid)}, {"snapshots", snaps}};
    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    if (!mf) throw ConfigError("output.path", "cannot write manifest in '" + dir.string() + "'");
    mf << manifest.dump(2) << '\n';
    out << "wrote " << snaps.size() << " snapshots to " << dir.string() << '\n';
    return kOk;
}

int cmd_entropy(const Flags& f, std::ostream& out) {
    const ScenarioConfig cfg = scenario_from(f);
    const StochasticParams sp = resolve_environment(cfg);
    const RegimeClass rc = classify_regime(cfg.system, sp);
    const auto pts = sweep(cfg, sp);

    struct Row {
        bool valid = false;
        double s = 0.0;
        std::vector<double> fn;
    };
    std::vector<Row> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (p.status != Status::Ok || !(p.cs.alpha.imag() > 0.0)) continue;
        DensityKernel k;
        k.mass = cfg.system.mass;
        k.hbar = cfg.hbar;
        k.t = p.t;
        k.re_alpha = p.cs.alpha.real();
        k.im_alpha = p.cs.alpha.imag();
        k.box_L = cfg.box_L;
        rows[i].valid = true;
        rows[i].s = entanglement_entropy(k);
        for (int n = 2; n <= 8; ++n) rows[i].fn.push_back(replica_trace_analytic(k, n).f_n);
    }
    auto status_of = [&](std::size_t i) {
        if (pts[i].status == Status::Ok && !rows[i].valid) return Status::NonPositive;
        return pts[i].status;
    };

    Sink sink(cfg.output_path, out);
    std::ostream& os = sink.stream();
    if (cfg.format == OutputFormat::Csv) {
        os << "t,re_alpha,im_alpha,q2,regime,L,S_ent";
        for (int n = 2; n <= 8; ++n) os << ",f_" << n;
        os << ",status\n";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& p = pts[i];
            const bool a = p.status != Status::Caustic;
            const bool v = rows[i].valid;
            os << format_double(p.t) << ',' << cell(p.cs.alpha.real(), a) << ',' << cell(p.cs.alpha.imag(), a)
               << ',' << format_double(rc.q2) << ',' << cct::to_string(rc.regime) << ','
               << format_double(cfg.box_L) << ',' << cell(rows[i].s, v);
            for (int n = 0; n < 7; ++n) os << ',' << (v ? format_double(rows[i].fn[std::size_t(n)]) : "");
            os << ',' << to_string(status_of(i)) << '\n';
        }
    } else {
        json arr = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& p = pts[i];
            const bool a = p.status != Status::Caustic;
            const bool v = rows[i].valid;
            arr.push_back({{"t", p.t},
                           {"q2", rc.q2},
                           {"regime", cct::to_string(rc.regime)},
                           {"re_alpha", num(p.cs.alpha.real(), a)},
                           {"im_alpha", num(p.cs.alpha.imag(), a)},
                           {"L", cfg.box_L},
                           {"S_ent", num(rows[i].s, v)},
                           {"f_n", v ? json(rows[i].fn) : json::array()},
                           {"status", to_string(status_of(i))}});
        }
        os << arr.dump(2) << '\n';
    }
    return kOk;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
    CampaignSpec spec;
    spec.campaigns = f.campaigns;
    if (spec.campaigns.empty() || (spec.campaigns.size() == 1 && spec.campaigns[0] == "all"))
        spec.campaigns = available_campaigns();
    if (spec.campaigns.size() == 1 && spec.campaigns[0] == "none") spec.campaigns.clear();
    for (const auto& c : spec.campaigns) {
        if (std::find(available_campaigns().begin(), available_campaigns().end(), c) ==
            available_campaigns().end())
            throw ConfigError("--campaign", "unknown campaign '" + c + "'");
    }
    if (f.seed) spec.seed = *f.seed;
    spec.tolerance_override = f.tolerance;
    if (f.tolerance && !(*f.tolerance >= 0.0)) throw ConfigError("--tolerance", "must be >= 0");
    spec.draws = f.draws;

    const VerificationReport rep = run_campaign(spec);
    Sink sink(f.out, out);
    sink.stream() << to_json(rep).dump(2) << '\n';
    err << text_summary(rep);
    return rep.all_passed() ? kOk : kNumerical;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reduced density matrix of a damped oscillator on the closed complex-time contour", "cct"};
    app.require_subcommand(1);
    Flags f;
    CLI::App* alpha = app.add_subcommand("alpha", "tabulate alpha(t) over the time sweep");
    CLI::App* rho = app.add_subcommand("rho", "write density-matrix grids for each sweep time");
    CLI::App* entropy = app.add_subcommand("entropy", "tabulate the entanglement entropy over the sweep");
    CLI::App* verify = app.add_subcommand("verify", "run the cross-validation campaigns");
    for (CLI::App* s : {alpha, rho, entropy, verify}) add_common(s, f);
    verify->add_option("--campaign", f.campaigns, "campaign name (repeatable; 'all' or 'none')");
    verify->add_option("--tolerance", f.tolerance, "replace every case tolerance");
    verify->add_option("--draws", f.draws, "random draws per regime (0 = campaign default)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfig;
    }

    try {
        if (alpha->parsed()) return cmd_alpha(f, out);
        if (rho->parsed()) return cmd_rho(f, out);
        if (entropy->parsed()) return cmd_entropy(f, out);
        return cmd_verify(f, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    }
}

} // namespace cct::cli

#include "chaoskit/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaoskit/measures.hpp"

namespace chaoskit::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// JSON has no non-finite numbers; they are written as strings.
ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string inputs_string(const CheckRecord& r) {
    std::string s;
    for (const auto& [k, v] : r.inputs) s += (s.empty() ? "" : "; ") + k + "=" + v;
    return s;
}

std::string upper_status(bool unconverged, bool failed) {
    return unconverged ? "UNCONVERGED" : failed ? "FAIL" : "PASS";
}

struct Tally {
    std::size_t counts[5] = {};
    std::size_t total = 0;
    void add(const CheckReport& g) {
        for (const auto& r : g.records) ++counts[static_cast<int>(r.status)];
        total += g.records.size();
    }
    bool failed() const { return counts[static_cast<int>(Status::fail)] > 0; }
    bool unconverged() const { return counts[static_cast<int>(Status::unconverged)] > 0; }
    std::string describe() const {
        std::string s = std::to_string(total) + " records";
        for (Status st : {Status::pass, Status::fail, Status::unconverged, Status::inapplicable, Status::straggler})
            if (counts[static_cast<int>(st)] > 0)
                s += ", " + std::to_string(counts[static_cast<int>(st)]) + " " + std::string(to_string(st));
        return s;
    }
};

// Settings bound to the command line. Suite fields are bound directly so the
// defaults documented in suites.hpp are the defaults of the runner.
struct Settings {
    ProjectionSuite projection;
    std::vector<unsigned> alpha;
    std::vector<double> exponent_a;
    std::vector<double> projection_t;
    IntegralSuite integral;
    unsigned integral_n = 0;
    ChaosNormSuite chaos;
    HyperSuite hyper;
    SeriesSuite series;
    FProjectionSuite f_projection;
    WidderEvalSuite widder_eval;
    L1IdentitySuite l1;
    CfSuite cf;
    SeparationSuite separation;
    MomentSuite moment;
    PollardSuite pollard;
    std::string widder_eval_measure, l1_measure, cf_measure, moment_measure;

    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 1;
    std::size_t n_paths = 0, n_outer = 0, nodes = 0;
    double dt = 0.0, confidence = 0.0;
    CLI::Option *n_paths_opt = nullptr, *n_outer_opt = nullptr, *nodes_opt = nullptr, *dt_opt = nullptr,
                *confidence_opt = nullptr;

    void apply(McConfig& c) const {
        c.master_seed = seed;
        c.workers = workers;
        if (n_paths_opt->count()) c.n_paths = n_paths;
        if (n_outer_opt->count()) c.n_outer = n_outer;
        if (dt_opt->count()) c.dt = dt;
        if (confidence_opt->count()) c.confidence = confidence;
    }
    void apply_nodes(std::size_t& n) const {
        if (nodes_opt->count()) n = nodes;
    }
};

struct Command {
    std::string name;
    std::string verifies;
    CLI::App* app = nullptr;
    std::function<SuiteResult(Settings&)> run;
};

std::optional<SignedAtomicMeasure> load_measure(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return SignedAtomicMeasure::load(path);
}

void add_exponent_grid(CLI::App* app, ExponentGrid& g) {
    app->add_option("--t-list", g.t_list, "reference times")->delimiter(',');
    app->add_option("--p-list", g.p_list, "lower exponents p")->delimiter(',');
    app->add_option("--q-list", g.q_list, "upper exponents q; pairs keep p < q <= 6")->delimiter(',');
}

std::vector<Command> make_commands(CLI::App& app, Settings& s) {
    std::vector<Command> cmds;
    auto add = [&](std::string name, std::string verifies, std::string help, std::function<SuiteResult(Settings&)> run) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        cmds.push_back({std::move(name), std::move(verifies), sub, std::move(run)});
        return sub;
    };

    auto* pc = add("project-check", "conditional expectations of Z_t^alpha and exp(a . Z_t) given X",
                   "power and exponential projections onto X", [](Settings& s) {
                       ProjectionSuite p = s.projection;
                       if (!s.alpha.empty()) p.alphas = p.mc_alphas = {MultiIndex(s.alpha)};
                       if (!s.projection_t.empty()) p.t_list = s.projection_t;
                       if (!s.exponent_a.empty()) p.a_list = {s.exponent_a};
                       s.apply(p.mc);
                       return run_projection_suite(p);
                   });
    pc->add_option("--alpha", s.alpha, "one multi-index, e.g. 1,2 (default: full sweep)")->delimiter(',');
    pc->add_option("--t", s.projection_t, "times")->delimiter(',');
    pc->add_option("--a", s.exponent_a, "one exponent vector for the exponential check")->delimiter(',');
    pc->add_option("--max-degree", s.projection.max_degree, "sweep degree bound");
    pc->add_option("--max-dim", s.projection.max_dim, "sweep dimension bound");
    pc->add_option("--grid-points", s.projection.grid_points, "grid points per coordinate");
    pc->add_option("--grid-radius", s.projection.grid_radius, "grid half width");
    pc->add_flag("!--no-mc", s.projection.monte_carlo, "exact branch only");

    auto* ip = add("integral-project", "projection of integrals against Z onto integrals against X",
                   "three-way check of the projected stochastic integral", [](Settings& s) {
                       IntegralSuite p = s.integral;
                       if (s.integral_n > 0) p.degree = s.integral_n;
                       s.apply(p.mc);
                       return run_integral_suite(p);
                   });
    ip->add_option("--n", s.integral_n, "a single degree (default: 1..max-degree)");
    ip->add_option("--max-degree", s.integral.max_degree, "largest degree");
    ip->add_option("--t", s.integral.t, "horizon");

    auto* cn = add("chaos-norms", "chaos norm comparison bounds and single Hermite term estimates",
                   "norm bounds for every H_alpha", [](Settings& s) {
                       ChaosNormSuite p = s.chaos;
                       p.workers = s.workers;
                       s.apply_nodes(p.nodes);
                       return run_chaos_norm_suite(p);
                   });
    cn->add_option("--max-degree", s.chaos.max_degree, "degree bound");
    cn->add_option("--max-dim", s.chaos.max_dim, "dimension bound");
    add_exponent_grid(cn, s.chaos.grid);

    auto* hy = add("hyper", "Ornstein-Uhlenbeck hypercontractivity on random Hermite series",
                   "hypercontractivity sweep", [](Settings& s) {
                       HyperSuite p = s.hyper;
                       p.seed = s.seed;
                       p.workers = s.workers;
                       s.apply_nodes(p.nodes);
                       return run_hyper_suite(p);
                   });
    hy->add_option("--series", s.hyper.series, "number of random series");
    hy->add_option("--max-degree", s.hyper.max_degree, "degree bound");
    hy->add_option("--max-dim", s.hyper.max_dim, "dimension bound");
    hy->add_option("--max-terms", s.hyper.max_terms, "terms per series bound");
    add_exponent_grid(hy, s.hyper.grid);

    auto* se = add("series-expand", "Hermite expansion of a martingale, its analytic extension, growth and L1 to Lp transfer",
                   "series of measure-backed martingales", [](Settings& s) {
                       SeriesSuite p = s.series;
                       p.seed = s.seed;
                       s.apply_nodes(p.nodes);
                       return run_series_suite(p);
                   });
    se->add_option("--p", s.series.p, "integrability exponent");
    se->add_option("--t-list", s.series.t_list, "times for the coefficient comparison")->delimiter(',');
    se->add_option("--cutoff", s.series.cutoff, "degree cutoff for the coefficient comparison");
    se->add_option("--z-radius", s.series.z_radius, "radius of the complex grid");
    se->add_option("--random-measures", s.series.random_measures, "seeded measures besides the two-atom one");
    se->add_option("--coefficient-tol", s.series.coefficient_tolerance, "coefficient tolerance");
    se->add_option("--analytic-tol", s.series.analytic_tolerance, "series against integral tolerance");
    se->add_option("--transfer-cutoff", s.series.transfer_cutoff, "degree of the cosh series");

    auto* fp = add("f-projection", "the martingale as the projection of an analytic function of Z",
                   "E[f(x + iY_s)] = g(s, x)", [](Settings& s) {
                       FProjectionSuite p = s.f_projection;
                       s.apply(p.mc);
                       return run_f_projection_suite(p);
                   });
    fp->add_option("--p", s.f_projection.p, "integrability exponent");
    fp->add_option("--horizon", s.f_projection.horizon, "finite horizon T");
    fp->add_option("--s-list", s.f_projection.infinite_horizon_s, "times on the infinite horizon")->delimiter(',');
    fp->add_option("--x-grid", s.f_projection.x_grid, "conditioning points")->delimiter(',');
    fp->add_option("--random-measures", s.f_projection.random_measures, "seeded measures besides the two-atom one");

    auto* we = add("widder-eval", "measure-backed martingales: closed forms, initial value and unit mean",
                   "evaluate Widder martingales", [](Settings& s) {
                       WidderEvalSuite p = s.widder_eval;
                       p.seed = s.seed;
                       p.measure = load_measure(s.widder_eval_measure);
                       return run_widder_eval_suite(p);
                   });
    we->add_option("--measure", s.widder_eval_measure, "measure file, one atom `w v_1 .. v_d` per line")
        ->check(CLI::ExistingFile);
    we->add_option("--t-list", s.widder_eval.t_list, "times")->delimiter(',');
    we->add_option("--x-grid", s.widder_eval.x_grid, "points")->delimiter(',');
    we->add_option("--random-measures", s.widder_eval.random_measures, "seeded probability measures");

    auto* l1 = add("l1-identity", "L1 norm of a Widder martingale against the total variation of its measure",
                   "L1 norm identity", [](Settings& s) {
                       L1IdentitySuite p = s.l1;
                       p.seed = s.seed;
                       p.measure = load_measure(s.l1_measure);
                       s.apply_nodes(p.nodes);
                       return run_l1_identity_suite(p);
                   });
    l1->add_option("--measure", s.l1_measure, "measure file (default delta_1 - delta_-1)")->check(CLI::ExistingFile);
    l1->add_option("--t-grid", s.l1.t_grid, "times")->delimiter(',');
    l1->add_option("--terminal-tol", s.l1.terminal_tolerance, "bound on ||mu|| - ||M_t||_1 at the last time");
    l1->add_option("--random-measures", s.l1.random_measures, "seeded measures");

    auto* cf = add("cf-recover", "characteristic function of the representing measure from the martingale",
                   "recover the Fourier transform of mu", [](Settings& s) {
                       CfSuite p = s.cf;
                       p.seed = s.seed;
                       p.measure = load_measure(s.cf_measure);
                       s.apply_nodes(p.nodes);
                       return run_cf_suite(p);
                   });
    cf->add_option("--measure", s.cf_measure, "positive measure file (default two-atom)")->check(CLI::ExistingFile);
    cf->add_option("--t", s.cf.t, "time");
    cf->add_option("--u-grid", s.cf.u_grid, "frequencies (default 21 points on [-5, 5])")->delimiter(',');
    cf->add_option("--tol", s.cf.tolerance, "absolute tolerance");
    cf->add_option("--random-measures", s.cf.random_measures, "seeded probability measures");

    auto* sp = add("separation", "positive martingales against a bounded indicator martingale",
                   "separation example", [](Settings& s) {
                       SeparationSuite p = s.separation;
                       p.seed = s.seed;
                       s.apply_nodes(p.nodes);
                       return run_separation_suite(p);
                   });
    sp->add_option("--k", s.separation.k, "frequency");
    sp->add_option("--horizon", s.separation.horizon, "horizon T");
    sp->add_option("--t-list", s.separation.t_list, "evaluation times")->delimiter(',');
    sp->add_option("--random-measures", s.separation.random_measures, "seeded probability measures");

    auto* mc = add("moment-characterize", "tail bounds of the representing measure from the second moment",
                   "moment characterization", [](Settings& s) {
                       MomentSuite p = s.moment;
                       p.seed = s.seed;
                       p.measure = load_measure(s.moment_measure);
                       return run_moment_suite(p);
                   });
    mc->add_option("--measure", s.moment_measure, "positive measure file")->check(CLI::ExistingFile);
    mc->add_option("--t-list", s.moment.t_list, "times")->delimiter(',');
    mc->add_option("--K-list", s.moment.K_list, "tail levels")->delimiter(',');
    mc->add_option("--random-measures", s.moment.random_measures, "seeded positive measures");

    auto* po = add("pollard", "the Gaussian-measure counterexample: closed form and divergent L1 series",
                   "Pollard martingale", [](Settings& s) {
                       PollardSuite p = s.pollard;
                       s.apply_nodes(p.nodes);
                       return run_pollard_suite(p);
                   });
    po->add_option("--t", s.pollard.t, "time of the L1 family");
    po->add_option("--k-min", s.pollard.k_min, "first k");
    po->add_option("--k-max", s.pollard.k_max, "last k");
    po->add_option("--closed-form-t", s.pollard.closed_form_t, "times for the closed form")->delimiter(',');
    po->add_option("--closed-form-x", s.pollard.closed_form_x, "points for the closed form")->delimiter(',');
    return cmds;
}

std::string option_value(const CLI::Option* opt) {
    if (opt->count() == 0) return opt->get_default_str();
    std::string s;
    for (const auto& r : opt->results()) s += (s.empty() ? "" : ",") + r;
    return s;
}

bool echoed(const CLI::Option* opt) {
    static const char* const skip[] = {"help", "config", "workers", "output-dir", "format"};
    const std::string& name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
    for (const char* k : skip)
        if (name == k) return false;
    return true;
}

void echo_options(const CLI::App* app, const std::string& prefix, RunReport& report) {
    for (const CLI::Option* opt : app->get_options()) {
        if (!echoed(opt) || opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        std::string value = option_value(opt);
        if (value.empty() || value == "[]") value = "suite default";
        report.config.emplace_back(prefix + name, value);
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int exit_status(const RunReport& report) {
    bool failed = false;
    for (const auto& s : report.sections)
        for (const auto& g : s.groups) {
            if (g.count(Status::unconverged) > 0) return exit_unconverged;
            failed = failed || g.count(Status::fail) > 0;
        }
    if (report.partial) return exit_unconverged;
    return failed ? exit_check_failed : exit_ok;
}

std::string to_json(const RunReport& report) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["artifact"] = "chaoskit";
    j["version"] = kVersion;
    j["command"] = report.command;
    j["seed"] = report.seed;
    ordered_json config = ordered_json::object();
    for (const auto& [k, v] : report.config) config[k] = v;
    j["config"] = config;
    j["exit_status"] = exit_status(report);
    j["partial"] = report.partial;
    ordered_json sections = ordered_json::array();
    for (const auto& s : report.sections) {
        Tally ts;
        ordered_json groups = ordered_json::array();
        for (const auto& g : s.groups) {
            ts.add(g);
            ordered_json records = ordered_json::array();
            for (const auto& r : g.records) {
                ordered_json inputs = ordered_json::object();
                for (const auto& [k, v] : r.inputs) inputs[k] = v;
                ordered_json rec;
                rec["check"] = r.name;
                rec["status"] = std::string(to_string(r.status));
                rec["left"] = number(r.left);
                rec["relation"] = r.relation;
                rec["right"] = number(r.right);
                rec["std_error"] = r.std_error ? number(*r.std_error) : ordered_json(nullptr);
                rec["inputs"] = inputs;
                rec["note"] = r.note;
                records.push_back(std::move(rec));
            }
            ordered_json og;
            og["name"] = g.name;
            og["passed"] = g.passed();
            og["records"] = std::move(records);
            groups.push_back(std::move(og));
        }
        ordered_json os;
        os["command"] = s.command;
        os["verifies"] = s.verifies;
        os["status"] = upper_status(ts.unconverged(), ts.failed());
        os["groups"] = std::move(groups);
        sections.push_back(std::move(os));
    }
    j["sections"] = std::move(sections);
    return j.dump(1) + "\n";
}

std::string to_csv(const RunReport& report) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& s : report.sections)
        for (const auto& g : s.groups)
            for (const auto& r : g.records) {
                out += csv_field(s.command) + "," + csv_field(g.name) + "," + csv_field(r.name) + "," +
                       std::string(to_string(r.status)) + "," + fmt(r.left) + "," + csv_field(r.relation) + "," +
                       fmt(r.right) + "," + (r.std_error ? fmt(*r.std_error) : "") + "," +
                       csv_field(inputs_string(r)) + "," + csv_field(r.note) + "\n";
            }
    return out;
}

std::string summary(const RunReport& report) {
    std::ostringstream o;
    for (const auto& s : report.sections) {
        Tally ts;
        for (const auto& g : s.groups) ts.add(g);
        o << upper_status(ts.unconverged(), ts.failed()) << "  " << s.command << ": " << s.verifies << " ("
          << ts.describe() << ")\n";
        for (const auto& g : s.groups) {
            Tally tg;
            tg.add(g);
            o << "    " << upper_status(tg.unconverged(), tg.failed()) << "  " << g.name << ": " << tg.describe()
              << "\n";
        }
    }
    if (report.partial) o << "PARTIAL  the run stopped early; see the diagnostics\n";
    return o.str();
}

std::string to_text(const RunReport& report) {
    std::ostringstream o;
    o << "chaoskit " << kVersion << " report (schema " << kSchemaVersion << ")\n";
    o << "command: " << report.command << "\nseed: " << report.seed << "\nexit status: " << exit_status(report)
      << "\nwall clock: " << fmt(report.seconds) << " s\n\nconfig:\n";
    for (const auto& [k, v] : report.config) o << "  " << k << " = " << v << "\n";
    o << "\nsummary:\n" << summary(report);
    for (const auto& s : report.sections)
        for (const auto& g : s.groups) {
            o << "\n[" << s.command << " / " << g.name << "]\n";
            for (const auto& r : g.records) {
                o << to_string(r.status) << "  " << r.name << "  " << fmt(r.left) << " " << r.relation << " "
                  << fmt(r.right);
                if (r.std_error) o << "  se " << fmt(*r.std_error);
                if (!r.inputs.empty()) o << "  {" << inputs_string(r) << "}";
                if (!r.note.empty()) o << "  " << r.note;
                o << "\n";
            }
        }
    return o.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"chaoskit: numerical checks of projection and chaos expansion results for conformal Brownian motion",
                 "chaoskit"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "key=value settings file; subcommand keys as `command.key`, flags win");
    app.allow_config_extras(false);
    app.require_subcommand(1);

    std::string format = "all";
    const char* env_dir = std::getenv("CHAOSKIT_REPORT_DIR");
    std::string output_dir = env_dir && *env_dir ? env_dir : ".";
    app.add_option("--seed", s.seed, "master seed for every random stream");
    app.add_option("--workers", s.workers, "worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
    s.n_paths_opt = app.add_option("--n-paths", s.n_paths, "Y resamples per X outcome");
    s.n_outer_opt = app.add_option("--n-outer", s.n_outer, "sampled X outcomes");
    s.dt_opt = app.add_option("--dt", s.dt, "time step for path integrals");
    s.confidence_opt = app.add_option("--confidence", s.confidence, "c in |estimate - reference| <= c stderr");
    s.nodes_opt = app.add_option("--nodes", s.nodes, "Gauss-Hermite nodes per axis");
    for (CLI::Option* o : {s.n_paths_opt, s.n_outer_opt, s.dt_opt, s.confidence_opt, s.nodes_opt})
        o->default_str("suite default");
    app.add_option("--format", format, "report files to write")->check(CLI::IsMember({"text", "csv", "json", "all"}));
    app.add_option("--output-dir", output_dir, "report directory (default $CHAOSKIT_REPORT_DIR or .)");

    std::vector<Command> cmds = make_commands(app, s);
    CLI::App* all = app.add_subcommand("all", "every suite with its default settings");
    all->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    RunReport report;
    report.seed = s.seed;
    echo_options(&app, "", report);
    std::vector<const Command*> selected;
    for (const auto& c : cmds)
        if (all->parsed() || c.app->parsed()) {
            selected.push_back(&c);
            echo_options(c.app, c.name + ".", report);
        }
    report.command = all->parsed() ? "all" : selected.front()->name;

    const auto start = std::chrono::steady_clock::now();
    for (const Command* c : selected) {
        try {
            report.sections.push_back({c->name, c->verifies, c->run(s)});
        } catch (const std::invalid_argument& e) {
            err << "chaoskit: " << c->name << ": invalid argument: " << e.what() << "\n";
            return exit_usage;
        } catch (const std::exception& e) {
            err << "chaoskit: " << c->name << ": " << e.what() << "\n";
            report.partial = true;
            break;
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    out << summary(report);
    try {
        const std::filesystem::path dir(output_dir);
        std::filesystem::create_directories(dir);
        const std::filesystem::path base = dir / report.command;
        if (format == "text" || format == "all") write_file(base.string() + ".txt", to_text(report));
        if (format == "csv" || format == "all") write_file(base.string() + ".csv", to_csv(report));
        if (format == "json" || format == "all") write_file(base.string() + ".json", to_json(report));
        out << "report: " << base.string() << ".{" << (format == "all" ? "txt,csv,json" : format == "text" ? "txt" : format)
            << "}\n";
    } catch (const std::exception& e) {
        err << "chaoskit: " << e.what() << "\n";
        return exit_usage;
    }
    const int status = exit_status(report);
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.2f", report.seconds);
    out << "exit status " << status << " (" << seconds << " s)\n";
    return status;
}

}  // namespace chaoskit::cli

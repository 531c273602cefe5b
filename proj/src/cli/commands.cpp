#include "evfront/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "evfront/decomposition.hpp"
#include "evfront/errors.hpp"
#include "evfront/oracle.hpp"

namespace evfront::cli {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Runs body(i) for i in [0, n) on a small pool; body must not throw.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    int workers = int(std::min<std::size_t>(std::size_t(resolve_jobs(jobs)), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) body(i);
        });
    for (auto& t : pool) t.join();
}

struct PointStatus {
    std::string status = "ok";
    std::string message;
    bool numerical = false;

    // Records the first failure of a point; later stages keep their own values.
    void record(const std::string& stage) {
        if (status != "ok") return;
        try {
            throw;
        } catch (const ConvergenceError& e) {
            status = "numerical_error";
            message = stage + ": " + e.what();
            numerical = true;
        } catch (const DomainError& e) {
            status = "domain_error";
            message = stage + ": " + e.what();
        } catch (const std::exception& e) {
            status = "numerical_error";
            message = stage + ": " + e.what();
            numerical = true;
        }
    }
};

Cell re(cplx z) { return z.real(); }
Cell im(cplx z) { return z.imag(); }

double rel_diff(cplx a, cplx b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::vector<std::pair<double, double>> grid_points(const GridConfig& g) {
    std::vector<std::pair<double, double>> pts;
    for (double x : g.x)
        for (double t : g.t) pts.emplace_back(x, t);
    return pts;
}

}  // namespace

nlohmann::json echo_config(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.output.path.clear();
    return config_to_json(c);
}

CommandOutput simulate(const RunConfig& cfg, int jobs) {
    require_for(cfg, "simulate");
    DispersionModel model = cfg.model.core();
    SourceSpec source = cfg.source->core();
    auto pts = grid_points(*cfg.grid);

    CommandOutput out;
    out.table.name = "simulate";
    out.table.columns = {"x",           "t",           "method",       "psi_re",       "psi_im",
                         "est_error",   "oracle",      "cross_oracle", "cross_re",     "cross_im",
                         "discrepancy", "analytic_re", "analytic_im",  "analytic_rel_diff", "causal",
                         "status",      "message"};
    out.table.rows.resize(pts.size());
    std::vector<char> failed(pts.size(), 0);

    parallel_for(pts.size(), jobs, [&](std::size_t i) {
        auto [x, t] = pts[i];
        std::vector<Cell> row(out.table.columns.size());
        row[0] = x;
        row[1] = t;
        row[2] = std::string(to_string(cfg.method));
        PointStatus st;
        std::optional<OracleResult> ref;
        if (cfg.method != Method::Analytic) {
            try {
                ref = reference_field(model, source, x, t, cfg.settings);
                row[3] = re(ref->psi);
                row[4] = im(ref->psi);
                row[5] = ref->est_error;
                row[6] = std::string(to_string(ref->method));
                row[14] = ref->causal_zero;
            } catch (...) {
                st.record("oracle");
            }
        }
        if (cfg.method == Method::Both && ref) {
            try {
                if (auto cross = cross_check_field(model, source, x, t, cfg.settings)) {
                    row[7] = std::string(to_string(cross->method));
                    row[8] = re(cross->psi);
                    row[9] = im(cross->psi);
                    // an exact causal zero has no scale of its own; compare against |A| instead
                    row[10] = ref->causal_zero ? std::abs(cross->psi) / std::abs(source.amplitude)
                                               : rel_diff(ref->psi, cross->psi);
                }
            } catch (...) {
                st.record("cross_oracle");
            }
        }
        if (cfg.method != Method::Oracle) {
            try {
                WaveDecomposition d = decompose(model, source, x, t);
                if (cfg.method == Method::Analytic) {
                    row[3] = re(d.psi_total);
                    row[4] = im(d.psi_total);
                    row[14] = !d.inside_light_cone || (!source.band_limited() && !(t > 0.0));
                } else {
                    row[11] = re(d.psi_total);
                    row[12] = im(d.psi_total);
                    if (ref) row[13] = rel_diff(ref->psi, d.psi_total);
                }
            } catch (...) {
                st.record("analytic");
            }
        }
        row[15] = st.status;
        row[16] = st.message;
        failed[i] = st.numerical;
        out.table.rows[i] = std::move(row);
    });
    for (char f : failed) out.numerical_failure |= f != 0;
    return out;
}

CommandOutput decompose(const RunConfig& cfg, int jobs) {
    require_for(cfg, "decompose");
    DispersionModel model = cfg.model.core();
    SourceSpec source = cfg.source->core();
    auto pts = grid_points(*cfg.grid);

    CommandOutput out;
    out.table.name = "decompose";
    out.table.columns = {"x",           "t",
                         "psi_p_re",    "psi_p_im",
                         "psi_s_plus_re", "psi_s_plus_im",
                         "psi_s_minus_re", "psi_s_minus_im",
                         "psi_total_re", "psi_total_im",
                         "gauss_validity", "gauss_validity_minus",
                         "window_parameter", "near_front",
                         "front_active", "inside_light_cone",
                         "band_minus_re", "band_minus_im",
                         "band_stph_re", "band_stph_im",
                         "band_plus_re", "band_plus_im",
                         "stph_formula", "u_plus",
                         "u_minus",     "status",
                         "message"};
    out.table.rows.resize(pts.size());
    std::vector<char> failed(pts.size(), 0);

    parallel_for(pts.size(), jobs, [&](std::size_t i) {
        auto [x, t] = pts[i];
        std::vector<Cell> row(out.table.columns.size());
        row[0] = x;
        row[1] = t;
        PointStatus st;
        try {
            WaveDecomposition d = decompose(model, source, x, t);
            row[2] = re(d.psi_p);
            row[3] = im(d.psi_p);
            row[4] = re(d.psi_s_plus);
            row[5] = im(d.psi_s_plus);
            row[6] = re(d.psi_s_minus);
            row[7] = im(d.psi_s_minus);
            row[8] = re(d.psi_total);
            row[9] = im(d.psi_total);
            row[10] = d.gauss_validity;
            row[11] = d.gauss_validity_minus;
            row[12] = d.window_parameter;
            row[13] = d.near_front;
            row[14] = d.front_active;
            row[15] = d.inside_light_cone;
            if (source.band_limited()) {
                BandSegments b = band_segments(model, source, x, t);
                row[16] = re(b.psi_minus_seg);
                row[17] = im(b.psi_minus_seg);
                row[18] = re(b.psi_stph_seg);
                row[19] = im(b.psi_stph_seg);
                row[20] = re(b.psi_plus_seg);
                row[21] = im(b.psi_plus_seg);
                row[22] = std::string(to_string(b.selected));
                row[23] = b.u_plus;
                row[24] = b.u_minus;
            }
        } catch (...) {
            st.record("decompose");
        }
        row[25] = st.status;
        row[26] = st.message;
        failed[i] = st.numerical;
        out.table.rows[i] = std::move(row);
    });
    for (char f : failed) out.numerical_failure |= f != 0;
    return out;
}

CommandOutput front(const RunConfig& cfg) {
    require_for(cfg, "front");
    DispersionModel model = cfg.model.core();
    const SweepConfig& sw = *cfg.sweep;
    bool rel = model.relativistic_kind();
    double mu = rel ? model.rest_frequency() : 0.0;

    CommandOutput out;
    out.table.name = "front";
    out.table.columns = {"omega0", "energy", "omega0_over_rest", "v_m", "v_m_over_c", "tau", "regime", "flag"};
    for (double v : sw.omega0) {
        double w0 = sw.relative_to_rest ? v * mu : v;
        std::vector<Cell> row(out.table.columns.size());
        row[0] = w0;
        row[1] = cfg.model.hbar * w0;
        if (rel) row[2] = w0 / mu;
        try {
            WaveKind kind = classify(model, w0);
            double vm = front_velocity(model, w0);
            row[3] = vm;
            if (rel) row[4] = vm / model.light_speed;
            row[5] = traversal_time(model, w0, sw.x);
            row[6] = std::string(to_string(kind));
            row[7] = std::string("");
        } catch (const ThresholdError&) {
            row[3] = 0.0;
            if (rel) row[4] = 0.0;
            row[5] = inf;
            row[6] = std::string("threshold");
            row[7] = std::string("threshold");
        }
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

PhaseMapOutput phasemap(const RunConfig& cfg, int jobs) {
    require_for(cfg, "phasemap");
    DispersionModel model = cfg.model.core();
    const PhaseMapConfig& p = *cfg.phasemap;
    Window w{p.re_min, p.re_max, p.im_min, p.im_max};
    PhaseMapOutput out;
    for (const auto& sheet_name : p.sheets) {
        Sheet sheet = sheet_name == "upper" ? Sheet::Upper : Sheet::Lower;
        PhaseGrid g = build_grid(model, p.x, p.t, w, Resolution{p.nx, p.ny}, sheet, resolve_jobs(jobs));
        out.normalization.emplace_back(sheet, g.normalization);
        for (const auto& q : p.quantities) {
            auto lines = extract_contours(g, p.levels, q == "re" ? Quantity::ReNormalized : Quantity::ImNormalized);
            out.contours.insert(out.contours.end(), lines.begin(), lines.end());
        }
    }
    return out;
}

namespace {

struct Flags {
    std::string config_path;
    std::string output_path;
    std::string format;
    int jobs = 0;
    double tol = 0.0;
    std::string profile;
};

void write_record(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write output file " + path);
    f << text;
    if (!f) throw ConfigError("failed writing output file " + path);
}

RunConfig effective_config(const Flags& fl, const std::string& command, bool config_required) {
    RunConfig cfg;
    if (!fl.config_path.empty()) cfg = load_config(fl.config_path);
    else if (config_required) throw ConfigError("--config is required for " + command);
    if (!fl.output_path.empty()) cfg.output.path = fl.output_path;
    if (!fl.format.empty()) cfg.output.format = fl.format == "json" ? Format::Json : Format::Csv;
    if (fl.tol > 0.0) cfg.settings.rel_tol = fl.tol;
    if (!fl.profile.empty()) cfg.profile = fl.profile;
    cfg.settings.validate();
    require_for(cfg, command);
    return cfg;
}

std::string render_table(const RunConfig& cfg, const Table& t) {
    std::ostringstream os;
    if (cfg.output.format == Format::Csv) write_csv(os, t, echo_config(cfg));
    else os << table_json(t, echo_config(cfg)).dump(2) << '\n';
    return os.str();
}

std::string render_phasemap(const RunConfig& cfg, const PhaseMapOutput& pm) {
    std::ostringstream os;
    if (cfg.output.format == Format::Csv) {
        Table t;
        t.name = "contours";
        t.columns = {"quantity", "level", "sheet", "omega_r", "omega_i", "segment_id"};
        for (std::size_t id = 0; id < pm.contours.size(); ++id) {
            const auto& l = pm.contours[id];
            for (const auto& pt : l.points)
                t.rows.push_back({std::string(to_string(l.quantity)), l.level, std::string(to_string(l.sheet)),
                                  pt.real(), pt.imag(), (long long)id});
        }
        write_csv(os, t, echo_config(cfg));
        return os.str();
    }
    nlohmann::ordered_json j;
    j["format"] = "evfront contours";
    j["format_version"] = 1;
    j["tool_version"] = EVFRONT_VERSION;
    j["config"] = nlohmann::ordered_json::parse(echo_config(cfg).dump());
    nlohmann::ordered_json norm = nlohmann::ordered_json::object();
    for (const auto& [sheet, n] : pm.normalization) norm[to_string(sheet)] = n;
    j["normalization"] = norm;
    j["contours"] = nlohmann::ordered_json::parse(contours_json(pm.contours)).at("contours");
    os << j.dump(2) << '\n';
    return os.str();
}

std::string render_checks(const RunConfig& cfg, const std::vector<checks::CheckResult>& results) {
    std::ostringstream os;
    if (cfg.output.format == Format::Csv) {
        Table t;
        t.name = "check";
        t.columns = {"id", "key", "passed", "quantity", "value"};
        for (const auto& r : results) {
            if (r.measured.empty()) t.rows.push_back({(long long)r.id, r.key, r.passed, std::monostate{}, std::monostate{}});
            for (const auto& [k, v] : r.measured) t.rows.push_back({(long long)r.id, r.key, r.passed, k, v});
        }
        write_csv(os, t, echo_config(cfg));
        return os.str();
    }
    nlohmann::ordered_json j;
    j["format"] = "evfront check";
    j["format_version"] = 1;
    j["tool_version"] = EVFRONT_VERSION;
    j["config"] = nlohmann::ordered_json::parse(echo_config(cfg).dump());
    bool all = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.measured) m[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(fmt17(v));
        arr.push_back({{"id", r.id}, {"key", r.key}, {"passed", r.passed}, {"detail", r.detail}, {"measured", m}});
    }
    j["passed"] = all;
    j["checks"] = arr;
    os << j.dump(2) << '\n';
    return os.str();
}

int execute(const std::string& command, const Flags& fl, std::ostream& out, std::ostream& err) {
    RunConfig cfg = effective_config(fl, command, command != "check");
    const std::string& path = cfg.output.path;
    if (command == "simulate" || command == "decompose") {
        CommandOutput r = command == "simulate" ? simulate(cfg, fl.jobs) : decompose(cfg, fl.jobs);
        write_record(render_table(cfg, r.table), path, out);
        if (r.numerical_failure) {
            err << "evfront: some points failed to converge; see the status column\n";
            return NumericalFailure;
        }
        return Success;
    }
    if (command == "front") {
        write_record(render_table(cfg, front(cfg).table), path, out);
        return Success;
    }
    if (command == "phasemap") {
        write_record(render_phasemap(cfg, phasemap(cfg, fl.jobs)), path, out);
        return Success;
    }
    // check
    checks::Profile profile = cfg.profile == "full" ? checks::Profile::Full : checks::Profile::Quick;
    if (cfg.profile.empty()) cfg.profile = "quick";
    auto start = std::chrono::steady_clock::now();
    auto results = checks::run_all(profile);
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
        err << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.key << " (" << secs << " s): " << r.detail << '\n';
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", total);
    err << results.size() << " checks, " << (all ? "all passed" : "FAILURES") << ", " << secs << " s\n";
    write_record(render_checks(cfg, results), path, out);
    return all ? Success : InvariantFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal wave fields of switched-on sources: oracles, decompositions, fronts and phase maps",
                 "evfront"};
    app.set_version_flag("--version", std::string(EVFRONT_VERSION));
    app.require_subcommand(1);

    Flags fl;
    std::string chosen;
    auto add = [&](const std::string& name, const std::string& desc, bool with_profile) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", fl.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--output", fl.output_path, "output file (default: standard output)");
        sub->add_option("--format", fl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", fl.jobs, "worker threads, 0 for one per hardware thread")->check(CLI::NonNegativeNumber);
        sub->add_option("--tol", fl.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
        if (with_profile)
            sub->add_option("--profile", fl.profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
        sub->callback([&chosen, name] { chosen = name; });
    };
    add("simulate", "evaluate the field on an (x, t) grid", false);
    add("decompose", "split the field into pole and saddle parts", false);
    add("front", "front velocity and traversal time over a carrier sweep", false);
    add("phasemap", "level lines of the normalized phase in the complex frequency plane", false);
    add("check", "run the invariant suite", true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForVersion&) {
        out << EVFRONT_VERSION << '\n';
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "evfront: " << e.what() << "\n" << "run 'evfront --help' for usage\n";
        return ValidationError;
    }

    try {
        return execute(chosen, fl, out, err);
    } catch (const ConfigError& e) {
        err << "evfront: config error: " << e.what() << '\n';
        return ValidationError;
    } catch (const DomainError& e) {
        err << "evfront: invalid parameters: " << e.what() << '\n';
        return ValidationError;
    } catch (const std::exception& e) {
        err << "evfront: numerical failure: " << e.what() << '\n';
        return NumericalFailure;
    }
}

}  // namespace evfront::cli

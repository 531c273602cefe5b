#include "evfront/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "evfront/errors.hpp"

namespace evfront::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

// Checks that an object only has known keys, then hands out typed fields.
class Obj {
public:
    Obj(const json& j, std::string path, std::set<std::string> keys) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) fail(path_, "expected an object");
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!keys.count(it.key())) fail(sub(it.key()), "unknown field");
    }
    bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }
    const json& at(const std::string& k) const { return j_.at(k); }
    std::string sub(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

    double num(const std::string& k, double def) const { return has(k) ? number(at(k), sub(k)) : def; }
    double num(const std::string& k) const {
        if (!has(k)) fail(sub(k), "required field missing");
        return number(at(k), sub(k));
    }
    int integer(const std::string& k, int def) const {
        if (!has(k)) return def;
        if (!at(k).is_number_integer()) fail(sub(k), "expected an integer");
        return at(k).get<int>();
    }
    bool boolean(const std::string& k, bool def) const {
        if (!has(k)) return def;
        if (!at(k).is_boolean()) fail(sub(k), "expected true or false");
        return at(k).get<bool>();
    }
    std::string str(const std::string& k, const std::string& def) const {
        if (!has(k)) return def;
        if (!at(k).is_string()) fail(sub(k), "expected a string");
        return at(k).get<std::string>();
    }

    static double number(const json& v, const std::string& path) {
        if (!v.is_number()) fail(path, "expected a number");
        double d = v.get<double>();
        if (!std::isfinite(d)) fail(path, "expected a finite number");
        return d;
    }

private:
    const json& j_;
    std::string path_;
};

// A list of numbers or {start, stop, count[, spacing]} with both ends included.
std::vector<double> axis(const json& j, const std::string& path) {
    std::vector<double> out;
    if (j.is_number()) return {Obj::number(j, path)};
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(Obj::number(j[i], path + "[" + std::to_string(i) + "]"));
        if (out.empty()) fail(path, "list must not be empty");
        return out;
    }
    Obj o(j, path, {"start", "stop", "count", "spacing"});
    double a = o.num("start"), b = o.num("stop");
    int n = o.integer("count", 0);
    std::string sp = o.str("spacing", "linear");
    if (n < 1) fail(o.sub("count"), "must be at least 1");
    if (sp != "linear" && sp != "log") fail(o.sub("spacing"), "expected \"linear\" or \"log\"");
    if (sp == "log" && !(a > 0.0 && b > 0.0)) fail(path, "log spacing needs positive start and stop");
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) {
        double s = double(i) / (n - 1);
        out.push_back(sp == "linear" ? a + s * (b - a) : a * std::pow(b / a, s));
    }
    out.back() = b;
    return out;
}

cplx complex_value(const json& j, const std::string& path) {
    if (j.is_number()) return {Obj::number(j, path), 0.0};
    if (j.is_array() && j.size() == 2) return {Obj::number(j[0], path + "[0]"), Obj::number(j[1], path + "[1]")};
    fail(path, "expected a number or [re, im]");
}

std::vector<std::string> string_list(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_string()) fail(p, "expected a string");
        std::string s = j[i].get<std::string>();
        if (!allowed.count(s)) fail(p, "unknown value \"" + s + "\"");
        out.push_back(s);
    }
    return out;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::Oracle: return "oracle";
        case Method::Analytic: return "analytic";
        case Method::Both: return "both";
    }
    return "?";
}
const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

DispersionModel ModelConfig::core() const {
    if (!(hbar > 0.0)) throw ConfigError("model.hbar: must be positive");
    DispersionModel m;
    m.kind = kind;
    m.mass = mass / hbar;
    m.potential = potential / hbar;
    m.light_speed = light_speed;
    try {
        m.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return m;
}

SourceSpec SourceConfig::core() const {
    SourceSpec s;
    s.amplitude = amplitude;
    s.carrier = carrier;
    s.half_width = half_width;
    return s;
}

bool RunConfig::operator==(const RunConfig& o) const {
    auto same_settings = [](const QuadratureSettings& a, const QuadratureSettings& b) {
        return a.rel_tol == b.rel_tol && a.abs_tol == b.abs_tol && a.max_subdivisions == b.max_subdivisions &&
               a.pv_window == b.pv_window;
    };
    return model == o.model && source == o.source && grid == o.grid && method == o.method &&
           same_settings(settings, o.settings) && sweep == o.sweep && phasemap == o.phasemap &&
           profile == o.profile && output == o.output;
}

RunConfig config_from_json(const json& j) {
    if (j.is_null() || (j.is_object() && j.empty())) throw ConfigError("config is empty");
    Obj root(j, "", {"model", "source", "grid", "method", "settings", "sweep", "phasemap", "profile", "output"});
    RunConfig cfg;

    if (root.has("model")) {
        Obj m(root.at("model"), "model", {"kind", "mass", "potential", "light_speed", "hbar"});
        std::string kind = m.str("kind", "nonrelativistic");
        if (kind == "nonrelativistic") cfg.model.kind = DispersionKind::NonRelativistic;
        else if (kind == "relativistic") cfg.model.kind = DispersionKind::Relativistic;
        else fail("model.kind", "expected \"nonrelativistic\" or \"relativistic\"");
        cfg.model.mass = m.num("mass", 1.0);
        cfg.model.potential = m.num("potential", 0.0);
        cfg.model.light_speed = m.num("light_speed", 1.0);
        cfg.model.hbar = m.num("hbar", 1.0);
        if (!(cfg.model.hbar > 0.0)) fail("model.hbar", "must be positive");
        cfg.model.core();
    }

    if (root.has("source")) {
        Obj s(root.at("source"), "source", {"amplitude", "carrier", "half_width"});
        SourceConfig sc;
        if (s.has("amplitude")) sc.amplitude = complex_value(s.at("amplitude"), "source.amplitude");
        sc.carrier = s.num("carrier");
        if (s.has("half_width")) sc.half_width = s.num("half_width");
        try {
            sc.core().validate(cfg.model.core());
        } catch (const DomainError& e) {
            throw ConfigError(std::string("source: ") + e.what());
        }
        cfg.source = sc;
    }

    if (root.has("grid")) {
        Obj g(root.at("grid"), "grid", {"x", "t"});
        if (!g.has("x")) fail("grid.x", "required field missing");
        if (!g.has("t")) fail("grid.t", "required field missing");
        cfg.grid = GridConfig{axis(g.at("x"), "grid.x"), axis(g.at("t"), "grid.t")};
    }

    std::string method = root.has("method") ? root.str("method", "") : "oracle";
    if (method == "oracle") cfg.method = Method::Oracle;
    else if (method == "analytic") cfg.method = Method::Analytic;
    else if (method == "both") cfg.method = Method::Both;
    else fail("method", "expected \"oracle\", \"analytic\" or \"both\"");

    if (root.has("settings")) {
        Obj s(root.at("settings"), "settings", {"rel_tol", "abs_tol", "max_subdivisions", "pv_window"});
        cfg.settings.rel_tol = s.num("rel_tol", cfg.settings.rel_tol);
        cfg.settings.abs_tol = s.num("abs_tol", cfg.settings.abs_tol);
        cfg.settings.max_subdivisions = s.integer("max_subdivisions", cfg.settings.max_subdivisions);
        cfg.settings.pv_window = s.num("pv_window", cfg.settings.pv_window);
        try {
            cfg.settings.validate();
        } catch (const ConfigError& e) {
            fail("settings", e.what());
        }
    }

    if (root.has("sweep")) {
        Obj s(root.at("sweep"), "sweep", {"omega0", "relative_to_rest", "x"});
        SweepConfig sw;
        if (!s.has("omega0")) fail("sweep.omega0", "required field missing");
        sw.omega0 = axis(s.at("omega0"), "sweep.omega0");
        sw.relative_to_rest = s.boolean("relative_to_rest", false);
        sw.x = s.num("x", 1.0);
        if (!(sw.x > 0.0)) fail("sweep.x", "must be positive");
        if (sw.relative_to_rest && cfg.model.kind != DispersionKind::Relativistic)
            fail("sweep.relative_to_rest", "only meaningful for the relativistic model");
        cfg.sweep = sw;
    }

    if (root.has("phasemap")) {
        Obj p(root.at("phasemap"), "phasemap", {"x", "t", "window", "resolution", "levels", "quantities", "sheets"});
        PhaseMapConfig pm;
        pm.x = p.num("x");
        pm.t = p.num("t");
        if (!(pm.x > 0.0)) fail("phasemap.x", "must be positive");
        if (!(pm.t > 0.0)) fail("phasemap.t", "must be positive");
        if (!p.has("window")) fail("phasemap.window", "required field missing");
        Obj w(p.at("window"), "phasemap.window", {"re_min", "re_max", "im_min", "im_max"});
        pm.re_min = w.num("re_min");
        pm.re_max = w.num("re_max");
        pm.im_min = w.num("im_min");
        pm.im_max = w.num("im_max");
        if (!(pm.re_max > pm.re_min) || !(pm.im_max > pm.im_min)) fail("phasemap.window", "degenerate window");
        if (p.has("resolution")) {
            Obj r(p.at("resolution"), "phasemap.resolution", {"nx", "ny"});
            pm.nx = r.integer("nx", pm.nx);
            pm.ny = r.integer("ny", pm.ny);
            if (pm.nx < 2 || pm.ny < 2) fail("phasemap.resolution", "needs at least 2 nodes per axis");
            if (double(pm.nx) * pm.ny > 5e7) fail("phasemap.resolution", "more than 5e7 nodes");
        }
        if (!p.has("levels")) fail("phasemap.levels", "required field missing");
        pm.levels = axis(p.at("levels"), "phasemap.levels");
        if (p.has("quantities")) pm.quantities = string_list(p.at("quantities"), "phasemap.quantities", {"re", "im"});
        if (p.has("sheets")) pm.sheets = string_list(p.at("sheets"), "phasemap.sheets", {"upper", "lower"});
        cfg.phasemap = pm;
    }

    if (root.has("profile")) {
        cfg.profile = root.str("profile", "");
        if (cfg.profile != "quick" && cfg.profile != "full") fail("profile", "expected \"quick\" or \"full\"");
    }

    if (root.has("output")) {
        Obj o(root.at("output"), "output", {"format", "path"});
        std::string f = o.str("format", "csv");
        if (f == "csv") cfg.output.format = Format::Csv;
        else if (f == "json") cfg.output.format = Format::Json;
        else fail("output.format", "expected \"csv\" or \"json\"");
        cfg.output.path = o.str("path", "");
    }

    bool band = cfg.source && cfg.source->half_width;
    if (band && cfg.model.kind == DispersionKind::Relativistic && cfg.method != Method::Oracle)
        fail("method", "analytic evaluation of a relativistic band-limited source is not supported");
    return cfg;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("config is empty");
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": invalid JSON");
    }
    return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["model"] = {{"kind", to_string(cfg.model.kind)},
                  {"mass", cfg.model.mass},
                  {"potential", cfg.model.potential},
                  {"light_speed", cfg.model.light_speed},
                  {"hbar", cfg.model.hbar}};
    if (cfg.source) {
        json s = {{"amplitude", {cfg.source->amplitude.real(), cfg.source->amplitude.imag()}},
                  {"carrier", cfg.source->carrier}};
        if (cfg.source->half_width) s["half_width"] = *cfg.source->half_width;
        j["source"] = s;
    }
    if (cfg.grid) j["grid"] = {{"x", cfg.grid->x}, {"t", cfg.grid->t}};
    j["method"] = to_string(cfg.method);
    j["settings"] = {{"rel_tol", cfg.settings.rel_tol},
                     {"abs_tol", cfg.settings.abs_tol},
                     {"max_subdivisions", cfg.settings.max_subdivisions},
                     {"pv_window", cfg.settings.pv_window}};
    if (cfg.sweep)
        j["sweep"] = {{"omega0", cfg.sweep->omega0},
                      {"relative_to_rest", cfg.sweep->relative_to_rest},
                      {"x", cfg.sweep->x}};
    if (cfg.phasemap) {
        const auto& p = *cfg.phasemap;
        j["phasemap"] = {{"x", p.x},
                         {"t", p.t},
                         {"window", {{"re_min", p.re_min}, {"re_max", p.re_max}, {"im_min", p.im_min}, {"im_max", p.im_max}}},
                         {"resolution", {{"nx", p.nx}, {"ny", p.ny}}},
                         {"levels", p.levels},
                         {"quantities", p.quantities},
                         {"sheets", p.sheets}};
    }
    if (!cfg.profile.empty()) j["profile"] = cfg.profile;
    j["output"] = {{"format", to_string(cfg.output.format)}, {"path", cfg.output.path}};
    return j;
}

void require_for(const RunConfig& cfg, const std::string& command) {
    if (command == "simulate" || command == "decompose") {
        if (!cfg.source) throw ConfigError("source: required for " + command);
        if (!cfg.grid) throw ConfigError("grid: required for " + command);
    } else if (command == "front") {
        if (!cfg.sweep) throw ConfigError("sweep: required for front");
    } else if (command == "phasemap") {
        if (!cfg.phasemap) throw ConfigError("phasemap: required for phasemap");
    }
}

}  // namespace evfront::cli

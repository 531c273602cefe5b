#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evfront/cli/commands.hpp"
#include "evfront/cli/config.hpp"
#include "evfront/cli/output.hpp"
#include "evfront/decomposition.hpp"
#include "evfront/dispersion.hpp"
#include "evfront/errors.hpp"
#include "evfront/phase.hpp"
#include "evfront/phasemap.hpp"

using namespace evfront;
using namespace evfront::cli;
using nlohmann::json;

namespace {

const std::string config_dir = EVFRONT_CONFIG_DIR;

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("evfront_test_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

double num(const Cell& c) { return std::get<double>(c); }

int col(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return int(i);
    FAIL("no column " << name);
    return -1;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("config parsing and axes") {
        RunConfig c = parse_config(R"({
            "model": {"kind": "relativistic", "mass": 2, "light_speed": 3, "hbar": 1},
            "source": {"amplitude": [1, 0.5], "carrier": 7, "half_width": 0.5},
            "grid": {"x": 1.5, "t": {"start": 1, "stop": 100, "count": 3, "spacing": "log"}},
            "method": "oracle"
        })");
        CHECK(c.model.kind == DispersionKind::Relativistic);
        CHECK(c.source->amplitude == cplx(1.0, 0.5));
        REQUIRE(c.grid->x.size() == 1);
        REQUIRE(c.grid->t.size() == 3);
        CHECK(c.grid->t[1] == doctest::Approx(10.0));
        CHECK(c.grid->t[2] == 100.0);

        RunConfig lin = parse_config(R"({"sweep": {"omega0": {"start": -1, "stop": 1, "count": 5}}})");
        CHECK(lin.sweep->omega0 == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    }

    TEST_CASE("config errors name the field or position") {
        auto message = [](const std::string& text) {
            try {
                parse_config(text);
            } catch (const ConfigError& e) {
                return std::string(e.what());
            }
            return std::string("no error");
        };
        CHECK(message("{}").find("empty") != std::string::npos);
        CHECK(message("").find("empty") != std::string::npos);
        CHECK(message("{\n \"model\": {\"mass\": 1,}\n}").find("line 2") != std::string::npos);
        CHECK(message(R"({"model": {"mas": 1}})").find("model.mas") != std::string::npos);
        CHECK(message(R"({"model": {"mass": -1}})").find("mass must be positive") != std::string::npos);
        CHECK(message(R"({"grid": {"x": [], "t": [1]}})").find("grid.x") != std::string::npos);
        CHECK(message(R"({"method": "fast"})").find("method") != std::string::npos);
        CHECK(message(R"({"model": {"kind": "relativistic"}, "source": {"carrier": 5, "half_width": 1},
                         "grid": {"x": [1], "t": [1]}, "method": "analytic"})") != "no error");
    }

    TEST_CASE("config round trip through a record") {
        for (const char* name : {"simulate_nonrel_sharp.json", "decompose_band.json", "front_relativistic.json",
                                 "phasemap_rel_inside.json", "check_quick.json"}) {
            RunConfig c = load_config(config_dir + "/" + name);
            CHECK(config_from_json(config_to_json(c)) == c);
        }
        RunConfig c = load_config(config_dir + "/simulate_rel_causal.json");
        for (Format f : {Format::Csv, Format::Json}) {
            c.output.format = f;
            c.grid->x = {1.0};
            std::ostringstream os;
            Table t = simulate(c, 1).table;
            if (f == Format::Csv) write_csv(os, t, echo_config(c));
            else os << table_json(t, echo_config(c)).dump(2);
            CHECK(config_from_json(embedded_config(os.str())) == c);
        }
    }

    TEST_CASE("hbar is divided out") {
        RunConfig c = parse_config(R"({"model": {"mass": 1, "hbar": 2, "potential": 1},
                                       "sweep": {"omega0": [2.0]}})");
        DispersionModel m = c.model.core();
        CHECK(m.mass == 0.5);
        CHECK(m.potential == 0.5);
        // sweep values are kinetic: Omega_0 = 2 on m' = 0.5 gives v_m = sqrt(2 * 2 / 0.5)
        CHECK(front_velocity(m, 2.0) == doctest::Approx(std::sqrt(8.0)));
        Table t = front(c).table;
        CHECK(num(t.rows[0][col(t, "v_m")]) == doctest::Approx(std::sqrt(8.0)));
        CHECK(num(t.rows[0][col(t, "energy")]) == doctest::Approx(4.0));
    }

    TEST_CASE("simulate: both methods agree on a 3x3 grid") {
        RunConfig c = load_config(config_dir + "/simulate_nonrel_sharp.json");
        CommandOutput r = simulate(c, 2);
        CHECK_FALSE(r.numerical_failure);
        REQUIRE(r.table.rows.size() == 9);
        for (const auto& row : r.table.rows) {
            CHECK(num(row[col(r.table, "discrepancy")]) <= 1e-8);
            CHECK(std::get<std::string>(row[col(r.table, "method")]) == "both");
            CHECK(std::get<std::string>(row[col(r.table, "status")]) == "ok");
            CHECK(std::isfinite(num(row[col(r.table, "est_error")])));
        }
        // x outer, t inner
        CHECK(num(r.table.rows[1][0]) == 0.5);
        CHECK(num(r.table.rows[1][1]) == 0.7);
        CHECK(num(r.table.rows[3][0]) == 1.0);
    }

    TEST_CASE("simulate: negative times give zero field") {
        RunConfig c = load_config(config_dir + "/simulate_nonrel_sharp.json");
        c.grid->t = {-2.0, -1.0, -0.1};
        Table t = simulate(c, 1).table;
        for (const auto& row : t.rows) {
            CHECK(num(row[col(t, "psi_re")]) == 0.0);
            CHECK(num(row[col(t, "psi_im")]) == 0.0);
            CHECK(std::get<bool>(row[col(t, "causal")]));
        }
    }

    TEST_CASE("simulate: points outside the light cone are flagged causal") {
        RunConfig c = load_config(config_dir + "/simulate_rel_causal.json");
        Table t = simulate(c, 1).table;
        int n_out = 0;
        for (const auto& row : t.rows) {
            double x = num(row[0]), tt = num(row[1]);
            bool outside = x > tt;
            CHECK(std::get<bool>(row[col(t, "causal")]) == outside);
            if (outside) {
                ++n_out;
                CHECK(num(row[col(t, "psi_re")]) == 0.0);
                CHECK(num(row[col(t, "psi_im")]) == 0.0);
                CHECK(num(row[col(t, "discrepancy")]) <= 1e-6);
            } else {
                CHECK(num(row[col(t, "discrepancy")]) <= 1e-8);
            }
        }
        CHECK(n_out > 0);
    }

    TEST_CASE("decompose: front switching, evanescent pole, band edges") {
        RunConfig c = load_config(config_dir + "/decompose_evanescent.json");
        DispersionModel m = c.model.core();
        double w0 = c.source->carrier;
        double x = c.grid->x[0];
        double tau = traversal_time(m, w0, x);
        c.grid->t = {0.5 * tau, 2.0 * tau};
        Table t = decompose(c, 1).table;
        CHECK(num(t.rows[0][col(t, "psi_p_re")]) == 0.0);
        CHECK(num(t.rows[0][col(t, "psi_p_im")]) == 0.0);
        CHECK_FALSE(std::get<bool>(t.rows[0][col(t, "front_active")]));
        CHECK(std::get<bool>(t.rows[1][col(t, "front_active")]));
        double mag = std::hypot(num(t.rows[1][col(t, "psi_p_re")]), num(t.rows[1][col(t, "psi_p_im")]));
        double kim = wavenumber(m, cplx(w0, 0.0), Sheet::Upper).imag();
        CHECK(mag == doctest::Approx(std::abs(c.source->amplitude) * std::exp(-kim * x)).epsilon(1e-12));

        RunConfig b = load_config(config_dir + "/decompose_band.json");
        DispersionModel bm = b.model.core();
        double bw0 = b.source->carrier, dw = *b.source->half_width;
        double btau = traversal_time(bm, bw0, b.grid->x[0]);
        b.grid->t = {btau};
        Table bt = decompose(b, 1).table;
        // stationary frequency at t = tau is Omega_0 itself
        CHECK(num(bt.rows[0][col(bt, "u_plus")]) == doctest::Approx(dw / std::abs(bw0)).epsilon(1e-9));
        CHECK(num(bt.rows[0][col(bt, "u_minus")]) == doctest::Approx(-dw / std::abs(bw0)).epsilon(1e-9));
        CHECK(std::isfinite(num(bt.rows[0][col(bt, "band_stph_re")])));
    }

    TEST_CASE("front: relativistic examples and limits") {
        RunConfig c = parse_config(R"({"model": {"kind": "relativistic", "mass": 1, "light_speed": 1},
                                       "sweep": {"omega0": [0.6, 1.0, 1.25, 1e-6, 1e6], "relative_to_rest": true}})");
        Table t = front(c).table;
        int v = col(t, "v_m_over_c"), flag = col(t, "flag");
        CHECK(num(t.rows[0][v]) == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(num(t.rows[1][v]) == 0.0);
        CHECK(std::get<std::string>(t.rows[1][flag]) == "threshold");
        CHECK(std::isinf(num(t.rows[1][col(t, "tau")])));
        CHECK(num(t.rows[2][v]) == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(num(t.rows[3][v]) > 0.999);
        CHECK(num(t.rows[4][v]) > 0.999);
        CHECK(num(t.rows[4][v]) < 1.0);
    }

    TEST_CASE("front: non-relativistic sweep is monotone in |Omega_0|") {
        RunConfig c = load_config(config_dir + "/front_nonrel.json");
        Table t = front(c).table;
        int v = col(t, "v_m");
        for (const auto& row : t.rows) {
            double w0 = num(row[0]);
            if (w0 == 0.0) {
                CHECK(std::get<std::string>(row[col(t, "flag")]) == "threshold");
                continue;
            }
            CHECK(num(row[v]) == doctest::Approx(std::sqrt(2.0 * std::abs(w0))).epsilon(1e-14));
        }
        for (std::size_t i = 1; i < t.rows.size(); ++i) {
            double a = num(t.rows[i - 1][0]), b = num(t.rows[i][0]);
            if (a >= 0.0) CHECK(num(t.rows[i][v]) > num(t.rows[i - 1][v]));
            if (b <= 0.0) CHECK(num(t.rows[i][v]) < num(t.rows[i - 1][v]));
        }
    }

    TEST_CASE("phasemap regimes") {
        // non-relativistic: the level-1 line is the parabola Omega_i^2 = ... through (0, 1) for x = 2, t = 1
        RunConfig n = load_config(config_dir + "/phasemap_nonrel.json");
        PhaseMapOutput pn = phasemap(n, 2);
        bool on_parabola = false;
        for (const auto& l : pn.contours)
            if (l.level == 1.0 && l.sheet == Sheet::Upper) on_parabola |= distance_to_polyline(l, cplx(0.0, 1.0)) < 0.05;
        CHECK(on_parabola);

        auto crossings = [](const PhaseMapOutput& pm, double level, double touch) {
            std::vector<double> cr;
            for (const auto& l : pm.contours)
                if (l.level == level && l.quantity == Quantity::ReNormalized)
                    for (double c : real_axis_crossings(l, touch)) cr.push_back(c);
            return cr;
        };
        RunConfig out = load_config(config_dir + "/phasemap_rel_outside.json");
        PhaseMapOutput po = phasemap(out, 1);
        CHECK_FALSE(po.contours.empty());
        // ct = 0.75 x: no saddle, so no stationary-phase line meets the real axis, and Im phi falls
        // without bound upward (the field vanishes)
        DispersionModel rm = out.model.core();
        CHECK_THROWS_AS(saddle(rm, out.phasemap->x, out.phasemap->t), CausalRegionError);
        CHECK_THROWS_AS(stph_real_crossings(rm, out.phasemap->x, out.phasemap->t, SaddleBranch::Plus), CausalRegionError);
        PhaseGrid g = build_grid(rm, out.phasemap->x, out.phasemap->t, {-3, 3, 0, 30}, {61, 301}, Sheet::Upper);
        int top = 0;
        for (int j = 1; j < g.resolution.ny; ++j)
            if (g.at(30, j).imag() > g.at(30, top).imag()) top = j;
        // the saddles sit on the imaginary axis at +-i mu ct / sqrt(x^2 - c^2 t^2)
        CHECK(std::abs(g.im_at(top) - 3.0 / std::sqrt(7.0)) <= g.dy());
        CHECK(g.at(30, g.resolution.ny - 1).imag() < -10.0);

        RunConfig in = load_config(config_dir + "/phasemap_rel_inside.json");
        PhaseMapOutput pi = phasemap(in, 1);
        auto cr = crossings(pi, 1.0, 0.045);
        auto near = [&](double target) {
            for (double c : cr)
                if (std::abs(c - target) < 0.05) return true;
            return false;
        };
        // crossings at mu ct / sqrt(c^2 t^2 - x^2) and its reciprocal for mu = 1
        CHECK(near(5.0 / 3.0));
        CHECK(near(3.0 / 5.0));
    }

    TEST_CASE("exit codes") {
        std::string empty = temp_file("empty.json", "");
        std::string braces = temp_file("braces.json", "{}");
        std::string bad = temp_file("bad.json", "{\"model\": {\"mass\": 1,}}");
        std::string outside = temp_file("unknown.json", "{\"grid\": {\"x\": [1], \"t\": [1], \"z\": 2}}");
        CHECK(invoke({"simulate", "--config", empty}).code == ValidationError);
        CHECK(invoke({"check", "--config", braces}).code == ValidationError);
        Run r = invoke({"simulate", "--config", bad});
        CHECK(r.code == ValidationError);
        CHECK(r.err.find("line 1") != std::string::npos);
        CHECK(invoke({"simulate", "--config", outside}).code == ValidationError);
        CHECK(invoke({"simulate"}).code == ValidationError);
        CHECK(invoke({"frobnicate"}).code == ValidationError);
        CHECK(invoke({"simulate", "--config", config_dir + "/simulate_nonrel_sharp.json", "--format", "xml"}).code ==
              ValidationError);
        CHECK(invoke({"simulate", "--config", config_dir + "/front_nonrel.json"}).code == ValidationError);
        Run ok = invoke({"front", "--config", config_dir + "/front_nonrel.json"});
        CHECK(ok.code == Success);
        CHECK(ok.out.rfind("# evfront front v1\n", 0) == 0);
        CHECK(ok.err.empty());

        // the shifted-line cross check runs out of subdivisions at very late times; the row is kept
        std::string tight = temp_file("tight.json", R"({
            "model": {"kind": "relativistic"}, "source": {"carrier": 0.6},
            "grid": {"x": [1], "t": [3, 10000]}, "method": "both"})");
        Run nf = invoke({"simulate", "--config", tight});
        CHECK(nf.code == NumericalFailure);
        CHECK(nf.out.find("numerical_error") != std::string::npos);
        CHECK(nf.out.find(",ok,") != std::string::npos);
    }

    TEST_CASE("check quick passes") {
        Run r = invoke({"check", "--profile", "quick", "--format", "json"});
        CHECK(r.code == Success);
        json j = json::parse(r.out);
        CHECK(j.at("passed").get<bool>());
        CHECK(j.at("checks").size() == 6);
    }

    TEST_CASE("output is deterministic across runs and job counts") {
        for (const char* name : {"simulate_rel_causal.json", "decompose_band.json", "phasemap_rel_inside.json"}) {
            std::string path = config_dir + "/" + name;
            std::string cmd = std::string(name).substr(0, std::string(name).find('_'));
            for (const char* fmt : {"csv", "json"}) {
                Run a = invoke({cmd, "--config", path, "--format", fmt, "--jobs", "1"});
                Run b = invoke({cmd, "--config", path, "--format", fmt, "--jobs", "4"});
                REQUIRE(a.code == Success);
                CHECK(a.out == b.out);
            }
        }
        std::string file = (std::filesystem::temp_directory_path() / "evfront_test_front.csv").string();
        Run w = invoke({"front", "--config", config_dir + "/front_relativistic.json", "--output", file});
        CHECK(w.out.empty());
        std::ifstream f(file);
        std::stringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str() == invoke({"front", "--config", config_dir + "/front_relativistic.json"}).out);
    }

    TEST_CASE("number formatting") {
        CHECK(fmt17(0.1) == "0.10000000000000001");
        CHECK(fmt17(std::nan("")) == "nan");
        CHECK(fmt17(-std::numeric_limits<double>::infinity()) == "-inf");
        CHECK(csv_field(std::string("a,b")) == "\"a,b\"");
        CHECK(csv_field(true) == "true");
        CHECK(csv_field(std::monostate{}).empty());
        CHECK(std::stod(fmt17(1.0 / 3.0)) == 1.0 / 3.0);
    }
}
